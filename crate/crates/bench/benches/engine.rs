//! Timings for the hot paths: scalar arithmetic, the identity checkers,
//! dualization, and scenario parsing.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use flp_bench::{dense_poly, permutation_connection, random_table, PERMUTATION_SCENARIO};
use flp_cli::scenario::{Scenario, ScenarioFile};
use flp_core::algebroid::{check_bianchi, check_jacobi};
use flp_core::nambu::check_dufour_zung;
use flp_core::dualize;

fn scalar_arithmetic(c: &mut Criterion) {
    let a = dense_poly(6);
    let b = dense_poly(5);
    c.bench_function("scalar_product_dense", |bench| {
        bench.iter(|| black_box(&a) * black_box(&b))
    });
}

fn connection_checks(c: &mut Criterion) {
    let conn = permutation_connection();
    c.bench_function("bianchi_permutation", |bench| {
        bench.iter(|| check_bianchi(black_box(&conn)))
    });
}

fn table_checks(c: &mut Criterion) {
    let table = random_table(3);
    c.bench_function("jacobi_random_table", |bench| {
        bench.iter(|| check_jacobi(black_box(&table)))
    });
}

fn dualization(c: &mut Criterion) {
    let table = permutation_connection().induced_table().expect("well-formed connection");
    c.bench_function("dualize_and_decomposability", |bench| {
        bench.iter(|| {
            let structure = dualize(black_box(&table)).expect("matching rank and arity");
            check_dufour_zung(&structure).expect("order three")
        })
    });
}

fn scenario_parsing(c: &mut Criterion) {
    c.bench_function("scenario_parse", |bench| {
        bench.iter(|| {
            let file: ScenarioFile =
                serde_json::from_str(black_box(PERMUTATION_SCENARIO)).expect("valid JSON");
            Scenario::from_file(&file).expect("valid scenario")
        })
    });
}

criterion_group!(
    benches,
    scalar_arithmetic,
    connection_checks,
    table_checks,
    dualization,
    scenario_parsing
);
criterion_main!(benches);
