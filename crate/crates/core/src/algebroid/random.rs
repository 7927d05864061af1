//! Seeded random connection scenarios for property tests.
//!
//! Tables are kept sparse (at most three anchor and three gamma entries)
//! with degree-1 coefficients so that jet expansions in the axiom checks
//! stay tractable while still exercising the non-tensorial code paths.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{combinations, AnchoredBundle, Connection};
use crate::exterior::{Section, VectorField};
use crate::scalar::{rat, Axis, Scalar};

fn small_poly(rng: &mut ChaCha8Rng, base_dim: u32) -> Scalar {
    let mut out = Scalar::from_int(rng.gen_range(-2..=2));
    if rng.gen_bool(0.7) {
        let a = rng.gen_range(1..=base_dim);
        let c = rng.gen_range(-2..=2i64);
        out = &out + &Scalar::coordinate(a).scale(&rat(c));
    }
    out
}

fn sparse_section(rng: &mut ChaCha8Rng, rank: u32, base_dim: u32) -> Section {
    let mut coeffs = vec![Scalar::zero(); rank as usize];
    for _ in 0..rng.gen_range(1..=2u32) {
        let j = rng.gen_range(0..rank as usize);
        coeffs[j] = small_poly(rng, base_dim);
    }
    Section::new(coeffs)
}

/// Deterministic sparse connection for a given seed.  Entry counts and
/// coefficients vary with the seed; both axiom-passing and axiom-failing
/// scenarios occur.
pub fn random_connection(seed: u64, base_dim: u32, arity: u32, rank: u32) -> Connection {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wedges = combinations(rank, arity - 1);

    let mut bundle = AnchoredBundle::new(base_dim, arity, rank);
    let anchor_count = rng.gen_range(0..=3usize).min(wedges.len());
    let anchor_keys: Vec<Vec<u32>> = wedges
        .choose_multiple(&mut rng, anchor_count)
        .cloned()
        .collect();
    for key in anchor_keys {
        let mut field = VectorField::zero(bundle.space());
        for _ in 0..rng.gen_range(1..=2u32) {
            let a = rng.gen_range(1..=base_dim);
            field.add_component(Axis::Coordinate(a), small_poly(&mut rng, base_dim));
        }
        bundle = bundle.with_anchor(&key, field).expect("key from the wedge list");
    }

    let mut pairs: Vec<(Vec<u32>, u32)> = Vec::new();
    for w in &wedges {
        for j in 1..=rank {
            pairs.push((w.clone(), j));
        }
    }
    let gamma_count = rng.gen_range(1..=3usize).min(pairs.len());
    let gamma_keys: Vec<(Vec<u32>, u32)> =
        pairs.choose_multiple(&mut rng, gamma_count).cloned().collect();
    let mut conn = Connection::new(bundle);
    for (key, j) in gamma_keys {
        let value = sparse_section(&mut rng, rank, base_dim);
        conn = conn.with_gamma(&key, j, value).expect("key from the wedge list");
    }
    conn
}
