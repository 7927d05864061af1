//! Shared fixtures for the engine benchmarks: a curvature-free connection
//! with a non-trivial bracket, seeded random tables, and a dense polynomial
//! for raw arithmetic timing.

use flp_core::algebroid::random_connection;
use flp_core::scalar::Axis;
use flp_core::{AnchoredBundle, BracketTable, Connection, Scalar, Section, SpaceDims, VectorField};

/// Connection over the coordinate-line anchor whose `e1 ^ e2` slot fixes
/// every frame vector; flat, with bracket values on `e3`.
pub fn permutation_connection() -> Connection {
    let mut anchor = VectorField::zero(SpaceDims::base(3));
    anchor.add_component(Axis::Coordinate(1), Scalar::one());
    let bundle = AnchoredBundle::new(3, 3, 3).with_anchor(&[1, 2], anchor).expect("valid key");
    let mut conn = Connection::new(bundle);
    for j in 1..=3 {
        conn = conn.with_gamma(&[1, 2], j, Section::basis(3, j)).expect("valid key");
    }
    conn
}

/// Bracket table induced by a seeded sparse random connection on a rank-3
/// bundle with ternary brackets over the plane.
pub fn random_table(seed: u64) -> BracketTable {
    random_connection(seed, 2, 3, 3).induced_table().expect("well-formed connection")
}

/// `(1 + x1 + x2 + y1 + y2)^k`, a dense polynomial with binomial growth.
pub fn dense_poly(k: u32) -> Scalar {
    let mut sum = Scalar::one();
    for a in 1..=2 {
        sum = &sum + &Scalar::coordinate(a);
        sum = &sum + &Scalar::fiber(a);
    }
    sum.pow(k)
}

/// Scenario JSON matching [`permutation_connection`], for parser timing.
pub const PERMUTATION_SCENARIO: &str = r#"{
  "name": "permutation connection",
  "base_dim": 3,
  "arity": 3,
  "rank": 3,
  "anchor": {"1,2": ["1", "0", "0"]},
  "connection": {
    "1,2|1": ["1", "0", "0"],
    "1,2|2": ["0", "1", "0"],
    "1,2|3": ["0", "0", "1"]
  }
}"#;
