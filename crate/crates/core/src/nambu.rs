//! The induced top-degree multivector on the dual bundle and its
//! Nambu-Poisson verification.
//!
//! A rank-`n` bundle carries fiber coordinates `y_1..y_n` on its dual, and a
//! section corresponds to the fiberwise linear function with the same
//! coefficients.  An `n`-ary bracket table together with its anchor then
//! assembles into an `n`-vector on the total space: the top bracket feeds the
//! pure-fiber component and each anchor field fills the slot of the omitted
//! frame element.  The defining relations tie the multivector bracket of
//! linear and basic functions back to the table; the volume-form conditions
//! of Dufour and Zung decide the Nambu-Poisson property with a finite sweep
//! over basis contractions, and the fundamental identity is kept as an
//! independent (more expensive) cross-check.

use thiserror::Error;

use crate::algebroid::{combinations, generic_section, BracketTable};
use crate::exterior::{
    wedge_sections, DifferentialForm, MultiVectorField, Section, SpaceDims,
};
use crate::report::{CheckReport, CheckStatus, Witness};
use crate::scalar::{Axis, Scalar};

/// Errors from dualization and the volume-form criterion.
#[derive(Debug, Error)]
pub enum NambuError {
    #[error("multivector degree {found} must equal the fiber dimension {expected}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("multivector coefficients must not contain derivative symbols")]
    JetsPresent,
    #[error("bundle rank {rank} must equal the bracket arity {arity} to dualize")]
    RankArity { rank: u32, arity: u32 },
    #[error("the volume-form criterion needs order at least 3, found {order}")]
    OrderTooLow { order: u32 },
}

/// An `n`-vector on the total space of the dual bundle, with concrete
/// polynomial coefficients in the fiber and base coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NambuStructure {
    dims: SpaceDims,
    pi: MultiVectorField,
}

impl NambuStructure {
    /// Wraps a multivector whose degree matches the fiber dimension of the
    /// space it lives on.
    pub fn new(pi: MultiVectorField) -> Result<NambuStructure, NambuError> {
        let dims = pi.dims();
        assert!(dims.base_dim >= 1, "base dimension must be at least 1");
        if pi.degree() != dims.fiber_dim {
            return Err(NambuError::DegreeMismatch {
                expected: dims.fiber_dim,
                found: pi.degree(),
            });
        }
        if pi.iter().any(|(_, c)| c.has_jet()) {
            return Err(NambuError::JetsPresent);
        }
        Ok(NambuStructure { dims, pi })
    }

    pub fn dims(&self) -> SpaceDims {
        self.dims
    }

    /// The bracket arity, i.e. the fiber dimension.
    pub fn order(&self) -> u32 {
        self.dims.fiber_dim
    }

    pub fn pi(&self) -> &MultiVectorField {
        &self.pi
    }

    /// Contraction into the coordinate volume form.
    pub fn omega(&self) -> DifferentialForm {
        self.pi
            .interior_product(&DifferentialForm::volume(self.dims))
            .expect("degree at most the space dimension")
    }
}

/// The fiberwise linear function with the coefficients of `x`:
/// `sum_j x^j(base) y_j`.
pub fn linear_function(x: &Section) -> Scalar {
    let mut out = Scalar::zero();
    for j in 1..=x.rank() {
        let c = x.coeff(j);
        assert!(!c.depends_on_fiber(), "section coefficients live on the base");
        out = &out + &(c * &Scalar::fiber(j));
    }
    out
}

/// Builds the multivector of a rank-`n` table: the top bracket as the
/// pure-fiber coefficient plus one anchor field per omitted frame slot.
pub fn dualize(table: &BracketTable) -> Result<NambuStructure, NambuError> {
    let bundle = table.bundle();
    let (n, r) = (bundle.arity(), bundle.rank());
    if r != n {
        return Err(NambuError::RankArity { rank: r, arity: n });
    }
    let dims = SpaceDims::total(n, bundle.base_dim());
    let mut pi = MultiVectorField::zero(dims, n);
    let top: Vec<u32> = (1..=n).collect();
    let fiber_key: Vec<Axis> = (1..=n).map(Axis::Fiber).collect();
    pi.add_term(fiber_key, linear_function(&table.entry(&top)));
    for l in 1..=n {
        let without: Vec<u32> = (1..=n).filter(|&i| i != l).collect();
        let field = bundle.anchor_entry(&without);
        if field.is_zero() {
            continue;
        }
        let spine: Vec<Axis> = without.iter().map(|&i| Axis::Fiber(i)).collect();
        let term = MultiVectorField::basis(dims, &spine)
            .wedge(&field.lift(dims).as_multi())
            .expect("wedge on the shared total space");
        pi = &pi + &term;
    }
    NambuStructure::new(pi)
}

/// `{f_1, .., f_n} = pi(df_1, .., df_n)`.
pub fn np_bracket(s: &NambuStructure, fs: &[Scalar]) -> Scalar {
    assert_eq!(fs.len() as u32, s.order(), "one argument per bracket slot");
    s.pi.pair_with_gradients(fs).expect("argument count checked")
}

/// Verifies with generic sections that the multivector bracket of linear
/// functions is the linear function of the table bracket, and that a basic
/// last argument reproduces the anchor derivative.
pub fn check_defining_relations(s: &NambuStructure, table: &BracketTable) -> CheckReport {
    let bundle = table.bundle().clone();
    let n = bundle.arity();
    assert_eq!(s.order(), n, "multivector order must match the bracket arity");
    assert_eq!(
        s.dims(),
        SpaceDims::total(bundle.rank(), bundle.base_dim()),
        "multivector space must match the dual of the bundle"
    );
    let s = s.clone();
    CheckReport::run("defining_relations", || {
        let args: Vec<Section> =
            (1..=n).map(|i| generic_section(n, &format!("z{i}"))).collect();
        let phis: Vec<Scalar> = args.iter().map(linear_function).collect();
        let lhs = np_bracket(&s, &phis);
        let rhs = linear_function(&table.evaluate(&args).expect("shapes checked"));
        let residual = &lhs - &rhs;
        if !residual.is_zero() {
            return Some(Witness {
                arguments: format!("X1..X{n} generic with coefficients zi_j"),
                residual: residual.to_string(),
            });
        }
        let f = Scalar::jet("f");
        let mut grads = phis[..(n as usize - 1)].to_vec();
        grads.push(f.clone());
        let lhs = np_bracket(&s, &grads);
        let wedge = wedge_sections(n, &args[..(n as usize - 1)]).expect("shapes checked");
        let rhs = bundle.anchor_apply(&wedge).expect("shapes checked").apply(&f);
        let residual = &lhs - &rhs;
        (!residual.is_zero()).then(|| Witness {
            arguments: format!("X1..X{} generic and a basic jet f", n - 1),
            residual: residual.to_string(),
        })
    })
}

/// Per-condition verdicts of the linearity classification.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LinearityReport {
    /// Brackets of linear functions are linear: the pure-fiber coefficient is
    /// homogeneous of degree one in the fiber coordinates.
    pub linear_bracket: CheckStatus,
    /// Brackets with one basic argument are basic: single-coordinate
    /// components have fiber-free coefficients.
    pub basic_image: CheckStatus,
    /// Brackets with two basic arguments vanish: no component carries more
    /// than one coordinate axis.
    pub basic_annihilation: CheckStatus,
    /// Pass exactly when all three conditions pass.
    pub overall: CheckStatus,
}

/// Classifies the multivector coefficients against the three structural
/// linearity conditions.
pub fn check_linearity(s: &NambuStructure) -> LinearityReport {
    let mut linear_bracket = CheckStatus::Pass;
    let mut basic_image = CheckStatus::Pass;
    let mut basic_annihilation = CheckStatus::Pass;
    for (key, c) in s.pi.iter() {
        let coordinates =
            key.iter().filter(|a| matches!(a, Axis::Coordinate(_))).count();
        match coordinates {
            0 => {
                if c.terms().any(|(m, _)| m.fiber_degree() != 1) {
                    linear_bracket = CheckStatus::Fail;
                }
            }
            1 => {
                if c.depends_on_fiber() {
                    basic_image = CheckStatus::Fail;
                }
            }
            _ => basic_annihilation = CheckStatus::Fail,
        }
    }
    let all = [linear_bracket, basic_image, basic_annihilation];
    let overall = if all.iter().all(|v| *v == CheckStatus::Pass) {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    LinearityReport { linear_bracket, basic_image, basic_annihilation, overall }
}

/// Decides the Nambu-Poisson property: both wedge conditions on the
/// contraction `omega` of the multivector into the volume form, swept over
/// every basis contraction direction (contraction is tensorial, so the basis
/// sweep is exhaustive).
pub fn check_dufour_zung(s: &NambuStructure) -> Result<CheckReport, NambuError> {
    if s.order() < 3 {
        return Err(NambuError::OrderTooLow { order: s.order() });
    }
    let dims = s.dims();
    let omega = s.omega();
    let domega = omega.exterior_derivative().expect("jet-free by construction");
    let axes: Vec<Axis> = dims.axes().collect();
    let k_degree = dims.top_degree() - s.order() - 1;
    Ok(CheckReport::run("dufour_zung", || {
        for idx in combinations(axes.len() as u32, k_degree) {
            let key: Vec<Axis> = idx.iter().map(|&i| axes[(i - 1) as usize]).collect();
            let k = MultiVectorField::basis(dims, &key);
            let contracted = k.interior_product(&omega).expect("degree fits");
            let first = contracted.wedge(&omega).expect("same space");
            if !first.is_zero() {
                return Some(Witness {
                    arguments: format!("K = {k}"),
                    residual: format!("(iota_K omega)^omega = {first}"),
                });
            }
            let second = contracted.wedge(&domega).expect("same space");
            if !second.is_zero() {
                return Some(Witness {
                    arguments: format!("K = {k}"),
                    residual: format!("(iota_K omega)^d(omega) = {second}"),
                });
            }
        }
        None
    }))
}

/// Verifies the fundamental identity with generic jet functions on the total
/// space; redundant given the volume-form criterion but independent of it.
pub fn check_fundamental_identity(s: &NambuStructure) -> CheckReport {
    let n = s.order() as usize;
    let s = s.clone();
    CheckReport::run("fundamental_identity", || {
        let fs: Vec<Scalar> =
            (1..n).map(|i| Scalar::total_jet(&format!("u{i}"))).collect();
        let gs: Vec<Scalar> =
            (1..=n).map(|i| Scalar::total_jet(&format!("v{i}"))).collect();
        let mut outer = fs.clone();
        outer.push(np_bracket(&s, &gs));
        let lhs = np_bracket(&s, &outer);
        let mut rhs = Scalar::zero();
        for i in 0..n {
            let mut inner = fs.clone();
            inner.push(gs[i].clone());
            let mut moved = gs.clone();
            moved[i] = np_bracket(&s, &inner);
            rhs = &rhs + &np_bracket(&s, &moved);
        }
        let residual = &lhs - &rhs;
        (!residual.is_zero()).then(|| Witness {
            arguments: format!("u1..u{} and v1..v{n} generic on the total space", n - 1),
            residual: residual.to_string(),
        })
    })
}

/// Checks the adapted-frame relations between top-bracket coefficients `c^k`
/// and anchor functions `f_k` (the anchor of the wedge omitting slot `k`,
/// measured along the first coordinate).
pub fn check_structure_relations(c: &[Scalar], f: &[Scalar]) -> CheckReport {
    assert_eq!(c.len(), f.len(), "one c^k and one f_k per frame element");
    assert!(
        c.iter().chain(f).all(|s| !s.depends_on_fiber()),
        "adapted-frame data live on the base"
    );
    let (c, f) = (c.to_vec(), f.to_vec());
    CheckReport::run("structure_relations", || {
        let x1 = Axis::Coordinate(1);
        let n = c.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let d1 = &(&f[i] * &f[j].derivative(x1)) - &(&f[j] * &f[i].derivative(x1));
                if !d1.is_zero() {
                    return Some(Witness {
                        arguments: format!("omitted slots ({}, {})", i + 1, j + 1),
                        residual: format!(
                            "f_{}*d(f_{})/dx1 - f_{}*d(f_{})/dx1 = {d1}",
                            i + 1,
                            j + 1,
                            j + 1,
                            i + 1
                        ),
                    });
                }
                let mut left = &f[i] * &c[j];
                if (i + 1) % 2 == 1 {
                    left = -&left;
                }
                let mut right = &f[j] * &c[i];
                if (j + 1) % 2 == 1 {
                    right = -&right;
                }
                let d2 = &left - &right;
                if !d2.is_zero() {
                    return Some(Witness {
                        arguments: format!("omitted slots ({}, {})", i + 1, j + 1),
                        residual: format!(
                            "(-1)^{}*f_{}*c^{} - (-1)^{}*f_{}*c^{} = {d2}",
                            i + 1,
                            i + 1,
                            j + 1,
                            j + 1,
                            j + 1,
                            i + 1
                        ),
                    });
                }
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::AnchoredBundle;
    use crate::exterior::VectorField;
    use crate::pairs::{build_pair_structure, Cdo, CoForm};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn coordinate_line_table() -> BracketTable {
        let bundle = AnchoredBundle::new(3, 3, 3)
            .with_anchor(
                &[1, 2],
                VectorField::basis(SpaceDims::base(3), Axis::Coordinate(1)),
            )
            .unwrap();
        BracketTable::new(bundle)
    }

    fn diagonal_table() -> BracketTable {
        BracketTable::new(AnchoredBundle::new(1, 3, 3))
            .with_entry(&[1, 2, 3], Section::basis(3, 3))
            .unwrap()
    }

    fn multi(dims: SpaceDims, entries: &[(&[Axis], Scalar)]) -> MultiVectorField {
        let mut out = MultiVectorField::zero(dims, entries[0].0.len() as u32);
        for (key, c) in entries {
            out.add_term(key.to_vec(), c.clone());
        }
        out
    }

    #[test]
    fn linear_function_is_linear_over_the_frame() {
        assert_eq!(linear_function(&Section::basis(3, 1)), Scalar::fiber(1));
        assert!(linear_function(&Section::zero(3)).is_zero());
        let x = &Section::basis(3, 2).scale(&Scalar::coordinate(1)) - &Section::basis(3, 3);
        let expected = &(&Scalar::coordinate(1) * &Scalar::fiber(2)) - &Scalar::fiber(3);
        assert_eq!(linear_function(&x), expected);
    }

    #[test]
    fn dualize_reproduces_hand_computed_multivectors() {
        let dims = SpaceDims::total(3, 3);
        let fibers = [Axis::Fiber(1), Axis::Fiber(2), Axis::Fiber(3)];
        let line = dualize(&coordinate_line_table()).unwrap();
        let expected = multi(
            dims,
            &[(&[Axis::Fiber(1), Axis::Fiber(2), Axis::Coordinate(1)], Scalar::one())],
        );
        assert_eq!(*line.pi(), expected);

        let empty = BracketTable::new(AnchoredBundle::new(2, 3, 3));
        assert!(dualize(&empty).unwrap().pi().is_zero());

        let diag = dualize(&diagonal_table()).unwrap();
        let expected = multi(SpaceDims::total(3, 1), &[(&fibers, Scalar::fiber(3))]);
        assert_eq!(*diag.pi(), expected);

        let tall = BracketTable::new(AnchoredBundle::new(2, 3, 4));
        assert!(matches!(
            dualize(&tall),
            Err(NambuError::RankArity { rank: 4, arity: 3 })
        ));
    }

    #[test]
    fn structure_wrapper_validates_degree_and_jets() {
        let dims = SpaceDims::total(3, 2);
        let bad_degree = MultiVectorField::basis(dims, &[Axis::Fiber(1), Axis::Fiber(2)]);
        assert!(matches!(
            NambuStructure::new(bad_degree),
            Err(NambuError::DegreeMismatch { expected: 3, found: 2 })
        ));
        let jetted = multi(
            dims,
            &[(&[Axis::Fiber(1), Axis::Fiber(2), Axis::Fiber(3)], Scalar::jet("f"))],
        );
        assert!(matches!(NambuStructure::new(jetted), Err(NambuError::JetsPresent)));
    }

    #[test]
    fn defining_relations_hold_for_dualized_tables() {
        for table in [coordinate_line_table(), diagonal_table()] {
            let s = dualize(&table).unwrap();
            assert!(check_defining_relations(&s, &table).is_pass());
        }
    }

    #[test]
    fn defining_relations_catch_a_mismatched_pairing() {
        let wrong = coordinate_line_table()
            .with_entry(&[1, 2, 3], Section::basis(3, 1))
            .unwrap();
        let s = dualize(&coordinate_line_table()).unwrap();
        let report = check_defining_relations(&s, &wrong);
        assert!(!report.is_pass());
        assert!(report.witness.unwrap().residual.contains("y1"));
    }

    #[test]
    fn perturbing_the_dual_multivector_breaks_the_relations() {
        let table = coordinate_line_table();
        let s = dualize(&table).unwrap();
        let bump = multi(
            s.dims(),
            &[(&[Axis::Fiber(1), Axis::Fiber(2), Axis::Coordinate(2)], Scalar::one())],
        );
        let perturbed = NambuStructure::new(&s.pi().clone() + &bump).unwrap();
        assert!(!check_defining_relations(&perturbed, &table).is_pass());
    }

    #[test]
    fn linearity_classification_matches_hand_verdicts() {
        let line = dualize(&coordinate_line_table()).unwrap();
        assert_eq!(check_linearity(&line).overall, CheckStatus::Pass);

        let diag = dualize(&diagonal_table()).unwrap();
        assert_eq!(check_linearity(&diag).overall, CheckStatus::Pass);

        let dims = SpaceDims::total(3, 1);
        let fibers = [Axis::Fiber(1), Axis::Fiber(2), Axis::Fiber(3)];
        let basic = NambuStructure::new(multi(dims, &[(&fibers, Scalar::coordinate(1))]))
            .unwrap();
        let report = check_linearity(&basic);
        assert_eq!(report.linear_bracket, CheckStatus::Fail);
        assert_eq!(report.overall, CheckStatus::Fail);

        let dims = SpaceDims::total(3, 2);
        let mixed = NambuStructure::new(multi(
            dims,
            &[(
                &[Axis::Fiber(1), Axis::Fiber(2), Axis::Coordinate(1)],
                Scalar::fiber(1),
            )],
        ))
        .unwrap();
        assert_eq!(check_linearity(&mixed).basic_image, CheckStatus::Fail);

        let wide = NambuStructure::new(multi(
            dims,
            &[(
                &[Axis::Fiber(1), Axis::Coordinate(1), Axis::Coordinate(2)],
                Scalar::one(),
            )],
        ))
        .unwrap();
        assert_eq!(check_linearity(&wide).basic_annihilation, CheckStatus::Fail);
    }

    #[test]
    fn volume_contraction_of_the_coordinate_line_structure() {
        let s = dualize(&coordinate_line_table()).unwrap();
        let omega = s.omega();
        assert_eq!(omega.to_string(), "-dy3^dx2^dx3");
        assert!(omega.exterior_derivative().unwrap().is_zero());
        assert!(check_dufour_zung(&s).unwrap().is_pass());
    }

    #[test]
    fn volume_criterion_rejects_low_order() {
        let dims = SpaceDims::total(2, 1);
        let s = NambuStructure::new(MultiVectorField::basis(
            dims,
            &[Axis::Fiber(1), Axis::Fiber(2)],
        ))
        .unwrap();
        assert!(matches!(check_dufour_zung(&s), Err(NambuError::OrderTooLow { order: 2 })));
    }

    #[test]
    fn nondecomposable_multivector_fails_both_oracles() {
        let dims = SpaceDims::total(3, 3);
        let pi = &MultiVectorField::basis(
            dims,
            &[Axis::Fiber(1), Axis::Fiber(2), Axis::Fiber(3)],
        ) + &MultiVectorField::basis(
            dims,
            &[Axis::Coordinate(1), Axis::Coordinate(2), Axis::Coordinate(3)],
        );
        let s = NambuStructure::new(pi).unwrap();
        let dufour = check_dufour_zung(&s).unwrap();
        assert!(!dufour.is_pass());
        assert!(dufour.witness.is_some());
        assert!(!check_fundamental_identity(&s).is_pass());
    }

    #[test]
    fn fundamental_identity_agrees_on_passing_structures() {
        let line = dualize(&coordinate_line_table()).unwrap();
        assert!(check_fundamental_identity(&line).is_pass());
        let zero = dualize(&BracketTable::new(AnchoredBundle::new(2, 3, 3))).unwrap();
        assert!(check_fundamental_identity(&zero).is_pass());
        assert!(check_dufour_zung(&zero).unwrap().is_pass());
    }

    #[test]
    fn multivector_bracket_matches_determinant_pairing() {
        let line = dualize(&coordinate_line_table()).unwrap();
        let y1 = Scalar::fiber(1);
        let y2 = Scalar::fiber(2);
        let x1 = Scalar::coordinate(1);
        assert!(np_bracket(&line, &[y1.clone(), y2.clone(), x1.clone()]).is_one());
        assert!(np_bracket(&line, &[x1.clone(), x1.clone(), y1.clone()]).is_zero());

        let diag = dualize(&diagonal_table()).unwrap();
        let ys = [Scalar::fiber(1), Scalar::fiber(2), Scalar::fiber(3)];
        assert_eq!(np_bracket(&diag, &ys), Scalar::fiber(3));
        assert_eq!(
            np_bracket(&diag, &ys),
            linear_function(&diagonal_table().entry(&[1, 2, 3]))
        );
    }

    #[test]
    fn multivector_bracket_is_skew_and_leibniz() {
        let line = dualize(&coordinate_line_table()).unwrap();
        let u1 = Scalar::total_jet("u1");
        let u2 = Scalar::total_jet("u2");
        let g1 = Scalar::total_jet("g1");
        let g2 = Scalar::total_jet("g2");
        let swapped = np_bracket(&line, &[u2.clone(), u1.clone(), g1.clone()]);
        assert_eq!(
            np_bracket(&line, &[u1.clone(), u2.clone(), g1.clone()]),
            -&swapped
        );
        let product = np_bracket(&line, &[u1.clone(), u2.clone(), &g1 * &g2]);
        let expanded = &(&g1 * &np_bracket(&line, &[u1.clone(), u2.clone(), g2.clone()]))
            + &(&np_bracket(&line, &[u1, u2, g1]) * &g2);
        assert_eq!(product, expanded);
    }

    #[test]
    fn scalar_coefficient_contractions_vanish_on_passing_structures() {
        let s = dualize(&coordinate_line_table()).unwrap();
        let omega = s.omega();
        let domega = omega.exterior_derivative().unwrap();
        let dims = s.dims();
        let mut k = MultiVectorField::zero(dims, 2);
        k.add_term(vec![Axis::Fiber(1), Axis::Coordinate(2)], Scalar::coordinate(1));
        k.add_term(vec![Axis::Fiber(2), Axis::Fiber(3)], Scalar::fiber(2));
        k.add_term(
            vec![Axis::Coordinate(2), Axis::Coordinate(3)],
            &Scalar::fiber(1) * &Scalar::coordinate(3),
        );
        let contracted = k.interior_product(&omega).unwrap();
        assert!(contracted.wedge(&omega).unwrap().is_zero());
        assert!(contracted.wedge(&domega).unwrap().is_zero());
    }

    #[test]
    fn structure_relations_match_hand_expansions() {
        let zero = vec![Scalar::zero(); 3];
        let mut single = zero.clone();
        single[2] = Scalar::one();
        assert!(check_structure_relations(&zero, &single).is_pass());
        assert!(check_structure_relations(&zero, &zero).is_pass());

        let mut c = zero.clone();
        c[0] = Scalar::one();
        let mut f = zero.clone();
        f[0] = Scalar::one();
        f[1] = Scalar::one();
        let report = check_structure_relations(&c, &f);
        assert!(!report.is_pass());
        assert!(report.witness.unwrap().residual.contains("c^1"));

        let mut f = zero.clone();
        f[0] = Scalar::coordinate(1);
        f[1] = Scalar::coordinate(1).pow(2);
        let report = check_structure_relations(&zero, &f);
        assert!(!report.is_pass());
        assert!(report.witness.unwrap().residual.contains("dx1"));
    }

    #[test]
    fn dualized_random_eigen_pairs_are_nambu_poisson() {
        for seed in 0..3 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = match rng.gen_range(0..2) {
                0 => Scalar::from_int(rng.gen_range(-2..=2)),
                _ => Scalar::coordinate(rng.gen_range(1..=2)),
            };
            let mut matrix = vec![vec![Scalar::zero(); 3]; 3];
            for (k, row) in matrix.iter_mut().enumerate() {
                row[k] = c.clone();
            }
            let mut symbol = VectorField::zero(SpaceDims::base(2));
            symbol.add_component(
                Axis::Coordinate(rng.gen_range(1..=2)),
                Scalar::from_int(rng.gen_range(1..=2)),
            );
            let d = Cdo::new(3, 2, matrix, symbol).unwrap();
            let mut xi = CoForm::new(3, 2);
            while xi.is_zero() {
                for key in [[1u32, 2], [1, 3], [2, 3]] {
                    xi = xi
                        .with_coeff(&key, Scalar::from_int(rng.gen_range(-2..=2)))
                        .unwrap();
                }
            }
            let (_, conn) = build_pair_structure(&d, &xi).unwrap();
            let table = conn.induced_table().unwrap();
            let s = dualize(&table).unwrap();
            assert!(check_defining_relations(&s, &table).is_pass(), "seed {seed}");
            assert_eq!(check_linearity(&s).overall, CheckStatus::Pass, "seed {seed}");
            assert!(check_dufour_zung(&s).unwrap().is_pass(), "seed {seed}");
            if seed == 0 {
                assert!(check_fundamental_identity(&s).is_pass());
            }
        }
    }
}
