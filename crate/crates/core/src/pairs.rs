//! Covariant differential operators paired with a codegree-one coform.
//!
//! An operator `D` on sections of the trivial bundle is given by an `r x r`
//! matrix over the base ring together with a base vector field, its symbol:
//! `D(f X) = f D(X) + symbol(f) X`.  Extending `D` to wedge powers by the
//! Leibniz rule and dualizing gives an action on coforms of degree `n - 1`.
//! Whenever a coform is an eigenvector of that dual action with polynomial
//! eigenvalue, the pair induces an anchored bundle (anchor `<e_I|xi> symbol`)
//! and a connection (`gamma(I, j) = <e_I|xi> D(e_j)`) whose curvature checks
//! pass, giving a systematic source of well-behaved bracket structures.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebroid::{
    combinations, key_string, validate_key, AlgebroidError, AnchoredBundle, Connection,
};
use crate::exterior::{fmt_linear, MultiSection, Section, SpaceDims, VectorField};
use crate::scalar::Scalar;

/// Errors from operator/coform construction and the eigenvalue search.
#[derive(Debug, Error)]
pub enum PairError {
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error("operator matrix must be {expected}x{expected}, found {found}")]
    MatrixShape { expected: u32, found: usize },
    #[error("{place} must be a function of the base coordinates only")]
    NotBasic { place: String },
    #[error("operator symbol lives on {found}, expected {expected}")]
    SymbolSpace { expected: SpaceDims, found: SpaceDims },
    #[error("coform has no non-zero coefficient")]
    ZeroCoform,
    #[error("dual image is not a polynomial multiple of the coform: {detail}")]
    NoEigenvalue { detail: String },
}

/// A covariant differential operator: a matrix action on the frame plus a
/// symbol vector field that differentiates coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cdo {
    rank: u32,
    base_dim: u32,
    matrix: Vec<Vec<Scalar>>,
    symbol: VectorField,
}

impl Cdo {
    /// Builds an operator from `matrix[k][j] = <e_k coefficient of D(e_j)>`
    /// and a symbol field on the base.
    pub fn new(
        rank: u32,
        base_dim: u32,
        matrix: Vec<Vec<Scalar>>,
        symbol: VectorField,
    ) -> Result<Cdo, PairError> {
        assert!(rank >= 1, "rank must be at least 1");
        assert!(base_dim >= 1, "base dimension must be at least 1");
        if matrix.len() != rank as usize {
            return Err(PairError::MatrixShape { expected: rank, found: matrix.len() });
        }
        for (k, row) in matrix.iter().enumerate() {
            if row.len() != rank as usize {
                return Err(PairError::MatrixShape { expected: rank, found: row.len() });
            }
            for (j, entry) in row.iter().enumerate() {
                if entry.depends_on_fiber() {
                    return Err(PairError::NotBasic {
                        place: format!("matrix entry ({},{})", k + 1, j + 1),
                    });
                }
            }
        }
        let base = SpaceDims::base(base_dim);
        if symbol.dims() != base {
            return Err(PairError::SymbolSpace { expected: base, found: symbol.dims() });
        }
        if symbol.components().any(|(_, c)| c.depends_on_fiber()) {
            return Err(PairError::NotBasic { place: "symbol component".into() });
        }
        Ok(Cdo { rank, base_dim, matrix, symbol })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn base_dim(&self) -> u32 {
        self.base_dim
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn symbol(&self) -> &VectorField {
        &self.symbol
    }

    /// `D(e_j)`: the matrix column as a section.
    fn column(&self, j: u32) -> Section {
        let j = (j - 1) as usize;
        Section::new(self.matrix.iter().map(|row| row[j].clone()).collect())
    }

    /// `D(X)`: matrix action plus the symbol derivative of each coefficient.
    pub fn apply(&self, x: &Section) -> Section {
        assert_eq!(x.rank(), self.rank, "section rank mismatch");
        let mut out = Section::zero(self.rank);
        for j in 1..=self.rank {
            let zj = x.coeff(j);
            out = &out + &self.column(j).scale(zj);
            out = &out + &Section::basis(self.rank, j).scale(&self.symbol.apply(zj));
        }
        out
    }

    /// Leibniz extension to wedge powers: one slot is replaced by its matrix
    /// image at a time, plus the symbol derivative of each coefficient.
    pub fn apply_wedge(&self, w: &MultiSection) -> MultiSection {
        assert_eq!(w.rank(), self.rank, "wedge rank mismatch");
        let mut out = MultiSection::zero(self.rank, w.degree());
        for (key, c) in w.iter() {
            out.add_term(key.clone(), self.symbol.apply(c));
            for t in 0..key.len() {
                let replaced = MultiSection::basis(self.rank, &key[..t])
                    .wedge(&self.column(key[t]).as_multi())
                    .and_then(|front| front.wedge(&MultiSection::basis(self.rank, &key[t + 1..])))
                    .expect("wedge over the shared frame");
                out = &out + &replaced.scale(c);
            }
        }
        out
    }

    /// Dual action on coforms: `<e_I|D(xi)> = symbol<e_I|xi> - <D(e_I)|xi>`
    /// with `D(e_I)` the Leibniz extension over the slots of `I`.
    pub fn dual_apply(&self, xi: &CoForm) -> CoForm {
        assert_eq!(xi.rank(), self.rank, "coform rank mismatch");
        let mut out = CoForm::new(self.rank, xi.degree());
        for key in combinations(self.rank, xi.degree()) {
            let mut value = self.symbol.apply(&xi.coeff(&key));
            value = &value - &xi.pair(&self.apply_wedge(&MultiSection::basis(self.rank, &key)));
            out.coeffs.insert(key, value);
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }
}

/// A coform of degree `n - 1`: one scalar per strictly increasing basis
/// wedge, paired multilinearly against wedges of sections.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoForm {
    rank: u32,
    degree: u32,
    coeffs: BTreeMap<Vec<u32>, Scalar>,
}

impl CoForm {
    pub fn new(rank: u32, degree: u32) -> CoForm {
        assert!(degree >= 1 && degree <= rank, "coform degree must lie in 1..=rank");
        CoForm { rank, degree, coeffs: BTreeMap::new() }
    }

    /// Sets `<e_I|xi>` for a strictly increasing key `I`.
    pub fn with_coeff(mut self, key: &[u32], value: Scalar) -> Result<CoForm, PairError> {
        validate_key(key, self.degree as usize, self.rank)?;
        if value.depends_on_fiber() {
            return Err(PairError::NotBasic {
                place: format!("coform coefficient at ({})", key_string(key)),
            });
        }
        if value.is_zero() {
            self.coeffs.remove(key);
        } else {
            self.coeffs.insert(key.to_vec(), value);
        }
        Ok(self)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `<e_I|xi>` (zero when absent).
    pub fn coeff(&self, key: &[u32]) -> Scalar {
        self.coeffs.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.coeffs.iter()
    }

    /// Pairing against a wedge of sections, coefficient by coefficient.
    pub fn pair(&self, w: &MultiSection) -> Scalar {
        assert_eq!(w.rank(), self.rank, "frame rank mismatch in pairing");
        assert_eq!(w.degree(), self.degree, "degree mismatch in pairing");
        let mut out = Scalar::zero();
        for (key, c) in w.iter() {
            out = &out + &(c * &self.coeff(key));
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> CoForm {
        let mut out = CoForm::new(self.rank, self.degree);
        for (key, c) in &self.coeffs {
            let v = c * s;
            if !v.is_zero() {
                out.coeffs.insert(key.clone(), v);
            }
        }
        out
    }
}

impl std::ops::Add for &CoForm {
    type Output = CoForm;
    fn add(self, other: &CoForm) -> CoForm {
        assert_eq!(self.rank, other.rank, "coform rank mismatch");
        assert_eq!(self.degree, other.degree, "coform degree mismatch");
        let mut out = self.clone();
        for (key, c) in &other.coeffs {
            let sum = &out.coeff(key) + c;
            if sum.is_zero() {
                out.coeffs.remove(key);
            } else {
                out.coeffs.insert(key.clone(), sum);
            }
        }
        out
    }
}

impl std::ops::Sub for &CoForm {
    type Output = CoForm;
    fn sub(self, other: &CoForm) -> CoForm {
        self + &other.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for CoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(
            f,
            self.coeffs.iter().map(|(k, c)| {
                let symbol =
                    k.iter().map(|i| format!("e*{i}")).collect::<Vec<_>>().join("^");
                (c, symbol)
            }),
        )
    }
}

/// Finds the polynomial `g` with `D(xi) = g xi`, verifying the identity on
/// every coefficient; fails when `xi = 0` or no polynomial quotient exists.
pub fn eigen_check(d: &Cdo, xi: &CoForm) -> Result<Scalar, PairError> {
    assert_eq!(d.rank(), xi.rank(), "coform rank mismatch");
    let Some((lead_key, lead)) = xi.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
        return Err(PairError::ZeroCoform);
    };
    let image = d.dual_apply(xi);
    let numerator = image.coeff(&lead_key);
    let g = match lead.as_constant() {
        Some(c) => numerator.scale(&c.recip()),
        None => numerator.div_exact(&lead).ok_or_else(|| PairError::NoEigenvalue {
            detail: format!(
                "({numerator}) is not a polynomial multiple of ({lead}) at ({})",
                key_string(&lead_key)
            ),
        })?,
    };
    let residual = &image - &xi.scale(&g);
    if !residual.is_zero() {
        return Err(PairError::NoEigenvalue {
            detail: format!("candidate {g} leaves residual {residual}"),
        });
    }
    Ok(g)
}

/// Builds the anchored bundle `rho(e_I) = <e_I|xi> symbol` and the connection
/// `gamma(I, j) = <e_I|xi> D(e_j)` once the eigenvalue condition holds.
pub fn build_pair_structure(
    d: &Cdo,
    xi: &CoForm,
) -> Result<(AnchoredBundle, Connection), PairError> {
    eigen_check(d, xi)?;
    let arity = xi.degree() + 1;
    let mut bundle = AnchoredBundle::new(d.base_dim(), arity, d.rank());
    for key in combinations(d.rank(), xi.degree()) {
        bundle = bundle.with_anchor(&key, d.symbol().scale(&xi.coeff(&key)))?;
    }
    let mut conn = Connection::new(bundle.clone());
    for key in combinations(d.rank(), xi.degree()) {
        let weight = xi.coeff(&key);
        for j in 1..=d.rank() {
            conn = conn.with_gamma(&key, j, d.apply(&Section::basis(d.rank(), j)).scale(&weight))?;
        }
    }
    Ok((bundle, conn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::{
        check_anchor_compat, check_bianchi, check_condition1, check_jacobi, check_leibniz,
        check_rank, generic_section,
    };
    use crate::exterior::wedge_sections;
    use crate::scalar::{rat, Axis};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zero_matrix(r: usize) -> Vec<Vec<Scalar>> {
        vec![vec![Scalar::zero(); r]; r]
    }

    fn identity_matrix(r: usize) -> Vec<Vec<Scalar>> {
        let mut m = zero_matrix(r);
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = Scalar::one();
        }
        m
    }

    fn scalar_matrix(r: usize, c: &Scalar) -> Vec<Vec<Scalar>> {
        let mut m = zero_matrix(r);
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = c.clone();
        }
        m
    }

    fn coordinate_field(m: u32, a: u32) -> VectorField {
        VectorField::basis(SpaceDims::base(m), Axis::Coordinate(a))
    }

    fn constant_coform(rank: u32, entries: &[(&[u32], i64)]) -> CoForm {
        let mut xi = CoForm::new(rank, entries[0].0.len() as u32);
        for (key, c) in entries {
            xi = xi.with_coeff(key, Scalar::from_int(*c)).unwrap();
        }
        xi
    }

    #[test]
    fn construction_rejects_bad_shapes_and_fiber_data() {
        let base = SpaceDims::base(2);
        let short = vec![vec![Scalar::zero(); 2]];
        assert!(matches!(
            Cdo::new(2, 2, short, VectorField::zero(base)),
            Err(PairError::MatrixShape { expected: 2, found: 1 })
        ));
        let mut fibered = zero_matrix(2);
        fibered[0][1] = Scalar::fiber(1);
        assert!(matches!(
            Cdo::new(2, 2, fibered, VectorField::zero(base)),
            Err(PairError::NotBasic { .. })
        ));
        assert!(matches!(
            Cdo::new(2, 2, zero_matrix(2), VectorField::zero(SpaceDims::total(2, 2))),
            Err(PairError::SymbolSpace { .. })
        ));
        assert!(matches!(
            CoForm::new(3, 2).with_coeff(&[2, 1], Scalar::one()),
            Err(PairError::Algebroid(AlgebroidError::KeyNotIncreasing(_)))
        ));
        assert!(matches!(
            CoForm::new(3, 2).with_coeff(&[1, 2], Scalar::fiber(1)),
            Err(PairError::NotBasic { .. })
        ));
    }

    #[test]
    fn operator_action_obeys_the_leibniz_rule() {
        let mut e12 = zero_matrix(2);
        e12[0][1] = Scalar::one();
        let d = Cdo::new(2, 2, e12, coordinate_field(2, 2)).unwrap();
        let x2 = Scalar::coordinate(2);
        let image = d.apply(&Section::basis(2, 2).scale(&x2));
        let expected = &Section::basis(2, 1).scale(&x2) + &Section::basis(2, 2);
        assert_eq!(image, expected);

        let f = Scalar::jet("f");
        let x = generic_section(2, "z");
        let lhs = d.apply(&x.scale(&f));
        let rhs = &d.apply(&x).scale(&f) + &x.scale(&d.symbol().apply(&f));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pure_symbol_and_identity_operators_act_as_expected() {
        let d = Cdo::new(2, 2, zero_matrix(2), coordinate_field(2, 1)).unwrap();
        assert_eq!(
            d.apply(&Section::basis(2, 1).scale(&Scalar::coordinate(1))),
            Section::basis(2, 1)
        );
        let id = Cdo::new(2, 2, identity_matrix(2), VectorField::zero(SpaceDims::base(2))).unwrap();
        let x = generic_section(2, "z");
        assert_eq!(id.apply(&x), x);
    }

    #[test]
    fn dual_action_matches_hand_expansions() {
        let sym = Cdo::new(3, 3, zero_matrix(3), coordinate_field(3, 1)).unwrap();
        let constant = constant_coform(3, &[(&[1, 2], 2), (&[1, 3], -1)]);
        assert!(sym.dual_apply(&constant).is_zero());

        let id = Cdo::new(3, 3, identity_matrix(3), VectorField::zero(SpaceDims::base(3))).unwrap();
        let xi = constant_coform(3, &[(&[1, 2], 2), (&[1, 3], -1), (&[2, 3], 5)]);
        assert_eq!(id.dual_apply(&xi), xi.scale(&Scalar::from_int(-2)));

        let linear = CoForm::new(3, 2).with_coeff(&[1, 2], Scalar::coordinate(1)).unwrap();
        assert_eq!(
            sym.dual_apply(&linear),
            CoForm::new(3, 2).with_coeff(&[1, 2], Scalar::one()).unwrap()
        );
    }

    #[test]
    fn duality_adjunction_on_generic_data() {
        let x1 = Scalar::coordinate(1);
        let x2 = Scalar::coordinate(2);
        let matrix = vec![
            vec![x1.clone(), Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), x2.clone(), Scalar::from_int(2)],
            vec![Scalar::one(), Scalar::zero(), x1.clone()],
        ];
        let mut symbol = coordinate_field(2, 2);
        symbol.add_component(Axis::Coordinate(1), x2.clone());
        let d = Cdo::new(3, 2, matrix, symbol).unwrap();
        let mut xi = CoForm::new(3, 2);
        let mut w = MultiSection::zero(3, 2);
        for key in combinations(3, 2) {
            let tag = key_string(&key).replace(',', "");
            xi = xi.with_coeff(&key, Scalar::jet(&format!("a_{tag}"))).unwrap();
            w.add_term(key, Scalar::jet(&format!("w_{tag}")));
        }
        let lhs = d.symbol().apply(&xi.pair(&w));
        let rhs = &xi.pair(&d.apply_wedge(&w)) + &d.dual_apply(&xi).pair(&w);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eigen_check_finds_constant_and_polynomial_eigenvalues() {
        let sym = Cdo::new(3, 3, zero_matrix(3), coordinate_field(3, 1)).unwrap();
        let constant = constant_coform(3, &[(&[1, 2], 1)]);
        assert_eq!(eigen_check(&sym, &constant).unwrap(), Scalar::zero());

        let id = Cdo::new(3, 3, identity_matrix(3), VectorField::zero(SpaceDims::base(3))).unwrap();
        let xi = constant_coform(3, &[(&[1, 2], 2), (&[2, 3], -1)]);
        assert_eq!(eigen_check(&id, &xi).unwrap(), Scalar::from_int(-2));

        let scaled = Cdo::new(
            3,
            2,
            scalar_matrix(3, &Scalar::coordinate(2)),
            coordinate_field(2, 1).scale(&Scalar::coordinate(1)),
        )
        .unwrap();
        let quadratic =
            CoForm::new(3, 2).with_coeff(&[1, 2], Scalar::coordinate(1).pow(2)).unwrap();
        let g = eigen_check(&scaled, &quadratic).unwrap();
        let expected = &Scalar::from_int(2) - &Scalar::coordinate(2).scale(&rat(2));
        assert_eq!(g, expected);
    }

    #[test]
    fn eigen_check_rejects_degenerate_pairs() {
        let sym = Cdo::new(3, 3, zero_matrix(3), coordinate_field(3, 1)).unwrap();
        assert!(matches!(eigen_check(&sym, &CoForm::new(3, 2)), Err(PairError::ZeroCoform)));

        let mixed = CoForm::new(3, 2)
            .with_coeff(&[1, 2], Scalar::one())
            .and_then(|xi| xi.with_coeff(&[1, 3], Scalar::coordinate(1)))
            .unwrap();
        assert!(matches!(eigen_check(&sym, &mixed), Err(PairError::NoEigenvalue { .. })));

        let linear = CoForm::new(3, 2).with_coeff(&[1, 2], Scalar::coordinate(1)).unwrap();
        assert!(matches!(eigen_check(&sym, &linear), Err(PairError::NoEigenvalue { .. })));
    }

    #[test]
    fn pair_structure_reproduces_the_coordinate_line_anchor() {
        let d = Cdo::new(3, 3, zero_matrix(3), coordinate_field(3, 1)).unwrap();
        let xi = constant_coform(3, &[(&[1, 2], 1)]);
        let (bundle, conn) = build_pair_structure(&d, &xi).unwrap();
        let expected = AnchoredBundle::new(3, 3, 3)
            .with_anchor(&[1, 2], coordinate_field(3, 1))
            .unwrap();
        assert_eq!(bundle, expected);
        assert_eq!(conn.gamma_entries().count(), 0);
        let basis: Vec<Section> = (1..=3).map(|j| Section::basis(3, j)).collect();
        assert!(conn.bracket(&basis).unwrap().is_zero());
    }

    #[test]
    fn pair_structure_with_identity_operator_passes_axiom_checks() {
        let d = Cdo::new(3, 2, identity_matrix(3), VectorField::zero(SpaceDims::base(2))).unwrap();
        let xi = constant_coform(3, &[(&[1, 2], 2), (&[2, 3], -1)]);
        let (bundle, conn) = build_pair_structure(&d, &xi).unwrap();
        assert_eq!(bundle.anchor_entries().count(), 0);
        assert_eq!(conn.gamma(&[1, 2], 3), Section::basis(3, 3).scale(&Scalar::from_int(2)));
        assert!(check_condition1(&conn).is_pass());
        assert!(check_bianchi(&conn).is_pass());
        let table = conn.induced_table().unwrap();
        assert!(check_jacobi(&table).is_pass());
        assert!(check_anchor_compat(&table).is_pass());
    }

    #[test]
    fn pair_connection_applies_as_scaled_operator_image() {
        let d = Cdo::new(
            3,
            2,
            scalar_matrix(3, &Scalar::coordinate(1)),
            coordinate_field(2, 2),
        )
        .unwrap();
        let xi = constant_coform(3, &[(&[1, 2], 1), (&[1, 3], 3)]);
        let (_, conn) = build_pair_structure(&d, &xi).unwrap();
        let mut w = MultiSection::zero(3, 2);
        for key in combinations(3, 2) {
            w.add_term(key.clone(), Scalar::jet(&format!("w_{}", key_string(&key).replace(',', ""))));
        }
        let z = generic_section(3, "z");
        assert_eq!(conn.apply(&w, &z).unwrap(), d.apply(&z).scale(&xi.pair(&w)));
    }

    #[test]
    fn closing_formula_matches_the_connection_bracket() {
        let d = Cdo::new(
            3,
            2,
            scalar_matrix(3, &Scalar::coordinate(1)),
            coordinate_field(2, 2),
        )
        .unwrap();
        let xi = constant_coform(3, &[(&[1, 2], 1), (&[1, 3], 3), (&[2, 3], -2)]);
        let (_, conn) = build_pair_structure(&d, &xi).unwrap();
        let args: Vec<Section> =
            (1..=3).map(|i| generic_section(3, &format!("z{i}"))).collect();
        let n = args.len();
        let mut expected = Section::zero(3);
        for (s, arg) in args.iter().enumerate() {
            let window: Vec<Section> =
                (1..n).map(|t| args[(s + t) % n].clone()).collect();
            let weight = xi.pair(&wedge_sections(3, &window).unwrap());
            let term = d.apply(arg).scale(&weight);
            if ((n - 1) * (s + 1)).is_multiple_of(2) {
                expected = &expected + &term;
            } else {
                expected = &expected - &term;
            }
        }
        assert_eq!(conn.bracket(&args).unwrap(), expected);
    }

    #[test]
    fn randomized_eigen_pairs_pass_filippov_checks() {
        for seed in 0..8 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = match rng.gen_range(0..3) {
                0 => Scalar::from_int(rng.gen_range(-2..=2)),
                1 => Scalar::coordinate(rng.gen_range(1..=2)),
                _ => &Scalar::coordinate(1) + &Scalar::from_int(rng.gen_range(-2..=2)),
            };
            let mut symbol = VectorField::zero(SpaceDims::base(2));
            for a in 1..=2 {
                if rng.gen_bool(0.7) {
                    symbol.add_component(
                        Axis::Coordinate(a),
                        Scalar::from_int(rng.gen_range(-2..=2)),
                    );
                }
            }
            let d = Cdo::new(3, 2, scalar_matrix(3, &c), symbol).unwrap();
            let mut xi = CoForm::new(3, 2);
            while xi.is_zero() {
                for key in combinations(3, 2) {
                    xi = xi
                        .with_coeff(&key, Scalar::from_int(rng.gen_range(-2..=2)))
                        .unwrap();
                }
            }
            let g = eigen_check(&d, &xi).unwrap();
            assert_eq!(g, c.scale(&rat(-2)));
            let (bundle, conn) = build_pair_structure(&d, &xi).unwrap();
            assert!(check_rank(&bundle).is_pass());
            assert!(check_condition1(&conn).is_pass(), "seed {seed}");
            assert!(check_bianchi(&conn).is_pass(), "seed {seed}");
            let table = conn.induced_table().unwrap();
            assert!(check_leibniz(&table).is_pass());
            assert!(check_jacobi(&table).is_pass(), "seed {seed}");
        }
    }

    #[test]
    fn build_rejects_zero_coform() {
        let d = Cdo::new(3, 2, zero_matrix(3), coordinate_field(2, 1)).unwrap();
        assert!(matches!(build_pair_structure(&d, &CoForm::new(3, 2)), Err(PairError::ZeroCoform)));
    }
}
