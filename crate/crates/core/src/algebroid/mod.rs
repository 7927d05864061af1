//! Anchored bundles, connections and n-ary bracket tables.
//!
//! The geometry is a trivial rank-`r` bundle `A` over `R^m` together with an
//! anchor `rho: Lambda^{n-1} A -> T R^m`.  A connection assigns to each basis
//! wedge `e_I` (with `|I| = n-1`) and frame element `e_j` a section
//! `gamma(I, j)`, is coefficient-linear in the wedge slot, and differentiates
//! the last slot through the anchor.  Its alternating sum over slot deletions
//! produces an n-ary bracket; conversely a bracket table extends to arbitrary
//! sections by total skew-symmetry plus the anchor Leibniz rule, processing
//! slots right to left (any processing order agrees, fixing one keeps
//! printed witnesses reproducible).

mod checks;
mod random;

pub use checks::{
    check_anchor_compat, check_bianchi, check_condition1, check_jacobi, check_leibniz,
    check_rank, connection_from_splitting, generic_section, realize_connection,
};
pub use random::random_connection;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exterior::{
    wedge_sections, ExteriorError, MultiSection, Section, SpaceDims, VectorField,
};
use crate::scalar::Scalar;

/// Errors from bundle, connection and bracket-table operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebroidError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("expected {expected} arguments, found {found}")]
    ArgumentCount { expected: usize, found: usize },
    #[error("frame index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: u32, bound: u32 },
    #[error("indices must be strictly increasing, got [{0}]")]
    KeyNotIncreasing(String),
    #[error("key length {found} does not match expected {expected}")]
    KeyLength { expected: usize, found: usize },
    #[error("operands belong to different bundles")]
    BundleMismatch,
    #[error("bracket difference is not tensorial (the input bracket violates the Leibniz rule); residual {residual}")]
    NonTensorialCorrection { residual: String },
    #[error("constructed connection does not reproduce the bracket; residual {residual}")]
    InducedBracketMismatch { residual: String },
    #[error("splitting constants violate the generating relation at index tuple [{key}]; residual {residual}")]
    SplittingViolation { key: String, residual: String },
    #[error("structure data are inconsistent: {0}")]
    InconsistentData(String),
}

/// All strictly increasing `k`-tuples from `1..=r`, in lexicographic order.
pub(crate) fn combinations(r: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::with_capacity(k as usize);
    fn rec(r: u32, k: u32, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=r {
            cur.push(i);
            rec(r, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(r, k, 1, &mut cur, &mut out);
    out
}

pub(crate) fn key_string(key: &[u32]) -> String {
    key.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn validate_key(key: &[u32], len: usize, rank: u32) -> Result<(), AlgebroidError> {
    if key.len() != len {
        return Err(AlgebroidError::KeyLength { expected: len, found: key.len() });
    }
    for &i in key {
        if i < 1 || i > rank {
            return Err(AlgebroidError::IndexOutOfRange { index: i, bound: rank });
        }
    }
    if key.windows(2).any(|w| w[0] >= w[1]) {
        return Err(AlgebroidError::KeyNotIncreasing(key_string(key)));
    }
    Ok(())
}

/// A trivial rank-`r` bundle over `R^m` with an `n`-ary anchor given sparsely
/// on strictly increasing basis wedges; absent keys are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AnchoredBundle {
    base_dim: u32,
    arity: u32,
    rank: u32,
    anchor: BTreeMap<Vec<u32>, VectorField>,
}

impl AnchoredBundle {
    /// Bundle with zero anchor.  `base_dim >= 1`, `arity >= 2`, `rank >= 1`.
    pub fn new(base_dim: u32, arity: u32, rank: u32) -> AnchoredBundle {
        assert!(base_dim >= 1, "base dimension must be at least 1");
        assert!(arity >= 2, "arity must be at least 2");
        assert!(rank >= 1, "rank must be at least 1");
        AnchoredBundle { base_dim, arity, rank, anchor: BTreeMap::new() }
    }

    /// Sets `rho(e_I)` for a strictly increasing wedge key `I`.
    pub fn with_anchor(
        mut self,
        key: &[u32],
        field: VectorField,
    ) -> Result<AnchoredBundle, AlgebroidError> {
        validate_key(key, self.wedge_degree() as usize, self.rank)?;
        if field.dims() != self.space() {
            return Err(ExteriorError::SpaceMismatch(field.dims(), self.space()).into());
        }
        if field.is_zero() {
            self.anchor.remove(key);
        } else {
            self.anchor.insert(key.to_vec(), field);
        }
        Ok(self)
    }

    pub fn base_dim(&self) -> u32 {
        self.base_dim
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Wedge degree the anchor consumes: `n - 1`.
    pub fn wedge_degree(&self) -> u32 {
        self.arity - 1
    }

    /// The base manifold.
    pub fn space(&self) -> SpaceDims {
        SpaceDims::base(self.base_dim)
    }

    /// `rho(e_I)` on a strictly increasing key (zero when absent).
    pub fn anchor_entry(&self, key: &[u32]) -> VectorField {
        self.anchor
            .get(key)
            .cloned()
            .unwrap_or_else(|| VectorField::zero(self.space()))
    }

    pub fn anchor_entries(&self) -> impl Iterator<Item = (&Vec<u32>, &VectorField)> {
        self.anchor.iter()
    }

    /// The anchor applied to a degree-`(n-1)` multisection.
    pub fn anchor_apply(&self, w: &MultiSection) -> Result<VectorField, AlgebroidError> {
        if w.degree() != self.wedge_degree() {
            return Err(ExteriorError::DegreeMismatch {
                expected: self.wedge_degree(),
                found: w.degree(),
            }
            .into());
        }
        if w.rank() != self.rank {
            return Err(ExteriorError::RankMismatch { left: w.rank(), right: self.rank }.into());
        }
        let mut out = VectorField::zero(self.space());
        for (key, c) in w.iter() {
            let entry = match self.anchor.get(key) {
                Some(v) => v,
                None => continue,
            };
            out = &out + &entry.scale(c);
        }
        Ok(out)
    }

    /// Strictly increasing wedge keys of degree `n - 1`.
    pub fn basis_wedges(&self) -> Vec<Vec<u32>> {
        combinations(self.rank, self.wedge_degree())
    }

    /// Generic rank of the anchor's coefficient matrix (rows are the images
    /// of basis wedges), i.e. the largest `k` with a non-vanishing `k x k`
    /// minor over the polynomial ring.
    pub fn anchor_generic_rank(&self) -> u32 {
        let rows: Vec<Vec<Scalar>> = self
            .basis_wedges()
            .iter()
            .map(|key| {
                let v = self.anchor_entry(key);
                (1..=self.base_dim)
                    .map(|a| v.coeff(crate::scalar::Axis::Coordinate(a)))
                    .collect()
            })
            .collect();
        let max_k = rows.len().min(self.base_dim as usize) as u32;
        for k in (1..=max_k).rev() {
            if self.nonzero_minor(&rows, k).is_some() {
                return k;
            }
        }
        0
    }

    /// Finds a non-vanishing `k x k` minor, returning its row set, column
    /// set and value.
    fn nonzero_minor(
        &self,
        rows: &[Vec<Scalar>],
        k: u32,
    ) -> Option<(Vec<u32>, Vec<u32>, Scalar)> {
        for row_set in combinations(rows.len() as u32, k) {
            for col_set in combinations(self.base_dim, k) {
                let sub: Vec<Vec<Scalar>> = row_set
                    .iter()
                    .map(|&i| {
                        col_set
                            .iter()
                            .map(|&a| rows[(i - 1) as usize][(a - 1) as usize].clone())
                            .collect()
                    })
                    .collect();
                let det = crate::exterior::scalar_det(&sub);
                if !det.is_zero() {
                    return Some((row_set, col_set, det));
                }
            }
        }
        None
    }

    pub(crate) fn rank_witness(&self) -> Option<(String, String)> {
        let rows: Vec<Vec<Scalar>> = self
            .basis_wedges()
            .iter()
            .map(|key| {
                let v = self.anchor_entry(key);
                (1..=self.base_dim)
                    .map(|a| v.coeff(crate::scalar::Axis::Coordinate(a)))
                    .collect()
            })
            .collect();
        let wedges = self.basis_wedges();
        self.nonzero_minor(&rows, 2).map(|(row_set, col_set, det)| {
            let rows_desc = row_set
                .iter()
                .map(|&i| format!("e({})", key_string(&wedges[(i - 1) as usize])))
                .collect::<Vec<_>>()
                .join(", ");
            let cols_desc = col_set
                .iter()
                .map(|&a| format!("x{a}"))
                .collect::<Vec<_>>()
                .join(", ");
            (format!("2x2 minor on wedge rows {rows_desc} and columns {cols_desc}"), det.to_string())
        })
    }
}

impl fmt::Display for AnchoredBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank-{} bundle over R^{}, arity {}",
            self.rank, self.base_dim, self.arity
        )
    }
}

/// A connection: sparse table `gamma(I, j)` on strictly increasing wedge keys
/// and frame indices, over an anchored bundle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Connection {
    bundle: AnchoredBundle,
    gamma: BTreeMap<(Vec<u32>, u32), Section>,
}

impl Connection {
    /// The zero-table connection (still Leibniz through the anchor).
    pub fn new(bundle: AnchoredBundle) -> Connection {
        Connection { bundle, gamma: BTreeMap::new() }
    }

    /// Sets `nabla_{e_I} e_j = value`.
    pub fn with_gamma(
        mut self,
        key: &[u32],
        j: u32,
        value: Section,
    ) -> Result<Connection, AlgebroidError> {
        validate_key(key, self.bundle.wedge_degree() as usize, self.bundle.rank())?;
        if j < 1 || j > self.bundle.rank() {
            return Err(AlgebroidError::IndexOutOfRange { index: j, bound: self.bundle.rank() });
        }
        if value.rank() != self.bundle.rank() {
            return Err(ExteriorError::RankMismatch {
                left: value.rank(),
                right: self.bundle.rank(),
            }
            .into());
        }
        if value.is_zero() {
            self.gamma.remove(&(key.to_vec(), j));
        } else {
            self.gamma.insert((key.to_vec(), j), value);
        }
        Ok(self)
    }

    pub fn bundle(&self) -> &AnchoredBundle {
        &self.bundle
    }

    /// `nabla_{e_I} e_j` on a strictly increasing key (zero when absent).
    pub fn gamma(&self, key: &[u32], j: u32) -> Section {
        self.gamma
            .get(&(key.to_vec(), j))
            .cloned()
            .unwrap_or_else(|| Section::zero(self.bundle.rank()))
    }

    pub fn gamma_entries(&self) -> impl Iterator<Item = (&(Vec<u32>, u32), &Section)> {
        self.gamma.iter()
    }

    /// `nabla_W Z`: coefficient-linear in `W`, Leibniz in `Z` through the
    /// anchor.
    pub fn apply(&self, w: &MultiSection, z: &Section) -> Result<Section, AlgebroidError> {
        let r = self.bundle.rank();
        if z.rank() != r {
            return Err(ExteriorError::RankMismatch { left: z.rank(), right: r }.into());
        }
        let rho_w = self.bundle.anchor_apply(w)?;
        let mut out = Section::zero(r);
        for (key, c) in w.iter() {
            for j in 1..=r {
                let zj = z.coeff(j);
                if zj.is_zero() {
                    continue;
                }
                if let Some(entry) = self.gamma.get(&(key.clone(), j)) {
                    out = &out + &entry.scale(&(c * zj));
                }
            }
        }
        let mut leibniz = Vec::with_capacity(r as usize);
        for j in 1..=r {
            leibniz.push(rho_w.apply(z.coeff(j)));
        }
        Ok(&out + &Section::new(leibniz))
    }

    /// The induced `n`-ary bracket: the alternating sum over slot deletions,
    /// `sum_i (-1)^{n+i} nabla_{X_1 ^ .. ^i .. ^ X_n} X_i`.
    pub fn bracket(&self, args: &[Section]) -> Result<Section, AlgebroidError> {
        let n = self.bundle.arity() as usize;
        if args.len() != n {
            return Err(AlgebroidError::ArgumentCount { expected: n, found: args.len() });
        }
        let r = self.bundle.rank();
        let mut out = Section::zero(r);
        for i in 0..n {
            let rest: Vec<Section> = args
                .iter()
                .enumerate()
                .filter(|(t, _)| *t != i)
                .map(|(_, s)| s.clone())
                .collect();
            let w = wedge_sections(r, &rest)?;
            let term = self.apply(&w, &args[i])?;
            // 1-based slot i+1: sign (-1)^{n + i + 1}
            out = if (n + i + 1).is_multiple_of(2) { &out + &term } else { &out - &term };
        }
        Ok(out)
    }

    /// The same bracket written cyclically,
    /// `sum_i (-1)^{(n-1)i} nabla_{X_{i+1} ^ .. ^ X_n ^ X_1 ^ .. ^ X_{i-1}} X_i`;
    /// agreement with [`Connection::bracket`] is a tested invariant.
    pub fn bracket_cyclic(&self, args: &[Section]) -> Result<Section, AlgebroidError> {
        let n = self.bundle.arity() as usize;
        if args.len() != n {
            return Err(AlgebroidError::ArgumentCount { expected: n, found: args.len() });
        }
        let r = self.bundle.rank();
        let mut out = Section::zero(r);
        for i in 1..=n {
            // window of n-1 sections after slot i, cyclically
            let window: Vec<Section> =
                (0..n - 1).map(|t| args[(i + t) % n].clone()).collect();
            let w = wedge_sections(r, &window)?;
            let term = self.apply(&w, &args[i - 1])?;
            out = if ((n - 1) * i).is_multiple_of(2) { &out + &term } else { &out - &term };
        }
        Ok(out)
    }

    /// Covariant derivative `X^nabla = [X_1, .., X_{n-1}, -]` extended to
    /// `Lambda^k A` as a degree-0 derivation; on degree 0 it is `rho(X)`
    /// applied to the scalar.
    pub fn nabla_ext(
        &self,
        xs: &[Section],
        w: &MultiSection,
    ) -> Result<MultiSection, AlgebroidError> {
        let n = self.bundle.arity() as usize;
        if xs.len() != n - 1 {
            return Err(AlgebroidError::ArgumentCount { expected: n - 1, found: xs.len() });
        }
        let r = self.bundle.rank();
        let rho_x = self.bundle.anchor_apply(&wedge_sections(r, xs)?)?;
        let mut out = MultiSection::zero(r, w.degree());
        for (key, c) in w.iter() {
            out.add_term(key.clone(), rho_x.apply(c));
            for t in 0..key.len() {
                let mut slots = Vec::with_capacity(n);
                slots.extend_from_slice(xs);
                slots.push(Section::basis(r, key[t]));
                let derived = self.bracket(&slots)?;
                let before = MultiSection::basis(r, &key[..t]);
                let after = MultiSection::basis(r, &key[t + 1..]);
                let piece = before.wedge(&derived.as_multi())?.wedge(&after)?;
                out = &out + &piece.scale(c);
            }
        }
        Ok(out)
    }

    /// Curvature
    /// `R(X; W)(Z) = X^nabla(nabla_W Z) - nabla_W(X^nabla Z) - nabla_{X^nabla(W)} Z`,
    /// coefficient-linear in `W` but not in the `X` slots.
    pub fn curvature(
        &self,
        xs: &[Section],
        w: &MultiSection,
        z: &Section,
    ) -> Result<Section, AlgebroidError> {
        let n = self.bundle.arity() as usize;
        if w.degree() != self.bundle.wedge_degree() {
            return Err(ExteriorError::DegreeMismatch {
                expected: self.bundle.wedge_degree(),
                found: w.degree(),
            }
            .into());
        }
        let nabla_w_z = self.apply(w, z)?;
        let mut slots = Vec::with_capacity(n);
        slots.extend_from_slice(xs);
        slots.push(nabla_w_z);
        let t1 = self.bracket(&slots)?;

        let mut slots = Vec::with_capacity(n);
        slots.extend_from_slice(xs);
        slots.push(z.clone());
        let x_nabla_z = self.bracket(&slots)?;
        let t2 = self.apply(w, &x_nabla_z)?;

        let x_nabla_w = self.nabla_ext(xs, w)?;
        let t3 = self.apply(&x_nabla_w, z)?;

        Ok(&(&t1 - &t2) - &t3)
    }

    /// Evaluates the induced bracket on all basis tuples.
    pub fn induced_table(&self) -> Result<BracketTable, AlgebroidError> {
        let r = self.bundle.rank();
        let n = self.bundle.arity();
        let mut table = BracketTable::new(self.bundle.clone());
        for key in combinations(r, n) {
            let args: Vec<Section> = key.iter().map(|&i| Section::basis(r, i)).collect();
            let value = self.bracket(&args)?;
            table = table.with_entry(&key, value)?;
        }
        Ok(table)
    }
}

/// An `n`-ary bracket given by its values on strictly increasing basis
/// tuples; absent keys are zero.  Evaluation on arbitrary sections is the
/// unique extension that is totally skew-symmetric and Leibniz in every slot
/// through the anchor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BracketTable {
    bundle: AnchoredBundle,
    entries: BTreeMap<Vec<u32>, Section>,
}

impl BracketTable {
    pub fn new(bundle: AnchoredBundle) -> BracketTable {
        BracketTable { bundle, entries: BTreeMap::new() }
    }

    /// Sets `[e_{i1}, .., e_{in}] = value` for a strictly increasing key.
    pub fn with_entry(
        mut self,
        key: &[u32],
        value: Section,
    ) -> Result<BracketTable, AlgebroidError> {
        validate_key(key, self.bundle.arity() as usize, self.bundle.rank())?;
        if value.rank() != self.bundle.rank() {
            return Err(ExteriorError::RankMismatch {
                left: value.rank(),
                right: self.bundle.rank(),
            }
            .into());
        }
        if value.is_zero() {
            self.entries.remove(key);
        } else {
            self.entries.insert(key.to_vec(), value);
        }
        Ok(self)
    }

    pub fn bundle(&self) -> &AnchoredBundle {
        &self.bundle
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &Section)> {
        self.entries.iter()
    }

    /// Bracket of basis elements for an arbitrary index tuple: zero on
    /// repeats, otherwise the stored value times the sorting sign.
    pub fn entry(&self, key: &[u32]) -> Section {
        let r = self.bundle.rank();
        match crate::exterior::sort_with_sign(key.to_vec()) {
            None => Section::zero(r),
            Some((sorted, sign)) => {
                let value = self
                    .entries
                    .get(&sorted)
                    .cloned()
                    .unwrap_or_else(|| Section::zero(r));
                if sign < 0 {
                    -&value
                } else {
                    value
                }
            }
        }
    }

    /// Evaluates the bracket on arbitrary sections.  Slots are processed
    /// right to left: the rightmost non-basis slot is moved to the end
    /// (collecting the permutation sign over the basis slots it crosses) and
    /// expanded there by the anchor Leibniz rule.
    pub fn evaluate(&self, args: &[Section]) -> Result<Section, AlgebroidError> {
        let n = self.bundle.arity() as usize;
        if args.len() != n {
            return Err(AlgebroidError::ArgumentCount { expected: n, found: args.len() });
        }
        for s in args {
            if s.rank() != self.bundle.rank() {
                return Err(ExteriorError::RankMismatch {
                    left: s.rank(),
                    right: self.bundle.rank(),
                }
                .into());
            }
        }
        self.eval_mixed(args, &[])
    }

    fn eval_mixed(&self, front: &[Section], back: &[u32]) -> Result<Section, AlgebroidError> {
        if front.is_empty() {
            return Ok(self.entry(back));
        }
        let r = self.bundle.rank();
        let z = front.last().expect("front non-empty");
        let rest = &front[..front.len() - 1];
        // rho of the wedge of all slots except the (moved) last one
        let mut wedge = wedge_sections(r, rest)?;
        if !back.is_empty() {
            let mut basis = MultiSection::zero(r, back.len() as u32);
            basis.add_term(back.to_vec(), Scalar::one());
            wedge = wedge.wedge(&basis)?;
        }
        let rho_w = self.bundle.anchor_apply(&wedge)?;
        let mut out = Section::zero(r);
        for j in 1..=r {
            let zj = z.coeff(j);
            if !zj.is_zero() {
                let mut back2 = Vec::with_capacity(back.len() + 1);
                back2.extend_from_slice(back);
                back2.push(j);
                let inner = self.eval_mixed(rest, &back2)?;
                out = &out + &inner.scale(zj);
            }
            let dz = rho_w.apply(zj);
            if !dz.is_zero() {
                out = &out + &Section::basis(r, j).scale(&dz);
            }
        }
        // moving the last front slot across `back.len()` basis slots
        if back.len() % 2 == 1 {
            Ok(-&out)
        } else {
            Ok(out)
        }
    }
}
