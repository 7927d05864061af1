//! Exterior algebra over the free module of bundle sections and over the
//! tangent spaces of the base and total space.
//!
//! Five sparse types share one storage convention: coefficients are kept on
//! strictly increasing keys only, and any constructor that receives an
//! unsorted key first sorts it, multiplying the coefficient by the sign of
//! the sorting permutation (a repeated entry kills the term).  All maps are
//! ordered, so canonical forms — and therefore printed witnesses — are
//! deterministic.
//!
//! The interior product uses the front-slot convention
//! `i_{v1^..^vk}(alpha) = alpha(v1, .., vk, ., .., .)`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::{Axis, Scalar};

/// Errors from exterior-algebra operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("space mismatch: ({0}) vs ({1})")]
    SpaceMismatch(SpaceDims, SpaceDims),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("degree underflow: cannot contract degree {wanted} out of degree {degree}")]
    DegreeUnderflow { degree: u32, wanted: u32 },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: u32, bound: u32 },
    #[error("jet symbols present: the operation is defined for concrete coefficients only")]
    JetSymbolsPresent,
    #[error("expected {expected} arguments, found {found}")]
    ArgumentCount { expected: usize, found: usize },
}

/// Dimensions of the space a field lives on; `fiber_dim == 0` means the base.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SpaceDims {
    pub fiber_dim: u32,
    pub base_dim: u32,
}

impl SpaceDims {
    /// The base manifold `R^m`.
    pub fn base(m: u32) -> SpaceDims {
        SpaceDims { fiber_dim: 0, base_dim: m }
    }

    /// The total space of the trivial rank-`n` bundle over `R^m`.
    pub fn total(n: u32, m: u32) -> SpaceDims {
        SpaceDims { fiber_dim: n, base_dim: m }
    }

    /// All axes in canonical order: fibers `y1..yn`, then coordinates `x1..xm`.
    pub fn axes(&self) -> impl Iterator<Item = Axis> {
        let n = self.fiber_dim;
        let m = self.base_dim;
        (1..=n).map(Axis::Fiber).chain((1..=m).map(Axis::Coordinate))
    }

    pub fn contains(&self, axis: Axis) -> bool {
        match axis {
            Axis::Fiber(i) => i >= 1 && i <= self.fiber_dim,
            Axis::Coordinate(a) => a >= 1 && a <= self.base_dim,
        }
    }

    /// Dimension of the space, i.e. the top exterior degree.
    pub fn top_degree(&self) -> u32 {
        self.fiber_dim + self.base_dim
    }
}

impl fmt::Display for SpaceDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.fiber_dim == 0 {
            write!(f, "base dim {}", self.base_dim)
        } else {
            write!(f, "fiber dim {}, base dim {}", self.fiber_dim, self.base_dim)
        }
    }
}

/// Sorts `key`, returning the permutation sign, or `None` on a repeat.
pub(crate) fn sort_with_sign<K: Ord>(mut key: Vec<K>) -> Option<(Vec<K>, i64)> {
    // Insertion sort counting inversions; keys are tiny.
    let mut sign = 1i64;
    for i in 1..key.len() {
        let mut j = i;
        while j > 0 && key[j - 1] > key[j] {
            key.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if key.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((key, sign))
}

/// Merges two strictly increasing keys, returning the shuffle sign, or `None`
/// when they overlap.
fn merge_with_sign<K: Ord + Clone>(a: &[K], b: &[K]) -> Option<(Vec<K>, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut sign = 1i64;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // b[j] jumps over the remaining entries of a.
                if (a.len() - i) % 2 == 1 {
                    sign = -sign;
                }
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, sign))
}

/// Shared rendering for linear combinations; an empty symbol prints the bare
/// coefficient (used by degree-0 terms).
pub(crate) fn fmt_linear<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Scalar, String)>,
) -> fmt::Result {
    use num_traits::{One, Signed};
    let mut first = true;
    let mut any = false;
    for (coeff, symbol) in terms {
        if coeff.is_zero() {
            continue;
        }
        any = true;
        let mut body;
        let mut negative = false;
        let single: Vec<_> = coeff.terms().collect();
        if symbol.is_empty() {
            body = coeff.to_string();
            // fmt_linear renders the sign itself only for prefixed symbols;
            // a bare scalar already carries its own sign.
            if first {
                write!(f, "{body}")?;
                first = false;
                continue;
            }
            // For later positions, split the leading sign off single terms.
            if single.len() == 1 && single[0].1.is_negative() {
                negative = true;
                body = body.trim_start_matches('-').to_string();
            }
        } else if single.len() == 1 {
            let (mono, c) = single[0];
            negative = c.is_negative();
            let mag = c.abs();
            let mono_empty = mono.factors().is_empty();
            if mono_empty {
                if mag.is_one() {
                    body = symbol.clone();
                } else {
                    body = format!("{mag}*{symbol}");
                }
            } else if mag.is_one() {
                body = format!("{mono}*{symbol}");
            } else {
                body = format!("{mag}*{mono}*{symbol}");
            }
        } else {
            body = format!("({coeff})*{symbol}");
        }
        if first {
            if negative {
                write!(f, "-")?;
            }
            write!(f, "{body}")?;
            first = false;
        } else if negative {
            write!(f, " - {body}")?;
        } else {
            write!(f, " + {body}")?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

/// A section of the trivial rank-`r` bundle: one scalar coefficient per frame
/// element `e1..er`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Section {
    coeffs: Vec<Scalar>,
}

impl Section {
    /// Section with the given frame coefficients; the length is the rank.
    pub fn new(coeffs: Vec<Scalar>) -> Section {
        assert!(!coeffs.is_empty(), "rank must be at least 1");
        Section { coeffs }
    }

    pub fn zero(rank: u32) -> Section {
        Section::new(vec![Scalar::zero(); rank as usize])
    }

    /// Frame element `e_j`, 1-based.
    pub fn basis(rank: u32, j: u32) -> Section {
        assert!(j >= 1 && j <= rank, "frame index {j} out of range 1..={rank}");
        let mut coeffs = vec![Scalar::zero(); rank as usize];
        coeffs[(j - 1) as usize] = Scalar::one();
        Section::new(coeffs)
    }

    pub fn rank(&self) -> u32 {
        self.coeffs.len() as u32
    }

    /// Coefficient of `e_j`, 1-based.
    pub fn coeff(&self, j: u32) -> &Scalar {
        &self.coeffs[(j - 1) as usize]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Section {
        Section::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// The same section as a degree-1 multisection.
    pub fn as_multi(&self) -> MultiSection {
        let mut out = MultiSection::zero(self.rank(), 1);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.add_term(vec![j as u32 + 1], c.clone());
        }
        out
    }
}

impl std::ops::Add for &Section {
    type Output = Section;
    fn add(self, rhs: &Section) -> Section {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        Section::new(
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        )
    }
}

impl std::ops::Sub for &Section {
    type Output = Section;
    fn sub(self, rhs: &Section) -> Section {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        Section::new(
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        )
    }
}

impl std::ops::Neg for &Section {
    type Output = Section;
    fn neg(self) -> Section {
        Section::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (c, format!("e{}", j + 1))),
        )
    }
}

/// An element of the exterior power `Lambda^k` of the section module, stored
/// on strictly increasing frame-index tuples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiSection {
    rank: u32,
    degree: u32,
    coeffs: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiSection {
    pub fn zero(rank: u32, degree: u32) -> MultiSection {
        MultiSection { rank, degree, coeffs: BTreeMap::new() }
    }

    /// The unit of degree 0.
    pub fn unit(rank: u32) -> MultiSection {
        let mut out = MultiSection::zero(rank, 0);
        out.add_term(Vec::new(), Scalar::one());
        out
    }

    /// Basis wedge `e_{i1} ^ .. ^ e_{ik}` for a strictly increasing key.
    pub fn basis(rank: u32, key: &[u32]) -> MultiSection {
        let mut out = MultiSection::zero(rank, key.len() as u32);
        out.add_term(key.to_vec(), Scalar::one());
        out
    }

    /// Adds `c` on `key` (any order; sorted here with the permutation sign).
    pub fn add_term(&mut self, key: Vec<u32>, c: Scalar) {
        assert_eq!(key.len() as u32, self.degree, "key length must equal degree");
        for &i in &key {
            assert!(i >= 1 && i <= self.rank, "frame index {i} out of range 1..={}", self.rank);
        }
        let Some((key, sign)) = sort_with_sign(key) else { return };
        let c = if sign < 0 { -&c } else { c };
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
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

    /// Coefficient on a strictly increasing key.
    pub fn coeff(&self, key: &[u32]) -> Scalar {
        self.coeffs.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, s: &Scalar) -> MultiSection {
        let mut out = MultiSection::zero(self.rank, self.degree);
        for (k, c) in &self.coeffs {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    /// Wedge product; degrees add.
    pub fn wedge(&self, other: &MultiSection) -> Result<MultiSection, ExteriorError> {
        if self.rank != other.rank {
            return Err(ExteriorError::RankMismatch { left: self.rank, right: other.rank });
        }
        let mut out = MultiSection::zero(self.rank, self.degree + other.degree);
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                if let Some((key, sign)) = merge_with_sign(ka, kb) {
                    let c = ca * cb;
                    out.add_term(key, if sign < 0 { -&c } else { c });
                }
            }
        }
        Ok(out)
    }
}

impl std::ops::Add for &MultiSection {
    type Output = MultiSection;
    fn add(self, rhs: &MultiSection) -> MultiSection {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MultiSection {
    type Output = MultiSection;
    fn sub(self, rhs: &MultiSection) -> MultiSection {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl fmt::Display for MultiSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(
            f,
            self.coeffs.iter().map(|(k, c)| {
                let symbol = k
                    .iter()
                    .map(|i| format!("e{i}"))
                    .collect::<Vec<_>>()
                    .join("^");
                (c, symbol)
            }),
        )
    }
}

/// Wedge of sections, left to right; the empty product is the unit.
pub fn wedge_sections(rank: u32, sections: &[Section]) -> Result<MultiSection, ExteriorError> {
    let mut acc = MultiSection::unit(rank);
    for s in sections {
        if s.rank() != rank {
            return Err(ExteriorError::RankMismatch { left: rank, right: s.rank() });
        }
        acc = acc.wedge(&s.as_multi())?;
    }
    Ok(acc)
}

/// A vector field on the base or total space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    dims: SpaceDims,
    coeffs: BTreeMap<Axis, Scalar>,
}

impl VectorField {
    pub fn zero(dims: SpaceDims) -> VectorField {
        VectorField { dims, coeffs: BTreeMap::new() }
    }

    /// Coordinate field `d/d(axis)`.
    pub fn basis(dims: SpaceDims, axis: Axis) -> VectorField {
        let mut out = VectorField::zero(dims);
        out.add_component(axis, Scalar::one());
        out
    }

    pub fn add_component(&mut self, axis: Axis, c: Scalar) {
        assert!(self.dims.contains(axis), "axis {axis} outside {}", self.dims);
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(axis) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn dims(&self) -> SpaceDims {
        self.dims
    }

    pub fn coeff(&self, axis: Axis) -> Scalar {
        self.coeffs.get(&axis).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Axis, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> VectorField {
        let mut out = VectorField::zero(self.dims);
        for (a, c) in &self.coeffs {
            out.add_component(*a, c * s);
        }
        out
    }

    /// Derivation action on scalars: `X(s) = sum_a X^a ds/da`.
    pub fn apply(&self, s: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (axis, c) in &self.coeffs {
            out = &out + &(c * &s.derivative(*axis));
        }
        out
    }

    /// Commutator of derivations: `[X, Y](s) = X(Y(s)) - Y(X(s))`.
    pub fn lie_bracket(&self, other: &VectorField) -> Result<VectorField, ExteriorError> {
        if self.dims != other.dims {
            return Err(ExteriorError::SpaceMismatch(self.dims, other.dims));
        }
        let mut out = VectorField::zero(self.dims);
        for (axis, c) in &other.coeffs {
            out.add_component(*axis, self.apply(c));
        }
        for (axis, c) in &self.coeffs {
            out.add_component(*axis, -&other.apply(c));
        }
        Ok(out)
    }

    /// Reinterprets a base vector field on the total space (coefficients are
    /// unchanged; they do not involve fiber data).
    pub fn lift(&self, dims: SpaceDims) -> VectorField {
        assert_eq!(self.dims.fiber_dim, 0, "lift starts from a base field");
        assert_eq!(self.dims.base_dim, dims.base_dim, "base dimension must agree");
        VectorField { dims, coeffs: self.coeffs.clone() }
    }

    /// The same field as a degree-1 multivector.
    pub fn as_multi(&self) -> MultiVectorField {
        let mut out = MultiVectorField::zero(self.dims, 1);
        for (axis, c) in &self.coeffs {
            out.add_term(vec![*axis], c.clone());
        }
        out
    }
}

impl std::ops::Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        assert_eq!(self.dims, rhs.dims, "space mismatch");
        let mut out = self.clone();
        for (a, c) in &rhs.coeffs {
            out.add_component(*a, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        assert_eq!(self.dims, rhs.dims, "space mismatch");
        let mut out = self.clone();
        for (a, c) in &rhs.coeffs {
            out.add_component(*a, -c);
        }
        out
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(f, self.coeffs.iter().map(|(a, c)| (c, format!("d/d{a}"))))
    }
}

/// A multivector field, stored on strictly increasing axis tuples (fibers
/// before base coordinates).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiVectorField {
    dims: SpaceDims,
    degree: u32,
    coeffs: BTreeMap<Vec<Axis>, Scalar>,
}

impl MultiVectorField {
    pub fn zero(dims: SpaceDims, degree: u32) -> MultiVectorField {
        MultiVectorField { dims, degree, coeffs: BTreeMap::new() }
    }

    pub fn unit(dims: SpaceDims) -> MultiVectorField {
        let mut out = MultiVectorField::zero(dims, 0);
        out.add_term(Vec::new(), Scalar::one());
        out
    }

    /// Basis multivector for a strictly increasing axis tuple.
    pub fn basis(dims: SpaceDims, key: &[Axis]) -> MultiVectorField {
        let mut out = MultiVectorField::zero(dims, key.len() as u32);
        out.add_term(key.to_vec(), Scalar::one());
        out
    }

    pub fn add_term(&mut self, key: Vec<Axis>, c: Scalar) {
        assert_eq!(key.len() as u32, self.degree, "key length must equal degree");
        for &a in &key {
            assert!(self.dims.contains(a), "axis {a} outside {}", self.dims);
        }
        let Some((key, sign)) = sort_with_sign(key) else { return };
        let c = if sign < 0 { -&c } else { c };
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn dims(&self) -> SpaceDims {
        self.dims
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, key: &[Axis]) -> Scalar {
        self.coeffs.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Axis>, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, s: &Scalar) -> MultiVectorField {
        let mut out = MultiVectorField::zero(self.dims, self.degree);
        for (k, c) in &self.coeffs {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    pub fn wedge(&self, other: &MultiVectorField) -> Result<MultiVectorField, ExteriorError> {
        if self.dims != other.dims {
            return Err(ExteriorError::SpaceMismatch(self.dims, other.dims));
        }
        let mut out = MultiVectorField::zero(self.dims, self.degree + other.degree);
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                if let Some((key, sign)) = merge_with_sign(ka, kb) {
                    let c = ca * cb;
                    out.add_term(key, if sign < 0 { -&c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Front-slot interior product `i_K(alpha)`.
    pub fn interior_product(
        &self,
        alpha: &DifferentialForm,
    ) -> Result<DifferentialForm, ExteriorError> {
        if self.dims != alpha.dims {
            return Err(ExteriorError::SpaceMismatch(self.dims, alpha.dims));
        }
        if alpha.degree < self.degree {
            return Err(ExteriorError::DegreeUnderflow {
                degree: alpha.degree,
                wanted: self.degree,
            });
        }
        let mut out = DifferentialForm::zero(self.dims, alpha.degree - self.degree);
        for (kv, cv) in &self.coeffs {
            'form: for (kf, cf) in &alpha.coeffs {
                // Plug the basis vectors of kv into the first slots of the
                // basis form kf: zero unless kv is a subset of kf, otherwise
                // the sign is the Laplace cofactor sign of the occupied rows.
                let mut sign = 1i64;
                let mut rest: Vec<Axis> = kf.clone();
                for (b, axis) in kv.iter().enumerate() {
                    match kf.iter().position(|a| a == axis) {
                        None => continue 'form,
                        Some(p) => {
                            // 1-based row position p+1, column b+1.
                            if (p + b) % 2 == 1 {
                                sign = -sign;
                            }
                            rest.retain(|a| a != axis);
                        }
                    }
                }
                let c = cv * cf;
                out.add_term(rest, if sign < 0 { -&c } else { c });
            }
        }
        Ok(out)
    }

    /// Evaluates the multivector on the gradients of `fs`:
    /// `P(df_1, .., df_k) = sum_K P^K det[ d f_a / d K_b ]`.
    pub fn pair_with_gradients(&self, fs: &[Scalar]) -> Result<Scalar, ExteriorError> {
        if fs.len() as u32 != self.degree {
            return Err(ExteriorError::ArgumentCount {
                expected: self.degree as usize,
                found: fs.len(),
            });
        }
        let mut out = Scalar::zero();
        for (key, c) in &self.coeffs {
            let rows: Vec<Vec<Scalar>> = fs
                .iter()
                .map(|f| key.iter().map(|axis| f.derivative(*axis)).collect())
                .collect();
            out = &out + &(c * &scalar_det(&rows));
        }
        Ok(out)
    }
}

impl std::ops::Add for &MultiVectorField {
    type Output = MultiVectorField;
    fn add(self, rhs: &MultiVectorField) -> MultiVectorField {
        assert_eq!(self.dims, rhs.dims, "space mismatch");
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MultiVectorField {
    type Output = MultiVectorField;
    fn sub(self, rhs: &MultiVectorField) -> MultiVectorField {
        assert_eq!(self.dims, rhs.dims, "space mismatch");
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl fmt::Display for MultiVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(
            f,
            self.coeffs.iter().map(|(k, c)| {
                let symbol = k
                    .iter()
                    .map(|a| format!("d/d{a}"))
                    .collect::<Vec<_>>()
                    .join("^");
                (c, symbol)
            }),
        )
    }
}

/// Determinant of a small square matrix of scalars by Laplace expansion.
pub(crate) fn scalar_det(rows: &[Vec<Scalar>]) -> Scalar {
    let k = rows.len();
    if k == 0 {
        return Scalar::one();
    }
    if k == 1 {
        return rows[0][0].clone();
    }
    let mut out = Scalar::zero();
    for (i, row) in rows.iter().enumerate() {
        if row[0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> = rows
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| r[1..].to_vec())
            .collect();
        let term = &row[0] * &scalar_det(&minor);
        out = if i % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

/// A differential form on the base or total space, stored on strictly
/// increasing axis tuples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DifferentialForm {
    dims: SpaceDims,
    degree: u32,
    coeffs: BTreeMap<Vec<Axis>, Scalar>,
}

impl DifferentialForm {
    pub fn zero(dims: SpaceDims, degree: u32) -> DifferentialForm {
        DifferentialForm { dims, degree, coeffs: BTreeMap::new() }
    }

    /// The constant function 1 as a 0-form.
    pub fn unit(dims: SpaceDims) -> DifferentialForm {
        let mut out = DifferentialForm::zero(dims, 0);
        out.add_term(Vec::new(), Scalar::one());
        out
    }

    /// The volume form `dz_1 ^ .. ^ dz_top` in canonical axis order.
    pub fn volume(dims: SpaceDims) -> DifferentialForm {
        let key: Vec<Axis> = dims.axes().collect();
        let mut out = DifferentialForm::zero(dims, dims.top_degree());
        out.add_term(key, Scalar::one());
        out
    }

    pub fn basis(dims: SpaceDims, key: &[Axis]) -> DifferentialForm {
        let mut out = DifferentialForm::zero(dims, key.len() as u32);
        out.add_term(key.to_vec(), Scalar::one());
        out
    }

    pub fn add_term(&mut self, key: Vec<Axis>, c: Scalar) {
        assert_eq!(key.len() as u32, self.degree, "key length must equal degree");
        for &a in &key {
            assert!(self.dims.contains(a), "axis {a} outside {}", self.dims);
        }
        let Some((key, sign)) = sort_with_sign(key) else { return };
        let c = if sign < 0 { -&c } else { c };
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn dims(&self) -> SpaceDims {
        self.dims
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, key: &[Axis]) -> Scalar {
        self.coeffs.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Axis>, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, s: &Scalar) -> DifferentialForm {
        let mut out = DifferentialForm::zero(self.dims, self.degree);
        for (k, c) in &self.coeffs {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    pub fn wedge(&self, other: &DifferentialForm) -> Result<DifferentialForm, ExteriorError> {
        if self.dims != other.dims {
            return Err(ExteriorError::SpaceMismatch(self.dims, other.dims));
        }
        let mut out = DifferentialForm::zero(self.dims, self.degree + other.degree);
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                if let Some((key, sign)) = merge_with_sign(ka, kb) {
                    let c = ca * cb;
                    out.add_term(key, if sign < 0 { -&c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative `d(f dz_K) = sum_a (df/da) dz_a ^ dz_K`.
    ///
    /// Defined for concrete coefficients only: jet symbols would make the
    /// coefficient ring non-closed under the grading this uses downstream.
    pub fn exterior_derivative(&self) -> Result<DifferentialForm, ExteriorError> {
        if self.coeffs.values().any(Scalar::has_jet) {
            return Err(ExteriorError::JetSymbolsPresent);
        }
        let mut out = DifferentialForm::zero(self.dims, self.degree + 1);
        for (key, c) in &self.coeffs {
            for axis in self.dims.axes() {
                let dc = c.derivative(axis);
                if dc.is_zero() {
                    continue;
                }
                let mut new_key = Vec::with_capacity(key.len() + 1);
                new_key.push(axis);
                new_key.extend_from_slice(key);
                out.add_term(new_key, dc);
            }
        }
        Ok(out)
    }
}

impl std::ops::Add for &DifferentialForm {
    type Output = DifferentialForm;
    fn add(self, rhs: &DifferentialForm) -> DifferentialForm {
        assert_eq!(self.dims, rhs.dims, "space mismatch");
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &DifferentialForm {
    type Output = DifferentialForm;
    fn sub(self, rhs: &DifferentialForm) -> DifferentialForm {
        assert_eq!(self.dims, rhs.dims, "space mismatch");
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(
            f,
            self.coeffs.iter().map(|(k, c)| {
                let symbol = k
                    .iter()
                    .map(|a| format!("d{a}"))
                    .collect::<Vec<_>>()
                    .join("^");
                (c, symbol)
            }),
        )
    }
}
