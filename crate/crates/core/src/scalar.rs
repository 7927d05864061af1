//! Exact polynomial scalars.
//!
//! A [`Scalar`] is a multivariate polynomial with arbitrary-precision rational
//! coefficients over three kinds of variables: base coordinates `x1..xm`,
//! fiber coordinates `y1..yn`, and *jet symbols*.  A jet symbol stands for a
//! generic smooth function together with the (unordered) list of directions it
//! has been differentiated in; differentiation never closes, it simply grows
//! the multi-index.  Because the coefficient field is exact and jet symbols of
//! distinct multi-indices are independent variables, an identity in generic
//! smooth functions holds if and only if its canonical form here is the zero
//! polynomial — which is a decidable test.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational coefficient, always in lowest terms with a
/// positive denominator (maintained by `num-rational`).
pub type Rational = num_rational::BigRational;

/// Integer rational constant.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Rational constant `n/d`.  Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// A differentiation direction on the total space of a trivial bundle.
///
/// Fiber directions order before base directions, matching the coordinate
/// convention `y1, .., yn, x1, .., xm` used for exterior-algebra keys.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Axis {
    /// Fiber direction `d/dy_i`, 1-based.
    Fiber(u32),
    /// Base coordinate direction `d/dx^a`, 1-based.
    Coordinate(u32),
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Fiber(i) => write!(f, "y{i}"),
            Axis::Coordinate(a) => write!(f, "x{a}"),
        }
    }
}

/// A jet symbol: a formal smooth function identified by `tag`, differentiated
/// along the sorted multi-index `index`.
///
/// `on_total_space` records the function's domain: a base function (`false`)
/// is constant along fibers, so its fiber derivatives vanish instead of
/// growing the multi-index.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Jet {
    pub tag: String,
    pub on_total_space: bool,
    pub index: Vec<Axis>,
}

impl Jet {
    /// Derivative along `axis`: `None` encodes an identically zero derivative.
    fn derive(&self, axis: Axis) -> Option<Jet> {
        if let Axis::Fiber(_) = axis {
            if !self.on_total_space {
                return None;
            }
        }
        let mut index = self.index.clone();
        let pos = index.partition_point(|a| *a <= axis);
        index.insert(pos, axis);
        Some(Jet { tag: self.tag.clone(), on_total_space: self.on_total_space, index })
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        if !self.index.is_empty() {
            write!(f, "[")?;
            for (k, axis) in self.index.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{axis}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// A polynomial variable.  The derived ordering (coordinates, then fibers,
/// then jets by tag and multi-index) is the fixed total order underlying the
/// graded-lexicographic monomial order; any fixed order works, canonical
/// forms just have to agree on one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Variable {
    /// Base coordinate `x^a`, 1-based.
    Coordinate(u32),
    /// Fiber coordinate `y_i`, 1-based.
    Fiber(u32),
    /// Jet symbol.
    Jet(Jet),
}

impl Variable {
    /// Jet symbol for a generic function of the base coordinates only.
    pub fn jet(tag: &str) -> Variable {
        Variable::Jet(Jet { tag: tag.to_string(), on_total_space: false, index: Vec::new() })
    }

    /// Jet symbol for a generic function on the total space.
    pub fn total_jet(tag: &str) -> Variable {
        Variable::Jet(Jet { tag: tag.to_string(), on_total_space: true, index: Vec::new() })
    }

    /// Derivative of the variable along `axis`, as a scalar.
    fn derive(&self, axis: Axis) -> Scalar {
        match (self, axis) {
            (Variable::Coordinate(a), Axis::Coordinate(b)) if *a == b => Scalar::one(),
            (Variable::Fiber(i), Axis::Fiber(j)) if *i == j => Scalar::one(),
            (Variable::Jet(jet), _) => match jet.derive(axis) {
                Some(higher) => Scalar::var(Variable::Jet(higher)),
                None => Scalar::zero(),
            },
            _ => Scalar::zero(),
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Coordinate(a) => write!(f, "x{a}"),
            Variable::Fiber(i) => write!(f, "y{i}"),
            Variable::Jet(jet) => write!(f, "{jet}"),
        }
    }
}

/// A power product of variables, stored as a sorted list of
/// `(variable, exponent)` pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Variable, u32)>,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Monomial {
        Monomial::default()
    }

    /// A single variable.
    pub fn var(v: Variable) -> Monomial {
        Monomial { factors: vec![(v, 1)] }
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// Total degree in fiber variables only.
    pub fn fiber_degree(&self) -> u32 {
        self.factors
            .iter()
            .filter(|(v, _)| matches!(v, Variable::Fiber(_)))
            .map(|(_, e)| e)
            .sum()
    }

    /// Whether any jet symbol occurs.
    pub fn has_jet(&self) -> bool {
        self.factors.iter().any(|(v, _)| matches!(v, Variable::Jet(_)))
    }

    /// Whether any fiber variable occurs.
    pub fn has_fiber(&self) -> bool {
        self.factors.iter().any(|(v, _)| matches!(v, Variable::Fiber(_)))
    }

    /// The factors in variable order.
    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.factors
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                Ordering::Less => {
                    factors.push(self.factors[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push(other.factors[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    factors.push((self.factors[i].0.clone(), self.factors[i].1 + other.factors[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        Monomial { factors }
    }

    /// Exact monomial quotient, if `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut factors = Vec::with_capacity(self.factors.len());
        let mut i = 0;
        for (v, e) in &other.factors {
            loop {
                let (sv, se) = self.factors.get(i)?;
                match sv.cmp(v) {
                    Ordering::Less => {
                        factors.push((sv.clone(), *se));
                        i += 1;
                    }
                    Ordering::Equal => {
                        if se < e {
                            return None;
                        }
                        if se > e {
                            factors.push((sv.clone(), se - e));
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Greater => return None,
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        Some(Monomial { factors })
    }
}

/// Graded-lexicographic order: total degree first, then lexicographic
/// comparison of exponent vectors with respect to the variable order.
impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.factors.get(i), other.factors.get(j)) {
                    (None, None) => return Ordering::Equal,
                    // An extra factor is a positive exponent where the other
                    // side has zero on an earlier variable: lex-greater.
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((v, e)), Some((w, f))) => match v.cmp(w) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match e.cmp(f) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            unequal => return unequal,
                        },
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Errors from scalar operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    /// A jet variable with a non-empty multi-index was bound directly; jet
    /// families may only be bound jointly through their undifferentiated
    /// symbol, from which the engine derives all member bindings.
    #[error("partially bound jet family: cannot bind derivative symbol {0} directly")]
    PartiallyBoundJetFamily(String),
    /// A base-only jet symbol was bound to a realization involving fiber
    /// variables or total-space symbols.
    #[error("realization of base function {0} depends on fiber coordinates")]
    RealizationNotBasic(String),
}

/// Substitution table.  Coordinate and fiber variables are replaced directly;
/// a binding for an undifferentiated jet symbol supplies a polynomial
/// realization of the whole jet family, and every differentiated member is
/// replaced by the corresponding derivative of the realization.  Unbound
/// variables are left untouched.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    map: BTreeMap<Variable, Scalar>,
}

impl Bindings {
    pub fn new() -> Bindings {
        Bindings::default()
    }

    /// Bind one variable.  Jet keys must be undifferentiated and, for base
    /// functions, the realization must not involve fiber data.
    pub fn bind(mut self, v: Variable, value: Scalar) -> Result<Bindings, ScalarError> {
        if let Variable::Jet(jet) = &v {
            if !jet.index.is_empty() {
                return Err(ScalarError::PartiallyBoundJetFamily(jet.to_string()));
            }
            if !jet.on_total_space && value.depends_on_fiber() {
                return Err(ScalarError::RealizationNotBasic(jet.tag.clone()));
            }
        }
        self.map.insert(v, value);
        Ok(self)
    }

    fn lookup(&self, v: &Variable) -> Option<Scalar> {
        if let Some(s) = self.map.get(v) {
            return Some(s.clone());
        }
        if let Variable::Jet(jet) = v {
            if !jet.index.is_empty() {
                let family = Variable::Jet(Jet {
                    tag: jet.tag.clone(),
                    on_total_space: jet.on_total_space,
                    index: Vec::new(),
                });
                if let Some(realization) = self.map.get(&family) {
                    let mut value = realization.clone();
                    for axis in &jet.index {
                        value = value.derivative(*axis);
                    }
                    return Some(value);
                }
            }
        }
        None
    }
}

/// An exact multivariate polynomial in canonical form: a map from monomials
/// to non-zero rational coefficients.  Equality of canonical forms is
/// equality in the ring, so `is_zero` decides identities.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Scalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::default()
    }

    pub fn one() -> Scalar {
        Scalar::constant(Rational::one())
    }

    /// Constant polynomial.
    pub fn constant(c: Rational) -> Scalar {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Scalar { terms }
    }

    /// Integer constant.
    pub fn from_int(n: i64) -> Scalar {
        Scalar::constant(rat(n))
    }

    /// A single variable.
    pub fn var(v: Variable) -> Scalar {
        Scalar::monomial(Monomial::var(v), Rational::one())
    }

    /// Base coordinate `x^a`.
    pub fn coordinate(a: u32) -> Scalar {
        Scalar::var(Variable::Coordinate(a))
    }

    /// Fiber coordinate `y_i`.
    pub fn fiber(i: u32) -> Scalar {
        Scalar::var(Variable::Fiber(i))
    }

    /// Generic function of the base coordinates.
    pub fn jet(tag: &str) -> Scalar {
        Scalar::var(Variable::jet(tag))
    }

    /// Generic function on the total space.
    pub fn total_jet(tag: &str) -> Scalar {
        Scalar::var(Variable::total_jet(tag))
    }

    /// Single-term polynomial.
    pub fn monomial(m: Monomial, c: Rational) -> Scalar {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<&Rational> {
        if self.terms.is_empty() {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        (self.terms.len() == 1 && m.factors.is_empty()).then_some(c)
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Whether any jet symbol occurs.
    pub fn has_jet(&self) -> bool {
        self.terms.keys().any(Monomial::has_jet)
    }

    /// Whether any fiber variable or total-space jet occurs.
    pub fn depends_on_fiber(&self) -> bool {
        self.terms.keys().any(|m| {
            m.factors.iter().any(|(v, _)| match v {
                Variable::Fiber(_) => true,
                Variable::Jet(jet) => jet.on_total_space,
                Variable::Coordinate(_) => false,
            })
        })
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self^k` by repeated multiplication.
    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by a rational constant.
    pub fn scale(&self, c: &Rational) -> Scalar {
        let mut out = Scalar::zero();
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    /// Total derivative along `axis`.  Coordinate and fiber variables follow
    /// the power rule; a jet symbol picks up `axis` in its multi-index, so the
    /// result is again exact and further derivatives commute.
    pub fn derivative(&self, axis: Axis) -> Scalar {
        let mut out = Scalar::zero();
        for (mono, coeff) in &self.terms {
            for (pos, (v, e)) in mono.factors.iter().enumerate() {
                let dv = v.derive(axis);
                if dv.is_zero() {
                    continue;
                }
                // coeff * e * (mono with this factor's exponent lowered) * dv
                let mut rest = Monomial { factors: Vec::with_capacity(mono.factors.len()) };
                for (qos, (w, g)) in mono.factors.iter().enumerate() {
                    let g = if qos == pos { g - 1 } else { *g };
                    if g > 0 {
                        rest.factors.push((w.clone(), g));
                    }
                }
                let term = Scalar::monomial(rest, coeff * rat(i64::from(*e)));
                out = &out + &(&term * &dv);
            }
        }
        out
    }

    /// Substitute according to `bindings`; see [`Bindings`].
    pub fn substitute(&self, bindings: &Bindings) -> Scalar {
        let mut out = Scalar::zero();
        for (mono, coeff) in &self.terms {
            let mut acc = Scalar::constant(coeff.clone());
            for (v, e) in &mono.factors {
                let base = match bindings.lookup(v) {
                    Some(value) => value,
                    None => Scalar::var(v.clone()),
                };
                acc = &acc * &base.pow(*e);
            }
            out = &out + &acc;
        }
        out
    }

    /// Exact polynomial quotient `self / divisor`, or `None` when the
    /// division leaves a remainder.  Uses leading-term elimination in the
    /// graded-lexicographic order.
    pub fn div_exact(&self, divisor: &Scalar) -> Option<Scalar> {
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Scalar::zero();
        while let Some((rm, rc)) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            let t = Scalar::monomial(qm, qc);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

/// Canonical rendering: terms in descending graded-lexicographic order,
/// `+`/`-` separated, unit coefficients suppressed.  The output for jet-free
/// scalars re-parses under the expression grammar.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            if k == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.abs();
            if mono.factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}
