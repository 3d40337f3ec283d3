use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};

use super::Rational;
use crate::error::{CrnError, Result};

/// A monomial exponent vector: one nonnegative integer per species.
///
/// Doubles as a lattice vertex of an embedded reaction graph. Ordering is
/// graded lexicographic (total degree first, then entry-wise), which fixes the
/// canonical term order used everywhere for serialization.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    pub fn zero(dim: usize) -> Self {
        Exponent(vec![0; dim])
    }

    /// The standard unit vector for species `i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Exponent(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Component-wise sum (monomial product).
    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.dim(), other.dim());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn to_i64_vec(&self) -> Vec<i64> {
        self.0.iter().map(|&e| e as i64).collect()
    }

    /// Builds an exponent from signed entries, failing on any negative one.
    pub fn try_from_i64(entries: &[i64]) -> Result<Exponent> {
        if entries.iter().any(|&e| e < 0) {
            return Err(CrnError::OrthantViolation {
                vertex: entries.to_vec(),
            });
        }
        Ok(Exponent(entries.iter().map(|&e| e as u32).collect()))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A sparse multivariate polynomial with exact rational coefficients.
///
/// Invariants: every stored coefficient is nonzero and every exponent has the
/// polynomial's dimension. Consequently `==` is semantic equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(dim);
        if !c.is_zero() {
            p.terms.insert(Exponent::zero(dim), c);
        }
        p
    }

    pub fn one(dim: usize) -> Self {
        Polynomial::constant(dim, Rational::one())
    }

    /// The polynomial `x_i`.
    pub fn variable(dim: usize, i: usize) -> Self {
        Polynomial::monomial(Exponent::unit(dim, i), Rational::one())
    }

    pub fn monomial(exp: Exponent, coeff: Rational) -> Self {
        let mut p = Polynomial::zero(exp.dim());
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    /// Collects terms, summing duplicates and dropping zero coefficients.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Polynomial::zero(dim);
        for (e, c) in terms {
            if e.dim() != dim {
                return Err(CrnError::DimensionMismatch {
                    left: dim,
                    right: e.dim(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    /// The coefficient of `x^e` (zero if absent).
    pub fn coeff(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|e| e.total_degree()).max().unwrap_or(0)
    }

    /// True when any stored coefficient is negative.
    pub fn has_negative_term(&self) -> bool {
        use num_traits::Signed;
        self.terms.values().any(|c| c.is_negative())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = Polynomial::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    fn check_dim(&self, other: &Polynomial) -> Result<()> {
        if self.dim != other.dim {
            return Err(CrnError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// Multiplies by the scalar `c`.
    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c * x^e`.
    pub fn mul_monomial(&self, e: &Exponent, c: &Rational) -> Polynomial {
        assert_eq!(self.dim, e.dim(), "monomial dimension mismatch");
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.add(e), k * c))
                .collect(),
        }
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.dim {
            return Err(CrnError::DimensionMismatch {
                left: self.dim,
                right: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e.entries()) {
                for _ in 0..k {
                    m *= x;
                }
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Double-precision evaluation.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.dim, "evaluation point dimension mismatch");
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut m = c.to_f64().unwrap_or(f64::NAN);
            for (x, &k) in point.iter().zip(e.entries()) {
                m *= x.powi(k as i32);
            }
            acc += m;
        }
        acc
    }

    /// The exact partial derivative with respect to species `i`.
    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        assert!(i < self.dim);
        let mut out = Polynomial::zero(self.dim);
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k == 0 {
                continue;
            }
            let mut entries = e.entries().to_vec();
            entries[i] -= 1;
            out.add_term(Exponent::new(entries), c * Rational::from_integer(k.into()));
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

/// A vector of `n` polynomials in `n` species: a polynomial vector field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVector {
    components: Vec<Polynomial>,
}

impl PolyVector {
    /// All components must share dimension `components.len()`.
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        for c in &components {
            if c.dim() != n {
                return Err(CrnError::DimensionMismatch {
                    left: n,
                    right: c.dim(),
                });
            }
        }
        Ok(PolyVector { components })
    }

    pub fn zero(dim: usize) -> Self {
        PolyVector {
            components: (0..dim).map(|_| Polynomial::zero(dim)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn checked_add(&self, other: &PolyVector) -> Result<PolyVector> {
        if self.dim() != other.dim() {
            return Err(CrnError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyVector { components })
    }

    pub fn scale(&self, c: &Rational) -> PolyVector {
        PolyVector {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_monomial(&self, e: &Exponent, c: &Rational) -> PolyVector {
        PolyVector {
            components: self.components.iter().map(|p| p.mul_monomial(e, c)).collect(),
        }
    }

    /// Component-wise product with a scalar polynomial.
    pub fn mul_polynomial(&self, h: &Polynomial) -> Result<PolyVector> {
        let components = self
            .components
            .iter()
            .map(|p| p.checked_mul(h))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyVector { components })
    }

    /// Union of the support exponents of all components, in canonical order.
    pub fn support_union(&self) -> Vec<Exponent> {
        let mut set: std::collections::BTreeSet<Exponent> = std::collections::BTreeSet::new();
        for c in &self.components {
            set.extend(c.support().cloned());
        }
        set.into_iter().collect()
    }

    /// The net coefficient vector of the monomial `x^e`, one entry per species.
    pub fn coeff_vector(&self, e: &Exponent) -> Vec<Rational> {
        self.components.iter().map(|c| c.coeff(e)).collect()
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|c| c.eval_rational(point)).collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval_f64(point)).collect()
    }

    /// The exact Jacobian matrix of polynomials, row `i` = gradient of component `i`.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial>> {
        let n = self.dim();
        self.components
            .iter()
            .map(|c| (0..n).map(|j| c.partial_derivative(j)).collect())
            .collect()
    }
}
