//! Exact polynomials in the complex phase-space variables `z_k`, `z_k*`.
//!
//! Coefficients are Gaussian rationals, so every bracket and syzygy identity
//! is checked with zero residual. Floating point only enters through
//! [`ZPolynomial::evaluate`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `re + i im` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        Self::from_integers(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Zero for ComplexRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ComplexRational {
    fn one() -> Self {
        Self::from_integers(1, 0)
    }
}

impl From<i64> for ComplexRational {
    fn from(v: i64) -> Self {
        Self::from_integers(v, 0)
    }
}

impl Add for ComplexRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ComplexRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for ComplexRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self::new(re, im)
    }
}

impl<'a> Mul<&'a ComplexRational> for &'a ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        self.clone() * rhs.clone()
    }
}

impl Neg for ComplexRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.re, self.im)
    }
}

/// `Π z_k^{a_k} z_k*^{b_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZMonomial {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl ZMonomial {
    pub fn new(a: Vec<u32>, b: Vec<u32>) -> Self {
        assert_eq!(a.len(), b.len(), "exponent vectors must have equal length");
        Self { a, b }
    }

    pub fn one(n: usize) -> Self {
        Self::new(vec![0; n], vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn degree(&self) -> u32 {
        self.a.iter().chain(self.b.iter()).sum()
    }

    fn mul(&self, rhs: &Self) -> Self {
        let a = self.a.iter().zip(&rhs.a).map(|(x, y)| x + y).collect();
        let b = self.b.iter().zip(&rhs.b).map(|(x, y)| x + y).collect();
        Self { a, b }
    }
}

impl Ord for ZMonomial {
    /// Graded-lex on the concatenated exponent vector `(a, b)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.a.cmp(&other.a))
            .then_with(|| self.b.cmp(&other.b))
    }
}

impl PartialOrd for ZMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Variable conjugated by a derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Z(usize),
    ZConj(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPolynomial {
    n: usize,
    terms: BTreeMap<ZMonomial, ComplexRational>,
}

impl ZPolynomial {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: ComplexRational) -> Self {
        Self::monomial(ZMonomial::one(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, ComplexRational::one())
    }

    pub fn monomial(m: ZMonomial, c: ComplexRational) -> Self {
        let mut p = Self::zero(m.n());
        p.add_term(m, c);
        p
    }

    /// The variable `z_k` (1-based `k`).
    pub fn z(n: usize, k: usize) -> Self {
        let mut a = vec![0; n];
        a[k - 1] = 1;
        Self::monomial(ZMonomial::new(a, vec![0; n]), ComplexRational::one())
    }

    /// The variable `z_k*` (1-based `k`).
    pub fn z_conj(n: usize, k: usize) -> Self {
        let mut b = vec![0; n];
        b[k - 1] = 1;
        Self::monomial(ZMonomial::new(vec![0; n], b), ComplexRational::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&ZMonomial, &ComplexRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &ZMonomial) -> ComplexRational {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(ComplexRational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(ZMonomial::degree).max()
    }

    fn add_term(&mut self, m: ZMonomial, c: ComplexRational) {
        assert_eq!(m.n(), self.n, "monomial dimension mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        let mut out = Self::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `z_k` or `z_k*` (1-based).
    pub fn derivative(&self, var: Var) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let mut m = m.clone();
            let e = match var {
                Var::Z(k) => &mut m.a[k - 1],
                Var::ZConj(k) => &mut m.b[k - 1],
            };
            if *e == 0 {
                continue;
            }
            let factor = ComplexRational::from(*e as i64);
            *e -= 1;
            out.add_term(m, c * &factor);
        }
        out
    }

    /// `{f, g} = -i Σ_k (∂f/∂z_k ∂g/∂z_k* - ∂f/∂z_k* ∂g/∂z_k)`, so that
    /// `{z_j, z_k*} = -i δ_jk`.
    pub fn poisson_bracket(&self, g: &Self) -> Result<Self> {
        self.check_dim(g)?;
        let mut sum = Self::zero(self.n);
        for k in 1..=self.n {
            let fz = self.derivative(Var::Z(k));
            let fzc = self.derivative(Var::ZConj(k));
            let gz = g.derivative(Var::Z(k));
            let gzc = g.derivative(Var::ZConj(k));
            sum = &sum + &(&(&fz * &gzc) - &(&fzc * &gz));
        }
        Ok(sum.scale(&-ComplexRational::i()))
    }

    /// Exchanges `z_k ↔ z_k*` and conjugates coefficients. This is the
    /// time-reversal map `p → -p` acting on a real-valued function.
    pub fn time_reversal(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(ZMonomial::new(m.b.clone(), m.a.clone()), c.conj());
        }
        out
    }

    /// Substitutes `z_k` and `conj(z_k)` for the variables.
    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: z.len(),
            });
        }
        let zc: Vec<Complex64> = z.iter().map(|v| v.conj()).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = c.to_complex64();
            for k in 0..self.n {
                term *= z[k].powu(m.a[k]) * zc[k].powu(m.b[k]);
            }
            acc += term;
        }
        Ok(acc)
    }
}

impl Add for &ZPolynomial {
    type Output = ZPolynomial;
    fn add(self, rhs: &ZPolynomial) -> ZPolynomial {
        self.checked_add(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Sub for &ZPolynomial {
    type Output = ZPolynomial;
    fn sub(self, rhs: &ZPolynomial) -> ZPolynomial {
        self.checked_sub(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Mul for &ZPolynomial {
    type Output = ZPolynomial;
    fn mul(self, rhs: &ZPolynomial) -> ZPolynomial {
        self.checked_mul(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Neg for &ZPolynomial {
    type Output = ZPolynomial;
    fn neg(self) -> ZPolynomial {
        self.scale(&-ComplexRational::one())
    }
}

impl fmt::Display for ZPolynomial {
    /// `(<re>,<im>) z1^a1 z1*^b1 ...` per term, canonical order, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for k in 0..self.n {
                if m.a[k] > 0 {
                    write!(f, " z{}^{}", k + 1, m.a[k])?;
                }
                if m.b[k] > 0 {
                    write!(f, " z{}*^{}", k + 1, m.b[k])?;
                }
            }
        }
        Ok(())
    }
}

/// Exact rational image of a finite float.
pub fn rational_from_f64(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite float")
}
