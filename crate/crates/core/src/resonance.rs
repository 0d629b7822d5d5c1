//! The `p:q` resonance condition, the quadratic Hamiltonian `H0`, its
//! adjoint action and its flow.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{rational_from_f64, ComplexRational, ZPolynomial};

const RATIO_TOLERANCE: f64 = 1e-9;

/// `n` oscillators with `ω2/ω1 = p/q`, `gcd(p, q) = 1`, `p >= q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResonanceSpec {
    n: usize,
    p: u32,
    q: u32,
    omega: Option<Vec<f64>>,
}

impl ResonanceSpec {
    pub fn new(n: usize, p: u32, q: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        validate_pair(p, q)?;
        Ok(Self {
            n,
            p,
            q,
            omega: None,
        })
    }

    /// Attaches numerical frequencies. The resonant pair must satisfy the
    /// ratio to 1e-9 relative and the remaining frequencies must be distinct.
    pub fn with_omega(mut self, omega: Vec<f64>) -> Result<Self> {
        if omega.len() != self.n {
            return Err(Error::InvalidFrequencies(format!(
                "expected {} frequencies, got {}",
                self.n,
                omega.len()
            )));
        }
        if let Some(bad) = omega.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidFrequencies(format!(
                "{bad} is not a positive frequency"
            )));
        }
        let expected = self.p as f64 / self.q as f64;
        let ratio = omega[1] / omega[0];
        if ((ratio - expected) / expected).abs() > RATIO_TOLERANCE {
            return Err(Error::InvalidFrequencies(format!(
                "omega2/omega1 = {ratio} but the resonance requires {expected}"
            )));
        }
        for i in 0..self.n {
            for j in (i + 1).max(2)..self.n {
                if omega[i] == omega[j] {
                    return Err(Error::InvalidFrequencies(format!(
                        "omega{} equals omega{}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        self.omega = Some(omega);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn omega(&self) -> Option<&[f64]> {
        self.omega.as_deref()
    }

    /// Numerical frequencies: the attached ones, or `ω1 = q`, `ω2 = p` and
    /// irrational-looking spectator values that avoid low-order resonances.
    pub fn frequencies(&self) -> Vec<f64> {
        if let Some(w) = &self.omega {
            return w.clone();
        }
        let mut w = vec![self.q as f64, self.p as f64];
        for k in 3..=self.n {
            w.push((k - 1) as f64 * self.p as f64 + k as f64 * SQRT_2 / 10.0);
        }
        w
    }

    /// Exact frequencies for symbolic work, scaled so that `ω1 = q`, `ω2 = p`.
    pub fn symbolic_frequencies(&self) -> Vec<BigRational> {
        let numeric = self.frequencies();
        let scale = self.q as f64 / numeric[0];
        let mut w = vec![
            BigRational::from_integer(self.q.into()),
            BigRational::from_integer(self.p.into()),
        ];
        for v in &numeric[2..] {
            w.push(rational_from_f64(v * scale));
        }
        w
    }

    /// `H0 = -i Σ ω_k z_k z_k*` with the symbolic frequencies.
    pub fn h0(&self) -> ZPolynomial {
        let mut h = ZPolynomial::zero(self.n);
        for (k, w) in self.symbolic_frequencies().into_iter().enumerate() {
            let sigma = &ZPolynomial::z(self.n, k + 1) * &ZPolynomial::z_conj(self.n, k + 1);
            h = &h
                + &sigma.scale(&ComplexRational::new(
                    BigRational::from_integer(0.into()),
                    -w,
                ));
        }
        h
    }

    /// `ad_{H0} f = {H0, f}`; zero exactly when `f` is invariant.
    pub fn ad_h0(&self, f: &ZPolynomial) -> Result<ZPolynomial> {
        self.h0().poisson_bracket(f)
    }

    /// Harmonic flow: `z_k(t) = e^{-i ω_k t} z_k(0)`.
    pub fn flow_h0(&self, z0: &[Complex64], t: f64) -> Result<Vec<Complex64>> {
        if z0.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: z0.len(),
            });
        }
        Ok(self
            .frequencies()
            .iter()
            .zip(z0)
            .map(|(w, z)| Complex64::from_polar(1.0, -w * t) * z)
            .collect())
    }
}

pub(crate) fn validate_pair(p: u32, q: u32) -> Result<()> {
    let fail = |reason: &str| {
        Err(Error::InvalidResonance {
            p,
            q,
            reason: reason.into(),
        })
    };
    if p == 0 || q == 0 {
        return fail("p and q must be positive");
    }
    if p.gcd(&q) != 1 {
        return fail("gcd(p, q) must be 1");
    }
    if p < q {
        return fail("p must be >= q");
    }
    Ok(())
}
