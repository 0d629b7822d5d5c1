//! Generators of the invariant algebra of a `p:q` resonance, their bracket
//! table and syzygy, and slices of the reduced phase space.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::poly::{ComplexRational, ZPolynomial};
use crate::resonance::ResonanceSpec;

/// Generator index: `-1`, `0`, or `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SigmaId(pub i32);

impl SigmaId {
    pub const MINUS_ONE: SigmaId = SigmaId(-1);
    pub const ZERO: SigmaId = SigmaId(0);

    /// Image under time reversal.
    pub fn time_reversed(self) -> SigmaId {
        match self.0 {
            -1 => SigmaId::ZERO,
            0 => SigmaId::MINUS_ONE,
            _ => self,
        }
    }
}

impl fmt::Display for SigmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    n: usize,
    sigma: BTreeMap<SigmaId, ZPolynomial>,
}

impl GeneratorSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, id: SigmaId) -> &ZPolynomial {
        &self.sigma[&id]
    }

    pub fn ids(&self) -> impl Iterator<Item = SigmaId> + '_ {
        self.sigma.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (SigmaId, &ZPolynomial)> {
        self.sigma.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }
}

fn pow_var(n: usize, k: usize, e: u32, conj: bool) -> ZPolynomial {
    let v = if conj {
        ZPolynomial::z_conj(n, k)
    } else {
        ZPolynomial::z(n, k)
    };
    v.pow(e)
}

/// `σ-1 = z1*^p z2^q`, `σ0 = z1^p z2*^q`, `σk = z_k z_k*`.
pub fn generators(spec: &ResonanceSpec) -> GeneratorSet {
    let (n, p, q) = (spec.n(), spec.p(), spec.q());
    let mut sigma = BTreeMap::new();
    sigma.insert(
        SigmaId::MINUS_ONE,
        &pow_var(n, 1, p, true) * &pow_var(n, 2, q, false),
    );
    sigma.insert(
        SigmaId::ZERO,
        &pow_var(n, 1, p, false) * &pow_var(n, 2, q, true),
    );
    for k in 1..=n {
        sigma.insert(
            SigmaId(k as i32),
            &ZPolynomial::z(n, k) * &ZPolynomial::z_conj(n, k),
        );
    }
    GeneratorSet { n, sigma }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BracketCheck {
    pub left: SigmaId,
    pub right: SigmaId,
    pub expected: ZPolynomial,
    pub computed: ZPolynomial,
    pub equal: bool,
}

/// Closed-form value of `{σ_left, σ_right}` for `left < right`.
fn expected_bracket(
    gens: &GeneratorSet,
    p: u32,
    q: u32,
    left: SigmaId,
    right: SigmaId,
) -> ZPolynomial {
    let n = gens.n();
    let i = ComplexRational::i();
    let int = |v: i64| ComplexRational::from(v);
    let s = |k: i32| gens.get(SigmaId(k));
    match (left.0, right.0) {
        (-1, 0) => {
            let pre = &s(1).pow(p - 1) * &s(2).pow(q - 1);
            let inner = &s(2).scale(&int((p * p) as i64)) - &s(1).scale(&int((q * q) as i64));
            (&pre * &inner).scale(&i)
        }
        (-1, 1) => s(-1).scale(&(&i * &int(p as i64))),
        (-1, 2) => s(-1).scale(&(-(&i * &int(q as i64)))),
        (0, 1) => s(0).scale(&(-(&i * &int(p as i64)))),
        (0, 2) => s(0).scale(&(&i * &int(q as i64))),
        _ => ZPolynomial::zero(n),
    }
}

/// Every unordered generator pair, with the closed-form bracket and the
/// symbolically computed one.
pub fn verify_bracket_table(spec: &ResonanceSpec) -> Vec<BracketCheck> {
    let gens = generators(spec);
    let ids: Vec<SigmaId> = gens.ids().collect();
    let mut out = Vec::new();
    for (a, &left) in ids.iter().enumerate() {
        for &right in &ids[a + 1..] {
            let expected = expected_bracket(&gens, spec.p(), spec.q(), left, right);
            let computed = gens
                .get(left)
                .poisson_bracket(gens.get(right))
                .expect("same n");
            let equal = expected == computed;
            out.push(BracketCheck {
                left,
                right,
                expected,
                computed,
                equal,
            });
        }
    }
    out
}

/// `((σ0+σ-1)/2)^2 + ((σ0-σ-1)/(2i))^2 - σ1^p σ2^q`, identically zero.
pub fn syzygy_residual(spec: &ResonanceSpec) -> ZPolynomial {
    let gens = generators(spec);
    let s0 = gens.get(SigmaId::ZERO);
    let sm = gens.get(SigmaId::MINUS_ONE);
    let half = ComplexRational::new(
        num_rational::BigRational::new(1.into(), 2.into()),
        num_rational::BigRational::from_integer(0.into()),
    );
    // 1/(2i) = -i/2
    let half_over_i = ComplexRational::new(
        num_rational::BigRational::from_integer(0.into()),
        num_rational::BigRational::new((-1).into(), 2.into()),
    );
    let re = (s0 + sm).scale(&half);
    let im = (s0 - sm).scale(&half_over_i);
    let lhs = &(&re * &re) + &(&im * &im);
    let rhs = &gens.get(SigmaId(1)).pow(spec.p()) * &gens.get(SigmaId(2)).pow(spec.q());
    &lhs - &rhs
}

/// A point of the `σ-1' = 0` cross-section of the reduced phase space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseCurvePoint {
    pub sigma1: f64,
    /// Non-negative branch; the curve is symmetric under `σ0' → -σ0'`.
    pub sigma0p: f64,
    pub sigmam1p: f64,
    /// `|σ0'^2 + σ-1'^2 - RHS|`.
    pub residual: f64,
}

/// Samples `σ0'^2 + σ-1'^2 = σ1^p (h0/ω2 - (q/p) σ1 - Σ_{k>=3} (ω_k/ω2) σ_k)^q`
/// uniformly in `σ1` over its admissible interval, both endpoints included.
pub fn phase_curve(
    spec: &ResonanceSpec,
    h0: f64,
    fixed_sigma: &[f64],
    samples: usize,
) -> Result<Vec<PhaseCurvePoint>> {
    if samples < 2 {
        return Err(Error::TooFewSamples {
            min: 2,
            got: samples,
        });
    }
    if fixed_sigma.len() != spec.n() - 2 {
        return Err(Error::DimensionMismatch {
            left: spec.n() - 2,
            right: fixed_sigma.len(),
        });
    }
    let w = spec.frequencies();
    let (p, q) = (spec.p() as f64, spec.q() as f64);
    let spectator: f64 = w[2..].iter().zip(fixed_sigma).map(|(wk, s)| wk * s).sum();
    let reduced = (h0 - spectator) / w[1];
    if reduced.is_nan() || reduced < 0.0 {
        return Err(Error::InfeasibleEnergy {
            h0,
            threshold: spectator,
        });
    }
    let upper = (p / q) * reduced;
    let rhs = |s1: f64| {
        let base = (reduced - (q / p) * s1).max(0.0);
        s1.powi(spec.p() as i32) * base.powi(spec.q() as i32)
    };
    let count = if upper == 0.0 { 1 } else { samples };
    let points = (0..count)
        .map(|j| {
            let sigma1 = if j + 1 == count {
                upper
            } else {
                upper * j as f64 / (count - 1) as f64
            };
            let r = rhs(sigma1);
            let sigma0p = r.sqrt();
            let sigmam1p = 0.0;
            let residual = (sigma0p * sigma0p + sigmam1p * sigmam1p - r).abs();
            PhaseCurvePoint {
                sigma1,
                sigma0p,
                sigmam1p,
                residual,
            }
        })
        .collect();
    Ok(points)
}

/// CSV with header `sigma1,sigma0p_plus,sigma0p_minus,residual`, 17 significant digits.
pub fn write_phase_csv<W: Write>(points: &[PhaseCurvePoint], mut out: W) -> io::Result<()> {
    writeln!(out, "sigma1,sigma0p_plus,sigma0p_minus,residual")?;
    for pt in points {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            pt.sigma1, pt.sigma0p, -pt.sigma0p, pt.residual
        )?;
    }
    Ok(())
}
