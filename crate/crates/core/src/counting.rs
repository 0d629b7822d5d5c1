//! Closed-form counts of the coefficients and monomials of the normalized
//! Hamiltonian expanded to order `N`.

use num_integer::binomial;
use serde::Serialize;

use crate::audit::{audit_counting, lambda_raw, CoupleKind, MultiplicityAudit};
use crate::error::{Error, Result};
use crate::resonance::validate_pair;

fn e_half(i: i128) -> i128 {
    i.div_euclid(2)
}

fn exact_div(num: i128, den: i128, what: &str) -> u64 {
    assert_eq!(num % den, 0, "{what}: {num}/{den} is not an integer");
    let v = num / den;
    assert!(v >= 0, "{what}: negative count {v}");
    v as u64
}

/// Number of 2-monomials in one sum `S_{m,k}`. Uses `N = k'(p+q) + 2 + i`.
pub fn delta1_closed(order: u32, p: u32, q: u32) -> u64 {
    let s = (p + q) as i128;
    let Some(rest) = (order as i128).checked_sub(2).filter(|r| *r >= 0) else {
        return 0;
    };
    let k = rest / s;
    let i = rest % s;
    if k == 0 {
        return 0;
    }
    let e = e_half(i);
    let num = if s % 2 == 0 {
        k * (4 + 4 * e + (k - 1) * s)
    } else if k % 2 == 0 {
        k * ((k - 1) * s + 2 * i + 3)
    } else {
        4 * (1 + e) + (k - 1) * (k * s + 2 * i + 3)
    };
    exact_div(num, 4, "delta1")
}

/// Number of 3-monomials in one sum `S_{m,ij}`. Uses its own decomposition
/// `N = k'(p+q) + 4 + i`, `ε = i mod 2`.
pub fn delta2_closed(order: u32, p: u32, q: u32) -> u64 {
    let s = (p + q) as i128;
    let rest = order as i128 - 4;
    if rest < 0 {
        return 0;
    }
    let k = rest / s;
    let i = rest % s;
    if k == 0 {
        return 0;
    }
    let e = e_half(i);
    let eps = i - 2 * e;
    let tail = i * (i + 6) - 4 * eps * e - 7 * eps + 8;
    let mut num = 24 * (e + 1) * (e + 2) + 6 * (k - 1) * tail;
    if s % 2 == 0 {
        num += k * (k - 1) * s * ((2 * k - 1) * s + 6 * (i + 3 - eps));
    } else {
        num += k * (k - 1) * s * ((2 * k - 1) * s + 3 * (2 * i + 5));
        num += if k % 2 == 0 {
            3 * k * (2 * eps - 1) * (4 * e + s + 5 + 2 * eps)
        } else {
            3 * (k - 1) * (2 * eps - 1) * (4 * e - s + 5 + 2 * eps)
        };
    }
    exact_div(num, 48, "delta2")
}

/// `Λ = Σ_{λ=1}^{min(n,Q0)} C(n,λ) C(Q0,λ)`: number of Dunham monomials,
/// linear terms included.
pub fn lambda_dunham(n: usize, q0: u32) -> u64 {
    let n = n as u64;
    let q0 = q0 as u64;
    (1..=n.min(q0))
        .map(|l| binomial(n, l) * binomial(q0, l))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: usize,
    #[serde(rename = "N")]
    pub order: u32,
    pub p: u32,
    pub q: u32,
    #[serde(rename = "Q0")]
    pub q0: u32,
    #[serde(rename = "Q1")]
    pub q1: u32,
    pub delta1: u64,
    pub delta2: u64,
    pub lambda: u64,
    pub n_coef: u64,
    pub n_op: u64,
    pub n_c: u64,
    /// Raw slot counts `Λ1`, `Λ2` of the sums before deduplication.
    pub lambda1_raw: u64,
    pub lambda2_raw: u64,
    pub audit2: MultiplicityAudit,
    pub audit3: MultiplicityAudit,
}

pub fn totals(n: usize, order: u32, p: u32, q: u32) -> Result<CountReport> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    validate_pair(p, q)?;
    let n64 = n as u64;
    let q0 = order / 2;
    let q1 = order / (p + q);
    let delta1 = delta1_closed(order, p, q);
    let delta2 = delta2_closed(order, p, q);
    let lambda = lambda_dunham(n, q0);
    let pairs = n64 * (n64 - 1) / 2;
    let n_c = 2 * q1 as u64 + 2 * n64 * delta1 + 2 * pairs * delta2;
    let n_coef = lambda + q1 as u64 + n64 * delta1 + pairs * delta2;
    Ok(CountReport {
        n,
        order,
        p,
        q,
        q0,
        q1,
        delta1,
        delta2,
        lambda,
        n_coef,
        n_op: lambda + n_c,
        n_c,
        lambda1_raw: lambda_raw(order, p, q, CoupleKind::Two),
        lambda2_raw: lambda_raw(order, p, q, CoupleKind::Three),
        audit2: audit_counting(order, p, q, CoupleKind::Two),
        audit3: audit_counting(order, p, q, CoupleKind::Three),
    })
}
