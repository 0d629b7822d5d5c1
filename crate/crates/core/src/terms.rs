//! Independent monomials of the normalized Hamiltonian expanded to order `N`
//! on the Hilbert basis.
//!
//! A [`GenMonomial`] is `σ_m^{m_exp} Π_k σ_k^{num_exps[k]}` with `σ_m` one of
//! `σ-1`, `σ0` or absent. Its degree in the `z` variables is
//! `(p+q)·m_exp + 2·Σ num_exps`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// The resonant factor of a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MPart {
    #[serde(rename = "-1")]
    MinusOne,
    #[serde(rename = "0")]
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GenMonomial {
    pub m: Option<MPart>,
    #[serde(rename = "mExp")]
    pub m_exp: u32,
    #[serde(rename = "numExps")]
    pub num_exps: Vec<u32>,
}

impl GenMonomial {
    pub fn dunham(num_exps: Vec<u32>) -> Self {
        Self {
            m: None,
            m_exp: 0,
            num_exps,
        }
    }

    pub fn coupling(m: MPart, m_exp: u32, num_exps: Vec<u32>) -> Self {
        assert!(
            m_exp >= 1,
            "coupling monomials carry at least one resonant factor"
        );
        Self {
            m: Some(m),
            m_exp,
            num_exps,
        }
    }

    pub fn is_coupling(&self) -> bool {
        self.m.is_some()
    }

    pub fn z_degree(&self, p: u32, q: u32) -> u32 {
        (p + q) * self.m_exp + 2 * self.num_exps.iter().sum::<u32>()
    }

    /// Partner under time reversal (`σ-1 ↔ σ0`).
    pub fn time_reversed(&self) -> Self {
        let m = self.m.map(|m| match m {
            MPart::MinusOne => MPart::Zero,
            MPart::Zero => MPart::MinusOne,
        });
        Self { m, ..self.clone() }
    }

    /// Number of distinct number generators involved.
    pub fn support(&self) -> usize {
        self.num_exps.iter().filter(|e| **e > 0).count()
    }
}

/// All exponent vectors of length `n` with total in `1..=max_total`.
fn exponent_vectors(n: usize, max_total: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, n: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, n, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), n, max_total, &mut out);
    out.retain(|v| v.iter().sum::<u32>() >= 1);
    out
}

/// Dunham part: every product of number generators of total power
/// `1..=E(N/2)`. The linear terms carry the harmonic frequencies.
pub fn enumerate_dunham(n: usize, order: u32) -> BTreeSet<GenMonomial> {
    exponent_vectors(n, order / 2)
        .into_iter()
        .map(GenMonomial::dunham)
        .collect()
}

fn unit(n: usize, k: usize, e: u32) -> Vec<u32> {
    let mut v = vec![0; n];
    v[k] = e;
    v
}

/// Coupling part, generated by walking the raw sums of the expansion and
/// deduplicating by exponent tuple:
/// `σ_m^{q1}` for `q1 <= E(N/(p+q))`; `σ_m^{E((δ-2q2)/(p+q))} σ_k^{q2}` for
/// `δ = p+q+2..=N`, `q2 = 1..=E((δ-(p+q))/2)`; and
/// `σ_m^{E((β-2q3)/(p+q))} σ_i^γ σ_j^{q3-γ}` for `β = p+q+4..=N`,
/// `q3 = 2..=E((β-(p+q))/2)`, `γ = 1..q3`, `i < j`.
pub fn enumerate_coupling(n: usize, order: u32, p: u32, q: u32) -> BTreeSet<GenMonomial> {
    let s = p + q;
    let mut set = BTreeSet::new();
    let mut push = |m_exp: u32, num: Vec<u32>| {
        for m in [MPart::MinusOne, MPart::Zero] {
            set.insert(GenMonomial::coupling(m, m_exp, num.clone()));
        }
    };
    for q1 in 1..=order / s {
        push(q1, vec![0; n]);
    }
    for delta in (s + 2)..=order {
        for q2 in 1..=(delta - s) / 2 {
            let p2 = (delta - 2 * q2) / s;
            for k in 0..n {
                push(p2, unit(n, k, q2));
            }
        }
    }
    for beta in (s + 4)..=order {
        for q3 in 2..=(beta - s) / 2 {
            let p3 = (beta - 2 * q3) / s;
            for gamma in 1..q3 {
                for i in 0..n {
                    for j in (i + 1)..n {
                        let mut num = vec![0; n];
                        num[i] = gamma;
                        num[j] = q3 - gamma;
                        push(p3, num);
                    }
                }
            }
        }
    }
    set
}

/// `|{(p2, q2) >= 1 : (p+q) p2 + 2 q2 <= N}|`.
pub fn brute_force_delta1(order: u32, p: u32, q: u32) -> u64 {
    let s = p + q;
    let mut count = 0;
    for p2 in 1..=order {
        for q2 in 1..=order {
            if s * p2 + 2 * q2 <= order {
                count += 1;
            }
        }
    }
    count
}

/// `|{(p3, γ, r3) >= 1 : (p+q) p3 + 2γ + 2 r3 <= N}|`.
pub fn brute_force_delta2(order: u32, p: u32, q: u32) -> u64 {
    let s = p + q;
    let mut count = 0;
    for p3 in 1..=order {
        for gamma in 1..=order {
            for r3 in 1..=order {
                if s * p3 + 2 * gamma + 2 * r3 <= order {
                    count += 1;
                }
            }
        }
    }
    count
}
