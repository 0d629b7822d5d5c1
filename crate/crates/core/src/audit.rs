//! Bookkeeping behind the coupling-monomial counts.
//!
//! The raw sums of the expansion visit the same exponent tuple ("couple")
//! once per order `δ` (or `β`) at which it is reachable. The audit tallies
//! these visits directly and splits them into the top class `C_k'`, the
//! present couples of lower classes, and switched-off couples, whose
//! cumulative multiplicity has saturated at `p+q`.

use std::collections::BTreeMap;

use serde::Serialize;

/// 2-couples `(p2, q2)` belong to `σ_m^{p2} σ_k^{q2}`; 3-couples
/// `(p3, q3, γ)` to `σ_m^{p3} σ_i^γ σ_j^{q3-γ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CoupleKind {
    Two,
    Three,
}

impl CoupleKind {
    /// Degree offset: the smallest couple sits at `N = p+q+offset`.
    pub fn offset(self) -> u32 {
        match self {
            CoupleKind::Two => 2,
            CoupleKind::Three => 4,
        }
    }

    pub fn from_arity(arity: u32) -> Option<Self> {
        match arity {
            2 => Some(CoupleKind::Two),
            3 => Some(CoupleKind::Three),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Couple {
    pub kind: CoupleKind,
    /// Class index: the power of `σ-1` / `σ0`.
    pub kprime: u32,
    pub qj: u32,
    /// Only for 3-couples, `1 <= γ < q3`.
    pub gamma: Option<u32>,
}

impl Couple {
    pub fn two(kprime: u32, q2: u32) -> Self {
        Self {
            kind: CoupleKind::Two,
            kprime,
            qj: q2,
            gamma: None,
        }
    }

    pub fn three(kprime: u32, q3: u32, gamma: u32) -> Self {
        assert!(gamma >= 1 && gamma < q3, "3-couples need 1 <= gamma < q3");
        Self {
            kind: CoupleKind::Three,
            kprime,
            qj: q3,
            gamma: Some(gamma),
        }
    }

    /// First order at which the couple shows up in the raw sum.
    pub fn appearance(&self, p: u32, q: u32) -> u32 {
        self.kprime * (p + q) + 2 * self.qj
    }
}

/// `N = k'(p+q) + offset + i` with `0 <= i < p+q`; `None` when `k' = 0` or
/// `N < offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub kprime: u32,
    pub i: u32,
}

pub fn decompose(order: u32, p: u32, q: u32, kind: CoupleKind) -> Option<Decomposition> {
    let s = p + q;
    let rest = order.checked_sub(kind.offset())?;
    let kprime = rest / s;
    (kprime >= 1).then_some(Decomposition {
        kprime,
        i: rest % s,
    })
}

/// 0 before the presence interval `[N_app, N_app + p+q - 1]`,
/// `N - N_app + 1` inside it, `p+q` after it.
pub fn cumulative_multiplicity(c: &Couple, order: u32, p: u32, q: u32) -> u32 {
    let app = c.appearance(p, q);
    if order < app {
        0
    } else {
        (order - app + 1).min(p + q)
    }
}

/// Raw count of slots visited by the sums up to order `N`, closed form with
/// dispatch on the parity of `K = N - (p+q) - offset`.
pub fn lambda_raw(order: u32, p: u32, q: u32, kind: CoupleKind) -> u64 {
    let s = (p + q) as i128;
    let n_big = order as i128;
    let k = n_big - s - kind.offset() as i128;
    if k < 0 {
        return 0;
    }
    let m = n_big - s;
    let (num, den) = match (kind, k % 2 == 0) {
        (CoupleKind::Two, true) => (m * m, 4),
        (CoupleKind::Two, false) => ((m - 1) * (m + 1), 4),
        (CoupleKind::Three, true) => ((m - 2) * (m - 1) * m, 24),
        (CoupleKind::Three, false) => ((m - 3) * (m - 1) * (m + 1), 24),
    };
    assert_eq!(num % den, 0, "raw count {num}/{den} is not an integer");
    (num / den) as u64
}

/// Every couple visited by the raw sum up to `N`, with its visit count.
pub fn raw_visits(order: u32, p: u32, q: u32, kind: CoupleKind) -> BTreeMap<Couple, u32> {
    let s = p + q;
    let mut visits = BTreeMap::new();
    let start = s + kind.offset();
    for d in start..=order {
        let top = (d - s) / 2;
        match kind {
            CoupleKind::Two => {
                for q2 in 1..=top {
                    *visits.entry(Couple::two((d - 2 * q2) / s, q2)).or_insert(0) += 1;
                }
            }
            CoupleKind::Three => {
                for q3 in 2..=top {
                    for gamma in 1..q3 {
                        *visits
                            .entry(Couple::three((d - 2 * q3) / s, q3, gamma))
                            .or_insert(0) += 1;
                    }
                }
            }
        }
    }
    visits
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityAudit {
    #[serde(rename = "N")]
    pub order: u32,
    pub p: u32,
    pub q: u32,
    pub kind: CoupleKind,
    pub decomposition: Option<Decomposition>,
    pub lambda_raw: u64,
    /// Visits to couples of the top class `C_k'`.
    pub pop_class_kprime: u64,
    /// Visits to present couples of classes `C_1..C_{k'-1}`.
    pub pop_other_classes: u64,
    /// Visits to switched-off couples.
    pub switched_off_alpha: u64,
    /// Number of present couples, each counted once.
    pub present_without_multiplicity: u64,
    pub delta: u64,
}

impl MultiplicityAudit {
    fn empty(order: u32, p: u32, q: u32, kind: CoupleKind) -> Self {
        Self {
            order,
            p,
            q,
            kind,
            decomposition: None,
            lambda_raw: 0,
            pop_class_kprime: 0,
            pop_other_classes: 0,
            switched_off_alpha: 0,
            present_without_multiplicity: 0,
            delta: 0,
        }
    }
}

/// Direct summation over the raw sums; no closed forms are used.
pub fn audit_counting(order: u32, p: u32, q: u32, kind: CoupleKind) -> MultiplicityAudit {
    let Some(dec) = decompose(order, p, q, kind) else {
        return MultiplicityAudit::empty(order, p, q, kind);
    };
    let s = p + q;
    let visits = raw_visits(order, p, q, kind);
    let newest = raw_visits_at(order, p, q, kind);

    let mut audit = MultiplicityAudit::empty(order, p, q, kind);
    audit.decomposition = Some(dec);
    for (couple, &mu) in &visits {
        let mu = mu as u64;
        audit.lambda_raw += mu;
        if newest.contains(couple) {
            audit.present_without_multiplicity += 1;
            if couple.kprime == dec.kprime {
                audit.pop_class_kprime += mu;
            } else {
                audit.pop_other_classes += mu;
            }
        } else {
            assert_eq!(
                mu, s as u64,
                "absent couple {couple:?} has unsaturated multiplicity"
            );
            audit.switched_off_alpha += mu;
        }
    }
    assert_eq!(audit.switched_off_alpha % s as u64, 0);
    audit.delta = audit.switched_off_alpha / s as u64 + audit.present_without_multiplicity;
    audit
}

/// Couples appearing in the secondary interval of order `N` itself.
fn raw_visits_at(
    order: u32,
    p: u32,
    q: u32,
    kind: CoupleKind,
) -> std::collections::BTreeSet<Couple> {
    let s = p + q;
    let mut set = std::collections::BTreeSet::new();
    if order < s + kind.offset() {
        return set;
    }
    let top = (order - s) / 2;
    match kind {
        CoupleKind::Two => {
            for q2 in 1..=top {
                set.insert(Couple::two((order - 2 * q2) / s, q2));
            }
        }
        CoupleKind::Three => {
            for q3 in 2..=top {
                for gamma in 1..q3 {
                    set.insert(Couple::three((order - 2 * q3) / s, q3, gamma));
                }
            }
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{brute_force_delta1, brute_force_delta2};

    /// Counts the orders `δ <= N` whose secondary interval contains `c`.
    fn multiplicity_by_scan(c: &Couple, order: u32, p: u32, q: u32) -> u32 {
        let s = p + q;
        let start = s + c.kind.offset();
        (start..=order)
            .filter(|&d| {
                let top = (d - s) / 2;
                let low = if c.kind == CoupleKind::Two { 1 } else { 2 };
                c.qj >= low && c.qj <= top && (d - 2 * c.qj) / s == c.kprime
            })
            .count() as u32
    }

    #[test]
    fn multiplicity_examples() {
        let c = Couple::two(1, 1);
        assert_eq!(cumulative_multiplicity(&c, 6, 2, 1), 2);
        assert_eq!(cumulative_multiplicity(&c, 4, 2, 1), 0);
        assert_eq!(cumulative_multiplicity(&c, 9, 2, 1), 3);
    }

    #[test]
    fn multiplicity_matches_scan() {
        for (p, q) in [(1, 1), (2, 1), (3, 1), (3, 2), (4, 3)] {
            for order in 0..30 {
                for kp in 1..5 {
                    for qj in 1..8 {
                        let c = Couple::two(kp, qj);
                        assert_eq!(
                            cumulative_multiplicity(&c, order, p, q),
                            multiplicity_by_scan(&c, order, p, q)
                        );
                        if qj >= 2 {
                            let c = Couple::three(kp, qj, 1);
                            assert_eq!(
                                cumulative_multiplicity(&c, order, p, q),
                                multiplicity_by_scan(&c, order, p, q)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn boundary_couple_is_present_and_maximal() {
        // i = p+q-1: the (k', 1) couple has μ = i + 1 = p+q yet is still present.
        let (p, q) = (2, 1);
        let order = 3 + 2 + 2; // k' = 1, i = 2
        let dec = decompose(order, p, q, CoupleKind::Two).unwrap();
        assert_eq!((dec.kprime, dec.i), (1, 2));
        let c = Couple::two(1, 1);
        assert_eq!(cumulative_multiplicity(&c, order, p, q), 3);
        assert!(raw_visits_at(order, p, q, CoupleKind::Two).contains(&c));
        let audit = audit_counting(order, p, q, CoupleKind::Two);
        assert_eq!(audit.switched_off_alpha, 0);
        // (1,1) with μ = 3 plus the fresh (1,2) with μ = 1
        assert_eq!(audit.pop_class_kprime, 4);
        assert_eq!(audit.delta, 2);
    }

    #[test]
    fn lambda_raw_examples() {
        assert_eq!(lambda_raw(10, 1, 1, CoupleKind::Two), 16);
        assert_eq!(lambda_raw(10, 1, 1, CoupleKind::Three), 14);
        assert_eq!(lambda_raw(7, 1, 1, CoupleKind::Two), 6);
        assert_eq!(lambda_raw(3, 1, 1, CoupleKind::Two), 0);
        assert_eq!(lambda_raw(5, 1, 1, CoupleKind::Three), 0);
    }

    #[test]
    fn lambda_raw_matches_direct_sum() {
        for s in 2..=9u32 {
            for order in 0..=40 {
                let direct2: u64 = (s + 2..=order).map(|d| ((d - s) / 2) as u64).sum();
                let direct3: u64 = (s + 4..=order)
                    .map(|b| {
                        let q3 = ((b - s) / 2) as u64;
                        q3 * (q3 - 1) / 2
                    })
                    .sum();
                assert_eq!(lambda_raw(order, s - 1, 1, CoupleKind::Two), direct2);
                assert_eq!(lambda_raw(order, s - 1, 1, CoupleKind::Three), direct3);
            }
        }
    }

    #[test]
    fn audit_examples() {
        let a = audit_counting(10, 1, 1, CoupleKind::Two);
        assert_eq!(a.lambda_raw, 16);
        assert_eq!(a.switched_off_alpha, 12);
        assert_eq!(a.present_without_multiplicity, 4);
        assert_eq!(a.pop_class_kprime, 1);
        assert_eq!(a.pop_other_classes, 3);
        assert_eq!(a.delta, 10);

        for (p, q) in [(1, 1), (2, 1), (3, 2)] {
            assert_eq!(audit_counting(p + q + 2, p, q, CoupleKind::Two).delta, 1);
        }
        assert_eq!(audit_counting(10, 2, 1, CoupleKind::Three).delta, 4);
        assert_eq!(
            audit_counting(4, 2, 1, CoupleKind::Two),
            MultiplicityAudit::empty(4, 2, 1, CoupleKind::Two)
        );
    }

    #[test]
    fn audit_conservation_and_oracle() {
        for (p, q) in [(1, 1), (2, 1), (3, 1), (3, 2), (4, 1), (5, 2)] {
            for order in 0..=30 {
                for kind in [CoupleKind::Two, CoupleKind::Three] {
                    let a = audit_counting(order, p, q, kind);
                    assert_eq!(a.lambda_raw, lambda_raw(order, p, q, kind));
                    assert_eq!(
                        a.lambda_raw,
                        a.pop_class_kprime + a.pop_other_classes + a.switched_off_alpha
                    );
                    assert_eq!(a.switched_off_alpha % (p + q) as u64, 0);
                    let oracle = match kind {
                        CoupleKind::Two => brute_force_delta1(order, p, q),
                        CoupleKind::Three => brute_force_delta2(order, p, q),
                    };
                    assert_eq!(a.delta, oracle, "N={order} {p}:{q} {kind:?}");

                    let summed: u64 = raw_visits(order, p, q, kind)
                        .keys()
                        .map(|c| cumulative_multiplicity(c, order, p, q) as u64)
                        .sum();
                    assert_eq!(summed, a.lambda_raw);
                }
            }
        }
    }
}
