use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::fock::FockState;
use crate::error::{Error, Result};
use crate::resonance::ResonanceSpec;
use crate::terms::{enumerate_coupling, enumerate_dunham, MPart};

/// Key of one coefficient slot.
///
/// `ResonanceCoupling { power: a, num_exps: r }` stands for
/// `(a1⁺^p a2^q)^a Π N̂^r + Π N̂^r (a2⁺^q a1^p)^a`, the quantum image of
/// `(σ-1^a + σ0^a) Π σ_k^{r_k}`. `ExtraCoupling` is
/// `Π a⁺^raise Π a^lower` plus its adjoint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TermKind {
    Dunham { exps: Vec<u32> },
    ResonanceCoupling { power: u32, num_exps: Vec<u32> },
    ExtraCoupling { raise: Vec<u32>, lower: Vec<u32> },
}

impl TermKind {
    pub fn is_coupling(&self) -> bool {
        !matches!(self, TermKind::Dunham { .. })
    }

    /// Operators in the expanded Hamiltonian: conjugate pairs count twice.
    pub fn operator_count(&self) -> u64 {
        if self.is_coupling() {
            2
        } else {
            1
        }
    }

    /// Occupation change of the raising member, `None` for diagonal terms.
    pub fn shift(&self, p: u32, q: u32) -> Option<Vec<i64>> {
        match self {
            TermKind::Dunham { .. } => None,
            TermKind::ResonanceCoupling { power, num_exps } => {
                let mut s = vec![0; num_exps.len()];
                s[0] = (p * power) as i64;
                s[1] = -((q * power) as i64);
                Some(s)
            }
            TermKind::ExtraCoupling { raise, lower } => Some(
                raise
                    .iter()
                    .zip(lower)
                    .map(|(&r, &l)| r as i64 - l as i64)
                    .collect(),
            ),
        }
    }

    fn dimension(&self) -> usize {
        match self {
            TermKind::Dunham { exps } => exps.len(),
            TermKind::ResonanceCoupling { num_exps, .. } => num_exps.len(),
            TermKind::ExtraCoupling { raise, .. } => raise.len(),
        }
    }
}

impl fmt::Display for TermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numbers = |f: &mut fmt::Formatter<'_>, exps: &[u32]| -> fmt::Result {
            for (k, &r) in exps.iter().enumerate() {
                match r {
                    0 => {}
                    1 => write!(f, " N{}", k + 1)?,
                    _ => write!(f, " N{}^{r}", k + 1)?,
                }
            }
            Ok(())
        };
        match self {
            TermKind::Dunham { exps } => {
                write!(f, "dunham")?;
                numbers(f, exps)
            }
            TermKind::ResonanceCoupling { power, num_exps } => {
                write!(f, "coupling pair^{power}")?;
                numbers(f, num_exps)
            }
            TermKind::ExtraCoupling { raise, lower } => {
                write!(f, "extra raise={raise:?} lower={lower:?}")
            }
        }
    }
}

/// Ket-side action of one term without its coefficient, conjugate member
/// included. Number factors of a resonance coupling are evaluated on the
/// incoming state for the raising member and on the outgoing state for its
/// adjoint.
pub fn apply_term(term: &TermKind, p: u32, q: u32, f: &FockState) -> Vec<(FockState, f64)> {
    match term {
        TermKind::Dunham { exps } => vec![(f.clone(), f.number_factor(exps))],
        TermKind::ResonanceCoupling { power, num_exps } => {
            let n = f.n();
            let mut up = vec![0; n];
            let mut down = vec![0; n];
            up[0] = p * power;
            down[1] = q * power;
            let mut out = Vec::with_capacity(2);
            let before = f.number_factor(num_exps);
            if before != 0.0 {
                if let Some((g, amp)) = f.ladder(&up, &down) {
                    out.push((g, before * amp));
                }
            }
            if let Some((g, amp)) = f.ladder(&down, &up) {
                let after = g.number_factor(num_exps);
                if after != 0.0 {
                    out.push((g, amp * after));
                }
            }
            out
        }
        TermKind::ExtraCoupling { raise, lower } => {
            [f.ladder(raise, lower), f.ladder(lower, raise)]
                .into_iter()
                .flatten()
                .collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HamiltonianModel {
    spec: ResonanceSpec,
    order: u32,
    terms: BTreeMap<TermKind, f64>,
}

impl HamiltonianModel {
    pub fn new(spec: ResonanceSpec, order: u32) -> Self {
        Self {
            spec,
            order,
            terms: BTreeMap::new(),
        }
    }

    /// Every slot of the expansion to order `N`, all coefficients zero.
    pub fn full_expansion(spec: ResonanceSpec, order: u32) -> Self {
        let n = spec.n();
        let mut terms = BTreeMap::new();
        for m in enumerate_dunham(n, order) {
            terms.insert(TermKind::Dunham { exps: m.num_exps }, 0.0);
        }
        for m in enumerate_coupling(n, order, spec.p(), spec.q()) {
            if m.m == Some(MPart::MinusOne) {
                terms.insert(
                    TermKind::ResonanceCoupling {
                        power: m.m_exp,
                        num_exps: m.num_exps,
                    },
                    0.0,
                );
            }
        }
        Self { spec, order, terms }
    }

    pub fn spec(&self) -> &ResonanceSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn validate_term(&self, term: &TermKind) -> Result<()> {
        let n = self.n();
        let (p, q) = (self.spec.p(), self.spec.q());
        if term.dimension() != n {
            return Err(Error::InvalidTerm(format!(
                "{term}: expected {n} exponents"
            )));
        }
        let beyond = |deg: u32| {
            Error::InvalidTerm(format!("{term}: degree {deg} exceeds order {}", self.order))
        };
        match term {
            TermKind::Dunham { exps } => {
                let total: u32 = exps.iter().sum();
                if total == 0 {
                    return Err(Error::InvalidTerm(
                        "dunham term without number operators".into(),
                    ));
                }
                if 2 * total > self.order {
                    return Err(beyond(2 * total));
                }
            }
            TermKind::ResonanceCoupling { power, num_exps } => {
                if *power == 0 {
                    return Err(Error::InvalidTerm(format!("{term}: power must be >= 1")));
                }
                if num_exps.iter().filter(|e| **e > 0).count() > 2 {
                    return Err(Error::InvalidTerm(format!(
                        "{term}: at most two number operators"
                    )));
                }
                let deg = (p + q) * power + 2 * num_exps.iter().sum::<u32>();
                if deg > self.order {
                    return Err(beyond(deg));
                }
            }
            TermKind::ExtraCoupling { raise, lower } => {
                if raise == lower {
                    return Err(Error::InvalidTerm(format!("{term}: raise equals lower")));
                }
            }
        }
        Ok(())
    }

    /// Adds a new slot; fails on a duplicate key.
    pub fn insert(&mut self, term: TermKind, coeff: f64) -> Result<()> {
        if self.terms.contains_key(&term) {
            return Err(Error::DuplicateTerm(term.to_string()));
        }
        self.set(term, coeff)
    }

    /// Adds or overwrites a slot.
    pub fn set(&mut self, term: TermKind, coeff: f64) -> Result<()> {
        self.validate_term(&term)?;
        if !coeff.is_finite() {
            return Err(Error::InvalidTerm(format!(
                "{term}: coefficient {coeff} is not finite"
            )));
        }
        self.terms.insert(term, coeff);
        Ok(())
    }

    pub fn coefficient(&self, term: &TermKind) -> Option<f64> {
        self.terms.get(term).copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKind, f64)> {
        self.terms.iter().map(|(t, c)| (t, *c))
    }

    pub fn slot_count(&self) -> usize {
        self.terms.len()
    }

    pub fn nonzero_count(&self) -> usize {
        self.terms.values().filter(|c| **c != 0.0).count()
    }

    pub fn operator_count(&self) -> u64 {
        self.terms.keys().map(TermKind::operator_count).sum()
    }

    /// Same slots with every coupling coefficient set to zero.
    pub fn zero_couplings(&self) -> Self {
        let mut out = self.clone();
        for (t, c) in out.terms.iter_mut() {
            if t.is_coupling() {
                *c = 0.0;
            }
        }
        out
    }

    pub fn apply(&self, term: &TermKind, f: &FockState) -> Vec<(FockState, f64)> {
        apply_term(term, self.spec.p(), self.spec.q(), f)
    }

    /// Diagonal part only.
    pub fn dunham_energy(&self, f: &FockState) -> f64 {
        self.terms
            .iter()
            .filter_map(|(t, c)| match t {
                TermKind::Dunham { exps } => Some(c * f.number_factor(exps)),
                _ => None,
            })
            .sum()
    }

    /// Shift vectors of the coupling terms with nonzero coefficients.
    pub fn active_shifts(&self) -> Vec<Vec<i64>> {
        let (p, q) = (self.spec.p(), self.spec.q());
        self.terms
            .iter()
            .filter(|(_, c)| **c != 0.0)
            .filter_map(|(t, _)| t.shift(p, q))
            .collect()
    }
}
