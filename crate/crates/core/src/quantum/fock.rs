use std::fmt;

use serde::{Deserialize, Serialize};

/// Occupation-number state `|n1, ..., nn⟩`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FockState {
    pub occ: Vec<u32>,
}

impl FockState {
    pub fn new(occ: Vec<u32>) -> Self {
        Self { occ }
    }

    pub fn vacuum(n: usize) -> Self {
        Self { occ: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.occ.len()
    }

    /// `Π n_k^{r_k}`, the value of `Π N̂_k^{r_k}` on this state.
    pub fn number_factor(&self, exps: &[u32]) -> f64 {
        self.occ
            .iter()
            .zip(exps)
            .map(|(&n, &r)| (n as f64).powi(r as i32))
            .product()
    }

    /// Applies `Π a_k⁺^{raise_k} Π a_k^{lower_k}` (lowering first). `None`
    /// when a mode would go below the vacuum.
    ///
    /// The amplitude is `Π sqrt(j)` over the multiset of ladder factors,
    /// multiplied in sorted order so that a move and its reverse give
    /// bitwise identical values.
    pub fn ladder(&self, raise: &[u32], lower: &[u32]) -> Option<(FockState, f64)> {
        let mut factors: Vec<u64> = Vec::new();
        let mut occ = Vec::with_capacity(self.occ.len());
        for ((&n, &r), &l) in self.occ.iter().zip(raise).zip(lower) {
            let base = n.checked_sub(l)?;
            factors.extend((base + 1..=n).map(u64::from));
            factors.extend((base + 1..=base + r).map(u64::from));
            occ.push(base + r);
        }
        factors.sort_unstable();
        Some((FockState { occ }, sqrt_product(&factors)))
    }
}

fn sqrt_product(sorted: &[u64]) -> f64 {
    let mut exact: Option<u128> = Some(1);
    for &f in sorted {
        exact = exact.and_then(|e| e.checked_mul(f as u128));
    }
    match exact {
        Some(v) if v < (1u128 << 100) => (v as f64).sqrt(),
        _ => sorted.iter().map(|&f| (f as f64).sqrt()).product(),
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, n) in self.occ.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "⟩")
    }
}
