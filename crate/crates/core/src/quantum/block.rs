use std::collections::{BTreeMap, HashMap};
use std::io::{self, Write};

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use super::fock::FockState;
use super::lattice::{conserved_lattice, label_of};
use super::model::HamiltonianModel;
use crate::error::{Error, Result};

/// Basis truncation: `q·n1 + p·n2 <= polyad_max` and every spectator
/// occupation `<= spectator_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub polyad_max: u32,
    pub spectator_max: u32,
}

impl Truncation {
    pub fn new(polyad_max: u32, spectator_max: u32) -> Self {
        Self {
            polyad_max,
            spectator_max,
        }
    }

    pub fn admits(&self, f: &FockState, p: u32, q: u32) -> bool {
        polyad_number(f, p, q) <= self.polyad_max
            && f.occ[2..].iter().all(|&n| n <= self.spectator_max)
    }

    /// Every admitted state, in lexicographic order.
    pub fn states(&self, n: usize, p: u32, q: u32) -> Vec<FockState> {
        let mut out = Vec::new();
        for n1 in 0..=self.polyad_max / q {
            for n2 in 0..=(self.polyad_max - q * n1) / p {
                let mut occ = vec![n1, n2];
                occ.resize(n, 0);
                loop {
                    out.push(FockState::new(occ.clone()));
                    // odometer over the spectators, last mode fastest
                    let mut wrapped = true;
                    for k in (2..n).rev() {
                        if occ[k] < self.spectator_max {
                            occ[k] += 1;
                            wrapped = false;
                            break;
                        }
                        occ[k] = 0;
                    }
                    if wrapped {
                        break;
                    }
                }
            }
        }
        out
    }
}

/// `P = q·n1 + p·n2`, the quanta exchanged by the resonant pair.
pub fn polyad_number(f: &FockState, p: u32, q: u32) -> u32 {
    q * f.occ[0] + p * f.occ[1]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyadBlock {
    pub label: Vec<i64>,
    pub basis: Vec<FockState>,
    #[serde(skip)]
    pub matrix: DMatrix<f64>,
    pub eigenvalues: Vec<f64>,
    /// Column `j` belongs to `eigenvalues[j]`.
    #[serde(skip)]
    pub eigenvectors: DMatrix<f64>,
}

impl PolyadBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis state with the largest weight in eigenvector `j`.
    pub fn dominant_state(&self, j: usize) -> &FockState {
        let col = self.eigenvectors.column(j);
        let mut best = 0;
        for i in 1..col.len() {
            if col[i].abs() > col[best].abs() {
                best = i;
            }
        }
        &self.basis[best]
    }
}

/// `⟨f|H|f'⟩` over a basis. Each conjugate pair member is the transpose
/// image of the other, so the result is exactly symmetric.
pub fn assemble_matrix(model: &HamiltonianModel, basis: &[FockState]) -> DMatrix<f64> {
    let index: HashMap<&FockState, usize> = basis.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let dim = basis.len();
    let mut h = DMatrix::zeros(dim, dim);
    for (j, ket) in basis.iter().enumerate() {
        for (term, c) in model.terms() {
            if c == 0.0 {
                continue;
            }
            for (bra, amp) in model.apply(term, ket) {
                if let Some(&i) = index.get(&bra) {
                    h[(i, j)] += c * amp;
                }
            }
        }
    }
    h
}

/// Ascending eigenvalues with matching eigenvector columns.
pub fn eigh(matrix: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let dim = matrix.nrows();
    let eig = SymmetricEigen::new(matrix.clone());
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(dim, dim);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

fn finish_block(model: &HamiltonianModel, label: Vec<i64>, basis: Vec<FockState>) -> PolyadBlock {
    let matrix = assemble_matrix(model, &basis);
    let (eigenvalues, eigenvectors) = eigh(&matrix);
    PolyadBlock {
        label,
        basis,
        matrix,
        eigenvalues,
        eigenvectors,
    }
}

/// The block of admitted states carrying `label`.
pub fn build_block(
    model: &HamiltonianModel,
    label: &[i64],
    trunc: &Truncation,
) -> Result<PolyadBlock> {
    let lattice = conserved_lattice(model);
    let (p, q) = (model.spec().p(), model.spec().q());
    let basis: Vec<FockState> = trunc
        .states(model.n(), p, q)
        .into_iter()
        .filter(|f| label_of(&lattice, f) == label)
        .collect();
    if basis.is_empty() {
        return Err(Error::EmptyBlock(label.to_vec()));
    }
    Ok(finish_block(model, label.to_vec(), basis))
}

/// All blocks under the truncation, ordered by label. Built in parallel.
pub fn blocks(model: &HamiltonianModel, trunc: &Truncation) -> Vec<PolyadBlock> {
    let lattice = conserved_lattice(model);
    let (p, q) = (model.spec().p(), model.spec().q());
    let mut grouped: BTreeMap<Vec<i64>, Vec<FockState>> = BTreeMap::new();
    for f in trunc.states(model.n(), p, q) {
        grouped.entry(label_of(&lattice, &f)).or_default().push(f);
    }
    grouped
        .into_par_iter()
        .map(|(label, basis)| finish_block(model, label, basis))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Level {
    pub label: Vec<i64>,
    /// 0-based position within the block.
    pub index: usize,
    pub energy: f64,
    /// Polyad number and spectator quanta of the dominant basis state.
    pub polyad: u32,
    pub spectator: u32,
    pub dominant: FockState,
}

/// Levels of every block, by label then energy.
pub fn spectrum(model: &HamiltonianModel, trunc: &Truncation) -> Vec<Level> {
    levels_of(model, &blocks(model, trunc))
}

pub fn levels_of(model: &HamiltonianModel, blocks: &[PolyadBlock]) -> Vec<Level> {
    let (p, q) = (model.spec().p(), model.spec().q());
    let mut levels = Vec::new();
    for block in blocks {
        for (index, &energy) in block.eigenvalues.iter().enumerate() {
            let dominant = block.dominant_state(index).clone();
            levels.push(Level {
                label: block.label.clone(),
                index,
                energy,
                polyad: polyad_number(&dominant, p, q),
                spectator: dominant.occ[2..].iter().sum(),
                dominant,
            });
        }
    }
    levels
}

pub fn write_spectrum_csv<W: Write>(levels: &[Level], mut out: W) -> io::Result<()> {
    writeln!(out, "P,n3,index,energy_cm1")?;
    for l in levels {
        writeln!(
            out,
            "{},{},{},{:.9e}",
            l.polyad, l.spectator, l.index, l.energy
        )?;
    }
    Ok(())
}
