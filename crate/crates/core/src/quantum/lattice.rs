//! Conserved linear forms: the integer kernel of the coupling shift vectors.

use super::fock::FockState;
use super::model::HamiltonianModel;

/// Integer basis of `{v in Z^n : v·s = 0 for every s}` in Hermite normal
/// form (row echelon, positive pivots, entries above a pivot reduced to
/// `[0, pivot)`).
pub fn integer_kernel(shifts: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i128>> = shifts
        .iter()
        .map(|s| s.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    // Column operations on `a`, mirrored on `u`, until `a` is column echelon.
    let mut pivot = 0;
    for r in 0..a.len() {
        if pivot == n {
            break;
        }
        while let Some(best) = (pivot..n)
            .filter(|&c| a[r][c] != 0)
            .min_by_key(|&c| a[r][c].abs())
        {
            swap_cols(&mut a, &mut u, pivot, best);
            let mut done = true;
            for c in pivot + 1..n {
                if a[r][c] != 0 {
                    let f = a[r][c].div_euclid(a[r][pivot]);
                    axpy_col(&mut a, &mut u, c, pivot, f);
                    done &= a[r][c] == 0;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    let basis: Vec<Vec<i128>> = (pivot..n)
        .map(|c| (0..n).map(|i| u[i][c]).collect())
        .collect();
    hermite_normal_form(basis)
        .into_iter()
        .map(|v| v.into_iter().map(|x| x as i64).collect())
        .collect()
}

fn swap_cols(a: &mut [Vec<i128>], u: &mut [Vec<i128>], i: usize, j: usize) {
    for row in a.iter_mut().chain(u.iter_mut()) {
        row.swap(i, j);
    }
}

/// column `dst` -= f * column `src`
fn axpy_col(a: &mut [Vec<i128>], u: &mut [Vec<i128>], dst: usize, src: usize, f: i128) {
    for row in a.iter_mut().chain(u.iter_mut()) {
        row[dst] -= f * row[src];
    }
}

fn hermite_normal_form(mut rows: Vec<Vec<i128>>) -> Vec<Vec<i128>> {
    let Some(n) = rows.first().map(Vec::len) else {
        return rows;
    };
    let mut r = 0;
    for c in 0..n {
        if r == rows.len() {
            break;
        }
        while let Some(best) = (r..rows.len())
            .filter(|&i| rows[i][c] != 0)
            .min_by_key(|&i| rows[i][c].abs())
        {
            rows.swap(r, best);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c] != 0 {
                    let f = rows[i][c].div_euclid(rows[r][c]);
                    let pivot_row = rows[r].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= f * y;
                    }
                    done &= rows[i][c] == 0;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c] == 0 {
            continue;
        }
        if rows[r][c] < 0 {
            rows[r].iter_mut().for_each(|x| *x = -*x);
        }
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().take(r) {
            let f = row[c].div_euclid(pivot_row[c]);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= f * y;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Kernel of the shifts of every coupling with a nonzero coefficient.
pub fn conserved_lattice(model: &HamiltonianModel) -> Vec<Vec<i64>> {
    integer_kernel(&model.active_shifts(), model.n())
}

/// Values of the conserved forms on a state.
pub fn label_of(lattice: &[Vec<i64>], f: &FockState) -> Vec<i64> {
    lattice
        .iter()
        .map(|v| v.iter().zip(&f.occ).map(|(a, &b)| a * b as i64).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(a: &[i64], b: &[i64]) -> i64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn examples() {
        assert_eq!(
            integer_kernel(&[vec![2, -1, 0]], 3),
            vec![vec![1, 2, 0], vec![0, 0, 1]]
        );
        assert_eq!(
            integer_kernel(&[vec![-2, 1, 0]], 3),
            vec![vec![1, 2, 0], vec![0, 0, 1]]
        );
        assert_eq!(
            integer_kernel(&[vec![2, -1, 0], vec![0, -3, 1]], 3),
            vec![vec![1, 2, 6]]
        );
        assert_eq!(
            integer_kernel(&[], 3),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        assert_eq!(integer_kernel(&[vec![3, -2]], 2), vec![vec![2, 3]]);
    }

    /// Membership by back-substitution along the echelon pivots.
    fn in_span(basis: &[Vec<i64>], v: &[i64]) -> bool {
        let mut rest = v.to_vec();
        for row in basis {
            let c = row.iter().position(|x| *x != 0).unwrap();
            if rest[c] % row[c] != 0 {
                return false;
            }
            let f = rest[c] / row[c];
            rest.iter_mut().zip(row).for_each(|(x, y)| *x -= f * y);
        }
        rest.iter().all(|x| *x == 0)
    }

    #[test]
    fn kernel_is_saturated() {
        let shifts = vec![vec![4, -6, 0, 2], vec![0, 3, -3, 0]];
        let k = integer_kernel(&shifts, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for s in &shifts {
                assert_eq!(dot(v, s), 0);
            }
        }
        let range = -3..=3i64;
        for a in range.clone() {
            for b in range.clone() {
                for c in range.clone() {
                    for d in range.clone() {
                        let v = [a, b, c, d];
                        let annihilates = shifts.iter().all(|s| dot(&v, s) == 0);
                        assert_eq!(annihilates, in_span(&k, &v), "{v:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn labels() {
        let lat = vec![vec![1, 2, 0], vec![0, 0, 1]];
        assert_eq!(label_of(&lat, &FockState::new(vec![3, 2, 5])), vec![7, 5]);
    }
}
