//! Weighted lattice paths.
//!
//! The 2D model uses steps `I = (1,0)`, `J1 = (0,1)` and `J2 = (0,1)` and
//! stays in `i <= j`. `I` and `J1` weigh 1; the `r`-th `J2` step ending at
//! `(i, j)` weighs `i + j + r - 1`. Paths to `(n, n)` with `k` steps `J2`
//! give `b_{n,k}`; `I`/`J2`-only paths to `(k, n)` give `c_{n,k}`.
//!
//! The Dyck view rotates the same paths: `I -> D`, `J1 -> U1`, `J2 -> U2`,
//! and a `U2` that is the `m`-th step and the `r`-th `U2` weighs `m + r - 1`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    I,
    J1,
    J2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DyckStep {
    U1,
    U2,
    D,
}

/// Sum of path weights for one DP state.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct WeightedCount(pub BigUint);

impl WeightedCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl From<WeightedCount> for BigUint {
    fn from(w: WeightedCount) -> Self {
        w.0
    }
}

/// Weight of the `r`-th `J2` step ending at `(i, j)`.
pub fn j2_weight(i: usize, j: usize, r: usize) -> usize {
    i + j + r - 1
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::Domain(format!("need 0 <= k <= n, got n={n}, k={k}")));
    }
    Ok(())
}

/// `b_{n,k}` for all `n <= max_n`, `k <= min(n, max_k)` from a single sweep
/// over the grid. Entry `[n][k]`.
///
/// The frontier is one antidiagonal `i + j = s`; each cell holds a vector
/// indexed by the number of `J2` steps used so far.
pub fn b_table(max_n: usize, max_k: usize) -> Vec<Vec<BigUint>> {
    let mut out: Vec<Vec<BigUint>> = (0..=max_n)
        .map(|n| vec![BigUint::zero(); n.min(max_k) + 1])
        .collect();
    // frontier[i][r] for cell (i, s - i)
    let mut frontier: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); max_k + 1]];
    frontier[0][0] = BigUint::one();
    out[0][0] = BigUint::one();
    for s in 1..=2 * max_n {
        let prev = &frontier;
        let i_hi = (s / 2).min(max_n);
        let i_lo = s.saturating_sub(max_n);
        let next = par::map_range(0, i_hi + 1, |i| {
            let mut cell = vec![BigUint::zero(); max_k + 1];
            if i < i_lo {
                return cell;
            }
            let j = s - i;
            // from (i-1, j) by I
            if i > 0 {
                if let Some(p) = prev.get(i - 1) {
                    for (c, v) in cell.iter_mut().zip(p) {
                        *c += v;
                    }
                }
            }
            // from (i, j-1) by J1 or J2; needs i <= j-1
            if i < j {
                if let Some(p) = prev.get(i) {
                    for r in 0..=max_k {
                        if p[r].is_zero() {
                            continue;
                        }
                        cell[r] += &p[r];
                        if r < max_k {
                            cell[r + 1] += &p[r] * j2_weight(i, j, r + 1);
                        }
                    }
                }
            }
            cell
        });
        if s % 2 == 0 {
            let n = s / 2;
            for k in 0..=n.min(max_k) {
                out[n][k] = next[n][k].clone();
            }
        }
        frontier = next;
    }
    out
}

/// Weighted count of paths `(0,0) -> (n,n)` with exactly `k` steps `J2`.
pub fn b_path_count(n: usize, k: usize) -> Result<BigUint> {
    check_nk(n, k)?;
    Ok(b_table(n, k).swap_remove(n).swap_remove(k))
}

/// `c_{n,k}` for all `n <= max_n`, `k <= min(n, max_k)`. Entry `[n][k]`.
///
/// Only `I` and `J2` steps are used, so the `J2` index equals `j` and the
/// state is just the cell.
pub fn c_table(max_n: usize, max_k: usize) -> Vec<Vec<BigUint>> {
    // column-by-column over i, each column a vector over j
    let mut out: Vec<Vec<BigUint>> = (0..=max_n)
        .map(|n| vec![BigUint::zero(); n.min(max_k) + 1])
        .collect();
    let mut col = vec![BigUint::zero(); max_n + 1];
    col[0] = BigUint::one();
    for j in 1..=max_n {
        col[j] = &col[j - 1] * j2_weight(0, j, j);
    }
    for (n, v) in col.iter().enumerate() {
        out[n][0] = v.clone();
    }
    for i in 1..=max_k.min(max_n) {
        let mut next = vec![BigUint::zero(); max_n + 1];
        for j in i..=max_n {
            let mut v = col[j].clone();
            if j > i {
                v += &next[j - 1] * j2_weight(i, j, j);
            }
            next[j] = v;
        }
        for n in i..=max_n {
            out[n][i] = next[n].clone();
        }
        col = next;
    }
    out
}

/// Weighted count of `I`/`J2` paths `(0,0) -> (k,n)`.
pub fn c_path_count(n: usize, k: usize) -> Result<BigUint> {
    check_nk(n, k)?;
    Ok(c_table(n, k).swap_remove(n).swap_remove(k))
}

/// Same quantity as [`b_path_count`], computed on bicoloured Dyck paths of
/// length `2n`: a step-by-step DP over `(height, #U2)`.
pub fn dyck_b_count(n: usize, k: usize) -> Result<BigUint> {
    check_nk(n, k)?;
    let len = 2 * n;
    // state[h][r]
    let mut state = vec![vec![BigUint::zero(); k + 1]; n + 2];
    state[0][0] = BigUint::one();
    for m in 1..=len {
        let mut next = vec![vec![BigUint::zero(); k + 1]; n + 2];
        for h in 0..=n {
            for r in 0..=k {
                let v = &state[h][r];
                if v.is_zero() {
                    continue;
                }
                if h < n {
                    next[h + 1][r] += v;
                    if r < k {
                        next[h + 1][r + 1] += v * (m + r);
                    }
                }
                if h > 0 {
                    next[h - 1][r] += v;
                }
            }
        }
        state = next;
    }
    Ok(state[0][k].clone())
}

/// Same quantity as [`c_path_count`] on Dyck meanders using only `U2` and
/// `D`: `n` up steps and `k` down steps, ending at height `n - k`.
pub fn dyck_c_count(n: usize, k: usize) -> Result<BigUint> {
    check_nk(n, k)?;
    // state[r] = weighted count after using r up steps; downs = m - r
    let mut state = vec![BigUint::zero(); n + 1];
    state[0] = BigUint::one();
    for m in 1..=n + k {
        let mut next = vec![BigUint::zero(); n + 1];
        for r in 0..=n {
            let v = &state[r];
            if v.is_zero() {
                continue;
            }
            let downs = m - 1 - r;
            if r < n {
                next[r + 1] += v * (m + r);
            }
            if downs < k && downs < r {
                next[r] += v;
            }
        }
        state = next;
    }
    Ok(state[n].clone())
}

/// Weights of the `J2` steps along an explicit step sequence. Fails if the
/// path leaves `i <= j`.
pub fn j2_weights(steps: &[StepKind]) -> Result<Vec<usize>> {
    let (mut i, mut j, mut r) = (0usize, 0usize, 0usize);
    let mut weights = Vec::new();
    for step in steps {
        match step {
            StepKind::I => i += 1,
            StepKind::J1 => j += 1,
            StepKind::J2 => {
                j += 1;
                r += 1;
                weights.push(j2_weight(i, j, r));
            }
        }
        if i > j {
            return Err(Error::Domain(format!("path leaves i <= j at ({i}, {j})")));
        }
    }
    Ok(weights)
}

/// A path whose three `J2` steps weigh 2, 5 and 9 (product 90).
pub const FIGURE_PATH: [StepKind; 7] = [
    StepKind::J1,
    StepKind::J2,
    StepKind::I,
    StepKind::J2,
    StepKind::I,
    StepKind::I,
    StepKind::J2,
];

/// Recomputes the 2-5-9 example path; true iff its weights and their
/// product 90 are reproduced.
pub fn figure_weight_check() -> bool {
    match j2_weights(&FIGURE_PATH) {
        Ok(w) => w == [2, 5, 9] && w.iter().product::<usize>() == 90,
        Err(_) => false,
    }
}
