use num_bigint::BigUint;
use num_traits::Zero;

use crate::par;

/// Rows of `v_{n,i}`, the number of `C_{n,1}` tableaux whose top cell holds
/// `i`. Row `n` is indexed by `i = 0..=2n+1` (entry 0 is always zero).
///
/// `v_{n,i} = (2n-i) v_{n-1,i} + (i-1) v_{n-1,i-1}` for `1 <= i <= 2n`,
/// `v_{n,2n+1} = (2n-1)!!`, `v_{0,·} = 0`.
#[derive(Clone, Debug)]
pub struct VTable {
    rows: Vec<Vec<BigUint>>,
}

fn next_row(prev: &[BigUint], n: usize, top: &BigUint) -> Vec<BigUint> {
    let mut row = par::map_range(0, 2 * n + 1, |i| {
        if i == 0 {
            return BigUint::zero();
        }
        let mut v = BigUint::zero();
        if let Some(a) = prev.get(i) {
            if 2 * n > i && !a.is_zero() {
                v += a * (2 * n - i);
            }
        }
        if let Some(b) = prev.get(i - 1) {
            if i > 1 && !b.is_zero() {
                v += b * (i - 1);
            }
        }
        v
    });
    row.push(top.clone());
    row
}

impl VTable {
    pub fn build(n_max: usize) -> Self {
        let mut rows = vec![vec![BigUint::zero(); 2]];
        let mut df = BigUint::from(1u32);
        for n in 1..=n_max {
            let row = next_row(&rows[n - 1], n, &df);
            df *= 2 * n + 1;
            rows.push(row);
        }
        VTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> Option<&[BigUint]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn get(&self, n: usize, i: usize) -> Option<&BigUint> {
        self.rows.get(n)?.get(i)
    }
}

/// Rows `n` for each requested `n`, streaming the recurrence so that only
/// one row is alive besides the snapshots.
pub fn vtable_rows_at(ns: &[usize]) -> Vec<Vec<BigUint>> {
    let n_max = ns.iter().copied().max().unwrap_or(0);
    let mut snaps: Vec<Option<Vec<BigUint>>> = vec![None; ns.len()];
    let mut row = vec![BigUint::zero(); 2];
    let mut df = BigUint::from(1u32);
    for n in 0..=n_max {
        if n > 0 {
            row = next_row(&row, n, &df);
            df *= 2 * n + 1;
        }
        for (slot, &want) in snaps.iter_mut().zip(ns) {
            if want == n {
                *slot = Some(row.clone());
            }
        }
    }
    snaps.into_iter().map(|s| s.expect("every n is reached")).collect()
}
