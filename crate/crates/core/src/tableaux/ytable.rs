use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::par;

/// Dense memo of `y_{k,l1,l2}` for `k <= max_k`, `l1 + l2 <= max_l`.
///
/// `y` counts tableaux with a top row of `k` boxes, a middle row of `l1 + l2`
/// boxes and `l2` walled bottom boxes. It satisfies
///
/// `y_{k,l1,l2} = y_{k-1,l1,l2} + y_{k,l1-1,l2} + (2 l2 + l1 + k - 1) y_{k,l1,l2-1}`
///
/// with `y_{0,0,0} = 1` and `y = 0` outside the cone `l1 + l2 >= k >= 0`.
#[derive(Clone, Debug)]
pub struct YTable {
    max_k: usize,
    max_l: usize,
    values: Vec<BigUint>,
}

fn tri(l: usize) -> usize {
    (l + 1) * (l + 2) / 2
}

impl YTable {
    /// Fills the table. Cells with the same `k` and the same `l1 + l2` are
    /// independent and are computed in parallel.
    pub fn build(max_k: usize, max_l: usize) -> Self {
        let layer = tri(max_l);
        let mut values = vec![BigUint::zero(); (max_k + 1) * layer];
        for k in 0..=max_k {
            for s in k..=max_l {
                let cells = par::map_range(0, s + 1, |l2| {
                    let l1 = s - l2;
                    if k == 0 && s == 0 {
                        return BigUint::one();
                    }
                    let at = |k: usize, l1: usize, l2: usize| &values[k * layer + Self::offset(l1, l2)];
                    let mut v = BigUint::zero();
                    if k > 0 {
                        v += at(k - 1, l1, l2);
                    }
                    // (k, l1-1, l2) lies in the cone only when s - 1 >= k.
                    if l1 > 0 && s > k {
                        v += at(k, l1 - 1, l2);
                    }
                    if l2 > 0 && s > k {
                        v += at(k, l1, l2 - 1) * (2 * l2 + l1 + k - 1);
                    }
                    v
                });
                for (l2, v) in cells.into_iter().enumerate() {
                    values[k * layer + Self::offset(s - l2, l2)] = v;
                }
            }
        }
        YTable { max_k, max_l, values }
    }

    fn offset(l1: usize, l2: usize) -> usize {
        let s = l1 + l2;
        s * (s + 1) / 2 + l2
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    pub fn max_l(&self) -> usize {
        self.max_l
    }

    /// `None` when the arguments exceed the table bounds.
    pub fn get(&self, k: usize, l1: usize, l2: usize) -> Option<&BigUint> {
        if k > self.max_k || l1 + l2 > self.max_l {
            return None;
        }
        Some(&self.values[k * tri(self.max_l) + Self::offset(l1, l2)])
    }

    /// `b_{n,k} = y_{n,n-k,k}`.
    pub fn b(&self, n: usize, k: usize) -> Option<&BigUint> {
        (k <= n).then(|| self.get(n, n - k, k)).flatten()
    }

    /// `c_{n,k} = y_{k,0,n}`.
    pub fn c(&self, n: usize, k: usize) -> Option<&BigUint> {
        self.get(k, 0, n)
    }

    /// `d_{n,k,l} = y_{k,n-l,l}`.
    pub fn d(&self, n: usize, k: usize, l: usize) -> Option<&BigUint> {
        (l <= n).then(|| self.get(k, n - l, l)).flatten()
    }
}

/// One-off `y_{k,l1,l2}`; builds the table it needs. Zero outside the cone.
pub fn y_count(k: usize, l1: usize, l2: usize) -> BigUint {
    if l1 + l2 < k {
        return BigUint::zero();
    }
    YTable::build(k, l1 + l2).get(k, l1, l2).unwrap().clone()
}
