use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::ytable::YTable;
use crate::error::{Error, Result};
use crate::par;
use crate::util::{factorial, pow2};

/// Streams the `y` recurrence slab by slab (`t = k + l1 + l2`), keeping only
/// two slabs alive, and records the two diagonals the identity needs:
/// `y_{n,n-k,k}` and `y_{k,0,n}` for `0 <= k <= n <= n_max`.
#[derive(Clone, Debug)]
pub struct IdentitySweep {
    n_max: usize,
    /// `b[n][k] = y_{n,n-k,k}`
    b: Vec<Vec<BigUint>>,
    /// `c[n][k] = y_{k,0,n}`
    c: Vec<Vec<BigUint>>,
}

impl IdentitySweep {
    pub fn run(n_max: usize) -> Self {
        let w = n_max + 1;
        let mut b = vec![Vec::new(); w];
        let mut c = vec![Vec::new(); w];
        for n in 0..w {
            b[n] = vec![BigUint::zero(); n + 1];
            c[n] = vec![BigUint::zero(); n + 1];
        }
        // slab[k * w + l1] holds y_{k,l1,t-k-l1}
        let mut prev: Vec<BigUint> = vec![BigUint::zero(); w * w];
        prev[0] = BigUint::one();
        b[0][0] = BigUint::one();
        c[0][0] = BigUint::one();
        for t in 1..=2 * n_max {
            let rows = par::map_range(0, w.min(t + 1), |k| {
                let mut row = vec![BigUint::zero(); w];
                for l1 in 0..w {
                    if k + l1 > t {
                        break;
                    }
                    let l2 = t - k - l1;
                    let l = l1 + l2;
                    if l > n_max || l < k {
                        continue;
                    }
                    let mut v = BigUint::zero();
                    if k > 0 {
                        v += &prev[(k - 1) * w + l1];
                    }
                    if l1 > 0 && l > k {
                        v += &prev[k * w + l1 - 1];
                    }
                    if l2 > 0 && l > k {
                        v += &prev[k * w + l1] * (2 * l2 + l1 + k - 1);
                    }
                    row[l1] = v;
                }
                row
            });
            let next: Vec<BigUint> = rows
                .into_iter()
                .chain(std::iter::repeat_with(|| vec![BigUint::zero(); w]))
                .take(w)
                .flatten()
                .collect();
            if t % 2 == 0 && t / 2 <= n_max {
                let n = t / 2;
                for k in 0..=n {
                    b[n][k] = next[n * w + (n - k)].clone();
                }
            }
            for k in 0..=n_max.min(t) {
                let n = t - k;
                if n <= n_max && k <= n {
                    c[n][k] = next[k * w].clone();
                }
            }
            prev = next;
        }
        IdentitySweep { n_max, b, c }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `y_{n,n-k,k}`
    pub fn b(&self, n: usize, k: usize) -> &BigUint {
        &self.b[n][k]
    }

    /// `y_{k,0,n}`
    pub fn c(&self, n: usize, k: usize) -> &BigUint {
        &self.c[n][k]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableauIdentityReport {
    pub n_max: usize,
    pub checked: usize,
    pub pass: bool,
    /// First `(n, k)` (in increasing `n`, then `k`) where the sides differ.
    pub first_counterexample: Option<(usize, usize)>,
    pub elapsed_ms: u128,
}

/// Checks `y_{n,n-k,k} = 2^{n-k} / (n-k+1)! * y_{k,0,n}` for all
/// `0 <= k <= n <= n_max`, in exact rational arithmetic.
pub fn verify_tableau_identity(n_max: usize) -> TableauIdentityReport {
    let start = Instant::now();
    let sweep = IdentitySweep::run(n_max);
    let mut checked = 0;
    let mut first_counterexample = None;
    'outer: for n in 0..=n_max {
        for k in 0..=n {
            checked += 1;
            let lhs = BigRational::from_integer(BigInt::from(sweep.b(n, k).clone()));
            let factor = BigRational::new(
                BigInt::from(pow2(n - k)),
                BigInt::from(factorial(n - k + 1)),
            );
            let rhs = factor * BigRational::from_integer(BigInt::from(sweep.c(n, k).clone()));
            if lhs != rhs {
                first_counterexample = Some((n, k));
                break 'outer;
            }
        }
    }
    TableauIdentityReport {
        n_max,
        checked,
        pass: first_counterexample.is_none(),
        first_counterexample,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Number of tree-child networks with `n` leaves and `k` reticulations,
/// computed as `n!/(n-k)! * y_{k,0,n-1}` and cross-checked against
/// `n!/2^{n-k-1} * y_{n-1,n-1-k,k}`.
pub fn tc_count(n: usize, k: usize) -> Result<BigUint> {
    if n <= k {
        return Err(Error::Domain(format!("tc_count needs n > k >= 0, got n={n}, k={k}")));
    }
    let table = YTable::build(n - 1, n - 1);
    let falling: BigUint = factorial(n) / factorial(n - k);
    let c_route = falling * table.c(n - 1, k).unwrap();
    let (b_route, rem) = (factorial(n) * table.b(n - 1, k).unwrap()).div_rem(&pow2(n - k - 1));
    if !rem.is_zero() || b_route != c_route {
        return Err(Error::Consistency(format!(
            "TC_{{{n},{k}}}: word route gives {c_route}, tableau route gives {b_route} (remainder {rem})"
        )));
    }
    Ok(c_route)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::{catalan, odd_double_factorial};

    #[test]
    fn sweep_matches_dense_table() {
        let sweep = IdentitySweep::run(12);
        let table = YTable::build(12, 12);
        for n in 0..=12 {
            for k in 0..=n {
                assert_eq!(sweep.b(n, k), table.b(n, k).unwrap(), "b {n} {k}");
                assert_eq!(sweep.c(n, k), table.c(n, k).unwrap(), "c {n} {k}");
            }
        }
    }

    #[test]
    fn identity_small() {
        let r = verify_tableau_identity(0);
        assert!(r.pass);
        assert_eq!(r.checked, 1);
        let r = verify_tableau_identity(2);
        assert!(r.pass);
        assert_eq!(r.checked, 6);
        // y_{2,1,1} = 2/2! * y_{1,0,2}
        let s = IdentitySweep::run(2);
        assert_eq!(s.b(2, 1), &BigUint::from(7u32));
        assert_eq!(s.c(2, 1), &BigUint::from(7u32));
    }

    #[test]
    fn identity_moderate() {
        let r = verify_tableau_identity(40);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.checked, 41 * 42 / 2);
    }

    #[test]
    fn tc_examples() {
        assert_eq!(tc_count(2, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(tc_count(3, 1).unwrap(), BigUint::from(21u32));
        assert!(matches!(tc_count(2, 2), Err(Error::Domain(_))));
        // TC_{n,n-1} = n! a_{n-1}
        assert_eq!(tc_count(4, 3).unwrap(), factorial(4) * 106u32);
    }

    #[test]
    fn tc_k_zero_closed_form() {
        for n in 1..=10 {
            let via_c = factorial(n) * odd_double_factorial(n - 1) / factorial(n);
            let via_b = factorial(n) * catalan(n - 1) / pow2(n - 1);
            assert_eq!(via_c, via_b);
            assert_eq!(tc_count(n, 0).unwrap(), via_c, "n={n}");
        }
    }
}
