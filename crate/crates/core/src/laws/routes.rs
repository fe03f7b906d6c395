//! Independent count vectors for the three statistics. Each function returns
//! `counts[m]` = number of objects with statistic value `m`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bivariate::{g_series, h_series, v_series};
use super::vtable::VTable;
use crate::error::{Error, Result};
use crate::par;
use crate::series::Poly;
use crate::util::factorial;

fn poly_to_counts(c: &Poly, scale: &BigRational, len: usize) -> Result<Vec<BigUint>> {
    let mut out = vec![BigUint::zero(); len];
    for (m, v) in c.coeffs().iter().enumerate() {
        let v = v * scale;
        if !v.is_integer() || v < BigRational::zero() {
            return Err(Error::Consistency(format!("non-count coefficient {v} at x^{m}")));
        }
        if m >= len {
            if !v.is_zero() {
                return Err(Error::Consistency(format!("mass outside the support at x^{m}")));
            }
            continue;
        }
        out[m] = v.to_integer().to_biguint().expect("nonnegative");
    }
    Ok(out)
}

/// X counts for `n = 1..=n_max` from `[z^{2n}] G`. Entry `[n]`.
pub fn x_from_series(n_max: usize) -> Result<Vec<Vec<BigUint>>> {
    let g = g_series(2 * n_max + 1)?;
    let one = BigRational::one();
    (0..=n_max)
        .map(|n| poly_to_counts(g.coeff(2 * n), &one, n + 1))
        .collect()
}

/// Y counts for `n = 1..=n_max` from `[t^n] H`.
pub fn y_from_series(n_max: usize) -> Result<Vec<Vec<BigUint>>> {
    let h = h_series(n_max + 1)?;
    let one = BigRational::one();
    (0..=n_max)
        .map(|n| poly_to_counts(h.coeff(n), &one, 2 * n + 1))
        .collect()
}

/// Z counts for `n = 1..=n_max` from `n! [t^n] V`.
pub fn z_from_series(n_max: usize) -> Result<Vec<Vec<BigUint>>> {
    let v = v_series(n_max + 1)?;
    (0..=n_max)
        .map(|n| {
            let f = BigRational::from_integer(BigInt::from(factorial(n)));
            poly_to_counts(v.coeff(n), &f, 2 * n + 2)
        })
        .collect()
}

/// Which statistic the path DP records when the `U2` step is placed.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    /// ordinal of the `U2` among the up steps
    UpIndex,
    /// pointer to one of the first `p` steps, `p` the position of `U2`
    Pointer,
}

/// Forward DP over Dyck paths of length `2n` with exactly one `U2` (weight
/// = its step index `p`). Unmarked state: height. Marked state: height and
/// the recorded statistic.
fn path_dp(n: usize, mark: Mark) -> Vec<BigUint> {
    let len = 2 * n;
    let width = match mark {
        Mark::UpIndex => n + 1,
        Mark::Pointer => len + 1,
    };
    let mut free = vec![BigUint::zero(); n + 2];
    let mut marked = vec![vec![BigUint::zero(); width]; n + 2];
    free[0] = BigUint::one();
    for p in 1..=len {
        let mut nfree = vec![BigUint::zero(); n + 2];
        let mut nmarked = vec![vec![BigUint::zero(); width]; n + 2];
        for h in 0..=n {
            if !free[h].is_zero() {
                if h < n {
                    nfree[h + 1] += &free[h];
                    match mark {
                        Mark::UpIndex => {
                            let up = (p - 1 + h) / 2 + 1;
                            // more than n ups cannot close into a Dyck path
                            if up <= n {
                                nmarked[h + 1][up] += &free[h] * p;
                            }
                        }
                        Mark::Pointer => {
                            for q in 1..=p {
                                nmarked[h + 1][q] += &free[h];
                            }
                        }
                    }
                }
                if h > 0 {
                    nfree[h - 1] += &free[h];
                }
            }
            for m in 0..width {
                let v = &marked[h][m];
                if v.is_zero() {
                    continue;
                }
                if h < n {
                    nmarked[h + 1][m] += v;
                }
                if h > 0 {
                    nmarked[h - 1][m] += v;
                }
            }
        }
        free = nfree;
        marked = nmarked;
    }
    marked.swap_remove(0)
}

/// X counts from the bicoloured Dyck path DP.
pub fn x_from_path_dp(n: usize) -> Vec<BigUint> {
    path_dp(n, Mark::UpIndex)
}

/// Y counts from the pointer DP.
pub fn y_from_path_dp(n: usize) -> Vec<BigUint> {
    path_dp(n, Mark::Pointer)
}

/// Binomial row `C(len, 0..=len)`.
fn binomial_row(len: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(len + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for j in 0..len {
        c = c * (len - j) / (j + 1);
        row.push(c.clone());
    }
    row
}

/// Nonnegative ±1 paths of length `len` from 0 ending at height `h`.
fn meander_count(row: &[BigUint], len: usize, h: usize) -> BigUint {
    if h > len || (len - h) % 2 == 1 {
        return BigUint::zero();
    }
    let d = (len - h) / 2;
    let a = &row[d];
    if d == 0 {
        a.clone()
    } else {
        a - &row[d - 1]
    }
}

/// X and Y counts for one `n` by splitting each path at its `U2` step at
/// position `p`, ending at height `ℓ`: the prefix is a meander of length
/// `p-1` ending at `ℓ-1`, the suffix a reversed meander of length `2n-p`
/// ending at `ℓ`. Work is chunked over `p`.
pub fn xy_from_decomposition(n: usize) -> (Vec<BigUint>, Vec<BigUint>) {
    if n == 0 {
        return (vec![BigUint::zero()], vec![BigUint::zero()]);
    }
    let len = 2 * n;
    let chunks = 64.min(len - 1);
    let per = (len - 1).div_ceil(chunks);
    let parts = par::map_range(0, chunks, |c| {
        let mut g = vec![BigUint::zero(); n + 1];
        let mut at_p: Vec<(usize, BigUint)> = Vec::new();
        let lo = 1 + c * per;
        let hi = (lo + per).min(len);
        for p in lo..hi {
            let pre_row = binomial_row(p - 1);
            let suf_row = binomial_row(len - p);
            let mut total = BigUint::zero();
            for l in 1..=p.min(len - p) {
                if (p + l) % 2 == 1 {
                    continue;
                }
                let pre = meander_count(&pre_row, p - 1, l - 1);
                if pre.is_zero() {
                    continue;
                }
                let t = pre * meander_count(&suf_row, len - p, l);
                g[(p + l) / 2] += &t * p;
                total += t;
            }
            at_p.push((p, total));
        }
        (g, at_p)
    });
    let mut x = vec![BigUint::zero(); n + 1];
    let mut by_p = vec![BigUint::zero(); len + 1];
    for (g, at_p) in parts {
        for (m, v) in g.into_iter().enumerate() {
            x[m] += v;
        }
        for (p, v) in at_p {
            by_p[p] = v;
        }
    }
    // Y = q with weight one for each q <= p
    let mut y = vec![BigUint::zero(); len + 1];
    let mut acc = BigUint::zero();
    for q in (1..=len).rev() {
        acc += &by_p[q];
        y[q] = acc.clone();
    }
    (x, y)
}

/// Z counts for one `n` from the `v` recurrence.
pub fn z_from_vtable(table: &VTable, n: usize) -> Vec<BigUint> {
    table.row(n).expect("table covers n").to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::binomial;

    fn ballot(u: usize, d: usize) -> BigUint {
        if d > u {
            return BigUint::zero();
        }
        let a = binomial(u + d, d);
        if d == 0 {
            a
        } else {
            a - binomial(u + d, d - 1)
        }
    }


    fn u(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn n_two_by_every_route() {
        assert_eq!(x_from_path_dp(2), u(&[0, 2, 5]));
        assert_eq!(y_from_path_dp(2), u(&[0, 4, 2, 1, 0]));
        let (x, y) = xy_from_decomposition(2);
        assert_eq!(x, u(&[0, 2, 5]));
        assert_eq!(y, u(&[0, 4, 2, 1, 0]));
        assert_eq!(x_from_series(2).unwrap()[2], u(&[0, 2, 5]));
        assert_eq!(y_from_series(2).unwrap()[2], u(&[0, 4, 2, 1, 0]));
        assert_eq!(z_from_series(2).unwrap()[2], u(&[0, 0, 0, 1, 3, 3]));
    }

    #[test]
    fn meanders_are_ballot_numbers() {
        for len in 0..14 {
            let row = binomial_row(len);
            for h in 0..=len {
                let want = if (len - h) % 2 == 0 { ballot((len + h) / 2, (len - h) / 2) } else { BigUint::zero() };
                assert_eq!(meander_count(&row, len, h), want, "len={len} h={h}");
            }
        }
    }

    #[test]
    fn routes_agree_to_twelve() {
        let xs = x_from_series(12).unwrap();
        let ys = y_from_series(12).unwrap();
        for n in 1..=12 {
            let (x, y) = xy_from_decomposition(n);
            assert_eq!(x, xs[n], "X n={n}");
            assert_eq!(x_from_path_dp(n), x, "X dp n={n}");
            assert_eq!(y, ys[n], "Y n={n}");
            assert_eq!(y_from_path_dp(n), y, "Y dp n={n}");
        }
    }
}
