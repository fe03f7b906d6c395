//! Catalan series `D`, `E = zD`, the bivariate family `F_k` and `B_k`.

use num_bigint::BigInt;

use super::coeff::Coefficient;
use super::truncated::{IntSeries, Series};
use super::upoly::UPolySeries;
use crate::error::Result;

/// `D = 1 + z^2 D^2` by the convolution recurrence.
pub fn dyck_series(order: usize) -> IntSeries {
    let mut d: Vec<BigInt> = Vec::with_capacity(order);
    for n in 0..order {
        let v = match n {
            0 => BigInt::from(1),
            1 => BigInt::from(0),
            _ => {
                let m = n - 2;
                let mut acc = BigInt::from(0);
                for i in 0..=m {
                    if !d[i].is_zero() && !d[m - i].is_zero() {
                        acc += &d[i] * &d[m - i];
                    }
                }
                acc
            }
        };
        d.push(v);
    }
    Series::new(d)
}

/// `E = z D`, the solution of `E = z(1 + E^2)`.
pub fn e_series(order: usize) -> IntSeries {
    if order == 0 {
        return Series::zero(0);
    }
    dyck_series(order - 1).shift_up(1)
}

/// `(1/z^{k-2}) d/dz z^{k-1}`, applied as the three literal steps. On a
/// monomial it is `z^n ↦ (n+k-1) z^n`; the order is preserved.
pub fn weight_operator<T: Coefficient>(f: &Series<T>, k: usize) -> Result<Series<T>> {
    assert!(k >= 1, "weight operator is defined for k >= 1");
    let d = f.shift_up(k - 1).derivative();
    if k >= 2 {
        d.shift_down(k - 2)
    } else {
        Ok(d.shift_up(1))
    }
}

/// One step of the recursion: `F_{k-1} ↦ F_k`.
fn next_f(prev: &UPolySeries<BigInt>, e: &IntSeries, k: usize) -> Result<UPolySeries<BigInt>> {
    let order = prev.order();
    let Some(top) = prev.u_degree() else {
        return Ok(UPolySeries::new(order, Vec::new()));
    };
    // Divided difference of u F: q_m = Σ_{ℓ>=m} f_ℓ E^{ℓ-m}.
    let mut q: Vec<IntSeries> = vec![Series::zero(order); top + 1];
    q[top] = prev.term(top);
    for m in (0..top).rev() {
        q[m] = prev.term(m).add(&e.mul(&q[m + 1]));
    }
    // Times M_up = Σ_{j>=1} (uE)^j: R_ℓ = E (R_{ℓ-1} + q_{ℓ-1}).
    let mut r: Vec<IntSeries> = vec![Series::zero(order)];
    for l in 1..order {
        let mut inner = r[l - 1].clone();
        if let Some(ql) = q.get(l - 1) {
            inner = inner.add(ql);
        }
        let next = e.mul(&inner);
        if next.is_zero() && l > top + 1 {
            break;
        }
        r.push(next);
    }
    let terms = r
        .iter()
        .map(|t| weight_operator(t, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(UPolySeries::new(order, terms))
}

/// `F_0, …, F_{k_max}` to the given z-order.
pub fn f_family(k_max: usize, order: usize) -> Result<Vec<UPolySeries<BigInt>>> {
    let e = e_series(order);
    let mut out = vec![UPolySeries::one(order)];
    for k in 1..=k_max {
        let next = next_f(&out[k - 1], &e, k)?;
        out.push(next);
    }
    Ok(out)
}

pub fn f_k(k: usize, order: usize) -> Result<UPolySeries<BigInt>> {
    Ok(f_family(k, order)?.pop().expect("family is nonempty"))
}

/// `B_k = F_k(z, E) D` for `k = 0..=k_max`.
pub fn b_family(k_max: usize, order: usize) -> Result<Vec<IntSeries>> {
    let e = e_series(order);
    let d = dyck_series(order);
    Ok(f_family(k_max, order)?
        .iter()
        .map(|f| f.evaluate_at(&e).mul(&d))
        .collect())
}

/// `B_k`; the coefficient of `z^{2n}` is `b_{n,k}`.
pub fn b_k_series(k: usize, order: usize) -> Result<IntSeries> {
    Ok(b_family(k, order)?.pop().expect("family is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::b_path_count;

    fn ints(v: &[i64]) -> IntSeries {
        Series::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn catalan_and_e() {
        assert_eq!(dyck_series(9), ints(&[1, 0, 1, 0, 2, 0, 5, 0, 14]));
        let e = e_series(12);
        assert!(Coefficient::is_zero(e.coeff(0)));
        let rhs = Series::one(12).add(&e.mul(&e)).shift_up(1).truncate(12);
        assert_eq!(e, rhs);
    }

    #[test]
    fn weight_operator_on_monomials() {
        let z3 = Series::monomial(BigInt::from(1), 3, 6);
        assert_eq!(weight_operator(&z3, 2).unwrap(), Series::monomial(BigInt::from(4), 3, 6));
        for k in 1..6 {
            let f = ints(&[0, 1, 1, 1, 1, 1, 1]);
            let w = weight_operator(&f, k).unwrap();
            assert_eq!(w.order(), 7);
            for n in 0..7 {
                let want = if n == 0 { 0 } else { (n + k - 1) as i64 };
                assert_eq!(w.coeff(n), &BigInt::from(want), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn f0_and_f1_closed_form() {
        let order = 16;
        let fam = f_family(1, order).unwrap();
        assert_eq!(fam[0], UPolySeries::one(order));
        // F_1 = z u E' / (1 - uE)^2, so [u^ℓ] F_1 = ℓ z E^{ℓ-1} E'.
        let e = e_series(order + 1);
        let de = e.derivative();
        let e = e.truncate(order);
        let f1 = &fam[1];
        assert_eq!(f1.term(0), Series::zero(order));
        let mut e_pow = Series::one(order);
        for l in 1..order {
            let want = e_pow.mul(&de).shift_up(1).truncate(order).mul_i64(l as i64);
            assert_eq!(f1.term(l), want, "u^{l}");
            e_pow = e_pow.mul(&e);
        }
    }

    #[test]
    fn displayed_b_series() {
        assert_eq!(b_k_series(0, 9).unwrap(), ints(&[1, 0, 1, 0, 2, 0, 5, 0, 14]));
        assert_eq!(b_k_series(1, 7).unwrap(), ints(&[0, 0, 1, 0, 7, 0, 38]));
        assert_eq!(b_k_series(2, 9).unwrap(), ints(&[0, 0, 0, 0, 7, 0, 106, 0, 1010]));
    }

    #[test]
    fn b_family_matches_path_dp() {
        let fam = b_family(6, 25).unwrap();
        for (k, b) in fam.iter().enumerate() {
            for n in 0..=12 {
                let want = if n < k { BigInt::from(0) } else { BigInt::from(b_path_count(n, k).unwrap()) };
                assert_eq!(b.coeff(2 * n), &want, "n={n} k={k}");
                assert!(2 * n + 1 >= 25 || Coefficient::is_zero(b.coeff(2 * n + 1)));
            }
        }
    }
}
