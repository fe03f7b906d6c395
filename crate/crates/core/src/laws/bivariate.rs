//! Closed forms `G(z,x)`, `H(t,x)`, `V(t,x)` expanded with `x` kept as a
//! polynomial marker.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::series::{BivariateSeries, Poly, Series};

fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

/// `sqrt(1 - c * s^deg)` to the given order.
fn sqrt_one_minus(c: Poly, deg: usize, order: usize) -> Result<BivariateSeries> {
    Series::one(order).sub(&Series::monomial(c, deg, order)).sqrt()
}

/// Exact division of every coefficient by `1 - x`.
fn divide_one_minus_x(s: &BivariateSeries) -> Result<BivariateSeries> {
    let d = p(&[1, -1]);
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.div_exact_poly(&d).ok_or_else(|| {
                Error::Series(format!("coefficient {i} is not divisible by (1-x): {c}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Series::new(coeffs))
}

/// `G = 2(1-b) / (b (a+b)^2)` with `a = sqrt(1-4z^2)`, `b = sqrt(1-4xz^2)`.
/// `[z^{2n} x^m] G` counts `B_{n,1}` tableaux whose bottom cell is in column `m`.
pub fn g_series(order: usize) -> Result<BivariateSeries> {
    let a = sqrt_one_minus(p(&[4]), 2, order)?;
    let b = sqrt_one_minus(p(&[0, 4]), 2, order)?;
    let one = Series::one(order);
    let num = one.sub(&b).mul_i64(2);
    let ab = a.add(&b);
    let den = b.mul(&ab).mul(&ab);
    num.divide(&den)
}

/// `H = x(1-a)(1-x+xa-b) / ((1-x) a (1-4tx+ab-a-b))` with
/// `a = sqrt(1-4t)`, `b = sqrt(1-4tx^2)`.
/// `[t^n x^m] H` counts `B_{n,1}` tableaux whose bottom cell holds `m`.
pub fn h_series(order: usize) -> Result<BivariateSeries> {
    // one extra term: the denominator has t-valuation 1
    let n = order + 1;
    let a = sqrt_one_minus(p(&[4]), 1, n)?;
    let b = sqrt_one_minus(p(&[0, 0, 4]), 1, n)?;
    let one = Series::one(n);
    let x = Series::constant(Poly::x(), n);
    let second = one.sub(&x).add(&x.mul(&a)).sub(&b);
    let num = x.mul(&one.sub(&a)).mul(&second);
    let num = divide_one_minus_x(&num)?;
    let w = one
        .sub(&Series::monomial(p(&[0, 4]), 1, n))
        .add(&a.mul(&b))
        .sub(&a)
        .sub(&b);
    let h = num.divide(&a.mul(&w))?;
    Ok(h.truncate(order.min(h.order())))
}

/// `V = x^2/(1-x) ((1-x-x sqrt(1-2t)) / (1-2x+2tx^2) - 1/sqrt(1-2tx^2))`.
/// `n! [t^n x^m] V` counts `C_{n,1}` tableaux whose top cell holds `m`.
pub fn v_series(order: usize) -> Result<BivariateSeries> {
    let s = sqrt_one_minus(p(&[2]), 1, order)?;
    let r = sqrt_one_minus(p(&[0, 0, 2]), 1, order)?;
    let x = Series::constant(Poly::x(), order);
    let first_num = Series::constant(p(&[1, -1]), order).sub(&x.mul(&s));
    let first_den = Series::constant(p(&[1, -2]), order).add(&Series::monomial(p(&[0, 0, 2]), 1, order));
    let first = first_num.divide(&first_den)?;
    let diff = first.sub(&r.inverse()?);
    let v = divide_one_minus_x(&diff)?;
    Ok(v.scale(&p(&[0, 0, 1])))
}

/// Evaluates every coefficient at `x = value`.
pub fn at_x(s: &BivariateSeries, value: &BigRational) -> Series<BigRational> {
    s.map(|c| c.eval(value))
}
