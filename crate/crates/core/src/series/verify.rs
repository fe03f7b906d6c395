use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::ck::{c_family, c_k_series, t_apply};
use super::coeff::Coefficient;
use super::gf::{b_family, e_series};
use super::truncated::{IntSeries, Series, TruncatedSeries};
use crate::error::Result;
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GfIdentityReport {
    pub k: usize,
    pub order: usize,
    pub pass: bool,
    /// Lowest power of `z` where the two sides differ.
    pub first_mismatch: Option<usize>,
}

/// Default comparison order for a given `k`.
pub fn default_identity_order(k: usize) -> usize {
    2 * k + 40
}

/// `w`-order of `C_k` needed to compare `z^{2(k-1)} C_k(2z^2)` up to `z^order`.
fn c_order_for(order: usize) -> usize {
    order / 2 + 2
}

fn compare(k: usize, order: usize, b: &IntSeries, c: &TruncatedSeries) -> GfIdentityReport {
    let two = BigRational::from_i64(2);
    let sub = c.substitute_scaled_power(&two, 2);
    let b = b.map(|v| BigRational::from_integer(v.clone()));
    // k >= 1: 2 B_k = z^{2(k-1)} C_k(2z^2); k = 0: 2 z^2 B_0 = C_0(2z^2)
    let (lhs, rhs) = if k == 0 {
        (b.shift_up(2).mul_i64(2), sub)
    } else {
        (b.mul_i64(2), sub.shift_up(2 * (k - 1)))
    };
    let first_mismatch = (0..order).find(|&i| lhs.coeff(i) != rhs.coeff(i));
    GfIdentityReport { k, order, pass: first_mismatch.is_none(), first_mismatch }
}

/// Checks `2B_k(z) = z^{2(k-1)} C_k(2z^2)` (and the `k = 0` variant
/// `2z^2 B_0 = C_0(2z^2)`) coefficient by coefficient below `z^order`.
pub fn verify_gf_identity(k: usize, order: usize) -> Result<GfIdentityReport> {
    let b = b_family(k, order)?.pop().expect("family is nonempty");
    let c = c_k_series(k, c_order_for(order))?;
    Ok(compare(k, order, &b, &c))
}

#[derive(Clone, Debug, Serialize)]
pub struct GfSweepReport {
    pub k_max: usize,
    pub reports: Vec<GfIdentityReport>,
    pub pass: bool,
    pub elapsed_ms: u128,
}

/// Runs the identity for every `k <= k_max`, each at `order_for(k)`. The
/// `B` and `C` chains are built once at the largest order.
pub fn verify_gf_identities(k_max: usize, order_for: impl Fn(usize) -> usize + Sync) -> Result<GfSweepReport> {
    let start = Instant::now();
    let top = (0..=k_max).map(&order_for).max().unwrap_or(0);
    let (bs, cs) = par::join(|| b_family(k_max, top), || c_family(k_max, c_order_for(top)));
    let (bs, cs) = (bs?, cs?);
    let reports = par::map_range(0, k_max + 1, |k| compare(k, order_for(k), &bs[k], &cs[k]));
    Ok(GfSweepReport {
        k_max,
        pass: reports.iter().all(|r| r.pass),
        reports,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TOperatorReport {
    pub k: usize,
    pub order: usize,
    /// Order left after the `k + 1` applications of `T`.
    pub surviving_order: usize,
    pub pass: bool,
}

/// Applies `∏_{j=3k-1}^{4k-1} (T - j)` to `C_k` (order `order`) and checks
/// that nothing survives.
pub fn t_operator_check(k: usize, order: usize) -> Result<TOperatorReport> {
    assert!(k >= 1, "t_operator_check needs k >= 1");
    let mut f = c_k_series(k, order)?;
    for j in 3 * k - 1..=4 * k - 1 {
        f = t_apply(&f, Some(j as i64));
    }
    Ok(TOperatorReport { k, order, surviving_order: f.order(), pass: f.is_zero() })
}

/// `D^2 T f = (T - 4) D^2 f` with `D = d/dz`, `T = (1-2z) d/dz`.
pub fn commutation_holds(f: &TruncatedSeries) -> bool {
    let lhs = t_apply(f, None).derivative().derivative();
    let rhs = t_apply(&f.derivative().derivative(), Some(4));
    lhs == rhs
}

/// `sqrt(1-4z^2) = (1-E^2)/(1+E^2)` to the given order.
pub fn sqrt_identity_holds(order: usize) -> Result<bool> {
    let mut base = Series::one(order);
    if order > 2 {
        base = base.sub(&Series::monomial(BigRational::from_i64(4), 2, order));
    }
    let lhs = base.sqrt()?;
    let e: TruncatedSeries = e_series(order).map(|v: &BigInt| BigRational::from_integer(v.clone()));
    let e2 = e.mul(&e);
    let one = Series::one(order);
    let rhs = one.sub(&e2).divide(&one.add(&e2))?;
    Ok(lhs == rhs)
}
