//! `C_k(w)` from the gamma closed form and from the first-order ODE chain.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::Coefficient;
use super::truncated::{Series, TruncatedSeries};
use crate::error::{Error, Result};

/// `γ_{i,k}` for `1 <= k <= k_max`, `0 <= i <= k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTable {
    k_max: usize,
    /// `rows[k][i]`; row 0 is empty.
    rows: Vec<Vec<BigRational>>,
}

impl GammaTable {
    pub fn new(k_max: usize) -> Self {
        let mut rows: Vec<Vec<BigRational>> = vec![Vec::new()];
        if k_max >= 1 {
            rows.push(vec![-BigRational::one(), BigRational::one()]);
        }
        for k in 2..=k_max {
            let prev = &rows[k - 1];
            let mut row = vec![BigRational::zero(); k + 1];
            for i in 1..=k {
                let num = BigInt::from((i + 3 * k - 3) * (i + 3 * k - 5));
                row[i] = BigRational::new(num, BigInt::from(i)) * &prev[i - 1];
            }
            row[0] = -row[1..].iter().fold(BigRational::zero(), |a, b| a + b);
            rows.push(row);
        }
        GammaTable { k_max, rows }
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// `None` outside `1 <= k <= k_max`, `i <= k`.
    pub fn get(&self, i: usize, k: usize) -> Option<&BigRational> {
        if k == 0 {
            return None;
        }
        self.rows.get(k)?.get(i)
    }

    /// `2α = i + 3k - 1`, the doubled exponent of `(1-2w)^{-α}`.
    pub fn doubled_exponent(i: usize, k: usize) -> i64 {
        (i + 3 * k) as i64 - 1
    }
}

/// `(1-2w)^{-a/2}` from `coef_{m+1} = coef_m (a + 2m) / (m+1)`.
pub fn half_power_series(doubled_alpha: i64, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order);
    let mut c = BigRational::one();
    for m in 0..order {
        coeffs.push(c.clone());
        c *= BigRational::new(
            BigInt::from(doubled_alpha + 2 * m as i64),
            BigInt::from(m as i64 + 1),
        );
    }
    Series::new(coeffs)
}

/// `C_0 = 1 - sqrt(1-2w)`.
pub fn c0_series(order: usize) -> TruncatedSeries {
    Series::one(order).sub(&half_power_series(-1, order))
}

/// `C_k = Σ_i γ_{i,k} (1-2w)^{-(i+3k-1)/2}`.
pub fn c_k_gamma(k: usize, order: usize, gammas: &GammaTable) -> TruncatedSeries {
    if k == 0 {
        return c0_series(order);
    }
    let mut acc = Series::zero(order);
    for i in 0..=k {
        let g = gammas.get(i, k).expect("gamma table covers k");
        acc = acc.add(&half_power_series(GammaTable::doubled_exponent(i, k), order).scale(g));
    }
    acc
}

/// `C_0, …, C_{k_max}` by integrating
/// `(1-2w) C_k' - (3k-1) C_k = C_{k-1}''` with `C_k(0) = 0`.
/// Each level costs one order, so `C_0` starts at `order + k_max`.
pub fn c_ode_family(k_max: usize, order: usize) -> Vec<TruncatedSeries> {
    let mut fam = vec![c0_series(order + k_max)];
    for k in 1..=k_max {
        let p = &fam[k - 1];
        let n = p.order() - 1;
        let mut c: Vec<BigRational> = Vec::with_capacity(n);
        c.push(BigRational::zero());
        for m in 0..n.saturating_sub(1) {
            let lin = &c[m] * BigRational::from_i64((2 * m + 3 * k) as i64 - 1);
            let src = p.coeff(m + 2) * BigRational::from_i64(((m + 2) * (m + 1)) as i64);
            c.push((lin + src) / BigRational::from_i64(m as i64 + 1));
        }
        fam.push(Series::new(c));
    }
    fam.into_iter().map(|s| s.truncate(order)).collect()
}

/// `C_0, …, C_{k_max}` built by both routes and compared coefficient-wise.
pub fn c_family(k_max: usize, order: usize) -> Result<Vec<TruncatedSeries>> {
    let gammas = GammaTable::new(k_max);
    let ode = c_ode_family(k_max, order);
    for (k, via_ode) in ode.iter().enumerate() {
        let via_gamma = c_k_gamma(k, order, &gammas);
        if let Some(i) = (0..order).find(|&i| via_gamma.coeff(i) != via_ode.coeff(i)) {
            return Err(Error::Consistency(format!(
                "C_{k}: gamma route and ODE route differ at w^{i} ({} vs {})",
                via_gamma.coeff(i),
                via_ode.coeff(i)
            )));
        }
    }
    Ok(ode)
}

/// `C_k(w)`, checked across both routes.
pub fn c_k_series(k: usize, order: usize) -> Result<TruncatedSeries> {
    Ok(c_family(k, order)?.pop().expect("family is nonempty"))
}

/// `(1-2w) f' - j f` truncated to the surviving order; `j = None` gives `T f`.
pub fn t_apply(f: &TruncatedSeries, j: Option<i64>) -> TruncatedSeries {
    let d = f.derivative();
    let n = d.order();
    let mut out = Series::from_fn(n, |i| {
        let mut v = d.coeff(i).clone();
        if i > 0 {
            v -= d.coeff(i - 1) * BigRational::from_i64(2);
        }
        v
    });
    if let Some(j) = j {
        out = out.sub(&f.truncate(n).mul_i64(j));
    }
    out
}
