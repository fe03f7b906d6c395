use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use serde::Serialize;

use super::{moments, vtable_rows_at, xy_from_decomposition, DistTable, Param};
use crate::error::{Error, Result};
use crate::util::rational_to_f64;

pub const DEFAULT_N_LIST: [usize; 5] = [125, 250, 500, 1000, 2000];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub r: usize,
    /// `E[M_n^r] / s^r` with `s = n` for X and `s = 2n` for Y and Z.
    pub empirical: f64,
    pub target: f64,
    pub gap: f64,
}

/// A derived scalar statistic reported next to the moments.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtraRow {
    pub n: usize,
    pub name: String,
    pub value: f64,
    pub target: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoublingCheck {
    pub r: usize,
    pub n: usize,
    pub n2: usize,
    pub gap_n: f64,
    pub gap_2n: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub param: Param,
    pub n_list: Vec<usize>,
    pub r_max: usize,
    pub rows: Vec<ConvergenceRow>,
    pub extras: Vec<ExtraRow>,
    pub doubling: Vec<DoublingCheck>,
}

impl ConvergenceReport {
    pub fn row(&self, n: usize, r: usize) -> Option<&ConvergenceRow> {
        self.rows.iter().find(|x| x.n == n && x.r == r)
    }

    pub fn extra(&self, n: usize, name: &str) -> Option<&ExtraRow> {
        self.extras.iter().find(|x| x.n == n && x.name == name)
    }

    /// True when every doubling pair shrinks (vacuously true without pairs).
    pub fn doubling_pass(&self) -> bool {
        self.doubling.iter().all(|d| d.pass)
    }
}

/// Limit moment `E[M^r]` of Beta(2,1), Beta(1,2) and Uniform(0,1).
pub fn limit_moment(param: Param, r: usize) -> f64 {
    let r = r as f64;
    match param {
        Param::X => 2.0 / (r + 2.0),
        Param::Y => 2.0 / ((r + 1.0) * (r + 2.0)),
        Param::Z => 1.0 / (r + 1.0),
    }
}

fn scale(param: Param, n: usize) -> usize {
    match param {
        Param::X => n,
        Param::Y | Param::Z => 2 * n,
    }
}

fn tables(param: Param, ns: &[usize]) -> Result<Vec<DistTable>> {
    match param {
        Param::Z => vtable_rows_at(ns)
            .iter()
            .zip(ns)
            .map(|(row, &n)| DistTable::from_counts(param, n, row))
            .collect(),
        _ => ns
            .iter()
            .map(|&n| {
                let (x, y) = xy_from_decomposition(n);
                DistTable::from_counts(param, n, if param == Param::X { &x } else { &y })
            })
            .collect(),
    }
}

/// Rescaled moments against their limits for every `n` in `n_list` and
/// `r <= r_max`, plus:
///
/// * X: `mean/n` against 2/3 and `stdev/n` against `sqrt(2)/6`;
/// * Z: `(n - E[Z_n])/sqrt(n)` and `(E[Z_n] - n)/sqrt(n)`, each against
///   `sqrt(pi)/2`.
///
/// Doubling checks compare `|gap|` at `n` and `2n` whenever both are listed.
pub fn convergence_report(param: Param, n_list: &[usize], r_max: usize) -> Result<ConvergenceReport> {
    if n_list.is_empty() || n_list.contains(&0) {
        return Err(Error::InvalidInput("n_list must be nonempty with n >= 1".into()));
    }
    if r_max == 0 {
        return Err(Error::InvalidInput("r_max must be >= 1".into()));
    }
    let dists = tables(param, n_list)?;
    let mut rows = Vec::new();
    let mut extras = Vec::new();
    for (d, &n) in dists.iter().zip(n_list) {
        let mom = moments(d, r_max.max(2));
        for r in 1..=r_max {
            let denom = BigRational::from_integer(Pow::pow(BigInt::from(scale(param, n)), r as u32));
            let empirical = rational_to_f64(&(&mom[r - 1] / denom));
            let target = limit_moment(param, r);
            rows.push(ConvergenceRow { n, r, empirical, target, gap: empirical - target });
        }
        let nq = BigRational::from_integer(BigInt::from(n));
        let mut extra = |name: &str, value: f64, target: f64| {
            extras.push(ExtraRow { n, name: name.to_string(), value, target, gap: value - target });
        };
        match param {
            Param::X => {
                let mean = rational_to_f64(&(&mom[0] / &nq));
                let var = &mom[1] - &mom[0] * &mom[0];
                let sd = rational_to_f64(&(var / (&nq * &nq))).sqrt();
                extra("mean/n", mean, 2.0 / 3.0);
                extra("stdev/n", sd, 2f64.sqrt() / 6.0);
            }
            Param::Z => {
                let root_n = (n as f64).sqrt();
                let dev = rational_to_f64(&(&nq - &mom[0]));
                extra("(n-mean)/sqrt(n)", dev / root_n, PI.sqrt() / 2.0);
                extra("(mean-n)/sqrt(n)", -dev / root_n, PI.sqrt() / 2.0);
            }
            Param::Y => {}
        }
    }
    let mut doubling = Vec::new();
    for &n in n_list {
        if !n_list.contains(&(2 * n)) {
            continue;
        }
        for r in 1..=r_max {
            let a = rows.iter().find(|x| x.n == n && x.r == r).expect("row");
            let b = rows.iter().find(|x| x.n == 2 * n && x.r == r).expect("row");
            doubling.push(DoublingCheck {
                r,
                n,
                n2: 2 * n,
                gap_n: a.gap,
                gap_2n: b.gap,
                pass: b.gap.abs() < a.gap.abs(),
            });
        }
    }
    Ok(ConvergenceReport {
        param,
        n_list: n_list.to_vec(),
        r_max,
        rows,
        extras,
        doubling,
    })
}
