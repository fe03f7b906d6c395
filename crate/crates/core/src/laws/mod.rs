//! Exact distributions of three statistics on one-reticulation objects and
//! their moment convergence.
//!
//! * `X_n`: column of the bottom cell of a `B_{n,1}` tableau, in `1..=n`.
//! * `Y_n`: entry of that bottom cell, in `1..=2n`.
//! * `Z_n`: entry of the top cell of a `C_{n,1}` tableau, in `1..=2n+1`.

mod bivariate;
mod converge;
mod routes;
mod vtable;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub use bivariate::{at_x, g_series, h_series, v_series};
pub use converge::{
    convergence_report, ConvergenceReport, ConvergenceRow, DoublingCheck, ExtraRow, DEFAULT_N_LIST,
};
pub use routes::{
    x_from_path_dp, x_from_series, xy_from_decomposition, y_from_path_dp, y_from_series,
    z_from_series, z_from_vtable,
};
pub use vtable::{vtable_rows_at, VTable};

/// Largest `n` for which [`dist`] runs every route and compares them.
pub const CROSS_CHECK_LIMIT: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Param {
    X,
    Y,
    Z,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Param::X => "X",
            Param::Y => "Y",
            Param::Z => "Z",
        })
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Param::X),
            "Y" | "y" => Ok(Param::Y),
            "Z" | "z" => Ok(Param::Z),
            _ => Err(Error::InvalidInput(format!("unknown parameter {s:?}"))),
        }
    }
}

impl Param {
    /// Largest admissible value at size `n`.
    pub fn support_max(self, n: usize) -> usize {
        match self {
            Param::X => n,
            Param::Y => 2 * n,
            Param::Z => 2 * n + 1,
        }
    }
}

/// Exact distribution of one statistic at one size, stored as counts over a
/// common total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistTable {
    param: Param,
    n: usize,
    counts: BTreeMap<usize, BigUint>,
    total: BigUint,
}

impl DistTable {
    /// Builds from `counts[m]`; zero entries are dropped. Fails if mass lies
    /// outside `1..=support_max` or the total is zero.
    pub fn from_counts(param: Param, n: usize, counts: &[BigUint]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (m, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if m == 0 || m > param.support_max(n) {
                return Err(Error::Consistency(format!(
                    "{param}_{n}: mass at {m} outside 1..={}",
                    param.support_max(n)
                )));
            }
            map.insert(m, c.clone());
        }
        let total: BigUint = map.values().sum();
        if total.is_zero() {
            return Err(Error::Domain(format!("{param}_{n}: empty distribution")));
        }
        Ok(DistTable { param, n, counts: map, total })
    }

    /// A point mass, mostly for tests.
    pub fn point(param: Param, n: usize, m: usize) -> Self {
        DistTable {
            param,
            n,
            counts: BTreeMap::from([(m, BigUint::one())]),
            total: BigUint::one(),
        }
    }

    pub fn param(&self) -> Param {
        self.param
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &BTreeMap<usize, BigUint> {
        &self.counts
    }

    /// Number of objects the distribution is taken over.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn support(&self) -> (usize, usize) {
        let lo = *self.counts.keys().next().expect("nonempty");
        let hi = *self.counts.keys().next_back().expect("nonempty");
        (lo, hi)
    }

    pub fn mass(&self, m: usize) -> BigRational {
        let c = self.counts.get(&m).cloned().unwrap_or_default();
        BigRational::new(BigInt::from(c), BigInt::from(self.total.clone()))
    }

    pub fn masses(&self) -> BTreeMap<usize, BigRational> {
        self.counts.keys().map(|&m| (m, self.mass(m))).collect()
    }

    /// `Σ_m P(m)`, exactly.
    pub fn mass_sum(&self) -> BigRational {
        self.masses().values().fold(BigRational::zero(), |a, b| a + b)
    }
}

/// Raw moments `E[M^r]` for `r = 1..=r_max`.
pub fn moments(dist: &DistTable, r_max: usize) -> Vec<BigRational> {
    let total = BigInt::from(dist.total.clone());
    (1..=r_max)
        .map(|r| {
            let s: BigUint = dist
                .counts
                .iter()
                .map(|(&m, c)| c * Pow::pow(BigUint::from(m), r as u32))
                .sum();
            BigRational::new(BigInt::from(s), total.clone())
        })
        .collect()
}

fn same(param: Param, n: usize, a: &[BigUint], b: &[BigUint], what: &str) -> Result<()> {
    let len = a.len().max(b.len());
    let zero = BigUint::zero();
    for m in 0..len {
        let (x, y) = (a.get(m).unwrap_or(&zero), b.get(m).unwrap_or(&zero));
        if x != y {
            return Err(Error::Consistency(format!(
                "{param}_{n}: {what} disagree at m={m} ({x} vs {y})"
            )));
        }
    }
    Ok(())
}

/// Distribution of `param` at size `n`. For `n <= CROSS_CHECK_LIMIT` the
/// series route and the path DP (or the `v` recurrence) are also run and
/// must agree exactly; above it only the fast route runs.
pub fn dist(param: Param, n: usize) -> Result<DistTable> {
    if n == 0 {
        return Err(Error::Domain("distributions need n >= 1".into()));
    }
    let counts = match param {
        Param::X | Param::Y => {
            let (x, y) = xy_from_decomposition(n);
            if param == Param::X { x } else { y }
        }
        Param::Z => vtable_rows_at(&[n]).pop().expect("one row"),
    };
    if n <= CROSS_CHECK_LIMIT {
        let (via_series, via_dp) = match param {
            Param::X => (x_from_series(n)?.swap_remove(n), x_from_path_dp(n)),
            Param::Y => (y_from_series(n)?.swap_remove(n), y_from_path_dp(n)),
            Param::Z => (z_from_series(n)?.swap_remove(n), counts.clone()),
        };
        same(param, n, &counts, &via_series, "fast route and series route")?;
        same(param, n, &counts, &via_dp, "fast route and path DP")?;
    }
    DistTable::from_counts(param, n, &counts)
}

/// Every distribution for `1 <= n <= n_max` by each route, compared exactly.
/// Returns the tables from the fast route.
pub fn cross_check(param: Param, n_max: usize) -> Result<Vec<DistTable>> {
    let via_series = match param {
        Param::X => x_from_series(n_max)?,
        Param::Y => y_from_series(n_max)?,
        Param::Z => z_from_series(n_max)?,
    };
    let table = (param == Param::Z).then(|| VTable::build(n_max));
    (1..=n_max)
        .map(|n| {
            let (fast, dp) = match param {
                Param::X => {
                    let (x, _) = xy_from_decomposition(n);
                    (x, x_from_path_dp(n))
                }
                Param::Y => {
                    let (_, y) = xy_from_decomposition(n);
                    (y, y_from_path_dp(n))
                }
                Param::Z => {
                    let z = z_from_vtable(table.as_ref().expect("built"), n);
                    (z.clone(), z)
                }
            };
            same(param, n, &fast, &via_series[n], "fast route and series route")?;
            same(param, n, &fast, &dp, "fast route and path DP")?;
            DistTable::from_counts(param, n, &fast)
        })
        .collect()
}
