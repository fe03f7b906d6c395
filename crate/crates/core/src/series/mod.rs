//! Exact truncated power series and the generating functions built on them.

mod ck;
mod coeff;
mod gf;
mod poly;
mod truncated;
mod upoly;
mod verify;

pub use ck::{c0_series, c_family, c_k_gamma, c_k_series, c_ode_family, half_power_series, t_apply, GammaTable};
pub use coeff::Coefficient;
pub use gf::{b_family, b_k_series, dyck_series, e_series, f_family, f_k, weight_operator};
pub use poly::Poly;
pub use truncated::{BivariateSeries, IntSeries, Series, TruncatedSeries};
pub use upoly::UPolySeries;
pub use verify::{
    commutation_holds, default_identity_order, sqrt_identity_holds, t_operator_check, verify_gf_identities,
    verify_gf_identity, GfIdentityReport, GfSweepReport, TOperatorReport,
};
