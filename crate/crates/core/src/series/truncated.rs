use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::par;

/// Multiplications with at least this many output coefficients go through
/// the parallel map.
const PAR_MUL_THRESHOLD: usize = 48;

/// `Σ c_i z^i + O(z^N)` with `N = coeffs.len()`.
///
/// Every operation returns a new series whose order is the precision that
/// actually survives: `derivative` loses one, `shift_up(m)` gains `m`,
/// products keep the smaller of the two orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

/// Exact-rational series.
pub type TruncatedSeries = Series<BigRational>;
/// Integer series (the `B` side of the identity has integer coefficients).
pub type IntSeries = Series<BigInt>;
/// Series in the main variable with polynomial coefficients in a marker `x`.
pub type BivariateSeries = Series<super::Poly>;

impl<T: Coefficient> Series<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> T) -> Self {
        Series { coeffs: (0..order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Series::from_fn(order, |_| T::zero())
    }

    pub fn one(order: usize) -> Self {
        Series::constant(T::one(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        Series::monomial(c, 0, order)
    }

    /// `c z^deg + O(z^order)`.
    pub fn monomial(c: T, deg: usize, order: usize) -> Self {
        let mut s = Series::zero(order);
        if deg < order {
            s.coeffs[deg] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `z^i`; panics if `i` is beyond the order.
    pub fn coeff(&self, i: usize) -> &T {
        &self.coeffs[i]
    }

    pub fn get(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise precision by truncation");
        Series { coeffs: self.coeffs[..order].to_vec() }
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> Series<U> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series::from_fn(n, |i| self.coeffs[i].add(&other.coeffs[i]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series::from_fn(n, |i| self.coeffs[i].sub(&other.coeffs[i]))
    }

    pub fn neg(&self) -> Self {
        self.map(T::neg)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn mul_i64(&self, v: i64) -> Self {
        self.map(|a| a.mul_i64(v))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let a = &self.coeffs;
        let b = &other.coeffs;
        let cell = |k: usize| {
            let mut acc = T::zero();
            for i in 0..=k {
                if a[i].is_zero() || b[k - i].is_zero() {
                    continue;
                }
                acc.add_assign(&a[i].mul(&b[k - i]));
            }
            acc
        };
        if n >= PAR_MUL_THRESHOLD {
            Series { coeffs: par::map_range(0, n, cell) }
        } else {
            Series::from_fn(n, cell)
        }
    }

    /// `d/dz`; the order drops by one.
    pub fn derivative(&self) -> Self {
        let n = self.order().saturating_sub(1);
        Series::from_fn(n, |i| self.coeffs[i + 1].mul_i64(i as i64 + 1))
    }

    /// Multiplication by `z^m`; the order grows by `m`.
    pub fn shift_up(&self, m: usize) -> Self {
        let mut coeffs = vec![T::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Division by `z^m`. Fails unless the `m` lowest coefficients are zero.
    pub fn shift_down(&self, m: usize) -> Result<Self> {
        if m > self.order() {
            return Err(Error::Series(format!(
                "shift_down({m}) exceeds order {}",
                self.order()
            )));
        }
        if let Some(i) = self.coeffs[..m].iter().position(|c| !c.is_zero()) {
            return Err(Error::Series(format!(
                "shift_down({m}): coefficient of z^{i} is nonzero"
            )));
        }
        Ok(Series { coeffs: self.coeffs[m..].to_vec() })
    }

    /// `self / divisor`. A common power of `z` is cancelled first, so the
    /// divisor may have positive valuation as long as the dividend vanishes to
    /// the same order. Each coefficient of the quotient must exist in the
    /// coefficient ring.
    pub fn divide(&self, divisor: &Self) -> Result<Self> {
        let v = divisor
            .valuation()
            .ok_or_else(|| Error::Series("division by a series that is zero to its order".into()))?;
        let num = self.shift_down(v)?;
        let den = divisor.shift_down(v)?;
        let n = num.order().min(den.order());
        let lead = &den.coeffs[0];
        let mut q: Vec<T> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = num.coeffs[k].clone();
            for i in 1..=k {
                if den.coeffs[i].is_zero() || q[k - i].is_zero() {
                    continue;
                }
                acc = acc.sub(&den.coeffs[i].mul(&q[k - i]));
            }
            let c = acc.div_exact(lead).ok_or_else(|| {
                Error::Series(format!("inexact division at z^{k}: {acc:?} / {lead:?}"))
            })?;
            q.push(c);
        }
        Ok(Series { coeffs: q })
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs.first().is_none_or(|c| c.is_zero()) {
            return Err(Error::Series("inverse needs a nonzero constant term".into()));
        }
        Series::one(self.order()).divide(self)
    }

    /// Square root with constant term 1, by the coefficient recurrence
    /// `2 s_n = f_n - Σ_{0<i<n} s_i s_{n-i}`.
    pub fn sqrt(&self) -> Result<Self> {
        if self.coeffs.first() != Some(&T::one()) {
            return Err(Error::Series("sqrt needs constant term 1".into()));
        }
        let two = T::from_i64(2);
        let n = self.order();
        let mut s: Vec<T> = Vec::with_capacity(n);
        s.push(T::one());
        for k in 1..n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                if s[i].is_zero() || s[k - i].is_zero() {
                    continue;
                }
                acc = acc.sub(&s[i].mul(&s[k - i]));
            }
            let c = acc
                .div_exact(&two)
                .ok_or_else(|| Error::Series(format!("sqrt: halving fails at z^{k}")))?;
            s.push(c);
        }
        Ok(Series { coeffs: s })
    }

    /// `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::Series("compose needs an inner series with zero constant term".into()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Series::zero(n);
        for c in self.coeffs[..n].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0].add_assign(c);
        }
        Ok(acc)
    }

    /// `self(a z^p)`: the coefficient of `z^m` moves to `z^{pm}` and is
    /// multiplied by `a^m`. The order becomes `p (N-1) + 1`.
    pub fn substitute_scaled_power(&self, a: &T, p: usize) -> Self {
        assert!(p >= 1);
        let n = self.order();
        if n == 0 {
            return Series::zero(0);
        }
        let mut out = Series::zero(p * (n - 1) + 1);
        let mut pow = T::one();
        for (m, c) in self.coeffs.iter().enumerate() {
            out.coeffs[p * m] = c.mul(&pow);
            pow = pow.mul(a);
        }
        out
    }

    /// Formal antiderivative with zero constant term; the order grows by one.
    pub fn integrate(&self) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(T::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            let q = c
                .div_exact(&T::from_i64(i as i64 + 1))
                .ok_or_else(|| Error::Series(format!("integrate: inexact at z^{}", i + 1)))?;
            coeffs.push(q);
        }
        Ok(Series { coeffs })
    }
}

impl<T: Coefficient + fmt::Display> fmt::Display for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let text = c.to_string();
            let text = if text.contains(' ') { format!("({text})") } else { text };
            match i {
                0 => write!(f, "{text}")?,
                1 => write!(f, "{text}*z")?,
                _ => write!(f, "{text}*z^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order())
    }
}

impl<T: Coefficient + fmt::Display> Serialize for Series<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        let mut st = s.serialize_struct("Series", 2)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_i64(v)
    }

    fn rs(v: &[i64]) -> TruncatedSeries {
        Series::new(v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn geometric_inverse() {
        let f = rs(&[1, -1, 0, 0, 0, 0]);
        assert_eq!(f.inverse().unwrap(), rs(&[1, 1, 1, 1, 1, 1]));
        assert!(rs(&[0, 1, 0]).inverse().is_err());
    }

    #[test]
    fn divide_cancels_common_power() {
        let num = rs(&[0, 0, 2, 2, 0]);
        let den = rs(&[0, 1, 0, 0, 0]);
        assert_eq!(num.divide(&den).unwrap(), rs(&[0, 2, 2, 0]));
        assert!(rs(&[1, 0, 0]).divide(&den).is_err());
    }

    #[test]
    fn sqrt_of_one_minus_four_z() {
        // sqrt(1-4z) = 1 - 2z - 2z^2 - 4z^3 - 10z^4
        let f = rs(&[1, -4, 0, 0, 0]);
        assert_eq!(f.sqrt().unwrap(), rs(&[1, -2, -2, -4, -10]));
        // integer halving fails on 1 + z
        let g: IntSeries = Series::new(vec![1.into(), 1.into()]);
        assert!(g.sqrt().is_err());
    }

    #[test]
    fn shifts_and_derivative() {
        let f = rs(&[0, 0, 3, 4]);
        assert_eq!(f.shift_down(2).unwrap(), rs(&[3, 4]));
        assert!(f.shift_down(3).is_err());
        assert_eq!(f.shift_up(1), rs(&[0, 0, 0, 3, 4]));
        assert_eq!(f.derivative(), rs(&[0, 6, 12]));
        assert_eq!(f.derivative().integrate().unwrap(), f);
    }

    #[test]
    fn compose_and_substitute() {
        // 1/(1-w) at w = z + z^2
        let geo = rs(&[1, 1, 1, 1, 1]);
        let inner = rs(&[0, 1, 1, 0, 0]);
        // 1/(1-z-z^2): Fibonacci
        assert_eq!(geo.compose(&inner).unwrap(), rs(&[1, 1, 2, 3, 5]));
        assert!(geo.compose(&rs(&[1, 1])).is_err());
        let s = rs(&[1, 1, 1]).substitute_scaled_power(&q(2), 2);
        assert_eq!(s, rs(&[1, 0, 2, 0, 4]));
    }

    #[test]
    fn display_and_json() {
        let f = rs(&[1, 0, -2]);
        assert_eq!(f.to_string(), "1 + -2*z^2 + O(z^3)");
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, r#"{"order":3,"coeffs":["1","0","-2"]}"#);
    }

    fn series_strategy(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec((-20i64..20, 1i64..5), order)
            .prop_map(|v| Series::new(v.into_iter().map(|(a, b)| BigRational::new(a.into(), b.into())).collect()))
    }

    fn unit_strategy(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        series_strategy(order).prop_map(|mut s| {
            s.coeffs[0] = q(1);
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mul_associative(f in series_strategy(8), g in series_strategy(8), h in series_strategy(8)) {
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        }

        #[test]
        fn inverse_is_inverse(f in unit_strategy(9)) {
            prop_assert_eq!(f.mul(&f.inverse().unwrap()), Series::one(9));
        }

        #[test]
        fn sqrt_squares_back(f in unit_strategy(9)) {
            let s = f.sqrt().unwrap();
            prop_assert_eq!(s.mul(&s), f);
        }

        #[test]
        fn product_rule(f in series_strategy(8), g in series_strategy(8)) {
            let lhs = f.mul(&g).derivative();
            let rhs = f.derivative().mul(&g.truncate(7)).add(&f.truncate(7).mul(&g.derivative()));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn parallel_mul_matches_sequential(f in series_strategy(60), g in series_strategy(60)) {
            let par = f.mul(&g);
            let seq = Series::from_fn(60, |k| {
                (0..=k).fold(q(0), |acc, i| acc + f.coeff(i) * g.coeff(k - i))
            });
            prop_assert_eq!(par, seq);
        }
    }
}
