//! Small exact-arithmetic helpers shared across modules.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

pub fn factorial(n: usize) -> BigUint {
    (2..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// `(2n-1)!!`, with `(-1)!! = 1`.
pub fn odd_double_factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * (2 * i - 1))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

pub fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

pub fn to_rational(v: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

/// Converts an exact rational to the nearest `f64`.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Fall back to scaling both parts down to 64 significant bits.
    let (num, den) = (q.numer().clone(), q.denom().clone());
    let shift = |x: &BigInt| x.bits().saturating_sub(64);
    let (sn, sd) = (shift(&num), shift(&den));
    let n = (&num >> sn).to_f64().unwrap_or(0.0);
    let d = (&den >> sd).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi(sn as i32 - sd as i32)
}

/// Fixed-point decimal rendering of an exact rational, rounded half away
/// from zero to `digits` places.
pub fn decimal_string(q: &BigRational, digits: usize) -> String {
    let scale: BigInt = Pow::pow(BigInt::from(10u32), digits as u32);
    let scaled = q * BigRational::from_integer(scale.clone());
    let neg = scaled < BigRational::zero();
    let abs = if neg { -scaled } else { scaled };
    let half = BigRational::new(BigInt::one(), BigInt::from(2u32));
    let rounded = (abs + half).floor().to_integer();
    let (int, frac) = (&rounded / &scale, &rounded % &scale);
    let sign = if neg && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

/// Renders letter indices (1-based) as `a, b, c, ...` when the alphabet fits,
/// otherwise as a comma-separated list of integers.
pub fn render_letters(letters: &[u16], alphabet: usize) -> String {
    if alphabet <= 26 {
        letters
            .iter()
            .map(|&l| (b'a' + (l - 1) as u8) as char)
            .collect()
    } else {
        letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses `aabba`-style or comma-separated integer words into 1-based letters.
pub fn parse_letters(s: &str) -> Option<Vec<u16>> {
    let s = s.trim();
    if s.chars().any(|c| c.is_ascii_digit()) {
        return s
            .split(',')
            .map(|t| t.trim().parse::<u16>().ok().filter(|&v| v > 0))
            .collect();
    }
    s.chars()
        .map(|c| {
            if c.is_ascii_lowercase() {
                Some((c as u8 - b'a' + 1) as u16)
            } else {
                None
            }
        })
        .collect()
}
