//! Exact rational and Gaussian-rational arithmetic.
//!
//! Everything downstream (coordinates, polynomial coefficients, root
//! approximations, radii) lives in `Q` or `Q[i]`. Moduli are never taken:
//! comparisons go through squared norms, and the only lossy operation is
//! [`truncate_decimal`], which snaps a value onto a decimal grid.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse number `{input}`: {reason}")]
pub struct ParseNumberError {
    pub input: String,
    pub reason: String,
}

impl ParseNumberError {
    fn new(input: &str, reason: impl Into<String>) -> Self {
        ParseNumberError {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

/// Shorthand for the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `10^k` for any integer `k`.
pub fn pow10(k: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(10u32), k.unsigned_abs() as usize);
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Rounds to the nearest integer, ties away from zero.
pub fn round_half_away(q: &Rational) -> BigInt {
    let two = BigInt::from(2);
    let (n, d) = (q.numer(), q.denom());
    // floor((2|n| + d) / 2d) is |q| rounded half-up
    let mag = (n.abs() * &two + d).div_floor(&(d * &two));
    if n.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Nearest integer multiple of `10^k` to `q`, ties away from zero.
pub fn truncate_rational(q: &Rational, k: i64) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let scale = pow10(k);
    let m = round_half_away(&(q / &scale));
    Rational::from_integer(m) * scale
}

fn digit_count(n: &BigInt) -> i64 {
    n.magnitude().to_str_radix(10).len() as i64
}

/// The unique `e` with `10^e <= q < 10^(e+1)`.
///
/// Panics if `q <= 0`.
pub fn floor_log10(q: &Rational) -> i64 {
    assert!(q.is_positive(), "floor_log10 requires a positive argument");
    let mut e = digit_count(q.numer()) - digit_count(q.denom());
    // the digit-count estimate is off by at most one
    while pow10(e) > *q {
        e -= 1;
    }
    while pow10(e + 1) <= *q {
        e += 1;
    }
    e
}

/// A complex number `re + im*i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// `re_n/re_d + (im_n/im_d) i`
    pub fn from_ratios(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Self {
        GaussianRational::new(rat(re_n, re_d), rat(im_n, im_d))
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    /// Exact multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = gauss_norm(self);
        if n.is_zero() {
            return None;
        }
        Some(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        GaussianRational::new(&self.re * q, &self.im * q)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianRational::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `max(|re|, |im|)`, a rational proxy for the modulus within a factor
    /// of `sqrt 2`.
    pub fn max_abs_part(&self) -> Rational {
        let (a, b) = (self.re.abs(), self.im.abs());
        if a >= b {
            a
        } else {
            b
        }
    }

    /// `|re| + |im|`, a rational upper bound on the modulus.
    pub fn modulus_upper_bound(&self) -> Rational {
        self.re.abs() + self.im.abs()
    }

    /// Lexicographic comparison on `(re, im)`.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

/// Squared modulus `re^2 + im^2`.
pub fn gauss_norm(z: &GaussianRational) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

/// Snaps both parts of `z` to the nearest multiple of `10^k` (ties away
/// from zero).
pub fn truncate_decimal(z: &GaussianRational, k: i64) -> GaussianRational {
    GaussianRational::new(truncate_rational(&z.re, k), truncate_rational(&z.im, k))
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_rational(Rational::one())
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        GaussianRational::from_rational(q)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

impl<'b> Add<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'b GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'b> Sub<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'b GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'b> Mul<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'b GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

/// Panics on division by zero, like the rational division it wraps.
impl<'b> Div<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &'b GaussianRational) -> GaussianRational {
        self.checked_div(rhs)
            .expect("division by zero Gaussian rational")
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl<'a> AddAssign<&'a GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &'a GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> SubAssign<&'a GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &'a GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> MulAssign<&'a GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &'a GaussianRational) {
        *self = &*self * rhs;
    }
}

fn fmt_imag(f: &mut fmt::Formatter<'_>, im: &Rational) -> fmt::Result {
    if im.is_one() {
        write!(f, "I")
    } else if *im == -Rational::one() {
        write!(f, "-I")
    } else {
        write!(f, "{}*I", im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => fmt_imag(f, &self.im),
            (false, false) => {
                write!(f, "{}", self.re)?;
                if self.im.is_negative() {
                    write!(f, " - ")?;
                    fmt_imag(f, &-&self.im)
                } else {
                    write!(f, " + ")?;
                    fmt_imag(f, &self.im)
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parses an unsigned rational literal `n` or `n/d`.
pub fn parse_unsigned_rational(s: &str) -> Result<Rational, ParseNumberError> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let digits_only = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits_only(n) {
        return Err(ParseNumberError::new(s, "expected digits"));
    }
    let num = BigInt::parse_bytes(n.as_bytes(), 10).unwrap();
    let den = match d {
        Some(d) if digits_only(d) => BigInt::parse_bytes(d.as_bytes(), 10).unwrap(),
        Some(_) => return Err(ParseNumberError::new(s, "expected digits after `/`")),
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ParseNumberError::new(s, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Splits `s` into signed summands at top-level `+`/`-` signs.
fn signed_summands(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut negative = false;
    let mut cur = String::new();
    for c in s.chars().filter(|c| !c.is_whitespace()) {
        if (c == '+' || c == '-') && !cur.is_empty() && !cur.ends_with('/') {
            out.push((negative, std::mem::take(&mut cur)));
            negative = c == '-';
        } else if (c == '+' || c == '-') && cur.is_empty() {
            if c == '-' {
                negative = !negative;
            }
        } else {
            cur.push(c);
        }
    }
    out.push((negative, cur));
    out
}

impl FromStr for GaussianRational {
    type Err = ParseNumberError;

    /// Accepts `a/b + c/d*I` with optional signs, integer shorthand, and
    /// `I` alone for the imaginary unit.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Err(ParseNumberError::new(s, "empty input"));
        }
        let mut z = GaussianRational::zero();
        for (negative, body) in signed_summands(s) {
            if body.is_empty() {
                return Err(ParseNumberError::new(s, "dangling sign"));
            }
            let mut part = if let Some(coef) = body.strip_suffix('I') {
                let q = match coef.strip_suffix('*') {
                    Some(c) => parse_unsigned_rational(c)
                        .map_err(|e| ParseNumberError::new(s, e.reason))?,
                    None if coef.is_empty() => Rational::one(),
                    None => return Err(ParseNumberError::new(s, "expected `*` before `I`")),
                };
                GaussianRational::new(Rational::zero(), q)
            } else {
                GaussianRational::from_rational(
                    parse_unsigned_rational(&body)
                        .map_err(|e| ParseNumberError::new(s, e.reason))?,
                )
            };
            if negative {
                part = -part;
            }
            z += &part;
        }
        Ok(z)
    }
}

/// `sign(q)` as -1, 0, 1.
pub fn sign_of(q: &Rational) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn norm_examples() {
        assert_eq!(gauss_norm(&GaussianRational::zero()), rat_int(0));
        assert_eq!(gauss_norm(&g("3 + 4*I")), rat_int(25));
        assert_eq!(gauss_norm(&g("1/2 + 1/3*I")), rat(13, 36));
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(truncate_decimal(&g("1/3"), -2), g("33/100"));
        assert_eq!(
            truncate_decimal(&GaussianRational::zero(), -5),
            GaussianRational::zero()
        );
        assert_eq!(truncate_decimal(&g("1/2 + 1/3*I"), -1), g("1/2 + 3/10*I"));
    }

    #[test]
    fn truncate_ties_away_from_zero() {
        assert_eq!(truncate_rational(&rat(5, 2), 0), rat_int(3));
        assert_eq!(truncate_rational(&rat(-5, 2), 0), rat_int(-3));
        assert_eq!(truncate_rational(&rat(-1, 4), 0), rat_int(0));
        assert_eq!(truncate_rational(&rat(250, 1), 2), rat_int(300));
        assert_eq!(truncate_rational(&rat(-15, 1000), -2), rat(-2, 100));
    }

    #[test]
    fn floor_log10_examples() {
        assert_eq!(floor_log10(&rat_int(1)), 0);
        assert_eq!(floor_log10(&rat(1, 1000)), -3);
        assert_eq!(floor_log10(&rat_int(345)), 2);
        assert_eq!(floor_log10(&rat(999, 1000)), -1);
        assert_eq!(floor_log10(&rat(1, 999)), -3);
        assert_eq!(floor_log10(&rat_int(10)), 1);
    }

    #[test]
    #[should_panic]
    fn floor_log10_rejects_zero() {
        floor_log10(&rat_int(0));
    }

    #[test]
    fn parse_and_print() {
        for s in [
            "0",
            "3",
            "-3/2",
            "I",
            "-I",
            "2*I",
            "-1/2*I",
            "3/2 - I",
            "1/2 + 3/10*I",
            "-7 + 5/3*I",
        ] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("6/4"), g("3/2"));
        assert_eq!(g("-1/2-1/3*I"), GaussianRational::from_ratios(-1, 2, -1, 3));
        assert_eq!(g("I + 2"), g("2 + I"));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("".parse::<GaussianRational>().is_err());
        assert!("2I".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = g("1 + 2*I");
        let b = g("3 - I");
        assert_eq!(&a * &b, g("5 + 5*I"));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(a.inv().unwrap(), g("1/5 - 2/5*I"));
        assert!(GaussianRational::zero().inv().is_none());
        assert_eq!(g("I").pow(4), GaussianRational::one());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_gauss() -> impl Strategy<Value = GaussianRational> {
        (arb_rational(), arb_rational()).prop_map(|(a, b)| GaussianRational::new(a, b))
    }

    fn big_positive_rational() -> impl Strategy<Value = Rational> {
        let digits = || proptest::collection::vec(0u8..10, 1..50);
        (digits(), digits()).prop_filter_map("nonzero", |(n, d)| {
            let parse = |v: &Vec<u8>| {
                let s: String = v.iter().map(|d| char::from(b'0' + d)).collect();
                BigInt::parse_bytes(s.as_bytes(), 10).unwrap()
            };
            let (n, d) = (parse(&n), parse(&d));
            (!n.is_zero() && !d.is_zero()).then(|| Rational::new(n, d))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn floor_log10_brackets(q in big_positive_rational()) {
            let e = floor_log10(&q);
            // exhaustive digit counting: shift q by 10^-e and count integer digits
            let shifted = &q * pow10(-e);
            let int_part = shifted.floor().to_integer();
            prop_assert_eq!(int_part.to_str_radix(10).len(), 1);
            prop_assert!(int_part >= BigInt::one());
        }
    }

    proptest! {
        #[test]
        fn norm_nonnegative(z in arb_gauss()) {
            let n = gauss_norm(&z);
            prop_assert!(!n.is_negative());
            prop_assert_eq!(n.is_zero(), z.is_zero());
        }

        #[test]
        fn truncate_error_bound(z in arb_gauss(), k in -6i64..4) {
            let t = truncate_decimal(&z, k);
            let half = pow10(k) / rat_int(2);
            prop_assert!((&t.re - &z.re).abs() <= half);
            prop_assert!((&t.im - &z.im).abs() <= half);
        }

        #[test]
        fn display_round_trip(z in arb_gauss()) {
            let s = z.to_string();
            let back: GaussianRational = s.parse().unwrap();
            prop_assert_eq!(&back, &z);
            prop_assert_eq!(back.to_string(), s);
        }
    }
}
