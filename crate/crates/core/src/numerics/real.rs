//! Arbitrary-precision real scalar.
//!
//! [`BigReal`] wraps an `astro_float::BigFloat` and carries its working
//! precision with it. Binary operations run at the larger of the two operand
//! precisions and round to nearest, ties to even.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use thiserror::Error;

const RM: RoundingMode = RoundingMode::ToEven;
const LOG2_10: f64 = std::f64::consts::LOG2_10;
/// Extra binary digits carried beyond the requested decimal precision.
const GUARD_BITS: usize = 16;

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Working precision, in significant decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const fn digits(d: u32) -> Self {
        assert!(d > 0, "precision must be positive");
        Precision(d)
    }

    /// Default precision for a requested number of output digits:
    /// `max(50, 3 * target)`.
    pub fn for_target(target_digits: u32) -> Self {
        Precision(50.max(3 * target_digits))
    }

    pub const fn decimal_digits(self) -> u32 {
        self.0
    }

    /// Mantissa bits, rounded up to whole 64-bit words.
    pub fn bits(self) -> usize {
        let b = (f64::from(self.0) * LOG2_10).ceil() as usize + GUARD_BITS;
        b.div_ceil(64) * 64
    }

    /// `10^(-n)` at this precision, as a tolerance.
    pub fn epsilon_pow(self, n: i32) -> BigReal {
        BigReal::pow10(-n, self)
    }

    /// `10^(-P + slack)`, the usual "to working precision" tolerance.
    pub fn tolerance(self, slack: i32) -> BigReal {
        BigReal::pow10(slack - self.0 as i32, self)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse {input:?} as a real number")]
pub struct ParseRealError {
    input: String,
}

/// An arbitrary-precision real number.
#[derive(Clone)]
pub struct BigReal {
    inner: BigFloat,
    bits: usize,
}

impl BigReal {
    fn wrap(inner: BigFloat, bits: usize) -> Self {
        debug_assert!(!inner.is_nan(), "NaN produced: {:?}", inner.err());
        BigReal { inner, bits }
    }

    /// Working precision in bits.
    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Precision in significant decimal digits (at least the requested one).
    pub fn precision(&self) -> Precision {
        let d = ((self.bits().saturating_sub(GUARD_BITS)) as f64 / LOG2_10).floor() as u32;
        Precision(d.max(1))
    }

    pub fn zero(p: Precision) -> Self {
        Self::wrap(BigFloat::new(p.bits()), p.bits())
    }

    pub fn one(p: Precision) -> Self {
        Self::from_i64(1, p)
    }

    pub fn from_i64(n: i64, p: Precision) -> Self {
        Self::wrap(BigFloat::from_i64(n, p.bits()), p.bits())
    }

    /// `num / den`, correctly rounded.
    pub fn ratio(num: i64, den: i64, p: Precision) -> Self {
        Self::from_i64(num, p) / Self::from_i64(den, p)
    }

    /// The exact binary value of `x`, carried at precision `p`.
    pub fn from_f64(x: f64, p: Precision) -> Self {
        Self::wrap(BigFloat::from_f64(x, p.bits()), p.bits())
    }

    /// Parses a decimal literal such as `0.0013`, `-2.5e-3` or `7`.
    pub fn parse(s: &str, p: Precision) -> Result<Self, ParseRealError> {
        let t = s.trim();
        let well_formed = !t.is_empty()
            && t.chars().any(|c| c.is_ascii_digit())
            && t.chars().all(|c| c.is_ascii_digit() || "+-.eE".contains(c));
        if !well_formed {
            return Err(ParseRealError {
                input: s.to_string(),
            });
        }
        let v = with_consts(|cc| BigFloat::parse(t, Radix::Dec, p.bits(), RM, cc));
        if v.is_nan() || v.is_inf() {
            return Err(ParseRealError {
                input: s.to_string(),
            });
        }
        Ok(Self::wrap(v, p.bits()))
    }

    pub fn pi(p: Precision) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(p.bits(), RM)), p.bits())
    }

    /// `10^n`.
    pub fn pow10(n: i32, p: Precision) -> Self {
        let ten = Self::from_i64(10, p);
        let m = ten.powi(n.unsigned_abs());
        if n < 0 {
            m.recip()
        } else {
            m
        }
    }

    /// Same value, re-rounded to precision `p`.
    pub fn with_precision(&self, p: Precision) -> Self {
        let mut v = self.inner.clone();
        v.set_precision(p.bits(), RM).expect("valid precision");
        Self::wrap(v, p.bits())
    }

    /// Constant `n` at the precision of `self`.
    pub fn int_like(&self, n: i64) -> Self {
        Self::wrap(BigFloat::from_i64(n, self.bits), self.bits)
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.inner.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.inner.is_positive()
    }

    /// Sign as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.inner.sign() == Some(Sign::Neg) {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.inner.abs(), self.bits)
    }

    pub fn recip(&self) -> Self {
        Self::wrap(self.inner.reciprocal(self.bits, RM), self.bits)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative number");
        Self::wrap(self.inner.sqrt(self.bits, RM), self.bits)
    }

    pub fn exp(&self) -> Self {
        let b = self.bits();
        Self::wrap(with_consts(|cc| self.inner.exp(b, RM, cc)), b)
    }

    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "logarithm of a non-positive number");
        let b = self.bits();
        Self::wrap(with_consts(|cc| self.inner.ln(b, RM, cc)), b)
    }

    pub fn log10(&self) -> Self {
        assert!(self.is_positive(), "logarithm of a non-positive number");
        let b = self.bits();
        Self::wrap(with_consts(|cc| self.inner.log10(b, RM, cc)), b)
    }

    /// `self^e` for a real exponent; `self` must be positive.
    pub fn pow(&self, e: &BigReal) -> Self {
        assert!(self.is_positive(), "real power of a non-positive number");
        let b = self.bits().max(e.bits());
        Self::wrap(with_consts(|cc| self.inner.pow(&e.inner, b, RM, cc)), b)
    }

    pub fn powi(&self, n: u32) -> Self {
        Self::wrap(self.inner.powi(n as usize, self.bits, RM), self.bits)
    }

    pub fn floor(&self) -> Self {
        Self::wrap(self.inner.floor(), self.bits)
    }

    /// Nearest integer, ties to even.
    pub fn round_half_even(&self) -> Self {
        Self::wrap(self.inner.round(0, RoundingMode::ToEven), self.bits)
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Nearest `f64`. Intended for diagnostics and plotting, not arithmetic.
    pub fn to_f64(&self) -> f64 {
        let Some((words, _, sign, exp, _)) = self.inner.as_raw_parts() else {
            return f64::NAN;
        };
        let Some(&top) = words.last() else {
            return 0.0;
        };
        if top == 0 {
            return 0.0;
        }
        // mantissa is 0.m with the leading bit set, value = 0.m * 2^exp
        let lead = top as f64 / 2f64.powi(64);
        let v = lead * 2f64.powi(exp);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Value as `u64` if it is a non-negative integer below `2^64`.
    fn to_u64_exact(&self) -> Option<u64> {
        if self.is_zero() {
            return Some(0);
        }
        if self.is_negative() || !self.inner.is_int() {
            return None;
        }
        let (words, _, _, exp, _) = self.inner.as_raw_parts()?;
        let top = *words.last()?;
        let exp = usize::try_from(exp).ok()?;
        if exp > 64 {
            return None;
        }
        if exp == 64 {
            Some(top)
        } else {
            Some(top >> (64 - exp))
        }
    }

    /// Decimal digits of a non-negative integer value.
    fn integer_digits(&self) -> String {
        let p = self.precision();
        let chunk = BigReal::from_i64(1_000_000_000, p);
        let mut parts = Vec::new();
        let mut rest = self.clone();
        loop {
            let q = (&rest / &chunk).floor();
            let r = &rest - &(&q * &chunk);
            let r = r.to_u64_exact().expect("integer chunk");
            parts.push(r);
            if q.is_zero() {
                break;
            }
            rest = q;
        }
        let mut s = parts.pop().map(|v| v.to_string()).unwrap_or_default();
        for v in parts.iter().rev() {
            s.push_str(&format!("{v:09}"));
        }
        s
    }

    /// Decimal mantissa digits and exponent: `self ~= 0.d1d2...dn * 10^(e+1)`,
    /// i.e. `d1.d2...dn * 10^e`, rounded half-to-even to `sig` digits.
    fn sig_digits(&self, sig: usize) -> (bool, String, i64) {
        let neg = self.is_negative();
        let a = self.abs();
        let p = self.precision();
        let mut e = a.log10().floor().to_f64() as i64;
        let lo = BigReal::pow10(sig as i32 - 1, p);
        let hi = BigReal::pow10(sig as i32, p);
        let mut scaled;
        loop {
            scaled = &a * &BigReal::pow10((sig as i64 - 1 - e) as i32, p);
            if scaled >= hi {
                e += 1;
            } else if scaled < lo {
                e -= 1;
            } else {
                break;
            }
        }
        let mut r = scaled.round_half_even();
        if r >= hi {
            r = lo;
            e += 1;
        }
        (neg, r.integer_digits(), e)
    }

    /// Formats with exactly `sig` significant digits, rounding half to even.
    /// Fixed notation is used for decimal exponents in `[-7, 21)`.
    pub fn to_sig_string(&self, sig: usize) -> String {
        assert!(sig > 0);
        if self.is_zero() {
            return if sig == 1 {
                "0".to_string()
            } else {
                format!("0.{}", "0".repeat(sig - 1))
            };
        }
        let (neg, digits, e) = self.sig_digits(sig);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if (-7..21).contains(&e) {
            if e < 0 {
                out.push_str("0.");
                out.push_str(&"0".repeat((-e - 1) as usize));
                out.push_str(&digits);
            } else {
                let int_len = e as usize + 1;
                if digits.len() <= int_len {
                    out.push_str(&digits);
                    out.push_str(&"0".repeat(int_len - digits.len()));
                } else {
                    out.push_str(&digits[..int_len]);
                    out.push('.');
                    out.push_str(&digits[int_len..]);
                }
            }
        } else {
            out.push_str(&digits[..1]);
            if digits.len() > 1 {
                out.push('.');
                out.push_str(&digits[1..]);
            }
            out.push_str(&format!("e{e}"));
        }
        out
    }

    /// Fixed notation with exactly `places` decimals, rounding half to even.
    pub fn to_fixed_string(&self, places: usize) -> String {
        let scaled =
            (self.abs() * &BigReal::pow10(places as i32, self.precision())).round_half_even();
        let digits = scaled.integer_digits();
        let padded = format!("{digits:0>width$}", width = places + 1);
        let (int, frac) = padded.split_at(padded.len() - places);
        let sign = if self.is_negative() && !scaled.is_zero() {
            "-"
        } else {
            ""
        };
        if places == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    fn binop_bits(&self, other: &Self) -> usize {
        self.bits().max(other.bits())
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f
            .precision()
            .unwrap_or(self.precision().decimal_digits() as usize);
        f.write_str(&self.to_sig_string(sig.max(1)))
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({})", self.to_sig_string(25))
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.inner.cmp(&other.inner) == Some(0)
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.inner.cmp(&other.inner).map(|c| c.cmp(&0))
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::wrap(BigFloat::neg(&self.inner), self.bits)
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal::wrap(BigFloat::neg(&self.inner), self.bits)
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $op:ident, $Assign:ident, $assign:ident) => {
        impl $Trait<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let b = self.binop_bits(rhs);
                BigReal::wrap(self.inner.$op(&rhs.inner, b, RM), b)
            }
        }
        impl $Trait<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $Trait<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$method(&rhs)
            }
        }
        impl $Trait<i64> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: i64) -> BigReal {
                self.$method(&self.int_like(rhs))
            }
        }
        impl $Trait<i64> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: i64) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $Assign<&BigReal> for BigReal {
            fn $assign(&mut self, rhs: &BigReal) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $Assign<BigReal> for BigReal {
            fn $assign(&mut self, rhs: BigReal) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

forward_binop!(Add, add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, mul, MulAssign, mul_assign);
forward_binop!(Div, div, div, DivAssign, div_assign);

impl<'a> Sum<&'a BigReal> for BigReal {
    /// Panics on an empty iterator, which carries no precision.
    fn sum<I: Iterator<Item = &'a BigReal>>(mut iter: I) -> BigReal {
        let first = iter.next().expect("sum of an empty sequence").clone();
        iter.fold(first, |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: Precision = Precision::digits(50);

    #[test]
    fn arithmetic_and_constants() {
        let two = BigReal::from_i64(2, P);
        let r = two.sqrt();
        assert!((&(&r * &r) - &two).abs() < P.tolerance(2));
        assert_eq!(
            BigReal::pi(P).to_sig_string(30),
            "3.14159265358979323846264338328"
        );
        assert_eq!(BigReal::ratio(1, 3, P).to_sig_string(5), "0.33333");
    }

    #[test]
    fn parse_is_exact_decimal() {
        let k = BigReal::parse("0.23", P).unwrap();
        assert_eq!(k.to_sig_string(20), "0.23000000000000000000");
        // the f64 route is visibly wrong at this depth
        assert_ne!(
            BigReal::from_f64(0.23, P).to_sig_string(20),
            k.to_sig_string(20)
        );
        assert!(BigReal::parse("abc", P).is_err());
        assert!(BigReal::parse("", P).is_err());
        assert_eq!(
            BigReal::parse(" -2.5e-3 ", P).unwrap().to_sig_string(2),
            "-0.0025"
        );
    }

    #[test]
    fn sig_formatting_rounds_half_even() {
        let p = P;
        assert_eq!(BigReal::parse("0.125", p).unwrap().to_sig_string(2), "0.12");
        assert_eq!(BigReal::parse("0.135", p).unwrap().to_sig_string(2), "0.14");
        assert_eq!(
            BigReal::parse("9.9999", p).unwrap().to_sig_string(3),
            "10.0"
        );
        assert_eq!(BigReal::from_i64(2, p).to_sig_string(4), "2.000");
        assert_eq!(BigReal::from_i64(120, p).to_sig_string(2), "120");
        assert_eq!(
            BigReal::parse("1e-9", p).unwrap().to_sig_string(2),
            "1.0e-9"
        );
        assert_eq!(
            BigReal::parse("0.21004123606565067787", p)
                .unwrap()
                .to_sig_string(20),
            "0.21004123606565067787"
        );
        assert_eq!(
            BigReal::parse("1234567890123456789012345", p)
                .unwrap()
                .to_sig_string(25),
            "1.234567890123456789012345e24"
        );
    }

    #[test]
    fn to_f64_matches() {
        for x in [1.0, -0.5, 3.25, 1e-30, 6.02e23] {
            let v = BigReal::from_f64(x, P).to_f64();
            assert!(((v - x) / x).abs() < 1e-15, "{x} -> {v}");
        }
        assert_eq!(BigReal::zero(P).to_f64(), 0.0);
    }

    #[test]
    fn mixed_precision_uses_the_larger() {
        let a = BigReal::one(Precision::digits(20));
        let b = BigReal::ratio(1, 3, Precision::digits(80));
        assert!((a + b).precision() >= Precision::digits(80));
    }

    #[test]
    fn precision_default_rule() {
        assert_eq!(Precision::for_target(18), Precision::digits(54));
        assert_eq!(Precision::for_target(10), Precision::digits(50));
    }

    #[test]
    fn fixed_formatting() {
        let p = Precision::digits(50);
        let r = |s: &str| BigReal::parse(s, p).unwrap();
        assert_eq!(r("0.5").to_fixed_string(3), "0.500");
        assert_eq!(r("-0.125").to_fixed_string(4), "-0.1250");
        assert_eq!(r("0.75").to_fixed_string(0), "1");
        assert_eq!(r("2.5").to_fixed_string(0), "2");
        assert_eq!(r("1e-40").to_fixed_string(5), "0.00000");
        assert_eq!(r("-1e-40").to_fixed_string(2), "0.00");
        assert_eq!(r("123.456").to_fixed_string(2), "123.46");
    }
}
