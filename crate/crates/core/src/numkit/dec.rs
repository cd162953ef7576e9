//! Fixed-point decimals: an arbitrary-precision mantissa at a fixed power of
//! ten. Value = mantissa · 10⁻ˢᶜᵃˡᵉ.
//!
//! Every lossy step truncates toward zero. With that convention the error
//! budget per public operation is:
//!   add/sub/neg/abs  exact
//!   mul/div          < 1 ulp (one truncation)
//!   sqrt             < 1 ulp (floor of the exactly scaled square root)
//!   ln/exp           < 2 ulp (internal guard digits absorb series and
//!                     reduction error; see the guard-scale notes inline)
//!   const_pi/const_e < 2 ulp
//!
//! Binary operations require both operands at the same scale and panic
//! otherwise; a computation picks its scale once and sticks to it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::{pow10, Int, NumError, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dec {
    m: Int,
    scale: usize,
}

impl Dec {
    pub fn new(mantissa: Int, scale: usize) -> Dec {
        Dec { m: mantissa, scale }
    }

    pub fn zero(scale: usize) -> Dec {
        Dec { m: Int::zero(), scale }
    }

    pub fn one(scale: usize) -> Dec {
        Dec { m: pow10(scale), scale }
    }

    pub fn from_int(v: &Int, scale: usize) -> Dec {
        Dec { m: v * pow10(scale), scale }
    }

    pub fn from_u64(v: u64, scale: usize) -> Dec {
        Dec::from_int(&Int::from(v), scale)
    }

    /// x truncated toward zero to `scale` fractional digits (< 1 ulp low).
    pub fn from_rat(x: &Rat, scale: usize) -> Dec {
        Dec { m: x.numer() * pow10(scale) / x.denom(), scale }
    }

    pub fn scale(&self) -> usize {
        self.scale
    }

    pub fn mantissa(&self) -> &Int {
        &self.m
    }

    pub fn to_rat(&self) -> Rat {
        Rat::new(self.m.clone(), pow10(self.scale))
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn abs(&self) -> Dec {
        Dec { m: self.m.abs(), scale: self.scale }
    }

    /// Change scale; widening is exact, narrowing truncates toward zero.
    pub fn rescale(&self, scale: usize) -> Dec {
        if scale >= self.scale {
            Dec { m: &self.m * pow10(scale - self.scale), scale }
        } else {
            Dec { m: &self.m / pow10(self.scale - scale), scale }
        }
    }

    pub fn try_div(&self, rhs: &Dec) -> Result<Dec, NumError> {
        assert_eq!(self.scale, rhs.scale, "mixed scales");
        if rhs.m.is_zero() {
            return Err(NumError::Domain { op: "div", reason: "division by zero".into() });
        }
        Ok(Dec { m: &self.m * pow10(self.scale) / &rhs.m, scale: self.scale })
    }

    /// Floor square root of the scaled value; < 1 ulp low, never negative.
    pub fn sqrt(&self) -> Result<Dec, NumError> {
        if self.m.is_negative() {
            return Err(NumError::Domain { op: "sqrt", reason: "argument is negative".into() });
        }
        Ok(Dec { m: (&self.m * pow10(self.scale)).sqrt(), scale: self.scale })
    }

    /// Natural logarithm, argument must be strictly positive.
    ///
    /// Reduction x = x̃·2ᵏ with x̃ ∈ [2/3, 4/3], then 2·atanh((x̃−1)/(x̃+1));
    /// the guard scale covers both the series truncations and k·ln2.
    pub fn ln(&self) -> Result<Dec, NumError> {
        if !self.m.is_positive() {
            return Err(NumError::Domain { op: "ln", reason: "argument must be positive".into() });
        }
        let s = self.scale;
        let gs = s + 30;
        let mut m = &self.m * pow10(gs - s);
        let one = pow10(gs);
        let hi = &one * Int::from(4) / Int::from(3);
        let lo = &one * Int::from(2) / Int::from(3);
        let mut k: i64 = 0;
        while m > hi {
            m /= 2;
            k += 1;
        }
        while m < lo {
            m *= 2;
            k -= 1;
        }
        let u = (&m - &one) * &one / (&m + &one);
        let u2 = &u * &u / &one;
        let mut pw = u;
        let mut acc = Int::zero();
        let mut j = 0u64;
        loop {
            let term = &pw / Int::from(2 * j + 1);
            if term.is_zero() {
                break;
            }
            acc += term;
            pw = pw * &u2 / &one;
            j += 1;
        }
        let mut r = acc * 2;
        if k != 0 {
            r += Int::from(k) * ln2_scaled(gs);
        }
        Ok(Dec { m: r, scale: gs }.rescale(s))
    }

    /// eˣ. Reduces to |u| ≤ 1/16, sums the power series, squares back up;
    /// the guard scale pays for the squaring chain's error doubling plus the
    /// integer digits of the result. Negative arguments go through 1/e^|x|.
    pub fn exp(&self) -> Dec {
        let s = self.scale;
        if self.m.is_zero() {
            return Dec::one(s);
        }
        let neg = self.m.is_negative();
        let xa = self.abs();
        // upper bound on log10 |x|: mantissa < 2^bits
        let log10x = self.m.bits() as f64 * std::f64::consts::LOG10_2 - s as f64;
        assert!(log10x < 7.0, "exp argument too large");
        let int_digits = if log10x <= 0.0 {
            1
        } else {
            (10f64.powf(log10x) / std::f64::consts::LN_10).ceil() as usize + 2
        };
        let gs = s + int_digits + 30;
        let mut u = xa.rescale(gs);
        let thresh = pow10(gs) / Int::from(16);
        let mut k = 0u32;
        while u.m > thresh {
            u = Dec { m: u.m / 2, scale: gs };
            k += 1;
        }
        let mut term = Dec::one(gs);
        let mut acc = Dec::one(gs);
        let mut j = 1u64;
        loop {
            term = &term * &u;
            term = Dec { m: term.m / Int::from(j), scale: gs };
            if term.m.is_zero() {
                break;
            }
            acc = &acc + &term;
            j += 1;
        }
        for _ in 0..k {
            acc = &acc * &acc;
        }
        if neg {
            acc = Dec::one(gs).try_div(&acc).expect("exp is positive");
        }
        acc.rescale(s)
    }

    /// Parse "d.ddd…" (optional sign); the scale is the count of fractional
    /// digits.
    pub fn parse(text: &str) -> Result<Dec, NumError> {
        let bad = |reason: &str| NumError::Domain { op: "parse", reason: reason.into() };
        let t = text.trim();
        let (sign, t) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = match t.split_once('.') {
            Some((i, f)) => (i, f),
            None => (t, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad("empty number"));
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad("expected decimal digits"));
        }
        let digits = format!("{}{}", int_part, frac_part);
        let m: Int = digits.parse().map_err(|_| bad("mantissa parse"))?;
        Ok(Dec { m: Int::from(sign) * m, scale: frac_part.len() })
    }
}

/// π truncated to p fractional digits (< 2 ulp), via Machin's formula.
pub fn const_pi(p: usize) -> Dec {
    let gs = p + 20;
    let m = atan_inv_scaled(5, gs) * 16 - atan_inv_scaled(239, gs) * 4;
    Dec { m, scale: gs }.rescale(p)
}

/// e truncated to p fractional digits (< 2 ulp), via Σ 1/k!.
pub fn const_e(p: usize) -> Dec {
    let gs = p + 20;
    let mut acc = Int::zero();
    let mut t = pow10(gs);
    let mut k = 0u64;
    while !t.is_zero() {
        acc += &t;
        k += 1;
        t /= Int::from(k);
    }
    Dec { m: acc, scale: gs }.rescale(p)
}

/// arctan(1/k) · 10ˢ, truncated alternating series.
fn atan_inv_scaled(k: u64, s: usize) -> Int {
    let k2 = Int::from(k * k);
    let mut pw = pow10(s) / Int::from(k);
    let mut acc = Int::zero();
    let mut j = 0u64;
    while !pw.is_zero() {
        let term = &pw / Int::from(2 * j + 1);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        pw /= &k2;
        j += 1;
    }
    acc
}

/// ln 2 · 10ˢ via 2·atanh(1/3).
fn ln2_scaled(s: usize) -> Int {
    let mut pw = pow10(s) / Int::from(3);
    let mut acc = Int::zero();
    let mut j = 0u64;
    while !pw.is_zero() {
        let term = &pw / Int::from(2 * j + 1);
        if term.is_zero() {
            break;
        }
        acc += term;
        pw /= 9;
        j += 1;
    }
    acc * 2
}

impl fmt::Display for Dec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.m.is_negative();
        let abs = self.m.abs();
        if self.scale == 0 {
            return write!(f, "{}{}", if neg { "-" } else { "" }, abs);
        }
        let digits = abs.to_string();
        let (int_part, frac_part) = if digits.len() > self.scale {
            let split = digits.len() - self.scale;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            ("0".to_string(), format!("{:0>width$}", digits, width = self.scale))
        };
        write!(f, "{}{}.{}", if neg { "-" } else { "" }, int_part, frac_part)
    }
}

macro_rules! same_scale_binop {
    ($trait:ident, $fn:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait for &Dec {
            type Output = Dec;
            fn $fn(self, rhs: &Dec) -> Dec {
                assert_eq!(self.scale, rhs.scale, "mixed scales");
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait for Dec {
            type Output = Dec;
            fn $fn(self, rhs: Dec) -> Dec {
                $trait::$fn(&self, &rhs)
            }
        }
        impl $trait<&Dec> for Dec {
            type Output = Dec;
            fn $fn(self, rhs: &Dec) -> Dec {
                $trait::$fn(&self, rhs)
            }
        }
        impl $trait<Dec> for &Dec {
            type Output = Dec;
            fn $fn(self, rhs: Dec) -> Dec {
                $trait::$fn(self, &rhs)
            }
        }
    };
}

same_scale_binop!(Add, add, |a, b| Dec { m: &a.m + &b.m, scale: a.scale });
same_scale_binop!(Sub, sub, |a, b| Dec { m: &a.m - &b.m, scale: a.scale });
same_scale_binop!(Mul, mul, |a, b| Dec { m: &a.m * &b.m / pow10(a.scale), scale: a.scale });
same_scale_binop!(Div, div, |a, b| a.try_div(b).expect("division by zero"));

impl Neg for &Dec {
    type Output = Dec;
    fn neg(self) -> Dec {
        Dec { m: -&self.m, scale: self.scale }
    }
}

impl Neg for Dec {
    type Output = Dec;
    fn neg(self) -> Dec {
        Dec { m: -self.m, scale: self.scale }
    }
}

impl PartialOrd for Dec {
    fn partial_cmp(&self, other: &Dec) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dec {
    fn cmp(&self, other: &Dec) -> Ordering {
        assert_eq!(self.scale, other.scale, "mixed scales");
        self.m.cmp(&other.m)
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat_to_dec;
    use super::*;

    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    #[test]
    fn display_and_parse() {
        let x = Dec::new(Int::from(-33333), 5);
        assert_eq!(x.to_string(), "-0.33333");
        assert_eq!(Dec::parse("-0.33333").unwrap(), x);
        assert_eq!(Dec::from_u64(3, 2).to_string(), "3.00");
        assert_eq!(Dec::parse("12.5").unwrap().to_string(), "12.5");
        assert_eq!(Dec::parse("7").unwrap(), Dec::from_u64(7, 0));
        assert!(Dec::parse("1.2.3").is_err());
        assert!(Dec::parse("").is_err());
    }

    #[test]
    fn truncation_is_toward_zero() {
        assert_eq!(rat_to_dec(&rat(-1, 3), 5).to_string(), "-0.33333");
        assert_eq!(rat_to_dec(&rat(59, 102), 10).to_string(), "0.5784313725");
        assert_eq!(rat_to_dec(&rat(2, 3), 4).to_string(), "0.6666");
        assert_eq!(rat_to_dec(&rat(-2, 3), 4).to_string(), "-0.6666");
    }

    #[test]
    fn mul_div_truncate() {
        let a = Dec::parse("0.10").unwrap();
        let b = Dec::parse("0.03").unwrap();
        assert_eq!((&a * &b).to_string(), "0.00");
        let c = Dec::parse("1.00").unwrap();
        let d = Dec::parse("3.00").unwrap();
        assert_eq!((&c / &d).to_string(), "0.33");
        assert_eq!((&(-c) / &d).to_string(), "-0.33");
    }

    #[test]
    fn div_by_zero_is_an_error() {
        let c = Dec::one(4);
        assert!(c.try_div(&Dec::zero(4)).is_err());
    }

    #[test]
    fn sqrt_values() {
        let two = Dec::from_u64(2, 30);
        let r = two.sqrt().unwrap();
        assert_eq!(r.to_string(), "1.414213562373095048801688724209");
        assert!(Dec::parse("-1.0").unwrap().sqrt().is_err());
        assert_eq!(Dec::zero(5).sqrt().unwrap(), Dec::zero(5));
    }

    #[test]
    fn constants() {
        assert_eq!(const_pi(8).to_string(), "3.14159265");
        assert_eq!(const_e(6).to_string(), "2.718281");
        assert_eq!(const_pi(30).to_string(), "3.141592653589793238462643383279");
        assert_eq!(const_e(30).to_string(), "2.718281828459045235360287471352");
    }

    #[test]
    fn ln_exp_roundtrip() {
        let p = 40;
        let two = Dec::from_u64(2, p);
        let back = two.ln().unwrap().exp();
        let diff = (&back - &two).abs();
        assert!(diff.mantissa() <= &Int::from(10), "ln/exp drift: {back}");
        assert!(Dec::zero(5).ln().is_err());
        assert!(Dec::parse("-2.0").unwrap().ln().is_err());
    }

    #[test]
    fn exp_matches_e() {
        let p = 50;
        let e1 = Dec::one(p).exp();
        let e2 = const_e(p);
        assert!((&e1 - &e2).abs().mantissa() <= &Int::from(2));
    }

    #[test]
    fn exp_large_argument_has_integer_digits() {
        // e^80 = 5.54e34; the guard scale must cover the integer part
        let x = Dec::from_u64(80, 20);
        let v = x.exp();
        let s = v.to_string();
        assert!(s.starts_with("55406223843935100525"), "{s}");
        // e^-80 via reciprocal stays accurate in the leading digits
        let w = (-&x).exp();
        assert!(w.to_string().starts_with("0.00000000000000000000"), "{w}");
    }

    #[test]
    fn ln_of_large_value() {
        // ln(10^30) = 30 ln 10 = 69.0775527898213705205397436405309...
        let x = Dec::from_int(&pow10(30), 25);
        let v = x.ln().unwrap();
        assert!(v.to_string().starts_with("69.077552789821370520539"), "{v}");
    }

    proptest! {
        #[test]
        fn from_rat_is_within_one_ulp(n in -100000i64..100000, d in 1i64..9999, p in 1usize..25) {
            let x = rat(n, d);
            let dec = rat_to_dec(&x, p);
            let diff = &x - dec.to_rat();
            let ulp = rat(1, 10).pow(p as i32);
            // same sign as x and strictly smaller than one ulp
            prop_assert!(super::super::rat_abs(&diff) < ulp);
            if !diff.is_zero() {
                prop_assert_eq!(diff.is_negative(), x.is_negative());
            }
        }

        #[test]
        fn sqrt_brackets(n in 0i64..1000000, d in 1i64..1000, p in 5usize..30) {
            let x = rat_to_dec(&rat(n, d), p);
            let r = x.sqrt().unwrap();
            let rr = r.to_rat();
            let ulp = rat(1, 10).pow(p as i32);
            prop_assert!(&rr * &rr <= x.to_rat());
            let up = &rr + &ulp;
            prop_assert!(&up * &up > x.to_rat());
        }
    }
}
