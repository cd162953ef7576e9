//! Arithmetic kernel: exact integers and rationals plus a fixed-point
//! decimal type.
//!
//! `Int` and `Rat` are arbitrary-precision and always canonical (rationals
//! are kept reduced with positive denominator by construction). `Dec` is a
//! scaled integer: mantissa · 10⁻ˢᶜᵃˡᵉ, with every lossy operation truncating
//! toward zero.

mod dec;
mod gamma_table;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use dec::{const_e, const_pi, Dec};
pub use gamma_table::{const_gamma, gamma_digit_capacity, install_gamma_digits, GammaDigits};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumError {
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },
    #[error("requested {requested} digits of gamma but the table holds {capacity}")]
    PrecisionExceedsTable { requested: usize, capacity: usize },
    #[error("gamma digit table rejected: {0}")]
    BadDigitTable(String),
}

/// n! It holds factorial(0) = 1.
pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= Int::from(k);
    }
    acc
}

/// Binomial coefficient C(n, k), zero when k > n.
///
/// Built by the ratio update C(n,j+1) = C(n,j)·(n−j)/(j+1); each division is
/// exact because the running product is itself a binomial coefficient.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut c = Int::one();
    for j in 0..k {
        c = c * Int::from(n - j) / Int::from(j + 1);
    }
    c
}

/// Harmonic number Hₙ = Σ_{m≤n} 1/m, with H₀ = 0.
pub fn harmonic(n: u64) -> Rat {
    harmonic_table(n).pop().unwrap()
}

/// [H₀, H₁, …, Hₙ] built incrementally.
pub fn harmonic_table(n: u64) -> Vec<Rat> {
    let mut t = Vec::with_capacity(n as usize + 1);
    t.push(Rat::zero());
    for m in 1..=n {
        let prev: &Rat = t.last().unwrap();
        t.push(prev + Rat::new(Int::one(), Int::from(m)));
    }
    t
}

/// lcm(1, …, n). The empty fold (n ≤ 1) is 1.
pub fn lcm_upto(n: u64) -> Int {
    let mut acc = Int::one();
    for m in 2..=n {
        acc = acc.lcm(&Int::from(m));
    }
    acc
}

/// Rising factorial (x)ₖ = x(x+1)⋯(x+k−1), with (x)₀ = 1.
pub fn pochhammer(x: &Rat, k: u64) -> Rat {
    let mut acc = Rat::one();
    let mut f = x.clone();
    for _ in 0..k {
        acc *= &f;
        f += Rat::one();
    }
    acc
}

/// x truncated toward zero to p fractional digits.
pub fn rat_to_dec(x: &Rat, p: usize) -> Dec {
    Dec::from_rat(x, p)
}

pub(crate) fn pow10(k: usize) -> Int {
    Int::from(10u32).pow(k as u32)
}

/// |x| as an exact rational.
pub(crate) fn rat_abs(x: &Rat) -> Rat {
    if x.is_negative() {
        -x.clone()
    } else {
        x.clone()
    }
}
