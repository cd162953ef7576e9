//! Linear forms p − γq built from ratios of factorial terms.
//!
//! A [`TermSpec`] describes F(n,t) = Π Γ(aⱼn+bⱼt+1) / Π Γ(cⱼn+dⱼt+1) with
//! integer coefficients and an affine summation bound M(n). Summing F and
//! its weighted companion over 0 ≤ k ≤ M(n) produces exact rationals
//!
//!   qₙ = (Σbⱼ − Σdⱼ)·Σₖ F(n,k),
//!   pₙ = Σₖ F(n,k)·(Σⱼ bⱼH₍ₐⱼₙ₊bⱼₖ₎ − Σⱼ dⱼH₍cⱼₙ₊dⱼₖ₎),
//!
//! and Fₙ = pₙ − γqₙ is small. Two specs are built in: [`TermSpec::gamma`]
//! reproduces the main pair (qₙ, pₙ) and [`TermSpec::aptekarev`] the faster
//! integer pair (q̃ₙ, p̃ₙ).
//!
//! The module also carries the telescoping certificate that proves the main
//! pair's recurrence, and the alternating tail Tₙ whose sum Iₙ = Fₙ + Tₙ
//! stays within e/(n+1)² of Fₙ.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numkit::{
    const_gamma, harmonic_table, pow10, rat_to_dec, Dec, Int, NumError, Rat,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    /// Numerator gamma factors, one (a, b) per Γ(an+bt+1).
    pub num: Vec<(i64, i64)>,
    /// Denominator gamma factors, one (c, d) per Γ(cn+dt+1).
    pub den: Vec<(i64, i64)>,
    /// Summation bound M(n) = m.0·n + m.1.
    pub m: (u64, u64),
}

impl TermSpec {
    /// F(n,t) = Γ(n+1)² / (Γ(t+1)Γ(n−t+1)²); the main family.
    pub fn gamma() -> TermSpec {
        TermSpec { num: vec![(1, 0), (1, 0)], den: vec![(0, 1), (1, -1), (1, -1)], m: (1, 0) }
    }

    /// F(n,t) = Γ(n+1)²Γ(n+t+1) / (Γ(t+1)²Γ(n−t+1)²); the faster integer
    /// family.
    pub fn aptekarev() -> TermSpec {
        TermSpec {
            num: vec![(1, 0), (1, 0), (1, 1)],
            den: vec![(0, 1), (0, 1), (1, -1), (1, -1)],
            m: (1, 0),
        }
    }

    pub fn m_at(&self, n: u64) -> u64 {
        self.m.0 * n + self.m.1
    }

    /// Whether Σbⱼ ≠ Σdⱼ, i.e. the γ coefficient qₙ is not identically 0.
    pub fn is_proper(&self) -> bool {
        let sb: i64 = self.num.iter().map(|&(_, b)| b).sum();
        let sd: i64 = self.den.iter().map(|&(_, d)| d).sum();
        sb != sd
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinForm {
    pub n: u64,
    pub q: Rat,
    pub p: Rat,
    /// Indices k whose summand was dropped because a denominator gamma sat
    /// at a nonpositive integer (1/Γ = 0 there).
    pub zeroed: Vec<u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinformError {
    #[error(
        "numerator gamma argument {arg} is not positive at n = {n}, k = {k} (factor {factor})"
    )]
    IllFormed { n: u64, k: u64, factor: usize, arg: i128 },
    #[error(transparent)]
    Num(#[from] NumError),
}

/// True iff every numerator argument an+bt+1 is ≥ 1 and no denominator
/// argument cn+dt+1 drops to ≤ 0 anywhere on 0 ≤ t ≤ M(n). Arguments are
/// affine in t, so the two endpoints decide.
pub fn spec_wellformed(spec: &TermSpec, n: u64) -> bool {
    let m = spec.m_at(n) as i128;
    let nn = n as i128;
    let ok = |&(a, b): &(i64, i64)| {
        let at0 = a as i128 * nn;
        let atm = a as i128 * nn + b as i128 * m;
        at0 >= 0 && atm >= 0
    };
    spec.num.iter().all(ok) && spec.den.iter().all(ok)
}

/// The exact pair (qₙ, pₙ) for a spec at one n.
///
/// A numerator gamma at a nonpositive argument is an error; a denominator
/// gamma at a nonpositive argument zeroes that summand (recorded in
/// `zeroed`).
pub fn linform(spec: &TermSpec, n: u64) -> Result<LinForm, LinformError> {
    let m = spec.m_at(n);
    let idx = |&(a, b): &(i64, i64), k: u64| a as i128 * n as i128 + b as i128 * k as i128;
    let mut top = 0i128;
    for f in spec.num.iter().chain(&spec.den) {
        top = top.max(idx(f, 0)).max(idx(f, m));
    }
    let fact = factorial_table(top.max(0) as u64);
    let harm = harmonic_table(top.max(0) as u64);

    let mut q_sum = Rat::zero();
    let mut p_sum = Rat::zero();
    let mut zeroed = Vec::new();
    'terms: for k in 0..=m {
        let mut fnum = Int::one();
        let mut weight = Rat::zero();
        for (j, f) in spec.num.iter().enumerate() {
            let i = idx(f, k);
            if i < 0 {
                return Err(LinformError::IllFormed { n, k, factor: j, arg: i + 1 });
            }
            fnum *= &fact[i as usize];
            weight += Rat::from_integer(Int::from(f.1)) * &harm[i as usize];
        }
        let mut fden = Int::one();
        for f in &spec.den {
            let i = idx(f, k);
            if i < 0 {
                zeroed.push(k);
                continue 'terms;
            }
            fden *= &fact[i as usize];
            weight -= Rat::from_integer(Int::from(f.1)) * &harm[i as usize];
        }
        let term = Rat::new(fnum, fden);
        q_sum += &term;
        p_sum += term * weight;
    }
    let sb: i64 = spec.num.iter().map(|&(_, b)| b).sum();
    let sd: i64 = spec.den.iter().map(|&(_, d)| d).sum();
    let q = Rat::from_integer(Int::from(sb - sd)) * q_sum;
    Ok(LinForm { n, q, p: p_sum, zeroed })
}

fn factorial_table(top: u64) -> Vec<Int> {
    let mut out = Vec::with_capacity(top as usize + 1);
    out.push(Int::one());
    for i in 1..=top {
        let next = out.last().unwrap() * Int::from(i);
        out.push(next);
    }
    out
}

/// Fₙ = pₙ − γqₙ as a decimal at scale P.
///
/// γ is taken at a working scale widened by the digit length of qₙ, so the
/// result is accurate to a few units in the last place even though the two
/// sides of the subtraction are astronomically larger than the difference.
pub fn linform_value(spec: &TermSpec, n: u64, p: usize) -> Result<Dec, LinformError> {
    let lf = linform(spec, n)?;
    let q_digits = lf.q.numer().abs().to_string().len();
    let s = p + q_digits + 12;
    let g = const_gamma(s)?;
    let f = rat_to_dec(&lf.p, s) - g * rat_to_dec(&lf.q, s);
    Ok(f.rescale(p))
}

/// The certificate polynomial r(n,t) = t(t² − (2n+3)t + n(n+2)).
pub fn certificate_r(n: u64, t: &Rat) -> Rat {
    let ri = |v: i128| Rat::from_integer(Int::from(v));
    let n = n as i128;
    t * (t * t - ri(2 * n + 3) * t + ri(n * (n + 2)))
}

/// Checks the cleared telescoping identity
///
///   (n+2)² − 2(n+2)(n−t+2)² + (n−t+2)²(n−t+1)²
///     = ((n−t+2)²/(t+1))·r(n,t+1) − r(n,t)
///
/// for 0 ≤ n ≤ n_max by exact evaluation at six rational points t ≠ −1
/// (one more than the degree, so agreement certifies the identity). The
/// identity is what makes the main pair satisfy its recurrence; the
/// boundary term it leaves behind is [`boundary_term`].
pub fn telescope_verify(n_max: u64) -> bool {
    telescope_verify_with(n_max, &certificate_r).is_ok()
}

/// Same check with a caller-supplied certificate; returns the first failing
/// (n, t) witness. Exercised in tests with corrupted certificates.
pub fn telescope_verify_with(
    n_max: u64,
    r: &dyn Fn(u64, &Rat) -> Rat,
) -> Result<(), (u64, Rat)> {
    let rq = |num: i64, den: i64| Rat::new(Int::from(num), Int::from(den));
    let points =
        [rq(0, 1), rq(1, 1), rq(2, 1), rq(3, 1), rq(1, 2), rq(-1, 2)];
    for n in 0..=n_max {
        let nn = Rat::from_integer(Int::from(n));
        for t in &points {
            let n2 = &nn + Rat::from_integer(Int::from(2));
            let shift2 = &n2 - t; // n − t + 2
            let shift1 = &nn - t + Rat::one(); // n − t + 1
            let lhs = &n2 * &n2 - Rat::from_integer(Int::from(2)) * &n2 * &shift2 * &shift2
                + &shift2 * &shift2 * &shift1 * &shift1;
            let t_next = t + Rat::one();
            let rhs = &shift2 * &shift2 / &t_next * r(n, &t_next) - r(n, t);
            if lhs != rhs {
                return Err((n, t.clone()));
            }
        }
    }
    Ok(())
}

/// The boundary value n/(n+2) left over by the telescoping sum; it is the
/// negative of the right side of the inhomogeneous recurrence for pₙ.
pub fn boundary_term(n: u64) -> Rat {
    Rat::new(Int::from(n), Int::from(n + 2))
}

/// The alternating tail Tₙ = (1/(n+1)²)·Σ_{k≥0} (−1)ᵏ k!/((n+2)ₖ)², summed
/// until the next term magnitude drops below 10^{−P−2}. Satisfies
/// |Tₙ| ≤ e/(n+1)².
pub fn tail_t(n: u64, p: usize) -> Dec {
    let pref = Rat::new(Int::one(), Int::from((n + 1) * (n + 1)));
    let threshold = Rat::new(Int::one(), pow10(p + 2));
    let mut sum = Rat::zero();
    let mut term = pref.clone(); // k = 0
    let mut k = 0u64;
    let mut negative = false;
    while crate::numkit::rat_abs(&term) >= threshold {
        sum += if negative { -&term } else { term.clone() };
        // next |term|: multiply by (k+1)/(n+k+2)²
        term = term * Rat::new(Int::from(k + 1), Int::from((n + k + 2) * (n + k + 2)));
        k += 1;
        negative = !negative;
    }
    rat_to_dec(&sum, p)
}

/// Iₙ = Fₙ + Tₙ for the main family, at scale P. Iₙ differs from Fₙ by at
/// most e/(n+1)², and I₀ equals the Euler–Gompertz constant divided by e.
pub fn i_value(n: u64, p: usize) -> Result<Dec, LinformError> {
    let f = linform_value(&TermSpec::gamma(), n, p)?;
    Ok(f + tail_t(n, p))
}
