//! Continued fractions: b₀ + a₁/(b₁ + a₂/(b₂ + ⋯)).
//!
//! A [`CFStream`] produces elements (aₙ, bₙ) on demand and computes
//! convergents Aₙ/Bₙ by the standard three-term recurrences
//! Aₙ = bₙA₍ₙ₋₁₎ + aₙA₍ₙ₋₂₎, Bₙ = bₙB₍ₙ₋₁₎ + aₙB₍ₙ₋₂₎ with A₋₁ = 1,
//! A₀ = b₀, B₋₁ = 0, B₀ = 1. All arithmetic is exact rational.
//!
//! Besides evaluation there are three structural operations: recovering
//! elements from a convergent list (the inverse problem), the equivalence
//! transform aₙ ↦ ρₙρ₍ₙ₋₁₎aₙ, bₙ ↦ ρₙbₙ which preserves every convergent,
//! and the even contraction whose convergents are the even-indexed
//! convergents of the original fraction.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numkit::{Int, Rat};
use crate::sequences;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CfError {
    #[error("unknown continued fraction family '{0}'")]
    UnknownFamily(String),
    #[error("family '{family}' requires parameter '{name}'")]
    MissingParam { family: &'static str, name: &'static str },
    #[error("parameter '{name}' = {value} is out of range: {reason}")]
    BadParam { name: &'static str, value: String, reason: &'static str },
    #[error("degenerate at n = {n}: {reason}")]
    Degenerate { n: u64, reason: &'static str },
}

/// One level of a continued fraction, valid for index ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFElement {
    pub index: u64,
    pub a: Rat,
    pub b: Rat,
}

/// Convergent Aₙ/Bₙ, kept unreduced so numerator and denominator retain
/// their combinatorial meaning (for the built-in families they are exactly
/// the approximation sequences).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub n: u64,
    pub num: Rat,
    pub den: Rat,
}

impl Convergent {
    /// The value Aₙ/Bₙ, or None when Bₙ = 0.
    pub fn value(&self) -> Option<Rat> {
        if self.den.is_zero() {
            None
        } else {
            Some(&self.num / &self.den)
        }
    }
}

/// A continued fraction with elements generated on demand and cached.
///
/// The generator is always invoked with consecutive indices 1, 2, 3, …; it
/// may keep internal state keyed to that order.
pub struct CFStream {
    b0: Rat,
    cache: Vec<CFElement>,
    gen: Box<dyn FnMut(u64) -> Result<CFElement, CfError>>,
}

impl CFStream {
    pub fn new(b0: Rat, gen: Box<dyn FnMut(u64) -> Result<CFElement, CfError>>) -> Self {
        CFStream { b0, cache: Vec::new(), gen }
    }

    /// Build a stream from a fixed element list (index 1 onward).
    pub fn from_elements(b0: Rat, elements: Vec<CFElement>) -> Self {
        let len = elements.len() as u64;
        CFStream {
            b0,
            cache: elements,
            gen: Box::new(move |n| {
                Err(CfError::Degenerate { n, reason: "fixed element list exhausted" })
            }),
        }
        .assert_consecutive(len)
    }

    fn assert_consecutive(self, len: u64) -> Self {
        for (i, el) in self.cache.iter().enumerate() {
            assert_eq!(el.index, i as u64 + 1, "element indices must be 1..={}", len);
        }
        self
    }

    pub fn b0(&self) -> &Rat {
        &self.b0
    }

    fn fill(&mut self, n: u64) -> Result<(), CfError> {
        while (self.cache.len() as u64) < n {
            let idx = self.cache.len() as u64 + 1;
            let el = (self.gen)(idx)?;
            assert_eq!(el.index, idx, "generator returned element {} for index {}", el.index, idx);
            self.cache.push(el);
        }
        Ok(())
    }

    /// Element at index n ≥ 1.
    pub fn element(&mut self, n: u64) -> Result<&CFElement, CfError> {
        assert!(n >= 1, "element indices start at 1");
        self.fill(n)?;
        Ok(&self.cache[(n - 1) as usize])
    }

    /// Elements 1..=n_max.
    pub fn elements(&mut self, n_max: u64) -> Result<Vec<CFElement>, CfError> {
        self.fill(n_max)?;
        Ok(self.cache[..n_max as usize].to_vec())
    }

    /// Convergents 0..=n_max.
    ///
    /// The three-term recursion runs on raw integers over a tracked common
    /// denominator σₙ = den(b₀)·∏ den(aₖ)den(bₖ): big-integer gcds inside
    /// rational ops are far costlier than the multiplications themselves once
    /// numerators reach thousands of digits, so reduction happens once per
    /// emitted convergent, against the small σₙ only.
    pub fn convergents(&mut self, n_max: u64) -> Result<Vec<Convergent>, CfError> {
        self.fill(n_max)?;
        let reduce = |v: &Int, sigma: &Int| -> Rat {
            if sigma.is_one() {
                return Rat::new_raw(v.clone(), Int::one());
            }
            let g = sigma.gcd(&(v % sigma));
            Rat::new_raw(v / &g, sigma / &g)
        };
        let mut out = Vec::with_capacity(n_max as usize + 1);
        // A₋₁ = 1, B₋₁ = 0 over σ₋₁ = 1; A₀ = b₀, B₀ = 1 over σ₀ = den(b₀).
        let (mut x_prev, mut y_prev) = (Int::one(), Int::zero());
        let (mut x_cur, mut y_cur) = (self.b0.numer().clone(), self.b0.denom().clone());
        let mut sigma = self.b0.denom().clone();
        // τₙ = σₙ₋₁/σₙ₋₂, the factor that rescales the n−2 column.
        let mut tau = self.b0.denom().clone();
        out.push(Convergent { n: 0, num: reduce(&x_cur, &sigma), den: reduce(&y_cur, &sigma) });
        for el in &self.cache[..n_max as usize] {
            // xₙ = bn·ad·xₙ₋₁ + an·bd·τₙ·xₙ₋₂ keeps everything integral.
            let cb = el.b.numer() * el.a.denom();
            let ca = el.a.numer() * el.b.denom() * &tau;
            let x_next = &cb * &x_cur + &ca * &x_prev;
            let y_next = &cb * &y_cur + &ca * &y_prev;
            tau = el.a.denom() * el.b.denom();
            sigma *= &tau;
            out.push(Convergent {
                n: el.index,
                num: reduce(&x_next, &sigma),
                den: reduce(&y_next, &sigma),
            });
            x_prev = x_cur;
            y_prev = y_cur;
            x_cur = x_next;
            y_cur = y_next;
        }
        Ok(out)
    }
}

/// Equivalence transform: given elements 1..=N and nonzero factors ρ₁..ρ_N
/// (ρ₀ = 1), returns elements with aₙ* = ρₙρ₍ₙ₋₁₎aₙ and bₙ* = ρₙbₙ. Every
/// convergent value is unchanged; numerators and denominators are rescaled
/// by ∏ρ.
pub fn equivalence_transform(elements: &[CFElement], rho: &[Rat]) -> Result<Vec<CFElement>, CfError> {
    assert_eq!(elements.len(), rho.len(), "one factor per element");
    let mut prev = Rat::one();
    let mut out = Vec::with_capacity(elements.len());
    for (el, r) in elements.iter().zip(rho) {
        if r.is_zero() {
            return Err(CfError::Degenerate { n: el.index, reason: "equivalence factor is zero" });
        }
        out.push(CFElement { index: el.index, a: r * &prev * &el.a, b: r * &el.b });
        prev = r.clone();
    }
    Ok(out)
}

/// Even contraction: from elements 1..=2N of a fraction with b₀, produce the
/// fraction (same b₀) whose n-th convergent equals the original 2n-th.
///
///   â₁ = a₁b₂,  b̂₁ = b₁b₂ + a₂,
///   âₙ = −a₍₂ₙ₋₂₎a₍₂ₙ₋₁₎b₍₂ₙ₎/b₍₂ₙ₋₂₎,
///   b̂ₙ = a₍₂ₙ₎ + b₍₂ₙ₋₁₎b₍₂ₙ₎ + a₍₂ₙ₋₁₎b₍₂ₙ₎/b₍₂ₙ₋₂₎   (n ≥ 2),
///
/// defined whenever the even-indexed bs are nonzero.
pub fn even_contraction(elements: &[CFElement]) -> Result<Vec<CFElement>, CfError> {
    assert!(elements.len() % 2 == 0, "even contraction consumes elements in pairs");
    let n_out = elements.len() / 2;
    let el = |i: usize| &elements[i - 1]; // 1-based
    let mut out = Vec::with_capacity(n_out);
    if n_out == 0 {
        return Ok(out);
    }
    out.push(CFElement {
        index: 1,
        a: &el(1).a * &el(2).b,
        b: &el(1).b * &el(2).b + &el(2).a,
    });
    for n in 2..=n_out {
        let b_prev_even = &el(2 * n - 2).b;
        if b_prev_even.is_zero() {
            return Err(CfError::Degenerate {
                n: (2 * n - 2) as u64,
                reason: "even contraction divides by an even-indexed b",
            });
        }
        let ratio = &el(2 * n).b / b_prev_even;
        out.push(CFElement {
            index: n as u64,
            a: -(&el(2 * n - 2).a * &el(2 * n - 1).a * &ratio),
            b: &el(2 * n).a + &el(2 * n - 1).b * &el(2 * n).b + &el(2 * n - 1).a * &ratio,
        });
    }
    Ok(out)
}

/// Inverse problem: recover (b₀, elements 1..=N) from convergents 0..=N.
///
/// Solves the two-term recurrences for (aₙ, bₙ) level by level. Requires
/// den₀ = 1 and nonzero consecutive cross-determinants
/// Dₙ = AₙB₍ₙ₋₁₎ − A₍ₙ₋₁₎Bₙ; returns an error where that fails. When the
/// convergents came from an actual fraction, the recovery is exact.
pub fn elements_from_convergents(convs: &[Convergent]) -> Result<(Rat, Vec<CFElement>), CfError> {
    assert!(!convs.is_empty(), "need at least the 0th convergent");
    for (i, c) in convs.iter().enumerate() {
        assert_eq!(c.n, i as u64, "convergents must be consecutive from 0");
    }
    if !convs[0].den.is_one() {
        return Err(CfError::Degenerate { n: 0, reason: "0th convergent must have denominator 1" });
    }
    let b0 = convs[0].num.clone();
    let mut out = Vec::with_capacity(convs.len() - 1);
    let mut det_prev = Rat::one(); // D₀ is not used; D₁ computed first
    for n in 1..convs.len() {
        let (cur, prev) = (&convs[n], &convs[n - 1]);
        let det = &cur.num * &prev.den - &prev.num * &cur.den;
        let (a, b) = if n == 1 {
            (det.clone(), cur.den.clone())
        } else {
            if det_prev.is_zero() {
                return Err(CfError::Degenerate {
                    n: n as u64 - 1,
                    reason: "consecutive convergents are equal",
                });
            }
            let before = &convs[n - 2];
            let b_num = &cur.num * &before.den - &before.num * &cur.den;
            (-(&det / &det_prev), b_num / &det_prev)
        };
        out.push(CFElement { index: n as u64, a, b });
        det_prev = det;
    }
    Ok((b0, out))
}

fn require(
    family: &'static str,
    params: &BTreeMap<String, Rat>,
    name: &'static str,
) -> Result<Rat, CfError> {
    let v = params.get(name).ok_or(CfError::MissingParam { family, name })?;
    if !v.is_positive() {
        return Err(CfError::BadParam { name, value: v.to_string(), reason: "must be positive" });
    }
    Ok(v.clone())
}

/// The built-in fraction families.
///
/// * `gamma`: value γ; convergents are exactly pₙ/qₙ before reduction.
/// * `stieltjes-delta`: value δ; aₙ = −(n−1)², bₙ = 2n, convergents sₙ/qₙ.
/// * `delta-ones`: value δ; all bₙ = 1, numerators 1, 1, 1, 2, 2, 3, 3, ….
/// * `gauss-limit` (a, z > 0): value of z·F(a; z)-type ratio with unit bs;
///   a₁ = 1, a₂ⱼ = (a+j−1)z, a₂ⱼ₊₁ = jz.
/// * `laplace` (a, z > 0): same value family in Laplace form; a₁ = 1,
///   a₂ⱼ = a+j−1, a₂ⱼ₊₁ = j, b₂ⱼ₋₁ = z, b₂ⱼ = 1.
/// * `evenpart` (a, z > 0): the even contraction of `laplace` in closed
///   form; b₁ = z+a, aₙ = −(n−1)(n−2+a), bₙ = z+a+2(n−1).
pub fn cf_family(name: &str, params: &BTreeMap<String, Rat>) -> Result<CFStream, CfError> {
    let ri = |k: i64| Rat::from_integer(Int::from(k));
    match name {
        "gamma" => {
            // Elements 1..=5 are fixed; from 6 on they come from the
            // discrepancy numbers Δₙ and the denominators qₙ:
            //   aₙ = −((n−1)²/4)·ΔₙΔ₍ₙ₋₂₎,
            //   bₙ = n²Δ₍ₙ₋₁₎ + ((n−1)(n−2)/2)·q₍ₙ₋₂₎.
            let head = [(1i64, 2i64), (-1, 4), (-5, 16), (36, 59), (-15740, 404)];
            let mut deltas: Vec<Int> = Vec::new(); // deltas[i] = Δ₍ᵢ₊₁₎
            let mut qs: Vec<Int> = Vec::new();
            let gen = move |n: u64| {
                if n <= 5 {
                    let (a, b) = head[(n - 1) as usize];
                    return Ok(CFElement { index: n, a: Rat::from_integer(Int::from(a)), b: Rat::from_integer(Int::from(b)) });
                }
                if (deltas.len() as u64) < n {
                    let want = n.max(deltas.len() as u64 * 2);
                    deltas = sequences::delta_cap_rec(want).map_err(|_| CfError::Degenerate {
                        n,
                        reason: "discrepancy recurrence lost integrality",
                    })?;
                    qs = sequences::gamma_table_rec(want).into_iter().map(|r| r.q).collect();
                }
                let delta = |k: u64| Rat::from_integer(deltas[(k - 1) as usize].clone());
                let nn = Rat::from_integer(Int::from(n));
                let a = -(&nn - Rat::one()) * (&nn - Rat::one()) / Rat::from_integer(Int::from(4))
                    * delta(n)
                    * delta(n - 2);
                let b = &nn * &nn * delta(n - 1)
                    + (&nn - Rat::one()) * (&nn - Rat::from_integer(Int::from(2)))
                        / Rat::from_integer(Int::from(2))
                        * Rat::from_integer(qs[(n - 2) as usize].clone());
                Ok(CFElement { index: n, a, b })
            };
            Ok(CFStream::new(Rat::zero(), Box::new(gen)))
        }
        "stieltjes-delta" => {
            let gen = move |n: u64| {
                let (a, b) = if n == 1 {
                    (Rat::one(), Rat::from_integer(Int::from(2)))
                } else {
                    let m = n as i64;
                    (
                        Rat::from_integer(Int::from(-(m - 1) * (m - 1))),
                        Rat::from_integer(Int::from(2 * m)),
                    )
                };
                Ok(CFElement { index: n, a, b })
            };
            Ok(CFStream::new(Rat::zero(), Box::new(gen)))
        }
        "delta-ones" => {
            let mut params = BTreeMap::new();
            params.insert("a".to_string(), Rat::one());
            params.insert("z".to_string(), Rat::one());
            cf_family("gauss-limit", &params)
        }
        "gauss-limit" => {
            let a = require("gauss-limit", params, "a")?;
            let z = require("gauss-limit", params, "z")?;
            let gen = move |n: u64| {
                let num = if n == 1 {
                    Rat::one()
                } else if n % 2 == 0 {
                    (&a + ri((n / 2) as i64 - 1)) * &z
                } else {
                    ri((n / 2) as i64) * &z
                };
                Ok(CFElement { index: n, a: num, b: Rat::one() })
            };
            Ok(CFStream::new(Rat::zero(), Box::new(gen)))
        }
        "laplace" => {
            let a = require("laplace", params, "a")?;
            let z = require("laplace", params, "z")?;
            let gen = move |n: u64| {
                let num = if n == 1 {
                    Rat::one()
                } else if n % 2 == 0 {
                    &a + ri((n / 2) as i64 - 1)
                } else {
                    ri((n / 2) as i64)
                };
                let den = if n % 2 == 1 { z.clone() } else { Rat::one() };
                Ok(CFElement { index: n, a: num, b: den })
            };
            Ok(CFStream::new(Rat::zero(), Box::new(gen)))
        }
        "evenpart" => {
            let a = require("evenpart", params, "a")?;
            let z = require("evenpart", params, "z")?;
            let gen = move |n: u64| {
                let m = n as i64;
                let (num, den) = if n == 1 {
                    (Rat::one(), &z + &a)
                } else {
                    (-(ri(m - 1) * (ri(m - 2) + &a)), &z + &a + ri(2 * (m - 1)))
                };
                Ok(CFElement { index: n, a: num, b: den })
            };
            Ok(CFStream::new(Rat::zero(), Box::new(gen)))
        }
        other => Err(CfError::UnknownFamily(other.to_string())),
    }
}

/// Family names accepted by [`cf_family`], in display order.
pub const FAMILY_NAMES: [&str; 6] =
    ["gamma", "stieltjes-delta", "delta-ones", "gauss-limit", "laplace", "evenpart"];
