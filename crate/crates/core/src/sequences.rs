//! The approximation sequences themselves.
//!
//! Main pair: qₙ = Σₖ C(n,k)²k! and pₙ = Σₖ C(n,k)²k!(2H₍ₙ₋ₖ₎ − Hₖ), with
//! pₙ/qₙ → γ. Both satisfy y₍ₙ₊₂₎ − 2(n+2)y₍ₙ₊₁₎ + (n+1)²yₙ = 0 resp.
//! −n/(n+2). A companion numerator sₙ over the same qₙ approximates the
//! Euler–Gompertz constant δ. The faster pair q̃ₙ = Σₖ C(n,k)²(n+k)!,
//! p̃ₙ = Σₖ C(n,k)²(n+k)!(H₍ₙ₊ₖ₎ + 2H₍ₙ₋ₖ₎ − 2Hₖ) obeys a third-order
//! recurrence, and a third-order rational family (Pₙ, Qₙ) converges faster
//! still. Cross-product discrepancies 𝔡ₙ = p₍ₙ₋₁₎qₙ − pₙq₍ₙ₋₁₎ and their
//! integer multiples Δₙ = n𝔡ₙ drive the continued-fraction expansion of γ.
//!
//! Every closed-form sum uses ratio updates of the previous term; every
//! recurrence generator divides exactly and checks integrality where
//! integrality is claimed.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::numkit::{lcm_upto, Int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("{seq}: value at n = {n} is not an integer")]
    Integrality { seq: &'static str, n: u64 },
    #[error("{seq}: recurrence and definition disagree at n = {n}")]
    RouteMismatch { seq: &'static str, n: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPair {
    pub n: u64,
    pub q: Int,
    pub p: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AptekarevPair {
    pub n: u64,
    pub q: Int,
    pub p: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RivoalPair {
    pub n: u64,
    pub q: Rat,
    pub p: Rat,
}

/// Row n of the discrepancy table: 𝔡ₙ = p₍ₙ₋₁₎qₙ − pₙq₍ₙ₋₁₎ (with p₋₁ = 1,
/// q₋₁ = 0) and Δₙ = n·𝔡ₙ, which is always an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyRow {
    pub n: u64,
    pub d: Rat,
    pub delta: Int,
}

/// Scaled harmonic numbers w[m] = d·Hₘ for m ≤ n_max; exact because d is a
/// multiple of lcm(1..n_max).
fn scaled_harmonics(n_max: u64, d: &Int) -> Vec<Int> {
    let mut w = Vec::with_capacity(n_max as usize + 1);
    w.push(Int::zero());
    for m in 1..=n_max {
        let inc = d / Int::from(m);
        debug_assert_eq!(&inc * Int::from(m), *d);
        w.push(&w[(m - 1) as usize] + inc);
    }
    w
}

/// (qₙ, pₙ) by the closed sums.
pub fn gamma_pair(n: u64) -> GammaPair {
    let d = lcm_upto(n.max(1));
    let w = scaled_harmonics(n, &d);
    let mut q = Int::zero();
    let mut s = Int::zero();
    let mut c = Int::one(); // C(n,k)
    let mut f = Int::one(); // k!
    for k in 0..=n {
        let t = &c * &c * &f;
        s += &t * (Int::from(2) * &w[(n - k) as usize] - &w[k as usize]);
        q += t;
        if k < n {
            c = c * Int::from(n - k) / Int::from(k + 1);
            f *= Int::from(k + 1);
        }
    }
    GammaPair { n, q, p: Rat::new(s, d) }
}

pub fn gamma_q(n: u64) -> Int {
    gamma_pair(n).q
}

pub fn gamma_p(n: u64) -> Rat {
    gamma_pair(n).p
}

/// (q, p) rows for n = 0..=n_max via the second-order recurrence
/// y₍ₙ₊₂₎ = 2(n+2)y₍ₙ₊₁₎ − (n+1)²yₙ (+ −n/(n+2) on the p side).
pub fn gamma_table_rec(n_max: u64) -> Vec<GammaPair> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(GammaPair { n: 0, q: Int::one(), p: Rat::zero() });
    if n_max == 0 {
        return out;
    }
    out.push(GammaPair { n: 1, q: Int::from(2), p: Rat::one() });
    for n in 0..n_max.saturating_sub(1) {
        let (a, b) = (&out[n as usize + 1], &out[n as usize]);
        let two_n2 = Int::from(2 * (n + 2));
        let sq = Int::from((n + 1) * (n + 1));
        let q = &two_n2 * &a.q - &sq * &b.q;
        let p = Rat::from_integer(two_n2) * &a.p
            - Rat::from_integer(sq) * &b.p
            - Rat::new(Int::from(n), Int::from(n + 2));
        out.push(GammaPair { n: n + 2, q, p });
    }
    out
}

/// (q̃ₙ, p̃ₙ) by the closed sums. p̃ₙ is an integer; the sum is cleared by
/// lcm(1..2n) and checked to divide out.
pub fn aptekarev_closed(n: u64) -> AptekarevPair {
    let d = lcm_upto((2 * n).max(1));
    let w = scaled_harmonics(2 * n, &d);
    let mut q = Int::zero();
    let mut s = Int::zero();
    let mut c = Int::one(); // C(n,k)
    let mut f = crate::numkit::factorial(n); // (n+k)!
    for k in 0..=n {
        let t = &c * &c * &f;
        s += &t
            * (&w[(n + k) as usize] + Int::from(2) * &w[(n - k) as usize]
                - Int::from(2) * &w[k as usize]);
        q += t;
        if k < n {
            c = c * Int::from(n - k) / Int::from(k + 1);
            f *= Int::from(n + k + 1);
        }
    }
    let p = Rat::new(s, d);
    assert!(p.is_integer(), "aptekarev numerator must be integral");
    AptekarevPair { n, q, p: p.to_integer() }
}

/// Aptekarev rows for n = 0..=n_max via the third-order recurrence
/// (16n−15)y₍ₙ₊₁₎ = (128n³+40n²−82n−45)yₙ − n²(256n³−240n²+64n−7)y₍ₙ₋₁₎
///                 + n²(n−1)²(16n+1)y₍ₙ₋₂₎, applied for n ≥ 2.
pub fn aptekarev_table_rec(n_max: u64) -> Result<Vec<AptekarevPair>, SeqError> {
    let initial = [(1i64, 0i64), (3, 2), (50, 31)];
    let mut out: Vec<AptekarevPair> = initial
        .iter()
        .take(n_max as usize + 1)
        .enumerate()
        .map(|(n, &(q, p))| AptekarevPair { n: n as u64, q: Int::from(q), p: Int::from(p) })
        .collect();
    for n in 2..n_max.max(2) {
        let step = |seq: &'static str, y2: &Int, y1: &Int, y0: &Int| {
            let nn = Int::from(n);
            let c2 = Int::from(128 * n * n * n + 40 * n * n) - Int::from(82 * n + 45);
            let c1 = &nn * &nn * (Int::from(256 * n * n * n + 64 * n) - Int::from(240 * n * n + 7));
            let c0 = &nn * &nn * Int::from((n - 1) * (n - 1)) * Int::from(16 * n + 1);
            let num = c2 * y2 - c1 * y1 + c0 * y0;
            let den = Int::from(16 * n - 15);
            let (val, rem) = num_integer::Integer::div_rem(&num, &den);
            if !rem.is_zero() {
                return Err(SeqError::Integrality { seq, n: n + 1 });
            }
            Ok(val)
        };
        let m = out.len();
        let q = step("aptekarev q", &out[m - 1].q, &out[m - 2].q, &out[m - 3].q)?;
        let p = step("aptekarev p", &out[m - 1].p, &out[m - 2].p, &out[m - 3].p)?;
        out.push(AptekarevPair { n: n + 1, q, p });
    }
    Ok(out)
}

/// Third-order rational family (Pₙ, Qₙ) with Pₙ/Qₙ → γ:
/// (n+3)²(8n+11)(8n+19)y₍ₙ₊₃₎ = (n+3)(8n+11)(24n²+145n+215)y₍ₙ₊₂₎
///   − (8n+27)(24n³+105n²+124n+25)y₍ₙ₊₁₎ + (n+2)²(8n+19)(8n+27)yₙ, n ≥ 0.
pub fn rivoal_table(n_max: u64) -> Vec<RivoalPair> {
    let ri = |num: i64, den: i64| Rat::new(Int::from(num), Int::from(den));
    let init_p = [ri(-1, 1), ri(4, 1), ri(77, 4)];
    let init_q = [ri(1, 1), ri(7, 1), ri(65, 2)];
    let take = (n_max as usize + 1).min(3);
    let mut ps = init_p[..take].to_vec();
    let mut qs = init_q[..take].to_vec();
    if n_max >= 3 {
        ps = init_p.to_vec();
        qs = init_q.to_vec();
    }
    for n in 0..n_max.saturating_sub(2) {
        let lead = Int::from((n + 3) * (n + 3) * (8 * n + 11)) * Int::from(8 * n + 19);
        let c2 = Int::from((n + 3) * (8 * n + 11)) * Int::from(24 * n * n + 145 * n + 215);
        let c1 = Int::from(8 * n + 27) * Int::from(24 * n * n * n + 105 * n * n + 124 * n + 25);
        let c0 = Int::from((n + 2) * (n + 2) * (8 * n + 19)) * Int::from(8 * n + 27);
        let step = |y: &[Rat]| {
            let m = y.len();
            (Rat::from_integer(c2.clone()) * &y[m - 1] - Rat::from_integer(c1.clone()) * &y[m - 2]
                + Rat::from_integer(c0.clone()) * &y[m - 3])
                / Rat::from_integer(lead.clone())
        };
        let np = step(&ps);
        let nq = step(&qs);
        ps.push(np);
        qs.push(nq);
    }
    ps.into_iter()
        .zip(qs)
        .enumerate()
        .map(|(n, (p, q))| RivoalPair { n: n as u64, p, q })
        .collect()
}

/// Numerators sₙ with sₙ/qₙ → δ; same recurrence as qₙ with s₀ = 0, s₁ = 1.
pub fn stieltjes_numerators(n_max: u64) -> Vec<Int> {
    let mut out = vec![Int::zero()];
    if n_max == 0 {
        return out;
    }
    out.push(Int::one());
    for n in 0..n_max.saturating_sub(1) {
        let next = Int::from(2 * (n + 2)) * &out[n as usize + 1]
            - Int::from((n + 1) * (n + 1)) * &out[n as usize];
        out.push(next);
    }
    out
}

/// Discrepancy rows for n = 0..=n_max, computed both from the definition and
/// from the first-order recurrence 𝔡ₙ = (n−1)²𝔡₍ₙ₋₁₎ + ((n−2)/n)q₍ₙ₋₁₎; any
/// disagreement or non-integer Δₙ is an error.
pub fn discrepancy_table(n_max: u64) -> Result<Vec<DiscrepancyRow>, SeqError> {
    let pairs = gamma_table_rec(n_max);
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut prev = Rat::one(); // 𝔡₀ with p₋₁ = 1, q₋₁ = 0
    for n in 0..=n_max {
        let by_def = if n == 0 {
            Rat::one()
        } else {
            let (a, b) = (&pairs[(n - 1) as usize], &pairs[n as usize]);
            &a.p * Rat::from_integer(b.q.clone()) - &b.p * Rat::from_integer(a.q.clone())
        };
        let by_rec = if n == 0 {
            Rat::one()
        } else {
            Rat::from_integer(Int::from((n - 1) * (n - 1))) * &prev
                + Rat::new(Int::from(n as i64 - 2), Int::from(n))
                    * Rat::from_integer(pairs[(n - 1) as usize].q.clone())
        };
        if by_def != by_rec {
            return Err(SeqError::RouteMismatch { seq: "discrepancy", n });
        }
        let delta = Rat::from_integer(Int::from(n)) * &by_def;
        if !delta.is_integer() {
            return Err(SeqError::Integrality { seq: "delta_cap", n });
        }
        prev = by_def.clone();
        out.push(DiscrepancyRow { n, d: by_def, delta: delta.to_integer() });
    }
    Ok(out)
}

/// Δ₁..Δ₍n_max₎ via the four-term recurrence
/// (n−1)(n−2)Δ₍ₙ₊₂₎ = (n−2)(n+1)(n²+3n−2)Δ₍ₙ₊₁₎ − n²(2n³+n²−7n−4)Δₙ
///                    + (n−1)²n⁴Δ₍ₙ₋₁₎, applied for n ≥ 3.
/// Element i of the result is Δ₍ᵢ₊₁₎.
pub fn delta_cap_rec(n_max: u64) -> Result<Vec<Int>, SeqError> {
    let initial = [-1i64, -2, -5, 8];
    let mut out: Vec<Int> =
        initial.iter().take(n_max as usize).map(|&v| Int::from(v)).collect();
    for n in 3..=n_max.saturating_sub(2).max(3) {
        if out.len() >= n_max as usize {
            break;
        }
        let i = |k: u64| &out[(k - 1) as usize];
        let sn = n as i64;
        let c2 = Int::from((sn - 2) * (sn + 1)) * Int::from(sn * sn + 3 * sn - 2);
        let c1 = Int::from(sn * sn) * Int::from(2 * sn * sn * sn + sn * sn - 7 * sn - 4);
        let c0 = Int::from((sn - 1) * (sn - 1)) * Int::from(sn).pow(4);
        let num = c2 * i(n + 1) - c1 * i(n) + c0 * i(n - 1);
        let den = Int::from((sn - 1) * (sn - 2));
        let (val, rem) = num_integer::Integer::div_rem(&num, &den);
        if !rem.is_zero() {
            return Err(SeqError::Integrality { seq: "delta_cap", n: n + 2 });
        }
        out.push(val);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    #[test]
    fn gamma_pair_fixtures() {
        let q: Vec<Int> = (0..=5).map(gamma_q).collect();
        assert_eq!(q, [1, 2, 7, 34, 209, 1546].map(Int::from).to_vec());
        assert_eq!(gamma_p(0), Rat::zero());
        assert_eq!(gamma_p(1), Rat::one());
        assert_eq!(gamma_p(2), rat(4, 1));
        assert_eq!(gamma_p(3), rat(59, 3));
        assert_eq!(gamma_p(4), rat(725, 6));
    }

    #[test]
    fn gamma_recurrence_matches_closed_form() {
        let rows = gamma_table_rec(40);
        for row in &rows {
            let closed = gamma_pair(row.n);
            assert_eq!(row.q, closed.q, "q at n={}", row.n);
            assert_eq!(row.p, closed.p, "p at n={}", row.n);
        }
        assert_eq!(gamma_table_rec(0).len(), 1);
        let two = gamma_table_rec(1);
        assert_eq!((two[1].q.clone(), two[1].p.clone()), (Int::from(2), Rat::one()));
    }

    #[test]
    fn gamma_q_growth() {
        let rows = gamma_table_rec(60);
        for w in rows.windows(2) {
            assert!(w[1].q > w[0].q);
        }
        for row in &rows {
            assert!(row.q >= crate::numkit::factorial(row.n));
        }
    }

    #[test]
    fn gamma_p_denominator_divides_lcm() {
        for row in gamma_table_rec(80) {
            let d = crate::numkit::lcm_upto(row.n.max(1));
            assert!((row.p * Rat::from_integer(d)).is_integer(), "n={}", row.n);
        }
    }

    #[test]
    fn aptekarev_fixtures() {
        let rows = aptekarev_table_rec(5).unwrap();
        let q: Vec<Int> = rows.iter().map(|r| r.q.clone()).collect();
        let p: Vec<Int> = rows.iter().map(|r| r.p.clone()).collect();
        assert_eq!(q, [1, 3, 50, 2022, 148824, 17254920].map(Int::from).to_vec());
        assert_eq!(p, [0, 2, 31, 1209, 87510, 10062642].map(Int::from).to_vec());
    }

    #[test]
    fn aptekarev_recurrence_matches_closed_form() {
        let rows = aptekarev_table_rec(40).unwrap();
        for row in &rows {
            assert_eq!(aptekarev_closed(row.n), *row, "n={}", row.n);
        }
    }

    #[test]
    fn rivoal_fixtures() {
        let rows = rivoal_table(5);
        assert_eq!(rows[0].p, rat(-1, 1));
        assert_eq!(rows[1].p, rat(4, 1));
        assert_eq!(rows[2].p, rat(77, 4));
        assert_eq!(rows[3].p, rat(841, 12));
        assert_eq!(rows[0].q, rat(1, 1));
        assert_eq!(rows[1].q, rat(7, 1));
        assert_eq!(rows[2].q, rat(65, 2));
        assert_eq!(rows[3].q, rat(727, 6));
        assert_eq!(rows[4].q, rat(9589, 24));
        assert_eq!(rivoal_table(1).len(), 2);
    }

    #[test]
    fn stieltjes_fixtures() {
        assert_eq!(
            stieltjes_numerators(7),
            [0, 1, 4, 20, 124, 920, 7940, 78040].map(Int::from).to_vec()
        );
    }

    #[test]
    fn discrepancy_fixtures() {
        let rows = discrepancy_table(6).unwrap();
        let d: Vec<Rat> = rows.iter().map(|r| r.d.clone()).collect();
        assert_eq!(
            d,
            vec![rat(1, 1), rat(-1, 1), rat(-1, 1), rat(-5, 3), rat(2, 1), rat(787, 5), rat(14897, 3)]
        );
        let delta: Vec<Int> = rows.iter().map(|r| r.delta.clone()).collect();
        assert_eq!(delta, [0, -1, -2, -5, 8, 787, 29794].map(Int::from).to_vec());
    }

    #[test]
    fn delta_cap_routes_agree() {
        let by_rec = delta_cap_rec(80).unwrap();
        let by_def = discrepancy_table(80).unwrap();
        for (i, v) in by_rec.iter().enumerate() {
            assert_eq!(*v, by_def[i + 1].delta, "n={}", i + 1);
        }
        assert_eq!(delta_cap_rec(4).unwrap(), [-1, -2, -5, 8].map(Int::from).to_vec());
        assert_eq!(delta_cap_rec(6).unwrap().len(), 6);
        assert_eq!(delta_cap_rec(6).unwrap()[5], Int::from(29794));
    }

    #[test]
    fn delta_cap_signs_and_parity() {
        let rows = discrepancy_table(500).unwrap();
        for row in &rows {
            if row.n >= 4 {
                assert!(row.delta.is_positive(), "n={}", row.n);
            }
            if row.n >= 2 && row.n % 2 == 0 {
                assert!(num_integer::Integer::is_even(&row.delta), "n={}", row.n);
            }
        }
    }
}
