//! The upper-bound rule table.
//!
//! Each rule returns `Ok((value, conditions))` when it fires and
//! `Err(reason)` naming the first condition that failed. Values are computed
//! in i64 and clamped at zero.

use num_integer::Integer;

use super::integrality::{first_failure, IntegralityMode, PrimeTest};
use super::mds::m_mds;
use super::{BoundEngine, BoundQuery, BoundResult, Direction, RuleOutcome};

type Eval = Result<(i64, Vec<String>), String>;

pub(super) struct Rule {
    pub id: &'static str,
    pub citation: &'static str,
    pub eval: fn(&Ctx) -> Eval,
}

pub(super) struct Ctx<'a> {
    eng: &'a BoundEngine,
    k: i64,
    q: i64,
    s: i64,
    t: Option<i64>,
    d: Option<i64>,
}

impl Ctx<'_> {
    fn full(&self) -> i64 {
        (self.s + 1) * (self.q + 1) + self.k - 2
    }

    /// Best known upper bound on m(k, q), `None` if unbounded.
    fn m_hi(&self, k: i64) -> Option<i64> {
        m_mds(k as u64, self.q as u64).hi.map(|v| v as i64)
    }

    fn m_exact(&self, k: i64) -> Option<i64> {
        m_mds(k as u64, self.q as u64).exact_value().map(|v| v as i64)
    }

    /// Engine bound on m^s(k, q) with no t or d information.
    fn upper(&self, k: i64, s: i64) -> Option<i64> {
        let query = BoundQuery::new(k as u64, self.q as u64, s as u64);
        self.eng.upper_value(&query).map(|v| v as i64)
    }

    fn upper_t(&self, k: i64, s: i64, t: i64) -> Option<i64> {
        let mut query = BoundQuery::new(k as u64, self.q as u64, s as u64).with_t(t as u64);
        query.d = self.d.map(|d| d as u64);
        self.eng.upper_value(&query).map(|v| v as i64)
    }

    /// Both s+2 and q powers of two: the Denniston exception.
    fn barlotti_exception(&self, shift: i64) -> bool {
        pow2(self.s + shift) && pow2(self.q)
    }

    fn barlotti_range(&self) -> bool {
        0 < self.s && self.s < self.q - 2 && !self.barlotti_exception(2)
    }
}

fn pow2(x: i64) -> bool {
    x > 0 && x & (x - 1) == 0
}

fn is_prime(x: i64) -> bool {
    super::integrality::is_prime(x as u64)
}

/// Push the condition text when it holds, otherwise bail out with it.
macro_rules! need {
    ($conds:ident, $cond:expr, $($fmt:tt)+) => {
        if $cond {
            $conds.push(format!($($fmt)+));
        } else {
            return Err(format!("needs {}", format!($($fmt)+)));
        }
    };
}

/// Rules proven only for d > 1. A d = 1 code has n = k + s, so without d
/// the bound is relaxed to cover that case.
fn with_d_gt_1(x: &Ctx, mut conds: Vec<String>, value: i64) -> Eval {
    match x.d {
        Some(1) => Err("needs d > 1".into()),
        Some(_) => {
            conds.push("d > 1".into());
            Ok((value, conds))
        }
        None => {
            conds.push("d > 1 or n = k + s".into());
            Ok((value.max(x.k + x.s), conds))
        }
    }
}

fn t_at_least(x: &Ctx, conds: &mut Vec<String>, lo: i64) -> Result<i64, String> {
    match x.t {
        Some(t) if t >= lo => {
            conds.push(format!("t = {t} ≥ {lo}"));
            Ok(t)
        }
        Some(t) => Err(format!("needs t ≥ {lo}, got t = {t}")),
        None => Err("needs t".into()),
    }
}

fn t_equals(x: &Ctx, conds: &mut Vec<String>, want: i64) -> Result<(), String> {
    match x.t {
        Some(t) if t == want => {
            conds.push(format!("t = {want}"));
            Ok(())
        }
        Some(t) => Err(format!("needs t = {want}, got t = {t}")),
        None => Err(format!("needs t = {want}")),
    }
}

fn mds_duality(x: &Ctx) -> Eval {
    let mut c = vec![];
    let Some(t) = x.t else {
        return Err("needs t".into());
    };
    need!(c, (x.s == 0) != (t == 0), "exactly one of s, t zero");
    Ok((0, c))
}

fn trivial_k1(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k == 1, "k = 1");
    need!(c, x.s > 0, "s > 0");
    Ok((0, c))
}

fn trivial_k2(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k == 2, "k = 2");
    if x.s > 0 {
        if let Some(t) = x.t {
            if t != 1 {
                c.push(format!("s > 0 forces t = 1, got t = {t}"));
                return Ok((0, c));
            }
        }
    }
    Ok(((x.s + 1) * (x.q + 1), c))
}

fn mds(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == 0, "s = 0");
    need!(c, x.k >= 2, "k ≥ 2");
    let hi = x.m_hi(x.k).ok_or("m(k, q) unbounded")?;
    c.push(format!("m({}, {}) ≤ {hi}", x.k, x.q));
    Ok((hi, c))
}

fn long_bound(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 2, "k ≥ 2");
    Ok((x.full(), c))
}

fn long_bound_2(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 3, "k ≥ 3");
    need!(c, x.s >= x.q, "s ≥ q");
    Ok((x.full() - 1, c))
}

fn barlotti_3d_1(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k == 3, "k = 3");
    Ok(((x.s + 1) * (x.q + 1) + 1, c))
}

fn barlotti_3d_2(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k == 3, "k = 3");
    need!(c, x.barlotti_range(), "0 < s < q − 2, s + 2 and q not both powers of 2");
    Ok(((x.s + 1) * (x.q + 1) - 1, c))
}

fn cor_barlotti_2(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 3, "k ≥ 3");
    need!(c, x.barlotti_range(), "0 < s < q − 2, s + 2 and q not both powers of 2");
    Ok((x.full() - 2, c))
}

fn s_arcs_cond(x: &Ctx, part: u8, c: &mut Vec<String>) -> Result<(), String> {
    let (s, q) = (x.s, x.q);
    let mut c2 = vec![];
    let r: Result<(), String> = (|| {
        match part {
            1 => {
                need!(c2, is_prime(q), "q prime");
                need!(c2, 2 * (s + 2) <= q + 3, "2(s + 2) ≤ q + 3");
                need!(c2, s + 2 < q, "s + 2 < q");
            }
            2 => {
                need!(c2, (s + 2).gcd(&q) == 1, "gcd(s + 2, q) = 1");
                need!(c2, (s + 1) * (s + 1) < 2 * q, "(s + 1)² < 2q");
            }
            _ => {
                need!(c2, q % 2 == 1, "q odd");
                need!(c2, q % (s + 2) == 0, "(s + 2) | q");
                need!(c2, 16 * (s + 2) * (s + 2) < q, "16(s + 2)² < q");
            }
        }
        Ok(())
    })();
    c.extend(c2);
    r
}

fn s_arcs(part: u8, x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k == 3, "k = 3");
    s_arcs_cond(x, part, &mut c)?;
    Ok((x.q * (x.s + 1) + 1, c))
}

fn cor_barlotti_3(part: u8, x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 3, "k ≥ 3");
    s_arcs_cond(x, part, &mut c)?;
    Ok((x.q * (x.s + 1) + x.k - 2, c))
}

fn de_boer(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.q > 3, "q > 3");
    need!(c, x.k >= 3, "k ≥ 3");
    need!(c, x.s == 1, "s = 1");
    Ok((2 * x.q + x.k - 2, c))
}

fn ub_asmds_1a(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s >= 1, "s ≥ 1");
    t_at_least(x, &mut c, 2)?;
    with_d_gt_1(x, c, x.s * (x.q + 1) + x.k - 1)
}

fn ub_asmds_1b(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s > 1, "s > 1");
    let t = t_at_least(x, &mut c, 1)?;
    need!(c, x.k > t * (x.q + 1) - 1, "k > t(q + 1) − 1");
    with_d_gt_1(x, c, x.k + x.s)
}

fn ub_asmds_1ab(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s > 1, "s > 1");
    let t = t_at_least(x, &mut c, 2)?;
    with_d_gt_1(x, c, (x.s + t) * (x.q + 1) - 2)
}

fn ub_asmds_3(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == 1, "s = 1");
    let t = t_at_least(x, &mut c, 1)?;
    need!(c, x.k > (t + 1) * (x.q + 1) - 2, "k > (t + 1)(q + 1) − 2");
    with_d_gt_1(x, c, x.k + 1)
}

fn ub_asmds_4(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == 1, "s = 1");
    t_equals(x, &mut c, 1)?;
    need!(c, x.q > 3, "q > 3");
    need!(c, x.k >= 3, "k ≥ 3");
    let v = if x.k > 2 * x.q - 2 {
        c.push("k > 2q − 2".into());
        x.k + 2
    } else {
        2 * x.q + x.k - 2
    };
    with_d_gt_1(x, c, v)
}

fn ub_asmds_5(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s >= 1, "s ≥ 1");
    t_equals(x, &mut c, 1)?;
    need!(c, x.k >= 3, "k ≥ 3");
    let m = x.m_hi(x.k - 1).ok_or("m(k − 1, q) unbounded")?;
    need!(c, x.k + x.s - 1 > m, "k + s − 1 > m(k − 1, q) ≤ {m}");
    with_d_gt_1(x, c, x.k + x.s)
}

fn ub_asmds_6(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == 1, "s = 1");
    let t = t_at_least(x, &mut c, 2)?;
    // Largest j for which a [j+t−1, j, t]-style MDS code may exist; j = 2 always does.
    let mut jmax = 2;
    for j in 3..=x.q + t + 2 {
        match x.m_hi(j - 1) {
            Some(m) if j + t - 1 <= m => jmax = j,
            _ => {}
        }
    }
    c.push(format!("j = {jmax} is the largest j with j + t − 1 ≤ m(j − 1, q)"));
    with_d_gt_1(x, c, x.k + jmax)
}

fn ub_asmds_7(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == 1, "s = 1");
    t_equals(x, &mut c, 1)?;
    need!(c, x.k >= 3, "k ≥ 3");
    let m = x.m_hi(x.k - 1).ok_or("m(k − 1, q) unbounded")?;
    need!(c, x.k > m, "k > m(k − 1, q) ≤ {m}");
    with_d_gt_1(x, c, x.k + 1)
}

fn ub_asmds_8(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s >= 1, "s ≥ 1");
    let t = t_at_least(x, &mut c, 1)?;
    need!(c, x.k > (t + 1) * (x.q + 1) - 2, "k > (t + 1)(q + 1) − 2");
    with_d_gt_1(x, c, x.k + x.s)
}

fn amds_k_bound_1(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s >= 1, "s ≥ 1");
    need!(c, x.k >= 3, "k ≥ 3");
    let m = x.m_hi(x.k - 1).ok_or("m(k − 1, q) unbounded")?;
    need!(c, x.s > m - x.k + 1, "s > m(k − 1, q) − k + 1 with m ≤ {m}");
    Ok((x.s * (x.q + 1) + x.k - 1, c))
}

fn amds_k_bound_2(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k > x.q, "k > q");
    need!(c, x.s > 1, "s > 1");
    Ok((x.s * (x.q + 1) + x.k - 1, c))
}

fn amds_k_bound_3(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s > 1, "s > 1");
    t_equals(x, &mut c, 1)?;
    need!(c, x.k > x.q, "k > q");
    with_d_gt_1(x, c, x.k + x.s)
}

fn amds_k_bound_4(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == 1, "s = 1");
    t_at_least(x, &mut c, 2)?;
    Ok((x.q + x.k, c))
}

fn amds_no_k(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 3, "k ≥ 3");
    need!(c, x.q > 3, "q > 3");
    need!(c, x.s >= 1, "s ≥ 1");
    t_equals(x, &mut c, 1)?;
    let v = if x.s == 1 {
        4 * x.q - 2
    } else if x.barlotti_range() {
        c.push("0 < s < q − 2, s + 2 and q not both powers of 2".into());
        (x.s + 2) * (x.q + 1) - 5
    } else {
        (x.s + 2) * (x.q + 1) - 3
    };
    with_d_gt_1(x, c, v)
}

fn reduced_length(x: &Ctx, alpha: i64) -> i64 {
    ((x.s + 1 - alpha) * (x.q + 1) + x.k - 2 + alpha).max(0)
}

fn big_s(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 3, "k ≥ 3");
    let alpha = (x.s + 1) / (x.q + 1);
    need!(c, alpha >= 1, "α = ⌊(s + 1)/(q + 1)⌋ ≥ 1");
    c.push(format!("α = {alpha}"));
    Ok((reduced_length(x, alpha), c))
}

fn mc_big_s(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 3, "k ≥ 3");
    need!(c, x.m_exact(x.k - 1) == Some(x.q + 1), "m(k − 1, q) = q + 1");
    need!(c, x.s > x.q + 2 - x.k, "s > q + 2 − k");
    Ok((x.s * (x.q + 1) + x.k - 1, c))
}

fn big_d_common(x: &Ctx, shift: i64) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 3, "k ≥ 3");
    let d = x.d.ok_or("needs d")?;
    let alpha = (d + shift) / (x.q * x.q + x.q);
    need!(c, alpha >= 1, "α = {alpha} ≥ 1");
    Ok((reduced_length(x, alpha), c))
}

fn big_d(x: &Ctx) -> Eval {
    big_d_common(x, x.q - 1)
}

fn big_d_t(x: &Ctx) -> Eval {
    let mut c = vec![];
    t_at_least(x, &mut c, 2)?;
    let (v, mut c2) = big_d_common(x, 2 * x.q - 1)?;
    c.append(&mut c2);
    Ok((v, c))
}

fn q_minus_1_2(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == x.q - 1, "s = q − 1");
    need!(c, x.q > 2, "q > 2");
    need!(c, x.k >= 4, "k ≥ 4");
    Ok((x.q * x.q + x.k, c))
}

fn q_minus_1_3(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.q == 2, "q = 2");
    need!(c, x.s == 1, "s = 1");
    need!(c, x.k >= 5, "k ≥ 5");
    Ok((x.k + 2, c))
}

fn q_minus_2_5(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.q > 2, "q > 2");
    need!(c, x.s == x.q - 2, "s = q − 2");
    need!(c, x.k >= 5, "k ≥ 5");
    Ok((x.s * (x.q + 1) + x.k - 1, c))
}

fn d_perp(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 3, "k ≥ 3");
    need!(c, x.s > 0, "s > 0");
    let t = t_at_least(x, &mut c, 2)?;
    let inner = x.upper(t, x.s - 1).ok_or("inner bound unbounded")?;
    c.push(format!("m^{}({t}, q) ≤ {inner}", x.s - 1));
    Ok((inner + x.k - t + 1, c))
}

fn s1_t_gt1_1(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 3, "k ≥ 3");
    need!(c, x.s > 0, "s > 0");
    t_at_least(x, &mut c, 3)?;
    let inner = x.upper(3, x.s - 1).ok_or("inner bound unbounded")?;
    c.push(format!("m^{}(3, q) ≤ {inner}", x.s - 1));
    Ok((inner + x.k - 2, c))
}

fn s1_t_gt1_2(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == 1, "s = 1");
    need!(c, x.k >= 2, "k ≥ 2");
    t_at_least(x, &mut c, 2)?;
    Ok((x.q + x.k, c))
}

fn s1_t_gt1_3(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == 1, "s = 1");
    t_at_least(x, &mut c, x.q)?;
    Ok((x.k + 2, c))
}

fn nmds_special_k(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == 1, "s = 1");
    t_equals(x, &mut c, 1)?;
    need!(c, x.q > 3, "q > 3");
    need!(c, x.k == 2 * x.q - 1 || x.k == 2 * x.q, "k ∈ {{2q − 1, 2q}}");
    Ok((x.k + 2, c))
}

fn nmds_general_1(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == 1, "s = 1");
    t_equals(x, &mut c, 1)?;
    // The k ≤ 2q − 2 half rests on the planar bound, which needs q > 3.
    if x.q > 3 && x.k > 2 * x.q - 2 {
        c.push("q > 3, k > 2q − 2".into());
        Ok((x.k + 2, c))
    } else {
        Ok((2 * x.q + x.k, c))
    }
}

fn nmds_general_2(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s > 1, "s > 1");
    t_equals(x, &mut c, x.s)?;
    let v = if x.k > x.s * (x.q + 1) - 1 {
        c.push("k > s(q + 1) − 1".into());
        x.k + x.s
    } else {
        x.s * (x.q + 1) + x.k - 1
    };
    with_d_gt_1(x, c, v)
}

fn dodunekov_1(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == 1, "s = 1");
    t_equals(x, &mut c, 1)?;
    Ok((2 * x.q + x.k, c))
}

fn dodunekov_4(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == 1, "s = 1");
    t_equals(x, &mut c, 1)?;
    need!(c, x.k > 2 * x.q, "k > 2q");
    Ok((x.k + 1, c))
}

fn fw_long_1(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s == 1, "s = 1");
    need!(c, x.k > 2 * x.q, "k > 2q");
    Ok((x.q + x.k, c))
}

fn fw_long_2(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.s > 1, "s > 1");
    need!(c, x.k > x.q, "k > q");
    Ok((x.s * (x.q + 1) + x.k - 1, c))
}

fn prime_divisor(x: &Ctx, test: PrimeTest, drop: i64) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 3, "k ≥ 3");
    need!(c, x.s >= 1, "s ≥ 1");
    let p = test
        .witness(x.k as u64, x.q as u64, x.s as u64)
        .ok_or("needs a prime divisor in the window")?;
    let (lo, hi) = test.window(x.k as u64, x.s as u64);
    c.push(format!("prime {p} with {lo} < {p} < {hi} meets the divisibility test"));
    Ok((x.full() - drop, c))
}

fn prime_divisors_cor(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 3, "k ≥ 3");
    need!(c, 0 < x.s && x.s < x.q - 2, "0 < s < q − 2");
    need!(c, x.q % (x.s + 2) == 0, "(s + 2) | q");
    let p = PrimeTest::Gamma
        .witness(x.k as u64, x.q as u64, x.s as u64)
        .ok_or("needs a prime divisor in the window")?;
    c.push(format!("prime {p} meets the γ test"));
    Ok((x.full() - 2, c))
}

fn theorem_nmds(x: &Ctx) -> Eval {
    let mut c = vec![];
    let Some(t) = x.t else {
        return Err("needs t".into());
    };
    need!(c, t != x.s, "t ≠ s");
    need!(c, 1 < x.s && x.s < x.q - 1, "1 < s < q − 1");
    need!(c, !x.barlotti_exception(1), "s + 1 and q not both powers of 2");
    need!(c, x.k > (x.s - 1) * (x.q + 1) - 1, "k > (s − 1)(q + 1) − 1");
    Ok((x.s * (x.q + 1) + x.k - 3, c))
}

fn monotone_k(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 3, "k ≥ 3");
    let inner = x.upper(x.k - 1, x.s).ok_or("inner bound unbounded")?;
    c.push(format!("m^{}({}, q) ≤ {inner}", x.s, x.k - 1));
    Ok((inner + 1, c))
}

fn reduce_k3(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.k >= 4, "k ≥ 4");
    let inner = x.upper(3, x.s).ok_or("inner bound unbounded")?;
    c.push(format!("m^{}(3, q) ≤ {inner}", x.s));
    Ok((inner + x.k - 3, c))
}

fn t_split(x: &Ctx) -> Eval {
    let mut c = vec![];
    need!(c, x.t.is_none(), "t unknown");
    need!(c, x.s >= 1, "s ≥ 1");
    need!(c, x.k >= 3, "k ≥ 3");
    let t1 = x.upper_t(x.k, x.s, 1).ok_or("t = 1 bound unbounded")?;
    let rest = x.s * (x.q + 1) + x.k - 1;
    c.push(format!("t = 1 gives ≤ {t1}, t > 1 gives ≤ {rest}"));
    Ok((t1.max(rest.max(x.k + x.s)), c))
}

macro_rules! rule {
    ($id:literal, $cite:literal, $f:expr) => {
        Rule {
            id: $id,
            citation: $cite,
            eval: $f,
        }
    };
}

pub(super) static UPPER_RULES: &[Rule] = &[
    rule!("mds_duality", "duals of MDS codes are MDS", mds_duality),
    rule!("trivial.k1", "Lemma \"trivial bounds\"", trivial_k1),
    rule!("trivial.k2", "Lemma \"trivial bounds\"", trivial_k2),
    rule!("mds", "Theorem \"bounds on MDS codes\"", mds),
    rule!("long_bound", "Lemma \"long bound\" part 1", long_bound),
    rule!("long_bound.2", "Lemma \"long bound\" part 2", long_bound_2),
    rule!("barlotti_3d.1", "Theorem \"planar arcs\" part 1", barlotti_3d_1),
    rule!("barlotti_3d.2", "Theorem \"planar arcs\" part 2", barlotti_3d_2),
    rule!("cor_barlotti.2", "Corollary \"planar arcs in higher dimension\" part 2", cor_barlotti_2),
    rule!("s_arcs.1", "Theorem \"s-arcs\" part 1", |x| s_arcs(1, x)),
    rule!("s_arcs.2", "Theorem \"s-arcs\" part 2", |x| s_arcs(2, x)),
    rule!("s_arcs.3", "Theorem \"s-arcs\" part 3", |x| s_arcs(3, x)),
    rule!("cor_barlotti.3a", "Corollary \"planar arcs in higher dimension\" part 3a", |x| cor_barlotti_3(1, x)),
    rule!("cor_barlotti.3b", "Corollary \"planar arcs in higher dimension\" part 3b", |x| cor_barlotti_3(2, x)),
    rule!("cor_barlotti.3c", "Corollary \"planar arcs in higher dimension\" part 3c", |x| cor_barlotti_3(3, x)),
    rule!("de_boer", "de Boer's bound for almost MDS codes", de_boer),
    rule!("ub_asmds.1a", "Theorem \"upper bounds for AsMDS codes\" part 1", ub_asmds_1a),
    rule!("ub_asmds.1b", "Theorem \"upper bounds for AsMDS codes\" part 1", ub_asmds_1b),
    rule!("ub_asmds.1ab", "Theorem \"upper bounds for AsMDS codes\" part 1, both halves", ub_asmds_1ab),
    rule!("ub_asmds.3", "Theorem \"upper bounds for AsMDS codes\" part 3", ub_asmds_3),
    rule!("ub_asmds.4", "Theorem \"upper bounds for AsMDS codes\" part 4", ub_asmds_4),
    rule!("ub_asmds.5", "Theorem \"upper bounds for AsMDS codes\" part 5", ub_asmds_5),
    rule!("ub_asmds.6", "Theorem \"upper bounds for AsMDS codes\" part 6", ub_asmds_6),
    rule!("ub_asmds.7", "Theorem \"upper bounds for AsMDS codes\" part 7", ub_asmds_7),
    rule!("ub_asmds.8", "Theorem \"upper bounds for AsMDS codes\" part 8", ub_asmds_8),
    rule!("amds_k_bound.1", "Corollary \"AsMDS bounds in k\" part 1", amds_k_bound_1),
    rule!("amds_k_bound.2", "Corollary \"AsMDS bounds in k\" part 2", amds_k_bound_2),
    rule!("amds_k_bound.3", "Corollary \"AsMDS bounds in k\" part 3", amds_k_bound_3),
    rule!("amds_k_bound.4", "Corollary \"AsMDS bounds in k\" part 4", amds_k_bound_4),
    rule!("amds_no_k", "Corollary \"AsMDS bounds free of k\"", amds_no_k),
    rule!("big_s", "Theorem \"large defect\"", big_s),
    rule!("mc_big_s", "Corollary \"large defect above the MDS conjecture\"", mc_big_s),
    rule!("big_d", "Theorem \"large minimum distance\"", big_d),
    rule!("big_d_t", "Theorem \"large minimum distance\", dual defect above 1", big_d_t),
    rule!("q_minus_1.2", "Theorem \"defect q − 1\" part 2", q_minus_1_2),
    rule!("q_minus_1.3", "Theorem \"defect q − 1\" part 3", q_minus_1_3),
    rule!("q_minus_2.5", "Theorem \"defect q − 2\" part 5", q_minus_2_5),
    rule!("d_perp", "Lemma \"dual distance\"", d_perp),
    rule!("s1_t_gt1.1", "Proposition \"s = 1, t > 1\" part 1", s1_t_gt1_1),
    rule!("s1_t_gt1.2", "Proposition \"s = 1, t > 1\" part 2", s1_t_gt1_2),
    rule!("s1_t_gt1.3", "Proposition \"s = 1, t > 1\" part 3", s1_t_gt1_3),
    rule!("nmds_special_k", "near-MDS codes at k = 2q − 1 and k = 2q", nmds_special_k),
    rule!("nmds_general.1", "near-MDS length bounds", nmds_general_1),
    rule!("nmds_general.2", "dually AsMDS length bounds", nmds_general_2),
    rule!("dodunekov.1", "Dodunekov and Landjev on near-MDS codes part 1", dodunekov_1),
    rule!("dodunekov.4", "Dodunekov and Landjev on near-MDS codes part 4", dodunekov_4),
    rule!("fw_long.1", "Faldum and Willems on long AsMDS codes part 1", fw_long_1),
    rule!("fw_long.2", "Faldum and Willems on long AsMDS codes part 2", fw_long_2),
    rule!("prime_divisors.1", "Theorem \"prime divisors\" part 1", |x| prime_divisor(x, PrimeTest::Gamma, 1)),
    rule!("prime_divisors.2", "Theorem \"prime divisors\" part 2", |x| prime_divisor(x, PrimeTest::Alpha, 2)),
    rule!("prime_divisors.3", "Theorem \"prime divisors\" part 3", |x| prime_divisor(x, PrimeTest::Beta, 2)),
    rule!("prime_divisors.cor", "Corollary \"prime divisors\"", prime_divisors_cor),
    rule!("theorem_nmds", "Theorem \"dually AsMDS\"", theorem_nmds),
    rule!("monotone_k", "Lemma \"monotone in k\"", monotone_k),
    rule!("reduce_k3", "Lemma \"monotone in k\", iterated to k = 3", reduce_k3),
    rule!("t_split", "case split on t = 1 versus t > 1", t_split),
];

fn ctx<'a>(eng: &'a BoundEngine, q: &BoundQuery) -> Ctx<'a> {
    Ctx {
        eng,
        k: q.k as i64,
        q: q.q as i64,
        s: q.s as i64,
        t: q.t.map(|t| t as i64),
        d: q.d.map(|d| d as i64),
    }
}

fn upper_result(id: &'static str, citation: &'static str, v: i64, conds: Vec<String>) -> BoundResult {
    BoundResult {
        value: v.max(0) as u64,
        direction: Direction::Upper,
        rule_id: id,
        citation,
        conditions_used: conds,
        binding: false,
        witness: None,
    }
}

/// Integrality post-rules: a candidate length (s+1)(q+1)+k−2 or one less is
/// excluded when a counting identity comes out fractional.
fn integrality_results(query: &BoundQuery, current: Option<u64>) -> Vec<BoundResult> {
    let mut out = vec![];
    let (k, q, s) = (query.k, query.q, query.s);
    let Some(mut best) = current else { return out };
    if k < 3 || s < 1 {
        return out;
    }
    let full = query.full_length();
    for (mode, drop, id) in [
        (IntegralityMode::FullLength, 0, "integrality.full_length"),
        (IntegralityMode::NearFullLength, 1, "integrality.near_full_length"),
    ] {
        if best != full - drop {
            continue;
        }
        if let Some((j, name, v)) = first_failure(k, q, s, mode) {
            best -= 1;
            out.push(upper_result(
                id,
                "Theorem \"integrality\"",
                best as i64,
                vec![format!("n = {} gives {name}_{j} = {}", full - drop, v.as_computed())],
            ));
        }
    }
    out
}

pub(super) fn fire_upper(eng: &BoundEngine, query: &BoundQuery) -> Vec<BoundResult> {
    let x = ctx(eng, query);
    let mut out: Vec<BoundResult> = UPPER_RULES
        .iter()
        .filter_map(|r| {
            (r.eval)(&x)
                .ok()
                .map(|(v, c)| upper_result(r.id, r.citation, v, c))
        })
        .collect();
    let best = out.iter().map(|r| r.value).min();
    out.extend(integrality_results(query, best));
    out
}

pub(super) fn trace_upper(eng: &BoundEngine, query: &BoundQuery) -> Vec<RuleOutcome> {
    let x = ctx(eng, query);
    let mut out: Vec<RuleOutcome> = UPPER_RULES
        .iter()
        .map(|r| match (r.eval)(&x) {
            Ok((v, c)) => RuleOutcome {
                rule_id: r.id,
                citation: r.citation,
                value: Some(v.max(0) as u64),
                detail: c.join("; "),
            },
            Err(why) => RuleOutcome {
                rule_id: r.id,
                citation: r.citation,
                value: None,
                detail: why,
            },
        })
        .collect();
    let best = out.iter().filter_map(|r| r.value).min();
    for r in integrality_results(query, best) {
        out.push(RuleOutcome {
            rule_id: r.rule_id,
            citation: r.citation,
            value: Some(r.value),
            detail: r.conditions_used.join("; "),
        });
    }
    out
}
