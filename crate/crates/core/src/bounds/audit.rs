//! Cross-checks a concrete system against every rule that speaks about it.
//!
//! Length rules must not be exceeded, and forcing results (long codes are
//! projective, meet Griesmer, have t = 1, ...) must hold. A failure means
//! either a rule is wrong or the system is, so both are worth knowing.

use num_integer::Integer;
use serde::Serialize;

use super::{engine, BoundQuery};
use crate::error::{Error, Result};
use crate::geometry::Flat;
use crate::linalg::EchelonBasis;
use crate::projsystem::{CodeParams, ProjectiveSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub rule_id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub params: CodeParams,
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn pow2(x: u64) -> bool {
    x.is_power_of_two()
}

struct Checks(Vec<AuditCheck>);

impl Checks {
    /// Records `conclusion` for a rule whose hypothesis held.
    fn push(&mut self, rule_id: impl Into<String>, conclusion: bool, detail: String) {
        self.0.push(AuditCheck {
            rule_id: rule_id.into(),
            passed: conclusion,
            detail,
        });
    }
}

/// Runs every check and reports them all, violations included.
pub fn audit_report(ps: &ProjectiveSystem) -> Result<AuditReport> {
    let p = ps.params();
    let (n, k, q, s, t) = (p.n, p.k, p.q, p.s, p.t);
    let mut checks = Checks(vec![]);

    if p.degenerate {
        checks.push(
            "non_degenerate",
            true,
            "degenerate system: length rules cover non-degenerate codes only, skipped".into(),
        );
        return Ok(AuditReport {
            params: p,
            checks: checks.0,
        });
    }

    let query = BoundQuery {
        k,
        q,
        s,
        t: Some(t),
        d: Some(p.d),
    };
    for r in engine().upper_bounds(&query)? {
        checks.push(
            format!("upper.{}", r.rule_id),
            n <= r.value,
            format!("n = {n} ≤ {} ({})", r.value, r.conditions_used.join("; ")),
        );
    }

    if s == 0 {
        checks.push("theorem_projective.1", p.projective, "s = 0 ⇒ projective".into());
    }
    if k == 2 {
        checks.push(
            "theorem_projective.2",
            p.projective == (s == 0),
            "k = 2: projective ⇔ s = 0".into(),
        );
    }
    if s > 0 && k > 2 {
        let inner = engine().upper_value(&BoundQuery::new(k - 1, q, s - 1));
        if let Some(m) = inner {
            if n > m + 2 {
                checks.push(
                    "theorem_projective.3",
                    p.projective,
                    format!("n = {n} > m^{}({}, q) + 2 ≤ {} ⇒ projective", s - 1, k - 1, m + 2),
                );
            }
        }
    }
    if k > 2 && n > s * (q + 1) + k - 1 {
        checks.push(
            "theorem_projective.4",
            p.projective,
            format!("n = {n} > s(q + 1) + k − 1 ⇒ projective"),
        );
    }
    if s == 1 && k > q && n > k + 2 {
        checks.push(
            "theorem_projective.5",
            p.projective,
            "s = 1, k > q, n > k + 2 ⇒ projective".into(),
        );
    }

    // With d ≤ q², Griesmer is met iff ⌈d/q⌉ = s + 1, i.e. d > sq, which is
    // n > s(q + 1) + k − 1. One less admits [5,3,2]_2 with a repeated point.
    if k >= 3 && n > s * (q + 1) + k - 1 {
        checks.push(
            "long_griesmer.griesmer",
            p.griesmer_met,
            format!(
                "n = {n} > s(q + 1) + k − 1 ⇒ Griesmer met (Griesmer length {})",
                p.griesmer_length()
            ),
        );
    }
    if k >= 3 && s >= 1 && n > s * (q + 1) + k - 1 {
        checks.push(
            "long_griesmer.t_projective",
            t == 1 && p.projective,
            format!("n = {n} > s(q + 1) + k − 1 ⇒ t = 1 and projective (t = {t})"),
        );
    }

    if 1 < s
        && s + 1 < q
        && !(pow2(s + 1) && pow2(q))
        && k + 1 > (s - 1) * (q + 1)
        && n + 3 > s * (q + 1) + k
    {
        checks.push(
            "theorem_nmds",
            t == s,
            format!("long A^{s}MDS code with k > (s − 1)(q + 1) − 1 ⇒ t = s (t = {t})"),
        );
    }

    let ns = ps.check_nsmds_conditions();
    if let Some(holds) = ns.conclusion_holds {
        checks.push(
            "nsmds_conditions",
            holds,
            format!("k ≥ (s − 1)(q + 1) and (k − s)-subsets independent ⇒ t = s (t = {t})"),
        );
    }

    let masses = ps.hyperplane_masses();
    let min_mass = masses.iter().copied().min().unwrap_or(0);

    if k >= 3 && (s + 2).gcd(&q) == 1 && masses.contains(&(k - 3)) {
        checks.push(
            "cor_barlotti.4",
            n <= q * (s + 1) + k - 2,
            format!(
                "a hyperplane meets the system in k − 3 points, gcd(s + 2, q) = 1 ⇒ n ≤ {}",
                q * (s + 1) + k - 2
            ),
        );
    }

    if t == 1 && k >= 2 && min_mass + 2 >= k {
        let alpha = min_mass + 2 - k;
        checks.push(
            "ub_asmds.2",
            n <= q * (s + 1) + k - 2 + alpha,
            format!(
                "t = 1, lightest hyperplane holds k − 2 + {alpha} points ⇒ n ≤ {}",
                q * (s + 1) + k - 2 + alpha
            ),
        );
    }

    if k >= 3 {
        let (a, flat_mass) = fat_flat(ps);
        if a <= s + 1 {
            checks.push(
                "fat_flat",
                n <= (s + 1 - a) * (q + 1) + k - 2 + a,
                format!(
                    "heaviest (k − 3)-flat found holds {flat_mass} = k − 2 + {a} points ⇒ n ≤ {}",
                    (s + 1 - a) * (q + 1) + k - 2 + a
                ),
            );
        } else {
            checks.push(
                "fat_flat",
                false,
                format!("a (k − 3)-flat holds {flat_mass} points, more than k + s − 1"),
            );
        }
    }

    checks.push(
        "griesmer",
        n >= p.griesmer_length(),
        format!("n = {n} ≥ Griesmer length {}", p.griesmer_length()),
    );

    Ok(AuditReport {
        params: p,
        checks: checks.0,
    })
}

/// Span of the k − 2 heaviest independent points; returns (a, mass) with
/// mass = k − 2 + a.
fn fat_flat(ps: &ProjectiveSystem) -> (u64, u64) {
    let f = ps.field();
    let k = ps.k();
    let mut pts: Vec<(u32, usize)> = ps.multiplicities().iter().map(|(&i, &m)| (m, i)).collect();
    pts.sort_by(|a, b| b.cmp(a));
    let mut basis = EchelonBasis::new();
    let mut chosen = vec![];
    for (_, i) in pts {
        if chosen.len() == k - 2 {
            break;
        }
        let c = ps.coords(i);
        if basis.insert(f, &c) {
            chosen.push(c);
        }
    }
    let flat = Flat::from_vectors(f, k, &chosen).expect("independent vectors span a flat");
    let mass = ps.mass_on(&flat);
    (mass.saturating_sub(k as u64 - 2), mass)
}

/// Like [`audit_report`] but fails on the first violated check.
pub fn audit(ps: &ProjectiveSystem) -> Result<AuditReport> {
    let report = audit_report(ps)?;
    if let Some(bad) = report.failures().next() {
        return Err(Error::RuleViolation {
            rule_id: bad.rule_id.clone(),
            detail: bad.detail.clone(),
        });
    }
    Ok(report)
}
