//! κ(s, q): the largest k with m^s(k, q) = (s+1)(q+1) + k − 2.
//!
//! The lower end is the largest k with a construction of full length. The
//! upper end comes from the first k at which some upper rule (integrality
//! included) excludes full length: shortening a full-length code at a point
//! gives a full-length code one dimension down, so exclusion at k excludes
//! every larger dimension too.

use serde::Serialize;

use super::integrality::{first_failure, IntegralityMode};
use super::{engine, lower, BoundQuery};
use crate::error::Result;

/// Dimensions scanned per (s, q) is at most this multiple of q, plus 8.
pub const KAPPA_K_LIMIT: u64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaStatus {
    Exact,
    Range,
    /// No exclusion found within the scan.
    LowerOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaEntry {
    pub s: u64,
    pub q: u64,
    pub lower: u64,
    pub lower_rule: &'static str,
    pub lower_witness: String,
    pub upper: Option<u64>,
    pub upper_rule: Option<&'static str>,
    /// Why full length fails at dimension `upper + 1`.
    pub upper_reason: Option<String>,
    pub status: KappaStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl KappaEntry {
    /// Table-style rendering: "3", "≤ 5", "3..5" or "≥ 3".
    pub fn display(&self) -> String {
        match (self.status, self.upper) {
            (KappaStatus::Exact, _) => self.lower.to_string(),
            (KappaStatus::Range, Some(u)) => format!("{}..{}", self.lower, u),
            _ => format!("≥ {}", self.lower),
        }
    }
}

pub fn kappa(s: u64, q: u64) -> Result<KappaEntry> {
    kappa_with_limit(s, q, KAPPA_K_LIMIT * q + 8)
}

/// κ(s, q) scanning dimensions 2..=k_limit.
pub fn kappa_with_limit(s: u64, q: u64, k_limit: u64) -> Result<KappaEntry> {
    BoundQuery::new(2, q, s).validate()?;
    let eng = engine();

    let mut upper = None;
    for k in 3..=k_limit.max(3) {
        let query = BoundQuery::new(k, q, s);
        if let Some((j, name, v)) = first_failure(k, q, s, IntegralityMode::FullLength) {
            let reason = format!(
                "k = {k}: {name}_{j} = {} is not an integer at n = {}",
                v.as_computed(),
                query.full_length()
            );
            upper = Some((k - 1, "integrality.full_length", reason));
            break;
        }
        let results = eng.upper_bounds(&query)?;
        let Some(best) = results.iter().find(|r| r.binding) else {
            continue;
        };
        if best.value < query.full_length() {
            let reason = format!(
                "k = {k}: {} ≤ {} < {}{}",
                best.rule_id,
                best.value,
                query.full_length(),
                if best.conditions_used.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", best.conditions_used.join("; "))
                }
            );
            upper = Some((k - 1, best.rule_id, reason));
            break;
        }
    }

    let scan_to = upper.as_ref().map_or(k_limit, |u| u.0);
    let mut lower = (2, "two_dim", format!("two_dim_extremal q={q} s={s}"));
    for k in 3..=scan_to {
        let query = BoundQuery::new(k, q, s);
        if let Some((v, id, witness)) = lower::constructive(eng, &query) {
            if v >= query.full_length() {
                lower = (k, id, witness);
            }
        }
    }

    let note = match (&upper, s, q) {
        (None, 0, 2) => Some(format!(
            "even-weight [k+1, k, 2]_2 codes have full length for every k scanned \
             (up to {scan_to}), so κ(0, 2) is unbounded, against the conjectured value 3"
        )),
        (None, _, _) => Some(format!("no exclusion found for k ≤ {k_limit}")),
        _ => None,
    };
    let status = match &upper {
        Some((u, _, _)) if *u == lower.0 => KappaStatus::Exact,
        Some(_) => KappaStatus::Range,
        None => KappaStatus::LowerOnly,
    };
    Ok(KappaEntry {
        s,
        q,
        lower: lower.0,
        lower_rule: lower.1,
        lower_witness: lower.2,
        upper: upper.as_ref().map(|u| u.0),
        upper_rule: upper.as_ref().map(|u| u.1),
        upper_reason: upper.map(|u| u.2),
        status,
        note,
    })
}
