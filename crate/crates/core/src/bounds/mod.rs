//! Upper and lower bounds on m^s_t(k, q), the maximum length of a
//! non-degenerate [n, k, d]_q code with Singleton defect s whose dual has
//! defect t.
//!
//! Every bound is a rule: an identifier, a citation, a precondition and a
//! formula. The engine fires all applicable rules and takes the minimum
//! (upper) or maximum (lower). Recursive rules call back into the engine and
//! are memoized. Only integer and big-rational arithmetic is used.

mod audit;
pub mod integrality;
mod kappa;
mod lower;
pub mod mds;
mod rules;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::prime_power;

pub use audit::{audit, audit_report, AuditCheck, AuditReport};
pub use integrality::{integrality, IntegralityMode, IntegralityReport, PrimeTest, Quantity};
pub use kappa::{kappa, kappa_with_limit, KappaEntry, KappaStatus, KAPPA_K_LIMIT};
pub use mds::{m_mds, MdsValue};

/// Largest q the parameter-only engine accepts. Field arithmetic stops at 64.
pub const MAX_ENGINE_Q: u64 = 1 << 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BoundQuery {
    pub k: u64,
    pub q: u64,
    pub s: u64,
    pub t: Option<u64>,
    /// Minimum distance, when known. Since n = k + s − 1 + d this pins n, so
    /// d-conditioned rules answer whether that length is possible.
    pub d: Option<u64>,
}

impl BoundQuery {
    pub fn new(k: u64, q: u64, s: u64) -> Self {
        BoundQuery {
            k,
            q,
            s,
            t: None,
            d: None,
        }
    }

    pub fn with_t(mut self, t: u64) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_d(mut self, d: u64) -> Self {
        self.d = Some(d);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidParameters("k must be at least 1".into()));
        }
        match prime_power(self.q) {
            None => return Err(Error::NotPrimePower(self.q)),
            Some(_) if self.q > MAX_ENGINE_Q => {
                return Err(Error::InvalidParameters(format!(
                    "q = {} exceeds the engine limit {MAX_ENGINE_Q}",
                    self.q
                )))
            }
            _ => {}
        }
        if let Some(t) = self.t {
            if t > self.k {
                return Err(Error::InvalidParameters(format!(
                    "dual defect t = {t} exceeds k = {}",
                    self.k
                )));
            }
        }
        if self.d == Some(0) {
            return Err(Error::InvalidParameters("d must be at least 1".into()));
        }
        Ok(())
    }

    /// (s+1)(q+1) + k − 2, the length of a length-maximal code.
    pub fn full_length(&self) -> u64 {
        (self.s + 1) * (self.q + 1) + self.k - 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub value: u64,
    pub direction: Direction,
    pub rule_id: &'static str,
    pub citation: &'static str,
    pub conditions_used: Vec<String>,
    /// Set on the result that determines the engine's bound.
    pub binding: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// One rule's verdict on a query, fired or not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleOutcome {
    pub rule_id: &'static str,
    pub citation: &'static str,
    pub value: Option<u64>,
    /// Conditions used when fired, otherwise the failed condition.
    pub detail: String,
}

type Key = (u64, u64, u64, Option<u64>, Option<u64>);

/// Memoizing evaluator. Cheap to share: all state sits behind mutexes that
/// are never held across a recursive call.
#[derive(Default)]
pub struct BoundEngine {
    upper: Mutex<HashMap<Key, Option<u64>>>,
    lower: Mutex<HashMap<Key, u64>>,
}

/// The process-wide engine.
pub fn engine() -> &'static BoundEngine {
    static ENGINE: OnceLock<BoundEngine> = OnceLock::new();
    ENGINE.get_or_init(BoundEngine::default)
}

fn memo_key(q: &BoundQuery) -> Key {
    (q.q, q.k, q.s, q.t, q.d)
}

fn mark_binding(results: &mut [BoundResult], direction: Direction) {
    let best = match direction {
        Direction::Upper => results.iter().map(|r| r.value).min(),
        Direction::Lower => results.iter().map(|r| r.value).max(),
    };
    let Some(best) = best else { return };
    if let Some(r) = results
        .iter_mut()
        .filter(|r| r.value == best)
        .min_by_key(|r| r.rule_id)
    {
        r.binding = true;
    }
}

impl BoundEngine {
    /// Every upper-bound rule that fires, sorted by value, binding one marked.
    pub fn upper_bounds(&self, query: &BoundQuery) -> Result<Vec<BoundResult>> {
        query.validate()?;
        let mut out = rules::fire_upper(self, query);
        out.sort_by(|a, b| a.value.cmp(&b.value).then(a.rule_id.cmp(b.rule_id)));
        mark_binding(&mut out, Direction::Upper);
        Ok(out)
    }

    /// Fired and skipped rules alike, in table order.
    pub fn upper_trace(&self, query: &BoundQuery) -> Result<Vec<RuleOutcome>> {
        query.validate()?;
        Ok(rules::trace_upper(self, query))
    }

    /// The engine's upper bound, `None` when unbounded (k = 1, s = 0).
    pub fn upper_bound(&self, query: &BoundQuery) -> Result<Option<u64>> {
        query.validate()?;
        Ok(self.upper_value(query))
    }

    pub fn lower_bounds(&self, query: &BoundQuery) -> Result<Vec<BoundResult>> {
        query.validate()?;
        let mut out = lower::fire_lower(self, query);
        out.sort_by(|a, b| b.value.cmp(&a.value).then(a.rule_id.cmp(b.rule_id)));
        mark_binding(&mut out, Direction::Lower);
        Ok(out)
    }

    pub fn lower_bound(&self, query: &BoundQuery) -> Result<u64> {
        query.validate()?;
        Ok(self.lower_value(query))
    }

    pub(crate) fn upper_value(&self, query: &BoundQuery) -> Option<u64> {
        let key = memo_key(query);
        if let Some(&v) = self.upper.lock().expect("memo lock").get(&key) {
            return v;
        }
        // Fill smaller k bottom-up so the k−1 recursion never runs deep.
        if query.k > 4 {
            let below = BoundQuery::new(query.k - 1, query.q, query.s);
            let missing = !self.upper.lock().expect("memo lock").contains_key(&memo_key(&below));
            if missing {
                for kk in 3..query.k {
                    self.upper_value(&BoundQuery::new(kk, query.q, query.s));
                }
            }
        }
        let v = rules::fire_upper(self, query).iter().map(|r| r.value).min();
        self.upper.lock().expect("memo lock").insert(key, v);
        v
    }

    pub(crate) fn lower_value(&self, query: &BoundQuery) -> u64 {
        let key = memo_key(query);
        if let Some(&v) = self.lower.lock().expect("memo lock").get(&key) {
            return v;
        }
        // Same bottom-up fill along s for the padding recursion.
        if query.s > 1 && query.t.is_none() && query.d.is_none() {
            let below = BoundQuery::new(query.k, query.q, query.s - 1);
            let missing = !self.lower.lock().expect("memo lock").contains_key(&memo_key(&below));
            if missing {
                for ss in 0..query.s {
                    self.lower_value(&BoundQuery::new(query.k, query.q, ss));
                }
            }
        }
        let v = lower::fire_lower(self, query)
            .iter()
            .map(|r| r.value)
            .max()
            .unwrap_or(0);
        self.lower.lock().expect("memo lock").insert(key, v);
        v
    }
}

/// Shorthand for `engine().upper_bounds(query)`.
pub fn upper_bounds(query: &BoundQuery) -> Result<Vec<BoundResult>> {
    engine().upper_bounds(query)
}

pub fn lower_bounds(query: &BoundQuery) -> Result<Vec<BoundResult>> {
    engine().lower_bounds(query)
}

pub fn upper_bound(query: &BoundQuery) -> Result<Option<u64>> {
    engine().upper_bound(query)
}

pub fn lower_bound(query: &BoundQuery) -> Result<u64> {
    engine().lower_bound(query)
}
