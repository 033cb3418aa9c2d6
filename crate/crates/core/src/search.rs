//! Exhaustive search for the longest (n, r)-multi-arcs in PG(k−1, q), where
//! r = k + s − 1 caps the number of points on any hyperplane.
//!
//! Points are added in increasing index order, each with a multiplicity, so
//! every multiset is visited at most once. A non-spanning prefix of rank ρ
//! may hold at most ρ + s points. Beyond that, the fat-flat bound on the
//! q + 1 hyperplanes through a heavy (k−3)-flat prunes the tree, and so does
//! the bound engine's best upper bound when enabled, which also lets the
//! search stop early once it is met.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::integrality::{first_failure, IntegralityMode};
use crate::bounds::{self, BoundQuery};
use crate::constructions;
use crate::error::{Error, Result};
use crate::geometry::{self, Incidence};
use crate::gf::FieldSpec;
use crate::linalg::EchelonBasis;
use crate::projsystem::ProjectiveSystem;

pub const DEFAULT_BUDGET: u64 = 100_000_000;
/// Largest PG(k−1, q) the search accepts, counted in points.
pub const MAX_SEARCH_POINTS: u64 = 100_000;

const FLUSH_EVERY: u64 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub k: usize,
    pub q: u64,
    pub s: u64,
    /// Multiplicity cap per point. s + 1 loses nothing for spanning systems:
    /// a hyperplane through a point and k − 2 further independent points
    /// holds at least μ + k − 2 ≤ k + s − 1 of them.
    pub max_mult: u32,
    pub budget: u64,
    /// 0 lets rayon decide.
    pub threads: usize,
    /// Root the tree at point 0 carrying the largest multiplicity. Sound
    /// because PGL(k, q) is transitive on points.
    pub first_point: bool,
    /// Prune and stop with the engine's upper bound on m^s(k, q).
    pub engine_bound: bool,
    /// Stop as soon as a system of this length is found.
    pub target: Option<u64>,
}

impl SearchConfig {
    pub fn new(k: usize, q: u64, s: u64) -> Self {
        SearchConfig {
            k,
            q,
            s,
            max_mult: s as u32 + 1,
            budget: DEFAULT_BUDGET,
            threads: 0,
            first_point: true,
            engine_bound: true,
            target: None,
        }
    }

    /// Pure lexicographic search: no symmetry, no engine.
    pub fn lex_only(mut self) -> Self {
        self.first_point = false;
        self.engine_bound = false;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_target(mut self, n: u64) -> Self {
        self.target = Some(n);
        self
    }

    pub fn hyperplane_cap(&self) -> u64 {
        self.k as u64 + self.s - 1
    }

    fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidParameters("search needs k ≥ 2".into()));
        }
        if self.budget == 0 || self.max_mult == 0 {
            return Err(Error::InvalidParameters("budget and max_mult must be positive".into()));
        }
        let points = geometry::num_points(self.k, self.q);
        if points > MAX_SEARCH_POINTS {
            return Err(Error::Overflow {
                count: points,
                limit: MAX_SEARCH_POINTS,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleUse {
    pub rule_id: String,
    pub citation: String,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SearchCertificate {
    pub config: SearchConfig,
    pub n_max: u64,
    pub witness: Option<ProjectiveSystem>,
    /// True iff no longer system exists under the config.
    pub exhaustive: bool,
    pub budget_exhausted: bool,
    /// Node count. Schedule-dependent when threads > 1, since shards share
    /// the best length found so far for pruning.
    pub nodes: u64,
    pub rules_used: Vec<RuleUse>,
    pub symmetries: Vec<String>,
}

/// Read-only tables shared by all shards.
struct Space {
    inc: Incidence,
    n_points: usize,
    r: u32,
    q: u64,
    k: usize,
    max_mult: u32,
    first_point: bool,
    /// Stop once this length is reached.
    stop_at: Option<u64>,
    /// Cap on any length, from the engine.
    ceiling: Option<u64>,
    field: Arc<FieldSpec>,
    coords: Vec<Vec<u8>>,
}

struct Shared {
    nodes: AtomicU64,
    best: AtomicU64,
    out_of_budget: AtomicBool,
    /// Lowest shard index that hit `stop_at`.
    stopped_shard: AtomicUsize,
    budget: u64,
}

struct Worker<'a> {
    sp: &'a Space,
    sh: &'a Shared,
    index: usize,
    counts: Vec<u32>,
    chosen: Vec<(usize, u32)>,
    /// span of `chosen`, and whether each entry grew it
    basis: EchelonBasis,
    grew: Vec<bool>,
    /// histogram of multiplicities in `chosen`
    hist: Vec<u32>,
    n: u64,
    best: u64,
    best_sys: Vec<(usize, u32)>,
    local_nodes: u64,
    nodes: u64,
    halted: bool,
}

impl<'a> Worker<'a> {
    fn new(sp: &'a Space, sh: &'a Shared, index: usize) -> Self {
        Worker {
            sp,
            sh,
            index,
            counts: vec![0; sp.inc.num_points()],
            chosen: vec![],
            basis: EchelonBasis::new(),
            grew: vec![],
            hist: vec![0; sp.max_mult as usize + 1],
            n: 0,
            best: 0,
            best_sys: vec![],
            local_nodes: 0,
            nodes: 0,
            halted: false,
        }
    }

    fn room(&self, p: usize) -> u32 {
        let hottest = self.sp.inc.hyperplanes_through(p).iter().map(|&h| self.counts[h as usize]).max();
        self.sp.r - hottest.unwrap_or(0)
    }

    fn push(&mut self, p: usize, mu: u32) {
        for &h in self.sp.inc.hyperplanes_through(p) {
            self.counts[h as usize] += mu;
        }
        self.chosen.push((p, mu));
        self.grew.push(self.basis.insert(&self.sp.field, &self.sp.coords[p]));
        self.hist[mu as usize] += 1;
        self.n += mu as u64;
    }

    fn pop(&mut self) {
        let (p, mu) = self.chosen.pop().expect("pop after push");
        if self.grew.pop() == Some(true) {
            self.basis.pop();
        }
        for &h in self.sp.inc.hyperplanes_through(p) {
            self.counts[h as usize] -= mu;
        }
        self.hist[mu as usize] -= 1;
        self.n -= mu as u64;
    }

    fn spans(&self) -> bool {
        self.basis.len() == self.sp.k
    }

    /// A non-spanning part of a spanning system extends to a hyperplane
    /// through k − 1 − rank further points, so it holds at most rank + s.
    fn rank_excess_ok(&self) -> bool {
        let rank = self.basis.len() as u64;
        let s = (self.sp.r as u64 + 1) - self.sp.k as u64;
        self.spans() || self.n <= rank + s
    }

    /// a + (q + 1)(r − a), with a the mass of the k − 2 heaviest points
    /// chosen so far, which lie in a common (k−3)-flat.
    fn fat_flat_bound(&self) -> u64 {
        let mut want = self.sp.k as u64 - 2;
        let mut a = 0u64;
        for mu in (1..self.hist.len()).rev() {
            if want == 0 {
                break;
            }
            let take = want.min(self.hist[mu] as u64);
            a += take * mu as u64;
            want -= take;
        }
        let r = self.sp.r as u64;
        let a = a.min(r);
        a + (self.sp.q + 1) * (r - a)
    }

    fn halt_check(&mut self) -> bool {
        if self.halted {
            return true;
        }
        self.local_nodes += 1;
        if self.local_nodes >= FLUSH_EVERY {
            self.flush();
        }
        self.halted
    }

    fn flush(&mut self) {
        self.nodes += self.local_nodes;
        let total = self.sh.nodes.fetch_add(self.local_nodes, Ordering::Relaxed) + self.local_nodes;
        self.local_nodes = 0;
        if total > self.sh.budget {
            self.sh.out_of_budget.store(true, Ordering::Relaxed);
        }
        if self.sh.out_of_budget.load(Ordering::Relaxed)
            || self.sh.stopped_shard.load(Ordering::Relaxed) < self.index
        {
            self.halted = true;
        }
    }

    fn record(&mut self) {
        if self.n > self.best && self.spans() {
            self.best = self.n;
            self.best_sys = self.chosen.clone();
            self.sh.best.fetch_max(self.n, Ordering::Relaxed);
            if self.sp.stop_at.is_some_and(|t| self.n >= t) {
                self.sh.stopped_shard.fetch_min(self.index, Ordering::Relaxed);
                self.halted = true;
            }
        }
    }

    /// Visits the current node, then extends it with points ≥ `next`.
    fn dfs(&mut self, next: usize, mult_cap: u32) {
        if self.halt_check() {
            return;
        }
        self.record();
        if self.halted || !self.rank_excess_ok() {
            return;
        }
        let mut bound = self.fat_flat_bound();
        if let Some(c) = self.sp.ceiling {
            bound = bound.min(c);
        }
        // Ties with another shard's best stay open so the lowest shard keeps
        // its witness whatever the schedule.
        if bound <= self.best || bound < self.sh.best.load(Ordering::Relaxed) {
            return;
        }
        for p in next..self.sp.n_points {
            let hi = mult_cap.min(self.room(p));
            for mu in (1..=hi).rev() {
                self.push(p, mu);
                self.dfs(p + 1, mult_cap);
                self.pop();
                if self.halted {
                    return;
                }
            }
        }
    }
}

/// A subtree root: up to two (point, multiplicity) choices.
#[derive(Clone, Copy, Debug)]
struct Shard {
    first: (usize, u32),
    second: Option<(usize, u32)>,
}

fn shards(sp: &Space) -> Vec<Shard> {
    let firsts: Vec<(usize, u32)> = if sp.first_point {
        (1..=sp.max_mult.min(sp.r)).rev().map(|mu| (0, mu)).collect()
    } else {
        (0..sp.n_points)
            .flat_map(|p| (1..=sp.max_mult.min(sp.r)).rev().map(move |mu| (p, mu)))
            .collect()
    };
    let mut out = vec![];
    for first in firsts {
        out.push(Shard { first, second: None });
        let cap = if sp.first_point { first.1 } else { sp.max_mult };
        // one point alone never exceeds r on the hyperplanes through it
        for p in first.0 + 1..sp.n_points {
            let shared = sp.inc.hyperplanes_through(p).iter().any(|h| sp.inc.hyperplanes_through(first.0).contains(h));
            let room = if shared { sp.r - first.1 } else { sp.r };
            for mu in (1..=cap.min(room)).rev() {
                out.push(Shard {
                    first,
                    second: Some((p, mu)),
                });
            }
        }
    }
    out
}

fn run_shard(sp: &Space, sh: &Shared, index: usize, shard: Shard) -> (u64, Vec<(usize, u32)>, u64) {
    let mut w = Worker::new(sp, sh, index);
    if sh.stopped_shard.load(Ordering::Relaxed) < index || sh.out_of_budget.load(Ordering::Relaxed) {
        return (0, vec![], 0);
    }
    let cap = if sp.first_point { shard.first.1 } else { sp.max_mult };
    w.push(shard.first.0, shard.first.1);
    match shard.second {
        None => {
            // the shard holding only the first choice, with nothing after it
            w.halt_check();
            w.record();
        }
        Some((p, mu)) => {
            w.push(p, mu);
            w.dfs(p + 1, cap);
        }
    }
    w.flush();
    (w.best, w.best_sys, w.nodes)
}

/// Longest system whose hyperplanes each hold at most k + s − 1 points.
pub fn max_length(config: &SearchConfig) -> Result<SearchCertificate> {
    config.validate()?;
    let field = Arc::new(FieldSpec::new(config.q)?);
    let inc = Incidence::new(&field, config.k)?;
    let n_points = inc.num_points();
    let r = config.hyperplane_cap() as u32;

    let mut rules_used = vec![
        RuleUse {
            rule_id: "fat_flat".into(),
            citation: "Lemma \"fat flat\"".into(),
            detail: "n ≤ a + (q + 1)(r − a) for a (k−3)-flat of mass a".into(),
        },
        RuleUse {
            rule_id: "rank_excess".into(),
            citation: "hyperplane cap r = k + s − 1".into(),
            detail: "a part of rank ρ < k holds at most ρ + s points".into(),
        },
    ];
    let mut ceiling = None;
    if config.engine_bound {
        let query = BoundQuery::new(config.k as u64, config.q, config.s);
        if let Some(best) = bounds::upper_bounds(&query)?.into_iter().find(|b| b.binding) {
            ceiling = Some(best.value);
            rules_used.push(RuleUse {
                rule_id: best.rule_id.into(),
                citation: best.citation.into(),
                detail: format!("m^{}({}, {}) ≤ {}", config.s, config.k, config.q, best.value),
            });
        }
    }
    let stop_at = match (ceiling, config.target) {
        (Some(c), Some(t)) => Some(c.min(t)),
        (c, t) => c.or(t),
    };
    let sp = Space {
        coords: (0..n_points).map(|i| geometry::point_coords(config.k, config.q, i)).collect(),
        inc,
        n_points,
        r,
        q: config.q,
        k: config.k,
        max_mult: config.max_mult,
        first_point: config.first_point,
        stop_at,
        ceiling,
        field: field.clone(),
    };
    let sh = Shared {
        nodes: AtomicU64::new(0),
        best: AtomicU64::new(0),
        out_of_budget: AtomicBool::new(false),
        stopped_shard: AtomicUsize::new(usize::MAX),
        budget: config.budget,
    };

    let roots = shards(&sp);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
    let results: Vec<(u64, Vec<(usize, u32)>, u64)> = pool.install(|| {
        roots
            .par_iter()
            .enumerate()
            .map(|(i, &shard)| run_shard(&sp, &sh, i, shard))
            .collect()
    });

    // max length, lowest shard on ties
    let mut winner: Option<&(u64, Vec<(usize, u32)>, u64)> = None;
    for res in &results {
        if winner.is_none_or(|w| res.0 > w.0) {
            winner = Some(res);
        }
    }
    let nodes: u64 = results.iter().map(|r| r.2).sum();
    let (n_max, best_sys) = winner.map(|w| (w.0, w.1.clone())).unwrap_or_default();
    let witness = if best_sys.is_empty() {
        None
    } else {
        let mult: BTreeMap<usize, u32> = best_sys.into_iter().collect();
        Some(ProjectiveSystem::new(field, config.k, mult, 0)?)
    };

    let budget_exhausted = sh.out_of_budget.load(Ordering::Relaxed);
    let hit_ceiling = ceiling.is_some_and(|c| n_max >= c);
    let hit_target = config.target.is_some_and(|t| n_max >= t);
    let exhaustive = hit_ceiling || (!budget_exhausted && !hit_target);

    let mut symmetries = vec!["lex_only".to_string()];
    if config.first_point {
        symmetries.push("first_point: PGL(k, q) is transitive on points".into());
    }
    Ok(SearchCertificate {
        config: config.clone(),
        n_max,
        witness,
        exhaustive,
        budget_exhausted,
        nodes,
        rules_used,
        symmetries,
    })
}

/// Outcome of checking whether a full-length system exists at (s, q, k).
#[derive(Clone, Debug)]
pub enum KappaVerdict {
    Exists {
        witness: ProjectiveSystem,
        /// Construction recipe or "search".
        provenance: String,
    },
    RuledOut {
        rule_id: String,
        reason: String,
    },
    ExhaustedNoCode {
        nodes: u64,
    },
    Inconclusive {
        nodes: u64,
        best: u64,
    },
}

impl KappaVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            KappaVerdict::Exists { .. } => "exists",
            KappaVerdict::RuledOut { .. } => "ruled_out",
            KappaVerdict::ExhaustedNoCode { .. } => "exhausted_no_code",
            KappaVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Decides whether a system of length (s + 1)(q + 1) + k − 2 exists, trying
/// integrality, the upper rules, the construction catalog and finally search.
pub fn verify_kappa_entry(s: u64, q: u64, k: u64, budget: u64) -> Result<KappaVerdict> {
    let query = BoundQuery::new(k, q, s);
    query.validate()?;
    let full = query.full_length();
    if let Some((j, name, v)) = first_failure(k, q, s, IntegralityMode::FullLength) {
        return Ok(KappaVerdict::RuledOut {
            rule_id: "integrality.full_length".into(),
            reason: format!("{name}_{j} = {} is not an integer at n = {full}", v.as_computed()),
        });
    }
    let uppers = bounds::upper_bounds(&query)?;
    if let Some(b) = uppers.iter().find(|b| b.binding && b.value < full) {
        return Ok(KappaVerdict::RuledOut {
            rule_id: b.rule_id.into(),
            reason: format!("n ≤ {} < {full}", b.value),
        });
    }
    for lb in bounds::lower_bounds(&query)? {
        if lb.value < full {
            break;
        }
        if let Some(recipe) = lb.witness.as_deref() {
            if let Ok(ps) = constructions::from_recipe(recipe) {
                if ps.n() == full {
                    return Ok(KappaVerdict::Exists {
                        witness: ps,
                        provenance: format!("{} via {}", recipe, lb.rule_id),
                    });
                }
            }
        }
    }
    let cert = max_length(&SearchConfig::new(k as usize, q, s).with_budget(budget).with_target(full))?;
    Ok(match cert.witness {
        Some(w) if cert.n_max >= full => KappaVerdict::Exists {
            witness: w,
            provenance: "search".into(),
        },
        _ if cert.exhaustive => KappaVerdict::ExhaustedNoCode { nodes: cert.nodes },
        _ => KappaVerdict::Inconclusive {
            nodes: cert.nodes,
            best: cert.n_max,
        },
    })
}

/// The witness's dual defect, after checking that long systems have t ≤ 1.
pub fn dual_defect_scan(cert: &SearchCertificate) -> Result<u64> {
    let w = cert
        .witness
        .as_ref()
        .ok_or_else(|| Error::InvalidParameters("certificate has no witness".into()))?;
    let p = w.params();
    if p.s >= 1 && p.k >= 2 && p.n > p.s * (p.q + 1) + p.k - 1 && p.t > 1 {
        return Err(Error::ForcingViolated(format!(
            "[{}, {}, {}]_{} has n > s(q + 1) + k − 1 but t = {}",
            p.n, p.k, p.d, p.q, p.t
        )));
    }
    Ok(p.t)
}
