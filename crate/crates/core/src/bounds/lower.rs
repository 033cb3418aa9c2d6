//! Lower bounds, each backed by a named construction.
//!
//! Constructive rules report the dual defect of their witness and fire for
//! a query only when its t is absent or matches. Combining rules (union,
//! padding, arc stacks) do not track t and fire only without it.

use super::mds::m_mds;
use super::{BoundEngine, BoundQuery, BoundResult, Direction};

/// Union recursions are quadratic in s; beyond this only padding applies.
/// Unions never reach (s+1)(q+1)+k−2 for k ≥ 3, so κ is unaffected.
pub const UNION_S_LIMIT: u64 = 64;

struct Found {
    id: &'static str,
    citation: &'static str,
    value: u64,
    t: Option<u64>,
    witness: String,
    conds: Vec<String>,
}

fn found(
    id: &'static str,
    citation: &'static str,
    value: u64,
    t: Option<u64>,
    witness: String,
    conds: Vec<String>,
) -> Found {
    Found {
        id,
        citation,
        value,
        t,
        witness,
        conds,
    }
}

fn is_pow2(x: u64) -> bool {
    x > 0 && x & (x - 1) == 0
}

fn candidates(eng: &BoundEngine, query: &BoundQuery, combine: bool) -> Vec<Found> {
    let BoundQuery { k, q, s, .. } = *query;
    let mut out = vec![];
    let defect_t = |kk: u64| if s == 0 { 0 } else { kk };

    if k == 1 {
        if s == 0 {
            out.push(found(
                "trivial.k1",
                "Lemma \"trivial bounds\"",
                1,
                Some(0),
                "repetition code; every length works".into(),
                vec!["k = 1, s = 0: m unbounded".into()],
            ));
        }
        return out;
    }

    out.push(found(
        "spike",
        "Lemma \"trivial bounds\"",
        k + s,
        Some(defect_t(k - 1)),
        format!("trivial_spike k={k} q={q} s={s}"),
        vec![format!("basis with {} extra copies of one point", s)],
    ));

    if k == 2 {
        out.push(found(
            "two_dim",
            "Lemma \"trivial bounds\"",
            (s + 1) * (q + 1),
            Some(defect_t(1)),
            format!("two_dim_extremal q={q} s={s}"),
            vec!["k = 2: every point of PG(1, q) with multiplicity s + 1".into()],
        ));
    }

    if s == 0 {
        out.push(found(
            "mds.frame",
            "Theorem \"bounds on MDS codes\"",
            k + 1,
            Some(0),
            format!("frame k={k} q={q}"),
            vec!["s = 0".into()],
        ));
        if k <= q + 1 {
            out.push(found(
                "mds.normal_rational_curve",
                "Theorem \"bounds on MDS codes\"",
                q + 1,
                Some(0),
                format!("normal_rational_curve k={k} q={q}"),
                vec!["s = 0, k ≤ q + 1".into()],
            ));
        }
        if q % 2 == 0 && k == 3 {
            out.push(found(
                "mds.hyperoval",
                "Theorem \"bounds on MDS codes\"",
                q + 2,
                Some(0),
                format!("hyperoval q={q}"),
                vec!["s = 0, k = 3, q even".into()],
            ));
        }
        if q % 2 == 0 && q >= 4 && k == q - 1 {
            out.push(found(
                "mds.hyperoval_dual",
                "Theorem \"bounds on MDS codes\"",
                q + 2,
                Some(0),
                format!("dual of hyperoval q={q}"),
                vec!["s = 0, k = q − 1, q even".into()],
            ));
        }
    }

    if k == 3 && s > 0 && s + 2 <= q && q % 2 == 0 && is_pow2(s + 2) && q % (s + 2) == 0 {
        out.push(found(
            "barlotti_3d.4",
            "Theorem \"planar arcs\" part 4",
            (s + 1) * (q + 1) + 1,
            Some(1),
            format!("denniston q={q} degree={}", s + 2),
            vec![format!("s + 2 = {} a power of 2 dividing q", s + 2)],
        ));
    }

    if q >= 2 && s == q - 1 {
        let full = (s + 1) * (q + 1) + k - 2;
        if k == 3 {
            out.push(found(
                "q_minus_1.1",
                "Theorem \"defect q − 1\" part 1",
                full,
                Some(1),
                format!("full_space k=3 q={q}"),
                vec!["s = q − 1, k = 3".into()],
            ));
        }
        if k == 4 && q == 2 {
            out.push(found(
                "q_minus_1.1",
                "Theorem \"defect q − 1\" part 1",
                full,
                Some(1),
                "cap8_pg32".into(),
                vec!["s = 1, q = 2, k = 4".into()],
            ));
        }
    }

    if q > 2 && s == q - 2 {
        let full = (s + 1) * (q + 1) + k - 2;
        if k == 3 {
            out.push(found(
                "q_minus_2.4",
                "Theorem \"defect q − 2\" part 4",
                full,
                Some(1),
                format!("plane_minus_line q={q}"),
                vec!["s = q − 2, k = 3".into()],
            ));
        }
        if k == 4 {
            out.push(found(
                "q_minus_2.4",
                "Theorem \"defect q − 2\" part 4",
                full,
                Some(1),
                format!("elliptic_quadric q={q}"),
                vec!["s = q − 2, k = 4".into()],
            ));
        }
    }

    if s == 1 && k <= 2 * q {
        out.push(found(
            "trivial.4",
            "Lemma \"trivial bounds\"",
            k + 2,
            Some(1),
            format!("near_mds_from_line k={k} q={q}"),
            vec!["s = 1, k ≤ 2q".into()],
        ));
    }
    if s == 1 && k > 2 * q {
        let t = (k + 2).div_ceil(q + 1) - 1;
        out.push(found(
            "trivial.3",
            "Lemma \"trivial bounds\"",
            k + 2,
            Some(t),
            format!("dual of balanced_line q={q} n={}", k + 2),
            vec![format!("s = 1, k > 2q, dual defect ⌈(k + 2)/(q + 1)⌉ − 1 = {t}")],
        ));
    }

    if combine && query.t.is_none() {
        if s >= k - 1 && s <= UNION_S_LIMIT {
            let rest = s - (k - 1);
            let best = (0..=rest / 2)
                .map(|s1| {
                    let a = eng.lower_value(&BoundQuery::new(k, q, s1));
                    let b = eng.lower_value(&BoundQuery::new(k, q, rest - s1));
                    (a + b, s1)
                })
                .max();
            if let Some((v, s1)) = best {
                out.push(found(
                    "union",
                    "Lemma \"union\"",
                    v,
                    None,
                    format!("union of defect {s1} and defect {} systems", rest - s1),
                    vec![format!("s = {s1} + {} + k − 1", rest - s1)],
                ));
            }
        }
        if s >= 1 {
            let v = eng.lower_value(&BoundQuery::new(k, q, s - 1)) + 1;
            out.push(found(
                "pad",
                "Lemma \"trivial bounds\"",
                v,
                None,
                format!("defect {} system plus one repeated point", s - 1),
                vec!["repeat any point once".into()],
            ));
        }
        if k == 3 && (2..=UNION_S_LIMIT).contains(&s) {
            let m = m_mds(3, q).lo;
            let v = if s % 2 == 0 {
                (s + 2) / 2 * m
            } else {
                (s - 1) / 2 * m + eng.lower_value(&BoundQuery::new(3, q, 1))
            };
            out.push(found(
                "arc_stack",
                "Lemma \"union\", iterated at k = 3",
                v,
                None,
                "stacked planar arcs".into(),
                vec![format!("m(3, q) ≥ {m}")],
            ));
        }
    }
    out
}

pub(super) fn fire_lower(eng: &BoundEngine, query: &BoundQuery) -> Vec<BoundResult> {
    if query.d.is_some() {
        return vec![];
    }
    candidates(eng, query, true)
        .into_iter()
        .filter(|f| query.t.is_none() || f.t == query.t)
        .map(|f| {
            let mut conds = f.conds;
            if let Some(t) = f.t {
                conds.push(format!("witness has t = {t}"));
            }
            BoundResult {
                value: f.value,
                direction: Direction::Lower,
                rule_id: f.id,
                citation: f.citation,
                conditions_used: conds,
                binding: false,
                witness: Some(f.witness),
            }
        })
        .collect()
}

/// Best constructive lower bound without union or padding, as
/// (value, rule id, witness).
pub(super) fn constructive(eng: &BoundEngine, query: &BoundQuery) -> Option<(u64, &'static str, String)> {
    candidates(eng, query, false)
        .into_iter()
        .max_by(|a, b| a.value.cmp(&b.value).then(b.id.cmp(a.id)))
        .map(|f| (f.value, f.id, f.witness))
}
