//! Linear codes as multisets of points in PG(k−1, q).
//!
//! A generator matrix column is a point (after scaling) or the zero vector.
//! Zero columns are counted separately so degenerate codes can still be
//! represented, but nothing downstream of the parameter computation uses them.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, Flat, Hyperplane, Point};
use crate::gf::{Elem, FieldSpec};
use crate::linalg::{self, EchelonBasis};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveSystem {
    k: usize,
    field: Arc<FieldSpec>,
    mult: BTreeMap<usize, u32>,
    zero_mult: u32,
}

/// Parameters of the code and of its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: u64,
    pub k: u64,
    pub q: u64,
    pub d: u64,
    pub d_perp: u64,
    /// Singleton defect n − k + 1 − d.
    pub s: u64,
    /// Singleton defect of the dual, k + 1 − d⊥.
    pub t: u64,
    pub k_perp: u64,
    pub projective: bool,
    pub degenerate: bool,
    pub griesmer_met: bool,
}

impl CodeParams {
    /// Length the Griesmer bound demands for these k, d, q.
    pub fn griesmer_length(&self) -> u64 {
        griesmer_sum(self.k, self.d, self.q)
    }
}

/// Σ_{i<k} ⌈d / qⁱ⌉.
pub fn griesmer_sum(k: u64, d: u64, q: u64) -> u64 {
    let mut total = 0;
    let mut pw: u64 = 1;
    for _ in 0..k {
        total += d.div_ceil(pw);
        pw = pw.saturating_mul(q);
    }
    total
}

/// Outcome of checking the hypotheses under which an A^sMDS code must be
/// dually A^sMDS: k ≥ (s−1)(q+1) and every (k−s)-subset independent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NsmdsReport {
    pub s: u64,
    pub t: u64,
    /// False when s ≤ 1 or d ≤ 1, in which case nothing else is meaningful.
    pub applicable: bool,
    pub dimension_condition: bool,
    /// Every (k−s)-subset of the system is affinely independent, i.e. d⊥ ≥ k−s+1.
    pub independence_condition: bool,
    /// `Some(t == s)` when both conditions hold.
    pub conclusion_holds: Option<bool>,
}

impl ProjectiveSystem {
    /// Builds a system from point indices and multiplicities. Entries with
    /// multiplicity 0 are dropped. The support must span PG(k−1, q).
    pub fn new(
        field: Arc<FieldSpec>,
        k: usize,
        mult: BTreeMap<usize, u32>,
        zero_mult: u32,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameters("k must be at least 1".into()));
        }
        let count = geometry::num_points(k, field.q() as u64);
        if let Some((&bad, _)) = mult.iter().find(|(&i, _)| i as u64 >= count) {
            return Err(Error::InvalidParameters(format!(
                "point index {bad} outside PG({}, {})",
                k - 1,
                field.q()
            )));
        }
        let mult: BTreeMap<usize, u32> = mult.into_iter().filter(|&(_, m)| m > 0).collect();
        let ps = ProjectiveSystem {
            k,
            field,
            mult,
            zero_mult,
        };
        let r = ps.support_rank();
        if r < k {
            return Err(Error::RankDeficient { rank: r, k });
        }
        Ok(ps)
    }

    /// Builds a system from a list of (point, multiplicity) pairs.
    pub fn from_points(
        field: Arc<FieldSpec>,
        k: usize,
        points: impl IntoIterator<Item = (Point, u32)>,
    ) -> Result<Self> {
        let mut mult = BTreeMap::new();
        for (p, m) in points {
            if p.dim() != k {
                return Err(Error::MixedAmbient);
            }
            *mult.entry(p.index).or_insert(0) += m;
        }
        Self::new(field, k, mult, 0)
    }

    /// Columns of a k×n generator matrix become points; zero columns are tallied separately.
    pub fn from_generator_matrix(field: Arc<FieldSpec>, rows: &[Vec<Elem>]) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::InvalidParameters("empty generator matrix".into()));
        }
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameters("ragged generator matrix".into()));
        }
        for row in rows {
            for &x in row {
                field.check(x as u64)?;
            }
        }
        let r = linalg::rank(&field, rows);
        if r < k {
            return Err(Error::RankDeficient { rank: r, k });
        }
        let q = field.q() as u64;
        let mut mult = BTreeMap::new();
        let mut zero_mult = 0;
        for c in 0..n {
            let mut col: Vec<Elem> = rows.iter().map(|r| r[c]).collect();
            if geometry::normalize(&field, &mut col) {
                *mult.entry(geometry::point_index(q, &col)).or_insert(0) += 1;
            } else {
                zero_mult += 1;
            }
        }
        Self::new(field, k, mult, zero_mult)
    }

    /// Canonical generator matrix: columns in increasing point index, each
    /// repeated by its multiplicity, zero columns last.
    pub fn to_generator_matrix(&self) -> Vec<Vec<Elem>> {
        let mut rows = vec![Vec::with_capacity(self.n() as usize); self.k];
        for (&idx, &m) in &self.mult {
            let c = self.coords(idx);
            for _ in 0..m {
                for (row, &x) in rows.iter_mut().zip(&c) {
                    row.push(x);
                }
            }
        }
        for _ in 0..self.zero_mult {
            for row in rows.iter_mut() {
                row.push(0);
            }
        }
        rows
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn n(&self) -> u64 {
        self.zero_mult as u64 + self.mult.values().map(|&m| m as u64).sum::<u64>()
    }

    pub fn zero_mult(&self) -> u32 {
        self.zero_mult
    }

    pub fn multiplicities(&self) -> &BTreeMap<usize, u32> {
        &self.mult
    }

    pub fn multiplicity(&self, index: usize) -> u32 {
        self.mult.get(&index).copied().unwrap_or(0)
    }

    /// Support points with multiplicities, in canonical order.
    pub fn support(&self) -> impl Iterator<Item = (Point, u32)> + '_ {
        self.mult
            .iter()
            .map(|(&i, &m)| (Point::from_index(self.k, self.q(), i), m))
    }

    pub fn support_len(&self) -> usize {
        self.mult.len()
    }

    pub fn coords(&self, index: usize) -> Vec<Elem> {
        geometry::point_coords(self.k, self.q(), index)
    }

    pub fn is_projective(&self) -> bool {
        self.zero_mult == 0 && self.mult.values().all(|&m| m == 1)
    }

    fn support_rank(&self) -> usize {
        let mut b = EchelonBasis::new();
        for &i in self.mult.keys() {
            b.insert(&self.field, &self.coords(i));
            if b.len() == self.k {
                break;
            }
        }
        b.len()
    }

    /// Mass of points on each hyperplane, indexed by hyperplane index.
    pub fn hyperplane_masses(&self) -> Vec<u64> {
        let q = self.q();
        let nh = geometry::num_points(self.k, q) as usize;
        let support: Vec<(Vec<Elem>, u64)> = self
            .mult
            .iter()
            .map(|(&i, &m)| (self.coords(i), m as u64))
            .collect();
        let f = &*self.field;
        let k = self.k;
        (0..nh)
            .into_par_iter()
            .with_min_len(64)
            .map(|h| {
                let hc = geometry::point_coords(k, q, h);
                support
                    .iter()
                    .filter(|(c, _)| linalg::dot(f, &hc, c) == 0)
                    .map(|(_, m)| m)
                    .sum()
            })
            .collect()
    }

    /// Total multiplicity of the support points lying in `flat`.
    pub fn mass_on(&self, flat: &Flat) -> u64 {
        self.mult
            .iter()
            .filter(|(&i, _)| flat.contains(&self.field, &self.coords(i)))
            .map(|(_, &m)| m as u64)
            .sum()
    }

    /// Minimum distance together with the secants (hyperplanes of maximal mass).
    pub fn min_distance(&self) -> (u64, Vec<Hyperplane>) {
        let masses = self.hyperplane_masses();
        let max = masses.iter().copied().max().unwrap_or(0);
        let secants = masses
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m == max)
            .map(|(h, _)| Hyperplane::from_index(self.k, self.q(), h))
            .collect();
        // zero columns lie in every hyperplane
        (self.n() - self.zero_mult as u64 - max, secants)
    }

    /// Size of the smallest dependent sub-multiset of columns.
    pub fn dual_distance(&self) -> u64 {
        if self.zero_mult > 0 {
            return 1;
        }
        if self.mult.values().any(|&m| m >= 2) {
            return 2;
        }
        let pts: Vec<Vec<Elem>> = self.mult.keys().map(|&i| self.coords(i)).collect();
        // Two distinct points are never dependent. Every member of a minimal
        // dependent set lies in the span of the others, so it suffices to
        // look for an independent (m−1)-subset whose span holds a later point.
        for m in 3..=self.k {
            if has_circuit(&self.field, &pts, m) {
                return m as u64;
            }
        }
        self.k as u64 + 1
    }

    pub fn params(&self) -> CodeParams {
        let (d, _) = self.min_distance();
        self.params_with_d(d)
    }

    fn params_with_d(&self, d: u64) -> CodeParams {
        let n = self.n();
        let k = self.k as u64;
        let q = self.q();
        let d_perp = self.dual_distance();
        CodeParams {
            n,
            k,
            q,
            d,
            d_perp,
            s: n + 1 - k - d,
            t: k + 1 - d_perp,
            k_perp: n - k,
            projective: self.is_projective(),
            degenerate: self.zero_mult > 0,
            griesmer_met: griesmer_sum(k, d, q) == n,
        }
    }

    /// Number of codewords of each weight, from the hyperplane masses.
    pub fn weight_distribution(&self) -> BTreeMap<u64, u64> {
        let n_eff = self.n() - self.zero_mult as u64;
        let mut dist = BTreeMap::new();
        dist.insert(0, 1);
        for m in self.hyperplane_masses() {
            *dist.entry(n_eff - m).or_insert(0) += self.q() - 1;
        }
        dist
    }

    /// The shortened code on the quotient geometry at `flat`.
    pub fn quotient_shorten(&self, flat: &Flat) -> Result<ProjectiveSystem> {
        if flat.ambient_dim() != self.k {
            return Err(Error::MixedAmbient);
        }
        let qm = geometry::quotient_map(flat)?;
        let mut mult = BTreeMap::new();
        for (&i, &m) in &self.mult {
            if let Some(j) = qm.assign(&self.field, &self.coords(i)) {
                *mult.entry(j).or_insert(0) += m;
            }
        }
        if mult.is_empty() {
            return Err(Error::EmptyQuotient);
        }
        ProjectiveSystem::new(self.field.clone(), qm.r(), mult, self.zero_mult)
    }

    /// Mass of the system lying on `flat` and the shortened system; a convenience for callers
    /// that need both α and the quotient.
    pub fn shorten_with_mass(&self, flat: &Flat) -> Result<(u64, ProjectiveSystem)> {
        Ok((self.mass_on(flat), self.quotient_shorten(flat)?))
    }

    pub fn check_nsmds_conditions(&self) -> NsmdsReport {
        let p = self.params();
        let applicable = p.s > 1 && p.d > 1;
        let dimension_condition = applicable && p.k >= (p.s - 1) * (p.q + 1);
        let independence_condition =
            applicable && p.k >= p.s && p.d_perp > p.k - p.s;
        NsmdsReport {
            s: p.s,
            t: p.t,
            applicable,
            dimension_condition,
            independence_condition,
            conclusion_holds: (dimension_condition && independence_condition).then_some(p.t == p.s),
        }
    }

    /// The system of the dual code, built from a generator matrix of the null space.
    pub fn dual_system(&self) -> Result<ProjectiveSystem> {
        let g = self.to_generator_matrix();
        let n = self.n() as usize;
        if n <= self.k {
            return Err(Error::InvalidParameters("the dual code is zero-dimensional".into()));
        }
        let h = linalg::null_space(&self.field, &g, n);
        ProjectiveSystem::from_generator_matrix(self.field.clone(), &h)
    }

    /// Serializes to the `.gm` text format.
    pub fn to_gm(&self) -> String {
        let g = self.to_generator_matrix();
        let mut out = format!(
            "q {} poly {}\nk {} n {}\n",
            self.field.q(),
            self.field.poly(),
            self.k,
            self.n()
        );
        for row in g {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the `.gm` text format.
    pub fn from_gm(text: &str) -> Result<ProjectiveSystem> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_err = |line, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing field header"))?;
        let (q, poly) = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["q", q, "poly", p] => (
                q.parse::<u64>().map_err(|_| parse_err(ln, "bad q"))?,
                p.parse::<u32>().map_err(|_| parse_err(ln, "bad poly"))?,
            ),
            _ => return Err(parse_err(ln, "expected `q <q> poly <poly>`")),
        };
        let field = Arc::new(FieldSpec::with_poly(q, poly)?);
        let (ln, dims) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing dimension line"))?;
        let (k, n) = match dims.split_whitespace().collect::<Vec<_>>()[..] {
            ["k", k, "n", n] => (
                k.parse::<usize>().map_err(|_| parse_err(ln, "bad k"))?,
                n.parse::<usize>().map_err(|_| parse_err(ln, "bad n"))?,
            ),
            _ => return Err(parse_err(ln, "expected `k <k> n <n>`")),
        };
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(ln + 1, "fewer rows than k"))?;
            let row = line
                .split_whitespace()
                .map(|t| {
                    let v = t.parse::<u64>().map_err(|_| parse_err(ln, "bad element"))?;
                    if v >= q {
                        return Err(parse_err(ln, &format!("element {v} not below q = {q}")));
                    }
                    Ok(v as Elem)
                })
                .collect::<Result<Vec<Elem>>>()?;
            if row.len() != n {
                return Err(parse_err(ln, &format!("expected {n} entries, found {}", row.len())));
            }
            rows.push(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing content after the matrix"));
        }
        ProjectiveSystem::from_generator_matrix(field, &rows)
    }
}

fn has_circuit(f: &FieldSpec, pts: &[Vec<Elem>], m: usize) -> bool {
    fn dfs(
        f: &FieldSpec,
        pts: &[Vec<Elem>],
        basis: &mut EchelonBasis,
        start: usize,
        need: usize,
    ) -> bool {
        if need == 0 {
            return pts[start..].iter().any(|p| basis.contains(f, p));
        }
        for i in start..pts.len() {
            if pts.len() - i < need + 1 {
                break;
            }
            if basis.insert(f, &pts[i]) {
                if dfs(f, pts, basis, i + 1, need - 1) {
                    return true;
                }
                basis.pop();
            }
        }
        false
    }
    let mut basis = EchelonBasis::new();
    dfs(f, pts, &mut basis, 0, m - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(q).unwrap())
    }

    fn from_cols(q: u64, cols: &[&[Elem]]) -> ProjectiveSystem {
        let k = cols[0].len();
        let rows: Vec<Vec<Elem>> = (0..k).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        ProjectiveSystem::from_generator_matrix(field(q), &rows).unwrap()
    }

    #[test]
    fn generator_matrix_examples() {
        let id = from_cols(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(id.n(), 3);
        assert_eq!(id.support_len(), 3);

        let f2 = field(2);
        let all: Vec<Vec<Elem>> = (1..8u8)
            .map(|v| vec![(v >> 2) & 1, (v >> 1) & 1, v & 1])
            .collect();
        let cols: Vec<&[Elem]> = all.iter().map(|v| v.as_slice()).collect();
        let simplex = from_cols(2, &cols);
        assert_eq!(simplex.n(), 7);
        assert_eq!(simplex.support_len(), 7);

        let rep = from_cols(3, &[&[1, 0], &[0, 1], &[2, 0]]);
        assert_eq!(rep.multiplicity(Point::new(&f2, &[1, 0]).unwrap().index), 2);

        let bad = ProjectiveSystem::from_generator_matrix(f2, &[vec![1, 0, 1], vec![1, 0, 1]]);
        assert_eq!(bad.unwrap_err(), Error::RankDeficient { rank: 1, k: 2 });
    }

    #[test]
    fn simplex_parameters() {
        let f = field(2);
        let pts = geometry::enumerate_points(3, &f).unwrap();
        let ps = ProjectiveSystem::from_points(f, 3, pts.into_iter().map(|p| (p, 1))).unwrap();
        let p = ps.params();
        assert_eq!((p.n, p.k, p.d, p.d_perp, p.s), (7, 3, 4, 3, 1));
        assert!(p.griesmer_met && p.projective);
        let wd = ps.weight_distribution();
        assert_eq!(wd, BTreeMap::from([(0, 1), (4, 7)]));
    }

    #[test]
    fn spike_parameters() {
        let f = field(3);
        let e = |i| Point::unit(3, 3, i);
        let ps = ProjectiveSystem::from_points(f, 3, [(e(0), 3), (e(1), 1), (e(2), 1)]).unwrap();
        let p = ps.params();
        assert_eq!((p.n, p.d, p.d_perp, p.s), (5, 1, 2, 2));
    }

    #[test]
    fn degenerate_code() {
        let ps = from_cols(2, &[&[1, 0], &[0, 1], &[0, 0], &[1, 1]]);
        assert_eq!(ps.zero_mult(), 1);
        let p = ps.params();
        assert_eq!(p.d_perp, 1);
        assert!(p.degenerate);
        assert_eq!(p.d, 2);
        let total: u64 = ps.weight_distribution().values().sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn shortening_simplex_at_a_point() {
        let f = field(2);
        let pts = geometry::enumerate_points(3, &f).unwrap();
        let ps = ProjectiveSystem::from_points(f.clone(), 3, pts.iter().cloned().map(|p| (p, 1)))
            .unwrap();
        let flat = geometry::span_flat(&f, &pts[..1]).unwrap();
        let short = ps.quotient_shorten(&flat).unwrap();
        let p = short.params();
        assert_eq!((p.n, p.k, p.d), (6, 2, 4));
    }

    #[test]
    fn gm_round_trip() {
        let ps = from_cols(4, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 2, 3], &[1, 1, 1], &[0, 0, 0]]);
        let text = ps.to_gm();
        assert!(text.starts_with("q 4 poly 3\nk 3 n 6\n"));
        let back = ProjectiveSystem::from_gm(&text).unwrap();
        assert_eq!(back, ps);
        assert_eq!(back.to_gm(), text);
    }

    #[test]
    fn gm_errors() {
        assert!(matches!(
            ProjectiveSystem::from_gm("q 4 poly 3\nk 2 n 2\n1 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            ProjectiveSystem::from_gm("q 2 poly 0\nk 2 n 2\n1 2\n0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert_eq!(
            ProjectiveSystem::from_gm("q 2 poly 0\nk 2 n 2\n1 1\n1 1\n").unwrap_err(),
            Error::RankDeficient { rank: 1, k: 2 }
        );
        assert_eq!(
            ProjectiveSystem::from_gm("q 4 poly 1\nk 1 n 1\n1\n").unwrap_err(),
            Error::Reducible { poly: 1, p: 2, degree: 2 }
        );
    }
}
