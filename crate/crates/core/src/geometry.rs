//! Points, hyperplanes and flats of PG(k−1, q).
//!
//! A point is a nonzero vector of length k scaled so that its first nonzero
//! coordinate is 1. Points are numbered in lexicographic order of their
//! coordinate tuples, so index 0 is (0, …, 0, 1). Hyperplanes are named by
//! their normalized dual coordinates and share the same numbering.

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};
use crate::linalg::{self, EchelonBasis};

/// Default cap on the number of points a geometry may have before
/// enumeration refuses with [`Error::Overflow`].
pub const DEFAULT_POINT_LIMIT: u64 = 1_000_000;

/// Cap on the number of (point, hyperplane) incidences materialized by [`Incidence`].
pub const INCIDENCE_LIMIT: u64 = 50_000_000;

/// θ(m, q): the number of points of PG(m, q). θ(−1, q) = 0.
pub fn theta(m: i64, q: u64) -> u64 {
    if m < 0 {
        return 0;
    }
    let mut total: u64 = 0;
    let mut pw: u64 = 1;
    for _ in 0..=m {
        total = total.saturating_add(pw);
        pw = pw.saturating_mul(q);
    }
    total
}

/// Number of points of PG(k−1, q).
pub fn num_points(k: usize, q: u64) -> u64 {
    theta(k as i64 - 1, q)
}

/// Scales `v` so its first nonzero entry is 1. Returns false for the zero vector.
pub fn normalize(f: &FieldSpec, v: &mut [Elem]) -> bool {
    let Some(lead) = v.iter().find(|&&x| x != 0).copied() else {
        return false;
    };
    if lead != 1 {
        let inv = f.inv_nonzero(lead);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
    }
    true
}

/// Position of a normalized vector in the canonical order.
pub fn point_index(q: u64, coords: &[Elem]) -> usize {
    let k = coords.len();
    let lead = coords
        .iter()
        .position(|&x| x != 0)
        .expect("point_index needs a nonzero vector");
    debug_assert_eq!(coords[lead], 1);
    let offset = theta(k as i64 - 2 - lead as i64, q);
    let tail = coords[lead + 1..]
        .iter()
        .fold(0u64, |acc, &x| acc * q + x as u64);
    (offset + tail) as usize
}

/// Inverse of [`point_index`].
pub fn point_coords(k: usize, q: u64, index: usize) -> Vec<Elem> {
    let idx = index as u64;
    assert!(idx < num_points(k, q), "point index {index} out of range");
    // leading position i covers [θ(k−2−i), θ(k−1−i))
    let mut lead = 0;
    while idx < theta(k as i64 - 2 - lead as i64, q) {
        lead += 1;
    }
    let mut tail = idx - theta(k as i64 - 2 - lead as i64, q);
    let mut coords = vec![0; k];
    coords[lead] = 1;
    for c in coords[lead + 1..].iter_mut().rev() {
        *c = (tail % q) as Elem;
        tail /= q;
    }
    coords
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub index: usize,
    pub coords: Vec<Elem>,
}

impl Point {
    /// Normalizes an arbitrary nonzero vector into a point.
    pub fn new(f: &FieldSpec, coords: &[Elem]) -> Result<Point> {
        let mut v = coords.to_vec();
        if let Some(&bad) = v.iter().find(|&&x| x >= f.q()) {
            return Err(Error::ElementOutOfRange {
                value: bad as u64,
                q: f.q(),
            });
        }
        if !normalize(f, &mut v) {
            return Err(Error::InvalidParameters("the zero vector is not a point".into()));
        }
        Ok(Point {
            index: point_index(f.q() as u64, &v),
            coords: v,
        })
    }

    pub fn from_index(k: usize, q: u64, index: usize) -> Point {
        Point {
            index,
            coords: point_coords(k, q, index),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// The i-th standard basis point e_{i+1}.
    pub fn unit(k: usize, q: u64, i: usize) -> Point {
        let mut v = vec![0; k];
        v[i] = 1;
        Point {
            index: point_index(q, &v),
            coords: v,
        }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub index: usize,
    pub dual_coords: Vec<Elem>,
}

impl Hyperplane {
    pub fn from_index(k: usize, q: u64, index: usize) -> Hyperplane {
        Hyperplane {
            index,
            dual_coords: point_coords(k, q, index),
        }
    }

    pub fn contains(&self, f: &FieldSpec, coords: &[Elem]) -> bool {
        linalg::dot(f, &self.dual_coords, coords) == 0
    }
}

/// A projective subspace given by the reduced row-echelon basis of its
/// underlying vector space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flat {
    k: usize,
    basis: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Flat {
    /// Span of arbitrary vectors of length `k`. The zero flat (no rows) is allowed.
    pub fn from_vectors(f: &FieldSpec, k: usize, vectors: &[Vec<Elem>]) -> Result<Flat> {
        if vectors.iter().any(|v| v.len() != k) {
            return Err(Error::MixedAmbient);
        }
        let mut basis = vectors.to_vec();
        let pivots = linalg::rref(f, &mut basis);
        Ok(Flat { k, basis, pivots })
    }

    pub fn ambient_dim(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Projective dimension, rank − 1 (so −1 for the empty flat).
    pub fn proj_dim(&self) -> i64 {
        self.basis.len() as i64 - 1
    }

    pub fn codim(&self) -> usize {
        self.k - self.basis.len()
    }

    /// Reduces `v` against the basis in place; the result is zero iff `v` lies in the flat.
    fn reduce(&self, f: &FieldSpec, v: &mut [Elem]) {
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
    }

    pub fn contains(&self, f: &FieldSpec, coords: &[Elem]) -> bool {
        let mut v = coords.to_vec();
        self.reduce(f, &mut v);
        v.iter().all(|&x| x == 0)
    }

    /// Every point of the flat, in canonical order.
    pub fn points(&self, f: &FieldSpec) -> Vec<Point> {
        let q = f.q() as u64;
        let r = self.rank();
        let mut out: Vec<Point> = (0..num_points(r, q) as usize)
            .map(|i| {
                let c = point_coords(r, q, i);
                let mut v = vec![0; self.k];
                for (coef, row) in c.iter().zip(&self.basis) {
                    for (x, &b) in v.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(*coef, b));
                    }
                }
                normalize(f, &mut v);
                Point {
                    index: point_index(q, &v),
                    coords: v,
                }
            })
            .collect();
        out.sort();
        out
    }
}

/// All θ(k−1, q) points in canonical order.
pub fn enumerate_points(k: usize, f: &FieldSpec) -> Result<Vec<Point>> {
    enumerate_points_limited(k, f, DEFAULT_POINT_LIMIT)
}

pub fn enumerate_points_limited(k: usize, f: &FieldSpec, limit: u64) -> Result<Vec<Point>> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    let q = f.q() as u64;
    let count = num_points(k, q);
    if count > limit {
        return Err(Error::Overflow { count, limit });
    }
    Ok((0..count as usize).map(|i| Point::from_index(k, q, i)).collect())
}

fn common_dim(points: &[Point]) -> Result<usize> {
    let k = points.first().map_or(0, |p| p.dim());
    if points.iter().any(|p| p.dim() != k) {
        return Err(Error::MixedAmbient);
    }
    Ok(k)
}

pub fn rank(f: &FieldSpec, points: &[Point]) -> Result<usize> {
    common_dim(points)?;
    let rows: Vec<Vec<Elem>> = points.iter().map(|p| p.coords.clone()).collect();
    Ok(linalg::rank(f, &rows))
}

pub fn span_flat(f: &FieldSpec, points: &[Point]) -> Result<Flat> {
    if points.is_empty() {
        return Err(Error::InvalidParameters("cannot span an empty point set".into()));
    }
    let k = common_dim(points)?;
    let rows: Vec<Vec<Elem>> = points.iter().map(|p| p.coords.clone()).collect();
    Flat::from_vectors(f, k, &rows)
}

/// All hyperplanes containing `flat`, in canonical order.
pub fn hyperplanes_through(f: &FieldSpec, flat: &Flat) -> Result<Vec<Hyperplane>> {
    if flat.rank() >= flat.k {
        return Err(Error::FlatTooLarge(flat.proj_dim() as usize));
    }
    // Functionals vanishing on the flat form the null space of its basis.
    let ns = linalg::null_space(f, flat.basis(), flat.k);
    let dual = Flat::from_vectors(f, flat.k, &ns)?;
    Ok(dual
        .points(f)
        .into_iter()
        .map(|p| Hyperplane {
            index: p.index,
            dual_coords: p.coords,
        })
        .collect())
}

/// Projection from PG(k−1, q) onto the quotient geometry PG(r−1, q) by a flat Λ.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    flat: Flat,
    free: Vec<usize>,
}

impl QuotientMap {
    /// Vector dimension of the quotient, so the quotient is PG(r−1, q).
    pub fn r(&self) -> usize {
        self.free.len()
    }

    pub fn flat(&self) -> &Flat {
        &self.flat
    }

    /// Normalized quotient coordinates of the flat ⟨Λ, P⟩, or `None` if P lies in Λ.
    pub fn image(&self, f: &FieldSpec, coords: &[Elem]) -> Option<Vec<Elem>> {
        let mut v = coords.to_vec();
        self.flat.reduce(f, &mut v);
        let mut w: Vec<Elem> = self.free.iter().map(|&c| v[c]).collect();
        normalize(f, &mut w).then_some(w)
    }

    /// Index of the quotient point, or `None` if P lies in Λ.
    pub fn assign(&self, f: &FieldSpec, coords: &[Elem]) -> Option<usize> {
        self.image(f, coords)
            .map(|w| point_index(f.q() as u64, &w))
    }
}

pub fn quotient_map(flat: &Flat) -> Result<QuotientMap> {
    let r = flat.codim();
    if r < 2 {
        return Err(Error::CodimTooSmall(r));
    }
    let free = (0..flat.k).filter(|c| !flat.pivots.contains(c)).collect();
    Ok(QuotientMap {
        flat: flat.clone(),
        free,
    })
}

/// Point–hyperplane incidence lists for PG(k−1, q).
#[derive(Clone, Debug)]
pub struct Incidence {
    k: usize,
    n_points: usize,
    per_point: usize,
    /// hyperplanes through point i are `through[i*per_point..(i+1)*per_point]`
    through: Vec<u32>,
}

impl Incidence {
    pub fn new(f: &FieldSpec, k: usize) -> Result<Incidence> {
        if k < 2 {
            return Err(Error::InvalidParameters("incidence needs k ≥ 2".into()));
        }
        let q = f.q() as u64;
        let n = num_points(k, q);
        let per = num_points(k - 1, q);
        let total = n.saturating_mul(per);
        if total > INCIDENCE_LIMIT {
            return Err(Error::Overflow {
                count: total,
                limit: INCIDENCE_LIMIT,
            });
        }
        let points: Vec<Vec<Elem>> = (0..n as usize).map(|i| point_coords(k, q, i)).collect();
        let mut through = Vec::with_capacity(total as usize);
        for p in &points {
            for (h, hc) in points.iter().enumerate() {
                if linalg::dot(f, p, hc) == 0 {
                    through.push(h as u32);
                }
            }
        }
        debug_assert_eq!(through.len() as u64, total);
        Ok(Incidence {
            k,
            n_points: n as usize,
            per_point: per as usize,
            through,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_points(&self) -> usize {
        self.n_points
    }

    /// Points per hyperplane, equal to hyperplanes per point.
    pub fn per_point(&self) -> usize {
        self.per_point
    }

    pub fn hyperplanes_through(&self, point: usize) -> &[u32] {
        &self.through[point * self.per_point..(point + 1) * self.per_point]
    }
}

/// True if the given vectors are linearly independent.
pub fn independent(f: &FieldSpec, vectors: &[&[Elem]]) -> bool {
    let mut b = EchelonBasis::new();
    vectors.iter().all(|v| b.insert(f, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        let f2 = FieldSpec::new(2).unwrap();
        let f4 = FieldSpec::new(4).unwrap();
        let f5 = FieldSpec::new(5).unwrap();
        assert_eq!(enumerate_points(3, &f2).unwrap().len(), 7);
        assert_eq!(enumerate_points(4, &f4).unwrap().len(), 85);
        assert_eq!(enumerate_points(1, &f5).unwrap().len(), 1);
        assert!(matches!(
            enumerate_points_limited(6, &f5, 1000),
            Err(Error::Overflow { count: 3906, .. })
        ));
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let f = FieldSpec::new(3).unwrap();
        let pts = enumerate_points(3, &f).unwrap();
        assert_eq!(pts[0].coords, vec![0, 0, 1]);
        for w in pts.windows(2) {
            assert!(w[0].coords < w[1].coords);
        }
        for p in &pts {
            assert_eq!(Point::new(&f, &p.coords).unwrap().index, p.index);
            assert_eq!(p.coords.iter().find(|&&x| x != 0), Some(&1));
        }
    }

    #[test]
    fn rank_examples() {
        let f = FieldSpec::new(2).unwrap();
        let e = |i| Point::unit(3, 2, i);
        let sum = Point::new(&f, &[1, 1, 0]).unwrap();
        assert_eq!(rank(&f, &[e(0), e(1), sum]).unwrap(), 2);
        assert_eq!(rank(&f, &[e(0), e(1), e(2)]).unwrap(), 3);
        let other = Point::unit(4, 2, 0);
        assert_eq!(rank(&f, &[e(0), other]), Err(Error::MixedAmbient));
    }

    #[test]
    fn span_examples() {
        let f = FieldSpec::new(2).unwrap();
        let pts = enumerate_points(3, &f).unwrap();
        assert_eq!(span_flat(&f, &pts[..1]).unwrap().proj_dim(), 0);
        assert_eq!(span_flat(&f, &pts[..2]).unwrap().proj_dim(), 1);
        let full = span_flat(&f, &pts).unwrap();
        assert_eq!(full.proj_dim(), 2);
        assert!(pts.iter().all(|p| full.contains(&f, &p.coords)));
    }

    #[test]
    fn hyperplanes_through_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let p = span_flat(&f2, &[Point::unit(4, 2, 0)]).unwrap();
        let hs = hyperplanes_through(&f2, &p).unwrap();
        assert_eq!(hs.len(), 7);
        // agrees with a brute-force scan
        let brute = enumerate_points(4, &f2)
            .unwrap()
            .into_iter()
            .filter(|h| linalg::dot(&f2, &h.coords, &[1, 0, 0, 0]) == 0)
            .count();
        assert_eq!(brute, 7);

        let f3 = FieldSpec::new(3).unwrap();
        let line = span_flat(&f3, &[Point::unit(4, 3, 0), Point::unit(4, 3, 1)]).unwrap();
        assert_eq!(hyperplanes_through(&f3, &line).unwrap().len(), 4);

        let plane = span_flat(
            &f3,
            &[Point::unit(4, 3, 0), Point::unit(4, 3, 1), Point::unit(4, 3, 2)],
        )
        .unwrap();
        let hs = hyperplanes_through(&f3, &plane).unwrap();
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[0].dual_coords, vec![0, 0, 0, 1]);
    }

    #[test]
    fn quotient_examples() {
        let f2 = FieldSpec::new(2).unwrap();
        let pt = span_flat(&f2, &[Point::unit(3, 2, 0)]).unwrap();
        let qm = quotient_map(&pt).unwrap();
        assert_eq!(qm.r(), 2);
        let mut fibers = std::collections::BTreeMap::new();
        for p in enumerate_points(3, &f2).unwrap() {
            if let Some(i) = qm.assign(&f2, &p.coords) {
                *fibers.entry(i).or_insert(0) += 1;
            }
        }
        assert_eq!(fibers.len(), 3);
        assert!(fibers.values().all(|&c| c == 2));

        let f5 = FieldSpec::new(5).unwrap();
        let line = span_flat(&f5, &[Point::unit(4, 5, 0), Point::unit(4, 5, 3)]).unwrap();
        assert_eq!(quotient_map(&line).unwrap().r(), 2);

        let p3 = span_flat(&f2, &[Point::unit(4, 2, 2)]).unwrap();
        assert_eq!(quotient_map(&p3).unwrap().r(), 3);

        let hyper = span_flat(&f2, &[Point::unit(3, 2, 0), Point::unit(3, 2, 1)]).unwrap();
        assert_eq!(quotient_map(&hyper).unwrap_err(), Error::CodimTooSmall(1));
    }

    #[test]
    fn incidence_duality_and_hyperplane_sizes() {
        for q in [2u64, 3, 4] {
            let f = FieldSpec::new(q).unwrap();
            for k in 2..=4 {
                let inc = Incidence::new(&f, k).unwrap();
                let n = inc.num_points();
                let mut m = vec![vec![false; n]; n];
                for p in 0..n {
                    for &h in inc.hyperplanes_through(p) {
                        m[p][h as usize] = true;
                    }
                }
                for a in 0..n {
                    for b in 0..n {
                        assert_eq!(m[a][b], m[b][a]);
                    }
                }
                for h in 0..n {
                    let size = (0..n).filter(|&p| m[p][h]).count() as u64;
                    assert_eq!(size, num_points(k - 1, q));
                }
            }
        }
    }

    #[test]
    fn hyperplane_sizes_larger_spaces() {
        for (k, q) in [(3u64, 16u64), (4, 7), (5, 3), (3, 19)] {
            let f = FieldSpec::new(q).unwrap();
            let k = k as usize;
            if num_points(k, q) > 400 {
                continue;
            }
            let pts = enumerate_points(k, &f).unwrap();
            for h in &pts {
                let hp = Hyperplane {
                    index: h.index,
                    dual_coords: h.coords.clone(),
                };
                let c = pts.iter().filter(|p| hp.contains(&f, &p.coords)).count() as u64;
                assert_eq!(c, num_points(k - 1, q));
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn index_round_trip(qi in 0usize..8, k in 1usize..6, seed in any::<u64>()) {
                let q = [2u64, 3, 4, 5, 7, 8, 9, 16][qi];
                let n = num_points(k, q);
                let idx = (seed % n) as usize;
                let c = point_coords(k, q, idx);
                prop_assert_eq!(point_index(q, &c), idx);
            }

            #[test]
            fn quotient_fibers_are_equal(qi in 0usize..4, k in 3usize..5, picks in proptest::collection::vec(any::<u64>(), 1..3)) {
                let q = [2u64, 3, 4, 5][qi];
                let f = FieldSpec::new(q).unwrap();
                let n = num_points(k, q);
                let pts: Vec<Point> = picks.iter().map(|s| Point::from_index(k, q, (s % n) as usize)).collect();
                let flat = span_flat(&f, &pts).unwrap();
                prop_assume!(flat.codim() >= 2);
                let qm = quotient_map(&flat).unwrap();
                let mut fibers = std::collections::BTreeMap::new();
                for i in 0..n as usize {
                    let c = point_coords(k, q, i);
                    if let Some(j) = qm.assign(&f, &c) {
                        *fibers.entry(j).or_insert(0u64) += 1;
                    }
                }
                prop_assert_eq!(fibers.len() as u64, num_points(qm.r(), q));
                let first = *fibers.values().next().unwrap();
                prop_assert!(fibers.values().all(|&c| c == first));
                prop_assert_eq!(first * fibers.len() as u64 + num_points(flat.rank(), q), n);
            }
        }
    }
}
