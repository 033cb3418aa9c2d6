//! Explicit point sets used as existence witnesses.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, Point};
use crate::gf::{Elem, FieldSpec};
use crate::projsystem::ProjectiveSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionId {
    TrivialSpike,
    TwoDimExtremal,
    FullSpace,
    PlaneMinusLine,
    Hyperoval,
    Denniston,
    EllipticQuadric,
    Cap8Pg32,
    Union,
    Conic,
    Frame,
    NormalRationalCurve,
    NearMdsFromLine,
}

impl ConstructionId {
    pub const ALL: [ConstructionId; 13] = [
        ConstructionId::TrivialSpike,
        ConstructionId::TwoDimExtremal,
        ConstructionId::FullSpace,
        ConstructionId::PlaneMinusLine,
        ConstructionId::Hyperoval,
        ConstructionId::Denniston,
        ConstructionId::EllipticQuadric,
        ConstructionId::Cap8Pg32,
        ConstructionId::Union,
        ConstructionId::Conic,
        ConstructionId::Frame,
        ConstructionId::NormalRationalCurve,
        ConstructionId::NearMdsFromLine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionId::TrivialSpike => "trivial_spike",
            ConstructionId::TwoDimExtremal => "two_dim_extremal",
            ConstructionId::FullSpace => "full_space",
            ConstructionId::PlaneMinusLine => "plane_minus_line",
            ConstructionId::Hyperoval => "hyperoval",
            ConstructionId::Denniston => "denniston",
            ConstructionId::EllipticQuadric => "elliptic_quadric",
            ConstructionId::Cap8Pg32 => "cap8_pg32",
            ConstructionId::Union => "union",
            ConstructionId::Conic => "conic",
            ConstructionId::Frame => "frame",
            ConstructionId::NormalRationalCurve => "normal_rational_curve",
            ConstructionId::NearMdsFromLine => "near_mds_from_line",
        }
    }

    /// Builds the construction from named parameters. `union` needs two
    /// existing systems and is rejected here; use [`union`].
    pub fn build(self, args: &ConstructionArgs) -> Result<ProjectiveSystem> {
        let q = args.q;
        let need = |v: Option<u64>, what: &str| {
            v.ok_or_else(|| Error::InvalidParameters(format!("{} needs --{what}", self.name())))
        };
        match self {
            ConstructionId::TrivialSpike => {
                trivial_spike(need(args.k, "k")? as usize, q, need(args.s, "s")?)
            }
            ConstructionId::TwoDimExtremal => two_dim_extremal(q, need(args.s, "s")?),
            ConstructionId::FullSpace => full_space(args.k.unwrap_or(3) as usize, q),
            ConstructionId::PlaneMinusLine => plane_minus_line(q),
            ConstructionId::Hyperoval => hyperoval(q),
            ConstructionId::Denniston => denniston(q, need(args.degree, "degree")?),
            ConstructionId::EllipticQuadric => elliptic_quadric(q),
            ConstructionId::Cap8Pg32 => cap8_pg32(),
            ConstructionId::Conic => conic(q),
            ConstructionId::Frame => frame(need(args.k, "k")? as usize, q),
            ConstructionId::NormalRationalCurve => {
                normal_rational_curve(need(args.k, "k")? as usize, q)
            }
            ConstructionId::NearMdsFromLine => near_mds_from_line(need(args.k, "k")? as usize, q),
            ConstructionId::Union => Err(Error::InvalidParameters(
                "union combines two existing systems".into(),
            )),
        }
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown construction `{s}`")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct ConstructionArgs {
    pub q: u64,
    pub k: Option<u64>,
    pub s: Option<u64>,
    pub degree: Option<u64>,
}

fn field(q: u64) -> Result<Arc<FieldSpec>> {
    Ok(Arc::new(FieldSpec::new(q)?))
}

fn system_from_vectors(
    f: Arc<FieldSpec>,
    k: usize,
    vectors: impl IntoIterator<Item = (Vec<Elem>, u32)>,
) -> Result<ProjectiveSystem> {
    let mut pts = Vec::new();
    for (v, m) in vectors {
        pts.push((Point::new(&f, &v)?, m));
    }
    ProjectiveSystem::from_points(f, k, pts)
}

fn unit(k: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}

/// e₁ with multiplicity s+1 and e₂, …, e_k once each: a [k+s, k, 1] code.
pub fn trivial_spike(k: usize, q: u64, s: u64) -> Result<ProjectiveSystem> {
    if k < 2 {
        return Err(Error::InvalidParameters("trivial_spike needs k ≥ 2".into()));
    }
    let f = field(q)?;
    system_from_vectors(
        f,
        k,
        (0..k).map(|i| (unit(k, i), if i == 0 { s as u32 + 1 } else { 1 })),
    )
}

/// Every point of PG(1, q) with multiplicity s+1.
pub fn two_dim_extremal(q: u64, s: u64) -> Result<ProjectiveSystem> {
    let f = field(q)?;
    let mult = (0..=q as usize).map(|i| (i, s as u32 + 1)).collect();
    ProjectiveSystem::new(f, 2, mult, 0)
}

/// Every point of PG(k−1, q) once: the simplex code.
pub fn full_space(k: usize, q: u64) -> Result<ProjectiveSystem> {
    if k < 2 {
        return Err(Error::InvalidParameters("full_space needs k ≥ 2".into()));
    }
    let f = field(q)?;
    let count = geometry::num_points(k, q);
    if count > geometry::DEFAULT_POINT_LIMIT {
        return Err(Error::Overflow {
            count,
            limit: geometry::DEFAULT_POINT_LIMIT,
        });
    }
    let mult = (0..count as usize).map(|i| (i, 1)).collect();
    ProjectiveSystem::new(f, k, mult, 0)
}

/// The affine plane: PG(2, q) with the line x₀ = 0 removed.
pub fn plane_minus_line(q: u64) -> Result<ProjectiveSystem> {
    let f = field(q)?;
    let els: Vec<Elem> = f.elements().collect();
    let pts = els
        .iter()
        .flat_map(|&x| els.iter().map(move |&y| (vec![1, x, y], 1)))
        .collect::<Vec<_>>();
    system_from_vectors(f, 3, pts)
}

/// The conic {(1, t, t²)} ∪ {(0, 0, 1)}, a (q+1)-arc.
pub fn conic(q: u64) -> Result<ProjectiveSystem> {
    let f = field(q)?;
    let mut pts: Vec<(Vec<Elem>, u32)> = f
        .elements()
        .map(|t| (vec![1, t, f.mul(t, t)], 1))
        .collect();
    pts.push((vec![0, 0, 1], 1));
    system_from_vectors(f, 3, pts)
}

/// The conic plus its nucleus (0, 1, 0); a (q+2)-arc when q is even.
pub fn hyperoval(q: u64) -> Result<ProjectiveSystem> {
    let f = field(q)?;
    if f.p() != 2 {
        return Err(Error::QOdd(f.q()));
    }
    let mut pts: Vec<(Vec<Elem>, u32)> = f
        .elements()
        .map(|t| (vec![1, t, f.mul(t, t)], 1))
        .collect();
    pts.push((vec![0, 1, 0], 1));
    pts.push((vec![0, 0, 1], 1));
    system_from_vectors(f, 3, pts)
}

/// Smallest λ such that z² + λz + 1 has no root in GF(q).
pub fn anisotropic_lambda(f: &FieldSpec) -> Elem {
    f.elements()
        .find(|&l| f.quadratic_is_irreducible(l, 1))
        .expect("an irreducible quadratic z² + λz + 1 exists for every q > 2, and for q = 2 with λ = 1")
}

/// The maximal arc {(1, x, y) : x² + λxy + y² ∈ H} where H is the additive
/// subgroup spanned by 1, α, …, α^{e−1} and degree = 2^e. Every line meets it
/// in 0 or `degree` points.
pub fn denniston(q: u64, degree: u64) -> Result<ProjectiveSystem> {
    let f = field(q)?;
    if f.p() != 2 {
        return Err(Error::QOdd(f.q()));
    }
    if degree < 2 || degree > q || !degree.is_power_of_two() || !q.is_multiple_of(degree) {
        return Err(Error::BadDegree {
            degree: degree as u32,
            q: f.q(),
        });
    }
    let lambda = anisotropic_lambda(&f);
    // With α^i encoded as 2^i, the span of the first e basis elements is
    // exactly the set of encodings below 2^e.
    let in_h = |v: Elem| (v as u64) < degree;
    let mut pts = Vec::new();
    for x in f.elements() {
        for y in f.elements() {
            let qv = f.add(f.add(f.mul(x, x), f.mul(lambda, f.mul(x, y))), f.mul(y, y));
            if in_h(qv) {
                pts.push((vec![1, x, y], 1));
            }
        }
    }
    system_from_vectors(f, 3, pts)
}

/// Smallest (b, c) in lexicographic order with z² + bz + c irreducible.
pub fn irreducible_quadratic(f: &FieldSpec) -> (Elem, Elem) {
    f.elements()
        .flat_map(|b| f.elements().map(move |c| (b, c)))
        .find(|&(b, c)| f.quadratic_is_irreducible(b, c))
        .expect("every finite field has an irreducible quadratic")
}

/// The elliptic quadric x₀x₁ + y² + byz + cz² = 0 in PG(3, q): q²+1 points,
/// no three collinear.
pub fn elliptic_quadric(q: u64) -> Result<ProjectiveSystem> {
    let f = field(q)?;
    let (b, c) = irreducible_quadratic(&f);
    let mut pts = Vec::new();
    for y in f.elements() {
        for z in f.elements() {
            let form = f.add(f.add(f.mul(y, y), f.mul(b, f.mul(y, z))), f.mul(c, f.mul(z, z)));
            pts.push((vec![1, f.neg(form), y, z], 1));
        }
    }
    pts.push((vec![0, 1, 0, 0], 1));
    system_from_vectors(f, 4, pts)
}

/// The eight points of PG(3, 2) off the plane x₀ = 0.
pub fn cap8_pg32() -> Result<ProjectiveSystem> {
    let f = field(2)?;
    let pts = (0..8u8).map(|v| (vec![1, (v >> 2) & 1, (v >> 1) & 1, v & 1], 1));
    system_from_vectors(f, 4, pts)
}

/// e₁, …, e_k and the all-ones vector: a [k+1, k, 2] MDS code.
pub fn frame(k: usize, q: u64) -> Result<ProjectiveSystem> {
    if k < 2 {
        return Err(Error::InvalidParameters("frame needs k ≥ 2".into()));
    }
    let f = field(q)?;
    let mut pts: Vec<(Vec<Elem>, u32)> = (0..k).map(|i| (unit(k, i), 1)).collect();
    pts.push((vec![1; k], 1));
    system_from_vectors(f, k, pts)
}

/// {(1, t, …, t^{k−1})} ∪ {(0, …, 0, 1)}: a (q+1)-arc in PG(k−1, q) for 2 ≤ k ≤ q+1.
pub fn normal_rational_curve(k: usize, q: u64) -> Result<ProjectiveSystem> {
    if k < 2 || k as u64 > q + 1 {
        return Err(Error::InvalidParameters(format!(
            "normal_rational_curve needs 2 ≤ k ≤ q+1, got k = {k}"
        )));
    }
    let f = field(q)?;
    let mut pts: Vec<(Vec<Elem>, u32)> = f
        .elements()
        .map(|t| ((0..k).map(|i| f.pow(t, i as u64)).collect(), 1))
        .collect();
    pts.push((unit(k, k - 1), 1));
    system_from_vectors(f, k, pts)
}

/// A 2-dimensional code of length n with multiplicities as even as possible
/// and at least one repeated point: P₀, P₀, P₁, …, P_{n−2} when n ≤ q+1,
/// otherwise P₀, …, P_q cycled.
pub fn balanced_line(q: u64, n: u64) -> Result<ProjectiveSystem> {
    if n < 2 {
        return Err(Error::InvalidParameters("balanced_line needs n ≥ 2".into()));
    }
    let f = field(q)?;
    let mut mult = BTreeMap::new();
    if n <= q + 1 {
        mult.insert(0, 2);
        for i in 1..n - 1 {
            mult.insert(i as usize, 1);
        }
    } else {
        for i in 0..n {
            *mult.entry((i % (q + 1)) as usize).or_insert(0) += 1;
        }
    }
    ProjectiveSystem::new(f, 2, mult, 0)
}

/// A [k+2, k, 2] code: the dual of [`balanced_line`] of length k+2. It is
/// near-MDS whenever k ≤ 2q.
pub fn near_mds_from_line(k: usize, q: u64) -> Result<ProjectiveSystem> {
    if k < 2 {
        return Err(Error::InvalidParameters("near_mds_from_line needs k ≥ 2".into()));
    }
    balanced_line(q, k as u64 + 2)?.dual_system()
}

/// Adds multiplicities of two systems over the same PG(k−1, q).
pub fn union(a: &ProjectiveSystem, b: &ProjectiveSystem) -> Result<ProjectiveSystem> {
    if a.k() != b.k() || a.field() != b.field() {
        return Err(Error::AmbientMismatch);
    }
    let mut mult = a.multiplicities().clone();
    for (&i, &m) in b.multiplicities() {
        *mult.entry(i).or_insert(0) += m;
    }
    ProjectiveSystem::new(a.field().clone(), a.k(), mult, a.zero_mult() + b.zero_mult())
}

/// Builds a system from a one-line recipe such as `denniston q=8 degree=4`,
/// `near_mds_from_line k=5 q=3` or `dual of hyperoval q=8`. Lower-bound
/// witnesses are reported in this form.
pub fn from_recipe(recipe: &str) -> Result<ProjectiveSystem> {
    let bad = |msg: String| Error::InvalidParameters(format!("recipe `{recipe}`: {msg}"));
    let (dual, body) = match recipe.trim().strip_prefix("dual of ") {
        Some(rest) => (true, rest),
        None => (false, recipe.trim()),
    };
    let mut words = body.split_whitespace();
    let name = words.next().ok_or_else(|| bad("empty".into()))?;
    let mut args = ConstructionArgs::default();
    let mut n = None;
    for w in words {
        let (key, value) = w
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, got `{w}`")))?;
        let value: u64 = value
            .parse()
            .map_err(|_| bad(format!("`{value}` is not a number")))?;
        match key {
            "q" => args.q = value,
            "k" => args.k = Some(value),
            "s" => args.s = Some(value),
            "degree" => args.degree = Some(value),
            "n" => n = Some(value),
            _ => return Err(bad(format!("unknown key `{key}`"))),
        }
    }
    if name == "cap8_pg32" && args.q == 0 {
        args.q = 2;
    }
    let ps = if name == "balanced_line" {
        balanced_line(args.q, n.ok_or_else(|| bad("balanced_line needs n".into()))?)?
    } else {
        name.parse::<ConstructionId>()?.build(&args)?
    };
    if dual {
        ps.dual_system()
    } else {
        Ok(ps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    fn nkd(ps: &ProjectiveSystem) -> (u64, u64, u64, u64) {
        let p = ps.params();
        (p.n, p.k, p.d, p.s)
    }

    #[test]
    fn recipes() {
        assert_eq!(from_recipe("denniston q=8 degree=4").unwrap(), denniston(8, 4).unwrap());
        assert_eq!(from_recipe("cap8_pg32").unwrap(), cap8_pg32().unwrap());
        let p = from_recipe("dual of hyperoval q=8").unwrap().params();
        assert_eq!((p.n, p.k, p.s), (10, 7, 0));
        let p = from_recipe("dual of balanced_line q=2 n=9").unwrap().params();
        assert_eq!((p.n, p.k, p.s), (9, 7, 1));
        assert!(from_recipe("union of things").is_err());
        assert!(from_recipe("frame q=3 k=x").is_err());
    }

    #[test]
    fn spike_examples() {
        let ps = trivial_spike(3, 3, 2).unwrap();
        assert_eq!(nkd(&ps), (5, 3, 1, 2));
        assert_eq!(nkd(&trivial_spike(2, 2, 0).unwrap()), (2, 2, 1, 0));
        let p = trivial_spike(4, 2, 1).unwrap().params();
        assert_eq!((p.n, p.k, p.d, p.d_perp), (5, 4, 1, 2));
    }

    #[test]
    fn two_dim_examples() {
        assert_eq!(nkd(&two_dim_extremal(2, 1).unwrap()), (6, 2, 4, 1));
        assert_eq!(nkd(&two_dim_extremal(3, 0).unwrap()), (4, 2, 3, 0));
        assert_eq!(nkd(&two_dim_extremal(4, 2).unwrap()), (15, 2, 12, 2));
    }

    #[test]
    fn plane_examples() {
        assert_eq!(nkd(&plane_minus_line(3).unwrap()), (9, 3, 6, 1));
        assert_eq!(nkd(&full_space(3, 2).unwrap()), (7, 3, 4, 1));
        assert_eq!(nkd(&full_space(3, 4).unwrap()), (21, 3, 16, 3));
    }

    #[test]
    fn hyperoval_examples() {
        assert_eq!(nkd(&hyperoval(2).unwrap()), (4, 3, 2, 0));
        assert_eq!(nkd(&hyperoval(4).unwrap()), (6, 3, 4, 0));
        assert_eq!(nkd(&hyperoval(8).unwrap()), (10, 3, 8, 0));
        assert_eq!(hyperoval(9).unwrap_err(), Error::QOdd(9));
    }

    fn line_intersections(ps: &ProjectiveSystem) -> std::collections::BTreeSet<u64> {
        ps.hyperplane_masses().into_iter().collect()
    }

    #[test]
    fn denniston_examples() {
        let d42 = denniston(4, 2).unwrap();
        assert_eq!(d42.n(), 6);
        let d44 = denniston(4, 4).unwrap();
        let p = d44.params();
        assert_eq!((p.n, p.k, p.d, p.s, p.t), (16, 3, 12, 2, 1));
        let d84 = denniston(8, 4).unwrap();
        assert_eq!(nkd(&d84), (28, 3, 24, 2));
        assert_eq!(denniston(8, 3).unwrap_err(), Error::BadDegree { degree: 3, q: 8 });
        assert_eq!(denniston(9, 3).unwrap_err(), Error::QOdd(9));
    }

    #[test]
    fn denniston_lines_meet_in_zero_or_degree() {
        for q in [2u64, 4, 8, 16] {
            let mut deg = 2;
            while deg <= q {
                let ps = denniston(q, deg).unwrap();
                assert_eq!(ps.n(), deg * q - q + deg);
                let sizes = line_intersections(&ps);
                assert!(sizes.iter().all(|&m| m == 0 || m == deg), "q={q} deg={deg} {sizes:?}");
                assert!(ps.is_projective());
                deg *= 2;
            }
        }
    }

    #[test]
    fn elliptic_quadric_examples() {
        let p3 = elliptic_quadric(3).unwrap().params();
        assert_eq!((p3.n, p3.k, p3.d, p3.s, p3.t), (10, 4, 6, 1, 1));
        let p4 = elliptic_quadric(4).unwrap().params();
        assert_eq!((p4.n, p4.k, p4.d, p4.s, p4.t), (17, 4, 12, 2, 1));
        assert_eq!(nkd(&elliptic_quadric(5).unwrap()), (26, 4, 20, 3));
    }

    #[test]
    fn elliptic_quadric_is_a_cap_with_plane_sections_1_or_q_plus_1() {
        for q in [2u64, 3, 4, 5] {
            let ps = elliptic_quadric(q).unwrap();
            assert_eq!(ps.n(), q * q + 1);
            let pts: Vec<Vec<Elem>> = ps.support().map(|(p, _)| p.coords).collect();
            let f = ps.field();
            for a in 0..pts.len() {
                for b in a + 1..pts.len() {
                    for c in b + 1..pts.len() {
                        let r = linalg::rank(f, &[pts[a].clone(), pts[b].clone(), pts[c].clone()]);
                        assert_eq!(r, 3);
                    }
                }
            }
            let sizes = line_intersections(&ps);
            assert_eq!(sizes, [1, q + 1].into_iter().collect());
        }
    }

    #[test]
    fn cap8_examples() {
        let p = cap8_pg32().unwrap().params();
        assert_eq!((p.n, p.k, p.d, p.s, p.t, p.d_perp), (8, 4, 4, 1, 1, 4));
        assert_eq!(p.n, (p.s + 1) * (p.q + 1) + p.k - 2);
    }

    #[test]
    fn union_examples() {
        let simplex = full_space(3, 2).unwrap();
        let u = union(&simplex, &simplex).unwrap();
        let p = u.params();
        assert_eq!((p.n, p.k, p.d, p.s), (14, 3, 8, 4));

        let h = hyperoval(4).unwrap();
        let p = union(&h, &h).unwrap().params();
        assert_eq!((p.n, p.k), (12, 3));
        assert!(p.s <= 2);

        let c = conic(3).unwrap();
        assert!(union(&c, &c).unwrap().params().s <= 2);

        assert_eq!(
            union(&simplex, &full_space(4, 2).unwrap()).unwrap_err(),
            Error::AmbientMismatch
        );
    }

    #[test]
    fn mds_helpers() {
        for q in [3u64, 4, 5, 7] {
            for k in 2..=(q as usize + 1).min(6) {
                let p = normal_rational_curve(k, q).unwrap().params();
                assert_eq!((p.n, p.s, p.t), (q + 1, 0, 0), "k={k} q={q}");
            }
            let p = frame(4, q).unwrap().params();
            assert_eq!((p.n, p.s), (5, 0));
        }
    }

    #[test]
    fn near_mds_from_line_parameters() {
        for q in [2u64, 3, 4] {
            for k in 2..=(2 * q as usize + 3) {
                let p = near_mds_from_line(k, q).unwrap().params();
                assert_eq!((p.n, p.k, p.d, p.s), (k as u64 + 2, k as u64, 2, 1), "k={k} q={q}");
                if k as u64 <= 2 * q {
                    assert_eq!(p.t, 1, "k={k} q={q}");
                }
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for id in ConstructionId::ALL {
            assert_eq!(id.name().parse::<ConstructionId>().unwrap(), id);
        }
    }
}
