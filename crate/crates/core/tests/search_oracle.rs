//! The search against a plain enumeration of every multiset of points whose
//! hyperplanes hold at most k + s − 1 of them.

use projsys::geometry::{num_points, point_coords};
use projsys::gf::FieldSpec;
use projsys::linalg::{dot, rank};
use projsys::search::{max_length, SearchConfig};

struct Brute {
    /// on[p] lists the hyperplanes through point p, found by dot products
    on: Vec<Vec<usize>>,
    coords: Vec<Vec<u8>>,
    cap: u32,
    counts: Vec<u32>,
    mult: Vec<u32>,
    k: usize,
    f: FieldSpec,
    best: u64,
}

impl Brute {
    fn go(&mut self, p: usize, n: u64) {
        if p == self.on.len() {
            if n > self.best {
                let rows: Vec<Vec<u8>> =
                    (0..p).filter(|&i| self.mult[i] > 0).map(|i| self.coords[i].clone()).collect();
                if rank(&self.f, &rows) == self.k {
                    self.best = n;
                }
            }
            return;
        }
        let mut mu = 0;
        loop {
            self.mult[p] = mu;
            self.go(p + 1, n + mu as u64);
            if self.on[p].iter().any(|&h| self.counts[h] == self.cap) {
                break;
            }
            for &h in &self.on[p] {
                self.counts[h] += 1;
            }
            mu += 1;
        }
        for &h in &self.on[p] {
            self.counts[h] -= mu;
        }
        self.mult[p] = 0;
    }
}

fn brute_force(k: usize, q: u64, s: u64) -> u64 {
    let f = FieldSpec::new(q).unwrap();
    let n = num_points(k, q) as usize;
    let coords: Vec<Vec<u8>> = (0..n).map(|i| point_coords(k, q, i)).collect();
    let on = coords
        .iter()
        .map(|p| (0..n).filter(|&h| dot(&f, p, &coords[h]) == 0).collect())
        .collect();
    let mut b = Brute {
        on,
        coords,
        cap: (k as u64 + s - 1) as u32,
        counts: vec![0; n],
        mult: vec![0; n],
        k,
        f,
        best: 0,
    };
    b.go(0, 0);
    b.best
}

#[test]
fn search_matches_enumeration() {
    let mut cases = vec![];
    for s in 0..=2 {
        cases.push((3, 2, s));
        cases.push((3, 3, s));
        for q in [2, 3, 4, 5] {
            cases.push((2, q, s));
        }
    }
    for (k, q, s) in cases {
        let oracle = brute_force(k, q, s);
        let lex = max_length(&SearchConfig::new(k, q, s).lex_only()).unwrap();
        assert!(lex.exhaustive);
        assert_eq!(lex.n_max, oracle, "lex-only, k={k} q={q} s={s}");
        let full = max_length(&SearchConfig::new(k, q, s)).unwrap();
        assert!(full.exhaustive);
        assert_eq!(full.n_max, oracle, "with symmetry and engine, k={k} q={q} s={s}");
    }
}
