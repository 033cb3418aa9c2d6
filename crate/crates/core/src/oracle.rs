//! Brute-force reference computations that work directly on generator
//! matrices, independent of the geometric machinery. Only usable when q^k
//! is small.

use std::collections::BTreeMap;

use crate::gf::{Elem, FieldSpec};
use crate::linalg;

/// Every codeword of the row space, by enumerating all q^k message vectors.
pub fn codewords(f: &FieldSpec, rows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let k = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let q = f.q() as u64;
    let total = q.pow(k as u32);
    (0..total)
        .map(|mut m| {
            let mut word = vec![0; n];
            for row in rows {
                let c = (m % q) as Elem;
                m /= q;
                if c != 0 {
                    for (w, &x) in word.iter_mut().zip(row) {
                        *w = f.add(*w, f.mul(c, x));
                    }
                }
            }
            word
        })
        .collect()
}

pub fn weight_distribution(f: &FieldSpec, rows: &[Vec<Elem>]) -> BTreeMap<u64, u64> {
    let mut dist = BTreeMap::new();
    for w in codewords(f, rows) {
        *dist.entry(w.iter().filter(|&&x| x != 0).count() as u64).or_insert(0) += 1;
    }
    dist
}

/// Minimum nonzero weight of the row space, or `None` for the zero code.
pub fn min_distance(f: &FieldSpec, rows: &[Vec<Elem>]) -> Option<u64> {
    weight_distribution(f, rows)
        .into_keys()
        .find(|&w| w > 0)
}

/// Minimum distance of the dual code, found by enumerating its codewords.
pub fn dual_min_distance(f: &FieldSpec, rows: &[Vec<Elem>]) -> Option<u64> {
    let n = rows.first().map_or(0, |r| r.len());
    let h = linalg::null_space(f, rows, n);
    if h.is_empty() {
        return None;
    }
    min_distance(f, &h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_code() {
        let f = FieldSpec::new(2).unwrap();
        let rows = vec![
            vec![1, 0, 0, 1, 1, 0, 1],
            vec![0, 1, 0, 1, 0, 1, 1],
            vec![0, 0, 1, 0, 1, 1, 1],
        ];
        assert_eq!(weight_distribution(&f, &rows), BTreeMap::from([(0, 1), (4, 7)]));
        assert_eq!(dual_min_distance(&f, &rows), Some(3));
    }
}
