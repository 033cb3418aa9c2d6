//! Dense linear algebra over GF(q) on small row vectors.

use crate::gf::{Elem, FieldSpec};

/// Reduces `rows` to reduced row-echelon form in place, dropping zero rows.
/// Returns the pivot column of each surviving row.
pub fn rref(f: &FieldSpec, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv_nonzero(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &FieldSpec, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// A basis of the right null space {x : rows·x = 0} of a matrix with `ncols` columns.
pub fn null_space(f: &FieldSpec, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0; ncols];
            x[fc] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                x[pc] = f.neg(row[fc]);
            }
            x
        })
        .collect()
}

pub fn dot(f: &FieldSpec, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Incrementally grown basis kept in semi-echelon form: every row is
/// reduced against the rows inserted before it, so reduction in insertion
/// order is exact. Supports popping the most recent row, which is what a
/// depth-first subset search needs.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Elem>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn reduce(&self, f: &FieldSpec, v: &mut [Elem]) {
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
    }

    pub fn contains(&self, f: &FieldSpec, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was added.
    pub fn insert(&mut self, f: &FieldSpec, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv_nonzero(w[p]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push((p, w));
        true
    }

    pub fn pop(&mut self) {
        self.rows.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_dependent_rows() {
        let f = FieldSpec::new(2).unwrap();
        let mut m = vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]];
        let piv = rref(&f, &mut m);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(m, vec![vec![1, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn null_space_is_orthogonal() {
        let f = FieldSpec::new(5).unwrap();
        let rows = vec![vec![1, 2, 3, 4], vec![0, 1, 1, 2]];
        let ns = null_space(&f, &rows, 4);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for r in &rows {
                assert_eq!(dot(&f, r, x), 0);
            }
        }
        assert_eq!(rank(&f, &ns), 2);
    }

    #[test]
    fn echelon_insert_and_pop() {
        let f = FieldSpec::new(3).unwrap();
        let mut b = EchelonBasis::new();
        assert!(b.insert(&f, &[1, 2, 0]));
        assert!(b.insert(&f, &[0, 1, 1]));
        assert!(!b.insert(&f, &[1, 0, 1])); // (1,2,0) + (0,1,1)
        assert!(b.contains(&f, &[2, 1, 0]));
        b.pop();
        assert!(!b.contains(&f, &[1, 0, 1]));
        assert_eq!(b.len(), 1);
    }
}
