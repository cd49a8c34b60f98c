//! Dense exact linear algebra over a [`FieldCtx`]: reduced echelon form,
//! nullspaces, inversion, and canonical subspaces.

use crate::ff::{FieldCtx, FieldElem};

pub type Vector = Vec<FieldElem>;

/// Brings `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot columns.
pub fn rref(f: &FieldCtx, rows: &mut Vec<Vector>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &FieldCtx, rows: &[Vector]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{x : A x = 0}` for `A` with `ncols` columns.
pub fn nullspace(f: &FieldCtx, a: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m = a.to_vec();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![FieldElem::ZERO; ncols];
            x[fc] = FieldElem::ONE;
            for (row, &pc) in m.iter().zip(&pivots) {
                x[pc] = f.neg(row[fc]);
            }
            x
        })
        .collect()
}

/// Some `x` with `A x = b`, if one exists.
pub fn solve(f: &FieldCtx, a: &[Vector], b: &[FieldElem]) -> Option<Vector> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(f, &mut m);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![FieldElem::ZERO; ncols];
    for (row, &pc) in m.iter().zip(&pivots) {
        x[pc] = row[ncols];
    }
    Some(x)
}

/// Inverse of a square matrix given by rows.
pub fn invert(f: &FieldCtx, m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let mut aug: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    FieldElem::ONE
                } else {
                    FieldElem::ZERO
                }
            }));
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A subspace of `GF(q)^n` held as its unique reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vector>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            n,
            rows: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![FieldElem::ZERO; n];
                r[i] = FieldElem::ONE;
                r
            })
            .collect();
        Subspace { n, rows }
    }

    pub fn span(f: &FieldCtx, n: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let mut rows: Vec<Vector> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(n);
        }
        rref(f, &mut rows);
        Subspace { n, rows }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    fn pivot(row: &[FieldElem]) -> usize {
        row.iter()
            .position(|x| !x.is_zero())
            .expect("echelon rows are nonzero")
    }

    /// `v` reduced against the basis.
    pub fn reduce(&self, f: &FieldCtx, v: &[FieldElem]) -> Vector {
        let mut v = v.to_vec();
        for row in &self.rows {
            let c = Self::pivot(row);
            let factor = v[c];
            if factor.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, f: &FieldCtx, v: &[FieldElem]) -> bool {
        self.reduce(f, v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns the new (normalised) basis vector when the space grows.
    pub fn insert(&mut self, f: &FieldCtx, v: &[FieldElem]) -> Option<Vector> {
        let mut r = self.reduce(f, v);
        let c = r.iter().position(|x| !x.is_zero())?;
        let inv = f.inv(r[c]).expect("nonzero");
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let factor = row[c];
            if factor.is_zero() {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        let pos = self
            .rows
            .iter()
            .position(|row| Self::pivot(row) > c)
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, r.clone());
        Some(r)
    }

    pub fn contains_subspace(&self, f: &FieldCtx, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(f, v))
    }

    /// Sum of two subspaces.
    pub fn join(&self, f: &FieldCtx, other: &Subspace) -> Subspace {
        let mut out = self.clone();
        for v in &other.rows {
            out.insert(f, v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: &FieldCtx, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn rref_and_nullspace() {
        let f = FieldCtx::prime(7).unwrap();
        let a = vec![v(&f, &[1, 2, 3]), v(&f, &[2, 4, 6]), v(&f, &[0, 1, 1])];
        assert_eq!(rank(&f, &a), 2);
        let ns = nullspace(&f, &a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot = row
                .iter()
                .zip(&ns[0])
                .fold(f.zero(), |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn invert_and_solve() {
        let f = FieldCtx::prime(5).unwrap();
        let m = vec![v(&f, &[1, 2]), v(&f, &[3, 4])];
        let inv = invert(&f, &m).unwrap();
        // m * inv = I
        for i in 0..2 {
            for j in 0..2 {
                let s = (0..2).fold(f.zero(), |acc, l| f.add(acc, f.mul(m[i][l], inv[l][j])));
                assert_eq!(s, if i == j { f.one() } else { f.zero() });
            }
        }
        assert!(invert(&f, &[v(&f, &[1, 2]), v(&f, &[2, 4])]).is_none());
        let x = solve(&f, &m, &v(&f, &[1, 0])).unwrap();
        assert_eq!(x, vec![inv[0][0], inv[1][0]]);
        assert!(solve(&f, &[v(&f, &[1, 1]), v(&f, &[2, 2])], &v(&f, &[1, 0])).is_none());
    }

    #[test]
    fn subspace_canonical() {
        let f = FieldCtx::prime(3).unwrap();
        let a = Subspace::span(&f, 3, [v(&f, &[1, 1, 0]), v(&f, &[0, 1, 1])]);
        let b = Subspace::span(&f, 3, [v(&f, &[1, 0, 2]), v(&f, &[1, 2, 1])]);
        assert_eq!(a, b);
        let mut c = Subspace::zero(3);
        assert!(c.insert(&f, &v(&f, &[0, 1, 1])).is_some());
        assert!(c.insert(&f, &v(&f, &[0, 2, 2])).is_none());
        assert!(c.insert(&f, &v(&f, &[1, 1, 0])).is_some());
        assert_eq!(c, a);
        assert!(a.contains(&f, &v(&f, &[1, 0, 2])));
        assert!(!a.contains(&f, &v(&f, &[1, 0, 0])));
    }
}
