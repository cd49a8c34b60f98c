//! Matrices over a [`FieldCtx`], finitely generated matrix groups and their
//! closures.
//!
//! Matrices act on row vectors (`v ↦ v·M`), matching the natural right
//! module `V` of `G ≤ GL(n, F)`.

mod recognize;
mod table;

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FieldElem};
use crate::linalg::{self, Vector};

pub use recognize::{
    analyze, decompose_2_odd, derived_subgroup, recognize_isotype, IsoType, Structure, Sylow2Kind,
};
pub use table::{GroupTable, Subgroup};

/// Default cap on closure size.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;
/// Largest group for which a full Cayley table is built.
pub const TABLE_CAP: usize = 1 << 12;

static TABLE_LIMIT: AtomicUsize = AtomicUsize::new(TABLE_CAP);

/// Process-wide limit on Cayley table size (default [`TABLE_CAP`]).
pub fn set_table_cap(cap: usize) {
    TABLE_LIMIT.store(cap, Ordering::Relaxed);
}

pub fn table_cap() -> usize {
    TABLE_LIMIT.load(Ordering::Relaxed)
}

/// An `n×n` matrix, entries row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<FieldElem>,
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<Vec<u32>> = self
            .entries
            .chunks(self.n)
            .map(|r| r.iter().map(|x| x.index()).collect())
            .collect();
        write!(f, "M{idx:?}")
    }
}

impl SquareMatrix {
    pub fn from_entries(n: usize, entries: Vec<FieldElem>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "{} entries for degree {n}",
                entries.len()
            )));
        }
        Ok(SquareMatrix { n, entries })
    }

    pub fn from_rows(rows: &[Vector]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("matrix is not square".into()));
        }
        Ok(SquareMatrix {
            n,
            entries: rows.concat(),
        })
    }

    /// Convenience constructor from prime-subfield integers.
    pub fn from_ints(f: &FieldCtx, rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, FieldElem::ONE)
    }

    pub fn scalar(n: usize, c: FieldElem) -> Self {
        let mut entries = vec![FieldElem::ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = c;
        }
        SquareMatrix { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        SquareMatrix {
            n,
            entries: vec![FieldElem::ZERO; n * n],
        }
    }

    /// Block-diagonal matrix.
    pub fn block_diag(blocks: &[&SquareMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut out = Self::zero(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.entries[(off + i) * n + off + j] = b.get(i, j);
                }
            }
            off += b.n;
        }
        out
    }

    /// Matrix assembled from an `r×r` grid of equal-size square blocks.
    pub fn from_blocks(grid: &[Vec<SquareMatrix>]) -> Result<Self> {
        let r = grid.len();
        let s = grid.first().and_then(|row| row.first()).map_or(0, |b| b.n);
        if grid
            .iter()
            .any(|row| row.len() != r || row.iter().any(|b| b.n != s))
        {
            return Err(Error::Dimension("ragged block grid".into()));
        }
        let n = r * s;
        let mut out = Self::zero(n);
        for (bi, row) in grid.iter().enumerate() {
            for (bj, b) in row.iter().enumerate() {
                for i in 0..s {
                    for j in 0..s {
                        out.entries[(bi * s + i) * n + bj * s + j] = b.get(i, j);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElem) {
        self.entries[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vector> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Whether this is `c·1` for some `c`.
    pub fn scalar_value(&self) -> Option<FieldElem> {
        let c = self.entries[0];
        (0..self.n)
            .all(|i| {
                (0..self.n).all(|j| self.get(i, j) == if i == j { c } else { FieldElem::ZERO })
            })
            .then_some(c)
    }

    pub fn mul(&self, other: &SquareMatrix, f: &FieldCtx) -> SquareMatrix {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = vec![FieldElem::ZERO; n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.entries[i * n + l];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.entries[l * n..(l + 1) * n];
                let orow = &mut out[i * n..(i + 1) * n];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        SquareMatrix { n, entries: out }
    }

    pub fn add(&self, other: &SquareMatrix, f: &FieldCtx) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &SquareMatrix, f: &FieldCtx) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn neg(&self, f: &FieldCtx) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: FieldElem, f: &FieldCtx) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }

    pub fn pow(&self, mut e: u128, f: &FieldCtx) -> SquareMatrix {
        let mut acc = Self::identity(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    pub fn inverse(&self, f: &FieldCtx) -> Result<SquareMatrix> {
        let inv = linalg::invert(f, &self.rows()).ok_or(Error::Singular)?;
        Self::from_rows(&inv)
    }

    pub fn is_invertible(&self, f: &FieldCtx) -> bool {
        linalg::rank(f, &self.rows()) == self.n
    }

    /// `X^{-1} M X`.
    pub fn conjugate_by(
        &self,
        x: &SquareMatrix,
        x_inv: &SquareMatrix,
        f: &FieldCtx,
    ) -> SquareMatrix {
        x_inv.mul(self, f).mul(x, f)
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn commutator(&self, other: &SquareMatrix, f: &FieldCtx) -> Result<SquareMatrix> {
        Ok(self
            .inverse(f)?
            .mul(&other.inverse(f)?, f)
            .mul(self, f)
            .mul(other, f))
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[FieldElem], f: &FieldCtx) -> Vector {
        let n = self.n;
        let mut out = vec![FieldElem::ZERO; n];
        for (l, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(&self.entries[l * n..(l + 1) * n]) {
                if !b.is_zero() {
                    *o = f.add(*o, f.mul(a, b));
                }
            }
        }
        out
    }

    /// Text form: rows separated by `;`, entries by `,`. Over a proper
    /// extension of the prime field each entry is parenthesised, e.g.
    /// `(1,2),(0,0);(0,0),(1,2)`.
    pub fn format(&self, f: &FieldCtx) -> String {
        self.entries
            .chunks(self.n)
            .map(|row| {
                row.iter()
                    .map(|&x| {
                        if f.k() == 1 {
                            f.format_elem(x)
                        } else {
                            format!("({})", f.format_elem(x))
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse(f: &FieldCtx, s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|row| parse_row(f, row.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn parse_row(f: &FieldCtx, row: &str) -> Result<Vector> {
    if f.k() == 1 {
        return row.split(',').map(|t| f.parse_elem(t)).collect();
    }
    let mut out = Vec::new();
    let mut rest = row;
    while !rest.is_empty() {
        let rest2 = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {row:?}")))?;
        let (inner, tail) = rest2
            .split_once(')')
            .ok_or_else(|| Error::Parse(format!("unclosed '(' in {row:?}")))?;
        out.push(f.parse_elem(inner)?);
        rest = tail.strip_prefix(',').unwrap_or(tail).trim_start();
    }
    Ok(out)
}

/// Least `e ≥ 1` with `M^e = 1`.
///
/// Every element of GL(n, q) has order dividing
/// `p^⌈log_p n⌉ · lcm(q - 1, …, q^n - 1)`; the order is found by descending
/// from that bound one prime at a time.
pub fn matrix_order(m: &SquareMatrix, f: &FieldCtx, cap: u64) -> Result<u64> {
    if !m.is_invertible(f) {
        return Err(Error::Singular);
    }
    let q = f.size() as u128;
    let p = f.p() as u128;
    let mut bound: Option<u128> = Some(1);
    let mut qi: u128 = 1;
    for _ in 0..m.n {
        qi = qi.saturating_mul(q);
        bound = bound.and_then(|b| {
            let t = qi - 1;
            let gcd = gcd128(b, t);
            (b / gcd).checked_mul(t)
        });
    }
    let mut pp: u128 = 1;
    while pp < m.n as u128 {
        pp *= p;
    }
    let bound = bound.and_then(|b| b.checked_mul(pp));
    let order = match bound {
        Some(mut e) => {
            let primes = factor128(e);
            for r in primes {
                while e % r == 0 && m.pow(e / r, f).is_identity() {
                    e /= r;
                }
            }
            e
        }
        None => {
            let mut acc = m.clone();
            let mut e = 1u128;
            while !acc.is_identity() {
                if e as u64 >= cap {
                    return Err(Error::CapExceeded {
                        what: "matrix order",
                        cap: cap as usize,
                    });
                }
                acc = acc.mul(m, f);
                e += 1;
            }
            e
        }
    };
    if order > cap as u128 {
        return Err(Error::CapExceeded {
            what: "matrix order",
            cap: cap as usize,
        });
    }
    Ok(order as u64)
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn factor128(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Breadth-first closure of `gens` under right multiplication.
pub fn close(
    gens: &[SquareMatrix],
    n: usize,
    f: &FieldCtx,
    cap: usize,
) -> Result<Vec<SquareMatrix>> {
    Ok(close_with_words(gens, n, f, cap)?.0)
}

/// Closure plus, for each element `i > 0`, the pair `(parent, gen)` with
/// `elem[i] = elem[parent] · gens[gen]`.
/// Elements, the word `(prefix, generator)` reaching each, and the index.
type Closure = (
    Vec<SquareMatrix>,
    Vec<(u32, u32)>,
    HashMap<SquareMatrix, u32>,
);

fn close_with_words(gens: &[SquareMatrix], n: usize, f: &FieldCtx, cap: usize) -> Result<Closure> {
    let id = SquareMatrix::identity(n);
    let mut elems = vec![id.clone()];
    let mut words = vec![(0u32, u32::MAX)];
    let mut index = HashMap::new();
    index.insert(id, 0u32);
    let mut i = 0;
    while i < elems.len() {
        for (gi, g) in gens.iter().enumerate() {
            let prod = elems[i].mul(g, f);
            if !index.contains_key(&prod) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "group closure",
                        cap,
                    });
                }
                index.insert(prod.clone(), elems.len() as u32);
                elems.push(prod);
                words.push((i as u32, gi as u32));
            }
        }
        i += 1;
    }
    Ok((elems, words, index))
}

/// A finitely generated subgroup of GL(n, F) with lazily computed closure.
pub struct MatrixGroup {
    field: Arc<FieldCtx>,
    n: usize,
    generators: Vec<SquareMatrix>,
    elements: OnceLock<Arc<Vec<SquareMatrix>>>,
    table: OnceLock<Arc<GroupTable>>,
}

impl Clone for MatrixGroup {
    fn clone(&self) -> Self {
        MatrixGroup {
            field: self.field.clone(),
            n: self.n,
            generators: self.generators.clone(),
            elements: self.elements.clone(),
            table: self.table.clone(),
        }
    }
}

impl fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixGroup")
            .field("n", &self.n)
            .field("q", &self.field.size())
            .field("generators", &self.generators)
            .finish()
    }
}

impl MatrixGroup {
    /// Checks that every generator is an invertible `n×n` matrix.
    pub fn new(field: Arc<FieldCtx>, n: usize, generators: Vec<SquareMatrix>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("degree 0".into()));
        }
        for g in &generators {
            if g.n() != n {
                return Err(Error::Dimension(format!(
                    "generator of degree {} in degree {n}",
                    g.n()
                )));
            }
            if g.entries.iter().any(|x| x.index() as u64 >= field.size()) {
                return Err(Error::Dimension("entry outside the field".into()));
            }
            if !g.is_invertible(&field) {
                return Err(Error::Singular);
            }
        }
        Ok(MatrixGroup {
            field,
            n,
            generators,
            elements: OnceLock::new(),
            table: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[SquareMatrix] {
        &self.generators
    }

    /// The closed element list (identity first).
    pub fn elements(&self, cap: usize) -> Result<Arc<Vec<SquareMatrix>>> {
        if let Some(e) = self.elements.get() {
            return Ok(e.clone());
        }
        if let Some(t) = self.table.get() {
            return Ok(Arc::new(t.elements().to_vec()));
        }
        let e = Arc::new(close(&self.generators, self.n, &self.field, cap)?);
        Ok(self.elements.get_or_init(|| e).clone())
    }

    pub fn order(&self, cap: usize) -> Result<u64> {
        if let Some(t) = self.table.get() {
            return Ok(t.len() as u64);
        }
        Ok(self.elements(cap)?.len() as u64)
    }

    /// Full Cayley table; fails beyond [`table_cap`] elements.
    pub fn table(&self) -> Result<Arc<GroupTable>> {
        if let Some(t) = self.table.get() {
            return Ok(t.clone());
        }
        let (elems, words, index) =
            close_with_words(&self.generators, self.n, &self.field, table_cap())?;
        let t = Arc::new(GroupTable::build(
            elems,
            words,
            index,
            &self.generators,
            &self.field,
        ));
        Ok(self.table.get_or_init(|| t).clone())
    }

    /// `X^{-1} G X`.
    pub fn conjugate_by(&self, x: &SquareMatrix) -> Result<MatrixGroup> {
        let x_inv = x.inverse(&self.field)?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.conjugate_by(x, &x_inv, &self.field))
            .collect();
        MatrixGroup::new(self.field.clone(), self.n, gens)
    }

    pub fn is_abelian(&self) -> bool {
        let f = &self.field;
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.mul(b, f) == b.mul(a, f))
        })
    }

    /// Subgroup generated by a subset of this group's elements.
    pub fn subgroup(&self, gens: Vec<SquareMatrix>) -> Result<MatrixGroup> {
        MatrixGroup::new(self.field.clone(), self.n, gens)
    }

    /// Whether every element of `other` lies in this group and the orders agree.
    pub fn same_set(&self, other: &MatrixGroup, cap: usize) -> Result<bool> {
        let mine = self.elements(cap)?;
        let theirs = other.elements(cap)?;
        if mine.len() != theirs.len() {
            return Ok(false);
        }
        let set: std::collections::HashSet<&SquareMatrix> = mine.iter().collect();
        Ok(theirs.iter().all(|m| set.contains(m)))
    }
}
