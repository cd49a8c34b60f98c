//! Brute-force verifiers: spinning, vector sweeps, block-system enumeration,
//! centraliser dimensions and generator-image conjugacy search.

use std::collections::{BTreeSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FieldElem};
use crate::linalg::{self, Subspace, Vector};
use crate::matgrp::{GroupTable, MatrixGroup, SquareMatrix};
use crate::{arith, singer};

/// Largest `q^n` for which vector sweeps are attempted.
pub const SWEEP_CAP: u64 = 10_000_000;

static SWEEP_LIMIT: AtomicU64 = AtomicU64::new(SWEEP_CAP);

/// Process-wide limit on `q^n` for sweeps (default [`SWEEP_CAP`]).
pub fn set_sweep_cap(cap: u64) {
    SWEEP_LIMIT.store(cap, Ordering::Relaxed);
}

pub fn sweep_cap() -> u64 {
    SWEEP_LIMIT.load(Ordering::Relaxed)
}

/// Default budget for [`conjugacy_search`], counted in linear solves plus
/// candidate matrices tested for invertibility.
pub const SEARCH_CAP: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SweepMode {
    /// One vector per projective point.
    #[default]
    Lines,
    /// Every nonzero vector.
    Full,
}

/// Smallest subspace containing `v` and invariant under `gens`.
pub fn spin(v: &[FieldElem], gens: &[SquareMatrix], f: &FieldCtx) -> Subspace {
    let mut span = Subspace::zero(v.len());
    let mut queue = VecDeque::new();
    if span.insert(f, v).is_some() {
        queue.push_back(v.to_vec());
    }
    while let Some(w) = queue.pop_front() {
        for g in gens {
            let img = g.apply(&w, f);
            if span.insert(f, &img).is_some() {
                queue.push_back(img);
            }
        }
    }
    span
}

fn sweep_size(n: usize, f: &FieldCtx) -> Result<u64> {
    let cap = sweep_cap();
    let cap_err = Error::CapExceeded {
        what: "vector sweep",
        cap: cap as usize,
    };
    match arith::checked_pow(f.size(), n as u32) {
        Some(t) if t <= cap => Ok(t),
        _ => Err(cap_err),
    }
}

fn vector_from_index(mut i: u64, n: usize, f: &FieldCtx) -> Vector {
    let q = f.size();
    let mut v = vec![FieldElem::ZERO; n];
    for x in v.iter_mut().rev() {
        *x = f.from_index((i % q) as u32).expect("digit below q");
        i /= q;
    }
    v
}

/// Nonzero vectors of `GF(q)^n` in scan order (first coordinate most
/// significant); in `Lines` mode only those whose leading entry is 1.
pub fn sweep_vectors(n: usize, f: &FieldCtx, mode: SweepMode) -> Result<Vec<Vector>> {
    let total = sweep_size(n, f)?;
    let vs = (1..total).map(|i| vector_from_index(i, n, f));
    Ok(match mode {
        SweepMode::Full => vs.collect(),
        SweepMode::Lines => vs
            .filter(|v| v.iter().find(|x| !x.is_zero()) == Some(&FieldElem::ONE))
            .collect(),
    })
}

/// Irreducibility by spinning every swept vector.
pub fn is_irreducible_bruteforce(g: &MatrixGroup, mode: SweepMode) -> Result<bool> {
    let f = g.field();
    let vs = sweep_vectors(g.degree(), f, mode)?;
    Ok(vs.par_iter().all(|v| spin(v, g.generators(), f).is_full()))
}

/// Image of a subspace under `v ↦ v·g`.
fn image(u: &Subspace, g: &SquareMatrix, f: &FieldCtx) -> Subspace {
    Subspace::span(f, u.ambient(), u.basis().iter().map(|r| g.apply(r, f)))
}

/// An imprimitivity system: components in canonical order and, for each
/// generator, the induced permutation of the components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    components: Vec<Subspace>,
    action: Vec<Vec<usize>>,
}

impl BlockSystem {
    /// Checks that `components` form a system for the group generated by
    /// `gens` and records the action.
    pub fn new(mut components: Vec<Subspace>, gens: &[SquareMatrix], f: &FieldCtx) -> Option<Self> {
        components.sort();
        components.dedup();
        let n = components.first()?.ambient();
        if components.len() < 2 {
            return None;
        }
        let total = components
            .iter()
            .fold(Subspace::zero(n), |acc, c| acc.join(f, c));
        let dims: usize = components.iter().map(Subspace::dim).sum();
        if !total.is_full() || dims != n {
            return None;
        }
        let mut action = Vec::with_capacity(gens.len());
        for g in gens {
            let perm = components
                .iter()
                .map(|c| components.binary_search(&image(c, g, f)).ok())
                .collect::<Option<Vec<usize>>>()?;
            action.push(perm);
        }
        Some(BlockSystem { components, action })
    }

    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Permutation of the components induced by generator `i`.
    pub fn action(&self, i: usize) -> &[usize] {
        &self.action[i]
    }

    /// No non-identity element among `elements` fixes a component pointwise.
    pub fn is_faithful(&self, elements: &[SquareMatrix], f: &FieldCtx) -> bool {
        elements.iter().filter(|g| !g.is_identity()).all(|g| {
            self.components
                .iter()
                .all(|c| c.basis().iter().any(|r| g.apply(r, f) != *r))
        })
    }
}

/// All imprimitivity systems of an irreducible group.
///
/// A block stabiliser `K` has index `k` and acts irreducibly on its block,
/// so each block is the `K`-span of any of its lines.
pub fn find_block_systems(g: &MatrixGroup) -> Result<Vec<BlockSystem>> {
    let f = g.field();
    let n = g.degree();
    let t = g.table()?;
    let lines = sweep_vectors(n, f, SweepMode::Lines)?;
    let mut found: BTreeSet<Vec<Subspace>> = BTreeSet::new();
    let mut out = Vec::new();
    for k in arith::divisors(n as u64).into_iter().filter(|&k| k > 1) {
        if t.len() as u64 % k != 0 {
            continue;
        }
        let dim = n / k as usize;
        for sub in t.subgroups_of_index(k) {
            let kgens = t.matrices(&sub);
            let mut blocks: BTreeSet<Subspace> = BTreeSet::new();
            for v in &lines {
                if blocks.iter().any(|u| u.contains(f, v)) {
                    continue;
                }
                let u = spin(v, &kgens, f);
                if u.dim() == dim {
                    blocks.insert(u);
                }
            }
            for u in blocks {
                let Some(orbit) = subspace_orbit(&u, g.generators(), f, k as usize) else {
                    continue;
                };
                if orbit.len() != k as usize {
                    continue;
                }
                if let Some(sys) = BlockSystem::new(orbit, g.generators(), f) {
                    if found.insert(sys.components.clone()) {
                        out.push(sys);
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.components.cmp(&b.components))
    });
    Ok(out)
}

/// Orbit of `u` under the group generated by `gens`, or `None` once it
/// exceeds `limit`.
fn subspace_orbit(
    u: &Subspace,
    gens: &[SquareMatrix],
    f: &FieldCtx,
    limit: usize,
) -> Option<Vec<Subspace>> {
    let mut orbit = vec![u.clone()];
    let mut seen: BTreeSet<Subspace> = BTreeSet::from([u.clone()]);
    let mut i = 0;
    while i < orbit.len() {
        for g in gens {
            let w = image(&orbit[i], g, f);
            if seen.insert(w.clone()) {
                if orbit.len() == limit {
                    return None;
                }
                orbit.push(w);
            }
        }
        i += 1;
    }
    Some(orbit)
}

/// Burnside: the enveloping algebra is all of `Mat(n, F)`.
pub fn is_absolutely_irreducible(g: &MatrixGroup) -> Result<bool> {
    let n = g.degree();
    Ok(singer::enveloping_dimension(n, g.generators(), g.field())? == n * n)
}

/// Coefficient rows of the linear map `X ↦ aX - Xb` on `n×n` matrices
/// written as length-`n²` vectors.
fn intertwiner_rows(a: &SquareMatrix, b: &SquareMatrix, f: &FieldCtx) -> Vec<Vector> {
    let n = a.n();
    // entry (i, j) of aX - Xb is Σ_l a[i][l] X[l][j] - Σ_l X[i][l] b[l][j]
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![FieldElem::ZERO; n * n];
            for l in 0..n {
                let x = &mut row[l * n + j];
                *x = f.add(*x, a.get(i, l));
                let y = &mut row[i * n + l];
                *y = f.sub(*y, b.get(l, j));
            }
            rows.push(row);
        }
    }
    rows
}

/// `dim {X : Xg = gX for every generator g}`.
pub fn centralizer_dimension(g: &MatrixGroup) -> usize {
    let f = g.field();
    let n = g.degree();
    let rows: Vec<Vector> = g
        .generators()
        .iter()
        .flat_map(|m| intertwiner_rows(m, m, f))
        .collect();
    n * n - linalg::rank(f, &rows)
}

/// Restricts a space of matrices (rows of length `n²`) to those satisfying
/// `aX = Xb`.
fn restrict(space: &[Vector], a: &SquareMatrix, b: &SquareMatrix, f: &FieldCtx) -> Vec<Vector> {
    let eqs = intertwiner_rows(a, b, f);
    // coefficients c with Σ c_j B_j satisfying the equations
    let cols = space.len();
    let system: Vec<Vector> = eqs
        .iter()
        .map(|e| {
            space
                .iter()
                .map(|bj| {
                    e.iter()
                        .zip(bj)
                        .fold(FieldElem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
                })
                .collect()
        })
        .collect();
    linalg::nullspace(f, &system, cols)
        .into_iter()
        .map(|c| {
            let mut x = vec![FieldElem::ZERO; space[0].len()];
            for (cj, bj) in c.iter().zip(space) {
                if cj.is_zero() {
                    continue;
                }
                for (xi, &bi) in x.iter_mut().zip(bj) {
                    *xi = f.add(*xi, f.mul(*cj, bi));
                }
            }
            x
        })
        .collect()
}

struct Search<'a> {
    f: &'a FieldCtx,
    n: usize,
    gens: Vec<&'a SquareMatrix>,
    candidates: Vec<Vec<&'a SquareMatrix>>,
    budget: u64,
    cap: u64,
}

impl Search<'_> {
    fn spend(&mut self, units: u64) -> Result<()> {
        self.budget = self.budget.saturating_add(units);
        if self.budget > self.cap {
            return Err(Error::CapExceeded {
                what: "conjugacy search",
                cap: self.cap as usize,
            });
        }
        Ok(())
    }

    fn run(&mut self, depth: usize, space: Vec<Vector>) -> Result<Option<SquareMatrix>> {
        if depth == self.gens.len() {
            return self.invertible_in(&space);
        }
        for ci in 0..self.candidates[depth].len() {
            self.spend(1)?;
            let h = self.candidates[depth][ci];
            let next = restrict(&space, self.gens[depth], h, self.f);
            if next.is_empty() {
                continue;
            }
            if let Some(x) = self.run(depth + 1, next)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    /// First invertible combination of the basis, coefficients in scan order.
    fn invertible_in(&mut self, space: &[Vector]) -> Result<Option<SquareMatrix>> {
        let f = self.f;
        let q = f.size();
        let d = space.len();
        let total = arith::checked_pow(q, d as u32).ok_or(Error::CapExceeded {
            what: "conjugacy search",
            cap: self.cap as usize,
        })?;
        for i in 1..total {
            self.spend(1)?;
            let c = vector_from_index(i, d, f);
            let mut x = vec![FieldElem::ZERO; self.n * self.n];
            for (cj, bj) in c.iter().zip(space) {
                if cj.is_zero() {
                    continue;
                }
                for (xi, &bi) in x.iter_mut().zip(bj) {
                    *xi = f.add(*xi, f.mul(*cj, bi));
                }
            }
            let m = SquareMatrix::from_entries(self.n, x)?;
            if m.is_invertible(f) {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

/// An invertible `X` with `X⁻¹ G X = H`, or `None` once every
/// order-compatible assignment of generator images has been exhausted.
///
/// Images of `G`'s generators are drawn from `H` with matching element order
/// and matching membership in the derived subgroup.
pub fn conjugacy_search(
    g: &MatrixGroup,
    h: &MatrixGroup,
    cap: u64,
) -> Result<Option<SquareMatrix>> {
    if g.degree() != h.degree() || g.field() != h.field() {
        return Err(Error::Dimension("groups live in different GL(n, q)".into()));
    }
    let f = g.field();
    let n = g.degree();
    let tg = g.table()?;
    let th = h.table()?;
    if tg.len() != th.len() {
        return Ok(None);
    }
    let dg = tg.derived();
    let dh = th.derived();
    let gens: Vec<u32> = dedup_gens(&tg);
    let mut candidates = Vec::with_capacity(gens.len());
    for &x in &gens {
        let in_derived = dg.contains(x);
        let cands: Vec<&SquareMatrix> = (0..th.len() as u32)
            .filter(|&y| th.order(y) == tg.order(x) && dh.contains(y) == in_derived)
            .map(|y| th.matrix(y))
            .collect();
        if cands.is_empty() {
            return Ok(None);
        }
        candidates.push(cands);
    }
    let mut search = Search {
        f,
        n,
        gens: gens.iter().map(|&x| tg.matrix(x)).collect(),
        candidates,
        budget: 0,
        cap,
    };
    let full: Vec<Vector> = SquareMatrix::identity(n * n).rows();
    let x = search.run(0, full)?;
    if let Some(x) = &x {
        let x_inv = x.inverse(f)?;
        debug_assert!(g
            .generators()
            .iter()
            .all(|m| th.index_of(&m.conjugate_by(x, &x_inv, f)).is_some()));
    }
    Ok(x)
}

/// Distinct non-identity generators of the table.
fn dedup_gens(t: &GroupTable) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::new();
    for &x in t.gens() {
        if x != 0 && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Every abelian normal subgroup is cyclic.
pub fn abelian_normal_subgroups_cyclic(g: &MatrixGroup) -> Result<bool> {
    let t = g.table()?;
    Ok(t.subgroups(t.len() as u64)
        .iter()
        .filter(|s| t.is_normal(s) && t.is_abelian(s))
        .all(|s| t.is_cyclic(s)))
}

/// Every subgroup of index 2 is irreducible.
pub fn index2_subgroups_irreducible(g: &MatrixGroup) -> Result<bool> {
    let t = g.table()?;
    for s in t.subgroups_of_index(2) {
        let sub = g.subgroup(t.matrices(&s))?;
        if !is_irreducible_bruteforce(&sub, SweepMode::Lines)? {
            return Ok(false);
        }
    }
    Ok(true)
}
