//! Explicit generators for the nilpotent primitive groups: Sylow 2-subgroups
//! of GL(2, q), their maximal-class subgroups, the degree-2 groups, the
//! `Q8 × C` groups of degree `2m`, and blow-ups from GF(q^s) to GF(q).

use std::sync::Arc;

use crate::arith;
use crate::classify::{self, VerdictKind};
use crate::error::{Error, Result};
use crate::ff::{Extension, FieldCtx};
use crate::matgrp::{MatrixGroup, SquareMatrix, Sylow2Kind};
use crate::singer;

fn require_3_mod_4(f: &FieldCtx) -> Result<()> {
    if f.size() % 4 != 3 {
        return Err(Error::Inadmissible(format!(
            "q = {} is not 3 mod 4; no nonabelian nilpotent primitive groups",
            f.size()
        )));
    }
    Ok(())
}

/// `t` with `2^t ∥ q + 1`.
pub fn two_exponent(q: u64) -> u32 {
    arith::two_adic(q + 1)
}

/// Generators `x`, `y` of a semidihedral Sylow 2-subgroup of GL(2, q) of
/// order `2^(t+2)`, and `t`.
///
/// With `M` the companion matrix of a primitive element `ω` of GF(q²),
/// `x = M^((q²-1)/2^(t+1))` and `y = [[1, 0], [ω + ω^q, -1]]`.
pub fn sylow2_gl2(f: &Arc<FieldCtx>) -> Result<(SquareMatrix, SquareMatrix, u32)> {
    require_3_mod_4(f)?;
    let q = f.size();
    let t = two_exponent(q);
    let m = singer::singer_cycle(2, f)?;
    let trace = m.get(1, 1);
    let e = (q as u128 * q as u128 - 1) >> (t + 1);
    let x = m.pow(e, f);
    let y = SquareMatrix::from_entries(2, vec![f.one(), f.zero(), trace, f.neg(f.one())])?;
    Ok((x, y, t))
}

/// Dihedral or generalised quaternion subgroup of order `2^s`,
/// `3 ≤ s ≤ t + 1`, inside the Sylow 2-subgroup of [`sylow2_gl2`].
///
/// Both contain `a = x^(2^(t+2-s))`; the dihedral group adds `y` and the
/// quaternion group adds `xy`, whose square is `x^(2^t) = -1`.
pub fn maximal_class_subgroup(f: &Arc<FieldCtx>, kind: Sylow2Kind, s: u32) -> Result<MatrixGroup> {
    let (x, y, t) = sylow2_gl2(f)?;
    if !(3..=t + 1).contains(&s) {
        return Err(Error::Inadmissible(format!(
            "order 2^{s} outside 2^3..2^{} for q = {}",
            t + 1,
            f.size()
        )));
    }
    let a = x.pow(1u128 << (t + 2 - s), f);
    let b = match kind {
        Sylow2Kind::Dihedral => y,
        Sylow2Kind::GeneralisedQuaternion => x.mul(&y, f),
        Sylow2Kind::Quaternion8 if s == 3 => x.mul(&y, f),
        _ => {
            return Err(Error::Inadmissible(format!(
                "{kind:?} of order 2^{s} is not a dihedral or quaternion subgroup"
            )))
        }
    };
    MatrixGroup::new(f.clone(), 2, vec![a, b])
}

/// Normalises and checks a degree-2 Sylow request, returning `(kind, s)`.
pub fn admissible_gl2(q: u64, kind: Sylow2Kind, s: Option<u32>) -> Result<(Sylow2Kind, u32)> {
    if q % 4 != 3 {
        return Err(Error::Inadmissible(format!("q = {q} is not 3 mod 4")));
    }
    let t = two_exponent(q);
    match (kind, s) {
        (Sylow2Kind::Quaternion8, None | Some(3))
        | (Sylow2Kind::GeneralisedQuaternion, Some(3)) => Ok((Sylow2Kind::Quaternion8, 3)),
        (Sylow2Kind::Dihedral, Some(3)) => Err(Error::Monomial),
        (Sylow2Kind::Dihedral | Sylow2Kind::GeneralisedQuaternion, Some(s))
            if (4..=t + 1).contains(&s) =>
        {
            Ok((kind, s))
        }
        (Sylow2Kind::Semidihedral, None) => Ok((kind, t + 2)),
        (Sylow2Kind::Semidihedral, Some(s)) if s == t + 2 => Ok((kind, s)),
        _ => Err(Error::Inadmissible(format!(
            "{kind:?} with s = {s:?} is not admissible for q = {q} (t = {t})"
        ))),
    }
}

/// All admissible degree-2 Sylow requests for `q`, in a fixed order.
pub fn admissible_sylows_gl2(q: u64) -> Vec<(Sylow2Kind, u32)> {
    if q % 4 != 3 {
        return Vec::new();
    }
    let t = two_exponent(q);
    let mut out = vec![(Sylow2Kind::Quaternion8, 3)];
    for s in 4..=t + 1 {
        out.push((Sylow2Kind::GeneralisedQuaternion, s));
        out.push((Sylow2Kind::Dihedral, s));
    }
    out.push((Sylow2Kind::Semidihedral, t + 2));
    out
}

/// Odd `c` dividing `q - 1`.
pub fn scalar_orders_gl2(q: u64) -> Vec<u64> {
    arith::divisors(q - 1)
        .into_iter()
        .filter(|c| c % 2 == 1)
        .collect()
}

/// `G₂ × C ≤ GL(2, q)` with `C` the scalars of odd order `c_order`.
pub fn nilprim_gl2(
    f: &Arc<FieldCtx>,
    kind: Sylow2Kind,
    s: Option<u32>,
    c_order: u64,
) -> Result<MatrixGroup> {
    let q = f.size();
    let (kind, s) = admissible_gl2(q, kind, s)?;
    if c_order % 2 == 0 || (q - 1) % c_order != 0 {
        return Err(Error::Inadmissible(format!(
            "scalar order {c_order} must be odd and divide {}",
            q - 1
        )));
    }
    let mut gens = if kind == Sylow2Kind::Semidihedral {
        let (x, y, _) = sylow2_gl2(f)?;
        vec![x, y]
    } else {
        maximal_class_subgroup(f, kind, s)?.generators().to_vec()
    };
    if c_order > 1 {
        let c = f.pow(f.primitive(), (q - 1) / c_order);
        gens.push(SquareMatrix::scalar(2, c));
    }
    MatrixGroup::new(f.clone(), 2, gens)
}

/// Generators of `Q8 × C ≤ GL(2m, q)`: `a = [[0, 1], [-1, 0]]` and
/// `g = [[e, f], [f, -e]]` in `m×m` blocks with `e² + f² = -1` in `F[x]`,
/// and `diag(x, x)` for `x` generating the primitive cyclic group of order
/// `c_order` in GL(m, q).
pub fn q8_times_c(m: usize, f: &Arc<FieldCtx>, c_order: u64) -> Result<MatrixGroup> {
    require_3_mod_4(f)?;
    if m < 3 || m % 2 == 0 {
        return Err(Error::Inadmissible(format!("m = {m} must be odd and > 1")));
    }
    let q = f.size();
    if c_order % 2 == 0 || !singer::is_primitive_cyclic(c_order, m, q).unwrap_or(false) {
        return Err(Error::Inadmissible(format!(
            "{c_order} is not an odd primitive cyclic order in GL({m}, {q})"
        )));
    }
    let ext = singer::singer_extension(m, f)?;
    let top = ext.top().clone();
    let qm = top.size();
    let beta = top.pow(top.primitive(), (qm - 1) / c_order);
    let r = |alpha| SquareMatrix::from_entries(m, ext.mult_matrix(alpha));
    let x = r(beta)?;
    let (e, fe) = top.sum_of_two_squares_minus_one()?;
    let (e, fe) = (r(e)?, r(fe)?);
    let one = SquareMatrix::identity(m);
    let zero = SquareMatrix::zero(m);
    let a = SquareMatrix::from_blocks(&[vec![zero.clone(), one.clone()], vec![one.neg(f), zero]])?;
    let g = SquareMatrix::from_blocks(&[vec![e.clone(), fe.clone()], vec![fe, e.neg(f)]])?;
    let c = SquareMatrix::block_diag(&[&x, &x]);
    MatrixGroup::new(f.clone(), 2 * m, vec![a, g, c])
}

/// Replaces every entry `α` of `h`'s generators by the matrix of
/// multiplication by `α` on GF(q^s) over `base`.
pub fn galois_blowup(h: &MatrixGroup, base: &Arc<FieldCtx>) -> Result<MatrixGroup> {
    let ext = Extension::new(base.clone(), h.field().clone())?;
    let s = ext.degree();
    if s < 2 {
        return Err(Error::Precondition(
            "blow-up needs a proper extension".into(),
        ));
    }
    let r = h.degree();
    let gens = h
        .generators()
        .iter()
        .map(|g| {
            let grid = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| SquareMatrix::from_entries(s, ext.mult_matrix(g.get(i, j))))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            SquareMatrix::from_blocks(&grid)
        })
        .collect::<Result<Vec<_>>>()?;
    MatrixGroup::new(base.clone(), r * s, gens)
}

/// Blow-up to GL(2m, q) of `nilprim_gl2` over GF(q^m), kept only when it
/// is irreducible over GF(q) and primitive.
pub fn nilprim_gl2m(
    m: usize,
    f: &Arc<FieldCtx>,
    kind: Sylow2Kind,
    s: Option<u32>,
    c_order: u64,
) -> Result<MatrixGroup> {
    require_3_mod_4(f)?;
    if m < 3 || m % 2 == 0 {
        return Err(Error::Inadmissible(format!("m = {m} must be odd and > 1")));
    }
    let big = Arc::new(FieldCtx::new(f.p(), f.k() * m as u32, None)?);
    let h = nilprim_gl2(&big, kind, s, c_order)?;
    let g = galois_blowup(&h, f)?;
    let dim = singer::enveloping_dimension(2 * m, g.generators(), f)?;
    if dim != 4 * m {
        return Err(Error::ReducibleBlowup(format!(
            "enveloping dimension {dim} over GF({}) instead of {}",
            f.size(),
            4 * m
        )));
    }
    let verdict = classify::is_nilpotent_primitive(&g)?;
    if verdict.verdict != VerdictKind::Primitive {
        return Err(Error::ReducibleBlowup(format!(
            "blow-up is {:?}, not primitive",
            verdict.verdict
        )));
    }
    Ok(g)
}
