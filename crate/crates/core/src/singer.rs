//! Singer cycles, enveloping algebras, and the divisibility criteria for
//! irreducibility and primitivity of cyclic subgroups of GL(n, q).

use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::{Extension, FieldCtx};
use crate::linalg::Subspace;
use crate::matgrp::{MatrixGroup, SquareMatrix};

/// GF(q^n) over GF(q), in the basis `1, θ, …, θ^(n-1)`.
pub fn singer_extension(n: usize, f: &Arc<FieldCtx>) -> Result<Extension> {
    if n == 0 {
        return Err(Error::Dimension("degree must be positive".into()));
    }
    let k = f
        .k()
        .checked_mul(n as u32)
        .ok_or(Error::FieldTooLarge(u128::MAX))?;
    let top = Arc::new(FieldCtx::new(f.p(), k, None)?);
    Extension::new(f.clone(), top)
}

/// Companion matrix of the minimal polynomial of a primitive element of
/// GF(q^n); it has order `q^n - 1`.
pub fn singer_cycle(n: usize, f: &Arc<FieldCtx>) -> Result<SquareMatrix> {
    if n == 1 {
        return Ok(SquareMatrix::scalar(1, f.primitive()));
    }
    let ext = singer_extension(n, f)?;
    let top = ext.top();
    SquareMatrix::from_entries(n, ext.mult_matrix(top.primitive()))
}

/// Matrix `Φ` of the `q`-power map in the companion basis, so that
/// `Φ⁻¹ S Φ = S^q` for `S = singer_cycle(n, f)`.
pub fn singer_normalizer_frobenius(n: usize, f: &Arc<FieldCtx>) -> Result<SquareMatrix> {
    if n < 2 {
        return Err(Error::Dimension("Frobenius normaliser needs n >= 2".into()));
    }
    let ext = singer_extension(n, f)?;
    SquareMatrix::from_entries(n, ext.frobenius_matrix())
}

/// The `F`-linear span of the group generated by some matrices.
#[derive(Clone, Debug)]
pub struct EnvelopingAlgebra {
    n: usize,
    basis: Vec<SquareMatrix>,
}

impl EnvelopingAlgebra {
    /// Saturates `span{1}` under right multiplication by the generators.
    pub fn new(n: usize, gens: &[SquareMatrix], f: &FieldCtx) -> Result<Self> {
        if gens.iter().any(|g| g.n() != n) {
            return Err(Error::Dimension("generators of mixed degree".into()));
        }
        let mut span = Subspace::zero(n * n);
        let id = SquareMatrix::identity(n);
        span.insert(f, id.entries());
        let mut basis = vec![id];
        let mut i = 0;
        while i < basis.len() {
            for g in gens {
                let prod = basis[i].mul(g, f);
                if span.insert(f, prod.entries()).is_some() {
                    basis.push(prod);
                }
            }
            i += 1;
        }
        Ok(EnvelopingAlgebra { n, basis })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[SquareMatrix] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn enveloping_dimension(n: usize, gens: &[SquareMatrix], f: &FieldCtx) -> Result<usize> {
    Ok(EnvelopingAlgebra::new(n, gens, f)?.dimension())
}

fn q_pow_minus_one(q: u64, e: usize) -> Result<u128> {
    (q as u128)
        .checked_pow(e as u32)
        .map(|x| x - 1)
        .ok_or(Error::FieldTooLarge(u128::MAX))
}

fn check_divides(d: u64, n: usize, q: u64) -> Result<()> {
    if n == 0 || q < 2 {
        return Err(Error::Dimension(format!("bad degree/field ({n}, {q})")));
    }
    if d == 0 || q_pow_minus_one(q, n)? % d as u128 != 0 {
        return Err(Error::Precondition(format!(
            "{d} does not divide {q}^{n} - 1"
        )));
    }
    Ok(())
}

/// A cyclic subgroup of order `d` of `GF(q^n)^×` is irreducible iff `d`
/// divides no `q^m - 1` with `m` a proper divisor of `n`.
pub fn is_irreducible_cyclic(d: u64, n: usize, q: u64) -> Result<bool> {
    check_divides(d, n, q)?;
    for m in arith::divisors(n as u64) {
        if (m as usize) < n && q_pow_minus_one(q, m as usize)? % d as u128 == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An irreducible cyclic group of order `d` is imprimitive iff
/// `d | k(q^(n/k) - 1)` for some prime `k | n`.
pub fn is_imprimitive_cyclic(d: u64, n: usize, q: u64) -> Result<bool> {
    if !is_irreducible_cyclic(d, n, q)? {
        return Err(Error::Precondition(format!(
            "cyclic order {d} is reducible in GL({n}, {q})"
        )));
    }
    for k in arith::prime_divisors(n as u64) {
        let bound = q_pow_minus_one(q, n / k as usize)? * k as u128;
        if bound % d as u128 == 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn is_primitive_cyclic(d: u64, n: usize, q: u64) -> Result<bool> {
    Ok(is_irreducible_cyclic(d, n, q)? && !is_imprimitive_cyclic(d, n, q)?)
}

/// `⟨S^((q^n - 1)/d)⟩`, the representative of the unique class of
/// irreducible cyclic subgroups of order `d`.
pub fn canonical_abelian(d: u64, n: usize, f: &Arc<FieldCtx>) -> Result<MatrixGroup> {
    if !is_irreducible_cyclic(d, n, f.size())? {
        return Err(Error::Precondition(format!(
            "cyclic order {d} is reducible in GL({n}, {})",
            f.size()
        )));
    }
    let s = singer_cycle(n, f)?;
    let e = q_pow_minus_one(f.size(), n)? / d as u128;
    MatrixGroup::new(f.clone(), n, vec![s.pow(e, f)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::matrix_order;

    fn gf(q: u64) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::of_size(q).unwrap())
    }

    #[test]
    fn singer_orders() {
        let f = gf(3);
        let s1 = singer_cycle(1, &f).unwrap();
        assert_eq!(s1.format(&f), "2");
        assert_eq!(matrix_order(&s1, &f, 1 << 20).unwrap(), 2);
        for (n, want) in [(2, 8), (3, 26), (6, 728)] {
            let s = singer_cycle(n, &f).unwrap();
            assert_eq!(matrix_order(&s, &f, 1 << 20).unwrap(), want);
        }
        let f9 = gf(9);
        assert_eq!(
            matrix_order(&singer_cycle(2, &f9).unwrap(), &f9, 1 << 20).unwrap(),
            80
        );
    }

    #[test]
    fn singer_is_companion() {
        let f = gf(7);
        let s = singer_cycle(3, &f).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                let want = if j == i + 1 { f.one() } else { f.zero() };
                assert_eq!(s.get(i, j), want);
            }
        }
    }

    #[test]
    fn enveloping_examples() {
        let f = gf(3);
        let s = singer_cycle(2, &f).unwrap();
        assert_eq!(enveloping_dimension(2, &[s], &f).unwrap(), 2);
        assert_eq!(enveloping_dimension(2, &[], &f).unwrap(), 1);
        let a = SquareMatrix::from_ints(&f, &[&[0, 1], &[-1, 0]]).unwrap();
        let g = SquareMatrix::from_ints(&f, &[&[1, 1], &[1, -1]]).unwrap();
        assert_eq!(enveloping_dimension(2, &[a, g], &f).unwrap(), 4);
    }

    #[test]
    fn enveloping_basis_is_closed() {
        let f = gf(3);
        let s = singer_cycle(3, &f).unwrap();
        let alg = EnvelopingAlgebra::new(3, std::slice::from_ref(&s), &f).unwrap();
        assert_eq!(alg.dimension(), 3);
        let span = Subspace::span(&f, 9, alg.basis().iter().map(|m| m.entries().to_vec()));
        for a in alg.basis() {
            for b in alg.basis() {
                assert!(span.contains(&f, a.mul(b, &f).entries()));
            }
        }
    }

    #[test]
    fn cyclic_criteria() {
        assert!(is_irreducible_cyclic(8, 2, 3).unwrap());
        assert!(!is_irreducible_cyclic(2, 2, 3).unwrap());
        // 13 | 3^3 - 1, so order 13 is reducible in degree 6 but not in degree 3
        assert!(!is_irreducible_cyclic(13, 6, 3).unwrap());
        assert!(is_irreducible_cyclic(13, 3, 3).unwrap());
        assert!(!is_irreducible_cyclic(26, 6, 3).unwrap());
        assert!(is_irreducible_cyclic(52, 6, 3).unwrap());
        assert!(is_irreducible_cyclic(5, 2, 3).is_err());

        assert!(is_imprimitive_cyclic(4, 2, 3).unwrap());
        assert!(!is_imprimitive_cyclic(8, 2, 3).unwrap());
        assert!(is_imprimitive_cyclic(52, 6, 3).unwrap());
        assert!(is_imprimitive_cyclic(13, 6, 3).is_err());
        assert!(!is_imprimitive_cyclic(13, 3, 3).unwrap());
        assert!(!is_imprimitive_cyclic(56, 6, 3).unwrap());
        assert!(is_imprimitive_cyclic(2, 2, 3).is_err());

        assert!(is_primitive_cyclic(8, 2, 3).unwrap());
        assert!(!is_primitive_cyclic(13, 6, 3).unwrap());
        assert!(is_primitive_cyclic(13, 3, 3).unwrap());
        assert!(is_primitive_cyclic(104, 6, 3).unwrap());
        assert!(is_primitive_cyclic(728, 6, 3).unwrap());
    }

    #[test]
    fn canonical_abelian_examples() {
        let f = gf(3);
        let s = singer_cycle(2, &f).unwrap();
        let g = canonical_abelian(8, 2, &f).unwrap();
        assert_eq!(g.generators()[0], s);
        let g4 = canonical_abelian(4, 2, &f).unwrap();
        assert_eq!(g4.generators()[0], s.pow(2, &f));
        assert_eq!(g4.order(1 << 20).unwrap(), 4);
        let s3 = singer_cycle(3, &f).unwrap();
        let g13 = canonical_abelian(13, 3, &f).unwrap();
        assert_eq!(g13.generators()[0], s3.pow(2, &f));
        assert_eq!(g13.order(1 << 20).unwrap(), 13);
        let s6 = singer_cycle(6, &f).unwrap();
        let g52 = canonical_abelian(52, 6, &f).unwrap();
        assert_eq!(g52.generators()[0], s6.pow(14, &f));
        assert!(canonical_abelian(13, 6, &f).is_err());
        assert!(canonical_abelian(2, 2, &f).is_err());
    }

    #[test]
    fn frobenius_normaliser() {
        for (n, q) in [(2usize, 3u64), (3, 3), (6, 3), (2, 9)] {
            let f = gf(q);
            let s = singer_cycle(n, &f).unwrap();
            let phi = singer_normalizer_frobenius(n, &f).unwrap();
            let phi_inv = phi.inverse(&f).unwrap();
            assert_eq!(s.conjugate_by(&phi, &phi_inv, &f), s.pow(q as u128, &f));
            // Φ^n = 1, so Φ has order n modulo scalars
            assert!(phi.pow(n as u128, &f).is_identity());
        }
        let f = gf(3);
        let phi = singer_normalizer_frobenius(2, &f).unwrap();
        assert!(phi.pow(2, &f).scalar_value().is_some());
    }
}
