use std::sync::{Arc, OnceLock};

use nilprim::arith;
use nilprim::classify::{self, ClassRecord};
use nilprim::construct;
use nilprim::matgrp::{self, MatrixGroup, SquareMatrix};
use nilprim::oracle::{self, SweepMode};
use nilprim::singer;
use nilprim::{FieldCtx, FieldElem};
use proptest::prelude::*;

fn field(q: u64) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::of_size(q).unwrap())
}

fn records(n: usize, q: u64) -> &'static [ClassRecord] {
    static R23: OnceLock<Vec<ClassRecord>> = OnceLock::new();
    static R27: OnceLock<Vec<ClassRecord>> = OnceLock::new();
    static R63: OnceLock<Vec<ClassRecord>> = OnceLock::new();
    let cell = match (n, q) {
        (2, 3) => &R23,
        (2, 7) => &R27,
        (6, 3) => &R63,
        _ => unreachable!(),
    };
    cell.get_or_init(|| classify::enumerate_classes(n, q).unwrap())
}

fn elem(f: &FieldCtx, i: u32) -> FieldElem {
    f.from_index(i % f.size() as u32).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(q in prop::sample::select(vec![3u64, 7, 9, 25, 27, 81]), a: u32, b: u32, c: u32) {
        let f = FieldCtx::of_size(q).unwrap();
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, q - 1), f.one());
        } else {
            prop_assert!(f.inv(a).is_err());
        }
        prop_assert_eq!(f.pow(a, q), a);
    }

    #[test]
    fn isotype_is_conjugation_invariant(
        which in 0usize..64,
        set in prop::sample::select(vec![(2usize, 3u64), (2, 7), (6, 3)]),
        entries in prop::collection::vec(any::<u32>(), 36),
    ) {
        let rs = records(set.0, set.1);
        let r = &rs[which % rs.len()];
        let f = r.group.field();
        let n = set.0;
        let x = SquareMatrix::from_entries(n, entries[..n * n].iter().map(|&i| elem(f, i)).collect()).unwrap();
        prop_assume!(x.is_invertible(f));
        let h = r.group.conjugate_by(&x).unwrap();
        prop_assert_eq!(matgrp::recognize_isotype(&h).unwrap(), r.isotype);
        prop_assert!(classify::is_nilpotent_primitive(&h).unwrap().is_primitive());
        let d = matgrp::derived_subgroup(&h).unwrap();
        let t = d.table().unwrap();
        prop_assert!(t.is_cyclic(&t.whole()));
    }

    #[test]
    fn spin_is_invariant_and_idempotent(
        which in 0usize..64,
        set in prop::sample::select(vec![(2usize, 7u64), (6, 3)]),
        v in prop::collection::vec(any::<u32>(), 6),
        w in prop::collection::vec(any::<u32>(), 6),
    ) {
        let rs = records(set.0, set.1);
        let r = &rs[which % rs.len()];
        let f = r.group.field();
        let n = set.0;
        let v: Vec<FieldElem> = v[..n].iter().map(|&i| elem(f, i)).collect();
        let w: Vec<FieldElem> = w[..n].iter().map(|&i| elem(f, i)).collect();
        let gens = r.generators();
        let s = oracle::spin(&v, gens, f);
        prop_assert!(v.iter().all(|x| x.is_zero()) || s.contains(f, &v));
        for b in s.basis() {
            for g in gens {
                prop_assert!(s.contains(f, &g.apply(b, f)));
            }
            prop_assert!(s.contains_subspace(f, &oracle::spin(b, gens, f)));
        }
        // Monotone: spinning a vector inside the span stays inside it.
        if s.contains(f, &w) {
            prop_assert!(s.contains_subspace(f, &oracle::spin(&w, gens, f)));
        }
        // The groups are irreducible, so any nonzero vector spins to V.
        prop_assert_eq!(s.is_full(), v.iter().any(|x| !x.is_zero()));
    }
}

#[test]
fn irreducible_cyclic_groups_have_full_degree_envelope() {
    for (n, q) in [(2usize, 3u64), (2, 7), (3, 3), (6, 3)] {
        let f = field(q);
        let qn = q.pow(n as u32);
        for d in arith::divisors(qn - 1) {
            if !singer::is_irreducible_cyclic(d, n, q).unwrap() {
                continue;
            }
            let g = singer::canonical_abelian(d, n, &f).unwrap();
            assert_eq!(
                singer::enveloping_dimension(n, g.generators(), &f).unwrap(),
                n,
                "d = {d} at ({n},{q})"
            );
        }
    }
}

#[test]
fn criteria_agree_with_oracles_in_degree_six() {
    let f = field(3);
    for d in arith::divisors(728) {
        if !singer::is_irreducible_cyclic(d, 6, 3).unwrap() {
            continue;
        }
        let g = singer::canonical_abelian(d, 6, &f).unwrap();
        assert!(oracle::is_irreducible_bruteforce(&g, SweepMode::Lines).unwrap());
        let blocks = !oracle::find_block_systems(&g).unwrap().is_empty();
        assert_eq!(
            blocks,
            singer::is_imprimitive_cyclic(d, 6, 3).unwrap(),
            "d = {d}"
        );
    }
}

#[test]
fn irreducible_cyclic_subgroups_of_gl23_are_conjugate_by_order() {
    let f = field(3);
    let gl = MatrixGroup::new(
        f.clone(),
        2,
        vec![
            SquareMatrix::from_ints(&f, &[&[1, 1], &[0, 1]]).unwrap(),
            SquareMatrix::from_ints(&f, &[&[1, 0], &[1, 1]]).unwrap(),
            SquareMatrix::from_ints(&f, &[&[-1, 0], &[0, 1]]).unwrap(),
        ],
    )
    .unwrap();
    let t = gl.table().unwrap();
    let mut seen = 0;
    for x in 0..t.len() as u32 {
        let c = MatrixGroup::new(f.clone(), 2, vec![t.matrix(x).clone()]).unwrap();
        if !oracle::is_irreducible_bruteforce(&c, SweepMode::Full).unwrap() {
            continue;
        }
        let rep = singer::canonical_abelian(t.order(x), 2, &f).unwrap();
        assert!(oracle::conjugacy_search(&rep, &c, oracle::SEARCH_CAP)
            .unwrap()
            .is_some());
        seen += 1;
    }
    // Elements of orders 3 and 6 are reducible; those of order 4 and 8 are not.
    assert!(seen > 0);
}

#[test]
fn abelian_block_sizes_are_closed_under_divisors() {
    for (n, q) in [(2usize, 3u64), (2, 7), (3, 3), (6, 3)] {
        let f = field(q);
        for d in arith::divisors(q.pow(n as u32) - 1) {
            if !singer::is_irreducible_cyclic(d, n, q).unwrap() {
                continue;
            }
            let g = singer::canonical_abelian(d, n, &f).unwrap();
            let sizes: Vec<usize> = oracle::find_block_systems(&g)
                .unwrap()
                .iter()
                .map(|s| s.len())
                .collect();
            for &k in &sizes {
                for r in arith::divisors(k as u64) {
                    if r > 1 {
                        assert!(
                            sizes.contains(&(r as usize)),
                            "d = {d} at ({n},{q}): {k} but not {r}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn blowup_preserves_order_and_isotype() {
    // GF(27) is the only small extension field with q = 3 mod 4.
    let top = field(27);
    let base = field(3);
    let mut checked = 0;
    for (kind, s) in construct::admissible_sylows_gl2(27) {
        for c in [1u64, 13] {
            let h = construct::nilprim_gl2(&top, kind, Some(s), c).unwrap();
            let b = construct::galois_blowup(&h, &base).unwrap();
            assert_eq!(b.degree(), 6);
            assert_eq!(b.order(1 << 12).unwrap(), h.order(1 << 12).unwrap());
            assert_eq!(
                matgrp::recognize_isotype(&b).unwrap(),
                matgrp::recognize_isotype(&h).unwrap()
            );
            checked += 1;
        }
    }
    assert!(checked >= 2);
}
