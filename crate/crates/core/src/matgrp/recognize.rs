//! Nilpotency, the `G₂ × C` split, and recognition of the Sylow 2-subgroup
//! among cyclic, Q8, generalised quaternion, dihedral and semidihedral
//! 2-groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GroupTable, MatrixGroup, Subgroup};
use crate::arith;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sylow2Kind {
    Trivial,
    Cyclic,
    Quaternion8,
    GeneralisedQuaternion,
    Dihedral,
    Semidihedral,
}

impl Sylow2Kind {
    pub fn short_name(self) -> &'static str {
        match self {
            Sylow2Kind::Trivial => "1",
            Sylow2Kind::Cyclic => "C",
            Sylow2Kind::Quaternion8 => "Q",
            Sylow2Kind::GeneralisedQuaternion => "Q",
            Sylow2Kind::Dihedral => "D",
            Sylow2Kind::Semidihedral => "SD",
        }
    }
}

/// Isomorphism type `G₂ × C_odd` of a group in the classified family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsoType {
    pub sylow2_kind: Sylow2Kind,
    pub sylow2_order: u64,
    pub odd_order: u64,
}

impl IsoType {
    pub fn new(sylow2_kind: Sylow2Kind, sylow2_order: u64, odd_order: u64) -> Result<Self> {
        let pow2 = sylow2_order.is_power_of_two();
        let ok = odd_order % 2 == 1
            && pow2
            && match sylow2_kind {
                Sylow2Kind::Trivial => sylow2_order == 1,
                Sylow2Kind::Cyclic => sylow2_order >= 2,
                Sylow2Kind::Quaternion8 => sylow2_order == 8,
                Sylow2Kind::Dihedral => sylow2_order >= 8,
                Sylow2Kind::GeneralisedQuaternion | Sylow2Kind::Semidihedral => sylow2_order >= 16,
            };
        if !ok {
            return Err(Error::Inadmissible(format!(
                "no isomorphism type {sylow2_kind:?} of order {sylow2_order} with odd part {odd_order}"
            )));
        }
        Ok(IsoType {
            sylow2_kind,
            sylow2_order,
            odd_order,
        })
    }

    pub fn order(&self) -> u64 {
        self.sylow2_order * self.odd_order
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self.sylow2_kind, Sylow2Kind::Trivial | Sylow2Kind::Cyclic)
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let two = match self.sylow2_kind {
            Sylow2Kind::Trivial => None,
            k => Some(format!("{}{}", k.short_name(), self.sylow2_order)),
        };
        let odd = (self.odd_order > 1).then(|| format!("C{}", self.odd_order));
        match (two, odd) {
            (None, None) => write!(f, "1"),
            (Some(a), None) | (None, Some(a)) => write!(f, "{a}"),
            (Some(a), Some(b)) => write!(f, "{a} x {b}"),
        }
    }
}

/// Nilpotent decomposition of a closed group together with the elements that
/// witness the isomorphism type.
#[derive(Clone, Debug)]
pub struct Structure {
    pub isotype: IsoType,
    pub sylow2: Subgroup,
    pub odd: Subgroup,
    /// Generator of the odd part (`0`, the identity, when trivial).
    pub odd_gen: u32,
    /// Generator of a cyclic subgroup of index at most 2 in the Sylow 2-subgroup.
    pub cyclic_gen: Option<u32>,
    /// An element of the Sylow 2-subgroup outside `⟨cyclic_gen⟩`.
    pub outside: Option<u32>,
}

/// Sylow 2-subgroup and odd Hall subgroup of a nilpotent group, and a
/// generator of the odd part.
pub(crate) fn nilpotent_parts(t: &GroupTable) -> Result<(Subgroup, Subgroup, u32)> {
    let n = t.len() as u64;
    for (r, e) in arith::factorize(n) {
        if t.p_elements(r).len() as u64 != r.pow(e) {
            return Err(Error::NotNilpotent);
        }
    }
    let two = t.p_elements(2);
    let odd: Vec<u32> = (0..t.len() as u32)
        .filter(|&x| t.order(x) % 2 == 1)
        .collect();
    let odd_order = odd.len() as u64;
    let odd_gen = odd
        .iter()
        .copied()
        .filter(|&x| t.order(x) == odd_order)
        .min_by(|&a, &b| t.matrix(a).cmp(t.matrix(b)))
        .ok_or(Error::OddPartNotCyclic)?;
    let s = t.generate(&t.greedy_gens(&two));
    let c = if odd_order > 1 {
        t.generate(&[odd_gen])
    } else {
        t.trivial()
    };
    Ok((s, c, odd_gen))
}

/// Full recognition on a Cayley table, keeping the witnessing elements.
pub fn analyze(t: &GroupTable) -> Result<Structure> {
    let (s, c, odd_gen) = nilpotent_parts(t)?;
    let s_order = s.len() as u64;
    let odd_order = c.len() as u64;
    let least =
        |xs: &mut dyn Iterator<Item = u32>| xs.min_by(|&a, &b| t.matrix(a).cmp(t.matrix(b)));

    if s_order == 1 {
        return Ok(Structure {
            isotype: IsoType::new(Sylow2Kind::Trivial, 1, odd_order)?,
            sylow2: s,
            odd: c,
            odd_gen,
            cyclic_gen: None,
            outside: None,
        });
    }
    if let Some(a) = least(
        &mut s
            .members()
            .iter()
            .copied()
            .filter(|&x| t.order(x) == s_order),
    ) {
        return Ok(Structure {
            isotype: IsoType::new(Sylow2Kind::Cyclic, s_order, odd_order)?,
            sylow2: s,
            odd: c,
            odd_gen,
            cyclic_gen: Some(a),
            outside: None,
        });
    }
    let half = s_order / 2;
    if half < 4 {
        return Err(Error::NotInFamily);
    }
    let a = least(&mut s.members().iter().copied().filter(|&x| t.order(x) == half))
        .ok_or(Error::NotInFamily)?;
    let cyc = t.generate(&[a]);
    let g = least(&mut s.members().iter().copied().filter(|&x| !cyc.contains(x)))
        .expect("index-2 subgroup is proper");
    let conj = t.conj(a, g);
    let j = (0..half)
        .find(|&j| t.pow(a, j) == conj)
        .expect("⟨a⟩ is normal of index 2");
    let g2 = t.mul(g, g);
    let kind = if j == half - 1 {
        if g2 == 0 {
            Sylow2Kind::Dihedral
        } else if g2 == t.pow(a, half / 2) {
            if s_order == 8 {
                Sylow2Kind::Quaternion8
            } else {
                Sylow2Kind::GeneralisedQuaternion
            }
        } else {
            return Err(Error::NotInFamily);
        }
    } else if half >= 8 && j == half / 2 - 1 {
        Sylow2Kind::Semidihedral
    } else {
        return Err(Error::NotInFamily);
    };
    Ok(Structure {
        isotype: IsoType::new(kind, s_order, odd_order)?,
        sylow2: s,
        odd: c,
        odd_gen,
        cyclic_gen: Some(a),
        outside: Some(g),
    })
}

/// Isomorphism type of a nilpotent group with cyclic odd part whose Sylow
/// 2-subgroup is cyclic or of maximal class.
pub fn recognize_isotype(g: &MatrixGroup) -> Result<IsoType> {
    Ok(analyze(g.table()?.as_ref())?.isotype)
}

/// `(G₂, C)` with `G = G₂ × C`; the odd part carries a single generator.
pub fn decompose_2_odd(g: &MatrixGroup) -> Result<(MatrixGroup, MatrixGroup)> {
    let t = g.table()?;
    let (s, c, _) = nilpotent_parts(&t)?;
    Ok((g.subgroup(t.matrices(&s))?, g.subgroup(t.matrices(&c))?))
}

/// `[G, G]`, normally closed.
pub fn derived_subgroup(g: &MatrixGroup) -> Result<MatrixGroup> {
    let t = g.table()?;
    let d = t.derived();
    g.subgroup(
        t.greedy_gens(d.members())
            .into_iter()
            .map(|i| t.matrix(i).clone())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ff::FieldCtx;
    use crate::matgrp::SquareMatrix;

    fn gf3() -> Arc<FieldCtx> {
        Arc::new(FieldCtx::prime(3).unwrap())
    }

    fn q8() -> MatrixGroup {
        let f = gf3();
        let a = SquareMatrix::from_ints(&f, &[&[0, 1], &[-1, 0]]).unwrap();
        let g = SquareMatrix::from_ints(&f, &[&[1, 1], &[1, -1]]).unwrap();
        MatrixGroup::new(f, 2, vec![a, g]).unwrap()
    }

    fn d8() -> MatrixGroup {
        let f = gf3();
        let a = SquareMatrix::from_ints(&f, &[&[0, 1], &[-1, 0]]).unwrap();
        let w = SquareMatrix::from_ints(&f, &[&[0, 1], &[1, 0]]).unwrap();
        MatrixGroup::new(f, 2, vec![a, w]).unwrap()
    }

    #[test]
    fn q8_relations_and_type() {
        let g = q8();
        let f = g.field().clone();
        let [a, b] = [&g.generators()[0], &g.generators()[1]];
        let minus = SquareMatrix::scalar(2, f.from_int(-1));
        assert!(a.pow(4, &f).is_identity());
        assert_eq!(b.mul(b, &f), a.mul(a, &f));
        assert_eq!(
            a.conjugate_by(b, &b.inverse(&f).unwrap(), &f),
            a.inverse(&f).unwrap()
        );
        assert_eq!(a.mul(a, &f), minus);
        assert_eq!(
            recognize_isotype(&g).unwrap(),
            IsoType::new(Sylow2Kind::Quaternion8, 8, 1).unwrap()
        );
    }

    #[test]
    fn d8_type() {
        assert_eq!(
            recognize_isotype(&d8()).unwrap(),
            IsoType::new(Sylow2Kind::Dihedral, 8, 1).unwrap()
        );
    }

    #[test]
    fn derived_subgroups() {
        let d = derived_subgroup(&q8()).unwrap();
        assert_eq!(d.order(1 << 20).unwrap(), 2);
        let f = gf3();
        let minus = SquareMatrix::scalar(2, f.from_int(-1));
        assert!(d.elements(64).unwrap().contains(&minus));
        let ab = MatrixGroup::new(f.clone(), 2, vec![minus]).unwrap();
        assert_eq!(derived_subgroup(&ab).unwrap().order(64).unwrap(), 1);
    }

    #[test]
    fn klein_four_not_in_family() {
        let f = gf3();
        let a = SquareMatrix::from_ints(&f, &[&[-1, 0], &[0, 1]]).unwrap();
        let b = SquareMatrix::from_ints(&f, &[&[1, 0], &[0, -1]]).unwrap();
        let g = MatrixGroup::new(f, 2, vec![a, b]).unwrap();
        assert_eq!(recognize_isotype(&g).unwrap_err(), Error::NotInFamily);
    }

    #[test]
    fn non_nilpotent_rejected() {
        // S3 inside GL(2,3)
        let f = gf3();
        let a = SquareMatrix::from_ints(&f, &[&[1, 1], &[0, 1]]).unwrap();
        let b = SquareMatrix::from_ints(&f, &[&[-1, 0], &[0, 1]]).unwrap();
        let g = MatrixGroup::new(f, 2, vec![a, b]).unwrap();
        assert_eq!(g.order(100).unwrap(), 6);
        assert_eq!(recognize_isotype(&g).unwrap_err(), Error::NotNilpotent);
        assert_eq!(decompose_2_odd(&g).unwrap_err(), Error::NotNilpotent);
    }

    #[test]
    fn isotype_invariants() {
        assert!(IsoType::new(Sylow2Kind::Quaternion8, 16, 1).is_err());
        assert!(IsoType::new(Sylow2Kind::Semidihedral, 8, 1).is_err());
        assert!(IsoType::new(Sylow2Kind::Cyclic, 8, 2).is_err());
        let t = IsoType::new(Sylow2Kind::Quaternion8, 8, 13).unwrap();
        assert_eq!(t.to_string(), "Q8 x C13");
        assert_eq!(t.order(), 104);
    }
}
