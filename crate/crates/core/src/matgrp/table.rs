use std::collections::{HashMap, HashSet, VecDeque};

use super::SquareMatrix;
use crate::ff::FieldCtx;

/// Cayley table of a closed matrix group. Element `0` is the identity.
pub struct GroupTable {
    elems: Vec<SquareMatrix>,
    index: HashMap<SquareMatrix, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u64>,
    gens: Vec<u32>,
}

/// A subgroup of a [`GroupTable`], by sorted member indices plus a
/// generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<u32>,
    gens: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

impl GroupTable {
    pub(super) fn build(
        elems: Vec<SquareMatrix>,
        words: Vec<(u32, u32)>,
        index: HashMap<SquareMatrix, u32>,
        gen_mats: &[SquareMatrix],
        f: &FieldCtx,
    ) -> Self {
        let len = elems.len();
        let right: Vec<Vec<u32>> = gen_mats
            .iter()
            .map(|g| elems.iter().map(|e| index[&e.mul(g, f)]).collect())
            .collect();
        let mut mul = vec![0u32; len * len];
        for i in 0..len {
            mul[i * len] = i as u32;
            for j in 1..len {
                let (parent, g) = words[j];
                mul[i * len + j] = right[g as usize][mul[i * len + parent as usize] as usize];
            }
        }
        let inv: Vec<u32> = (0..len)
            .map(|i| {
                mul[i * len..(i + 1) * len]
                    .iter()
                    .position(|&x| x == 0)
                    .expect("group element has an inverse") as u32
            })
            .collect();
        let orders = (0..len)
            .map(|i| {
                let mut acc = i as u32;
                let mut e = 1u64;
                while acc != 0 {
                    acc = mul[acc as usize * len + i];
                    e += 1;
                }
                e
            })
            .collect();
        let gens = gen_mats.iter().map(|g| index[g]).collect();
        GroupTable {
            elems,
            index,
            mul,
            inv,
            orders,
            gens,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[SquareMatrix] {
        &self.elems
    }

    pub fn matrix(&self, i: u32) -> &SquareMatrix {
        &self.elems[i as usize]
    }

    pub fn index_of(&self, m: &SquareMatrix) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elems.len() + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn order(&self, a: u32) -> u64 {
        self.orders[a as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let e = e % self.order(a);
        (0..e).fold(0u32, |acc, _| self.mul(acc, a))
    }

    /// `b^{-1} a b`.
    pub fn conj(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.len() as u32).collect(),
            gens: self.gens.clone(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup {
            members: vec![0],
            gens: Vec::new(),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[u32]) -> Subgroup {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut members = vec![0u32];
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup {
            members,
            gens: gens.to_vec(),
        }
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        h.gens.iter().enumerate().all(|(i, &a)| {
            h.gens[i + 1..]
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    pub fn is_cyclic(&self, h: &Subgroup) -> bool {
        h.members.iter().any(|&x| self.order(x) == h.len() as u64)
    }

    /// Normal in the whole group.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.gens
            .iter()
            .all(|&t| h.gens.iter().all(|&s| h.contains(self.conj(s, t))))
    }

    /// Normal closure of `gens` in the whole group.
    pub fn normal_closure(&self, gens: &[u32]) -> Subgroup {
        let mut gens = gens.to_vec();
        loop {
            let h = self.generate(&gens);
            let extra: Vec<u32> = self
                .gens
                .iter()
                .flat_map(|&t| h.gens.iter().map(move |&s| (s, t)))
                .map(|(s, t)| self.conj(s, t))
                .filter(|&c| !h.contains(c))
                .collect();
            if extra.is_empty() {
                return h;
            }
            gens.push(extra[0]);
        }
    }

    /// `[G, G]`: normal closure of the commutators of the generators.
    pub fn derived(&self) -> Subgroup {
        let comms: Vec<u32> = self
            .gens
            .iter()
            .flat_map(|&a| self.gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .filter(|&c| c != 0)
            .collect();
        let mut comms_dedup = Vec::new();
        for c in comms {
            if !comms_dedup.contains(&c) {
                comms_dedup.push(c);
            }
        }
        self.normal_closure(&comms_dedup)
    }

    /// A small generating set for a subset known to be a subgroup: greedy in
    /// index order.
    pub fn greedy_gens(&self, members: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut h = self.trivial();
        for &x in members {
            if !h.contains(x) {
                gens.push(x);
                h = self.generate(&gens);
                if h.len() == members.len() {
                    break;
                }
            }
        }
        gens
    }

    /// All subgroups whose order divides `bound` (all subgroups when `bound`
    /// is `|G|`), found by repeatedly joining single elements onto known
    /// subgroups, starting from the trivial one. Sorted by order, then members.
    pub fn subgroups(&self, bound: u64) -> Vec<Subgroup> {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut out = vec![self.trivial()];
        seen.insert(out[0].members.clone());
        let mut i = 0;
        while i < out.len() {
            let h = out[i].clone();
            for x in 0..self.len() as u32 {
                if h.contains(x) || bound % self.order(x) != 0 {
                    continue;
                }
                let mut gens = h.gens.clone();
                gens.push(x);
                let j = self.generate(&gens);
                if bound % j.len() as u64 != 0 {
                    continue;
                }
                if seen.insert(j.members.clone()) {
                    let gens = self.greedy_gens(&j.members);
                    out.push(Subgroup {
                        members: j.members,
                        gens,
                    });
                }
            }
            i += 1;
        }
        out.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.members.cmp(&b.members))
        });
        out
    }

    /// Subgroups of index exactly `k`.
    pub fn subgroups_of_index(&self, k: u64) -> Vec<Subgroup> {
        let n = self.len() as u64;
        if k == 0 || n % k != 0 {
            return Vec::new();
        }
        let target = n / k;
        self.subgroups(target)
            .into_iter()
            .filter(|h| h.len() as u64 == target)
            .collect()
    }

    /// Elements whose order is a power of the prime `p`.
    pub fn p_elements(&self, p: u64) -> Vec<u32> {
        (0..self.len() as u32)
            .filter(|&x| {
                let mut o = self.order(x);
                while o % p == 0 {
                    o /= p;
                }
                o == 1
            })
            .collect()
    }

    pub fn matrices(&self, h: &Subgroup) -> Vec<SquareMatrix> {
        h.gens
            .iter()
            .map(|&g| self.elems[g as usize].clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::{MatrixGroup, SquareMatrix};
    use crate::ff::FieldCtx;

    fn gl23() -> MatrixGroup {
        let f = Arc::new(FieldCtx::prime(3).unwrap());
        let a = SquareMatrix::from_ints(&f, &[&[1, 1], &[0, 1]]).unwrap();
        let b = SquareMatrix::from_ints(&f, &[&[0, 1], &[1, 0]]).unwrap();
        let c = SquareMatrix::from_ints(&f, &[&[-1, 0], &[0, 1]]).unwrap();
        MatrixGroup::new(f, 2, vec![a, b, c]).unwrap()
    }

    #[test]
    fn gl23_table() {
        let g = gl23();
        let t = g.table().unwrap();
        assert_eq!(t.len(), 48);
        for i in 0..48u32 {
            assert_eq!(t.mul(i, t.inv(i)), 0);
            for j in (0..48u32).step_by(7) {
                let m = t.matrix(i).mul(t.matrix(j), g.field());
                assert_eq!(t.index_of(&m), Some(t.mul(i, j)));
            }
        }
        // [GL(2,3), GL(2,3)] = SL(2,3), order 24
        assert_eq!(t.derived().len(), 24);
    }

    #[test]
    fn gl23_subgroup_count() {
        let g = gl23();
        let t = g.table().unwrap();
        let subs = t.subgroups(48);
        // oracle: every subgroup of GL(2,3) is generated by two elements
        let mut pairs = std::collections::HashSet::new();
        for x in 0..48u32 {
            for y in 0..48u32 {
                pairs.insert(t.generate(&[x, y]).members().to_vec());
            }
        }
        assert_eq!(subs.len(), pairs.len());
        assert!(subs.iter().all(|h| pairs.contains(h.members())));
        assert_eq!(t.subgroups_of_index(2).len(), 1);
        for h in &subs {
            assert_eq!(48 % h.len(), 0);
            assert_eq!(t.generate(h.gens()).members(), h.members());
        }
    }
}
