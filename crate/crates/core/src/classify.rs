//! Deciding nilpotent primitivity and enumerating the conjugacy classes of
//! nilpotent primitive subgroups of GL(n, q).

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::construct;
use crate::error::{Error, Result};
use crate::ff::FieldCtx;
use crate::matgrp::{analyze, IsoType, MatrixGroup, SquareMatrix, Sylow2Kind};
use crate::oracle::{self, SweepMode};
use crate::singer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    NotNilpotent,
    Reducible,
    Imprimitive,
    Primitive,
}

/// One step of the decision procedure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    Nilpotency {
        nilpotent: bool,
        detail: String,
    },
    Recognition {
        isotype: Option<IsoType>,
    },
    Irreducibility {
        irreducible: bool,
    },
    CyclicCriterion {
        d: u64,
        n: usize,
        q: u64,
        irreducible: bool,
        imprimitive: Option<bool>,
    },
    FieldResidue {
        q: u64,
        q_mod_4: u64,
    },
    DegreeShape {
        n: usize,
        twice_odd: bool,
    },
    IndexTwoCyclic {
        order: u64,
        irreducible: bool,
    },
    Quaternion {
        quaternion8: bool,
        relations: bool,
        c_order: u64,
        c_enveloping_dimension: usize,
        m: usize,
        c_primitive: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    pub isotype: Option<IsoType>,
    pub trace: Vec<TraceStep>,
}

impl Verdict {
    pub fn is_primitive(&self) -> bool {
        self.verdict == VerdictKind::Primitive
    }
}

fn cyclic_step(d: u64, n: usize, q: u64) -> Result<(bool, TraceStep)> {
    let irreducible = singer::is_irreducible_cyclic(d, n, q)?;
    let imprimitive = if irreducible {
        Some(singer::is_imprimitive_cyclic(d, n, q)?)
    } else {
        None
    };
    let primitive = irreducible && imprimitive == Some(false);
    Ok((
        primitive,
        TraceStep::CyclicCriterion {
            d,
            n,
            q,
            irreducible,
            imprimitive,
        },
    ))
}

/// Decides whether `g` is a nilpotent primitive subgroup of GL(n, q).
///
/// Irreducibility is tested by spinning; abelian groups then go through the
/// cyclic criterion. A nonabelian group is analysed through its cyclic
/// subgroup `A = ⟨a c⟩` of index 2: reducible `A` forces imprimitivity,
/// primitive `A` forces primitivity, and otherwise `G` is primitive exactly
/// when `G₂ = Q8` with `a² = g² = [a, g] = -1` and the odd part is a
/// primitive cyclic group of degree `n/2`.
pub fn is_nilpotent_primitive(g: &MatrixGroup) -> Result<Verdict> {
    let f = g.field();
    if f.p() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let n = g.degree();
    let q = f.size();
    let t = g.table()?;
    let mut trace = Vec::new();
    let done = |verdict, isotype, trace| {
        Ok(Verdict {
            verdict,
            isotype,
            trace,
        })
    };

    let structure = match analyze(&t) {
        Ok(s) => Some(s),
        Err(Error::NotInFamily) => None,
        Err(e @ (Error::NotNilpotent | Error::OddPartNotCyclic)) => {
            trace.push(TraceStep::Nilpotency {
                nilpotent: false,
                detail: e.to_string(),
            });
            return done(VerdictKind::NotNilpotent, None, trace);
        }
        Err(e) => return Err(e),
    };
    let isotype = structure.as_ref().map(|s| s.isotype);
    trace.push(TraceStep::Nilpotency {
        nilpotent: true,
        detail: "every Sylow subgroup normal, odd part cyclic".into(),
    });
    trace.push(TraceStep::Recognition { isotype });

    let irreducible = oracle::is_irreducible_bruteforce(g, SweepMode::Lines)?;
    trace.push(TraceStep::Irreducibility { irreducible });
    if !irreducible {
        return done(VerdictKind::Reducible, isotype, trace);
    }

    if t.is_abelian(&t.whole()) {
        // an irreducible abelian group spans a field, so it is cyclic
        let (primitive, step) = cyclic_step(t.len() as u64, n, q)?;
        trace.push(step);
        let v = if primitive {
            VerdictKind::Primitive
        } else {
            VerdictKind::Imprimitive
        };
        return done(v, isotype, trace);
    }

    trace.push(TraceStep::FieldResidue { q, q_mod_4: q % 4 });
    if q % 4 != 3 {
        return done(VerdictKind::Imprimitive, isotype, trace);
    }
    let twice_odd = n % 2 == 0 && (n / 2) % 2 == 1;
    trace.push(TraceStep::DegreeShape { n, twice_odd });
    if !twice_odd {
        return done(VerdictKind::Imprimitive, isotype, trace);
    }
    let Some(s) = structure else {
        return done(VerdictKind::Imprimitive, isotype, trace);
    };
    let (Some(a), Some(b)) = (s.cyclic_gen, s.outside) else {
        return Err(Error::Precondition(
            "nonabelian group with cyclic Sylow 2-subgroup".into(),
        ));
    };
    let c = s.odd_gen;
    let ac = t.mul(a, c);
    let a_order = t.order(ac);
    let a_group = g.subgroup(vec![t.matrix(ac).clone()])?;
    let a_irreducible = oracle::is_irreducible_bruteforce(&a_group, SweepMode::Lines)?;
    trace.push(TraceStep::IndexTwoCyclic {
        order: a_order,
        irreducible: a_irreducible,
    });
    if !a_irreducible {
        return done(VerdictKind::Imprimitive, isotype, trace);
    }
    let (a_primitive, step) = cyclic_step(a_order, n, q)?;
    trace.push(step);
    if a_primitive {
        return done(VerdictKind::Primitive, isotype, trace);
    }

    let m = n / 2;
    let minus = SquareMatrix::scalar(n, f.neg(f.one()));
    let (am, bm) = (t.matrix(a), t.matrix(b));
    let relations =
        am.mul(am, f) == minus && bm.mul(bm, f) == minus && am.commutator(bm, f)? == minus;
    let c_order = t.order(c);
    let c_gens: Vec<SquareMatrix> = if c_order > 1 {
        vec![t.matrix(c).clone()]
    } else {
        Vec::new()
    };
    let c_dim = singer::enveloping_dimension(n, &c_gens, f)?;
    let c_primitive = singer::is_primitive_cyclic(c_order, m, q).unwrap_or(false);
    let quaternion8 = s.isotype.sylow2_kind == Sylow2Kind::Quaternion8;
    trace.push(TraceStep::Quaternion {
        quaternion8,
        relations,
        c_order,
        c_enveloping_dimension: c_dim,
        m,
        c_primitive,
    });
    let v = if quaternion8 && relations && c_dim == m && c_primitive {
        VerdictKind::Primitive
    } else {
        VerdictKind::Imprimitive
    };
    done(v, isotype, trace)
}

/// Which branch of the classification a class comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Abelian,
    Deg2,
    Q8Case2,
    Case3,
}

/// Brute-force evidence attached on request.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub irreducible: bool,
    pub block_systems: usize,
    pub absolutely_irreducible: bool,
    pub centralizer_dimension: usize,
}

pub fn oracle_report(g: &MatrixGroup) -> Result<OracleReport> {
    let irreducible = oracle::is_irreducible_bruteforce(g, SweepMode::Lines)?;
    let block_systems = if irreducible {
        oracle::find_block_systems(g)?.len()
    } else {
        0
    };
    Ok(OracleReport {
        irreducible,
        block_systems,
        absolutely_irreducible: oracle::is_absolutely_irreducible(g)?,
        centralizer_dimension: oracle::centralizer_dimension(g),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

/// One conjugacy class of nilpotent primitive subgroups.
#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub n: usize,
    pub q: u64,
    pub case_tag: CaseTag,
    pub isotype: IsoType,
    pub group_order: u64,
    pub group: MatrixGroup,
    pub certificate: Certificate,
}

impl ClassRecord {
    pub fn generators(&self) -> &[SquareMatrix] {
        self.group.generators()
    }

    fn sort_key(&self) -> (CaseTag, u64, u64) {
        (
            self.case_tag,
            self.isotype.sylow2_order,
            self.isotype.odd_order,
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub nonabelian_only: bool,
    pub certify: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Candidate {
    Abelian(u64),
    Deg2(Sylow2Kind, u32, u64),
    Case2(u64),
    Case3(Sylow2Kind, u32, u64),
}

/// Checks `n ≥ 2` and that `q` is an odd prime power, returning GF(q).
pub fn field_for(n: usize, q: u64) -> Result<Arc<FieldCtx>> {
    if n < 2 {
        return Err(Error::Dimension(format!("degree {n} must be at least 2")));
    }
    if q % 2 == 0 {
        return Err(Error::CharacteristicTwo);
    }
    Ok(Arc::new(FieldCtx::of_size(q)?))
}

fn odd_m(n: usize) -> Option<usize> {
    (n % 2 == 0 && n > 2 && (n / 2) % 2 == 1).then_some(n / 2)
}

fn candidates(n: usize, q: u64, opts: &EnumerateOptions) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    if !opts.nonabelian_only {
        let qn = arith::checked_pow(q, n as u32).ok_or(Error::FieldTooLarge(u128::MAX))?;
        for d in arith::divisors(qn - 1) {
            if singer::is_primitive_cyclic(d, n, q)? {
                out.push(Candidate::Abelian(d));
            }
        }
    }
    if q % 4 != 3 {
        return Ok(out);
    }
    if n == 2 {
        for (kind, s) in construct::admissible_sylows_gl2(q) {
            for c in construct::scalar_orders_gl2(q) {
                out.push(Candidate::Deg2(kind, s, c));
            }
        }
    } else if let Some(m) = odd_m(n) {
        let qm = arith::checked_pow(q, m as u32).ok_or(Error::FieldTooLarge(u128::MAX))?;
        for c in arith::divisors(qm - 1) {
            if c % 2 == 1 && singer::is_primitive_cyclic(c, m, q)? {
                out.push(Candidate::Case2(c));
            }
        }
        for (kind, s) in construct::admissible_sylows_gl2(qm) {
            for c in construct::scalar_orders_gl2(qm) {
                out.push(Candidate::Case3(kind, s, c));
            }
        }
    }
    Ok(out)
}

fn build(
    cand: Candidate,
    n: usize,
    f: &Arc<FieldCtx>,
    certify: bool,
) -> Result<Option<ClassRecord>> {
    let (tag, group) = match cand {
        Candidate::Abelian(d) => (CaseTag::Abelian, singer::canonical_abelian(d, n, f)?),
        Candidate::Deg2(kind, s, c) => {
            (CaseTag::Deg2, construct::nilprim_gl2(f, kind, Some(s), c)?)
        }
        Candidate::Case2(c) => (CaseTag::Q8Case2, construct::q8_times_c(n / 2, f, c)?),
        Candidate::Case3(kind, s, c) => match construct::nilprim_gl2m(n / 2, f, kind, Some(s), c) {
            Ok(g) => (CaseTag::Case3, g),
            Err(Error::ReducibleBlowup(_)) => return Ok(None),
            Err(e) => return Err(e),
        },
    };
    let verdict = is_nilpotent_primitive(&group)?;
    if !verdict.is_primitive() {
        return Err(Error::Precondition(format!(
            "constructed group {cand:?} judged {:?}",
            verdict.verdict
        )));
    }
    let isotype = verdict.isotype.ok_or(Error::NotInFamily)?;
    let oracle = if certify {
        Some(oracle_report(&group)?)
    } else {
        None
    };
    Ok(Some(ClassRecord {
        n,
        q: f.size(),
        case_tag: tag,
        isotype,
        group_order: isotype.order(),
        group,
        certificate: Certificate { verdict, oracle },
    }))
}

/// One record per conjugacy class, ordered by case tag, then Sylow 2-order,
/// then odd order. Case-3 candidates whose isomorphism type already occurs
/// are dropped, since isomorphic nilpotent primitive groups are conjugate.
pub fn enumerate_classes_with(
    n: usize,
    q: u64,
    opts: &EnumerateOptions,
) -> Result<Vec<ClassRecord>> {
    let f = field_for(n, q)?;
    let cands = candidates(n, q, opts)?;
    let built: Vec<Option<ClassRecord>> = cands
        .par_iter()
        .map(|&c| build(c, n, &f, opts.certify))
        .collect::<Result<_>>()?;
    let mut records: Vec<ClassRecord> = built.into_iter().flatten().collect();
    records.sort_by_key(ClassRecord::sort_key);
    let mut seen = std::collections::HashSet::new();
    records.retain(|r| seen.insert(r.isotype));
    Ok(records)
}

pub fn enumerate_classes(n: usize, q: u64) -> Result<Vec<ClassRecord>> {
    enumerate_classes_with(n, q, &EnumerateOptions::default())
}

/// Number of classes of nonabelian nilpotent primitive subgroups: `r(t-1)`
/// for `n = 2` (`r` the number of divisors of `q - 1`, `2^t ∥ q + 1`), the
/// enumerated count for `n = 2m` with `m > 1` odd, and 0 otherwise.
pub fn count_nonabelian_classes(n: usize, q: u64) -> Result<u64> {
    field_for(n, q)?;
    if q % 4 != 3 {
        return Ok(0);
    }
    if n == 2 {
        let r = arith::divisors(q - 1).len() as u64;
        let t = construct::two_exponent(q) as u64;
        return Ok(r * (t - 1));
    }
    if odd_m(n).is_none() {
        return Ok(0);
    }
    let opts = EnumerateOptions {
        nonabelian_only: true,
        certify: false,
    };
    Ok(enumerate_classes_with(n, q, &opts)?.len() as u64)
}

/// Census of one `(n, q)`.
#[derive(Clone, Debug)]
pub struct Census {
    pub n: usize,
    pub q: u64,
    pub classes: Vec<ClassRecord>,
}

impl Census {
    pub fn abelian(&self) -> usize {
        self.classes
            .iter()
            .filter(|r| r.case_tag == CaseTag::Abelian)
            .count()
    }

    pub fn nonabelian(&self) -> usize {
        self.classes.len() - self.abelian()
    }
}

#[derive(Clone, Debug)]
pub struct SameClass {
    pub same: bool,
    /// `X` with `X⁻¹ G X = H`, when certification was requested and found.
    pub witness: Option<SquareMatrix>,
    /// Whether the explicit search agreed with the isomorphism-type verdict.
    pub certified: Option<bool>,
}

/// Conjugacy of two nilpotent primitive groups, decided by isomorphism type
/// and optionally certified by an explicit conjugating matrix.
pub fn same_class(g: &MatrixGroup, h: &MatrixGroup, certify_cap: Option<u64>) -> Result<SameClass> {
    if g.degree() != h.degree() || g.field() != h.field() {
        return Err(Error::Dimension("groups live in different GL(n, q)".into()));
    }
    let vg = is_nilpotent_primitive(g)?;
    let vh = is_nilpotent_primitive(h)?;
    if !vg.is_primitive() || !vh.is_primitive() {
        return Err(Error::Precondition(format!(
            "inputs judged {:?} and {:?}",
            vg.verdict, vh.verdict
        )));
    }
    let same = vg.isotype == vh.isotype;
    let (witness, certified) = match certify_cap {
        Some(cap) => {
            let x = oracle::conjugacy_search(g, h, cap)?;
            let agrees = x.is_some() == same;
            (x, Some(agrees))
        }
        None => (None, None),
    };
    Ok(SameClass {
        same,
        witness,
        certified,
    })
}
