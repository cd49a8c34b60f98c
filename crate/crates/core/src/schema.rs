//! Versioned JSON forms of groups, censuses and check reports.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::classify::{CaseTag, Census, Certificate, ClassRecord};
use crate::error::{Error, Result};
use crate::ff::FieldCtx;
use crate::matgrp::{IsoType, MatrixGroup, SquareMatrix};

pub const SCHEMA_VERSION: u32 = 1;

/// A serialised group; optional fields are claims checked by `verify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub schema: u32,
    pub n: usize,
    pub q: u64,
    /// Field descriptor `p^k/m0,…,mk`; GF(q) with its default modulus when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<CaseTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isotype: Option<IsoType>,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
}

impl GroupJson {
    pub fn new(
        g: &MatrixGroup,
        case: Option<CaseTag>,
        isotype: Option<IsoType>,
        order: Option<u64>,
    ) -> Self {
        let f = g.field();
        GroupJson {
            schema: SCHEMA_VERSION,
            n: g.degree(),
            q: f.size(),
            field: (f.k() > 1).then(|| f.descriptor()),
            case,
            isotype,
            generators: g.generators().iter().map(|m| m.format(f)).collect(),
            order,
        }
    }

    pub fn from_record(r: &ClassRecord) -> Self {
        Self::new(
            &r.group,
            Some(r.case_tag),
            Some(r.isotype),
            Some(r.group_order),
        )
    }

    pub fn to_group(&self) -> Result<MatrixGroup> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema {}", self.schema)));
        }
        let f = match &self.field {
            Some(d) => FieldCtx::from_descriptor(d)?,
            None => FieldCtx::of_size(self.q)?,
        };
        if f.size() != self.q {
            return Err(Error::Parse(format!(
                "field descriptor has size {}, not {}",
                f.size(),
                self.q
            )));
        }
        let f = Arc::new(f);
        let gens = self
            .generators
            .iter()
            .map(|s| {
                let m = SquareMatrix::parse(&f, s)?;
                if m.n() != self.n {
                    return Err(Error::Dimension(format!("{s:?} is not {0}x{0}", self.n)));
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        MatrixGroup::new(f, self.n, gens)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordJson {
    pub n: usize,
    pub q: u64,
    pub case: CaseTag,
    pub isotype: IsoType,
    pub group_order: u64,
    pub generators: Vec<String>,
    pub certificate: Certificate,
}

impl RecordJson {
    pub fn new(r: &ClassRecord) -> Self {
        let f = r.group.field();
        RecordJson {
            n: r.n,
            q: r.q,
            case: r.case_tag,
            isotype: r.isotype,
            group_order: r.group_order,
            generators: r.generators().iter().map(|m| m.format(f)).collect(),
            certificate: r.certificate.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Counts {
    pub abelian: usize,
    pub nonabelian: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusJson {
    pub schema: u32,
    pub n: usize,
    pub q: u64,
    pub classes: Vec<RecordJson>,
    pub counts: Counts,
}

impl CensusJson {
    pub fn new(c: &Census) -> Self {
        CensusJson {
            schema: SCHEMA_VERSION,
            n: c.n,
            q: c.q,
            classes: c.classes.iter().map(RecordJson::new).collect(),
            counts: Counts {
                abelian: c.abelian(),
                nonabelian: c.nonabelian(),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckVerdict {
    Pass,
    Fail,
}

impl From<bool> for CheckVerdict {
    fn from(ok: bool) -> Self {
        if ok {
            CheckVerdict::Pass
        } else {
            CheckVerdict::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: CheckVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    /// Seconds; omitted in stable output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::matgrp::Sylow2Kind;

    #[test]
    fn group_round_trip() {
        let f = Arc::new(FieldCtx::of_size(3).unwrap());
        let g = construct::q8_times_c(3, &f, 13).unwrap();
        let j = GroupJson::new(&g, Some(CaseTag::Q8Case2), None, Some(104));
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"schema\":1"));
        assert!(text.contains("\"case\":\"q8_case2\""));
        let back = GroupJson::parse(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_group().unwrap().generators(), g.generators());
    }

    #[test]
    fn extension_field_round_trip() {
        let f = Arc::new(FieldCtx::of_size(27).unwrap());
        let g = construct::nilprim_gl2(&f, Sylow2Kind::Semidihedral, None, 13).unwrap();
        let j = GroupJson::new(&g, None, None, None);
        assert!(j.field.is_some());
        let back = GroupJson::parse(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back.to_group().unwrap().generators(), g.generators());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(GroupJson::parse("{"), Err(Error::Parse(_))));
        let bad = r#"{"schema":1,"n":2,"q":3,"generators":["1,1;1,1"]}"#;
        assert_eq!(
            GroupJson::parse(bad).unwrap().to_group().unwrap_err(),
            Error::Singular
        );
        let wrong = r#"{"schema":2,"n":2,"q":3,"generators":[]}"#;
        assert!(GroupJson::parse(wrong).unwrap().to_group().is_err());
        let shape = r#"{"schema":1,"n":3,"q":3,"generators":["1,0;0,1"]}"#;
        assert!(GroupJson::parse(shape).unwrap().to_group().is_err());
    }
}
