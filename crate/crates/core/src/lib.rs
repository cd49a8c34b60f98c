//! Nilpotent primitive subgroups of GL(n, q): exact arithmetic, explicit
//! constructions, a decision procedure, conjugacy-class enumeration, and
//! brute-force oracles that check all of it independently.

pub mod arith;
pub mod classify;
pub mod cli;
pub mod construct;
pub mod error;
pub mod ff;
pub mod linalg;
pub mod matgrp;
pub mod oracle;
pub mod schema;
pub mod singer;

pub use error::{Error, Result};
pub use ff::{Embedding, Extension, FieldCtx, FieldElem};
