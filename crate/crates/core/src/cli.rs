//! The `nilprim` command line: enumerate, construct, verify, count and
//! direct oracle checks.
//!
//! Exit codes: 0 pass, 1 property failure, 2 usage or parse error,
//! 3 resource cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::classify::{self, CaseTag, Census, EnumerateOptions};
use crate::construct;
use crate::error::{Error, Result};
use crate::ff::FieldCtx;
use crate::matgrp::{self, analyze, IsoType, MatrixGroup, Sylow2Kind};
use crate::oracle::{self, SweepMode};
use crate::schema::{
    CensusJson, CheckReport, CheckVerdict, GroupJson, VerifyReport, SCHEMA_VERSION,
};
use crate::singer;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "nilprim",
    version,
    about = "Nilpotent primitive subgroups of GL(n, q)"
)]
pub struct Cli {
    /// Worker threads for enumeration and sweeps.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest group for which a Cayley table is built.
    #[arg(long, global = true, default_value_t = matgrp::TABLE_CAP)]
    pub table_cap: usize,
    /// Largest q^n for vector sweeps.
    #[arg(long, global = true, default_value_t = oracle::SWEEP_CAP)]
    pub sweep_cap: u64,
    /// Budget for conjugacy searches.
    #[arg(long, global = true, default_value_t = oracle::SEARCH_CAP)]
    pub search_cap: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Census of conjugacy classes of nilpotent primitive subgroups.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        nonabelian_only: bool,
        /// Attach brute-force oracle evidence to every record.
        #[arg(long)]
        certify: bool,
        #[arg(long, conflicts_with = "table")]
        json: bool,
        #[arg(long)]
        table: bool,
    },
    /// Generators of one group.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// log2 of the Sylow 2-subgroup order.
        #[arg(long)]
        s: Option<u32>,
        /// Order of the odd cyclic part (the whole order for `cyclic`).
        #[arg(long, default_value_t = 1)]
        c: u64,
        /// In degree 2m, build Q8 x C by blowing up from GF(q^m).
        #[arg(long)]
        blowup: bool,
    },
    /// Run the full property battery on a group file (`-` for stdin).
    Verify {
        file: PathBuf,
        /// Omit timings so the report is byte-stable.
        #[arg(long)]
        stable: bool,
    },
    /// Number of nonabelian classes.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// A single oracle check on a group file.
    Oracle {
        #[arg(value_enum)]
        check: OracleCheck,
        file: PathBuf,
        /// Second group for `conjugate`.
        #[arg(long)]
        other: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Lines)]
        mode: ModeArg,
        #[arg(long)]
        stable: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Q8,
    #[value(alias = "quaternion")]
    Gq,
    #[value(alias = "d")]
    Dihedral,
    #[value(alias = "semidihedral")]
    Sd,
    Cyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleCheck {
    Irreducible,
    Blocks,
    Absolute,
    Centralizer,
    Conjugate,
    Isotype,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Lines,
    Full,
}

fn exit_code(e: &Error) -> i32 {
    if e.is_cap() {
        EXIT_CAP
    } else {
        EXIT_USAGE
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{}", e.render());
                return EXIT_PASS;
            }
            let _ = write!(err, "{}", e.render());
            return EXIT_USAGE;
        }
    };
    matgrp::set_table_cap(cli.table_cap);
    oracle::set_sweep_cap(cli.sweep_cap);
    let mut buf = Vec::new();
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut buf)),
            Err(e) => Err(Error::Precondition(e.to_string())),
        },
        None => dispatch(&cli, &mut buf),
    };
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Error::Parse(e.to_string()))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Enumerate {
            n,
            q,
            nonabelian_only,
            certify,
            table,
            ..
        } => {
            let opts = EnumerateOptions {
                nonabelian_only: *nonabelian_only,
                certify: *certify,
            };
            let census = Census {
                n: *n,
                q: *q,
                classes: classify::enumerate_classes_with(*n, *q, &opts)?,
            };
            if *table {
                write_table(out, &census)?;
            } else {
                emit(out, &CensusJson::new(&census))?;
            }
            Ok(EXIT_PASS)
        }
        Command::Construct {
            n,
            q,
            kind,
            s,
            c,
            blowup,
        } => {
            let (g, case) = construct_group(*n, *q, *kind, *s, *c, *blowup)?;
            let t = g.table()?;
            let iso = analyze(&t)?.isotype;
            emit(
                out,
                &GroupJson::new(&g, Some(case), Some(iso), Some(t.len() as u64)),
            )?;
            Ok(EXIT_PASS)
        }
        Command::Verify { file, stable } => {
            let j = read_json(file)?;
            let g = j.to_group()?;
            let report = verify_claims(&g, j.order, j.isotype, *stable)?;
            emit(out, &report)?;
            Ok(if report.passed { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Count { n, q } => {
            let count = classify::count_nonabelian_classes(*n, *q)?;
            let method = if *n == 2 { "formula" } else { "enumeration" };
            emit(
                out,
                &json!({"schema": SCHEMA_VERSION, "n": n, "q": q, "nonabelian": count, "method": method}),
            )?;
            Ok(EXIT_PASS)
        }
        Command::Oracle {
            check,
            file,
            other,
            mode,
            stable,
        } => {
            let g = read_group(file)?;
            let other = other.as_deref().map(read_group).transpose()?;
            let mode = match mode {
                ModeArg::Lines => SweepMode::Lines,
                ModeArg::Full => SweepMode::Full,
            };
            let report = oracle_check(*check, &g, other.as_ref(), mode, cli.search_cap, *stable)?;
            let code = if report.verdict == CheckVerdict::Pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            };
            emit(out, &report)?;
            Ok(code)
        }
    }
}

fn write_table(out: &mut dyn Write, census: &Census) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(e.to_string());
    writeln!(out, "# n = {}, q = {}", census.n, census.q).map_err(io)?;
    writeln!(
        out,
        "{:<10} {:<14} {:>8}  generators",
        "case", "isotype", "order"
    )
    .map_err(io)?;
    for r in &census.classes {
        let f = r.group.field();
        let tag = serde_json::to_value(r.case_tag).map_err(|e| Error::Parse(e.to_string()))?;
        let gens: Vec<String> = r.generators().iter().map(|m| m.format(f)).collect();
        writeln!(
            out,
            "{:<10} {:<14} {:>8}  {}",
            tag.as_str().unwrap_or_default(),
            r.isotype.to_string(),
            r.group_order,
            gens.join(" | ")
        )
        .map_err(io)?;
    }
    writeln!(
        out,
        "# abelian {}, nonabelian {}",
        census.abelian(),
        census.nonabelian()
    )
    .map_err(io)?;
    Ok(())
}

fn read_group(path: &Path) -> Result<MatrixGroup> {
    read_json(path)?.to_group()
}

fn read_json(path: &Path) -> Result<GroupJson> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    GroupJson::parse(&text)
}

/// Builds the requested group and its case tag.
pub fn construct_group(
    n: usize,
    q: u64,
    kind: KindArg,
    s: Option<u32>,
    c: u64,
    blowup: bool,
) -> Result<(MatrixGroup, CaseTag)> {
    let f = classify::field_for(n, q)?;
    if kind == KindArg::Cyclic {
        return Ok((singer::canonical_abelian(c, n, &f)?, CaseTag::Abelian));
    }
    let sylow = match kind {
        KindArg::Q8 => Sylow2Kind::Quaternion8,
        KindArg::Gq => Sylow2Kind::GeneralisedQuaternion,
        KindArg::Dihedral => Sylow2Kind::Dihedral,
        KindArg::Sd => Sylow2Kind::Semidihedral,
        KindArg::Cyclic => unreachable!(),
    };
    if n == 2 {
        return Ok((construct::nilprim_gl2(&f, sylow, s, c)?, CaseTag::Deg2));
    }
    if n % 2 == 1 {
        return Err(Error::Inadmissible(format!(
            "n = {n} is odd; nonabelian nilpotent primitive groups need even degree"
        )));
    }
    if n % 4 == 0 {
        return Err(Error::Inadmissible(format!(
            "n = {n} is divisible by 4; nonabelian nilpotent primitive groups need n = 2m with m odd"
        )));
    }
    let m = n / 2;
    if sylow == Sylow2Kind::Quaternion8 && !blowup {
        return Ok((construct::q8_times_c(m, &f, c)?, CaseTag::Q8Case2));
    }
    let g = construct::nilprim_gl2m(m, &f, sylow, s, c)?;
    let tag = if sylow == Sylow2Kind::Quaternion8 {
        CaseTag::Q8Case2
    } else {
        CaseTag::Case3
    };
    Ok((g, tag))
}

fn timed<T>(stable: bool, f: impl FnOnce() -> Result<T>) -> Result<(T, Option<f64>)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, (!stable).then(|| start.elapsed().as_secs_f64())))
}

fn check(
    name: &str,
    ok: bool,
    witness: Option<serde_json::Value>,
    elapsed: Option<f64>,
) -> CheckReport {
    CheckReport {
        check: name.to_string(),
        verdict: ok.into(),
        witness,
        elapsed,
    }
}

/// The property battery behind `verify`: decision procedure, claimed order
/// and type, brute-force irreducibility and primitivity, and structural
/// consequences of nilpotent primitivity.
pub fn verify(g: &MatrixGroup, stable: bool) -> Result<VerifyReport> {
    verify_claims(g, None, None, stable)
}

pub fn verify_claims(
    g: &MatrixGroup,
    claimed_order: Option<u64>,
    claimed_isotype: Option<IsoType>,
    stable: bool,
) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    let (v, el) = timed(stable, || classify::is_nilpotent_primitive(g))?;
    let primitive = v.is_primitive();
    checks.push(check(
        "nilpotent_primitive",
        primitive,
        serde_json::to_value(&v).ok(),
        el,
    ));
    let t = g.table()?;
    if let Some(o) = claimed_order {
        checks.push(check(
            "claimed_order",
            o == t.len() as u64,
            Some(json!(t.len())),
            None,
        ));
    }
    if let Some(iso) = claimed_isotype {
        checks.push(check(
            "claimed_isotype",
            v.isotype == Some(iso),
            serde_json::to_value(v.isotype).ok(),
            None,
        ));
    }
    if primitive {
        let (irr, el) = timed(stable, || {
            oracle::is_irreducible_bruteforce(g, SweepMode::Lines)
        })?;
        checks.push(check("irreducible_sweep", irr, None, el));
        let (systems, el) = timed(stable, || oracle::find_block_systems(g))?;
        checks.push(check(
            "no_block_system",
            systems.is_empty(),
            Some(json!(systems.len())),
            el,
        ));
        let d = t.derived();
        checks.push(check(
            "derived_cyclic",
            t.is_cyclic(&d),
            Some(json!(d.len())),
            None,
        ));
        let (ab, el) = timed(stable, || oracle::abelian_normal_subgroups_cyclic(g))?;
        checks.push(check("abelian_normal_cyclic", ab, None, el));
        let (i2, el) = timed(stable, || oracle::index2_subgroups_irreducible(g))?;
        checks.push(check("index2_irreducible", i2, None, el));
        checks.push(check(
            "sylow2_family",
            v.isotype.is_some(),
            serde_json::to_value(v.isotype).ok(),
            None,
        ));
    }
    let passed = checks.iter().all(|c| c.verdict == CheckVerdict::Pass);
    Ok(VerifyReport {
        schema: SCHEMA_VERSION,
        passed,
        checks,
    })
}

fn oracle_check(
    which: OracleCheck,
    g: &MatrixGroup,
    other: Option<&MatrixGroup>,
    mode: SweepMode,
    search_cap: u64,
    stable: bool,
) -> Result<CheckReport> {
    let f: &Arc<FieldCtx> = g.field();
    Ok(match which {
        OracleCheck::Irreducible => {
            let (ok, el) = timed(stable, || oracle::is_irreducible_bruteforce(g, mode))?;
            check("irreducible", ok, None, el)
        }
        OracleCheck::Blocks => {
            let (systems, el) = timed(stable, || oracle::find_block_systems(g))?;
            let witness: Vec<Vec<Vec<String>>> = systems
                .iter()
                .map(|s| {
                    s.components()
                        .iter()
                        .map(|c| {
                            c.basis()
                                .iter()
                                .map(|r| {
                                    r.iter()
                                        .map(|&x| f.format_elem(x))
                                        .collect::<Vec<_>>()
                                        .join(" ")
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            check(
                "block_systems",
                systems.is_empty(),
                Some(json!(witness)),
                el,
            )
        }
        OracleCheck::Absolute => {
            let (ok, el) = timed(stable, || oracle::is_absolutely_irreducible(g))?;
            check("absolutely_irreducible", ok, None, el)
        }
        OracleCheck::Centralizer => {
            let (d, el) = timed(stable, || Ok(oracle::centralizer_dimension(g)))?;
            check("centralizer_dimension", true, Some(json!(d)), el)
        }
        OracleCheck::Conjugate => {
            let h = other.ok_or_else(|| Error::Parse("conjugate needs --other".into()))?;
            let (x, el) = timed(stable, || oracle::conjugacy_search(g, h, search_cap))?;
            check("conjugate", x.is_some(), x.map(|m| json!(m.format(f))), el)
        }
        OracleCheck::Isotype => {
            let (iso, el) = timed(stable, || {
                matgrp::recognize_isotype(g).map(Some).or_else(|e| match e {
                    Error::NotInFamily | Error::NotNilpotent | Error::OddPartNotCyclic => Ok(None),
                    e => Err(e),
                })
            })?;
            check(
                "isotype",
                iso.is_some(),
                iso.map(|i| json!({"isotype": i, "name": i.to_string()})),
                el,
            )
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("nilprim").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn construct_routes() {
        assert!(construct_group(4, 3, KindArg::Q8, None, 1, false).is_err());
        assert!(construct_group(3, 3, KindArg::Q8, None, 1, false).is_err());
        let (g, tag) = construct_group(6, 3, KindArg::Q8, None, 13, false).unwrap();
        assert_eq!((g.degree(), tag), (6, CaseTag::Q8Case2));
        let (_, tag) = construct_group(6, 3, KindArg::Sd, None, 13, false).unwrap();
        assert_eq!(tag, CaseTag::Case3);
        let (g, tag) = construct_group(2, 3, KindArg::Cyclic, None, 8, false).unwrap();
        assert_eq!((g.order(64).unwrap(), tag), (8, CaseTag::Abelian));
        assert_eq!(
            construct_group(2, 3, KindArg::Dihedral, Some(3), 1, false).unwrap_err(),
            Error::Monomial
        );
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["count", "--n", "2"]).0, EXIT_USAGE);
        let (code, _, err) = run_str(&[
            "construct",
            "--n",
            "2",
            "--q",
            "3",
            "--kind",
            "dihedral",
            "--s",
            "3",
        ]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("monomial"), "{err}");
        assert_eq!(run_str(&["--help"]).0, EXIT_PASS);
    }

    #[test]
    fn count_output() {
        let (code, out, _) = run_str(&["count", "--n", "2", "--q", "7"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["nonabelian"], 8);
        assert_eq!(v["schema"], 1);
    }
}
