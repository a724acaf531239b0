//! The `diagmon` command line.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diagmon_core::category::{check_semisimple_quotient, mobius_inverse, stein_order, verify_stein, EhresmannCategory, MAX_ALGEBRA_DIM};
use diagmon_core::ehresmann::{self, check_axioms, rest_subsemigroups, Side};
use diagmon_core::green::{eggbox, GreenStructure};
use diagmon_core::zoo::{self, build, semilattice, Built, Family, FamilySpec, SemilatticeKind};
use diagmon_core::{BinaryRelation, Partition};
use serde_json::{json, Value};

use crate::format::{self, AnalysisExtras, SteinOutput};
use crate::suite::{self, Group};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "diagmon", version, about = "Diagram monoids, Ehresmann structure and category algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write here (atomically) instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family such as `P3` or `RR4` and dump its multiplication table.
    Build {
        family: String,
        #[command(flatten)]
        output: Output,
    },
    /// Check the Ehresmann and restriction axioms against a semilattice (E, F or G).
    Analyze {
        family: String,
        semilattice: String,
        #[command(flatten)]
        output: Output,
    },
    /// Egg-box diagram of Green's classes.
    Eggbox {
        family: String,
        /// Element list or monoid dump whose elements are shaded.
        #[arg(long)]
        shade: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// The Ehresmann category C(S, E) and the EI test.
    Category {
        family: String,
        semilattice: String,
        #[command(flatten)]
        output: Output,
    },
    /// Stein transform, Möbius inverse and the semisimple quotient check.
    Stein {
        family: String,
        semilattice: String,
        /// Defaults to whichever side the restriction axioms hold on, left first.
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[command(flatten)]
        output: Output,
    },
    /// Run verification suites: 2, 3, 4, 5 or all.
    Verify {
        /// 2 general, 3 relations, 4 partitions, 5 Brauer and rook diagrams.
        section: String,
        /// Largest degree to check; each check also has its own ceiling.
        #[arg(long)]
        nmax: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return e.exit_code();
        }
    };
    let pool = match crate::worker_count() {
        Ok(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let pool = pool.expect("thread pool");
    let mut buffer = Vec::new();
    let result = pool.install(|| execute(&cli.command, &mut buffer));
    let _ = stdout.write_all(&buffer);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(output: &Output, text: &str, stdout: &mut dyn Write) -> Result<(), Error> {
    match &output.out {
        Some(path) => crate::write_atomic(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()).map_err(|source| Error::Io { path: "<stdout>".into(), source }),
    }
}

fn json_only(output: &Output) -> Result<(), Error> {
    match output.format {
        Some(OutputFormat::Dot) => Err(Error::Usage("this subcommand only writes JSON".into())),
        _ => Ok(()),
    }
}

fn parse_pair(family: &str, kind: &str) -> Result<(FamilySpec, SemilatticeKind), Error> {
    let spec = FamilySpec::parse(family)?;
    let kind = SemilatticeKind::from_name(kind)?;
    Ok((spec, kind))
}

fn execute(command: &Command, stdout: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Build { family, output } => {
            json_only(output)?;
            let spec = FamilySpec::parse(family)?;
            let built = build(&spec)?;
            emit(output, &format::to_compact_text(&format::dump_json(&built)), stdout)?;
        }
        Command::Analyze { family, semilattice: kind, output } => {
            json_only(output)?;
            let (spec, kind) = parse_pair(family, kind)?;
            let built = build(&spec)?;
            let e = semilattice(kind, &spec, &built)?;
            let report = analyze(&spec, kind, &built, &e);
            emit(output, &format::to_text(&report), stdout)?;
        }
        Command::Eggbox { family, shade, output } => {
            let spec = FamilySpec::parse(family)?;
            let built = build(&spec)?;
            let shade = match shade {
                Some(path) => {
                    let v: Value = serde_json::from_str(&crate::read_file(path)?)
                        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
                    format::parse_element_set(&v, &built)?
                }
                None => BTreeSet::new(),
            };
            let g = GreenStructure::compute(built.table());
            let eb = eggbox(built.table(), &g);
            let text = match output.format.unwrap_or(OutputFormat::Dot) {
                OutputFormat::Dot => crate::dot::eggbox_dot(&built, &eb, &shade),
                OutputFormat::Json => format::to_text(&eggbox_json(&eb, &shade)),
            };
            emit(output, &text, stdout)?;
        }
        Command::Category { family, semilattice: kind, output } => {
            json_only(output)?;
            let (spec, kind) = parse_pair(family, kind)?;
            let built = build(&spec)?;
            let e = semilattice(kind, &spec, &built)?;
            let cat = EhresmannCategory::build(built.table(), &e)?;
            let ei = cat.is_ei(built.table());
            emit(output, &format::to_text(&format::category_json(&built, &cat, &ei)), stdout)?;
        }
        Command::Stein { family, semilattice: kind, side, output } => {
            json_only(output)?;
            let (spec, kind) = parse_pair(family, kind)?;
            let built = build(&spec)?;
            if built.size() > MAX_ALGEBRA_DIM {
                return Err(diagmon_core::Error::CapExceeded { cap: MAX_ALGEBRA_DIM }.into());
            }
            let e = semilattice(kind, &spec, &built)?;
            let s = built.table();
            let report = check_axioms(s, &e);
            let side = match side {
                Some(SideArg::Left) => Side::Left,
                Some(SideArg::Right) => Side::Right,
                None if report.is_left_restriction() => Side::Left,
                None => Side::Right,
            };
            let order = stein_order(s, &e, &report, side)?;
            let check = verify_stein(s, &e, side)?;
            let out = SteinOutput {
                side: side.name(),
                check: &check,
                order: &order.linear_extension(),
                transform: &order.zeta_matrix(),
                mobius: &mobius_inverse(&order),
                quotient: check_semisimple_quotient(s, &e).map_err(|e| e.to_string()),
            };
            emit(output, &format::to_text(&format::stein_json(&built, &out)), stdout)?;
            if !check.holds() {
                return Ok(1);
            }
        }
        Command::Verify { section, nmax, output } => {
            json_only(output)?;
            let groups = Group::from_label(section)
                .ok_or_else(|| Error::Usage(format!("unknown suite `{section}`; expected 2, 3, 4, 5 or all")))?;
            let reports = suite::run_groups(&groups, *nmax);
            let mut text = String::new();
            for r in &reports {
                text.push_str(&r.line());
                text.push('\n');
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            text.push_str(&format!("{} checks, {} passed, {} failed\n", reports.len(), reports.len() - failed, failed));
            emit(output, &text, stdout)?;
            if failed > 0 {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn eggbox_json(eb: &diagmon_core::green::EggBox, shade: &BTreeSet<u32>) -> Value {
    let order = eb.bottom_up();
    let position = |d: u32| order.iter().position(|&x| x == d).expect("every class is ordered");
    let classes: Vec<Value> = order
        .iter()
        .map(|&d| {
            let class = &eb.classes[d as usize];
            let cells: Vec<Vec<Value>> = class
                .cells
                .iter()
                .zip(&class.group)
                .map(|(row, groups)| {
                    row.iter()
                        .zip(groups)
                        .map(|(cell, &group)| {
                            json!({ "members": cell, "group": group, "shaded": cell.iter().any(|x| shade.contains(x)) })
                        })
                        .collect()
                })
                .collect();
            json!({ "size": class.size(), "cells": cells })
        })
        .collect();
    let covers: Vec<[usize; 2]> = eb.covers().into_iter().map(|(a, b)| [position(a), position(b)]).collect();
    json!({ "classes": classes, "covers": covers })
}

/// Families of the same ambient degree whose member set equals `set`.
fn matching_families(spec: &FamilySpec, built: &Built, set: &[u32]) -> Vec<String> {
    match built {
        Built::Partitions(m) => {
            let target: BTreeSet<Partition> = set.iter().map(|&x| *m.element(x)).collect();
            let matches = |target: &BTreeSet<Partition>| -> Vec<String> {
                let mut out = Vec::new();
                for family in Family::ALL.into_iter().filter(|f| !f.is_relational()) {
                    for d in 0..=family.max_degree() {
                        let cand = FamilySpec::new(family, d);
                        if cand.ambient_degree() != spec.ambient_degree() {
                            continue;
                        }
                        if let Ok(members) = zoo::partition_members(&cand) {
                            if members.len() == target.len() && members.iter().all(|p| target.contains(p)) {
                                out.push(cand.to_string());
                            }
                        }
                    }
                }
                out
            };
            let direct = matches(&target);
            if !direct.is_empty() {
                return direct;
            }
            let zeta = Partition::zeta(spec.ambient_degree());
            let mut rest = target.clone();
            if rest.remove(&zeta) {
                return matches(&rest).into_iter().map(|name| format!("{name} ∪ {{ζ}}")).collect();
            }
            Vec::new()
        }
        Built::Relations(m) => {
            let n = spec.degree;
            let target: BTreeSet<BinaryRelation> = set.iter().map(|&x| *m.element(x)).collect();
            let candidates: [(&str, fn(&BinaryRelation) -> bool); 4] = [
                ("BX_relations", |_| true),
                ("PT", BinaryRelation::is_coinjective),
                ("T", |r| r.is_coinjective() && r.dom().is_full()),
                ("I", |r| r.is_coinjective() && r.is_injective()),
            ];
            candidates
                .iter()
                .filter(|(_, pred)| {
                    let members: BTreeSet<BinaryRelation> = BinaryRelation::all(n).filter(|r| pred(r)).collect();
                    members == target
                })
                .map(|(name, _)| format!("{name}{n}"))
                .collect()
        }
    }
}

fn analyze(spec: &FamilySpec, kind: SemilatticeKind, built: &Built, e: &diagmon_core::Semilattice) -> Value {
    let s = built.table();
    let report = check_axioms(s, e);
    let rest = rest_subsemigroups(s, e);
    let reg = ehresmann::reg_e(s, e, &GreenStructure::compute(s));
    let extras = AnalysisExtras {
        family: spec.to_string(),
        semilattice: kind.name().to_string(),
        semilattice_size: e.len(),
        rest: &rest,
        rest_matches: [
            matching_families(spec, built, &rest.left),
            matching_families(spec, built, &rest.right),
            matching_families(spec, built, &rest.both),
        ],
        reg_e: &reg,
        reg_matches: matching_families(spec, built, &reg),
    };
    format::report_json(built, &report, &extras)
}
