use std::env;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use galois_core::{
    clone_closure, diagonal_relation, essential_variables, eval_pp, gamma, ideal_downset, inv, pol, pp_definability,
    Domain, Limits, Partition, RelationSet,
};

use crate::check::{galois_check, Side};
use crate::clone::canonical_name;
use crate::error::{CliError, Result};
use crate::format::{write_domain, write_operation, write_relation};
use crate::workspace::{load_workspace, Caps, Workspace};

pub const CANDIDATES_VAR: &str = "GALOIS_MAX_CANDIDATES";

#[derive(Debug, Parser)]
#[command(
    name = "galois",
    version,
    about = "Clones, relational clones and pp-definability on finite domains"
)]
pub struct Cli {
    /// Omit the summary line.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Operations of the generated clone up to a given arity.
    CloneGen {
        #[arg(long)]
        ops: PathBuf,
        #[arg(long)]
        max_arity: usize,
        /// Admit nullary operations.
        #[arg(long)]
        include_nullary: bool,
    },
    /// Polymorphisms of the relations in a file.
    Pol {
        #[arg(long)]
        rels: PathBuf,
        #[arg(long)]
        arity: usize,
    },
    /// Invariant relations of the operations in a file.
    Inv {
        #[arg(long)]
        ops: PathBuf,
        #[arg(long)]
        arity: usize,
    },
    /// The graph relation of the generated clone at arity N.
    Gamma {
        #[arg(long)]
        ops: PathBuf,
        #[arg(long)]
        arity: usize,
    },
    /// Evaluate a named pp formula.
    Ppeval {
        #[arg(long)]
        rels: PathBuf,
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        name: String,
    },
    /// Decide whether a relation is pp-definable from the others in its file.
    Ppdef {
        #[arg(long)]
        rels: PathBuf,
        #[arg(long)]
        target: String,
    },
    /// Diagonal relation of the ideal generated by some partitions.
    Diag {
        #[arg(long)]
        kappa: usize,
        /// Partitions such as `0,1|2`, separated by `;`.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        generators: String,
        #[arg(long)]
        domain: usize,
    },
    /// Essential variables of a named operation.
    Essential {
        #[arg(long)]
        ops: PathBuf,
        #[arg(long)]
        name: String,
    },
    /// Bounded Pol-Inv round trip for the clone generated by a file.
    Check {
        #[arg(long)]
        ops: PathBuf,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        max_k: Option<usize>,
    },
}

/// Rendered output and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

/// Default limits with the candidate cap taken from the environment.
pub fn limits_from_env() -> Result<Limits> {
    let limits = Limits::default();
    match env::var(CANDIDATES_VAR) {
        Ok(v) => {
            let cap =
                v.trim().parse::<u64>().ok().filter(|&c| c > 0).ok_or_else(|| {
                    CliError::usage(format!("{CANDIDATES_VAR} must be a positive integer, got `{v}`"))
                })?;
            Ok(limits.with_max_candidates(cap))
        }
        Err(env::VarError::NotPresent) => Ok(limits),
        Err(e) => Err(CliError::usage(format!("{CANDIDATES_VAR}: {e}"))),
    }
}

impl Command {
    pub fn input_files(&self) -> Vec<&Path> {
        match self {
            Command::CloneGen { ops, .. }
            | Command::Inv { ops, .. }
            | Command::Gamma { ops, .. }
            | Command::Essential { ops, .. }
            | Command::Check { ops, .. } => vec![ops],
            Command::Pol { rels, .. } | Command::Ppdef { rels, .. } => vec![rels],
            Command::Ppeval { rels, formula, .. } => vec![rels, formula],
            Command::Diag { .. } => vec![],
        }
    }
}

/// Loads the command's input files and runs it.
pub fn execute(cli: &Cli, limits: Limits) -> Result<Outcome> {
    let ws = load_workspace(&cli.command.input_files(), limits, Caps::default())?;
    run_command(&ws, &cli.command, cli.quiet)
}

pub fn run_command(ws: &Workspace, command: &Command, quiet: bool) -> Result<Outcome> {
    let mut body = String::new();
    let mut exit_code = 0;
    let summary = match command {
        Command::CloneGen {
            max_arity,
            include_nullary,
            ..
        } => {
            ws.caps.check_arity(*max_arity, "clone-gen")?;
            let limits = ws.limits.clone().with_nullary(*include_nullary);
            let gens = ws.operation_set()?;
            let clone = clone_closure(&gens, *max_arity, &limits)?;
            write_domain(&mut body, gens.domain());
            for f in clone.iter() {
                write_operation(&mut body, f.name(), f);
            }
            format!("clone-gen: {} of arity <= {max_arity}", count(clone.len(), "operation"))
        }
        Command::Pol { arity, .. } => {
            ws.caps.check_arity(*arity, "pol")?;
            let rels = ws.relation_set()?;
            let ops = pol(&rels, *arity, &ws.limits)?;
            write_domain(&mut body, rels.domain());
            for f in ops.iter() {
                write_operation(&mut body, f.name(), f);
            }
            format!("pol: {} of arity {arity}", count(ops.len(), "operation"))
        }
        Command::Inv { arity, .. } => {
            ws.caps.check_arity(*arity, "inv")?;
            let ops = ws.operation_set()?;
            let rels = inv(&ops, *arity, &ws.limits)?;
            write_domain(&mut body, ops.domain());
            for r in rels.iter() {
                write_relation(&mut body, r.name(), r);
            }
            format!("inv: {} of arity {arity}", count(rels.len(), "relation"))
        }
        Command::Gamma { arity, .. } => {
            ws.caps.check_arity(*arity, "gamma")?;
            let ops = ws.operation_set()?;
            let g = gamma(&ops, *arity, &ws.limits)?;
            write_domain(&mut body, ops.domain());
            write_relation(&mut body, g.name(), &g);
            format!("gamma: {} of arity {}", count(g.len(), "tuple"), g.arity())
        }
        Command::Ppeval { name, .. } => {
            let phi = ws.formula(name)?;
            let env: Vec<_> = ws.relations().values().cloned().collect();
            let r = eval_pp(phi, &env, ws.domain()?)?;
            write_domain(&mut body, r.domain());
            writeln!(body, "# {phi}").unwrap();
            write_relation(&mut body, phi.name(), &r);
            format!("ppeval: {name} has {} of arity {}", count(r.len(), "tuple"), r.arity())
        }
        Command::Ppdef { target, .. } => {
            let r = ws.relation(target)?;
            let others = RelationSet::from_relations(
                ws.domain()?,
                ws.relations().values().filter(|s| s.name() != target.as_str()).cloned(),
            )?;
            let verdict = pp_definability(r, &others, &ws.limits)?;
            let names: Vec<_> = ws
                .relations()
                .keys()
                .filter(|k| *k != target)
                .map(String::as_str)
                .collect();
            writeln!(
                body,
                "{}",
                if verdict.definable {
                    "definable"
                } else {
                    "not definable"
                }
            )
            .unwrap();
            write_domain(&mut body, r.domain());
            write_relation(&mut body, &format!("{target}_closure"), &verdict.closure);
            if let Some((f, t)) = &verdict.witness {
                let image: Vec<_> = t.iter().map(u8::to_string).collect();
                writeln!(body, "# witness maps the rows of {target} to ({})", image.join(" ")).unwrap();
                write_operation(&mut body, &canonical_name(f), f);
            }
            format!(
                "ppdef: {target} ({}) from {{{}}}, closure has {}",
                count(r.len(), "tuple"),
                names.join(", "),
                count(verdict.closure.len(), "tuple")
            )
        }
        Command::Diag {
            kappa,
            generators,
            domain,
        } => {
            if *domain > ws.caps.max_domain {
                return Err(galois_core::Error::ResourceBound {
                    what: "domain size".into(),
                    requested: *domain as u128,
                    limit: ws.caps.max_domain as u128,
                }
                .into());
            }
            let domain = Domain::new(*domain)?;
            let gens = parse_partitions(generators, *kappa)?;
            let ideal = ideal_downset(&gens, *kappa, &ws.limits)?;
            let rel = diagonal_relation(&ideal, domain, &ws.limits)?;
            for p in ideal.members() {
                writeln!(body, "# ideal member {p}").unwrap();
            }
            write_domain(&mut body, domain);
            write_relation(&mut body, rel.name(), &rel);
            format!(
                "diag: ideal of {} on {kappa} points, {}",
                count(ideal.len(), "partition"),
                count(rel.len(), "tuple")
            )
        }
        Command::Essential { name, .. } => {
            let f = ws.operation(name)?;
            let ess = essential_variables(f)?;
            let list: Vec<_> = ess.indices().iter().map(usize::to_string).collect();
            writeln!(body, "{name}: {}", list.join(" ")).unwrap();
            format!("essential: {} of {} variables of {name}", ess.len(), f.arity())
        }
        Command::Check { arity, max_k, .. } => {
            ws.caps.check_arity(*arity, "check")?;
            let gens = ws.operation_set()?;
            let report = galois_check(&gens, *arity, *max_k, &ws.limits)?;
            writeln!(body, "clone operations of arity {arity}: {}", report.clone_part.len()).unwrap();
            writeln!(
                body,
                "invariant relations of arity 1..{}: {}",
                report.k, report.invariant_count
            )
            .unwrap();
            writeln!(body, "polymorphisms of arity {arity}: {}", report.polymorphisms.len()).unwrap();
            writeln!(body, "{}", report.status).unwrap();
            if let Some((f, side)) = &report.witness {
                let why = match side {
                    Side::PolynomialOnly => "preserves every invariant but is not in the clone",
                    Side::CloneOnly => "is in the clone but violates an invariant",
                };
                writeln!(body, "# witness {why}").unwrap();
                write_domain(&mut body, f.domain());
                write_operation(&mut body, &canonical_name(f), f);
                exit_code = 1;
            }
            format!(
                "check: generators {{{}}}, n = {arity}, k = 1..{}",
                report.generators.join(", "),
                report.k
            )
        }
    };
    let mut text = String::new();
    if !quiet {
        writeln!(text, "# {summary}").unwrap();
    }
    text.push_str(&body);
    Ok(Outcome { text, exit_code })
}

fn count(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn parse_partitions(text: &str, kappa: usize) -> Result<Vec<Partition>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let p: Partition = s.parse()?;
            if p.index_size() != kappa {
                return Err(CliError::usage(format!("partition `{s}` is not on {kappa} points")));
            }
            Ok(p)
        })
        .collect()
}
