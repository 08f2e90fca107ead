//! Command-line front end for diagram reports, unknotting-number search,
//! transforms, equality recognizers and the exhaustive census.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use udiag::constructions::corpus::random_knot_diagrams;
use udiag::constructions::{
    doubling_transform, enumerate_knot_diagrams, is_knot_equality_diagram, is_link_equality_diagram,
    iterate_taniyama, validate_template, TangleTemplate, TaniyamaOptions,
};
use udiag::search::{ascending_number_of_diagram, unknotting_number_with, UDiagramResult, UStatus, USearchOptions};
use udiag::{CrossingId, CrossingSet, Diagram, Error, SearchBudget};

/// Environment variable naming a directory with `gadget.tpl` and
/// `doubling.tpl` that replace the built-in templates.
const TEMPLATE_DIR_VAR: &str = "UDIAG_TEMPLATE_DIR";

#[derive(Parser)]
#[command(name = "udiag", version, about = "Unknotting numbers of knot and link diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Extra crossings the triviality search may add above the start.
    #[arg(long, global = true, default_value_t = 2)]
    slack: usize,
    /// Distinct diagrams the triviality search may visit.
    #[arg(long, global = true, default_value_t = 200_000)]
    visited_cap: usize,
    /// Highest subset level searched by `u`.
    #[arg(long, global = true)]
    level_cap: Option<usize>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Template file replacing the default one of the transform.
    #[arg(long, global = true)]
    template_file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    /// One JSON object per line.
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformKind {
    Taniyama,
    Double,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a diagram and check that it is planar.
    Validate { input: String },
    /// Crossing count, components, writhe, linking numbers.
    Report { input: String },
    /// Unknotting or unlinking number of the diagram.
    U { input: String },
    /// Replace crossings by a template.
    Transform {
        #[arg(value_enum)]
        kind: TransformKind,
        input: String,
        /// Minimum unknotting set, as 1-based crossing numbers separated by commas.
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
        /// Number of times to apply the transform.
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        /// Skip the check that the set is a minimum unknotting set.
        #[arg(long)]
        allow_non_minimal: bool,
    },
    /// Whether the diagram attains the crossing-count bound on its unknotting number.
    Classify { input: String },
    /// Enumerate knot diagrams and compare the unknotting number with the recognizer.
    Census { n: usize },
    /// Check a template's closure contracts.
    CheckTemplate {
        /// `gadget`, `doubling`, or a template file.
        template: String,
    },
    /// Check u(D) <= a(D) <= (c(D) - 1) / 2 on random knot diagrams.
    Inequalities {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        max_crossings: usize,
    },
}

struct Ctx {
    format: Format,
    options: USearchOptions,
    seed: u64,
    template_file: Option<PathBuf>,
}

impl Ctx {
    fn emit(&self, human: String, record: Value) {
        match self.format {
            Format::Human => println!("{human}"),
            Format::Json => println!("{record}"),
        }
    }

    fn template(&self, name: &str) -> Result<TangleTemplate, Error> {
        if let Some(p) = &self.template_file {
            return read_template(p);
        }
        if let Ok(dir) = std::env::var(TEMPLATE_DIR_VAR) {
            let p = Path::new(&dir).join(format!("{name}.tpl"));
            if p.exists() {
                return read_template(&p);
            }
        }
        Ok(match name {
            "gadget" => TangleTemplate::gadget(),
            _ => TangleTemplate::doubling(),
        })
    }
}

fn read_template(p: &Path) -> Result<TangleTemplate, Error> {
    let text = std::fs::read_to_string(p).map_err(|e| Error::Template(format!("{}: {e}", p.display())))?;
    TangleTemplate::parse(&text)
}

/// Reads the input from a file when the argument names one. Text containing
/// `X[` or consisting of `O` tokens is a PD code, anything else a signed
/// Gauss code.
fn load(input: &str) -> Result<Diagram, Error> {
    let text = match std::fs::read_to_string(input) {
        Ok(t) if Path::new(input).is_file() => t,
        _ => input.to_string(),
    };
    let pd = text.contains("X[") || text.split_whitespace().all(|t| t == "O");
    if pd {
        Diagram::parse_pd(&text)
    } else {
        Diagram::parse_gauss(&text)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Genus { .. } => 3,
        Error::Budget(..) | Error::CapExceeded { .. } => 4,
        Error::Syntax { .. } | Error::Pairing { .. } | Error::Orientation(..) | Error::Empty => 2,
        _ => 1,
    }
}

fn status_code(s: &UStatus) -> u8 {
    if s.exact().is_some() {
        0
    } else {
        4
    }
}

fn u_record(d: &Diagram, r: &UDiagramResult) -> Value {
    json!({
        "c": d.crossing_count(),
        "status": r.status.to_string(),
        "witness": r.witness.as_ref().map(|w| w.set.iter().map(|c| c.0 + 1).collect::<Vec<_>>()),
        "certificate_moves": r.witness.as_ref().map(|w| w.certificate.len()),
        "unresolved": r.unresolved.len(),
        "levels": r.levels,
        "millis": r.millis,
    })
}

fn run(cli: Cli) -> Result<u8, Error> {
    let ctx = Ctx {
        format: cli.format,
        options: USearchOptions {
            budget: SearchBudget {
                slack: cli.slack,
                max_visited: cli.visited_cap,
                ..Default::default()
            },
            level_cap: cli.level_cap,
            ..Default::default()
        },
        seed: cli.seed,
        template_file: cli.template_file,
    };
    match cli.command {
        Command::Validate { input } => {
            let d = load(&input)?;
            ctx.emit(
                format!("valid: {} crossings, {} components", d.crossing_count(), d.component_count()),
                json!({"valid": true, "c": d.crossing_count(), "mu": d.component_count()}),
            );
            Ok(0)
        }
        Command::Report { input } => {
            let r = load(&input)?.report();
            let human = format!(
                "c={} mu={} writhe={} alternating={} reduced={} split={} lk={:?}",
                r.c, r.mu, r.writhe, r.alternating, r.reduced, r.split, r.lk
            );
            ctx.emit(human, serde_json::to_value(&r).expect("report serializes"));
            Ok(0)
        }
        Command::U { input } => {
            let d = load(&input)?;
            let r = unknotting_number_with(&d, &ctx.options)?;
            let mut human = format!("u = {}", r.status);
            if let Some(w) = &r.witness {
                let set: Vec<_> = w.set.iter().map(|c| c.0 + 1).collect();
                human += &format!("\nwitness {set:?}, certificate of {} moves", w.certificate.len());
            }
            for l in &r.levels {
                human += &format!(
                    "\nlevel {}: {} subsets, {} nontrivial ({} by state table), {} trivial, {} unknown, {} ms",
                    l.k, l.subsets, l.nontrivial, l.fast_path, l.trivial, l.unknown, l.millis
                );
            }
            ctx.emit(human, u_record(&d, &r));
            Ok(status_code(&r.status))
        }
        Command::Transform {
            kind,
            input,
            set,
            iterations,
            allow_non_minimal,
        } => {
            let d = load(&input)?;
            let out = match kind {
                TransformKind::Taniyama => {
                    if set.contains(&0) {
                        return Err(Error::UnknownCrossing(0));
                    }
                    let s = CrossingSet::new(set.iter().map(|&k| CrossingId(k - 1)));
                    let opts = TaniyamaOptions {
                        allow_non_minimal,
                        budget: ctx.options.budget,
                    };
                    iterate_taniyama(&d, iterations, &s, &ctx.template("gadget")?, &opts)?.diagram
                }
                TransformKind::Double => {
                    let t = ctx.template("doubling")?;
                    (0..iterations).try_fold(d, |d, _| doubling_transform(&d, &t))?
                }
            };
            let roles: Vec<String> = out
                .crossings()
                .iter()
                .enumerate()
                .filter_map(|(i, c)| c.role().map(|r| format!("{}:{}@{}", i + 1, r.role, r.group)))
                .collect();
            let human = format!("# {} crossings\n# roles {}\n{}", out.crossing_count(), roles.join(" "), out.render());
            ctx.emit(human, json!({"c": out.crossing_count(), "roles": roles, "pd": out.render()}));
            Ok(0)
        }
        Command::Classify { input } => {
            let d = load(&input)?;
            let (kind, verdict) = if d.component_count() == 1 {
                ("knot", is_knot_equality_diagram(&d)?)
            } else {
                ("link", is_link_equality_diagram(&d)?)
            };
            ctx.emit(format!("{kind}-equality {verdict}"), json!({"kind": kind, "equality": verdict}));
            Ok(0)
        }
        Command::Census { n } => census(&ctx, n),
        Command::CheckTemplate { template } => {
            let t = match template.as_str() {
                "gadget" | "doubling" => ctx.template(&template)?,
                path => read_template(Path::new(path))?,
            };
            let rep = validate_template(&t, &ctx.options.budget)?;
            for c in &rep.checks {
                ctx.emit(
                    format!("{} {} {}", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail),
                    json!({"template": rep.template, "check": c.name, "passed": c.passed, "detail": c.detail}),
                );
            }
            Ok(if rep.passed() { 0 } else { 1 })
        }
        Command::Inequalities { count, max_crossings } => {
            let ds = random_knot_diagrams(count, max_crossings, ctx.seed)?;
            let mut violations = 0;
            let mut unresolved = 0;
            for (i, d) in ds.iter().enumerate() {
                let r = unknotting_number_with(d, &ctx.options)?;
                let a = ascending_number_of_diagram(d)?.value;
                let c = d.crossing_count();
                let ok = r.status.lower() <= a && 2 * a < c.max(1);
                violations += usize::from(!ok);
                unresolved += usize::from(r.status.exact().is_none());
                ctx.emit(
                    format!("{i:4} c={c} u={} a={a} {}", r.status, if ok { "ok" } else { "VIOLATION" }),
                    json!({"index": i, "c": c, "u": r.status.to_string(), "a": a, "ok": ok, "gauss": d.to_gauss()}),
                );
            }
            ctx.emit(
                format!("{count} diagrams, {violations} violations, {unresolved} not exact"),
                json!({"summary": true, "count": count, "violations": violations, "not_exact": unresolved}),
            );
            Ok(if violations > 0 {
                1
            } else if unresolved > 0 {
                4
            } else {
                0
            })
        }
    }
}

fn census(ctx: &Ctx, n: usize) -> Result<u8, Error> {
    let items = enumerate_knot_diagrams(n)?;
    let mut counter = 0;
    let mut unknown = 0;
    for (i, it) in items.iter().enumerate() {
        let d = &it.diagram;
        let c = d.crossing_count();
        let r = unknotting_number_with(d, &ctx.options)?;
        let eq = is_knot_equality_diagram(d)?;
        let attains = r.status.exact().map(|u| 2 * u + 1 == c);
        let agrees = attains.map(|a| a == eq);
        match agrees {
            Some(false) => counter += 1,
            None => unknown += 1,
            Some(true) => {}
        }
        let verdict = match agrees {
            Some(true) => "ok",
            Some(false) => "COUNTEREXAMPLE",
            None => "unknown",
        };
        ctx.emit(
            format!("{i:5} c={c} u={:<16} recognizer={eq:<5} {verdict:<14} {}", r.status.to_string(), d.to_gauss()),
            json!({
                "index": i, "c": c, "u": r.status.to_string(), "equality": eq,
                "agrees": agrees, "chiral": it.chiral, "gauss": d.to_gauss(),
            }),
        );
    }
    ctx.emit(
        format!("{} diagrams, {counter} counterexamples, {unknown} unknown", items.len()),
        json!({"summary": true, "diagrams": items.len(), "counterexamples": counter, "unknown": unknown}),
    );
    Ok(if counter > 0 {
        1
    } else if unknown > 0 {
        4
    } else {
        0
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
