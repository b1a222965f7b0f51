use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vankampen::catalog::{self, GroupId};
use vankampen::group::{tietze_simplify, vankampen as vk_presentation, Presentation};
use vankampen::monodromy::{format_braids, parse_braids};
use vankampen::pipeline::{
    curve_discriminant, fiber_and_base, point_text, run_catalog, run_vk, verify_presentation,
    Enumeration, PipelineConfig, PipelineError, VerificationReport,
};
use vankampen::poly::{MultiPoly, UniPoly};
use vankampen::roots::{certify_roots, RootOptions};

#[derive(Parser)]
#[command(
    name = "vankampen",
    version,
    about = "Braid monodromy and fundamental groups of plane curve complements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Fiber variable (default: the variable in which the curve is monic)
    #[arg(long, global = true)]
    fiber_var: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Extra decimal digits kept by Newton steps
    #[arg(long, global = true, default_value_t = 2)]
    guard_digits: u32,
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_cosets: usize,
    /// Moves tried by the presentation simplifier
    #[arg(long, global = true, default_value_t = 2000)]
    simplify_budget: usize,
    /// Worker threads for the monodromy stage (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the loop braids to this file
    #[arg(long, global = true)]
    emit_braids: Option<PathBuf>,
    /// Write the Voronoi graph and loops to this file
    #[arg(long, global = true)]
    emit_loops: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental group presentation of the complement of a curve
    Vk {
        /// Polynomial in two variables, or `-` for stdin
        poly: String,
        /// Print the presentation before simplification as well
        #[arg(long)]
        raw: bool,
    },
    /// Discriminant in the fiber variable and its certified roots
    Disc { poly: String },
    /// Plane curve of a catalog group
    Curve { id: GroupId },
    /// Van Kampen presentation of a braid file
    Present { braids: String },
    /// Tietze simplification of a presentation file
    Simplify { presentation: String },
    /// Abelianization, quadratic quotient order and centrality
    Verify {
        presentation: String,
        /// Add the square of every generator before enumerating
        #[arg(long)]
        quadratic: bool,
        /// Word whose image should be central, e.g. "s t u s t u"
        #[arg(long)]
        central: Option<String>,
    },
    /// Catalog entry dump, or the full run on its plane curve
    Catalog {
        id: GroupId,
        #[arg(long)]
        run: bool,
    },
}

fn input(arg: &str) -> Result<String, PipelineError> {
    let io = |e: std::io::Error| PipelineError::Precondition {
        stage: "input",
        reason: e.to_string(),
    };
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        fs::read_to_string(arg).map_err(io)
    }
}

fn write(path: &PathBuf, text: &str) -> Result<(), PipelineError> {
    fs::write(path, text).map_err(|e| PipelineError::Precondition {
        stage: "output",
        reason: format!("{}: {}", path.display(), e),
    })
}

fn parse_poly(arg: &str) -> Result<MultiPoly, PipelineError> {
    let text = if arg == "-" {
        input(arg)?
    } else {
        arg.to_string()
    };
    MultiPoly::parse(text.trim()).map_err(|e| PipelineError::Precondition {
        stage: "input",
        reason: e.to_string(),
    })
}

fn parse_presentation(arg: &str) -> Result<Presentation, PipelineError> {
    Presentation::parse(&input(arg)?).map_err(|e| PipelineError::Precondition {
        stage: "input",
        reason: e.to_string(),
    })
}

fn presentation_json(p: &Presentation) -> Value {
    let rels: Vec<String> = p
        .relators()
        .iter()
        .map(|r| r.display(p.gens()).to_string())
        .collect();
    json!({ "generators": p.gens(), "relators": rels })
}

fn report_json(r: &VerificationReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn uni_text(p: &UniPoly, var: &str) -> String {
    p.to_multi(var).to_string()
}

/// Output and exit code; a coset overflow still prints its report but
/// exits as a resource failure.
fn run(cli: Cli) -> Result<(String, u8), PipelineError> {
    let o = &cli.opts;
    let cfg = PipelineConfig {
        fiber_var: o.fiber_var.clone(),
        seed: o.seed,
        guard_digits: o.guard_digits,
        max_cosets: o.max_cosets,
        simplify_budget: o.simplify_budget,
        jobs: o.jobs,
    };
    let json = o.format == Format::Json;
    let mut code = 0;
    let emit = |run: &vankampen::pipeline::VkRun| -> Result<(), PipelineError> {
        if let Some(path) = &o.emit_braids {
            write(path, &format_braids(run.strands.max(1), &run.braids))?;
        }
        if let Some(path) = &o.emit_loops {
            let text = match (&run.graph, &run.roots) {
                (Some(g), Some(r)) => {
                    vankampen::geometry::dump_text(g, r.sorted().points(), run.loops.as_ref())
                }
                _ => String::new(),
            };
            write(path, &text)?;
        }
        Ok(())
    };
    let out = match &cli.command {
        Command::Vk { poly, raw } => {
            let curve = parse_poly(poly)?;
            let run = run_vk(&curve, &cfg)?;
            emit(&run)?;
            if json {
                let braids: Vec<String> = run.braids.iter().map(|b| b.to_string()).collect();
                let mut v = json!({
                    "fiber": run.fiber,
                    "base": run.base,
                    "strings": run.strands,
                    "discriminant": uni_text(&run.discriminant, &run.base),
                    "braids": braids,
                    "presentation": presentation_json(&run.presentation),
                });
                if *raw {
                    v["raw"] = presentation_json(&run.raw);
                }
                v.to_string()
            } else if *raw {
                format!("{}\n{}", run.raw, run.presentation)
            } else {
                run.presentation.to_string()
            }
        }
        Command::Disc { poly } => {
            let curve = parse_poly(poly)?;
            let (fiber, base) = fiber_and_base(&curve, cfg.fiber_var.as_deref())?;
            let (disc, sq) = curve_discriminant(&curve, &fiber, &base)?;
            let roots = if sq.degree().unwrap_or(0) > 0 {
                let opts = RootOptions {
                    seed: cfg.seed,
                    guard: cfg.guard_digits,
                };
                let c = certify_roots(&sq, &opts).map_err(|e| PipelineError::Internal {
                    stage: "roots",
                    reason: e.to_string(),
                })?;
                c.sorted().points().iter().map(point_text).collect()
            } else {
                Vec::new()
            };
            if json {
                json!({
                    "fiber": fiber,
                    "base": base,
                    "discriminant": uni_text(&disc, &base),
                    "squarefree": uni_text(&sq, &base),
                    "roots": roots,
                })
                .to_string()
            } else {
                let mut s = format!(
                    "fiber: {}\nbase: {}\ndiscriminant: {}\nsquarefree: {}\n",
                    fiber,
                    base,
                    uni_text(&disc, &base),
                    uni_text(&sq, &base)
                );
                for r in roots {
                    s += &format!("root {}\n", r);
                }
                s
            }
        }
        Command::Curve { id } => {
            let c = catalog::plane_curve(*id)?;
            if json {
                json!({ "group": id.to_string(), "curve": c.to_string() }).to_string()
            } else {
                format!("{}\n", c)
            }
        }
        Command::Present { braids } => {
            let (n, words) =
                parse_braids(&input(braids)?).map_err(|e| PipelineError::Precondition {
                    stage: "input",
                    reason: e.to_string(),
                })?;
            let p = vk_presentation(n, &words).map_err(|e| PipelineError::Precondition {
                stage: "presentation",
                reason: e.to_string(),
            })?;
            if json {
                presentation_json(&p).to_string()
            } else {
                p.to_string()
            }
        }
        Command::Simplify { presentation } => {
            let p = tietze_simplify(
                &parse_presentation(presentation)?,
                cfg.seed,
                cfg.simplify_budget,
            );
            if json {
                presentation_json(&p).to_string()
            } else {
                p.to_string()
            }
        }
        Command::Verify {
            presentation,
            quadratic,
            central,
        } => {
            let p = parse_presentation(presentation)?;
            let w = central
                .as_deref()
                .map(|s| p.parse_word(s))
                .transpose()
                .map_err(|e| PipelineError::Precondition {
                    stage: "input",
                    reason: e.to_string(),
                })?;
            let r = verify_presentation(&p, *quadratic, w.as_ref(), cfg.max_cosets);
            if matches!(r.quotient, Some(Enumeration::Overflow { .. })) {
                code = 3;
            }
            if json {
                report_json(&r).to_string()
            } else {
                r.to_text()
            }
        }
        Command::Catalog { id, run: false } => {
            let e = catalog::get_entry(*id);
            if json {
                let ps: Vec<Value> = e.presentations.iter().map(presentation_json).collect();
                json!({
                    "group": id.to_string(),
                    "order": e.order,
                    "vars": e.vars,
                    "weights": e.weights,
                    "presentations": ps,
                })
                .to_string()
            } else {
                e.dump_text()
            }
        }
        Command::Catalog { id, run: true } => {
            let r = run_catalog(*id, &cfg)?;
            emit(&r.run)?;
            if matches!(r.report.quotient, Some(Enumeration::Overflow { .. })) {
                code = 3;
            }
            if json {
                let mut rep = report_json(&r.report);
                rep["group"] = json!(id.to_string());
                rep["curve"] = json!(r.curve.to_string());
                rep["expected_order"] = json!(r.expected_order);
                rep["order_ok"] = json!(r.order_ok());
                rep["matches_target"] = json!(r.matches_target);
                rep["presentation"] = presentation_json(&r.run.presentation);
                rep.to_string()
            } else {
                format!(
                    "group: {}\ncurve: {}\n{}{}expected order: {} ({})\nmatches a printed presentation: {}\n",
                    id,
                    r.curve,
                    r.run.presentation,
                    r.report.to_text(),
                    r.expected_order,
                    if r.order_ok() { "ok" } else { "MISMATCH" },
                    r.matches_target.map_or("none".to_string(), |i| i.to_string())
                )
            }
        }
    };
    Ok((out, code))
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{}", out);
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
