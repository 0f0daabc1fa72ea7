//! `unireg`: run verification checks and rewriting utilities from the shell.

mod catalog;
mod report;

use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use unireg_core::battery::DEFAULT_SEED;
use unireg_core::freealg::{bounded_inverse_search, check_diamond, NCPoly, ReductionSystem, SearchSpace};
use unireg_core::par::Exec;

use catalog::{Params, CATALOG};
use report::{InputEcho, ReportDocument, Status};

#[derive(Parser)]
#[command(name = "unireg", version, about = "Exact checks for regularity, unit-regularity and clean decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show the registered checks.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Run one or more checks; independent checks run concurrently.
    Run(RunArgs),
    /// Print the normal form of an expression under a reduction system.
    Reduce {
        #[arg(long)]
        system: PathBuf,
        /// Print every rewrite step.
        #[arg(long)]
        trace: bool,
        expr: String,
    },
    /// Check every overlap and inclusion ambiguity of a reduction system.
    Diamond {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search for a two-sided inverse among normal words up to a length.
    Invsearch {
        #[arg(long)]
        system: PathBuf,
        /// Longest word in the candidate span.
        #[arg(long, default_value_t = 6)]
        bound: u32,
        expr: String,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Check ids, e.g. paper.correspondence.
    #[arg(required = true)]
    checks: Vec<String>,
    /// Finite ring spec such as Z/4, M2(F3), T2(F2), F2[x]/(x^2); a field for Toeplitz checks.
    #[arg(long)]
    ring: Option<String>,
    /// Element literal in the ring's syntax.
    #[arg(long)]
    elem: Option<String>,
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long)]
    radius: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Emit the JSON report instead of the summary.
    #[arg(long)]
    json: bool,
    /// Write the JSON report here as well.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Disable worker threads.
    #[arg(long)]
    sequential: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::List { json } => list(json).map(|_| 0),
        Command::Run(args) => run(args),
        Command::Reduce { system, trace, expr } => reduce(&system, &expr, trace).map(|_| 0),
        Command::Diamond { system, json } => diamond(&system, json),
        Command::Invsearch { system, bound, expr } => invsearch(&system, &expr, bound),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn color(status: Status) -> String {
    let tag = status.tag();
    if std::env::var_os("NO_COLOR").is_some() || !std::io::stdout().is_terminal() {
        return tag.to_string();
    }
    let code = match status {
        Status::Pass => 32,
        Status::Fail => 31,
        Status::Inconclusive => 33,
    };
    format!("\x1b[{code}m{tag}\x1b[0m")
}

fn list(as_json: bool) -> Result<()> {
    if as_json {
        let items: Vec<_> = CATALOG
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "anchor": c.anchor,
                    "summary": c.summary,
                    "flags": c.accepts.iter().map(|f| f.name()).collect::<Vec<_>>(),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&items)?);
        return Ok(());
    }
    for c in CATALOG {
        let flags: Vec<&str> = c.accepts.iter().map(|f| f.name()).collect();
        println!("{:<28} {}", c.id, c.summary);
        println!("{:<28} anchor: \"{}\"", "", c.anchor);
        if !flags.is_empty() {
            println!("{:<28} flags: {}", "", flags.join(" "));
        }
    }
    Ok(())
}

fn run(args: RunArgs) -> Result<u8> {
    let exec = if args.sequential { Exec::Sequential } else { Exec::default() };
    let params = Params {
        ring: args.ring.clone(),
        elem: args.elem.clone(),
        bound: args.bound,
        radius: args.radius,
        seed: args.seed.unwrap_or(DEFAULT_SEED),
        seed_given: args.seed.is_some(),
        exec,
    };
    // validate everything before running anything
    let mut checks = Vec::new();
    for id in &args.checks {
        let c = catalog::find(id)?;
        c.validate(&params)?;
        checks.push(c);
    }
    checks.sort_by_key(|c| c.id);
    checks.dedup_by_key(|c| c.id);

    let echo = InputEcho {
        ring: args.ring,
        elem: args.elem,
        system: None,
        bound: args.bound,
        radius: args.radius,
        seed: params.seed,
        exec: if exec.is_parallel() { "parallel" } else { "sequential" },
    };
    let docs: Vec<Result<ReportDocument>> = std::thread::scope(|s| {
        let handles: Vec<_> = checks
            .iter()
            .map(|c| {
                let (params, echo) = (&params, echo.clone());
                s.spawn(move || {
                    let start = Instant::now();
                    let out = c.run(params).with_context(|| format!("check {}", c.id))?;
                    Ok(ReportDocument::new(
                        c.id,
                        c.anchor,
                        out.status,
                        out.warnings,
                        out.result,
                        echo,
                        start.elapsed().as_secs_f64(),
                    ))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    let docs = docs.into_iter().collect::<Result<Vec<_>>>()?;

    let text = if docs.len() == 1 {
        docs[0].to_json()
    } else {
        serde_json::to_string_pretty(&docs)?
    };
    if let Some(path) = &args.out {
        std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    if args.json {
        println!("{text}");
    } else {
        for d in &docs {
            print_summary(d);
        }
    }
    let worst = docs
        .iter()
        .map(|d| d.status)
        .max_by_key(|s| match s {
            Status::Pass => 0,
            Status::Inconclusive => 1,
            Status::Fail => 2,
        })
        .unwrap_or(Status::Pass);
    Ok(worst.exit_code())
}

fn print_summary(d: &ReportDocument) {
    println!("{} [{}] ({:.2}s)", d.check, color(d.status), d.timing.seconds);
    if let Some(criteria) = d.result.get("criteria").and_then(|c| c.as_array()) {
        for c in criteria {
            let tag = if c["passed"] == true { "PASS" } else { "FAIL" };
            println!("  criterion {:>2} [{tag}] {}", c["number"], c["name"].as_str().unwrap_or(""));
        }
    } else if let Some(obj) = d.result.as_object() {
        // short scalar fields only; --json has the rest
        for (k, v) in obj {
            let s = v.to_string();
            if !v.is_object() && s.len() <= 72 {
                println!("  {k}: {s}");
            }
        }
    }
    for w in &d.warnings {
        println!("  warning: {w}");
    }
}

fn load_system(path: &Path) -> Result<ReductionSystem> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ReductionSystem::parse(&text).with_context(|| format!("{}", path.display()))
}

fn parse_expr(sys: &ReductionSystem, text: &str) -> Result<NCPoly> {
    sys.parse_poly(text).with_context(|| format!("expression '{text}'"))
}

fn reduce(path: &Path, expr: &str, trace: bool) -> Result<()> {
    let sys = load_system(path)?;
    let p = parse_expr(&sys, expr)?;
    let (nf, steps) = sys.normal_form_traced(&p);
    if trace {
        let field = sys.field();
        for (i, st) in steps.iter().enumerate() {
            let rule = &sys.rules()[st.rule];
            println!(
                "step {}: {} at position {} by rule {} ({} -> {})",
                i + 1,
                sys.show(&NCPoly::word(field, st.word.clone())),
                st.position,
                st.rule + 1,
                sys.show(&NCPoly::word(field, rule.lhs.clone())),
                sys.show(&rule.rhs),
            );
        }
    }
    println!("{}", sys.show(&nf));
    Ok(())
}

fn diamond(path: &Path, as_json: bool) -> Result<u8> {
    let sys = load_system(path)?;
    let rep = check_diamond(&sys, Exec::default());
    let unresolved: Vec<_> = rep.ambiguities.iter().filter(|a| !a.difference.is_zero()).collect();
    if as_json {
        let items: Vec<_> = unresolved
            .iter()
            .map(|a| {
                json!({
                    "kind": format!("{:?}", a.kind),
                    "rules": [a.rule_a + 1, a.rule_b + 1],
                    "word": sys.show(&NCPoly::word(sys.field(), a.witness.clone())),
                    "difference": sys.show(&a.difference),
                })
            })
            .collect();
        let doc = json!({
            "rules": sys.rules().len(),
            "ambiguities": rep.ambiguities.len(),
            "confluent": rep.is_confluent(),
            "unresolved": items,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!(
            "{} rules, {} ambiguities, {} unresolved",
            sys.rules().len(),
            rep.ambiguities.len(),
            unresolved.len()
        );
        for a in &unresolved {
            println!(
                "  {:?} of rules {} and {} on {}: {}",
                a.kind,
                a.rule_a + 1,
                a.rule_b + 1,
                sys.show(&NCPoly::word(sys.field(), a.witness.clone())),
                sys.show(&a.difference)
            );
        }
        println!("{}", if rep.is_confluent() { "confluent" } else { "not confluent" });
    }
    Ok(if rep.is_confluent() { 0 } else { 1 })
}

fn invsearch(path: &Path, expr: &str, bound: u32) -> Result<u8> {
    let sys = load_system(path)?;
    let u = sys.normal_form(&parse_expr(&sys, expr)?);
    if u.is_zero() {
        bail!("zero has no inverse");
    }
    let space = SearchSpace::length(bound as usize);
    let found = bounded_inverse_search(&u, &sys, &space, Exec::default())?;
    println!(
        "{} candidate words, {} equations, rank {}",
        found.dimension, found.equations, found.rank
    );
    match &found.inverse {
        Some(v) => {
            println!("inverse ({} terms): {}", v.len(), sys.show(v));
            Ok(0)
        }
        None => {
            println!("no inverse among words of length <= {bound}");
            Ok(Status::Inconclusive.exit_code())
        }
    }
}
