//! `splitgam`: command-line access to the binary matroid toolkit.
//!
//! Exit status is 0 for success, a true property or a passing claim; 1 for a
//! false property, a missing minor or a failing claim; 2 for usage and input
//! errors.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use splitgam::catalog;
use splitgam::graphs::{enumerate_connected, Dedup, EnumOptions};
use splitgam::io::{parse_document, write_graph, write_matroid};
use splitgam::minors::{self, has_minor};
use splitgam::report::{ClaimReport, Status};
use splitgam::splitting::{self, CoextensionFilter};
use splitgam::verify::{self, Bounds, CLAIMS};
use splitgam::{BinaryMatroid, Label, MinorTarget};

#[derive(Parser, Debug)]
#[command(name = "splitgam", version, about = "Splitting operations and excluded minors for binary matroids")]
struct Cli {
    /// Worker threads for searches and sweeps (results do not depend on it).
    #[arg(long, global = true, env = "SPLITGAM_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect or dualize a matroid.
    Matroid {
        #[command(subcommand)]
        action: MatroidAction,
    },
    /// Split, element-split or es-split a matroid on a set of elements.
    Split(SplitArgs),
    /// Search for a minor isomorphic to a target.
    Minor {
        /// Host: a file, `catalog:NAME`, or `-` for standard input.
        input: String,
        /// Target: a catalog name or a file.
        #[arg(long)]
        target: String,
    },
    /// Decide a property of a matroid.
    Check {
        input: String,
        #[arg(long, value_enum)]
        property: Property,
    },
    /// List or show catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Quotients by one element, one per isomorphism class.
    Quotients {
        #[arg(long = "of")]
        of: String,
        /// Label of the added element (default: a fresh `q`).
        #[arg(long)]
        label: Option<String>,
    },
    /// Single-element coextensions, one per isomorphism class.
    Coextensions {
        #[arg(long = "of")]
        of: String,
        /// Label of the added element (default: a fresh `y`).
        #[arg(long)]
        label: Option<String>,
        /// Drop results with a cocircuit of size two.
        #[arg(long = "no-2cut")]
        no_2cut: bool,
        /// Drop results in which the new element is a coloop.
        #[arg(long)]
        no_coloop: bool,
        #[arg(long)]
        max_loops: Option<usize>,
    },
    /// Connected multigraphs within bounds.
    Enumerate {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 0)]
        min_edges: usize,
        /// none, graph or matroid.
        #[arg(long, default_value = "matroid")]
        dedup: String,
        #[arg(long)]
        max_loops: Option<usize>,
        #[arg(long)]
        max_multiplicity: Option<usize>,
        /// Print cycle matroids instead of graphs.
        #[arg(long)]
        matroids: bool,
    },
    /// Run a claim (or `all`) and print its report.
    Verify {
        claim: String,
        #[arg(long, default_value_t = Bounds::default().vertices)]
        vertices: usize,
        #[arg(long, default_value_t = Bounds::default().edges)]
        edges: usize,
        #[arg(long)]
        json: bool,
        /// Also write the report to this file.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Re-execute every witness in a saved report.
    Recheck { report: String },
}

#[derive(Subcommand, Debug)]
enum MatroidAction {
    Info { input: String },
    Dual { input: String },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Args, Debug)]
struct SplitArgs {
    input: String,
    /// Comma-separated labels.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    set: Vec<String>,
    /// Element splitting: add `q` as the unit vector of the new row.
    #[arg(long, conflicts_with = "es")]
    element: bool,
    /// Es-splitting: copy the pivot as `gamma`, then element-split.
    #[arg(long, requires = "pivot")]
    es: bool,
    #[arg(long)]
    pivot: Option<String>,
    /// Label of the new element (default: a fresh `q`).
    #[arg(long)]
    q: Option<String>,
    /// Label of the pivot copy (default: a fresh `gamma`).
    #[arg(long)]
    gamma: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Property {
    Gammoid,
    Graphic,
    Cographic,
}

/// Failure modes that map onto exit status 2.
#[derive(Debug)]
enum CliError {
    Input(String),
    Core(splitgam::Error),
}

impl From<splitgam::Error> for CliError {
    fn from(e: splitgam::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Output text together with the exit status it implies.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn success(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn read_source(input: &str) -> CliResult<String> {
    if input == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(input).map_err(|e| CliError::Input(format!("{input}: {e}")))
    }
}

fn with_origin(input: &str, e: splitgam::Error) -> CliError {
    let origin = if input == "-" { "<stdin>" } else { input };
    CliError::Input(format!("{origin}: {e}"))
}

/// Resolves `catalog:NAME`, `-` or a path to a binary matroid.
fn load_matroid(input: &str) -> CliResult<BinaryMatroid> {
    if let Some(name) = input.strip_prefix("catalog:") {
        let entry = catalog::entry(name)?;
        return entry
            .matroid()
            .ok_or_else(|| CliError::Input(format!("{} is not binary", entry.name)));
    }
    let text = read_source(input)?;
    parse_document(&text)
        .map(|d| d.into_matroid())
        .map_err(|e| with_origin(input, e))
}

/// Like [`load_matroid`], but a bare name is tried against the catalog first.
fn load_named(input: &str) -> CliResult<BinaryMatroid> {
    let name = input.strip_prefix("catalog:").unwrap_or(input);
    if catalog::entry(name).is_ok() {
        return load_matroid(&format!("catalog:{name}"));
    }
    load_matroid(input)
}

fn load_target(spec: &str) -> CliResult<(String, MinorTarget)> {
    let name = spec.strip_prefix("catalog:").unwrap_or(spec);
    if let Ok(entry) = catalog::entry(name) {
        return Ok((entry.name.to_string(), entry.target()));
    }
    Ok((spec.to_string(), MinorTarget::Binary(load_matroid(spec)?)))
}

fn set_text(labels: &[Label]) -> String {
    let parts: Vec<&str> = labels.iter().map(Label::as_str).collect();
    format!("{{{}}}", parts.join(","))
}

fn label_or_fresh(b: &BinaryMatroid, given: Option<&str>, base: &str) -> String {
    given.map_or_else(|| b.fresh_label(base).to_string(), str::to_string)
}

fn matroid_info(b: &BinaryMatroid) -> CliResult<String> {
    let mut out = String::new();
    let _ = writeln!(out, "elements {}", b.len());
    let _ = writeln!(out, "rank {}", b.rank());
    let _ = writeln!(out, "loops {}", set_text(&b.loops()));
    let _ = writeln!(out, "coloops {}", set_text(&b.coloops()));
    let classes: Vec<String> = b.parallel_classes().iter().map(|c| set_text(c)).collect();
    let _ = writeln!(out, "parallel-classes {}", classes.join(" "));
    let _ = writeln!(out, "circuits {}", b.circuits(None).len());
    let _ = writeln!(out, "cocircuits {}", b.cocircuits(None).len());
    let yes_no = |v: bool| if v { "yes" } else { "no" };
    if b.len() <= minors::HOST_CAP {
        let _ = writeln!(out, "binary-gammoid {}", yes_no(minors::is_binary_gammoid(b)?));
        let _ = writeln!(out, "graphic {}", yes_no(minors::is_graphic(b)?));
        let _ = writeln!(out, "cographic {}", yes_no(minors::is_cographic(b)?));
    }
    if b.len() <= splitgam::matroid::CANONICAL_FORM_CAP {
        let code: String = b
            .canonical_form()?
            .as_bytes()
            .iter()
            .map(|x| format!("{x:02x}"))
            .collect();
        let _ = writeln!(out, "canonical {code}");
    }
    Ok(out)
}

fn join_matroids(items: &[BinaryMatroid], what: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} {what}", items.len());
    for (i, m) in items.iter().enumerate() {
        let _ = writeln!(out, "# {what} {}", i + 1);
        out.push_str(&write_matroid(m));
    }
    out
}

fn run_split(args: &SplitArgs) -> CliResult<Outcome> {
    let b = load_matroid(&args.input)?;
    let q = label_or_fresh(&b, args.q.as_deref(), "q");
    let result = if args.es {
        let pivot = args.pivot.as_deref().expect("clap requires a pivot");
        let gamma = match args.gamma.as_deref() {
            Some(g) => g.to_string(),
            None => b
                .extend(Label::new(q.as_str()).map_err(CliError::Core)?, 0)?
                .fresh_label("gamma")
                .to_string(),
        };
        splitting::es_split(&b, &args.set, pivot, &gamma, &q)?
    } else if args.element {
        splitting::element_split(&b, &args.set, &q)?
    } else {
        splitting::split(&b, &args.set)?
    };
    Ok(Outcome::success(write_matroid(&result)))
}

fn run_minor(input: &str, target: &str) -> CliResult<Outcome> {
    let b = load_matroid(input)?;
    let (name, t) = load_target(target)?;
    Ok(match has_minor(&b, &t)? {
        Some(w) => {
            let mut out = format!("minor {name} found\n");
            let _ = writeln!(out, "DELETE {}", set_text(&w.deleted));
            let _ = writeln!(out, "CONTRACT {}", set_text(&w.contracted));
            let pairs: Vec<String> = w
                .mapping
                .pairs
                .iter()
                .map(|(a, b)| format!("{a}={b}"))
                .collect();
            let _ = writeln!(out, "MAP {}", pairs.join(" "));
            Outcome::success(out)
        }
        None => Outcome {
            text: format!("no {name} minor\n"),
            ok: false,
        },
    })
}

fn run_check(input: &str, property: Property) -> CliResult<Outcome> {
    let b = load_matroid(input)?;
    let found = match property {
        Property::Gammoid => minors::gammoid_obstruction(&b)?,
        Property::Graphic => minors::graphic_obstruction(&b)?,
        Property::Cographic => minors::graphic_obstruction(&b.dual())?,
    };
    Ok(match found {
        None => Outcome::success("true\n".into()),
        Some((name, _)) => {
            let whose = if matches!(property, Property::Cographic) {
                "the dual has"
            } else {
                "has"
            };
            Outcome {
                text: format!("false\n# {whose} an {name} minor\n"),
                ok: false,
            }
        }
    })
}

fn run_catalog(action: &CatalogAction) -> CliResult<Outcome> {
    match action {
        CatalogAction::List => {
            let mut out = String::new();
            for e in catalog::entries() {
                let aliases = if e.aliases.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", e.aliases.join(", "))
                };
                let _ = writeln!(out, "{}{aliases}: {}", e.name, e.note);
            }
            Ok(Outcome::success(out))
        }
        CatalogAction::Show { name } => Ok(Outcome::success(catalog::entry(name)?.show())),
    }
}

fn run_enumerate(
    vertices: usize,
    edges: usize,
    min_edges: usize,
    dedup: &str,
    max_loops: Option<usize>,
    max_multiplicity: Option<usize>,
    matroids: bool,
) -> CliResult<Outcome> {
    let mut opts = EnumOptions::new(vertices, edges);
    opts.min_edges = min_edges;
    opts.dedup = dedup.parse::<Dedup>()?;
    opts.max_loops_per_vertex = max_loops;
    opts.max_multiplicity = max_multiplicity;
    let graphs = enumerate_connected(&opts)?;
    let mut out = String::new();
    let _ = writeln!(out, "# {} graphs", graphs.len());
    for (i, g) in graphs.iter().enumerate() {
        let _ = writeln!(out, "# graph {}", i + 1);
        if matroids {
            out.push_str(&write_matroid(&g.cycle_matroid()));
        } else {
            out.push_str(&write_graph(g));
        }
    }
    Ok(Outcome::success(out))
}

fn run_verify(
    claim: &str,
    bounds: Bounds,
    json: bool,
    output: Option<&PathBuf>,
) -> CliResult<Outcome> {
    let claims: Vec<&str> = if claim == "all" {
        CLAIMS.to_vec()
    } else {
        vec![claim]
    };
    let reports = claims
        .iter()
        .map(|c| verify::verify(c, bounds))
        .collect::<splitgam::Result<Vec<ClaimReport>>>()?;
    let text = if json {
        if reports.len() == 1 {
            reports[0].to_json()
        } else {
            serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n"
        }
    } else {
        reports.iter().map(ClaimReport::to_text).collect()
    };
    if let Some(path) = output {
        std::fs::write(path, &text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    let ok = reports.iter().all(|r| r.status != Status::Fail);
    Ok(Outcome { text, ok })
}

fn run_recheck(input: &str) -> CliResult<Outcome> {
    let text = read_source(input)?;
    let reports = ClaimReport::parse_many(&text).map_err(|e| with_origin(input, e))?;
    let mut out = String::new();
    let mut ok = true;
    for r in &reports {
        let problems = r.problems();
        let items = r.witnesses.len() + r.counterexamples.len();
        if problems.is_empty() {
            let _ = writeln!(out, "{} {} recheck ok ({items} witnesses)", r.claim, r.status);
        } else {
            ok = false;
            let _ = writeln!(out, "{} {} recheck FAILED", r.claim, r.status);
            for p in problems {
                let _ = writeln!(out, "  {p}");
            }
        }
    }
    Ok(Outcome { text: out, ok })
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Matroid { action } => match action {
            MatroidAction::Info { input } => Ok(Outcome::success(matroid_info(&load_matroid(input)?)?)),
            MatroidAction::Dual { input } => {
                Ok(Outcome::success(write_matroid(&load_matroid(input)?.dual())))
            }
        },
        Command::Split(args) => run_split(args),
        Command::Minor { input, target } => run_minor(input, target),
        Command::Check { input, property } => run_check(input, *property),
        Command::Catalog { action } => run_catalog(action),
        Command::Quotients { of, label } => {
            let b = load_named(of)?;
            let qs = splitting::quotients(&b, &label_or_fresh(&b, label.as_deref(), "q"))?;
            Ok(Outcome::success(join_matroids(&qs, "quotient")))
        }
        Command::Coextensions {
            of,
            label,
            no_2cut,
            no_coloop,
            max_loops,
        } => {
            let filter = CoextensionFilter {
                no_2_cocircuit: *no_2cut,
                no_coloop: *no_coloop,
                max_loops: *max_loops,
            };
            let b = load_named(of)?;
            let y = label_or_fresh(&b, label.as_deref(), "y");
            let cs = splitting::coextensions(&b, &y, filter)?;
            Ok(Outcome::success(join_matroids(&cs, "coextension")))
        }
        Command::Enumerate {
            vertices,
            edges,
            min_edges,
            dedup,
            max_loops,
            max_multiplicity,
            matroids,
        } => run_enumerate(
            *vertices,
            *edges,
            *min_edges,
            dedup,
            *max_loops,
            *max_multiplicity,
            *matroids,
        ),
        Command::Verify {
            claim,
            vertices,
            edges,
            json,
            output,
        } => run_verify(claim, Bounds::new(*vertices, *edges), *json, output.as_ref()),
        Command::Recheck { report } => run_recheck(report),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(outcome.text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
