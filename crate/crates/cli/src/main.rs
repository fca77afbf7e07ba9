//! `convcode`: compute, shrink, render and decide planar convex codes.

mod config;
mod failure;
mod generate;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use convcode_core::bridge::{check_empty_interior_lemma, open_minimize};
use convcode_core::decider::{
    emit_sentence, per_polygon_bound, render_smt, representative_bound, search_realization_with,
    solve_external, vertex_bound, SearchOptions, SOLVER_ENV,
};
use convcode_core::io::{
    code_to_document, format_rational, parse_code, parse_realization, representatives_to_entries,
    to_json, write_code, write_realization, CodeDocument, RepresentativeEntry,
};
use convcode_core::shrink::{minimize, MinimizeConfig, Move};
use convcode_core::svg::render_svg;
use convcode_core::{code_of, representatives_of, Error, Realization, Semantics};

use config::Config;
use failure::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "convcode",
    version,
    about = "Exact workbench for planar convex codes"
)]
struct Cli {
    /// TOML file with defaults; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SemanticsArg {
    Closed,
    Open,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Semantics {
        match s {
            SemanticsArg::Closed => Semantics::Closed,
            SemanticsArg::Open => Semantics::Open,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the code of a realization.
    Code(CodeArgs),
    /// Shrink a realization without changing its code.
    Minimize(MinimizeArgs),
    /// Emit the realizability sentence, run a solver, or search a grid.
    Decide(DecideArgs),
    /// Draw a realization as SVG.
    Render(RenderArgs),
    /// Print the vertex-count bounds.
    Bounds(BoundsArgs),
    /// Check that closing an open realization only adds flat codewords.
    BridgeCheck(BridgeArgs),
    /// Generate a random realization.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct CodeArgs {
    input: PathBuf,
    /// Read the sets under these semantics instead of the file's.
    #[arg(long, value_enum)]
    semantics: Option<SemanticsArg>,
    /// Also list one representative point per codeword.
    #[arg(long)]
    reps: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MinimizeArgs {
    input: PathBuf,
    /// Cap on accepted moves.
    #[arg(long)]
    budget: Option<usize>,
    /// Minimize an open realization through its closure.
    #[arg(long)]
    open: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecideArgs {
    /// Code document.
    input: PathBuf,
    /// Write the SMT-LIB sentence here.
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Halfplanes per set; defaults to the per-polygon vertex bound.
    #[arg(long)]
    n_halfplanes: Option<usize>,
    #[arg(long, value_enum, default_value = "closed")]
    semantics: SemanticsArg,
    /// Solver command run through `sh -c`; `{file}` is replaced by a path
    /// to the script, otherwise the script goes to stdin.
    #[arg(long)]
    solver: Option<String>,
    /// Solver timeout in seconds.
    #[arg(long)]
    timeout: Option<u64>,
    /// Brute-force search on the grid {0..GRID}².
    #[arg(long, value_name = "GRID")]
    search: Option<u32>,
    /// Vertex cap per set for --search.
    #[arg(long, default_value_t = 4)]
    max_vertices: usize,
}

#[derive(Args, Debug)]
struct RenderArgs {
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Overlay one representative point per codeword.
    #[arg(long)]
    reps: bool,
    #[arg(long, value_enum)]
    semantics: Option<SemanticsArg>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Largest n in the table.
    #[arg(long, default_value_t = 10)]
    max_n: usize,
}

#[derive(Args, Debug)]
struct BridgeArgs {
    input: PathBuf,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sets.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_enum, default_value = "closed")]
    semantics: SemanticsArg,
    #[arg(long, default_value_t = 6)]
    max_vertices: usize,
    /// Coordinates are multiples of 1/4 in [0, GRID].
    #[arg(long, default_value_t = 16)]
    grid: u32,
    /// Emit one near-regular polygon with this many vertices instead.
    #[arg(long)]
    polygon: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path, semantics: Option<SemanticsArg>) -> Result<Realization, Failure> {
    let r = parse_realization(&read(path)?)?;
    Ok(match semantics {
        Some(s) => r.with_semantics(s.into()),
        None => r,
    })
}

#[derive(Serialize)]
struct CodeWithReps {
    code: CodeDocument,
    representatives: Vec<RepresentativeEntry>,
}

fn cmd_code(args: &CodeArgs) -> Result<(), Failure> {
    let r = load(&args.input, args.semantics)?;
    let code = code_of(&r);
    let text = if args.reps {
        to_json(&CodeWithReps {
            code: code_to_document(&code),
            representatives: representatives_to_entries(&representatives_of(&r)),
        })
    } else {
        write_code(&code)
    };
    write_out(args.output.as_deref(), &text)
}

fn describe(m: &Move) -> String {
    match m {
        Move::Removal { figure, vertex } => format!("remove {vertex} from set {}", figure + 1),
        Move::Pull {
            from,
            toward,
            epsilon,
        } => format!(
            "pull {from} toward {toward} by {}",
            format_rational(epsilon)
        ),
    }
}

fn cmd_minimize(args: &MinimizeArgs, cfg: &Config) -> Result<(), Failure> {
    let r = load(&args.input, None)?;
    let config = MinimizeConfig {
        budget: args
            .budget
            .or(cfg.minimize.budget)
            .unwrap_or(MinimizeConfig::default().budget),
        ..MinimizeConfig::default()
    };
    let mut report = Vec::new();
    let result = if args.open {
        if r.semantics() != Semantics::Open {
            return Err(Failure::usage(
                "--open needs a realization with open semantics",
            ));
        }
        let out = open_minimize(&r, &config)?;
        report.push(format!("pinned points: {}", out.certificate.points.len()));
        report.push(format!(
            "sigma lines: {}",
            out.certificate.sigma_lines.len()
        ));
        report.push(format!(
            "sigma-line sections preserved: {}",
            out.sigma_lines_preserved
        ));
        report.push(format!(
            "total vertex bound {}: {}",
            out.total_bound,
            if out.within_total_bound {
                "met"
            } else {
                "exceeded"
            }
        ));
        report.extend(summary(&out.closed));
        out.realization
    } else {
        if r.semantics() != Semantics::Closed {
            return Err(Failure::usage(
                "open input needs --open (or convert it to closed semantics first)",
            ));
        }
        let pinned: Vec<_> = representatives_of(&r).into_iter().map(|(_, p)| p).collect();
        let out = minimize(&r, &pinned, &config)?;
        report.push(format!("pinned points: {}", pinned.len()));
        report.extend(summary(&out));
        out.realization
    };
    for line in report {
        eprintln!("{line}");
    }
    write_out(args.output.as_deref(), &write_realization(&result))
}

fn summary(out: &convcode_core::MinimizeOutcome) -> Vec<String> {
    let mut lines: Vec<String> = out.moves.iter().map(describe).collect();
    lines.push(format!("moves: {}", out.moves.len()));
    lines.push(format!(
        "vertices: {} -> {}",
        out.vertices_before, out.vertices_after
    ));
    lines.push(format!(
        "per-polygon bound {}: {}",
        out.vertex_bound,
        if out.all_within_bound() {
            "met"
        } else {
            "exceeded"
        }
    ));
    if out.budget_exhausted {
        lines.push("budget exhausted".into());
    }
    lines
}

fn cmd_decide(args: &DecideArgs, cfg: &Config) -> Result<(), Failure> {
    let code = parse_code(&read(&args.input)?)?;
    let semantics: Semantics = args.semantics.into();
    let solver = args
        .solver
        .clone()
        .or_else(|| {
            std::env::var(SOLVER_ENV)
                .ok()
                .filter(|s| !s.trim().is_empty())
        })
        .or_else(|| cfg.solver.command.clone());
    if args.emit.is_none() && solver.is_none() && args.search.is_none() {
        return Err(Failure::usage(
            "nothing to do: pass --emit, --solver (or set CONVCODE_SOLVER) or --search",
        ));
    }

    if args.emit.is_some() || solver.is_some() {
        let halfplanes = match args.n_halfplanes {
            Some(k) => k,
            None => {
                let reps = representative_bound(code.n(), semantics);
                let bound =
                    per_polygon_bound(code.n(), usize::try_from(&reps).unwrap_or(usize::MAX));
                usize::try_from(&bound).map_err(|_| {
                    Failure::usage("the default halfplane count is too large; pass --n-halfplanes")
                })?
            }
        };
        let sentence = emit_sentence(&code, halfplanes, semantics)?;
        let text = render_smt(&sentence);
        if let Some(path) = &args.emit {
            fs::write(path, &text).map_err(|e| Failure::io(path, e))?;
            println!(
                "emitted: {} ({} halfplanes per set)",
                path.display(),
                halfplanes
            );
        }
        if let Some(command) = solver {
            let secs = args.timeout.or(cfg.solver.timeout).unwrap_or(60);
            let status = solve_external(&text, &command, Duration::from_secs(secs))?;
            println!("solver: {status}");
        }
    }

    if let Some(grid) = args.search {
        let options = SearchOptions {
            semantics,
            grid,
            max_vertices: args.max_vertices,
        };
        match search_realization_with(&code, &options) {
            Some(r) => {
                println!("search: witness");
                print!("{}", write_realization(&r));
            }
            None => println!("search: none within budget"),
        }
    }
    Ok(())
}

fn cmd_render(args: &RenderArgs) -> Result<(), Failure> {
    let r = load(&args.input, args.semantics)?;
    let reps = args.reps.then(|| representatives_of(&r));
    let svg = render_svg(&r, reps.as_deref());
    fs::write(&args.output, svg).map_err(|e| Failure::io(&args.output, e))
}

fn cmd_bounds(args: &BoundsArgs) -> Result<(), Failure> {
    println!("n\tclosed_per_polygon\tclosed_total\topen_per_polygon\topen_total");
    for n in 1..=args.max_n {
        let c = vertex_bound(n, Semantics::Closed)?;
        let o = vertex_bound(n, Semantics::Open)?;
        println!(
            "{n}\t{}\t{}\t{}\t{}",
            c.per_polygon, c.total, o.per_polygon, o.total
        );
    }
    Ok(())
}

fn cmd_bridge_check(args: &BridgeArgs) -> Result<(), Failure> {
    let r = load(&args.input, None)?;
    let u = r.with_semantics(Semantics::Open);
    let report = check_empty_interior_lemma(&u)?;
    println!("open code: {}", code_of(&u));
    println!(
        "closed code: {}",
        code_of(&u.with_semantics(Semantics::Closed))
    );
    for (w, x) in &report.intersections {
        let shape = match x.as_ref().map(|f| f.len()) {
            None => "empty".to_string(),
            Some(1) => "point".to_string(),
            Some(2) => "segment".to_string(),
            Some(k) => format!("{k}-gon"),
        };
        println!("gained {w}: intersection is a {shape}");
    }
    if report.holds() {
        println!("empty-interior check: pass");
        Ok(())
    } else {
        let words: Vec<String> = report.violations.iter().map(|w| w.to_string()).collect();
        Err(Error::Verification(format!(
            "codewords with full-dimensional intersection: {}",
            words.join(", ")
        ))
        .into())
    }
}

fn cmd_gen(args: &GenArgs) -> Result<(), Failure> {
    let r = match args.polygon {
        Some(k) => generate::polygon(k, args.semantics.into())?,
        None => generate::random(
            args.seed,
            args.n,
            args.semantics.into(),
            args.max_vertices,
            args.grid,
        )?,
    };
    write_out(args.output.as_deref(), &write_realization(&r))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = match &cli.config {
        Some(path) => config::load(path)?,
        None => Config::default(),
    };
    match &cli.command {
        Command::Code(a) => cmd_code(a),
        Command::Minimize(a) => cmd_minimize(a, &cfg),
        Command::Decide(a) => cmd_decide(a, &cfg),
        Command::Render(a) => cmd_render(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::BridgeCheck(a) => cmd_bridge_check(a),
        Command::Gen(a) => cmd_gen(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
