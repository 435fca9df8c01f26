use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polygame::bounds::{GameSpec, Status};
use polygame::catalog::{run_all, Catalog, RunOptions};
use polygame::paving::Paving;
use polygame::polyform::{named, Polyform};
use polygame::priority::{verify_breaker, CanonicalPosition, HistorySpec, PriorityStrategy, VerifyOptions};
use polygame::proofseq::{verify_sequence, ProofSequence};
use polygame::solver::{solve, SolveConfig};
use polygame::stages::build_diagram;
use polygame::{Error, Window};

/// Certificates and search for biased maker-breaker polyform games.
#[derive(Parser)]
#[command(name = "polygame", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a maker proof sequence.
    VerifyProof { file: PathBuf },
    /// Check that a paving defeats a goal when the maker places one mark.
    VerifyPaving { paving: PathBuf, goal: String },
    /// Check a breaker priority strategy against a goal.
    VerifyPriority(PriorityArgs),
    /// Print the stage diagram of a multi-stage maker strategy.
    StageDiagram {
        /// Breaker marks per turn in each stage, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
        /// Stage lengths, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        l: Vec<u32>,
    },
    /// Search for a forced maker win inside a finite window.
    Solve(SolveArgs),
    /// Print the number of cells adjacent to a goal.
    Perimeter { goal: String },
    /// Operations on the threshold catalog.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Args)]
struct PriorityArgs {
    strategy: PathBuf,
    goal: String,
    /// Ignore the strategy's history cells.
    #[arg(long)]
    no_history: bool,
    /// Also track the response cells of the goal cells.
    #[arg(long, default_value_t = 0)]
    aux: u8,
}

#[derive(Args)]
struct SolveArgs {
    /// A polyform file or a catalog name such as P43.
    #[arg(long)]
    goal: String,
    #[arg(long)]
    a: u32,
    #[arg(long)]
    b: u32,
    /// Marks the maker may place on his final turn.
    #[arg(long)]
    c: Option<u32>,
    /// Window size, e.g. 7x7.
    #[arg(long)]
    window: Option<String>,
    #[arg(long)]
    max_turns: Option<u32>,
    #[arg(long)]
    node_cap: Option<u64>,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Verify every witness and threshold sequence in the catalog.
    Check {
        #[arg(long, default_value = "catalog/catalog.txt")]
        file: PathBuf,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Skip re-checking small claims with the solver.
        #[arg(long)]
        no_cross_check: bool,
    },
}

fn load_goal(arg: &str) -> polygame::Result<Polyform> {
    let path = Path::new(arg);
    if path.exists() {
        return Polyform::load(path);
    }
    named(arg).ok_or_else(|| Error::Invalid {
        what: "goal",
        msg: format!("`{arg}` is neither a file nor a known polyform name"),
    })
}

fn verdict_code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn render_position(p: &CanonicalPosition) -> String {
    p.iter().map(|(c, l)| format!("{l}{c}")).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> polygame::Result<ExitCode> {
    match cli.command {
        Command::VerifyProof { file } => {
            let seq = ProofSequence::load(&file)?;
            println!("game {}", seq.game);
            println!("goal {}", seq.goal);
            let r = verify_sequence(&seq);
            for s in &r.steps {
                println!("{s}");
            }
            println!("verdict: {}", r.verdict);
            Ok(verdict_code(r.verdict.status() == Status::MakerWins))
        }
        Command::VerifyPaving { paving, goal } => {
            let pav = Paving::load(&paving)?;
            let goal = load_goal(&goal)?;
            let r = pav.defeats(&goal);
            println!("paving {} of degree {}", pav.name(), r.degree);
            println!("placements checked: {}", r.placements_checked);
            if let Some(p) = &r.counterexample {
                let cells: Vec<String> = p.iter().map(|c| c.to_string()).collect();
                println!("placement without a pair: {}", cells.join(" "));
            }
            println!("verdict: {}", r.verdict);
            Ok(verdict_code(r.verdict.status() == Status::BreakerWins))
        }
        Command::VerifyPriority(args) => {
            let strat = PriorityStrategy::load(&args.strategy)?;
            let goal = load_goal(&args.goal)?;
            let mut opts = VerifyOptions::new(&strat);
            if args.no_history {
                opts.history = HistorySpec::none();
            }
            opts.history = opts.history.with_aux(args.aux);
            let r = verify_breaker(&goal, &strat, &opts)?;
            println!("strategy {} for ({},{})", strat.name, strat.a, strat.b);
            println!("placements: {}", r.placements);
            println!("positions: {}", r.positions);
            println!("terminal positions up to symmetry: {}", r.terminal.len());
            for (i, (p, n)) in r.terminal.iter().enumerate() {
                println!("  {}: {} (x{n})", i + 1, render_position(p));
            }
            println!("verdict: {}", r.verdict);
            Ok(verdict_code(r.verdict.status() == Status::BreakerWins))
        }
        Command::StageDiagram { b, l } => {
            let d = build_diagram(&b, &l)?;
            print!("{}", d.render());
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve(args) => {
            let goal = load_goal(&args.goal)?;
            let game = GameSpec::new(args.a, args.b, args.c)?;
            let mut cfg = SolveConfig::new(goal.clone(), game);
            if let Some(w) = &args.window {
                cfg.window = Window::parse(goal.board(), w)?;
            }
            if let Some(t) = args.max_turns {
                cfg.max_turns = t;
            }
            if let Some(n) = args.node_cap {
                cfg.node_cap = n;
            }
            println!("{}", cfg.label());
            let r = solve(&cfg)?;
            match r.turns {
                Some(t) => println!("maker forces the goal in {t} turns"),
                None => println!("no forced win within {} turns", cfg.max_turns),
            }
            println!("nodes: {}", r.nodes);
            println!("verdict: {}", r.verdict);
            Ok(ExitCode::SUCCESS)
        }
        Command::Perimeter { goal } => {
            println!("{}", load_goal(&goal)?.site_perimeter());
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog {
            command: CatalogCommand::Check {
                file,
                jobs,
                no_cross_check,
            },
        } => {
            let catalog = Catalog::load(&file)?;
            let mut opts = RunOptions::from_env();
            opts.jobs = Some(jobs);
            opts.cross_check = !no_cross_check;
            let report = run_all(&catalog, &opts)?;
            print!("{report}");
            Ok(verdict_code(report.ok()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
