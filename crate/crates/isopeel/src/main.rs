//! Command-line front end: check/verify/fuzz/bench/gen over edge-list files.
//!
//! Exit codes: 0 = isomorphic (verified mapping emitted), 1 = not
//! isomorphic, 2 = unknown / gave up, 3 = usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use isopeel::bench::run_bench;
use isopeel::fixtures;
use isopeel::graph::{
    generate_random_graph, generate_random_regular_graph, parse_edge_list, permute,
    random_permutation, Graph,
};
use isopeel::matcher::{run, Decision, Mapping, Mode};
use isopeel::oracle::{fuzz_agreement, FuzzParams, DEFAULT_CAP};

const EXIT_ISOMORPHIC: u8 = 0;
const EXIT_NOT_ISOMORPHIC: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "isopeel", version, about = "Graph isomorphism via auxiliary-digraph peeling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Faithful,
    Cautious,
    Retry,
}

impl From<ModeArg> for Mode {
    fn from(value: ModeArg) -> Mode {
        match value {
            ModeArg::Faithful => Mode::Faithful,
            ModeArg::Cautious => Mode::Cautious,
            ModeArg::Retry => Mode::Retry,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide isomorphism of two edge-list graphs; on success print the
    /// mapping as "v u" lines.
    Check {
        file_g: PathBuf,
        file_h: PathBuf,
        /// Failure handling when a round finds no partner.
        #[arg(long, value_enum, default_value = "faithful")]
        mode: ModeArg,
        /// Emit the round-by-round trace on stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Check a "v u" mapping file against two edge-list graphs.
    Verify {
        file_g: PathBuf,
        file_h: PathBuf,
        mapping: PathBuf,
    },
    /// Compare all matcher modes against the exhaustive oracle on seeded
    /// random pairs and print the agreement report.
    Fuzz {
        #[arg(long)]
        trials: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        oracle_cap: u32,
        /// Directory for counterexample edge-list dumps.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
    /// Time matcher runs across a ladder of sizes and report the log-log
    /// slope.
    Bench {
        /// Comma-separated ascending sizes, e.g. 50,100,200.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        samples: u32,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write deterministic graphs to edge-list files.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// A graph and a random relabeling of it (isomorphic by construction);
    /// the permutation is logged on stderr.
    IsoPair {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_g: PathBuf,
        #[arg(long)]
        out_h: PathBuf,
    },
    /// A single G(n, p) sample.
    Random {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Two independent random d-regular graphs (equal degree vectors by
    /// construction; isomorphism not implied).
    RegularPair {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_g: PathBuf,
        #[arg(long)]
        out_h: PathBuf,
    },
    /// A named fixture graph.
    Fixture {
        /// One of: fig1 fig2 b1-g b1-h app-g app-h c6 two-c3 rook4 shrikhande.
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Let --help/--version print normally; everything else is a
            // usage error with exit status 3.
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn dispatch(command: Command) -> Result<u8, String> {
    match command {
        Command::Check {
            file_g,
            file_h,
            mode,
            trace,
        } => cmd_check(&file_g, &file_h, mode.into(), trace),
        Command::Verify {
            file_g,
            file_h,
            mapping,
        } => cmd_verify(&file_g, &file_h, &mapping),
        Command::Fuzz {
            trials,
            n,
            p,
            seed,
            oracle_cap,
            dump_dir,
        } => cmd_fuzz(trials, n, p, seed, oracle_cap, dump_dir.as_deref()),
        Command::Bench {
            sizes,
            samples,
            p,
            seed,
        } => cmd_bench(&sizes, samples, p, seed),
        Command::Gen(gen) => cmd_gen(gen),
    }
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_edge_list(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_check(file_g: &Path, file_h: &Path, mode: Mode, trace: bool) -> Result<u8, String> {
    let g = load_graph(file_g)?;
    let h = load_graph(file_h)?;
    let verdict = run(&g, &h, mode);
    if trace {
        eprint!("{}", verdict.render_trace());
    }
    match verdict.decision {
        Decision::Isomorphic(mapping) => {
            print!("{}", mapping.render());
            eprintln!("isomorphic: {}", verdict.reason);
            Ok(EXIT_ISOMORPHIC)
        }
        Decision::NotIsomorphic => {
            eprintln!("not isomorphic: {}", verdict.reason);
            Ok(EXIT_NOT_ISOMORPHIC)
        }
        Decision::Unknown => {
            eprintln!("unknown: {}", verdict.reason);
            Ok(EXIT_UNKNOWN)
        }
    }
}

fn cmd_verify(file_g: &Path, file_h: &Path, mapping_path: &Path) -> Result<u8, String> {
    let g = load_graph(file_g)?;
    let h = load_graph(file_h)?;
    let text = fs::read_to_string(mapping_path)
        .map_err(|e| format!("cannot read {}: {e}", mapping_path.display()))?;
    let mapping =
        Mapping::parse(&text).map_err(|e| format!("{}: {e}", mapping_path.display()))?;
    if isopeel::verify_mapping(&g, &h, &mapping) {
        eprintln!("mapping is a valid isomorphism");
        Ok(EXIT_ISOMORPHIC)
    } else {
        eprintln!("mapping is NOT a valid isomorphism");
        Ok(EXIT_NOT_ISOMORPHIC)
    }
}

fn cmd_fuzz(
    trials: u32,
    n: u32,
    p: f64,
    seed: u64,
    oracle_cap: u32,
    dump_dir: Option<&Path>,
) -> Result<u8, String> {
    if !(0.0..=1.0).contains(&p) {
        return Err(format!("edge probability {p} outside [0, 1]"));
    }
    let report = fuzz_agreement(FuzzParams {
        trials,
        n,
        p,
        seed,
        oracle_cap,
    })
    .map_err(|e| e.to_string())?;
    print!("{}", report.render());
    if let Some(dir) = dump_dir {
        if !report.counterexamples.is_empty() {
            fs::create_dir_all(dir)
                .map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
            for ce in &report.counterexamples {
                let g_path = dir.join(format!("trial{}-g.el", ce.trial));
                let h_path = dir.join(format!("trial{}-h.el", ce.trial));
                fs::write(&g_path, &ce.g_edge_list)
                    .and_then(|_| fs::write(&h_path, &ce.h_edge_list))
                    .map_err(|e| format!("cannot dump counterexample: {e}"))?;
            }
            eprintln!(
                "dumped {} counterexample pair(s) under {}",
                report.counterexamples.len(),
                dir.display()
            );
        }
    }
    Ok(EXIT_ISOMORPHIC)
}

fn cmd_bench(sizes: &[u32], samples: u32, p: f64, seed: u64) -> Result<u8, String> {
    let report = run_bench(sizes, samples, p, seed).map_err(|e| e.to_string())?;
    print!("{}", report.render());
    Ok(EXIT_ISOMORPHIC)
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn cmd_gen(gen: GenCommand) -> Result<u8, String> {
    match gen {
        GenCommand::IsoPair {
            n,
            p,
            seed,
            out_g,
            out_h,
        } => {
            let g = generate_random_graph(n, p, seed).map_err(|e| e.to_string())?;
            let pi = random_permutation(&g, seed ^ 0xA5A5_A5A5_A5A5_A5A5);
            let h = permute(&g, &pi).map_err(|e| e.to_string())?;
            write_file(&out_g, &g.render())?;
            write_file(&out_h, &h.render())?;
            let rendered: Vec<String> =
                pi.iter().map(|(a, b)| format!("{a}->{b}")).collect();
            eprintln!("permutation: {}", rendered.join(" "));
            Ok(EXIT_ISOMORPHIC)
        }
        GenCommand::Random { n, p, seed, out } => {
            let g = generate_random_graph(n, p, seed).map_err(|e| e.to_string())?;
            write_file(&out, &g.render())?;
            Ok(EXIT_ISOMORPHIC)
        }
        GenCommand::RegularPair {
            n,
            degree,
            seed,
            out_g,
            out_h,
        } => {
            let g = generate_random_regular_graph(n, degree, seed).map_err(|e| e.to_string())?;
            let h = generate_random_regular_graph(n, degree, seed ^ 0x5A5A_5A5A_5A5A_5A5A)
                .map_err(|e| e.to_string())?;
            write_file(&out_g, &g.render())?;
            write_file(&out_h, &h.render())?;
            Ok(EXIT_ISOMORPHIC)
        }
        GenCommand::Fixture { name, out } => {
            let text = fixtures::by_name(&name).ok_or_else(|| {
                format!(
                    "unsupported fixture {name:?}; known: {}",
                    fixtures::FIXTURE_NAMES.join(" ")
                )
            })?;
            write_file(&out, &text)?;
            Ok(EXIT_ISOMORPHIC)
        }
    }
}
