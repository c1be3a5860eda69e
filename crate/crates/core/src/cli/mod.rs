//! The `towerlim` command line.
//!
//! Every command except `gen` prints a JSON report on standard output and
//! exits with 0 when all assertions pass, 1 when one fails, and 2 on bad
//! input. `gen` prints a tower file. Reports contain no timings, so equal
//! inputs give byte-identical output.

pub mod commands;
pub mod format;
pub mod gen;
pub mod report;

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use self::commands::{CmdError, Options};
use self::gen::{GenKind, GenParams};
use self::report::{Assertion, Report, Status};
use crate::gtower::DEFAULT_ORBIT_BOUND;
use crate::random::{Shape, TailKind};

#[derive(Parser, Debug)]
#[command(name = "towerlim", version, about = "Exact lim and lim^1 of towers, with chain-level witnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Tower file; standard input when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Homology degree k.
    #[arg(long, default_value_t = 0)]
    degree: usize,
    /// Extend the window to this top level along the tail.
    #[arg(long)]
    window: Option<usize>,
    /// Largest window product enumerated for orbit counts.
    #[arg(long, default_value_t = DEFAULT_ORBIT_BOUND)]
    bound: usize,
    /// Seed for generated witness data.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// chain, abelian, finite-abelian or finite.
    #[arg(long, default_value = "chain")]
    kind: String,
    /// Top level of the window (at most 6).
    #[arg(long, default_value_t = 3)]
    window: usize,
    #[arg(long, default_value_t = 3)]
    max_rank: usize,
    #[arg(long, default_value_t = 3)]
    max_entry: i64,
    #[arg(long, default_value_t = 2)]
    top_degree: usize,
    /// trivial, constant or periodic.
    #[arg(long, default_value = "constant")]
    tail: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The inverse limit of a group tower.
    Lim(Common),
    /// lim^1 of a group tower.
    Lim1(Common),
    /// Mittag-Leffler classification of an abelian tower.
    MlCheck(Common),
    /// Homology tower of a chain tower in one degree.
    Homology(Common),
    /// The window Milnor sequence check in one degree.
    MilnorCheck(Common),
    /// Classes of a recipe in the kernel of the projection.
    Phi(Common),
    /// A recipe realizing given classes.
    PhiPreimage(Common),
    /// A compatible homotopy between recipes with equal classes.
    PhiEqualize(Common),
    /// Compatible classes made into an exact recipe.
    Lift(Common),
    /// Lifting along the comparison map to the replaced tower.
    EquivLift(Common),
    /// Replacement by a tower of fibrations.
    Replace(Common),
    /// A pseudo-random tower file.
    Gen(GenArgs),
    /// The acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Lim(_) => "lim",
            Command::Lim1(_) => "lim1",
            Command::MlCheck(_) => "ml-check",
            Command::Homology(_) => "homology",
            Command::MilnorCheck(_) => "milnor-check",
            Command::Phi(_) => "phi",
            Command::PhiPreimage(_) => "phi-preimage",
            Command::PhiEqualize(_) => "phi-equalize",
            Command::Lift(_) => "lift",
            Command::EquivLift(_) => "equiv-lift",
            Command::Replace(_) => "replace",
            Command::Gen(_) => "gen",
            Command::Selftest { .. } => "selftest",
        }
    }
}

/// Runs the command line with the process's standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let (stdin, stdout, stderr) = (std::io::stdin(), std::io::stdout(), std::io::stderr());
    run_with(argv, &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line against the given streams and returns the exit code.
pub fn run_with<I, S>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let _ = write!(stderr, "{e}");
            let mut report = Report::new("", BTreeMap::new());
            report.status = Status::InputError;
            report.note(e.kind().to_string());
            let _ = stdout.write_all(report.render().as_bytes());
            return 2;
        }
    };
    let name = cli.command.name();
    match cli.command {
        Command::Gen(args) => gen_command(&args, stdout, stderr),
        Command::Selftest { seed } => {
            let mut report = Report::new(name, BTreeMap::from([("seed".to_string(), seed.to_string())]));
            commands::selftest(seed, &mut report);
            emit(report, stdout)
        }
        Command::Lim(c)
        | Command::Lim1(c)
        | Command::MlCheck(c)
        | Command::Homology(c)
        | Command::MilnorCheck(c)
        | Command::Phi(c)
        | Command::PhiPreimage(c)
        | Command::PhiEqualize(c)
        | Command::Lift(c)
        | Command::EquivLift(c)
        | Command::Replace(c) => analysis(name, &c, stdin, stdout, stderr),
    }
}

fn emit(mut report: Report, stdout: &mut dyn Write) -> i32 {
    report.finish();
    let _ = stdout.write_all(report.render().as_bytes());
    report.status.exit_code()
}

fn input_error(mut report: Report, message: String, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "error: {message}");
    report.status = Status::InputError;
    report.note(message);
    emit(report, stdout)
}

fn analysis(name: &str, c: &Common, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut flags = BTreeMap::new();
    if let Some(p) = &c.input {
        flags.insert("input".into(), p.display().to_string());
    }
    if let Some(w) = c.window {
        flags.insert("window".into(), w.to_string());
    }
    flags.insert("degree".into(), c.degree.to_string());
    flags.insert("bound".into(), c.bound.to_string());
    flags.insert("seed".into(), c.seed.to_string());
    let mut report = Report::new(name, flags);

    let mut bytes = Vec::new();
    let read = match &c.input {
        Some(p) => std::fs::read(p).map(|b| bytes = b),
        None => stdin.read_to_end(&mut bytes).map(|_| ()),
    };
    if let Err(e) = read {
        return input_error(report, format!("cannot read input: {e}"), stdout, stderr);
    }
    report.input_sha256 = Some(hex::encode(Sha256::digest(&bytes)));
    let text = match String::from_utf8(bytes) {
        Ok(t) => t,
        Err(_) => return input_error(report, "input is not UTF-8".into(), stdout, stderr),
    };
    let file = match format::parse(&text) {
        Ok(f) => f,
        Err(e) => return input_error(report, e.to_string(), stdout, stderr),
    };
    let opts = Options {
        degree: c.degree,
        window: c.window,
        bound: c.bound,
        seed: c.seed,
    };
    match commands::execute(name, &file, &opts, &mut report) {
        Ok(()) => emit(report, stdout),
        Err(CmdError::Input(m)) => input_error(report, m, stdout, stderr),
        Err(CmdError::Failed { name, message }) => {
            let _ = writeln!(stderr, "{message}");
            report.assert(Assertion::new(name, false).with("message", serde_json::Value::String(message)));
            emit(report, stdout)
        }
    }
}

fn gen_command(args: &GenArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let fail = |stderr: &mut dyn Write, m: String| {
        let _ = writeln!(stderr, "error: {m}");
        2
    };
    let Some(kind) = GenKind::parse(&args.kind) else {
        return fail(stderr, format!("unknown kind \"{}\"", args.kind));
    };
    let Some(tail) = TailKind::parse(&args.tail) else {
        return fail(stderr, format!("unknown tail \"{}\"", args.tail));
    };
    let params = GenParams {
        kind,
        seed: args.seed,
        shape: Shape {
            window: args.window,
            top_degree: args.top_degree,
            max_rank: args.max_rank,
            max_entry: args.max_entry,
        },
        tail,
    };
    match gen::generate(&params) {
        Ok(f) => {
            let _ = stdout.write_all(format::to_text(&f).as_bytes());
            0
        }
        Err(m) => fail(stderr, m),
    }
}
