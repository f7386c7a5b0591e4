//! Command-line front end: every command is a [`JobSpec`], given either as
//! flags or as a JSON file.

mod commands;
mod groups;
mod repro;
pub mod spec;

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{error_code, execute, Outcome};
pub use groups::resolve;
pub use repro::TARGETS;
pub use spec::{flag_value, Command, JobSpec, Params};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "reid", version, about = "Exact Reidemeister numbers and R-infinity certificates")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub output: OutputMode,
    /// Read the job from a JSON file (`-` for stdin) instead of flags.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Sub>,
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// Catalog name or inline JSON descriptor.
    #[arg(long)]
    pub group: Option<String>,
    /// Endomorphism: words, a matrix, "b,r=2", "sign=-1,n=5" or JSON.
    #[arg(long, alias = "aut")]
    pub endo: Option<String>,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Ranks of the lower central factors of a free group.
    Witt(Flags),
    /// Induced maps on the lower central layers of a free nilpotent group.
    Layers(Flags),
    /// Reidemeister number of an endomorphism.
    Reid(Flags),
    /// Emit (or with --verify, check) a certificate.
    Certify(Flags),
    /// Exhaustive or sampled scan of lifting automorphisms of Q42.
    ScanQ42(Flags),
    /// Scan of automorphisms of G53 by abelianization.
    ScanG53(Flags),
    /// Twisted classes of a Klein bottle automorphism.
    Klein(Flags),
    /// Brute-force product formula check on Heisenberg groups mod m.
    Oracle(Flags),
    /// Replay a named computation.
    Repro {
        target: String,
        #[command(flatten)]
        flags: Flags,
    },
}

impl Sub {
    fn into_job(self) -> JobSpec {
        let (command, flags, target) = match self {
            Sub::Witt(f) => (Command::Witt, f, None),
            Sub::Layers(f) => (Command::Layers, f, None),
            Sub::Reid(f) => (Command::Reid, f, None),
            Sub::Certify(f) => (Command::Certify, f, None),
            Sub::ScanQ42(f) => (Command::ScanQ42, f, None),
            Sub::ScanG53(f) => (Command::ScanG53, f, None),
            Sub::Klein(f) => (Command::Klein, f, None),
            Sub::Oracle(f) => (Command::Oracle, f, None),
            Sub::Repro { target, flags } => (Command::Repro, flags, Some(target)),
        };
        let mut params = flags.params;
        if target.is_some() {
            params.target = target;
        }
        JobSpec {
            command,
            group: flags.group.as_deref().map(flag_value),
            endo: flags.endo.as_deref().map(flag_value),
            params,
        }
    }
}

/// Exit code and the text to print.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Printed {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn input_error(msg: String) -> Printed {
    Printed {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

fn load_spec(path: &PathBuf) -> Result<JobSpec, String> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    serde_json::from_str(&text).map_err(|e| format!("job spec: {e}"))
}

/// Runs one job and renders the result.
pub fn run(job: &JobSpec, mode: OutputMode) -> Printed {
    if let Err(msg) = job.validate() {
        return input_error(msg);
    }
    let go = || execute(job);
    let result = match job.params.threads {
        Some(0) => return input_error("threads must be at least 1".into()),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(go),
            Err(e) => return input_error(e.to_string()),
        },
        None => go(),
    };
    match result {
        Ok(o) => Printed {
            code: o.code,
            stdout: match mode {
                OutputMode::Json => format!("{}\n", serde_json::to_string_pretty(&o.json).expect("json")),
                OutputMode::Human => o.human,
            },
            stderr: String::new(),
        },
        Err(e) => Printed {
            code: error_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Entry point over raw arguments (including the program name).
pub fn run_args<I, T>(args: I) -> Printed
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.to_string();
            return if code == 0 {
                Printed { code, stdout: text, stderr: String::new() }
            } else {
                Printed { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let job = match (cli.spec, cli.command) {
        (Some(_), Some(_)) => return input_error("give either --spec or a subcommand, not both".into()),
        (Some(path), None) => match load_spec(&path) {
            Ok(j) => j,
            Err(msg) => return input_error(msg),
        },
        (None, Some(sub)) => sub.into_job(),
        (None, None) => return input_error("no command given; see --help".into()),
    };
    run(&job, cli.output)
}
