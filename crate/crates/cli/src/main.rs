//! `subdyn`: JSON in, JSON (or DOT) out.
//!
//! Exit status: 0 on success, 1 on domain errors, 2 when a search cap is
//! hit, 3 on malformed input. Errors go to standard error as JSON.

mod commands;
mod io;
mod render;
mod verify;

use std::io::Write;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use subdyn::construct::MinimizeCaps;

use commands::{DiagramOptions, Output};
use io::{
    parse_doc, read_input, CliError, CliResult, DiagramInput, GroupsDoc, MatrixDoc, MemberDoc,
    SubstitutionDoc,
};

#[derive(Parser)]
#[command(
    name = "subdyn",
    version,
    about = "Exact computations on substitutions and stationary Bratteli diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Input JSON document; standard input when absent or `-`.
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Perron eigenvalue, field and eigenvector of a primitive matrix.
    Perron(Input),
    /// Complexity profile p(1..=n_max) of a substitution.
    Complexity {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "50")]
        n_max: NonZeroUsize,
    },
    /// Factors of length n of a substitution language.
    Language {
        #[command(flatten)]
        input: Input,
        #[arg(long, short)]
        n: NonZeroUsize,
        /// Also print a prefix of the fixed point starting with this letter.
        #[arg(long)]
        seed_letter: Option<String>,
        #[arg(long, default_value = "100")]
        prefix_len: NonZeroUsize,
    },
    /// Substitution to diagram and back, telescoping, paths, measure, DOT.
    Diagram {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        telescope: Option<NonZeroUsize>,
        /// DOT rendering of this many levels instead of JSON.
        #[arg(long, conflicts_with = "json")]
        dot: Option<NonZeroUsize>,
        /// JSON output (the default).
        #[arg(long)]
        json: bool,
        /// List the Vershik orbit of the minimal path at this depth.
        #[arg(long)]
        paths: Option<NonZeroUsize>,
        /// Include the normalized measure weights.
        #[arg(long)]
        measure: bool,
    },
    /// Add vertices without changing the clopen values.
    Enlarge {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1")]
        times: NonZeroUsize,
    },
    /// Matrix of size deg λ with the same clopen values up to scaling.
    Minimize {
        #[command(flatten)]
        input: Input,
        /// Cap on the exponent N of the cone search.
        #[arg(long, default_value = "200")]
        n_max: NonZeroUsize,
        /// Cap on the exponent M of the positive power.
        #[arg(long, default_value = "200")]
        cap_power: NonZeroUsize,
    },
    /// Same-alphabet substitution with a complexity jump.
    FamilySoe {
        #[command(flatten)]
        input: Input,
        #[arg(long, short)]
        l: NonZeroUsize,
        #[arg(long, default_value = "64")]
        cap_power: NonZeroUsize,
        /// Length of the complexity scan.
        #[arg(long, default_value = "300")]
        n_max: NonZeroUsize,
    },
    /// Substitutions on growing alphabets with the same clopen values.
    FamilyOe {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1")]
        count: NonZeroUsize,
        #[arg(long, default_value = "30")]
        probe: NonZeroUsize,
        /// Linear growth constant of the input instead of the probed one.
        #[arg(long)]
        c: Option<u64>,
    },
    /// Whether a value lies in the clopen values of a matrix.
    SMember {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "50")]
        n_max: NonZeroUsize,
    },
    /// Compare the clopen values of two matrices.
    GroupsEqual {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "16")]
        n_max: NonZeroUsize,
    },
    /// Rational vectors generating (1/q)Z.
    EnumerateY {
        #[arg(long, short)]
        q: u32,
    },
    /// Re-run the worked examples and report each check.
    VerifyExamples,
}

fn doc<T: for<'de> serde::Deserialize<'de>>(input: &Input) -> CliResult<T> {
    parse_doc(&read_input(input.input.as_deref())?)
}

fn run(cli: Cli) -> CliResult<(Output, bool)> {
    let out = match cli.command {
        Command::Perron(input) => commands::perron(&doc::<MatrixDoc>(&input)?.to_matrix()?)?,
        Command::Complexity { input, n_max } => commands::complexity(
            &doc::<SubstitutionDoc>(&input)?.to_substitution()?,
            n_max.get(),
        )?,
        Command::Language {
            input,
            n,
            seed_letter,
            prefix_len,
        } => commands::language(
            &doc::<SubstitutionDoc>(&input)?.to_substitution()?,
            n.get(),
            seed_letter.as_deref(),
            prefix_len.get(),
        )?,
        Command::Diagram {
            input,
            telescope,
            dot,
            json: _,
            paths,
            measure,
        } => {
            let d: DiagramInput = doc(&input)?;
            let opts = DiagramOptions {
                telescope: telescope.map(|n| n.get()),
                dot: dot.map(|n| n.get()),
                paths: paths.map(|n| n.get()),
                measure,
            };
            commands::diagram(&d, &opts)?
        }
        Command::Enlarge { input, times } => {
            commands::enlarge(&doc::<MatrixDoc>(&input)?.to_matrix()?, times.get())?
        }
        Command::Minimize {
            input,
            n_max,
            cap_power,
        } => {
            let caps = MinimizeCaps {
                n_cap: n_max.get(),
                m_cap: cap_power.get(),
                ..MinimizeCaps::default()
            };
            commands::minimize(&doc::<MatrixDoc>(&input)?.to_matrix()?, caps)?
        }
        Command::FamilySoe {
            input,
            l,
            cap_power,
            n_max,
        } => commands::family_soe(
            &doc::<SubstitutionDoc>(&input)?.to_substitution()?,
            l.get(),
            cap_power.get(),
            n_max.get(),
        )?,
        Command::FamilyOe {
            input,
            count,
            probe,
            c,
        } => {
            if c == Some(0) {
                return Err(CliError::Malformed("--c must be positive".into()));
            }
            commands::family_oe(
                &doc::<SubstitutionDoc>(&input)?.to_substitution()?,
                count.get(),
                probe.get(),
                c,
            )?
        }
        Command::SMember { input, n_max } => {
            commands::s_member(&doc::<MemberDoc>(&input)?, n_max.get())?
        }
        Command::GroupsEqual { input, n_max } => {
            let d: GroupsDoc = doc(&input)?;
            if d.power == 0 {
                return Err(CliError::Malformed("power must be positive".into()));
            }
            commands::groups(&d, n_max.get())?
        }
        Command::EnumerateY { q } => {
            if q == 0 {
                return Err(CliError::Malformed("q must be positive".into()));
            }
            commands::enumerate_y(q)?
        }
        Command::VerifyExamples => {
            let (ok, report) = verify::report();
            return Ok((Output::Json(report), ok));
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err =
                json!({ "error": { "kind": "malformed-input", "message": e.to_string().trim() } });
            eprintln!("{err}");
            return ExitCode::from(3);
        }
    };
    match run(cli) {
        Ok((out, ok)) => {
            let text = match out {
                Output::Json(v) => serde_json::to_string_pretty(&v).expect("serializable") + "\n",
                Output::Text(t) => t,
            };
            // A closed pipe (e.g. `| head`) is not an error.
            let mut stdout = std::io::stdout().lock();
            let _ = stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!(
                "{}",
                json!({ "error": { "kind": e.kind(), "message": e.message() } })
            );
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
