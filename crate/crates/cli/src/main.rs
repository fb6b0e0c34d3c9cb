//! `frobsplit` command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use frobsplit::algorithm::{compatible_primes, singular_locus_ideal, Mode};
use frobsplit::decompose::minimal_primes;
use frobsplit::emit;
use frobsplit::frobenius::{
    fedder_witness, frobenius_q, frobenius_root, is_splitting, is_surjective_mod, star_closure,
};
use frobsplit::problem::ProblemFile;
use frobsplit::{Error, Ideal};

#[derive(Parser)]
#[command(
    name = "frobsplit",
    version,
    about = "Prime ideals compatible with a p^-e linear map over F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Surjective,
    General,
}

#[derive(clap::Args)]
struct Common {
    /// Problem file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Override `e` from the problem file.
    #[arg(long)]
    e: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the compatible primes.
    Compat {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Include the per-round record.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// The Frobenius root I_e(I).
    Froot {
        #[command(flatten)]
        common: Common,
    },
    /// The star closure of I under u.
    Star {
        #[command(flatten)]
        common: Common,
    },
    /// Fedder's test of u against I, and surjectivity modulo I.
    Fedder {
        #[command(flatten)]
        common: Common,
    },
    /// Minimal primes of I.
    Minprimes {
        #[command(flatten)]
        common: Common,
    },
    /// I plus the Jacobian minors of I.
    Singular {
        #[command(flatten)]
        common: Common,
    },
}

fn load(common: &Common) -> Result<ProblemFile, Error> {
    let text = std::fs::read_to_string(&common.input)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", common.input.display())))?;
    ProblemFile::parse(&text)
}

fn no_dot(common: &Common) -> Result<(), Error> {
    if common.format == Format::Dot {
        return Err(Error::Precondition(
            "dot output is only available for compat".into(),
        ));
    }
    Ok(())
}

fn ideal_out(format: Format, i: &Ideal) -> String {
    match format {
        Format::Json => emit::ideal_json(i),
        _ => format!("{i}\n"),
    }
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::Compat {
            common,
            mode,
            trace,
            threads,
        } => {
            let file = load(&common)?;
            let mut problem = file.compat_problem(common.e)?;
            if let Some(m) = mode {
                problem.mode = match m {
                    ModeArg::Auto => Mode::Auto,
                    ModeArg::Surjective => Mode::Surjective,
                    ModeArg::General => Mode::General,
                };
            }
            problem.threads = threads;
            let res = compatible_primes(&problem)?;
            Ok(match common.format {
                Format::Text => emit::result_text(&problem.phi, &res, trace),
                Format::Json => emit::result_json(&problem.phi, &res, trace),
                Format::Dot => emit::result_dot(&res),
            })
        }
        Command::Froot { common } => {
            no_dot(&common)?;
            let file = load(&common)?;
            let e = common
                .e
                .or(file.e)
                .ok_or_else(|| Error::MissingKey("e".into()))?;
            let q = frobenius_q(&file.ring, e)?;
            Ok(ideal_out(
                common.format,
                &frobenius_root(&file.ideal, q).reduced(),
            ))
        }
        Command::Star { common } => {
            no_dot(&common)?;
            let file = load(&common)?;
            let phi = file.phi(common.e)?;
            let chain = star_closure(&phi, &file.ideal);
            Ok(match common.format {
                Format::Text => format!("{}\nsteps: {}\n", chain.ideal, chain.steps),
                _ => ideal_out(common.format, &chain.ideal),
            })
        }
        Command::Fedder { common } => {
            no_dot(&common)?;
            let file = load(&common)?;
            let phi = file.phi(common.e)?;
            let witness = fedder_witness(&phi, &file.ideal);
            let surjective = match witness {
                None => Some(is_surjective_mod(&phi, &file.ideal)?),
                Some(_) => None,
            };
            let splitting = is_splitting(&phi);
            Ok(match common.format {
                Format::Json => {
                    let v = serde_json::json!({
                        "compatible": witness.is_none(),
                        "witness": witness.as_ref().map(|(g, nf)| serde_json::json!({
                            "generator": g.to_string(),
                            "normal_form": nf.to_string(),
                        })),
                        "surjective": surjective,
                        "splitting": splitting,
                    });
                    serde_json::to_string_pretty(&v).expect("serialisable") + "\n"
                }
                _ => {
                    let mut s = match &witness {
                        None => "compatible: true\n".to_string(),
                        Some((g, nf)) => {
                            format!("compatible: false\nwitness: u*({g}) = {nf} mod I^[q]\n")
                        }
                    };
                    if let Some(b) = surjective {
                        s += &format!("surjective: {b}\n");
                    }
                    s += &format!("splitting: {splitting}\n");
                    s
                }
            })
        }
        Command::Minprimes { common } => {
            no_dot(&common)?;
            let file = load(&common)?;
            let ps = minimal_primes(&file.ideal);
            Ok(match common.format {
                Format::Json => emit::primes_json(&ps),
                _ => ps
                    .iter()
                    .map(|pc| {
                        let tag = if pc.certified {
                            ""
                        } else {
                            "  (primality not certified)"
                        };
                        format!("{}{tag}\n", pc.ideal)
                    })
                    .collect(),
            })
        }
        Command::Singular { common } => {
            no_dot(&common)?;
            let file = load(&common)?;
            Ok(ideal_out(
                common.format,
                &singular_locus_ideal(&file.ideal)?.reduced(),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_precondition() { 1 } else { 2 })
        }
    }
}
