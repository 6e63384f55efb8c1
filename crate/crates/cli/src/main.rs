//! `prm`: parameters, encoding, decoding, error-rate curves and parameter
//! tables for projective Reed–Muller codes.

mod tables;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use prm::bms::BmsConfig;
use prm::codes::{encode, encode_polynomial, generator, prm_params, CodeSpec};
use prm::decoder::{Decoder, MddDecoder};
use prm::monomial::Polynomial;
use prm::simulate::{
    cer_analytic, log_grid, CerPoint, ChannelSpec, Method, Simulator, DEFAULT_SEED,
};
use prm::word::Word;
use prm::Field;

const VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    " (fixtures ",
    env!("PRM_FIXTURE_HASH"),
    ")"
);

#[derive(Parser)]
#[command(name = "prm", version = VERSION, about = "Projective Reed–Muller codes PRM_nu(m, q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the parameters of a code as JSON.
    Params {
        #[command(flatten)]
        code: CodeArgs,
        /// Also write the row-reduced generator matrix as CSV.
        #[arg(long, value_name = "PATH")]
        generator: Option<PathBuf>,
    },
    /// Encode a message vector or a homogeneous polynomial; prints the codeword as CSV.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        /// Message of length k as CSV (`-` for stdin).
        #[arg(
            long,
            value_name = "PATH",
            conflicts_with = "polynomial",
            required_unless_present = "polynomial"
        )]
        message: Option<PathBuf>,
        /// Homogeneous polynomial of degree nu in X0..Xm (`-` for stdin).
        #[arg(long, value_name = "PATH")]
        polynomial: Option<PathBuf>,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Decode a received word (CSV); prints the estimate and per-chart status as JSON.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Received word as CSV (`-` for stdin).
        #[arg(short, long, value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Oracle::Chart)]
        oracle: Oracle,
        /// Print every BMS step to stderr.
        #[arg(long)]
        trace: bool,
        /// Majority voting for syndrome values outside the known set.
        #[arg(long, value_enum, default_value_t = Toggle::On)]
        voting: Toggle,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Codeword error rates on a log-spaced grid of symbol error probabilities, as CSV.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        /// Comma-separated subset of ALG2, PM1, PM2, MDD.
        #[arg(long, value_delimiter = ',', default_value = "ALG2,PM1,PM2")]
        methods: Vec<Method>,
        /// Closed-form rates instead of Monte Carlo (PM1, PM2, MDD only).
        #[arg(long)]
        analytic: bool,
        #[arg(long, default_value_t = 1e-3)]
        pmin: f64,
        #[arg(long, default_value_t = 1e-1)]
        pmax: f64,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Parameter tables of PRM_nu(2,16) and PRM_nu(3,8) as CSV.
    Tables {
        /// 1: k and d over GF(16); 3: t0, tMD over GF(16); 4: t0, tMD over GF(8), m = 3.
        #[arg(long, value_parser = ["1", "3", "4"])]
        paper_table: String,
    },
}

#[derive(Args)]
struct CodeArgs {
    /// Field as `p^e` or `p^e:modulus-hex`.
    #[arg(long, value_name = "SPEC")]
    field: String,
    /// Dimension of the projective space.
    #[arg(short, value_name = "M")]
    m: usize,
    /// Degree of the evaluated forms.
    #[arg(long, value_name = "NU")]
    nu: usize,
}

impl CodeArgs {
    fn spec(&self) -> Result<CodeSpec, CliError> {
        let field = Field::parse(&self.field)?;
        Ok(prm_params(self.m, &field, self.nu)?)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Chart,
    Mdd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] prm::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "stdout".into(),
                source,
            }),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// One line; decode reports carry whole words.
fn to_json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable") + "\n"
}

#[derive(Serialize)]
struct ChartDecodeReport<'a> {
    oracle: &'static str,
    #[serde(flatten)]
    outcome: &'a prm::decoder::DecodeOutcome,
}

#[derive(Serialize)]
struct MddReport {
    oracle: &'static str,
    estimated_error: Vec<u8>,
    estimated_codeword: Vec<u8>,
    status: prm::decoder::Status,
}

/// Exit status of a completed command: `true` when decoding failed.
fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Params {
            code,
            generator: gen_path,
        } => {
            let spec = code.spec()?;
            if let Some(path) = gen_path {
                write_output(Some(&path), &(generator(&spec).to_csv() + "\n"))?;
            }
            write_output(None, &to_json(&spec))?;
        }
        Command::Encode {
            code,
            message,
            polynomial,
            output,
        } => {
            let spec = code.spec()?;
            let word = match (message, polynomial) {
                (Some(path), _) => {
                    let msg = Word::parse_csv(&read_input(&path)?, &spec.field)?;
                    encode(&generator(&spec), &spec.field, &msg.0)?
                }
                (None, Some(path)) => {
                    let text = read_input(&path)?;
                    let f = Polynomial::parse(text.trim(), &spec.field, spec.m + 1, 0)?;
                    encode_polynomial(&spec, &f)?
                }
                (None, None) => {
                    return Err(CliError::Usage(
                        "one of --message or --polynomial is required".into(),
                    ))
                }
            };
            write_output(output.as_ref(), &(word.to_csv() + "\n"))?;
        }
        Command::Decode {
            code,
            input,
            oracle,
            trace,
            voting,
            output,
        } => {
            let spec = code.spec()?;
            let received = Word::parse_csv(&read_input(&input)?, &spec.field)?;
            if received.len() != spec.n {
                return Err(prm::Error::Length {
                    expected: spec.n,
                    got: received.len(),
                }
                .into());
            }
            match oracle {
                Oracle::Chart => {
                    let cfg = BmsConfig {
                        voting: voting == Toggle::On,
                        trace,
                    };
                    let out = Decoder::with_config(&spec, cfg)?.decode(&received)?;
                    if trace {
                        let mut err = std::io::stderr().lock();
                        for ch in &out.charts {
                            for line in &ch.trace {
                                let _ = writeln!(err, "chart {} {line}", ch.chart);
                            }
                        }
                    }
                    write_output(
                        output.as_ref(),
                        &to_json_line(&ChartDecodeReport {
                            oracle: "chart",
                            outcome: &out,
                        }),
                    )?;
                    return Ok(!out.is_success());
                }
                Oracle::Mdd => {
                    if trace || voting == Toggle::Off {
                        return Err(CliError::Usage(
                            "--trace and --voting apply only to --oracle chart".into(),
                        ));
                    }
                    let c = MddDecoder::new(&spec)?.decode(&received)?;
                    let e = received.sub(&c, &spec.field);
                    let report = MddReport {
                        oracle: "mdd",
                        estimated_error: e.0.iter().map(|x| x.0).collect(),
                        estimated_codeword: c.0.iter().map(|x| x.0).collect(),
                        status: prm::decoder::Status::Success,
                    };
                    write_output(output.as_ref(), &to_json_line(&report))?;
                }
            }
        }
        Command::Simulate {
            code,
            methods,
            analytic,
            pmin,
            pmax,
            points,
            trials,
            seed,
            output,
        } => {
            let spec = code.spec()?;
            if !(pmin > 0.0 && pmin <= pmax && pmax <= 1.0) {
                return Err(CliError::Usage(format!(
                    "need 0 < pmin <= pmax <= 1, got {pmin} and {pmax}"
                )));
            }
            if points == 0 || (!analytic && trials == 0) {
                return Err(CliError::Usage(
                    "--points and --trials must be positive".into(),
                ));
            }
            if methods.is_empty() {
                return Err(CliError::Usage("--methods is empty".into()));
            }
            let mut out = String::from(CerPoint::CSV_HEADER);
            out.push('\n');
            let grid = log_grid(pmin, pmax, points);
            if analytic {
                if methods.contains(&Method::Algorithm2) {
                    return Err(CliError::Usage(
                        "ALG2 has no closed form; use PM1, PM2 or MDD with --analytic".into(),
                    ));
                }
                for &p in &grid {
                    for &m in &methods {
                        out +=
                            &(CerPoint::analytic(p, m, cer_analytic(&spec, m, p)).to_csv() + "\n");
                    }
                }
            } else {
                let sim = Simulator::new(&spec)?;
                let sim = if methods.contains(&Method::Mdd) {
                    sim.with_mdd()?
                } else {
                    sim
                };
                for &p in &grid {
                    let ch = ChannelSpec {
                        p,
                        field: spec.field.clone(),
                        rng_seed: seed,
                    };
                    for pt in sim.simulate_many(&ch, &methods, trials)? {
                        out += &(pt.to_csv() + "\n");
                    }
                }
            }
            write_output(output.as_ref(), &out)?;
        }
        Command::Tables { paper_table } => {
            let text = match paper_table.as_str() {
                "1" => tables::table_one()?,
                "3" => tables::table_three()?,
                _ => tables::table_four()?,
            };
            write_output(None, &text)?;
        }
    }
    Ok(false)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
