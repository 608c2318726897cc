use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pscomp::{Error, LinearForm, PrimeModulus};
use pscomp_cli::bench::{run_bench, write_csv, Algo, MRule};
use pscomp_cli::format::{parse_poly, write_poly};
use pscomp_cli::selftest::{self, SelftestConfig};

#[derive(Parser)]
#[command(
    name = "pscomp",
    version,
    about = "Power series composition and power projection over word-size prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute f(g(x)) mod x^n from two coefficient files
    Compose {
        /// Coefficient file for f (outer polynomial)
        f_file: PathBuf,
        /// Coefficient file for g (inner polynomial)
        g_file: PathBuf,
        /// Truncation order of the result
        #[arg(long)]
        n: usize,
        /// Odd prime modulus below 2^62
        #[arg(long, default_value_t = pscomp::DEFAULT_MODULUS)]
        modulus: u64,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute w(g^i mod x^n) for i = 0..m-1 from weight and coefficient files
    Powproj {
        /// Coefficient file for the weight vector w (must hold exactly n residues)
        w_file: PathBuf,
        /// Coefficient file for g
        g_file: PathBuf,
        /// x-truncation order
        #[arg(long)]
        n: usize,
        /// Number of projections to compute
        #[arg(long)]
        m: usize,
        /// Odd prime modulus below 2^62
        #[arg(long, default_value_t = pscomp::DEFAULT_MODULUS)]
        modulus: u64,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in verification suites
    Selftest {
        /// Largest truncation order exercised
        #[arg(long, default_value_t = 64)]
        size_cap: usize,
        /// Trials per suite (each trial runs under every built-in modulus)
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Time the fast routines and baselines on seeded inputs, emitting CSV
    Bench {
        /// Comma-separated list of x-orders to measure
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// How m follows n: `n` or `fixed:<k>`
        #[arg(long, default_value = "n")]
        m_rule: String,
        /// Timed repetitions per (n, algorithm) cell
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated algorithms (default: all four)
        #[arg(long, value_delimiter = ',')]
        algos: Option<Vec<String>>,
        /// Odd prime modulus below 2^62
        #[arg(long, default_value_t = pscomp::DEFAULT_MODULUS)]
        modulus: u64,
        /// CSV output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const EXIT_INPUT: u8 = 2;
const EXIT_MODULUS: u8 = 3;
const EXIT_SELFTEST: u8 = 4;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Compose {
            f_file,
            g_file,
            n,
            modulus,
            out,
        } => {
            let md = load_modulus(modulus)?;
            let f = read_poly(&f_file, &md)?;
            let g = read_poly(&g_file, &md)?;
            let result = pscomp::compose_series(&f, &g, n, &md)
                .map_err(|e| Failure::input(e.to_string()))?;
            emit(out.as_deref(), &write_poly(&result))
        }
        Command::Powproj {
            w_file,
            g_file,
            n,
            m,
            modulus,
            out,
        } => {
            let md = load_modulus(modulus)?;
            let w = LinearForm::new(read_poly(&w_file, &md)?.into_coeffs());
            let g = read_poly(&g_file, &md)?;
            let result = pscomp::power_projection(&w, &g, n, m, &md)
                .map_err(|e| Failure::input(e.to_string()))?;
            emit(out.as_deref(), &write_poly(&result))
        }
        Command::Selftest {
            size_cap,
            trials,
            seed,
        } => {
            if size_cap < 1 {
                return Err(Failure::input("size cap must be at least 1"));
            }
            let outcomes = selftest::run(&SelftestConfig {
                size_cap,
                trials,
                seed,
            });
            let (mut passed, mut failed) = (0u64, 0u64);
            for o in &outcomes {
                println!("suite {}: {} passed, {} failed", o.name, o.passed, o.failed);
                passed += o.passed;
                failed += o.failed;
            }
            println!("selftest total: {passed} passed, {failed} failed");
            if failed > 0 {
                return Err(Failure {
                    code: EXIT_SELFTEST,
                    message: format!("{failed} selftest trials failed"),
                });
            }
            Ok(())
        }
        Command::Bench {
            n,
            m_rule,
            reps,
            seed,
            algos,
            modulus,
            out,
        } => {
            let md = load_modulus(modulus)?;
            if n.iter().any(|&v| v < 1) {
                return Err(Failure::input("all n values must be at least 1"));
            }
            if reps < 1 {
                return Err(Failure::input("reps must be at least 1"));
            }
            let m_rule = MRule::parse(&m_rule).map_err(Failure::input)?;
            let algos = match algos {
                None => Algo::ALL.to_vec(),
                Some(names) => names
                    .iter()
                    .map(|name| {
                        Algo::from_name(name)
                            .ok_or_else(|| Failure::input(format!("unknown algorithm {name:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let records = run_bench(&n, m_rule, reps, seed, &algos, &md);
            emit(out.as_deref(), &write_csv(&records))
        }
    }
}

fn load_modulus(p: u64) -> Result<PrimeModulus, Failure> {
    PrimeModulus::new(p).map_err(|e| match e {
        Error::UnsupportedModulus { .. } => Failure {
            code: EXIT_MODULUS,
            message: e.to_string(),
        },
        other => Failure::input(other.to_string()),
    })
}

fn read_poly(path: &std::path::Path, md: &PrimeModulus) -> Result<pscomp::UniPoly, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_poly(&text, &path.display().to_string(), md)
        .map_err(|e| Failure::input(e.to_string()))
}

fn emit(out: Option<&std::path::Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
