//! Single-binary command line front end: path polynomial construction,
//! polynomial evaluation at matrices, membership checks, characterization
//! tables, null-basis computation, and closure verification.
//!
//! Exit codes: 0 member/success, 1 non-member or failed verification,
//! 2 usage or parse error, 3 enumeration budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tripoly::decision::{
    characterize, is_iv_scalar, is_member_matrix_structural, is_scalar_finite_windowed, Mode,
    ProblemConfig, Side, Verdict,
};
use tripoly::structures::{null_basis, verify_ideal_closure, verify_ring_closure, Report};
use tripoly::triangular::{
    mat_poly_from_json, scalar_subst, ut_matrix_entries_json, ut_matrix_from_json,
};
use tripoly::{parse_unipoly, path_poly, EnumOpts, Error, RingSpec, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(
    name = "tripoly",
    version,
    about = "Polynomial functions on upper triangular matrix algebras",
    max_term_width = 100
)]
struct Cli {
    /// Also print a machine-readable JSON object
    #[arg(long, global = true)]
    json: bool,
    /// Cap on evaluation points per exponential enumeration
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Lift the enumeration budget entirely
    #[arg(long, global = true)]
    force: bool,
    /// Worker threads for enumerations (results are thread-count independent)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the k-th path polynomial from i to j
    Pathpoly {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// Evaluate a scalar-coefficient polynomial at a matrix from a JSON file
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value = "Z")]
        ring: String,
        /// UTMatrix JSON file ({"n", "ring", "entries"})
        #[arg(long)]
        file: PathBuf,
    },
    /// Decide membership in a null or integer-valued polynomial set
    Check {
        #[command(subcommand)]
        problem: CheckCommand,
    },
    /// Print the entry-wise requirement table of the membership characterization
    Characterize {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Modulus for --mode null
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Compute polynomial bases
    Basis {
        #[command(subcommand)]
        kind: BasisCommand,
    },
    /// Randomized verification of closure properties
    Verify {
        #[command(subcommand)]
        property: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Is the polynomial null on T_n(Z/m)?
    Null {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Is the rational polynomial integer-valued on T_n(Z)?
    Iv {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Matrix-coefficient membership, polynomial from a JSON file
    Matrix {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Modulus for --mode null (must match the file's ring if both given)
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum BasisCommand {
    /// Basis of null polynomials of bounded degree on T_n(Z/p)
    Null {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Null sets are ideals: products and sums of null polynomials stay null
    Ideal {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        trials: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SideChoice::Both)]
        side: SideChoice,
    },
    /// Integer-valued sets are rings: sums and products stay members
    Ring {
        #[arg(long)]
        den: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        trials: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SideChoice::Both)]
        side: SideChoice,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Right,
    Left,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SideChoice {
    Right,
    Left,
    Both,
}

impl SideChoice {
    fn sides(self) -> Vec<Side> {
        match self {
            SideChoice::Right => vec![Side::Right],
            SideChoice::Left => vec![Side::Left],
            SideChoice::Both => vec![Side::Right, Side::Left],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Iv,
    Null,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = EnumOpts {
        budget: if cli.force { u64::MAX } else { cli.budget },
        threads: cli.threads.max(1),
    };
    match run(&cli, &opts) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn verdict_exit(v: &Verdict) -> ExitCode {
    if v.is_member() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_verdict(v: &Verdict, json: bool) {
    match &v.witness {
        None => println!("Member (method: {})", v.method.as_str()),
        Some(w) => println!(
            "NonMember (method: {}): entry ({},{}) of the image is {} for C = {}",
            v.method.as_str(),
            w.entry.0,
            w.entry.1,
            w.value,
            w.matrix
        ),
    }
    if json {
        println!("{}", v.to_json());
    }
}

fn run(cli: &Cli, opts: &EnumOpts) -> tripoly::Result<ExitCode> {
    match &cli.command {
        Command::Pathpoly {
            from,
            to,
            length,
            ring,
        } => {
            let ring = RingSpec::parse(ring)?;
            let p = path_poly(ring, *from, *to, *length);
            println!("{p}");
            if cli.json {
                println!(
                    "{}",
                    json!({"schema": 1, "poly": p.to_string(), "terms": p.num_terms()})
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { poly, ring, file } => {
            let ring = RingSpec::parse(ring)?;
            let f = parse_unipoly(poly, ring)?;
            let c = ut_matrix_from_json(&read_json(file)?)?;
            // integer matrices embed explicitly when the polynomial is rational
            let c = if ring == RingSpec::Rationals && c.ring() == RingSpec::Integers {
                c.to_rationals()?
            } else {
                c
            };
            let image = scalar_subst(&f, &c)?;
            println!("{image}");
            if cli.json {
                println!(
                    "{}",
                    json!({"schema": 1, "result": ut_matrix_entries_json(&image)})
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { problem } => {
            let verdict = match problem {
                CheckCommand::Null { modulus, n, poly } => {
                    let ring = RingSpec::modular(*modulus)?;
                    let f = parse_unipoly(poly, ring)?;
                    is_scalar_finite_windowed(&f, *n, 0, opts)?
                }
                CheckCommand::Iv { n, poly } => {
                    let f = parse_unipoly(poly, RingSpec::Rationals)?;
                    is_iv_scalar(&f, *n, opts)?
                }
                CheckCommand::Matrix {
                    side,
                    mode,
                    modulus,
                    file,
                } => {
                    let f = mat_poly_from_json(&read_json(file)?)?;
                    let mode = match mode {
                        ModeArg::Iv => {
                            if f.ring() != RingSpec::Rationals {
                                return Err(Error::RingMismatch {
                                    left: RingSpec::Rationals,
                                    right: f.ring(),
                                });
                            }
                            Mode::Iv
                        }
                        ModeArg::Null => {
                            let m = match (modulus, f.ring()) {
                                (Some(m), RingSpec::Modular(fm)) if *m == fm => *m,
                                (None, RingSpec::Modular(fm)) => fm,
                                (Some(m), other) => {
                                    return Err(Error::RingMismatch {
                                        left: RingSpec::Modular(*m),
                                        right: other,
                                    })
                                }
                                (None, other) => return Err(Error::NotModular { found: other }),
                            };
                            Mode::Null { modulus: m }
                        }
                    };
                    let cfg = ProblemConfig {
                        mode,
                        n: f.n(),
                        side: (*side).into(),
                    };
                    is_member_matrix_structural(&f, cfg, opts)?
                }
            };
            print_verdict(&verdict, cli.json);
            Ok(verdict_exit(&verdict))
        }
        Command::Characterize {
            n,
            side,
            mode,
            modulus,
        } => {
            let mode = match mode {
                ModeArg::Iv => Mode::Iv,
                ModeArg::Null => Mode::Null {
                    modulus: modulus.unwrap_or(2),
                },
            };
            let labels = characterize(*n, (*side).into(), mode);
            for row in &labels {
                println!("[{}]", row.join(", "));
            }
            if cli.json {
                println!("{}", json!({"schema": 1, "labels": labels}));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Basis { kind } => {
            let BasisCommand::Null {
                modulus,
                n,
                max_degree,
            } = kind;
            let nb = null_basis(*modulus, *n, *max_degree, opts)?;
            for f in &nb.basis {
                println!("{f}");
            }
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "schema": 1,
                        "modulus": nb.modulus,
                        "n": nb.n,
                        "max_degree": nb.max_degree,
                        "basis": nb.basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { property } => {
            let started = Instant::now();
            let (label, sides, reports) = match property {
                VerifyCommand::Ideal {
                    modulus,
                    n,
                    max_degree,
                    trials,
                    seed,
                    side,
                } => {
                    let mut reports = Vec::new();
                    for s in side.sides() {
                        reports.push((
                            s,
                            verify_ideal_closure(
                                *modulus,
                                *n,
                                *max_degree,
                                *trials,
                                *seed,
                                s,
                                opts,
                            )?,
                        ));
                    }
                    ("ideal", *side, reports)
                }
                VerifyCommand::Ring {
                    den,
                    n,
                    max_degree,
                    trials,
                    seed,
                    side,
                } => {
                    let mut reports = Vec::new();
                    for s in side.sides() {
                        reports.push((
                            s,
                            verify_ring_closure(*n, *den, *max_degree, *trials, *seed, s, opts)?,
                        ));
                    }
                    ("ring", *side, reports)
                }
            };
            let elapsed = started.elapsed().as_millis();
            let total: Report = Report {
                trials: reports.iter().map(|(_, r)| r.trials).sum(),
                failures: reports.iter().map(|(_, r)| r.failures).sum(),
                seed: reports[0].1.seed,
            };
            for (s, r) in &reports {
                println!(
                    "{label} closure ({}): trials={} failures={} seed={}",
                    s.as_str(),
                    r.trials,
                    r.failures,
                    r.seed
                );
            }
            println!("total: failures={} elapsed_ms={elapsed}", total.failures);
            if cli.json {
                let mut obj = total.to_json(Some(elapsed));
                obj["verify"] = json!(label);
                obj["sides"] = json!(sides.sides().iter().map(|s| s.as_str()).collect::<Vec<_>>());
                println!("{obj}");
            }
            Ok(if total.failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn read_json(path: &PathBuf) -> tripoly::Result<serde_json::Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadMatrixData(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::BadMatrixData(format!("{}: {e}", path.display())))
}
