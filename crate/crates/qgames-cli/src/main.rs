//! `qgames` — entangler design, entropy sweeps, maximal-entanglement roots,
//! invariant verification, and ε-Nash-equilibrium search for 2-player
//! N-strategy quantum games.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/validation error,
//! 3 construction failure.

use clap::{Parser, Subcommand, ValueEnum};
use qgames_core::{
    build_fracpow, find_ne, fracpow_matrix, max_entanglement_betas, perm_entangled_state,
    perm_entangler_matrix, run_suites, Complex64, ComplexMatrix, EntanglerError, EntanglerMethod,
    EntropyError, GameTable, PairState, PermExpEntangler, SearchOptions, VerifyConfig,
};
use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process;

mod output;
use output::{fmt_complex, fmt_sig, parse_curve_csv, render_svg, write_output};

const EXIT_VERIFY_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_CONSTRUCTION: i32 = 3;

#[derive(Parser)]
#[command(
    name = "qgames",
    version,
    about = "Single-parameter entanglers, entropy sweeps, and Nash-equilibrium search for 2-player N-strategy quantum games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Permutation-exponential entangler (closed form, periodic).
    Perm,
    /// Fractional power of a Gram-Schmidt unitary (complete for every N).
    Fracpow,
}

impl From<Method> for EntanglerMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Perm => EntanglerMethod::PermExp,
            Method::Fracpow => EntanglerMethod::FracPow,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample S_N(beta) on a uniform grid and emit `beta,entropy_nats` CSV
    EntropyCurve {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        beta_min: f64,
        #[arg(long)]
        beta_max: f64,
        #[arg(long)]
        steps: usize,
        /// Output path (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximal-entanglement parameters of the permutation entangler, as JSON
    MaxEntanglement {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit one entangler as JSON with [re, im] coefficient pairs
    Design {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        n: usize,
        /// Entangler parameter in raw units
        #[arg(long, conflicts_with = "beta_frac")]
        beta: Option<f64>,
        /// Entangler parameter as a fraction of the period 4*pi/N (method perm)
        #[arg(long)]
        beta_frac: Option<f64>,
        /// JSON file with an N x N seed matrix for method fracpow
        #[arg(long)]
        seed_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the cross-module invariant suites and report pass/fail per check
    Verify {
        /// Strategy counts to cover
        #[arg(long, value_delimiter = ',', default_values_t = vec![2, 3, 4, 5])]
        n_list: Vec<usize>,
        /// Override every upper-bound tolerance in the suites
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Search for an epsilon-Nash equilibrium of a classical game table
    NeSearch {
        /// Game table JSON: {"n": N, "u1": [[..]], "u2": [[..]]}
        #[arg(long)]
        table: PathBuf,
        #[arg(long, value_enum, default_value = "perm")]
        method: Method,
        #[arg(long, conflicts_with = "beta_frac")]
        beta: Option<f64>,
        #[arg(long)]
        beta_frac: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 32)]
        max_rounds: usize,
        /// Convergence threshold on per-round payoff improvement
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Random deviations per player for the epsilon-certificate
        #[arg(long, default_value_t = 2000)]
        probes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render an entropy-curve CSV as a static SVG plot
    Plot {
        /// CSV produced by entropy-curve
        #[arg(long)]
        input: PathBuf,
        /// Strategy count, for the log N reference line
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    process::exit(run(cli.command));
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn construction_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    EXIT_CONSTRUCTION
}

fn run(command: Command) -> i32 {
    match command {
        Command::EntropyCurve {
            method,
            n,
            beta_min,
            beta_max,
            steps,
            out,
        } => cmd_entropy_curve(method, n, beta_min, beta_max, steps, &out),
        Command::MaxEntanglement { n, out } => cmd_max_entanglement(n, &out),
        Command::Design {
            method,
            n,
            beta,
            beta_frac,
            seed_file,
            out,
        } => cmd_design(method, n, beta, beta_frac, seed_file.as_deref(), &out),
        Command::Verify { n_list, tol } => cmd_verify(&n_list, tol),
        Command::NeSearch {
            table,
            method,
            beta,
            beta_frac,
            seed,
            restarts,
            max_rounds,
            tol,
            probes,
            out,
        } => cmd_ne_search(
            &table, method, beta, beta_frac, seed, restarts, max_rounds, tol, probes, &out,
        ),
        Command::Plot { input, n, out } => cmd_plot(&input, n, &out),
    }
}

fn resolve_beta(beta: Option<f64>, beta_frac: Option<f64>, method: Method, n: usize) -> Result<f64, String> {
    match (beta, beta_frac) {
        (Some(b), None) => Ok(b),
        (None, Some(frac)) => {
            if method == Method::Perm {
                Ok(frac * 4.0 * PI / n as f64)
            } else {
                Err("--beta-frac is defined for method perm only".into())
            }
        }
        (None, None) => Err("one of --beta or --beta-frac is required".into()),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    }
}

fn cmd_entropy_curve(
    method: Method,
    n: usize,
    beta_min: f64,
    beta_max: f64,
    steps: usize,
    out: &Option<PathBuf>,
) -> i32 {
    let curve = match qgames_core::entropy_curve(method.into(), n, beta_min, beta_max, steps) {
        Ok(curve) => curve,
        Err(EntropyError::InvalidGrid(msg)) => return usage_error(&msg),
        Err(EntropyError::Entangler(e)) => return construction_error(&e.to_string()),
        Err(e) => return usage_error(&e.to_string()),
    };
    let mut csv = String::from("beta,entropy_nats\n");
    for (beta, entropy) in curve.samples {
        csv.push_str(&fmt_sig(beta));
        csv.push(',');
        csv.push_str(&fmt_sig(entropy));
        csv.push('\n');
    }
    match write_output(out, &csv) {
        Ok(()) => 0,
        Err(e) => usage_error(&format!("cannot write output: {e}")),
    }
}

fn cmd_max_entanglement(n: usize, out: &Option<PathBuf>) -> i32 {
    if n < 2 {
        return usage_error(&format!("n must be >= 2, got {n}"));
    }
    let roots: Vec<String> = max_entanglement_betas(n).iter().map(|&b| fmt_sig(b)).collect();
    let json = format!(
        "{{\"n\":{n},\"method\":\"perm\",\"roots\":[{}]}}\n",
        roots.join(",")
    );
    match write_output(out, &json) {
        Ok(()) => 0,
        Err(e) => usage_error(&format!("cannot write output: {e}")),
    }
}

fn parse_seed_matrix(path: &Path, n: usize) -> Result<ComplexMatrix, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("seed file is not valid JSON: {e}"))?;
    let rows = value
        .as_array()
        .ok_or("seed file must contain a JSON array of rows")?;
    if rows.len() != n {
        return Err(format!("seed matrix must have {n} rows, got {}", rows.len()));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or(format!("seed row {i} must be an array"))?;
        if cells.len() != n {
            return Err(format!("seed row {i} must have {n} entries, got {}", cells.len()));
        }
        for (j, cell) in cells.iter().enumerate() {
            let entry = match cell {
                serde_json::Value::Number(x) => {
                    Complex64::new(x.as_f64().ok_or(format!("entry ({i},{j}) overflows"))?, 0.0)
                }
                serde_json::Value::Array(pair) if pair.len() == 2 => {
                    let re = pair[0]
                        .as_f64()
                        .ok_or(format!("entry ({i},{j}) has a non-numeric real part"))?;
                    let im = pair[1]
                        .as_f64()
                        .ok_or(format!("entry ({i},{j}) has a non-numeric imaginary part"))?;
                    Complex64::new(re, im)
                }
                _ => {
                    return Err(format!(
                        "entry ({i},{j}) must be a number or a [re, im] pair"
                    ))
                }
            };
            entries.push(entry);
        }
    }
    Ok(ComplexMatrix::new(n, n, entries))
}

fn cmd_design(
    method: Method,
    n: usize,
    beta: Option<f64>,
    beta_frac: Option<f64>,
    seed_file: Option<&Path>,
    out: &Option<PathBuf>,
) -> i32 {
    if n < 2 {
        return usage_error(&format!("n must be >= 2, got {n}"));
    }
    let beta = match resolve_beta(beta, beta_frac, method, n) {
        Ok(b) => b,
        Err(msg) => return usage_error(&msg),
    };

    let json = match method {
        Method::Perm => {
            if seed_file.is_some() {
                return usage_error("--seed-file applies to method fracpow only");
            }
            let state = perm_entangled_state(&PermExpEntangler::new(n, beta));
            let coefficients: Vec<String> = (0..n)
                .map(|i| {
                    let z = state.coeff(i, i);
                    fmt_complex(z.re, z.im)
                })
                .collect();
            format!(
                "{{\"n\":{n},\"method\":\"perm\",\"beta\":{},\"coefficients\":[{}]}}\n",
                fmt_sig(beta),
                coefficients.join(",")
            )
        }
        Method::Fracpow => {
            let (seed, seed_desc) = match seed_file {
                Some(path) => match parse_seed_matrix(path, n) {
                    Ok(m) => (Some(m), format!("file:{}", path.display())),
                    Err(msg) => return usage_error(&msg),
                },
                None => (None, "default-pattern".to_string()),
            };
            let entangler = match build_fracpow(n, seed) {
                Ok(e) => e,
                Err(
                    e @ (EntanglerError::SingularSeed { .. }
                    | EntanglerError::NonUniformFirstColumn { .. }
                    | EntanglerError::BadSeedShape { .. }),
                ) => return construction_error(&e.to_string()),
                Err(e) => return construction_error(&e.to_string()),
            };
            let matrix = fracpow_matrix(&entangler, beta);
            let rows: Vec<String> = (0..n)
                .map(|i| {
                    let cells: Vec<String> = (0..n)
                        .map(|j| {
                            let z = matrix.get(i * (n + 1), j * (n + 1));
                            fmt_complex(z.re, z.im)
                        })
                        .collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!(
                "{{\"n\":{n},\"method\":\"fracpow\",\"beta\":{},\"seed\":\"{seed_desc}\",\"block\":[{}]}}\n",
                fmt_sig(beta),
                rows.join(",")
            )
        }
    };
    match write_output(out, &json) {
        Ok(()) => 0,
        Err(e) => usage_error(&format!("cannot write output: {e}")),
    }
}

fn cmd_verify(n_list: &[usize], tol: Option<f64>) -> i32 {
    if n_list.is_empty() || n_list.iter().any(|&n| n < 2) {
        return usage_error("--n-list entries must all be >= 2");
    }
    let outcomes = run_suites(&VerifyConfig {
        n_list: n_list.to_vec(),
        tol_override: tol,
    });
    let mut all_passed = true;
    for outcome in &outcomes {
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{tag}  {} ({})", outcome.name, outcome.detail);
        all_passed &= outcome.passed;
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!(
        "{} checks, {} passed, {} failed",
        outcomes.len(),
        outcomes.len() - failed,
        failed
    );
    if all_passed {
        0
    } else {
        EXIT_VERIFY_FAILED
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_ne_search(
    table_path: &Path,
    method: Method,
    beta: Option<f64>,
    beta_frac: Option<f64>,
    seed: u64,
    restarts: usize,
    max_rounds: usize,
    tol: f64,
    probes: usize,
    out: &Option<PathBuf>,
) -> i32 {
    let text = match fs::read_to_string(table_path) {
        Ok(text) => text,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", table_path.display())),
    };
    let table: GameTable = match serde_json::from_str(&text) {
        Ok(table) => table,
        Err(e) => return usage_error(&format!("malformed game table: {e}")),
    };
    if let Err(e) = table.validate() {
        return usage_error(&e.to_string());
    }
    let n = table.n;
    let beta = match resolve_beta(beta, beta_frac, method, n) {
        Ok(b) => b,
        Err(msg) => return usage_error(&msg),
    };
    if restarts == 0 || max_rounds == 0 {
        return usage_error("--restarts and --max-rounds must be positive");
    }

    let j = match method {
        Method::Perm => perm_entangler_matrix(&PermExpEntangler::new(n, beta)),
        Method::Fracpow => match build_fracpow(n, None) {
            Ok(e) => fracpow_matrix(&e, beta),
            Err(e) => return construction_error(&e.to_string()),
        },
    };
    let initial = PairState::basis_ket(n, 0, 0);
    let opts = SearchOptions {
        restarts,
        max_rounds,
        tol,
        probes,
        ..Default::default()
    };
    let result = match find_ne(&table, &j, &initial, &opts, seed) {
        Ok(result) => result,
        Err(e) => return usage_error(&e.to_string()),
    };

    let gamma_json = |g: &[f64]| -> String {
        let parts: Vec<String> = g.iter().map(|&x| fmt_sig(x)).collect();
        format!("[{}]", parts.join(","))
    };
    let json = format!(
        "{{\"n\":{n},\"method\":\"{}\",\"beta\":{},\"seed\":{seed},\"converged\":{},\"rounds\":{},\"gamma1\":{},\"gamma2\":{},\"payoffs\":[{},{}],\"epsilon\":{},\"probes\":{}}}\n",
        EntanglerMethod::from(method).name(),
        fmt_sig(beta),
        result.converged,
        result.rounds,
        gamma_json(result.gamma1.gamma()),
        gamma_json(result.gamma2.gamma()),
        fmt_sig(result.payoffs.0),
        fmt_sig(result.payoffs.1),
        fmt_sig(result.epsilon),
        result.probes,
    );
    match write_output(out, &json) {
        Ok(()) => 0,
        Err(e) => usage_error(&format!("cannot write output: {e}")),
    }
}

fn cmd_plot(input: &Path, n: usize, out: &Option<PathBuf>) -> i32 {
    if n < 2 {
        return usage_error(&format!("n must be >= 2, got {n}"));
    }
    let rows = match parse_curve_csv(input) {
        Ok(rows) => rows,
        Err(msg) => return usage_error(&msg),
    };
    let svg = render_svg(&rows, n);
    match write_output(out, &svg) {
        Ok(()) => 0,
        Err(e) => usage_error(&format!("cannot write output: {e}")),
    }
}
