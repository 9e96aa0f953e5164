//! Command-line front end for the spectrum estimator: estimate norms of
//! on-disk matrices, compute exact values with the built-in solver, generate
//! test matrices, compare the two, and benchmark one against the other.

mod matfile;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use matfile::{format_value, read_matrix, write_matrix, write_values_csv};
use nucnorm_core::testmat::{
    bie_single_layer_matrix, prescribed_spectrum_matrix, s_shaped_spectrum, SpectrumSpec,
};
use nucnorm_core::{
    error_bound_check, gaussian_matrix, nuclear_norm, rand_nn, schatten_p, svd_values,
    Error as CoreError, RandNNConfig, SeededRng,
};

#[derive(Parser)]
#[command(name = "nucnorm", version, about = "Randomized singular-spectrum and nuclear-norm estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the singular spectrum of a matrix file.
    Estimate {
        input: PathBuf,
        /// Block size: singular values recovered per panel.
        #[arg(long, default_value_t = 64)]
        b: usize,
        /// Power rounds applied to the sketch.
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stop once a panel's largest value falls below this.
        #[arg(long, default_value_t = 0.0)]
        threshold: f64,
        /// Schatten exponents to report, comma-separated (e.g. 1,2,4).
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        /// Accumulate the a-posteriori error bound.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        bound: bool,
        /// Write the estimated values as CSV, one per line.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact singular values of a matrix file.
    Oracle {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a test matrix file.
    Gen {
        kind: GenKind,
        output: PathBuf,
        /// Column count (sshape, bie).
        #[arg(long)]
        n: Option<usize>,
        /// Row count; defaults to square.
        #[arg(long)]
        m: Option<usize>,
        /// Seed for the random orthogonal factors.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Prescribed singular values for kind=spectrum, comma-separated.
        #[arg(long, value_delimiter = ',')]
        spec: Vec<f64>,
    },
    /// Estimate and solve exactly, reporting per-value relative errors.
    Compare {
        input: PathBuf,
        #[arg(long, default_value_t = 64)]
        b: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the estimator against the exact solver on random matrices.
    Bench {
        /// Square sizes to time, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "1000,2000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 64)]
        b: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
        /// Repetitions per size; the median is reported.
        #[arg(long, default_value_t = 1)]
        reps: usize,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum GenKind {
    /// Prescribed S-shaped spectrum: hover near 1, decay, level out at 1e-6.
    Sshape,
    /// Discretized single-layer logarithmic boundary kernel (ill-conditioned).
    Bie,
    /// Matrix with the spectrum given by --spec.
    Spectrum,
}

enum AppError {
    Usage(String),
    Io(String),
    NonConvergence(String),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Io(_) => 3,
            AppError::NonConvergence(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Usage(m) | AppError::Io(m) | AppError::NonConvergence(m) => m,
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e.to_string())
    }
}

impl From<CoreError> for AppError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NonConvergence { .. } => AppError::NonConvergence(e.to_string()),
            _ => AppError::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    if let Err(e) = apply_thread_cap() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

/// NUCNORM_THREADS caps kernel-internal parallelism by sizing the global
/// worker pool before any kernel runs.
fn apply_thread_cap() -> Result<(), String> {
    let Ok(raw) = std::env::var("NUCNORM_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .ok()
        .filter(|t| *t >= 1)
        .ok_or_else(|| format!("NUCNORM_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Estimate {
            input,
            b,
            q,
            seed,
            threshold,
            p,
            bound,
            out,
        } => cmd_estimate(&input, b, q, seed, threshold, &p, bound, out.as_deref()),
        Command::Oracle { input, out } => cmd_oracle(&input, out.as_deref()),
        Command::Gen {
            kind,
            output,
            n,
            m,
            seed,
            spec,
        } => cmd_gen(kind, &output, n, m, seed, &spec),
        Command::Compare {
            input,
            b,
            q,
            seed,
            out,
        } => cmd_compare(&input, b, q, seed, out.as_deref()),
        Command::Bench { sizes, b, q, reps } => cmd_bench(&sizes, b, q, reps),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_estimate(
    input: &std::path::Path,
    b: usize,
    q: usize,
    seed: u64,
    threshold: f64,
    p_list: &[f64],
    bound: bool,
    out: Option<&std::path::Path>,
) -> Result<(), AppError> {
    let t0 = Instant::now();
    let a = read_matrix(input)?;
    let t_read = t0.elapsed().as_secs_f64();

    let cfg = RandNNConfig {
        block_size: b,
        power_rounds: q,
        early_stop_threshold: threshold,
        seed,
        compute_bound: bound,
    };
    let t1 = Instant::now();
    let est = rand_nn(&a, &cfg)?;
    let t_compute = t1.elapsed().as_secs_f64();

    println!("command=estimate");
    println!("input={}", input.display());
    println!("rows={}", a.rows());
    println!("cols={}", a.cols());
    println!("b={b}");
    println!("q={q}");
    println!("seed={seed}");
    println!("threshold={}", format_value(threshold));
    println!("blocks={}", est.blocks_processed);
    println!("early_stop={}", est.terminated_early);
    println!("values_count={}", est.values.len());
    println!("nuclear_norm={}", format_value(nuclear_norm(&est)));
    for p in p_list {
        println!("schatten_{p}={}", format_value(schatten_p(&est, *p)?));
    }
    match est.bound_fro {
        Some(v) => println!("bound_fro={}", format_value(v)),
        None => println!("bound_fro=none"),
    }

    let t2 = Instant::now();
    match out {
        Some(path) => {
            write_values_csv(path, &est.values)?;
            println!("values_csv={}", path.display());
        }
        None => {
            for v in &est.values {
                println!("value={}", format_value(*v));
            }
        }
    }
    println!("t_read_sec={:.6}", t_read);
    println!("t_compute_sec={:.6}", t_compute);
    println!("t_write_sec={:.6}", t2.elapsed().as_secs_f64());
    Ok(())
}

fn cmd_oracle(input: &std::path::Path, out: Option<&std::path::Path>) -> Result<(), AppError> {
    let t0 = Instant::now();
    let a = read_matrix(input)?;
    let t_read = t0.elapsed().as_secs_f64();
    let t1 = Instant::now();
    let values = svd_values(&a)?;
    let t_compute = t1.elapsed().as_secs_f64();

    println!("command=oracle");
    println!("input={}", input.display());
    println!("rows={}", a.rows());
    println!("cols={}", a.cols());
    println!("values_count={}", values.len());
    match out {
        Some(path) => {
            write_values_csv(path, &values)?;
            println!("values_csv={}", path.display());
        }
        None => {
            for v in &values {
                println!("value={}", format_value(*v));
            }
        }
    }
    println!("t_read_sec={:.6}", t_read);
    println!("t_compute_sec={:.6}", t_compute);
    Ok(())
}

fn cmd_gen(
    kind: GenKind,
    output: &std::path::Path,
    n: Option<usize>,
    m: Option<usize>,
    seed: u64,
    spec_values: &[f64],
) -> Result<(), AppError> {
    let t0 = Instant::now();
    let (label, a) = match kind {
        GenKind::Sshape => {
            let n = n.ok_or_else(|| AppError::Usage("gen sshape requires --n".into()))?;
            let spec = s_shaped_spectrum(n)?;
            ("sshape", prescribed_spectrum_matrix(&spec, m.unwrap_or(n), seed)?)
        }
        GenKind::Bie => {
            let n = n.ok_or_else(|| AppError::Usage("gen bie requires --n".into()))?;
            if m.is_some_and(|m| m != n) {
                return Err(AppError::Usage("the bie matrix is square; drop --m".into()));
            }
            ("bie", bie_single_layer_matrix(n)?)
        }
        GenKind::Spectrum => {
            if spec_values.is_empty() {
                return Err(AppError::Usage(
                    "gen spectrum requires --spec v1,v2,... (non-increasing, >= 0)".into(),
                ));
            }
            if n.is_some_and(|n| n != spec_values.len()) {
                return Err(AppError::Usage(
                    "--n disagrees with the number of --spec values".into(),
                ));
            }
            let spec = SpectrumSpec::new(spec_values.to_vec())?;
            let rows = m.unwrap_or(spec.len());
            ("spectrum", prescribed_spectrum_matrix(&spec, rows, seed)?)
        }
    };
    let t_gen = t0.elapsed().as_secs_f64();
    let t1 = Instant::now();
    write_matrix(output, &a)?;

    println!("command=gen");
    println!("kind={label}");
    println!("rows={}", a.rows());
    println!("cols={}", a.cols());
    println!("seed={seed}");
    println!("output={}", output.display());
    println!("t_gen_sec={:.6}", t_gen);
    println!("t_write_sec={:.6}", t1.elapsed().as_secs_f64());
    Ok(())
}

fn cmd_compare(
    input: &std::path::Path,
    b: usize,
    q: usize,
    seed: u64,
    out: Option<&std::path::Path>,
) -> Result<(), AppError> {
    let a = read_matrix(input)?;
    let cfg = RandNNConfig {
        block_size: b,
        power_rounds: q,
        seed,
        ..RandNNConfig::default()
    };
    let est = rand_nn(&a, &cfg)?;
    let truth = svd_values(&a)?;
    let (lhs, bound_fro, holds) = error_bound_check(&truth, &est)?;

    let mut sorted = est.values.clone();
    sorted.sort_by(|x, y| y.partial_cmp(x).expect("finite values"));

    println!("command=compare");
    println!("input={}", input.display());
    println!("rows={}", a.rows());
    println!("cols={}", a.cols());
    println!("b={b}");
    println!("q={q}");
    println!("seed={seed}");
    println!("lhs={}", format_value(lhs));
    println!("bound_fro={}", format_value(bound_fro));
    println!("bound_holds={holds}");

    let mut csv = String::from("i,sigma_true,sigma_est,rel_err\n");
    for (i, (t, e)) in truth.iter().zip(&sorted).enumerate() {
        let rel = (t - e).abs() / t.abs();
        csv.push_str(&format!(
            "{},{},{},{}\n",
            i + 1,
            format_value(*t),
            format_value(*e),
            format_value(rel)
        ));
    }
    match out {
        Some(path) => {
            std::fs::write(path, csv)?;
            println!("csv={}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_bench(sizes: &[usize], b: usize, q: usize, reps: usize) -> Result<(), AppError> {
    if sizes.is_empty() || reps == 0 {
        return Err(AppError::Usage("bench needs at least one size and one rep".into()));
    }
    println!("n,t_randnn_sec,t_oracle_sec,speedup");
    for &n in sizes {
        let mut t_rand = Vec::with_capacity(reps);
        let mut t_oracle = Vec::with_capacity(reps);
        for rep in 0..reps {
            let a = gaussian_matrix(n, n, &mut SeededRng::new(97 * n as u64 + rep as u64));
            let cfg = RandNNConfig {
                block_size: b,
                power_rounds: q,
                seed: rep as u64,
                ..RandNNConfig::default()
            };
            let t0 = Instant::now();
            rand_nn(&a, &cfg)?;
            t_rand.push(t0.elapsed().as_secs_f64());
            let t1 = Instant::now();
            svd_values(&a)?;
            t_oracle.push(t1.elapsed().as_secs_f64());
        }
        let tr = median(&mut t_rand);
        let to = median(&mut t_oracle);
        println!("{n},{:.6},{:.6},{:.3}", tr, to, to / tr);
    }
    Ok(())
}

fn median(samples: &mut [f64]) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).expect("finite timings"));
    let k = samples.len();
    if k % 2 == 1 {
        samples[k / 2]
    } else {
        0.5 * (samples[k / 2 - 1] + samples[k / 2])
    }
}
