use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use exponent_lab::AlgorithmModel;
use instance_lab::{generate_instance, IsdInstance};
use isd_solvers::{
    bjmm_solve, dumer_solve, mmt_solve, prange_solve, predicted_trials, DecodingParams,
    SolveError, SolverConfig,
};
use isdlab::exit_codes;
use isdlab::{bench, instance_file, johnson_report, report};
use lsf_nn::{nn_dumer_solve, NnParams};

#[derive(Parser)]
#[command(name = "isdlab", about = "Syndrome-decoding laboratory", version)]
struct Cli {
    /// Worker threads for parallel sections (0 = machine parallelism).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random planted instance at Gilbert-Varshamov weight.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a decoder against an instance file.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        /// Error weight on the first k+ell coordinates.
        #[arg(long, default_value_t = 0)]
        p: usize,
        /// Exact-match window width.
        #[arg(long, default_value_t = 0)]
        ell: usize,
        /// Pre-grouping window for the near-neighbour decoder.
        #[arg(long, default_value_t = 0)]
        ell_prime: usize,
        /// BJMM overlap weight.
        #[arg(long, default_value_t = 0)]
        eps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trial budget as a multiple of the predicted trial count.
        #[arg(long, default_value_t = 64.0)]
        budget_mult: f64,
        /// Memory cap in bytes (or env ISDLAB_MEMORY_CAP_BYTES).
        #[arg(long)]
        memory_cap_bytes: Option<u64>,
        /// Iterate every first-merge target (MMT/BJMM determinism aid).
        #[arg(long, default_value_t = false)]
        full_targets: bool,
        /// Near-neighbour insertion radius (nn-dumer; default balanced).
        #[arg(long)]
        alpha: Option<usize>,
        /// Near-neighbour query radius (nn-dumer; default balanced).
        #[arg(long)]
        beta: Option<usize>,
        /// Filter oversampling factor (nn-dumer; default dim^2).
        #[arg(long)]
        oversample: Option<usize>,
    },
    /// Optimize the cost models and emit the exponent table as CSV.
    OptimizeTable {
        /// Comma-separated model tags (default: all eleven).
        #[arg(long, value_delimiter = ',')]
        models: Vec<String>,
        /// Pin this rate instead of locating each worst case.
        #[arg(long)]
        rate: Option<f64>,
        /// Emit exponent-vs-rate curves with this many points per model.
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Insert/query scaling and recall benchmark for the filter engine.
    LsfBench {
        #[arg(long, value_delimiter = ',', default_values_t = vec![24usize, 32, 40, 48])]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 0.375)]
        alpha_rel: f64,
        #[arg(long, default_value_t = 0.25)]
        beta_rel: f64,
        #[arg(long, default_value_t = 0.375)]
        gamma_rel: f64,
        /// Filter-count oversampling (1 keeps the slope fit clean).
        #[arg(long, default_value_t = 1)]
        oversample: usize,
        /// Stored list size (default: the bucket-load-one size per dim).
        #[arg(long)]
        list_size: Option<usize>,
        #[arg(long, default_value_t = 256)]
        queries: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the Johnson-gap formula against a dense eigensolver.
    JohnsonCheck {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Prange,
    Dumer,
    Mmt,
    Bjmm,
    NnDumer,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global()
            .ok();
    }
    let code = match cli.command {
        Command::Generate { n, k, seed, out } => cmd_generate(n, k, seed, &out),
        Command::Solve {
            input,
            algorithm,
            p,
            ell,
            ell_prime,
            eps,
            seed,
            budget_mult,
            memory_cap_bytes,
            full_targets,
            alpha,
            beta,
            oversample,
        } => cmd_solve(SolveArgs {
            input,
            algorithm,
            params: DecodingParams {
                p,
                ell,
                ell_prime,
                eps,
            },
            seed,
            budget_mult,
            memory_cap_bytes,
            full_targets,
            alpha,
            beta,
            oversample,
        }),
        Command::OptimizeTable {
            models,
            rate,
            sweep,
            out,
        } => cmd_optimize_table(&models, rate, sweep, &out),
        Command::LsfBench {
            dims,
            alpha_rel,
            beta_rel,
            gamma_rel,
            oversample,
            list_size,
            queries,
            seed,
            out,
        } => cmd_lsf_bench(
            bench::BenchConfig {
                dims,
                alpha_rel,
                beta_rel,
                gamma_rel,
                oversample,
                list_size,
                queries,
                seed,
            },
            &out,
        ),
        Command::JohnsonCheck { n_max } => cmd_johnson_check(n_max),
    };
    ExitCode::from(code as u8)
}

fn cmd_generate(n: usize, k: usize, seed: u64, out: &PathBuf) -> i32 {
    if k == 0 || k >= n {
        eprintln!("invalid sizes: need 0 < k < n");
        return exit_codes::USAGE;
    }
    let inst = generate_instance(n, k, seed);
    println!("gv weight: {}", inst.w);
    match fs::write(out, instance_file::serialize(&inst)) {
        Ok(()) => exit_codes::OK,
        Err(e) => {
            eprintln!("write failed: {e}");
            exit_codes::USAGE
        }
    }
}

struct SolveArgs {
    input: PathBuf,
    algorithm: Algorithm,
    params: DecodingParams,
    seed: u64,
    budget_mult: f64,
    memory_cap_bytes: Option<u64>,
    full_targets: bool,
    alpha: Option<usize>,
    beta: Option<usize>,
    oversample: Option<usize>,
}

fn cmd_solve(args: SolveArgs) -> i32 {
    let text = match fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", args.input.display());
            return exit_codes::USAGE;
        }
    };
    let inst: IsdInstance = match instance_file::parse(&text) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("parse error: {e}");
            return exit_codes::USAGE;
        }
    };
    let cap = args
        .memory_cap_bytes
        .or_else(|| {
            std::env::var("ISDLAB_MEMORY_CAP_BYTES")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(2 << 30);
    let config = SolverConfig {
        budget_multiplier: args.budget_mult,
        memory_cap_bytes: cap,
        full_target_iteration: args.full_targets,
        parallel: true,
    };
    let start = Instant::now();
    let result = match args.algorithm {
        Algorithm::Prange => prange_solve(&inst, args.seed, &config),
        Algorithm::Dumer => dumer_solve(&inst, &args.params, args.seed, &config),
        Algorithm::Mmt => mmt_solve(&inst, &args.params, args.seed, &config),
        Algorithm::Bjmm => bjmm_solve(&inst, &args.params, args.seed, &config),
        Algorithm::NnDumer => {
            let mut nn = NnParams::suggested(&inst, &args.params);
            if let Some(a) = args.alpha {
                nn.alpha = a;
            }
            if let Some(b) = args.beta {
                nn.beta = b;
            }
            if let Some(o) = args.oversample {
                nn.oversample = o;
            }
            nn_dumer_solve(&inst, &args.params, &nn, args.seed, &config)
        }
    };
    match result {
        Ok((e, stats)) => {
            println!("solution: {}", instance_file::vector_to_hex(&e));
            println!("weight: {}", e.weight());
            println!(
                "trials: {} (predicted {:.1})",
                stats.permutation_trials,
                predicted_trials(inst.n, inst.k, inst.w, &args.params)
            );
            println!("lists: {:?}", stats.list_sizes);
            println!("matches examined: {}", stats.matches_examined);
            println!("wall: {:.3}s", start.elapsed().as_secs_f64());
            exit_codes::OK
        }
        Err(SolveError::NotFound { trials }) => {
            eprintln!("not found after {trials} trials");
            exit_codes::NOT_FOUND
        }
        Err(SolveError::MemoryCap {
            required_bytes,
            cap_bytes,
        }) => {
            eprintln!("refusing: lists need {required_bytes} bytes (cap {cap_bytes}); shrink p");
            exit_codes::RESOURCE
        }
        Err(SolveError::InvalidParams(m)) => {
            eprintln!("invalid parameters: {m}");
            exit_codes::USAGE
        }
    }
}

fn cmd_optimize_table(
    model_tags: &[String],
    rate: Option<f64>,
    sweep: Option<usize>,
    out: &PathBuf,
) -> i32 {
    let models: Vec<AlgorithmModel> = if model_tags.is_empty() {
        AlgorithmModel::ALL.to_vec()
    } else {
        let mut picked = Vec::new();
        for tag in model_tags {
            match AlgorithmModel::parse(tag) {
                Some(m) => picked.push(m),
                None => {
                    eprintln!("unknown model {tag:?}");
                    return exit_codes::USAGE;
                }
            }
        }
        picked
    };
    if let Some(r) = rate {
        if !(r > 0.0 && r <= 0.5) {
            eprintln!("rate must be in (0, 1/2]");
            return exit_codes::USAGE;
        }
    }
    let rows = match sweep {
        Some(points) => report::build_sweep(&models, points.max(2)),
        None => report::build_table(&models, rate),
    };
    for row in &rows {
        match &row.outcome {
            Some(o) => println!(
                "{:13} rate={:.4} time={:.6} space={:.6}",
                row.model.tag(),
                o.rate,
                o.cost.total,
                o.cost.space
            ),
            None => println!("{:13} infeasible", row.model.tag()),
        }
    }
    match fs::write(out, report::to_csv(&rows)) {
        Ok(()) => exit_codes::OK,
        Err(e) => {
            eprintln!("write failed: {e}");
            exit_codes::USAGE
        }
    }
}

fn cmd_lsf_bench(cfg: bench::BenchConfig, out: &PathBuf) -> i32 {
    if cfg.dims.iter().any(|&d| d > 64) {
        eprintln!("bench dims limited to 64");
        return exit_codes::USAGE;
    }
    let results = bench::run_sweep(&cfg);
    let mut csv = String::from(bench::BENCH_CSV_HEADER);
    csv.push('\n');
    for r in &results {
        println!(
            "dim {:2}: filters {:7} upd/insert {:9.2} qry/query {:9.2} scanned {:9.2} recall {:.4}",
            r.dim,
            r.filters,
            r.update_touched_mean,
            r.query_touched_mean,
            r.query_scanned_mean,
            r.recall
        );
        csv.push_str(&r.to_csv());
        csv.push('\n');
    }
    if results.len() >= 2 {
        let s = bench::slope_report(&cfg, &results);
        println!(
            "update slope: fitted {:.4} theory {:.4} | query slope: fitted {:.4} theory {:.4}",
            s.update_fitted, s.update_theory, s.query_fitted, s.query_theory
        );
    }
    match fs::write(out, csv) {
        Ok(()) => exit_codes::OK,
        Err(e) => {
            eprintln!("write failed: {e}");
            exit_codes::USAGE
        }
    }
}

fn cmd_johnson_check(n_max: usize) -> i32 {
    if n_max > 14 {
        eprintln!("spectral check limited to N <= 14");
        return exit_codes::USAGE;
    }
    let rows = johnson_report::check_all(n_max);
    println!("{:>3} {:>3} {:>12} {:>12} {:>10}", "N", "r", "formula", "spectral", "|diff|");
    for row in &rows {
        println!(
            "{:>3} {:>3} {:>12.8} {:>12.8} {:>10.2e}",
            row.n,
            row.r,
            row.formula,
            row.spectral,
            row.diff()
        );
    }
    let worst = johnson_report::max_diff(&rows);
    println!("max |diff| = {worst:.3e}");
    if worst > 1e-9 {
        exit_codes::NOT_FOUND
    } else {
        exit_codes::OK
    }
}
