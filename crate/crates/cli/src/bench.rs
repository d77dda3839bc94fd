//! Benchmark pipeline: random instances solved by enumeration and by the
//! LP-rounding approximation, compared trial by trial.
//!
//! Trial `t` draws everything from a ChaCha8 stream seeded with `seed + t`,
//! so the rows do not depend on how trials are scheduled across threads.

use centdian_core::approx::apx_pdp;
use centdian_core::exact::{solve_pdp_exact, DEFAULT_CAP};
use centdian_core::graph::metric_closure;
use centdian_core::models::PdpInstance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::generate::{generate_instance, GenParams};
use crate::instance::digest;
use crate::report::json_number;

pub const MIN_VERTICES: usize = 5;
pub const MAX_VERTICES: usize = 10;
pub const MAX_FACILITIES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchConfig {
    pub seed: u64,
    pub trials: usize,
    pub epsilon: f64,
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRow {
    pub trial: usize,
    pub seed: u64,
    pub kind: &'static str,
    pub n: usize,
    pub p: usize,
    pub digest: String,
    pub opt: f64,
    pub apx: f64,
    pub lp: f64,
    pub ratio: f64,
    pub size: usize,
    pub size_bound: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub epsilon: f64,
    pub rows: Vec<TrialRow>,
}

fn params_for(trial: usize) -> GenParams {
    if trial.is_multiple_of(2) {
        GenParams::Gnp { prob: 0.4, min_weight: 1, max_weight: 20 }
    } else {
        GenParams::Euclidean { grid: 20 }
    }
}

pub fn run_trial(base_seed: u64, trial: usize, epsilon: f64) -> Result<TrialRow> {
    let seed = base_seed.wrapping_add(trial as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(MIN_VERTICES..=MAX_VERTICES);
    let p = rng.random_range(1..=MAX_FACILITIES);
    let params = params_for(trial);
    let g = generate_instance(n, params, rng.random())?;
    let dm = metric_closure(&g)?;
    let inst = PdpInstance::new(&dm, p)?;
    let exact = solve_pdp_exact(&inst, DEFAULT_CAP)?;
    let approx = apx_pdp(&inst, epsilon)?;
    let opt = exact.evaluation.centdian();
    let apx = approx.evaluation.centdian();
    let ratio = if opt == 0.0 {
        if apx == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        apx / opt
    };
    let size = approx.solution.len();
    let ok = apx <= (1.0 + epsilon) * opt + 1e-6 && size as f64 <= approx.cardinality_bound.min(n as f64);
    Ok(TrialRow {
        trial,
        seed,
        kind: params.kind(),
        n,
        p,
        digest: digest(&g),
        opt,
        apx,
        lp: approx.lp_lower_bound,
        ratio,
        size,
        size_bound: approx.cardinality_bound,
        ok,
    })
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    if !(cfg.epsilon > 0.0 && cfg.epsilon.is_finite()) {
        return Err(CliError::usage(
            "--epsilon",
            format!("must be positive and finite, got {}", cfg.epsilon),
        ));
    }
    let rows: Result<Vec<TrialRow>> = if cfg.parallel {
        (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg.seed, t, cfg.epsilon)).collect()
    } else {
        (0..cfg.trials).map(|t| run_trial(cfg.seed, t, cfg.epsilon)).collect()
    };
    Ok(BenchReport { epsilon: cfg.epsilon, rows: rows? })
}

#[derive(Serialize)]
struct JsonRow<'a> {
    trial: usize,
    seed: u64,
    kind: &'a str,
    n: usize,
    p: usize,
    instance_digest: &'a str,
    opt: serde_json::Value,
    apx: serde_json::Value,
    lp_lower_bound: serde_json::Value,
    ratio: serde_json::Value,
    cardinality: usize,
    cardinality_bound: serde_json::Value,
    ok: bool,
}

#[derive(Serialize)]
struct JsonBench<'a> {
    epsilon: serde_json::Value,
    trials: usize,
    max_ratio: serde_json::Value,
    all_ok: bool,
    rows: Vec<JsonRow<'a>>,
}

impl BenchReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }

    pub fn max_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(1.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        let rows = self
            .rows
            .iter()
            .map(|r| JsonRow {
                trial: r.trial,
                seed: r.seed,
                kind: r.kind,
                n: r.n,
                p: r.p,
                instance_digest: &r.digest,
                opt: json_number(r.opt),
                apx: json_number(r.apx),
                lp_lower_bound: json_number(r.lp),
                ratio: json_number(r.ratio),
                cardinality: r.size,
                cardinality_bound: json_number(r.size_bound),
                ok: r.ok,
            })
            .collect();
        let out = JsonBench {
            epsilon: json_number(self.epsilon),
            trials: self.rows.len(),
            max_ratio: json_number(self.max_ratio()),
            all_ok: self.all_ok(),
            rows,
        };
        serde_json::to_string(&out).expect("bench reports always serialize")
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:>5} {:>20} {:>9} {:>3} {:>2} {:>14} {:>14} {:>14} {:>8} {:>4} {:>7} {:>3}\n",
            "trial", "seed", "kind", "n", "p", "opt", "apx", "lp", "ratio", "size", "bound", "ok"
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:>5} {:>20} {:>9} {:>3} {:>2} {:>14} {:>14} {:>14} {:>8.4} {:>4} {:>7.2} {:>3}\n",
                r.trial,
                r.seed,
                r.kind,
                r.n,
                r.p,
                json_number(r.opt).to_string(),
                json_number(r.apx).to_string(),
                json_number(r.lp).to_string(),
                r.ratio,
                r.size,
                r.size_bound,
                if r.ok { "yes" } else { "NO" },
            ));
        }
        out.push_str(&format!(
            "epsilon {} | trials {} | max ratio {:.4} | ratio bound {} | all ok: {}\n",
            json_number(self.epsilon),
            self.rows.len(),
            self.max_ratio(),
            json_number(1.0 + self.epsilon),
            self.all_ok(),
        ));
        out
    }
}
