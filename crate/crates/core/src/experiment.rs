//! Random-DAG study: draw a sparse DAG, read off its order-≤k statements,
//! run LOCI and compare adjacencies and v-structures of the k-partial graph,
//! the LOCI output and the true DAG.
//!
//! Each trial draws from its own ChaCha8 stream: the generator is seeded with
//! the master seed and the stream number is the trial index. Records therefore
//! do not depend on how trials are scheduled across threads.

use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ci::CISet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::loci::{k_partial_graph, run_loci};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    /// Expected vertex degree; each pair is an edge with probability `d / (n - 1)`.
    pub d: f64,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    /// `k = 1`, 100 trials, seed 0.
    pub fn new(n: usize, d: f64) -> Self {
        ExperimentConfig {
            n,
            d,
            k: 1,
            trials: 100,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_degree(self.n, self.d)?;
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.k > self.n.max(2) - 2 {
            return Err(Error::OrderOutOfRange {
                k: self.k,
                n: self.n,
            });
        }
        Ok(())
    }
}

fn check_degree(n: usize, d: f64) -> Result<()> {
    let max = n.saturating_sub(1) as f64;
    if !(0.0..=max).contains(&d) {
        return Err(Error::InvalidConfig(format!(
            "expected degree {d} outside [0, {max}]"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExperimentRecord {
    pub trial: usize,
    pub edges_01: usize,
    pub edges_g: usize,
    pub edges_d: usize,
    pub vs_g: usize,
    pub vs_d: usize,
    pub vs_both: usize,
}

/// Random DAG: each pair is adjacent with probability `d / (n - 1)`, then a
/// uniformly random vertex order orients every edge forwards.
pub fn random_dag<R: Rng + ?Sized>(n: usize, d: f64, rng: &mut R) -> Result<Graph> {
    check_degree(n, d)?;
    let p = if n > 1 { (d / (n - 1) as f64).min(1.0) } else { 0.0 };
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                pairs.push((a, b));
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut g = Graph::new(n);
    for (a, b) in pairs {
        if position[a] < position[b] {
            g.add_directed(a, b)?;
        } else {
            g.add_directed(b, a)?;
        }
    }
    Ok(g)
}

/// Generator for one trial of an experiment with master seed `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Result<ExperimentRecord> {
    cfg.validate()?;
    let mut rng = trial_rng(cfg.seed, trial);
    let dag = random_dag(cfg.n, cfg.d, &mut rng)?;
    let s = CISet::from_dag(&dag, cfg.k)?;
    let partial = k_partial_graph(&s);
    let g = run_loci(&s).graph;
    let vs_g = g.v_structures();
    let vs_d = dag.v_structures();
    Ok(ExperimentRecord {
        trial,
        edges_01: partial.edge_count(),
        edges_g: g.edge_count(),
        edges_d: dag.edge_count(),
        vs_g: vs_g.len(),
        vs_d: vs_d.len(),
        vs_both: vs_g.intersection(&vs_d).count(),
    })
}

/// Mean and standard error of the mean of one column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColumnStats {
    pub mean: f64,
    pub std_err: f64,
}

impl ColumnStats {
    fn of(values: impl Iterator<Item = usize> + Clone) -> Self {
        let count = values.clone().count() as f64;
        let mean = values.clone().map(|v| v as f64).sum::<f64>() / count;
        let std_err = if count > 1.0 {
            let var = values.map(|v| (v as f64 - mean).powi(2)).sum::<f64>() / (count - 1.0);
            (var / count).sqrt()
        } else {
            0.0
        };
        ColumnStats { mean, std_err }
    }

    /// Both statistics divided by `n`.
    pub fn per_node(&self, n: usize) -> ColumnStats {
        ColumnStats {
            mean: self.mean / n as f64,
            std_err: self.std_err / n as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentSummary {
    pub edges_01: ColumnStats,
    pub edges_g: ColumnStats,
    pub edges_d: ColumnStats,
    pub vs_g: ColumnStats,
    pub vs_d: ColumnStats,
    pub vs_both: ColumnStats,
}

impl ExperimentSummary {
    pub fn of(records: &[ExperimentRecord]) -> Self {
        let col = |f: fn(&ExperimentRecord) -> usize| ColumnStats::of(records.iter().map(f));
        ExperimentSummary {
            edges_01: col(|r| r.edges_01),
            edges_g: col(|r| r.edges_g),
            edges_d: col(|r| r.edges_d),
            vs_g: col(|r| r.vs_g),
            vs_d: col(|r| r.vs_d),
            vs_both: col(|r| r.vs_both),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub records: Vec<ExperimentRecord>,
    pub summary: ExperimentSummary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    run_experiment_with(cfg, Execution::Parallel)
}

pub fn run_experiment_with(cfg: &ExperimentConfig, exec: Execution) -> Result<ExperimentResult> {
    cfg.validate()?;
    let records: Vec<ExperimentRecord> = match exec {
        Execution::Serial => (0..cfg.trials)
            .map(|t| run_trial(cfg, t))
            .collect::<Result<_>>()?,
        Execution::Parallel => (0..cfg.trials)
            .into_par_iter()
            .map(|t| run_trial(cfg, t))
            .collect::<Result<_>>()?,
    };
    let summary = ExperimentSummary::of(&records);
    Ok(ExperimentResult {
        config: *cfg,
        records,
        summary,
    })
}

pub const CSV_HEADER: [&str; 11] = [
    "trial", "n", "d", "k", "seed", "edges_01", "edges_G", "edges_D", "vs_G", "vs_D", "vs_both",
];

/// One row per trial, then a `trial=mean` row holding column means.
pub fn write_csv<W: Write>(result: &ExperimentResult, out: W) -> Result<()> {
    let cfg = &result.config;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let fixed = [
        cfg.n.to_string(),
        cfg.d.to_string(),
        cfg.k.to_string(),
        cfg.seed.to_string(),
    ];
    for r in &result.records {
        let mut row = vec![r.trial.to_string()];
        row.extend(fixed.iter().cloned());
        row.extend(
            [r.edges_01, r.edges_g, r.edges_d, r.vs_g, r.vs_d, r.vs_both]
                .iter()
                .map(ToString::to_string),
        );
        w.write_record(&row)?;
    }
    let s = &result.summary;
    let mut row = vec!["mean".to_string()];
    row.extend(fixed.iter().cloned());
    row.extend(
        [s.edges_01, s.edges_g, s.edges_d, s.vs_g, s.vs_d, s.vs_both]
            .iter()
            .map(|c| c.mean.to_string()),
    );
    w.write_record(&row)?;
    w.flush().map_err(|e| Error::Csv(crate::error::CsvError(e.to_string())))?;
    Ok(())
}
