//! Parallel trial execution.
//!
//! Each trial derives its seed from `(base seed, index)` and owns its random
//! streams, so results do not depend on scheduling. Reports come back in
//! trial order regardless of the pool size.

use std::time::Instant;

use rayon::prelude::*;

use spaceform_core::geometry::SpaceForm;
use spaceform_core::harness::{
    perturb_foot, r1_trial, sample_config, trial_seed, verify_vn, Dims, TrialReport,
};

use crate::{Error, Result};

/// What `verify` runs.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyPlan {
    /// Model kind.
    pub kind: SpaceForm,
    /// Dimension triples, used round-robin by trial index.
    pub dims: Vec<Dims>,
    /// Base seed.
    pub seed: u64,
    /// Number of trials.
    pub trials: u64,
    /// Pass threshold.
    pub tol: f64,
    /// Probe points per trial.
    pub n_probe: usize,
    /// Negative control: displace the foot by this distance along `Λ`.
    pub perturb: Option<f64>,
    /// Record per-trial wall time.
    pub timing: bool,
}

impl VerifyPlan {
    /// One trial of the plan.
    pub fn trial(&self, index: u64) -> Result<TrialReport> {
        if self.dims.is_empty() {
            return Err(Error::Usage("no dimension triples".into()));
        }
        let start = self.timing.then(Instant::now);
        let d = self.dims[(index % self.dims.len() as u64) as usize];
        let seed = trial_seed(self.seed, index);
        let mut cfg = sample_config(self.kind, d.n(), d.p(), d.q(), seed)?;
        if let Some(offset) = self.perturb {
            cfg = perturb_foot(&cfg, offset)?;
        }
        let mut report = verify_vn(&cfg, self.tol, self.n_probe);
        report.trial = index;
        if let Some(t) = start {
            report.wall_time = t.elapsed().as_secs_f64();
        }
        Ok(report)
    }
}

fn in_pool<T: Send>(parallelism: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

fn sorted(mut reports: Vec<TrialReport>) -> Vec<TrialReport> {
    reports.sort_by_key(|r| r.trial);
    reports
}

/// Runs every trial of `plan` on `parallelism` threads.
pub fn run_verify(plan: &VerifyPlan, parallelism: usize) -> Result<Vec<TrialReport>> {
    let reports = in_pool(parallelism, || {
        (0..plan.trials)
            .into_par_iter()
            .map(|i| plan.trial(i))
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(sorted(reports))
}

/// Runs `trials` spherical counterexample trials on `parallelism` threads.
pub fn run_counterexample(trials: u64, seed: u64, parallelism: usize) -> Result<Vec<TrialReport>> {
    let reports = in_pool(parallelism, || {
        (0..trials)
            .into_par_iter()
            .map(|i| r1_trial(seed, i).map_err(Error::from))
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(sorted(reports))
}
