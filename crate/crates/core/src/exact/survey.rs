use std::time::Instant;

use num_traits::Zero;
use rand::RngCore;
use rayon::prelude::*;
use serde::Serialize;

use super::{exact_btt, exact_cc};
use crate::error::{BttError, Result};
use crate::generators::{gen_random, RandomSpec, WeightSpec};
use crate::graph::SignedGraph;
use crate::io::write_edge_list;
use crate::rng::stream;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug)]
pub struct SurveySpec {
    pub generator: RandomSpec,
    pub count: usize,
    pub seed: u64,
    /// Search-node budget for each exact solve.
    pub node_budget: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyRow {
    pub instance: usize,
    pub seed: u64,
    pub n: usize,
    pub opt_delta: Option<String>,
    pub opt_cc: Option<String>,
    /// `OPT_CC / OPT_Δ` as a fraction; `1` when both are zero, `inf` when
    /// only `OPT_Δ` is.
    pub ratio: Option<String>,
    pub runtime_ms: f64,
    /// `ok`, `counterexample` (ratio above 1), `violation`, or the solver error.
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyReport {
    pub rows: Vec<SurveyRow>,
    /// Edge lists of instances whose ratio exceeds 1, keyed by instance id.
    pub counterexamples: Vec<(usize, String)>,
    pub violations: usize,
    pub errors: usize,
}

impl SurveyReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    /// CSV with one row per instance. The runtime column stays empty unless
    /// `timing` is set, so reruns produce identical files.
    pub fn to_csv(&self, timing: bool) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["instance", "seed", "n", "opt_delta", "opt_cc", "ratio", "runtime_ms", "status"])?;
        for r in &self.rows {
            let runtime = if timing { format!("{:.3}", r.runtime_ms) } else { String::new() };
            w.write_record([
                r.instance.to_string(),
                r.seed.to_string(),
                r.n.to_string(),
                r.opt_delta.clone().unwrap_or_default(),
                r.opt_cc.clone().unwrap_or_default(),
                r.ratio.clone().unwrap_or_default(),
                runtime,
                r.status.clone(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| BttError::Internal(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Seed of instance `i`, drawn from its own stream of `seed`.
pub fn instance_seed(seed: u64, i: usize) -> u64 {
    stream(seed, i as u64).next_u64()
}

/// Computes both optima on `count` generated instances in parallel. Every
/// ratio must be at least 1; on unweighted complete graphs it must also be
/// at most 3/2. Solver errors are recorded per row and the survey goes on.
pub fn ratio_survey(spec: &SurveySpec) -> SurveyReport {
    let results: Vec<(SurveyRow, Option<String>)> =
        (0..spec.count).into_par_iter().map(|i| survey_one(spec, i)).collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut counterexamples = Vec::new();
    for (row, dump) in results {
        if let Some(text) = dump {
            counterexamples.push((row.instance, text));
        }
        rows.push(row);
    }
    let violations = rows.iter().filter(|r| r.status == "violation").count();
    let errors = rows.iter().filter(|r| r.opt_delta.is_none() || r.opt_cc.is_none()).count();
    SurveyReport { rows, counterexamples, violations, errors }
}

fn survey_one(spec: &SurveySpec, i: usize) -> (SurveyRow, Option<String>) {
    let seed = instance_seed(spec.seed, i);
    let start = Instant::now();
    let mut row = SurveyRow {
        instance: i,
        seed,
        n: spec.generator.n,
        opt_delta: None,
        opt_cc: None,
        ratio: None,
        runtime_ms: 0.0,
        status: String::new(),
    };
    let outcome = (|| -> Result<(SignedGraph, Rational, Rational)> {
        let g: SignedGraph = gen_random(&spec.generator, seed)?;
        let delta = exact_btt(&g, spec.node_budget)?.value;
        let cc = exact_cc(&g, spec.node_budget)?.value;
        Ok((g, delta, cc))
    })();
    row.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut dump = None;
    match outcome {
        Err(e) => row.status = format!("error: {e}"),
        Ok((g, delta, cc)) => {
            let one = Rational::from_ratio(1, 1);
            // 0/0 reads as 1; a positive optimum over zero reads as unbounded.
            let ratio = if delta.is_zero() {
                if cc.is_zero() {
                    Some(one.clone())
                } else {
                    None
                }
            } else {
                Some(cc.clone() / delta.clone())
            };
            let upper_checked = g.is_complete() && spec.generator.weights == WeightSpec::Unit;
            let too_low = ratio.as_ref().is_some_and(|r| *r < one);
            let too_high = ratio.as_ref().map_or(true, |r| *r > Rational::from_ratio(3, 2));
            row.status = if too_low || (upper_checked && too_high) {
                "violation".into()
            } else if ratio.as_ref().map_or(true, |r| *r > one) {
                dump = Some(write_edge_list(&g));
                "counterexample".into()
            } else {
                "ok".into()
            };
            row.opt_delta = Some(delta.to_text());
            row.opt_cc = Some(cc.to_text());
            row.ratio = Some(ratio.map_or_else(|| "inf".to_string(), |r| r.to_text()));
        }
    }
    (row, dump)
}
