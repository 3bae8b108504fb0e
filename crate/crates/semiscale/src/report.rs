//! Serializable verdict records shared by the CLI reports and anything else
//! that wants to persist sweep results.

use serde::Serialize;

use crate::extrapolation::ExtrapolatedVector;
use crate::funcspace::Grid;
use crate::scales::{ChainClassification, FavardEstimate, ProbeSchedule};

/// Probe-grid metadata recorded with every verdict so it can be reproduced.
#[derive(Debug, Clone, Serialize)]
pub struct GridsInfo {
    pub x_grid: (f64, f64, usize),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_grid: Option<(f64, f64, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_grid: Option<(f64, f64, usize)>,
}

impl GridsInfo {
    pub fn from_schedule(sched: &ProbeSchedule, uses_t: bool, uses_lambda: bool) -> Self {
        let span = |g: &[f64]| (g[0], g[g.len() - 1], g.len());
        GridsInfo {
            x_grid: (sched.grid.a(), sched.grid.b(), sched.grid.n()),
            t_grid: uses_t.then(|| span(&sched.t_grid)),
            lambda_grid: uses_lambda.then(|| span(&sched.lambda_grid)),
        }
    }

    pub fn x_only(grid: &Grid) -> Self {
        GridsInfo { x_grid: (grid.a(), grid.b(), grid.n()), t_grid: None, lambda_grid: None }
    }
}

/// One verdict row of a report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRecord {
    pub function: String,
    pub semigroup: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub test: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
    pub verdict: String,
    pub grids: GridsInfo,
}

impl ReportRecord {
    pub fn from_favard(
        function: &str,
        semigroup: &str,
        test: &str,
        est: &FavardEstimate,
        grids: GridsInfo,
    ) -> Self {
        ReportRecord {
            function: function.to_string(),
            semigroup: semigroup.to_string(),
            alpha: Some(est.alpha),
            test: test.to_string(),
            value: est.value,
            slope: Some(est.slope),
            verdict: est.verdict.to_string(),
            grids,
        }
    }
}

/// Chain block entry: the ordered verdict vector for one function.
#[derive(Debug, Clone, Serialize)]
pub struct ChainRecord {
    pub function: String,
    pub alpha: f64,
    pub vector: Vec<ChainEntry>,
    pub monotone: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainEntry {
    pub space: String,
    pub verdict: String,
}

impl ChainRecord {
    pub fn new(function: &str, chain: &ChainClassification) -> Self {
        ChainRecord {
            function: function.to_string(),
            alpha: chain.alpha,
            vector: chain
                .verdicts
                .iter()
                .map(|(tag, v)| ChainEntry { space: tag.name().to_string(), verdict: v.to_string() })
                .collect(),
            monotone: true,
        }
    }
}

/// Serialized form of an extrapolated vector.
#[derive(Debug, Clone, Serialize)]
pub struct ExtrapolatedRecord {
    pub semigroup: String,
    pub sigma: f64,
    pub rep_label: String,
    pub norm: f64,
    pub in_continuity_subspace: bool,
}

impl ExtrapolatedRecord {
    pub fn new(v: &ExtrapolatedVector) -> Self {
        ExtrapolatedRecord {
            semigroup: v.family().to_string(),
            sigma: v.sigma(),
            rep_label: v.rep().label().to_string(),
            norm: v.norm(),
            in_continuity_subspace: v.in_continuity_subspace(),
        }
    }
}
