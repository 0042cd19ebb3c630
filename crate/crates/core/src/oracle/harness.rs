use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::OracleError;
use crate::graph::{boost_girth, random_cubic, Graph};
use crate::labeling::{run, RunStats};
use crate::rules::RuleSet;

#[derive(Debug, Clone)]
pub enum GraphSource {
    /// The same graph for every seed.
    Fixed(Graph),
    /// A fresh random cubic graph per seed, boosted to girth `girth` when
    /// that exceeds 3.
    Generate { n: usize, girth: usize, max_iters: usize },
}

#[derive(Debug, Clone)]
pub struct TrialConfig {
    pub rules: RuleSet,
    pub k: usize,
    pub source: GraphSource,
    pub seeds: Vec<u64>,
    /// Overrides the girth used to size the path window.
    pub path_girth: Option<usize>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub rules: String,
    pub k: usize,
    pub n: usize,
    pub girth_target: Option<usize>,
    pub path_girth: Option<usize>,
    pub seeds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub config: ReportConfig,
    pub trials: Vec<RunStats>,
    pub mean_ratio: f64,
    /// Standard error of the mean; `None` for a single trial.
    pub std_error: Option<f64>,
}

impl TrialReport {
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(
            s,
            "rules={} K={} n={} girth_target={} path_girth={}",
            c.rules,
            c.k,
            c.n,
            c.girth_target.map_or("-".into(), |g| g.to_string()),
            c.path_girth.map_or("auto".into(), |g| g.to_string()),
        );
        let _ = writeln!(s, "{:>8} {:>7} {:>6} {:>8} {:>9} {:>7} {:>10}", "seed", "n", "girth", "|D|", "ratio", "paths", "dominating");
        for t in &self.trials {
            let _ = writeln!(
                s,
                "{:>8} {:>7} {:>6} {:>8} {:>9.6} {:>7} {:>10}",
                t.seed,
                t.n,
                t.girth.map_or("inf".into(), |g| g.to_string()),
                t.size,
                t.ratio,
                t.paths,
                t.dominating
            );
        }
        let _ = write!(s, "mean ratio {:.6}", self.mean_ratio);
        if let Some(se) = self.std_error {
            let _ = write!(s, " (SE {se:.6})");
        }
        s.push('\n');
        s
    }
}

fn trial(config: &TrialConfig, seed: u64) -> Result<RunStats, OracleError> {
    let generated;
    let g = match &config.source {
        GraphSource::Fixed(g) => g,
        GraphSource::Generate { n, girth, max_iters } => {
            let g = random_cubic(*n, seed)?;
            generated = if *girth > 3 { boost_girth(&g, *girth, seed, *max_iters)?.graph } else { g };
            &generated
        }
    };
    let out = run(g, &config.rules, config.k, seed, config.path_girth)?;
    if !out.stats.dominating {
        let undominated = crate::labeling::verify_dominating(g, &out.dominating_set.members).undominated;
        return Err(OracleError::NotDominating { seed, undominated });
    }
    Ok(out.stats)
}

/// Runs the pipeline once per seed, in parallel, and aggregates `|D| / n`.
/// Fails on the first trial whose set is not dominating.
pub fn run_trials(config: &TrialConfig) -> Result<TrialReport, OracleError> {
    if config.seeds.is_empty() {
        return Err(OracleError::NoSeeds);
    }
    let work = || config.seeds.par_iter().map(|&s| trial(config, s)).collect::<Result<Vec<_>, _>>();
    let trials = match config.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .expect("thread pool")
            .install(work)?,
        None => work()?,
    };

    let t = trials.len() as f64;
    let mean_ratio = trials.iter().map(|s| s.ratio).sum::<f64>() / t;
    let std_error = (trials.len() > 1).then(|| {
        let var = trials.iter().map(|s| (s.ratio - mean_ratio).powi(2)).sum::<f64>() / (t - 1.0);
        (var / t).sqrt()
    });
    let (n, girth_target) = match &config.source {
        GraphSource::Fixed(g) => (g.n(), None),
        GraphSource::Generate { n, girth, .. } => (*n, Some(*girth)),
    };
    Ok(TrialReport {
        config: ReportConfig {
            rules: config.rules.name().to_string(),
            k: config.k,
            n,
            girth_target,
            path_girth: config.path_girth,
            seeds: config.seeds.clone(),
        },
        trials,
        mean_ratio,
        std_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    fn config(seeds: Vec<u64>) -> TrialConfig {
        TrialConfig {
            rules: bundled::example10(),
            k: 5,
            source: GraphSource::Generate { n: 2000, girth: 6, max_iters: 100_000 },
            seeds,
            path_girth: Some(610),
            jobs: Some(2),
        }
    }

    #[test]
    fn deterministic_reports() {
        let a = run_trials(&config(vec![1, 2, 3])).unwrap();
        let b = run_trials(&config(vec![1, 2, 3])).unwrap();
        assert_eq!(a, b);
        assert!(a.trials.iter().all(|t| t.dominating && t.girth >= Some(6)));
        assert!(a.std_error.is_some());
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<TrialReport>(&json).unwrap(), a);
        assert!(a.to_table().contains("mean ratio"));
    }

    #[test]
    fn fixed_graph_and_no_seeds() {
        let mut c = config(vec![5]);
        c.source = GraphSource::Fixed(Graph::petersen());
        c.path_girth = None;
        let r = run_trials(&c).unwrap();
        assert_eq!(r.config.n, 10);
        assert_eq!(r.std_error, None);
        c.seeds.clear();
        assert_eq!(run_trials(&c), Err(OracleError::NoSeeds));
    }
}
