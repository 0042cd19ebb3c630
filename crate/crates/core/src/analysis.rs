//! Ideal-case label probabilities per level and the resulting size bound.
//!
//! For level `i` of `K`, a vertex's input label is `∘` when its mate sits on
//! a higher level, `·` when on the same level, and otherwise is determined by
//! the mate's output label on a lower level `j`, which is distributed as the
//! conditional output law `q°_j`. Given the input law `p_i`, treating the
//! path as an infinite i.i.d. stream cut into consecutive rule applications
//! yields the output law `q_i` and the conditional law `q°_i` given input `∘`.

use std::fmt::Write as _;
use std::ops::Index;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rules::{
    check_complete, check_correct, ExpandedRuleSet, InputSymbol, OutputSymbol, RuleSet, Violation,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("number of levels must be at least 2, got {0}")]
    TooFewLevels(usize),
    #[error("level {level} is outside 1..={k}")]
    LevelOutOfRange { level: usize, k: usize },
    #[error("rule set is not correct and complete ({} violations)", .0.len())]
    InvalidRules(Vec<Violation>),
    #[error("level {0} has no conditional output law but a higher level depends on it")]
    MissingConditional(usize),
    #[error("need rows 1..{needed} to compute the next level, have {have}")]
    MissingRows { needed: usize, have: usize },
}

/// Input-label distribution.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct InputProbs {
    pub plus: f64,
    pub times: f64,
    pub dot: f64,
    pub circ: f64,
}

impl InputProbs {
    pub fn as_array(&self) -> [f64; 4] {
        [self.plus, self.times, self.dot, self.circ]
    }

    pub fn sum(&self) -> f64 {
        self.as_array().iter().sum()
    }
}

impl Index<InputSymbol> for InputProbs {
    type Output = f64;

    fn index(&self, s: InputSymbol) -> &f64 {
        match s {
            InputSymbol::Plus => &self.plus,
            InputSymbol::Times => &self.times,
            InputSymbol::Dot => &self.dot,
            InputSymbol::Circ => &self.circ,
        }
    }
}

/// Output-label distribution.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct OutputProbs {
    pub oplus: f64,
    pub otimes: f64,
    pub odot: f64,
}

impl OutputProbs {
    pub fn as_array(&self) -> [f64; 3] {
        [self.oplus, self.otimes, self.odot]
    }

    fn from_array(a: [f64; 3]) -> Self {
        Self { oplus: a[0], otimes: a[1], odot: a[2] }
    }

    pub fn sum(&self) -> f64 {
        self.as_array().iter().sum()
    }
}

impl Index<OutputSymbol> for OutputProbs {
    type Output = f64;

    fn index(&self, s: OutputSymbol) -> &f64 {
        match s {
            OutputSymbol::OPlus => &self.oplus,
            OutputSymbol::OTimes => &self.otimes,
            OutputSymbol::ODot => &self.odot,
        }
    }
}

/// Probabilities for one level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelProbabilities {
    pub level: usize,
    pub p: InputProbs,
    pub q: OutputProbs,
    /// Output law conditioned on input `∘`; absent when `p(∘) = 0`.
    pub q_circ: Option<OutputProbs>,
    /// Expected number of symbols consumed per rule application.
    pub big_q: f64,
    /// Expected number of `∘` symbols consumed per rule application.
    pub big_q_circ: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisTable {
    pub k: usize,
    pub rule_set_name: String,
    pub rows: Vec<LevelProbabilities>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    /// Coefficient of `n` in the expected dominating-set size.
    pub bound: f64,
    pub k: usize,
}

/// Distribution of the padding offset `ℓ₀` for one level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StartOffsetDistribution {
    /// `r[j-1]`: probability that a position starts a rule given that none
    /// of the `j - 1` positions before it does.
    pub r: Vec<f64>,
    /// `ell0_pmf[l-1] = P(ℓ₀ = l)` for `l = 1..=‖R‖`.
    pub ell0_pmf: Vec<f64>,
    /// Stationary law of the 1-based offset inside the current rule:
    /// `W_l / Q` with `W_l` the probability that a rule has length `>= l`.
    pub stationary_offset: Vec<f64>,
}

/// Input law at `level` of `k`, from the conditional output laws of the
/// lower levels (`prior[j-1]` is level `j`).
pub fn input_probs(
    level: usize,
    k: usize,
    prior: &[LevelProbabilities],
) -> Result<InputProbs, AnalysisError> {
    if level == 0 || level > k {
        return Err(AnalysisError::LevelOutOfRange { level, k });
    }
    if prior.len() < level - 1 {
        return Err(AnalysisError::MissingRows { needed: level - 1, have: prior.len() });
    }
    let mut sums = [0.0; 3];
    for row in &prior[..level - 1] {
        let qc = row.q_circ.ok_or(AnalysisError::MissingConditional(row.level))?;
        for (s, v) in sums.iter_mut().zip(qc.as_array()) {
            *s += v;
        }
    }
    Ok(input_probs_from_sums(level, k, sums))
}

fn input_probs_from_sums(level: usize, k: usize, sums: [f64; 3]) -> InputProbs {
    let kf = k as f64;
    InputProbs {
        plus: sums[0] / kf,
        times: sums[1] / kf,
        dot: (1.0 + sums[2]) / kf,
        circ: (k - level) as f64 / kf,
    }
}

/// Probability that `sigma` appears on consecutive i.i.d. positions.
pub fn pattern_prob(p: &InputProbs, sigma: &[InputSymbol]) -> f64 {
    sigma.iter().map(|&s| p[s]).product()
}

/// Output law and `Q` (mean rule length) under input law `p`.
pub fn output_probs(ers: &ExpandedRuleSet, p: &InputProbs) -> (OutputProbs, f64) {
    let mut big_q = 0.0;
    let mut acc = [0.0; 3];
    for rule in ers.rules() {
        let w = pattern_prob(p, &rule.lhs);
        if w == 0.0 {
            continue;
        }
        big_q += rule.len() as f64 * w;
        for t in &rule.rhs {
            acc[t.index()] += w;
        }
    }
    (OutputProbs::from_array(acc.map(|a| a / big_q)), big_q)
}

/// Output law conditioned on input `∘`, with `Q°`; `None` when `Q° = 0`.
pub fn output_probs_conditional(
    ers: &ExpandedRuleSet,
    p: &InputProbs,
) -> Option<(OutputProbs, f64)> {
    let mut big_q = 0.0;
    let mut acc = [0.0; 3];
    for rule in ers.rules() {
        let w = pattern_prob(p, &rule.lhs);
        if w == 0.0 {
            continue;
        }
        for (s, t) in rule.lhs.iter().zip(&rule.rhs) {
            if *s == InputSymbol::Circ {
                big_q += w;
                acc[t.index()] += w;
            }
        }
    }
    (big_q > 0.0).then(|| (OutputProbs::from_array(acc.map(|a| a / big_q)), big_q))
}

/// Padding-offset law for input law `p` (with `big_q` from [`output_probs`]).
///
/// With `G_l` the probability that the rule matched at a start has length
/// `l` and `W_l = Σ_{m>=l} G_m`, the stationary probability that a position
/// is the `l`-th of its rule is `W_l / Q`. Conditioning on the previous
/// `j - 1` positions not being starts gives `r_j = W_j / Σ_{l>=j} W_l`, and
/// the product `r_l Π_{j<l} (1 - r_j)` telescopes back to `W_l / Q`.
pub fn start_offset_distribution(
    ers: &ExpandedRuleSet,
    p: &InputProbs,
    big_q: f64,
) -> StartOffsetDistribution {
    let m = ers.max_len();
    let mut g = vec![0.0; m + 1];
    for rule in ers.rules() {
        g[rule.len()] += pattern_prob(p, &rule.lhs);
    }
    // w[l] = P(length >= l), tail[l] = Σ_{j>=l} w[j]
    let mut w = vec![0.0; m + 2];
    let mut tail = vec![0.0; m + 2];
    for l in (1..=m).rev() {
        w[l] = w[l + 1] + g[l];
        tail[l] = tail[l + 1] + w[l];
    }

    let r: Vec<f64> = (1..=m)
        .map(|j| match j {
            1 => 1.0 / big_q,
            // Unreachable offset: every rule has already ended.
            _ if tail[j] <= 0.0 => 1.0,
            _ => w[j] / tail[j],
        })
        .collect();

    let mut ell0_pmf = Vec::with_capacity(m);
    let mut survive = 1.0;
    for &rj in &r {
        ell0_pmf.push(rj * survive);
        survive *= 1.0 - rj;
    }
    let stationary_offset = (1..=m).map(|l| w[l] / big_q).collect();
    StartOffsetDistribution { r, ell0_pmf, stationary_offset }
}

/// Rule with its per-position counts pre-aggregated for the level loop.
struct CompiledRule {
    symbols: Vec<InputSymbol>,
    len: f64,
    out: [f64; 3],
    circ_out: [f64; 3],
}

fn compile(ers: &ExpandedRuleSet) -> Vec<CompiledRule> {
    ers.rules()
        .iter()
        .map(|r| {
            let mut out = [0.0; 3];
            let mut circ_out = [0.0; 3];
            for (s, t) in r.lhs.iter().zip(&r.rhs) {
                out[t.index()] += 1.0;
                if *s == InputSymbol::Circ {
                    circ_out[t.index()] += 1.0;
                }
            }
            CompiledRule { symbols: r.lhs.clone(), len: r.len() as f64, out, circ_out }
        })
        .collect()
}

/// Computes all `K` levels for a correct and complete rule set.
pub fn analyze(rs: &RuleSet, k: usize) -> Result<AnalysisTable, AnalysisError> {
    if k < 2 {
        return Err(AnalysisError::TooFewLevels(k));
    }
    let mut violations = check_correct(rs);
    violations.extend(check_complete(rs));
    if !violations.is_empty() {
        return Err(AnalysisError::InvalidRules(violations));
    }
    Ok(analyze_expanded(&rs.expand(), k))
}

/// The level recursion on an already validated expansion. Keeps running
/// sums of the lower levels' conditional laws, so the cost is
/// `O(K · |expansion|)`.
pub fn analyze_expanded(ers: &ExpandedRuleSet, k: usize) -> AnalysisTable {
    let compiled = compile(ers);
    let mut sums = [0.0; 3];
    let mut rows = Vec::with_capacity(k);
    for level in 1..=k {
        let p = input_probs_from_sums(level, k, sums);
        let pv = p.as_array();

        let mut big_q = 0.0;
        let mut big_q_circ = 0.0;
        let mut out = [0.0; 3];
        let mut circ_out = [0.0; 3];
        for rule in &compiled {
            let w: f64 = rule.symbols.iter().map(|s| pv[s.index()]).product();
            if w == 0.0 {
                continue;
            }
            big_q += rule.len * w;
            for c in 0..3 {
                out[c] += rule.out[c] * w;
                circ_out[c] += rule.circ_out[c] * w;
            }
            big_q_circ += rule.circ_out.iter().sum::<f64>() * w;
        }

        let q = OutputProbs::from_array(out.map(|x| x / big_q));
        let q_circ = (big_q_circ > 0.0)
            .then(|| OutputProbs::from_array(circ_out.map(|x| x / big_q_circ)));
        if let Some(qc) = q_circ {
            for (s, v) in sums.iter_mut().zip(qc.as_array()) {
                *s += v;
            }
        }
        rows.push(LevelProbabilities { level, p, q, q_circ, big_q, big_q_circ });
    }
    AnalysisTable { k, rule_set_name: ers.name().to_string(), rows }
}

/// Expected dominating-set size per vertex, ignoring the `O(n/g)` terms.
pub fn bound(table: &AnalysisTable) -> BoundResult {
    let total: f64 = table.rows.iter().map(|r| r.q.oplus + r.q.otimes).sum();
    BoundResult { bound: total / table.k as f64, k: table.k }
}

impl AnalysisTable {
    pub fn row(&self, level: usize) -> Option<&LevelProbabilities> {
        self.rows.get(level.checked_sub(1)?)
    }

    /// TSV with 4-decimal cells; `levels` restricts the printed rows.
    pub fn to_tsv(&self, levels: Option<&[usize]>) -> String {
        let mut s = String::from("i\tp+\tpx\tp.\tpo\tqP\tqT\tqD\tqoP\tqoT\tqoD\n");
        let rows: Vec<&LevelProbabilities> = match levels {
            Some(ls) => ls.iter().filter_map(|&l| self.row(l)).collect(),
            None => self.rows.iter().collect(),
        };
        for row in rows {
            let _ = write!(s, "{}", row.level);
            for v in row.p.as_array().iter().chain(&row.q.as_array()) {
                let _ = write!(s, "\t{v:.4}");
            }
            match row.q_circ {
                Some(qc) => {
                    for v in qc.as_array() {
                        let _ = write!(s, "\t{v:.4}");
                    }
                }
                None => s.push_str("\t-\t-\t-"),
            }
            s.push('\n');
        }
        s
    }

    /// The ten table columns of a row, `None` for an absent conditional law.
    pub fn columns(row: &LevelProbabilities) -> [Option<f64>; 10] {
        let mut out = [None; 10];
        for (slot, v) in out.iter_mut().zip(row.p.as_array().into_iter().chain(row.q.as_array())) {
            *slot = Some(v);
        }
        if let Some(qc) = row.q_circ {
            for (slot, v) in out[7..].iter_mut().zip(qc.as_array()) {
                *slot = Some(v);
            }
        }
        out
    }
}
