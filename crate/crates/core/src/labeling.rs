//! The randomized labeling procedure on a path system, and assembly of the
//! dominating set.
//!
//! Every path gets a uniform level in `1..=K`. Levels are labeled in
//! increasing order: a vertex's input label records where its mate sits
//! (higher level `∘`, same level `·`, lower level `+`/`×`/`·` from the mate's
//! output `⊕`/`⊗`/`⊙`), then the rules rewrite each path's input word into
//! output labels. Paths are padded with i.i.d. auxiliary symbols so that the
//! rule boundaries along a path are distributed as in an infinite stream.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{analyze_expanded, start_offset_distribution, InputProbs, StartOffsetDistribution};
use crate::graph::{decompose_paths, girth, maximum_matching, Graph, GraphError, PathSystem};
use crate::rules::{
    check_complete, check_correct, ExpandedRuleSet, InputSymbol, MatchError, OutputSymbol, RuleSet,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("number of levels must be at least 2, got {0}")]
    TooFewLevels(usize),
    #[error("rule set is not correct and complete ({0} violations)")]
    InvalidRules(usize),
    #[error("vertex {vertex}: mate {mate} is on a lower level but has no output label")]
    Unscheduled { vertex: usize, mate: usize },
    #[error("vertex {vertex} received output P with input {input}")]
    OplusWithoutCirc { vertex: usize, input: InputSymbol },
    #[error(transparent)]
    Match(#[from] MatchError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Level of each path, indexed like `PathSystem::paths`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelAssignment {
    pub k: usize,
    pub levels: Vec<usize>,
}

impl LevelAssignment {
    pub fn level(&self, path: usize) -> usize {
        self.levels[path]
    }
}

/// Per-vertex labels; uncovered vertices carry `None` everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub input: Vec<Option<InputSymbol>>,
    pub output: Vec<Option<OutputSymbol>>,
    pub level: Vec<Option<usize>>,
}

impl Labeling {
    fn new(n: usize) -> Self {
        Self { input: vec![None; n], output: vec![None; n], level: vec![None; n] }
    }
}

/// Why a vertex is in the dominating set; several may hold at once.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub uncovered: bool,
    pub input_plus: bool,
    pub output_otimes: bool,
    pub endpoint: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceCounts {
    pub uncovered: usize,
    pub input_plus: usize,
    pub output_otimes: usize,
    pub endpoint: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingSet {
    /// Sorted member ids.
    pub members: Vec<usize>,
    /// Parallel to `members`.
    pub provenance: Vec<Provenance>,
}

impl DominatingSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn counts(&self) -> ProvenanceCounts {
        let mut c = ProvenanceCounts::default();
        for p in &self.provenance {
            c.uncovered += usize::from(p.uncovered);
            c.input_plus += usize::from(p.input_plus);
            c.output_otimes += usize::from(p.output_otimes);
            c.endpoint += usize::from(p.endpoint);
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationCheck {
    pub dominating: bool,
    pub undominated: Vec<usize>,
}

/// Label counts of the covered vertices on one level.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCounts {
    pub level: usize,
    pub paths: usize,
    /// Indexed by `InputSymbol::index`.
    pub input: [u64; 4],
    /// Indexed by `OutputSymbol::index`.
    pub output: [u64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub seed: u64,
    pub n: usize,
    /// Girth of the input graph.
    pub girth: Option<usize>,
    /// Girth parameter used for the path window.
    pub path_girth: usize,
    pub k: usize,
    pub rules: String,
    pub size: usize,
    pub ratio: f64,
    pub paths: usize,
    pub short_paths: usize,
    pub max_path_len: usize,
    pub uncovered: usize,
    /// Sums may exceed `size` since a member can have several reasons.
    pub provenance: ProvenanceCounts,
    pub dominating: bool,
    pub levels: Vec<LevelCounts>,
}

impl RunStats {
    pub const CSV_HEADER: &'static str = "seed,n,girth,k,size,ratio";

    pub fn csv_row(&self) -> String {
        let girth = self.girth.map_or_else(|| "inf".to_string(), |g| g.to_string());
        format!("{},{},{},{},{},{:.6}", self.seed, self.n, girth, self.k, self.size, self.ratio)
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub paths: PathSystem,
    pub levels: LevelAssignment,
    pub labeling: Labeling,
    pub dominating_set: DominatingSet,
    pub stats: RunStats,
}

pub fn assign_levels(ps: &PathSystem, k: usize, rng: &mut impl Rng) -> Result<LevelAssignment, LabelingError> {
    if k < 2 {
        return Err(LabelingError::TooFewLevels(k));
    }
    let levels = (0..ps.paths.len()).map(|_| rng.gen_range(1..=k)).collect();
    Ok(LevelAssignment { k, levels })
}

/// Input label of covered vertex `v` given the levels and the output labels
/// written so far.
pub fn compute_input_label(
    v: usize,
    ps: &PathSystem,
    la: &LevelAssignment,
    output: &[Option<OutputSymbol>],
) -> Result<InputSymbol, LabelingError> {
    let mate = ps.mate(v).expect("input labels exist only for covered vertices");
    let own = la.level(ps.location(v).expect("covered vertex lies on a path").0);
    let theirs = la.level(ps.location(mate).expect("mate is covered").0);
    Ok(match theirs.cmp(&own) {
        std::cmp::Ordering::Greater => InputSymbol::Circ,
        std::cmp::Ordering::Equal => InputSymbol::Dot,
        std::cmp::Ordering::Less => match output[mate] {
            Some(OutputSymbol::OPlus) => InputSymbol::Plus,
            Some(OutputSymbol::OTimes) => InputSymbol::Times,
            Some(OutputSymbol::ODot) => InputSymbol::Dot,
            None => return Err(LabelingError::Unscheduled { vertex: v, mate }),
        },
    })
}

/// Sampler for auxiliary input symbols under a level's input law.
#[derive(Debug, Clone)]
pub struct SymbolSampler(WeightedIndex<f64>);

impl SymbolSampler {
    pub fn new(p: &InputProbs) -> Self {
        Self(WeightedIndex::new(p.as_array()).expect("input law has positive mass"))
    }

    pub fn sample(&self, rng: &mut impl Rng) -> InputSymbol {
        InputSymbol::from_index(self.0.sample(rng))
    }
}

/// Output labels for one path with input word `inputs`.
///
/// Draws `ℓ₀` from `offset`, prepends `‖R‖ - ℓ₀` and appends `‖R‖`
/// auxiliary symbols from `aux`, and applies rules from the first position.
pub fn label_path(
    inputs: &[InputSymbol],
    ers: &ExpandedRuleSet,
    aux: &SymbolSampler,
    offset: &StartOffsetDistribution,
    rng: &mut impl Rng,
) -> Result<Vec<OutputSymbol>, LabelingError> {
    let r = ers.max_len();
    let ell0 = 1 + WeightedIndex::new(&offset.ell0_pmf).expect("offset law has mass").sample(rng);
    let pre = r - ell0;
    let mut stream = Vec::with_capacity(pre + inputs.len() + r);
    stream.extend((0..pre).map(|_| aux.sample(rng)));
    stream.extend_from_slice(inputs);
    stream.extend((0..r).map(|_| aux.sample(rng)));

    let end = pre + inputs.len();
    let mut out = Vec::with_capacity(inputs.len());
    let mut pos = 0;
    while pos < end {
        let rule = ers.match_prefix(&stream[pos..])?;
        for (i, &t) in rule.rhs.iter().enumerate() {
            if (pre..end).contains(&(pos + i)) {
                out.push(t);
            }
        }
        pos += rule.len();
    }
    Ok(out)
}

pub fn build_dominating_set(ps: &PathSystem, labeling: &Labeling) -> DominatingSet {
    let mut tags = vec![Provenance::default(); ps.n()];
    for &v in &ps.uncovered {
        tags[v].uncovered = true;
    }
    for v in 0..ps.n() {
        tags[v].input_plus = labeling.input[v] == Some(InputSymbol::Plus);
        tags[v].output_otimes = labeling.output[v] == Some(OutputSymbol::OTimes);
    }
    for path in &ps.paths {
        tags[path[0]].endpoint = true;
        tags[path[path.len() - 1]].endpoint = true;
    }
    let (members, provenance) = tags
        .into_iter()
        .enumerate()
        .filter(|(_, t)| *t != Provenance::default())
        .unzip();
    DominatingSet { members, provenance }
}

pub fn verify_dominating(g: &Graph, members: &[usize]) -> DominationCheck {
    let mut covered = vec![false; g.n()];
    for &v in members {
        covered[v] = true;
        for &w in g.neighbors(v) {
            covered[w] = true;
        }
    }
    let undominated: Vec<usize> = (0..g.n()).filter(|&v| !covered[v]).collect();
    DominationCheck { dominating: undominated.is_empty(), undominated }
}

fn path_rng(seed: u64, path: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path as u64 + 1);
    rng
}

/// The full pipeline on a cubic graph: maximum matching, path
/// decomposition with window from `path_girth` (default: the measured
/// girth), random levels, level-by-level labeling, and the dominating set.
pub fn run(
    g: &Graph,
    rs: &RuleSet,
    k: usize,
    seed: u64,
    path_girth: Option<usize>,
) -> Result<RunOutput, LabelingError> {
    if k < 2 {
        return Err(LabelingError::TooFewLevels(k));
    }
    g.ensure_cubic()?;
    let violations = check_correct(rs).len() + check_complete(rs).len();
    if violations > 0 {
        return Err(LabelingError::InvalidRules(violations));
    }
    let ers = rs.expand();
    let measured = girth(g).girth;
    let path_girth = path_girth.or(measured).unwrap_or(g.n());
    let matching = maximum_matching(g);
    let ps = decompose_paths(g, &matching, path_girth, k)?;

    let table = analyze_expanded(&ers, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let la = assign_levels(&ps, k, &mut rng)?;
    let mut by_level = vec![Vec::new(); k + 1];
    for (pi, &lvl) in la.levels.iter().enumerate() {
        by_level[lvl].push(pi);
    }

    let n = g.n();
    let mut labeling = Labeling::new(n);
    for level in 1..=k {
        let row = &table.rows[level - 1];
        let aux = SymbolSampler::new(&row.p);
        let offset = start_offset_distribution(&ers, &row.p, row.big_q);
        let labeled: Vec<(usize, Vec<InputSymbol>, Vec<OutputSymbol>)> = by_level[level]
            .par_iter()
            .map(|&pi| {
                let path = &ps.paths[pi];
                let inputs = path
                    .iter()
                    .map(|&v| compute_input_label(v, &ps, &la, &labeling.output))
                    .collect::<Result<Vec<_>, _>>()?;
                let outputs = label_path(&inputs, &ers, &aux, &offset, &mut path_rng(seed, pi))?;
                Ok((pi, inputs, outputs))
            })
            .collect::<Result<_, LabelingError>>()?;
        for (pi, inputs, outputs) in labeled {
            for ((&v, s), t) in ps.paths[pi].iter().zip(inputs).zip(outputs) {
                if t == OutputSymbol::OPlus && s != InputSymbol::Circ {
                    return Err(LabelingError::OplusWithoutCirc { vertex: v, input: s });
                }
                labeling.input[v] = Some(s);
                labeling.output[v] = Some(t);
                labeling.level[v] = Some(level);
            }
        }
    }

    let ds = build_dominating_set(&ps, &labeling);
    let check = verify_dominating(g, &ds.members);
    let mut levels: Vec<LevelCounts> =
        (1..=k).map(|level| LevelCounts { level, paths: by_level[level].len(), ..Default::default() }).collect();
    for v in 0..n {
        if let (Some(l), Some(s), Some(t)) = (labeling.level[v], labeling.input[v], labeling.output[v]) {
            levels[l - 1].input[s.index()] += 1;
            levels[l - 1].output[t.index()] += 1;
        }
    }
    let stats = RunStats {
        seed,
        n,
        girth: measured,
        path_girth,
        k,
        rules: rs.name().to_string(),
        size: ds.len(),
        ratio: ds.len() as f64 / n as f64,
        paths: ps.paths.len(),
        short_paths: ps.short_paths,
        max_path_len: ps.params.max_len,
        uncovered: ps.uncovered.len(),
        provenance: ds.counts(),
        dominating: check.dominating,
        levels,
    };
    Ok(RunOutput { paths: ps, levels: la, labeling, dominating_set: ds, stats })
}
