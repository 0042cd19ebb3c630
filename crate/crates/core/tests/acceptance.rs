//! End-to-end acceptance criteria. Runs every criterion, prints one
//! PASS/FAIL line each (with details on failure), and exits non-zero if any
//! failed.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cubicdom::analysis::{analyze, bound, start_offset_distribution, InputProbs};
use cubicdom::bundled::{self, parse_expected};
use cubicdom::graph::{maximum_matching, random_cubic, Graph, PathParams};
use cubicdom::labeling::{label_path, run, verify_dominating, SymbolSampler};
use cubicdom::oracle::{exact_domination_number, run_trials, GraphSource, TrialConfig};
use cubicdom::reproduce::{compare_table, Comparison};
use cubicdom::rules::{check_complete, check_correct, InputSymbol, RuleSet, ViolationKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{out}; took {took:.2?}, limit {limit:?}"));
    }
    Ok(format!("{out} ({took:.2?})"))
}

/// Window of 60 path vertices for `k` levels.
fn window(k: usize) -> usize {
    2 * k * 61
}

fn criterion_1() -> Outcome {
    timed(Duration::from_millis(100), || {
        let b = bound(&analyze(&bundled::example10(), 5).map_err(|e| e.to_string())?).bound;
        let msg = format!("example10 K=5 bound {b:.7}");
        if (b - 0.313972).abs() <= 5e-7 { Ok(msg) } else { Err(msg) }
    })
}

fn criterion_2() -> Outcome {
    timed(Duration::from_secs(10), || {
        let b = bound(&analyze(&bundled::main79(), 10_000).map_err(|e| e.to_string())?).bound;
        let msg = format!("main79 K=10000 bound {b:.7}");
        if (b - 0.299871).abs() <= 5e-7 { Ok(msg) } else { Err(msg) }
    })
}

fn criterion_3() -> Outcome {
    timed(Duration::from_secs(10), || {
        let mut cells: Vec<Comparison> = Vec::new();
        for (rs, k, tsv) in [
            (bundled::example10(), 5, bundled::FIG2_TSV),
            (bundled::main79(), 10_000, bundled::FIG4_TSV),
        ] {
            let table = analyze(&rs, k).map_err(|e| e.to_string())?;
            for mut c in compare_table(&table, &parse_expected(tsv)) {
                c.label = format!("{} {}", rs.name(), c.label);
                cells.push(c);
            }
        }
        let bad: Vec<String> = cells.iter().filter(|c| !c.ok()).map(|c| c.to_string()).collect();
        if cells.len() != 120 {
            return Err(format!("expected 120 cells, compared {}", cells.len()));
        }
        if bad.is_empty() {
            Ok("120 of 120 cells within 5e-5".into())
        } else {
            Err(format!("{} of 120 cells differ:\n    {}", bad.len(), bad.join("\n    ")))
        }
    })
}

fn criterion_4() -> Outcome {
    for rs in [bundled::example10(), bundled::main79()] {
        let v: Vec<_> = check_correct(&rs).into_iter().chain(check_complete(&rs)).collect();
        if !v.is_empty() {
            return Err(format!("{} has {} violations", rs.name(), v.len()));
        }
    }
    // (original rule, mutated rule, position, expected kind)
    let prefix = |k: &ViolationKind| matches!(k, ViolationKind::Prefix { .. });
    let undominated = |k: &ViolationKind| *k == ViolationKind::Undominated;
    let oplus = |k: &ViolationKind| *k == ViolationKind::OPlusWithoutCirc;
    let cases: [(&str, &str, usize, &dyn Fn(&ViolationKind) -> bool); 13] = [
        ("..? -> DTD", "..? -> DDD", 1, &undominated),
        ("ox -> PD", "ox -> DD", 1, &undominated),
        ("ox -> PD", ".x -> PD", 1, &oplus),
        ("x -> D", "x -> P", 1, &oplus),
        ("x -> D", "o -> D", 1, &prefix),
        ("+? -> DD", "+? -> PD", 1, &oplus),
        (".o? -> DTD", ".o? -> DDD", 1, &undominated),
        (".o? -> DTD", ".o? -> DTP", 3, &oplus),
        ("oo? -> DTD", "oo? -> TDD", 3, &undominated),
        ("..? -> DTD", ".+? -> DTD", 3, &prefix),
        (".x? -> DTD", ".x? -> DDD", 1, &undominated),
        ("o+? -> DDD", "o+? -> DDP", 3, &oplus),
        ("ox -> PD", "o+ -> PD", 2, &prefix),
    ];
    for (from, to, pos, kind) in cases {
        let text = bundled::EXAMPLE10_RULES.replacen(&format!("\n{from}\n"), &format!("\n{to}\n"), 1);
        if text == bundled::EXAMPLE10_RULES {
            return Err(format!("mutation {from:?} did not apply"));
        }
        let rs = RuleSet::parse(&text).map_err(|e| e.to_string())?;
        let v: Vec<_> = check_correct(&rs).into_iter().chain(check_complete(&rs)).collect();
        if !v.iter().any(|v| v.position == Some(pos) && kind(&v.kind)) {
            let got: Vec<String> = v.iter().map(|v| v.to_string()).collect();
            return Err(format!("{from:?} -> {to:?}: expected position {pos}, got {got:?}"));
        }
    }
    Ok(format!("both sets valid; {} mutations rejected at the expected positions", cases.len()))
}

/// Stationary probability that a position is the `l`-th of its rule.
fn stationary_age(rs: &RuleSet, p: &InputProbs) -> Vec<f64> {
    let ers = rs.expand();
    let prob = |r: &cubicdom::rules::ExpandedRule| r.lhs.iter().map(|&s| p[s]).product::<f64>();
    let q: f64 = ers.rules().iter().map(|r| r.len() as f64 * prob(r)).sum();
    (1..=ers.max_len())
        .map(|l| ers.rules().iter().filter(|r| r.len() >= l).map(prob).sum::<f64>() / q)
        .collect()
}

fn criterion_5() -> Outcome {
    let rs = bundled::example10();
    let table = analyze(&rs, 5).map_err(|e| e.to_string())?;
    let row = &table.rows[0];
    let d = start_offset_distribution(&rs.expand(), &row.p, row.big_q);
    let want = [1.0 / 3.0, 0.5, 1.0];
    if d.r.len() != 3 || d.r.iter().zip(want).any(|(a, b)| (a - b).abs() > 1e-12) {
        return Err(format!("r = {:?}", d.r));
    }
    let mut checked = 0;
    for (rs, k) in [(bundled::example10(), 5), (bundled::main79(), 10_000)] {
        let ers = rs.expand();
        let table = analyze(&rs, k).map_err(|e| e.to_string())?;
        for row in &table.rows {
            let d = start_offset_distribution(&ers, &row.p, row.big_q);
            let oracle = stationary_age(&rs, &row.p);
            let worst = d.ell0_pmf.iter().zip(&oracle).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            if worst > 1e-12 {
                return Err(format!("{} level {}: ell0 off by {worst:e}", rs.name(), row.level));
            }
            checked += 1;
        }
    }
    Ok(format!("r = (1/3, 1/2, 1); ell0 law matches stationary age on {checked} levels"))
}

fn criterion_6() -> Outcome {
    timed(Duration::from_secs(300), || {
        let mut runs = 0;
        let mut girths = BTreeSet::new();
        let mut cells = BTreeSet::new();
        // Girth 12 is out of reach for edge switching at n = 1000.
        let plan = [(1000, 6), (1000, 9), (20_000, 6), (20_000, 9), (20_000, 12)];
        for (n, target) in plan {
            for (rs, k) in [
                (bundled::example10(), 5),
                (bundled::example10(), 10),
                (bundled::main79(), 5),
                (bundled::main79(), 10),
            ] {
                for (path_girth, seeds) in [(None, vec![1, 2]), (Some(window(k)), vec![3, 4, 5])] {
                    let report = run_trials(&TrialConfig {
                        rules: rs.clone(),
                        k,
                        source: GraphSource::Generate { n, girth: target, max_iters: 100_000 },
                        seeds,
                        path_girth,
                        jobs: None,
                    })
                    .map_err(|e| format!("n={n} g={target} {} K={k}: {e}", rs.name()))?;
                    for t in &report.trials {
                        let g = t.girth.unwrap_or(usize::MAX);
                        if g < target || !t.dominating {
                            return Err(format!("seed {} n={n}: girth {g}, dominating {}", t.seed, t.dominating));
                        }
                        girths.insert(g);
                        cells.insert((n, target, k));
                        runs += 1;
                    }
                }
            }
        }
        Ok(format!("{runs} runs over {} (n, girth, K) cells all dominating; achieved girths {girths:?}", cells.len()))
    })
}

fn within(count: u64, total: u64, p: f64, what: &str) -> Result<(), String> {
    let f = count as f64 / total as f64;
    let se = (p * (1.0 - p) / total as f64).sqrt();
    if (f - p).abs() <= 4.0 * se {
        Ok(())
    } else {
        Err(format!("{what}: frequency {f:.6} vs {p:.6} (SE {se:.2e})"))
    }
}

fn criterion_7() -> Outcome {
    let rs = bundled::example10();
    let ers = rs.expand();
    let k = 5;
    let table = analyze(&rs, k).map_err(|e| e.to_string())?;
    let n = 1_000_000;
    for row in &table.rows {
        let mut rng = ChaCha8Rng::seed_from_u64(row.level as u64);
        let aux = SymbolSampler::new(&row.p);
        let stream: Vec<InputSymbol> = (0..n).map(|_| aux.sample(&mut rng)).collect();
        let offset = start_offset_distribution(&ers, &row.p, row.big_q);
        let out = label_path(&stream, &ers, &aux, &offset, &mut rng).map_err(|e| e.to_string())?;
        let mut counts = [0u64; 3];
        for t in out {
            counts[t.index()] += 1;
        }
        for (c, q) in counts.iter().zip(row.q.as_array()) {
            within(*c, n as u64, q, &format!("stream level {} output", row.level))?;
        }
    }

    let report = run_trials(&TrialConfig {
        rules: rs,
        k,
        source: GraphSource::Generate { n: 20_000, girth: 9, max_iters: 100_000 },
        seeds: (100..110).collect(),
        // Mates must not meet again within a few path lengths, which holds
        // for the window derived from the measured girth. A 60-vertex window
        // on girth 9 shifts these frequencies by several SE.
        path_girth: None,
        jobs: None,
    })
    .map_err(|e| e.to_string())?;
    for row in &table.rows {
        let mut counts = [0u64; 4];
        for t in &report.trials {
            for (c, x) in counts.iter_mut().zip(t.levels[row.level - 1].input) {
                *c += x;
            }
        }
        let total = counts.iter().sum();
        for (c, p) in counts.iter().zip(row.p.as_array()) {
            within(*c, total, p, &format!("pipeline level {} input", row.level))?;
        }
    }
    Ok("output laws on 5 streams of 10^6 and input laws over 10 pipeline runs within 4 SE".into())
}

/// Maximum matching size by exhaustive branching on the lowest vertex.
fn brute_matching(g: &Graph, used: &mut Vec<bool>, from: usize) -> usize {
    let Some(u) = (from..g.n()).find(|&u| !used[u]) else { return 0 };
    used[u] = true;
    let mut best = brute_matching(g, used, u + 1);
    for &v in g.neighbors(u) {
        if !used[v] {
            used[v] = true;
            best = best.max(1 + brute_matching(g, used, u + 1));
            used[v] = false;
        }
    }
    used[u] = false;
    best
}

/// Domination number by trying every subset.
fn brute_domination(g: &Graph) -> usize {
    let n = g.n();
    let closed: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(1 << v, |m, &w| m | 1 << w)).collect();
    (0u32..1 << n)
        .filter(|s| (0..n).filter(|&v| s >> v & 1 == 1).fold(0, |m, v| m | closed[v]) == (1 << n) - 1)
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

fn corpus() -> Vec<(String, Graph)> {
    let mut out = vec![
        ("K4".to_string(), Graph::complete(4)),
        ("K3,3".into(), Graph::complete_bipartite(3, 3)),
        ("Petersen".into(), Graph::petersen()),
        ("Heawood".into(), Graph::lcf(14, &[5, -5]).unwrap()),
        ("Moebius-Kantor".into(), Graph::lcf(16, &[5, -5]).unwrap()),
        ("Pappus".into(), Graph::lcf(18, &[5, 7, -7, 7, -7, -5]).unwrap()),
        ("Desargues".into(), Graph::lcf(20, &[5, -5, 9, -9]).unwrap()),
        ("dodecahedron".into(), Graph::lcf(20, &[10, 7, 4, -4, -7, 10, -4, 7, -7, 4]).unwrap()),
    ];
    for m in 3..=10 {
        out.push((format!("prism{m}"), Graph::prism(m)));
    }
    for n in (6..=20).step_by(2) {
        for seed in 0..3 {
            out.push((format!("random{n}/{seed}"), random_cubic(n, seed).unwrap()));
        }
    }
    out
}

fn criterion_8() -> Outcome {
    for (g, want) in [(Graph::complete(4), 1), (Graph::petersen(), 3), (Graph::complete_bipartite(3, 3), 2)] {
        let brute = brute_domination(&g);
        let exact = exact_domination_number(&g).map_err(|e| e.to_string())?.gamma;
        if brute != want || exact != want {
            return Err(format!("n={}: expected {want}, brute {brute}, exact {exact}", g.n()));
        }
    }
    let corpus = corpus();
    let mut runs = 0;
    for (name, g) in &corpus {
        let r = exact_domination_number(g).map_err(|e| e.to_string())?;
        if !verify_dominating(g, &r.witness).dominating {
            return Err(format!("{name}: exact witness not dominating"));
        }
        if g.n() <= 16 && brute_domination(g) != r.gamma {
            return Err(format!("{name}: exact search disagrees with enumeration"));
        }
        for (rs, k) in [(bundled::example10(), 5), (bundled::main79(), 10)] {
            for seed in 0..4 {
                let path_girth = (seed % 2 == 1).then_some(window(k));
                let out = run(g, &rs, k, seed, path_girth).map_err(|e| format!("{name}: {e}"))?;
                if !out.stats.dominating || out.dominating_set.len() < r.gamma {
                    return Err(format!("{name} seed {seed}: |D| = {}, gamma = {}", out.dominating_set.len(), r.gamma));
                }
                runs += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut graphs = 0;
    for n in 1..=14 {
        for _ in 0..20 {
            let p = rng.gen_range(0.1..0.6);
            let edges: Vec<_> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            let m = maximum_matching(&g);
            m.validate(&g).map_err(|e| e.to_string())?;
            let brute = brute_matching(&g, &mut vec![false; n], 0);
            if m.size() != brute {
                return Err(format!("matching {} vs brute force {brute} on {edges:?}", m.size()));
            }
            graphs += 1;
        }
    }
    Ok(format!(
        "gamma(K4, Petersen, K3,3) = 1, 3, 2; {runs} pipeline runs on {} graphs have |D| >= gamma; {graphs} matchings maximum",
        corpus.len()
    ))
}

fn criterion_9() -> Outcome {
    timed(Duration::from_secs(120), || {
        let seeds: Vec<u64> = (200..210).collect();
        let mean = |rs: RuleSet, k: usize| {
            run_trials(&TrialConfig {
                rules: rs,
                k,
                source: GraphSource::Generate { n: 20_000, girth: 9, max_iters: 100_000 },
                seeds: seeds.clone(),
                path_girth: Some(window(k)),
                jobs: None,
            })
            .map_err(|e| e.to_string())
        };
        let a = mean(bundled::example10(), 5)?;
        let b = mean(bundled::main79(), 10)?;
        if a.trials.iter().chain(&b.trials).any(|t| t.girth < Some(9)) {
            return Err("a graph missed girth 9".into());
        }
        let msg = format!(
            "mean |D|/n: main79 K=10 {:.5}, example10 K=5 {:.5} (window {} vertices)",
            b.mean_ratio,
            a.mean_ratio,
            PathParams::new(window(5), 5).max_len
        );
        if b.mean_ratio < a.mean_ratio { Ok(msg) } else { Err(msg) }
    })
}

fn main() {
    // Keep `cargo test -- <filter>` style invocations from failing on args.
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("bound, example set", criterion_1),
        ("bound, main set", criterion_2),
        ("published tables", criterion_3),
        ("rule validation and mutations", criterion_4),
        ("padding offsets", criterion_5),
        ("domination validity", criterion_6),
        ("statistical consistency", criterion_7),
        ("oracle cross-checks", criterion_8),
        ("ordering of the two rule sets", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("PASS criterion {} ({name}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
