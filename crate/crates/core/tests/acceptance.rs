//! Acceptance suite: one PASS/FAIL line per criterion, with the measured
//! value next to its pinned bound. Run with `--nocapture` to see the lines.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{all_graphs, all_interval_strings, dense, long_tests, random_perm, random_string};
use common::{FIG1_CANONICAL, FIG1_INPUT};
use mpqenum_core::{
    build_mpq, children, classify_edge, enumerate, isomorphic, list_interval_edges, parent,
    remove_edge_string, CanonicalString, EdgeClassification, EnumerateOptions, StringRep,
    TreeTables,
};
use mpqenum_oracle::{
    canonical_bruteforce, enumerate_bruteforce, interval_model, is_interval_bruteforce, GraphKey,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIG1_BOUND: Duration = Duration::from_secs(1);
const COUNTS_BOUND: Duration = Duration::from_secs(30);
const COUNTS_LONG_BOUND: Duration = Duration::from_secs(600);
const ENUM9_BOUND: Duration = Duration::from_secs(60);
const DELAY_RATIO_BOUND: f64 = 50.0;
const PERF_ATTEMPTS: usize = 3;
const REMOVAL_GRAPHS: usize = 1000;
const RELABELINGS: usize = 10_000;
const ISO_PAIRS: usize = 100_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fig1_golden() -> Outcome {
    let start = Instant::now();
    let s: StringRep = FIG1_INPUT.parse().unwrap();
    let t = build_mpq(&s);
    let want_tree = "P{}\n  P{1}\n  Q[k=4] v=3:(1,2) v=5:(1,3) v=6:(2,3) v=8:(3,4)\n    S1: P{2,4}\n    S3: P{7}\n    S4: P{13}\n      P{11}\n        P{9}\n        P{12}\n      P{10}\n";
    ensure(t.to_string() == want_tree, format!("tree differs:\n{t}"))?;
    let c = CanonicalString::of(&s).to_string();
    ensure(c == FIG1_CANONICAL, format!("canonical string {c}"))?;
    let took = start.elapsed();
    ensure(took < FIG1_BOUND, format!("took {took:?}"))?;
    Ok(format!("{took:?} < {FIG1_BOUND:?}"))
}

fn counts() -> Outcome {
    let start = Instant::now();
    let expected = [1, 2, 4, 10];
    let mut got = Vec::new();
    for n in 1..=6 {
        let mut keys = BTreeSet::new();
        let stats = enumerate(n, &EnumerateOptions::default(), |e| {
            keys.insert(canonical_bruteforce(&dense(e.graph.as_rep())).unwrap());
        });
        let oracle = enumerate_bruteforce(n).unwrap();
        ensure(
            stats.count == oracle.len() as u64 && keys == oracle,
            format!("n={n}: {} emitted, oracle {}", stats.count, oracle.len()),
        )?;
        if n <= 4 {
            ensure(stats.count == expected[n - 1], format!("n={n}: {}", stats.count))?;
        }
        got.push(stats.count);
    }
    let took = start.elapsed();
    ensure(took < COUNTS_BOUND, format!("n<=6 took {took:?}"))?;
    let mut line = format!("n=1..6 {got:?} in {took:?} < {COUNTS_BOUND:?}");
    if long_tests() {
        let start = Instant::now();
        let c = enumerate(7, &EnumerateOptions::default(), |_| {}).count;
        let oracle = enumerate_bruteforce(7).unwrap().len() as u64;
        let took = start.elapsed();
        ensure(c == oracle, format!("n=7: {c} vs oracle {oracle}"))?;
        ensure(took < COUNTS_LONG_BOUND, format!("n=7 took {took:?}"))?;
        line += &format!("; n=7 {c} in {took:?}");
    } else {
        line += "; n=7 skipped (set MPQENUM_LONG_TESTS)";
    }
    Ok(line)
}

fn edge_equivalence() -> Outcome {
    let mut checked = 0usize;
    for n in 2..=6 {
        for s in all_interval_strings(n) {
            let t = build_mpq(&s);
            let tables = TreeTables::new(&t);
            let g = dense(&s);
            for (x, y) in g.edges() {
                let c = classify_edge(&t, &tables, x, y).map_err(|e| e.to_string())?;
                let mut h = g.clone();
                h.remove_edge(x, y);
                let truth = is_interval_bruteforce(&h).unwrap();
                ensure(c.is_interval() == truth, format!("{s} ({x},{y}): {c:?}, oracle {truth}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} edges, 0 mismatches"))
}

fn removal() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0usize;
    for _ in 0..REMOVAL_GRAPHS {
        let n = rng.gen_range(1..=12);
        let s = random_string(&mut rng, n);
        let t = build_mpq(&s);
        let tables = TreeTables::new(&t);
        let g = dense(&s);
        for e in list_interval_edges(&t, &tables) {
            let r = remove_edge_string(&t, &tables, e.x, e.y, EdgeClassification::Interval(e.case))
                .map_err(|err| format!("{s} ({},{}): {err}", e.x, e.y))?;
            let mut h = g.clone();
            h.remove_edge(e.x, e.y);
            ensure(dense(&r) == h, format!("{s} ({},{}) -> {r}", e.x, e.y))?;
            checked += 1;
        }
    }
    Ok(format!("{REMOVAL_GRAPHS} graphs, {checked} removals, 0 mismatches"))
}

fn canonical_soundness() -> Outcome {
    // Exhaustive: every labeled interval graph on n <= 5.
    let mut exhaustive = 0usize;
    for n in 1..=5 {
        let mut by_key: BTreeMap<GraphKey, CanonicalString> = BTreeMap::new();
        let mut strings = BTreeSet::new();
        for g in all_graphs(n) {
            let Some(tokens) = interval_model(&g).unwrap() else { continue };
            let c = CanonicalString::of(&StringRep::new(tokens).unwrap());
            ensure(CanonicalString::of(c.as_rep()) == c, format!("{c} not idempotent"))?;
            let key = canonical_bruteforce(&g).unwrap();
            let prev = by_key.entry(key).or_insert_with(|| c.clone());
            ensure(*prev == c, format!("isomorphic graphs give {prev} and {c}"))?;
            strings.insert(c);
            exhaustive += 1;
        }
        ensure(strings.len() == by_key.len(), format!("n={n}: distinct classes share a string"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..RELABELINGS {
        let n = rng.gen_range(1..=12);
        let s = random_string(&mut rng, n);
        let c = CanonicalString::of(&s);
        let r = CanonicalString::of(&s.relabel(&random_perm(&mut rng, n)));
        ensure(c == r, format!("{s}: relabeling changes {c} to {r}"))?;
        ensure(CanonicalString::of(c.as_rep()) == c, format!("{c} not idempotent"))?;
    }

    let pool: Vec<Vec<(StringRep, GraphKey)>> = (1..=6)
        .map(|n| {
            all_interval_strings(n)
                .into_iter()
                .map(|s| {
                    let k = canonical_bruteforce(&dense(&s)).unwrap();
                    (s, k)
                })
                .collect()
        })
        .collect();
    let mut positives = 0;
    for i in 0..ISO_PAIRS {
        let n = rng.gen_range(1..=6);
        let (a, ka) = pool[n - 1].choose(&mut rng).unwrap();
        let (b, kb) = if i % 2 == 0 {
            let b = a.relabel(&random_perm(&mut rng, n));
            let k = canonical_bruteforce(&dense(&b)).unwrap();
            (b, k)
        } else {
            pool[n - 1].choose(&mut rng).unwrap().clone()
        };
        let truth = *ka == kb;
        positives += truth as usize;
        ensure(isomorphic(a, &b) == truth, format!("{a} vs {b}: oracle {truth}"))?;
    }
    Ok(format!(
        "{exhaustive} graphs n<=5, {RELABELINGS} relabelings n<=12, {ISO_PAIRS} pairs n<=6 ({positives} isomorphic)"
    ))
}

fn duality() -> Outcome {
    let mut total = 0u64;
    for n in 1..=9 {
        let mut seen = BTreeSet::new();
        let mut failure = None;
        enumerate(n, &EnumerateOptions::default(), |e| {
            if failure.is_some() {
                return;
            }
            if !seen.insert(e.graph.clone()) {
                failure = Some(format!("{} emitted twice", e.graph));
            } else if let Some(p) = e.parent {
                if parent(e.graph).as_ref() != Ok(p) {
                    failure = Some(format!("{} emitted below {p}", e.graph));
                }
            }
        });
        if let Some(f) = failure {
            return Err(f);
        }
        total += seen.len() as u64;
    }
    Ok(format!("n=1..9, {total} graphs, all parents agree, no repeats"))
}

/// A single wall-clock gap can absorb a preemption of several
/// milliseconds, so the run is repeated up to `PERF_ATTEMPTS` times and
/// passes if one run meets both bounds. Every attempt is reported.
fn performance() -> Outcome {
    let mut attempts = Vec::new();
    for _ in 0..PERF_ATTEMPTS {
        let stats = enumerate(9, &EnumerateOptions::default(), |_| {});
        ensure(stats.count == 10344, format!("count {}", stats.count))?;
        let ratio = stats.max_delay.as_secs_f64() / stats.median_delay.as_secs_f64();
        attempts.push(format!(
            "{:?} (max delay {:?}, median {:?}, ratio {ratio:.1})",
            stats.wall_time, stats.max_delay, stats.median_delay
        ));
        if stats.wall_time < ENUM9_BOUND && ratio <= DELAY_RATIO_BOUND {
            return Ok(format!(
                "< {ENUM9_BOUND:?}, ratio <= {DELAY_RATIO_BOUND}: {}",
                attempts.join("; ")
            ));
        }
    }
    Err(format!("no run within bounds: {}", attempts.join("; ")))
}

fn pruning() -> Outcome {
    let mut nodes = 0;
    for n in 1..=6 {
        let mut all = Vec::new();
        enumerate(n, &EnumerateOptions { prune: false, jobs: 0 }, |e| all.push(e.graph.clone()));
        for c in all {
            if c.as_rep().graph().edge_count() == 0 {
                continue;
            }
            ensure(children(&c, true) == children(&c, false), format!("{c}"))?;
            nodes += 1;
        }
    }
    Ok(format!("{nodes} family-tree nodes, identical children"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("figure golden strings and tree", fig1_golden),
        ("enumeration counts vs oracle", counts),
        ("interval-edge oracle equivalence", edge_equivalence),
        ("removal-string correctness", removal),
        ("canonical-form soundness", canonical_soundness),
        ("parent/child duality", duality),
        ("performance smoke", performance),
        ("twin-pruning equivalence", pruning),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                println!("FAIL {name}: {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
