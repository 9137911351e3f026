//! Family tree of interval graphs and its traversal.
//!
//! The parent of a non-complete interval graph `G` is `G + e` for the
//! lexicographically smallest non-edge `e` (under the canonical labeling)
//! that keeps the graph interval. Children of `G` are computed by removing
//! every interval edge, canonizing, deduplicating and keeping the graphs
//! whose parent is `G` again. A depth-first traversal from `K_n` then
//! reaches every interval graph on `n` vertices exactly once.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonize, CanonicalString};
use crate::edges::{list_interval_edges, remove_edge_string, EdgeClassification, IntervalEdge, TreeTables};
use crate::mpq::{build_mpq, MpqTree, Node};
use crate::strings::{endpoints_of, EndpointKind, StringRep, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("complete graph has no parent")]
    IsComplete,
}

/// Length `j` of the longest prefix `1..j` whose reverse `j..1` is a suffix.
/// Vertices `1..=j` are universal.
fn mirrored_prefix(tokens: &[Vertex]) -> usize {
    let len = tokens.len();
    let mut j = 0;
    while j < len / 2 && tokens[j] == j as Vertex + 1 && tokens[len - 1 - j] == j as Vertex + 1 {
        j += 1;
    }
    j
}

/// String representation of the parent graph of a canonical string.
///
/// With `1..j` the mirrored prefix, the added edge is `(j+1, y)` where `y`
/// is the first left endpoint after the right endpoint of `j+1`; the right
/// endpoint of `j+1` is moved right past it.
pub fn parent_string(c: &CanonicalString) -> Result<StringRep, FamilyError> {
    let s = c.as_rep();
    let j = mirrored_prefix(s.tokens());
    if j == s.n() {
        return Err(FamilyError::IsComplete);
    }
    let v = j as Vertex + 1;
    let ends = endpoints_of(s).0;
    let r = ends
        .iter()
        .position(|&e| e == (v, EndpointKind::Right))
        .expect("every vertex has a right endpoint");
    let Some(y) = ends[r..].iter().position(|e| e.1 == EndpointKind::Left).map(|p| r + p) else {
        // Only right endpoints follow, so v is universal; on canonical
        // strings this means the graph is complete.
        return Err(FamilyError::IsComplete);
    };
    let mut tokens = s.tokens().to_vec();
    tokens[r..=y].rotate_left(1);
    Ok(StringRep::new_unchecked(tokens))
}

/// Canonical string of the parent graph.
pub fn parent(c: &CanonicalString) -> Result<CanonicalString, FamilyError> {
    parent_string(c).map(|s| CanonicalString::of(&s))
}

/// Drops interval edges whose removal yields a graph isomorphic to that of
/// a kept edge.
///
/// Vertices of one P-node, or with the same span in one Q-node, have equal
/// closed neighbourhoods. Swapping two such twins is an automorphism, so
/// among edges between two twin classes only the edge between the smallest
/// members is kept, and inside a class only the edge between its two
/// smallest members.
pub fn prune_candidates(t: &MpqTree, edges: Vec<IntervalEdge>) -> Vec<IntervalEdge> {
    // first[v] and second[v]: the two smallest members of v's class.
    let mut first = vec![0 as Vertex; t.n() + 1];
    let mut second = vec![0 as Vertex; t.n() + 1];
    let mut assign = |class: &[Vertex]| {
        let mut sorted = class.to_vec();
        sorted.sort_unstable();
        let a = sorted[0];
        let b = sorted.get(1).copied().unwrap_or(0);
        for &v in &sorted {
            first[v as usize] = a;
            second[v as usize] = b;
        }
    };
    for id in t.preorder() {
        match t.node(id) {
            Node::P(p) if !p.vertices.is_empty() => assign(&p.vertices),
            Node::P(_) => {}
            Node::Q(q) => {
                let mut classes: BTreeMap<(usize, usize), Vec<Vertex>> = BTreeMap::new();
                for s in q.spans() {
                    classes.entry((s.left, s.right)).or_default().push(s.vertex);
                }
                for class in classes.values() {
                    assign(class);
                }
            }
        }
    }
    edges
        .into_iter()
        .filter(|e| {
            let (x, y) = e.key();
            if first[x as usize] == first[y as usize] {
                x == first[x as usize] && y == second[x as usize]
            } else {
                x == first[x as usize] && y == first[y as usize]
            }
        })
        .collect()
}

/// Children of a graph in the family tree, in ascending order, together
/// with the number of candidate removals performed.
pub fn children_counted(c: &CanonicalString, prune: bool) -> (Vec<CanonicalString>, usize) {
    let t = c.tree();
    let tables = TreeTables::new(&t);
    let mut edges = list_interval_edges(&t, &tables);
    if prune {
        edges = prune_candidates(&t, edges);
    }
    let candidates = edges.len();
    let mut seen = BTreeSet::new();
    for e in edges {
        let s = remove_edge_string(&t, &tables, e.x, e.y, EdgeClassification::Interval(e.case))
            .expect("listed edges are removable");
        seen.insert(canonize(&build_mpq(&s)).1);
    }
    let kids = seen
        .into_iter()
        .filter(|child| parent(child).as_ref() == Ok(c))
        .collect();
    (kids, candidates)
}

/// Children of a graph in the family tree, in ascending order.
pub fn children(c: &CanonicalString, prune: bool) -> Vec<CanonicalString> {
    children_counted(c, prune).0
}

/// Canonical string of `K_n`.
pub fn complete_graph(n: usize) -> CanonicalString {
    assert!(n >= 1);
    let tokens: Vec<Vertex> = (1..=n as Vertex).chain((1..=n as Vertex).rev()).collect();
    CanonicalString::from_canonical(StringRep::new_unchecked(tokens))
}

#[derive(Debug, Clone)]
pub struct EnumerateOptions {
    /// Skip interval edges made redundant by twin vertices.
    pub prune: bool,
    /// Worker threads for [`enumerate_parallel`]; 0 picks the rayon default.
    pub jobs: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { prune: true, jobs: 0 }
    }
}

/// One emitted graph.
#[derive(Debug)]
pub struct Emission<'a> {
    pub graph: &'a CanonicalString,
    /// `None` for the root `K_n`.
    pub parent: Option<&'a CanonicalString>,
    pub depth: usize,
}

/// Delays bucketed on a logarithmic scale with 16 buckets per octave, so
/// the median of arbitrarily long runs is estimated within about 5%.
#[derive(Debug, Clone, Default)]
struct DelayHistogram {
    buckets: Vec<u64>,
    total: u64,
}

impl DelayHistogram {
    const PER_OCTAVE: f64 = 16.0;

    fn bucket(nanos: u64) -> usize {
        ((nanos.max(1) as f64).log2() * Self::PER_OCTAVE) as usize
    }

    fn add(&mut self, d: Duration) {
        let b = Self::bucket(d.as_nanos() as u64);
        if self.buckets.len() <= b {
            self.buckets.resize(b + 1, 0);
        }
        self.buckets[b] += 1;
        self.total += 1;
    }

    fn merge(&mut self, other: &DelayHistogram) {
        if self.buckets.len() < other.buckets.len() {
            self.buckets.resize(other.buckets.len(), 0);
        }
        for (a, b) in self.buckets.iter_mut().zip(&other.buckets) {
            *a += b;
        }
        self.total += other.total;
    }

    fn median(&self) -> Duration {
        if self.total == 0 {
            return Duration::ZERO;
        }
        let mut seen = 0;
        for (b, &count) in self.buckets.iter().enumerate() {
            seen += count;
            if 2 * seen >= self.total {
                // Geometric midpoint of the bucket.
                let nanos = 2f64.powf((b as f64 + 0.5) / Self::PER_OCTAVE);
                return Duration::from_nanos(nanos as u64);
            }
        }
        unreachable!()
    }
}

/// Summary of an enumeration run.
#[derive(Debug, Clone)]
pub struct Stats {
    pub n: usize,
    pub count: u64,
    /// Candidate removals performed while computing children.
    pub candidates: u64,
    /// Longest gap between consecutive emissions (per worker in parallel
    /// runs).
    pub max_delay: Duration,
    pub median_delay: Duration,
    pub wall_time: Duration,
}

struct Frame {
    graph: CanonicalString,
    parent: Option<Arc<CanonicalString>>,
    depth: usize,
}

#[derive(Default)]
struct Walk {
    count: u64,
    candidates: u64,
    max_delay: Duration,
    delays: DelayHistogram,
}

impl Walk {
    /// Depth-first traversal below `start`, emitting `start` first.
    fn run(&mut self, start: Frame, prune: bool, sink: &mut dyn FnMut(&Emission)) {
        let mut stack = vec![start];
        let mut last = Instant::now();
        while let Some(frame) = stack.pop() {
            sink(&Emission {
                graph: &frame.graph,
                parent: frame.parent.as_deref(),
                depth: frame.depth,
            });
            let now = Instant::now();
            let d = now - last;
            last = now;
            self.count += 1;
            self.max_delay = self.max_delay.max(d);
            self.delays.add(d);

            // Edgeless graphs are leaves.
            if is_edgeless(&frame.graph) {
                continue;
            }
            let (kids, candidates) = children_counted(&frame.graph, prune);
            self.candidates += candidates as u64;
            let parent = Arc::new(frame.graph);
            // Pushed in reverse so that children pop in ascending order.
            for kid in kids.into_iter().rev() {
                stack.push(Frame { graph: kid, parent: Some(parent.clone()), depth: frame.depth + 1 });
            }
        }
    }

    fn merge(&mut self, other: Walk) {
        self.count += other.count;
        self.candidates += other.candidates;
        self.max_delay = self.max_delay.max(other.max_delay);
        self.delays.merge(&other.delays);
    }

    fn stats(self, n: usize, started: Instant) -> Stats {
        Stats {
            n,
            count: self.count,
            candidates: self.candidates,
            max_delay: self.max_delay,
            median_delay: self.delays.median(),
            wall_time: started.elapsed(),
        }
    }
}

fn is_edgeless(c: &CanonicalString) -> bool {
    c.as_rep().tokens().chunks(2).all(|p| p[0] == p[1])
}

/// Emits every interval graph on `n` vertices once, depth-first from
/// `K_n`, children in ascending canonical order. The output order is fully
/// deterministic.
pub fn enumerate(n: usize, options: &EnumerateOptions, mut sink: impl FnMut(&Emission)) -> Stats {
    let started = Instant::now();
    let mut walk = Walk::default();
    let root = Frame { graph: complete_graph(n), parent: None, depth: 0 };
    walk.run(root, options.prune, &mut sink);
    walk.stats(n, started)
}

/// Like [`enumerate`], but the subtrees below the children of `K_n` are
/// walked concurrently. Each subtree is still emitted depth-first; the
/// interleaving between subtrees is unspecified.
pub fn enumerate_parallel(
    n: usize,
    options: &EnumerateOptions,
    sink: impl Fn(&Emission) + Sync,
) -> Stats {
    let started = Instant::now();
    let root = complete_graph(n);
    sink(&Emission { graph: &root, parent: None, depth: 0 });
    let mut walk = Walk { count: 1, ..Walk::default() };
    if is_edgeless(&root) {
        return walk.stats(n, started);
    }
    let (kids, candidates) = children_counted(&root, options.prune);
    walk.candidates += candidates as u64;
    let root = Arc::new(root);

    let work = || {
        kids.into_par_iter()
            .map(|kid| {
                let mut w = Walk::default();
                let frame = Frame { graph: kid, parent: Some(root.clone()), depth: 1 };
                w.run(frame, options.prune, &mut |e| sink(e));
                w
            })
            .collect::<Vec<_>>()
    };
    let walks = if options.jobs == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .expect("thread pool")
            .install(work)
    };
    for w in walks {
        walk.merge(w);
    }
    walk.stats(n, started)
}

/// Number of interval graphs on `n` vertices, counted by a sequential run.
pub fn count(n: usize, options: &EnumerateOptions) -> u64 {
    enumerate(n, options, |_| {}).count
}

/// Collects a parallel run into a set, for callers that want the graphs
/// but not the order.
pub fn collect_parallel(n: usize, options: &EnumerateOptions) -> BTreeSet<CanonicalString> {
    let out = Mutex::new(BTreeSet::new());
    enumerate_parallel(n, options, |e| {
        out.lock().unwrap().insert(e.graph.clone());
    });
    out.into_inner().unwrap()
}
