//! Brute-force reference implementations for small graphs.
//!
//! Everything here is deliberately naive and shares no code with the main
//! library: interval recognition searches clique orderings, isomorphism
//! minimizes the adjacency matrix over relabelings, and enumeration walks
//! all labeled graphs. Vertices are 1-based to match string
//! representations.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} vertices exceeds the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

fn check(n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        Err(OracleError::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// Largest graph the recognizer accepts.
pub const MAX_INTERVAL_N: usize = 16;
/// Largest graph the canonical labeling accepts.
pub const MAX_CANON_N: usize = 8;
/// Largest graph the edge/parent helpers accept.
pub const MAX_EDGE_N: usize = 16;
/// Largest `n` accepted by [`enumerate_bruteforce`].
pub const MAX_ENUM_N: usize = 7;

/// Undirected simple graph with one bitset row per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DenseGraph {
    n: usize,
    rows: Vec<u64>,
}

impl DenseGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64);
        DenseGraph { n, rows: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = DenseGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Intersection graph of the intervals spanned by the two occurrences
    /// of every id in `tokens`.
    pub fn from_tokens(tokens: &[u32]) -> Self {
        let n = tokens.len() / 2;
        let mut first = vec![usize::MAX; n];
        let mut second = vec![usize::MAX; n];
        for (i, &t) in tokens.iter().enumerate() {
            let v = t as usize - 1;
            if first[v] == usize::MAX {
                first[v] = i;
            } else {
                second[v] = i;
            }
        }
        let mut g = DenseGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if first[u] < second[v] && first[v] < second[u] {
                    g.add_edge(u as u32 + 1, v as u32 + 1);
                }
            }
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = DenseGraph::new(n);
        for u in 1..=n as u32 {
            for v in u + 1..=n as u32 {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.rows[u as usize - 1] >> (v - 1) & 1 == 1
    }

    pub fn add_edge(&mut self, u: u32, v: u32) {
        assert_ne!(u, v);
        self.rows[u as usize - 1] |= 1 << (v - 1);
        self.rows[v as usize - 1] |= 1 << (u - 1);
    }

    pub fn remove_edge(&mut self, u: u32, v: u32) {
        self.rows[u as usize - 1] &= !(1 << (v - 1));
        self.rows[v as usize - 1] &= !(1 << (u - 1));
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for u in 1..=self.n as u32 {
            for v in u + 1..=self.n as u32 {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree(&self, u: u32) -> u32 {
        self.rows[u as usize - 1].count_ones()
    }

    /// The graph with vertex `v` renamed to `perm[v - 1]`.
    pub fn relabel(&self, perm: &[u32]) -> DenseGraph {
        let mut g = DenseGraph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u as usize - 1], perm[v as usize - 1]);
        }
        g
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }
}

/// All maximal cliques as vertex bitsets (bit `v - 1` for vertex `v`).
pub fn maximal_cliques(g: &DenseGraph) -> Vec<u64> {
    let mut out = Vec::new();
    bron_kerbosch(g, 0, g.full(), 0, &mut out);
    out
}

fn bron_kerbosch(g: &DenseGraph, r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut cand = p & !g.rows[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let bit = 1u64 << v;
        bron_kerbosch(g, r | bit, p & g.rows[v], x & g.rows[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// An ordering of the maximal cliques in which every vertex occupies a
/// consecutive run, if one exists.
pub fn clique_path(g: &DenseGraph) -> Result<Option<Vec<u64>>, OracleError> {
    check(g.n(), MAX_INTERVAL_N)?;
    let cliques = maximal_cliques(g);
    // A chordal graph has at most n maximal cliques.
    if cliques.len() > g.n().max(1) {
        return Ok(None);
    }
    let m = cliques.len();
    let mut dead: HashSet<(u32, usize)> = HashSet::new();
    let mut order = Vec::with_capacity(m);
    let found = extend(&cliques, 0, usize::MAX, &mut order, &mut dead);
    Ok(found.then(|| order.iter().map(|&i| cliques[i]).collect()))
}

fn extend(
    cliques: &[u64],
    placed: u32,
    last: usize,
    order: &mut Vec<usize>,
    dead: &mut HashSet<(u32, usize)>,
) -> bool {
    if order.len() == cliques.len() {
        return true;
    }
    if dead.contains(&(placed, last)) {
        return false;
    }
    let seen = (0..cliques.len())
        .filter(|&i| placed >> i & 1 == 1)
        .fold(0u64, |acc, i| acc | cliques[i]);
    let closed = if last == usize::MAX {
        0
    } else {
        seen & !cliques[last]
    };
    for i in 0..cliques.len() {
        if placed >> i & 1 == 1 || cliques[i] & closed != 0 {
            continue;
        }
        order.push(i);
        if extend(cliques, placed | 1 << i, i, order, dead) {
            return true;
        }
        order.pop();
    }
    dead.insert((placed, last));
    false
}

pub fn is_interval_bruteforce(g: &DenseGraph) -> Result<bool, OracleError> {
    Ok(clique_path(g)?.is_some())
}

/// A string representation (token list) of `g`, if it is an interval graph.
pub fn interval_model(g: &DenseGraph) -> Result<Option<Vec<u32>>, OracleError> {
    let Some(path) = clique_path(g)? else {
        return Ok(None);
    };
    let n = g.n();
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0usize; n];
    for (i, &c) in path.iter().enumerate() {
        for v in 0..n {
            if c >> v & 1 == 1 {
                first[v] = first[v].min(i);
                last[v] = i;
            }
        }
    }
    let mut tokens = Vec::with_capacity(2 * n);
    for i in 0..path.len() {
        tokens.extend((0..n).filter(|&v| first[v] == i).map(|v| v as u32 + 1));
        tokens.extend((0..n).filter(|&v| last[v] == i).map(|v| v as u32 + 1));
    }
    Ok(Some(tokens))
}

/// Isomorphism-invariant key: `n` followed by the lexicographically smallest
/// upper-triangle adjacency bit string over relabelings. Only relabelings
/// that list vertices by ascending degree are tried; that restriction does
/// not depend on the labels, so the key stays invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphKey {
    pub n: usize,
    pub bits: u64,
}

pub fn canonical_bruteforce(g: &DenseGraph) -> Result<GraphKey, OracleError> {
    check(g.n(), MAX_CANON_N)?;
    let n = g.n();
    let mut verts: Vec<u32> = (1..=n as u32).collect();
    verts.sort_by_key(|&v| g.degree(v));
    // Permute only within runs of equal degree.
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || g.degree(verts[i]) != g.degree(verts[start]) {
            runs.push((start, i));
            start = i;
        }
    }
    let mut best = u64::MAX;
    permute_runs(g, &mut verts, &runs, 0, &mut best);
    Ok(GraphKey { n, bits: best })
}

fn permute_runs(g: &DenseGraph, verts: &mut [u32], runs: &[(usize, usize)], r: usize, best: &mut u64) {
    if r == runs.len() {
        *best = (*best).min(encode(g, verts));
        return;
    }
    let (a, b) = runs[r];
    heap_permute(verts, a, b - a, &mut |vs| permute_runs(g, vs, runs, r + 1, best));
}

/// Heap's algorithm over `v[a..a + k]`, calling `f` once per permutation.
fn heap_permute(v: &mut [u32], a: usize, k: usize, f: &mut dyn FnMut(&mut [u32])) {
    if k <= 1 {
        f(v);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(v, a, k - 1, f);
        if k.is_multiple_of(2) {
            v.swap(a + i, a + k - 1);
        } else {
            v.swap(a, a + k - 1);
        }
    }
    heap_permute(v, a, k - 1, f);
}

/// Upper triangle of the adjacency matrix under the order `verts`, most
/// significant bit first.
fn encode(g: &DenseGraph, verts: &[u32]) -> u64 {
    let mut bits = 0u64;
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            bits = bits << 1 | g.has_edge(verts[i], verts[j]) as u64;
        }
    }
    bits
}

pub fn isomorphic_bruteforce(a: &DenseGraph, b: &DenseGraph) -> Result<bool, OracleError> {
    Ok(a.n() == b.n() && canonical_bruteforce(a)? == canonical_bruteforce(b)?)
}

/// Edges whose removal leaves an interval graph.
pub fn interval_edges_bruteforce(g: &DenseGraph) -> Result<Vec<(u32, u32)>, OracleError> {
    check(g.n(), MAX_EDGE_N)?;
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        let mut h = g.clone();
        h.remove_edge(u, v);
        if is_interval_bruteforce(&h)? {
            out.push((u, v));
        }
    }
    Ok(out)
}

/// Lexicographically smallest non-edge whose addition leaves an interval
/// graph, or `None` for a complete graph.
pub fn parent_bruteforce(g: &DenseGraph) -> Result<Option<(u32, u32)>, OracleError> {
    check(g.n(), MAX_EDGE_N)?;
    let n = g.n() as u32;
    for u in 1..=n {
        for v in u + 1..=n {
            if !g.has_edge(u, v) {
                let mut h = g.clone();
                h.add_edge(u, v);
                if is_interval_bruteforce(&h)? {
                    return Ok(Some((u, v)));
                }
            }
        }
    }
    Ok(None)
}

/// Keys of all non-isomorphic interval graphs on `n` vertices, found by
/// testing every labeled graph.
pub fn enumerate_bruteforce(n: usize) -> Result<BTreeSet<GraphKey>, OracleError> {
    check(n, MAX_ENUM_N)?;
    let pairs: Vec<(u32, u32)> = (1..=n as u32)
        .flat_map(|u| (u + 1..=n as u32).map(move |v| (u, v)))
        .collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let mut g = DenseGraph::new(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        if is_interval_bruteforce(&g)? {
            out.insert(canonical_bruteforce(&g)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    const FIG1: [u32; 26] = [
        1, 1, 5, 3, 2, 4, 4, 2, 6, 3, 8, 7, 7, 6, 5, 13, 11, 9, 9, 12, 12, 11, 10, 10, 13, 8,
    ];

    fn cycle(n: usize) -> DenseGraph {
        let mut g = DenseGraph::new(n);
        for v in 1..=n as u32 {
            g.add_edge(v, v % n as u32 + 1);
        }
        g
    }

    #[test]
    fn recognizer_examples() {
        assert!(!is_interval_bruteforce(&cycle(4)).unwrap());
        assert!(!is_interval_bruteforce(&cycle(5)).unwrap());
        for n in 1..=6 {
            assert!(is_interval_bruteforce(&DenseGraph::complete(n)).unwrap());
            assert!(is_interval_bruteforce(&DenseGraph::new(n)).unwrap());
        }
        assert!(is_interval_bruteforce(&DenseGraph::from_tokens(&FIG1)).unwrap());
        // The net: a triangle with a pendant at each corner is chordal but
        // contains an asteroidal triple.
        let net = DenseGraph::from_edges(6, &[(1, 2), (2, 3), (1, 3), (1, 4), (2, 5), (3, 6)]);
        assert!(!is_interval_bruteforce(&net).unwrap());
        assert!(matches!(
            is_interval_bruteforce(&DenseGraph::new(17)),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn model_reproduces_graph() {
        let g = DenseGraph::from_tokens(&FIG1);
        let tokens = interval_model(&g).unwrap().unwrap();
        assert_eq!(DenseGraph::from_tokens(&tokens), g);
        assert_eq!(interval_model(&cycle(4)).unwrap(), None);
    }

    #[test]
    fn canonical_keys() {
        let k3 = DenseGraph::complete(3);
        let p3 = DenseGraph::from_edges(3, &[(1, 2), (2, 3)]);
        assert_eq!(
            canonical_bruteforce(&k3).unwrap(),
            canonical_bruteforce(&k3.relabel(&[3, 1, 2])).unwrap()
        );
        assert_ne!(canonical_bruteforce(&k3).unwrap(), canonical_bruteforce(&p3).unwrap());
        assert_eq!(
            canonical_bruteforce(&p3).unwrap(),
            canonical_bruteforce(&DenseGraph::from_edges(3, &[(1, 3), (3, 2)])).unwrap()
        );
    }

    #[test]
    fn canonical_key_is_relabeling_invariant() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = 8;
            let mut g = DenseGraph::new(n);
            for u in 1..=n as u32 {
                for v in u + 1..=n as u32 {
                    if rand::Rng::gen_bool(&mut rng, 0.5) {
                        g.add_edge(u, v);
                    }
                }
            }
            let mut perm: Vec<u32> = (1..=n as u32).collect();
            perm.shuffle(&mut rng);
            assert_eq!(
                canonical_bruteforce(&g).unwrap(),
                canonical_bruteforce(&g.relabel(&perm)).unwrap()
            );
        }
    }

    #[test]
    fn edge_helpers() {
        let k3 = DenseGraph::complete(3);
        assert_eq!(interval_edges_bruteforce(&k3).unwrap(), k3.edges());
        let p3 = DenseGraph::from_edges(3, &[(1, 2), (2, 3)]);
        assert_eq!(parent_bruteforce(&p3).unwrap(), Some((1, 3)));
        assert_eq!(parent_bruteforce(&k3).unwrap(), None);
        // Removing a chord of the 4-cycle plus chord leaves C4.
        let diamond = DenseGraph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]);
        assert!(!interval_edges_bruteforce(&diamond).unwrap().contains(&(1, 3)));
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_bruteforce(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 10, 27]);
    }
}
