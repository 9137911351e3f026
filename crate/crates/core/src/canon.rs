//! Canonical forms of MPQ-trees.
//!
//! Subtrees are processed bottom-up in groups of equal `(size, ex, c)`
//! tuples. Every subtree is brought into a canonical orientation and then
//! summarized by a signature string built from vertex ranks (at most `n`)
//! and the integers already assigned to its child subtrees (above `n`).
//! Subtrees in a group are ranked by signature and receive fresh integers,
//! equal signatures getting equal integers. Two trees represent isomorphic
//! graphs iff their canonical trees serialize to the same normalized string.

use std::fmt;
use std::str::FromStr;

use crate::mpq::{build_mpq, MpqTree, Node, NodeId, QNode};
use crate::strings::{normalize_labels, StringError, StringRep, Vertex};

/// `(size, ex, c)` of a subtree: vertices in the subtree, vertices at its
/// root, and non-empty children of its root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubtreeTuple {
    pub size: usize,
    pub ex: usize,
    pub c: usize,
}

/// Rank `g(v)` of every vertex within its node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranks {
    g: Vec<u32>,
}

impl Ranks {
    pub fn g(&self, v: Vertex) -> u32 {
        self.g[v as usize - 1]
    }
}

/// Ranks P-node vertices by id and Q-node vertices by `(l(v), r(v))`.
///
/// The Q-node tuples of the whole tree are radix sorted together (by `r`,
/// then stably by `l`) and each node hands out ranks from its own counter
/// while the sorted list is scanned.
pub fn compute_ranks(t: &MpqTree) -> Ranks {
    let mut g = vec![0u32; t.n()];
    let mut tuples: Vec<(NodeId, usize, usize, Vertex)> = Vec::new();
    let mut max_k = 0;
    for id in t.preorder() {
        match t.node(id) {
            Node::P(p) => {
                for (i, &v) in p.vertices.iter().enumerate() {
                    g[v as usize - 1] = i as u32 + 1;
                }
            }
            Node::Q(q) => {
                max_k = max_k.max(q.k());
                tuples.extend(q.spans().iter().map(|s| (id, s.left, s.right, s.vertex)));
            }
        }
    }
    let tuples = counting_sort(tuples, max_k, |t| t.2);
    let tuples = counting_sort(tuples, max_k, |t| t.1);
    let mut counter = vec![0u32; t.preorder().iter().max().map_or(0, |&m| m + 1)];
    for (id, _, _, v) in tuples {
        counter[id] += 1;
        g[v as usize - 1] = counter[id];
    }
    Ranks { g }
}

fn counting_sort<T: Copy>(items: Vec<T>, max_key: usize, key: impl Fn(&T) -> usize) -> Vec<T> {
    let mut start = vec![0usize; max_key + 2];
    for it in &items {
        start[key(it) + 1] += 1;
    }
    for i in 1..start.len() {
        start[i] += start[i - 1];
    }
    let mut out: Vec<Option<T>> = vec![None; items.len()];
    for it in items {
        let k = key(&it);
        out[start[k]] = Some(it);
        start[k] += 1;
    }
    out.into_iter().map(|x| x.expect("every slot is filled")).collect()
}

/// Normalized string of a canonical tree; equal iff the graphs are
/// isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalString(StringRep);

impl CanonicalString {
    /// Canonizes an arbitrary string representation.
    pub fn of(s: &StringRep) -> Self {
        canonize(&build_mpq(s)).1
    }

    /// Wraps a string already known to be canonical.
    pub fn from_canonical(s: StringRep) -> Self {
        CanonicalString(s)
    }

    pub fn as_rep(&self) -> &StringRep {
        &self.0
    }

    pub fn into_rep(self) -> StringRep {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn tree(&self) -> MpqTree {
        build_mpq(&self.0)
    }
}

impl fmt::Display for CanonicalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for CanonicalString {
    type Err = StringError;

    /// Parses any string representation and canonizes it.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(CanonicalString::of(&s.parse()?))
    }
}

/// Signature element: ranks are `1..=n`, subtree labels are `> n`.
type Sig = Vec<u32>;

fn tuple_of(t: &MpqTree, id: NodeId, sizes: &[usize]) -> SubtreeTuple {
    let node = t.node(id);
    SubtreeTuple {
        size: sizes[id],
        ex: node.vertex_count(),
        c: node.children().len(),
    }
}

fn q_signature(q: &QNode, f: &[u32]) -> Sig {
    // spans() is sorted by (l, r), so the index is the rank.
    let mut rank = std::collections::HashMap::with_capacity(q.spans().len());
    for (i, s) in q.spans().iter().enumerate() {
        rank.insert(s.vertex, i as u32 + 1);
    }
    let mut sig = Vec::with_capacity(2 * q.spans().len() + q.k());
    for (i, sec) in q.sections().iter().enumerate() {
        let i = i + 1;
        let mut opens: Vec<u32> = q
            .spans()
            .iter()
            .filter(|s| s.left == i)
            .map(|s| rank[&s.vertex])
            .collect();
        opens.sort_unstable();
        sig.extend(opens);
        if let Some(c) = sec.subtree {
            sig.push(f[c]);
        }
        let mut closes: Vec<u32> = q
            .spans()
            .iter()
            .filter(|s| s.right == i)
            .map(|s| rank[&s.vertex])
            .collect();
        closes.sort_unstable_by(|a, b| b.cmp(a));
        sig.extend(closes);
    }
    sig
}

/// Computes the canonical form of `t` and its canonical string.
pub fn canonize(t: &MpqTree) -> (MpqTree, CanonicalString) {
    let mut t = t.clone();
    let order = t.preorder();
    let slots = order.iter().max().map_or(0, |&m| m + 1);

    let mut sizes = vec![0usize; slots];
    for &id in order.iter().rev() {
        let node = t.node(id);
        sizes[id] = node.vertex_count() + node.children().iter().map(|&c| sizes[c]).sum::<usize>();
    }
    let mut by_tuple: Vec<(SubtreeTuple, NodeId)> =
        order.iter().map(|&id| (tuple_of(&t, id, &sizes), id)).collect();
    by_tuple.sort_unstable();

    let mut f = vec![0u32; slots];
    let mut next = t.n() as u32 + 1;
    let mut start = 0;
    while start < by_tuple.len() {
        let tuple = by_tuple[start].0;
        let end = by_tuple[start..]
            .iter()
            .position(|e| e.0 != tuple)
            .map_or(by_tuple.len(), |p| start + p);

        let mut group: Vec<(Sig, NodeId)> = Vec::with_capacity(end - start);
        for &(_, id) in &by_tuple[start..end] {
            let sig = orient(&mut t, id, &f);
            group.push((sig, id));
        }
        group.sort_unstable();
        for i in 0..group.len() {
            if i > 0 && group[i].0 != group[i - 1].0 {
                next += 1;
            }
            f[group[i].1] = next;
        }
        next += 1;
        start = end;
    }
    t.reindex();
    let s = CanonicalString(normalize_labels(&t.string()));
    (t, s)
}

/// Puts node `id` into canonical orientation, given labels `f` for its
/// children, and returns its signature.
fn orient(t: &mut MpqTree, id: NodeId, f: &[u32]) -> Sig {
    match t.node_mut(id) {
        Node::P(p) => {
            p.children.sort_by_key(|&c| f[c]);
            let j = p.vertices.len() as u32;
            let mut sig: Sig = (1..=j).collect();
            sig.extend(p.children.iter().map(|&c| f[c]));
            sig.extend((1..=j).rev());
            sig
        }
        Node::Q(q) => {
            let forward = q_signature(q, f);
            let reversed = q.reversed();
            let backward = q_signature(&reversed, f);
            if backward < forward {
                *q = reversed;
                backward
            } else {
                forward
            }
        }
    }
}

/// Whether two string representations encode isomorphic graphs.
pub fn isomorphic(s1: &StringRep, s2: &StringRep) -> bool {
    s1.n() == s2.n() && CanonicalString::of(s1) == CanonicalString::of(s2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{FIG1_CANONICAL, FIG1_INPUT};
    use crate::mpq::validate_mpq;

    fn rep(s: &str) -> StringRep {
        s.parse().unwrap()
    }

    fn canon(s: &str) -> String {
        CanonicalString::of(&rep(s)).to_string()
    }

    #[test]
    fn ranks_on_figure_tree() {
        let t = build_mpq(&rep(FIG1_INPUT));
        let g = compute_ranks(&t);
        assert_eq!([g.g(3), g.g(5), g.g(6), g.g(8)], [1, 2, 3, 4]);
        assert_eq!([g.g(2), g.g(4)], [1, 2]);
        assert_eq!(g.g(1), 1);
    }

    #[test]
    fn figure_canonical_string() {
        assert_eq!(canon(FIG1_INPUT), FIG1_CANONICAL);
        assert_eq!(canon(FIG1_CANONICAL), FIG1_CANONICAL);
    }

    #[test]
    fn trivial_canonical_strings() {
        assert_eq!(canon("1,2,3,3,2,1"), "1,2,3,3,2,1");
        assert_eq!(canon("2,2,1,1"), "1,1,2,2");
        assert_eq!(canon("2,1,2,1"), "1,2,2,1");
    }

    #[test]
    fn canonical_tree_is_valid() {
        let (t, s) = canonize(&build_mpq(&rep(FIG1_INPUT)));
        assert!(validate_mpq(&t).is_empty());
        assert_eq!(normalize_labels(&t.string()), *s.as_rep());
    }

    #[test]
    fn isomorphism_examples() {
        assert!(isomorphic(&rep("1,2,1,2"), &rep("1,2,2,1")));
        assert!(!isomorphic(&rep("1,1,2,2"), &rep("1,2,2,1")));
        assert!(!isomorphic(&rep("1,1"), &rep("1,1,2,2")));
        // Paths on three vertices with different middle vertices.
        assert!(isomorphic(&rep("3,1,1,2,2,3"), &rep("1,2,1,3,2,3")));
    }

    #[test]
    fn figure_relabeled_and_reversed() {
        let s = rep(FIG1_INPUT);
        let mut tokens = s.tokens().to_vec();
        tokens.reverse();
        assert_eq!(canon(&StringRep::new(tokens).unwrap().to_string()), FIG1_CANONICAL);
        let sigma: Vec<Vertex> = (1..=13).rev().collect();
        assert_eq!(CanonicalString::of(&s.relabel(&sigma)).to_string(), FIG1_CANONICAL);
    }
}
