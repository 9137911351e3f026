//! Interval edges: edges whose removal leaves an interval graph.
//!
//! An edge `(x, y)` is classified from the relative position of `node(x)`
//! and `node(y)` in the MPQ-tree. When the nodes differ, `x` is the vertex
//! whose node is the ancestor ("x is over y") and the tree path from
//! `node(x)` down to `node(y)` decides the verdict. Every positive verdict
//! comes with a procedure producing a string representation of `G - (x, y)`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::mpq::{MpqTree, Node, NodeId, PNode, QNode, Span};
use crate::strings::{EndpointKind, StringRep, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RemovalCase {
    /// Both endpoints in one leaf P-node.
    PLeaf,
    /// Both endpoints in one Q-node, sharing one section whose subtree is
    /// a clique.
    QSameNode,
    /// The tree path can be rotated so that `y` is leftmost below `x`.
    RotablePath,
    /// The path starts in an `x`-central section and `y` has no neighbour
    /// below it; the payload is the satisfied condition, 1 to 4.
    CentralNoNeighbor(u8),
    /// As above, but `y` has a neighbour below the section.
    CentralNeighbor(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NonIntervalReason {
    /// Both endpoints in one P-node that has children.
    PInternal,
    /// Both endpoints in one Q-node with several common sections.
    QMultiCommonSection,
    /// The single common section has a subtree that is not a clique.
    QSubtreeNotClique,
    /// `node(y)` is a Q-node.
    EndsInQ,
    /// `node(y)` is a P-node with children.
    EndsInInternalP,
    /// The path passes a central section of an intermediate Q-node.
    ThroughCentral,
    /// The path starts in an `x`-central section and none of the section
    /// inclusion conditions hold.
    CentralConditionsFail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClassification {
    Interval(RemovalCase),
    NotInterval(NonIntervalReason),
}

impl EdgeClassification {
    pub fn is_interval(&self) -> bool {
        matches!(self, EdgeClassification::Interval(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeError {
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("({0}, {1}) is not an interval edge: {2:?}")]
    NotInterval(Vertex, Vertex, NonIntervalReason),
    #[error("classification {given:?} of ({x}, {y}) does not match the tree ({actual:?})")]
    Misclassified {
        x: Vertex,
        y: Vertex,
        given: EdgeClassification,
        actual: EdgeClassification,
    },
    #[error("tree edit for ({0}, {1}) broke section contiguity")]
    BrokenSections(Vertex, Vertex),
}

/// Per-section lookup tables of one Q-node, indexed by 1-based section.
///
/// * `f_r(b)`, `2 <= b <= k`: largest `i` with `S_{b-1} ∩ S_b ⊆ S_i`.
/// * `f_l(b)`, `1 <= b < k`: smallest `i` with `S_b ∩ S_{b+1} ⊆ S_i`.
/// * `L1(a)`: largest `l(v)` over `S_a`, witnessed by `v1(a)`; `L2(a)` the
///   same over `S_a \ {v1(a)}`, or 1 if that is empty.
/// * `R1(a)`, `R2(a)`: symmetric with smallest `r(v)`, defaulting to `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionTables {
    k: usize,
    f_r: Vec<usize>,
    f_l: Vec<usize>,
    l1: Vec<(usize, Vertex)>,
    l2: Vec<usize>,
    r1: Vec<(usize, Vertex)>,
    r2: Vec<usize>,
    f_r_max: SparseTable,
    f_l_min: SparseTable,
}

/// Range maximum (or minimum) queries in constant time.
#[derive(Debug, Clone, PartialEq, Eq)]
struct SparseTable {
    levels: Vec<Vec<usize>>,
    take_max: bool,
}

impl SparseTable {
    fn new(values: Vec<usize>, take_max: bool) -> Self {
        let pick = |a: usize, b: usize| if take_max { a.max(b) } else { a.min(b) };
        let mut levels = vec![values];
        let mut width = 1;
        while 2 * width <= levels[0].len() {
            let prev = levels.last().unwrap();
            let next = (0..prev.len() - width).map(|i| pick(prev[i], prev[i + width])).collect();
            levels.push(next);
            width *= 2;
        }
        SparseTable { levels, take_max }
    }

    /// Extreme value over `lo..=hi`.
    fn query(&self, lo: usize, hi: usize) -> usize {
        let level = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        let row = &self.levels[level];
        let (a, b) = (row[lo], row[hi + 1 - (1 << level)]);
        if self.take_max {
            a.max(b)
        } else {
            a.min(b)
        }
    }
}

impl SectionTables {
    /// One left-to-right sweep over the sections keeping the active
    /// vertices ordered by left and by right endpoint.
    pub fn new(q: &QNode) -> Self {
        let k = q.k();
        let mut starting: Vec<Vec<Span>> = vec![Vec::new(); k + 1];
        let mut ending: Vec<Vec<Span>> = vec![Vec::new(); k + 1];
        for &s in q.spans() {
            starting[s.left].push(s);
            ending[s.right].push(s);
        }
        let mut by_left: BTreeSet<(usize, Vertex)> = BTreeSet::new();
        let mut by_right: BTreeSet<(usize, Vertex)> = BTreeSet::new();
        let mut t = SectionTables {
            k,
            f_r: vec![0; k + 1],
            f_l: vec![0; k + 1],
            l1: vec![(0, 0); k + 1],
            l2: vec![0; k + 1],
            r1: vec![(0, 0); k + 1],
            r2: vec![0; k + 1],
            f_r_max: SparseTable::new(Vec::new(), true),
            f_l_min: SparseTable::new(Vec::new(), false),
        };
        for a in 1..=k {
            if a >= 2 {
                // Active vertices now form S_{a-1} ∩ S_a.
                t.f_r[a] = by_right.first().map_or(a, |e| e.0);
            }
            for s in &starting[a] {
                by_left.insert((s.left, s.vertex));
                by_right.insert((s.right, s.vertex));
            }
            let mut top = by_left.iter().rev();
            let first = *top.next().expect("sections are never empty");
            t.l1[a] = first;
            t.l2[a] = top.next().map_or(1, |e| e.0);
            let mut low = by_right.iter();
            let first = *low.next().expect("sections are never empty");
            t.r1[a] = first;
            t.r2[a] = low.next().map_or(k, |e| e.0);
            for s in &ending[a] {
                by_left.remove(&(s.left, s.vertex));
                by_right.remove(&(s.right, s.vertex));
            }
            if a < k {
                // Active vertices now form S_a ∩ S_{a+1}.
                t.f_l[a] = by_left.last().map_or(a, |e| e.0);
            }
        }
        t.f_r_max = SparseTable::new(t.f_r.clone(), true);
        t.f_l_min = SparseTable::new(t.f_l.clone(), false);
        t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn f_r(&self, b: usize) -> usize {
        assert!((2..=self.k).contains(&b));
        self.f_r[b]
    }

    pub fn f_l(&self, b: usize) -> usize {
        assert!((1..self.k).contains(&b));
        self.f_l[b]
    }

    /// Largest `f_r(b)` over `lo <= b <= hi`.
    pub fn max_f_r(&self, lo: usize, hi: usize) -> usize {
        assert!(2 <= lo && lo <= hi && hi <= self.k);
        self.f_r_max.query(lo, hi)
    }

    /// Smallest `f_l(b)` over `lo <= b <= hi`.
    pub fn min_f_l(&self, lo: usize, hi: usize) -> usize {
        assert!(1 <= lo && lo <= hi && hi < self.k);
        self.f_l_min.query(lo, hi)
    }

    /// A section `b` with `1 < b <= l(x)`, `S_a \ {x} ⊆ S_b` and
    /// `S_{b-1} ∩ S_b ⊆ S_a`, if one exists.
    pub fn insertion_left(&self, x: Span, a: usize) -> Option<usize> {
        let lo = self.lstar(x, a).max(2);
        let hi = x.left.min(self.rstar(x, a));
        (lo <= hi && self.max_f_r(lo, hi) >= a).then(|| {
            (lo..=hi).find(|&b| self.f_r[b] >= a).expect("range maximum is attained")
        })
    }

    /// A section `b` with `r(x) <= b < k`, `S_a \ {x} ⊆ S_b` and
    /// `S_b ∩ S_{b+1} ⊆ S_a`, if one exists.
    pub fn insertion_right(&self, x: Span, a: usize) -> Option<usize> {
        let lo = self.lstar(x, a).max(x.right);
        let hi = self.rstar(x, a).min(self.k - 1);
        (lo <= hi && self.min_f_l(lo, hi) <= a).then(|| {
            (lo..=hi).find(|&b| self.f_l[b] <= a).expect("range minimum is attained")
        })
    }

    /// `(L1(a), v1(a))`.
    pub fn l1(&self, a: usize) -> (usize, Vertex) {
        self.l1[a]
    }

    pub fn l2(&self, a: usize) -> usize {
        self.l2[a]
    }

    /// `(R1(a), witness)`.
    pub fn r1(&self, a: usize) -> (usize, Vertex) {
        self.r1[a]
    }

    pub fn r2(&self, a: usize) -> usize {
        self.r2[a]
    }

    /// Largest `l(v)` over `v ∈ S_a \ {x}`, or 1 if `S_a = {x}`.
    pub fn lstar(&self, x: Span, a: usize) -> usize {
        debug_assert!(x.left <= a && a <= x.right);
        if self.l1[a].0 != x.left {
            self.l1[a].0
        } else {
            self.l2[a]
        }
    }

    /// Smallest `r(v)` over `v ∈ S_a \ {x}`, or `k` if `S_a = {x}`.
    pub fn rstar(&self, x: Span, a: usize) -> usize {
        debug_assert!(x.left <= a && a <= x.right);
        if self.r1[a].0 != x.right {
            self.r1[a].0
        } else {
            self.r2[a]
        }
    }
}

/// Section tables for every Q-node of a tree plus the section span of
/// every Q-node vertex.
#[derive(Debug, Clone)]
pub struct TreeTables {
    per_node: Vec<Option<SectionTables>>,
    span: Vec<Option<Span>>,
}

impl TreeTables {
    pub fn new(t: &MpqTree) -> Self {
        let order = t.preorder();
        let slots = order.iter().max().map_or(0, |&m| m + 1);
        let mut per_node = vec![None; slots];
        let mut span = vec![None; t.n()];
        for id in order {
            if let Node::Q(q) = t.node(id) {
                per_node[id] = Some(SectionTables::new(q));
                for &s in q.spans() {
                    span[s.vertex as usize - 1] = Some(s);
                }
            }
        }
        TreeTables { per_node, span }
    }

    pub fn of(&self, id: NodeId) -> Option<&SectionTables> {
        self.per_node.get(id).and_then(Option::as_ref)
    }

    /// Span of a vertex stored in a Q-node.
    pub fn span(&self, v: Vertex) -> Option<Span> {
        self.span[v as usize - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathStart {
    PNode,
    /// Section `a` of the Q-node with `l(x) < a < r(x)`.
    CentralSection(usize),
    /// Section `a` equal to `l(x)` or `r(x)`.
    NonCentralSection(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathEnd {
    PLeaf,
    InternalP,
    Q,
}

/// The tree path `node(x) = n_1, ..., n_t = node(y)` of an edge whose
/// endpoints lie in different nodes, `x` over `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePath {
    pub x: Vertex,
    pub y: Vertex,
    pub nodes: Vec<NodeId>,
    /// For every node but the last, the child slot the path descends
    /// through (P-node child index or Q-node section).
    pub slots: Vec<usize>,
    pub start: PathStart,
    pub goes_through_central: bool,
    pub end: PathEnd,
    /// Whether `y` is adjacent to some other vertex of the subtree rooted
    /// at `n_2`.
    pub y_has_neighbor: bool,
}

impl TreePath {
    pub fn almost_rotable(&self) -> bool {
        !self.goes_through_central && self.end == PathEnd::PLeaf
    }

    pub fn rotable(&self) -> bool {
        self.almost_rotable() && !matches!(self.start, PathStart::CentralSection(_))
    }
}

/// The `<x, y>`-tree-path, orienting the pair so that `x` is over `y`.
/// `None` if the vertices share a node or are not adjacent.
pub fn tree_path(t: &MpqTree, x: Vertex, y: Vertex) -> Option<TreePath> {
    let (nx, ny) = (t.node_of(x), t.node_of(y));
    if nx == ny {
        return None;
    }
    let (x, y, nx, ny) = if t.is_ancestor(nx, ny) {
        (x, y, nx, ny)
    } else if t.is_ancestor(ny, nx) {
        (y, x, ny, nx)
    } else {
        return None;
    };

    let mut nodes = vec![ny];
    let mut slots = Vec::new();
    let mut cur = ny;
    while cur != nx {
        let link = t.link(cur).expect("node(x) is an ancestor");
        nodes.push(link.parent);
        slots.push(link.slot);
        cur = link.parent;
    }
    nodes.reverse();
    slots.reverse();

    let start = match t.node(nx) {
        Node::P(_) => PathStart::PNode,
        Node::Q(q) => {
            let s = q.span_of(x).expect("x is stored in its node");
            let a = slots[0];
            if a < s.left || a > s.right {
                return None;
            }
            if a == s.left || a == s.right {
                PathStart::NonCentralSection(a)
            } else {
                PathStart::CentralSection(a)
            }
        }
    };
    let inner = 1..nodes.len() - 1;
    let goes_through_central = inner.clone().any(|i| match t.node(nodes[i]) {
        Node::Q(q) => slots[i] > 1 && slots[i] < q.k(),
        Node::P(_) => false,
    });
    let end = match t.node(ny) {
        Node::Q(_) => PathEnd::Q,
        Node::P(p) if p.children.is_empty() => PathEnd::PLeaf,
        Node::P(_) => PathEnd::InternalP,
    };
    // A Q-node section is never empty, so every Q-node on the way holds a
    // neighbour of y.
    let y_has_neighbor = t.node(ny).vertex_count() >= 2
        || inner.into_iter().any(|i| t.node(nodes[i]).vertex_count() > 0);
    Some(TreePath {
        x,
        y,
        nodes,
        slots,
        start,
        goes_through_central,
        end,
        y_has_neighbor,
    })
}

/// Whether `x` and `y` are adjacent, read off the tree.
pub fn adjacent_in_tree(t: &MpqTree, x: Vertex, y: Vertex) -> bool {
    if x == y {
        return false;
    }
    let (nx, ny) = (t.node_of(x), t.node_of(y));
    if nx == ny {
        return match t.node(nx) {
            Node::P(_) => true,
            Node::Q(q) => {
                let (a, b) = (q.span_of(x).unwrap(), q.span_of(y).unwrap());
                a.left.max(b.left) <= a.right.min(b.right)
            }
        };
    }
    tree_path(t, x, y).is_some()
}

/// Decides the section-inclusion conditions for a path starting in the
/// `x`-central section `a`, returning the first satisfied condition.
///
/// Without a neighbour of `y` below `a`, the section `S_a \ {x}` may be
/// copied next to any suitable section `b`; `f_r` and `f_l` need not be
/// monotone, so all candidates for `b` are checked with a range query.
/// With a neighbour, `S_a` itself moves next to `S_{l(x)}` or `S_{r(x)}`.
fn central_condition(tables: &SectionTables, x: Span, a: usize, y_has_neighbor: bool) -> Option<u8> {
    let k = tables.k();
    let (ls, rs) = (tables.lstar(x, a), tables.rstar(x, a));
    let (l, r) = (x.left, x.right);
    if !y_has_neighbor {
        if tables.insertion_left(x, a).is_some() {
            return Some(1);
        }
        if tables.insertion_right(x, a).is_some() {
            return Some(2);
        }
        if ls == 1 {
            return Some(3);
        }
        if rs == k {
            return Some(4);
        }
    } else {
        if l > 1 && ls <= l && l <= rs && tables.f_r(l) >= a {
            return Some(1);
        }
        if r < k && ls <= r && r <= rs && tables.f_l(r) <= a {
            return Some(2);
        }
        if l == 1 && ls == 1 {
            return Some(3);
        }
        if r == k && rs == k {
            return Some(4);
        }
    }
    None
}

fn classify_path(tables: &TreeTables, t: &MpqTree, path: &TreePath) -> EdgeClassification {
    use EdgeClassification::*;
    match path.end {
        PathEnd::Q => return NotInterval(NonIntervalReason::EndsInQ),
        PathEnd::InternalP => return NotInterval(NonIntervalReason::EndsInInternalP),
        PathEnd::PLeaf => {}
    }
    if path.goes_through_central {
        return NotInterval(NonIntervalReason::ThroughCentral);
    }
    match path.start {
        PathStart::PNode | PathStart::NonCentralSection(_) => Interval(RemovalCase::RotablePath),
        PathStart::CentralSection(a) => {
            let q = tables.of(path.nodes[0]).expect("Q-node tables");
            let x = t.node(path.nodes[0]).as_q().unwrap().span_of(path.x).unwrap();
            match central_condition(q, x, a, path.y_has_neighbor) {
                Some(c) if path.y_has_neighbor => Interval(RemovalCase::CentralNeighbor(c)),
                Some(c) => Interval(RemovalCase::CentralNoNeighbor(c)),
                None => NotInterval(NonIntervalReason::CentralConditionsFail),
            }
        }
    }
}

/// Classifies the edge `(x, y)`; the order of the arguments is irrelevant.
pub fn classify_edge(
    t: &MpqTree,
    tables: &TreeTables,
    x: Vertex,
    y: Vertex,
) -> Result<EdgeClassification, EdgeError> {
    classify_oriented(t, tables, x, y).map(|(_, _, c)| c)
}

/// Like [`classify_edge`], also returning the pair oriented as the
/// removal routines expect: `x` over `y`, or `x < y` within one node.
pub fn classify_oriented(
    t: &MpqTree,
    tables: &TreeTables,
    x: Vertex,
    y: Vertex,
) -> Result<(Vertex, Vertex, EdgeClassification), EdgeError> {
    use EdgeClassification::*;
    if x == y || !adjacent_in_tree(t, x, y) {
        return Err(EdgeError::NotAnEdge(x, y));
    }
    let (nx, ny) = (t.node_of(x), t.node_of(y));
    if nx == ny {
        let (x, y) = (x.min(y), x.max(y));
        let c = match t.node(nx) {
            Node::P(p) if p.children.is_empty() => Interval(RemovalCase::PLeaf),
            Node::P(_) => NotInterval(NonIntervalReason::PInternal),
            Node::Q(q) => {
                let (a, b) = (q.span_of(x).unwrap(), q.span_of(y).unwrap());
                let (lo, hi) = (a.left.max(b.left), a.right.min(b.right));
                if lo < hi {
                    NotInterval(NonIntervalReason::QMultiCommonSection)
                } else if q.subtree(lo).is_none_or(|c| t.node(c).is_leaf()) {
                    Interval(RemovalCase::QSameNode)
                } else {
                    NotInterval(NonIntervalReason::QSubtreeNotClique)
                }
            }
        };
        return Ok((x, y, c));
    }
    let path = tree_path(t, x, y).expect("adjacent vertices in different nodes");
    Ok((path.x, path.y, classify_path(tables, t, &path)))
}

/// An interval edge with its endpoints oriented for removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalEdge {
    pub x: Vertex,
    pub y: Vertex,
    pub case: RemovalCase,
}

impl IntervalEdge {
    /// The edge as `(min, max)`.
    pub fn key(&self) -> (Vertex, Vertex) {
        (self.x.min(self.y), self.x.max(self.y))
    }
}

/// Lists all interval edges of the tree.
///
/// Same-node edges come from leaf P-nodes and from Q-node sections whose
/// subtree is empty or a leaf. All other interval edges end in a leaf, so
/// every leaf vertex `y` walks up to the root, tracking whether `y` has a
/// neighbour in the subtree walked so far and whether the walk passed a
/// central section; each ancestor vertex adjacent to `y` is then decided in
/// constant time from the section tables.
pub fn list_interval_edges(t: &MpqTree, tables: &TreeTables) -> Vec<IntervalEdge> {
    let mut out = Vec::new();
    for id in t.preorder() {
        match t.node(id) {
            Node::P(p) if p.children.is_empty() => {
                for (i, &x) in p.vertices.iter().enumerate() {
                    for &y in &p.vertices[i + 1..] {
                        out.push(IntervalEdge { x, y, case: RemovalCase::PLeaf });
                    }
                    walk_up(t, tables, id, x, &mut out);
                }
            }
            Node::P(_) => {}
            Node::Q(q) => {
                for sec in q.sections() {
                    if sec.subtree.is_some_and(|c| !t.node(c).is_leaf()) {
                        continue;
                    }
                    for &a in &sec.closes {
                        for &b in &sec.opens {
                            out.push(IntervalEdge {
                                x: a.min(b),
                                y: a.max(b),
                                case: RemovalCase::QSameNode,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

fn walk_up(t: &MpqTree, tables: &TreeTables, leaf: NodeId, y: Vertex, out: &mut Vec<IntervalEdge>) {
    let mut has_neighbor = t.node(leaf).vertex_count() >= 2;
    let mut through_central = false;
    let mut cur = leaf;
    while let Some(link) = t.link(cur) {
        let n = link.parent;
        match t.node(n) {
            Node::P(p) => {
                if !through_central {
                    for &x in &p.vertices {
                        out.push(IntervalEdge { x, y, case: RemovalCase::RotablePath });
                    }
                }
                has_neighbor |= !p.vertices.is_empty();
            }
            Node::Q(q) => {
                let a = link.slot;
                if !through_central {
                    let qt = tables.of(n).expect("Q-node tables");
                    for &x in q.spans() {
                        if x.left > a || x.right < a {
                            continue;
                        }
                        let case = if a == x.left || a == x.right {
                            Some(RemovalCase::RotablePath)
                        } else {
                            central_condition(qt, x, a, has_neighbor).map(|c| {
                                if has_neighbor {
                                    RemovalCase::CentralNeighbor(c)
                                } else {
                                    RemovalCase::CentralNoNeighbor(c)
                                }
                            })
                        };
                        if let Some(case) = case {
                            out.push(IntervalEdge { x: x.vertex, y, case });
                        }
                    }
                }
                has_neighbor = true;
                through_central |= a > 1 && a < q.k();
            }
        }
        cur = n;
    }
}

/// One adjacent transposition performed by a removal routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Swap {
    pub left: EndpointKind,
    pub right: EndpointKind,
}

impl Swap {
    /// Swapping two left or two right endpoints never changes the graph.
    pub fn preserves_graph(&self) -> bool {
        self.left == self.right
    }
}

/// Token buffer supporting adjacent swaps with endpoint bookkeeping.
struct Shuffle {
    tokens: Vec<Vertex>,
    pos: Vec<[usize; 2]>,
    trace: Vec<Swap>,
}

impl Shuffle {
    fn new(tokens: Vec<Vertex>) -> Self {
        let mut pos = vec![[usize::MAX; 2]; tokens.len() / 2];
        for (i, &t) in tokens.iter().enumerate() {
            let p = &mut pos[t as usize - 1];
            if p[0] == usize::MAX {
                p[0] = i;
            } else {
                p[1] = i;
            }
        }
        Shuffle { tokens, pos, trace: Vec::new() }
    }

    fn first(&self, v: Vertex) -> usize {
        self.pos[v as usize - 1][0]
    }

    fn second(&self, v: Vertex) -> usize {
        self.pos[v as usize - 1][1]
    }

    fn kind(&self, i: usize) -> EndpointKind {
        if self.first(self.tokens[i]) == i {
            EndpointKind::Left
        } else {
            EndpointKind::Right
        }
    }

    /// Swaps positions `i` and `i + 1`.
    fn swap(&mut self, i: usize) {
        let (a, b) = (self.tokens[i], self.tokens[i + 1]);
        debug_assert_ne!(a, b);
        let (ka, kb) = (self.kind(i), self.kind(i + 1));
        self.trace.push(Swap { left: ka, right: kb });
        self.pos[a as usize - 1][(ka == EndpointKind::Right) as usize] = i + 1;
        self.pos[b as usize - 1][(kb == EndpointKind::Right) as usize] = i;
        self.tokens.swap(i, i + 1);
    }

    /// Brings both occurrences of `v` next to each other by moving them
    /// towards each other alternately.
    fn gather(&mut self, v: Vertex) {
        while self.second(v) - self.first(v) > 1 {
            self.swap(self.first(v));
            if self.second(v) - self.first(v) > 1 {
                self.swap(self.second(v) - 1);
            }
        }
    }

    fn finish(self) -> (StringRep, Vec<Swap>) {
        (StringRep::new_unchecked(self.tokens), self.trace)
    }
}

/// String representation of `G - (x, y)` for an interval edge.
pub fn remove_edge_string(
    t: &MpqTree,
    tables: &TreeTables,
    x: Vertex,
    y: Vertex,
    classification: EdgeClassification,
) -> Result<StringRep, EdgeError> {
    remove_edge_traced(t, tables, x, y, classification).map(|(s, _)| s)
}

/// [`remove_edge_string`] together with every adjacent swap performed on
/// the final string. For the leaf, same-Q-node and rotable cases all swaps
/// but the last preserve the graph; the central cases also edit the tree
/// and their swaps restore edges dropped by that edit.
pub fn remove_edge_traced(
    t: &MpqTree,
    tables: &TreeTables,
    x: Vertex,
    y: Vertex,
    classification: EdgeClassification,
) -> Result<(StringRep, Vec<Swap>), EdgeError> {
    let (x, y, actual) = classify_oriented(t, tables, x, y)?;
    if actual != classification {
        return Err(EdgeError::Misclassified { x, y, given: classification, actual });
    }
    let case = match actual {
        EdgeClassification::Interval(c) => c,
        EdgeClassification::NotInterval(r) => return Err(EdgeError::NotInterval(x, y, r)),
    };
    match case {
        RemovalCase::PLeaf => Ok(remove_p_leaf(t, x, y)),
        RemovalCase::QSameNode => Ok(remove_q_same(t, x, y)),
        RemovalCase::RotablePath => remove_rotable(t, x, y),
        RemovalCase::CentralNoNeighbor(c) => remove_central_no_neighbor(t, x, y, c),
        RemovalCase::CentralNeighbor(c) => remove_central_neighbor(t, x, y, c),
    }
}

fn remove_p_leaf(t: &MpqTree, x: Vertex, y: Vertex) -> (StringRep, Vec<Swap>) {
    let mut s = Shuffle::new(t.string().into_tokens());
    s.gather(x);
    s.gather(y);
    // Now "x y y x" or "y x x y"; make it "x x y y" or "y y x x".
    let (outer, inner) = if s.first(x) < s.first(y) { (x, y) } else { (y, x) };
    s.swap(s.second(outer) - 1);
    s.swap(s.first(inner));
    s.finish()
}

fn remove_q_same(t: &MpqTree, x: Vertex, y: Vertex) -> (StringRep, Vec<Swap>) {
    let mut s = Shuffle::new(t.string().into_tokens());
    // `a` ends in the common section, `b` starts there.
    let (a, b) = if s.second(x) < s.second(y) { (x, y) } else { (y, x) };
    while s.kind(s.first(b) + 1) == EndpointKind::Left {
        s.swap(s.first(b));
    }
    while s.kind(s.second(a) - 1) == EndpointKind::Right {
        s.swap(s.second(a) - 1);
    }
    debug_assert_eq!(s.first(b) + 1, s.second(a));
    s.swap(s.first(b));
    s.finish()
}

/// Rotates the nodes strictly between `top` and `bottom` (and `top`
/// itself if it is a P-node and `include_top` is set) so that the path
/// runs through leftmost children and first sections. A Q-node at `top`
/// is left alone.
fn rotate_path_left(
    t: &mut MpqTree,
    bottom: NodeId,
    top: NodeId,
    include_top: bool,
    x: Vertex,
    y: Vertex,
) -> Result<(), EdgeError> {
    let mut cur = bottom;
    while cur != top {
        let link = t.link(cur).expect("top is an ancestor");
        let p = link.parent;
        if p == top && (!include_top || t.node(p).as_q().is_some()) {
            break;
        }
        match t.node_mut(p) {
            Node::P(pn) => {
                pn.children.retain(|&c| c != cur);
                pn.children.insert(0, cur);
                t.reindex();
            }
            Node::Q(q) => {
                if link.slot == q.k() {
                    t.reverse_q(p);
                } else if link.slot != 1 {
                    return Err(EdgeError::BrokenSections(x, y));
                }
            }
        }
        cur = p;
    }
    Ok(())
}

fn remove_rotable(t: &MpqTree, x: Vertex, y: Vertex) -> Result<(StringRep, Vec<Swap>), EdgeError> {
    let mut t = t.clone();
    let (nx, ny) = (t.node_of(x), t.node_of(y));
    if let Node::Q(q) = t.node(nx) {
        let path = tree_path(&t, x, y).expect("rotable path");
        let s = q.span_of(x).unwrap();
        if path.slots[0] != s.left {
            t.reverse_q(nx);
        }
    }
    rotate_path_left(&mut t, ny, nx, true, x, y)?;
    let mut s = Shuffle::new(t.string().into_tokens());
    s.gather(y);
    while s.first(x) + 1 != s.second(y) {
        s.swap(s.first(x));
    }
    s.swap(s.first(x));
    Ok(s.finish())
}

/// Node and section data of a central-section removal, mirrored so that
/// only conditions 1 and 3 need handling.
struct Central {
    t: MpqTree,
    nx: NodeId,
    x_span: Span,
    a: usize,
    sections: Vec<(Vec<Vertex>, Option<NodeId>)>,
}

fn central_setup(t: &MpqTree, x: Vertex, y: Vertex, condition: u8) -> Central {
    let mut t = t.clone();
    let nx = t.node_of(x);
    if condition == 2 || condition == 4 {
        t.reverse_q(nx);
    }
    let path = tree_path(&t, x, y).expect("central path");
    let q = t.node(nx).as_q().expect("central paths start in a Q-node");
    let sections = (1..=q.k()).map(|i| (q.section_set(i), q.subtree(i))).collect();
    Central {
        x_span: q.span_of(x).unwrap(),
        a: path.slots[0],
        sections,
        nx,
        t,
    }
}

/// Rebuilds a Q-node from section member lists, recomputing every span.
fn rebuild_q(
    sections: Vec<(Vec<Vertex>, Option<NodeId>)>,
    x: Vertex,
    y: Vertex,
) -> Result<QNode, EdgeError> {
    let mut span: std::collections::BTreeMap<Vertex, (usize, usize, usize)> = Default::default();
    for (i, (members, _)) in sections.iter().enumerate() {
        for &v in members {
            let e = span.entry(v).or_insert((i + 1, i + 1, 0));
            e.1 = i + 1;
            e.2 += 1;
        }
    }
    let mut spans = Vec::with_capacity(span.len());
    for (v, (l, r, count)) in span {
        if r - l + 1 != count {
            return Err(EdgeError::BrokenSections(x, y));
        }
        spans.push(Span { vertex: v, left: l, right: r });
    }
    Ok(QNode::new(spans, sections.into_iter().map(|s| s.1).collect()))
}

fn remove_central_no_neighbor(
    t: &MpqTree,
    x: Vertex,
    y: Vertex,
    condition: u8,
) -> Result<(StringRep, Vec<Swap>), EdgeError> {
    let Central { mut t, nx, x_span, a, mut sections } = central_setup(t, x, y, condition);
    let rest: Vec<Vertex> = sections[a - 1].0.iter().copied().filter(|&v| v != x).collect();
    let b = if condition == 1 || condition == 2 {
        let tables = SectionTables::new(t.node(nx).as_q().unwrap());
        tables.insertion_left(x_span, a).ok_or(EdgeError::BrokenSections(x, y))?
    } else {
        1
    };
    let ny = t.node_of(y);
    if let Node::P(p) = t.node_mut(ny) {
        p.vertices.retain(|&v| v != y);
    }
    let leaf = t.push_node(Node::P(PNode { vertices: vec![y], children: vec![] }));
    sections.insert(b - 1, (rest, Some(leaf)));
    let q = rebuild_q(sections, x, y)?;
    *t.node_mut(nx) = Node::Q(q);
    t.reindex();
    Ok((t.string(), Vec::new()))
}

fn remove_central_neighbor(
    t: &MpqTree,
    x: Vertex,
    y: Vertex,
    condition: u8,
) -> Result<(StringRep, Vec<Swap>), EdgeError> {
    let Central { mut t, nx, x_span, a, mut sections } = central_setup(t, x, y, condition);
    let (mut members, sub) = sections.remove(a - 1);
    members.retain(|&v| v != x);
    sections.insert(x_span.left - 1, (members, sub));
    let q = rebuild_q(sections, x, y)?;
    *t.node_mut(nx) = Node::Q(q);
    t.reindex();
    let ny = t.node_of(y);
    rotate_path_left(&mut t, ny, nx, false, x, y)?;
    let mut s = Shuffle::new(t.string().into_tokens());
    s.gather(y);
    while s.first(x) != s.second(y) + 1 {
        s.swap(s.first(x) - 1);
    }
    Ok(s.finish())
}
