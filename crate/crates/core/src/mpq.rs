//! MPQ-trees.
//!
//! An MPQ-tree is a PQ-tree over the maximal cliques of an interval graph
//! where every vertex is stored once: P-nodes carry a vertex set, Q-nodes
//! carry vertices spanning a run `left..=right` of their sections. The
//! vertices on any root-to-leaf path form a maximal clique.
//!
//! Section indices are 1-based throughout, so a Q-node with `k` sections
//! has sections `1..=k`.

use std::fmt;

use crate::strings::{StringRep, Vertex};

pub type NodeId = usize;

/// Span of a Q-node vertex over sections `left..=right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub vertex: Vertex,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PNode {
    /// Sorted by id.
    pub vertices: Vec<Vertex>,
    pub children: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub subtree: Option<NodeId>,
    /// Vertices whose left endpoint lies in this section, in emission order.
    pub opens: Vec<Vertex>,
    /// Vertices whose right endpoint lies in this section, in emission order.
    pub closes: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QNode {
    spans: Vec<Span>,
    sections: Vec<Section>,
}

impl QNode {
    /// Builds a Q-node from vertex spans and per-section subtrees.
    ///
    /// Within a section, longer intervals open first and close last, twins
    /// are nested by id.
    pub fn new(mut spans: Vec<Span>, subtrees: Vec<Option<NodeId>>) -> Self {
        let k = subtrees.len();
        spans.sort_unstable_by_key(|s| (s.left, s.right, s.vertex));
        let mut sections: Vec<Section> = subtrees
            .into_iter()
            .map(|subtree| Section {
                subtree,
                opens: Vec::new(),
                closes: Vec::new(),
            })
            .collect();
        let mut by_open = spans.clone();
        by_open.sort_unstable_by_key(|s| (s.left, std::cmp::Reverse(s.right), s.vertex));
        for s in &by_open {
            assert!(s.left >= 1 && s.left <= s.right && s.right <= k, "bad span {s:?}");
            sections[s.left - 1].opens.push(s.vertex);
        }
        let mut by_close = spans.clone();
        by_close.sort_unstable_by_key(|s| {
            (
                s.right,
                std::cmp::Reverse(s.left),
                std::cmp::Reverse(s.vertex),
            )
        });
        for s in &by_close {
            sections[s.right - 1].closes.push(s.vertex);
        }
        QNode { spans, sections }
    }

    /// Number of sections `k`.
    pub fn k(&self) -> usize {
        self.sections.len()
    }

    /// Spans sorted by `(left, right, vertex)`.
    pub fn spans(&self) -> &[Span] {
        &self.spans
    }

    pub fn span_of(&self, v: Vertex) -> Option<Span> {
        self.spans.iter().copied().find(|s| s.vertex == v)
    }

    /// Section `i`, 1-based.
    pub fn section(&self, i: usize) -> &Section {
        &self.sections[i - 1]
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn subtree(&self, i: usize) -> Option<NodeId> {
        self.sections[i - 1].subtree
    }

    /// Members of section `S_i`, sorted by id.
    pub fn section_set(&self, i: usize) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .spans
            .iter()
            .filter(|s| s.left <= i && i <= s.right)
            .map(|s| s.vertex)
            .collect();
        out.sort_unstable();
        out
    }

    /// The same node with its section order reversed.
    pub fn reversed(&self) -> QNode {
        let k = self.k();
        let spans = self
            .spans
            .iter()
            .map(|s| Span {
                vertex: s.vertex,
                left: k + 1 - s.right,
                right: k + 1 - s.left,
            })
            .collect();
        let subtrees = self.sections.iter().rev().map(|s| s.subtree).collect();
        QNode::new(spans, subtrees)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.spans.iter().map(|s| s.vertex)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    P(PNode),
    Q(QNode),
}

impl Node {
    pub fn vertex_count(&self) -> usize {
        match self {
            Node::P(p) => p.vertices.len(),
            Node::Q(q) => q.spans.len(),
        }
    }

    /// Non-empty child subtrees, left to right.
    pub fn children(&self) -> Vec<NodeId> {
        match self {
            Node::P(p) => p.children.clone(),
            Node::Q(q) => q.sections.iter().filter_map(|s| s.subtree).collect(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        match self {
            Node::P(p) => p.children.is_empty(),
            Node::Q(_) => false,
        }
    }

    pub fn as_p(&self) -> Option<&PNode> {
        match self {
            Node::P(p) => Some(p),
            Node::Q(_) => None,
        }
    }

    pub fn as_q(&self) -> Option<&QNode> {
        match self {
            Node::Q(q) => Some(q),
            Node::P(_) => None,
        }
    }
}

/// Where a node hangs below its parent: child position of a P-node, or
/// section index of a Q-node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Link {
    pub parent: NodeId,
    pub slot: usize,
}

#[derive(Debug, Clone)]
pub struct MpqTree {
    n: usize,
    nodes: Vec<Node>,
    root: NodeId,
    node_of: Vec<NodeId>,
    links: Vec<Option<Link>>,
}

impl MpqTree {
    /// Assembles a tree from an arena. Nodes unreachable from `root` are
    /// ignored.
    pub fn from_parts(n: usize, nodes: Vec<Node>, root: NodeId) -> Self {
        let mut t = MpqTree {
            n,
            nodes,
            root,
            node_of: Vec::new(),
            links: Vec::new(),
        };
        t.reindex();
        t
    }

    /// Recomputes vertex placement and parent links after structural edits.
    pub fn reindex(&mut self) {
        self.node_of = vec![usize::MAX; self.n];
        self.links = vec![None; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            match &self.nodes[id] {
                Node::P(p) => {
                    for &v in &p.vertices {
                        self.node_of[v as usize - 1] = id;
                    }
                    for (slot, &c) in p.children.iter().enumerate() {
                        self.links[c] = Some(Link { parent: id, slot });
                        stack.push(c);
                    }
                }
                Node::Q(q) => {
                    for s in &q.spans {
                        self.node_of[s.vertex as usize - 1] = id;
                    }
                    for (i, sec) in q.sections.iter().enumerate() {
                        if let Some(c) = sec.subtree {
                            self.links[c] = Some(Link {
                                parent: id,
                                slot: i + 1,
                            });
                            stack.push(c);
                        }
                    }
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub(crate) fn node_mut(&mut self, id: NodeId) -> &mut Node {
        &mut self.nodes[id]
    }

    pub(crate) fn push_node(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        self.links.push(None);
        self.nodes.len() - 1
    }

    /// The node holding vertex `v`.
    pub fn node_of(&self, v: Vertex) -> NodeId {
        self.node_of[v as usize - 1]
    }

    pub fn link(&self, id: NodeId) -> Option<Link> {
        self.links[id]
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.links[id].map(|l| l.parent)
    }

    /// Node ids reachable from the root, in preorder.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            out.push(id);
            let mut ch = self.nodes[id].children();
            ch.reverse();
            stack.extend(ch);
        }
        out
    }

    /// Number of vertices stored in the subtree rooted at `id`.
    pub fn subtree_size(&self, id: NodeId) -> usize {
        let node = &self.nodes[id];
        node.vertex_count()
            + node
                .children()
                .into_iter()
                .map(|c| self.subtree_size(c))
                .sum::<usize>()
    }

    /// Vertices stored in the subtree rooted at `id`.
    pub fn subtree_vertices(&self, id: NodeId) -> Vec<Vertex> {
        let mut out = Vec::new();
        self.collect_vertices(id, &mut out);
        out
    }

    fn collect_vertices(&self, id: NodeId, out: &mut Vec<Vertex>) {
        match &self.nodes[id] {
            Node::P(p) => out.extend(&p.vertices),
            Node::Q(q) => out.extend(q.vertices()),
        }
        for c in self.nodes[id].children() {
            self.collect_vertices(c, out);
        }
    }

    /// Whether `anc` is `id` or one of its ancestors.
    pub fn is_ancestor(&self, anc: NodeId, mut id: NodeId) -> bool {
        loop {
            if id == anc {
                return true;
            }
            match self.parent(id) {
                Some(p) => id = p,
                None => return false,
            }
        }
    }

    /// Reverses the section order of Q-node `id`.
    pub fn reverse_q(&mut self, id: NodeId) {
        if let Node::Q(q) = &self.nodes[id] {
            self.nodes[id] = Node::Q(q.reversed());
            self.reindex();
        }
    }

    /// Token sequence of the subtree rooted at `id`.
    pub fn tokens_of(&self, id: NodeId) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(2 * self.n);
        self.emit(id, &mut out);
        out
    }

    fn emit(&self, id: NodeId, out: &mut Vec<Vertex>) {
        match &self.nodes[id] {
            Node::P(p) => {
                out.extend(&p.vertices);
                for &c in &p.children {
                    self.emit(c, out);
                }
                out.extend(p.vertices.iter().rev());
            }
            Node::Q(q) => {
                for sec in &q.sections {
                    out.extend(&sec.opens);
                    if let Some(c) = sec.subtree {
                        self.emit(c, out);
                    }
                    out.extend(&sec.closes);
                }
            }
        }
    }

    /// String representation of the whole tree.
    pub fn string(&self) -> StringRep {
        StringRep::new_unchecked(self.tokens_of(self.root))
    }
}

/// Shorthand for [`MpqTree::string`].
pub fn string_of(t: &MpqTree) -> StringRep {
    t.string()
}

/// Builds the MPQ-tree of the interval graph encoded by `s`.
///
/// The string is swept once to obtain the sequence of maximal cliques and
/// the clique span of every vertex. The tree is then built by recursive
/// decomposition of clique ranges: vertices spanning the whole range label
/// the current node; if the rest falls apart into independent blocks the
/// node is a P-node over those blocks, otherwise it is a Q-node whose
/// sections are the maximal proper modules of the range.
pub fn build_mpq(s: &StringRep) -> MpqTree {
    let n = s.n();
    let spans = clique_spans(s);
    let clique_count = spans.iter().map(|c| c.right).max().unwrap_or(0);
    let mut builder = Builder { nodes: Vec::new() };
    let members: Vec<CliqueSpan> = spans;
    let root = builder
        .build(1, clique_count, members)
        .expect("a non-empty string yields a non-empty tree");
    MpqTree::from_parts(n, builder.nodes, root)
}

/// Clique span of a vertex: the run `left..=right` of maximal cliques
/// (1-based, in string order) containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct CliqueSpan {
    pub vertex: Vertex,
    pub left: usize,
    pub right: usize,
}

/// A maximal clique ends wherever a left endpoint is directly followed by a
/// right endpoint.
pub(crate) fn clique_spans(s: &StringRep) -> Vec<CliqueSpan> {
    let n = s.n();
    let tokens = s.tokens();
    let mut out = vec![
        CliqueSpan {
            vertex: 0,
            left: 0,
            right: 0
        };
        n
    ];
    let mut seen = vec![false; n];
    let mut cliques = 0usize;
    let mut prev_left = false;
    for &t in tokens {
        let i = t as usize - 1;
        if !seen[i] {
            seen[i] = true;
            out[i].vertex = t;
            out[i].left = cliques + 1;
            prev_left = true;
        } else {
            if prev_left {
                cliques += 1;
            }
            out[i].right = cliques;
            prev_left = false;
        }
    }
    out
}

struct Builder {
    nodes: Vec<Node>,
}

impl Builder {
    fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    /// Builds the subtree for cliques `lo..=hi`; `members` holds exactly the
    /// vertices whose clique span lies inside the range.
    fn build(&mut self, lo: usize, hi: usize, members: Vec<CliqueSpan>) -> Option<NodeId> {
        if members.is_empty() {
            return None;
        }
        let (universal, rest): (Vec<_>, Vec<_>) = members
            .into_iter()
            .partition(|c| c.left == lo && c.right == hi);
        let mut label: Vec<Vertex> = universal.iter().map(|c| c.vertex).collect();
        label.sort_unstable();

        if rest.is_empty() && lo == hi {
            return Some(self.push(Node::P(PNode {
                vertices: label,
                children: Vec::new(),
            })));
        }

        let blocks = split_blocks(lo, hi, &rest);
        if blocks.len() >= 2 {
            let mut children = Vec::with_capacity(blocks.len());
            let mut rest = rest;
            for (a, b) in blocks {
                let (inside, outside): (Vec<_>, Vec<_>) =
                    rest.into_iter().partition(|c| a <= c.left && c.right <= b);
                rest = outside;
                children.push(
                    self.build(a, b, inside)
                        .expect("every block of a P-node holds a private vertex"),
                );
            }
            return Some(self.push(Node::P(PNode {
                vertices: label,
                children,
            })));
        }

        let q = self.build_q(lo, hi, rest);
        if label.is_empty() {
            Some(q)
        } else {
            Some(self.push(Node::P(PNode {
                vertices: label,
                children: vec![q],
            })))
        }
    }

    /// `members` cover `lo..=hi` as one overlapping chain with no vertex
    /// spanning the whole range.
    fn build_q(&mut self, lo: usize, hi: usize, members: Vec<CliqueSpan>) -> NodeId {
        let sections = maximal_modules(lo, hi, &members);
        debug_assert!(sections.len() >= 3, "{sections:?}");
        let section_of = |clique: usize| -> usize {
            sections
                .iter()
                .position(|&(a, b)| a <= clique && clique <= b)
                .expect("sections partition the range")
                + 1
        };
        let mut spans = Vec::new();
        let mut per_section: Vec<Vec<CliqueSpan>> = vec![Vec::new(); sections.len()];
        for c in members {
            let (l, r) = (section_of(c.left), section_of(c.right));
            if l == r {
                per_section[l - 1].push(c);
            } else {
                spans.push(Span {
                    vertex: c.vertex,
                    left: l,
                    right: r,
                });
            }
        }
        let subtrees = sections
            .iter()
            .zip(per_section)
            .map(|(&(a, b), inside)| self.build(a, b, inside))
            .collect();
        self.push(Node::Q(QNode::new(spans, subtrees)))
    }
}

/// Splits `lo..=hi` into maximal blocks of cliques chained by vertices of
/// `members` crossing consecutive clique boundaries.
fn split_blocks(lo: usize, hi: usize, members: &[CliqueSpan]) -> Vec<(usize, usize)> {
    let mut crossed = vec![false; hi - lo + 1];
    for c in members {
        for i in c.left..c.right {
            crossed[i - lo] = true;
        }
    }
    let mut blocks = Vec::new();
    let mut start = lo;
    for i in lo..=hi {
        if i == hi || !crossed[i - lo] {
            blocks.push((start, i));
            start = i + 1;
        }
    }
    blocks
}

/// Partitions `lo..=hi` into its maximal proper modules: runs of cliques
/// that every member span either contains or avoids or lies inside.
fn maximal_modules(lo: usize, hi: usize, members: &[CliqueSpan]) -> Vec<(usize, usize)> {
    let is_module = |a: usize, b: usize| {
        members.iter().all(|c| {
            c.right < a || c.left > b || (a <= c.left && c.right <= b) || (c.left <= a && b <= c.right)
        })
    };
    let mut out = Vec::new();
    let mut start = lo;
    while start <= hi {
        let mut end = start;
        for b in (start..=hi).rev() {
            if (start, b) != (lo, hi) && is_module(start, b) {
                end = b;
                break;
            }
        }
        out.push((start, end));
        start = end + 1;
    }
    out
}

/// A violated structural property of an MPQ-tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A vertex is missing or stored more than once.
    Placement(Vertex),
    /// A Q-node with fewer than three sections.
    ShortQNode(NodeId),
    /// A Q-node vertex confined to a single section.
    NarrowSpan(NodeId, Vertex),
    /// `V_1` or `V_k` is empty.
    EmptyOuterSubtree(NodeId),
    /// `S_1 ⊂ S_2` or `S_k ⊂ S_{k-1}` fails (strictly).
    OuterNotNested(NodeId),
    /// `S_{i-1} ∩ S_i` is empty.
    DisjointNeighbours(NodeId, usize),
    /// `S_{i-1} = S_i`.
    EqualNeighbours(NodeId, usize),
    /// `(S_i ∩ S_{i+1}) \ S_1` or `(S_{i-1} ∩ S_i) \ S_k` is empty.
    InnerOverlap(NodeId, usize),
    /// `(S_{i-1} ∪ V_{i-1}) \ S_i` or `(S_i ∪ V_i) \ S_{i-1}` is empty.
    NoPrivateVertex(NodeId, usize),
    /// An empty P-node whose parent is an empty P-node.
    NestedEmptyP(NodeId),
    /// A P-node whose only child is a P-node.
    PChainedToP(NodeId),
    /// A P-node child subtree containing no vertices.
    EmptyPChild(NodeId),
}

impl Violation {
    /// The letter of the structural property that is violated, where one
    /// applies.
    pub fn property(&self) -> Option<char> {
        Some(match self {
            Violation::EmptyOuterSubtree(_) => 'a',
            Violation::OuterNotNested(_) => 'b',
            Violation::DisjointNeighbours(..) => 'c',
            Violation::EqualNeighbours(..) => 'd',
            Violation::InnerOverlap(..) => 'e',
            Violation::NoPrivateVertex(..) => 'f',
            Violation::NestedEmptyP(_) => 'g',
            Violation::PChainedToP(_) => 'h',
            Violation::EmptyPChild(_) => 'i',
            _ => return None,
        })
    }
}

fn is_strict_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    a.len() < b.len() && a.iter().all(|v| b.contains(v))
}

fn difference(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|v| !b.contains(v)).collect()
}

fn intersection(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|v| b.contains(v)).collect()
}

/// Checks the structural properties every MPQ-tree produced by
/// [`build_mpq`] satisfies. Returns an empty list for a valid tree.
pub fn validate_mpq(t: &MpqTree) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen = vec![0usize; t.n()];
    for id in t.preorder() {
        match t.node(id) {
            Node::P(p) => {
                for &v in &p.vertices {
                    seen[v as usize - 1] += 1;
                }
                if p.vertices.is_empty() {
                    if let Some(parent) = t.parent(id) {
                        if matches!(t.node(parent), Node::P(pp) if pp.vertices.is_empty()) {
                            out.push(Violation::NestedEmptyP(id));
                        }
                    }
                }
                if p.children.len() == 1 && matches!(t.node(p.children[0]), Node::P(_)) {
                    out.push(Violation::PChainedToP(id));
                }
                for &c in &p.children {
                    if t.subtree_size(c) == 0 {
                        out.push(Violation::EmptyPChild(c));
                    }
                }
            }
            Node::Q(q) => {
                for s in q.spans() {
                    seen[s.vertex as usize - 1] += 1;
                    if s.left >= s.right {
                        out.push(Violation::NarrowSpan(id, s.vertex));
                    }
                }
                validate_q(t, id, q, &mut out);
            }
        }
    }
    for (i, &c) in seen.iter().enumerate() {
        if c != 1 {
            out.push(Violation::Placement(i as Vertex + 1));
        }
    }
    out
}

fn validate_q(t: &MpqTree, id: NodeId, q: &QNode, out: &mut Vec<Violation>) {
    let k = q.k();
    if k < 3 {
        out.push(Violation::ShortQNode(id));
        if k < 2 {
            return;
        }
    }
    let sets: Vec<Vec<Vertex>> = (1..=k).map(|i| q.section_set(i)).collect();
    let sub: Vec<Vec<Vertex>> = (1..=k)
        .map(|i| q.subtree(i).map(|c| t.subtree_vertices(c)).unwrap_or_default())
        .collect();
    let s = |i: usize| &sets[i - 1];
    let v = |i: usize| &sub[i - 1];

    if v(1).is_empty() || v(k).is_empty() {
        out.push(Violation::EmptyOuterSubtree(id));
    }
    if !is_strict_subset(s(1), s(2)) || !is_strict_subset(s(k), s(k - 1)) {
        out.push(Violation::OuterNotNested(id));
    }
    for i in 2..=k {
        if intersection(s(i - 1), s(i)).is_empty() {
            out.push(Violation::DisjointNeighbours(id, i));
        }
        if s(i - 1) == s(i) {
            out.push(Violation::EqualNeighbours(id, i));
        }
        let mut left = s(i - 1).clone();
        left.extend(v(i - 1));
        let mut right = s(i).clone();
        right.extend(v(i));
        if difference(&left, s(i)).is_empty() || difference(&right, s(i - 1)).is_empty() {
            out.push(Violation::NoPrivateVertex(id, i));
        }
    }
    for i in 2..k {
        if difference(&intersection(s(i), s(i + 1)), s(1)).is_empty()
            || difference(&intersection(s(i - 1), s(i)), s(k)).is_empty()
        {
            out.push(Violation::InnerOverlap(id, i));
        }
    }
}

impl fmt::Display for MpqTree {
    /// Indented debug dump, one node per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.dump(f, self.root, 0, None)
    }
}

impl MpqTree {
    fn dump(
        &self,
        f: &mut fmt::Formatter<'_>,
        id: NodeId,
        depth: usize,
        section: Option<usize>,
    ) -> fmt::Result {
        let indent = "  ".repeat(depth);
        let tag = section.map(|s| format!("S{s}: ")).unwrap_or_default();
        match &self.nodes[id] {
            Node::P(p) => {
                let vs: Vec<String> = p.vertices.iter().map(|v| v.to_string()).collect();
                writeln!(f, "{indent}{tag}P{{{}}}", vs.join(","))?;
                for &c in &p.children {
                    self.dump(f, c, depth + 1, None)?;
                }
            }
            Node::Q(q) => {
                write!(f, "{indent}{tag}Q[k={}]", q.k())?;
                let mut spans = q.spans.clone();
                spans.sort_unstable_by_key(|s| s.vertex);
                for s in spans {
                    write!(f, " v={}:({},{})", s.vertex, s.left, s.right)?;
                }
                writeln!(f)?;
                for (i, sec) in q.sections.iter().enumerate() {
                    if let Some(c) = sec.subtree {
                        self.dump(f, c, depth + 1, Some(i + 1))?;
                    }
                }
            }
        }
        Ok(())
    }
}
