//! String representations of interval graphs.
//!
//! A string representation is a sequence of length `2n` in which every vertex
//! id `1..=n` occurs exactly twice. Vertex `x` is the interval spanning the
//! positions of its two occurrences, so two vertices are adjacent iff those
//! position intervals intersect.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Vertex identifier. Ids are 1-based.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StringError {
    #[error("string has odd length {0}")]
    BadLength(usize),
    #[error("vertex {0} does not occur exactly twice")]
    BadMultiplicity(Vertex),
    #[error("vertex id {0} is outside 1..=n")]
    BadAlphabet(Vertex),
    #[error("cannot parse token {0:?}")]
    BadToken(String),
}

/// A validated string representation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StringRep {
    tokens: Vec<Vertex>,
}

impl StringRep {
    /// Validates a raw token sequence.
    pub fn new(tokens: Vec<Vertex>) -> Result<Self, StringError> {
        if tokens.is_empty() || !tokens.len().is_multiple_of(2) {
            return Err(StringError::BadLength(tokens.len()));
        }
        let n = tokens.len() / 2;
        let mut count = vec![0u8; n + 1];
        for &t in &tokens {
            if t == 0 || t as usize > n {
                return Err(StringError::BadAlphabet(t));
            }
            count[t as usize] = count[t as usize].saturating_add(1);
        }
        if let Some(v) = (1..=n).find(|&v| count[v] != 2) {
            return Err(StringError::BadMultiplicity(v as Vertex));
        }
        Ok(StringRep { tokens })
    }

    pub(crate) fn new_unchecked(tokens: Vec<Vertex>) -> Self {
        debug_assert!(StringRep::new(tokens.clone()).is_ok(), "{tokens:?}");
        StringRep { tokens }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.tokens.len() / 2
    }

    pub fn tokens(&self) -> &[Vertex] {
        &self.tokens
    }

    pub fn into_tokens(self) -> Vec<Vertex> {
        self.tokens
    }

    /// Positions `(first, second)` of every vertex, indexed by `v - 1`.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        positions_of(&self.tokens, self.n())
    }

    pub fn graph(&self) -> Graph {
        graph_of(self)
    }

    /// Applies the vertex map `sigma` (indexed by `v - 1`) to every token.
    pub fn relabel(&self, sigma: &[Vertex]) -> StringRep {
        assert_eq!(sigma.len(), self.n());
        StringRep::new_unchecked(self.tokens.iter().map(|&t| sigma[t as usize - 1]).collect())
    }
}

impl fmt::Display for StringRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.tokens)
    }
}

impl FromStr for StringRep {
    type Err = StringError;

    /// Parses the comma separated line format, e.g. `1,2,2,1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens = s
            .trim()
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<Vertex>()
                    .map_err(|_| StringError::BadToken(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        StringRep::new(tokens)
    }
}

pub(crate) fn write_tokens(f: &mut fmt::Formatter<'_>, tokens: &[Vertex]) -> fmt::Result {
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

pub(crate) fn positions_of(tokens: &[Vertex], n: usize) -> Vec<(usize, usize)> {
    let mut pos = vec![(usize::MAX, usize::MAX); n];
    for (i, &t) in tokens.iter().enumerate() {
        let p = &mut pos[t as usize - 1];
        if p.0 == usize::MAX {
            p.0 = i;
        } else {
            p.1 = i;
        }
    }
    pos
}

/// Shorthand for [`StringRep::new`].
pub fn validate(tokens: Vec<Vertex>) -> Result<StringRep, StringError> {
    StringRep::new(tokens)
}

/// Simple undirected graph on vertices `1..=n`, stored as a dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..=n as Vertex {
            for v in u + 1..=n as Vertex {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, u: Vertex, v: Vertex) -> usize {
        (u as usize - 1) * self.n + (v as usize - 1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.adj[self.idx(u, v)]
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        assert_ne!(u, v, "self-loops are not allowed");
        let (a, b) = (self.idx(u, v), self.idx(v, u));
        self.adj[a] = true;
        self.adj[b] = true;
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        let (a, b) = (self.idx(u, v), self.idx(v, u));
        self.adj[a] = false;
        self.adj[b] = false;
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.n as Vertex;
        let mut out = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (1..=self.n as Vertex).filter(move |&v| self.has_edge(u, v))
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.neighbors(u).count()
    }
}

/// Interval graph encoded by a string representation.
pub fn graph_of(s: &StringRep) -> Graph {
    let n = s.n();
    let mut g = Graph::empty(n);
    let mut open: Vec<Vertex> = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for &t in s.tokens() {
        let i = t as usize - 1;
        if !seen[i] {
            seen[i] = true;
            for &u in &open {
                g.add_edge(u, t);
            }
            open.push(t);
        } else {
            open.retain(|&u| u != t);
        }
    }
    g
}

/// Relabels a token sequence by order of first occurrence.
///
/// The result is the lexicographically smallest sequence among all
/// relabelings: the first position where two relabelings differ is the
/// first occurrence of some vertex, which can receive no smaller label than
/// the number of distinct vertices seen so far plus one.
pub fn normalize_tokens(tokens: &[Vertex]) -> Vec<Vertex> {
    let max = tokens.iter().copied().max().unwrap_or(0) as usize;
    let mut label = vec![0 as Vertex; max + 1];
    let mut next = 0;
    tokens
        .iter()
        .map(|&t| {
            let l = &mut label[t as usize];
            if *l == 0 {
                next += 1;
                *l = next;
            }
            *l
        })
        .collect()
}

pub fn normalize_labels(s: &StringRep) -> StringRep {
    StringRep::new_unchecked(normalize_tokens(s.tokens()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndpointKind {
    Left,
    Right,
}

/// Endpoint sequence: the string with every occurrence tagged as the left
/// (first) or right (second) endpoint of its vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointSeq(pub Vec<(Vertex, EndpointKind)>);

pub fn endpoints_of(s: &StringRep) -> EndpointSeq {
    let mut seen = vec![false; s.n()];
    EndpointSeq(
        s.tokens()
            .iter()
            .map(|&t| {
                let first = !std::mem::replace(&mut seen[t as usize - 1], true);
                let kind = if first {
                    EndpointKind::Left
                } else {
                    EndpointKind::Right
                };
                (t, kind)
            })
            .collect(),
    )
}
