#![allow(dead_code)]

use mpqenum_core::{StringRep, Vertex};
use mpqenum_oracle::DenseGraph;
use rand::seq::SliceRandom;
use rand::Rng;

pub const FIG1_INPUT: &str = "1,1,5,3,2,4,4,2,6,3,8,7,7,6,5,13,11,9,9,12,12,11,10,10,13,8";
pub const FIG1_CANONICAL: &str = "1,1,2,3,4,5,5,4,6,3,7,8,8,6,2,9,10,10,11,12,12,13,13,11,9,7";

/// Uniformly shuffled multiset `{1,1,2,2,...,n,n}`.
pub fn random_string<R: Rng>(rng: &mut R, n: usize) -> StringRep {
    let mut tokens: Vec<Vertex> = (1..=n as Vertex).flat_map(|v| [v, v]).collect();
    tokens.shuffle(rng);
    StringRep::new(tokens).unwrap()
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<Vertex> {
    let mut p: Vec<Vertex> = (1..=n as Vertex).collect();
    p.shuffle(rng);
    p
}

pub fn dense(s: &StringRep) -> DenseGraph {
    DenseGraph::from_tokens(s.tokens())
}

/// Every labeled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = DenseGraph> {
    let pairs: Vec<(u32, u32)> = (1..=n as u32)
        .flat_map(|u| (u + 1..=n as u32).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let mut g = DenseGraph::new(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        g
    })
}

/// A string representation of every labeled interval graph on `n` vertices.
pub fn all_interval_strings(n: usize) -> Vec<StringRep> {
    all_graphs(n)
        .filter_map(|g| mpqenum_oracle::interval_model(&g).unwrap())
        .map(|t| StringRep::new(t).unwrap())
        .collect()
}

pub fn long_tests() -> bool {
    std::env::var_os("MPQENUM_LONG_TESTS").is_some()
}
