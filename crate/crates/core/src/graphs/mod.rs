//! Simple undirected graphs, graph6 I/O, named families and BFS distances.

mod distance;
pub mod enumerate;
mod generators;
mod graph6;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::exactmat::IntMatrix;

pub use distance::{distance_structure, Diameter, DistanceStructure};
pub use generators::{generate, parse_generator_spec, Family};
pub use graph6::{parse_graph6, read_graph6_lines, write_graph6, Graph6Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("matrix is not a symmetric 0/1 matrix with zero diagonal")]
    NotAdjacency,
    #[error("unknown graph family '{0}'")]
    UnknownFamily(String),
    #[error("invalid size for {family}: {reason}")]
    InvalidSize { family: String, reason: String },
}

/// Simple undirected graph with bit-packed adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Reads a symmetric 0/1 matrix with zero diagonal.
    pub fn from_adjacency(m: &IntMatrix) -> Result<Self, GraphError> {
        use num_traits::{One, Zero};
        if !m.is_square() || !m.is_symmetric() || !m.is_zero_one() {
            return Err(GraphError::NotAdjacency);
        }
        let n = m.rows();
        let mut g = Self::empty(n);
        for u in 0..n {
            if !m.get(u, u).is_zero() {
                return Err(GraphError::NotAdjacency);
            }
            for v in u + 1..n {
                if m.get(u, v).is_one() {
                    g.set_edge(u, v, true);
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        debug_assert!(u != v && u < self.n && v < self.n);
        for (a, b) in [(u, v), (v, u)] {
            let w = &mut self.bits[a * self.words + b / 64];
            if present {
                *w |= 1 << (b % 64);
            } else {
                *w &= !(1 << (b % 64));
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    /// Number of common neighbours of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |u, v| u8::from(self.has_edge(u, v)))
    }

    /// `A(X^c) = J - I - A(X)`.
    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    /// Relabels so that vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut g = Self::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v], true);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", write_graph6(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicProps {
    pub connected: bool,
    /// The common degree, if every vertex has the same degree.
    pub regular: Option<usize>,
    pub degrees: Vec<usize>,
}

pub fn basic_props(g: &Graph) -> BasicProps {
    let degrees = g.degrees();
    let regular = match degrees.first() {
        Some(&k) if degrees.iter().all(|&d| d == k) => Some(k),
        Some(_) => None,
        None => Some(0),
    };
    BasicProps {
        connected: g.is_connected(),
        regular,
        degrees,
    }
}
