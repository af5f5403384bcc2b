use std::collections::VecDeque;

use super::Graph;
use crate::exactmat::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Disconnected,
}

impl Diameter {
    pub fn finite(self) -> Option<usize> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Disconnected => None,
        }
    }
}

/// All-pairs shortest path lengths from BFS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceStructure {
    n: usize,
    /// Row-major; `None` for unreachable pairs.
    dist: Vec<Option<usize>>,
    diameter: Diameter,
}

impl DistanceStructure {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diameter(&self) -> Diameter {
        self.diameter
    }

    pub fn is_connected(&self) -> bool {
        self.diameter != Diameter::Disconnected
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.dist[u * self.n + v]
    }

    /// The `k`-th distance matrix: 1 where `d(u, v) = k`.
    pub fn class(&self, k: usize) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |u, v| {
            u8::from(self.distance(u, v) == Some(k))
        })
    }

    /// `A_0, …, A_d` for connected graphs; `None` when disconnected.
    pub fn classes(&self) -> Option<Vec<IntMatrix>> {
        let d = self.diameter.finite()?;
        Some((0..=d).map(|k| self.class(k)).collect())
    }

    /// Number of vertices at distance exactly `k` from `u`.
    pub fn sphere_size(&self, u: usize, k: usize) -> usize {
        (0..self.n)
            .filter(|&v| self.distance(u, v) == Some(k))
            .count()
    }
}

pub fn distance_structure(g: &Graph) -> DistanceStructure {
    let n = g.n();
    let mut dist = vec![None; n * n];
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let du = row[u].expect("queued vertices are reached");
            for v in g.neighbors(u) {
                if row[v].is_none() {
                    row[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
    }
    let diameter = if dist.iter().any(Option::is_none) {
        Diameter::Disconnected
    } else {
        Diameter::Finite(dist.iter().flatten().copied().max().unwrap_or(0))
    };
    DistanceStructure { n, dist, diameter }
}
