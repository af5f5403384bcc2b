//! Isomorph-free enumeration of small graphs.
//!
//! Graphs on `n` vertices are grown from those on `n - 1` by adding a vertex
//! with every possible neighbourhood, then deduplicated by canonical form.
//! The canonical form is the labeling that maximises the upper-triangle bit
//! string, found by individualization-refinement over equitable partitions.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::Graph;

/// Largest order for which canonical certificates fit in a `u64`.
pub const MAX_CANONICAL_ORDER: usize = 11;

type Cells = Vec<Vec<usize>>;

/// Splits cells by neighbour counts into every cell until stable.
///
/// Subcells are ordered by their count vectors, which depend only on the
/// graph and the incoming cell order, so the result is labeling-invariant.
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    loop {
        let mut changed = false;
        let mut next: Cells = Vec::with_capacity(g.n());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = cells
                        .iter()
                        .map(|c| c.iter().filter(|&&w| g.has_edge(v, w)).count())
                        .collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
            if next.last().map(Vec::len) != Some(cell.len()) {
                changed = true;
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn certificate(g: &Graph, order: &[usize]) -> u64 {
    let mut cert = 0u64;
    for j in 1..order.len() {
        for i in 0..j {
            cert = cert << 1 | u64::from(g.has_edge(order[i], order[j]));
        }
    }
    cert
}

/// `u` and `v` have the same neighbours apart from each other, so swapping
/// them is an automorphism.
fn twins(g: &Graph, u: usize, v: usize) -> bool {
    (0..g.n()).all(|w| w == u || w == v || g.has_edge(u, w) == g.has_edge(v, w))
}

fn search(g: &Graph, cells: Cells, best: &mut Option<(u64, Vec<usize>)>) {
    let cells = refine(g, cells);
    let Some(t) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let cert = certificate(g, &order);
        if best.as_ref().is_none_or(|(b, _)| cert > *b) {
            *best = Some((cert, order));
        }
        return;
    };
    let cell = &cells[t];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        if tried.iter().any(|&u| twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..t]);
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[t + 1..]);
        search(g, next, best);
    }
}

fn canonical_order(g: &Graph) -> (u64, Vec<usize>) {
    assert!(
        g.n() <= MAX_CANONICAL_ORDER,
        "canonical forms are limited to {MAX_CANONICAL_ORDER} vertices"
    );
    if g.n() == 0 {
        return (0, Vec::new());
    }
    let mut best = None;
    search(g, vec![(0..g.n()).collect()], &mut best);
    best.expect("at least one leaf")
}

/// Canonical certificate: equal iff the graphs are isomorphic.
pub fn canonical_certificate(g: &Graph) -> u64 {
    canonical_order(g).0
}

fn from_certificate(n: usize, cert: u64) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if cert >> (total - 1 - k) & 1 == 1 {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    g
}

/// The canonically relabeled copy of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    from_certificate(g.n(), canonical_certificate(g))
}

/// One representative (in canonical form) of every isomorphism class of
/// graphs on `n` vertices, sorted by certificate.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=MAX_CANONICAL_ORDER).contains(&n));
    let mut level: Vec<Graph> = vec![Graph::empty(1)];
    for k in 2..=n {
        let certs: BTreeSet<u64> = level
            .par_iter()
            .flat_map_iter(|g| {
                (0u64..1 << (k - 1)).map(move |mask| {
                    let mut h = Graph::empty(k);
                    for (u, v) in g.edges() {
                        h.set_edge(u, v, true);
                    }
                    for u in 0..k - 1 {
                        if mask >> u & 1 == 1 {
                            h.set_edge(u, k - 1, true);
                        }
                    }
                    canonical_certificate(&h)
                })
            })
            .collect::<Vec<u64>>()
            .into_iter()
            .collect();
        level = certs.into_iter().map(|c| from_certificate(k, c)).collect();
    }
    level
}

/// Connected graphs on `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    nonisomorphic_graphs(n)
        .into_iter()
        .filter(Graph::is_connected)
        .collect()
}
