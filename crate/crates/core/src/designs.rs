//! Block designs built from graphs, and their PBIBD parameters relative to
//! a pattern polynomial graph.
//!
//! Three constructions are provided for a graph `Y`:
//! `D1` has the edges as blocks, so `NNᵀ = D + A(Y)`;
//! `D2` has the open neighbourhoods, with incidence matrix `A(Y)`;
//! `D3` has the closed neighbourhoods, with incidence matrix `I + A(Y)`.
//! A design is obtained from `X` when `NNᵀ ∈ 𝒜(X)`, and the coefficients
//! of `NNᵀ` on the pattern matrices of `X` are then the concurrence counts.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::exactmat::{combine, solve_in_span, IntMatrix};
use crate::graphs::{distance_structure, Graph};
use crate::pattern::pattern_basis;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    v: usize,
    /// Sorted point lists; repeated blocks are kept.
    blocks: Vec<Vec<usize>>,
    incidence: IntMatrix,
}

impl Design {
    /// Builds the design and its `v × b` incidence matrix.
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Self {
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
            b.dedup();
            assert!(b.iter().all(|&p| p < v), "block point out of range");
        }
        let mut incidence = IntMatrix::zeros(v, blocks.len());
        for (j, block) in blocks.iter().enumerate() {
            for &p in block {
                incidence.set(p, j, 1);
            }
        }
        Design {
            v,
            blocks,
            incidence,
        }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn incidence(&self) -> &IntMatrix {
        &self.incidence
    }

    /// Number of blocks through each point.
    pub fn replications(&self) -> Vec<usize> {
        let mut r = vec![0; self.v];
        for block in &self.blocks {
            for &p in block {
                r[p] += 1;
            }
        }
        r
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn replication_number(&self) -> Uniform {
        Uniform::of(&self.replications())
    }

    pub fn block_size(&self) -> Uniform {
        Uniform::of(&self.block_sizes())
    }

    /// `N Nᵀ`: entry `(p, q)` counts blocks containing both points.
    pub fn gram(&self) -> IntMatrix {
        self.incidence
            .matmul(&self.incidence.transpose())
            .expect("v × b times b × v")
    }

    /// Number of blocks containing both `p` and `q`, by scanning the blocks.
    pub fn concurrence(&self, p: usize, q: usize) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.binary_search(&p).is_ok() && b.binary_search(&q).is_ok())
            .count()
    }
}

/// A count that is either the same everywhere or not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniform {
    Constant(usize),
    Varies,
}

impl Uniform {
    fn of(values: &[usize]) -> Self {
        match values.split_first() {
            Some((&first, rest)) if rest.iter().all(|&x| x == first) => Uniform::Constant(first),
            Some(_) => Uniform::Varies,
            None => Uniform::Constant(0),
        }
    }

    pub fn constant(self) -> Option<usize> {
        match self {
            Uniform::Constant(k) => Some(k),
            Uniform::Varies => None,
        }
    }
}

impl fmt::Display for Uniform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Uniform::Constant(k) => write!(f, "{k}"),
            Uniform::Varies => f.write_str("varies"),
        }
    }
}

impl Serialize for Uniform {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Uniform::Constant(k) => s.serialize_u64(*k as u64),
            Uniform::Varies => s.serialize_str("varies"),
        }
    }
}

/// Blocks are the edges. Requires at least one edge.
pub fn edge_design(y: &Graph) -> Result<Design> {
    if y.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    let d = Design::new(y.n(), y.edges().map(|(u, v)| vec![u, v]).collect());
    let expected = IntMatrix::from_fn(y.n(), y.n(), |p, q| {
        if p == q {
            y.degree(p)
        } else {
            usize::from(y.has_edge(p, q))
        }
    });
    if d.gram() != expected {
        return Err(Error::Inconsistent(
            "edge design: N Nᵀ differs from D + A".into(),
        ));
    }
    Ok(d)
}

/// Blocks are the neighbourhoods `N(v)`, or `N(v) ∪ {v}` when `closed`.
/// Block `j` belongs to vertex `j`. The open variant rejects isolated
/// vertices, which would give empty blocks.
pub fn neighborhood_design(y: &Graph, closed: bool) -> Result<Design> {
    if !closed {
        if let Some(v) = (0..y.n()).find(|&v| y.degree(v) == 0) {
            return Err(Error::IsolatedVertex(v));
        }
    }
    let blocks = (0..y.n())
        .map(|v| {
            let mut b: Vec<usize> = y.neighbors(v).collect();
            if closed {
                b.push(v);
            }
            b
        })
        .collect();
    Ok(Design::new(y.n(), blocks))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociateClass {
    /// Pattern class index in `X`.
    pub class: usize,
    pub description: String,
    pub lambda: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PbibdParameters {
    pub v: usize,
    pub b: usize,
    pub r1: Uniform,
    pub k1: Uniform,
    /// One entry per non-identity pattern class of `X`, in class order.
    pub lambda: Vec<AssociateClass>,
    /// Coefficient of `I` in `N Nᵀ`.
    pub diag_coefficient: u64,
    /// Every pair's block count matched its class's `λ`, counted directly.
    pub verified: bool,
}

impl PbibdParameters {
    pub fn lambdas(&self) -> Vec<u64> {
        self.lambda.iter().map(|c| c.lambda).collect()
    }
}

fn nonnegative_integer(c: &num_rational::BigRational) -> Result<u64> {
    if !c.is_integer() {
        return Err(Error::Inconsistent(format!("non-integral coefficient {c}")));
    }
    c.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Inconsistent(format!("negative coefficient {c}")))
}

/// Expands `N Nᵀ` over the pattern matrices of `x`. `None` when `N Nᵀ` is
/// not in `𝒜(X)`.
pub fn pbibd_parameters(d: &Design, x: &Graph) -> Result<Option<PbibdParameters>> {
    if d.v() != x.n() {
        return Err(Error::VertexCountMismatch {
            left: d.v(),
            right: x.n(),
        });
    }
    let basis = pattern_basis(x);
    if !basis.is_pattern_polynomial() {
        return Err(Error::NotPatternPolynomial {
            ell: basis.ell(),
            r: basis.r(),
        });
    }
    let gram = d.gram();
    let mats = basis.matrices();
    let Some(coeffs) = solve_in_span(&mats, &gram)? else {
        return Ok(None);
    };
    let (numer, denom) = combine(&mats, &coeffs);
    if numer != gram.scale(&denom) {
        return Err(Error::Inconsistent(
            "N Nᵀ does not recombine from its expansion".into(),
        ));
    }

    let dist = distance_structure(x);
    let mut diag_coefficient = 0;
    let mut lambda = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        let value = nonnegative_integer(c)?;
        if basis.is_diagonal_class(i) {
            diag_coefficient = value;
            continue;
        }
        lambda.push(AssociateClass {
            class: i,
            description: describe_class(x, &basis, &dist, i),
            lambda: value,
        });
    }

    let verified = (0..x.n()).all(|p| {
        (0..x.n()).all(|q| {
            let count = d.concurrence(p, q) as u64;
            let class = basis.class_of(p, q);
            let want = if basis.is_diagonal_class(class) {
                diag_coefficient
            } else {
                lambda
                    .iter()
                    .find(|a| a.class == class)
                    .expect("listed")
                    .lambda
            };
            count == want
        })
    });

    Ok(Some(PbibdParameters {
        v: d.v(),
        b: d.b(),
        r1: d.replication_number(),
        k1: d.block_size(),
        lambda,
        diag_coefficient,
        verified,
    }))
}

/// "distance-k class" when the class is the whole distance-k relation,
/// otherwise the distance and the class index.
fn describe_class(
    x: &Graph,
    basis: &crate::pattern::PatternBasis,
    dist: &crate::graphs::DistanceStructure,
    i: usize,
) -> String {
    let n = x.n();
    let positions: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .filter(|&(s, t)| basis.class_of(s, t) == i)
        .collect();
    let (s, t) = positions[0];
    let Some(k) = dist.distance(s, t) else {
        return format!("class {i}");
    };
    let whole = positions
        .iter()
        .all(|&(s, t)| dist.distance(s, t) == Some(k))
        && (0..n).map(|s| dist.sphere_size(s, k)).sum::<usize>() == positions.len();
    if whole {
        format!("distance-{k} class")
    } else {
        format!("class {i} (distance {k})")
    }
}

/// Which of the three constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DesignKind {
    Edges,
    OpenNeighborhoods,
    ClosedNeighborhoods,
}

impl DesignKind {
    pub const ALL: [DesignKind; 3] = [
        DesignKind::Edges,
        DesignKind::OpenNeighborhoods,
        DesignKind::ClosedNeighborhoods,
    ];

    pub fn build(self, y: &Graph) -> Result<Design> {
        match self {
            DesignKind::Edges => edge_design(y),
            DesignKind::OpenNeighborhoods => neighborhood_design(y, false),
            DesignKind::ClosedNeighborhoods => neighborhood_design(y, true),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DesignKind::Edges => "d1",
            DesignKind::OpenNeighborhoods => "d2",
            DesignKind::ClosedNeighborhoods => "d3",
        }
    }
}

/// `Σ |block| = Σ replication`.
pub fn incidences_balance(d: &Design) -> bool {
    d.block_sizes().iter().sum::<usize>() == d.replications().iter().sum::<usize>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::enumerate::nonisomorphic_graphs;
    use crate::graphs::{generate, Family};
    use crate::polyenum::enumerate_polynomial_graphs;
    use num_bigint::BigInt;

    fn gen(f: Family) -> Graph {
        generate(f).unwrap()
    }

    fn with_diagonal(a: &IntMatrix, diag: impl Fn(usize) -> usize) -> IntMatrix {
        IntMatrix::from_fn(a.rows(), a.cols(), |p, q| {
            if p == q {
                BigInt::from(diag(p))
            } else {
                a.get(p, q).clone()
            }
        })
    }

    #[test]
    fn edge_designs() {
        let k3 = gen(Family::Complete(3));
        let d = edge_design(&k3).unwrap();
        assert_eq!((d.v(), d.b()), (3, 3));
        assert!(d.block_sizes().iter().all(|&s| s == 2));
        assert_eq!(d.gram(), with_diagonal(&k3.adjacency_matrix(), |_| 2));

        let p = gen(Family::Petersen);
        let d = edge_design(&p).unwrap();
        assert_eq!((d.v(), d.b()), (10, 15));
        assert_eq!(d.gram(), with_diagonal(&p.adjacency_matrix(), |_| 3));

        let c6 = gen(Family::Cycle(6));
        let d = edge_design(&c6).unwrap();
        assert_eq!((d.v(), d.b()), (6, 6));
        assert_eq!(edge_design(&Graph::empty(4)), Err(Error::Edgeless));
    }

    #[test]
    fn neighborhood_designs() {
        let p = gen(Family::Petersen);
        let open = neighborhood_design(&p, false).unwrap();
        assert_eq!((open.v(), open.b()), (10, 10));
        assert_eq!(open.replication_number(), Uniform::Constant(3));
        assert_eq!(open.block_size(), Uniform::Constant(3));
        assert_eq!(open.incidence(), &p.adjacency_matrix());

        let closed = neighborhood_design(&p, true).unwrap();
        assert_eq!(closed.replication_number(), Uniform::Constant(4));
        assert_eq!(closed.block_size(), Uniform::Constant(4));

        let k4 = neighborhood_design(&gen(Family::Complete(4)), true).unwrap();
        assert!(k4.blocks().iter().all(|b| b == &vec![0, 1, 2, 3]));

        let star = Graph::from_edges(4, [(0, 1), (0, 2)]).unwrap();
        assert_eq!(
            neighborhood_design(&star, false),
            Err(Error::IsolatedVertex(3))
        );
        assert_eq!(
            neighborhood_design(&star, true).unwrap().block_size(),
            Uniform::Varies
        );
    }

    #[test]
    fn petersen_parameters() {
        let p = gen(Family::Petersen);
        let cases = [
            (DesignKind::Edges, (10, 15, 3, 2), 3, vec![1, 0]),
            (DesignKind::OpenNeighborhoods, (10, 10, 3, 3), 3, vec![0, 1]),
            (
                DesignKind::ClosedNeighborhoods,
                (10, 10, 4, 4),
                4,
                vec![2, 1],
            ),
        ];
        for (kind, (v, b, r1, k1), diag, lambda) in cases {
            let params = pbibd_parameters(&kind.build(&p).unwrap(), &p)
                .unwrap()
                .unwrap();
            assert_eq!((params.v, params.b), (v, b), "{kind:?}");
            assert_eq!(params.r1, Uniform::Constant(r1));
            assert_eq!(params.k1, Uniform::Constant(k1));
            assert_eq!(params.diag_coefficient, diag);
            assert_eq!(params.lambdas(), lambda);
            assert!(params.verified);
            let names: Vec<&str> = params
                .lambda
                .iter()
                .map(|c| c.description.as_str())
                .collect();
            assert_eq!(names, ["distance-1 class", "distance-2 class"]);
        }
    }

    #[test]
    fn outside_the_algebra() {
        let p = gen(Family::Petersen);
        let c10 = gen(Family::Cycle(10));
        assert_eq!(
            pbibd_parameters(&edge_design(&c10).unwrap(), &p).unwrap(),
            None
        );
        assert!(matches!(
            pbibd_parameters(&edge_design(&c10).unwrap(), &gen(Family::Path(10))),
            Err(Error::NotPatternPolynomial { .. })
        ));
        assert!(matches!(
            pbibd_parameters(&edge_design(&gen(Family::Cycle(4))).unwrap(), &p),
            Err(Error::VertexCountMismatch { .. })
        ));
    }

    #[test]
    fn prism_splits_adjacency() {
        let prism = gen(Family::Cycle(6)).complement();
        let params = pbibd_parameters(&neighborhood_design(&prism, true).unwrap(), &prism)
            .unwrap()
            .unwrap();
        assert!(params.verified);
        assert_eq!(params.lambda.len(), 3);
        assert!(params
            .lambda
            .iter()
            .all(|c| c.description.starts_with("class ") || c.description == "distance-2 class"));
    }

    #[test]
    fn every_polynomial_graph_gives_pbibds_n_le_6() {
        for n in 2..=6 {
            for x in nonisomorphic_graphs(n) {
                let Ok(ys) = enumerate_polynomial_graphs(&x) else {
                    continue;
                };
                for y in ys.filter(|y| y.graph.edge_count() > 0) {
                    for kind in DesignKind::ALL {
                        let d = kind.build(&y.graph).unwrap();
                        assert!(incidences_balance(&d));
                        let r1 = d.replication_number().constant().unwrap();
                        let k1 = d.block_size().constant().unwrap();
                        assert_eq!(r1 * d.v(), k1 * d.b());
                        let params = pbibd_parameters(&d, &x).unwrap();
                        assert!(
                            params.is_some_and(|p| p.verified),
                            "{x:?} {:?} {kind:?}",
                            y.graph
                        );
                    }
                }
            }
        }
    }
}
