//! Graphs whose adjacency matrix is a polynomial in that of a pattern
//! polynomial graph.
//!
//! If `X` is pattern polynomial then `𝒜(X)` is spanned by the 0/1 pattern
//! matrices, so a graph `Y` on the same vertices has `A(Y) ∈ 𝒜(X)` exactly
//! when `A(Y)` is a sum of non-identity pattern matrices. There are
//! `2^(r-1)` such graphs.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exactmat::{charpoly, poly_gcd, solve_in_span, IntMatrix, RatPoly};
use crate::graphs::Graph;
use crate::pattern::{express_pattern_in_powers, pattern_basis, PatternBasis};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialGraph {
    /// Pattern class indices whose matrices sum to `A(Y)`, increasing.
    pub subset: Vec<usize>,
    pub graph: Graph,
    /// `p_Y` with `p_Y(A(X)) = A(Y)` and `deg p_Y < ℓ`.
    pub representor: RatPoly,
}

/// Lazy enumeration in binary-counter order: bit `b` of the counter selects
/// the `b`-th non-identity class.
pub struct PolynomialGraphs {
    basis: PatternBasis,
    classes: Vec<usize>,
    class_polys: Vec<RatPoly>,
    next: u64,
}

impl PolynomialGraphs {
    pub fn basis(&self) -> &PatternBasis {
        &self.basis
    }

    /// The non-identity classes, in the order their bits are assigned.
    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn total(&self) -> u64 {
        1 << self.classes.len()
    }

    fn build(&self, mask: u64) -> PolynomialGraph {
        let subset: Vec<usize> = self
            .classes
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        let n = self.basis.n();
        let mut graph = Graph::empty(n);
        for s in 0..n {
            for t in s + 1..n {
                if subset.contains(&self.basis.class_of(s, t)) {
                    graph.set_edge(s, t, true);
                }
            }
        }
        let representor = self
            .classes
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .fold(RatPoly::zero(), |acc, (b, _)| &acc + &self.class_polys[b]);
        PolynomialGraph {
            subset,
            graph,
            representor,
        }
    }
}

impl Iterator for PolynomialGraphs {
    type Item = PolynomialGraph;

    fn next(&mut self) -> Option<PolynomialGraph> {
        if self.next >= self.total() {
            return None;
        }
        let item = self.build(self.next);
        self.next += 1;
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total() - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for PolynomialGraphs {}

/// All graphs polynomial in `g`, starting with the empty graph and ending
/// with the complete graph.
pub fn enumerate_polynomial_graphs(g: &Graph) -> Result<PolynomialGraphs> {
    let basis = pattern_basis(g);
    if !basis.is_pattern_polynomial() {
        return Err(Error::NotPatternPolynomial {
            ell: basis.ell(),
            r: basis.r(),
        });
    }
    // Walk-regularity puts the whole diagonal in one class.
    let classes: Vec<usize> = (0..basis.r())
        .filter(|&i| !basis.is_diagonal_class(i))
        .collect();
    assert_eq!(
        classes.len() + 1,
        basis.r(),
        "diagonal splits in a pattern polynomial graph"
    );
    let class_polys = classes
        .iter()
        .map(|&i| express_pattern_in_powers(&basis, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolynomialGraphs {
        basis,
        classes,
        class_polys,
        next: 0,
    })
}

/// The `p_Y` of degree `< ℓ` with `p_Y(A(X)) = A(Y)`, or `None` when `A(Y)`
/// is outside `𝒜(X)`. `x` need not be pattern polynomial.
pub fn representor_polynomial(x: &Graph, y: &Graph) -> Result<Option<RatPoly>> {
    if x.n() != y.n() {
        return Err(Error::VertexCountMismatch {
            left: x.n(),
            right: y.n(),
        });
    }
    let basis = pattern_basis(x);
    Ok(solve_in_span(basis.powers(), &y.adjacency_matrix())?.map(RatPoly::new))
}

/// `det M = 0`, from the constant term of the characteristic polynomial.
pub fn is_singular_matrix(m: &IntMatrix) -> Result<bool> {
    Ok(charpoly(m)?.coeff(0) == BigRational::from_integer(BigInt::from(0)))
}

/// `A(Y)` is singular iff `p_Y` shares a root with the minimal polynomial of
/// `A(X)`. The gcd verdict is compared with the determinant.
pub fn is_singular_polynomial_graph(x: &Graph, y: &Graph) -> Result<bool> {
    let p_y = representor_polynomial(x, y)?.ok_or(Error::NotPolynomial)?;
    let minimal = pattern_basis(x).minimal_polynomial().clone();
    let by_gcd = gcd_singular(&minimal, &p_y)?;
    let by_det = is_singular_matrix(&y.adjacency_matrix())?;
    if by_gcd != by_det {
        return Err(Error::Inconsistent(format!(
            "singularity of {y:?} over {x:?}: gcd says {by_gcd}, determinant says {by_det}"
        )));
    }
    Ok(by_gcd)
}

/// `deg gcd(minimal, p_y) ≥ 1`, with `gcd(minimal, 0) = minimal`.
pub fn gcd_singular(minimal: &RatPoly, p_y: &RatPoly) -> Result<bool> {
    Ok(poly_gcd(minimal, p_y)?.degree().is_some_and(|d| d >= 1))
}

/// Eigenvalues of `A(Y)` as images `(θ, p_Y(θ))` of the eigenvalues `θ` of
/// `A(X)`. Only given when the minimal polynomial of `A(X)` splits over ℚ;
/// its rational roots are then integers.
pub fn spectrum_images(basis: &PatternBasis, p_y: &RatPoly) -> Option<Vec<(BigInt, BigRational)>> {
    let roots = basis.minimal_polynomial().integer_roots();
    if roots.len() != basis.ell() {
        return None;
    }
    Some(
        roots
            .into_iter()
            .map(|t| {
                let image = p_y.eval(&BigRational::from_integer(t.clone()));
                (t, image)
            })
            .collect(),
    )
}
