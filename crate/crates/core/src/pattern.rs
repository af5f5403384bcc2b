//! Pattern matrices and the pattern polynomial test.
//!
//! Write `B(y) = y_0 I + y_1 A + … + y_(ℓ-1) A^(ℓ-1)`. Each entry of `B(y)` is
//! a linear form in `y`, determined by the tuple of entries
//! `((A^0)_st, …, (A^(ℓ-1))_st)`. Positions with equal tuples form a pattern
//! class; their 0/1 indicator matrices span `ℒ(X)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::exactmat::{minimal_polynomial_symmetric, solve_in_span, IntMatrix, RatPoly};
use crate::graphs::Graph;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct PatternBasis {
    n: usize,
    minimal_polynomial: RatPoly,
    /// `I, A, …, A^(ℓ-1)`.
    powers: Vec<IntMatrix>,
    /// Row-major position → class index.
    class_of: Vec<usize>,
    fingerprints: Vec<Vec<BigInt>>,
    sizes: Vec<usize>,
}

impl PatternBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the adjacency algebra.
    pub fn ell(&self) -> usize {
        self.powers.len()
    }

    /// Number of pattern classes.
    pub fn r(&self) -> usize {
        self.fingerprints.len()
    }

    pub fn is_pattern_polynomial(&self) -> bool {
        self.ell() == self.r()
    }

    pub fn minimal_polynomial(&self) -> &RatPoly {
        &self.minimal_polynomial
    }

    pub fn powers(&self) -> &[IntMatrix] {
        &self.powers
    }

    pub fn adjacency(&self) -> &IntMatrix {
        self.powers.get(1).unwrap_or(&self.powers[0])
    }

    pub fn class_of(&self, s: usize, t: usize) -> usize {
        self.class_of[s * self.n + t]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    /// `((A^0)_st, …, (A^(ℓ-1))_st)` shared by the positions of class `i`.
    pub fn fingerprint(&self, i: usize) -> &[BigInt] {
        &self.fingerprints[i]
    }

    /// Number of positions in class `i`.
    pub fn class_size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    pub fn is_diagonal_class(&self, i: usize) -> bool {
        self.fingerprints[i][0].is_one()
    }

    /// 0/1 indicator matrix `P_i`.
    pub fn matrix(&self, i: usize) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |s, t| u8::from(self.class_of(s, t) == i))
    }

    pub fn matrices(&self) -> Vec<IntMatrix> {
        (0..self.r()).map(|i| self.matrix(i)).collect()
    }

    /// The classes whose union is `A` itself, if `A` is a union of classes.
    ///
    /// Since the `A`-coordinate of every fingerprint is the adjacency entry,
    /// this is exactly the set of classes with that coordinate equal to 1.
    pub fn adjacency_classes(&self) -> Vec<usize> {
        if self.ell() < 2 {
            return Vec::new();
        }
        (0..self.r())
            .filter(|&i| self.fingerprints[i][1].is_one())
            .collect()
    }

    /// The unique `q` of degree `< ℓ` with `q(A) = P_i`, when `P_i ∈ 𝒜(X)`.
    pub fn class_polynomial(&self, i: usize) -> Result<Option<RatPoly>> {
        if i >= self.r() {
            return Err(Error::ClassOutOfRange {
                index: i,
                r: self.r(),
            });
        }
        Ok(solve_in_span(&self.powers, &self.matrix(i))?.map(RatPoly::new))
    }
}

/// `ℓ = deg` of the minimal polynomial of `A(X)`.
pub fn adjacency_algebra_dim(g: &Graph) -> usize {
    minimal_polynomial_symmetric(&g.adjacency_matrix())
        .expect("adjacency matrices are square")
        .degree()
        .expect("minimal polynomial is nonzero")
}

/// Builds the pattern classes of `g`.
///
/// Classes are numbered by first occurrence in a row-major scan, so the
/// class of `(0, 0)`, which holds the identity when `I` is a single class,
/// comes first.
pub fn pattern_basis(g: &Graph) -> PatternBasis {
    let n = g.n();
    let a = g.adjacency_matrix();
    let minimal_polynomial =
        minimal_polynomial_symmetric(&a).expect("adjacency matrices are square");
    let ell = minimal_polynomial.degree().expect("nonzero");
    let powers = a.powers(ell).expect("square");

    let mut index: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let mut fingerprints: Vec<Vec<BigInt>> = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();
    let mut class_of = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            let fp: Vec<BigInt> = powers.iter().map(|p| p.get(s, t).clone()).collect();
            let next = fingerprints.len();
            let c = *index.entry(fp.clone()).or_insert(next);
            if c == next {
                fingerprints.push(fp);
                sizes.push(0);
            }
            sizes[c] += 1;
            class_of.push(c);
        }
    }
    PatternBasis {
        n,
        minimal_polynomial,
        powers,
        class_of,
        fingerprints,
        sizes,
    }
}

/// True iff `ℓ = r`.
///
/// When the counts agree, every pattern matrix is also expanded in
/// `I, A, …, A^(ℓ-1)` by exact solve; a failed expansion would contradict
/// the `ℓ = r` criterion and panics.
pub fn is_pattern_polynomial(g: &Graph) -> bool {
    let basis = pattern_basis(g);
    if !basis.is_pattern_polynomial() {
        return false;
    }
    for i in 0..basis.r() {
        let q = basis.class_polynomial(i).expect("index in range");
        assert!(
            q.is_some(),
            "ell = r but pattern class {i} of {g:?} is not in the adjacency algebra"
        );
    }
    true
}

/// The polynomial `q_i` with `q_i(A) = P_i`; requires a pattern polynomial graph.
pub fn express_pattern_in_powers(basis: &PatternBasis, i: usize) -> Result<RatPoly> {
    if !basis.is_pattern_polynomial() {
        return Err(Error::NotPatternPolynomial {
            ell: basis.ell(),
            r: basis.r(),
        });
    }
    basis.class_polynomial(i)?.ok_or_else(|| {
        Error::Inconsistent(format!(
            "pattern class {i} lies outside the adjacency algebra"
        ))
    })
}

/// Checks the structural invariants of a pattern basis; returns a description
/// of the first violation.
pub fn check_basis_invariants(basis: &PatternBasis) -> std::result::Result<(), String> {
    let n = basis.n();
    let mats = basis.matrices();
    let mut sum = IntMatrix::zeros(n, n);
    for (i, p) in mats.iter().enumerate() {
        if !p.is_symmetric() {
            return Err(format!("P_{i} is not symmetric"));
        }
        let diag = (0..n).filter(|&s| p.get(s, s).is_one()).count();
        let total = basis.class_size(i);
        if diag != 0 && diag != total {
            return Err(format!("P_{i} mixes diagonal and off-diagonal positions"));
        }
        sum = sum.add(p).map_err(|e| e.to_string())?;
        for q in &mats[i + 1..] {
            if !p.hadamard(q).map_err(|e| e.to_string())?.is_zero() {
                return Err(format!("P_{i} overlaps a later class"));
            }
        }
    }
    if sum != IntMatrix::ones(n) {
        return Err("pattern classes do not sum to J".into());
    }
    if basis.ell() > basis.r() {
        return Err(format!("ell = {} exceeds r = {}", basis.ell(), basis.r()));
    }
    // each power is the fingerprint-weighted sum of the classes
    for (k, power) in basis.powers().iter().enumerate() {
        let rebuilt = IntMatrix::from_fn(n, n, |s, t| {
            basis.fingerprint(basis.class_of(s, t))[k].clone()
        });
        if &rebuilt != power {
            return Err(format!("A^{k} is not recovered from the fingerprints"));
        }
    }
    if n > 0 && !basis.is_diagonal_class(0) {
        return Err("class of (0, 0) is not diagonal".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, Family};
    use num_rational::BigRational;

    /// Oracle: partition positions by the i64 tuple of entries of A^0..A^(k-1)
    /// with k = number of distinct (floating) eigenvalues computed from a
    /// dense power sequence rank. Independent of the BigInt code path.
    fn oracle_partition(g: &Graph, k: usize) -> Vec<usize> {
        let n = g.n();
        let a: Vec<Vec<i64>> = (0..n)
            .map(|u| (0..n).map(|v| i64::from(g.has_edge(u, v))).collect())
            .collect();
        let mut pow: Vec<Vec<Vec<i64>>> = vec![(0..n)
            .map(|u| (0..n).map(|v| i64::from(u == v)).collect())
            .collect()];
        for _ in 1..k {
            let last = pow.last().unwrap();
            let next = (0..n)
                .map(|u| {
                    (0..n)
                        .map(|v| (0..n).map(|w| last[u][w] * a[w][v]).sum())
                        .collect()
                })
                .collect();
            pow.push(next);
        }
        let mut seen: Vec<Vec<i64>> = Vec::new();
        let mut out = Vec::new();
        for s in 0..n {
            for t in 0..n {
                let fp: Vec<i64> = pow.iter().map(|p| p[s][t]).collect();
                let idx = seen.iter().position(|x| *x == fp).unwrap_or_else(|| {
                    seen.push(fp.clone());
                    seen.len() - 1
                });
                out.push(idx);
            }
        }
        out
    }

    /// Oracle for ℓ: rank of the vectorised powers I, A, A², … (Gaussian
    /// elimination over f64 is exact enough for these tiny 0/1 inputs).
    fn oracle_ell(g: &Graph) -> usize {
        let n = g.n();
        let mut vecs: Vec<Vec<f64>> = Vec::new();
        let mut cur: Vec<f64> = (0..n * n)
            .map(|p| f64::from(u8::from(p / n == p % n)))
            .collect();
        let mut rank = 0;
        for _ in 0..=n {
            // reduce cur against vecs
            let mut v = cur.clone();
            for b in &vecs {
                let piv = b.iter().position(|x| x.abs() > 1e-9).unwrap();
                let f = v[piv] / b[piv];
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= f * y;
                }
            }
            if v.iter().all(|x| x.abs() < 1e-6) {
                break;
            }
            vecs.push(v);
            rank += 1;
            cur = (0..n * n)
                .map(|p| {
                    let (u, w) = (p / n, p % n);
                    (0..n)
                        .filter(|&m| g.has_edge(m, w))
                        .map(|m| cur[u * n + m])
                        .sum()
                })
                .collect();
        }
        rank
    }

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn adjacency_dims() {
        assert_eq!(
            adjacency_algebra_dim(&generate(Family::Complete(2)).unwrap()),
            2
        );
        assert_eq!(
            adjacency_algebra_dim(&generate(Family::Petersen).unwrap()),
            3
        );
        assert_eq!(
            adjacency_algebra_dim(&generate(Family::Cycle(6)).unwrap()),
            4
        );
        for fam in [Family::Path(5), Family::Hypercube(3), Family::Prism(4)] {
            let g = generate(fam).unwrap();
            assert_eq!(adjacency_algebra_dim(&g), oracle_ell(&g), "{fam:?}");
        }
    }

    #[test]
    fn path3_splits_the_diagonal() {
        let g = generate(Family::Path(3)).unwrap();
        let b = pattern_basis(&g);
        assert_eq!((b.ell(), b.r()), (3, 4));
        let fps: Vec<Vec<i64>> = (0..b.r())
            .map(|i| {
                b.fingerprint(i)
                    .iter()
                    .map(|x| i64::try_from(x).unwrap())
                    .collect()
            })
            .collect();
        assert_eq!(
            fps,
            vec![vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 2]]
        );
        assert_eq!(b.class_of(0, 0), b.class_of(2, 2));
        assert_ne!(b.class_of(0, 0), b.class_of(1, 1));
        assert!(!is_pattern_polynomial(&g));
        check_basis_invariants(&b).unwrap();
    }

    #[test]
    fn petersen_classes_are_distance_classes() {
        let g = generate(Family::Petersen).unwrap();
        let b = pattern_basis(&g);
        assert_eq!(b.r(), 3);
        let ds = crate::graphs::distance_structure(&g);
        assert_eq!(b.matrices(), ds.classes().unwrap());
        assert!(is_pattern_polynomial(&g));
    }

    #[test]
    fn complete_graphs_have_two_classes() {
        for n in 2..7 {
            let g = generate(Family::Complete(n)).unwrap();
            let b = pattern_basis(&g);
            assert_eq!(b.r(), 2);
            assert_eq!(b.matrix(0), IntMatrix::identity(n));
            assert_eq!(express_pattern_in_powers(&b, 0).unwrap(), RatPoly::one());
            assert_eq!(express_pattern_in_powers(&b, 1).unwrap(), RatPoly::x());
        }
    }

    #[test]
    fn cycle6_and_prism_share_classes() {
        let c6 = generate(Family::Cycle(6)).unwrap();
        let prism = c6.complement();
        assert!(is_pattern_polynomial(&c6));
        assert!(is_pattern_polynomial(&prism));
        let b1 = pattern_basis(&c6);
        let b2 = pattern_basis(&prism);
        assert_eq!(b1.class_map(), b2.class_map());
        assert_eq!(b1.ell(), 4);
    }

    #[test]
    fn petersen_distance_two_polynomial() {
        let g = generate(Family::Petersen).unwrap();
        let b = pattern_basis(&g);
        let ds = crate::graphs::distance_structure(&g);
        let i = (0..b.r()).find(|&i| b.matrix(i) == ds.class(2)).unwrap();
        // oracle: c0 I + c1 A + c2 A^2 = A_2 solved from A^2 = 3I + A_2
        let q = express_pattern_in_powers(&b, i).unwrap();
        assert_eq!(q.coeffs(), &[rat(-3), rat(0), rat(1)]);
        assert!(q.maps_to(b.adjacency(), &ds.class(2)).unwrap());
    }

    #[test]
    fn expressing_requires_pattern_polynomial() {
        let b = pattern_basis(&generate(Family::Path(3)).unwrap());
        assert!(matches!(
            express_pattern_in_powers(&b, 0),
            Err(Error::NotPatternPolynomial { ell: 3, r: 4 })
        ));
        let b = pattern_basis(&generate(Family::Petersen).unwrap());
        assert!(matches!(
            express_pattern_in_powers(&b, 7),
            Err(Error::ClassOutOfRange { index: 7, r: 3 })
        ));
    }

    #[test]
    fn partition_matches_oracle_on_small_graphs() {
        for n in 1..=6 {
            for g in crate::graphs::enumerate::nonisomorphic_graphs(n) {
                let b = pattern_basis(&g);
                assert_eq!(b.ell(), oracle_ell(&g), "{g:?}");
                assert_eq!(
                    b.class_map(),
                    oracle_partition(&g, b.ell()).as_slice(),
                    "{g:?}"
                );
                check_basis_invariants(&b).unwrap();
            }
        }
    }
}
