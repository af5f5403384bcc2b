//! Exact integer matrices and rational polynomials.
//!
//! Everything downstream (minimal polynomials, membership in the adjacency
//! algebra, intersection numbers) is decided with exact arithmetic, so
//! entries are arbitrary-precision and rationals are always kept reduced.

mod matrix;
mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use matrix::{hadamard, mat_mul, IntMatrix};
pub use poly::{poly_gcd, squarefree_part, RatPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square: {0:?}")]
    NotSquare((usize, usize)),
    #[error("the zero polynomial has no squarefree part")]
    ZeroPolynomial,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("polynomial division by zero")]
    DivisionByZero,
}

/// Characteristic polynomial `det(xI - M)` by Berkowitz's division-free method.
///
/// Works in integers throughout; the result is monic of degree `n`.
pub fn charpoly(m: &IntMatrix) -> Result<RatPoly, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare(m.shape()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(RatPoly::one());
    }
    // Coefficients highest degree first, for the trailing principal submatrix
    // starting at `start`. Begin with the 1x1 corner and grow leftwards.
    let mut vec: Vec<BigInt> = vec![BigInt::one(), -m.get(n - 1, n - 1).clone()];
    for start in (0..n - 1).rev() {
        let size = n - start; // size of current submatrix M[start.., start..]
        let a = m.get(start, start);
        // R = first row after the corner, C = first column below it,
        // S = the trailing (size-1)x(size-1) block.
        // Toeplitz column: 1, -a, -R C, -R S C, -R S^2 C, ...
        let mut col: Vec<BigInt> = Vec::with_capacity(size + 1);
        col.push(BigInt::one());
        col.push(-a.clone());
        let mut v: Vec<BigInt> = (start + 1..n).map(|i| m.get(i, start).clone()).collect();
        for step in 0..size - 1 {
            let rc: BigInt = (start + 1..n)
                .zip(&v)
                .map(|(j, x)| m.get(start, j) * x)
                .sum();
            col.push(-rc);
            if step + 1 < size - 1 {
                v = (start + 1..n)
                    .map(|i| {
                        (start + 1..n)
                            .zip(&v)
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(j, x)| m.get(i, j) * x)
                            .sum()
                    })
                    .collect();
            }
        }
        // Lower-triangular Toeplitz (size+1) x size times vec (length size).
        let next: Vec<BigInt> = (0..=size)
            .map(|i| (0..size.min(i + 1)).map(|j| &col[i - j] * &vec[j]).sum())
            .collect();
        vec = next;
    }
    vec.reverse();
    Ok(RatPoly::new(
        vec.into_iter().map(BigRational::from_integer).collect(),
    ))
}

/// Minimal polynomial of a symmetric integer matrix.
///
/// Symmetric matrices are diagonalizable, so the minimal polynomial is the
/// squarefree part of the characteristic polynomial. Not valid for general
/// (defective) matrices.
pub fn minimal_polynomial_symmetric(m: &IntMatrix) -> Result<RatPoly, MatrixError> {
    squarefree_part(&charpoly(m)?)
}

/// Finds rational `c` with `Σ c_i·basis_i = target`, or `None` if `target`
/// lies outside the span.
///
/// The matrices are flattened to vectors and the system is solved by exact
/// Gauss-Jordan elimination. Free variables (dependent bases) are set to 0,
/// so for a linearly independent basis the answer is the unique one.
pub fn solve_in_span(
    basis: &[IntMatrix],
    target: &IntMatrix,
) -> Result<Option<Vec<BigRational>>, MatrixError> {
    for b in basis {
        if b.shape() != target.shape() {
            return Err(MatrixError::DimensionMismatch {
                left: b.shape(),
                right: target.shape(),
            });
        }
    }
    let k = basis.len();
    let len = target.rows() * target.cols();
    // Only keep rows that are not identically zero.
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for p in 0..len {
        let rhs = &target.entries()[p];
        if rhs.is_zero() && basis.iter().all(|b| b.entries()[p].is_zero()) {
            continue;
        }
        let mut row: Vec<BigRational> = basis
            .iter()
            .map(|b| BigRational::from_integer(b.entries()[p].clone()))
            .collect();
        row.push(BigRational::from_integer(rhs.clone()));
        if !rows.contains(&row) {
            rows.push(row);
        }
    }

    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[k].is_zero()) {
        return Ok(None);
    }
    let mut coeffs = vec![BigRational::zero(); k];
    for (i, &col) in pivots.iter().enumerate() {
        coeffs[col] = rows[i][k].clone();
    }
    Ok(Some(coeffs))
}

/// Recombines `Σ c_i·basis_i` as a rational-valued matrix, scaled to integers.
///
/// Returns `(numerator, denominator)`.
pub fn combine(basis: &[IntMatrix], coeffs: &[BigRational]) -> (IntMatrix, BigInt) {
    use num_integer::Integer;
    assert_eq!(basis.len(), coeffs.len());
    let (rows, cols) = basis.first().map_or((0, 0), IntMatrix::shape);
    let denom = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut acc = IntMatrix::zeros(rows, cols);
    for (b, c) in basis.iter().zip(coeffs) {
        let scaled = (c * BigRational::from_integer(denom.clone())).to_integer();
        acc = acc.add(&b.scale(&scaled)).expect("same shape");
    }
    (acc, denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn adjacency(n: usize, edges: &[(usize, usize)]) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for &(u, v) in edges {
            m.set(u, v, 1);
            m.set(v, u, 1);
        }
        m
    }

    fn petersen() -> IntMatrix {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        adjacency(10, &edges)
    }

    /// Independent oracle: det(xI - M) by Leibniz expansion over permutations,
    /// with each entry a polynomial.
    fn charpoly_leibniz(m: &IntMatrix) -> RatPoly {
        let n = m.rows();
        let entry = |i: usize, j: usize| {
            let c = RatPoly::constant(BigRational::from_integer(-m.get(i, j).clone()));
            if i == j {
                &c + &RatPoly::x()
            } else {
                c
            }
        };
        let mut total = RatPoly::zero();
        let mut perm: Vec<usize> = (0..n).collect();
        // Heap's algorithm with sign tracking.
        fn heap(
            k: usize,
            perm: &mut Vec<usize>,
            sign: &mut i64,
            visit: &mut dyn FnMut(&[usize], i64),
        ) {
            if k <= 1 {
                visit(perm, *sign);
                return;
            }
            for i in 0..k - 1 {
                heap(k - 1, perm, sign, visit);
                if k.is_multiple_of(2) {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
                *sign = -*sign;
            }
            heap(k - 1, perm, sign, visit);
        }
        let mut sign = 1i64;
        heap(n, &mut perm, &mut sign, &mut |p, s| {
            let mut term = RatPoly::constant(rat(s));
            for (i, &j) in p.iter().enumerate() {
                term = &term * &entry(i, j);
            }
            total = &total + &term;
        });
        total
    }

    #[test]
    fn charpoly_small_cases() {
        assert_eq!(
            charpoly(&IntMatrix::zeros(2, 2)).unwrap(),
            RatPoly::from_ints(&[0, 0, 1])
        );
        let k2 = adjacency(2, &[(0, 1)]);
        assert_eq!(charpoly(&k2).unwrap(), RatPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(charpoly(&k2).unwrap(), charpoly_leibniz(&k2));
    }

    #[test]
    fn charpoly_matches_leibniz_on_nonsymmetric() {
        let m = IntMatrix::from_rows(&[
            vec![2, -1, 0, 3],
            vec![5, 0, 7, -2],
            vec![1, 1, -4, 0],
            vec![0, 6, 2, 1],
        ]);
        assert_eq!(charpoly(&m).unwrap(), charpoly_leibniz(&m));
    }

    #[test]
    fn charpoly_petersen() {
        let mut expected = RatPoly::linear_factor(3);
        for _ in 0..5 {
            expected = &expected * &RatPoly::linear_factor(1);
        }
        for _ in 0..4 {
            expected = &expected * &RatPoly::linear_factor(-2);
        }
        let cp = charpoly(&petersen()).unwrap();
        assert_eq!(cp, expected);
        assert!(cp.annihilates(&petersen()).unwrap());
        let mp = minimal_polynomial_symmetric(&petersen()).unwrap();
        assert_eq!(mp.degree(), Some(3));
        assert!(mp.annihilates(&petersen()).unwrap());
    }

    #[test]
    fn petersen_square_is_3i_plus_distance_two() {
        let a = petersen();
        let a2 = a.matmul(&a).unwrap();
        // brute-force: count common neighbours directly
        for u in 0..10 {
            for v in 0..10 {
                let common = (0..10)
                    .filter(|&w| a.get(u, w).is_one() && a.get(w, v).is_one())
                    .count();
                assert_eq!(a2.get(u, v), &BigInt::from(common));
                let expected = if u == v {
                    3
                } else if a.get(u, v).is_one() {
                    0
                } else {
                    1
                };
                assert_eq!(common, expected);
            }
        }
    }

    #[test]
    fn span_examples() {
        let k2 = adjacency(2, &[(0, 1)]);
        let c = solve_in_span(&[IntMatrix::identity(2), k2], &IntMatrix::ones(2))
            .unwrap()
            .unwrap();
        assert_eq!(c, vec![rat(1), rat(1)]);

        let a = petersen();
        let basis = a.powers(3).unwrap();
        let c = solve_in_span(&basis, &IntMatrix::ones(10))
            .unwrap()
            .unwrap();
        assert_eq!(c, vec![rat(-2), rat(1), rat(1)]);
        let (num, den) = combine(&basis, &c);
        assert_eq!(num, IntMatrix::ones(10).scale(&den));

        let c4 = adjacency(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let a2 = adjacency(4, &[(0, 2), (1, 3)]);
        assert_eq!(
            solve_in_span(&[IntMatrix::identity(4), c4], &a2).unwrap(),
            None
        );
    }

    #[test]
    fn span_dimension_mismatch() {
        assert!(solve_in_span(&[IntMatrix::identity(2)], &IntMatrix::identity(3)).is_err());
    }

    #[test]
    fn span_with_fractional_answer() {
        let two_i = IntMatrix::identity(2).scale(&BigInt::from(2));
        let c = solve_in_span(&[two_i], &IntMatrix::identity(2))
            .unwrap()
            .unwrap();
        assert_eq!(c, vec![BigRational::new(1.into(), 2.into())]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_symmetric() -> impl Strategy<Value = IntMatrix> {
            (1usize..=6).prop_flat_map(|n| {
                proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
                    IntMatrix::from_fn(n, n, |i, j| {
                        let (a, b) = if i <= j { (i, j) } else { (j, i) };
                        v[a * n + b]
                    })
                })
            })
        }

        proptest! {
            #[test]
            fn cayley_hamilton_and_minimal(m in arb_symmetric()) {
                let cp = charpoly(&m).unwrap();
                prop_assert_eq!(cp.degree(), Some(m.rows()));
                prop_assert!(cp.annihilates(&m).unwrap());
                let mp = minimal_polynomial_symmetric(&m).unwrap();
                prop_assert!(mp.annihilates(&m).unwrap());
            }

            #[test]
            fn solve_then_recombine(coeffs in proptest::collection::vec(-4i64..=4, 3), m in arb_symmetric()) {
                let basis = m.powers(3).unwrap();
                let target = combine(
                    &basis,
                    &coeffs.iter().map(|&c| rat(c)).collect::<Vec<_>>(),
                ).0;
                let c = solve_in_span(&basis, &target).unwrap().expect("in span");
                let (num, den) = combine(&basis, &c);
                prop_assert_eq!(num, target.scale(&den));
            }
        }
    }
}
