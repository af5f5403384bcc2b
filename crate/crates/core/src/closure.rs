//! Coherent closure by pairwise Weisfeiler–Leman refinement.
//!
//! Ordered vertex pairs start out coloured by (diagonal, adjacent, other).
//! Each round recolours `(u, v)` by its old colour, the colour of `(v, u)`,
//! and the multiset of colour pairs `(c(u, w), c(w, v))` over all `w`. The
//! stable colouring is the coarsest coherent configuration refining the
//! initial one; its colour classes are the standard basis of `𝒞𝒞(X)`.
//!
//! The result is checked, not trusted: [`coherent_closure`] runs
//! [`verify_coherent`] on its own output, which also yields the
//! intersection numbers.

use std::collections::HashMap;
use std::fmt;

use num_traits::One;

use crate::exactmat::IntMatrix;
use crate::graphs::Graph;
use crate::pattern::pattern_basis;

/// Sparse tensor of intersection numbers `p^k_ij`, defined by
/// `M_i M_j = Σ_k p^k_ij M_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionNumbers {
    m: usize,
    /// For each `k`, the nonzero `((i, j), p^k_ij)` sorted by `(i, j)`.
    per_class: Vec<Vec<((usize, usize), u64)>>,
}

impl IntersectionNumbers {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        let row = &self.per_class[k];
        row.binary_search_by_key(&(i, j), |(ij, _)| *ij)
            .map_or(0, |pos| row[pos].1)
    }

    /// Nonzero entries for class `k`.
    pub fn nonzero_for(&self, k: usize) -> &[((usize, usize), u64)] {
        &self.per_class[k]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// No matrices, or matrices of different or non-square shapes.
    Shape,
    /// Some basis matrix is zero or has an entry other than 0 and 1.
    NotZeroOne(usize),
    /// Two basis matrices share a position.
    NotDisjoint(usize, usize),
    /// The matrices do not add up to `J`.
    MissingAllOnes,
    /// A class mixes diagonal and off-diagonal positions, so `I` is not in
    /// the span with 0/1 coefficients.
    MissingIdentity(usize),
    /// The transpose of class `k` is not a basis matrix.
    NotTransposeClosed(usize),
    /// `M_i ⊙ M_j` is not a 0/1 combination of the basis.
    NotHadamardClosed(usize, usize),
    /// `M_i M_j` leaves the span: positions of the same class disagree.
    NotProductClosed { class: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Shape => write!(f, "matrices are missing or have mismatched shapes"),
            AxiomViolation::NotZeroOne(i) => write!(f, "M_{i} is not a nonzero 0/1 matrix"),
            AxiomViolation::NotDisjoint(i, j) => write!(f, "M_{i} and M_{j} overlap"),
            AxiomViolation::MissingAllOnes => write!(f, "J is not in the span"),
            AxiomViolation::MissingIdentity(i) => {
                write!(
                    f,
                    "I is not in the span (M_{i} mixes diagonal and off-diagonal)"
                )
            }
            AxiomViolation::NotTransposeClosed(i) => {
                write!(f, "transpose of M_{i} is not a basis matrix")
            }
            AxiomViolation::NotHadamardClosed(i, j) => write!(f, "M_{i} ⊙ M_{j} leaves the span"),
            AxiomViolation::NotProductClosed { class } => {
                write!(
                    f,
                    "products leave the span (entries on class {class} disagree)"
                )
            }
        }
    }
}

/// Checks the product-closure axiom for a colouring of the `n × n` positions
/// with colours `0..m`, returning the intersection numbers.
///
/// `(M_i M_j)_uv` counts the `w` with `c(u, w) = i` and `c(w, v) = j`, so the
/// products lie in the span iff all positions of each class see the same
/// multiset of colour pairs.
fn intersection_numbers(
    n: usize,
    colors: &[usize],
    m: usize,
) -> Result<IntersectionNumbers, AxiomViolation> {
    let mut reps: Vec<Option<Vec<(usize, usize)>>> = vec![None; m];
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(n);
    for u in 0..n {
        for v in 0..n {
            pairs.clear();
            pairs.extend((0..n).map(|w| (colors[u * n + w], colors[w * n + v])));
            pairs.sort_unstable();
            let k = colors[u * n + v];
            match &reps[k] {
                None => reps[k] = Some(pairs.clone()),
                Some(rep) if *rep == pairs => {}
                Some(_) => return Err(AxiomViolation::NotProductClosed { class: k }),
            }
        }
    }
    let per_class = reps
        .into_iter()
        .map(|rep| {
            let mut out: Vec<((usize, usize), u64)> = Vec::new();
            for ij in rep.unwrap_or_default() {
                match out.last_mut() {
                    Some((last, count)) if *last == ij => *count += 1,
                    _ => out.push((ij, 1)),
                }
            }
            out
        })
        .collect();
    Ok(IntersectionNumbers { m, per_class })
}

/// Checks that `matrices` is the standard basis of a coherent algebra: 0/1,
/// mutually disjoint, summing to `J`, with `I` a sum of basis matrices, and
/// closed under transposition, Hadamard product and matrix product.
pub fn verify_coherent(matrices: &[IntMatrix]) -> Result<IntersectionNumbers, AxiomViolation> {
    let Some(first) = matrices.first() else {
        return Err(AxiomViolation::Shape);
    };
    let n = first.rows();
    if matrices.iter().any(|m| m.shape() != (n, n)) {
        return Err(AxiomViolation::Shape);
    }
    let m = matrices.len();
    let mut colors: Vec<Option<usize>> = vec![None; n * n];
    for (i, mat) in matrices.iter().enumerate() {
        if !mat.is_zero_one() || mat.is_zero() {
            return Err(AxiomViolation::NotZeroOne(i));
        }
        for (p, x) in mat.entries().iter().enumerate() {
            if x.is_one() {
                if let Some(j) = colors[p] {
                    return Err(AxiomViolation::NotDisjoint(j, i));
                }
                colors[p] = Some(i);
            }
        }
    }
    let Some(colors) = colors.into_iter().collect::<Option<Vec<usize>>>() else {
        return Err(AxiomViolation::MissingAllOnes);
    };

    // diagonal/off-diagonal separation, and transposes
    let mut diagonal: Vec<Option<bool>> = vec![None; m];
    let mut transpose: Vec<Option<usize>> = vec![None; m];
    for u in 0..n {
        for v in 0..n {
            let k = colors[u * n + v];
            let on = u == v;
            if *diagonal[k].get_or_insert(on) != on {
                return Err(AxiomViolation::MissingIdentity(k));
            }
            let t = colors[v * n + u];
            if *transpose[k].get_or_insert(t) != t {
                return Err(AxiomViolation::NotTransposeClosed(k));
            }
        }
    }
    for k in 0..m {
        let t = transpose[k].expect("every class is nonempty");
        if transpose[t] != Some(k) {
            return Err(AxiomViolation::NotTransposeClosed(k));
        }
    }

    // Hadamard closure: follows from disjointness, checked on bitsets.
    let words = (n * n).div_ceil(64);
    let mut bits = vec![vec![0u64; words]; m];
    for (p, &k) in colors.iter().enumerate() {
        bits[k][p / 64] |= 1 << (p % 64);
    }
    for i in 0..m {
        for j in i + 1..m {
            if bits[i].iter().zip(&bits[j]).any(|(a, b)| a & b != 0) {
                return Err(AxiomViolation::NotHadamardClosed(i, j));
            }
        }
    }

    intersection_numbers(n, &colors, m)
}

pub fn is_coherent(matrices: &[IntMatrix]) -> bool {
    verify_coherent(matrices).is_ok()
}

/// Standard basis of a coherent closure.
#[derive(Debug, Clone)]
pub struct CoherentBasis {
    n: usize,
    color_of: Vec<usize>,
    sizes: Vec<usize>,
    diagonal: Vec<bool>,
    transpose: Vec<usize>,
    p: IntersectionNumbers,
    rounds: usize,
}

impl CoherentBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of basis matrices, the dimension of `𝒞𝒞(X)`.
    pub fn m(&self) -> usize {
        self.sizes.len()
    }

    pub fn color_of(&self, s: usize, t: usize) -> usize {
        self.color_of[s * self.n + t]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.color_of
    }

    pub fn class_size(&self, k: usize) -> usize {
        self.sizes[k]
    }

    pub fn is_diagonal_class(&self, k: usize) -> bool {
        self.diagonal[k]
    }

    /// Index of the class holding the transposed positions of class `k`.
    pub fn transpose_of(&self, k: usize) -> usize {
        self.transpose[k]
    }

    pub fn intersection_numbers(&self) -> &IntersectionNumbers {
        &self.p
    }

    /// Refinement rounds until the colouring was stable.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn matrix(&self, k: usize) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |s, t| u8::from(self.color_of(s, t) == k))
    }

    pub fn matrices(&self) -> Vec<IntMatrix> {
        (0..self.m()).map(|k| self.matrix(k)).collect()
    }

    /// Re-runs [`verify_coherent`] on the materialised basis.
    pub fn verify(&self) -> Result<(), AxiomViolation> {
        verify_coherent(&self.matrices()).map(|_| ())
    }
}

fn count_colors(colors: &[usize]) -> usize {
    colors.iter().copied().max().map_or(0, |c| c + 1)
}

/// Old colour, colour of the transpose, sorted multiset of colour pairs
/// along 2-paths.
type Signature = (usize, usize, Vec<(usize, usize)>);

/// Refines a colouring of ordered pairs to its stable colouring.
///
/// Colours are dense indices by first occurrence in a row-major scan after
/// every round. Returns the stable colouring and the number of rounds that
/// changed it.
pub fn stable_pair_coloring(n: usize, mut colors: Vec<usize>) -> (Vec<usize>, usize) {
    assert_eq!(colors.len(), n * n);
    let mut count = count_colors(&colors);
    let mut rounds = 0;
    let mut index: HashMap<Signature, usize> = HashMap::new();
    loop {
        index.clear();
        let mut next = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                let mut multiset: Vec<(usize, usize)> = (0..n)
                    .map(|w| (colors[u * n + w], colors[w * n + v]))
                    .collect();
                multiset.sort_unstable();
                let key = (colors[u * n + v], colors[v * n + u], multiset);
                let fresh = index.len();
                next.push(*index.entry(key).or_insert(fresh));
            }
        }
        let new_count = index.len();
        if new_count == count {
            return (colors, rounds);
        }
        colors = next;
        count = new_count;
        rounds += 1;
    }
}

/// Renumbers so that diagonal classes come first, then the rest by first
/// row-major occurrence.
fn canonical_numbering(n: usize, colors: &[usize]) -> Vec<usize> {
    let mut map: HashMap<usize, usize> = HashMap::new();
    for u in 0..n {
        let next = map.len();
        map.entry(colors[u * n + u]).or_insert(next);
    }
    for &c in colors {
        let next = map.len();
        map.entry(c).or_insert(next);
    }
    colors.iter().map(|c| map[c]).collect()
}

pub fn coherent_closure(g: &Graph) -> CoherentBasis {
    let n = g.n();
    let initial: Vec<usize> = (0..n * n)
        .map(|p| {
            let (u, v) = (p / n, p % n);
            if u == v {
                0
            } else if g.has_edge(u, v) {
                1
            } else {
                2
            }
        })
        .collect();
    let initial = canonical_numbering(n, &initial);
    let (stable, rounds) = stable_pair_coloring(n, initial);
    let color_of = canonical_numbering(n, &stable);
    let m = count_colors(&color_of);

    let mut sizes = vec![0; m];
    let mut diagonal = vec![false; m];
    let mut transpose = vec![0; m];
    for u in 0..n {
        for v in 0..n {
            let k = color_of[u * n + v];
            sizes[k] += 1;
            diagonal[k] = u == v;
            transpose[k] = color_of[v * n + u];
        }
    }
    let basis_matrices: Vec<IntMatrix> = (0..m)
        .map(|k| IntMatrix::from_fn(n, n, |s, t| u8::from(color_of[s * n + t] == k)))
        .collect();
    let p = match verify_coherent(&basis_matrices) {
        Ok(p) => p,
        Err(v) => panic!("stable colouring of {g:?} is not coherent: {v}"),
    };
    CoherentBasis {
        n,
        color_of,
        sizes,
        diagonal,
        transpose,
        p,
        rounds,
    }
}

/// True if every class of `fine` lies inside a single class of `coarse`.
pub fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    assert_eq!(fine.len(), coarse.len());
    let mut image: HashMap<usize, usize> = HashMap::new();
    fine.iter()
        .zip(coarse)
        .all(|(f, c)| *image.entry(*f).or_insert(*c) == *c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraChain {
    pub ell: usize,
    pub r: usize,
    pub m: usize,
    pub pattern_poly: bool,
    pub closures_equal: bool,
}

/// Dimensions of `𝒜(X) ⊆ ℒ(X) ⊆ 𝒞𝒞(X)`.
pub fn algebra_chain(g: &Graph) -> AlgebraChain {
    let basis = pattern_basis(g);
    let cc = coherent_closure(g);
    AlgebraChain {
        ell: basis.ell(),
        r: basis.r(),
        m: cc.m(),
        pattern_poly: basis.ell() == basis.r(),
        closures_equal: basis.r() == cc.m(),
    }
}
