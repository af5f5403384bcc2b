use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, MatrixError};

/// Univariate polynomial with exact rational coefficients, lowest degree first.
///
/// Trailing zero coefficients are always trimmed, so structural equality is
/// polynomial equality and the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints<T: Into<BigInt> + Clone>(coeffs: &[T]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone().into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`.
    pub fn linear_factor(root: i64) -> Self {
        Self::from_ints(&[-root, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides through by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), MatrixError> {
        let Some(dd) = divisor.degree() else {
            return Err(MatrixError::DivisionByZero);
        };
        let lc = divisor.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Least common denominator of the coefficients.
    fn common_denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Evaluates at a square integer matrix.
    ///
    /// Returns `(numerator, denominator)` with `p(M) = numerator / denominator`,
    /// the denominator positive; this keeps the evaluation in integers.
    pub fn eval_matrix(&self, m: &IntMatrix) -> Result<(IntMatrix, BigInt), MatrixError> {
        if !m.is_square() {
            return Err(MatrixError::NotSquare(m.shape()));
        }
        let n = m.rows();
        let denom = self.common_denominator();
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
            .collect();
        let mut acc = IntMatrix::zeros(n, n);
        for c in ints.iter().rev() {
            acc = acc.matmul(m)?;
            acc.add_diagonal(c);
        }
        Ok((acc, denom))
    }

    /// True if `p(M)` equals `target` exactly.
    pub fn maps_to(&self, m: &IntMatrix, target: &IntMatrix) -> Result<bool, MatrixError> {
        let (numer, denom) = self.eval_matrix(m)?;
        if numer.shape() != target.shape() {
            return Err(MatrixError::DimensionMismatch {
                left: numer.shape(),
                right: target.shape(),
            });
        }
        Ok(numer == target.scale(&denom))
    }

    /// True if `p(M)` is the zero matrix.
    pub fn annihilates(&self, m: &IntMatrix) -> Result<bool, MatrixError> {
        Ok(self.eval_matrix(m)?.0.is_zero())
    }

    /// Integer roots, each listed once, in increasing order.
    ///
    /// Only divisors of the lowest nonzero coefficient of the integer
    /// normalization are tried, plus 0 when `x` divides the polynomial.
    pub fn integer_roots(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let denom = self.common_denominator();
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
            .collect();
        let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero");
        let mut roots = Vec::new();
        if low > 0 {
            roots.push(BigInt::zero());
        }
        let c0 = ints[low].abs();
        let mut d = BigInt::one();
        while &d * &d <= c0 {
            if (&c0 % &d).is_zero() {
                let e = &c0 / &d;
                for cand in [d.clone(), -d.clone(), e.clone(), -e] {
                    let q = BigRational::from_integer(cand.clone());
                    if !roots.contains(&cand) && self.eval(&q).is_zero() {
                        roots.push(cand);
                    }
                }
            }
            d += 1;
        }
        roots.sort();
        roots
    }
}

/// Monic greatest common divisor. `gcd(p, 0) = monic(p)`; both zero is an error.
pub fn poly_gcd(p: &RatPoly, q: &RatPoly) -> Result<RatPoly, MatrixError> {
    if p.is_zero() && q.is_zero() {
        return Err(MatrixError::BothZero);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b.monic();
        b = r;
    }
    Ok(a.monic())
}

/// Monic `p / gcd(p, p')`: each distinct root kept exactly once.
pub fn squarefree_part(p: &RatPoly) -> Result<RatPoly, MatrixError> {
    if p.is_zero() {
        return Err(MatrixError::ZeroPolynomial);
    }
    let g = poly_gcd(p, &p.derivative())?;
    let (q, r) = p.div_rem(&g)?;
    debug_assert!(r.is_zero());
    Ok(q.monic())
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Renders as e.g. `x^2 + x - 3` or `1/2x - 1`; the zero polynomial is `0`.
impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{}", fmt_coeff(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}{mono}", fmt_coeff(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}
