//! Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this crate runs over one of two coefficient fields:
//! [`Rational`] (exact, the ground truth) or [`Fp`] (a prime field with a
//! modulus near 2^61, fast enough for the large charts). No floating point
//! appears anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// Commutative ring operations. Implemented by the scalar fields and by
/// multivariate polynomials, so that pfaffians and minors can be computed
/// symbolically as well as numerically.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

/// A ring with exact division by nonzero elements, plus the sampling and
/// elimination strategy hooks that distinguish the two scalar modes.
pub trait Scalar: Ring {
    /// Multiplicative inverse. Panics on zero; callers only invert pivots
    /// already checked to be nonzero.
    fn inv(&self) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    /// Draw one random parameter value: a small integer in rational mode,
    /// a uniform residue in prime-field mode.
    fn sample_param<R: Rng>(rng: &mut R) -> Self;

    /// Mode tag used in reports.
    fn mode_name() -> &'static str;

    /// Rank of a row-major `rows x cols` matrix, consuming the buffer.
    /// Prime fields use ordinary Gaussian elimination; the rational
    /// implementation overrides this with fraction-free elimination.
    fn rank_rows(rows: usize, cols: usize, data: Vec<Self>) -> usize {
        gauss_rank(rows, cols, data)
    }
}

/// Plain Gaussian elimination over a field, returning the rank.
fn gauss_rank<F: Scalar>(rows: usize, cols: usize, mut m: Vec<F>) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !m[i * cols + col].is_zero()) else {
            continue;
        };
        if piv != rank {
            for j in col..cols {
                m.swap(rank * cols + j, piv * cols + j);
            }
        }
        let inv = m[rank * cols + col].inv();
        for i in rank + 1..rows {
            if m[i * cols + col].is_zero() {
                continue;
            }
            let factor = m[i * cols + col].mul(&inv);
            for j in col..cols {
                let sub = factor.mul(&m[rank * cols + j]);
                m[i * cols + j] = m[i * cols + j].sub(&sub);
            }
        }
        rank += 1;
    }
    rank
}

// ---------------------------------------------------------------------------
// Rational mode
// ---------------------------------------------------------------------------

/// Arbitrary-precision rational, kept in lowest terms with positive
/// denominator (the underlying `BigRational` maintains both).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn from_bigint(v: BigInt) -> Self {
        Rational(BigRational::from_integer(v))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-self.0.clone())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Scalar for Rational {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Rational(self.0.recip())
    }

    fn sample_param<R: Rng>(rng: &mut R) -> Self {
        Self::from_i64(rng.gen_range(-999..=999))
    }

    fn mode_name() -> &'static str {
        "rational"
    }

    /// Fraction-free (Bareiss) elimination: rows are first scaled to
    /// integers, after which every intermediate entry is a minor of the
    /// scaled matrix, keeping coefficient growth polynomial.
    fn rank_rows(rows: usize, cols: usize, data: Vec<Self>) -> usize {
        let mut m: Vec<BigInt> = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let mut lcm = BigInt::one();
            for j in 0..cols {
                let d = data[i * cols + j].denom();
                lcm = num_integer::lcm(lcm, d.clone());
            }
            for j in 0..cols {
                let q = &data[i * cols + j].0 * &lcm;
                debug_assert!(q.denom().is_one());
                m.push(q.numer().clone());
            }
        }
        bareiss_rank(rows, cols, m)
    }
}

/// Bareiss fraction-free rank over the integers. The division in the inner
/// update is exact by the Sylvester determinant identity.
fn bareiss_rank(rows: usize, cols: usize, mut m: Vec<BigInt>) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| !m[i * cols + col].is_zero()) else {
            continue;
        };
        if piv != rank {
            for j in col..cols {
                m.swap(rank * cols + j, piv * cols + j);
            }
        }
        let pivot = m[rank * cols + col].clone();
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let t = &pivot * &m[i * cols + j] - &m[i * cols + col] * &m[rank * cols + j];
                m[i * cols + j] = t / &prev;
            }
            m[i * cols + col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

// ---------------------------------------------------------------------------
// Prime-field mode
// ---------------------------------------------------------------------------

/// The three prime moduli, all near 2^61 so that products fit in `u128`
/// intermediates. Rank computations can be cross-checked across them, with
/// rational arithmetic as the ground truth on disagreement.
pub const PRIMES: [u64; 3] = [
    2305843009213693951, // 2^61 - 1
    2305843009213693967,
    2305843009213693973,
];

/// Element of the prime field F_P, stored as a residue in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Fp<const P: u64>(pub u64);

pub type Fp0 = Fp<{ PRIMES[0] }>;
pub type Fp1 = Fp<{ PRIMES[1] }>;
pub type Fp2 = Fp<{ PRIMES[2] }>;

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Ring for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }

    fn sample_param<R: Rng>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }

    fn mode_name() -> &'static str {
        "prime-field"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rational_lowest_terms() {
        let a = Rational::from_i64(6).div(&Rational::from_i64(-4));
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(2));
    }

    #[test]
    fn fp_matches_bigint_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = BigInt::from(PRIMES[0]);
        for _ in 0..200 {
            let a: u64 = rng.gen_range(0..PRIMES[0]);
            let b: u64 = rng.gen_range(0..PRIMES[0]);
            let (fa, fb) = (Fp0::new(a), Fp0::new(b));
            let want = (BigInt::from(a) * BigInt::from(b)) % &p;
            assert_eq!(BigInt::from(fa.mul(&fb).0), want);
            let want = (BigInt::from(a) + BigInt::from(b)) % &p;
            assert_eq!(BigInt::from(fa.add(&fb).0), want);
        }
    }

    #[test]
    fn fp_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let a = Fp0::new(rng.gen_range(1..PRIMES[0]));
            assert_eq!(a.mul(&a.inv()), Fp0::one());
        }
        let b = Fp1::new(12345);
        assert_eq!(b.mul(&b.inv()), Fp1::one());
        let c = Fp2::new(99999);
        assert_eq!(c.mul(&c.inv()), Fp2::one());
    }

    #[test]
    fn fp_from_negative() {
        let a = Fp0::from_i64(-1);
        assert_eq!(a, Fp0::new(PRIMES[0] - 1));
    }
}
