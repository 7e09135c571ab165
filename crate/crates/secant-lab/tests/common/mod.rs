//! Shared test support: independent rank-locus oracles.
//!
//! Each oracle parametrizes a secant variety directly as a sum of rank-one
//! objects (powers of linear forms, v v^T, u w^T, x wedge y) and reads its
//! dimension off the plain Jacobian rank of that map. No tangent frames,
//! joins or chart machinery from the engine are involved, so these are
//! independent routes against which the engine is checked.
#![allow(dead_code)] // shared across test targets that each use a subset

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use secant_lab::matrix::Matrix;
use secant_lab::poly::MultiPoly;
use secant_lab::scalar::{Ring, Scalar};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Projective dimension of the closure of the image of a polynomial map
/// whose image is a cone: the generic Jacobian rank minus one, maximized
/// over a few random samples.
pub fn cone_image_dim<F: Scalar>(coords: &[MultiPoly<F>], nparams: usize, seed: u64) -> usize {
    let mut best = 0;
    for trial in 0..3u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(0x6f7261 ^ trial);
        let point: Vec<F> = (0..nparams).map(|_| F::sample_param(&mut rng)).collect();
        let rows: Vec<Vec<F>> = coords
            .iter()
            .map(|c| (0..nparams).map(|j| c.deriv(j).eval(&point)).collect())
            .collect();
        best = best.max(Matrix::from_rows(rows).rank());
    }
    best - 1
}

/// Coefficients of sum_i (a_i x + b_i y)^d: the k-secant variety of the
/// rational normal curve of degree d (equivalently the catalecticant rank
/// locus).
pub fn power_sum_coords<F: Scalar>(d: usize, k: usize) -> (Vec<MultiPoly<F>>, usize) {
    let nparams = 2 * (k + 1);
    let coords = (0..=d)
        .map(|j| {
            // coefficient of x^(d-j) y^j: C(d,j) sum_i a_i^(d-j) b_i^j
            let mut acc: MultiPoly<F> = Ring::zero();
            for i in 0..=k {
                let term = MultiPoly::monomial(
                    &[(2 * i, (d - j) as u32), (2 * i + 1, j as u32)],
                    F::from_i64(binomial(d, j) as i64),
                );
                acc = acc.add(&term);
            }
            acc
        })
        .collect();
    (coords, nparams)
}

/// Upper-triangle entries of sum_i v_i v_i^T for v_i in k^(m+1): the rank
/// <= k+1 symmetric matrices, i.e. the k-secant variety of the quadratic
/// Veronese of P^m.
pub fn symmetric_rank_coords<F: Scalar>(m: usize, k: usize) -> (Vec<MultiPoly<F>>, usize) {
    let cols = m + 1;
    let nparams = (k + 1) * cols;
    let v = |i: usize, a: usize| MultiPoly::<F>::var(i * cols + a);
    let mut coords = Vec::new();
    for a in 0..cols {
        for b in a..cols {
            let mut acc: MultiPoly<F> = Ring::zero();
            for i in 0..=k {
                acc = acc.add(&v(i, a).mul(&v(i, b)));
            }
            coords.push(acc);
        }
    }
    (coords, nparams)
}

/// Entries of sum_i u_i w_i^T: the rank <= k+1 (a+1) x (b+1) matrices,
/// i.e. the k-secant variety of Seg(a, b).
pub fn generic_rank_coords<F: Scalar>(a: usize, b: usize, k: usize) -> (Vec<MultiPoly<F>>, usize) {
    let (ra, rb) = (a + 1, b + 1);
    let nparams = (k + 1) * (ra + rb);
    let u = |i: usize, p: usize| MultiPoly::<F>::var(i * (ra + rb) + p);
    let w = |i: usize, q: usize| MultiPoly::<F>::var(i * (ra + rb) + ra + q);
    let mut coords = Vec::new();
    for p in 0..ra {
        for q in 0..rb {
            let mut acc: MultiPoly<F> = Ring::zero();
            for i in 0..=k {
                acc = acc.add(&u(i, p).mul(&w(i, q)));
            }
            coords.push(acc);
        }
    }
    (coords, nparams)
}

/// Strict upper-triangle entries of sum_i (x_i y_i^T - y_i x_i^T): the rank
/// <= 2(k+1) skew forms on k^(n+1), i.e. the k-secant variety of G(1, n).
pub fn skew_rank_coords<F: Scalar>(n: usize, k: usize) -> (Vec<MultiPoly<F>>, usize) {
    let cols = n + 1;
    let nparams = 2 * (k + 1) * cols;
    let x = |i: usize, a: usize| MultiPoly::<F>::var(2 * i * cols + a);
    let y = |i: usize, a: usize| MultiPoly::<F>::var((2 * i + 1) * cols + a);
    let mut coords = Vec::new();
    for a in 0..cols {
        for b in a + 1..cols {
            let mut acc: MultiPoly<F> = Ring::zero();
            for i in 0..=k {
                acc = acc.add(&x(i, a).mul(&y(i, b)));
                acc = acc.sub(&x(i, b).mul(&y(i, a)));
            }
            coords.push(acc);
        }
    }
    (coords, nparams)
}
