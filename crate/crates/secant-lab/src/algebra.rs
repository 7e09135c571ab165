//! Split composition algebras over the rationals, given by structure
//! constant tables: R, the split complex numbers (Q + Q with swap
//! conjugation), the split quaternions (2x2 matrices with adjugate
//! conjugation) and the split octonions (Zorn vector matrices). All four
//! satisfy the norm composition law N(xy) = N(x)N(y) and x * conj(x) =
//! N(x) * 1, which is what the hermitian rank-one charts rely on.

use crate::scalar::Ring;

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub enum Algebra {
    R,
    SplitC,
    SplitH,
    SplitO,
}

/// One term of a structure-constant entry: basis index plus sign.
type Term = (usize, i64);

/// Multiplication and conjugation tables for one algebra.
pub struct AlgebraTable {
    pub dim: usize,
    /// `mul[i][j]` lists the terms of `e_i * e_j`.
    mul: Vec<Vec<Vec<Term>>>,
    /// `conj[i]` is the single signed basis term of `conj(e_i)`.
    conj: Vec<Term>,
    /// Coordinates of the multiplicative identity.
    unit: Vec<i64>,
}

impl Algebra {
    pub fn dim(self) -> usize {
        match self {
            Algebra::R => 1,
            Algebra::SplitC => 2,
            Algebra::SplitH => 4,
            Algebra::SplitO => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algebra::R => "R",
            Algebra::SplitC => "splitC",
            Algebra::SplitH => "splitH",
            Algebra::SplitO => "splitO",
        }
    }

    pub fn table(self) -> AlgebraTable {
        match self {
            Algebra::R => AlgebraTable {
                dim: 1,
                mul: vec![vec![vec![(0, 1)]]],
                conj: vec![(0, 1)],
                unit: vec![1],
            },
            // Q + Q, componentwise product; conjugation swaps the factors.
            Algebra::SplitC => AlgebraTable {
                dim: 2,
                mul: vec![
                    vec![vec![(0, 1)], vec![]],
                    vec![vec![], vec![(1, 1)]],
                ],
                conj: vec![(1, 1), (0, 1)],
                unit: vec![1, 1],
            },
            // 2x2 matrices, basis (E11, E12, E21, E22); conj = adjugate.
            Algebra::SplitH => {
                let e = |r: usize, c: usize| r * 2 + c;
                let mut mul = vec![vec![Vec::new(); 4]; 4];
                for a in 0..2 {
                    for b in 0..2 {
                        for c in 0..2 {
                            for d in 0..2 {
                                if b == c {
                                    mul[e(a, b)][e(c, d)].push((e(a, d), 1));
                                }
                            }
                        }
                    }
                }
                AlgebraTable {
                    dim: 4,
                    mul,
                    conj: vec![(3, 1), (1, -1), (2, -1), (0, 1)],
                    unit: vec![1, 0, 0, 1],
                }
            }
            // Zorn vector matrices (a, v; w, b), basis order
            // (a, v1, v2, v3, w1, w2, w3, b):
            //   (a1,v1;w1,b1)(a2,v2;w2,b2) =
            //     (a1a2 + v1.w2,  a1v2 + b2v1 - w1 x w2;
            //      a2w1 + b1w2 + v1 x v2,  b1b2 + w1.v2)
            Algebra::SplitO => {
                let mut mul = vec![vec![Vec::new(); 8]; 8];
                let a = 0usize;
                let b = 7usize;
                let v = |i: usize| 1 + i;
                let w = |i: usize| 4 + i;
                // scalar parts
                mul[a][a].push((a, 1));
                mul[b][b].push((b, 1));
                for i in 0..3 {
                    mul[v(i)][w(i)].push((a, 1)); // v1 . w2
                    mul[w(i)][v(i)].push((b, 1)); // w1 . v2
                    mul[a][v(i)].push((v(i), 1)); // a1 v2
                    mul[v(i)][b].push((v(i), 1)); // b2 v1
                    mul[w(i)][a].push((w(i), 1)); // a2 w1
                    mul[b][w(i)].push((w(i), 1)); // b1 w2
                }
                // cross products: (x cross y)_k = eps_{ijk} x_i y_j
                let eps = [(0, 1, 2, 1i64), (1, 2, 0, 1), (2, 0, 1, 1),
                           (1, 0, 2, -1), (2, 1, 0, -1), (0, 2, 1, -1)];
                for &(i, j, k, s) in &eps {
                    mul[w(i)][w(j)].push((v(k), -s)); // - w1 x w2
                    mul[v(i)][v(j)].push((w(k), s)); // + v1 x v2
                }
                AlgebraTable {
                    dim: 8,
                    mul,
                    conj: vec![
                        (7, 1),
                        (1, -1),
                        (2, -1),
                        (3, -1),
                        (4, -1),
                        (5, -1),
                        (6, -1),
                        (0, 1),
                    ],
                    unit: vec![1, 0, 0, 0, 0, 0, 0, 1],
                }
            }
        }
    }
}

impl AlgebraTable {
    /// Coordinates of the identity in any ring.
    pub fn unit<R: Ring>(&self) -> Vec<R> {
        self.unit.iter().map(|&c| R::from_i64(c)).collect()
    }

    pub fn mul<R: Ring>(&self, x: &[R], y: &[R]) -> Vec<R> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![R::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let prod = x[i].mul(&y[j]);
                for &(k, s) in &self.mul[i][j] {
                    let signed = if s == 1 { prod.clone() } else { prod.neg() };
                    out[k] = out[k].add(&signed);
                }
            }
        }
        out
    }

    pub fn conj<R: Ring>(&self, x: &[R]) -> Vec<R> {
        let mut out = vec![R::zero(); self.dim];
        for (i, &(k, s)) in self.conj.iter().enumerate() {
            let signed = if s == 1 { x[i].clone() } else { x[i].neg() };
            out[k] = out[k].add(&signed);
        }
        out
    }

    /// The scalar lambda with `x * conj(x) = lambda * 1`. Panics if the
    /// product is not a multiple of the identity, which would mean a broken
    /// table.
    pub fn norm<R: Ring>(&self, x: &[R]) -> R {
        let prod = self.mul(x, &self.conj(x));
        let lambda = prod[0].clone(); // unit[0] == 1 for all four tables
        for (i, &u) in self.unit.iter().enumerate() {
            let want = match u {
                0 => R::zero(),
                1 => lambda.clone(),
                _ => unreachable!(),
            };
            assert!(
                prod[i] == want,
                "x * conj(x) is not a scalar multiple of the identity"
            );
        }
        lambda
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, Ring};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
        (0..dim)
            .map(|_| Rational::from_i64(rng.gen_range(-9..=9)))
            .collect()
    }

    #[test]
    fn norm_composition_law_all_algebras() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for alg in [Algebra::R, Algebra::SplitC, Algebra::SplitH, Algebra::SplitO] {
            let t = alg.table();
            for _ in 0..50 {
                let x = random_element(&mut rng, t.dim);
                let y = random_element(&mut rng, t.dim);
                let nxy = t.norm(&t.mul(&x, &y));
                assert_eq!(nxy, t.norm(&x).mul(&t.norm(&y)), "{:?}", alg);
            }
        }
    }

    #[test]
    fn unit_is_two_sided_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for alg in [Algebra::R, Algebra::SplitC, Algebra::SplitH, Algebra::SplitO] {
            let t = alg.table();
            let one: Vec<Rational> = t.unit();
            for _ in 0..20 {
                let x = random_element(&mut rng, t.dim);
                assert_eq!(t.mul(&one, &x), x);
                assert_eq!(t.mul(&x, &one), x);
            }
        }
    }

    #[test]
    fn split_octonions_are_alternative_not_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let t = Algebra::SplitO.table();
        let mut saw_nonassoc = false;
        for _ in 0..30 {
            let x = random_element(&mut rng, 8);
            let y = random_element(&mut rng, 8);
            let z = random_element(&mut rng, 8);
            // alternativity: (xx)y = x(xy) and (yx)x = y(xx)
            assert_eq!(t.mul(&t.mul(&x, &x), &y), t.mul(&x, &t.mul(&x, &y)));
            assert_eq!(t.mul(&t.mul(&y, &x), &x), t.mul(&y, &t.mul(&x, &x)));
            if t.mul(&t.mul(&x, &y), &z) != t.mul(&x, &t.mul(&y, &z)) {
                saw_nonassoc = true;
            }
        }
        assert!(saw_nonassoc);
    }
}
