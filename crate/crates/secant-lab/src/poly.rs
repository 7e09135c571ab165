//! Sparse multivariate polynomials over an exact scalar field.
//!
//! Exponents are stored sparsely (sorted `(variable, power)` pairs), so a
//! polynomial does not carry a fixed variable count; charts track their own
//! parameter dimension. This also lets `MultiPoly` implement [`Ring`], so the
//! symbolic pfaffians and minors used to build charts share the scalar code.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Ring, Scalar};

/// Exponent vector: sorted, strictly increasing variable indices, all powers
/// nonzero. The empty vector is the constant monomial.
type Expt = Vec<(u32, u32)>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly<F> {
    terms: BTreeMap<Expt, F>,
}

impl<F: Scalar> MultiPoly<F> {
    pub fn constant(c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(i as u32, 1)], F::one());
        MultiPoly { terms }
    }

    pub fn monomial(exps: &[(usize, u32)], coeff: F) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            let mut e: Expt = exps
                .iter()
                .filter(|&&(_, p)| p > 0)
                .map(|&(v, p)| (v as u32, p))
                .collect();
            e.sort_unstable();
            terms.insert(e, coeff);
        }
        MultiPoly { terms }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&(_, p)| p).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Ring::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.mul(c)))
                .collect(),
        }
    }

    /// Exact partial derivative with respect to variable `i`.
    pub fn deriv(&self, i: usize) -> Self {
        let i = i as u32;
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if let Some(pos) = e.iter().position(|&(v, _)| v == i) {
                let p = e[pos].1;
                let mut e2 = e.clone();
                if p == 1 {
                    e2.remove(pos);
                } else {
                    e2[pos].1 = p - 1;
                }
                let coeff = c.mul(&F::from_i64(p as i64));
                if !coeff.is_zero() {
                    terms.insert(e2, coeff);
                }
            }
        }
        MultiPoly { terms }
    }

    /// Evaluate at a point; `point` must cover every variable that occurs.
    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for &(v, p) in e {
                let x = &point[v as usize];
                let mut pw = x.clone();
                for _ in 1..p {
                    pw = pw.mul(x);
                }
                t = t.mul(&pw);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Reindex variables via `map[old] = new`; used when embedding chart
    /// parameters into a join parameter space.
    pub fn remap_vars(&self, map: &[usize]) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2: Expt = e
                .iter()
                .map(|&(v, p)| (map[v as usize] as u32, p))
                .collect();
            e2.sort_unstable();
            terms.insert(e2, c.clone());
        }
        MultiPoly { terms }
    }

    /// Largest variable index occurring, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .flat_map(|e| e.iter().map(|&(v, _)| v as usize))
            .max()
    }
}

impl<F: Scalar> Ring for MultiPoly<F> {
    fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    fn one() -> Self {
        Self::constant(F::one())
    }

    fn from_i64(v: i64) -> Self {
        Self::constant(F::from_i64(v))
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            match terms.get_mut(e) {
                Some(v) => {
                    *v = v.add(c);
                    if v.is_zero() {
                        terms.remove(e);
                    }
                }
                None => {
                    terms.insert(e.clone(), c.clone());
                }
            }
        }
        MultiPoly { terms }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut terms: BTreeMap<Expt, F> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = Vec::with_capacity(e1.len() + e2.len());
                let (mut i, mut j) = (0, 0);
                while i < e1.len() && j < e2.len() {
                    match e1[i].0.cmp(&e2[j].0) {
                        std::cmp::Ordering::Less => {
                            e.push(e1[i]);
                            i += 1;
                        }
                        std::cmp::Ordering::Greater => {
                            e.push(e2[j]);
                            j += 1;
                        }
                        std::cmp::Ordering::Equal => {
                            e.push((e1[i].0, e1[i].1 + e2[j].1));
                            i += 1;
                            j += 1;
                        }
                    }
                }
                e.extend_from_slice(&e1[i..]);
                e.extend_from_slice(&e2[j..]);
                let c = c1.mul(c2);
                match terms.get_mut(&e) {
                    Some(v) => {
                        *v = v.add(&c);
                        if v.is_zero() {
                            terms.remove(&e);
                        }
                    }
                    None => {
                        if !c.is_zero() {
                            terms.insert(e, c);
                        }
                    }
                }
            }
        }
        MultiPoly { terms }
    }

    fn neg(&self) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Scalar> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for &(v, p) in e {
                if p == 1 {
                    write!(f, "*t{}", v)?;
                } else {
                    write!(f, "*t{}^{}", v, p)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp0, Rational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(rng: &mut ChaCha8Rng, nvars: usize) -> MultiPoly<Rational> {
        let mut p: MultiPoly<Rational> = Ring::zero();
        for _ in 0..rng.gen_range(1..6) {
            let mut exps = Vec::new();
            for v in 0..nvars {
                let e = rng.gen_range(0..3u32);
                if e > 0 {
                    exps.push((v, e));
                }
            }
            let c = Rational::from_i64(rng.gen_range(-5..=5));
            p = p.add(&MultiPoly::monomial(&exps, c));
        }
        p
    }

    #[test]
    fn product_rule_random_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..30 {
            let f = random_poly(&mut rng, 3);
            let g = random_poly(&mut rng, 3);
            for v in 0..3 {
                let lhs = f.mul(&g).deriv(v);
                let rhs = f.deriv(v).mul(&g).add(&f.mul(&g.deriv(v)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn eval_matches_structure() {
        // (2 t0^2 t1 - 3) at (2, 5) = 40 - 3 = 37
        let p = MultiPoly::<Fp0>::monomial(&[(0, 2), (1, 1)], Fp0::from_i64(2))
            .add(&MultiPoly::constant(Fp0::from_i64(-3)));
        assert_eq!(p.eval(&[Fp0::new(2), Fp0::new(5)]), Fp0::from_i64(37));
    }

    #[test]
    fn deriv_drops_constants() {
        let p = MultiPoly::<Rational>::monomial(&[(1, 3)], Rational::from_i64(4));
        assert!(p.deriv(0).is_zero());
        let d = p.deriv(1);
        assert_eq!(d, MultiPoly::monomial(&[(1, 2)], Rational::from_i64(12)));
    }

    #[test]
    fn remap_is_consistent_with_eval() {
        let p = MultiPoly::<Rational>::monomial(&[(0, 1), (1, 2)], Rational::from_i64(1));
        let q = p.remap_vars(&[2, 0]);
        let point = [
            Rational::from_i64(7),
            Rational::from_i64(0),
            Rational::from_i64(3),
        ];
        // q(t) = t2 * t0^2 evaluated at (7,0,3) = 3 * 49
        assert_eq!(q.eval(&point), Rational::from_i64(147));
    }
}
