//! Polynomial parametrizations of affine charts of projective varieties,
//! their tangent frames, linear reparametrizations and joins.

use rand::Rng;

use crate::error::Error;
use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::scalar::{Ring, Scalar};

/// How many times a degenerate random sample is rejected before giving up.
/// Chart bad loci have measure zero, so repeated failure means the chart
/// itself is degenerate.
pub const MAX_RESAMPLE: usize = 10;

/// A polynomial map from `n` affine parameters to the `r+1` homogeneous
/// coordinates of a projective variety. A general point of the variety is
/// assumed to lie in the chart.
#[derive(Clone, Debug)]
pub struct ParamMap<F> {
    n: usize,
    coords: Vec<MultiPoly<F>>,
    label: String,
}

/// A point of the chart together with the `(n+1) x (r+1)` tangent frame
/// whose row space is the affine cone over the embedded tangent space.
#[derive(Clone, Debug)]
pub struct PointSample<F> {
    pub params: Vec<F>,
    pub point: Vec<F>,
    pub frame: Matrix<F>,
}

impl<F: Scalar> ParamMap<F> {
    pub fn new(n: usize, coords: Vec<MultiPoly<F>>, label: impl Into<String>) -> Self {
        let map = ParamMap {
            n,
            coords,
            label: label.into(),
        };
        debug_assert!(map
            .coords
            .iter()
            .all(|c| c.max_var().map_or(true, |v| v < map.n)));
        map
    }

    /// Parameter-space dimension (the expected dimension of the variety).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient projective dimension.
    pub fn ambient(&self) -> usize {
        self.coords.len().saturating_sub(1)
    }

    pub fn coords(&self) -> &[MultiPoly<F>] {
        &self.coords
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// True when every coordinate is the zero polynomial, i.e. the chart
    /// was fully contracted by a projection.
    pub fn is_identically_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The homogeneous coordinates of the image of `t`.
    pub fn evaluate(&self, t: &[F]) -> Vec<F> {
        assert_eq!(t.len(), self.n, "parameter count mismatch");
        self.coords.iter().map(|c| c.eval(t)).collect()
    }

    /// The `(n+1) x (r+1)` matrix with rows `phi(t), d phi/d t_1, ...`;
    /// its row space is the cone over the embedded tangent space at the
    /// image point, so the projective tangent dimension is `rank - 1`.
    pub fn tangent_frame(&self, t: &[F]) -> Matrix<F> {
        let mut rows = Vec::with_capacity(self.n + 1);
        rows.push(self.evaluate(t));
        for j in 0..self.n {
            rows.push(self.coords.iter().map(|c| c.deriv(j).eval(t)).collect());
        }
        Matrix::from_rows(rows)
    }

    /// Recombine coordinates by a linear map: the new chart has coordinates
    /// `L . coords`, one per row of `L`. `L` must have `r+1` columns.
    pub fn compose_linear(&self, l: &Matrix<F>) -> ParamMap<F> {
        assert_eq!(
            l.cols(),
            self.coords.len(),
            "linear map column count must match chart coordinates"
        );
        let coords: Vec<MultiPoly<F>> = (0..l.rows())
            .map(|i| {
                let mut acc: MultiPoly<F> = Ring::zero();
                for (j, c) in self.coords.iter().enumerate() {
                    if !l.at(i, j).is_zero() {
                        acc = acc.add(&c.scale(l.at(i, j)));
                    }
                }
                acc
            })
            .collect();
        ParamMap::new(self.n, coords, self.label.clone())
    }

    /// Draw a sample, rejecting zero image vectors. Frame rank is not
    /// constrained; used on charts that need not be immersions (joins,
    /// tangential projections).
    pub fn sample_any<R: Rng>(&self, rng: &mut R) -> Result<PointSample<F>, Error> {
        for _ in 0..MAX_RESAMPLE {
            let t: Vec<F> = (0..self.n).map(|_| F::sample_param(rng)).collect();
            let point = self.evaluate(&t);
            if point.iter().all(F::is_zero) {
                continue;
            }
            let frame = self.tangent_frame(&t);
            return Ok(PointSample {
                params: t,
                point,
                frame,
            });
        }
        Err(Error::DegenerateSampling(self.label.clone()))
    }

    /// Draw a general point: nonzero image and full frame rank `n+1`.
    pub fn sample_general<R: Rng>(&self, rng: &mut R) -> Result<PointSample<F>, Error> {
        for _ in 0..MAX_RESAMPLE {
            let t: Vec<F> = (0..self.n).map(|_| F::sample_param(rng)).collect();
            let point = self.evaluate(&t);
            if point.iter().all(F::is_zero) {
                continue;
            }
            let frame = self.tangent_frame(&t);
            if frame.rank() < self.n + 1 {
                continue;
            }
            return Ok(PointSample {
                params: t,
                point,
                frame,
            });
        }
        Err(Error::DegenerateSampling(self.label.clone()))
    }
}

/// Parametrize the join of the given charts: parameters are the
/// concatenated chart parameters plus `k` free affine mixing weights
/// (`lambda_0 = 1`), mapping to `sum lambda_i phi_i(t_i)`. For `k+1`
/// copies of one chart this parametrizes the k-secant variety.
pub fn join_map<F: Scalar>(charts: &[&ParamMap<F>]) -> Result<ParamMap<F>, Error> {
    assert!(!charts.is_empty(), "join of no charts");
    let ambient = charts[0].ambient();
    if charts.iter().any(|c| c.ambient() != ambient) {
        return Err(Error::AmbientMismatch);
    }
    if charts.len() == 1 {
        return Ok(charts[0].clone());
    }
    let k = charts.len() - 1;
    let total_params: usize = charts.iter().map(|c| c.n()).sum();
    let nvars = total_params + k;

    let mut coords: Vec<MultiPoly<F>> = vec![Ring::zero(); ambient + 1];
    let mut offset = 0;
    for (i, chart) in charts.iter().enumerate() {
        let map: Vec<usize> = (0..chart.n()).map(|v| offset + v).collect();
        for (c, coord) in chart.coords().iter().enumerate() {
            let shifted = coord.remap_vars(&map);
            let term = if i == 0 {
                shifted
            } else {
                shifted.mul(&MultiPoly::var(total_params + i - 1))
            };
            coords[c] = coords[c].add(&term);
        }
        offset += chart.n();
    }

    let labels: Vec<&str> = charts.iter().map(|c| c.label()).collect();
    Ok(ParamMap::new(
        nvars,
        coords,
        format!("join({})", labels.join(", ")),
    ))
}
