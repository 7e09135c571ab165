//! The measurement engine: secant dimensions via stacked tangent frames,
//! the full defect ledger, tangential projections, Gauss defects and
//! contact-locus dimensions.
//!
//! Generic values are taken as the maximum of sampled ranks over a small
//! number of trials: a sampled rank never exceeds the generic one, so the
//! maximum is a high-confidence lower bound that is exact off a
//! measure-zero locus.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chart::{join_map, ParamMap, PointSample};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::scalar::{Ring, Scalar};

/// Hard cap on the fill search; a non-degenerate chart fills by k = r.
const FILL_SEARCH_CAP: usize = 64;

/// Per-k entry of the defect ledger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerRow {
    pub k: usize,
    /// Dimension of the k-secant variety.
    pub s: usize,
    /// Expected dimension min(r, n(k+1)+k).
    pub e: usize,
    /// Secant defect e - s.
    pub delta: usize,
    /// Fiber defect (k+1)n + k - s.
    pub f: usize,
    /// Projection defect f_k - f_{k-1}.
    pub psi: usize,
    /// Tangential contact-locus dimension (tangent-space method; an upper
    /// bound when the contact scheme is non-reduced).
    pub gamma: Option<usize>,
    /// Gauss defect of the k-secant variety, from the contact identity
    /// t_k = k*gamma_k + k + gamma_k - f_k.
    pub t: Option<usize>,
}

/// Defect ledger of one chart through `min(kmax, k0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectLedger {
    pub n: usize,
    pub r: usize,
    /// Least k with S^k(X) = P^r.
    pub k0: usize,
    pub rows: Vec<LedgerRow>,
}

impl DefectLedger {
    pub fn row(&self, k: usize) -> Option<&LedgerRow> {
        self.rows.get(k).filter(|row| row.k == k)
    }

    pub fn kmax(&self) -> usize {
        self.rows.last().map_or(0, |r| r.k)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EngineOpts {
    pub trials: usize,
    pub seed: u64,
    /// Compute contact-locus dimensions where defined.
    pub gamma: bool,
    /// Ledger depth; defaults to k0 capped at 6.
    pub kmax: Option<usize>,
}

impl Default for EngineOpts {
    fn default() -> Self {
        EngineOpts {
            trials: 3,
            seed: 0,
            gamma: true,
            kmax: None,
        }
    }
}

impl EngineOpts {
    pub fn seeded(seed: u64) -> Self {
        EngineOpts {
            seed,
            ..Default::default()
        }
    }
}

/// Purpose tags keep the random streams of unrelated computations apart
/// while staying reproducible for a fixed base seed.
#[derive(Clone, Copy)]
enum Purpose {
    Validate = 1,
    Secant = 2,
    Contact = 3,
    Projection = 4,
    Gauss = 5,
    Image = 6,
}

fn rng_for(seed: u64, purpose: Purpose, k: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((purpose as u64) << 48) | ((k as u64) << 24) | trial as u64);
    rng
}

/// Check that the chart is an immersion at a general point: the tangent
/// frame must reach rank n+1.
pub fn validate_chart<F: Scalar>(chart: &ParamMap<F>, opts: &EngineOpts) -> Result<(), Error> {
    let mut best = 0;
    for trial in 0..opts.trials {
        let mut rng = rng_for(opts.seed, Purpose::Validate, 0, trial);
        if let Ok(sample) = chart.sample_general(&mut rng) {
            best = best.max(sample.frame.rank());
            if best == chart.n() + 1 {
                return Ok(());
            }
        }
    }
    Err(Error::NotImmersion {
        label: chart.label().to_string(),
        got: best,
        want: chart.n() + 1,
    })
}

fn stacked_rank_once<F: Scalar>(
    chart: &ParamMap<F>,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<PointSample<F>>, Matrix<F>, usize), Error> {
    let mut samples = Vec::with_capacity(k + 1);
    for _ in 0..=k {
        samples.push(chart.sample_general(rng)?);
    }
    let frames: Vec<&Matrix<F>> = samples.iter().map(|s| &s.frame).collect();
    let stack = Matrix::vstack(&frames);
    let rank = stack.rank();
    Ok((samples, stack, rank))
}

/// Dimension of the k-secant variety: the maximal rank over `trials` of the
/// stacked tangent frames at k+1 independent general points, minus one.
pub fn secant_dim<F: Scalar>(
    chart: &ParamMap<F>,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<usize, Error> {
    let r = chart.ambient();
    let mut best = 0;
    let mut failures = 0;
    for trial in 0..trials.max(1) {
        let mut rng = rng_for(seed, Purpose::Secant, k, trial);
        match stacked_rank_once(chart, k, &mut rng) {
            Ok((_, _, rank)) => best = best.max(rank),
            Err(_) => failures += 1,
        }
        if best == r + 1 {
            break; // cannot grow further
        }
    }
    if failures == trials.max(1) {
        return Err(Error::DegenerateSampling(chart.label().to_string()));
    }
    Ok(best - 1)
}

/// Dimension of the image of a chart that need not be an immersion
/// (tangential projections, join charts): maximal frame rank minus one.
/// A chart contracted to nothing reports dimension 0.
pub fn image_dim<F: Scalar>(chart: &ParamMap<F>, trials: usize, seed: u64) -> usize {
    if chart.coords().is_empty() || chart.is_identically_zero() {
        return 0;
    }
    let mut best = 0;
    for trial in 0..trials.max(1) {
        let mut rng = rng_for(seed, Purpose::Image, 0, trial);
        if let Ok(sample) = chart.sample_any(&mut rng) {
            best = best.max(sample.frame.rank());
        }
    }
    best.saturating_sub(1)
}

/// Compose the chart with a basis of the annihilator of the span of the
/// tangent spaces at k general points. For k = 0 the chart is returned
/// unchanged. A fully contracted image is returned as a zero chart, not an
/// error: it signals s^(k) = s^(k-1).
pub fn tangential_projection<F: Scalar>(
    chart: &ParamMap<F>,
    k: usize,
    opts: &EngineOpts,
) -> Result<ParamMap<F>, Error> {
    if k == 0 {
        return Ok(chart.clone());
    }
    // maximize the stacked rank over trials so the centre is generic
    let mut best: Option<(usize, Matrix<F>)> = None;
    for trial in 0..opts.trials.max(1) {
        let mut rng = rng_for(opts.seed, Purpose::Projection, k, trial);
        if let Ok((_, stack, rank)) = stacked_rank_once(chart, k - 1, &mut rng) {
            if best.as_ref().map_or(true, |(r, _)| rank > *r) {
                best = Some((rank, stack));
            }
        }
    }
    let (_, stack) = best.ok_or_else(|| Error::DegenerateSampling(chart.label().to_string()))?;
    let ann = stack.annihilator();
    if ann.rows() == 0 {
        // the tangent span already fills projective space
        let zero: MultiPoly<F> = Ring::zero();
        return Ok(ParamMap::new(
            chart.n(),
            vec![zero],
            format!("{}|tproj:{}", chart.label(), k),
        ));
    }
    Ok(chart
        .compose_linear(&ann)
        .with_label(format!("{}|tproj:{}", chart.label(), k)))
}

/// Shared core of the contact-locus and Gauss-defect computations: the
/// parameter-space dimension of the tangent space at `t0` to the scheme
/// `{t : N . phi(t) = 0, N . d phi/d t_j(t) = 0 for all j}`, where the rows
/// of `N` cut out the span under study. Returns `chart.n() - rank(J)`.
fn containment_fiber_dim<F: Scalar>(
    chart: &ParamMap<F>,
    annihilator: &Matrix<F>,
    t0: &[F],
) -> usize {
    let nvars = chart.n();
    let coords = chart.coords();
    // derivative families: phi itself, then each d phi / d t_j
    let mut families: Vec<Vec<MultiPoly<F>>> = Vec::with_capacity(nvars + 1);
    families.push(coords.to_vec());
    for j in 0..nvars {
        families.push(coords.iter().map(|c| c.deriv(j)).collect());
    }
    let mut jac_rows: Vec<Vec<F>> = Vec::new();
    for m in 0..annihilator.rows() {
        for family in &families {
            // q(t) = sum_c N[m][c] family_c(t); jacobian row = grad q (t0)
            let mut q: MultiPoly<F> = Ring::zero();
            for (c, pol) in family.iter().enumerate() {
                let coeff = annihilator.at(m, c);
                if !coeff.is_zero() {
                    q = q.add(&pol.scale(coeff));
                }
            }
            jac_rows.push((0..nvars).map(|l| q.deriv(l).eval(t0)).collect());
        }
    }
    let jac = Matrix::from_rows(jac_rows);
    nvars - jac.rank()
}

/// Tangential defect t(X): the dimension of the general fibre of the Gauss
/// map, computed as the tangent-space dimension at a general sample of the
/// scheme of points whose tangent space stays inside the sampled one. Works
/// on non-immersion charts (joins) by measuring against the image dimension.
pub fn gauss_defect<F: Scalar>(chart: &ParamMap<F>, opts: &EngineOpts) -> Result<usize, Error> {
    let dim = image_dim(chart, opts.trials, opts.seed);
    // draw a sample whose frame attains the generic rank dim+1
    let mut chosen: Option<PointSample<F>> = None;
    for trial in 0..crate::chart::MAX_RESAMPLE {
        let mut rng = rng_for(opts.seed, Purpose::Gauss, 0, trial);
        if let Ok(sample) = chart.sample_any(&mut rng) {
            if sample.frame.rank() == dim + 1 {
                chosen = Some(sample);
                break;
            }
        }
    }
    let sample = chosen.ok_or_else(|| Error::DegenerateSampling(chart.label().to_string()))?;
    let ann = sample.frame.annihilator();
    let fiber_params = containment_fiber_dim(chart, &ann, &sample.params);
    // parameter-space fibre dimension minus the generic fibre dimension of
    // the parametrization itself (n - dim); for immersions this is n - rank(J)
    Ok(fiber_params - (chart.n() - dim))
}

/// Tangential k-contact locus dimension gamma_k, with the stacked span at
/// k+1 general points. Only defined while S^k(X) does not fill.
pub fn contact_gamma<F: Scalar>(
    chart: &ParamMap<F>,
    k: usize,
    opts: &EngineOpts,
) -> Result<usize, Error> {
    let r = chart.ambient();
    let mut best: Option<(usize, Vec<PointSample<F>>, Matrix<F>)> = None;
    for trial in 0..opts.trials.max(1) {
        let mut rng = rng_for(opts.seed, Purpose::Contact, k, trial);
        if let Ok((samples, stack, rank)) = stacked_rank_once(chart, k, &mut rng) {
            if best.as_ref().map_or(true, |(r, _, _)| rank > *r) {
                best = Some((rank, samples, stack));
            }
        }
    }
    let (rank, samples, stack) =
        best.ok_or_else(|| Error::DegenerateSampling(chart.label().to_string()))?;
    if rank == r + 1 {
        return Err(Error::ContactUndefined { k });
    }
    let ann = stack.annihilator();
    Ok(containment_fiber_dim(chart, &ann, &samples[0].params))
}

/// Gauss defect of the k-secant variety, computed directly on the join
/// parametrization of k+1 copies of the chart.
pub fn secant_gauss_defect<F: Scalar>(
    chart: &ParamMap<F>,
    k: usize,
    opts: &EngineOpts,
) -> Result<usize, Error> {
    let s = secant_dim(chart, k, opts.trials, opts.seed)?;
    if s == chart.ambient() {
        return Err(Error::ContactUndefined { k });
    }
    let copies: Vec<&ParamMap<F>> = std::iter::repeat(chart).take(k + 1).collect();
    let join = join_map(&copies)?;
    gauss_defect(&join, opts)
}

/// Build the defect ledger through `min(kmax, k0)`.
pub fn defect_ledger<F: Scalar>(
    chart: &ParamMap<F>,
    opts: &EngineOpts,
) -> Result<DefectLedger, Error> {
    validate_chart(chart, opts)?;
    let n = chart.n();
    let r = chart.ambient();

    // s^(k) for k = 0, 1, ... until the secant variety fills
    let mut s_values = vec![n];
    let mut k0 = 0;
    if n < r {
        for k in 1..=FILL_SEARCH_CAP {
            let s = secant_dim(chart, k, opts.trials, opts.seed)?;
            s_values.push(s);
            if s == r {
                k0 = k;
                break;
            }
            if s <= s_values[k - 1] {
                return Err(Error::Analysis(format!(
                    "secant dimension stalled at {} below ambient {} on `{}` (degenerate chart?)",
                    s,
                    r,
                    chart.label()
                )));
            }
        }
        if k0 == 0 {
            return Err(Error::Analysis(format!(
                "secant varieties of `{}` did not fill within {} steps",
                chart.label(),
                FILL_SEARCH_CAP
            )));
        }
    }

    let kmax = opts.kmax.unwrap_or_else(|| k0.min(6)).min(k0);
    let mut rows = Vec::with_capacity(kmax + 1);
    let mut prev_f = 0;
    for k in 0..=kmax {
        let s = s_values[k];
        let e = r.min(n * (k + 1) + k);
        let f = (k + 1) * n + k - s;
        let psi = if k == 0 { 0 } else { f - prev_f };
        let gamma = if k >= 1 && s < r && opts.gamma {
            Some(contact_gamma(chart, k, opts)?)
        } else {
            None
        };
        let t = gamma.map(|g| k * g + k + g - f);
        rows.push(LedgerRow {
            k,
            s,
            e,
            delta: e - s,
            f,
            psi,
            gamma,
            t,
        });
        prev_f = f;
    }

    Ok(DefectLedger { n, r, k0, rows })
}
