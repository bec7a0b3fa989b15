//! Points on the unit sphere `S^d ⊂ R^{d+1}` and the numeric checks behind the
//! geometric construction: near-or-far composition, cap measure, and the
//! choice of the cap shrink `beta` and edge slack `theta`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack applied to every strict inequality checked on floating-point distances.
pub const BOUNDARY_SLACK: f64 = 1e-9;

/// First value and ratio of the `beta` and `theta` search grids.
pub const GRID_START: f64 = 0.1;
pub const GRID_RATIO: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereSample {
    /// Sphere dimension; points have `d + 1` coordinates.
    pub d: usize,
    pub seed: u64,
    pub points: Vec<Vec<f64>>,
}

impl SphereSample {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point on `S^d` from a normalized Gaussian vector.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..=d).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// `n` i.i.d. uniform points on `S^d`, deterministic in `seed`.
pub fn sample_points(n: usize, d: usize, seed: u64) -> Result<SphereSample> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument(format!(
            "need n >= 1 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let points = (0..n).map(|_| random_unit_vector(&mut rng, d)).collect();
    Ok(SphereSample { d, seed, points })
}

/// Euclidean (chordal) distance.
pub fn dist(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(p.len(), q.len()));
    }
    Ok(chord(p, q))
}

pub fn chord(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// `rho < a` or `rho > 2 - a`.
pub fn is_near_or_far(rho: f64, a: f64) -> bool {
    rho < a || rho > 2.0 - a
}

/// Both pairs `(x, y)` and `(y, z)` are near-or-far at scale `a`.
pub fn near_or_far_hypothesis(x: &[f64], y: &[f64], z: &[f64], a: f64) -> Result<bool> {
    Ok(is_near_or_far(dist(x, y)?, a) && is_near_or_far(dist(y, z)?, a))
}

/// Whether `rho(x, z) < 4√a` or `rho(x, z) > 2 - 4√a`, up to `BOUNDARY_SLACK`.
pub fn verify_near_or_far(x: &[f64], y: &[f64], z: &[f64], a: f64) -> Result<bool> {
    if !(a > 0.0 && a < 0.1) {
        return Err(Error::InvalidArgument(format!(
            "scale a = {a} must lie in (0, 1/10)"
        )));
    }
    dist(x, y)?;
    let rho = dist(x, z)?;
    let bound = 4.0 * a.sqrt();
    Ok(rho < bound + BOUNDARY_SLACK || rho > 2.0 - bound - BOUNDARY_SLACK)
}

/// Distance of `rho(x, z)` from the forbidden middle band; negative means inside it.
pub fn near_or_far_margin(x: &[f64], z: &[f64], a: f64) -> f64 {
    let rho = chord(x, z);
    let bound = 4.0 * a.sqrt();
    (bound - rho).max(rho - (2.0 - bound))
}

fn perturb<R: Rng + ?Sized>(rng: &mut R, base: &[f64], scale: f64) -> Vec<f64> {
    let dir = random_unit_vector(rng, base.len() - 1);
    let v: Vec<f64> = base.iter().zip(&dir).map(|(b, u)| b + scale * u).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

/// A triple satisfying the near-or-far hypothesis at scale `a`.
///
/// Partners of `y` are proposed near `y` or near `-y` with a perturbation up
/// to `1.2 a`, and proposals outside the hypothesis are rejected.
pub fn sample_near_or_far_triple<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    a: f64,
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    fn partner<R: Rng + ?Sized>(rng: &mut R, y: &[f64], a: f64) -> Vec<f64> {
        loop {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let anchor: Vec<f64> = y.iter().map(|c| sign * c).collect();
            let scale = rng.gen_range(0.0..1.2 * a);
            let p = perturb(rng, &anchor, scale);
            if is_near_or_far(chord(&p, y), a) {
                return p;
            }
        }
    }
    let y = random_unit_vector(rng, d);
    let x = partner(rng, &y, a);
    let z = partner(rng, &y, a);
    (x, y, z)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapEstimate {
    pub measure: f64,
    pub std_err: f64,
    pub samples: usize,
}

/// Monte Carlo samples of the first coordinate of uniform points on `S^d`.
/// For the pole `e_0`, `||e_0 - q||^2 = 2 - 2 q_0`.
fn pole_coordinates(d: usize, samples: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng_from_seed(seed);
    (0..samples)
        .map(|_| random_unit_vector(&mut rng, d)[0])
        .collect()
}

fn estimate_from(first: &[f64], radius: f64) -> CapEstimate {
    let n = first.len();
    let hits = first
        .iter()
        .filter(|&&q0| (2.0 - 2.0 * q0).max(0.0).sqrt() <= radius)
        .count();
    let p = hits as f64 / n as f64;
    CapEstimate {
        measure: p,
        std_err: (p * (1.0 - p) / n as f64).sqrt(),
        samples: n,
    }
}

/// Estimated normalized measure of a cap of chordal radius `radius` on `S^d`.
pub fn cap_estimate(d: usize, radius: f64, samples: usize, seed: u64) -> Result<CapEstimate> {
    if !(0.0..=2.0).contains(&radius) || samples == 0 || d == 0 {
        return Err(Error::InvalidArgument(format!(
            "cap needs 0 <= radius <= 2, samples >= 1, d >= 1 (radius {radius}, samples {samples}, d {d})"
        )));
    }
    Ok(estimate_from(&pole_coordinates(d, samples, seed), radius))
}

pub fn cap_measure(d: usize, radius: f64, samples: usize, seed: u64) -> Result<f64> {
    cap_estimate(d, radius, samples, seed).map(|c| c.measure)
}

/// Largest chordal distance between two points of a cap of chordal radius `rho <= √2`.
pub fn cap_diameter(rho: f64) -> f64 {
    2.0 * rho * (1.0 - rho * rho / 4.0).max(0.0).sqrt()
}

pub fn grid(len: usize) -> impl Iterator<Item = f64> {
    (0..len as i32).map(|k| GRID_START * GRID_RATIO.powi(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaChoice {
    pub beta: f64,
    /// Estimated cap measure at radius `√2 - beta`.
    pub measure: f64,
    /// `measure - 3 std_err`, the value compared with `1/2 - epsilon`.
    pub certified: f64,
}

const BETA_GRID_LEN: usize = 60;

/// Largest grid `beta` whose cap of radius `√2 - beta` certifiably has measure
/// at least `1/2 - epsilon` (estimate minus three standard errors).
pub fn choose_beta(epsilon: f64, d: usize, samples: usize, seed: u64) -> Result<BetaChoice> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "epsilon = {epsilon} must lie in (0, 1/2)"
        )));
    }
    if samples == 0 || d == 0 {
        return Err(Error::InvalidArgument("need samples >= 1 and d >= 1".into()));
    }
    let first = pole_coordinates(d, samples, seed);
    for beta in grid(BETA_GRID_LEN) {
        let est = estimate_from(&first, std::f64::consts::SQRT_2 - beta);
        let certified = est.measure - 3.0 * est.std_err;
        if certified >= 0.5 - epsilon {
            return Ok(BetaChoice {
                beta,
                measure: est.measure,
                certified,
            });
        }
    }
    Err(Error::Infeasible(format!(
        "no beta on the grid certifies measure >= {} with {samples} samples; use more samples",
        0.5 - epsilon
    )))
}

/// `4^f theta^(2^-f)`, evaluated in log space so tiny `theta` does not underflow.
pub fn theta_budget(theta: f64, f: usize) -> f64 {
    log_theta_budget(theta.ln(), f).exp()
}

fn log_theta_budget(ln_theta: f64, j: usize) -> f64 {
    j as f64 * 4f64.ln() + ln_theta * 0.5f64.powi(j as i32)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeoParams {
    pub epsilon: Option<f64>,
    pub beta: f64,
    pub theta: f64,
    pub f: usize,
    pub theta_budget: f64,
    /// Exact diameter of a cap of chordal radius `√2 - beta`.
    pub cap_diameter: f64,
    pub strict: bool,
}

impl GeoParams {
    /// Parameters supplied directly, without feasibility guarantees.
    pub fn relaxed(beta: f64, theta: f64, f: usize) -> Self {
        GeoParams {
            epsilon: None,
            beta,
            theta,
            f,
            theta_budget: theta_budget(theta, f),
            cap_diameter: cap_diameter(std::f64::consts::SQRT_2 - beta),
            strict: false,
        }
    }

    /// `4^f theta^(2^-f) < 1/10`.
    pub fn budget_ok(&self) -> bool {
        self.theta_budget < 0.1
    }

    /// The cap-diameter inequality `diam < 2 - 4^f theta^(2^-f)`.
    pub fn diameter_ok(&self) -> bool {
        self.cap_diameter < 2.0 - self.theta_budget
    }
}

/// Largest grid `theta` with `4^f theta^(2^-f) < 1/10` and
/// `diam(cap(√2 - beta)) < 2 - 4^f theta^(2^-f)`.
pub fn choose_theta(f: usize, beta: f64) -> Result<GeoParams> {
    let sqrt2 = std::f64::consts::SQRT_2;
    if f == 0 || !(beta > 0.0 && beta < sqrt2) {
        return Err(Error::InvalidArgument(format!(
            "need f >= 1 and 0 < beta < √2 (f = {f}, beta = {beta})"
        )));
    }
    let diameter = cap_diameter(sqrt2 - beta);
    let mut k = 0i32;
    loop {
        let ln_theta = GRID_START.ln() + k as f64 * GRID_RATIO.ln();
        let theta = ln_theta.exp();
        if theta == 0.0 {
            break;
        }
        let budget = log_theta_budget(ln_theta, f).exp();
        if budget < 0.1 && diameter < 2.0 - budget {
            return Ok(GeoParams {
                epsilon: None,
                beta,
                theta,
                f,
                theta_budget: budget,
                cap_diameter: diameter,
                strict: true,
            });
        }
        k += 1;
    }
    Err(Error::Infeasible(format!(
        "no representable theta satisfies 4^{f} theta^(2^-{f}) < 1/10; use relaxed mode"
    )))
}

/// Strict parameters: `beta` from the cap estimate, then `theta`.
pub fn strict_params(epsilon: f64, f: usize, d: usize, samples: usize, seed: u64) -> Result<GeoParams> {
    let beta = choose_beta(epsilon, d, samples, seed)?;
    let mut p = choose_theta(f, beta.beta)?;
    p.epsilon = Some(epsilon);
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainStep {
    pub j: usize,
    /// `4 sqrt(4^j theta^(2^-j))`
    pub lhs: f64,
    /// `4^(j+1) theta^(2^-(j+1))`
    pub rhs: f64,
    pub ln_lhs: f64,
    pub ln_rhs: f64,
    pub holds: bool,
}

/// The composition inequalities `4√(4^j θ^(2^-j)) ≤ 4^(j+1) θ^(2^-(j+1))` for `j = 0..=f`.
pub fn theta_chain(theta: f64, f: usize) -> Vec<ChainStep> {
    let ln_theta = theta.ln();
    (0..=f)
        .map(|j| {
            let ln_lhs = 4f64.ln() + 0.5 * log_theta_budget(ln_theta, j);
            let ln_rhs = log_theta_budget(ln_theta, j + 1);
            ChainStep {
                j,
                lhs: ln_lhs.exp(),
                rhs: ln_rhs.exp(),
                ln_lhs,
                ln_rhs,
                holds: ln_lhs <= ln_rhs + 1e-12 * ln_rhs.abs().max(1.0),
            }
        })
        .collect()
}
