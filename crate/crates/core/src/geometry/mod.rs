//! Balls, spherical caps, and exact uniform sampling in arbitrary dimension.
//!
//! Everything here is evaluated in log-space where powers of the form
//! (1 - x^2)^(n/2) appear, so the module stays usable at n = 1e5 without
//! underflowing to zero prematurely.

use rand::Rng;
use rand_distr::{Open01, StandardNormal};
use thiserror::Error;

pub mod special;

use special::betainc_reg;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("ball radius must be positive and finite, got {radius}")]
    InvalidRadius { radius: f64 },
    #[error("cap height {height} outside [0, {}] for radius {radius}", 2.0 * radius)]
    HeightOutOfRange { radius: f64, height: f64 },
    #[error("cap volume bound requires 0 < height <= radius, got height {height}, radius {radius}")]
    BoundHeightOutOfRange { radius: f64, height: f64 },
    #[error("normal vector must have unit norm (within 1e-12), got norm {norm}")]
    NonUnitNormal { norm: f64 },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("incomplete beta parameters must be positive, got a={a}, b={b}")]
    InvalidBetaParams { a: f64, b: f64 },
    #[error("incomplete beta argument must lie in [0,1], got {x}")]
    InvalidBetaArgument { x: f64 },
    #[error("incomplete beta continued fraction did not converge at a={a}, b={b}, x={x}")]
    BetaNotConverged { a: f64, b: f64, x: f64 },
}

/// A dense point in R^n.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        debug_assert!(coords.iter().all(|c| c.is_finite()));
        Point(coords)
    }

    /// Origin of R^n.
    pub fn zeros(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    /// The canonical basis vector e1 scaled by `scale`.
    pub fn scaled_e1(dim: usize, scale: f64) -> Self {
        let mut coords = vec![0.0; dim];
        coords[0] = scale;
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// First coordinate, the axis every linear-separator event lives on.
    pub fn first(&self) -> f64 {
        self.0[0]
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: f64) -> Point {
        Point(self.0.iter().map(|a| a * factor).collect())
    }

    /// self + factor * other, in one pass.
    pub fn add_scaled(&self, factor: f64, other: &Point) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + factor * b)
                .collect(),
        )
    }

    pub fn normalized(&self) -> Point {
        self.scale(1.0 / self.norm())
    }
}

/// A Euclidean ball: center and radius.
#[derive(Debug, Clone)]
pub struct BallSpec {
    pub center: Point,
    pub radius: f64,
}

impl BallSpec {
    pub fn new(center: Point, radius: f64) -> Result<Self, GeometryError> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeometryError::InvalidRadius { radius });
        }
        Ok(BallSpec { center, radius })
    }

    pub fn unit(dim: usize) -> Self {
        BallSpec {
            center: Point::zeros(dim),
            radius: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.sub(&self.center).norm() <= self.radius
    }
}

/// A spherical cap query: the cap of height `height` of the `dim`-ball of
/// radius `radius`, measured along the axis from the cutting plane to the
/// sphere surface.
#[derive(Debug, Clone, Copy)]
pub struct CapQuery {
    pub dim: usize,
    pub radius: f64,
    pub height: f64,
}

impl CapQuery {
    pub fn new(dim: usize, radius: f64, height: f64) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeometryError::InvalidRadius { radius });
        }
        if !(height >= 0.0 && height <= 2.0 * radius) {
            return Err(GeometryError::HeightOutOfRange { radius, height });
        }
        Ok(CapQuery {
            dim,
            radius,
            height,
        })
    }
}

/// Natural log of the volume of the unit ball in R^n:
/// ln V^n = (n/2) ln pi - ln Gamma(n/2 + 1).
pub fn log_unit_ball_volume(n: usize) -> Result<f64, GeometryError> {
    if n == 0 {
        return Err(GeometryError::ZeroDimension);
    }
    let half_n = n as f64 / 2.0;
    Ok(half_n * std::f64::consts::PI.ln() - statrs::function::gamma::ln_gamma(half_n + 1.0))
}

/// Exact fraction of the ball's volume contained in the cap.
///
/// Uses the identity V_cap / (V^n r^n) = (1/2) I_x((n+1)/2, 1/2) with
/// x = (h/r)(2 - h/r) for h <= r, and the complement for h > r. The fraction
/// depends on (n, h/r) only.
pub fn cap_fraction_exact(q: &CapQuery) -> Result<f64, GeometryError> {
    let ratio = q.height / q.radius;
    // x = 1 - (1 - ratio)^2 evaluated without cancellation
    let x = (ratio * (2.0 - ratio)).clamp(0.0, 1.0);
    let a = (q.dim as f64 + 1.0) / 2.0;
    let half_tail = 0.5 * betainc_reg(a, 0.5, x)?;
    if ratio <= 1.0 {
        Ok(half_tail)
    } else {
        Ok(1.0 - half_tail)
    }
}

/// Hemisphere-envelope upper bound on the cap fraction:
/// (1/2) (1 - (1 - h/r)^2)^(n/2), valid for 0 < h <= r.
pub fn cap_fraction_bound(q: &CapQuery) -> Result<f64, GeometryError> {
    if !(q.height > 0.0 && q.height <= q.radius) {
        return Err(GeometryError::BoundHeightOutOfRange {
            radius: q.radius,
            height: q.height,
        });
    }
    let ratio = q.height / q.radius;
    let x = (ratio * (2.0 - ratio)).clamp(0.0, 1.0);
    Ok(0.5 * ((q.dim as f64 / 2.0) * x.ln()).exp())
}

/// Draws a point uniformly from the solid ball: isotropic Gaussian direction,
/// radius scaled by U^(1/n).
pub fn sample_uniform_ball<R: Rng + ?Sized>(rng: &mut R, spec: &BallSpec) -> Point {
    let n = spec.dim();
    let mut direction;
    let mut norm;
    loop {
        direction = Point::new((0..n).map(|_| rng.sample(StandardNormal)).collect());
        norm = direction.norm();
        if norm > 0.0 {
            break;
        }
    }
    let u: f64 = rng.sample(Open01);
    let radial = spec.radius * u.powf(1.0 / n as f64);
    spec.center.add_scaled(radial / norm, &direction)
}

/// Which side of the dividing hyperplane a half-ball occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    pub fn signum(self) -> f64 {
        match self {
            Side::Positive => 1.0,
            Side::Negative => -1.0,
        }
    }
}

/// Draws uniformly from the closed half-ball
/// { x in ball : side * (x - c) . normal >= 0 }.
///
/// A full-ball draw is reflected across the dividing hyperplane when it lands
/// on the wrong side; the reflection preserves uniformity and keeps the draw
/// count deterministic.
pub fn sample_uniform_half_ball<R: Rng + ?Sized>(
    rng: &mut R,
    spec: &BallSpec,
    normal: &Point,
    side: Side,
) -> Result<Point, GeometryError> {
    if normal.dim() != spec.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: spec.dim(),
            actual: normal.dim(),
        });
    }
    let norm = normal.norm();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(GeometryError::NonUnitNormal { norm });
    }
    let x = sample_uniform_ball(rng, spec);
    let signed = side.signum() * x.sub(&spec.center).dot(normal);
    if signed >= 0.0 {
        Ok(x)
    } else {
        // reflect across the hyperplane through the center
        let d = x.sub(&spec.center).dot(normal);
        Ok(x.add_scaled(-2.0 * d, normal))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn unit_ball_volume_low_dims() {
        // V^1 = 2, V^2 = pi
        assert!((log_unit_ball_volume(1).unwrap() - 2.0_f64.ln()).abs() < 1e-14);
        assert!((log_unit_ball_volume(2).unwrap() - std::f64::consts::PI.ln()).abs() < 1e-14);
        assert_eq!(
            log_unit_ball_volume(0).unwrap_err(),
            GeometryError::ZeroDimension
        );
    }

    #[test]
    fn unit_ball_volume_matches_direct_gamma() {
        // exp(ln V^n) against pi^(n/2) / Gamma(n/2 + 1) while Gamma is representable
        for n in 1..=170 {
            let direct = std::f64::consts::PI.powf(n as f64 / 2.0)
                / statrs::function::gamma::gamma(n as f64 / 2.0 + 1.0);
            let via_log = log_unit_ball_volume(n).unwrap().exp();
            assert!(
                (via_log - direct).abs() / direct < 1e-12,
                "n={n}: {via_log} vs {direct}"
            );
        }
        assert!(log_unit_ball_volume(1_000_000).unwrap().is_finite());
    }

    #[test]
    fn cap_fraction_hemisphere_and_degenerate() {
        for n in [1, 2, 3, 10, 1000] {
            let half = cap_fraction_exact(&CapQuery::new(n, 1.0, 1.0).unwrap()).unwrap();
            assert!((half - 0.5).abs() < 1e-13, "n={n}: {half}");
        }
        assert_eq!(
            cap_fraction_exact(&CapQuery::new(5, 1.0, 0.0).unwrap()).unwrap(),
            0.0
        );
        assert_eq!(
            cap_fraction_exact(&CapQuery::new(5, 1.0, 2.0).unwrap()).unwrap(),
            1.0
        );
    }

    #[test]
    fn cap_fraction_closed_forms() {
        // 3-ball: cap volume pi h^2 (3r - h) / 3 over (4/3) pi r^3
        let v = cap_fraction_exact(&CapQuery::new(3, 1.0, 0.5).unwrap()).unwrap();
        assert!((v - 0.15625).abs() < 1e-13, "{v}");
        // 1-ball: segment of length h in an interval of length 2r
        let v = cap_fraction_exact(&CapQuery::new(1, 1.0, 0.4).unwrap()).unwrap();
        assert!((v - 0.2).abs() < 1e-13, "{v}");
    }

    #[test]
    fn cap_height_validation() {
        assert!(matches!(
            CapQuery::new(3, 1.0, 2.5),
            Err(GeometryError::HeightOutOfRange { .. })
        ));
        assert!(matches!(
            CapQuery::new(3, 1.0, -0.1),
            Err(GeometryError::HeightOutOfRange { .. })
        ));
        assert!(matches!(
            CapQuery::new(3, 0.0, 0.1),
            Err(GeometryError::InvalidRadius { .. })
        ));
    }

    #[test]
    fn cap_bound_values() {
        let b = cap_fraction_bound(&CapQuery::new(7, 1.0, 1.0).unwrap()).unwrap();
        assert!((b - 0.5).abs() < 1e-15);

        // 1/2 exp(5000 ln(1 - 0.05^2))
        let b = cap_fraction_bound(&CapQuery::new(10_000, 1.0, 0.95).unwrap()).unwrap();
        let expect = 0.5 * (1.0_f64 - 0.0025).powi(5000);
        assert!((b - expect).abs() / expect < 1e-12, "{b} vs {expect}");
        assert!((b - 1.83e-6).abs() < 2e-8, "{b}");

        // dominance at a spot check
        let q = CapQuery::new(3, 1.0, 0.5).unwrap();
        let bound = cap_fraction_bound(&q).unwrap();
        let exact = cap_fraction_exact(&q).unwrap();
        assert!((bound - 0.75_f64.powf(1.5) / 2.0).abs() < 1e-13);
        assert!(bound >= exact);

        // lemma hypothesis h <= r enforced
        assert!(matches!(
            cap_fraction_bound(&CapQuery::new(3, 1.0, 1.2).unwrap()),
            Err(GeometryError::BoundHeightOutOfRange { .. })
        ));
    }

    #[test]
    fn ball_sampler_support_and_1d() {
        let spec = BallSpec::unit(1);
        let mut r = rng(7);
        let mut sum = 0.0;
        let trials = 100_000;
        for _ in 0..trials {
            let x = sample_uniform_ball(&mut r, &spec);
            assert!(x.first().abs() <= 1.0);
            sum += x.first();
        }
        // mean of U[-1,1] is 0 with sd 1/sqrt(3)
        let sigma = (1.0 / 3.0_f64 / trials as f64).sqrt();
        assert!((sum / trials as f64).abs() < 3.0 * sigma);
    }

    #[test]
    fn ball_sampler_radial_cdf() {
        // P(|x| <= 0.9 r) = 0.9^n
        let n = 50;
        let spec = BallSpec::new(Point::zeros(n), 2.0).unwrap();
        let mut r = rng(11);
        let trials = 1_000_000;
        let mut hits = 0u64;
        for _ in 0..trials {
            let x = sample_uniform_ball(&mut r, &spec);
            let nrm = x.norm();
            assert!(nrm <= 2.0 + 1e-12);
            if nrm <= 2.0 * 0.9 {
                hits += 1;
            }
        }
        let p = 0.9_f64.powi(n as i32);
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        let p_hat = hits as f64 / trials as f64;
        assert!((p_hat - p).abs() < 3.0 * sigma, "{p_hat} vs {p}");
    }

    #[test]
    fn half_ball_sampler_support_and_centroid() {
        let spec = BallSpec::unit(2);
        let normal = Point::scaled_e1(2, 1.0);
        let mut r = rng(3);
        let trials = 100_000;
        let mut sum_first = 0.0;
        let mut pos_second = 0u64;
        for _ in 0..trials {
            let x = sample_uniform_half_ball(&mut r, &spec, &normal, Side::Positive).unwrap();
            assert!(x.first() >= 0.0);
            assert!(x.norm() <= 1.0 + 1e-12);
            sum_first += x.first();
            if x.coords()[1] > 0.0 {
                pos_second += 1;
            }
        }
        // centroid of the half-disc is 4/(3 pi) along the normal
        let mean = sum_first / trials as f64;
        let expect = 4.0 / (3.0 * std::f64::consts::PI);
        // var of the first coordinate is bounded by 1; 3 sigma with sd <= 1
        assert!((mean - expect).abs() < 3.0 / (trials as f64).sqrt() * 1.0);
        // orthogonal marginal symmetric about 0: sign test
        let ratio = pos_second as f64 / trials as f64;
        assert!((ratio - 0.5).abs() < 3.0 * (0.25 / trials as f64).sqrt());
    }

    #[test]
    fn half_ball_rejects_non_unit_normal() {
        let spec = BallSpec::unit(3);
        let normal = Point::new(vec![1.0, 1e-6, 0.0]);
        let mut r = rng(1);
        assert!(matches!(
            sample_uniform_half_ball(&mut r, &spec, &normal, Side::Positive),
            Err(GeometryError::NonUnitNormal { .. })
        ));
    }
}
