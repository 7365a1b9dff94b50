//! The three data/classifier models: two overlapping balls, two separated
//! half-balls, and the general nonlinear-surface model, with their distance
//! functions, projectors, samplers, and classifiers.

use rand::Rng;
use thiserror::Error;

use crate::geometry::{
    sample_uniform_ball, sample_uniform_half_ball, BallSpec, GeometryError, Point, Side,
};

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("growth parameter A = {growth_a} is bounds-only; sampling requires A = 1")]
    BoundsOnlyGrowth { growth_a: f64 },
    #[error("offset epsilon must be >= 0 and finite, got {epsilon}")]
    InvalidEpsilon { epsilon: f64 },
    #[error("growth parameter A must be >= 1 and finite, got {growth_a}")]
    InvalidGrowth { growth_a: f64 },
    #[error("surface direction must be a unit vector orthogonal to the normal")]
    InvalidSurfaceDirection,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Binary class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Zero,
    One,
}

impl Label {
    pub fn as_u8(self) -> u8 {
        match self {
            Label::Zero => 0,
            Label::One => 1,
        }
    }

    /// 1 - 2*label, the sign that points away from the opposite class.
    pub fn attack_sign(self) -> f64 {
        match self {
            Label::Zero => 1.0,
            Label::One => -1.0,
        }
    }

    pub fn flipped(self) -> Label {
        match self {
            Label::Zero => Label::One,
            Label::One => Label::Zero,
        }
    }
}

/// A sample with its class label.
#[derive(Debug, Clone)]
pub struct LabeledSample {
    pub point: Point,
    pub label: Label,
}

/// Two unit-like balls with centers at -epsilon*e1 and +epsilon*e1.
///
/// `growth_a` parameterizes the density growth bound used by the closed-form
/// bounds; samplers only support the uniform case A = 1.
#[derive(Debug, Clone)]
pub struct TwoBallsSpec {
    pub dim: usize,
    pub epsilon: f64,
    pub radius: f64,
    pub growth_a: f64,
}

impl TwoBallsSpec {
    pub fn new(dim: usize, epsilon: f64) -> Result<Self, ModelError> {
        Self::with_growth(dim, epsilon, 1.0, 1.0)
    }

    pub fn with_growth(
        dim: usize,
        epsilon: f64,
        radius: f64,
        growth_a: f64,
    ) -> Result<Self, ModelError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension.into());
        }
        if !(epsilon >= 0.0) || !epsilon.is_finite() {
            return Err(ModelError::InvalidEpsilon { epsilon });
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeometryError::InvalidRadius { radius }.into());
        }
        if !(growth_a >= 1.0) || !growth_a.is_finite() {
            return Err(ModelError::InvalidGrowth { growth_a });
        }
        Ok(TwoBallsSpec {
            dim,
            epsilon,
            radius,
            growth_a,
        })
    }

    /// Center of the ball supporting the given class.
    pub fn center(&self, label: Label) -> Point {
        let sign = match label {
            Label::Zero => -1.0,
            Label::One => 1.0,
        };
        Point::scaled_e1(self.dim, sign * self.epsilon)
    }

    pub fn class_ball(&self, label: Label) -> BallSpec {
        BallSpec {
            center: self.center(label),
            radius: self.radius,
        }
    }
}

/// Two half-balls of the unit ball, shifted apart by 2*epsilon along e1.
#[derive(Debug, Clone)]
pub struct HalfBallsSpec {
    pub dim: usize,
    pub epsilon: f64,
}

impl HalfBallsSpec {
    pub fn new(dim: usize, epsilon: f64) -> Result<Self, ModelError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension.into());
        }
        if !(epsilon >= 0.0) || !epsilon.is_finite() {
            return Err(ModelError::InvalidEpsilon { epsilon });
        }
        Ok(HalfBallsSpec { dim, epsilon })
    }
}

/// Draws a fair-label sample: uniform in the ball around the label's center.
pub fn sample_two_balls<R: Rng + ?Sized>(
    rng: &mut R,
    spec: &TwoBallsSpec,
) -> Result<LabeledSample, ModelError> {
    if spec.growth_a > 1.0 {
        return Err(ModelError::BoundsOnlyGrowth {
            growth_a: spec.growth_a,
        });
    }
    let label = if rng.random::<bool>() {
        Label::One
    } else {
        Label::Zero
    };
    let point = sample_uniform_ball(rng, &spec.class_ball(label));
    Ok(LabeledSample { point, label })
}

/// Draws a fair-label sample: uniform in the shifted half-ball of its class.
///
/// Class 0 satisfies x1 <= -epsilon, class 1 satisfies x1 >= epsilon.
pub fn sample_half_balls<R: Rng + ?Sized>(rng: &mut R, spec: &HalfBallsSpec) -> LabeledSample {
    let label = if rng.random::<bool>() {
        Label::One
    } else {
        Label::Zero
    };
    let (shift, side) = match label {
        Label::Zero => (-spec.epsilon, Side::Negative),
        Label::One => (spec.epsilon, Side::Positive),
    };
    let ball = BallSpec {
        center: Point::scaled_e1(spec.dim, shift),
        radius: 1.0,
    };
    let normal = Point::scaled_e1(spec.dim, 1.0);
    let point = sample_uniform_half_ball(rng, &ball, &normal, side)
        .expect("unit e1 normal is always valid");
    LabeledSample { point, label }
}

/// The linear separator: 0 if x1 < 0, 1 otherwise (ties go to class 1).
pub fn classify_linear(x: &Point) -> Label {
    if x.first() < 0.0 {
        Label::Zero
    } else {
        Label::One
    }
}

/// Built-in surface-graph families with analytically known Lipschitz bounds.
#[derive(Debug, Clone)]
pub enum PhiFamily {
    /// phi = 0: the surface is the plane itself.
    Zero,
    /// phi(p) = amplitude * sin(wavenumber * (p . direction)); L = |a*k|.
    Sinusoidal {
        amplitude: f64,
        wavenumber: f64,
        direction: Point,
    },
    /// phi(p) = slope * |p . direction|; L = slope.
    Ridge { slope: f64, direction: Point },
}

impl PhiFamily {
    fn lipschitz(&self) -> f64 {
        match self {
            PhiFamily::Zero => 0.0,
            PhiFamily::Sinusoidal {
                amplitude,
                wavenumber,
                ..
            } => (amplitude * wavenumber).abs(),
            PhiFamily::Ridge { slope, .. } => slope.abs(),
        }
    }

    fn direction(&self) -> Option<&Point> {
        match self {
            PhiFamily::Zero => None,
            PhiFamily::Sinusoidal { direction, .. } => Some(direction),
            PhiFamily::Ridge { direction, .. } => Some(direction),
        }
    }

    pub fn eval(&self, p: &Point) -> f64 {
        match self {
            PhiFamily::Zero => 0.0,
            PhiFamily::Sinusoidal {
                amplitude,
                wavenumber,
                direction,
            } => amplitude * (wavenumber * p.dot(direction)).sin(),
            PhiFamily::Ridge { slope, direction } => slope * p.dot(direction).abs(),
        }
    }
}

/// A classifier decision surface given as a graph over a hyperplane:
/// S = { x : x = p + phi(p) nu, p in pi }, pi = { x : (x - anchor) . normal = 0 }.
#[derive(Debug, Clone)]
pub struct SurfaceSpec {
    pub dim: usize,
    pub anchor: Point,
    pub normal: Point,
    pub phi: PhiFamily,
    pub lipschitz: f64,
}

impl SurfaceSpec {
    pub fn new(anchor: Point, normal: Point, phi: PhiFamily) -> Result<Self, ModelError> {
        let dim = anchor.dim();
        if dim == 0 {
            return Err(GeometryError::ZeroDimension.into());
        }
        if normal.dim() != dim {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                actual: normal.dim(),
            }
            .into());
        }
        let norm = normal.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(GeometryError::NonUnitNormal { norm }.into());
        }
        if let Some(u) = phi.direction() {
            if u.dim() != dim
                || (u.norm() - 1.0).abs() > 1e-9
                || u.dot(&normal).abs() > 1e-9
            {
                return Err(ModelError::InvalidSurfaceDirection);
            }
        }
        let lipschitz = phi.lipschitz();
        Ok(SurfaceSpec {
            dim,
            anchor,
            normal,
            phi,
            lipschitz,
        })
    }

    /// Flat surface through the origin with normal e1; its classifier agrees
    /// with `classify_linear` except on the measure-zero boundary x1 = 0.
    pub fn flat_e1(dim: usize) -> Self {
        SurfaceSpec::new(Point::zeros(dim), Point::scaled_e1(dim, 1.0), PhiFamily::Zero)
            .expect("canonical flat surface is valid")
    }
}

/// Signed distance from x to the reference hyperplane: (x - anchor) . normal.
pub fn plane_distance(spec: &SurfaceSpec, x: &Point) -> f64 {
    x.sub(&spec.anchor).dot(&spec.normal)
}

/// Orthogonal projection of x onto the reference hyperplane.
pub fn plane_projection(spec: &SurfaceSpec, x: &Point) -> Point {
    x.add_scaled(-plane_distance(spec, x), &spec.normal)
}

/// Directed signed distance to the decision surface along the normal:
/// d_S(x) = d_pi(x) - phi(projection of x).
pub fn surface_distance(spec: &SurfaceSpec, x: &Point) -> f64 {
    plane_distance(spec, x) - spec.phi.eval(&plane_projection(spec, x))
}

/// Projection of x onto the decision surface along the normal.
pub fn surface_projection(spec: &SurfaceSpec, x: &Point) -> Point {
    let p = plane_projection(spec, x);
    let lift = spec.phi.eval(&p);
    p.add_scaled(lift, &spec.normal)
}

/// Surface classifier: 0 if d_S(x) <= 0, 1 otherwise (ties go to class 0).
pub fn classify_surface(spec: &SurfaceSpec, x: &Point) -> Label {
    if surface_distance(spec, x) <= 0.0 {
        Label::Zero
    } else {
        Label::One
    }
}

/// Certified lower bound on the Euclidean distance from x to the decision
/// surface: |d_S(x)| sin(arctan(1/L)) = |d_S(x)| / sqrt(1 + L^2).
///
/// The true distance sigma satisfies
/// sigma_lower_bound(x) <= sigma(x) <= |d_S(x)|.
pub fn sigma_lower_bound(spec: &SurfaceSpec, x: &Point) -> f64 {
    let l = spec.lipschitz;
    surface_distance(spec, x).abs() / (1.0 + l * l).sqrt()
}

/// How far the perturbation s pushes x past the linear decision threshold:
/// d_0(x,s) = max(x1 + s1, 0), d_1(x,s) = max(-x1 - s1, 0).
pub fn destabilization_margin(label: Label, x: &Point, s: &Point) -> f64 {
    let shifted = x.first() + s.first();
    match label {
        Label::Zero => shifted.max(0.0),
        Label::One => (-shifted).max(0.0),
    }
}
