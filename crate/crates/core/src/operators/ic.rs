//! Initial profiles p₀ (or q₀) and initial velocities v₀.

use crate::error::{Error, Result};
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

/// Piecewise-linear profile through sample points, zero outside their range.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    cumulative: Vec<f64>,
}

impl SampledProfile {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() || x.len() < 2 {
            return Err(Error::param("sampled profile needs at least two (x, y) pairs of equal length"));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::param("sampled profile abscissae must be strictly increasing"));
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::param("sampled profile contains non-finite values"));
        }
        let mut cumulative = vec![0.0; x.len()];
        for i in 1..x.len() {
            cumulative[i] = cumulative[i - 1] + 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
        }
        Ok(SampledProfile { x, y, cumulative })
    }

    /// Load from a two-column CSV file (header optional).
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        let (x, y) = crate::emit::read_xy_csv(path)?;
        Self::new(x, y)
    }

    fn locate(&self, x: f64) -> Option<usize> {
        let n = self.x.len();
        if x < self.x[0] || x > self.x[n - 1] {
            return None;
        }
        let i = self.x.partition_point(|&v| v <= x);
        Some(i.clamp(1, n - 1) - 1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.locate(x) {
            None => 0.0,
            Some(i) => {
                let w = (x - self.x[i]) / (self.x[i + 1] - self.x[i]);
                self.y[i] + w * (self.y[i + 1] - self.y[i])
            }
        }
    }

    /// ∫_{-∞}^x of the interpolant.
    pub fn primitive(&self, x: f64) -> f64 {
        let n = self.x.len();
        if x <= self.x[0] {
            return 0.0;
        }
        if x >= self.x[n - 1] {
            return self.cumulative[n - 1];
        }
        let i = self.locate(x).unwrap();
        let h = x - self.x[i];
        self.cumulative[i] + h * (self.y[i] + 0.5 * h * (self.y[i + 1] - self.y[i]) / (self.x[i + 1] - self.x[i]))
    }

    pub fn total(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// ∫ x^m p(x) dx of the interpolant (exact for linear segments).
    pub fn moment(&self, m: i32) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.x.len() - 1 {
            let (x0, x1, y0, y1) = (self.x[i], self.x[i + 1], self.y[i], self.y[i + 1]);
            let slope = (y1 - y0) / (x1 - x0);
            let c = y0 - slope * x0;
            let p = |k: i32| (x1.powi(k) - x0.powi(k)) / k as f64;
            acc += c * p(m + 1) + slope * p(m + 2);
        }
        acc
    }
}

/// Spike-on-endpoint convention for window integrals of δ terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EndpointRule {
    /// A spike exactly on a window endpoint counts with weight ½.
    #[default]
    HalfWeight,
    /// The window is open: endpoint spikes do not count.
    Open,
}

/// Initial profile p₀ (GDWE) or q₀ (GFPE).
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    Delta,
    /// (1/2ε)[Θ(x+ε) - Θ(x-ε)], with Θ(0) = ½.
    Box { eps: f64 },
    /// Normal density with standard deviation σ.
    Gaussian { sigma: f64 },
    Custom(SampledProfile),
}

/// Initial velocity v₀ (GDWE only).
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Velocity {
    #[default]
    Zero,
    /// v₀ = -p₀′.
    NegDerivative,
    /// (1/2ε)[δ(x-ε) - δ(x+ε)], the negative derivative of the box.
    BoxSpikes { eps: f64 },
    /// x e^{-x²/2σ²}/(√(2π) σ³), the negative derivative of a Gaussian.
    GaussianSlope { sigma: f64 },
    Custom(SampledProfile),
}

/// Standard normal density with standard deviation `sd`.
pub fn normal_pdf(x: f64, sd: f64) -> f64 {
    (-0.5 * (x / sd).powi(2)).exp() / ((2.0 * PI).sqrt() * sd)
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::param(format!("{name} must be positive, got {v}")))
    }
}

fn split_arg<'a>(s: &'a str, name: &str) -> Result<(&'a str, Option<&'a str>)> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Config(format!("empty {name} descriptor")));
    }
    Ok(match s.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (s, None),
    })
}

fn num_arg(arg: Option<&str>, what: &str) -> Result<f64> {
    arg.ok_or_else(|| Error::Config(format!("{what} needs a parameter, e.g. {what}:1")))?
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("bad numeric parameter for {what}")))
}

impl Profile {
    pub fn gaussian(sigma: f64) -> Result<Self> {
        Ok(Profile::Gaussian { sigma: positive("gaussian σ", sigma)? })
    }

    pub fn boxed(eps: f64) -> Result<Self> {
        Ok(Profile::Box { eps: positive("box ε", eps)? })
    }

    /// Parse `delta`, `box:ε`, `gaussian:σ` or `custom:path.csv`.
    pub fn parse(s: &str) -> Result<Self> {
        let (k, a) = split_arg(s, "initial condition")?;
        match k {
            "delta" if a.is_none() => Ok(Profile::Delta),
            "box" => Self::boxed(num_arg(a, "box")?),
            "gaussian" => Self::gaussian(num_arg(a, "gaussian")?),
            "custom" => Ok(Profile::Custom(SampledProfile::from_csv(
                a.ok_or_else(|| Error::Config("custom profile needs a CSV path".into()))?,
            )?)),
            _ => Err(Error::Config(format!("unknown initial condition '{s}'"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Profile::Box { eps } => positive("box ε", eps).map(|_| ()),
            Profile::Gaussian { sigma } => positive("gaussian σ", sigma).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// Point value; the delta profile has no point value at 0.
    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(match self {
            Profile::Delta => {
                if x == 0.0 {
                    return Err(Error::Distributional("δ(x) evaluated at x = 0".into()));
                }
                0.0
            }
            Profile::Box { eps } => {
                let h = 0.5 / eps;
                let ax = x.abs();
                if ax < *eps {
                    h
                } else if ax == *eps {
                    0.5 * h
                } else {
                    0.0
                }
            }
            Profile::Gaussian { sigma } => normal_pdf(x, *sigma),
            Profile::Custom(p) => p.eval(x),
        })
    }

    /// Points where the profile is not smooth.
    pub fn kinks(&self) -> Vec<f64> {
        match self {
            Profile::Delta => vec![0.0],
            Profile::Box { eps } => vec![-eps, *eps],
            Profile::Gaussian { .. } => vec![],
            Profile::Custom(p) => p.x.clone(),
        }
    }

    /// ∫ x^m p₀(x) dx for m = 0, 1, 2.
    pub fn moment(&self, m: i32) -> f64 {
        match (self, m) {
            (_, 0) if !matches!(self, Profile::Custom(_)) => 1.0,
            (Profile::Custom(p), _) => p.moment(m),
            (_, 1) => 0.0,
            (Profile::Delta, _) => 0.0,
            (Profile::Box { eps }, _) => eps * eps / 3.0,
            (Profile::Gaussian { sigma }, _) => sigma * sigma,
        }
    }

    pub fn is_even(&self) -> bool {
        !matches!(self, Profile::Custom(_))
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Delta => write!(f, "delta"),
            Profile::Box { eps } => write!(f, "box:{eps}"),
            Profile::Gaussian { sigma } => write!(f, "gaussian:{sigma}"),
            Profile::Custom(p) => write!(f, "custom[{} samples]", p.x.len()),
        }
    }
}

impl Velocity {
    /// Parse `zero`, `neg-derivative`, `box-spikes:ε`, `gaussian-slope:σ`
    /// or `custom:path.csv`.
    pub fn parse(s: &str) -> Result<Self> {
        let (k, a) = split_arg(s, "velocity")?;
        match k {
            "zero" | "0" if a.is_none() => Ok(Velocity::Zero),
            "neg-derivative" | "-p0'" if a.is_none() => Ok(Velocity::NegDerivative),
            "box-spikes" => Ok(Velocity::BoxSpikes { eps: positive("spike ε", num_arg(a, "box-spikes")?)? }),
            "gaussian-slope" => Ok(Velocity::GaussianSlope {
                sigma: positive("slope σ", num_arg(a, "gaussian-slope")?)?,
            }),
            "custom" => Ok(Velocity::Custom(SampledProfile::from_csv(
                a.ok_or_else(|| Error::Config("custom velocity needs a CSV path".into()))?,
            )?)),
            _ => Err(Error::Config(format!("unknown velocity '{s}'"))),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Velocity::Zero)
    }

    /// Concrete form of `NegDerivative` for the canonical profiles.
    pub fn resolve(&self, p0: &Profile) -> Velocity {
        match (self, p0) {
            (Velocity::NegDerivative, Profile::Box { eps }) => Velocity::BoxSpikes { eps: *eps },
            (Velocity::NegDerivative, Profile::Gaussian { sigma }) => Velocity::GaussianSlope { sigma: *sigma },
            (v, _) => v.clone(),
        }
    }

    /// Points where the window integral jumps or kinks.
    pub fn kinks(&self, p0: &Profile) -> Vec<f64> {
        match self.resolve(p0) {
            Velocity::BoxSpikes { eps } => vec![-eps, eps],
            Velocity::NegDerivative => p0.kinks(),
            Velocity::Custom(p) => p.x.clone(),
            _ => vec![],
        }
    }

    /// ∫ x^m v₀(x) dx for m = 0, 1, 2.
    pub fn moment(&self, p0: &Profile, m: i32) -> f64 {
        match self.resolve(p0) {
            Velocity::Zero => 0.0,
            Velocity::BoxSpikes { .. } | Velocity::GaussianSlope { .. } => {
                if m == 1 {
                    1.0
                } else {
                    0.0
                }
            }
            // ∫ x^m (-p₀′) = m ∫ x^{m-1} p₀
            Velocity::NegDerivative => {
                if m == 0 {
                    0.0
                } else {
                    m as f64 * p0.moment(m - 1)
                }
            }
            Velocity::Custom(p) => p.moment(m),
        }
    }
}

impl fmt::Display for Velocity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Velocity::Zero => write!(f, "zero"),
            Velocity::NegDerivative => write!(f, "neg-derivative"),
            Velocity::BoxSpikes { eps } => write!(f, "box-spikes:{eps}"),
            Velocity::GaussianSlope { sigma } => write!(f, "gaussian-slope:{sigma}"),
            Velocity::Custom(p) => write!(f, "custom[{} samples]", p.x.len()),
        }
    }
}

/// Initial data: a profile plus an optional velocity (GDWE).
#[derive(Debug, Clone, PartialEq)]
pub struct InitialCondition {
    pub profile: Profile,
    pub velocity: Velocity,
}

impl InitialCondition {
    pub fn new(profile: Profile) -> Self {
        InitialCondition {
            profile,
            velocity: Velocity::Zero,
        }
    }

    pub fn with_velocity(mut self, v: Velocity) -> Self {
        self.velocity = v;
        self
    }

    pub fn delta() -> Self {
        Self::new(Profile::Delta)
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        Ok(Self::new(Profile::gaussian(sigma)?))
    }

    pub fn boxed(eps: f64) -> Result<Self> {
        Ok(Self::new(Profile::boxed(eps)?))
    }

    pub fn validate(&self) -> Result<()> {
        self.profile.validate()
    }

    /// True when p₀ is even and v₀ = 0.
    pub fn is_even(&self) -> bool {
        self.profile.is_even() && self.velocity.is_zero()
    }
}

impl fmt::Display for InitialCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.velocity.is_zero() {
            write!(f, "{}", self.profile)
        } else {
            write!(f, "{}; v0={}", self.profile, self.velocity)
        }
    }
}
