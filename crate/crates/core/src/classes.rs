//! Class specifications, atomic Herglotz measures, and the constructors that
//! turn a measure into a member of `S_gamma(alpha)`, `C_gamma(alpha)`,
//! `S*(alpha)` or `C(-1/2)`.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{FunctionSeries, Provenance};
use crate::series::Series;

const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    /// Boundary angle in radians, in `[0, 2 pi)`.
    pub t: f64,
    pub w: f64,
}

/// A probability measure with finitely many atoms on the unit circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure", into = "RawMeasure")]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
}

#[derive(Serialize, Deserialize)]
struct RawMeasure {
    atoms: Vec<Atom>,
}

impl TryFrom<RawMeasure> for AtomicMeasure {
    type Error = Error;

    fn try_from(raw: RawMeasure) -> Result<Self> {
        AtomicMeasure::new(raw.atoms)
    }
}

impl From<AtomicMeasure> for RawMeasure {
    fn from(m: AtomicMeasure) -> Self {
        RawMeasure { atoms: m.atoms }
    }
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("at least one atom is required".into()));
        }
        for a in &atoms {
            if !a.t.is_finite() || !(0.0..TAU).contains(&a.t) {
                return Err(Error::InvalidMeasure(format!("angle {} outside [0, 2pi)", a.t)));
            }
            if !a.w.is_finite() || a.w < 0.0 {
                return Err(Error::InvalidMeasure(format!("negative weight {}", a.w)));
            }
        }
        let total: f64 = atoms.iter().map(|a| a.w).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}")));
        }
        Ok(Self { atoms })
    }

    /// Unit mass at angle `t` (reduced mod `2 pi`).
    pub fn point(t: f64) -> Self {
        Self::from_unconstrained(&[t], &[1.0])
    }

    /// Equal weights at the given angles (reduced mod `2 pi`).
    pub fn uniform(angles: &[f64]) -> Self {
        Self::from_unconstrained(angles, &vec![1.0; angles.len()])
    }

    /// Maps unconstrained parameters to a measure: angles are reduced mod
    /// `2 pi`, weights are `u_j^2 / sum u_i^2` (uniform when all `u_j` vanish).
    ///
    /// # Panics
    /// If the slices are empty or of different lengths.
    pub fn from_unconstrained(angles: &[f64], u: &[f64]) -> Self {
        assert!(!angles.is_empty() && angles.len() == u.len());
        let norm: f64 = u.iter().map(|x| x * x).sum();
        let k = u.len() as f64;
        let atoms = angles
            .iter()
            .zip(u)
            .map(|(&t, &x)| Atom {
                t: reduce_angle(t),
                w: if norm > 0.0 && norm.is_finite() { x * x / norm } else { 1.0 / k },
            })
            .collect();
        Self { atoms }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

fn reduce_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    /// `S_gamma(alpha)`: `Re(e^{-i gamma} z f'/f) > alpha cos gamma`.
    Spirallike,
    /// `C_gamma(alpha)`: `z f'` is in `S_gamma(alpha)`.
    ConvexSpirallike,
    /// `S*(alpha)`, any `alpha < 1`.
    Starlike,
    /// `C(alpha)`.
    Convex,
    /// `C(-1/2)`: `Re(1 + z f''/f') > -1/2`.
    CHalf,
}

impl ClassKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassKind::Spirallike => "spirallike",
            ClassKind::ConvexSpirallike => "convex_spirallike",
            ClassKind::Starlike => "starlike",
            ClassKind::Convex => "convex",
            ClassKind::CHalf => "c_half",
        }
    }

    /// Kinds defined through `z f'` being in a starlike-type class.
    pub fn is_convex_type(self) -> bool {
        matches!(self, ClassKind::ConvexSpirallike | ClassKind::Convex | ClassKind::CHalf)
    }
}

/// Class kind together with `gamma` (radians) and `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct ClassSpec {
    kind: ClassKind,
    gamma: f64,
    alpha: f64,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    kind: ClassKind,
    #[serde(default)]
    gamma: f64,
    #[serde(default)]
    alpha: f64,
}

impl TryFrom<RawSpec> for ClassSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        if raw.kind == ClassKind::CHalf && raw.gamma == 0.0 && raw.alpha == 0.0 {
            // alpha is implied for c_half
            return Ok(ClassSpec::c_half());
        }
        ClassSpec::new(raw.kind, raw.gamma, raw.alpha)
    }
}

impl From<ClassSpec> for RawSpec {
    fn from(s: ClassSpec) -> Self {
        RawSpec {
            kind: s.kind,
            gamma: s.gamma,
            alpha: s.alpha,
        }
    }
}

impl ClassSpec {
    pub fn new(kind: ClassKind, gamma: f64, alpha: f64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if !gamma.is_finite() || gamma.abs() >= FRAC_PI_2 {
            return bad(format!("gamma = {gamma} must lie in (-pi/2, pi/2)"));
        }
        if !alpha.is_finite() || alpha >= 1.0 {
            return bad(format!("alpha = {alpha} must be below 1"));
        }
        match kind {
            ClassKind::Spirallike | ClassKind::ConvexSpirallike | ClassKind::Convex
                if alpha < 0.0 =>
            {
                return bad(format!("{} requires alpha in [0, 1)", kind.as_str()));
            }
            ClassKind::Starlike | ClassKind::Convex if gamma != 0.0 => {
                return bad(format!("{} requires gamma = 0", kind.as_str()));
            }
            ClassKind::CHalf if gamma != 0.0 || alpha != -0.5 => {
                return bad("c_half requires gamma = 0 and alpha = -1/2".into());
            }
            _ => {}
        }
        Ok(Self { kind, gamma, alpha })
    }

    pub fn spirallike(gamma: f64, alpha: f64) -> Result<Self> {
        Self::new(ClassKind::Spirallike, gamma, alpha)
    }

    pub fn convex_spirallike(gamma: f64, alpha: f64) -> Result<Self> {
        Self::new(ClassKind::ConvexSpirallike, gamma, alpha)
    }

    pub fn starlike(alpha: f64) -> Result<Self> {
        Self::new(ClassKind::Starlike, 0.0, alpha)
    }

    pub fn convex(alpha: f64) -> Result<Self> {
        Self::new(ClassKind::Convex, 0.0, alpha)
    }

    pub fn c_half() -> Self {
        Self {
            kind: ClassKind::CHalf,
            gamma: 0.0,
            alpha: -0.5,
        }
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// The starlike-type class that `z f'` belongs to when `f` is in `self`.
    /// Starlike-type specs map to themselves.
    pub fn alexander_image(&self) -> ClassSpec {
        match self.kind {
            ClassKind::ConvexSpirallike => ClassSpec {
                kind: ClassKind::Spirallike,
                ..*self
            },
            ClassKind::Convex | ClassKind::CHalf => ClassSpec {
                kind: ClassKind::Starlike,
                ..*self
            },
            _ => *self,
        }
    }
}

/// Measure plus spec, the JSON document consumed by the CLI:
/// `{"atoms":[{"t":..,"w":..}], "gamma":.., "alpha":.., "kind":".."}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureDocument {
    #[serde(flatten)]
    pub measure: AtomicMeasure,
    #[serde(flatten)]
    pub spec: ClassSpec,
}

/// `h(z) = 1 + 2 sum_n (sum_j w_j e^{-i n t_j}) z^n`, a convex combination of
/// half-plane kernels `(1 + e^{-it} z) / (1 - e^{-it} z)`.
pub fn herglotz(measure: &AtomicMeasure, order: usize) -> Series {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    for atom in measure.atoms() {
        let step = Complex64::from_polar(1.0, -atom.t);
        let mut power = Complex64::new(1.0, 0.0);
        for c in coeffs.iter_mut().skip(1) {
            power *= step;
            *c += power * (2.0 * atom.w);
        }
    }
    Series::new(coeffs)
}

/// Member of `S_gamma(alpha)` (or `S*(alpha)`) whose
/// `phi = alpha + (1 - alpha) h` is built from the measure:
/// `f = z exp(e^{i gamma} cos gamma sum c_n z^n / n)`, `c_n = (1 - alpha) h_n`.
pub fn spirallike_from_measure(
    measure: &AtomicMeasure,
    spec: &ClassSpec,
    order: usize,
) -> Result<FunctionSeries> {
    if !matches!(spec.kind(), ClassKind::Spirallike | ClassKind::Starlike) {
        return Err(Error::InvalidSpec(format!(
            "spirallike_from_measure needs a starlike-type spec, got {}",
            spec.kind().as_str()
        )));
    }
    let order = order.max(1);
    let h = herglotz(measure, order - 1);
    let factor = Complex64::from_polar(spec.gamma().cos(), spec.gamma()) * (1.0 - spec.alpha());
    let log_f_over_z = Series::from_fn(order - 1, |n| {
        if n == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            factor * h.coeff(n) / n as f64
        }
    });
    let f = log_f_over_z.exp_zero()?.shift_up();
    FunctionSeries::new(
        f,
        Provenance::FromMeasure {
            measure: measure.clone(),
            spec: *spec,
        },
    )
}

/// Member of any class kind built from the measure. Convex-type kinds go
/// through the starlike-type member `g` and `f = alexander_inverse(g)`.
pub fn construct(measure: &AtomicMeasure, spec: &ClassSpec, order: usize) -> Result<FunctionSeries> {
    if spec.kind().is_convex_type() {
        let g = spirallike_from_measure(measure, &spec.alexander_image(), order)?;
        let mut f = alexander_inverse(&g);
        f.provenance = Provenance::FromMeasure {
            measure: measure.clone(),
            spec: *spec,
        };
        Ok(f)
    } else {
        spirallike_from_measure(measure, spec, order)
    }
}

/// `a_n = b_n / n`.
pub fn alexander_inverse(g: &FunctionSeries) -> FunctionSeries {
    let s = Series::from_fn(g.order(), |n| if n == 0 { g.a(0) } else { g.a(n) / n as f64 });
    FunctionSeries::new(
        s,
        Provenance::AlexanderInverse {
            of: Box::new(g.provenance().clone()),
        },
    )
    .expect("a_1 = b_1 keeps normalization")
}

/// `g = z f'`, `b_n = n a_n`.
pub fn alexander_forward(f: &FunctionSeries) -> FunctionSeries {
    let s = Series::from_fn(f.order(), |n| f.a(n) * n as f64);
    FunctionSeries::new(
        s,
        Provenance::AlexanderForward {
            of: Box::new(f.provenance().clone()),
        },
    )
    .expect("b_1 = a_1 keeps normalization")
}

/// `k` angles uniform on `[0, 2 pi)` with flat-Dirichlet weights.
/// Deterministic in `seed`.
///
/// # Panics
/// If `k_atoms == 0`.
pub fn sample_measure(seed: u64, k_atoms: usize) -> AtomicMeasure {
    assert!(k_atoms >= 1, "a measure needs at least one atom");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let angles: Vec<f64> = (0..k_atoms).map(|_| rng.random_range(0.0..TAU)).collect();
    let raw: Vec<f64> = (0..k_atoms).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    let atoms = angles
        .into_iter()
        .zip(raw)
        .map(|(t, e)| Atom { t, w: e / total })
        .collect();
    AtomicMeasure { atoms }
}
