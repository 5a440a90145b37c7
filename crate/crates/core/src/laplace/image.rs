use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

type CFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A Laplace-space function F(s) with the metadata the inverter needs.
///
/// `log_eval`, when present, returns ln F(s) on any branch; the inverter
/// exponentiates `z t + ln F(z)` in one step, which keeps images like
/// `e^{-ξ s^α}` finite far out on the contour. `positive_real` declares
/// F(s) > 0 for real s > 0 and enables saddle-point scaling of the contour.
#[derive(Clone)]
pub struct LaplaceImage {
    eval: CFn,
    log_eval: Option<CFn>,
    pub branch_note: String,
    pub singularities: Vec<f64>,
    pub abscissa: f64,
    pub positive_real: bool,
}

impl fmt::Debug for LaplaceImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LaplaceImage")
            .field("branch_note", &self.branch_note)
            .field("singularities", &self.singularities)
            .field("abscissa", &self.abscissa)
            .field("positive_real", &self.positive_real)
            .finish()
    }
}

impl LaplaceImage {
    /// Image from a plain evaluator; branch cut assumed on the negative real axis.
    pub fn new(f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        LaplaceImage {
            eval: Arc::new(f),
            log_eval: None,
            branch_note: "principal branch, cut on (-inf, 0]".to_string(),
            singularities: Vec::new(),
            abscissa: 0.0,
            positive_real: false,
        }
    }

    /// Image given through ln F(s); F is recovered by exponentiation.
    pub fn from_log(lf: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        let lf: CFn = Arc::new(lf);
        let l2 = lf.clone();
        LaplaceImage {
            eval: Arc::new(move |s| l2(s).exp()),
            log_eval: Some(lf),
            branch_note: "principal branch, cut on (-inf, 0]".to_string(),
            singularities: Vec::new(),
            abscissa: 0.0,
            positive_real: true,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.branch_note = note.into();
        self
    }

    pub fn with_singularities(mut self, pts: Vec<f64>) -> Self {
        self.singularities = pts;
        self
    }

    pub fn with_abscissa(mut self, s0: f64) -> Self {
        self.abscissa = s0;
        self
    }

    pub fn positive(mut self, yes: bool) -> Self {
        self.positive_real = yes;
        self
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        (self.eval)(s)
    }

    /// ln F(s); falls back to the principal log of `eval`.
    pub fn ln_eval(&self, s: Complex64) -> Complex64 {
        match &self.log_eval {
            Some(lf) => lf(s),
            None => (self.eval)(s).ln(),
        }
    }

    pub fn has_log(&self) -> bool {
        self.log_eval.is_some()
    }

    /// F(s) for real s (real part of the evaluator).
    pub fn eval_real(&self, s: f64) -> f64 {
        self.eval(Complex64::new(s, 0.0)).re
    }
}
