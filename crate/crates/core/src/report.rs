//! Report types shared between the library and the command-line front end.
//!
//! Complex numbers serialize as `[re, im]` pairs throughout; every report is
//! a plain data structure with deterministic field ordering so repeated runs
//! produce byte-identical JSON.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A complex number on the wire: `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cpx(pub [f64; 2]);

impl From<Complex64> for Cpx {
    fn from(z: Complex64) -> Self {
        Cpx([z.re, z.im])
    }
}

impl From<Cpx> for Complex64 {
    fn from(c: Cpx) -> Self {
        Complex64::new(c.0[0], c.0[1])
    }
}

/// Value of a single evaluation together with its diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub value: Cpx,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reliable_order: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    pub warnings: Vec<String>,
}

/// Coefficientwise residual check of a series against the system.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesResidualReport {
    /// Max relative residual coefficient per homogeneity equation.
    pub euler_max_rel: Vec<f64>,
    /// Max relative mismatch of the inhomogeneous equation against its
    /// right-hand side (zero for homogeneous solutions).
    pub inhom_max_rel: f64,
    /// Max relative residual per toric equation, keyed "i,j" (1-based).
    pub toric_max_rel: Vec<(String, f64)>,
    /// Grade up to which the toric residuals are meaningful.
    pub reliable_grade: i64,
    /// Coefficient scale the residuals are relative to.
    pub scale: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Pointwise residual check of the integral representation.
#[derive(Clone, Debug, Serialize)]
pub struct PointResidualReport {
    pub euler_rel: Vec<f64>,
    pub inhom_rel: f64,
    pub toric_rel: Vec<(String, f64)>,
    pub tolerance: f64,
    pub pass: bool,
    pub warnings: Vec<String>,
}

/// One syzygy-compatibility condition, checked exactly.
#[derive(Clone, Debug, Serialize)]
pub struct SyzygyCondition {
    pub name: String,
    pub pass: bool,
    /// Canonical terms remaining after cancellation (0 when `pass`).
    pub residual_terms: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygyReport {
    pub n: usize,
    pub conditions: Vec<SyzygyCondition>,
    pub all_pass: bool,
}

/// Per-sample gap of a contiguity relation.
#[derive(Clone, Debug, Serialize)]
pub struct SampleGap {
    pub x: Vec<Cpx>,
    pub lhs: Cpx,
    pub rhs: Cpx,
    pub abs_gap: f64,
    pub rel_gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContiguityReport {
    pub relation: String,
    /// 1-based column index the shift acts on.
    pub k: usize,
    pub representation: String,
    pub samples: Vec<SampleGap>,
    pub max_rel_gap: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Outcome of the bounded nonresonance certificate search.
#[derive(Clone, Debug, Serialize)]
pub struct NonresonanceReport {
    pub nonresonant: bool,
    /// Exhaustive search bound on cone coefficients; a `true` verdict is a
    /// bounded certificate, a `false` verdict carries an exact witness.
    pub search_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ResonanceWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResonanceWitness {
    /// 1-based pair of basis indices whose shifted supports intersect.
    pub ell: usize,
    pub ell_prime: usize,
    /// Cone coefficients and signs realizing the collision.
    pub m: Vec<i64>,
    pub m_prime: Vec<i64>,
    pub sign: i64,
    pub sign_prime: i64,
}

/// Domain classification of one evaluation point.
#[derive(Clone, Debug, Serialize)]
pub struct DomainReport {
    /// All ratio moduli below 1/max(|a|,|b|).
    pub in_u0: bool,
    /// |x_{2j}/x_{1j}| per column.
    pub ratios: Vec<f64>,
    pub bound: f64,
    /// The permutation sorting the ratios strictly, when unique (0-based).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
    /// False when ties prevent a strict ordering.
    pub strict: bool,
}

/// Result of the exact operator-identity verification.
#[derive(Clone, Debug, Serialize)]
pub struct WeylVerifyEntry {
    pub k: usize,
    pub l1_ok: bool,
    pub l2_ok: bool,
    pub variant_used: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylVerifyReport {
    pub n: usize,
    pub entries: Vec<WeylVerifyEntry>,
    pub all_pass: bool,
}
