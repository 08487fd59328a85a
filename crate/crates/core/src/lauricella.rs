//! Lauricella F_D evaluation by truncated multi-index summation.

use num_complex::Complex64;

use crate::series::{pochhammer, shell_indices, C64};
use crate::{Error, Result};

/// Relative size under which the last two graded shells mark convergence.
pub const SHELL_CONVERGENCE_REL: f64 = 1e-12;

/// Parameters of F_D(a; b_1..b_n; c; z_1..z_n).
#[derive(Clone, Debug)]
pub struct FdParams {
    pub a: C64,
    pub b: Vec<C64>,
    pub c: C64,
}

impl FdParams {
    pub fn new(a: C64, b: Vec<C64>, c: C64) -> Self {
        FdParams { a, b, c }
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// The lower parameter must avoid 0, -1, ..., -(K-1) so that (c)_{|m|}
    /// never vanishes inside the truncation range.
    pub fn validate(&self, k_order: usize) -> Result<()> {
        for j in 0..=k_order {
            let v = self.c + j as f64;
            if v.norm() < 1e-14 {
                return Err(Error::ResonantPole(format!(
                    "F_D lower parameter pole: c + {} = 0 within truncation range",
                    j
                )));
            }
        }
        Ok(())
    }
}

/// Result of a truncated F_D summation.
#[derive(Clone, Debug)]
pub struct FdEval {
    pub value: C64,
    /// True when the last two graded shells each contributed less than
    /// [`SHELL_CONVERGENCE_REL`] relative to the partial sum.
    pub converged: bool,
    /// |S_K - S_{K-1}| truncation diagnostic.
    pub last_shell_abs: f64,
    pub warnings: Vec<String>,
}

/// Evaluate F_D by summing all multi-indices with |m| <= k_order in graded
/// lexicographic order.
///
/// Coefficients are assembled from cached one-dimensional Pochhammer tables,
/// one per variable, so each term costs O(n) flops.
pub fn eval_fd(p: &FdParams, z: &[C64], k_order: usize) -> Result<FdEval> {
    let n = p.n();
    if z.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "eval_fd: {} arguments for {} upper parameters",
            z.len(),
            n
        )));
    }
    p.validate(k_order)?;
    let mut warnings = Vec::new();
    for (i, zi) in z.iter().enumerate() {
        if zi.norm() >= 1.0 {
            warnings.push(format!(
                "|z_{}| = {:.6} >= 1: series may diverge",
                i + 1,
                zi.norm()
            ));
        }
    }

    // ratio[s] = (a)_s / (c)_s, rb[i][t] = (b_i)_t / t! ; z powers cached too
    let mut ratio = vec![C64::new(1.0, 0.0); k_order + 1];
    for s in 0..k_order {
        ratio[s + 1] = ratio[s] * (p.a + s as f64) / (p.c + s as f64);
    }
    let mut rb: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut zp: Vec<Vec<C64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![C64::new(1.0, 0.0); k_order + 1];
        let mut pow = vec![C64::new(1.0, 0.0); k_order + 1];
        for t in 0..k_order {
            row[t + 1] = row[t] * (p.b[i] + t as f64) / (t as f64 + 1.0);
            pow[t + 1] = pow[t] * z[i];
        }
        rb.push(row);
        zp.push(pow);
    }

    let mut total = C64::new(0.0, 0.0);
    let mut shell_abs = [0.0f64; 2]; // previous two shell contributions
    for shell in 0..=k_order {
        let mut shell_sum = C64::new(0.0, 0.0);
        for m in shell_indices(n, shell) {
            let mut term = ratio[shell];
            for (i, mi) in m.entries().iter().enumerate() {
                term *= rb[i][*mi] * zp[i][*mi];
            }
            shell_sum += term;
        }
        total += shell_sum;
        shell_abs[0] = shell_abs[1];
        shell_abs[1] = shell_sum.norm();
    }
    let scale = total.norm().max(1e-300);
    let converged = k_order >= 1
        && shell_abs[0] / scale < SHELL_CONVERGENCE_REL
        && shell_abs[1] / scale < SHELL_CONVERGENCE_REL;
    Ok(FdEval {
        value: total,
        converged,
        last_shell_abs: shell_abs[1],
        warnings,
    })
}

/// Plain Gauss 2F1 partial sum; the n = 1 oracle for [`eval_fd`].
pub fn gauss_2f1_direct(a: C64, b: C64, c: C64, z: C64, k_order: usize) -> C64 {
    let mut total = C64::new(0.0, 0.0);
    for m in 0..=k_order {
        let num = pochhammer(a, m) * pochhammer(b, m);
        let den = pochhammer(c, m) * pochhammer(Complex64::new(1.0, 0.0), m);
        total += num / den * z.powu(m as u32);
    }
    total
}
