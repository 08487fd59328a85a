//! The incomplete simplex-product hypergeometric system: parameters, the
//! defining matrix, the particular series solution, the integral
//! representation (the independent oracle for the series), boundary terms,
//! residual verification, and the exact compatibility check on the
//! inhomogeneous right-hand side.

use num_complex::Complex64;

use crate::lauricella::{eval_fd, FdParams};
use crate::parampoly::ParamPoly;
use crate::power_product::{apply_g, GOperator, NumSum, PowerProductSum};
use crate::quadrature::integrate_line;
use crate::report::{PointResidualReport, SeriesResidualReport, SyzygyCondition, SyzygyReport};
use crate::series::{pochhammer, shell_indices, C64, ExponentOffset, TruncatedSeries};
use crate::{Error, Result};

/// Relative floor below which a residual coefficient counts as zero.
pub const RESIDUAL_TOL: f64 = 1e-12;

/// System parameters: column exponents alpha_k, the t-exponent parameter
/// gamma, and the integration endpoints a, b.
///
/// The convention `delta = -gamma - 1` ties the homogeneity vector
/// `beta = (alpha_1, ..., alpha_n, -gamma-1)` to the shift-relation form of
/// the system.
#[derive(Clone, Debug)]
pub struct SystemParams {
    pub n: usize,
    pub alpha: Vec<C64>,
    pub gamma: C64,
    pub a: C64,
    pub b: C64,
}

impl SystemParams {
    pub fn new(alpha: Vec<C64>, gamma: C64, a: C64, b: C64) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::InvalidParameter("need at least one column".into()));
        }
        for v in alpha.iter().chain([&gamma, &a, &b]) {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite("system parameter".into()));
            }
        }
        if is_negative_integer(gamma) {
            return Err(Error::InvalidParameter(format!(
                "gamma = {} is a negative integer",
                gamma
            )));
        }
        Ok(SystemParams {
            n: alpha.len(),
            alpha,
            gamma,
            a,
            b,
        })
    }

    pub fn delta(&self) -> C64 {
        -self.gamma - 1.0
    }

    /// beta = (alpha_1, ..., alpha_n, -gamma-1).
    pub fn beta(&self) -> Vec<C64> {
        let mut v = self.alpha.clone();
        v.push(self.delta());
        v
    }

    /// Evaluation point for parameter polynomials: (alpha..., delta).
    pub fn param_point(&self) -> Vec<C64> {
        self.beta()
    }

    /// 1/max(|a|,|b|), the ratio bound of the common convergence domain.
    pub fn ratio_bound(&self) -> f64 {
        let m = self.a.norm().max(self.b.norm());
        if m == 0.0 {
            f64::INFINITY
        } else {
            1.0 / m
        }
    }
}

pub(crate) fn is_negative_integer(z: C64) -> bool {
    z.im.abs() < 1e-12 && z.re < -0.5 && (z.re - z.re.round()).abs() < 1e-12
}

/// Principal-branch power with explicit zero-base rules.
pub fn cpow(base: C64, expo: C64) -> Result<C64> {
    if base.norm() == 0.0 {
        if expo.norm() == 0.0 {
            return Ok(C64::new(1.0, 0.0));
        }
        if expo.re > 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        return Err(Error::ZeroBase(format!("0^({})", expo)));
    }
    Ok(base.powc(expo))
}

/// The defining (n+1) x 2n matrix: row k (0-based, k < n) marks the two
/// variables of column pair k; the last row marks the second-row variables.
/// Matrix columns are ordered x_{11}, x_{21}, x_{12}, x_{22}, ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AMatrix {
    n: usize,
    rows: Vec<Vec<i64>>,
}

pub fn build_a(n: usize) -> AMatrix {
    assert!(n >= 1);
    let mut rows = vec![vec![0i64; 2 * n]; n + 1];
    for k in 0..n {
        rows[k][2 * k] = 1;
        rows[k][2 * k + 1] = 1;
    }
    for k in 0..n {
        rows[n][2 * k + 1] = 1;
    }
    AMatrix { n, rows }
}

impl AMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Column 2k for the first-row variable of pair k, 2k+1 for the second.
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// A * vec(s) where `s` is a 2×n row-major exponent grid.
    pub fn mul_grid(&self, grid: &[C64]) -> Vec<C64> {
        assert_eq!(grid.len(), 2 * self.n);
        let mut out = vec![C64::new(0.0, 0.0); self.n + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for k in 0..self.n {
                out[i] += row[2 * k] as f64 * grid[k]; // x_{1k} entry
                out[i] += row[2 * k + 1] as f64 * grid[self.n + k]; // x_{2k}
            }
        }
        out
    }

    /// Same for an integer offset grid.
    pub fn mul_offset(&self, off: &ExponentOffset) -> Vec<i64> {
        let n = self.n;
        let mut out = vec![0i64; n + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for k in 0..n {
                out[i] += row[2 * k] * off.get(0, k);
                out[i] += row[2 * k + 1] * off.get(1, k);
            }
        }
        out
    }
}

/// Value of g(t, x) = t^(gamma+1) prod_k (x_{1k} + x_{2k} t)^(alpha_k).
pub fn g_value(p: &SystemParams, t: C64, x: &[C64]) -> Result<(C64, Vec<String>)> {
    check_point(p.n, x)?;
    let mut warnings = Vec::new();
    let mut v = cpow(t, p.gamma + 1.0)?;
    for k in 0..p.n {
        let form = x[k] + x[p.n + k] * t;
        if form.im.abs() < 1e-14 * form.norm().max(1.0) && form.re < 0.0 {
            warnings.push(format!(
                "linear form {} is on the negative real axis at t = {}",
                k + 1,
                t
            ));
        }
        v *= cpow(form, p.alpha[k])?;
    }
    Ok((v, warnings))
}

/// Boundary term [g(t,x)] from t = a to t = b.
pub fn boundary_term(p: &SystemParams, x: &[C64]) -> Result<(C64, Vec<String>)> {
    if p.a == p.b {
        return Ok((C64::new(0.0, 0.0), Vec::new()));
    }
    let (gb, mut w1) = g_value(p, p.b, x)?;
    let (ga, w2) = g_value(p, p.a, x)?;
    w1.extend(w2);
    Ok((gb - ga, w1))
}

fn check_point(n: usize, x: &[C64]) -> Result<()> {
    if x.len() != 2 * n {
        return Err(Error::DimensionMismatch(format!(
            "point has {} entries, expected {}",
            x.len(),
            2 * n
        )));
    }
    Ok(())
}

/// Warnings for points outside the series convergence polydisk.
pub fn domain_warnings(p: &SystemParams, x: &[C64]) -> Vec<String> {
    let mut out = Vec::new();
    let bound = p.ratio_bound();
    for k in 0..p.n {
        if x[k].norm() == 0.0 {
            out.push(format!("x_1{} is zero; ratio undefined", k + 1));
            continue;
        }
        let r = (x[p.n + k] / x[k]).norm();
        if r >= bound {
            out.push(format!(
                "|x_2{}/x_1{}| = {:.4} outside U0 bound {:.4}",
                k + 1,
                k + 1,
                r,
                bound
            ));
        }
    }
    out
}

/// Evaluation outcome with diagnostics.
#[derive(Clone, Debug)]
pub struct EvalOutcome {
    pub value: C64,
    pub converged: Option<bool>,
    pub warnings: Vec<String>,
}

/// The particular solution, evaluated through the Lauricella function:
/// F = prod x_{1k}^(alpha_k) [ b^(gamma+1)/(gamma+1) F_D(...; -x_2 b/x_1)
///                           - a^(gamma+1)/(gamma+1) F_D(...; -x_2 a/x_1) ].
pub fn eval_f(p: &SystemParams, x: &[C64], k_order: usize) -> Result<EvalOutcome> {
    check_point(p.n, x)?;
    if (p.gamma + 1.0).norm() < 1e-14 {
        return Err(Error::InvalidParameter("gamma + 1 = 0".into()));
    }
    let mut warnings = domain_warnings(p, x);
    if p.a == p.b {
        return Ok(EvalOutcome {
            value: C64::new(0.0, 0.0),
            converged: Some(true),
            warnings,
        });
    }
    let mut prefactor = C64::new(1.0, 0.0);
    for k in 0..p.n {
        if x[k].norm() == 0.0 {
            return Err(Error::ZeroBase(format!(
                "x_1{} = 0 in the series prefactor",
                k + 1
            )));
        }
        prefactor *= x[k].powc(p.alpha[k]);
    }
    let minus_alpha: Vec<C64> = p.alpha.iter().map(|a| -a).collect();
    let fd = FdParams::new(p.gamma + 1.0, minus_alpha, p.gamma + 2.0);
    let mut endpoint = |t: C64| -> Result<(C64, bool)> {
        let tp = cpow(t, p.gamma + 1.0)?;
        if tp.norm() == 0.0 {
            return Ok((C64::new(0.0, 0.0), true));
        }
        let z: Vec<C64> = (0..p.n).map(|k| -x[p.n + k] * t / x[k]).collect();
        let r = eval_fd(&fd, &z, k_order)?;
        Ok((tp / (p.gamma + 1.0) * r.value, r.converged))
    };
    let (vb, cb) = endpoint(p.b)?;
    let (va, ca) = endpoint(p.a)?;
    let value = prefactor * (vb - va);
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::NonFinite("series value".into()));
    }
    if !(cb && ca) {
        warnings.push("series truncation not converged at requested order".into());
    }
    Ok(EvalOutcome {
        value,
        converged: Some(cb && ca),
        warnings,
    })
}

/// Build the multi-index family x_1^alpha sum_m w(|m|) prod_k P_k(m_k)
/// (x_2/x_1)^m as a truncated series; shared by the particular solution and
/// the boundary-term expansion.
fn build_m_series<W: Fn(usize) -> C64>(
    p: &SystemParams,
    k_order: usize,
    weight: W,
) -> TruncatedSeries {
    let n = p.n;
    let mut base = p.alpha.clone();
    base.extend(vec![C64::new(0.0, 0.0); n]);
    let mut series = TruncatedSeries::new(n, base, k_order);
    // P_k[t] = (-alpha_k)_t / t!
    let mut tables: Vec<Vec<C64>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut row = vec![C64::new(1.0, 0.0); k_order + 1];
        for t in 0..k_order {
            row[t + 1] = row[t] * (-p.alpha[k] + t as f64) / (t as f64 + 1.0);
        }
        tables.push(row);
    }
    for shell in 0..=k_order {
        let w = weight(shell);
        if w.norm() == 0.0 {
            continue;
        }
        for m in shell_indices(n, shell) {
            let mut coeff = w;
            for (k, mk) in m.entries().iter().enumerate() {
                coeff *= tables[k][*mk];
            }
            if coeff.norm() == 0.0 {
                continue;
            }
            let mut entries = vec![0i64; 2 * n];
            for (k, mk) in m.entries().iter().enumerate() {
                entries[k] = -(*mk as i64);
                entries[n + k] = *mk as i64;
            }
            series.insert(ExponentOffset::from_entries(n, entries), coeff, shell);
        }
    }
    series
}

/// Endpoint power difference b^(gamma+s+1) - a^(gamma+s+1).
fn endpoint_diff(p: &SystemParams, s: usize) -> Result<C64> {
    let e = p.gamma + (s as f64 + 1.0);
    Ok(cpow(p.b, e)? - cpow(p.a, e)?)
}

/// The particular solution as a truncated series with coefficients
/// c_m = (-1)^|m| (-alpha)_m (b^(gamma+|m|+1) - a^(gamma+|m|+1))
///       / ((gamma+|m|+1) (1)_m).
pub fn f_series(p: &SystemParams, k_order: usize) -> Result<TruncatedSeries> {
    if (p.gamma + 1.0).norm() < 1e-14 {
        return Err(Error::InvalidParameter("gamma + 1 = 0".into()));
    }
    let mut weights = Vec::with_capacity(k_order + 1);
    for s in 0..=k_order {
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        let denom = p.gamma + (s as f64 + 1.0);
        weights.push(sign * endpoint_diff(p, s)? / denom);
    }
    Ok(build_m_series(p, k_order, |s| weights[s]))
}

/// Binomial-series expansion of the boundary term [g], truncated at the same
/// order and on the same exponent support as the particular solution.
pub fn g_boundary_series(p: &SystemParams, k_order: usize) -> Result<TruncatedSeries> {
    let mut weights = Vec::with_capacity(k_order + 1);
    for s in 0..=k_order {
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        weights.push(sign * endpoint_diff(p, s)?);
    }
    Ok(build_m_series(p, k_order, |s| weights[s]))
}

/// The integral representation Phi(beta; x) = int_a^b t^gamma prod_k
/// (x_{1k} + x_{2k} t)^(alpha_k) dt along the straight contour, with
/// endpoint handling for the algebraic singularity at t = 0.
pub fn eval_phi(p: &SystemParams, x: &[C64], tol: f64) -> Result<EvalOutcome> {
    check_point(p.n, x)?;
    if p.a == p.b {
        return Ok(EvalOutcome {
            value: C64::new(0.0, 0.0),
            converged: Some(true),
            warnings: Vec::new(),
        });
    }
    let mut warnings = Vec::new();
    branch_prescan(p, x, &mut warnings)?;
    let integrand = |t: C64| -> C64 {
        let mut v = t.powc(p.gamma);
        for k in 0..p.n {
            v *= (x[k] + x[p.n + k] * t).powc(p.alpha[k]);
        }
        v
    };

    let singular_at = |t: C64| t.norm() == 0.0 && p.gamma.re < 0.5 && p.gamma.norm() > 1e-14;
    let mut total = C64::new(0.0, 0.0);
    // only the t = 0 endpoint needs special treatment; bring it to the left
    let (eff_lo, eff_hi, sign) = if p.b.norm() == 0.0 && p.a.norm() != 0.0 {
        (p.b, p.a, C64::new(-1.0, 0.0))
    } else {
        (p.a, p.b, C64::new(1.0, 0.0))
    };
    if singular_at(eff_lo) {
        if p.gamma.re <= -1.0 {
            return Err(Error::NonIntegrable(format!(
                "t^gamma with Re gamma = {} <= -1 at an endpoint",
                p.gamma.re
            )));
        }
        let eps_len = 0.1 * (eff_hi - eff_lo).norm();
        let eps = eff_lo + (eff_hi - eff_lo) * (eps_len / (eff_hi - eff_lo).norm());
        total += series_correction(p, x, eps, tol, &mut warnings)?;
        let tail = integrate_line(integrand, eps, eff_hi, tol)?;
        warnings.extend(tail.warnings);
        total += tail.value;
    } else {
        if eff_lo.norm() == 0.0 && p.gamma.re <= -1.0 && p.gamma.norm() > 1e-14 {
            return Err(Error::NonIntegrable(format!(
                "t^gamma with Re gamma = {} <= -1 at an endpoint",
                p.gamma.re
            )));
        }
        let r = integrate_line(integrand, eff_lo, eff_hi, tol)?;
        warnings.extend(r.warnings);
        total += r.value;
    }
    Ok(EvalOutcome {
        value: sign * total,
        converged: Some(true),
        warnings,
    })
}

/// Taylor-expand the analytic factor around t = 0 and integrate
/// t^gamma times the expansion over [0, eps] in closed form.
fn series_correction(
    p: &SystemParams,
    x: &[C64],
    eps: C64,
    tol: f64,
    warnings: &mut Vec<String>,
) -> Result<C64> {
    const J: usize = 18;
    let n = p.n;
    // h(t) = prod_k (x_{1k} + x_{2k} t)^(alpha_k): coefficients by repeated
    // binomial-series convolution
    let mut h = vec![C64::new(0.0, 0.0); J + 1];
    h[0] = C64::new(1.0, 0.0);
    for k in 0..n {
        if x[k].norm() == 0.0 {
            return Err(Error::ZeroBase(format!(
                "x_1{} = 0: no expansion around t = 0",
                k + 1
            )));
        }
        let r = x[n + k] / x[k];
        let scale = x[k].powc(p.alpha[k]);
        let mut fac = vec![C64::new(0.0, 0.0); J + 1];
        let mut c = C64::new(1.0, 0.0);
        for (j, slot) in fac.iter_mut().enumerate() {
            *slot = c;
            c = c * (p.alpha[k] - j as f64) / (j as f64 + 1.0) * r;
        }
        let mut next = vec![C64::new(0.0, 0.0); J + 1];
        for i in 0..=J {
            if h[i].norm() == 0.0 {
                continue;
            }
            for j in 0..=(J - i) {
                next[i + j] += h[i] * fac[j] * scale;
            }
        }
        h = next;
    }
    let mut acc = C64::new(0.0, 0.0);
    let mut last = 0.0;
    for (j, hj) in h.iter().enumerate() {
        let e = p.gamma + (j as f64 + 1.0);
        let term = hj * cpow(eps, e)? / e;
        acc += term;
        last = term.norm();
    }
    if last > tol.max(1e-14) * acc.norm().max(1.0) {
        warnings.push(format!(
            "endpoint series correction tail {:.3e} above tolerance",
            last
        ));
    }
    Ok(acc)
}

/// Reject contours on which a linear form or the t-power crosses its branch
/// cut in the default real regime; otherwise emit warnings only.
fn branch_prescan(p: &SystemParams, x: &[C64], warnings: &mut Vec<String>) -> Result<()> {
    let real_regime = p.a.im.abs() < 1e-14
        && p.b.im.abs() < 1e-14
        && x.iter().all(|v| v.im.abs() < 1e-14);
    if !real_regime {
        warnings.push("complex contour or data: branch cuts not pre-checked".into());
        return Ok(());
    }
    let (lo, hi) = if p.a.re <= p.b.re {
        (p.a.re, p.b.re)
    } else {
        (p.b.re, p.a.re)
    };
    if lo < 0.0 && hi > 0.0 && p.gamma.norm() > 1e-14 && !is_near_nonneg_integer(p.gamma) {
        return Err(Error::BranchCut(
            "contour crosses the t = 0 branch point".into(),
        ));
    }
    for k in 0..p.n {
        let la = x[k].re + x[p.n + k].re * lo;
        let lb = x[k].re + x[p.n + k].re * hi;
        let int_alpha = is_near_nonneg_integer(p.alpha[k]);
        if !int_alpha && la.min(lb) < 0.0 {
            if la * lb < 0.0 {
                return Err(Error::BranchCut(format!(
                    "linear form {} changes sign on the contour",
                    k + 1
                )));
            }
            warnings.push(format!(
                "linear form {} is negative on the contour; principal branch used",
                k + 1
            ));
        }
    }
    Ok(())
}

fn is_near_nonneg_integer(z: C64) -> bool {
    z.im.abs() < 1e-12 && z.re > -0.5 && (z.re - z.re.round()).abs() < 1e-12
}

/// Right-hand side of the inhomogeneous equation for a series residual check.
pub enum SeriesRhs<'a> {
    /// Homogeneous solution: the operator must annihilate the series.
    Zero,
    /// Particular solution: compare against this expansion term-for-term.
    Series(&'a TruncatedSeries),
}

/// Coefficientwise residual verification of a truncated series against all
/// three equation families. Toric residuals are only compared up to grade
/// K-2 because truncation can lose cancellation partners near the boundary.
pub fn verify_series_residuals(
    p: &SystemParams,
    series: &TruncatedSeries,
    rhs: SeriesRhs,
    tolerance: f64,
) -> SeriesResidualReport {
    let n = p.n;
    let scale = series.max_abs_coeff().max(1e-300);
    let reliable = series.order() as i64 - 2;

    let mut euler_max_rel = Vec::with_capacity(n);
    for i in 0..n {
        let r = series
            .apply_euler(0, i)
            .add(&series.apply_euler(1, i))
            .and_then(|s| s.sub(&series.scale(p.alpha[i])))
            .expect("same base");
        euler_max_rel.push(r.max_abs_coeff() / scale);
    }

    let mut inhom = series.scale(p.gamma + 1.0);
    for i in 0..n {
        inhom = inhom.add(&series.apply_euler(1, i)).expect("same base");
    }
    let inhom_max_rel = match rhs {
        SeriesRhs::Zero => inhom.max_abs_coeff() / scale,
        SeriesRhs::Series(expect) => {
            let scale2 = scale.max(expect.max_abs_coeff());
            inhom.sub(expect).expect("same base").max_abs_coeff() / scale2
        }
    };

    let mut toric_max_rel = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let r1 = series.apply_partial(1, j).apply_partial(0, i);
            let r2 = series.apply_partial(1, i).apply_partial(0, j);
            let diff = r1.sub(&r2).expect("same base");
            let mut worst = 0.0f64;
            for (_, coeff, grade) in diff.iter() {
                if (grade as i64) <= reliable {
                    worst = worst.max(coeff.norm());
                }
            }
            toric_max_rel.push((format!("{},{}", i + 1, j + 1), worst / scale));
        }
    }

    let pass = euler_max_rel.iter().all(|v| *v <= tolerance)
        && inhom_max_rel <= tolerance
        && toric_max_rel.iter().all(|(_, v)| *v <= tolerance);
    SeriesResidualReport {
        euler_max_rel,
        inhom_max_rel,
        toric_max_rel,
        reliable_grade: reliable,
        scale,
        tolerance,
        pass,
    }
}

/// Pointwise residuals of the integral representation at one sample point:
/// each operator is pushed under the integral sign analytically and the
/// resulting integrals are evaluated separately, so the reported gaps are
/// honest measures of the identity rather than restatements of it.
pub fn phi_residuals_pointwise(
    p: &SystemParams,
    x: &[C64],
    tol: f64,
) -> Result<PointResidualReport> {
    check_point(p.n, x)?;
    let n = p.n;
    let mut warnings = Vec::new();
    let phi = NumSum::phi_seed(p);
    let quad = |s: &NumSum, warn: &mut Vec<String>| -> Result<C64> {
        let r = integrate_line(|t| s.eval(t, x), p.a, p.b, tol)?;
        warn.extend(r.warnings);
        Ok(r.value)
    };
    let phi_val = quad(&phi, &mut warnings)?;
    let scale = phi_val.norm().max(1.0);

    let mut euler_rel = Vec::with_capacity(n);
    for i in 0..n {
        let t0 = quad(&phi.partial(0, i).mul_x(0, i), &mut warnings)?;
        let t1 = quad(&phi.partial(1, i).mul_x(1, i), &mut warnings)?;
        euler_rel.push((t0 + t1 - p.alpha[i] * phi_val).norm() / scale);
    }

    let mut lhs = (p.gamma + 1.0) * phi_val;
    for i in 0..n {
        lhs += quad(&phi.partial(1, i).mul_x(1, i), &mut warnings)?;
    }
    let (bt, w) = boundary_term(p, x)?;
    warnings.extend(w);
    let inhom_rel = (lhs - bt).norm() / scale.max(bt.norm());

    let mut toric_rel = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let d1 = quad(&phi.partial(1, j).partial(0, i), &mut warnings)?;
            let d2 = quad(&phi.partial(1, i).partial(0, j), &mut warnings)?;
            toric_rel.push((format!("{},{}", i + 1, j + 1), (d1 - d2).norm() / scale));
        }
    }

    let pass = euler_rel.iter().all(|v| *v <= tol * 1e3)
        && inhom_rel <= tol * 1e3
        && toric_rel.iter().all(|(_, v)| *v <= tol * 1e3);
    Ok(PointResidualReport {
        euler_rel,
        inhom_rel,
        toric_rel,
        tolerance: tol * 1e3,
        pass,
        warnings,
    })
}

/// Exact compatibility check of the inhomogeneous right-hand side
/// g = (0, ..., 0, [g]): the homogeneity operators paired against the zero
/// entries must annihilate g(t, x), and so must every toric generator.
pub fn check_syzygy(p: &SystemParams) -> SyzygyReport {
    check_syzygy_for(&PowerProductSum::g_seed(p.n))
}

/// Same check for an arbitrary closed-form right-hand side.
pub fn check_syzygy_for(g: &PowerProductSum) -> SyzygyReport {
    let n = g.n();
    let mut conditions = Vec::new();
    for i in 0..n {
        let op = GOperator::Sum(vec![
            GOperator::Theta(0, i),
            GOperator::Theta(1, i),
            GOperator::Const(ParamPoly::alpha(i, n).neg()),
        ]);
        let r = apply_g(&op, g);
        let left = r.canonical_len();
        conditions.push(SyzygyCondition {
            name: format!("euler_compat_{}", i + 1),
            pass: left == 0,
            residual_terms: left,
        });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let d1 = g.partial(1, j).partial(0, i);
            let d2 = g.partial(1, i).partial(0, j);
            let diff = d1.add(&d2.scale(&ParamPoly::from_int(-1, n + 1)));
            let left = diff.canonical_len();
            conditions.push(SyzygyCondition {
                name: format!("toric_compat_{}_{}", i + 1, j + 1),
                pass: left == 0,
                residual_terms: left,
            });
        }
    }
    let all_pass = conditions.iter().all(|c| c.pass);
    SyzygyReport {
        n,
        conditions,
        all_pass,
    }
}

/// Reference factorial-style coefficient (1)_m = prod m_k!.
pub fn one_pochhammer(m: &crate::series::MultiIndex) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for &mk in m.entries() {
        acc *= pochhammer(C64::new(1.0, 0.0), mk);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::MultiIndex;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn params(alpha: &[f64], gamma: f64, a: f64, b: f64) -> SystemParams {
        SystemParams::new(
            alpha.iter().map(|v| c(*v)).collect(),
            c(gamma),
            c(a),
            c(b),
        )
        .unwrap()
    }

    #[test]
    fn a_matrix_patterns() {
        assert_eq!(build_a(1).rows(), &[vec![1, 1], vec![0, 1]]);
        assert_eq!(
            build_a(2).rows(),
            &[vec![1, 1, 0, 0], vec![0, 0, 1, 1], vec![0, 1, 0, 1]]
        );
        let a3 = build_a(3);
        assert_eq!(a3.rows().len(), 4);
        assert_eq!(a3.rows()[3], vec![0, 1, 0, 1, 0, 1]);
        // column 2k is the unit vector e_k, column 2k+1 is e_k + e_n
        assert_eq!(a3.column(2), vec![0, 1, 0, 0]);
        assert_eq!(a3.column(3), vec![0, 1, 0, 1]);
    }

    #[test]
    fn gamma_negative_integer_rejected() {
        assert!(SystemParams::new(vec![c(1.0)], c(-2.0), c(0.0), c(1.0)).is_err());
        assert!(SystemParams::new(vec![c(1.0)], c(-1.0), c(0.0), c(1.0)).is_err());
        assert!(SystemParams::new(vec![c(1.0)], c(-0.5), c(0.0), c(1.0)).is_ok());
    }

    #[test]
    fn boundary_term_examples() {
        // polynomial case: gamma=0, alpha=1 on [0,1] gives x11 + x21
        let p = params(&[1.0], 0.0, 0.0, 1.0);
        for x in [[2.0, 0.5], [1.3, -0.4]] {
            let (v, _) = boundary_term(&p, &[c(x[0]), c(x[1])]).unwrap();
            assert!((v - c(x[0] + x[1])).norm() < 1e-14);
        }
        // empty interval
        let p = params(&[1.0], 0.7, 0.3, 0.3);
        let (v, _) = boundary_term(&p, &[c(2.0), c(0.5)]).unwrap();
        assert_eq!(v, c(0.0));
        // n=2 polynomial evaluation
        let p = params(&[1.0, 1.0], 1.0, 0.0, 1.0);
        let x = [c(1.0), c(1.0), c(1.0), c(1.0)];
        let (v, _) = boundary_term(&p, &x).unwrap();
        assert!((v - c(4.0)).norm() < 1e-14);
    }

    #[test]
    fn eval_f_closed_forms() {
        // alpha = 0: (b^(g+1) - a^(g+1))/(g+1), F_D = 1
        let p = params(&[0.0], 1.0, 0.0, 1.0);
        let r = eval_f(&p, &[c(3.0), c(0.2)], 10).unwrap();
        assert!((r.value - c(0.5)).norm() < 1e-14);

        // integral of x11 + x21 t over [0,1]: x11 + x21/2
        let p = params(&[1.0], 0.0, 0.0, 1.0);
        let r = eval_f(&p, &[c(2.0), c(0.5)], 10).unwrap();
        assert!((r.value - c(2.25)).norm() < 1e-12);
    }

    #[test]
    fn eval_phi_closed_forms() {
        let p = params(&[0.0], 1.0, 0.0, 1.0);
        let r = eval_phi(&p, &[c(1.0), c(0.0)], 1e-10).unwrap();
        assert!((r.value - c(0.5)).norm() < 1e-9);

        // int_0^1 t^2 (1+t)^2 dt = 1/3 + 1/2 + 1/5
        let p = params(&[2.0], 2.0, 0.0, 1.0);
        let r = eval_phi(&p, &[c(1.0), c(1.0)], 1e-11).unwrap();
        let expect = 1.0 / 3.0 + 0.5 + 0.2;
        assert!((r.value - c(expect)).norm() < 1e-10);
    }

    #[test]
    fn series_and_integral_agree() {
        let p = params(&[0.5, 1.5], 0.7, 0.1, 0.9);
        let x = [c(1.0), c(2.0), c(0.3), c(-0.4)];
        let f = eval_f(&p, &x, 40).unwrap();
        let phi = eval_phi(&p, &x, 1e-9).unwrap();
        assert!(
            (f.value - phi.value).norm() < 1e-7 * phi.value.norm().max(1.0),
            "f = {}, phi = {}",
            f.value,
            phi.value
        );
    }

    #[test]
    fn f_series_matches_eval_f() {
        let p = params(&[0.8, 1.2], 0.5, 0.2, 0.7);
        let x = [c(1.5), c(0.9), c(0.4), c(0.3)];
        let s = f_series(&p, 30).unwrap();
        let direct = eval_f(&p, &x, 30).unwrap();
        let via_series = s.evaluate(&x).unwrap();
        assert!((direct.value - via_series).norm() < 1e-11 * direct.value.norm());
    }

    #[test]
    fn f_series_coefficient_form() {
        // c_m = (-1)^|m| (-alpha)_m (b^(g+|m|+1)-a^(g+|m|+1)) / ((g+|m|+1)(1)_m)
        let p = params(&[0.7, 1.1], 0.4, 0.15, 0.85);
        let s = f_series(&p, 6).unwrap();
        let m = MultiIndex::new(vec![2, 1]);
        let mut entries = vec![0i64; 4];
        entries[0] = -2;
        entries[1] = -1;
        entries[2] = 2;
        entries[3] = 1;
        let got = s.coeff(&ExponentOffset::from_entries(2, entries));
        let minus_alpha: Vec<C64> = p.alpha.iter().map(|v| -v).collect();
        let poch = crate::series::pochhammer_multi(&minus_alpha, &m).unwrap();
        let sm = p.gamma + 4.0;
        let expect = -poch * (p.b.powc(sm) - p.a.powc(sm)) / (sm * one_pochhammer(&m));
        assert!((got - expect).norm() < 1e-13 * expect.norm());
    }

    #[test]
    fn empty_interval_vanishes_exactly() {
        let p = params(&[0.9, 0.4], 0.6, 0.45, 0.45);
        assert!(f_series(&p, 12).unwrap().is_empty());
        let x = [c(1.0), c(1.0), c(0.2), c(0.1)];
        assert_eq!(eval_f(&p, &x, 12).unwrap().value, c(0.0));
        assert_eq!(eval_phi(&p, &x, 1e-10).unwrap().value, c(0.0));
    }

    #[test]
    fn residuals_of_particular_solution() {
        for n in 1..=3usize {
            let alpha: Vec<f64> = (0..n).map(|k| 0.4 + 0.5 * k as f64).collect();
            let p = params(&alpha, 0.8, 0.2, 0.9);
            let s = f_series(&p, 12).unwrap();
            let rhs = g_boundary_series(&p, 12).unwrap();
            let rep = verify_series_residuals(&p, &s, SeriesRhs::Series(&rhs), RESIDUAL_TOL);
            assert!(rep.pass, "n = {}: {:?}", n, rep);
        }
    }

    #[test]
    fn constant_function_fails_euler_residual() {
        let p = params(&[0.9, 1.4], 0.5, 0.1, 0.8);
        let mut constant = TruncatedSeries::new(2, vec![c(0.0); 4], 4);
        constant.insert(ExponentOffset::zero(2), c(1.0), 0);
        let rep = verify_series_residuals(&p, &constant, SeriesRhs::Zero, RESIDUAL_TOL);
        assert!(!rep.pass);
        assert!(rep.euler_max_rel[0] > 0.5);
    }

    #[test]
    fn syzygy_conditions_pass_symbolically() {
        for n in 1..=3usize {
            let p = params(&vec![0.5; n], 0.3, 0.0, 1.0);
            let rep = check_syzygy(&p);
            assert!(rep.all_pass, "n = {}", n);
            if n == 1 {
                // no toric generators: the box conditions are vacuous
                assert_eq!(rep.conditions.len(), 1);
            }
        }
    }

    #[test]
    fn syzygy_negative_controls() {
        use crate::power_product::PowerProductTerm;
        let n = 2;
        // alpha-power bump: the first homogeneity compatibility fails
        let mut g = PowerProductSum::zero(n);
        g.push(PowerProductTerm {
            coeff: ParamPoly::one(n + 1),
            t_off: 0,
            mono: vec![0; 2 * n],
            shift: vec![1, 0],
        });
        let rep = check_syzygy_for(&g);
        assert!(!rep.all_pass);
        assert!(!rep.conditions[0].pass);
        // bare-variable factor: the toric compatibility fails
        let g2 = PowerProductSum::g_seed(n).mul_x(0, 0);
        let rep2 = check_syzygy_for(&g2);
        assert!(rep2.conditions.iter().any(|c| c.name.starts_with("toric") && !c.pass));
    }

    #[test]
    fn phi_pointwise_residuals() {
        let p = params(&[0.7, 1.3], 0.9, 0.2, 0.8);
        let x = [c(1.2), c(0.9), c(0.3), c(-0.25)];
        let rep = phi_residuals_pointwise(&p, &x, 1e-9).unwrap();
        assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn sigma_invariance_of_series() {
        // permuting columns of alpha and x together leaves the value
        // unchanged up to float reordering noise
        let p = params(&[0.6, 1.1, 1.7], 0.8, 0.1, 0.7);
        let x = [c(1.2), c(0.8), c(1.5), c(0.3), c(-0.2), c(0.4)];
        let perm = [2usize, 0, 1];
        let alpha_p: Vec<C64> = perm.iter().map(|&j| p.alpha[j]).collect();
        let pp = SystemParams::new(alpha_p, p.gamma, p.a, p.b).unwrap();
        let xp: Vec<C64> = perm
            .iter()
            .map(|&j| x[j])
            .chain(perm.iter().map(|&j| x[3 + j]))
            .collect();
        let v1 = eval_f(&p, &x, 24).unwrap().value;
        let v2 = eval_f(&pp, &xp, 24).unwrap().value;
        assert!((v1 - v2).norm() <= 1e-13 * v1.norm().max(1.0));
        // and termwise on the series: coefficients correspond under the
        // column permutation bijection
        let s1 = f_series(&p, 8).unwrap();
        let s2 = f_series(&pp, 8).unwrap();
        for (k, coeff, _) in s1.iter() {
            let kp = k.permute_columns(&inverse_perm(&perm));
            let cp = s2.coeff(&kp);
            assert!((coeff - cp).norm() <= 1e-13 * coeff.norm().max(1e-30));
        }
    }

    fn inverse_perm(perm: &[usize]) -> Vec<usize> {
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }

    #[test]
    fn branch_prescan_catches_sign_change() {
        let p = params(&[0.5], 0.5, 0.0, 1.0);
        // x11 + x21 t = 1 - 2t changes sign on [0,1]
        let r = eval_phi(&p, &[c(1.0), c(-2.0)], 1e-9);
        assert!(matches!(r, Err(Error::BranchCut(_))));
    }

    #[test]
    fn singular_endpoint_correction() {
        // gamma = 0.3 with a = 0: compare against alpha = 0 closed form
        let p = params(&[0.0], 0.3, 0.0, 1.0);
        let r = eval_phi(&p, &[c(1.0), c(0.0)], 1e-10).unwrap();
        assert!((r.value - c(1.0 / 1.3)).norm() < 1e-9, "got {}", r.value);
        // and against the series solution for a nontrivial alpha
        let p = params(&[0.8], 0.3, 0.0, 0.9);
        let x = [c(1.0), c(0.45)];
        let phi = eval_phi(&p, &x, 1e-10).unwrap();
        let f = eval_f(&p, &x, 50).unwrap();
        assert!((phi.value - f.value).norm() < 1e-7 * f.value.norm());
    }

    #[test]
    fn non_integrable_endpoint_rejected() {
        let p = params(&[0.5], -1.2, 0.0, 1.0);
        assert!(matches!(
            eval_phi(&p, &[c(1.0), c(0.1)], 1e-8),
            Err(Error::NonIntegrable(_))
        ));
    }
}
