//! Adaptive Gauss-Kronrod quadrature for complex integrands on a straight
//! segment between two (possibly complex) endpoints.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::series::C64;
use crate::{Error, Result};

// 15-point Kronrod abscissae on [-1, 1] (positive half) with the embedded
// 7-point Gauss rule. Standard QUADPACK values.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

const MAX_INTERVALS: usize = 5000;

/// Outcome of an adaptive integration.
#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: C64,
    /// Estimated absolute error.
    pub abs_error: f64,
    pub evaluations: usize,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    lo: f64,
    hi: f64,
    value: C64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.lo == other.lo
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap on error; tie-break on position for determinism
        self.err
            .total_cmp(&other.err)
            .then(other.lo.total_cmp(&self.lo))
    }
}

fn gk15<F: Fn(f64) -> C64>(f: &F, lo: f64, hi: f64) -> (C64, f64, usize) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = C64::new(0.0, 0.0);
    let mut resabs = fc.norm() * WGK[7];
    let mut evals = 1;
    let mut fvals = [C64::new(0.0, 0.0); 15];
    fvals[7] = fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        evals += 2;
        fvals[j] = f1;
        fvals[14 - j] = f2;
        kron += (f1 + f2) * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut resasc = (fc - mean).norm() * WGK[7];
    for j in 0..7 {
        resasc += ((fvals[j] - mean).norm() + (fvals[14 - j] - mean).norm()) * WGK[j];
    }
    resasc *= half.abs();
    let raw = ((kron - gauss) * half).norm();
    let mut err = raw;
    if resasc != 0.0 && raw != 0.0 {
        err = resasc * (200.0 * raw / resasc).powf(1.5).min(1.0);
    }
    let min_err = 50.0 * f64::EPSILON * resabs * half.abs();
    if min_err > err {
        err = min_err;
    }
    (kron * half, err, evals)
}

/// Integrate `f` along the straight segment from `a` to `b` with absolute
/// error target `tol`, by worst-interval-first bisection of the unit
/// parameterization.
///
/// The contribution sum is accumulated over panels in position order, so the
/// result is deterministic for a given integrand and tolerance.
pub fn integrate_line<F: Fn(C64) -> C64>(f: F, a: C64, b: C64, tol: f64) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult {
            value: C64::new(0.0, 0.0),
            abs_error: 0.0,
            evaluations: 0,
            warnings: Vec::new(),
        });
    }
    let jac = b - a;
    let g = |u: f64| -> C64 { f(a + jac * u) * jac };
    let mut warnings = Vec::new();
    let mut evals = 0usize;

    let (v, e, ne) = gk15(&g, 0.0, 1.0);
    evals += ne;
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        lo: 0.0,
        hi: 1.0,
        value: v,
        err: e,
    });
    let mut total_err = e;
    while total_err > tol && heap.len() < MAX_INTERVALS {
        let worst = heap.pop().expect("heap nonempty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid - worst.lo < 1e-15 * mid.abs().max(1.0) {
            // interval exhausted at machine width and still noisy
            if worst.err > tol.max(1e-10) * 1e3 {
                return Err(Error::NonIntegrable(format!(
                    "quadrature stalled near u = {:.3e} with local error {:.3e}",
                    worst.lo, worst.err
                )));
            }
            heap.push(worst);
            break;
        }
        if !worst.value.re.is_finite() || !worst.value.im.is_finite() {
            return Err(Error::NonIntegrable(format!(
                "integrand non-finite near u in [{:.6}, {:.6}]",
                worst.lo, worst.hi
            )));
        }
        let (v1, e1, n1) = gk15(&g, worst.lo, mid);
        let (v2, e2, n2) = gk15(&g, mid, worst.hi);
        evals += n1 + n2;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel {
            lo: worst.lo,
            hi: mid,
            value: v1,
            err: e1,
        });
        heap.push(Panel {
            lo: mid,
            hi: worst.hi,
            value: v2,
            err: e2,
        });
    }
    if total_err > tol {
        warnings.push(format!(
            "quadrature tolerance not met: error estimate {:.3e} > {:.3e}",
            total_err, tol
        ));
    }
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|p, q| p.lo.total_cmp(&q.lo));
    let mut value = C64::new(0.0, 0.0);
    for p in &panels {
        value += p.value;
    }
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::NonIntegrable("integral evaluated non-finite".into()));
    }
    Ok(QuadResult {
        value,
        abs_error: total_err,
        evaluations: evals,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn polynomial_is_exact() {
        let r = integrate_line(|t| t * t * (c(1.0) + t) * (c(1.0) + t), c(0.0), c(1.0), 1e-12)
            .unwrap();
        // int_0^1 t^2 (1+t)^2 = 1/3 + 2/4 + 1/5
        let expect = 1.0 / 3.0 + 0.5 + 0.2;
        assert!((r.value - c(expect)).norm() < 1e-12);
    }

    #[test]
    fn empty_interval_is_zero() {
        let r = integrate_line(|t| t.exp(), c(0.7), c(0.7), 1e-10).unwrap();
        assert_eq!(r.value, c(0.0));
    }

    #[test]
    fn complex_contour_straight_line() {
        // int_0^i t dt = -1/2 along the straight segment
        let r = integrate_line(|t| t, c(0.0), C64::new(0.0, 1.0), 1e-12).unwrap();
        assert!((r.value - c(-0.5)).norm() < 1e-12);
    }

    #[test]
    fn mild_algebraic_singularity() {
        // int_0^1 t^(-0.4) dt = 1/0.6; integrable endpoint singularity
        let r = integrate_line(|t| t.powc(c(-0.4)), c(1e-12), c(1.0), 1e-8).unwrap();
        assert!((r.value - c(1.0 / 0.6)).norm() < 1e-4);
    }

    #[test]
    fn oscillatory_integrand() {
        // int_0^{2pi} e^{i t} dt = 0
        let r = integrate_line(
            |t| (C64::new(0.0, 1.0) * t).exp(),
            c(0.0),
            c(2.0 * std::f64::consts::PI),
            1e-10,
        )
        .unwrap();
        assert!(r.value.norm() < 1e-10);
    }
}
