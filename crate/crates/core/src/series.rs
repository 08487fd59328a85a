//! Multi-index bookkeeping and truncated multivariate power series.
//!
//! Series live on a 2×n grid of variables `x_{ij}` (row i in {0,1}, column
//! j in {0..n-1}). A [`TruncatedSeries`] is a finite sum of terms
//! `c * x^(s + k)` where `s` is a fixed complex 2×n base exponent and `k`
//! runs over integer 2×n offsets. Euler operators `x_{ij} d_{ij}` act
//! diagonally; partial derivatives shift offsets and multiply by the
//! exponent. Every term remembers the construction grade it was produced at
//! so residual checks can restrict themselves to the reliable range.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::{Error, Result};

pub type C64 = Complex64;

/// Coefficients below this magnitude are dropped by the series normal form.
pub const COEFF_FLOOR: f64 = 1e-300;

/// An n-tuple of nonnegative integers indexing series terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// Unit multi-index e_i.
    pub fn unit(i: usize, n: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |m| = m_1 + ... + m_n.
    pub fn norm(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn plus_unit(&self, i: usize) -> Self {
        let mut e = self.0.clone();
        e[i] += 1;
        MultiIndex(e)
    }
}

/// Enumerate all multi-indices of length `n` with norm exactly `shell`, in
/// lexicographic order. Used for graded-lex series summation.
pub fn shell_indices(n: usize, shell: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fill_shell(&mut cur, 0, shell, &mut out);
    out
}

fn fill_shell(cur: &mut Vec<usize>, pos: usize, remaining: usize, out: &mut Vec<MultiIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for v in (0..=remaining).rev() {
        cur[pos] = v;
        fill_shell(cur, pos + 1, remaining - v, out);
    }
}

/// A 2×n integer exponent offset, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentOffset {
    n: usize,
    e: Vec<i64>,
}

impl ExponentOffset {
    pub fn zero(n: usize) -> Self {
        ExponentOffset { n, e: vec![0; 2 * n] }
    }

    /// The matrix unit e_{ij}: 1 in row `row`, column `col`, 0 elsewhere.
    pub fn unit(row: usize, col: usize, n: usize) -> Self {
        assert!(row < 2 && col < n, "offset index out of range");
        let mut e = vec![0; 2 * n];
        e[row * n + col] = 1;
        ExponentOffset { n, e }
    }

    pub fn from_entries(n: usize, e: Vec<i64>) -> Self {
        assert_eq!(e.len(), 2 * n);
        ExponentOffset { n, e }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.e[row * self.n + col]
    }

    pub fn entries(&self) -> &[i64] {
        &self.e
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect();
        ExponentOffset { n: self.n, e }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a - b).collect();
        ExponentOffset { n: self.n, e }
    }

    pub fn neg(&self) -> Self {
        ExponentOffset {
            n: self.n,
            e: self.e.iter().map(|a| -a).collect(),
        }
    }

    pub fn scaled(&self, m: i64) -> Self {
        ExponentOffset {
            n: self.n,
            e: self.e.iter().map(|a| a * m).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|a| *a == 0)
    }

    pub fn l1_norm(&self) -> usize {
        self.e.iter().map(|a| a.unsigned_abs() as usize).sum()
    }

    /// Permute columns: entry (i, j) of the result is entry (i, perm[j]).
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut e = vec![0; 2 * self.n];
        for row in 0..2 {
            for j in 0..self.n {
                e[row * self.n + j] = self.e[row * self.n + perm[j]];
            }
        }
        ExponentOffset { n: self.n, e }
    }
}

/// Rising factorial z (z+1) ... (z+m-1); 1 for m = 0.
pub fn pochhammer(z: C64, m: usize) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for j in 0..m {
        acc *= z + j as f64;
    }
    acc
}

/// Product of componentwise Pochhammer symbols (alpha)_m.
pub fn pochhammer_multi(alpha: &[C64], m: &MultiIndex) -> Result<C64> {
    if alpha.len() != m.len() {
        return Err(Error::DimensionMismatch(format!(
            "pochhammer_multi: {} parameters vs {} indices",
            alpha.len(),
            m.len()
        )));
    }
    let mut acc = C64::new(1.0, 0.0);
    for (a, mi) in alpha.iter().zip(m.entries()) {
        acc *= pochhammer(*a, *mi);
    }
    Ok(acc)
}

/// Gamma(s+1) / Gamma(s+k+1) computed without evaluating Gamma.
///
/// For k >= 0 this is 1/(s+1)_k and a zero factor is a pole (resonant
/// parameter). For k < 0 it is the falling factorial s (s-1) ... (s+k+1),
/// which is allowed to vanish.
pub fn gamma_ratio(s: C64, k: i64) -> Result<C64> {
    if k >= 0 {
        let denom = pochhammer(s + 1.0, k as usize);
        if denom.norm() == 0.0 {
            return Err(Error::ResonantPole(format!(
                "gamma_ratio: (s+1)_k vanishes for s = {}, k = {}",
                s, k
            )));
        }
        Ok(denom.finv())
    } else {
        let mut acc = C64::new(1.0, 0.0);
        for j in 0..(-k) {
            acc *= s - j as f64;
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug)]
struct Term {
    coeff: C64,
    grade: usize,
}

/// Truncated multivariate power series with complex base exponent.
///
/// Terms are kept in a sorted map for deterministic iteration; coefficients
/// with magnitude below [`COEFF_FLOOR`] are dropped (normal form). `order` is
/// the construction grade bound K; `reliable_order` starts at K and drops by
/// one per derivative application.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    n: usize,
    base: Vec<C64>,
    order: usize,
    reliable_order: i64,
    terms: BTreeMap<ExponentOffset, Term>,
}

impl TruncatedSeries {
    /// Empty series over a 2×n variable grid with the given base exponent
    /// (row-major, length 2n) and truncation order.
    pub fn new(n: usize, base: Vec<C64>, order: usize) -> Self {
        assert_eq!(base.len(), 2 * n, "base exponent must be 2 x n");
        assert!(
            base.iter().all(|c| c.re.is_finite() && c.im.is_finite()),
            "non-finite base exponent"
        );
        TruncatedSeries {
            n,
            base,
            order,
            reliable_order: order as i64,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &[C64] {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn reliable_order(&self) -> i64 {
        self.reliable_order
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `coeff` at `offset` with construction grade `grade`.
    ///
    /// NaN coefficients are rejected; values under the normal-form floor are
    /// dropped, as are cancellations that land exactly on zero.
    pub fn insert(&mut self, offset: ExponentOffset, coeff: C64, grade: usize) {
        assert_eq!(offset.n(), self.n, "offset dimension");
        assert!(
            coeff.re.is_finite() && coeff.im.is_finite(),
            "non-finite series coefficient"
        );
        let entry = self.terms.entry(offset);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                if coeff.norm() >= COEFF_FLOOR {
                    v.insert(Term { coeff, grade });
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let t = o.get_mut();
                t.coeff += coeff;
                t.grade = t.grade.max(grade);
                if t.coeff.norm() < COEFF_FLOOR {
                    o.remove();
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentOffset, C64, usize)> {
        self.terms.iter().map(|(k, t)| (k, t.coeff, t.grade))
    }

    pub fn coeff(&self, offset: &ExponentOffset) -> C64 {
        self.terms
            .get(offset)
            .map(|t| t.coeff)
            .unwrap_or_else(|| C64::new(0.0, 0.0))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|t| t.coeff.norm())
            .fold(0.0, f64::max)
    }

    /// Euler operator x_{ij} d_{ij}: multiply each term by its (i,j) exponent.
    pub fn apply_euler(&self, row: usize, col: usize) -> Self {
        let idx = row * self.n + col;
        let mut out = self.shell_like(self.reliable_order);
        for (k, t) in &self.terms {
            let factor = self.base[idx] + k.entries()[idx] as f64;
            out.insert(k.clone(), t.coeff * factor, t.grade);
        }
        out
    }

    /// Partial derivative d_{ij}: term x^(s+k) maps to (s+k)_{ij} x^(s+k-e_{ij}).
    ///
    /// The result is reliable only to one order less than the input.
    pub fn apply_partial(&self, row: usize, col: usize) -> Self {
        let idx = row * self.n + col;
        let e = ExponentOffset::unit(row, col, self.n);
        let mut out = self.shell_like(self.reliable_order - 1);
        for (k, t) in &self.terms {
            let factor = self.base[idx] + k.entries()[idx] as f64;
            out.insert(k.sub(&e), t.coeff * factor, t.grade);
        }
        out
    }

    /// Multiply by the variable x_{ij} (offset shift by +e_{ij}).
    pub fn mul_x(&self, row: usize, col: usize) -> Self {
        let e = ExponentOffset::unit(row, col, self.n);
        let mut out = self.shell_like(self.reliable_order);
        for (k, t) in &self.terms {
            out.insert(k.add(&e), t.coeff, t.grade);
        }
        out
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = self.shell_like(self.reliable_order);
        for (k, t) in &self.terms {
            out.insert(k.clone(), t.coeff * c, t.grade);
        }
        out
    }

    /// Termwise sum; bases must agree exactly.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.base != other.base {
            return Err(Error::DimensionMismatch(
                "series addition requires identical base exponents".into(),
            ));
        }
        let mut out = self.shell_like(self.reliable_order.min(other.reliable_order));
        out.order = self.order.max(other.order);
        out.terms = self.terms.clone();
        for (k, t) in &other.terms {
            out.insert(k.clone(), t.coeff, t.grade);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    fn shell_like(&self, reliable: i64) -> Self {
        TruncatedSeries {
            n: self.n,
            base: self.base.clone(),
            order: self.order,
            reliable_order: reliable,
            terms: BTreeMap::new(),
        }
    }

    /// Permute columns of both the base exponent and every offset:
    /// column j of the result is column perm[j] of the input.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut base = vec![C64::new(0.0, 0.0); 2 * self.n];
        for row in 0..2 {
            for j in 0..self.n {
                base[row * self.n + j] = self.base[row * self.n + perm[j]];
            }
        }
        let mut out = TruncatedSeries {
            n: self.n,
            base,
            order: self.order,
            reliable_order: self.reliable_order,
            terms: BTreeMap::new(),
        };
        for (k, t) in &self.terms {
            out.insert(k.permute_columns(perm), t.coeff, t.grade);
        }
        out
    }

    /// Evaluate at a 2×n point (row-major) with principal-branch powers.
    ///
    /// Summation runs in sorted offset order for reproducibility. Zero
    /// entries are only permitted where the full exponent is exactly zero or
    /// has positive real part.
    pub fn evaluate(&self, x: &[C64]) -> Result<C64> {
        if x.len() != 2 * self.n {
            return Err(Error::DimensionMismatch(format!(
                "evaluate: point has {} entries, expected {}",
                x.len(),
                2 * self.n
            )));
        }
        let all_nonzero = x.iter().all(|v| v.norm() > 0.0);
        if all_nonzero {
            let logs: Vec<C64> = x.iter().map(|v| v.ln()).collect();
            let mut acc = C64::new(0.0, 0.0);
            for (k, t) in &self.terms {
                let mut expo = C64::new(0.0, 0.0);
                for (idx, log) in logs.iter().enumerate() {
                    let p = self.base[idx] + k.entries()[idx] as f64;
                    expo += p * log;
                }
                acc += t.coeff * expo.exp();
            }
            return Ok(acc);
        }
        // Safe path in the presence of zero entries.
        let mut acc = C64::new(0.0, 0.0);
        'terms: for (k, t) in &self.terms {
            let mut prod = t.coeff;
            for (idx, v) in x.iter().enumerate() {
                let p = self.base[idx] + k.entries()[idx] as f64;
                if v.norm() == 0.0 {
                    if p.norm() == 0.0 {
                        continue; // 0^0 = 1 by the empty-product convention
                    }
                    if p.re > 0.0 {
                        continue 'terms; // term vanishes
                    }
                    return Err(Error::ZeroBase(format!(
                        "x entry {} is zero with exponent {}",
                        idx, p
                    )));
                }
                prod *= v.powc(p);
            }
            acc += prod;
        }
        Ok(acc)
    }
}
