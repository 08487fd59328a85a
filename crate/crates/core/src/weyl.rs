//! Exact symbolic Weyl algebra in 2n variables.
//!
//! Operators are stored in normal order (every multiplication variable to
//! the left of every derivative) with [`ParamPoly`] coefficients, so two
//! operators are equal iff their term maps are equal. The module also builds
//! the named generators of the incomplete system and the auxiliary operators
//! used to prove the parameter-shift relations, and checks the displayed
//! operator decompositions exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::parampoly::ParamPoly;
use crate::series::TruncatedSeries;
use crate::system::SystemParams;

/// Monomial key: x-exponents then d-exponents, each row-major 2×n.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeylKey {
    pub x: Vec<u8>,
    pub d: Vec<u8>,
}

/// Normally ordered element of the Weyl algebra in 2n variables with
/// polynomial parameter coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylOperator {
    n: usize,
    terms: BTreeMap<WeylKey, ParamPoly>,
}

impl WeylOperator {
    pub fn zero(n: usize) -> Self {
        WeylOperator {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_param(ParamPoly::one(n + 1), n)
    }

    pub fn from_param(p: ParamPoly, n: usize) -> Self {
        assert_eq!(p.nvars(), n + 1, "parameter symbol space mismatch");
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(
                WeylKey {
                    x: vec![0; 2 * n],
                    d: vec![0; 2 * n],
                },
                p,
            );
        }
        WeylOperator { n, terms }
    }

    pub fn from_int(v: i64, n: usize) -> Self {
        Self::from_param(ParamPoly::from_int(v, n + 1), n)
    }

    /// The variable x_{ij} as an operator.
    pub fn x_var(row: usize, col: usize, n: usize) -> Self {
        assert!(row < 2 && col < n);
        let mut x = vec![0u8; 2 * n];
        x[row * n + col] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(WeylKey { x, d: vec![0; 2 * n] }, ParamPoly::one(n + 1));
        WeylOperator { n, terms }
    }

    /// The derivative d_{ij} as an operator.
    pub fn d_var(row: usize, col: usize, n: usize) -> Self {
        assert!(row < 2 && col < n);
        let mut d = vec![0u8; 2 * n];
        d[row * n + col] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(WeylKey { x: vec![0; 2 * n], d }, ParamPoly::one(n + 1));
        WeylOperator { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylKey, &ParamPoly)> {
        self.terms.iter()
    }

    fn insert(&mut self, key: WeylKey, coeff: ParamPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c.neg()))
            .collect();
        WeylOperator { n: self.n, terms }
    }

    pub fn scale(&self, p: &ParamPoly) -> Self {
        let mut out = WeylOperator::zero(self.n);
        for (k, c) in &self.terms {
            out.insert(k.clone(), c.mul(p));
        }
        out
    }

    /// Normally ordered product.
    ///
    /// Uses the per-variable reordering identity
    /// d^p x^q = sum_k C(p,k) C(q,k) k! x^(q-k) d^(p-k)
    /// and the fact that distinct variables commute.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let m = 2 * self.n;
        let mut out = WeylOperator::zero(self.n);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                // reorder d^(ka.d) x^(kb.x)
                let kmax: Vec<u8> = (0..m).map(|i| ka.d[i].min(kb.x[i])).collect();
                let mut k = vec![0u8; m];
                loop {
                    let mut factor = BigRational::one();
                    for i in 0..m {
                        factor *= comm_factor(ka.d[i], kb.x[i], k[i]);
                    }
                    let mut x = vec![0u8; m];
                    let mut d = vec![0u8; m];
                    for i in 0..m {
                        x[i] = ka.x[i] + kb.x[i] - k[i];
                        d[i] = ka.d[i] + kb.d[i] - k[i];
                    }
                    let coeff = ca
                        .mul(cb)
                        .mul(&ParamPoly::constant(factor, self.n + 1));
                    out.insert(WeylKey { x, d }, coeff);
                    // odometer over 0..=kmax
                    let mut pos = 0;
                    loop {
                        if pos == m {
                            break;
                        }
                        if k[pos] < kmax[pos] {
                            k[pos] += 1;
                            break;
                        }
                        k[pos] = 0;
                        pos += 1;
                    }
                    if pos == m {
                        break;
                    }
                }
            }
        }
        out
    }

    /// Total operator degree (x-degree plus d-degree of the largest term).
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|k| {
                k.x.iter().map(|v| *v as usize).sum::<usize>()
                    + k.d.iter().map(|v| *v as usize).sum::<usize>()
            })
            .max()
            .unwrap_or(0)
    }

    /// True when no term involves a multiplication variable.
    pub fn is_x_free(&self) -> bool {
        self.terms.keys().all(|k| k.x.iter().all(|v| *v == 0))
    }

    /// Apply to a truncated series after substituting numeric parameters.
    ///
    /// Parameter symbols evaluate at (alpha_1..alpha_n, delta) taken from
    /// `params`. Each normal-form monomial acts as: derivatives first, then
    /// variable multiplications, then the numeric coefficient.
    pub fn apply_to_series(&self, series: &TruncatedSeries, params: &SystemParams) -> TruncatedSeries {
        assert_eq!(series.n(), self.n, "series grid mismatch");
        let point = params.param_point();
        let mut acc = TruncatedSeries::new(self.n, series.base().to_vec(), series.order());
        let mut first = true;
        for (key, poly) in &self.terms {
            let c = poly.eval(&point);
            let mut part = series.clone();
            for row in 0..2 {
                for col in 0..self.n {
                    for _ in 0..key.d[row * self.n + col] {
                        part = part.apply_partial(row, col);
                    }
                }
            }
            for row in 0..2 {
                for col in 0..self.n {
                    for _ in 0..key.x[row * self.n + col] {
                        part = part.mul_x(row, col);
                    }
                }
            }
            let part = part.scale(c);
            if first {
                acc = part;
                first = false;
            } else {
                // reliable order: min is taken inside add
                acc = acc.add(&part).expect("same base by construction");
            }
        }
        acc
    }

    /// Substitute numeric parameters into every coefficient.
    pub fn eval_coeffs(&self, params: &SystemParams) -> Vec<(WeylKey, Complex64)> {
        let point = params.param_point();
        self.terms
            .iter()
            .map(|(k, p)| (k.clone(), p.eval(&point)))
            .collect()
    }
}

fn comm_factor(p: u8, q: u8, k: u8) -> BigRational {
    // C(p,k) * C(q,k) * k!  ==  (p falling k)(q falling k) / k!
    let mut acc = BigRational::one();
    for j in 0..k {
        let num = BigInt::from((p - j) as i64 * (q - j) as i64);
        acc *= BigRational::new(num, BigInt::from((j + 1) as i64));
    }
    acc
}

impl fmt::Debug for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for row in 0..2 {
                for col in 0..self.n {
                    let e = k.x[row * self.n + col];
                    if e > 0 {
                        write!(f, " x{}{}^{}", row + 1, col + 1, e)?;
                    }
                }
            }
            for row in 0..2 {
                for col in 0..self.n {
                    let e = k.d[row * self.n + col];
                    if e > 0 {
                        write!(f, " d{}{}^{}", row + 1, col + 1, e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Euler operator theta_{ij} = x_{ij} d_{ij} (0-based row, col).
pub fn euler_op(row: usize, col: usize, n: usize) -> WeylOperator {
    WeylOperator::x_var(row, col, n).mul(&WeylOperator::d_var(row, col, n))
}

/// z_i = theta_{1i} + theta_{2i} - alpha_i (0-based column i).
pub fn z_op(i: usize, n: usize) -> WeylOperator {
    euler_op(0, i, n)
        .add(&euler_op(1, i, n))
        .sub(&WeylOperator::from_param(ParamPoly::alpha(i, n), n))
}

/// z = sum_i theta_{2i} - delta.
pub fn z_sum_op(n: usize) -> WeylOperator {
    let mut acc = WeylOperator::from_param(ParamPoly::delta(n), n).neg();
    for i in 0..n {
        acc = acc.add(&euler_op(1, i, n));
    }
    acc
}

/// Toric generator d_{1i} d_{2j} - d_{1j} d_{2i}; antisymmetric in (i, j).
pub fn box_op(i: usize, j: usize, n: usize) -> WeylOperator {
    assert!(i != j, "box operator needs distinct columns");
    WeylOperator::d_var(0, i, n)
        .mul(&WeylOperator::d_var(1, j, n))
        .sub(&WeylOperator::d_var(0, j, n).mul(&WeylOperator::d_var(1, i, n)))
}

/// Which upper bound the scalar sum in the up-shift operator for column k
/// uses: the proof display sums alpha over 1..n, the theorem statement over
/// 1..n+1 (reading the extra index as delta). The machine check below picks
/// the variant that makes the displayed reduction an exact identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum L1Variant {
    /// sum_{i=1}^{n} alpha_i  (validated; the default everywhere)
    ProofDisplay,
    /// sum_{i=1}^{n+1} with alpha_{n+1} read as delta (fails the check)
    TheoremStatement,
}

/// Sign and range conventions for the second auxiliary operator. The printed
/// display fails the exact reduction check; the corrected variant flips the
/// sign of the trailing alpha_k z term and restricts the z-sum to i != k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum L2Variant {
    /// validated variant (default)
    Corrected,
    /// literal printed display (fails the check; kept as a negative control)
    PaperDisplay,
}

/// Up-shift operator for the first-row column k:
/// sum_{i != k} (x_{1i} x_{2k} - x_{1k} x_{2i}) d_{2i} + (sum alpha) x_{1k}.
pub fn shift_up_1k(k: usize, n: usize, variant: L1Variant) -> WeylOperator {
    assert!(k < n);
    let mut acc = WeylOperator::zero(n);
    for i in 0..n {
        if i == k {
            continue;
        }
        let coeff = WeylOperator::x_var(0, i, n)
            .mul(&WeylOperator::x_var(1, k, n))
            .sub(&WeylOperator::x_var(0, k, n).mul(&WeylOperator::x_var(1, i, n)));
        acc = acc.add(&coeff.mul(&WeylOperator::d_var(1, i, n)));
    }
    let mut scalar = ParamPoly::zero(n + 1);
    for i in 0..n {
        scalar = scalar.add(&ParamPoly::alpha(i, n));
    }
    if variant == L1Variant::TheoremStatement {
        scalar = scalar.add(&ParamPoly::delta(n));
    }
    acc.add(&WeylOperator::from_param(scalar, n).mul(&WeylOperator::x_var(0, k, n)))
}

/// Up-shift operator for the second-row column k:
/// sum_{i != k} x_{1k} x_{2i} d_{1i} + (sum_{i != k} theta_{2i} + alpha_k) x_{2k}.
pub fn shift_up_2k(k: usize, n: usize) -> WeylOperator {
    assert!(k < n);
    let mut acc = WeylOperator::zero(n);
    for i in 0..n {
        if i == k {
            continue;
        }
        acc = acc.add(
            &WeylOperator::x_var(0, k, n)
                .mul(&WeylOperator::x_var(1, i, n))
                .mul(&WeylOperator::d_var(0, i, n)),
        );
    }
    let mut theta_sum = WeylOperator::from_param(ParamPoly::alpha(k, n), n);
    for i in 0..n {
        if i == k {
            continue;
        }
        theta_sum = theta_sum.add(&euler_op(1, i, n));
    }
    acc.add(&theta_sum.mul(&WeylOperator::x_var(1, k, n)))
}

/// The auxiliary operator whose vanishing on the integral representation
/// proves the first up-shift relation:
/// L1 = S(+a_{1k}) d_{1k} - alpha_k (sum alpha - delta) + alpha_k z.
pub fn build_l1(k: usize, n: usize, variant: L1Variant) -> WeylOperator {
    assert!(k < n);
    let s = shift_up_1k(k, n, variant);
    let mut sum_alpha = ParamPoly::zero(n + 1);
    for i in 0..n {
        sum_alpha = sum_alpha.add(&ParamPoly::alpha(i, n));
    }
    let ak = ParamPoly::alpha(k, n);
    let scalar = ak.mul(&sum_alpha.sub(&ParamPoly::delta(n)));
    s.mul(&WeylOperator::d_var(0, k, n))
        .sub(&WeylOperator::from_param(scalar, n))
        .add(&z_sum_op(n).scale(&ak))
}

/// The auxiliary operator for the second up-shift relation. The corrected
/// variant is L2 = S(+a_{2k}) d_{2k} - alpha_k delta - alpha_k z; the
/// printed display has + alpha_k z instead and does not vanish on solutions.
pub fn build_l2(k: usize, n: usize, variant: L2Variant) -> WeylOperator {
    assert!(k < n);
    let s = shift_up_2k(k, n);
    let ak = ParamPoly::alpha(k, n);
    let scalar = ak.mul(&ParamPoly::delta(n));
    let base = s
        .mul(&WeylOperator::d_var(1, k, n))
        .sub(&WeylOperator::from_param(scalar, n));
    match variant {
        L2Variant::Corrected => base.sub(&z_sum_op(n).scale(&ak)),
        L2Variant::PaperDisplay => base.add(&z_sum_op(n).scale(&ak)),
    }
}

/// The displayed reduction of L1 into toric and homogeneity generators:
/// sum_{i != k} x_{1i} x_{2k} (d_{2i} d_{1k} - d_{2k} d_{1i})
///   - sum_i (theta_{2i} - alpha_i) z_k + sum_i theta_{2k} z_i.
pub fn l1_combination(k: usize, n: usize) -> Vec<(WeylOperator, WeylOperator)> {
    let mut combo = Vec::new();
    for i in 0..n {
        if i == k {
            continue;
        }
        let coeff = WeylOperator::x_var(0, i, n).mul(&WeylOperator::x_var(1, k, n));
        // d_{2i} d_{1k} - d_{2k} d_{1i} = box(k, i)
        combo.push((coeff, box_op(k, i, n)));
    }
    for i in 0..n {
        let coeff = euler_op(1, i, n)
            .sub(&WeylOperator::from_param(ParamPoly::alpha(i, n), n))
            .neg();
        combo.push((coeff, z_op(k, n)));
    }
    for i in 0..n {
        combo.push((euler_op(1, k, n), z_op(i, n)));
    }
    combo
}

/// The reduction of the corrected L2:
/// sum_{i != k} x_{1k} x_{2i} (d_{1i} d_{2k} - d_{2i} d_{1k}) + sum_{i != k} theta_{2i} z_k.
///
/// With `paper_range` the z-part sums over all i (the printed range), which
/// breaks exactness; it is kept for the negative control.
pub fn l2_combination(k: usize, n: usize, paper_range: bool) -> Vec<(WeylOperator, WeylOperator)> {
    let mut combo = Vec::new();
    for i in 0..n {
        if i == k {
            continue;
        }
        let coeff = WeylOperator::x_var(0, k, n).mul(&WeylOperator::x_var(1, i, n));
        combo.push((coeff, box_op(i, k, n)));
    }
    for i in 0..n {
        if !paper_range && i == k {
            continue;
        }
        combo.push((euler_op(1, i, n), z_op(k, n)));
    }
    combo
}

/// True iff L equals the given combination sum_j coeff_j * generator_j,
/// decided by exact normal-form comparison.
pub fn verify_decomposition(
    l: &WeylOperator,
    combination: &[(WeylOperator, WeylOperator)],
) -> bool {
    let mut acc = WeylOperator::zero(l.n());
    for (coeff, gen) in combination {
        acc = acc.add(&coeff.mul(gen));
    }
    l.sub(&acc).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_commutation_relation() {
        let n = 1;
        let p = WeylOperator::d_var(0, 0, n).mul(&WeylOperator::x_var(0, 0, n));
        // d x = x d + 1
        let expect = WeylOperator::x_var(0, 0, n)
            .mul(&WeylOperator::d_var(0, 0, n))
            .add(&WeylOperator::one(n));
        assert_eq!(p, expect);
    }

    #[test]
    fn euler_squared() {
        let n = 1;
        let th = euler_op(0, 0, n);
        let sq = th.mul(&th);
        // theta^2 = x^2 d^2 + x d
        let x = WeylOperator::x_var(0, 0, n);
        let d = WeylOperator::d_var(0, 0, n);
        let expect = x.mul(&x).mul(&d).mul(&d).add(&x.mul(&d));
        assert_eq!(sq, expect);
    }

    #[test]
    fn distinct_variables_commute() {
        let n = 1;
        let a = WeylOperator::x_var(0, 0, n);
        let b = WeylOperator::x_var(1, 0, n);
        assert_eq!(a.mul(&b), b.mul(&a));
        let da = WeylOperator::d_var(0, 0, n);
        let xb = WeylOperator::x_var(1, 0, n);
        assert_eq!(da.mul(&xb), xb.mul(&da));
    }

    #[test]
    fn generator_transcriptions() {
        // z_1 at n=1: x11 d11 + x21 d21 - a1
        let z = z_op(0, 1);
        let expect = euler_op(0, 0, 1)
            .add(&euler_op(1, 0, 1))
            .sub(&WeylOperator::from_param(ParamPoly::alpha(0, 1), 1));
        assert_eq!(z, expect);

        // box(1,2) = d11 d22 - d12 d21
        let b = box_op(0, 1, 2);
        let expect = WeylOperator::d_var(0, 0, 2)
            .mul(&WeylOperator::d_var(1, 1, 2))
            .sub(&WeylOperator::d_var(0, 1, 2).mul(&WeylOperator::d_var(1, 0, 2)));
        assert_eq!(b, expect);

        // z sum at n=2: x21 d21 + x22 d22 - delta
        let zs = z_sum_op(2);
        let expect = euler_op(1, 0, 2)
            .add(&euler_op(1, 1, 2))
            .sub(&WeylOperator::from_param(ParamPoly::delta(2), 2));
        assert_eq!(zs, expect);
    }

    #[test]
    fn multiplication_is_associative() {
        // deterministic pseudo-random small operators, exact check
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 2;
        let gens: Vec<WeylOperator> = vec![
            WeylOperator::x_var(0, 0, n),
            WeylOperator::x_var(1, 1, n),
            WeylOperator::d_var(0, 1, n),
            WeylOperator::d_var(1, 0, n),
            WeylOperator::from_param(ParamPoly::alpha(0, n), n),
            WeylOperator::one(n),
        ];
        let mut random_op = |rng: &mut ChaCha8Rng| {
            let mut acc = WeylOperator::zero(n);
            for _ in 0..3 {
                let mut t = gens[rng.gen_range(0..gens.len())].clone();
                if rng.gen_bool(0.5) {
                    t = t.mul(&gens[rng.gen_range(0..gens.len())]);
                }
                if rng.gen_bool(0.5) {
                    t = t.neg();
                }
                acc = acc.add(&t);
            }
            acc
        };
        for _ in 0..20 {
            let a = random_op(&mut rng);
            let b = random_op(&mut rng);
            let c = random_op(&mut rng);
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }

    #[test]
    fn box_commutes_with_x_free_operators() {
        let n = 3;
        let b = box_op(0, 2, n);
        let dfree = [
            WeylOperator::d_var(0, 1, n),
            WeylOperator::d_var(1, 2, n).mul(&WeylOperator::d_var(0, 0, n)),
            WeylOperator::from_param(ParamPoly::delta(n), n),
        ];
        for g in &dfree {
            assert!(g.is_x_free());
            assert!(b.mul(g).sub(&g.mul(&b)).is_zero());
        }
        // sanity: theta is not x-free and does not commute with box
        let th = euler_op(0, 0, n);
        assert!(!th.is_x_free());
        assert!(!b.mul(&th).sub(&th.mul(&b)).is_zero());
    }

    #[test]
    fn l1_structure_examples() {
        // n=1, k=1: L1 = a1 x11 d11 + a1 x21 d21 - a1^2
        let l1 = build_l1(0, 1, L1Variant::ProofDisplay);
        let a1 = ParamPoly::alpha(0, 1);
        let expect = euler_op(0, 0, 1)
            .scale(&a1)
            .add(&euler_op(1, 0, 1).scale(&a1))
            .sub(&WeylOperator::from_param(a1.mul(&a1), 1));
        assert_eq!(l1, expect);

        // n=2, k=1: some term with x12 x21 d22 d11 must appear
        let l1 = build_l1(0, 2, L1Variant::ProofDisplay);
        let has = l1.terms().any(|(k, _)| {
            k.x == vec![0, 1, 1, 0] && k.d == vec![1, 0, 0, 1]
        });
        assert!(has, "missing x12 x21 d22 d11 term: {:?}", l1);

        // n=2, k=2: L2 contains x12 x21 d11 d22
        let l2 = build_l2(1, 2, L2Variant::Corrected);
        let has = l2.terms().any(|(k, _)| {
            k.x == vec![0, 1, 1, 0] && k.d == vec![1, 0, 0, 1]
        });
        assert!(has, "missing x12 x21 d11 d22 term: {:?}", l2);
    }

    #[test]
    fn verify_decomposition_basics() {
        let n = 2;
        let z1 = z_op(0, n);
        assert!(verify_decomposition(
            &z1,
            &[(WeylOperator::one(n), z1.clone())]
        ));
        let not_z1 = z1.add(&WeylOperator::one(n));
        assert!(!verify_decomposition(
            &not_z1,
            &[(WeylOperator::one(n), z1)]
        ));
    }

    #[test]
    fn l1_reduction_is_exact_for_all_small_n() {
        for n in 1..=4 {
            for k in 0..n {
                let l1 = build_l1(k, n, L1Variant::ProofDisplay);
                assert!(
                    verify_decomposition(&l1, &l1_combination(k, n)),
                    "n={} k={}",
                    n,
                    k
                );
                // the n+1 upper bound breaks the identity
                let l1_alt = build_l1(k, n, L1Variant::TheoremStatement);
                assert!(
                    !verify_decomposition(&l1_alt, &l1_combination(k, n)),
                    "variant check n={} k={}",
                    n,
                    k
                );
            }
        }
    }

    #[test]
    fn l2_reduction_is_exact_for_all_small_n() {
        for n in 1..=4 {
            for k in 0..n {
                let l2 = build_l2(k, n, L2Variant::Corrected);
                assert!(
                    verify_decomposition(&l2, &l2_combination(k, n, false)),
                    "n={} k={}",
                    n,
                    k
                );
                // printed sign fails
                let l2_paper = build_l2(k, n, L2Variant::PaperDisplay);
                assert!(
                    !verify_decomposition(&l2_paper, &l2_combination(k, n, false)),
                    "paper sign n={} k={}",
                    n,
                    k
                );
                // printed z-sum range fails too (except where it coincides)
                if n > 1 {
                    assert!(
                        !verify_decomposition(&l2, &l2_combination(k, n, true)),
                        "paper range n={} k={}",
                        n,
                        k
                    );
                }
            }
        }
    }
}
