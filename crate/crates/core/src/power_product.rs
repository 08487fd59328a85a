//! Closed-form calculus on power products of the integrand shape.
//!
//! A term is `c * t^(gamma+1+e0) * x^mono * prod_k (x_{1k} + x_{2k} t)^(alpha_k + d_k)`
//! with `c` an exact parameter polynomial, `e0`, `mono`, `d` integers. The
//! family is closed under every operator of the system (Euler operators,
//! partial derivatives, variable and t multiplication), which makes the
//! compatibility conditions on the inhomogeneous right-hand side decidable
//! exactly: apply the operator, bring the result to canonical form, and test
//! for the empty term list.
//!
//! Rows are 0-based: row 0 holds the constant part of each linear form,
//! row 1 the t-coefficient.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::parampoly::ParamPoly;
use crate::series::C64;
use crate::system::SystemParams;
use crate::weyl::WeylOperator;

/// One closed-form term. `mono` is a 2×n row-major monomial in the bare
/// variables; `shift[k]` offsets the exponent of the k-th linear form;
/// `t_off` offsets the t-exponent relative to gamma+1.
#[derive(Clone, Debug)]
pub struct PowerProductTerm {
    pub coeff: ParamPoly,
    pub t_off: i64,
    pub mono: Vec<i64>,
    pub shift: Vec<i64>,
}

/// A finite sum of power-product terms over a fixed 2×n grid.
#[derive(Clone, Debug)]
pub struct PowerProductSum {
    n: usize,
    terms: Vec<PowerProductTerm>,
}

/// Canonical key after eliminating row-0 monomial factors:
/// x_{1k}-only monomial, form-exponent shifts, and t-offset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonKey {
    pub t_off: i64,
    pub x2: Vec<i64>,
    pub shift: Vec<i64>,
}

impl PowerProductSum {
    pub fn zero(n: usize) -> Self {
        PowerProductSum { n, terms: Vec::new() }
    }

    /// The boundary-term integrand `t^(gamma+1) prod_k (x_{1k}+x_{2k}t)^(alpha_k)`.
    pub fn g_seed(n: usize) -> Self {
        PowerProductSum {
            n,
            terms: vec![PowerProductTerm {
                coeff: ParamPoly::one(n + 1),
                t_off: 0,
                mono: vec![0; 2 * n],
                shift: vec![0; n],
            }],
        }
    }

    /// The integral-representation integrand `t^gamma prod_k (...)^(alpha_k)`.
    pub fn phi_seed(n: usize) -> Self {
        PowerProductSum {
            n,
            terms: vec![PowerProductTerm {
                coeff: ParamPoly::one(n + 1),
                t_off: -1,
                mono: vec![0; 2 * n],
                shift: vec![0; n],
            }],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[PowerProductTerm] {
        &self.terms
    }

    pub fn push(&mut self, term: PowerProductTerm) {
        assert_eq!(term.mono.len(), 2 * self.n);
        assert_eq!(term.shift.len(), self.n);
        if !term.coeff.is_zero() {
            self.terms.push(term);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out
    }

    pub fn scale(&self, p: &ParamPoly) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| PowerProductTerm {
                coeff: t.coeff.mul(p),
                ..t.clone()
            })
            .filter(|t| !t.coeff.is_zero())
            .collect();
        PowerProductSum { n: self.n, terms }
    }

    /// Multiply by the bare variable x_{row,col}.
    pub fn mul_x(&self, row: usize, col: usize) -> Self {
        let idx = row * self.n + col;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut mono = t.mono.clone();
                mono[idx] += 1;
                PowerProductTerm { mono, ..t.clone() }
            })
            .collect();
        PowerProductSum { n: self.n, terms }
    }

    /// Multiply by t.
    pub fn mul_t(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| PowerProductTerm {
                t_off: t.t_off + 1,
                ..t.clone()
            })
            .collect();
        PowerProductSum { n: self.n, terms }
    }

    /// Partial derivative with respect to x_{row,col}: product rule over the
    /// bare monomial factor and the linear-form factor. Differentiating the
    /// form in row 1 brings down one power of t.
    pub fn partial(&self, row: usize, col: usize) -> Self {
        let idx = row * self.n + col;
        let mut out = PowerProductSum::zero(self.n);
        for t in &self.terms {
            if t.mono[idx] > 0 {
                let mut mono = t.mono.clone();
                mono[idx] -= 1;
                out.push(PowerProductTerm {
                    coeff: t.coeff.scale_int(t.mono[idx]),
                    t_off: t.t_off,
                    mono,
                    shift: t.shift.clone(),
                });
            }
            // (alpha_col + shift) * L_col^(.. - 1), times t if row 1
            let lin = ParamPoly::alpha(col, self.n)
                .add(&ParamPoly::from_int(t.shift[col], self.n + 1));
            let mut shift = t.shift.clone();
            shift[col] -= 1;
            out.push(PowerProductTerm {
                coeff: t.coeff.mul(&lin),
                t_off: t.t_off + row as i64,
                mono: t.mono.clone(),
                shift,
            });
        }
        out
    }

    /// Euler operator x_{row,col} d_{row,col}.
    pub fn theta(&self, row: usize, col: usize) -> Self {
        self.partial(row, col).mul_x(row, col)
    }

    /// Canonical form: eliminate row-0 monomial powers via
    /// `x_{1k} = L_k - x_{2k} t`, then merge like terms and drop zeros.
    /// Equality of sums is equality of canonical maps.
    pub fn canonical(&self) -> BTreeMap<CanonKey, ParamPoly> {
        let n = self.n;
        let mut map: BTreeMap<CanonKey, ParamPoly> = BTreeMap::new();
        for term in &self.terms {
            // expand each row-0 power binomially
            let mut parts: Vec<(BigRational, i64, Vec<i64>, Vec<i64>)> = vec![(
                BigRational::from_integer(BigInt::from(1)),
                term.t_off,
                term.mono[n..2 * n].to_vec(),
                term.shift.clone(),
            )];
            for j in 0..n {
                let p = term.mono[j];
                if p == 0 {
                    continue;
                }
                let mut next = Vec::new();
                for (c, t_off, x2, shift) in &parts {
                    // x_{1j}^p = sum_r C(p,r) L_j^r (-x_{2j} t)^(p-r)
                    let mut binom = BigRational::from_integer(BigInt::from(1));
                    for r in 0..=p {
                        if r > 0 {
                            binom = binom
                                * BigRational::new(
                                    BigInt::from(p - r + 1),
                                    BigInt::from(r),
                                );
                        }
                        let q = p - r;
                        let sign = if q % 2 == 0 { 1 } else { -1 };
                        let mut x2n = x2.clone();
                        x2n[j] += q;
                        let mut shn = shift.clone();
                        shn[j] += r;
                        next.push((
                            c * &binom * BigRational::from_integer(BigInt::from(sign)),
                            t_off + q,
                            x2n,
                            shn,
                        ));
                    }
                }
                parts = next;
            }
            for (c, t_off, x2, shift) in parts {
                let key = CanonKey { t_off, x2, shift };
                let add = term
                    .coeff
                    .mul(&ParamPoly::constant(c, n + 1));
                let entry = map.entry(key);
                match entry {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        if !add.is_zero() {
                            v.insert(add);
                        }
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = o.get().add(&add);
                        if s.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
        }
        map
    }

    /// Exact zero test via canonical form.
    pub fn is_zero_exact(&self) -> bool {
        self.canonical().is_empty()
    }

    /// Number of canonical terms.
    pub fn canonical_len(&self) -> usize {
        self.canonical().len()
    }

    /// Evaluate numerically at a point `(t, x)` with numeric parameters.
    pub fn eval_numeric(&self, t: C64, x: &[C64], params: &SystemParams) -> C64 {
        let n = self.n;
        assert_eq!(x.len(), 2 * n);
        let point = params.param_point();
        let gp1 = params.gamma + 1.0;
        let mut acc = C64::new(0.0, 0.0);
        for term in &self.terms {
            let mut v = term.coeff.eval(&point);
            v *= t.powc(gp1 + term.t_off as f64);
            for (idx, &e) in term.mono.iter().enumerate() {
                if e != 0 {
                    v *= x[idx].powi(e as i32);
                }
            }
            for k in 0..n {
                let form = x[k] + x[n + k] * t;
                v *= form.powc(params.alpha[k] + term.shift[k] as f64);
            }
            acc += v;
        }
        acc
    }
}

/// Operator expressions acting on power-product sums; `Compose` applies its
/// rightmost factor first.
#[derive(Clone, Debug)]
pub enum GOperator {
    Theta(usize, usize),
    Partial(usize, usize),
    MulX(usize, usize),
    MulT,
    Const(ParamPoly),
    Sum(Vec<GOperator>),
    Compose(Vec<GOperator>),
}

/// Apply an operator expression to a term list.
pub fn apply_g(op: &GOperator, g: &PowerProductSum) -> PowerProductSum {
    match op {
        GOperator::Theta(r, c) => g.theta(*r, *c),
        GOperator::Partial(r, c) => g.partial(*r, *c),
        GOperator::MulX(r, c) => g.mul_x(*r, *c),
        GOperator::MulT => g.mul_t(),
        GOperator::Const(p) => g.scale(p),
        GOperator::Sum(ops) => {
            let mut acc = PowerProductSum::zero(g.n());
            for o in ops {
                acc = acc.add(&apply_g(o, g));
            }
            acc
        }
        GOperator::Compose(ops) => {
            let mut cur = g.clone();
            for o in ops.iter().rev() {
                cur = apply_g(o, &cur);
            }
            cur
        }
    }
}

/// Apply a normally ordered Weyl operator: for each monomial, derivatives
/// first, then variable multiplications, then the polynomial coefficient.
pub fn apply_weyl(w: &WeylOperator, g: &PowerProductSum) -> PowerProductSum {
    let n = g.n();
    assert_eq!(w.n(), n);
    let mut acc = PowerProductSum::zero(n);
    for (key, coeff) in w.terms() {
        let mut cur = g.clone();
        for row in 0..2 {
            for col in 0..n {
                for _ in 0..key.d[row * n + col] {
                    cur = cur.partial(row, col);
                }
            }
        }
        for row in 0..2 {
            for col in 0..n {
                for _ in 0..key.x[row * n + col] {
                    cur = cur.mul_x(row, col);
                }
            }
        }
        acc = acc.add(&cur.scale(coeff));
    }
    acc
}

/// Numeric twin of [`PowerProductSum`] used where the operator has already
/// been specialized to numeric parameters (integral-representation
/// derivatives for the shift relations). Exponent bookkeeping is identical;
/// coefficients are complex numbers and the base parameters are carried
/// alongside the terms.
#[derive(Clone, Debug)]
pub struct NumSum {
    n: usize,
    alpha: Vec<C64>,
    gamma: C64,
    terms: Vec<NumTerm>,
}

#[derive(Clone, Debug)]
pub struct NumTerm {
    pub c: C64,
    pub t_off: i64,
    pub mono: Vec<i64>,
    pub shift: Vec<i64>,
}

impl NumSum {
    /// Integrand of the integral representation at the given parameters.
    pub fn phi_seed(params: &SystemParams) -> Self {
        let n = params.n;
        NumSum {
            n,
            alpha: params.alpha.clone(),
            gamma: params.gamma,
            terms: vec![NumTerm {
                c: C64::new(1.0, 0.0),
                t_off: -1,
                mono: vec![0; 2 * n],
                shift: vec![0; n],
            }],
        }
    }

    pub fn mul_x(&self, row: usize, col: usize) -> Self {
        let idx = row * self.n + col;
        let mut out = self.clone();
        for t in &mut out.terms {
            t.mono[idx] += 1;
        }
        out
    }

    pub fn partial(&self, row: usize, col: usize) -> Self {
        let idx = row * self.n + col;
        let mut out = NumSum {
            n: self.n,
            alpha: self.alpha.clone(),
            gamma: self.gamma,
            terms: Vec::new(),
        };
        for t in &self.terms {
            if t.mono[idx] > 0 {
                let mut mono = t.mono.clone();
                mono[idx] -= 1;
                out.terms.push(NumTerm {
                    c: t.c * t.mono[idx] as f64,
                    t_off: t.t_off,
                    mono,
                    shift: t.shift.clone(),
                });
            }
            let lin = self.alpha[col] + t.shift[col] as f64;
            if lin.norm() > 0.0 {
                let mut shift = t.shift.clone();
                shift[col] -= 1;
                out.terms.push(NumTerm {
                    c: t.c * lin,
                    t_off: t.t_off + row as i64,
                    mono: t.mono.clone(),
                    shift,
                });
            }
        }
        out
    }

    pub fn scale(&self, v: C64) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.c *= v;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out
    }

    /// Apply a Weyl operator whose coefficients are evaluated at
    /// `coeff_params` (they may differ from the parameters the integrand was
    /// built with, which govern the exponents).
    pub fn apply_weyl(&self, w: &WeylOperator, coeff_params: &SystemParams) -> Self {
        assert_eq!(w.n(), self.n);
        let point = coeff_params.param_point();
        let mut acc = NumSum {
            n: self.n,
            alpha: self.alpha.clone(),
            gamma: self.gamma,
            terms: Vec::new(),
        };
        for (key, poly) in w.terms() {
            let cv = poly.eval(&point);
            if cv.norm() == 0.0 {
                continue;
            }
            let mut cur = self.clone();
            for row in 0..2 {
                for col in 0..self.n {
                    for _ in 0..key.d[row * self.n + col] {
                        cur = cur.partial(row, col);
                    }
                }
            }
            for row in 0..2 {
                for col in 0..self.n {
                    for _ in 0..key.x[row * self.n + col] {
                        cur = cur.mul_x(row, col);
                    }
                }
            }
            acc = acc.add(&cur.scale(cv));
        }
        acc
    }

    /// Value of the sum at `(t, x)` using principal powers.
    pub fn eval(&self, t: C64, x: &[C64]) -> C64 {
        assert_eq!(x.len(), 2 * self.n);
        let gp1 = self.gamma + 1.0;
        let mut acc = C64::new(0.0, 0.0);
        for term in &self.terms {
            let mut v = term.c;
            v *= t.powc(gp1 + term.t_off as f64);
            for (idx, &e) in term.mono.iter().enumerate() {
                if e != 0 {
                    v *= x[idx].powi(e as i32);
                }
            }
            for k in 0..self.n {
                let form = x[k] + x[self.n + k] * t;
                v *= form.powc(self.alpha[k] + term.shift[k] as f64);
            }
            acc += v;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64) -> C64 {
        Complex64::new(re, 0.0)
    }

    fn z_g_op(i: usize, n: usize) -> GOperator {
        GOperator::Sum(vec![
            GOperator::Theta(0, i),
            GOperator::Theta(1, i),
            GOperator::Const(ParamPoly::alpha(i, n).neg()),
        ])
    }

    #[test]
    fn homogeneity_operators_annihilate_g_exactly() {
        for n in 1..=3 {
            let g = PowerProductSum::g_seed(n);
            for i in 0..n {
                let r = apply_g(&z_g_op(i, n), &g);
                assert!(r.is_zero_exact(), "n={} i={}", n, i);
            }
        }
    }

    #[test]
    fn toric_operators_annihilate_g_exactly() {
        for n in 2..=3 {
            let g = PowerProductSum::g_seed(n);
            for i in 0..n {
                for j in (i + 1)..n {
                    let d1 = g.partial(1, j).partial(0, i);
                    let d2 = g.partial(1, i).partial(0, j);
                    let diff = d1.add(&d2.scale(&ParamPoly::from_int(-1, n + 1)));
                    assert!(diff.is_zero_exact(), "n={} i={} j={}", n, i, j);
                }
            }
        }
    }

    #[test]
    fn inhomogeneous_operator_on_g_two_canonical_terms() {
        // (sum theta_{2i} + gamma + 1) g at n=1: exact canonical content is
        // (gamma+1) t^(gamma+1) L^a1  +  a1 x21 t^(gamma+2) L^(a1-1)
        let n = 1;
        let g = PowerProductSum::g_seed(n);
        let op = GOperator::Sum(vec![
            GOperator::Theta(1, 0),
            GOperator::Const(ParamPoly::delta(n).neg()), // gamma + 1 = -delta
        ]);
        let r = apply_g(&op, &g);
        let canon = r.canonical();
        assert_eq!(canon.len(), 2);
        let k1 = CanonKey {
            t_off: 0,
            x2: vec![0],
            shift: vec![0],
        };
        let k2 = CanonKey {
            t_off: 1,
            x2: vec![1],
            shift: vec![-1],
        };
        assert_eq!(canon.get(&k1).unwrap(), &ParamPoly::delta(n).neg());
        assert_eq!(canon.get(&k2).unwrap(), &ParamPoly::alpha(0, n));
    }

    #[test]
    fn inhomogeneous_operator_matches_numeric_oracle() {
        // compare against t * dg/dt computed from the closed form directly
        let n = 2;
        let g = PowerProductSum::g_seed(n);
        let mut ops = vec![GOperator::Const(ParamPoly::delta(n).neg())];
        for i in 0..n {
            ops.push(GOperator::Theta(1, i));
        }
        let r = apply_g(&GOperator::Sum(ops), &g);
        let params = SystemParams::new(
            vec![c(0.7), c(1.3)],
            Complex64::new(0.4, 0.1),
            c(0.2),
            c(0.9),
        )
        .unwrap();
        let x = [c(1.1), c(0.8), c(0.4), c(-0.3)];
        let t = c(0.65);
        let got = r.eval_numeric(t, &x, &params);
        // t dg/dt = (gamma+1) g + t^(gamma+2) sum_k alpha_k x_{2k} prod L^(alpha - e_k)
        let gval = g.eval_numeric(t, &x, &params);
        let mut expect = (params.gamma + 1.0) * gval;
        for k in 0..n {
            let form = x[k] + x[n + k] * t;
            expect += params.alpha[k] * x[n + k] * t * gval / form;
        }
        assert!((got - expect).norm() < 1e-13 * expect.norm().max(1.0));
    }

    #[test]
    fn alpha_bump_breaks_homogeneity() {
        // L_1^(alpha_1 + 1) in place of L_1^(alpha_1): z_1 no longer kills it
        let n = 2;
        let mut g = PowerProductSum::zero(n);
        g.push(PowerProductTerm {
            coeff: ParamPoly::one(n + 1),
            t_off: 0,
            mono: vec![0; 2 * n],
            shift: vec![1, 0],
        });
        let r = apply_g(&z_g_op(0, n), &g);
        assert!(!r.is_zero_exact());
        // the other column is untouched
        let r2 = apply_g(&z_g_op(1, n), &g);
        assert!(r2.is_zero_exact());
        // toric symmetry survives a pure form-exponent shift
        let d1 = g.partial(1, 1).partial(0, 0);
        let d2 = g.partial(1, 0).partial(0, 1);
        assert!(d1.add(&d2.scale(&ParamPoly::from_int(-1, n + 1))).is_zero_exact());
    }

    #[test]
    fn bare_variable_factor_breaks_toric_symmetry() {
        let n = 2;
        let g = PowerProductSum::g_seed(n).mul_x(0, 0);
        let d1 = g.partial(1, 1).partial(0, 0);
        let d2 = g.partial(1, 0).partial(0, 1);
        let diff = d1.add(&d2.scale(&ParamPoly::from_int(-1, n + 1)));
        assert!(!diff.is_zero_exact());
    }

    #[test]
    fn t_power_bump_still_passes_all_conditions() {
        // t^(gamma+2) prod L^alpha is the boundary integrand of the
        // neighboring system (gamma shifted by one); the x-operator
        // compatibility conditions cannot see the t-power and hold exactly.
        let n = 2;
        let g = PowerProductSum::g_seed(n).mul_t();
        for i in 0..n {
            assert!(apply_g(&z_g_op(i, n), &g).is_zero_exact());
        }
        let d1 = g.partial(1, 1).partial(0, 0);
        let d2 = g.partial(1, 0).partial(0, 1);
        assert!(d1.add(&d2.scale(&ParamPoly::from_int(-1, n + 1))).is_zero_exact());
    }

    #[test]
    fn canonical_expansion_of_bare_row0_variable() {
        // x_{11} g = (L_1 - x_{21} t) g : two canonical terms
        let n = 1;
        let g = PowerProductSum::g_seed(n).mul_x(0, 0);
        let canon = g.canonical();
        assert_eq!(canon.len(), 2);
        assert_eq!(
            canon
                .get(&CanonKey {
                    t_off: 0,
                    x2: vec![0],
                    shift: vec![1]
                })
                .unwrap(),
            &ParamPoly::one(n + 1)
        );
        assert_eq!(
            canon
                .get(&CanonKey {
                    t_off: 1,
                    x2: vec![1],
                    shift: vec![0]
                })
                .unwrap(),
            &ParamPoly::from_int(-1, n + 1)
        );
    }

    #[test]
    fn symbolic_and_numeric_twins_agree() {
        use crate::weyl;
        let n = 2;
        let params = SystemParams::new(
            vec![c(0.9), c(0.45)],
            c(0.6),
            c(0.1),
            c(0.8),
        )
        .unwrap();
        let w = weyl::shift_up_2k(0, n).mul(&WeylOperator::d_var(1, 0, n));
        // symbolic route: apply, then evaluate
        let sym = apply_weyl(&w, &PowerProductSum::phi_seed(n));
        let num = NumSum::phi_seed(&params).apply_weyl(&w, &params);
        let x = [c(1.2), c(0.7), c(0.35), c(0.5)];
        for &tv in &[0.3, 0.55, 0.8] {
            let t = c(tv);
            let a = sym.eval_numeric(t, &x, &params);
            let b = num.eval(t, &x);
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0), "t = {}", tv);
        }
    }
}
