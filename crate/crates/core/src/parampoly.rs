//! Exact multivariate polynomials in the system parameters.
//!
//! A [`ParamPoly`] is a polynomial with rational coefficients in the n+1
//! symbols `alpha_1, ..., alpha_n, delta` (with `delta = -gamma-1`). All ring
//! operations are exact; these polynomials are the coefficients of the
//! symbolic Weyl operators and power-product terms, so that operator
//! identities can be decided by normal-form comparison rather than numerics.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial over Q in `nvars` symbols, keyed by exponent vectors.
///
/// Zero coefficients are never stored, so structural equality of the term
/// maps is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl ParamPoly {
    pub fn zero(nvars: usize) -> Self {
        ParamPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_int(1, nvars)
    }

    pub fn from_int(v: i64, nvars: usize) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(v)), nvars)
    }

    pub fn constant(v: BigRational, nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !v.is_zero() {
            terms.insert(vec![0; nvars], v);
        }
        ParamPoly { nvars, terms }
    }

    /// The symbol with index `i` (0-based).
    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars, "symbol index out of range");
        let mut exp = vec![0u32; nvars];
        exp[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, BigRational::one());
        ParamPoly { nvars, terms }
    }

    /// `alpha_k` (0-based k) in a system with `n` columns; symbols are laid
    /// out as `alpha_1..alpha_n, delta`.
    pub fn alpha(k: usize, n: usize) -> Self {
        assert!(k < n, "alpha index out of range");
        Self::var(k, n + 1)
    }

    /// The symbol `delta = -gamma-1`.
    pub fn delta(n: usize) -> Self {
        Self::var(n, n + 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), -c.clone()))
            .collect();
        ParamPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "mixed symbol spaces");
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        ParamPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "mixed symbol spaces");
        let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = terms.entry(exp).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ParamPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn scale_int(&self, v: i64) -> Self {
        self.mul(&Self::from_int(v, self.nvars))
    }

    /// Evaluate at a numeric point, one complex value per symbol.
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars, "evaluation point length");
        let mut acc = Complex64::new(0.0, 0.0);
        for (exp, coeff) in &self.terms {
            let mut term = Complex64::new(rational_to_f64(coeff), 0.0);
            for (e, v) in exp.iter().zip(point) {
                for _ in 0..*e {
                    term *= v;
                }
            }
            acc += term;
        }
        acc
    }

    /// Total degree, or 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fallback for extreme numerators/denominators; not hit in practice.
        let num = r.numer().to_f64().unwrap_or(f64::MAX * r.numer().signum().to_f64().unwrap());
        let den = r.denom().to_f64().unwrap_or(f64::MAX);
        num / den
    })
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.nvars - 1;
        let mut first = true;
        for (exp, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", coeff)?;
            for (i, e) in exp.iter().enumerate() {
                if *e > 0 {
                    if i < n {
                        write!(f, "*a{}", i + 1)?;
                    } else {
                        write!(f, "*d")?;
                    }
                    if *e > 1 {
                        write!(f, "^{}", e)?;
                    }
                }
            }
        }
        Ok(())
    }
}
