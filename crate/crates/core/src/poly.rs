//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exponent vector of a monomial.
pub type Exponents = Vec<u64>;

/// `sum_e c_e x^e` over `nvars` variables. Zero coefficients are never stored and
/// terms iterate in lexicographic exponent order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, BigRational::one())
    }

    pub fn monomial(exponents: Exponents, c: BigRational) -> Self {
        let mut p = MultiPoly::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// `x_var^exponent` in `nvars` variables.
    pub fn var_power(nvars: usize, var: usize, exponent: u64) -> Self {
        let mut e = vec![0; nvars];
        e[var] = exponent;
        MultiPoly::monomial(e, BigRational::one())
    }

    /// A polynomial in one variable from integer coefficients, lowest degree first,
    /// embedded as variable `var` of `nvars`.
    pub fn univariate(nvars: usize, var: usize, coeffs: &[i64]) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (k, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = k as u64;
            p.add_term(e, BigRational::from_integer(c.into()));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[u64]) -> BigRational {
        self.terms.get(exponents).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exponents: Exponents, c: BigRational) {
        assert_eq!(exponents.len(), self.nvars, "exponent arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; zero polynomial has degree 0.
    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Mixed partial derivative `d^|alpha| / dx^alpha`.
    pub fn partial(&self, alpha: &[u64]) -> MultiPoly {
        assert_eq!(alpha.len(), self.nvars, "derivative arity");
        let mut out = MultiPoly::zero(self.nvars);
        'terms: for (e, c) in &self.terms {
            let mut factor = BigInt::one();
            let mut reduced = e.clone();
            for ((slot, &a), &k) in reduced.iter_mut().zip(e).zip(alpha) {
                if k > a {
                    continue 'terms;
                }
                for t in 0..k {
                    factor *= a - t;
                }
                *slot = a - k;
            }
            out.add_term(reduced, c * BigRational::from_integer(factor));
        }
        out
    }

    /// Floating evaluation at a complex point.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars, "point arity");
        self.terms
            .iter()
            .map(|(e, c)| {
                let coeff = c.to_f64().unwrap_or(f64::NAN);
                e.iter()
                    .zip(point)
                    .fold(Complex64::new(coeff, 0.0), |acc, (&k, x)| acc * x.powu(k as u32))
            })
            .sum()
    }

    /// Product of univariate factors, one per variable: `prod_i f_i(x_i)`.
    pub fn product_of_univariates(factors: &[Vec<i64>]) -> MultiPoly {
        let nvars = factors.len();
        factors
            .iter()
            .enumerate()
            .fold(MultiPoly::one(nvars), |acc, (var, f)| {
                &acc * &MultiPoly::univariate(nvars, var, f)
            })
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let is_const = e.iter().all(|&k| k == 0);
            if !abs.is_one() || is_const {
                write!(f, "{abs}")?;
            }
            let mut first = abs.is_one();
            for (var, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{var}")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}
