//! Exact arithmetic in cyclotomic fields `Q(zeta_M)`.
//!
//! Elements are polynomials in `zeta_M` of degree `< phi(M)`, reduced modulo the
//! cyclotomic polynomial `Phi_M`. Only ring operations and exact zero tests are
//! provided; that is all vanishing-order computations need.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Largest conductor accepted by default.
pub const DEFAULT_CONDUCTOR_BOUND: u64 = 10_000;

/// Dense integer polynomial, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly(pub Vec<i64>);

impl IntPoly {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn mul(&self, other: &IntPoly) -> Result<IntPoly> {
        let mut out = vec![0i128; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j]
                    .checked_add(i128::from(a) * i128::from(b))
                    .ok_or(Error::Overflow("integer polynomial product"))?;
            }
        }
        narrow(out)
    }

    /// `x^m - 1`.
    pub fn x_pow_minus_one(m: usize) -> IntPoly {
        let mut c = vec![0; m + 1];
        c[0] = -1;
        c[m] = 1;
        IntPoly(c)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = MultiPoly::univariate(1, 0, &self.0);
        write!(f, "{}", p.to_string().replace("x0", "x"))
    }
}

fn narrow(c: Vec<i128>) -> Result<IntPoly> {
    let mut out = c
        .into_iter()
        .map(|v| i64::try_from(v).map_err(|_| Error::Overflow("integer polynomial")))
        .collect::<Result<Vec<_>>>()?;
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    Ok(IntPoly(out))
}

/// Exact quotient of `num` by the monic polynomial `den`; fails if the remainder
/// is nonzero.
fn divide_exact(num: &IntPoly, den: &IntPoly) -> Result<IntPoly> {
    let dd = den.degree();
    debug_assert_eq!(den.0[dd], 1, "divisor must be monic");
    let mut rem: Vec<i128> = num.0.iter().map(|&c| i128::from(c)).collect();
    if rem.len() <= dd {
        return Err(Error::InvalidParameter("inexact polynomial division".into()));
    }
    let mut quot = vec![0i128; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let q = rem[k + dd];
        quot[k] = q;
        if q != 0 {
            for (j, &c) in den.0.iter().enumerate() {
                rem[k + j] = rem[k + j]
                    .checked_sub(q * i128::from(c))
                    .ok_or(Error::Overflow("cyclotomic division"))?;
            }
        }
    }
    if rem.iter().any(|&r| r != 0) {
        return Err(Error::InvalidParameter("inexact polynomial division".into()));
    }
    narrow(quot)
}

pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= m {
        if m.is_multiple_of(i) {
            small.push(i);
            if i != m / i {
                large.push(m / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(mut m: u64) -> u64 {
    let mut phi = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// `Phi_M`, by dividing `x^M - 1` by `Phi_e` for every proper divisor `e` of `M`.
pub fn cyclotomic_poly(m: u64) -> Result<IntPoly> {
    cyclotomic_poly_bounded(m, DEFAULT_CONDUCTOR_BOUND)
}

pub fn cyclotomic_poly_bounded(m: u64, bound: u64) -> Result<IntPoly> {
    if m == 0 {
        return Err(Error::InvalidParameter("cyclotomic index must be positive".into()));
    }
    if m > bound {
        return Err(Error::ConductorTooLarge { conductor: m, bound });
    }
    let divs = divisors(m);
    // divs is ascending, so every proper divisor of e is already computed.
    let mut table: Vec<(u64, IntPoly)> = Vec::with_capacity(divs.len());
    for &e in &divs {
        let mut p = IntPoly::x_pow_minus_one(e as usize);
        for (f, phi_f) in &table {
            if e % f == 0 {
                p = divide_exact(&p, phi_f)?;
            }
        }
        table.push((e, p));
    }
    Ok(table.pop().expect("m has at least one divisor").1)
}

/// The field `Q(zeta_M)` together with its defining polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    conductor: u64,
    modulus: IntPoly,
}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Result<Arc<Self>> {
        Self::with_bound(conductor, DEFAULT_CONDUCTOR_BOUND)
    }

    pub fn with_bound(conductor: u64, bound: u64) -> Result<Arc<Self>> {
        let modulus = cyclotomic_poly_bounded(conductor, bound)?;
        Ok(Arc::new(CyclotomicField { conductor, modulus }))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `phi(M)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> CycloNumber {
        CycloNumber {
            field: Arc::clone(self),
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(self: &Arc<Self>) -> CycloNumber {
        self.zeta_pow(0)
    }

    /// `zeta_M^e`.
    pub fn zeta_pow(self: &Arc<Self>, e: u64) -> CycloNumber {
        let mut buckets = vec![BigInt::zero(); self.conductor as usize];
        buckets[(e % self.conductor) as usize] = BigInt::one();
        self.reduce(buckets, &BigInt::one())
    }

    /// Reduce `(sum_k buckets[k] zeta^k) / denom`, where `buckets` has length `M`.
    pub(crate) fn reduce(self: &Arc<Self>, mut buckets: Vec<BigInt>, denom: &BigInt) -> CycloNumber {
        let deg = self.degree();
        let phi = &self.modulus.0;
        for k in (deg..buckets.len()).rev() {
            if buckets[k].is_zero() {
                continue;
            }
            let q = std::mem::take(&mut buckets[k]);
            let base = k - deg;
            for (j, &c) in phi[..deg].iter().enumerate() {
                if c != 0 {
                    buckets[base + j] -= &q * c;
                }
            }
        }
        buckets.truncate(deg);
        let coeffs = buckets
            .into_iter()
            .map(|c| BigRational::new(c, denom.clone()))
            .collect();
        CycloNumber {
            field: Arc::clone(self),
            coeffs,
        }
    }
}

/// An element of `Q(zeta_M)`.
#[derive(Clone, Debug)]
pub struct CycloNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl CycloNumber {
    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Coordinates in the power basis `1, zeta, ..., zeta^{phi(M)-1}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_conductor(&self, other: &CycloNumber) -> Result<()> {
        if self.conductor() != other.conductor() {
            return Err(Error::ConductorMismatch {
                left: self.conductor(),
                right: other.conductor(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CycloNumber) -> Result<CycloNumber> {
        self.check_conductor(other)?;
        Ok(CycloNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &CycloNumber) -> Result<CycloNumber> {
        self.check_conductor(other)?;
        Ok(CycloNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &CycloNumber) -> Result<CycloNumber> {
        self.check_conductor(other)?;
        let m = self.conductor() as usize;
        let denom = self
            .coeffs
            .iter()
            .chain(&other.coeffs)
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = |c: &BigRational| c.numer() * (&denom / c.denom());
        let a: Vec<BigInt> = self.coeffs.iter().map(scaled).collect();
        let b: Vec<BigInt> = other.coeffs.iter().map(scaled).collect();
        let mut buckets = vec![BigInt::zero(); m.max(2 * self.field.degree())];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                buckets[i + j] += x * y;
            }
        }
        Ok(self.field.reduce(buckets, &(&denom * &denom)))
    }

    pub fn scale(&self, c: &BigRational) -> CycloNumber {
        CycloNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> CycloNumber {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same field");
            }
            base = base.checked_mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    /// Exact equality; errors on mismatched conductors.
    pub fn try_eq(&self, other: &CycloNumber) -> Result<bool> {
        self.check_conductor(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    /// Image under the embedding `zeta_M -> exp(2 pi i / M)`.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.conductor() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let angle = std::f64::consts::TAU * k as f64 / m;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            wrote = true;
            let abs = c.abs();
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{abs}*z^{k}")?,
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " [M={}]", self.conductor())
    }
}

/// `exp(2 pi i k / N)` as an element of `Q(zeta_M)`; `N` must divide `M`.
pub fn embed_root(k: u64, n: u64, m: u64) -> Result<CycloNumber> {
    let field = CyclotomicField::new(m)?;
    embed_root_in(k, n, &field)
}

pub fn embed_root_in(k: u64, n: u64, field: &Arc<CyclotomicField>) -> Result<CycloNumber> {
    let m = field.conductor();
    if n == 0 || !m.is_multiple_of(n) {
        return Err(Error::RootOrderNotDividing { order: n, conductor: m });
    }
    if k >= n {
        return Err(Error::InvalidRoot {
            numer: k as i64,
            denom: n as i64,
        });
    }
    Ok(field.zeta_pow(k * (m / n)))
}

/// A point of `(C^*)^d` whose coordinates are roots of unity `exp(2 pi i k_i / N_i)`,
/// stored as reduced fractions of a full turn.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootPoint {
    coords: Vec<(u64, u64)>,
}

impl RootPoint {
    /// Build from arbitrary fractions `k/N` with `N >= 1`; `k` is reduced mod `N` and
    /// the fraction to lowest terms (`0` becomes `0/1`).
    pub fn new(fractions: &[(i64, i64)]) -> Result<Self> {
        if fractions.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let coords = fractions
            .iter()
            .map(|&(k, n)| {
                if n <= 0 {
                    return Err(Error::InvalidRoot { numer: k, denom: n });
                }
                let k = k.rem_euclid(n) as u64;
                let n = n as u64;
                let g = k.gcd(&n);
                Ok((k / g, n / g))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RootPoint { coords })
    }

    /// The point `(1, ..., 1)`.
    pub fn ones(dim: usize) -> Self {
        RootPoint {
            coords: vec![(0, 1); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Reduced `(k_i, N_i)` pairs.
    pub fn coords(&self) -> &[(u64, u64)] {
        &self.coords
    }

    /// Multiplicative order of the point: `lcm_i N_i`.
    pub fn order(&self) -> Result<u64> {
        self.coords.iter().try_fold(1u64, |acc, &(_, n)| {
            (acc / acc.gcd(&n))
                .checked_mul(n)
                .ok_or(Error::Overflow("root point order"))
        })
    }

    /// Whether coordinate `axis` satisfies `p_axis^e = 1`, i.e. `N_axis | e`.
    pub fn coord_pow_is_one(&self, axis: usize, e: u64) -> bool {
        e.is_multiple_of(self.coords[axis].1)
    }

    pub fn is_one_at(&self, axis: usize) -> bool {
        self.coords[axis].1 == 1
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coords
            .iter()
            .map(|&(k, n)| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64))
            .collect()
    }
}

impl fmt::Display for RootPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, n)) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}/{n}")?;
        }
        Ok(())
    }
}

/// Parses `k1/N1,k2/N2,...`.
impl FromStr for RootPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("malformed root point {s:?}, expected k1/N1,...,kd/Nd"));
        let fractions = s
            .split(',')
            .map(|part| {
                let (k, n) = part.trim().split_once('/').ok_or_else(bad)?;
                let k = k.trim().parse::<i64>().map_err(|_| bad())?;
                let n = n.trim().parse::<i64>().map_err(|_| bad())?;
                Ok((k, n))
            })
            .collect::<Result<Vec<_>>>()?;
        RootPoint::new(&fractions)
    }
}

/// Exact value of `poly` at `point`, in `Q(zeta_M)` with `M = order(point)`.
pub fn eval_at_point(poly: &MultiPoly, point: &RootPoint) -> Result<CycloNumber> {
    let field = CyclotomicField::new(point.order()?)?;
    eval_at_point_in(poly, point, &field)
}

/// Exact value of `poly` at `point` in a caller-chosen field whose conductor is a
/// multiple of `order(point)`.
pub fn eval_at_point_in(
    poly: &MultiPoly,
    point: &RootPoint,
    field: &Arc<CyclotomicField>,
) -> Result<CycloNumber> {
    if poly.nvars() != point.dim() {
        return Err(Error::DimensionMismatch {
            expected: poly.nvars(),
            found: point.dim(),
        });
    }
    let m = field.conductor();
    let order = point.order()?;
    if !m.is_multiple_of(order) {
        return Err(Error::RootOrderNotDividing { order, conductor: m });
    }
    // Coordinate i is zeta_M^{step_i}.
    let steps: Vec<u128> = point
        .coords()
        .iter()
        .map(|&(k, n)| u128::from(k * (m / n)))
        .collect();
    let denom = poly.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut buckets = vec![BigInt::zero(); m as usize];
    let m128 = u128::from(m);
    for (e, c) in poly.terms() {
        let exponent = e
            .iter()
            .zip(&steps)
            .fold(0u128, |acc, (&a, &s)| (acc + (u128::from(a) % m128) * s) % m128);
        let slot = &mut buckets[exponent as usize];
        if c.denom() == &denom {
            *slot += c.numer();
        } else {
            *slot += c.numer() * (&denom / c.denom());
        }
    }
    Ok(field.reduce(buckets, &denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(c: i64) -> BigRational {
        BigRational::from_integer(c.into())
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1).unwrap(), IntPoly(vec![-1, 1]));
        assert_eq!(cyclotomic_poly(4).unwrap(), IntPoly(vec![1, 0, 1]));
        assert_eq!(cyclotomic_poly(6).unwrap(), IntPoly(vec![1, -1, 1]));
        assert_eq!(cyclotomic_poly(105).unwrap().0.iter().min(), Some(&-2));
        assert_eq!(cyclotomic_poly(6).unwrap().to_string(), "1 - x + x^2");
    }

    #[test]
    fn cyclotomic_bounds() {
        assert!(cyclotomic_poly(0).is_err());
        assert_eq!(
            cyclotomic_poly(10_001),
            Err(Error::ConductorTooLarge { conductor: 10_001, bound: 10_000 })
        );
        assert_eq!(cyclotomic_poly(9240).unwrap().degree() as u64, euler_phi(9240));
    }

    #[test]
    fn embed_root_examples() {
        let one = embed_root(0, 1, 4).unwrap();
        assert_eq!(one.coeffs(), &[int(1), int(0)]);
        let minus_one = embed_root(1, 2, 4).unwrap();
        assert_eq!(minus_one.coeffs(), &[int(-1), int(0)]);
        let zeta = embed_root(1, 4, 4).unwrap();
        assert_eq!(zeta.coeffs(), &[int(0), int(1)]);
        assert!(matches!(embed_root(1, 3, 4), Err(Error::RootOrderNotDividing { .. })));
        assert!(embed_root(4, 4, 4).is_err());
    }

    #[test]
    fn ring_examples() {
        let zeta = embed_root(1, 4, 4).unwrap();
        let sq = zeta.checked_mul(&zeta).unwrap();
        assert_eq!(sq, embed_root(1, 2, 4).unwrap());
        let zero = zeta.field().zero();
        assert_eq!(zeta.checked_add(&zero).unwrap(), zeta);
        // zeta_6^3 = -1
        let z6 = embed_root(1, 6, 6).unwrap();
        let minus_one = z6.field().one().scale(&int(-1));
        assert!(z6.pow(3).try_eq(&minus_one).unwrap());
        assert!(z6.pow(6).try_eq(&z6.field().one()).unwrap());
    }

    #[test]
    fn conductor_mismatch_is_an_error() {
        let a = embed_root(1, 4, 4).unwrap();
        let b = embed_root(1, 3, 3).unwrap();
        assert!(matches!(a.checked_add(&b), Err(Error::ConductorMismatch { left: 4, right: 3 })));
        assert!(a.checked_mul(&b).is_err());
        assert!(a.try_eq(&b).is_err());
        assert_ne!(a, b);
    }

    #[test]
    fn eval_examples() {
        let quarter = RootPoint::new(&[(1, 4)]).unwrap();
        let geo = MultiPoly::univariate(1, 0, &[1, 1, 1, 1]);
        assert!(eval_at_point(&geo, &quarter).unwrap().is_zero());
        let sq = MultiPoly::var_power(1, 0, 2);
        let v = eval_at_point(&sq, &quarter).unwrap();
        assert_eq!(v.coeffs(), &[int(-1), int(0)]);
        let xy = MultiPoly::monomial(vec![1, 1], int(1));
        let p = RootPoint::new(&[(1, 2), (1, 3)]).unwrap();
        let v = eval_at_point(&xy, &p).unwrap();
        assert_eq!(v.conductor(), 6);
        assert_eq!(v, embed_root(5, 6, 6).unwrap());
        // zeta_6^5 = 1 - zeta_6 in the power basis.
        assert_eq!(v.coeffs(), &[int(1), int(-1)]);
    }

    #[test]
    fn eval_with_rational_coefficients() {
        let mut p = MultiPoly::zero(1);
        p.add_term(vec![1], BigRational::new(1.into(), 2.into()));
        p.add_term(vec![3], BigRational::new(1.into(), 3.into()));
        // i/2 + (-i)/3 = i/6
        let v = eval_at_point(&p, &RootPoint::new(&[(1, 4)]).unwrap()).unwrap();
        assert_eq!(v.coeffs(), &[int(0), BigRational::new(1.into(), 6.into())]);
    }

    #[test]
    fn eval_dimension_and_conductor_checks() {
        let p = MultiPoly::one(2);
        assert!(eval_at_point(&p, &RootPoint::new(&[(1, 4)]).unwrap()).is_err());
        let field = CyclotomicField::new(6).unwrap();
        let q = RootPoint::new(&[(1, 4), (0, 1)]).unwrap();
        assert!(matches!(
            eval_at_point_in(&p, &q, &field),
            Err(Error::RootOrderNotDividing { order: 4, conductor: 6 })
        ));
    }

    #[test]
    fn root_point_canonical_form() {
        let p = RootPoint::new(&[(2, 4), (6, 3), (-1, 6)]).unwrap();
        assert_eq!(p.coords(), &[(1, 2), (0, 1), (5, 6)]);
        assert_eq!(p.order().unwrap(), 6);
        assert_eq!(p.to_string(), "1/2,0/1,5/6");
        assert_eq!("1/2, 0/1 ,5/6".parse::<RootPoint>().unwrap(), p);
        assert!("1/0".parse::<RootPoint>().is_err());
        assert!("1-2".parse::<RootPoint>().is_err());
        assert!(p.coord_pow_is_one(0, 4));
        assert!(!p.coord_pow_is_one(2, 4));
    }

    #[test]
    fn divisors_and_phi() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
    }
}
