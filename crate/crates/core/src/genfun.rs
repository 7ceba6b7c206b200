//! Multivariate generating functions of coset systems.
//!
//! The restriction of a canonical coset `m + prod n_i Z` to `N^d` has generating
//! function `G = prod_i x_i^{m_i} / (1 - x_i^{n_i})`. Over the common denominator
//! `prod_i (1 - x_i^{L_i})` a whole system sums to a polynomial numerator, and the
//! system tiles `Z^d` exactly when that sum is `prod_i 1 / (1 - x_i)`.
//!
//! Pole orders at roots of unity are computed two ways: exactly (denominator order
//! minus numerator vanishing order, decided in a cyclotomic field) and numerically,
//! by measuring the growth of `|S|` along random lines through the point.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::coset::{lcm_box, Coset, CosetSystem, SubgroupShape};
use crate::cyclotomic::{eval_at_point_in, CyclotomicField, RootPoint};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Default cap on the number of numerator monomials `system_sum` may generate.
pub const DEFAULT_TERM_BUDGET: u64 = 10_000_000;

/// The generating function of one coset restricted to `N^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenTerm {
    coset: Coset,
}

pub fn term_from_coset(coset: &Coset) -> GenTerm {
    GenTerm {
        coset: coset.clone(),
    }
}

impl GenTerm {
    pub fn coset(&self) -> &Coset {
        &self.coset
    }

    /// Exponents of the numerator monomial.
    pub fn numerator_exponents(&self) -> &[u64] {
        self.coset.offset()
    }

    /// Exponents `n_i` of the denominator factors `1 - x_i^{n_i}`.
    pub fn denominator_exponents(&self) -> &[u64] {
        self.coset.moduli()
    }

    /// Power-series coefficient of `x^z`: 1 when `z` lies in the coset, else 0.
    pub fn series_coeff(&self, z: &[u64]) -> u64 {
        let hit = z.len() == self.coset.dim()
            && z.iter()
                .zip(self.coset.moduli())
                .zip(self.coset.offset())
                .all(|((&z, &n), &m)| z >= m && (z - m) % n == 0);
        u64::from(hit)
    }

    pub fn eval_complex(&self, x: &[Complex64]) -> Complex64 {
        x.iter()
            .zip(self.coset.moduli())
            .zip(self.coset.offset())
            .map(|((x, &n), &m)| pow(*x, m) / (Complex64::new(1.0, 0.0) - pow(*x, n)))
            .product()
    }
}

/// `N(x) / prod_i (1 - x_i^{L_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    pub numerator: MultiPoly,
    pub denom_exponents: Vec<u64>,
}

impl RationalGF {
    pub fn dim(&self) -> usize {
        self.denom_exponents.len()
    }

    /// Coefficient of `x^z` in the power-series expansion around the origin.
    pub fn series_coeff(&self, z: &[u64]) -> BigRational {
        // 1 / (1 - x^L) = sum_r x^{rL}, so the coefficient is the sum of numerator
        // coefficients at z - rL over every admissible r.
        self.numerator
            .terms()
            .filter(|(e, _)| {
                e.iter()
                    .zip(z)
                    .zip(&self.denom_exponents)
                    .all(|((&a, &z), &l)| z >= a && (z - a) % l == 0)
            })
            .fold(BigRational::zero(), |acc, (_, c)| acc + c)
    }

    pub fn eval_complex(&self, x: &[Complex64]) -> Complex64 {
        let den: Complex64 = x
            .iter()
            .zip(&self.denom_exponents)
            .map(|(x, &l)| Complex64::new(1.0, 0.0) - pow(*x, l))
            .product();
        self.numerator.eval_complex(x) / den
    }
}

fn pow(x: Complex64, e: u64) -> Complex64 {
    let mut base = x;
    let mut acc = Complex64::new(1.0, 0.0);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// Number of numerator monomials `system_sum` would produce before merging.
pub fn numerator_term_count(system: &CosetSystem) -> Result<BigUint> {
    let period = lcm_box(system)?;
    let volume = period.volume();
    Ok(system
        .cosets()
        .iter()
        .map(|c| &volume / c.index())
        .sum())
}

/// `sum_j G_j` over the common denominator `prod_i (1 - x_i^{L_i})`, using
/// `(1 - x^L) / (1 - x^n) = 1 + x^n + ... + x^{L - n}`.
pub fn system_sum(system: &CosetSystem, term_budget: u64) -> Result<RationalGF> {
    let period = lcm_box(system)?;
    let count = numerator_term_count(system)?;
    if count > BigUint::from(term_budget) {
        return Err(Error::TooLarge {
            what: "numerator term count",
            size: count,
            budget: term_budget,
        });
    }
    let lengths = period.lengths();
    let mut numerator = MultiPoly::zero(system.dim());
    for coset in system.cosets() {
        // Exponent vectors m + r*n with 0 <= m_i + r_i n_i < L_i.
        let mut exponents: Vec<Vec<u64>> = vec![Vec::with_capacity(system.dim())];
        for ((&n, &m), &l) in coset.moduli().iter().zip(coset.offset()).zip(lengths) {
            exponents = exponents
                .into_iter()
                .flat_map(|prefix| {
                    (m..l).step_by(n as usize).map(move |a| {
                        let mut e = prefix.clone();
                        e.push(a);
                        e
                    })
                })
                .collect();
        }
        for e in exponents {
            numerator.add_term(e, BigRational::from_integer(BigInt::from(1)));
        }
    }
    Ok(RationalGF {
        numerator,
        denom_exponents: lengths.to_vec(),
    })
}

/// `prod_i (1 + x_i + ... + x_i^{L_i - 1})`, the numerator of `prod_i 1/(1 - x_i)`
/// over the denominator `prod_i (1 - x_i^{L_i})`.
pub fn tiling_numerator(lengths: &[u64]) -> MultiPoly {
    let factors: Vec<Vec<i64>> = lengths.iter().map(|&l| vec![1; l as usize]).collect();
    MultiPoly::product_of_univariates(&factors)
}

/// True iff `sum_j G_j = prod_i 1/(1 - x_i)` as rational functions.
pub fn identity_check(system: &CosetSystem, term_budget: u64) -> Result<bool> {
    let sum = system_sum(system, term_budget)?;
    Ok(sum.numerator == tiling_numerator(&sum.denom_exponents))
}

/// Pole order of `G_j` at `p` along a generic line: the number of axes with
/// `p_i^{n_i} = 1`.
pub fn term_pole_order(term: &GenTerm, point: &RootPoint) -> Result<usize> {
    if term.coset.dim() != point.dim() {
        return Err(Error::DimensionMismatch {
            expected: term.coset.dim(),
            found: point.dim(),
        });
    }
    Ok(term
        .denominator_exponents()
        .iter()
        .enumerate()
        .filter(|&(axis, &n)| point.coord_pow_is_one(axis, n))
        .count())
}

/// `(exp(2 pi i / n_1), ..., exp(2 pi i / n_d))`.
pub fn principal_point(shape: &SubgroupShape) -> RootPoint {
    let fractions: Vec<(i64, i64)> = shape.moduli().iter().map(|&n| (1, n as i64)).collect();
    RootPoint::new(&fractions).expect("moduli are positive")
}

/// Smallest `k` such that some partial derivative of total order `k` of `poly` is
/// nonzero at `point`, searching only `k < limit`. Returns `limit` when every
/// derivative below it vanishes.
pub fn vanishing_order(poly: &MultiPoly, point: &RootPoint, limit: usize) -> Result<usize> {
    let field = CyclotomicField::new(point.order()?)?;
    for k in 0..limit {
        for alpha in compositions(k as u64, poly.nvars()) {
            let derivative = poly.partial(&alpha);
            if derivative.is_zero() {
                continue;
            }
            if !eval_at_point_in(&derivative, point, &field)?.is_zero() {
                return Ok(k);
            }
        }
    }
    Ok(limit)
}

/// All exponent vectors of length `parts` summing to `total`, lexicographically
/// descending.
fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .rev()
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Exact generic-line pole order of `sum` at `point`: denominator order minus
/// numerator vanishing order, clamped at 0.
pub fn sum_pole_order_exact(sum: &RationalGF, point: &RootPoint) -> Result<usize> {
    if sum.dim() != point.dim() {
        return Err(Error::DimensionMismatch {
            expected: sum.dim(),
            found: point.dim(),
        });
    }
    let den_order = sum
        .denom_exponents
        .iter()
        .enumerate()
        .filter(|&(axis, &l)| point.coord_pow_is_one(axis, l))
        .count();
    if den_order == 0 {
        return Ok(0);
    }
    let num_order = vanishing_order(&sum.numerator, point, den_order)?;
    Ok(den_order.saturating_sub(num_order))
}

/// Sampling parameters for the numeric pole-order estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleProbeParams {
    pub t_max: f64,
    pub t_min: f64,
    pub samples_per_decade: u32,
    pub directions: u32,
    pub seed: u64,
}

impl Default for PoleProbeParams {
    fn default() -> Self {
        PoleProbeParams {
            t_max: 1e-2,
            t_min: 1e-6,
            samples_per_decade: 8,
            directions: 5,
            seed: 0,
        }
    }
}

impl PoleProbeParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.t_min && self.t_min < self.t_max && self.t_max < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < t_min < t_max < 1, got t_min={} t_max={}",
                self.t_min, self.t_max
            )));
        }
        if self.samples_per_decade == 0 || self.directions == 0 {
            return Err(Error::InvalidParameter(
                "samples_per_decade and directions must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Geometrically spaced parameters from `t_max` down to `t_min`, both included.
    pub fn sample_ts(&self) -> Vec<f64> {
        let decades = (self.t_max / self.t_min).log10();
        let steps = (decades * f64::from(self.samples_per_decade)).ceil().max(1.0) as usize;
        (0..=steps)
            .map(|k| {
                if k == steps {
                    self.t_min
                } else {
                    self.t_max * (self.t_min / self.t_max).powf(k as f64 / steps as f64)
                }
            })
            .collect()
    }

    /// Seeded unit-norm complex directions in `C^dim`.
    pub fn line_directions(&self, dim: usize) -> Vec<Vec<Complex64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.directions)
            .map(|_| loop {
                let v: Vec<Complex64> = (0..dim)
                    .map(|_| {
                        let re: f64 = StandardNormal.sample(&mut rng);
                        let im: f64 = StandardNormal.sample(&mut rng);
                        Complex64::new(re, im)
                    })
                    .collect();
                let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm > 1e-12 {
                    break v.into_iter().map(|z| z / norm).collect();
                }
            })
            .collect()
    }
}

/// Floating evaluation of `sum_j G_j` in its common-denominator form.
///
/// The numerator is evaluated coset by coset as `x^m * prod_i (1 + y_i + ... + y_i^{q_i-1})`
/// with `y_i = x_i^{n_i}` and `q_i = L_i / n_i`. Every summand stays bounded near a
/// root of unity, so no huge terms have to cancel.
#[derive(Clone, Debug)]
pub struct SumEvaluator {
    system: CosetSystem,
    lengths: Vec<u64>,
}

impl SumEvaluator {
    pub fn new(system: &CosetSystem) -> Result<Self> {
        Ok(SumEvaluator {
            system: system.clone(),
            lengths: lcm_box(system)?.lengths().to_vec(),
        })
    }

    pub fn numerator(&self, x: &[Complex64]) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        self.system
            .cosets()
            .iter()
            .map(|c| {
                c.moduli()
                    .iter()
                    .zip(c.offset())
                    .zip(&self.lengths)
                    .zip(x)
                    .map(|(((&n, &m), &l), &x)| {
                        let y = pow(x, n);
                        let geometric = (0..l / n).fold(Complex64::zero(), |acc, _| acc * y + one);
                        pow(x, m) * geometric
                    })
                    .product::<Complex64>()
            })
            .sum()
    }

    pub fn denominator(&self, x: &[Complex64]) -> Complex64 {
        x.iter()
            .zip(&self.lengths)
            .map(|(&x, &l)| Complex64::new(1.0, 0.0) - pow(x, l))
            .product()
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.numerator(x) / self.denominator(x)
    }

    /// `G_j(x)` for a single coset of the system.
    pub fn eval_term(&self, index: usize, x: &[Complex64]) -> Result<Complex64> {
        Ok(term_from_coset(self.system.get(index)?).eval_complex(x))
    }
}

/// The point `p + t v`.
pub fn point_on_line(base: &[Complex64], direction: &[Complex64], t: f64) -> Vec<Complex64> {
    base.iter().zip(direction).map(|(p, v)| p + v * t).collect()
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (sxy, sxx) = xs.iter().zip(ys).fold((0.0, 0.0), |(sxy, sxx), (x, y)| {
        (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx))
    });
    sxy / sxx
}

/// Growth exponent of `|S|` near `point`: the median over seeded random lines of the
/// fitted slope of `log|S|` against `log(1/t)`.
pub fn numeric_pole_order(system: &CosetSystem, point: &RootPoint, params: &PoleProbeParams) -> Result<f64> {
    params.validate()?;
    if system.dim() != point.dim() {
        return Err(Error::DimensionMismatch {
            expected: system.dim(),
            found: point.dim(),
        });
    }
    let evaluator = SumEvaluator::new(system)?;
    let base = point.to_complex();
    let ts = params.sample_ts();
    let xs: Vec<f64> = ts.iter().map(|t| (1.0 / t).ln()).collect();
    let mut slopes = params
        .line_directions(system.dim())
        .iter()
        .map(|v| {
            let ys = ts
                .iter()
                .map(|&t| {
                    let value = evaluator.eval(&point_on_line(&base, v, t)).norm();
                    if value.is_finite() && value > 0.0 {
                        Ok(value.ln())
                    } else {
                        Err(Error::EstimateFailed(format!("|S| = {value} at t = {t:e}")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(fit_slope(&xs, &ys))
        })
        .collect::<Result<Vec<f64>>>()?;
    slopes.sort_by(f64::total_cmp);
    let mid = slopes.len() / 2;
    Ok(if slopes.len() % 2 == 1 {
        slopes[mid]
    } else {
        (slopes[mid - 1] + slopes[mid]) / 2.0
    })
}

/// Exact and (optionally) numeric pole data of a system at one root point.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleReport {
    pub point: RootPoint,
    pub exact_order: usize,
    pub numeric_estimate: Option<f64>,
    pub per_term_orders: Vec<(usize, usize)>,
    pub params: Option<PoleProbeParams>,
}

pub fn pole_report(
    system: &CosetSystem,
    point: &RootPoint,
    term_budget: u64,
    numeric: Option<&PoleProbeParams>,
) -> Result<PoleReport> {
    let sum = system_sum(system, term_budget)?;
    let exact_order = sum_pole_order_exact(&sum, point)?;
    let per_term_orders = system
        .cosets()
        .iter()
        .enumerate()
        .map(|(j, c)| Ok((j, term_pole_order(&term_from_coset(c), point)?)))
        .collect::<Result<Vec<_>>>()?;
    let numeric_estimate = numeric
        .map(|params| numeric_pole_order(system, point, params))
        .transpose()?;
    Ok(PoleReport {
        point: point.clone(),
        exact_order,
        numeric_estimate,
        per_term_orders,
        params: numeric.cloned(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coset(n: &[u64], m: &[i64]) -> Coset {
        Coset::new(n.to_vec(), m).unwrap()
    }

    fn system(cosets: &[(&[u64], &[i64])]) -> CosetSystem {
        CosetSystem::new(cosets.iter().map(|(n, m)| coset(n, m)).collect()).unwrap()
    }

    fn running() -> CosetSystem {
        system(&[(&[2], &[0]), (&[4], &[1]), (&[4], &[3])])
    }

    fn point(s: &str) -> RootPoint {
        s.parse().unwrap()
    }

    #[test]
    fn term_examples() {
        let g = term_from_coset(&coset(&[2], &[0]));
        let coeffs: Vec<u64> = (0..6).map(|z| g.series_coeff(&[z])).collect();
        assert_eq!(coeffs, vec![1, 0, 1, 0, 1, 0]);
        let g = term_from_coset(&coset(&[4], &[1]));
        assert_eq!(g.numerator_exponents(), &[1]);
        assert_eq!(g.denominator_exponents(), &[4]);
        let g = term_from_coset(&coset(&[2, 3], &[1, 2]));
        assert_eq!(g.numerator_exponents(), &[1, 2]);
        assert_eq!(g.denominator_exponents(), &[2, 3]);
        assert_eq!(g.series_coeff(&[3, 5]), 1);
        assert_eq!(g.series_coeff(&[1, 1]), 0);
    }

    #[test]
    fn system_sum_examples() {
        let s = system_sum(&running(), DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(s.numerator, MultiPoly::univariate(1, 0, &[1, 1, 1, 1]));
        assert_eq!(s.denom_exponents, vec![4]);

        let s = system_sum(&system(&[(&[1], &[0])]), DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(s.numerator, MultiPoly::one(1));
        assert_eq!(s.denom_exponents, vec![1]);

        let s = system_sum(&system(&[(&[2], &[0]), (&[4], &[1])]), DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(s.numerator, MultiPoly::univariate(1, 0, &[1, 1, 1]));
    }

    #[test]
    fn system_sum_budget() {
        let s = system(&[(&[1000, 1000], &[0, 0]), (&[1, 1], &[0, 0])]);
        assert!(matches!(system_sum(&s, 1000), Err(Error::TooLarge { .. })));
        assert!(identity_check(&s, 1000).is_err());
    }

    #[test]
    fn identity_examples() {
        assert!(identity_check(&running(), DEFAULT_TERM_BUDGET).unwrap());
        assert!(!identity_check(&system(&[(&[2], &[0]), (&[4], &[1])]), DEFAULT_TERM_BUDGET).unwrap());
        assert!(identity_check(&system(&[(&[1], &[0])]), DEFAULT_TERM_BUDGET).unwrap());
        // Density 1 but overlapping.
        let s = system(&[(&[2], &[0]), (&[4], &[1]), (&[8], &[3]), (&[8], &[5])]);
        assert!(!identity_check(&s, DEFAULT_TERM_BUDGET).unwrap());
    }

    #[test]
    fn term_pole_order_examples() {
        let g = term_from_coset(&coset(&[2, 3], &[0, 0]));
        assert_eq!(term_pole_order(&g, &point("1/2,1/3")).unwrap(), 2);
        assert_eq!(term_pole_order(&g, &point("1/2,1/4")).unwrap(), 1);
        assert_eq!(term_pole_order(&g, &point("1/4,1/5")).unwrap(), 0);
        assert!(term_pole_order(&g, &point("1/2")).is_err());
    }

    #[test]
    fn principal_point_examples() {
        let shape = |n: &[u64]| SubgroupShape::new(n.to_vec()).unwrap();
        assert_eq!(principal_point(&shape(&[4])), point("1/4"));
        assert_eq!(principal_point(&shape(&[2, 3])), point("1/2,1/3"));
        assert_eq!(principal_point(&shape(&[1, 1])), RootPoint::ones(2));
    }

    #[test]
    fn exact_sum_pole_order_examples() {
        let s = system_sum(&running(), DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(sum_pole_order_exact(&s, &point("1/4")).unwrap(), 0);
        assert_eq!(sum_pole_order_exact(&s, &point("0/1")).unwrap(), 1);
        let s = system_sum(&system(&[(&[2], &[0]), (&[4], &[1])]), DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(sum_pole_order_exact(&s, &point("1/4")).unwrap(), 1);
        // Not a pole of the denominator at all.
        assert_eq!(sum_pole_order_exact(&s, &point("1/3")).unwrap(), 0);
    }

    #[test]
    fn vanishing_order_counts_derivatives() {
        // (x - 1)^2 (y + 1) vanishes to order 2 at (1, 1).
        let p = &MultiPoly::univariate(2, 0, &[1, -2, 1]) * &MultiPoly::univariate(2, 1, &[1, 1]);
        assert_eq!(vanishing_order(&p, &RootPoint::ones(2), 5).unwrap(), 2);
        assert_eq!(vanishing_order(&p, &RootPoint::ones(2), 1).unwrap(), 1);
        // At (1, -1) both factors vanish once each.
        assert_eq!(vanishing_order(&p, &point("0/1,1/2"), 5).unwrap(), 3);
    }

    #[test]
    fn compositions_enumerates_all() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn numeric_examples() {
        let params = PoleProbeParams::default();
        let cover = running();
        let at_one = numeric_pole_order(&cover, &point("0/1"), &params).unwrap();
        assert!((at_one - 1.0).abs() <= 0.2, "{at_one}");
        let at_i = numeric_pole_order(&cover, &point("1/4"), &params).unwrap();
        assert!(at_i.abs() <= 0.2, "{at_i}");
        let single = system(&[(&[2, 3], &[0, 0])]);
        let two = numeric_pole_order(&single, &point("1/2,1/3"), &params).unwrap();
        assert!((two - 2.0).abs() <= 0.2, "{two}");
    }

    #[test]
    fn probe_params_validation() {
        let bad = PoleProbeParams {
            t_min: 0.1,
            t_max: 0.01,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let ts = PoleProbeParams::default().sample_ts();
        assert_eq!(ts.len(), 33);
        assert_eq!(ts[0], 1e-2);
        assert_eq!(*ts.last().unwrap(), 1e-6);
    }

    #[test]
    fn directions_are_seeded_unit_vectors() {
        let params = PoleProbeParams::default();
        let a = params.line_directions(3);
        assert_eq!(a, params.line_directions(3));
        assert_eq!(a.len(), 5);
        for v in &a {
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        let other = PoleProbeParams { seed: 1, ..params };
        assert_ne!(a, other.line_directions(3));
    }

    #[test]
    fn evaluator_matches_expanded_form() {
        let s = system(&[(&[2, 3], &[1, 0]), (&[4, 1], &[0, 0]), (&[4, 3], &[2, 2])]);
        let sum = system_sum(&s, DEFAULT_TERM_BUDGET).unwrap();
        let evaluator = SumEvaluator::new(&s).unwrap();
        let x = [Complex64::new(0.3, 0.2), Complex64::new(-0.1, 0.5)];
        let direct: Complex64 = s.cosets().iter().map(|c| term_from_coset(c).eval_complex(&x)).sum();
        assert!((evaluator.eval(&x) - sum.eval_complex(&x)).norm() < 1e-12);
        assert!((evaluator.eval(&x) - direct).norm() < 1e-12);
    }

    #[test]
    fn pole_report_collects_per_term_orders() {
        let r = pole_report(&running(), &point("1/4"), DEFAULT_TERM_BUDGET, None).unwrap();
        assert_eq!(r.exact_order, 0);
        assert_eq!(r.per_term_orders, vec![(0, 0), (1, 1), (2, 1)]);
        assert_eq!(r.numeric_estimate, None);
    }
}
