//! Cosets of Cartesian sublattices `n_1 Z x ... x n_d Z` and finite systems of them.
//!
//! Every check here is exact. A coset system is periodic with period `L_i = lcm_j n_{j,i}`
//! along each axis, so questions about all of `Z^d` reduce to the fundamental box
//! `[0, L_1) x ... x [0, L_d)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default cap on the number of fundamental-box cells any enumeration may touch.
pub const DEFAULT_CELL_BUDGET: u64 = 100_000_000;

/// The moduli `(n_1, ..., n_d)` of the sublattice `n_1 Z x ... x n_d Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupShape(Vec<u64>);

impl SubgroupShape {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(axis) = moduli.iter().position(|&n| n == 0) {
            return Err(Error::NonPositiveModulus { axis });
        }
        Ok(SubgroupShape(moduli))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.0
    }

    /// Index of the subgroup in `Z^d`, i.e. `prod_i n_i`.
    pub fn index(&self) -> BigUint {
        self.0.iter().map(|&n| BigUint::from(n)).product()
    }

    /// True when `self.n_i` divides `other.n_i` on every axis, i.e. `other` is a
    /// subgroup of `self`.
    pub fn divides(&self, other: &SubgroupShape) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| b % a == 0)
    }

    /// The full lattice `Z^d`.
    pub fn trivial(dim: usize) -> Result<Self> {
        SubgroupShape::new(vec![1; dim])
    }
}

impl fmt::Display for SubgroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A coset `m + (n_1 Z x ... x n_d Z)` with canonical offset `0 <= m_i < n_i`.
///
/// The canonical offset is also the minimal point of `coset ∩ N^d`, so the same data
/// describes the restriction to the nonnegative orthant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coset {
    shape: SubgroupShape,
    offset: Vec<u64>,
}

/// Reduce arbitrary integer offsets into the canonical range `[0, n_i)`.
pub fn canonicalize(shape: SubgroupShape, offset: &[i64]) -> Result<Coset> {
    if offset.len() != shape.dim() {
        return Err(Error::DimensionMismatch {
            expected: shape.dim(),
            found: offset.len(),
        });
    }
    let offset = offset
        .iter()
        .zip(shape.moduli())
        .map(|(&m, &n)| (i128::from(m).rem_euclid(i128::from(n))) as u64)
        .collect();
    Ok(Coset { shape, offset })
}

impl Coset {
    /// Build a coset from raw moduli and offsets, canonicalizing the offsets.
    pub fn new(moduli: Vec<u64>, offset: &[i64]) -> Result<Self> {
        canonicalize(SubgroupShape::new(moduli)?, offset)
    }

    /// Build from already-canonical data; offsets are still reduced, so this never
    /// produces a non-canonical coset.
    pub fn from_parts(shape: SubgroupShape, offset: Vec<u64>) -> Result<Self> {
        if offset.len() != shape.dim() {
            return Err(Error::DimensionMismatch {
                expected: shape.dim(),
                found: offset.len(),
            });
        }
        let offset = offset
            .iter()
            .zip(shape.moduli())
            .map(|(&m, &n)| m % n)
            .collect();
        Ok(Coset { shape, offset })
    }

    /// The whole lattice `Z^d`.
    pub fn full(dim: usize) -> Result<Self> {
        Ok(Coset {
            shape: SubgroupShape::trivial(dim)?,
            offset: vec![0; dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn shape(&self) -> &SubgroupShape {
        &self.shape
    }

    pub fn moduli(&self) -> &[u64] {
        self.shape.moduli()
    }

    pub fn offset(&self) -> &[u64] {
        &self.offset
    }

    pub fn index(&self) -> BigUint {
        self.shape.index()
    }

    pub fn contains(&self, point: &[i64]) -> Result<bool> {
        self.check_dim(point.len())?;
        Ok(point
            .iter()
            .zip(self.moduli())
            .zip(&self.offset)
            .all(|((&z, &n), &m)| i128::from(z).rem_euclid(i128::from(n)) as u64 == m))
    }

    /// Natural density `1 / prod_i n_i`.
    pub fn density(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.index()))
    }

    /// Two cosets are disjoint iff on some axis `m_i != m'_i (mod gcd(n_i, n'_i))`;
    /// otherwise the axiswise congruences are simultaneously solvable by CRT.
    pub fn disjoint(&self, other: &Coset) -> Result<bool> {
        self.check_dim(other.dim())?;
        Ok(self
            .moduli()
            .iter()
            .zip(other.moduli())
            .zip(self.offset.iter().zip(&other.offset))
            .any(|((&n1, &n2), (&m1, &m2))| {
                let g = n1.gcd(&n2);
                m1 % g != m2 % g
            }))
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }
}

/// Cosets order by shape, then offset. This is the canonical order for solution lists.
impl Ord for Coset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shape
            .cmp(&other.shape)
            .then_with(|| self.offset.cmp(&other.offset))
    }
}

impl PartialOrd for Coset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={:?}, m={:?})", self.moduli(), self.offset)
    }
}

/// A finite, nonempty list of cosets of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetSystem {
    dim: usize,
    cosets: Vec<Coset>,
}

impl CosetSystem {
    pub fn new(cosets: Vec<Coset>) -> Result<Self> {
        let first = cosets.first().ok_or(Error::EmptySystem)?;
        let dim = first.dim();
        if let Some(bad) = cosets.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(CosetSystem { dim, cosets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn get(&self, index: usize) -> Result<&Coset> {
        self.cosets.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.cosets.len(),
        })
    }

    /// Same cosets, sorted by shape then offset.
    pub fn sorted(&self) -> CosetSystem {
        let mut cosets = self.cosets.clone();
        cosets.sort();
        CosetSystem {
            dim: self.dim,
            cosets,
        }
    }

    pub fn density_sum(&self) -> BigRational {
        self.cosets
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + c.density())
    }

    /// Pairwise disjointness via the CRT criterion.
    pub fn is_pairwise_disjoint(&self) -> bool {
        self.cosets.iter().enumerate().all(|(i, a)| {
            self.cosets[i + 1..]
                .iter()
                .all(|b| a.disjoint(b).expect("system cosets share a dimension"))
        })
    }
}

/// Per-axis period `L_i = lcm_j n_{j,i}` of a coset system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcmBox(Vec<u64>);

impl LcmBox {
    pub fn new(lengths: Vec<u64>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(axis) = lengths.iter().position(|&l| l == 0) {
            return Err(Error::NonPositiveModulus { axis });
        }
        Ok(LcmBox(lengths))
    }

    pub fn lengths(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn volume(&self) -> BigUint {
        self.0.iter().map(|&l| BigUint::from(l)).product()
    }

    /// Volume as a machine integer, rejecting boxes above `budget` cells.
    pub fn checked_volume(&self, budget: u64) -> Result<usize> {
        let volume = self.volume();
        match volume.to_u64() {
            Some(v) if v <= budget => usize::try_from(v).map_err(|_| Error::Overflow("box volume")),
            _ => Err(Error::TooLarge {
                what: "fundamental box",
                size: volume,
                budget,
            }),
        }
    }

    /// Row-major linear index of a cell (axis 0 most significant), which is the
    /// lexicographic order of the cells.
    pub fn linear_index(&self, cell: &[u64]) -> usize {
        cell.iter()
            .zip(&self.0)
            .fold(0usize, |acc, (&z, &l)| acc * l as usize + z as usize)
    }

    pub fn cell_at(&self, mut index: usize) -> Vec<u64> {
        let mut cell = vec![0; self.0.len()];
        for (slot, &l) in cell.iter_mut().zip(&self.0).rev() {
            *slot = (index % l as usize) as u64;
            index /= l as usize;
        }
        cell
    }

    /// Linear indices of the box cells lying in `coset`, in increasing order.
    /// Requires every modulus of the coset to divide the matching box length.
    pub fn cells_of(&self, coset: &Coset) -> Vec<usize> {
        debug_assert!(coset
            .moduli()
            .iter()
            .zip(&self.0)
            .all(|(n, l)| l % n == 0));
        let axes: Vec<Vec<usize>> = coset
            .moduli()
            .iter()
            .zip(coset.offset())
            .zip(&self.0)
            .map(|((&n, &m), &l)| (m..l).step_by(n as usize).map(|z| z as usize).collect())
            .collect();
        let mut cells = vec![0usize];
        for (axis, len) in axes.iter().zip(&self.0) {
            cells = cells
                .iter()
                .flat_map(|&base| axis.iter().map(move |&z| base * *len as usize + z))
                .collect();
        }
        cells
    }
}

/// The fundamental period box of a system.
pub fn lcm_box(system: &CosetSystem) -> Result<LcmBox> {
    let mut lengths = vec![1u64; system.dim()];
    for coset in system.cosets() {
        for (l, &n) in lengths.iter_mut().zip(coset.moduli()) {
            let g = l.gcd(&n);
            *l = (*l / g).checked_mul(n).ok_or(Error::Overflow("lcm box"))?;
        }
    }
    LcmBox::new(lengths)
}

/// A fundamental-box cell that is not covered exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub cell: Vec<u64>,
    pub covers: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub is_disjoint: bool,
    pub density_sum: BigRational,
    pub is_partition: bool,
    /// Lexicographically first cell of the fundamental box with cover count != 1.
    pub counterexample: Option<Counterexample>,
}

/// Decide whether `system` partitions `Z^d` by counting covers of every cell of the
/// fundamental box.
pub fn verify_partition(system: &CosetSystem, cell_budget: u64) -> Result<VerificationReport> {
    let period = lcm_box(system)?;
    let volume = period.checked_volume(cell_budget)?;

    // Saturating counts; the exact count of the reported cell is recomputed below.
    let mut counts = vec![0u8; volume];
    for coset in system.cosets() {
        for cell in period.cells_of(coset) {
            counts[cell] = counts[cell].saturating_add(1);
        }
    }

    let counterexample = counts.iter().position(|&c| c != 1).map(|index| {
        let cell = period.cell_at(index);
        let point: Vec<i64> = cell.iter().map(|&z| z as i64).collect();
        let covers = system
            .cosets()
            .iter()
            .filter(|c| c.contains(&point).expect("dimension checked"))
            .count() as u64;
        Counterexample { cell, covers }
    });

    Ok(VerificationReport {
        is_disjoint: system.is_pairwise_disjoint(),
        density_sum: system.density_sum(),
        is_partition: counterexample.is_none(),
        counterexample,
    })
}
