//! The repeated-subgroup theorem for exact tilings of `Z^d` by Cartesian cosets.
//!
//! Choose the coset `j*` of maximal index. Its generating function has a pole of
//! order `d` at its principal point `p_{j*}`, but the sum `prod_i 1/(1 - x_i)` does
//! not, so another term must have an order-`d` pole there. That term's moduli are
//! multiples of `j*`'s moduli, and by maximality they are equal.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coset::{verify_partition, CosetSystem, SubgroupShape};
use crate::error::Error as CoreError;
use crate::genfun::{principal_point, term_from_coset, term_pole_order};

/// Two distinct cosets of a tiling sharing the maximal-index shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub j_star: usize,
    pub j_partner: usize,
    pub shared_shape: SubgroupShape,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("system is not an exact partition of Z^d")]
    NotPartition,

    #[error("system has a single coset; the theorem excludes this case")]
    Trivial,

    /// No other coset can cancel the pole at the principal point of `j_star`, or a
    /// canceler has a different shape. Either would be a counterexample.
    #[error("theorem violated at coset {j_star}: {reason}; system: {system:?}")]
    TheoremViolated {
        j_star: usize,
        reason: String,
        system: CosetSystem,
    },

    #[error(transparent)]
    Core(#[from] CoreError),
}

/// Index of the coset with maximal `prod_i n_i`. Ties go to the smallest moduli
/// vector, then the smallest offset vector, then the earliest position.
pub fn max_index_coset(system: &CosetSystem) -> usize {
    let cosets = system.cosets();
    (0..cosets.len())
        .min_by(|&a, &b| {
            let (ca, cb) = (&cosets[a], &cosets[b]);
            cb.index()
                .cmp(&ca.index())
                .then_with(|| ca.moduli().cmp(cb.moduli()))
                .then_with(|| ca.offset().cmp(cb.offset()))
                .then_with(|| a.cmp(&b))
        })
        .expect("coset systems are nonempty")
}

/// Every other coset whose generating function has an order-`d` pole at the
/// principal point of coset `j`, i.e. whose moduli are multiples of `j`'s.
pub fn cancelers(system: &CosetSystem, j: usize) -> Result<Vec<usize>, CoreError> {
    let shape = system.get(j)?.shape();
    Ok(system
        .cosets()
        .iter()
        .enumerate()
        .filter(|&(k, c)| k != j && shape.divides(c.shape()))
        .map(|(k, _)| k)
        .collect())
}

/// Follow the pole-cancellation argument on an exact partition and return the
/// repeated shape it forces.
pub fn witness(system: &CosetSystem, cell_budget: u64) -> Result<Witness, WitnessError> {
    if system.len() < 2 {
        return Err(WitnessError::Trivial);
    }
    if !verify_partition(system, cell_budget)?.is_partition {
        return Err(WitnessError::NotPartition);
    }
    let j_star = max_index_coset(system);
    let shape = system.cosets()[j_star].shape().clone();
    let p = principal_point(&shape);
    let full_order = system.dim();

    let candidates = cancelers(system, j_star)?;
    let violated = |reason: String| WitnessError::TheoremViolated {
        j_star,
        reason,
        system: system.clone(),
    };
    for &k in &candidates {
        let other = &system.cosets()[k];
        let order = term_pole_order(&term_from_coset(other), &p)?;
        if order != full_order {
            return Err(violated(format!(
                "canceler {k} has pole order {order} != {full_order} at the principal point"
            )));
        }
        if other.shape() != &shape {
            return Err(violated(format!(
                "canceler {k} has shape {} but the maximal shape is {shape}",
                other.shape()
            )));
        }
    }
    let j_partner = *candidates
        .first()
        .ok_or_else(|| violated("no other term has an order-d pole at the principal point".into()))?;
    Ok(Witness {
        j_star,
        j_partner,
        shared_shape: shape,
    })
}

/// The theorem as a predicate: vacuously true unless `system` is an exact partition
/// with at least two cosets; otherwise true iff every shape of maximal index occurs
/// at least twice. Uses a direct multiset count, independent of [`witness`].
pub fn theorem_check(system: &CosetSystem, cell_budget: u64) -> Result<bool, CoreError> {
    if system.len() < 2 || !verify_partition(system, cell_budget)?.is_partition {
        return Ok(true);
    }
    let mut multiplicity: BTreeMap<&SubgroupShape, usize> = BTreeMap::new();
    for c in system.cosets() {
        *multiplicity.entry(c.shape()).or_default() += 1;
    }
    let max_index = multiplicity.keys().map(|s| s.index()).max().expect("nonempty");
    Ok(multiplicity
        .iter()
        .filter(|(s, _)| s.index() == max_index)
        .all(|(_, &count)| count >= 2))
}
