#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tiling_core::{random_split_cover, Coset, CosetSystem};

pub fn coset(n: &[u64], m: &[i64]) -> Coset {
    Coset::new(n.to_vec(), m).unwrap()
}

pub fn system(cosets: &[(&[u64], &[i64])]) -> CosetSystem {
    CosetSystem::new(cosets.iter().map(|(n, m)| coset(n, m)).collect()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Period box computed independently of the library.
pub fn period(system: &CosetSystem) -> Vec<u64> {
    (0..system.dim())
        .map(|i| system.cosets().iter().fold(1, |l, c| lcm(l, c.moduli()[i])))
        .collect()
}

pub fn volume(lengths: &[u64]) -> u64 {
    lengths.iter().product()
}

/// All cells of a box in lexicographic order.
pub fn cells(lengths: &[u64]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for &l in lengths {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..l as i64).map(move |z| {
                    let mut q = p.clone();
                    q.push(z);
                    q
                })
            })
            .collect();
    }
    out
}

/// Number of cosets containing each box cell, by direct membership tests.
pub fn brute_cover_counts(system: &CosetSystem) -> Vec<(Vec<i64>, usize)> {
    cells(&period(system))
        .into_iter()
        .map(|z| {
            let k = system.cosets().iter().filter(|c| c.contains(&z).unwrap()).count();
            (z, k)
        })
        .collect()
}

pub fn brute_is_partition(system: &CosetSystem) -> bool {
    brute_cover_counts(system).iter().all(|(_, k)| *k == 1)
}

/// A random coset with moduli in `1..=max_n`.
pub fn random_coset(rng: &mut ChaCha8Rng, dim: usize, max_n: u64) -> Coset {
    let n: Vec<u64> = (0..dim).map(|_| rng.random_range(1..=max_n)).collect();
    let m: Vec<i64> = (0..dim).map(|_| rng.random_range(-20..20)).collect();
    Coset::new(n, &m).unwrap()
}

/// Random test systems: split covers, perturbed split covers, and random coset lists,
/// all with period boxes of at most `max_volume` cells.
pub fn random_system(rng: &mut ChaCha8Rng, max_volume: u64) -> CosetSystem {
    loop {
        let dim = rng.random_range(1..=3);
        let kind = rng.random_range(0..3);
        let s = match kind {
            0 | 1 => {
                let steps = rng.random_range(0..=8);
                let base = random_split_cover(dim, steps, 3, rng.random()).unwrap();
                if kind == 0 {
                    base
                } else {
                    perturb(rng, &base)
                }
            }
            _ => {
                let k = rng.random_range(1..=6);
                CosetSystem::new((0..k).map(|_| random_coset(rng, dim, 6)).collect()).unwrap()
            }
        };
        if volume(&period(&s)) <= max_volume {
            return s;
        }
    }
}

/// Shift one offset of one coset, or drop or duplicate a coset.
pub fn perturb(rng: &mut ChaCha8Rng, s: &CosetSystem) -> CosetSystem {
    let mut cosets = s.cosets().to_vec();
    let j = rng.random_range(0..cosets.len());
    match rng.random_range(0..3) {
        0 => {
            let c = &cosets[j];
            let axis = rng.random_range(0..c.dim());
            let mut m: Vec<i64> = c.offset().iter().map(|&m| m as i64).collect();
            m[axis] += rng.random_range(1..=3);
            cosets[j] = Coset::new(c.moduli().to_vec(), &m).unwrap();
        }
        1 if cosets.len() > 1 => {
            cosets.remove(j);
        }
        _ => {
            let c = cosets[j].clone();
            cosets.push(c);
        }
    }
    CosetSystem::new(cosets).unwrap()
}
