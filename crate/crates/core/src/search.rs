//! Exhaustive search for exact tilings of `Z^d` by cosets with bounded moduli.
//!
//! With `L = lcm(1, ..., max_n)` every candidate coset tiles the box `[0, L)^d`
//! evenly, so tilings of `Z^d` are exactly the exact covers of the box cells by
//! candidate cosets. The covers are found with Algorithm X on dancing links.

use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coset::{Coset, CosetSystem, LcmBox, SubgroupShape, DEFAULT_CELL_BUDGET};
use crate::error::{Error, Result};

/// Order in which candidate cosets are fed to the solver. Affects only speed and the
/// order of discovery, never the returned solution list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CandidateOrder {
    #[default]
    Canonical,
    Reversed,
}

/// Column selection rule for Algorithm X.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ColumnRule {
    /// Fewest remaining candidate rows.
    #[default]
    MinRemaining,
    /// First uncovered cell in box order.
    First,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchSpec {
    pub dim: usize,
    pub max_n: u64,
    pub distinct_shapes_only: bool,
    pub max_cosets: Option<usize>,
    pub exclude_trivial: bool,
    pub order: CandidateOrder,
    pub column_rule: ColumnRule,
    pub density_pruning: bool,
    pub cell_budget: u64,
    pub timeout: Option<Duration>,
    /// Worker threads for the top-level branches; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl SearchSpec {
    pub fn new(dim: usize, max_n: u64) -> Self {
        SearchSpec {
            dim,
            max_n,
            distinct_shapes_only: false,
            max_cosets: None,
            exclude_trivial: false,
            order: CandidateOrder::Canonical,
            column_rule: ColumnRule::MinRemaining,
            density_pruning: true,
            cell_budget: DEFAULT_CELL_BUDGET,
            timeout: None,
            threads: None,
        }
    }

    /// The search box `[0, lcm(1..max_n))^d`.
    pub fn search_box(&self) -> Result<LcmBox> {
        if self.dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if self.max_n == 0 {
            return Err(Error::InvalidParameter("max_n must be at least 1".into()));
        }
        let mut l = 1u64;
        for n in 1..=self.max_n {
            l = (l / l.gcd(&n)).checked_mul(n).ok_or(Error::Overflow("search box"))?;
        }
        let period = LcmBox::new(vec![l; self.dim])?;
        period.checked_volume(self.cell_budget)?;
        Ok(period)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search-tree nodes, counting the root and every selected row.
    pub nodes: u64,
    pub solutions: usize,
    pub wall_time: Duration,
    /// False when the timeout cut the search short.
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Each solution has its cosets sorted; the list itself is sorted and deduplicated.
    pub solutions: Vec<CosetSystem>,
    pub stats: SearchStats,
}

/// All canonical cosets with `1 <= n_i <= max_n`, sorted by shape then offset.
pub fn enumerate_candidates(spec: &SearchSpec) -> Result<Vec<Coset>> {
    spec.search_box()?;
    let mut shapes: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..spec.dim {
        shapes = shapes
            .into_iter()
            .flat_map(|prefix| {
                (1..=spec.max_n).map(move |n| {
                    let mut s = prefix.clone();
                    s.push(n);
                    s
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for moduli in shapes {
        let shape = SubgroupShape::new(moduli.clone())?;
        let mut offsets: Vec<Vec<u64>> = vec![vec![]];
        for &n in &moduli {
            offsets = offsets
                .into_iter()
                .flat_map(|prefix| {
                    (0..n).map(move |m| {
                        let mut o = prefix.clone();
                        o.push(m);
                        o
                    })
                })
                .collect();
        }
        for offset in offsets {
            out.push(Coset::from_parts(shape.clone(), offset)?);
        }
    }
    out.sort();
    Ok(out)
}

/// Dancing-links matrix: one column per box cell, one row per candidate coset.
#[derive(Clone)]
struct Links {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    column: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
}

const ROOT: usize = 0;

impl Links {
    fn new(columns: usize, rows: &[Vec<usize>]) -> Self {
        let header = columns + 1;
        let total = header + rows.iter().map(Vec::len).sum::<usize>();
        let mut links = Links {
            left: (0..total).collect(),
            right: (0..total).collect(),
            up: (0..total).collect(),
            down: (0..total).collect(),
            column: (0..total).collect(),
            row: vec![usize::MAX; total],
            size: vec![0; header],
        };
        for c in 0..header {
            links.left[c] = if c == 0 { columns } else { c - 1 };
            links.right[c] = if c == columns { 0 } else { c + 1 };
        }
        let mut next = header;
        for (r, cells) in rows.iter().enumerate() {
            let first = next;
            for (i, &cell) in cells.iter().enumerate() {
                let node = next;
                next += 1;
                let col = cell + 1;
                links.column[node] = col;
                links.row[node] = r;
                links.up[node] = links.up[col];
                links.down[node] = col;
                let above = links.up[col];
                links.down[above] = node;
                links.up[col] = node;
                links.size[col] += 1;
                links.left[node] = if i == 0 { node } else { node - 1 };
                links.right[node] = first;
                if i > 0 {
                    links.right[node - 1] = node;
                    links.left[first] = node;
                }
            }
        }
        links
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.column[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.column[j]] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    fn select(&mut self, node: usize) {
        let mut j = self.right[node];
        while j != node {
            self.cover(self.column[j]);
            j = self.right[j];
        }
    }

    fn unselect(&mut self, node: usize) {
        let mut j = self.left[node];
        while j != node {
            self.uncover(self.column[j]);
            j = self.left[j];
        }
    }

    fn choose_column(&self, rule: ColumnRule) -> usize {
        match rule {
            ColumnRule::First => self.right[ROOT],
            ColumnRule::MinRemaining => {
                let mut best = self.right[ROOT];
                let mut c = self.right[best];
                while c != ROOT {
                    if self.size[c] < self.size[best] {
                        best = c;
                    }
                    c = self.right[c];
                }
                best
            }
        }
    }
}

struct Solver<'a> {
    links: Links,
    spec: &'a SearchSpec,
    shape_of_row: &'a [usize],
    /// Cells covered by one coset of each shape.
    shape_size: &'a [usize],
    shape_used: Vec<bool>,
    remaining_cells: usize,
    chosen: Vec<usize>,
    solutions: Vec<Vec<usize>>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl Solver<'_> {
    fn exhausted(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if let Some(deadline) = self.deadline {
            if self.nodes % 1024 == 1 && Instant::now() >= deadline {
                self.timed_out = true;
            }
        }
        self.timed_out
    }

    fn cannot_finish(&self) -> bool {
        let slots = self
            .spec
            .max_cosets
            .map(|k| k.saturating_sub(self.chosen.len()));
        if slots == Some(0) {
            return self.remaining_cells > 0;
        }
        if !self.spec.density_pruning {
            return false;
        }
        if self.spec.distinct_shapes_only {
            let mut sizes: Vec<usize> = self
                .shape_size
                .iter()
                .zip(&self.shape_used)
                .filter(|(_, &used)| !used)
                .map(|(&s, _)| s)
                .collect();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            let capacity: usize = sizes.iter().take(slots.unwrap_or(usize::MAX)).sum();
            return capacity < self.remaining_cells;
        }
        match slots {
            Some(k) => {
                let largest = self.shape_size.iter().copied().max().unwrap_or(0);
                k.saturating_mul(largest) < self.remaining_cells
            }
            None => false,
        }
    }

    fn allowed(&self, row: usize) -> bool {
        !(self.spec.distinct_shapes_only && self.shape_used[self.shape_of_row[row]])
    }

    fn push(&mut self, node: usize) {
        let row = self.links.row[node];
        self.nodes += 1;
        self.links.select(node);
        self.chosen.push(row);
        self.shape_used[self.shape_of_row[row]] = true;
        self.remaining_cells -= self.shape_size[self.shape_of_row[row]];
    }

    fn pop(&mut self, node: usize) {
        let row = self.chosen.pop().expect("balanced push/pop");
        self.shape_used[self.shape_of_row[row]] = false;
        self.remaining_cells += self.shape_size[self.shape_of_row[row]];
        self.links.unselect(node);
    }

    fn run(&mut self) {
        if self.links.right[ROOT] == ROOT {
            self.solutions.push(self.chosen.clone());
            return;
        }
        if self.exhausted() || self.cannot_finish() {
            return;
        }
        let c = self.links.choose_column(self.spec.column_rule);
        if self.links.size[c] == 0 {
            return;
        }
        self.links.cover(c);
        let mut r = self.links.down[c];
        while r != c {
            if self.allowed(self.links.row[r]) {
                self.push(r);
                self.run();
                self.pop(r);
            }
            r = self.links.down[r];
        }
        self.links.uncover(c);
    }
}

/// Every tiling of `Z^d` by candidate cosets, deduplicated as unordered sets and
/// returned in canonical order.
pub fn search_exact_covers(spec: &SearchSpec) -> Result<SearchResult> {
    let started = Instant::now();
    let period = spec.search_box()?;
    let volume = period.checked_volume(spec.cell_budget)?;

    let mut candidates = enumerate_candidates(spec)?;
    if spec.exclude_trivial {
        candidates.retain(|c| c.moduli().iter().any(|&n| n != 1));
    }
    if spec.order == CandidateOrder::Reversed {
        candidates.reverse();
    }

    let mut shapes: Vec<&SubgroupShape> = candidates.iter().map(Coset::shape).collect();
    shapes.sort();
    shapes.dedup();
    let shape_of_row: Vec<usize> = candidates
        .iter()
        .map(|c| shapes.binary_search(&c.shape()).expect("shape listed"))
        .collect();
    let shape_size: Vec<usize> = shapes
        .iter()
        .map(|s| {
            volume
                / s.moduli()
                    .iter()
                    .map(|&n| n as usize)
                    .product::<usize>()
        })
        .collect();

    let rows: Vec<Vec<usize>> = candidates.iter().map(|c| period.cells_of(c)).collect();
    let links = Links::new(volume, &rows);
    let deadline = spec.timeout.map(|t| started + t);
    let fresh = |links: Links| Solver {
        links,
        spec,
        shape_of_row: &shape_of_row,
        shape_size: &shape_size,
        shape_used: vec![false; shapes.len()],
        remaining_cells: volume,
        chosen: Vec::new(),
        solutions: Vec::new(),
        nodes: 0,
        deadline,
        timed_out: false,
    };

    // Split the root into independent branches, one per row covering the first
    // chosen column, and explore them in parallel.
    let mut root = fresh(links);
    root.nodes = 1;
    let mut branch_rows = Vec::new();
    let mut first_column = None;
    if !root.cannot_finish() {
        let c = root.links.choose_column(spec.column_rule);
        let mut r = root.links.down[c];
        while r != c {
            branch_rows.push(r);
            r = root.links.down[r];
        }
        first_column = Some(c);
    }

    let explore = |&node: &usize| {
        let mut solver = fresh(root.links.clone());
        solver.links.cover(first_column.expect("branches imply a column"));
        if solver.allowed(solver.links.row[node]) {
            solver.push(node);
            solver.run();
        }
        (solver.solutions, solver.nodes, solver.timed_out)
    };
    let branches: Vec<(Vec<Vec<usize>>, u64, bool)> = match spec.threads {
        Some(1) => branch_rows.iter().map(explore).collect(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(|| branch_rows.par_iter().map(explore).collect()),
        None => branch_rows.par_iter().map(explore).collect(),
    };

    let mut nodes = root.nodes;
    let mut complete = true;
    let mut found: Vec<Vec<Coset>> = Vec::new();
    for (solutions, n, timed_out) in branches {
        nodes += n;
        complete &= !timed_out;
        for rows in solutions {
            let mut cosets: Vec<Coset> = rows.into_iter().map(|r| candidates[r].clone()).collect();
            cosets.sort();
            found.push(cosets);
        }
    }
    found.sort();
    found.dedup();
    let solutions = found
        .into_iter()
        .map(CosetSystem::new)
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchResult {
        stats: SearchStats {
            nodes,
            solutions: solutions.len(),
            wall_time: started.elapsed(),
            complete,
        },
        solutions,
    })
}

/// A random tiling: start from `Z^d` and repeatedly split a random coset along a
/// random axis into `q` cosets, `q` uniform in `[2, max_factor]`.
pub fn random_split_cover(dim: usize, steps: usize, max_factor: u64, seed: u64) -> Result<CosetSystem> {
    if max_factor < 2 {
        return Err(Error::InvalidParameter("max_factor must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cosets = vec![Coset::full(dim)?];
    for _ in 0..steps {
        let j = rng.random_range(0..cosets.len());
        let axis = rng.random_range(0..dim);
        let q = rng.random_range(2..=max_factor);
        let parent = cosets.remove(j);
        let n = parent.moduli()[axis];
        let mut moduli = parent.moduli().to_vec();
        moduli[axis] = n.checked_mul(q).ok_or(Error::Overflow("split modulus"))?;
        let shape = SubgroupShape::new(moduli)?;
        let children = (0..q)
            .map(|r| {
                let mut offset = parent.offset().to_vec();
                offset[axis] += r * n;
                Coset::from_parts(shape.clone(), offset)
            })
            .collect::<Result<Vec<_>>>()?;
        cosets.splice(j..j, children);
    }
    CosetSystem::new(cosets)
}
