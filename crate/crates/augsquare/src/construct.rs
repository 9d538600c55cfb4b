//! Building contractions and turning them into augmented designs.
//!
//! Cyclic contractions are developed from an initial block; `best_cyclic`
//! scans every translation class of initial blocks for the highest average
//! efficiency factor. `augment` applies the row/treatment switch that
//! places the check varieties, and `fill_entries` completes the layout
//! with a seeded shuffle of the test entries.

use itertools::Itertools;

use crate::designs::{AugmentedDesign, Cell, Contraction, EfficiencyReport};
use crate::rng::{shuffle, SplitMix64};
use crate::spectra::contraction_cefs;
use crate::{exec, Error, Result};

/// Develops an initial block cyclically: column `j` holds
/// `{a + j mod v}` over the block elements, and row `i` is the cyclic
/// development of the `i`-th smallest element, so rows are permutations
/// and columns are automatically distinct.
pub fn cyclic_contraction(v: usize, initial_block: &[usize]) -> Result<Contraction> {
    let k = initial_block.len();
    if k < 2 || v < 4 || k + 2 > v {
        return Err(Error::BadBlock(format!(
            "block size {k} incompatible with v = {v}"
        )));
    }
    let mut block = initial_block.to_vec();
    block.sort_unstable();
    if block[0] < 1 || block[k - 1] > v {
        return Err(Error::BadBlock("element outside 1..=v".into()));
    }
    if block.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::BadBlock("duplicate element".into()));
    }
    let rows = block
        .iter()
        .map(|&a| (0..v).map(|j| (a - 1 + j) % v + 1).collect())
        .collect();
    Contraction::new(v, k, rows)
}

/// All sorted size-`k` initial blocks containing 1, in lexicographic
/// order — one representative per translation class.
pub fn initial_blocks(v: usize, k: usize) -> Vec<Vec<usize>> {
    (2..=v)
        .combinations(k - 1)
        .map(|rest| {
            let mut block = Vec::with_capacity(k);
            block.push(1);
            block.extend(rest);
            block
        })
        .collect()
}

/// Exhaustively evaluates every cyclic contraction for `(v, k)` and
/// returns the one with the highest average efficiency factor, ties broken
/// by lexicographically smallest initial block. Disconnected candidates
/// are skipped.
pub fn best_cyclic(v: usize, k: usize) -> Result<(Contraction, EfficiencyReport)> {
    if v < 4 || k < 2 || k + 2 > v {
        return Err(Error::BadDimensions { v, k });
    }
    let blocks = initial_blocks(v, k);
    let scored = exec::map_vec(&blocks, |block| {
        let c = cyclic_contraction(v, block).expect("enumerated blocks are valid");
        contraction_cefs(&c).ok().map(|report| (c, report))
    });
    let mut best: Option<(Contraction, EfficiencyReport)> = None;
    for candidate in scored.into_iter().flatten() {
        let better = match &best {
            None => true,
            Some((_, incumbent)) => candidate.1.e > incumbent.e + 1e-12,
        };
        if better {
            best = Some(candidate);
        }
    }
    best.ok_or(Error::NoConnectedDesign)
}

/// Switches the roles of rows and treatments: check `i + 1` lands at grid
/// position `(rows[i][j] - 1, j)` for every column `j`. The remaining
/// cells are left blank.
pub fn augment(c: &Contraction) -> AugmentedDesign {
    let v = c.v();
    let mut grid = vec![Cell::Blank; v * v];
    for (i, row) in c.rows().iter().enumerate() {
        for (j, &t) in row.iter().enumerate() {
            grid[(t - 1) * v + j] = Cell::Check(i + 1);
        }
    }
    AugmentedDesign::from_grid(v, c.k(), grid).expect("switch construction yields a valid grid")
}

/// Fills the blanks with test entries `1..=v(v-k)`: blank cells are
/// enumerated row-major and the labels are assigned in seeded-shuffle
/// order, so the layout is a pure function of the seed.
pub fn fill_entries(d: &AugmentedDesign, seed: u64) -> Result<AugmentedDesign> {
    let m = d.entry_count();
    if d.blank_count() != m {
        return Err(Error::AlreadyFilled);
    }
    let mut labels: Vec<usize> = (1..=m).collect();
    shuffle(&mut labels, &mut SplitMix64::new(seed));
    let mut grid = d.grid().to_vec();
    let mut next = labels.into_iter();
    for cell in grid.iter_mut() {
        if matches!(cell, Cell::Blank) {
            *cell = Cell::Entry(next.next().expect("one label per blank"));
        }
    }
    d.with_grid(grid)
}

/// A contraction under interchange moves, with per-column occupancy for
/// O(1) validity checks. Rows stay permutations because moves swap within
/// a row; column distinctness is checked before applying.
pub(crate) struct LatinState {
    v: usize,
    k: usize,
    rows: Vec<Vec<usize>>,
    // occupied[j * v + t] : treatment t + 1 sits in column j.
    occupied: Vec<bool>,
}

impl LatinState {
    pub(crate) fn from_contraction(c: &Contraction) -> Self {
        let (v, k) = (c.v(), c.k());
        let rows = c.rows().to_vec();
        let mut occupied = vec![false; v * v];
        for row in &rows {
            for (j, &t) in row.iter().enumerate() {
                occupied[j * v + t - 1] = true;
            }
        }
        Self { v, k, rows, occupied }
    }

    pub(crate) fn to_contraction(&self) -> Contraction {
        Contraction::new(self.v, self.k, self.rows.clone())
            .expect("moves preserve contraction invariants")
    }

    /// Swaps the entries of row `i` at columns `j1`, `j2` if the result
    /// keeps both columns duplicate-free; returns whether it was applied.
    pub(crate) fn try_swap(&mut self, i: usize, j1: usize, j2: usize) -> bool {
        let v = self.v;
        let t1 = self.rows[i][j1];
        let t2 = self.rows[i][j2];
        if self.occupied[j1 * v + t2 - 1] || self.occupied[j2 * v + t1 - 1] {
            return false;
        }
        self.rows[i][j1] = t2;
        self.rows[i][j2] = t1;
        self.occupied[j1 * v + t1 - 1] = false;
        self.occupied[j2 * v + t2 - 1] = false;
        self.occupied[j1 * v + t2 - 1] = true;
        self.occupied[j2 * v + t1 - 1] = true;
        true
    }
}

/// Draws a move for the interchange neighbourhood: a uniform row and a
/// uniform ordered pair of distinct columns.
pub(crate) fn propose_move(rng: &mut SplitMix64, k: usize, v: usize) -> (usize, usize, usize) {
    let i = rng.below(k);
    let j1 = rng.below(v);
    let mut j2 = rng.below(v - 1);
    if j2 >= j1 {
        j2 += 1;
    }
    (i, j1, j2)
}

/// A seeded random contraction: a cyclic contraction on a uniform random
/// initial block, perturbed by `2v` random valid interchange moves. Used
/// as the start of each search restart and for randomized test campaigns.
pub fn random_contraction(v: usize, k: usize, seed: u64) -> Result<Contraction> {
    let mut rng = SplitMix64::new(seed);
    let c = random_contraction_with(v, k, &mut rng)?;
    Ok(c.to_contraction())
}

pub(crate) fn random_contraction_with(
    v: usize,
    k: usize,
    rng: &mut SplitMix64,
) -> Result<LatinState> {
    if v < 4 || k < 2 || k + 2 > v {
        return Err(Error::BadDimensions { v, k });
    }
    // Partial Fisher-Yates: a uniform k-subset of 1..=v.
    let mut pool: Vec<usize> = (1..=v).collect();
    for i in 0..k {
        let j = i + rng.below(v - i);
        pool.swap(i, j);
    }
    let block = &pool[..k];
    let c = cyclic_contraction(v, block).expect("random block is valid");
    let mut state = LatinState::from_contraction(&c);
    let mut applied = 0;
    let mut attempts = 0;
    while applied < 2 * v && attempts < 200 * v {
        let (i, j1, j2) = propose_move(rng, k, v);
        if state.try_swap(i, j1, j2) {
            applied += 1;
        }
        attempts += 1;
    }
    Ok(state)
}
