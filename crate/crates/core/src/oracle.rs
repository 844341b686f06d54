//! Brute-force ground truth for tiny patterns.
//!
//! Every partition of the grid is enumerated as a restricted growth string.
//! Constructibility is decided without the union-find machinery of
//! [`crate::mgta`]: the sides of all cells form a graph whose edges say "these
//! two sides must carry the same glue" (touching sides of neighbouring cells,
//! and equal sides of cells in the same part). Its connected components give
//! the least constrained glue labelling. The resulting tile system is then
//! run through the simulator, and the partition is constructible iff the
//! simulation terminates uniquely with exactly that partition.

use std::collections::VecDeque;

use thiserror::Error;

use crate::partition::{restricted_growth_strings, Partition};
use crate::pattern::ColorGrid;
use crate::sim::{simulate, SimulationResult};
use crate::tiles::{Tile, TileSystem};

/// Largest grid (in cells) the oracle accepts.
pub const MAX_CELLS: usize = 9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0} cells exceed the oracle limit of {MAX_CELLS}")]
    TooLarge(usize),
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub min_size: usize,
    pub witness: Partition,
    /// Constructible partitions refining the colour classes.
    pub count_constructible: usize,
}

/// Every partition of an `m × n` grid.
pub fn all_partitions(m: usize, n: usize) -> Result<Vec<Partition>, OracleError> {
    if m * n > MAX_CELLS {
        return Err(OracleError::TooLarge(m * n));
    }
    Ok(restricted_growth_strings(m * n)
        .map(|rgs| Partition::from_labels(m, n, &rgs).expect("valid dimensions"))
        .collect())
}

/// Least constrained tile system for `partition`, one tile per part in
/// canonical part order. Tile colours are all 0.
pub fn finest_tile_system(partition: &Partition) -> TileSystem {
    let (m, n) = (partition.width(), partition.height());
    let cells = m * n;
    // side index: cell * 4 + {0: N, 1: E, 2: S, 3: W}
    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); 4 * cells];
    let mut link = |a: usize, b: usize| {
        edges[a].push(b);
        edges[b].push(a);
    };
    for c in 0..cells {
        let (x, y) = (c % m, c / m);
        if y + 1 < n {
            link(4 * c, 4 * (c + m) + 2);
        }
        if x + 1 < m {
            link(4 * c + 1, 4 * (c + 1) + 3);
        }
    }
    for (_, members) in partition.parts() {
        for w in members.windows(2) {
            for side in 0..4 {
                link(4 * w[0] + side, 4 * w[1] + side);
            }
        }
    }

    let mut label = vec![u32::MAX; 4 * cells];
    let mut next = 0u32;
    for start in 0..4 * cells {
        if label[start] != u32::MAX {
            continue;
        }
        label[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &edges[v] {
                if label[w] == u32::MAX {
                    label[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }

    let tiles = partition
        .part_ids()
        .map(|p| Tile {
            north: label[4 * p],
            east: label[4 * p + 1],
            south: label[4 * p + 2],
            west: label[4 * p + 3],
            color: 0,
        })
        .collect();
    let seed_south = (0..m).map(|x| label[4 * x + 2]).collect();
    let seed_west = (0..n).map(|y| label[4 * (y * m) + 3]).collect();
    TileSystem {
        tiles,
        seed_south,
        seed_west,
    }
}

/// Decides constructibility by simulating the least constrained tile system.
pub fn is_constructible(partition: &Partition) -> bool {
    match simulate(&finest_tile_system(partition)) {
        SimulationResult::UniqueTerminal(asm) => asm
            .partition()
            .is_some_and(|p| p.signature() == partition.signature()),
        _ => false,
    }
}

/// Minimum number of tiles over all constructible partitions refining the
/// colour classes of `grid`.
pub fn enumerate_min_tileset(grid: &ColorGrid) -> Result<OracleResult, OracleError> {
    let colours = grid.color_partition();
    let mut best: Option<Partition> = None;
    let mut count = 0;
    for p in all_partitions(grid.width(), grid.height())? {
        if !colours.refines(&p).expect("same dimensions") || !is_constructible(&p) {
            continue;
        }
        count += 1;
        if best.as_ref().is_none_or(|b| p.num_parts() < b.num_parts()) {
            best = Some(p);
        }
    }
    // the initial partition is always constructible, so `best` is set
    let witness = best.expect("initial partition is constructible");
    Ok(OracleResult {
        min_size: witness.num_parts(),
        witness,
        count_constructible: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_colour_needs_one_tile() {
        let g = ColorGrid::from_fn(2, 2, 1, |_, _| 0).unwrap();
        let r = enumerate_min_tileset(&g).unwrap();
        assert_eq!(r.min_size, 1);
        for n in 1..=9 {
            let strip = ColorGrid::from_fn(1, n, 1, |_, _| 0).unwrap();
            assert_eq!(enumerate_min_tileset(&strip).unwrap().min_size, 1);
        }
    }

    #[test]
    fn too_large() {
        let g = ColorGrid::from_fn(5, 2, 1, |_, _| 0).unwrap();
        assert!(matches!(
            enumerate_min_tileset(&g),
            Err(OracleError::TooLarge(10))
        ));
    }

    #[test]
    fn initial_partition_is_constructible() {
        for (m, n) in [(1, 1), (2, 2), (3, 3), (2, 4)] {
            assert!(is_constructible(&Partition::initial(m, n).unwrap()));
        }
    }

    #[test]
    fn l_shape_is_not_constructible() {
        let p = Partition::from_labels(2, 2, &[1, 1, 1, 0]).unwrap();
        assert!(!is_constructible(&p));
    }

    #[test]
    fn witness_refines_colours() {
        let g = ColorGrid::parse("3 2 2\n0 1 1\n1 0 1\n").unwrap();
        let r = enumerate_min_tileset(&g).unwrap();
        assert!(g.color_partition().refines(&r.witness).unwrap());
        assert!(is_constructible(&r.witness));
        assert_eq!(r.witness.num_parts(), r.min_size);
        assert!(r.count_constructible >= 1);
    }
}
