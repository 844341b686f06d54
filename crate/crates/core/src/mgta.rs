//! Most general tile assignments (MGTAs).
//!
//! Every part of a partition gets one tile type; each of its four sides is a
//! *slot*. Glues are equivalence classes of slots, kept in a union-find
//! forest: adjacent cells force the facing slots of their parts into one
//! class, and nothing else is identified. Class ids are canonicalized on
//! demand by first occurrence over parts in canonical order, sides in the
//! order N, E, S, W, so two assignments for the same partition compare equal
//! exactly when they are the same up to glue relabeling.
//!
//! A partition is constructible iff no two distinct parts share both their
//! south and west glues: then the tile set is deterministic, and since equal
//! tiles would share those glues too, it is also injective.

use std::collections::HashMap;

use thiserror::Error;

use crate::partition::{PartId, Partition, PartitionError};
use crate::pattern::ColorGrid;
use crate::tiles::{Tile, TileSystem};
use crate::union_find::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    N = 0,
    E = 1,
    S = 2,
    W = 3,
}

pub const DIRS: [Dir; 4] = [Dir::N, Dir::E, Dir::S, Dir::W];

/// Slot index of side `dir` of `part`.
#[inline]
pub fn slot(part: PartId, dir: Dir) -> usize {
    part * 4 + dir as usize
}

/// Two horizontally or vertically adjacent cells (cell indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjacency {
    /// `north` lies directly above `south`.
    Vertical { south: usize, north: usize },
    /// `east` lies directly right of `west`.
    Horizontal { west: usize, east: usize },
}

impl Adjacency {
    /// The two slots this adjacency forces to carry the same glue.
    pub fn slots(self, partition: &Partition) -> (usize, usize) {
        match self {
            Adjacency::Vertical { south, north } => (
                slot(partition.part_of(south), Dir::N),
                slot(partition.part_of(north), Dir::S),
            ),
            Adjacency::Horizontal { west, east } => (
                slot(partition.part_of(west), Dir::E),
                slot(partition.part_of(east), Dir::W),
            ),
        }
    }
}

/// All `(m-1)n + m(n-1)` adjacencies of the grid, in cell order.
pub fn adjacencies(m: usize, n: usize) -> Vec<Adjacency> {
    let mut out = Vec::with_capacity(2 * m * n);
    for y in 0..n {
        for x in 0..m {
            let c = y * m + x;
            if y + 1 < n {
                out.push(Adjacency::Vertical {
                    south: c,
                    north: c + m,
                });
            }
            if x + 1 < m {
                out.push(Adjacency::Horizontal {
                    west: c,
                    east: c + 1,
                });
            }
        }
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MgtaError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("partition is not constructible: parts {0} and {1} share south and west glues")]
    NotConstructible(PartId, PartId),
    #[error("part {0} contains cells of different colours")]
    MixedColours(PartId),
    #[error("pattern is {0}x{1} but the partition is {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
}

/// Outcome of the constructibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constructibility {
    Constructible,
    /// Two distinct parts whose tiles share south and west glues.
    Conflict(PartId, PartId),
}

/// The MGTA of a partition.
#[derive(Clone, Debug)]
pub struct GlueAssignment {
    partition: Partition,
    classes: UnionFind,
}

impl GlueAssignment {
    /// Builds the MGTA of `partition`, processing adjacencies in cell order.
    pub fn build(partition: &Partition) -> Self {
        let adj = adjacencies(partition.width(), partition.height());
        Self::build_with_order(partition, &adj)
    }

    /// Builds the MGTA processing the given adjacencies in the given order.
    pub fn build_with_order(partition: &Partition, order: &[Adjacency]) -> Self {
        let mut classes = UnionFind::new(4 * partition.num_cells());
        for &a in order {
            let (s1, s2) = a.slots(partition);
            classes.union(s1, s2);
        }
        GlueAssignment {
            partition: partition.clone(),
            classes,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// The MGTA of the partition with parts `p1` and `p2` combined.
    pub fn merge_tiles(&self, p1: PartId, p2: PartId) -> Result<Self, MgtaError> {
        let partition = self.partition.merge(p1, p2)?;
        let mut classes = self.classes.clone();
        for d in DIRS {
            classes.union(slot(p1, d), slot(p2, d));
        }
        Ok(GlueAssignment { partition, classes })
    }

    /// Canonical glues `[N, E, S, W]` of every part, in canonical part order.
    pub fn canonical_glues(&self) -> Vec<[u32; 4]> {
        let mut ids: HashMap<usize, u32> = HashMap::new();
        self.partition
            .part_ids()
            .map(|p| {
                DIRS.map(|d| {
                    let root = self.classes.find_const(slot(p, d));
                    let next = ids.len() as u32;
                    *ids.entry(root).or_insert(next)
                })
            })
            .collect()
    }

    /// Number of distinct glues used by the tile set.
    pub fn num_glues(&self) -> usize {
        self.canonical_glues()
            .iter()
            .flatten()
            .max()
            .map_or(0, |&g| g as usize + 1)
    }

    /// Canonical glue of one side of a part.
    pub fn glue(&self, part: PartId, dir: Dir) -> Option<u32> {
        let rank = self.partition.rank_of(part)?;
        Some(self.canonical_glues()[rank][dir as usize])
    }

    /// Looks for two distinct parts sharing south and west glues. Parts are
    /// scanned in canonical order; the reported pair is the first part to
    /// repeat an earlier part's (S, W) glues, together with that earlier part.
    pub fn constructibility(&self) -> Constructibility {
        let mut seen: HashMap<(usize, usize), PartId> =
            HashMap::with_capacity(self.partition.num_parts());
        for p in self.partition.part_ids() {
            let key = (
                self.classes.find_const(slot(p, Dir::S)),
                self.classes.find_const(slot(p, Dir::W)),
            );
            if let Some(&q) = seen.get(&key) {
                return Constructibility::Conflict(q, p);
            }
            seen.insert(key, p);
        }
        Constructibility::Constructible
    }

    /// The tile system realizing this assignment on `grid`: one tile per
    /// part (ids in canonical part order), plus seed glues that make the
    /// westernmost and southernmost tiles fall into place.
    pub fn extract_tas(&self, grid: &ColorGrid) -> Result<TileSystem, MgtaError> {
        let p = &self.partition;
        if grid.width() != p.width() || grid.height() != p.height() {
            return Err(MgtaError::DimensionMismatch(
                grid.width(),
                grid.height(),
                p.width(),
                p.height(),
            ));
        }
        if let Constructibility::Conflict(a, b) = self.constructibility() {
            return Err(MgtaError::NotConstructible(a, b));
        }
        let glues = self.canonical_glues();
        let mut tiles = Vec::with_capacity(glues.len());
        for ((id, cells), g) in p.parts().zip(&glues) {
            let color = grid.color_of_cell(id);
            if cells.iter().any(|&c| grid.color_of_cell(c) != color) {
                return Err(MgtaError::MixedColours(id));
            }
            tiles.push(Tile {
                north: g[0],
                east: g[1],
                south: g[2],
                west: g[3],
                color,
            });
        }
        let rank = |cell: usize| p.rank_of(p.part_of(cell)).expect("cell belongs to a part");
        let m = p.width();
        let seed_south = (0..m).map(|x| tiles[rank(x)].south).collect();
        let seed_west = (0..p.height()).map(|y| tiles[rank(y * m)].west).collect();
        Ok(TileSystem {
            tiles,
            seed_south,
            seed_west,
        })
    }
}

impl PartialEq for GlueAssignment {
    fn eq(&self, other: &Self) -> bool {
        self.partition == other.partition && self.canonical_glues() == other.canonical_glues()
    }
}
