//! Reference aTAM simulator for L-seeded tile systems at temperature 2.
//!
//! The simulator implements the general attachment rule: a tile may join an
//! empty site of `[1,m] × [1,n]` when the glues it shares with its placed
//! neighbours (seed included) sum to at least the temperature. Sites outside
//! the rectangle never have two placed neighbours, so with strength-1 glues
//! nothing can attach there and they are not modelled.
//!
//! Determinism is checked eagerly: whenever a site becomes ready, every tile
//! type is tested against it and a second candidate is reported immediately.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng as _;

use crate::partition::Partition;
use crate::pattern::ColorGrid;
use crate::rng;
use crate::tiles::{Glue, TileSystem, TEMPERATURE};

/// Tiles placed on `[1,m] × [1,n]` (the seed is implicit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembly {
    m: usize,
    n: usize,
    cells: Vec<Option<usize>>,
}

impl Assembly {
    fn empty(m: usize, n: usize) -> Self {
        Assembly {
            m,
            n,
            cells: vec![None; m * n],
        }
    }

    pub fn width(&self) -> usize {
        self.m
    }

    pub fn height(&self) -> usize {
        self.n
    }

    /// Tile index at the 1-based position `(x, y)`.
    pub fn tile_at(&self, x: usize, y: usize) -> Option<usize> {
        self.cells[(y - 1) * self.m + (x - 1)]
    }

    pub fn placed(&self) -> usize {
        self.cells.iter().flatten().count()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// The partition of the grid by tile type, if the assembly is complete.
    pub fn partition(&self) -> Option<Partition> {
        let labels: Option<Vec<usize>> = self.cells.iter().copied().collect();
        Some(Partition::from_labels(self.m, self.n, &labels?).expect("valid dimensions"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimulationResult {
    /// Every assembly sequence ends in this full assembly.
    UniqueTerminal(Assembly),
    /// Two tile types can attach at the same site of a producible assembly.
    Nondeterministic {
        x: usize,
        y: usize,
        tiles: (usize, usize),
    },
    /// Growth stopped before the rectangle was filled; `frontier` lists the
    /// empty sites bordering the assembly.
    Stuck {
        frontier: Vec<(usize, usize)>,
        assembly: Assembly,
    },
}

/// Order in which ready sites are filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthOrder {
    /// Lowest row first, then west to east.
    Canonical,
    /// Uniformly random ready site, from the given seed.
    Random(u64),
}

pub fn simulate(sys: &TileSystem) -> SimulationResult {
    simulate_with_order(sys, GrowthOrder::Canonical)
}

pub fn simulate_with_order(sys: &TileSystem, order: GrowthOrder) -> SimulationResult {
    Simulator::new(sys).run(order)
}

struct Simulator<'a> {
    sys: &'a TileSystem,
    asm: Assembly,
}

impl<'a> Simulator<'a> {
    fn new(sys: &'a TileSystem) -> Self {
        Simulator {
            sys,
            asm: Assembly::empty(sys.width(), sys.height()),
        }
    }

    fn placed_tile(&self, x: usize, y: usize) -> Option<usize> {
        if x == 0 || y == 0 || x > self.asm.m || y > self.asm.n {
            None
        } else {
            self.asm.tile_at(x, y)
        }
    }

    /// Glues facing `(x, y)` from each side: `[from north, east, south, west]`.
    fn facing(&self, x: usize, y: usize) -> [Option<Glue>; 4] {
        let tiles = &self.sys.tiles;
        let south = if y == 1 {
            Some(self.sys.seed_south[x - 1])
        } else {
            self.placed_tile(x, y - 1).map(|t| tiles[t].north)
        };
        let west = if x == 1 {
            Some(self.sys.seed_west[y - 1])
        } else {
            self.placed_tile(x - 1, y).map(|t| tiles[t].east)
        };
        let north = self.placed_tile(x, y + 1).map(|t| tiles[t].south);
        let east = self.placed_tile(x + 1, y).map(|t| tiles[t].west);
        [north, east, south, west]
    }

    fn binding_strength(&self, tile: usize, facing: &[Option<Glue>; 4]) -> u32 {
        let t = &self.sys.tiles[tile];
        [t.north, t.east, t.south, t.west]
            .iter()
            .zip(facing)
            .filter(|(g, f)| Some(**g) == **f)
            .count() as u32
    }

    /// Tiles attachable at an empty site; at most two are reported.
    fn candidates(&self, x: usize, y: usize) -> Vec<usize> {
        let facing = self.facing(x, y);
        (0..self.sys.tiles.len())
            .filter(|&t| self.binding_strength(t, &facing) >= TEMPERATURE)
            .take(2)
            .collect()
    }

    fn has_placed_neighbour(&self, x: usize, y: usize) -> bool {
        x == 1
            || y == 1
            || self.placed_tile(x - 1, y).is_some()
            || self.placed_tile(x, y - 1).is_some()
            || self.placed_tile(x + 1, y).is_some()
            || self.placed_tile(x, y + 1).is_some()
    }

    /// Recomputes whether an empty site is ready, and with which tile.
    fn update(
        &self,
        ready: &mut BTreeMap<usize, usize>,
        cell: usize,
    ) -> Result<(), SimulationResult> {
        let m = self.asm.m;
        if self.asm.cells[cell].is_some() {
            ready.remove(&cell);
            return Ok(());
        }
        let (x, y) = (cell % m + 1, cell / m + 1);
        match self.candidates(x, y)[..] {
            [] => {
                ready.remove(&cell);
            }
            [t] => {
                ready.insert(cell, t);
            }
            [a, b, ..] => {
                return Err(SimulationResult::Nondeterministic {
                    x,
                    y,
                    tiles: (a, b),
                })
            }
        }
        Ok(())
    }

    fn run(mut self, order: GrowthOrder) -> SimulationResult {
        match self.grow(order) {
            Ok(()) => {}
            Err(e) => return e,
        }
        let (m, n) = (self.asm.m, self.asm.n);
        if self.asm.is_complete() {
            return SimulationResult::UniqueTerminal(self.asm);
        }
        let frontier = (0..m * n)
            .filter(|&c| self.asm.cells[c].is_none())
            .map(|c| (c % m + 1, c / m + 1))
            .filter(|&(x, y)| self.has_placed_neighbour(x, y))
            .collect();
        SimulationResult::Stuck {
            frontier,
            assembly: self.asm,
        }
    }

    fn grow(&mut self, order: GrowthOrder) -> Result<(), SimulationResult> {
        let (m, n) = (self.asm.m, self.asm.n);
        let mut rng = match order {
            GrowthOrder::Random(seed) => Some(rng::seeded(seed)),
            GrowthOrder::Canonical => None,
        };
        // ready site (cell index, so iteration is (y, x) order) -> its tile
        let mut ready: BTreeMap<usize, usize> = BTreeMap::new();
        for cell in 0..m * n {
            if cell < m || cell % m == 0 {
                self.update(&mut ready, cell)?;
            }
        }
        while !ready.is_empty() {
            let (cell, tile) = match rng.as_mut() {
                None => ready.iter().next(),
                Some(r) => ready.iter().nth(r.gen_range(0..ready.len())),
            }
            .map(|(&c, &t)| (c, t))
            .expect("nonempty");
            ready.remove(&cell);
            self.asm.cells[cell] = Some(tile);
            let (x, y) = (cell % m + 1, cell / m + 1);
            let neighbours = [
                (x > 1).then(|| cell - 1),
                (x < m).then(|| cell + 1),
                (y > 1).then(|| cell - m),
                (y < n).then(|| cell + m),
            ];
            for nb in neighbours.into_iter().flatten() {
                self.update(&mut ready, nb)?;
            }
        }
        Ok(())
    }
}

/// Why a tile system fails to implement a pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    DimensionMismatch {
        pattern: (usize, usize),
        system: (usize, usize),
    },
    Nondeterministic {
        x: usize,
        y: usize,
        tiles: (usize, usize),
    },
    Stuck {
        frontier: Vec<(usize, usize)>,
    },
    ColourMismatch {
        x: usize,
        y: usize,
        expected: u32,
        found: u32,
    },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::DimensionMismatch { pattern, system } => write!(
                f,
                "pattern is {}x{} but the seed spans {}x{}",
                pattern.0, pattern.1, system.0, system.1
            ),
            Failure::Nondeterministic { x, y, tiles } => write!(
                f,
                "nondeterministic: tiles {} and {} both attach at ({x},{y})",
                tiles.0, tiles.1
            ),
            Failure::Stuck { frontier } => {
                write!(f, "assembly stuck; unfillable frontier sites:")?;
                for (x, y) in frontier {
                    write!(f, " ({x},{y})")?;
                }
                Ok(())
            }
            Failure::ColourMismatch {
                x,
                y,
                expected,
                found,
            } => {
                write!(
                    f,
                    "colour mismatch at ({x},{y}): expected {expected}, found {found}"
                )
            }
        }
    }
}

/// Result of checking a tile system against a pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerificationReport {
    Pass(Assembly),
    Fail(Failure),
}

impl VerificationReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, VerificationReport::Pass(_))
    }
}

/// Simulates `sys` and compares the terminal assembly's colours with `grid`.
pub fn verify_solution(sys: &TileSystem, grid: &ColorGrid) -> VerificationReport {
    let dims = (grid.width(), grid.height());
    if dims != (sys.width(), sys.height()) {
        return VerificationReport::Fail(Failure::DimensionMismatch {
            pattern: dims,
            system: (sys.width(), sys.height()),
        });
    }
    let asm = match simulate(sys) {
        SimulationResult::UniqueTerminal(asm) => asm,
        SimulationResult::Nondeterministic { x, y, tiles } => {
            return VerificationReport::Fail(Failure::Nondeterministic { x, y, tiles })
        }
        SimulationResult::Stuck { frontier, .. } => {
            return VerificationReport::Fail(Failure::Stuck { frontier })
        }
    };
    for y in 1..=grid.height() {
        for x in 1..=grid.width() {
            let tile = asm.tile_at(x, y).expect("terminal assembly is complete");
            let found = sys.tiles[tile].color;
            let expected = grid.color(x, y);
            if found != expected {
                return VerificationReport::Fail(Failure::ColourMismatch {
                    x,
                    y,
                    expected,
                    found,
                });
            }
        }
    }
    VerificationReport::Pass(asm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::Tile;

    #[test]
    fn single_tile_fills_1x1() {
        let sys = TileSystem {
            tiles: vec![Tile {
                north: 0,
                east: 0,
                south: 5,
                west: 6,
                color: 0,
            }],
            seed_south: vec![5],
            seed_west: vec![6],
        };
        match simulate(&sys) {
            SimulationResult::UniqueTerminal(a) => assert_eq!(a.placed(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shared_south_west_glues_are_nondeterministic() {
        let sys = TileSystem {
            tiles: vec![
                Tile {
                    north: 0,
                    east: 0,
                    south: 1,
                    west: 2,
                    color: 0,
                },
                Tile {
                    north: 3,
                    east: 3,
                    south: 1,
                    west: 2,
                    color: 1,
                },
            ],
            seed_south: vec![1],
            seed_west: vec![2],
        };
        assert_eq!(
            simulate(&sys),
            SimulationResult::Nondeterministic {
                x: 1,
                y: 1,
                tiles: (0, 1)
            }
        );
    }

    #[test]
    fn missing_tile_gets_stuck() {
        // one tile that reproduces its own glues, but nothing fits (2,1)
        let sys = TileSystem {
            tiles: vec![Tile {
                north: 1,
                east: 9,
                south: 1,
                west: 2,
                color: 0,
            }],
            seed_south: vec![1, 1],
            seed_west: vec![2],
        };
        match simulate(&sys) {
            SimulationResult::Stuck { frontier, assembly } => {
                assert_eq!(frontier, vec![(2, 1)]);
                assert_eq!(assembly.placed(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn verify_reports_dimension_and_colour_errors() {
        let sys = TileSystem {
            tiles: vec![Tile {
                north: 0,
                east: 0,
                south: 0,
                west: 0,
                color: 0,
            }],
            seed_south: vec![0, 0],
            seed_west: vec![0],
        };
        let one = ColorGrid::parse("1 1 1\n0\n").unwrap();
        assert!(matches!(
            verify_solution(&sys, &one),
            VerificationReport::Fail(Failure::DimensionMismatch { .. })
        ));
        let two = ColorGrid::parse("2 1 2\n0 1\n").unwrap();
        assert_eq!(
            verify_solution(&sys, &two),
            VerificationReport::Fail(Failure::ColourMismatch {
                x: 2,
                y: 1,
                expected: 1,
                found: 0
            })
        );
    }
}
