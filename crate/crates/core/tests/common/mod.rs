#![allow(dead_code)]

use std::collections::BTreeSet;

use tilesynth::mgta::{Constructibility, GlueAssignment};
use tilesynth::oracle;
use tilesynth::partition::Partition;
use tilesynth::pattern::ColorGrid;
use tilesynth::search::{ConstraintGraphs, NodeView, SearchObserver};
use tilesynth::tiles::{Tile, TileSystem};

/// Every black/white colouring of an `m × n` grid, bit `c` of the mask giving
/// cell `c`. Single-colour masks become 1-colour grids.
pub fn all_two_colourings(m: usize, n: usize) -> Vec<ColorGrid> {
    let cells = m * n;
    (0u32..1 << cells)
        .map(|mask| {
            let bits: Vec<u32> = (0..cells).map(|c| (mask >> c) & 1).collect();
            if bits.iter().all(|&b| b == bits[0]) {
                ColorGrid::new(m, n, 1, vec![0; cells]).unwrap()
            } else {
                ColorGrid::new(m, n, 2, bits).unwrap()
            }
        })
        .collect()
}

/// Counter rows: south input is the bit below, west input the carry.
pub fn counter_system(m: usize, n: usize) -> TileSystem {
    let mut tiles = Vec::new();
    for s in 0..2 {
        for w in 0..2 {
            let bit = s ^ w;
            tiles.push(Tile {
                north: bit,
                east: s & w,
                south: s,
                west: w,
                color: bit,
            });
        }
    }
    TileSystem {
        tiles,
        seed_south: vec![0; m],
        seed_west: vec![1; n],
    }
}

/// Each cell is the XOR of its south and west neighbours.
pub fn sierpinski_system(m: usize, n: usize) -> TileSystem {
    let mut tiles = Vec::new();
    for s in 0..2 {
        for w in 0..2 {
            let out = s ^ w;
            tiles.push(Tile {
                north: out,
                east: out,
                south: s,
                west: w,
                color: out,
            });
        }
    }
    let mut seed_south = vec![0; m];
    seed_south[0] = 1;
    TileSystem {
        tiles,
        seed_south,
        seed_west: vec![0; n],
    }
}

/// Grid giving every part of `p` its own colour, numbered by part rank.
pub fn grid_of_parts(p: &Partition) -> ColorGrid {
    let sig = p.signature();
    ColorGrid::new(p.width(), p.height(), p.num_parts(), sig).unwrap()
}

/// Whether `c` keeps the two parts of `p` given by cells `a` and `b` apart.
pub fn separates(c: &Partition, a: usize, b: usize) -> bool {
    c.part_of(a) != c.part_of(b)
}

/// The explicit edge set of constraint graphs, as sorted pairs.
pub fn edge_set(g: &ConstraintGraphs) -> BTreeSet<(usize, usize)> {
    let mut edges = BTreeSet::new();
    for k in 0..g.num_colours() {
        let clique = g.clique(k);
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    edges
}

/// Records what a search visits and checks per-node invariants as it goes.
#[derive(Default)]
pub struct Recorder {
    pub signatures: Vec<Vec<u32>>,
    pub nodes: Vec<(Partition, ConstraintGraphs)>,
    pub incumbents: Vec<(TileSystem, Partition)>,
    pub special_form_violations: Vec<String>,
    pub keep_nodes: bool,
    grid: Option<ColorGrid>,
}

impl Recorder {
    pub fn new(grid: &ColorGrid, keep_nodes: bool) -> Self {
        Recorder {
            keep_nodes,
            grid: Some(grid.clone()),
            ..Default::default()
        }
    }
}

impl SearchObserver for Recorder {
    fn on_node(&mut self, node: &NodeView<'_>) {
        let p = node.partition();
        if let Err(e) = node
            .graphs()
            .check_special_form(&p, self.grid.as_ref().unwrap())
        {
            self.special_form_violations.push(e);
        }
        self.signatures.push(p.signature());
        if self.keep_nodes {
            self.nodes.push((p, node.graphs().clone()));
        }
    }

    fn on_incumbent(&mut self, system: &TileSystem, partition: &Partition, _merges: u64) {
        self.incumbents.push((system.clone(), partition.clone()));
    }
}

/// Checks that every constructible coarsening of every non-constructible
/// partition of an `m × n` grid also merges the reported conflict pair.
/// Returns the number of (partition, coarsening) pairs checked.
pub fn conflict_pair_is_forced_exhaustively(m: usize, n: usize) -> Result<usize, String> {
    let all = oracle::all_partitions(m, n).unwrap();
    let constructible: Vec<&Partition> =
        all.iter().filter(|p| oracle::is_constructible(p)).collect();
    let mut checked = 0;
    for p in &all {
        let Constructibility::Conflict(p1, p2) = GlueAssignment::build(p).constructibility() else {
            continue;
        };
        for c in &constructible {
            if c.refines(p).unwrap() {
                checked += 1;
                if separates(c, p1, p2) {
                    return Err(format!(
                        "{:?} conflict ({p1},{p2}) but coarsening {:?} separates them",
                        p.signature(),
                        c.signature()
                    ));
                }
            }
        }
    }
    Ok(checked)
}
