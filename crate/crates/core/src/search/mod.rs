//! Exact branch-and-bound over the partition lattice.
//!
//! The search starts at the partition into singletons and only ever combines
//! two parts of the same colour. At a node:
//!
//! * if the partition is constructible, it is a solution; its children merge
//!   every pair of same-coloured parts not forbidden by the constraint
//!   graphs, enumerated in clique-growing order (see [`ChildCursor`]);
//! * otherwise the MGTA names two parts sharing south and west glues, and
//!   every constructible coarsening merges them, so that merge is the only
//!   child. The branch ends if the pair is forbidden or spans two colours.
//!
//! A child is skipped when the sum of its graphs' clique sizes is at least
//! the size of the best solution so far. Traversal is depth-first with an
//! explicit stack; moving down merges in place, moving up undoes.

mod graphs;
mod state;

use std::fmt;
use std::num::{NonZeroU64, NonZeroUsize};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use thiserror::Error;

pub use graphs::{ChildCursor, ChildMove, ConstraintGraphs, Role};

use crate::mgta::{Constructibility, GlueAssignment};
use crate::partition::{PartId, Partition};
use crate::pattern::ColorGrid;
use crate::rng::{self, Rng};
use crate::tiles::TileSystem;
use state::SearchState;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Run until the tree is exhausted.
    Exact,
    /// Stop after this many merge operations.
    Anytime { cutoff_merges: NonZeroU64 },
}

/// Switches for the two pruning mechanisms. Both are on by default; turning
/// them off changes how much is searched, never the optimum found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pruning {
    /// Skip children whose lower bound reaches the incumbent.
    pub bound: bool,
    /// Maintain constraint graphs (forbidden merges). Without them the
    /// search visits a DAG and may see a partition more than once.
    pub graphs: bool,
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning {
            bound: true,
            graphs: true,
        }
    }
}

/// Default for [`SolveConfig::vertex_window`].
pub const DEFAULT_VERTEX_WINDOW: NonZeroUsize = match NonZeroUsize::new(2) {
    Some(w) => w,
    None => unreachable!(),
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    pub mode: Mode,
    pub rng_seed: u64,
    /// Emit a progress event every this many merges.
    pub report_every: Option<NonZeroU64>,
    pub pruning: Pruning,
    /// Child enumeration draws the next vertex from this many lowest-id
    /// isolated vertices (see [`ChildCursor`]).
    pub vertex_window: NonZeroUsize,
}

impl SolveConfig {
    pub fn exact(rng_seed: u64) -> Self {
        SolveConfig {
            mode: Mode::Exact,
            rng_seed,
            report_every: None,
            pruning: Pruning::default(),
            vertex_window: DEFAULT_VERTEX_WINDOW,
        }
    }

    /// Anytime run; a zero cutoff is rounded up to one merge.
    pub fn anytime(cutoff_merges: u64, rng_seed: u64) -> Self {
        let cutoff_merges = NonZeroU64::new(cutoff_merges).unwrap_or(NonZeroU64::MIN);
        SolveConfig {
            mode: Mode::Anytime { cutoff_merges },
            rng_seed,
            report_every: None,
            pruning: Pruning::default(),
            vertex_window: DEFAULT_VERTEX_WINDOW,
        }
    }

    pub fn cutoff(&self) -> Option<u64> {
        match self.mode {
            Mode::Exact => None,
            Mode::Anytime { cutoff_merges } => Some(cutoff_merges.get()),
        }
    }
}

/// Progress events, one text line each.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Event {
    /// A strictly smaller solution was found.
    Incumbent { merges: u64, best: usize },
    /// Periodic report.
    Progress { merges: u64, best: usize },
    Finished {
        best: usize,
        merges: u64,
        optimal: bool,
    },
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Event::Incumbent { merges, best } | Event::Progress { merges, best } => {
                write!(f, "event merges={merges} best={best}")
            }
            Event::Finished {
                best,
                merges,
                optimal,
            } => {
                write!(f, "result best={best} merges={merges} optimal={optimal}")
            }
        }
    }
}

/// An incumbent improvement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TracePoint {
    pub merges: u64,
    pub best: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub best_size: usize,
    pub best_system: TileSystem,
    pub best_partition: Partition,
    /// The whole tree was searched (no cutoff), so `best_size` is minimal.
    pub proven_optimal: bool,
    pub merges_performed: u64,
    pub nodes_visited: u64,
    pub trace: Vec<TracePoint>,
}

impl SolveResult {
    pub fn events(&self) -> impl Iterator<Item = Event> + '_ {
        self.trace
            .iter()
            .map(|t| Event::Incumbent {
                merges: t.merges,
                best: t.best,
            })
            .chain(std::iter::once(Event::Finished {
                best: self.best_size,
                merges: self.merges_performed,
                optimal: self.proven_optimal,
            }))
    }
}

/// A node as seen by a [`SearchObserver`].
pub struct NodeView<'a> {
    state: &'a SearchState,
    graphs: &'a ConstraintGraphs,
    constructible: bool,
    merges: u64,
}

impl NodeView<'_> {
    pub fn partition(&self) -> Partition {
        self.state.partition()
    }

    pub fn signature(&self) -> Vec<u32> {
        self.state.partition().signature()
    }

    pub fn num_parts(&self) -> usize {
        self.state.num_parts()
    }

    pub fn graphs(&self) -> &ConstraintGraphs {
        self.graphs
    }

    pub fn bound(&self) -> usize {
        self.graphs.lower_bound()
    }

    pub fn is_constructible(&self) -> bool {
        self.constructible
    }

    pub fn merges(&self) -> u64 {
        self.merges
    }
}

/// Hooks into a running search. All methods default to doing nothing.
pub trait SearchObserver {
    /// Called once per visited node, before its children are considered.
    fn on_node(&mut self, _node: &NodeView<'_>) {}
    /// Called with every new incumbent tile system.
    fn on_incumbent(&mut self, _system: &TileSystem, _partition: &Partition, _merges: u64) {}
    fn on_event(&mut self, _event: &Event) {}
}

/// Observer that ignores everything.
pub struct Silent;

impl SearchObserver for Silent {}

/// Incumbent size shared by several searches over the same pattern.
/// Updates only ever lower it; a stale read merely prunes less.
#[derive(Debug)]
pub struct SharedIncumbent(AtomicUsize);

impl SharedIncumbent {
    pub fn new() -> Self {
        SharedIncumbent(AtomicUsize::new(usize::MAX))
    }

    pub fn get(&self) -> usize {
        self.0.load(Ordering::Relaxed)
    }

    pub fn offer(&self, size: usize) {
        self.0.fetch_min(size, Ordering::Relaxed);
    }
}

impl Default for SharedIncumbent {
    fn default() -> Self {
        Self::new()
    }
}

pub fn solve(grid: &ColorGrid, cfg: &SolveConfig) -> SolveResult {
    solve_observed(grid, cfg, None, &mut Silent)
}

/// Runs the search, reporting to `observer` and, if given, sharing the
/// incumbent size with concurrent searches.
pub fn solve_observed<O: SearchObserver>(
    grid: &ColorGrid,
    cfg: &SolveConfig,
    shared: Option<&SharedIncumbent>,
    observer: &mut O,
) -> SolveResult {
    let mut solver = Solver {
        grid,
        cfg,
        state: SearchState::initial(grid.width(), grid.height()),
        rng: rng::seeded(cfg.rng_seed),
        merges: 0,
        nodes: 0,
        cut: false,
        best: None,
        trace: Vec::new(),
        shared,
        observer,
    };
    solver.run()
}

/// Runs one search per seed in parallel with a shared incumbent and returns
/// the best outcome (earliest seed on ties). The combined result is optimal
/// if any run exhausted its tree.
pub fn solve_portfolio(grid: &ColorGrid, cfg: &SolveConfig, seeds: &[u64]) -> Option<SolveResult> {
    let shared = SharedIncumbent::new();
    let results: Vec<SolveResult> = seeds
        .par_iter()
        .map(|&seed| {
            let cfg = SolveConfig {
                rng_seed: seed,
                ..cfg.clone()
            };
            solve_observed(grid, &cfg, Some(&shared), &mut Silent)
        })
        .collect();
    let optimal = results.iter().any(|r| r.proven_optimal);
    let mut best = results
        .into_iter()
        .reduce(|a, b| if b.best_size < a.best_size { b } else { a })?;
    best.proven_optimal = optimal;
    Some(best)
}

struct Incumbent {
    size: usize,
    system: TileSystem,
    partition: Partition,
}

struct Solver<'a, O> {
    grid: &'a ColorGrid,
    cfg: &'a SolveConfig,
    state: SearchState,
    rng: Rng,
    merges: u64,
    nodes: u64,
    cut: bool,
    best: Option<Incumbent>,
    trace: Vec<TracePoint>,
    shared: Option<&'a SharedIncumbent>,
    observer: &'a mut O,
}

impl<O: SearchObserver> Solver<'_, O> {
    fn run(&mut self) -> SolveResult {
        let root = ConstraintGraphs::edgeless(
            &Partition::initial(self.grid.width(), self.grid.height()).expect("valid grid"),
            self.grid,
        );
        let mut stack: Vec<(usize, ChildCursor)> = Vec::new();
        if let Some(cursor) = self.enter(root) {
            stack.push((self.state.mark(), cursor));
        }
        while let Some((mark, cursor)) = stack.last_mut() {
            let mark = *mark;
            let next = cursor.next_move(&mut self.rng);
            let Some(mv) = next else {
                stack.pop();
                self.state.undo_to(mark);
                continue;
            };
            if self.cfg.pruning.bound && cursor.bound() >= self.incumbent_size() {
                stack.pop();
                self.state.undo_to(mark);
                continue;
            }
            let child_graphs = if self.cfg.pruning.graphs {
                Some(cursor.child_graphs(&mv))
            } else {
                None
            };
            if !self.take_budget() {
                break;
            }
            let child_mark = self.state.mark();
            self.state.merge(mv.vertex, mv.partner);
            self.count_merge();
            let graphs = child_graphs.unwrap_or_else(|| self.edgeless_graphs());
            match self.enter(graphs) {
                Some(c) => stack.push((child_mark, c)),
                None => self.state.undo_to(child_mark),
            }
            if self.cut {
                break;
            }
        }
        let best = self.best.take().expect("the root is always a solution");
        let proven_optimal = !self.cut;
        self.observer.on_event(&Event::Finished {
            best: best.size,
            merges: self.merges,
            optimal: proven_optimal,
        });
        SolveResult {
            best_size: best.size,
            best_system: best.system,
            best_partition: best.partition,
            proven_optimal,
            merges_performed: self.merges,
            nodes_visited: self.nodes,
            trace: std::mem::take(&mut self.trace),
        }
    }

    fn incumbent_size(&self) -> usize {
        let own = self.best.as_ref().map_or(usize::MAX, |b| b.size);
        self.shared.map_or(own, |s| own.min(s.get()))
    }

    /// Reserves one merge against the cutoff.
    fn take_budget(&mut self) -> bool {
        if let Some(cutoff) = self.cfg.cutoff() {
            if self.merges >= cutoff {
                self.cut = true;
                return false;
            }
        }
        true
    }

    fn count_merge(&mut self) {
        self.merges += 1;
        if let Some(every) = self.cfg.report_every {
            if self.merges.is_multiple_of(every.get()) {
                let best = self.best.as_ref().map_or(usize::MAX, |b| b.size);
                self.observer.on_event(&Event::Progress {
                    merges: self.merges,
                    best,
                });
            }
        }
    }

    fn edgeless_graphs(&self) -> ConstraintGraphs {
        ConstraintGraphs::edgeless(&self.state.partition(), self.grid)
    }

    fn colour(&self, part: PartId) -> usize {
        self.grid.color_of_cell(part) as usize
    }

    /// Visits the node reached by the last merge: follows forced merges
    /// until the partition is constructible, records it as a solution, and
    /// returns a cursor over its children (or `None` if the branch ends).
    fn enter(&mut self, mut graphs: ConstraintGraphs) -> Option<ChildCursor> {
        loop {
            self.nodes += 1;
            let conflict = self.state.conflict();
            self.observer.on_node(&NodeView {
                state: &self.state,
                graphs: &graphs,
                constructible: conflict.is_none(),
                merges: self.merges,
            });
            let Some((p1, p2)) = conflict else { break };
            let colour = self.colour(p1);
            if colour != self.colour(p2) || graphs.has_edge(colour, p1, p2) {
                return None;
            }
            if !self.take_budget() {
                return None;
            }
            self.state.merge(p1, p2);
            self.count_merge();
            graphs.merge(colour, p1, p2);
        }

        let size = self.state.num_parts();
        if size < self.best.as_ref().map_or(usize::MAX, |b| b.size) {
            self.record(size);
        }
        if self.cfg.pruning.bound && graphs.lower_bound() >= self.incumbent_size() {
            return None;
        }
        Some(ChildCursor::new(graphs, self.cfg.vertex_window))
    }

    fn record(&mut self, size: usize) {
        let partition = self.state.partition();
        let system = GlueAssignment::build(&partition)
            .extract_tas(self.grid)
            .expect("constructible same-colour partitions yield tile systems");
        debug_assert_eq!(system.tiles.len(), size);
        self.trace.push(TracePoint {
            merges: self.merges,
            best: size,
        });
        if let Some(shared) = self.shared {
            shared.offer(size);
        }
        self.observer.on_incumbent(&system, &partition, self.merges);
        self.observer.on_event(&Event::Incumbent {
            merges: self.merges,
            best: size,
        });
        self.best = Some(Incumbent {
            size,
            system,
            partition,
        });
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("node partition is not constructible")]
    NotConstructible,
    #[error("node partition is constructible; it has no forced child")]
    Constructible,
    #[error("node partition does not refine the colour classes")]
    NotRefining,
}

/// A search node as a value: the MGTA (which owns the partition) plus the
/// constraint graphs.
#[derive(Clone, Debug)]
pub struct SearchNode {
    pub mgta: GlueAssignment,
    pub graphs: ConstraintGraphs,
}

impl SearchNode {
    pub fn root(grid: &ColorGrid) -> Self {
        let p = Partition::initial(grid.width(), grid.height()).expect("valid grid");
        SearchNode {
            graphs: ConstraintGraphs::edgeless(&p, grid),
            mgta: GlueAssignment::build(&p),
        }
    }

    pub fn partition(&self) -> &Partition {
        self.mgta.partition()
    }

    pub fn bound(&self) -> usize {
        self.graphs.lower_bound()
    }

    /// The node obtained by merging `pair` and adopting `graphs`.
    pub fn child(&self, pair: (PartId, PartId), graphs: ConstraintGraphs) -> SearchNode {
        SearchNode {
            mgta: self
                .mgta
                .merge_tiles(pair.0, pair.1)
                .expect("pair names two live parts"),
            graphs,
        }
    }
}

/// A child of a constructible node.
#[derive(Clone, Debug)]
pub struct Child {
    pub pair: (PartId, PartId),
    pub colour: usize,
    pub graphs: ConstraintGraphs,
}

impl Child {
    pub fn bound(&self) -> usize {
        self.graphs.lower_bound()
    }
}

/// `Σ_k max(1, |clique_k|)`.
pub fn lower_bound(graphs: &ConstraintGraphs) -> usize {
    graphs.lower_bound()
}

/// All children of a constructible node, in visiting order, drawing
/// vertices with [`DEFAULT_VERTEX_WINDOW`].
pub fn enumerate_children(
    node: &SearchNode,
    grid: &ColorGrid,
    rng: &mut Rng,
) -> Result<Vec<Child>, SearchError> {
    if node.mgta.constructibility() != Constructibility::Constructible {
        return Err(SearchError::NotConstructible);
    }
    if !grid
        .color_partition()
        .refines(node.partition())
        .unwrap_or(false)
    {
        return Err(SearchError::NotRefining);
    }
    let mut cursor = ChildCursor::new(node.graphs.clone(), DEFAULT_VERTEX_WINDOW);
    let mut out = Vec::new();
    while let Some(mv) = cursor.next_move(rng) {
        out.push(Child {
            pair: mv.pair(),
            colour: mv.colour,
            graphs: cursor.child_graphs(&mv),
        });
    }
    Ok(out)
}

/// The single child of a non-constructible node, or `None` if the branch
/// ends there because the conflicting parts may not be merged.
pub fn forced_child(node: &SearchNode, grid: &ColorGrid) -> Result<Option<Child>, SearchError> {
    let Constructibility::Conflict(p1, p2) = node.mgta.constructibility() else {
        return Err(SearchError::Constructible);
    };
    let colour = grid.color_of_cell(p1) as usize;
    if colour != grid.color_of_cell(p2) as usize || node.graphs.has_edge(colour, p1, p2) {
        return Ok(None);
    }
    let mut graphs = node.graphs.clone();
    graphs.merge(colour, p1, p2);
    Ok(Some(Child {
        pair: (p1, p2),
        colour,
        graphs,
    }))
}
