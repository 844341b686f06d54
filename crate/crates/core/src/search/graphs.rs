//! Per-colour constraint graphs.
//!
//! An edge between two parts of one colour forbids merging them anywhere in
//! the current branch. The search only ever builds graphs made of one clique
//! plus isolated vertices, so a graph is stored as its clique and its
//! isolated vertices, and its chromatic number is the clique size.

use std::num::NonZeroUsize;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::partition::{PartId, Partition};
use crate::pattern::ColorGrid;
use crate::rng::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Clique,
    Isolated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintGraphs {
    clique: Vec<Vec<PartId>>,
    isolated: Vec<Vec<PartId>>,
}

impl ConstraintGraphs {
    /// Edgeless graphs over the parts of `partition`, grouped by colour.
    pub fn edgeless(partition: &Partition, grid: &ColorGrid) -> Self {
        let k = grid.num_colours();
        let mut isolated = vec![Vec::new(); k];
        for p in partition.part_ids() {
            isolated[grid.color_of_cell(p) as usize].push(p);
        }
        ConstraintGraphs {
            clique: vec![Vec::new(); k],
            isolated,
        }
    }

    /// Builds graphs from explicit cliques and isolated sets.
    pub fn from_parts(clique: Vec<Vec<PartId>>, isolated: Vec<Vec<PartId>>) -> Self {
        assert_eq!(clique.len(), isolated.len());
        ConstraintGraphs { clique, isolated }
    }

    pub fn num_colours(&self) -> usize {
        self.clique.len()
    }

    pub fn clique(&self, colour: usize) -> &[PartId] {
        &self.clique[colour]
    }

    pub fn isolated(&self, colour: usize) -> &[PartId] {
        &self.isolated[colour]
    }

    /// Sum over colours of the chromatic number, `max(1, |clique|)`.
    pub fn lower_bound(&self) -> usize {
        self.clique.iter().map(|c| c.len().max(1)).sum()
    }

    pub fn role(&self, colour: usize, part: PartId) -> Option<Role> {
        if self.clique[colour].contains(&part) {
            Some(Role::Clique)
        } else if self.isolated[colour].contains(&part) {
            Some(Role::Isolated)
        } else {
            None
        }
    }

    /// Whether `{a, b}` is an edge, i.e. both lie in the clique.
    pub fn has_edge(&self, colour: usize, a: PartId, b: PartId) -> bool {
        a != b && self.clique[colour].contains(&a) && self.clique[colour].contains(&b)
    }

    /// Contracts the non-adjacent vertices `a` and `b` into `min(a, b)`.
    /// The merged vertex is in the clique iff one of them was.
    pub fn merge(&mut self, colour: usize, a: PartId, b: PartId) {
        let merged = a.min(b);
        let (ra, rb) = (self.role(colour, a), self.role(colour, b));
        match (ra, rb) {
            (Some(Role::Isolated), Some(Role::Isolated)) => {
                let iso = &mut self.isolated[colour];
                iso.retain(|&p| p != a && p != b);
                iso.push(merged);
            }
            (Some(Role::Clique), Some(Role::Isolated))
            | (Some(Role::Isolated), Some(Role::Clique)) => {
                let (in_clique, lone) = if ra == Some(Role::Clique) {
                    (a, b)
                } else {
                    (b, a)
                };
                self.isolated[colour].retain(|&p| p != lone);
                for p in &mut self.clique[colour] {
                    if *p == in_clique {
                        *p = merged;
                    }
                }
            }
            _ => panic!("cannot merge {a} and {b} in colour {colour}: {ra:?}, {rb:?}"),
        }
    }

    /// Checks that the vertices of each colour are exactly that colour's
    /// parts, split without overlap into clique and isolated vertices.
    pub fn check_special_form(
        &self,
        partition: &Partition,
        grid: &ColorGrid,
    ) -> Result<(), String> {
        if self.num_colours() != grid.num_colours() {
            return Err(format!(
                "{} graphs for {} colours",
                self.num_colours(),
                grid.num_colours()
            ));
        }
        for k in 0..self.num_colours() {
            let mut vertices: Vec<PartId> = self.clique[k]
                .iter()
                .chain(&self.isolated[k])
                .copied()
                .collect();
            vertices.sort_unstable();
            let mut expected: Vec<PartId> = partition
                .part_ids()
                .filter(|&p| grid.color_of_cell(p) as usize == k)
                .collect();
            expected.sort_unstable();
            if vertices != expected {
                return Err(format!(
                    "colour {k}: vertices {vertices:?} but parts {expected:?}"
                ));
            }
        }
        Ok(())
    }
}

/// One child of a constructible node: merge `pair` (of colour `colour`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChildMove {
    pub colour: usize,
    /// The isolated vertex joining the clique this round.
    pub vertex: PartId,
    /// The clique vertex it is merged with.
    pub partner: PartId,
}

impl ChildMove {
    pub fn pair(&self) -> (PartId, PartId) {
        (self.vertex, self.partner)
    }
}

#[derive(Clone, Debug)]
struct Round {
    colour: usize,
    vertex: PartId,
    partners: Vec<PartId>,
}

/// Enumerates the children of a constructible node in clique-growing order.
///
/// Working copies `H` of the node's graphs start equal to them. Each round
/// picks an isolated vertex `v` of `H`, emits the pairs `{v, u}` for every
/// clique vertex `u` of its colour (in random order), then moves `v` into
/// the clique. The child for pair `j` sees every earlier pair as an edge;
/// after contracting `{v, u}` the merged vertex takes `u`'s place in the
/// clique.
///
/// `v` is drawn uniformly from the `window` isolated vertices (over all
/// colours) with the smallest ids. Small ids are cells near the seed, so a
/// small window roughly follows the direction of growth; `usize::MAX` makes
/// the choice uniform.
#[derive(Clone, Debug)]
pub struct ChildCursor {
    work: ConstraintGraphs,
    round: Option<Round>,
    window: usize,
}

impl ChildCursor {
    pub fn new(graphs: ConstraintGraphs, window: NonZeroUsize) -> Self {
        ChildCursor {
            work: graphs,
            round: None,
            window: window.get(),
        }
    }

    /// Lower bound for the next child emitted (non-decreasing).
    pub fn bound(&self) -> usize {
        self.work.lower_bound()
    }

    pub fn next_move(&mut self, rng: &mut Rng) -> Option<ChildMove> {
        loop {
            if let Some(round) = &mut self.round {
                if let Some(partner) = round.partners.pop() {
                    return Some(ChildMove {
                        colour: round.colour,
                        vertex: round.vertex,
                        partner,
                    });
                }
                let (colour, vertex) = (round.colour, round.vertex);
                self.work.clique[colour].push(vertex);
                self.round = None;
            }
            let mut open: Vec<(PartId, usize)> = self
                .work
                .isolated
                .iter()
                .enumerate()
                .flat_map(|(k, iso)| iso.iter().map(move |&p| (p, k)))
                .collect();
            if open.is_empty() {
                return None;
            }
            let w = self.window.min(open.len());
            if w < open.len() {
                open.select_nth_unstable(w - 1);
                open.truncate(w);
            }
            open.sort_unstable();
            let (vertex, colour) = open[rng.gen_range(0..w)];
            let iso = &mut self.work.isolated[colour];
            let at = iso
                .iter()
                .position(|&p| p == vertex)
                .expect("vertex is isolated");
            iso.swap_remove(at);
            let mut partners = self.work.clique[colour].clone();
            partners.shuffle(rng);
            self.round = Some(Round {
                colour,
                vertex,
                partners,
            });
        }
    }

    /// Graphs of the child produced by `mv`, which must be the move most
    /// recently returned by [`ChildCursor::next_move`].
    pub fn child_graphs(&self, mv: &ChildMove) -> ConstraintGraphs {
        let mut g = self.work.clone();
        let merged = mv.vertex.min(mv.partner);
        for p in &mut g.clique[mv.colour] {
            if *p == mv.partner {
                *p = merged;
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    fn grid_2x2() -> ColorGrid {
        // colour 1 on three cells, colour 0 on (2,2)
        ColorGrid::new(2, 2, 2, vec![1, 1, 1, 0]).unwrap()
    }

    #[test]
    fn root_bound_is_number_of_colours() {
        let g = grid_2x2();
        let graphs = ConstraintGraphs::edgeless(&Partition::initial(2, 2).unwrap(), &g);
        assert_eq!(graphs.lower_bound(), 2);
        let sized = ConstraintGraphs::from_parts(
            vec![vec![0, 1, 2], vec![3, 4, 5, 6]],
            vec![vec![], vec![]],
        );
        assert_eq!(sized.lower_bound(), 7);
    }

    #[test]
    fn root_children_of_2x2() {
        let g = grid_2x2();
        let graphs = ConstraintGraphs::edgeless(&Partition::initial(2, 2).unwrap(), &g);
        let mut cursor = ChildCursor::new(graphs, NonZeroUsize::MAX);
        let mut rng = rng::seeded(3);
        let mut pairs = Vec::new();
        while let Some(mv) = cursor.next_move(&mut rng) {
            assert_eq!(g.color_of_cell(mv.vertex), g.color_of_cell(mv.partner));
            let (a, b) = mv.pair();
            pairs.push((a.min(b), a.max(b)));
        }
        pairs.sort();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn merge_keeps_special_form() {
        let mut g = ConstraintGraphs::from_parts(vec![vec![2, 5]], vec![vec![0, 7, 9]]);
        g.merge(0, 7, 0);
        assert_eq!(g.isolated(0), &[9, 0]);
        g.merge(0, 5, 9);
        assert_eq!(g.clique(0), &[2, 5]);
        assert_eq!(g.isolated(0), &[0]);
        g.merge(0, 0, 2);
        assert_eq!(g.clique(0), &[0, 5]);
        assert!(g.isolated(0).is_empty());
        assert!(g.has_edge(0, 0, 5));
    }

    #[test]
    #[should_panic]
    fn merging_clique_vertices_panics() {
        let mut g = ConstraintGraphs::from_parts(vec![vec![2, 5]], vec![vec![]]);
        g.merge(0, 2, 5);
    }
}
