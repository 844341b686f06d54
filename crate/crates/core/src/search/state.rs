//! Mutable partition + glue state with an undo log, owned by one search.

use std::collections::HashMap;

use crate::mgta::{adjacencies, slot, Adjacency, Dir, DIRS};
use crate::partition::{PartId, Partition};
use crate::union_find::UndoUnionFind;

#[derive(Clone, Copy, Debug)]
struct MergeRecord {
    keep: u32,
    gone: u32,
    keep_len: u32,
    uf_mark: usize,
}

/// The current partition and its MGTA, updated in place by [`merge`] and
/// restored by [`undo_to`].
///
/// [`merge`]: SearchState::merge
/// [`undo_to`]: SearchState::undo_to
#[derive(Debug)]
pub(crate) struct SearchState {
    m: usize,
    n: usize,
    part_of: Vec<u32>,
    // cells of each part (by id); only meaningful for live parts
    members: Vec<Vec<u32>>,
    num_parts: usize,
    slots: UndoUnionFind,
    log: Vec<MergeRecord>,
    seen: HashMap<(u32, u32), u32>,
}

impl SearchState {
    /// The initial partition with its MGTA.
    pub fn initial(m: usize, n: usize) -> Self {
        let cells = m * n;
        let mut slots = UndoUnionFind::new(4 * cells);
        for a in adjacencies(m, n) {
            // singletons: part id == cell index
            let (s1, s2) = match a {
                Adjacency::Vertical { south, north } => (slot(south, Dir::N), slot(north, Dir::S)),
                Adjacency::Horizontal { west, east } => (slot(west, Dir::E), slot(east, Dir::W)),
            };
            slots.union(s1, s2);
        }
        SearchState {
            m,
            n,
            part_of: (0..cells as u32).collect(),
            members: (0..cells as u32).map(|c| vec![c]).collect(),
            num_parts: cells,
            slots,
            log: Vec::new(),
            seen: HashMap::with_capacity(cells),
        }
    }

    pub fn num_parts(&self) -> usize {
        self.num_parts
    }

    pub fn mark(&self) -> usize {
        self.log.len()
    }

    /// Combines parts `a` and `b` (both live, distinct) into `min(a, b)` and
    /// merges their tiles.
    pub fn merge(&mut self, a: PartId, b: PartId) {
        debug_assert!(a != b && self.part_of[a] as usize == a && self.part_of[b] as usize == b);
        let (keep, gone) = (a.min(b), a.max(b));
        let uf_mark = self.slots.mark();
        for d in DIRS {
            self.slots.union(slot(keep, d), slot(gone, d));
        }
        let keep_len = self.members[keep].len() as u32;
        let moved = std::mem::take(&mut self.members[gone]);
        for &c in &moved {
            self.part_of[c as usize] = keep as u32;
        }
        self.members[keep].extend_from_slice(&moved);
        self.members[gone] = moved;
        self.num_parts -= 1;
        self.log.push(MergeRecord {
            keep: keep as u32,
            gone: gone as u32,
            keep_len,
            uf_mark,
        });
    }

    /// Reverts every merge made after `mark`.
    pub fn undo_to(&mut self, mark: usize) {
        while self.log.len() > mark {
            let r = self.log.pop().expect("len checked");
            let (keep, gone) = (r.keep as usize, r.gone as usize);
            let moved = self.members[keep].split_off(r.keep_len as usize);
            for &c in &moved {
                self.part_of[c as usize] = gone as u32;
            }
            self.slots.rollback(r.uf_mark);
            self.num_parts += 1;
        }
    }

    /// First pair of parts (in canonical order) sharing south and west glues.
    pub fn conflict(&mut self) -> Option<(PartId, PartId)> {
        self.seen.clear();
        for p in 0..self.part_of.len() {
            if self.part_of[p] as usize != p {
                continue;
            }
            let key = (
                self.slots.find(slot(p, Dir::S)) as u32,
                self.slots.find(slot(p, Dir::W)) as u32,
            );
            if let Some(&q) = self.seen.get(&key) {
                return Some((q as usize, p));
            }
            self.seen.insert(key, p as u32);
        }
        None
    }

    /// Live part ids in canonical order.
    #[cfg(test)]
    pub fn part_ids(&self) -> impl Iterator<Item = PartId> + '_ {
        (0..self.part_of.len()).filter(|&p| self.part_of[p] as usize == p)
    }

    pub fn partition(&self) -> Partition {
        Partition::from_labels(self.m, self.n, &self.part_of).expect("valid dimensions")
    }
}
