//! Partitions of the cell set of an `m × n` grid.
//!
//! Cells are indexed in row-major order starting at the south-west corner:
//! cell `(x, y)` (1-based, `x` eastward, `y` northward) has index
//! `(y - 1) * m + (x - 1)`. A part is identified by the smallest cell index it
//! contains, so iterating part ids in ascending order visits parts in
//! canonical (first-occurrence) order.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use thiserror::Error;

/// Identifier of a part: the smallest cell index it contains.
pub type PartId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("part {0} does not exist")]
    UnknownPart(PartId),
    #[error("cannot merge part {0} with itself")]
    SamePart(PartId),
    #[error("grid dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("expected {expected} cell labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("grid dimensions must be positive")]
    EmptyGrid,
}

/// A partition of `[m] × [n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    m: usize,
    n: usize,
    part_of: Vec<PartId>,
    parts: BTreeMap<PartId, Vec<usize>>,
}

impl Partition {
    /// The partition into `m · n` singletons.
    pub fn initial(m: usize, n: usize) -> Result<Self, PartitionError> {
        if m == 0 || n == 0 {
            return Err(PartitionError::EmptyGrid);
        }
        let cells = m * n;
        Ok(Partition {
            m,
            n,
            part_of: (0..cells).collect(),
            parts: (0..cells).map(|c| (c, vec![c])).collect(),
        })
    }

    /// Builds a partition from arbitrary per-cell labels; cells sharing a
    /// label share a part.
    pub fn from_labels<L: Eq + Hash>(
        m: usize,
        n: usize,
        labels: &[L],
    ) -> Result<Self, PartitionError> {
        if m == 0 || n == 0 {
            return Err(PartitionError::EmptyGrid);
        }
        if labels.len() != m * n {
            return Err(PartitionError::LabelCount {
                expected: m * n,
                got: labels.len(),
            });
        }
        let mut first: HashMap<&L, usize> = HashMap::new();
        let mut part_of = Vec::with_capacity(labels.len());
        let mut parts: BTreeMap<PartId, Vec<usize>> = BTreeMap::new();
        for (cell, label) in labels.iter().enumerate() {
            let id = *first.entry(label).or_insert(cell);
            part_of.push(id);
            parts.entry(id).or_default().push(cell);
        }
        Ok(Partition {
            m,
            n,
            part_of,
            parts,
        })
    }

    pub fn width(&self) -> usize {
        self.m
    }

    pub fn height(&self) -> usize {
        self.n
    }

    pub fn num_cells(&self) -> usize {
        self.part_of.len()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Index of the 1-based cell `(x, y)`.
    pub fn cell_index(&self, x: usize, y: usize) -> usize {
        debug_assert!((1..=self.m).contains(&x) && (1..=self.n).contains(&y));
        (y - 1) * self.m + (x - 1)
    }

    /// 1-based coordinates of a cell index.
    pub fn coords(&self, cell: usize) -> (usize, usize) {
        (cell % self.m + 1, cell / self.m + 1)
    }

    /// The part containing `cell`.
    pub fn part_of(&self, cell: usize) -> PartId {
        self.part_of[cell]
    }

    pub fn contains_part(&self, part: PartId) -> bool {
        self.parts.contains_key(&part)
    }

    /// Part ids in canonical order.
    pub fn part_ids(&self) -> impl Iterator<Item = PartId> + '_ {
        self.parts.keys().copied()
    }

    /// Parts with their cells (ascending), in canonical order.
    pub fn parts(&self) -> impl Iterator<Item = (PartId, &[usize])> + '_ {
        self.parts.iter().map(|(&id, cells)| (id, cells.as_slice()))
    }

    pub fn cells_of(&self, part: PartId) -> Option<&[usize]> {
        self.parts.get(&part).map(Vec::as_slice)
    }

    /// Returns the partition with parts `p1` and `p2` combined.
    pub fn merge(&self, p1: PartId, p2: PartId) -> Result<Partition, PartitionError> {
        if p1 == p2 {
            return Err(PartitionError::SamePart(p1));
        }
        for p in [p1, p2] {
            if !self.contains_part(p) {
                return Err(PartitionError::UnknownPart(p));
            }
        }
        let (keep, gone) = (p1.min(p2), p1.max(p2));
        let mut out = self.clone();
        let moved = out.parts.remove(&gone).expect("checked above");
        for &c in &moved {
            out.part_of[c] = keep;
        }
        let cells = out.parts.get_mut(&keep).expect("checked above");
        cells.extend(moved);
        cells.sort_unstable();
        Ok(out)
    }

    /// `true` iff every part of `fine` lies inside some part of `self`.
    pub fn refines(&self, fine: &Partition) -> Result<bool, PartitionError> {
        self.check_dims(fine)?;
        Ok(fine.parts.values().all(|cells| {
            let target = self.part_of[cells[0]];
            cells.iter().all(|&c| self.part_of[c] == target)
        }))
    }

    /// Per-cell part numbers, parts numbered by first occurrence in cell order.
    /// Two partitions are equal iff their signatures are.
    pub fn signature(&self) -> Vec<u32> {
        let mut rank = HashMap::with_capacity(self.parts.len());
        self.part_of
            .iter()
            .map(|p| {
                let next = rank.len() as u32;
                *rank.entry(*p).or_insert(next)
            })
            .collect()
    }

    /// Position of `part` in canonical order.
    pub fn rank_of(&self, part: PartId) -> Option<usize> {
        self.parts
            .contains_key(&part)
            .then(|| self.parts.range(..part).count())
    }

    fn check_dims(&self, other: &Partition) -> Result<(), PartitionError> {
        if self.m != other.m || self.n != other.n {
            return Err(PartitionError::DimensionMismatch(
                self.m, self.n, other.m, other.n,
            ));
        }
        Ok(())
    }
}

/// Every partition of `cells` elements as a restricted growth string:
/// `a[0] = 0` and `a[i] <= 1 + max(a[..i])`.
pub fn restricted_growth_strings(cells: usize) -> RestrictedGrowth {
    RestrictedGrowth {
        current: if cells == 0 {
            None
        } else {
            Some(vec![0; cells])
        },
    }
}

/// Iterator over restricted growth strings in lexicographic order.
pub struct RestrictedGrowth {
    current: Option<Vec<usize>>,
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let a = self.current.as_mut().expect("checked above");
        // Rightmost position that can still grow.
        let mut i = a.len();
        let advanced = loop {
            if i <= 1 {
                break false;
            }
            i -= 1;
            let max_before = a[..i].iter().copied().max().unwrap_or(0);
            if a[i] <= max_before {
                a[i] += 1;
                for v in &mut a[i + 1..] {
                    *v = 0;
                }
                break true;
            }
        };
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_partitions(m: usize, n: usize) -> Vec<Partition> {
        restricted_growth_strings(m * n)
            .map(|rgs| Partition::from_labels(m, n, &rgs).unwrap())
            .collect()
    }

    #[test]
    fn initial_sizes() {
        assert_eq!(Partition::initial(1, 1).unwrap().num_parts(), 1);
        assert_eq!(Partition::initial(6, 6).unwrap().num_parts(), 36);
        assert_eq!(Partition::initial(0, 3), Err(PartitionError::EmptyGrid));
    }

    #[test]
    fn merge_two_part_partition() {
        let p = Partition::from_labels(2, 1, &[0, 1]).unwrap();
        let q = p.merge(0, 1).unwrap();
        assert_eq!(q.num_parts(), 1);
        assert_eq!(p.num_parts(), 2, "input unchanged");
        assert_eq!(q.signature(), vec![0, 0]);
    }

    #[test]
    fn merge_errors() {
        let p = Partition::initial(2, 2).unwrap();
        assert_eq!(p.merge(1, 1), Err(PartitionError::SamePart(1)));
        assert_eq!(p.merge(1, 9), Err(PartitionError::UnknownPart(9)));
        let q = p.merge(0, 3).unwrap();
        assert_eq!(q.merge(3, 1), Err(PartitionError::UnknownPart(3)));
    }

    #[test]
    fn merge_is_commutative() {
        let p = Partition::initial(3, 2).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                if a != b {
                    let ab = p.merge(a, b).unwrap();
                    assert_eq!(ab.signature(), p.merge(b, a).unwrap().signature());
                    assert_eq!(ab.num_parts(), 5);
                    assert!(ab.refines(&p).unwrap());
                }
            }
        }
    }

    #[test]
    fn signature_examples() {
        assert_eq!(Partition::initial(2, 1).unwrap().signature(), vec![0, 1]);
        let single = Partition::from_labels(3, 2, &[7; 6]).unwrap();
        assert_eq!(single.signature(), vec![0; 6]);
        let p = Partition::from_labels(3, 1, &['b', 'a', 'b']).unwrap();
        assert_eq!(p.signature(), vec![0, 1, 0]);
        assert_eq!(p.rank_of(1), Some(1));
        assert_eq!(p.rank_of(2), None);
    }

    #[test]
    fn refinement_dimension_mismatch() {
        let a = Partition::initial(2, 2).unwrap();
        let b = Partition::initial(4, 1).unwrap();
        assert!(matches!(
            a.refines(&b),
            Err(PartitionError::DimensionMismatch(..))
        ));
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=6)
            .map(|k| restricted_growth_strings(k).count())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn refinement_is_a_partial_order_on_2x2() {
        let all = all_partitions(2, 2);
        let init = Partition::initial(2, 2).unwrap();
        for a in &all {
            assert!(a.refines(a).unwrap());
            assert!(a.refines(&init).unwrap());
            for b in &all {
                let ab = a.refines(b).unwrap();
                if ab {
                    assert!(a.num_parts() <= b.num_parts());
                }
                if ab && b.refines(a).unwrap() {
                    assert_eq!(a.signature(), b.signature());
                }
                for c in &all {
                    if ab && b.refines(c).unwrap() {
                        assert!(a.refines(c).unwrap());
                    }
                }
            }
        }
    }
}
