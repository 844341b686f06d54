//! Disjoint-set forests.
//!
//! [`UnionFind`] compresses paths and is used for one-shot computations.
//! [`UndoUnionFind`] skips path compression so that every union can be
//! rolled back in O(1); the search uses it to backtrack.

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    classes: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            classes: n,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of disjoint classes.
    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = x;
        while cur != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    /// Root lookup without compression.
    pub fn find_const(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    /// Unites the classes of `a` and `b`; returns `false` if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big as u32;
        self.size[big] += self.size[small];
        self.classes -= 1;
        true
    }
}

/// Union by size with an undo log.
#[derive(Clone, Debug)]
pub struct UndoUnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    // attached root of each successful union, `u32::MAX` for no-ops
    history: Vec<u32>,
    classes: usize,
}

impl UndoUnionFind {
    pub fn new(n: usize) -> Self {
        UndoUnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            history: Vec::new(),
            classes: n,
        }
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    #[inline]
    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(u32::MAX);
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big as u32;
        self.size[big] += self.size[small];
        self.history.push(small as u32);
        self.classes -= 1;
        true
    }

    /// Current position in the undo log.
    pub fn mark(&self) -> usize {
        self.history.len()
    }

    /// Undoes every union performed after `mark`.
    pub fn rollback(&mut self, mark: usize) {
        while self.history.len() > mark {
            let small = self.history.pop().expect("len checked") as usize;
            if small == u32::MAX as usize {
                continue;
            }
            let big = self.parent[small] as usize;
            self.size[big] -= self.size[small];
            self.parent[small] = small as u32;
            self.classes += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_union() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.classes(), 3);
        assert_eq!(uf.find(0), uf.find(1));
        assert_ne!(uf.find(0), uf.find(3));
    }

    proptest! {
        #[test]
        fn rollback_restores_classes(
            first in prop::collection::vec((0usize..12, 0usize..12), 0..20),
            second in prop::collection::vec((0usize..12, 0usize..12), 0..20),
        ) {
            let mut uf = UndoUnionFind::new(12);
            for &(a, b) in &first {
                uf.union(a, b);
            }
            let before: Vec<usize> = (0..12).map(|x| uf.find(x)).collect();
            let classes = uf.classes();
            let mark = uf.mark();
            for &(a, b) in &second {
                uf.union(a, b);
            }
            uf.rollback(mark);
            let after: Vec<usize> = (0..12).map(|x| uf.find(x)).collect();
            prop_assert_eq!(before, after);
            prop_assert_eq!(classes, uf.classes());
        }

        #[test]
        fn both_forests_agree(pairs in prop::collection::vec((0usize..10, 0usize..10), 0..25)) {
            let mut a = UnionFind::new(10);
            let mut b = UndoUnionFind::new(10);
            for &(x, y) in &pairs {
                prop_assert_eq!(a.union(x, y), b.union(x, y));
            }
            for x in 0..10 {
                for y in 0..10 {
                    prop_assert_eq!(a.find(x) == a.find(y), b.find(x) == b.find(y));
                }
            }
        }
    }
}
