//! A small fixed-capacity disjoint-set forest used by diagram multiplication.

use alloc::vec::Vec;

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as u32).collect(),
            size: alloc::vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    /// Merges the sets containing `a` and `b`; returns `false` if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

/// Stack-allocated variant for the at most `3 * MAX_DEGREE` vertices of a product graph.
pub(crate) struct SmallDsu<const N: usize> {
    parent: [u8; N],
}

impl<const N: usize> SmallDsu<N> {
    pub(crate) fn new(len: usize) -> Self {
        debug_assert!(len <= N && N <= 256);
        let mut parent = [0u8; N];
        for (i, p) in parent.iter_mut().enumerate().take(len) {
            *p = i as u8;
        }
        SmallDsu { parent }
    }

    #[inline]
    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    #[inline]
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as root so roots are stable under re-runs.
            if ra < rb {
                self.parent[rb] = ra as u8;
            } else {
                self.parent[ra] = rb as u8;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_find() {
        let mut d = DisjointSets::new(6);
        assert!(d.union(0, 1));
        assert!(d.union(2, 3));
        assert!(!d.union(1, 0));
        assert!(d.same(0, 1));
        assert!(!d.same(1, 2));
        d.union(1, 3);
        assert!(d.same(0, 2));
        assert!(!d.same(4, 5));
        assert_eq!(d.len(), 6);
    }

    #[test]
    fn small_dsu_matches() {
        let mut s = SmallDsu::<8>::new(8);
        s.union(5, 2);
        s.union(7, 5);
        assert_eq!(s.find(7), 2);
        assert_eq!(s.find(4), 4);
    }
}
