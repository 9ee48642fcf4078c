use alloc::vec::Vec;

/// Union-find whose class representative is always the smallest member.
pub(crate) struct MinDsu {
    parent: Vec<usize>,
}

impl MinDsu {
    pub(crate) fn new(n: usize) -> Self {
        MinDsu { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
    }
}
