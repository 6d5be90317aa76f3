//! Union-find, plain and with parity labels.

#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Union-find over GF(2) unknowns with constraints `x_a + x_b = c`.
#[derive(Debug, Clone)]
pub(crate) struct ParityDsu {
    parent: Vec<usize>,
    // parity of the element relative to its parent
    offset: Vec<bool>,
}

impl ParityDsu {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), offset: vec![false; n] }
    }

    /// Root and parity of `a` relative to it.
    pub fn find(&mut self, a: usize) -> (usize, bool) {
        let p = self.parent[a];
        if p == a {
            return (a, false);
        }
        let (root, off) = self.find(p);
        self.offset[a] ^= off;
        self.parent[a] = root;
        (root, self.offset[a])
    }

    /// Imposes `x_a + x_b = c`; false if it contradicts earlier constraints.
    pub fn relate(&mut self, a: usize, b: usize, c: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == c;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        self.offset[hi] = pa ^ pb ^ c;
        true
    }

    /// Assignment with every root set to zero.
    pub fn solution(&mut self) -> Vec<bool> {
        (0..self.parent.len()).map(|a| self.find(a).1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain() {
        let mut d = Dsu::new(5);
        d.union(0, 3);
        d.union(3, 4);
        assert_eq!(d.find(4), d.find(0));
        assert_ne!(d.find(1), d.find(0));
    }

    #[test]
    fn parity() {
        let mut d = ParityDsu::new(4);
        assert!(d.relate(0, 1, true));
        assert!(d.relate(1, 2, true));
        assert!(d.relate(0, 2, false));
        assert!(!d.relate(0, 2, true));
        let s = d.solution();
        assert!(s[0] ^ s[1]);
        assert!(!(s[0] ^ s[2]));
    }
}
