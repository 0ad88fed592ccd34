/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    /// Labels every element with its block index, blocks numbered in order
    /// of their smallest member.
    pub fn canonical_labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut root_label = vec![usize::MAX; n];
        let mut count = 0;
        let labels = (0..n)
            .map(|v| {
                let r = self.find(v);
                if root_label[r] == usize::MAX {
                    root_label[r] = count;
                    count += 1;
                }
                root_label[r]
            })
            .collect();
        (labels, count)
    }
}

/// Canonical component labels of the graph on `n` vertices with the given
/// undirected edges.
pub(crate) fn component_labels<I>(n: usize, edges: I) -> (Vec<usize>, usize)
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let mut dsu = Dsu::new(n);
    for (u, v) in edges {
        dsu.union(u, v);
    }
    dsu.canonical_labels()
}
