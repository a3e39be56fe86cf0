//! Maximum bipartite matching (Hopcroft-Karp).

use std::collections::VecDeque;

const UNMATCHED: usize = usize::MAX;

/// Bipartite graph given by adjacency lists from left vertices to right vertices.
#[derive(Clone, Debug, Default)]
pub struct BipartiteGraph {
    adj: Vec<Vec<usize>>,
    right: usize,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph {
            adj: vec![Vec::new(); left],
            right,
        }
    }

    pub fn from_adjacency(adj: Vec<Vec<usize>>, right: usize) -> Self {
        debug_assert!(adj.iter().flatten().all(|&r| r < right));
        BipartiteGraph { adj, right }
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        debug_assert!(r < self.right);
        self.adj[l].push(r);
    }

    pub fn left_len(&self) -> usize {
        self.adj.len()
    }

    pub fn right_len(&self) -> usize {
        self.right
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.adj[l].contains(&r)
    }

    /// Maximum matching as `mate[l] = Some(r)`.
    pub fn maximum_matching(&self) -> Vec<Option<usize>> {
        HopcroftKarp::new(self).run()
    }

    /// A matching saturating every left vertex, if one exists.
    pub fn perfect_left_matching(&self) -> Option<Vec<usize>> {
        self.maximum_matching().into_iter().collect()
    }

    /// Restricts the right side to `keep` (in that order) and transposes, so
    /// that `keep[j]` becomes left vertex `j`.
    pub fn transpose_restricted(&self, keep: &[usize]) -> BipartiteGraph {
        let mut pos = vec![UNMATCHED; self.right];
        for (j, &r) in keep.iter().enumerate() {
            pos[r] = j;
        }
        let mut adj = vec![Vec::new(); keep.len()];
        for (l, ns) in self.adj.iter().enumerate() {
            for &r in ns {
                if pos[r] != UNMATCHED {
                    adj[pos[r]].push(l);
                }
            }
        }
        BipartiteGraph::from_adjacency(adj, self.adj.len())
    }
}

struct HopcroftKarp<'a> {
    g: &'a BipartiteGraph,
    match_l: Vec<usize>,
    match_r: Vec<usize>,
    dist: Vec<usize>,
}

impl<'a> HopcroftKarp<'a> {
    fn new(g: &'a BipartiteGraph) -> Self {
        HopcroftKarp {
            g,
            match_l: vec![UNMATCHED; g.left_len()],
            match_r: vec![UNMATCHED; g.right_len()],
            dist: vec![0; g.left_len()],
        }
    }

    fn run(mut self) -> Vec<Option<usize>> {
        while self.bfs() {
            for l in 0..self.g.left_len() {
                if self.match_l[l] == UNMATCHED {
                    self.dfs(l);
                }
            }
        }
        self.match_l
            .into_iter()
            .map(|r| (r != UNMATCHED).then_some(r))
            .collect()
    }

    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for l in 0..self.g.left_len() {
            if self.match_l[l] == UNMATCHED {
                self.dist[l] = 0;
                queue.push_back(l);
            } else {
                self.dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in self.g.neighbors(l) {
                let next = self.match_r[r];
                if next == UNMATCHED {
                    found = true;
                } else if self.dist[next] == usize::MAX {
                    self.dist[next] = self.dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        found
    }

    fn dfs(&mut self, l: usize) -> bool {
        for i in 0..self.g.neighbors(l).len() {
            let r = self.g.neighbors(l)[i];
            let next = self.match_r[r];
            if next == UNMATCHED || (self.dist[next] == self.dist[l] + 1 && self.dfs(next)) {
                self.match_l[l] = r;
                self.match_r[r] = l;
                return true;
            }
        }
        self.dist[l] = usize::MAX;
        false
    }
}
