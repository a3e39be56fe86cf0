//! Cardinality matroid intersection by shortest augmenting paths in the
//! exchange graph, over arbitrary independence oracles.

use std::collections::VecDeque;

use crate::bipartite::BipartiteGraph;
use crate::error::{Error, Result};
use crate::matroid::{indices_of, IndexSet, Matroid};

pub trait IndependenceOracle {
    fn ground_len(&self) -> usize;
    fn is_independent(&self, set: IndexSet) -> bool;
}

impl IndependenceOracle for Matroid {
    fn ground_len(&self) -> usize {
        self.ground().len()
    }

    fn is_independent(&self, set: IndexSet) -> bool {
        Matroid::is_independent(self, set)
    }
}

/// Transversal matroid on the right side of a bipartite graph: a right set is
/// independent when it can be matched injectively into the left side.
#[derive(Clone, Debug)]
pub struct TransversalMatroid {
    graph: BipartiteGraph,
}

impl TransversalMatroid {
    pub fn new(graph: BipartiteGraph) -> Self {
        TransversalMatroid { graph }
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }
}

impl IndependenceOracle for TransversalMatroid {
    fn ground_len(&self) -> usize {
        self.graph.right_len()
    }

    fn is_independent(&self, set: IndexSet) -> bool {
        transversal_independence(&self.graph, set)
    }
}

/// Whether the right vertices in `set` can all be matched into distinct left vertices.
pub fn transversal_independence(graph: &BipartiteGraph, set: IndexSet) -> bool {
    let keep = indices_of(set);
    if keep.len() > graph.left_len() {
        return false;
    }
    graph
        .transpose_restricted(&keep)
        .perfect_left_matching()
        .is_some()
}

/// A set of size `k` independent in both matroids, or `None` if the largest
/// common independent set is smaller.
pub fn matroid_intersection<A, B>(m1: &A, m2: &B, k: usize) -> Result<Option<IndexSet>>
where
    A: IndependenceOracle + ?Sized,
    B: IndependenceOracle + ?Sized,
{
    let found = grow_common_independent(m1, m2, Some(k))?;
    Ok((found.count_ones() as usize == k).then_some(found))
}

/// A maximum-cardinality common independent set.
pub fn max_common_independent<A, B>(m1: &A, m2: &B) -> Result<IndexSet>
where
    A: IndependenceOracle + ?Sized,
    B: IndependenceOracle + ?Sized,
{
    grow_common_independent(m1, m2, None)
}

fn grow_common_independent<A, B>(m1: &A, m2: &B, target: Option<usize>) -> Result<IndexSet>
where
    A: IndependenceOracle + ?Sized,
    B: IndependenceOracle + ?Sized,
{
    let e = m1.ground_len();
    if e != m2.ground_len() {
        return Err(Error::GroundMismatch(format!(
            "ground sizes differ: {e} vs {}",
            m2.ground_len()
        )));
    }
    let mut current: IndexSet = 0;
    loop {
        if target.is_some_and(|k| current.count_ones() as usize >= k) {
            return Ok(current);
        }
        match augmenting_path(m1, m2, current, e) {
            Some(path) => {
                for v in path {
                    current ^= 1 << v;
                }
            }
            None => return Ok(current),
        }
    }
}

/// Shortest path from `{x ∉ I : I+x ∈ I1}` to `{x ∉ I : I+x ∈ I2}` with
/// arcs `y -> x` when `I-y+x ∈ I1` and `x -> y` when `I-y+x ∈ I2`.
fn augmenting_path<A, B>(m1: &A, m2: &B, current: IndexSet, e: usize) -> Option<Vec<usize>>
where
    A: IndependenceOracle + ?Sized,
    B: IndependenceOracle + ?Sized,
{
    let inside = indices_of(current);
    let outside: Vec<usize> = (0..e).filter(|&x| current & (1 << x) == 0).collect();
    let sinks: Vec<bool> = (0..e)
        .map(|x| current & (1 << x) == 0 && m2.is_independent(current | (1 << x)))
        .collect();

    let mut parent = vec![usize::MAX; e];
    let mut visited = vec![false; e];
    let mut queue = VecDeque::new();
    for &x in &outside {
        if m1.is_independent(current | (1 << x)) {
            visited[x] = true;
            queue.push_back(x);
        }
    }
    while let Some(v) = queue.pop_front() {
        if sinks[v] {
            let mut path = vec![v];
            let mut cur = v;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                path.push(cur);
            }
            return Some(path);
        }
        let v_inside = current & (1 << v) != 0;
        if v_inside {
            // y -> x when I - y + x ∈ I1
            for &x in &outside {
                if !visited[x] && m1.is_independent((current & !(1 << v)) | (1 << x)) {
                    visited[x] = true;
                    parent[x] = v;
                    queue.push_back(x);
                }
            }
        } else {
            // x -> y when I - y + x ∈ I2
            for &y in &inside {
                if !visited[y] && m2.is_independent((current & !(1 << y)) | (1 << v)) {
                    visited[y] = true;
                    parent[y] = v;
                    queue.push_back(y);
                }
            }
        }
    }
    None
}
