use std::collections::VecDeque;

use super::{FaceId, HalfEdgeId, RootedTriangulation};

/// Dual graph: one node per face, one edge per interior edge of the map.
/// Parallel dual edges appear when two faces share two edges.
#[derive(Clone, Debug)]
pub struct DualGraph {
    adj: Vec<[Option<FaceId>; 3]>,
}

impl DualGraph {
    pub fn from_map(map: &RootedTriangulation) -> Self {
        let adj = (0..map.n_faces())
            .map(|f| {
                let mut row = [None; 3];
                for (s, slot) in row.iter_mut().enumerate() {
                    *slot = map.twin(HalfEdgeId::of(FaceId(f), s)).map(HalfEdgeId::face);
                }
                row
            })
            .collect();
        DualGraph { adj }
    }

    /// Builds a dual-style graph from explicit adjacency lists (degree at most 3).
    pub fn from_adjacency(lists: &[Vec<usize>]) -> Self {
        let adj = lists
            .iter()
            .map(|l| {
                assert!(l.len() <= 3, "dual nodes have degree at most 3");
                let mut row = [None; 3];
                for (slot, n) in row.iter_mut().zip(l) {
                    *slot = Some(FaceId(*n));
                }
                row
            })
            .collect();
        DualGraph { adj }
    }

    pub fn n_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.iter().flatten().count())
            .sum::<usize>()
            / 2
    }

    pub fn neighbors(&self, f: FaceId) -> impl Iterator<Item = FaceId> + '_ {
        self.adj[f.0].iter().flatten().copied()
    }

    pub fn degree(&self, f: FaceId) -> usize {
        self.adj[f.0].iter().flatten().count()
    }

    pub fn distances_from(&self, source: FaceId) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.adj.len()];
        let mut queue = VecDeque::new();
        dist[source.0] = Some(0);
        queue.push_back(source);
        while let Some(f) = queue.pop_front() {
            let d = dist[f.0].unwrap();
            for g in self.neighbors(f) {
                if dist[g.0].is_none() {
                    dist[g.0] = Some(d + 1);
                    queue.push_back(g);
                }
            }
        }
        dist
    }
}
