use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected connected graph stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let adj: Vec<Vec<usize>> = Deserialize::deserialize(d)?;
        Graph::from_adjacency(adj).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    /// Builds from an edge list; rejects loops, repeated edges and disconnected graphs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Precondition(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::Precondition(format!("loop at {a}")));
            }
            if adj[a].contains(&b) {
                return Err(Error::Precondition(format!("repeated edge ({a},{b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        Self::from_adjacency(adj)
    }

    pub fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Result<Self> {
        let n = adj.len();
        if n == 0 {
            return Err(Error::Precondition("empty graph".into()));
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) || list.contains(&v) || list.iter().any(|&u| u >= n) {
                return Err(Error::Precondition(format!("bad adjacency at vertex {v}")));
            }
        }
        for (v, list) in adj.iter().enumerate() {
            if list.iter().any(|&u| adj[u].binary_search(&v).is_err()) {
                return Err(Error::Precondition(format!("asymmetric adjacency at vertex {v}")));
            }
        }
        let g = Graph { adj };
        if !g.is_connected() {
            return Err(Error::Precondition("graph is disconnected".into()));
        }
        Ok(g)
    }

    pub fn point() -> Self {
        Graph { adj: vec![vec![]] }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("paths are connected")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&u| u > v).map(|&u| (v, u)));
        }
        out
    }

    pub fn max_valence(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut m = vec![vec![0u8; n]; n];
        for (v, list) in self.adj.iter().enumerate() {
            for &u in list {
                m[v][u] = 1;
            }
        }
        m
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n()];
        let mut q = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = q.pop_front() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    q.push_back(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Hexagon `c0..c5` with the tail `c0 - p1 - p2`; vertices `0..5` are the
    /// hexagon, `6 = p1`, `7 = p2`. Reconstructed from the Morrison family's
    /// characteristic polynomial (unique 8-vertex graph giving `P_{0,0}`).
    pub fn morrison_base() -> Self {
        let mut e: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        e.push((0, 6));
        e.push((6, 7));
        Self::from_edges(8, &e).expect("valid base graph")
    }
}

/// Base graph with legs (paths of new vertices) attached at chosen vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpiderSpec {
    pub base: Graph,
    pub attach: Vec<usize>,
    pub legs: Vec<u32>,
}

impl SpiderSpec {
    pub fn new(base: Graph, attach: Vec<usize>, legs: Vec<u32>) -> Result<Self> {
        if attach.len() != legs.len() {
            return Err(Error::Precondition("attach and legs lengths differ".into()));
        }
        if let Some(&v) = attach.iter().find(|&&v| v >= base.n()) {
            return Err(Error::Precondition(format!("attachment vertex {v} out of range")));
        }
        Ok(SpiderSpec { base, attach, legs })
    }

    /// Star-shaped spider on a single vertex.
    pub fn star(legs: &[u32]) -> Self {
        SpiderSpec { base: Graph::point(), attach: vec![0; legs.len()], legs: legs.to_vec() }
    }

    /// Morrison spider with legs `a` (at the tail's middle vertex) and `b` (opposite `c0`).
    pub fn morrison(a: u32, b: u32) -> Self {
        SpiderSpec { base: Graph::morrison_base(), attach: vec![6, 3], legs: vec![a, b] }
    }

    pub fn vertex_count(&self) -> usize {
        self.base.n() + self.legs.iter().map(|&r| r as usize).sum::<usize>()
    }
}

/// Graph with `base.n + Σ r_i` vertices; leg `i` is a path of `r_i` new vertices hanging from `v_i`.
pub fn build_spider(spec: &SpiderSpec) -> Result<Graph> {
    let spec = SpiderSpec::new(spec.base.clone(), spec.attach.clone(), spec.legs.clone())?;
    let mut edges = spec.base.edges();
    let mut n = spec.base.n();
    for (&v, &r) in spec.attach.iter().zip(&spec.legs) {
        let mut prev = v;
        for _ in 0..r {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spider_vertex_counts() {
        assert_eq!(build_spider(&SpiderSpec::star(&[1, 1, 1])).unwrap().n(), 4);
        assert_eq!(build_spider(&SpiderSpec::star(&[])).unwrap().n(), 1);
        assert_eq!(build_spider(&SpiderSpec::star(&[3, 3, 3])).unwrap().n(), 10);
        assert_eq!(build_spider(&SpiderSpec::morrison(2, 3)).unwrap().n(), 13);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Graph::from_edges(3, &[(0, 1)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(SpiderSpec::new(Graph::point(), vec![1], vec![2]).is_err());
        assert!(SpiderSpec::new(Graph::point(), vec![0, 0], vec![2]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = SpiderSpec::star(&[1, 2]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"base":[[]],"attach":[0,0],"legs":[1,2]}"#);
        let back: SpiderSpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<Graph>("[[1],[]]").is_err());
    }

    #[test]
    fn morrison_base_shape() {
        let g = Graph::morrison_base();
        assert_eq!(g.edges().len(), 8);
        assert_eq!(g.max_valence(), 3);
    }
}
