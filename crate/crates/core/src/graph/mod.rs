//! Small simple undirected graphs stored as one `u64` adjacency row per vertex.
//!
//! Row `v` has bit `u` set iff `{u, v}` is an edge. Rows are kept symmetric,
//! loop-free, and zero above the order, so two graphs compare equal exactly
//! when they are the same labeled graph.

mod canon;
mod construct;
mod graph6;

pub use canon::{canonical_form, canonical_labeling, CanonicalForm, Labeling};
pub use construct::{balanced_parts, parse_list, ConstructionSpec};
pub use graph6::{from_graph6, to_graph6};

use crate::error::{Error, Result};
use std::fmt;

pub const MAX_ORDER: usize = 64;

/// Iterates the set bit positions of `mask`, lowest first.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Mask with the low `n` bits set.
#[inline]
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices. Panics if `n > 64`; use
    /// [`Graph::try_new`] for checked construction.
    pub fn new(n: usize) -> Graph {
        assert!(n <= MAX_ORDER, "graph order {n} exceeds {MAX_ORDER}");
        Graph { n, adj: vec![0; n] }
    }

    pub fn try_new(n: usize) -> Result<Graph> {
        if n > MAX_ORDER {
            return Err(Error::OversizeGraph(n));
        }
        Ok(Graph::new(n))
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Builds a graph from raw rows, validating symmetry, loops and stray bits.
    pub fn from_rows(rows: Vec<u64>) -> Result<Graph> {
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(Error::OversizeGraph(n));
        }
        let g = Graph { n, adj: rows };
        if !g.is_well_formed() {
            return Err(Error::BadSpec {
                offset: 0,
                msg: "adjacency rows are not a simple undirected graph".into(),
            });
        }
        Ok(g)
    }

    pub fn is_well_formed(&self) -> bool {
        let all = low_mask(self.n);
        (0..self.n).all(|v| {
            let row = self.adj[v];
            row & !all == 0 && row & (1 << v) == 0 && bits(row).all(|u| self.adj[u] & (1 << v) != 0)
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u}, {v}) for order {}", self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Adds a new vertex adjacent to `nbrs`, returning its index.
    pub fn push_vertex(&mut self, nbrs: u64) -> usize {
        assert!(self.n < MAX_ORDER);
        let v = self.n;
        debug_assert_eq!(nbrs & !low_mask(v), 0);
        self.n += 1;
        self.adj.push(nbrs);
        for u in bits(nbrs) {
            self.adj[u] |= 1 << v;
        }
        v
    }

    /// Subgraph induced by the vertices in `keep`, relabeled in increasing order.
    pub fn induced(&self, keep: u64) -> Graph {
        let keep = keep & self.vertex_mask();
        let verts: Vec<usize> = bits(keep).collect();
        let mut pos = [usize::MAX; MAX_ORDER];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut h = Graph::new(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            h.adj[i] = bits(self.adj[v] & keep).fold(0, |acc, u| acc | 1 << pos[u]);
        }
        h
    }

    pub fn delete_vertices(&self, remove: u64) -> Graph {
        self.induced(self.vertex_mask() & !remove)
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: u64) -> usize {
        bits(set).map(|v| (self.adj[v] & set).count_ones() as usize).sum::<usize>() / 2
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut h = Graph::new(self.n);
        for v in 0..self.n {
            h.adj[perm[v]] = bits(self.adj[v]).fold(0, |acc, u| acc | 1 << perm[u]);
        }
        h
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::OversizeGraph(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.union(other)?;
        let left = self.vertex_mask();
        let right = if other.n == 0 { 0 } else { other.vertex_mask() << self.n };
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// Vertices reachable from `start`, restricted to `within`.
    pub fn component_of(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components as vertex masks, ordered by smallest member.
    pub fn components(&self, within: u64) -> Vec<u64> {
        let mut left = within & self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let c = self.component_of(left.trailing_zeros() as usize, left);
            out.push(c);
            left &= !c;
        }
        out
    }

    pub fn is_connected(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(self.component_of(0, self.vertex_mask()) == self.vertex_mask())
    }

    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|&&r| r == 0).count()
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Canonically relabeled copy: isomorphic graphs map to identical values.
    pub fn canonical(&self) -> Graph {
        let lab = canonical_labeling(self);
        let mut perm = vec![0; self.n];
        for (pos, &v) in lab.order.iter().enumerate() {
            perm[v] = pos;
        }
        self.relabel(&perm)
    }

    pub fn to_graph6(&self) -> String {
        to_graph6(self)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} v, {} e, g6 {})", self.n, self.edge_count(), to_graph6(self))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_graph6(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_and_union_edge_counts() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let b = Graph::from_edges(2, &[(0, 1)]);
        assert_eq!(a.union(&b).unwrap().edge_count(), 3);
        assert_eq!(a.join(&b).unwrap().edge_count(), 2 + 1 + 6);
        assert!(a.join(&b).unwrap().is_well_formed());
    }

    #[test]
    fn oversize_union_is_rejected() {
        let a = Graph::new(40);
        assert_eq!(a.union(&a), Err(Error::OversizeGraph(80)));
    }

    #[test]
    fn connectivity() {
        assert!(Graph::new(1).is_connected().unwrap());
        assert_eq!(Graph::new(0).is_connected(), Err(Error::EmptyGraph));
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(!two_triangles.is_connected().unwrap());
        assert_eq!(two_triangles.components(two_triangles.vertex_mask()), vec![0b111, 0b111000]);
    }

    #[test]
    fn induced_relabels_in_order() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let h = p4.induced(0b1011);
        assert_eq!(h.order(), 3);
        assert_eq!(h.edge_count(), 1);
        assert!(h.has_edge(0, 1));
    }

    #[test]
    fn from_rows_validates() {
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(Graph::from_rows(vec![0b100, 0b000]).is_err());
    }
}
