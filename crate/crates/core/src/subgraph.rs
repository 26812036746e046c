//! Non-induced subgraph containment and path detection.

use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::{bits, canonical_labeling, Graph};

/// A forbidden graph compiled into matching plans.
///
/// Isolated pattern vertices only demand spare host vertices: a host contains
/// the pattern iff it contains the non-isolated core and has enough vertices.
#[derive(Clone, Debug)]
pub struct Pattern {
    graph: Graph,
    core_size: usize,
    full: Plan,
    /// Plans rooted at one core vertex per automorphism orbit.
    rooted: Vec<Plan>,
}

#[derive(Clone, Debug)]
struct Plan {
    seq: Vec<usize>,
    /// Bit `j` set iff `seq[j]` is adjacent to `seq[i]` (j < i).
    back: Vec<u64>,
    deg: Vec<u32>,
}

impl Plan {
    fn rooted_at(g: &Graph, core: u64, root: usize) -> Plan {
        let mut seq = vec![root];
        let mut placed = 1u64 << root;
        while placed != core {
            let next = bits(core & !placed)
                .max_by_key(|&x| ((g.neighbors(x) & placed).count_ones(), g.degree(x), usize::MAX - x))
                .unwrap();
            seq.push(next);
            placed |= 1 << next;
        }
        let pos: Vec<usize> = {
            let mut p = vec![0; g.order()];
            for (i, &v) in seq.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        let back = seq
            .iter()
            .enumerate()
            .map(|(i, &v)| bits(g.neighbors(v)).filter(|&u| pos[u] < i && core >> u & 1 == 1).fold(0, |m, u| m | 1 << pos[u]))
            .collect();
        let deg = seq.iter().map(|&v| g.degree(v) as u32).collect();
        Plan { seq, back, deg }
    }

    fn embed(&self, host: &Graph, hdeg: &[u32], map: &mut [usize], depth: usize, used: u64) -> bool {
        if depth == self.seq.len() {
            return true;
        }
        let mut cand = host.vertex_mask() & !used;
        for j in bits(self.back[depth]) {
            cand &= host.neighbors(map[j]);
        }
        let need = self.deg[depth];
        for v in bits(cand) {
            if hdeg[v] >= need {
                map[depth] = v;
                if self.embed(host, hdeg, map, depth + 1, used | 1 << v) {
                    return true;
                }
            }
        }
        false
    }
}

impl Pattern {
    pub fn new(graph: &Graph) -> Pattern {
        let core = bits(graph.vertex_mask()).filter(|&v| graph.degree(v) > 0).fold(0u64, |m, v| m | 1 << v);
        let core_size = core.count_ones() as usize;
        let (full, rooted) = if core == 0 {
            (Plan { seq: vec![], back: vec![], deg: vec![] }, vec![])
        } else {
            let top = bits(core).max_by_key(|&v| (graph.degree(v), usize::MAX - v)).unwrap();
            let orbits = canonical_labeling(graph).orbits();
            let rooted = bits(core).filter(|&v| orbits[v] == v).map(|r| Plan::rooted_at(graph, core, r)).collect();
            (Plan::rooted_at(graph, core, top), rooted)
        };
        Pattern { graph: graph.clone(), core_size, full, rooted }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn has_isolated(&self) -> bool {
        self.core_size < self.graph.order()
    }

    fn degrees_fit(&self, host: &Graph) -> bool {
        if self.graph.edge_count() > host.edge_count() {
            return false;
        }
        let mut hd: Vec<usize> = host.degrees();
        let mut pd: Vec<usize> = self.graph.degrees();
        hd.sort_unstable_by(|a, b| b.cmp(a));
        pd.sort_unstable_by(|a, b| b.cmp(a));
        pd.iter().zip(&hd).all(|(p, h)| p <= h)
    }

    /// Whether `host` contains this pattern as a (not necessarily induced) subgraph.
    pub fn found_in(&self, host: &Graph) -> bool {
        if self.graph.order() > host.order() {
            return false;
        }
        if self.core_size == 0 {
            return true;
        }
        if !self.degrees_fit(host) {
            return false;
        }
        let hdeg: Vec<u32> = (0..host.order()).map(|v| host.degree(v) as u32).collect();
        let mut map = [0usize; 64];
        self.full.embed(host, &hdeg, &mut map, 0, 0)
    }

    /// Whether some copy of the pattern in `host` uses vertex `v`. Patterns
    /// with isolated vertices fall back to [`Pattern::found_in`].
    pub fn found_through(&self, host: &Graph, v: usize) -> bool {
        if self.has_isolated() {
            return self.found_in(host);
        }
        if self.graph.order() > host.order() || self.graph.edge_count() > host.edge_count() {
            return false;
        }
        let hdeg: Vec<u32> = (0..host.order()).map(|u| host.degree(u) as u32).collect();
        let mut map = [0usize; 64];
        self.rooted.iter().any(|plan| {
            if plan.deg[0] > hdeg[v] {
                return false;
            }
            map[0] = v;
            plan.embed(host, &hdeg, &mut map, 1, 1 << v)
        })
    }
}

pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    Pattern::new(pattern).found_in(host)
}

pub fn contains_any(host: &Graph, fam: &GraphFamily) -> bool {
    fam.members().iter().any(|p| contains_subgraph(host, p))
}

/// Whether `g` contains a path on `k` vertices.
pub fn has_path(g: &Graph, k: usize) -> bool {
    if k <= 1 {
        return g.order() >= k;
    }
    if k > g.order() {
        return false;
    }
    fn extend(g: &Graph, v: usize, visited: u64, len: usize, k: usize) -> bool {
        if len == k {
            return true;
        }
        let open = g.neighbors(v) & !visited;
        if open == 0 {
            return false;
        }
        let reach = g.component_of(v, !visited | 1 << v).count_ones() as usize;
        if len - 1 + reach < k {
            return false;
        }
        bits(open).any(|u| extend(g, u, visited | 1 << u, len + 1, k))
    }
    (0..g.order()).any(|v| extend(g, v, 1 << v, 1, k))
}

/// Number of vertices on a longest path, with one such path.
pub fn longest_path(g: &Graph) -> Result<(usize, Vec<usize>)> {
    let n = g.order();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n <= 20 {
        Ok(longest_path_dp(g))
    } else {
        Ok(longest_path_dfs(g))
    }
}

pub fn longest_path_order(g: &Graph) -> Result<usize> {
    longest_path(g).map(|(k, _)| k)
}

/// `ends[mask]` holds the vertices at which some path spanning exactly
/// `mask` can end.
fn longest_path_dp(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.order();
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut best_mask = 1usize;
    for mask in 1usize..1 << n {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        if mask.count_ones() > best_mask.count_ones() {
            best_mask = mask;
        }
        for v in bits(e as u64) {
            for u in bits(g.neighbors(v) & !(mask as u64)) {
                ends[mask | 1 << u] |= 1 << u;
            }
        }
    }
    let mut path = Vec::new();
    let mut mask = best_mask;
    let mut v = ends[mask].trailing_zeros() as usize;
    loop {
        path.push(v);
        let rest = mask & !(1 << v);
        if rest == 0 {
            break;
        }
        v = bits(g.neighbors(v) & ends[rest] as u64).next().expect("predecessor exists");
        mask = rest;
    }
    (path.len(), path)
}

fn longest_path_dfs(g: &Graph) -> (usize, Vec<usize>) {
    fn go(g: &Graph, cur: &mut Vec<usize>, visited: u64, best: &mut Vec<usize>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        if best.len() == g.order() {
            return;
        }
        let v = *cur.last().unwrap();
        let reach = g.component_of(v, !visited | 1 << v).count_ones() as usize;
        if cur.len() - 1 + reach <= best.len() {
            return;
        }
        for u in bits(g.neighbors(v) & !visited) {
            cur.push(u);
            go(g, cur, visited | 1 << u, best);
            cur.pop();
        }
    }
    let mut best = vec![0];
    for v in 0..g.order() {
        go(g, &mut vec![v], 1 << v, &mut best);
    }
    (best.len(), best)
}
