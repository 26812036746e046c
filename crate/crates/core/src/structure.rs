//! Off-path vertex classes relative to a path on `k - 1` vertices in a
//! connected `P_k`-free graph, and checkers for the three structural lemmas
//! about them.
//!
//! Path positions are 1-based in reports (`v_1 .. v_{k-1}`), matching the
//! way the lemmas index them; vertex numbers are the graph's own.

use crate::enumerate::{enumerate_all, EnumerateOptions};
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::{bits, ConstructionSpec, Graph};
use crate::subgraph::{has_path, longest_path};
use num_rational::Ratio;
use rayon::prelude::*;
use serde_json::{json, Value};

/// Cap on witness paths audited per graph.
pub const MAX_WITNESS_PATHS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    pub k: usize,
    pub path: Vec<usize>,
    /// `a[i]`: off-path vertices with exactly `i` neighbors on the path.
    pub a: Vec<u64>,
    /// `b[i]`: off-path components whose largest `A` index is `i`.
    pub b: Vec<u64>,
}

fn mask_of(vs: &[usize]) -> u64 {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

fn check_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::BadRange(format!("path parameter k = {k} must be at least 3")));
    }
    Ok(())
}

fn check_host(g: &Graph, k: usize) -> Result<()> {
    check_k(k)?;
    if !g.is_connected()? {
        return Err(Error::Disconnected);
    }
    if has_path(g, k) {
        return Err(Error::HasPk(k));
    }
    Ok(())
}

impl PathDecomposition {
    pub fn path_mask(&self) -> u64 {
        mask_of(&self.path)
    }

    /// Index `i` with `u ∈ A_i`.
    pub fn a_index(&self, u: usize) -> Option<usize> {
        self.a.iter().position(|&s| s >> u & 1 == 1)
    }

    /// Broken partition invariants, as human-readable messages.
    pub fn invariant_violations(&self, g: &Graph) -> Vec<String> {
        let mut out = Vec::new();
        let off = g.vertex_mask() & !self.path_mask();
        let limit = self.k / 2;
        for (name, sets) in [("A", &self.a), ("B", &self.b)] {
            let mut seen = 0u64;
            for (i, &s) in sets.iter().enumerate() {
                if s & seen != 0 {
                    out.push(format!("{name}_{i} overlaps an earlier {name} set"));
                }
                if i >= limit && s != 0 {
                    out.push(format!("{name}_{i} is non-empty but indices stop at {}", limit - 1));
                }
                seen |= s;
            }
            if seen != off {
                out.push(format!("{name} sets do not cover exactly the off-path vertices"));
            }
        }
        if self.b.first().is_some_and(|&b0| b0 != 0) {
            out.push("B_0 is non-empty in a connected graph".into());
        }
        for (i, &bi) in self.b.iter().enumerate() {
            for (j, &bj) in self.b.iter().enumerate().skip(i + 1) {
                if bits(bi).any(|v| g.neighbors(v) & bj != 0) {
                    out.push(format!("edge between B_{i} and B_{j}"));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let sets = |v: &Vec<u64>| v.iter().map(|&s| bits(s).collect::<Vec<_>>()).collect::<Vec<_>>();
        json!({ "k": self.k, "path": self.path, "A": sets(&self.a), "B": sets(&self.b) })
    }
}

/// Classifies off-path vertices relative to a given path on `k - 1` vertices.
pub fn decompose_along(g: &Graph, k: usize, path: &[usize]) -> PathDecomposition {
    let pmask = mask_of(path);
    let off = g.vertex_mask() & !pmask;
    let slots = (k / 2).max(1);
    let mut a = vec![0u64; slots];
    for u in bits(off) {
        let i = (g.neighbors(u) & pmask).count_ones() as usize;
        if i >= a.len() {
            a.resize(i + 1, 0);
        }
        a[i] |= 1 << u;
    }
    let index = |u: usize| a.iter().position(|&s| s >> u & 1 == 1).unwrap();
    let mut b = vec![0u64; a.len()];
    for comp in g.components(off) {
        let i = bits(comp).map(index).max().unwrap();
        b[i] |= comp;
    }
    PathDecomposition { k, path: path.to_vec(), a, b }
}

/// Decomposition along a longest path of a connected `P_k`-free graph that
/// has a path on `k - 1` vertices.
pub fn decompose(g: &Graph, k: usize) -> Result<PathDecomposition> {
    check_host(g, k)?;
    let (len, path) = longest_path(g)?;
    if len < k - 1 {
        return Err(Error::NoWitnessPath(k - 1));
    }
    Ok(decompose_along(g, k, &path))
}

/// Every path on `len` vertices, each listed once (first end below last end),
/// up to `cap` paths.
pub fn paths_of_order(g: &Graph, len: usize, cap: usize) -> Vec<Vec<usize>> {
    fn grow(g: &Graph, cur: &mut Vec<usize>, used: u64, len: usize, cap: usize, out: &mut Vec<Vec<usize>>) {
        if out.len() >= cap {
            return;
        }
        if cur.len() == len {
            if len == 1 || cur[0] < cur[len - 1] {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        for v in bits(g.neighbors(last) & !used) {
            cur.push(v);
            grow(g, cur, used | 1 << v, len, cap, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        return out;
    }
    for s in 0..g.order() {
        grow(g, &mut vec![s], 1 << s, len, cap, &mut out);
    }
    out
}

/// Vertices on a longest path starting at `u` inside the vertex set `within`.
fn longest_from(g: &Graph, u: usize, within: u64) -> usize {
    fn go(g: &Graph, v: usize, left: u64) -> usize {
        1 + bits(g.neighbors(v) & left).map(|w| go(g, w, left & !(1 << w))).max().unwrap_or(0)
    }
    go(g, u, within & !(1 << u))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OffPathBound {
    pub s: usize,
    pub j: usize,
    pub bound: usize,
    /// The inequality is only claimed when `u` has a neighbor on the path.
    pub applicable: bool,
    pub holds: bool,
}

/// `s + j <= ⌊k/2⌋`, where `s` counts `u`'s path neighbors and `j` is the
/// order of a longest path from `u` avoiding the path.
pub fn check_off_path_bound(g: &Graph, k: usize, path: &[usize], u: usize) -> Result<OffPathBound> {
    check_host(g, k)?;
    if path.len() != k - 1 {
        return Err(Error::NoWitnessPath(k - 1));
    }
    let pmask = mask_of(path);
    if pmask >> u & 1 == 1 {
        return Err(Error::BadRange(format!("vertex {u} lies on the path")));
    }
    let s = (g.neighbors(u) & pmask).count_ones() as usize;
    let j = longest_from(g, u, g.vertex_mask() & !pmask);
    let bound = k / 2;
    Ok(OffPathBound { s, j, bound, applicable: s >= 1, holds: s + j <= bound })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborRules {
    pub s: usize,
    pub cap: usize,
    pub cap_ok: bool,
    /// Forbidden edges present, as 1-based path positions with the rule name.
    pub violations: Vec<(&'static str, usize, usize)>,
}

impl NeighborRules {
    pub fn clean(&self) -> bool {
        self.cap_ok && self.violations.is_empty()
    }
}

/// For a graph on `k` vertices with a path on `k - 1` vertices but no
/// spanning path: the off-path vertex has at most `⌊k/2⌋ - 1` path neighbors,
/// and none of the four edge shapes built from their successors and
/// predecessors occur.
pub fn check_neighbor_rules(g: &Graph, path: &[usize], u: usize) -> Result<NeighborRules> {
    let k = g.order();
    check_k(k)?;
    if !g.is_connected()? {
        return Err(Error::Disconnected);
    }
    if has_path(g, k) {
        return Err(Error::HamiltonianPath);
    }
    if path.len() != k - 1 || mask_of(path) >> u & 1 == 1 {
        return Err(Error::NoWitnessPath(k - 1));
    }
    // v(p) is the vertex at 1-based position p
    let v = |p: usize| path[p - 1];
    let last = k - 1;
    let idx: Vec<usize> = (1..=last).filter(|&p| g.has_edge(u, v(p))).collect();
    let mut violations = Vec::new();
    let mut flag = |rule: &'static str, p: usize, q: usize| {
        if p != q && g.has_edge(v(p), v(q)) {
            violations.push((rule, p, q));
        }
    };
    for (x, &ij) in idx.iter().enumerate() {
        for &ir in &idx[x + 1..] {
            if ir < last {
                flag("successors", ij + 1, ir + 1);
            }
            if ij >= 2 {
                flag("predecessors", ij - 1, ir - 1);
            }
        }
    }
    for &it in &idx {
        if it < last {
            flag("first-to-successor", 1, it + 1);
        }
        if it >= 2 {
            flag("predecessor-to-last", it - 1, last);
        }
    }
    let cap = k / 2 - 1;
    Ok(NeighborRules { s: idx.len(), cap, cap_ok: idx.len() <= cap, violations })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCountBound {
    /// `e(G) - e(G[V(P)])`.
    pub lhs: usize,
    /// `(⌊k/2⌋ - 1)|A_{⌊k/2⌋-1}| + Σ_{l ≤ ⌊k/2⌋-2} (⌊k/2⌋ - 3/2)|A_l|`.
    pub rhs: Ratio<i64>,
    pub holds: bool,
}

/// Edge bound off a given path, compared exactly.
pub fn check_edge_count_along(g: &Graph, d: &PathDecomposition) -> EdgeCountBound {
    let half = (d.k / 2) as i64;
    let lhs = g.edge_count() - g.edges_within(d.path_mask());
    let mut rhs = Ratio::from_integer(0);
    for (l, &set) in d.a.iter().enumerate() {
        let size = Ratio::from_integer(set.count_ones() as i64);
        let weight = if l as i64 == half - 1 { Ratio::from_integer(half - 1) } else { Ratio::new(2 * half - 3, 2) };
        rhs += weight * size;
    }
    EdgeCountBound { lhs, rhs, holds: Ratio::from_integer(lhs as i64) <= rhs }
}

/// The edge-count bound along the path chosen by [`decompose`].
pub fn check_edge_count(g: &Graph, k: usize) -> Result<(PathDecomposition, EdgeCountBound)> {
    let d = decompose(g, k)?;
    let l3 = check_edge_count_along(g, &d);
    Ok((d, l3))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub graph6: String,
    pub path: Vec<usize>,
    pub what: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub k: usize,
    pub n_max: usize,
    pub graphs: usize,
    pub paths: usize,
    pub off_path_checks: usize,
    pub neighbor_rule_checks: usize,
    pub edge_count_checks: usize,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    fn absorb(&mut self, other: AuditReport) {
        self.graphs += other.graphs;
        self.paths += other.paths;
        self.off_path_checks += other.off_path_checks;
        self.neighbor_rule_checks += other.neighbor_rule_checks;
        self.edge_count_checks += other.edge_count_checks;
        self.violations.extend(other.violations);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "n_max": self.n_max,
            "graphs": self.graphs,
            "paths": self.paths,
            "off_path_checks": self.off_path_checks,
            "neighbor_rule_checks": self.neighbor_rule_checks,
            "edge_count_checks": self.edge_count_checks,
            "violations": self.violations.iter().map(|v| json!({
                "graph6": v.graph6, "path": v.path, "what": v.what,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Runs every check on one graph, along every witness path up to the cap.
pub fn audit_graph(g: &Graph, k: usize) -> Result<AuditReport> {
    let mut rep = AuditReport { k, n_max: g.order(), graphs: 1, ..Default::default() };
    let mut found = Vec::new();
    for path in paths_of_order(g, k - 1, MAX_WITNESS_PATHS) {
        rep.paths += 1;
        let d = decompose_along(g, k, &path);
        for msg in d.invariant_violations(g) {
            found.push(violation(g, &path, msg));
        }
        let off = g.vertex_mask() & !d.path_mask();
        for u in bits(off) {
            let l1 = check_off_path_bound(g, k, &path, u)?;
            rep.off_path_checks += 1;
            if l1.applicable && !l1.holds {
                found.push(violation(g, &path, format!("off-path bound at u = {u}: s = {}, j = {}, bound {}", l1.s, l1.j, l1.bound)));
            }
            if g.order() == k {
                let l2 = check_neighbor_rules(g, &path, u)?;
                rep.neighbor_rule_checks += 1;
                if !l2.clean() {
                    found.push(violation(g, &path, format!("neighbor rules at u = {u}: {l2:?}")));
                }
            }
        }
        let l3 = check_edge_count_along(g, &d);
        rep.edge_count_checks += 1;
        if !l3.holds {
            found.push(violation(g, &path, format!("edge count: {} > {}", l3.lhs, l3.rhs)));
        }
    }
    rep.violations = found;
    Ok(rep)
}

fn violation(g: &Graph, path: &[usize], what: String) -> Violation {
    Violation { graph6: g.to_graph6(), path: path.to_vec(), what }
}

/// Audits every connected `P_k`-free graph with a path on `k - 1` vertices
/// and at most `n_max` vertices.
pub fn audit_lemmas(k: usize, n_max: usize, threads: usize) -> Result<AuditReport> {
    check_k(k)?;
    let pk = GraphFamily::new(format!("P{k}"), [ConstructionSpec::Path(k).build()?]);
    let opts = EnumerateOptions { connected_only: true, threads, ..Default::default() };
    let mut total = AuditReport { k, n_max, ..Default::default() };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    for n in k - 1..=n_max {
        let corpus: Vec<Graph> = enumerate_all(n, &pk, &opts)?.into_iter().filter(|g| has_path(g, k - 1)).collect();
        let reports: Vec<Result<AuditReport>> = pool.install(|| corpus.par_iter().map(|g| audit_graph(g, k)).collect());
        for r in reports {
            total.absorb(r?);
        }
    }
    Ok(total)
}
