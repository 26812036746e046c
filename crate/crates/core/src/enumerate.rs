//! Isomorph-free generation of 𝓕-free graphs by canonical augmentation.
//!
//! A graph on `m + 1` vertices is produced from its canonical parent: the
//! graph left after deleting a distinguished minimum-degree vertex `w`. The
//! choice of `w` depends only on the isomorphism class, so each class has a
//! unique parent class, and a per-parent set of canonical forms removes the
//! remaining duplicates. Deleting a vertex keeps a graph 𝓕-free, so the tree
//! only ever contains 𝓕-free graphs.

use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::{bits, canonical_form, canonical_labeling, low_mask, CanonicalForm, Graph};
use crate::subgraph::Pattern;
use rayon::prelude::*;
use std::collections::HashSet;

pub const DEFAULT_LIMIT: usize = 14;

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub connected_only: bool,
    /// Worker threads; 0 uses the global rayon pool.
    pub threads: usize,
    pub limit: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { connected_only: false, threads: 1, limit: DEFAULT_LIMIT }
    }
}

/// Emits one canonically labeled representative of every isomorphism class
/// of 𝓕-free graphs on `n` vertices and returns how many were emitted.
///
/// The order of emission is the same for every thread count.
pub fn enumerate_free(n: usize, fam: &GraphFamily, opts: &EnumerateOptions, sink: &mut dyn FnMut(Graph)) -> Result<u64> {
    if n > opts.limit {
        return Err(Error::Oversize { n, limit: opts.limit });
    }
    let gen = Generator::new(n, fam);
    let connected = opts.connected_only;
    let mut count = 0u64;
    gen.run(
        opts.threads,
        &|_| false,
        &|node: &Node| (!connected || is_connected(&node.g)).then(|| node.form.to_graph()),
        &mut |g| {
            count += 1;
            sink(g)
        },
    )?;
    Ok(count)
}

/// Collects the output of [`enumerate_free`].
pub fn enumerate_all(n: usize, fam: &GraphFamily, opts: &EnumerateOptions) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    enumerate_free(n, fam, opts, &mut |g| out.push(g))?;
    Ok(out)
}

pub(crate) fn is_connected(g: &Graph) -> bool {
    g.order() > 0 && g.component_of(0, g.vertex_mask()) == g.vertex_mask()
}

pub(crate) struct Node {
    pub g: Graph,
    pub form: CanonicalForm,
}

pub(crate) struct Generator {
    n: usize,
    patterns: Vec<Pattern>,
}

/// Returns true when a child graph's whole subtree can be skipped.
pub(crate) type Prune<'a> = dyn Fn(&Graph) -> bool + Sync + 'a;

impl Generator {
    pub fn new(n: usize, fam: &GraphFamily) -> Generator {
        let patterns = fam.members().iter().filter(|p| p.order() <= n).map(Pattern::new).collect();
        Generator { n, patterns }
    }

    fn free_of_patterns(&self, g: &Graph, v: usize) -> bool {
        self.patterns.iter().all(|p| !p.found_through(g, v))
    }

    /// Runs the search, feeding every leaf result to `out` in tree order.
    pub fn run<R: Send>(
        &self,
        threads: usize,
        prune: &Prune<'_>,
        leaf: &(dyn Fn(&Node) -> Option<R> + Sync),
        out: &mut dyn FnMut(R),
    ) -> Result<()> {
        let root = Node { g: Graph::new(0), form: canonical_form(&Graph::new(0)) };
        if self.patterns.iter().any(|p| p.found_in(&root.g)) {
            return Ok(());
        }
        let pool = if threads == 1 {
            None
        } else {
            let mut b = rayon::ThreadPoolBuilder::new();
            if threads > 0 {
                b = b.num_threads(threads);
            }
            Some(b.build().map_err(|e| Error::Io(e.to_string()))?)
        };
        let width = pool.as_ref().map_or(1, |p| p.current_num_threads());

        // Breadth-first down to a frontier wide enough to keep every worker busy.
        let mut frontier = vec![root];
        let mut level = 0;
        while level < self.n && frontier.len() < 32 * width {
            let expand = |node: &Node| self.children(node, prune);
            frontier = match &pool {
                Some(p) => p.install(|| frontier.par_iter().map(expand).collect::<Vec<_>>()),
                None => frontier.iter().map(expand).collect(),
            }
            .into_iter()
            .flatten()
            .collect();
            level += 1;
        }

        let chunk = 8 * width;
        for nodes in frontier.chunks(chunk) {
            let walk = |node: &Node| {
                let mut found = Vec::new();
                self.dfs(node, level, prune, leaf, &mut found);
                found
            };
            let results: Vec<Vec<R>> = match &pool {
                Some(p) => p.install(|| nodes.par_iter().map(walk).collect()),
                None => nodes.iter().map(walk).collect(),
            };
            results.into_iter().flatten().for_each(&mut *out);
        }
        Ok(())
    }

    fn dfs<R>(&self, node: &Node, level: usize, prune: &Prune<'_>, leaf: &(dyn Fn(&Node) -> Option<R> + Sync), found: &mut Vec<R>) {
        if level == self.n {
            found.extend(leaf(node));
            return;
        }
        for child in self.children(node, prune) {
            self.dfs(&child, level + 1, prune, leaf, found);
        }
    }

    /// Accepted children of `node`: one per isomorphism class whose canonical
    /// parent is `node`.
    pub fn children(&self, node: &Node, prune: &Prune<'_>) -> Vec<Node> {
        let g = &node.g;
        let m = g.order();
        let degs = g.degrees();
        let delta = degs.iter().copied().min().unwrap_or(0);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for size in (0..=(delta + 1).min(m)).rev() {
            // The new vertex must have minimum degree in the child: vertices
            // outside S need degree >= size, vertices in S degree >= size - 1.
            let mut must = 0u64;
            let mut forbid = 0u64;
            for (u, &d) in degs.iter().enumerate() {
                if d + 1 < size {
                    forbid |= 1 << u;
                } else if d + 1 == size {
                    must |= 1 << u;
                }
            }
            if forbid != 0 || must.count_ones() as usize > size {
                continue;
            }
            let free = low_mask(m) & !must;
            for_each_subset(free, size - must.count_ones() as usize, &mut |extra| {
                let mut child = g.clone();
                let v = child.push_vertex(must | extra);
                if prune(&child) {
                    return;
                }
                let best = candidate_deletions(&child);
                if best >> v & 1 == 0 || !self.free_of_patterns(&child, v) {
                    return;
                }
                debug_assert!(self.patterns.iter().all(|p| !p.found_in(&child)));
                let form = if best == 1 << v {
                    canonical_form(&child)
                } else {
                    let lab = canonical_labeling(&child);
                    let w = *lab.order.iter().rev().find(|&&x| best >> x & 1 == 1).unwrap();
                    if w != v {
                        let orbits = lab.orbits();
                        if orbits[w] != orbits[v] && canonical_form(&child.delete_vertices(1 << w)) != node.form {
                            return;
                        }
                    }
                    lab.form
                };
                if seen.insert(form.clone()) {
                    out.push(Node { g: child, form });
                }
            });
        }
        out
    }
}

/// Minimum-degree vertices that maximize a cheap isomorphism invariant; the
/// canonical deletion is the one among them with the largest canonical position.
fn candidate_deletions(g: &Graph) -> u64 {
    let degs = g.degrees();
    let delta = degs.iter().copied().min().unwrap_or(0);
    let mut best_key = (0usize, 0usize);
    let mut best = 0u64;
    for v in (0..g.order()).filter(|&v| degs[v] == delta) {
        let nb = g.neighbors(v);
        let key = (bits(nb).map(|u| degs[u]).sum::<usize>(), g.edges_within(nb));
        if best == 0 || key > best_key {
            best_key = key;
            best = 1 << v;
        } else if key == best_key {
            best |= 1 << v;
        }
    }
    best
}

/// Calls `f` with every `r`-element subset of `pool`, in a fixed order.
fn for_each_subset(pool: u64, r: usize, f: &mut dyn FnMut(u64)) {
    fn rec(pool: u64, r: usize, acc: u64, f: &mut dyn FnMut(u64)) {
        if r == 0 {
            f(acc);
            return;
        }
        if (pool.count_ones() as usize) < r {
            return;
        }
        let top = 63 - pool.leading_zeros() as usize;
        let rest = pool & !(1 << top);
        rec(rest, r - 1, acc | 1 << top, f);
        rec(rest, r, acc, f);
    }
    rec(pool, r, 0, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgraph::contains_any;
    use std::collections::BTreeSet;

    /// All labeled graphs on `n` vertices, filtered and collapsed by isomorphism.
    fn naive_classes(n: usize, fam: &GraphFamily, connected: bool) -> BTreeSet<CanonicalForm> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut out = BTreeSet::new();
        for mask in 0u64..1 << pairs.len() {
            let mut g = Graph::new(n);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            if contains_any(&g, fam) || (connected && !is_connected(&g)) {
                continue;
            }
            out.insert(canonical_form(&g));
        }
        out
    }

    fn forms(graphs: &[Graph]) -> Vec<CanonicalForm> {
        graphs.iter().map(canonical_form).collect()
    }

    fn run(n: usize, fam: &GraphFamily, connected: bool, threads: usize) -> Vec<Graph> {
        let opts = EnumerateOptions { connected_only: connected, threads, ..Default::default() };
        enumerate_all(n, fam, &opts).unwrap()
    }

    #[test]
    fn small_counts() {
        let none = GraphFamily::empty();
        assert_eq!(run(4, &none, false, 1).len(), 11);
        assert_eq!(run(4, &none, true, 1).len(), 6);
        let edge = GraphFamily::parse("K2").unwrap();
        let only = run(3, &edge, false, 1);
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].edge_count(), 0);
        let counts: Vec<usize> = (1..=7).map(|n| run(n, &none, false, 1).len()).collect();
        assert_eq!(counts, [1, 2, 4, 11, 34, 156, 1044]);
        let conn: Vec<usize> = (1..=7).map(|n| run(n, &none, true, 1).len()).collect();
        assert_eq!(conn, [1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn matches_filter_and_dedupe_oracle() {
        let families = ["", "K3", "P4", "C4", "K3,P5", "S3", "M2", "union(K2,I2)", "F2", "KP(1,3)"];
        for spec in families {
            let fam = GraphFamily::parse(spec).unwrap();
            for n in 1..=6 {
                for connected in [false, true] {
                    let got = run(n, &fam, connected, 1);
                    let set: BTreeSet<_> = forms(&got).into_iter().collect();
                    assert_eq!(set.len(), got.len(), "duplicate output for {spec} n={n}");
                    assert_eq!(set, naive_classes(n, &fam, connected), "{spec} n={n} connected={connected}");
                }
            }
        }
    }

    #[test]
    fn output_is_canonical_and_free() {
        let fam = GraphFamily::parse("P6,K4").unwrap();
        for g in run(8, &fam, false, 1) {
            assert_eq!(g, g.canonical());
            assert!(!contains_any(&g, &fam));
        }
    }

    #[test]
    fn independent_of_thread_count() {
        let fam = GraphFamily::parse("P6").unwrap();
        let one = run(8, &fam, false, 1);
        for threads in [2, 4, 0] {
            assert_eq!(run(8, &fam, false, threads), one);
        }
    }

    #[test]
    fn oversize_is_rejected() {
        let opts = EnumerateOptions { limit: 5, ..Default::default() };
        assert_eq!(enumerate_free(6, &GraphFamily::empty(), &opts, &mut |_| {}), Err(Error::Oversize { n: 6, limit: 5 }));
    }

    #[test]
    fn order_zero_and_trivial_families() {
        let none = GraphFamily::empty();
        assert_eq!(run(0, &none, false, 1).len(), 1);
        assert!(run(3, &GraphFamily::parse("I2").unwrap(), false, 1).is_empty());
        assert_eq!(run(3, &GraphFamily::parse("I4").unwrap(), false, 1).len(), 4);
    }
}
