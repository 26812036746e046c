//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree starts from the degree-refined unit partition, branches on
//! the vertices of the first non-singleton cell, and keeps the leaf whose
//! upper-triangle bit string is smallest. Automorphisms discovered at equal
//! leaves prune sibling branches (orbit pruning) and let the search jump back
//! to the common ancestor of the two leaves.

use super::{bits, Graph};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Isomorphism-class fingerprint: the vertex count plus the packed
/// upper-triangle bit string (columns in graph6 order, MSB first) of the
/// canonically relabeled graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    order: usize,
    code: Vec<u8>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn code(&self) -> &[u8] {
        &self.code
    }

    /// The canonically labeled representative.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.order);
        let mut k = 0;
        for j in 1..self.order {
            for i in 0..j {
                if self.code[k / 8] & (0x80 >> (k % 8)) != 0 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }
}

#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[p]` is the vertex placed at canonical position `p`.
    pub order: Vec<usize>,
    pub form: CanonicalForm,
    /// Automorphisms found during the search, as vertex maps. They generate
    /// a subgroup of Aut(G); every pair they link is a genuine automorphism.
    pub generators: Vec<Vec<usize>>,
}

impl Labeling {
    /// Orbit representative of every vertex under the found generators.
    pub fn orbits(&self) -> Vec<usize> {
        let n = self.order.len();
        let mut uf = UnionFind::new(n);
        for gamma in &self.generators {
            for (v, &w) in gamma.iter().enumerate() {
                uf.union(v, w);
            }
        }
        (0..n).map(|v| uf.find(v)).collect()
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    if n <= 1 {
        return Labeling {
            order: (0..n).collect(),
            form: CanonicalForm { order: n, code: Vec::new() },
            generators: Vec::new(),
        };
    }
    let mut cells = vec![g.vertex_mask()];
    refine(g, &mut cells, vec![g.vertex_mask()]);
    let mut search = Search { g, first: None, best: None, gens: Vec::new() };
    search.node(cells, &mut Vec::new());
    let best = search.best.expect("search visits at least one leaf");
    Labeling {
        order: best.lab,
        form: CanonicalForm { order: n, code: best.code },
        generators: search.gens,
    }
}

const NO_JUMP: usize = usize::MAX;

struct Leaf {
    lab: Vec<usize>,
    code: Vec<u8>,
    path: Vec<usize>,
}

struct Search<'g> {
    g: &'g Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Explores the subtree below `cells`; returns the level to resume at
    /// when an automorphism made the rest of the current branch redundant.
    fn node(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) -> usize {
        let level = path.len();
        let Some(t) = cells.iter().position(|c| c.count_ones() > 1) else {
            return self.leaf(&cells, path);
        };

        if let Some(best) = &self.best {
            let prefix: Vec<usize> = cells[..t].iter().map(|c| c.trailing_zeros() as usize).collect();
            let code = code_of(self.g, &prefix);
            if cmp_bits(&code, &best.code, t * t.saturating_sub(1) / 2) == Ordering::Greater {
                return NO_JUMP;
            }
        }

        let target = cells[t];
        let mut explored = 0u64;
        let mut orbit_state: Option<(usize, UnionFind)> = None;
        for w in bits(target) {
            if explored != 0 {
                let stale = orbit_state.as_ref().is_none_or(|(seen, _)| *seen != self.gens.len());
                if stale {
                    orbit_state = Some((self.gens.len(), self.stabilizer_orbits(path)));
                }
                let uf = &mut orbit_state.as_mut().unwrap().1;
                let root = uf.find(w);
                if bits(explored).any(|x| uf.find(x) == root) {
                    continue;
                }
            }
            explored |= 1 << w;

            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1 << w);
            child.push(target & !(1 << w));
            child.extend_from_slice(&cells[t + 1..]);
            refine(self.g, &mut child, vec![1 << w]);

            path.push(w);
            let jump = self.node(child, path);
            path.pop();
            if jump != NO_JUMP && jump < level {
                return jump;
            }
        }
        NO_JUMP
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> usize {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let code = code_of(self.g, &lab);
        let leaf = Leaf { lab, code, path: path.to_vec() };

        let Some(first) = &self.first else {
            self.best = Some(Leaf { lab: leaf.lab.clone(), code: leaf.code.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return NO_JUMP;
        };
        if leaf.code == first.code {
            let gamma = automorphism(&leaf.lab, &first.lab);
            let jump = common_prefix(&leaf.path, &first.path);
            self.gens.push(gamma);
            return jump;
        }
        let best = self.best.as_ref().unwrap();
        match leaf.code.cmp(&best.code) {
            Ordering::Equal => {
                let gamma = automorphism(&leaf.lab, &best.lab);
                let jump = common_prefix(&leaf.path, &best.path);
                self.gens.push(gamma);
                jump
            }
            Ordering::Less => {
                self.best = Some(leaf);
                NO_JUMP
            }
            Ordering::Greater => NO_JUMP,
        }
    }

    /// Orbits of the subgroup generated by found automorphisms that fix
    /// every vertex on `path`.
    fn stabilizer_orbits(&self, path: &[usize]) -> UnionFind {
        let mut uf = UnionFind::new(self.g.order());
        for gamma in &self.gens {
            if path.iter().all(|&v| gamma[v] == v) {
                for (v, &w) in gamma.iter().enumerate() {
                    uf.union(v, w);
                }
            }
        }
        uf
    }
}

/// Splits cells by neighbor counts into splitter sets until the ordered
/// partition is equitable. Every decision depends only on cell contents and
/// order, so the result commutes with relabeling.
pub(crate) fn refine(g: &Graph, cells: &mut Vec<u64>, mut queue: Vec<u64>) {
    let n = g.order();
    let mut parts: Vec<(u32, u64)> = Vec::new();
    while let Some(w) = queue.pop() {
        if cells.len() == n {
            return;
        }
        let mut i = 0;
        while i < cells.len() {
            let c = cells[i];
            if c & c.wrapping_sub(1) == 0 {
                i += 1;
                continue;
            }
            parts.clear();
            for v in bits(c) {
                let k = (g.neighbors(v) & w).count_ones();
                match parts.iter_mut().find(|p| p.0 == k) {
                    Some(p) => p.1 |= 1 << v,
                    None => parts.push((k, 1 << v)),
                }
            }
            if parts.len() == 1 {
                i += 1;
                continue;
            }
            parts.sort_unstable_by_key(|p| p.0);
            cells.splice(i..=i, parts.iter().map(|p| p.1));
            queue.extend(parts.iter().map(|p| p.1));
            i += parts.len();
        }
    }
}

/// Packed upper-triangle bits of `g` under the vertex order `lab`
/// (column-major: (0,1), (0,2), (1,2), (0,3), ...).
fn code_of(g: &Graph, lab: &[usize]) -> Vec<u8> {
    let m = lab.len();
    let nbits = m * m.saturating_sub(1) / 2;
    let mut out = vec![0u8; nbits.div_ceil(8)];
    let mut k = 0;
    for j in 1..m {
        let row = g.neighbors(lab[j]);
        for &vi in &lab[..j] {
            if row >> vi & 1 == 1 {
                out[k / 8] |= 0x80 >> (k % 8);
            }
            k += 1;
        }
    }
    out
}

fn cmp_bits(a: &[u8], b: &[u8], nbits: usize) -> Ordering {
    let full = nbits / 8;
    match a[..full].cmp(&b[..full]) {
        Ordering::Equal => {}
        other => return other,
    }
    let rest = nbits % 8;
    if rest == 0 {
        return Ordering::Equal;
    }
    let mask = !(0xffu8 >> rest);
    (a[full] & mask).cmp(&(b[full] & mask))
}

fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Lexicographically smallest code over all n! relabelings.
    fn brute_min_code(g: &Graph) -> Vec<u8> {
        fn rec(g: &Graph, lab: &mut Vec<usize>, used: u64, best: &mut Option<Vec<u8>>) {
            if lab.len() == g.order() {
                let c = code_of(g, lab);
                if best.as_ref().is_none_or(|b| c < *b) {
                    *best = Some(c);
                }
                return;
            }
            for v in 0..g.order() {
                if used >> v & 1 == 0 {
                    lab.push(v);
                    rec(g, lab, used | 1 << v, best);
                    lab.pop();
                }
            }
        }
        let mut best = None;
        rec(g, &mut Vec::new(), 0, &mut best);
        best.unwrap()
    }

    fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    fn shuffled(g: &Graph, rng: &mut impl Rng) -> Graph {
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(rng);
        g.relabel(&perm)
    }

    #[test]
    fn triangle_relabelings_agree() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..6 {
            assert_eq!(canonical_form(&k3), canonical_form(&shuffled(&k3, &mut rng)));
        }
    }

    #[test]
    fn path_and_star_differ() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let s3 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_ne!(canonical_form(&p4), canonical_form(&s3));
    }

    #[test]
    fn four_vertex_classes_match_exhaustive_oracle() {
        use std::collections::BTreeSet;
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let mut ours = BTreeSet::new();
        let mut oracle = BTreeSet::new();
        for mask in 0u32..64 {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
            let g = Graph::from_edges(4, &edges);
            ours.insert(canonical_form(&g));
            oracle.insert(brute_min_code(&g));
        }
        assert_eq!(oracle.len(), 11);
        assert_eq!(ours.len(), 11);
    }

    #[test]
    fn classes_agree_with_brute_force_on_random_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let graphs: Vec<Graph> = (0..300)
            .map(|_| {
                let n = rng.gen_range(1..=6);
                let p = rng.gen_range(0.1..0.9);
                random_graph(&mut rng, n, p)
            })
            .collect();
        for a in &graphs {
            for b in graphs.iter().take(60) {
                if a.order() != b.order() {
                    continue;
                }
                let same_oracle = brute_min_code(a) == brute_min_code(b);
                assert_eq!(canonical_form(a) == canonical_form(b), same_oracle, "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn generators_are_automorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(2..=12);
            let g = random_graph(&mut rng, n, 0.4);
            let lab = canonical_labeling(&g);
            for gamma in &lab.generators {
                assert_eq!(g.relabel(gamma), g);
            }
            assert_eq!(CanonicalForm::to_graph(&lab.form), g.canonical());
        }
    }

    #[test]
    fn highly_symmetric_graphs_finish() {
        for n in [16, 32, 64] {
            let empty = Graph::new(n);
            let lab = canonical_labeling(&empty);
            assert_eq!(lab.orbits().iter().filter(|&&r| r == 0).count(), n);
        }
        let mut k = Graph::new(20);
        for u in 0..20 {
            for v in u + 1..20 {
                k.add_edge(u, v);
            }
        }
        assert_eq!(canonical_form(&k).to_graph(), k);
    }

    #[test]
    fn random_relabeling_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(1..=12);
            let p = rng.gen_range(0.05..0.95);
            let g = random_graph(&mut rng, n, p);
            let h = shuffled(&g, &mut rng);
            assert_eq!(canonical_form(&g), canonical_form(&h));
        }
    }

    #[test]
    fn cmp_bits_respects_partial_byte() {
        assert_eq!(cmp_bits(&[0b1010_0000], &[0b1011_1111], 3), Ordering::Equal);
        assert_eq!(cmp_bits(&[0b1010_0000], &[0b1011_1111], 4), Ordering::Less);
        assert_eq!(cmp_bits(&[], &[], 0), Ordering::Equal);
    }
}
