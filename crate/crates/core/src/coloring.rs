//! Chromatic number and the two families derived from `H`: deleting one
//! color class of an optimal coloring, and deleting the ends of an edge.

use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::Graph;
use std::collections::BTreeSet;

fn coloring_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// Visits every partition of the vertices into at most `k` independent
/// classes, each exactly once (colors are numbered by first use).
fn for_each_coloring(g: &Graph, k: usize, visit: &mut dyn FnMut(&[u64]) -> bool) {
    fn rec(g: &Graph, order: &[usize], i: usize, classes: &mut Vec<u64>, k: usize, visit: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        if i == order.len() {
            return visit(classes);
        }
        let v = order[i];
        for c in 0..classes.len() {
            if g.neighbors(v) & classes[c] == 0 {
                classes[c] |= 1 << v;
                let stop = rec(g, order, i + 1, classes, k, visit);
                classes[c] &= !(1 << v);
                if stop {
                    return true;
                }
            }
        }
        if classes.len() < k {
            classes.push(1 << v);
            let stop = rec(g, order, i + 1, classes, k, visit);
            classes.pop();
            if stop {
                return true;
            }
        }
        false
    }
    let order = coloring_order(g);
    rec(g, &order, 0, &mut Vec::with_capacity(k), k, visit);
}

pub fn is_colorable(g: &Graph, k: usize) -> bool {
    if g.order() == 0 {
        return true;
    }
    let mut found = false;
    for_each_coloring(g, k, &mut |_| {
        found = true;
        true
    });
    found
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let start = if g.edge_count() == 0 { 1 } else { 2 };
    Ok((start..=g.order()).find(|&k| is_colorable(g, k)).unwrap_or(g.order()))
}

/// Every proper coloring with exactly χ(g) colors, as lists of class masks.
pub fn optimal_colorings(g: &Graph) -> Result<Vec<Vec<u64>>> {
    let chi = chromatic_number(g)?;
    let mut out = Vec::new();
    for_each_coloring(g, chi, &mut |classes| {
        if classes.len() == chi {
            out.push(classes.to_vec());
        }
        false
    });
    Ok(out)
}

/// The family obtained from `h` by deleting one color class of a proper
/// χ(h)-coloring, over all such colorings.
pub fn color_class_deletions(h: &Graph) -> Result<GraphFamily> {
    if h.edge_count() == 0 {
        return Err(Error::Undefined);
    }
    let classes: BTreeSet<u64> = optimal_colorings(h)?.into_iter().flatten().collect();
    Ok(GraphFamily::new(
        format!("class-deletions({h})"),
        classes.into_iter().map(|c| h.delete_vertices(c)),
    ))
}

/// The family obtained from `h` by deleting both ends of one edge.
pub fn adjacent_pair_deletions(h: &Graph) -> Result<GraphFamily> {
    if h.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    Ok(GraphFamily::new(
        format!("pair-deletions({h})"),
        h.edges().map(|(u, v)| h.delete_vertices(1 << u | 1 << v)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;
    use crate::subgraph::contains_subgraph;

    fn fam(list: &[&str]) -> GraphFamily {
        GraphFamily::new("", list.iter().map(|s| build(s).unwrap()))
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&build("KP(2,2,2)").unwrap()), Ok(3));
        assert_eq!(chromatic_number(&build("C5").unwrap()), Ok(3));
        assert_eq!(chromatic_number(&build("F3").unwrap()), Ok(3));
        assert_eq!(chromatic_number(&build("K5").unwrap()), Ok(5));
        assert_eq!(chromatic_number(&build("I4").unwrap()), Ok(1));
        assert_eq!(chromatic_number(&build("C6").unwrap()), Ok(2));
        assert_eq!(chromatic_number(&Graph::new(0)), Err(Error::EmptyGraph));
    }

    #[test]
    fn colorings_of_a_path_are_unique_up_to_renaming() {
        let cols = optimal_colorings(&build("P4").unwrap()).unwrap();
        assert_eq!(cols.len(), 1);
        // K3 has a single partition into three singletons
        assert_eq!(optimal_colorings(&build("K3").unwrap()).unwrap().len(), 1);
        // C5 has five 3-colorings up to color renaming
        assert_eq!(optimal_colorings(&build("C5").unwrap()).unwrap().len(), 5);
    }

    #[test]
    fn class_deletion_examples() {
        for m in 3..=5 {
            let got = color_class_deletions(&build(&format!("K{m}")).unwrap()).unwrap();
            assert_eq!(got.forms(), fam(&[&format!("K{}", m - 1)]).forms());
        }
        for t in 2..=3 {
            let got = color_class_deletions(&build(&format!("F{t}")).unwrap()).unwrap();
            assert_eq!(got.forms(), fam(&[&format!("M{t}"), &format!("S{t}")]).forms());
        }
        let got = color_class_deletions(&build("KP(2,2,2)").unwrap()).unwrap();
        assert_eq!(got.forms(), fam(&["C4"]).forms());
        assert_eq!(color_class_deletions(&build("I3").unwrap()), Err(Error::Undefined));
    }

    #[test]
    fn pair_deletion_examples() {
        for m in 3..=5 {
            let got = adjacent_pair_deletions(&build(&format!("K{m}")).unwrap()).unwrap();
            assert_eq!(got.forms(), fam(&[&format!("K{}", m - 2)]).forms());
        }
        let got = adjacent_pair_deletions(&build("F2").unwrap()).unwrap();
        assert_eq!(got.forms(), fam(&["F1", "union(M1,I1)"]).forms());
        let got = adjacent_pair_deletions(&build("F3").unwrap()).unwrap();
        assert_eq!(got.forms(), fam(&["F2", "union(M2,I1)"]).forms());
        let got = adjacent_pair_deletions(&build("P3").unwrap()).unwrap();
        assert_eq!(got.forms(), fam(&["I1"]).forms());
        assert_eq!(adjacent_pair_deletions(&build("I2").unwrap()), Err(Error::NoEdges));
    }

    #[test]
    fn derived_members_are_subgraphs_and_colorable() {
        for h in ["K4", "F3", "KP(2,2,2)", "C5", "join(K1,C5)", "KP(1,2,3)", "union(K3,P4)"] {
            let h = build(h).unwrap();
            let chi = chromatic_number(&h).unwrap();
            let class = color_class_deletions(&h).unwrap();
            for m in class.members() {
                assert!(contains_subgraph(&h, m));
                assert!(m.order() == 0 || is_colorable(m, chi - 1));
            }
            let pair = adjacent_pair_deletions(&h).unwrap();
            assert!(pair.len() <= h.edge_count());
            for m in pair.members() {
                assert!(contains_subgraph(&h, m));
            }
        }
    }
}
