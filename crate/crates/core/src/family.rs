use crate::graph::{canonical_form, CanonicalForm, ConstructionSpec, Graph};
use crate::error::Result;

/// A set of pairwise non-isomorphic graphs, stored as canonically labeled
/// representatives sorted by canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFamily {
    label: String,
    members: Vec<Graph>,
    forms: Vec<CanonicalForm>,
}

impl GraphFamily {
    pub fn new(label: impl Into<String>, graphs: impl IntoIterator<Item = Graph>) -> GraphFamily {
        let mut pairs: Vec<(CanonicalForm, Graph)> = graphs
            .into_iter()
            .map(|g| {
                let form = canonical_form(&g);
                let rep = form.to_graph();
                (form, rep)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        pairs.dedup_by(|a, b| a.0 == b.0);
        let (forms, members) = pairs.into_iter().unzip();
        GraphFamily { label: label.into(), members, forms }
    }

    pub fn empty() -> GraphFamily {
        GraphFamily::new("{}", [])
    }

    /// Parses a comma-separated list of construction expressions.
    pub fn parse(list: &str) -> Result<GraphFamily> {
        let specs = crate::graph::parse_list(list)?;
        let graphs = specs.iter().map(ConstructionSpec::build).collect::<Result<Vec<_>>>()?;
        Ok(GraphFamily::new(list.trim(), graphs))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> GraphFamily {
        self.label = label.into();
        self
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn forms(&self) -> &[CanonicalForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_isomorph(&self, g: &Graph) -> bool {
        self.forms.binary_search(&canonical_form(g)).is_ok()
    }

    /// Union of two families, keeping one representative per class.
    pub fn merged(&self, other: &GraphFamily, label: impl Into<String>) -> GraphFamily {
        GraphFamily::new(label, self.members.iter().chain(&other.members).cloned())
    }

    /// Canonical graph6 strings of the members, in canonical order.
    pub fn graph6_list(&self) -> Vec<String> {
        self.members.iter().map(Graph::to_graph6).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedupes_isomorphic_members() {
        let p3a = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let p3b = Graph::from_edges(3, &[(0, 2), (1, 2)]);
        let fam = GraphFamily::new("p3", [p3a.clone(), p3b]);
        assert_eq!(fam.len(), 1);
        assert!(fam.contains_isomorph(&p3a));
    }

    #[test]
    fn parse_list_of_constructions() {
        let fam = GraphFamily::parse("P6, K3, C3").unwrap();
        assert_eq!(fam.len(), 2);
        assert!(GraphFamily::parse("").unwrap().is_empty());
    }
}
