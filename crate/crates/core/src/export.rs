//! Graphviz rendering of labeled trees.
//!
//! Vertices show their sums and edges their labels. Internal vertices whose
//! color no leaf carries are filled red; those are the colors a labeling adds
//! on top of the `l` leaf colors.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::Result;
use crate::labeler::EdgeLabeling;
use crate::verifier::{vertex_sums, LabeledTree};

/// DOT source for `tree`, drawn top-down from vertex 0.
///
/// ```
/// use local_antimagic::export::to_dot;
/// use local_antimagic::tree::ExplicitTree;
/// use local_antimagic::verifier::LabeledTree;
///
/// let star = LabeledTree::new(&ExplicitTree::star(2), &[1, 2]).unwrap();
/// let dot = to_dot(&star).unwrap();
/// assert!(dot.contains(r##"0 [label="3", style=filled, fillcolor="#e06666"];"##));
/// assert!(dot.contains(r#"0 -- 2 [label="2"];"#));
/// ```
pub fn to_dot(tree: &LabeledTree) -> Result<String> {
    let shape = tree.shape();
    shape.validate()?;
    let sums = vertex_sums(tree)?;
    let degrees = shape.degrees();
    let leaf_colors: BTreeSet<i64> = sums
        .iter()
        .zip(&degrees)
        .filter(|&(_, &d)| d == 1)
        .map(|(&s, _)| s)
        .collect();

    let mut out = String::from("graph labeling {\n  node [shape=circle];\n");
    for (v, &s) in sums.iter().enumerate() {
        let extra = degrees[v] > 1 && !leaf_colors.contains(&s);
        let style = if extra {
            r##", style=filled, fillcolor="#e06666""##
        } else {
            ""
        };
        writeln!(out, "  {v} [label=\"{s}\"{style}];").expect("writing to a String");
    }
    for &(u, v, label) in &tree.edges {
        let label = label.map_or_else(|| "?".to_string(), |l| l.to_string());
        writeln!(out, "  {u} -- {v} [label=\"{label}\"];").expect("writing to a String");
    }
    out.push_str("}\n");
    Ok(out)
}

pub fn labeling_to_dot(labeling: &EdgeLabeling) -> Result<String> {
    to_dot(&labeling.to_labeled_tree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeler::label_tree;

    #[test]
    fn binary_two_levels() {
        let dot = labeling_to_dot(&label_tree(2, 2).unwrap()).unwrap();
        let filled = dot.lines().filter(|l| l.contains("fillcolor")).count();
        // Root 5 and vertex 1 (sum 6) reuse leaf colors; only the sum 15 is new.
        assert_eq!(filled, 1);
        assert!(dot.contains(r#"2 [label="15", style=filled"#));
        assert_eq!(dot.matches(" -- ").count(), 6);
    }
}
