//! Construction-independent validation of edge labelings.
//!
//! Everything here works from the label map alone. A labeling is local
//! antimagic when it is a bijection onto `[1, m]` and the two endpoints of
//! every edge have different vertex sums.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeler::EdgeLabeling;
use crate::partitions::Interval;
use crate::tree::{ExplicitTree, NodeId};

/// A tree with a (possibly partial) label on every edge.
///
/// Serializes as `{"nodes": int, "edges": [[u, v, label], ...]}`; a missing
/// label is `null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledTree {
    pub nodes: usize,
    pub edges: Vec<(usize, usize, Option<i64>)>,
}

impl LabeledTree {
    pub fn new(tree: &ExplicitTree, labels: &[i64]) -> Result<Self> {
        if labels.len() != tree.edges.len() {
            return Err(Error::param(format!(
                "{} labels for {} edges",
                labels.len(),
                tree.edges.len()
            )));
        }
        Ok(LabeledTree {
            nodes: tree.nodes,
            edges: tree
                .edges
                .iter()
                .zip(labels)
                .map(|(&(u, v), &l)| (u, v, Some(l)))
                .collect(),
        })
    }

    pub fn shape(&self) -> ExplicitTree {
        ExplicitTree {
            nodes: self.nodes,
            edges: self.edges.iter().map(|&(u, v, _)| (u, v)).collect(),
        }
    }

    fn labels(&self) -> Result<Vec<i64>> {
        let missing: Vec<usize> = self
            .edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.2.is_none().then_some(i))
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingLabels(missing));
        }
        Ok(self.edges.iter().filter_map(|e| e.2).collect())
    }
}

/// Vertex sums `w(u)`, indexed by vertex id.
pub fn vertex_sums(tree: &LabeledTree) -> Result<Vec<i64>> {
    let labels = tree.labels()?;
    let mut sums = vec![0i64; tree.nodes];
    for (&(u, v, _), &l) in tree.edges.iter().zip(&labels) {
        if u >= tree.nodes || v >= tree.nodes {
            return Err(Error::InvalidTree(format!(
                "edge ({u}, {v}) names a missing vertex"
            )));
        }
        sums[u] += l;
        sums[v] += l;
    }
    Ok(sums)
}

/// Vertex sums of a t-ary labeling keyed by breadth-first node id.
pub fn tary_vertex_sums(labeling: &EdgeLabeling) -> BTreeMap<NodeId, i64> {
    let t = labeling.tree().branching();
    let mut sums = BTreeMap::new();
    for (edge, label) in labeling.iter() {
        let (upper, lower) = edge.endpoints(t);
        *sums.entry(upper).or_insert(0) += label;
        *sums.entry(lower).or_insert(0) += label;
    }
    sums
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "l_plus_1")]
    LPlus1,
    #[serde(rename = "l_plus_2")]
    LPlus2,
    #[serde(rename = "other")]
    Other,
}

/// An edge whose endpoints share a vertex sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeViolation {
    pub edge: usize,
    pub u: usize,
    pub v: usize,
    pub sum: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelIssues {
    /// Labels used more than once.
    pub duplicates: Vec<i64>,
    /// Values in `[1, m]` that no edge carries.
    pub missing: Vec<i64>,
    pub out_of_range: Vec<i64>,
}

impl LabelIssues {
    pub fn is_empty(&self) -> bool {
        self.duplicates.is_empty() && self.missing.is_empty() && self.out_of_range.is_empty()
    }
}

/// An internal color outside the hull of the leaf colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutsideColor {
    pub color: i64,
    /// Depths (distance from vertex 0) of the internal vertices with this color.
    pub depths: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorReport {
    pub is_bijection: bool,
    pub is_local_antimagic: bool,
    pub distinct_colors: usize,
    pub leaf_count: usize,
    /// `[min, max]` over leaf colors.
    pub leaf_interval: Option<Interval>,
    pub colors_beyond_leaf_interval: Vec<OutsideColor>,
    pub verdict: Verdict,
    pub label_issues: LabelIssues,
    pub violations: Vec<EdgeViolation>,
}

impl ColorReport {
    pub fn is_valid(&self) -> bool {
        self.is_bijection && self.is_local_antimagic
    }
}

/// Checks bijectivity and the local antimagic condition, and counts colors.
///
/// Structural problems (not a tree, unlabeled edges) are errors; labeling
/// problems are reported in the returned [`ColorReport`].
pub fn check(tree: &LabeledTree) -> Result<ColorReport> {
    let shape = tree.shape();
    shape.validate()?;
    let labels = tree.labels()?;
    let sums = vertex_sums(tree)?;
    let m = labels.len() as i64;

    let mut counts = vec![0u32; labels.len()];
    let mut out_of_range = BTreeSet::new();
    for &l in &labels {
        if (1..=m).contains(&l) {
            counts[(l - 1) as usize] += 1;
        } else {
            out_of_range.insert(l);
        }
    }
    let label_issues = LabelIssues {
        duplicates: (1..=m).filter(|&l| counts[(l - 1) as usize] > 1).collect(),
        missing: (1..=m).filter(|&l| counts[(l - 1) as usize] == 0).collect(),
        out_of_range: out_of_range.into_iter().collect(),
    };
    let is_bijection = label_issues.is_empty();

    let violations: Vec<EdgeViolation> = tree
        .edges
        .iter()
        .enumerate()
        .filter(|&(_, &(u, v, _))| sums[u] == sums[v])
        .map(|(edge, &(u, v, _))| EdgeViolation {
            edge,
            u,
            v,
            sum: sums[u],
        })
        .collect();

    let mut colors = sums.clone();
    colors.sort_unstable();
    colors.dedup();
    let distinct_colors = colors.len();
    let degrees = shape.degrees();
    let leaf_count = degrees.iter().filter(|&&d| d == 1).count();

    let leaf_colors = || {
        sums.iter()
            .zip(&degrees)
            .filter(|&(_, &d)| d == 1)
            .map(|(&s, _)| s)
    };
    let leaf_interval = leaf_colors()
        .min()
        .zip(leaf_colors().max())
        .map(|(lo, hi)| Interval::new(lo, hi).expect("min <= max"));

    let mut outside: BTreeMap<i64, BTreeSet<u32>> = BTreeMap::new();
    if let Some(iv) = leaf_interval {
        let depths = shape.depths();
        for (v, &s) in sums.iter().enumerate() {
            if degrees[v] > 1 && !iv.contains(s) {
                outside.entry(s).or_default().insert(depths[v]);
            }
        }
    }

    let verdict = match distinct_colors.checked_sub(leaf_count) {
        Some(1) => Verdict::LPlus1,
        Some(2) => Verdict::LPlus2,
        _ => Verdict::Other,
    };

    Ok(ColorReport {
        is_bijection,
        is_local_antimagic: is_bijection && violations.is_empty(),
        distinct_colors,
        leaf_count,
        leaf_interval,
        colors_beyond_leaf_interval: outside
            .into_iter()
            .map(|(color, depths)| OutsideColor {
                color,
                depths: depths.into_iter().collect(),
            })
            .collect(),
        verdict,
        label_issues,
        violations,
    })
}

/// [`check`] applied to the explicit form of a t-ary labeling.
pub fn check_labeling(labeling: &EdgeLabeling) -> Result<ColorReport> {
    check(&labeling.to_labeled_tree())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(a: i64, b: i64) -> LabeledTree {
        LabeledTree::new(&ExplicitTree::path(3), &[a, b]).unwrap()
    }

    #[test]
    fn star_sums() {
        let star = LabeledTree::new(&ExplicitTree::star(3), &[1, 2, 3]).unwrap();
        assert_eq!(vertex_sums(&star).unwrap(), [6, 1, 2, 3]);
        let report = check(&star).unwrap();
        assert!(report.is_valid());
        assert_eq!(report.distinct_colors, 4);
        assert_eq!(report.verdict, Verdict::LPlus1);
        assert_eq!(report.leaf_interval, Some(Interval::new(1, 3).unwrap()));
        assert_eq!(
            report.colors_beyond_leaf_interval,
            [OutsideColor {
                color: 6,
                depths: vec![0]
            }]
        );
    }

    #[test]
    fn path_on_three_vertices() {
        let tree = p3(1, 2);
        assert_eq!(vertex_sums(&tree).unwrap(), [1, 3, 2]);
        let report = check(&tree).unwrap();
        assert!(report.is_local_antimagic);
        assert_eq!(report.distinct_colors, 3);
        assert_eq!(report.leaf_count, 2);
    }

    #[test]
    fn duplicate_label_is_not_a_bijection() {
        let star = LabeledTree::new(&ExplicitTree::star(2), &[1, 1]).unwrap();
        let report = check(&star).unwrap();
        assert!(!report.is_bijection);
        assert!(!report.is_local_antimagic);
        assert_eq!(report.label_issues.duplicates, [1]);
        assert_eq!(report.label_issues.missing, [2]);
    }

    #[test]
    fn out_of_range_labels() {
        let report = check(&p3(0, 7)).unwrap();
        assert_eq!(report.label_issues.out_of_range, [0, 7]);
        assert_eq!(report.label_issues.missing, [1, 2]);
    }

    #[test]
    fn clash_is_reported_per_edge() {
        // Vertices 1 and 2 are adjacent and both sum to 7.
        let tree = LabeledTree {
            nodes: 5,
            edges: vec![
                (0, 1, Some(3)),
                (1, 2, Some(4)),
                (2, 3, Some(1)),
                (2, 4, Some(2)),
            ],
        };
        let report = check(&tree).unwrap();
        assert!(report.is_bijection);
        assert!(!report.is_local_antimagic);
        assert_eq!(
            report.violations,
            [EdgeViolation {
                edge: 1,
                u: 1,
                v: 2,
                sum: 7
            }]
        );
    }

    #[test]
    fn missing_labels_are_errors() {
        let tree = LabeledTree {
            nodes: 3,
            edges: vec![(0, 1, Some(1)), (1, 2, None)],
        };
        assert_eq!(vertex_sums(&tree), Err(Error::MissingLabels(vec![1])));
        assert!(matches!(check(&tree), Err(Error::MissingLabels(_))));
    }

    #[test]
    fn malformed_tree_is_an_error() {
        let tree = LabeledTree {
            nodes: 4,
            edges: vec![(0, 1, Some(1)), (2, 3, Some(2))],
        };
        assert!(matches!(check(&tree), Err(Error::InvalidTree(_))));
    }

    #[test]
    fn json_forms() {
        let tree: LabeledTree =
            serde_json::from_str(r#"{"nodes":3,"edges":[[0,1,1],[1,2,null]]}"#).unwrap();
        assert_eq!(tree.edges[1].2, None);
        let report = check(&p3(1, 2)).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json
            .starts_with(r#"{"is_bijection":true,"is_local_antimagic":true,"distinct_colors":3"#));
        assert!(json.contains(r#""verdict":"l_plus_1""#));
    }
}
