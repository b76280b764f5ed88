//! Exhaustive search for the local antimagic chromatic number of small trees.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::ExplicitTree;
use crate::verifier::LabeledTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_edges: usize,
    /// Abandon a partial labeling as soon as two adjacent, fully labeled
    /// vertices share a sum.
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_edges: 10,
            prune: true,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    pub chi_la: usize,
    /// The lexicographically smallest labeling, in edge order, that attains `chi_la`.
    pub witness: LabeledTree,
    /// Complete labelings reached by the search; `m!` without pruning.
    pub labelings_examined: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Minimum number of vertex colors over all local antimagic labelings of `tree`.
///
/// ```
/// use local_antimagic::oracle::{brute_force_chi_la, SearchOptions};
/// use local_antimagic::tree::ExplicitTree;
///
/// let result = brute_force_chi_la(&ExplicitTree::star(3), &SearchOptions::default()).unwrap();
/// assert_eq!(result.chi_la, 4);
/// ```
pub fn brute_force_chi_la(tree: &ExplicitTree, options: &SearchOptions) -> Result<SearchResult> {
    let start = Instant::now();
    if tree.nodes < 3 {
        return Err(Error::InvalidTree(format!(
            "{} vertices; the search needs a tree with at least 3",
            tree.nodes
        )));
    }
    tree.validate()?;
    let m = tree.edges.len();
    if m > options.max_edges {
        return Err(Error::too_large(format!(
            "{m} edges, search limit is {}",
            options.max_edges
        )));
    }

    let search = Search::new(tree, options.prune);
    let best = (1..=m as i64)
        .into_par_iter()
        .map(|first| search.run_from(first))
        .collect::<Vec<_>>()
        .into_iter()
        .reduce(Best::merge)
        .unwrap_or_default();

    let (chi_la, labels) = best
        .found
        .ok_or_else(|| Error::Certification("no local antimagic labeling found".into()))?;
    Ok(SearchResult {
        chi_la,
        witness: LabeledTree::new(tree, &labels)?,
        labelings_examined: best.examined,
        elapsed: start.elapsed(),
    })
}

/// Whether the exact chromatic number reaches `leaves + 1`.
pub fn confirm_lower_bound(tree: &ExplicitTree, options: &SearchOptions) -> Result<bool> {
    let result = brute_force_chi_la(tree, options)?;
    Ok(result.chi_la > tree.leaf_count())
}

#[derive(Default)]
struct Best {
    found: Option<(usize, Vec<i64>)>,
    examined: u64,
}

impl Best {
    /// `self` covers lexicographically earlier labelings than `other`.
    fn merge(self, other: Best) -> Best {
        let found = match (self.found, other.found) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, b) => a.or(b),
        };
        Best {
            found,
            examined: self.examined + other.examined,
        }
    }
}

struct Search<'a> {
    tree: &'a ExplicitTree,
    adjacency: Vec<Vec<(usize, usize)>>,
    degrees: Vec<usize>,
    prune: bool,
}

struct State {
    labels: Vec<i64>,
    used: Vec<bool>,
    sums: Vec<i64>,
    open: Vec<usize>,
    best: Best,
}

impl<'a> Search<'a> {
    fn new(tree: &'a ExplicitTree, prune: bool) -> Self {
        Search {
            tree,
            adjacency: tree.adjacency(),
            degrees: tree.degrees(),
            prune,
        }
    }

    fn run_from(&self, first: i64) -> Best {
        let m = self.tree.edges.len();
        let mut state = State {
            labels: vec![0; m],
            used: vec![false; m + 1],
            sums: vec![0; self.tree.nodes],
            open: self.degrees.clone(),
            best: Best::default(),
        };
        if self.place(&mut state, 0, first) {
            self.extend(&mut state, 1);
        }
        state.best
    }

    /// Labels edge `e`; false if pruning rejects the result. Leaves the state
    /// updated either way, so the caller must [`Search::unplace`].
    fn place(&self, s: &mut State, e: usize, label: i64) -> bool {
        let (u, v) = self.tree.edges[e];
        s.labels[e] = label;
        s.used[label as usize] = true;
        s.sums[u] += label;
        s.sums[v] += label;
        s.open[u] -= 1;
        s.open[v] -= 1;
        !self.prune || (self.settled(s, u) && self.settled(s, v))
    }

    fn unplace(&self, s: &mut State, e: usize) {
        let (u, v) = self.tree.edges[e];
        let label = s.labels[e];
        s.used[label as usize] = false;
        s.sums[u] -= label;
        s.sums[v] -= label;
        s.open[u] += 1;
        s.open[v] += 1;
    }

    /// No clash between `x` and a neighbour, counting only complete vertices.
    fn settled(&self, s: &State, x: usize) -> bool {
        s.open[x] > 0
            || self.adjacency[x]
                .iter()
                .all(|&(y, _)| s.open[y] > 0 || s.sums[y] != s.sums[x])
    }

    fn extend(&self, s: &mut State, e: usize) {
        let m = self.tree.edges.len();
        if e == m {
            self.finish(s);
            return;
        }
        for label in 1..=m as i64 {
            if s.used[label as usize] {
                continue;
            }
            if self.place(s, e, label) {
                self.extend(s, e + 1);
            }
            self.unplace(s, e);
        }
    }

    fn finish(&self, s: &mut State) {
        s.best.examined += 1;
        if !self.prune && self.tree.edges.iter().any(|&(u, v)| s.sums[u] == s.sums[v]) {
            return;
        }
        let mut colors = s.sums.clone();
        colors.sort_unstable();
        colors.dedup();
        let count = colors.len();
        if s.best.found.as_ref().is_none_or(|(best, _)| count < *best) {
            s.best.found = Some((count, s.labels.clone()));
        }
    }
}

/// Every tree on `nodes` vertices, one per isomorphism class.
///
/// Classes are found by decoding all Prüfer sequences and keying each tree by
/// its smallest rooted canonical string; the first tree decoded for each class
/// is kept. Output is ordered by canonical string.
pub fn trees_up_to_isomorphism(nodes: usize) -> Result<Vec<ExplicitTree>> {
    match nodes {
        0 => return Err(Error::param("a tree needs at least one vertex")),
        1 => {
            return Ok(vec![ExplicitTree {
                nodes: 1,
                edges: vec![],
            }])
        }
        2 => return Ok(vec![ExplicitTree::path(2)]),
        9.. => return Err(Error::too_large(format!("{nodes} vertices, limit is 8"))),
        _ => {}
    }
    let mut classes: BTreeMap<String, ExplicitTree> = BTreeMap::new();
    let mut seq = vec![0usize; nodes - 2];
    loop {
        let tree = from_pruefer(&seq);
        classes.entry(canonical_form(&tree)).or_insert(tree);

        // Next sequence in lexicographic order.
        let Some(pos) = seq.iter().rposition(|&x| x + 1 < nodes) else {
            break;
        };
        seq[pos] += 1;
        seq[pos + 1..].fill(0);
    }
    Ok(classes.into_values().collect())
}

fn from_pruefer(seq: &[usize]) -> ExplicitTree {
    let nodes = seq.len() + 2;
    let mut degree = vec![1usize; nodes];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(nodes - 1);
    for &x in seq {
        let leaf = (0..nodes)
            .find(|&v| degree[v] == 1)
            .expect("a leaf remains");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..nodes).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges.sort_unstable();
    ExplicitTree { nodes, edges }
}

/// Smallest AHU encoding over all choices of root.
pub fn canonical_form(tree: &ExplicitTree) -> String {
    let adjacency = tree.adjacency();
    (0..tree.nodes)
        .map(|root| encode(&adjacency, root, usize::MAX))
        .min()
        .unwrap_or_default()
}

fn encode(adjacency: &[Vec<(usize, usize)>], v: usize, parent: usize) -> String {
    let mut children: Vec<String> = adjacency[v]
        .iter()
        .filter(|&&(w, _)| w != parent)
        .map(|&(w, _)| encode(adjacency, w, v))
        .collect();
    children.sort_unstable();
    format!("({})", children.concat())
}
