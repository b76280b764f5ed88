//! Complete full t-ary trees, addressed purely arithmetically, and explicit
//! edge-list trees for the verifier and the brute-force oracle.
//!
//! A tree with branching factor `t` and `n` levels has `t^h` edges on level
//! `h`, `t^n` leaves and `m = (t^{n+1} - t) / (t - 1)` edges in total. Nodes
//! are indexed breadth-first as `(depth, index)`; edge `(h, i)` joins node
//! `(h - 1, i / t)` to node `(h, i)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTree")]
pub struct TaryTree {
    t: u32,
    n: u32,
}

#[derive(Deserialize)]
struct RawTree {
    t: u32,
    n: u32,
}

impl TryFrom<RawTree> for TaryTree {
    type Error = Error;

    fn try_from(raw: RawTree) -> Result<Self> {
        TaryTree::new(raw.t, raw.n)
    }
}

impl TaryTree {
    /// Rejects `t < 2`, `n < 1`, and trees whose label range does not fit in
    /// an `i64`.
    pub fn new(t: u32, n: u32) -> Result<Self> {
        if t < 2 {
            return Err(Error::param(format!("branching factor {t} < 2")));
        }
        if n < 1 {
            return Err(Error::param("a tree needs at least one level"));
        }
        // Every label and vertex sum is below (t + 1) * m < t^{n+2}.
        (t as i64)
            .checked_pow(n + 2)
            .ok_or_else(|| Error::too_large(format!("t = {t}, n = {n} overflows i64 labels")))?;
        Ok(TaryTree { t, n })
    }

    pub fn branching(&self) -> u32 {
        self.t
    }

    pub fn levels(&self) -> u32 {
        self.n
    }

    /// Number of edges on level `h`, which is also the number of nodes at
    /// depth `h`.
    pub fn level_size(&self, h: u32) -> u64 {
        (self.t as u64).pow(h)
    }

    pub fn edge_count(&self) -> u64 {
        ((self.t as u64).pow(self.n + 1) - self.t as u64) / (self.t as u64 - 1)
    }

    pub fn node_count(&self) -> u64 {
        self.edge_count() + 1
    }

    pub fn leaf_count(&self) -> u64 {
        self.level_size(self.n)
    }

    /// Breadth-first position of a node, with the root at 0.
    pub fn node_ordinal(&self, node: NodeId) -> u64 {
        let t = self.t as u64;
        (t.pow(node.depth) - 1) / (t - 1) + node.index
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (1..=self.n)
            .flat_map(move |h| (0..self.level_size(h)).map(move |index| EdgeId { level: h, index }))
    }

    /// Explicit form with breadth-first vertex ids and edges in level order.
    pub fn to_explicit(&self) -> ExplicitTree {
        let edges = self
            .edges()
            .map(|e| {
                let (u, v) = e.endpoints(self.t);
                (self.node_ordinal(u) as usize, self.node_ordinal(v) as usize)
            })
            .collect();
        ExplicitTree {
            nodes: self.node_count() as usize,
            edges,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeId {
    pub depth: u32,
    pub index: u64,
}

impl NodeId {
    pub const ROOT: NodeId = NodeId { depth: 0, index: 0 };

    pub fn parent(self, t: u32) -> Option<NodeId> {
        (self.depth > 0).then(|| NodeId {
            depth: self.depth - 1,
            index: self.index / t as u64,
        })
    }

    pub fn children(self, t: u32) -> impl Iterator<Item = NodeId> {
        let t = t as u64;
        (0..t).map(move |j| NodeId {
            depth: self.depth + 1,
            index: t * self.index + j,
        })
    }

    /// The edge joining this node to its parent.
    pub fn parent_edge(self) -> Option<EdgeId> {
        (self.depth > 0).then_some(EdgeId {
            level: self.depth,
            index: self.index,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId {
    pub level: u32,
    pub index: u64,
}

impl EdgeId {
    /// `(upper, lower)` endpoints.
    pub fn endpoints(self, t: u32) -> (NodeId, NodeId) {
        let lower = NodeId {
            depth: self.level,
            index: self.index,
        };
        (lower.parent(t).unwrap_or(NodeId::ROOT), lower)
    }
}

/// The t-ary number `(n, k, a)_t = t^n + t^{n-1} + ... + t^k + t^{k-2} + ... + t^a`:
/// dense exponents from `n` down to `k`, then every other exponent down to `a`.
///
/// ```
/// use local_antimagic::tree::tary_value;
///
/// assert_eq!(tary_value(3, 2, 0, 3).unwrap(), 27 + 9 + 1);
/// assert_eq!(tary_value(3, 1, 1, 3).unwrap(), 27 + 9 + 3);
/// ```
pub fn tary_value(n: u32, k: u32, a: u32, t: u32) -> Result<i64> {
    if !(n >= k && k >= a) {
        return Err(Error::param(format!("({n},{k},{a}) needs n >= k >= a")));
    }
    if !(k - a).is_multiple_of(2) {
        return Err(Error::param(format!(
            "({n},{k},{a}): k and a differ in parity"
        )));
    }
    let dense = k..=n;
    let sparse = (a..k).step_by(2);
    dense.chain(sparse).try_fold(0i64, |acc, e| {
        (t as i64)
            .checked_pow(e)
            .and_then(|p| acc.checked_add(p))
            .ok_or_else(|| Error::too_large(format!("({n},{k},{a})_{t}")))
    })
}

/// The order in which levels receive consecutive blocks of labels.
///
/// Even levels ascending, then odd levels below `n` descending, then `n`.
///
/// ```
/// use local_antimagic::tree::level_order;
///
/// assert_eq!(level_order(4), [2, 3, 1, 4]);
/// assert_eq!(level_order(5), [2, 4, 3, 1, 5]);
/// ```
pub fn level_order(n: u32) -> Vec<u32> {
    if n == 0 {
        return Vec::new();
    }
    let mut order: Vec<u32> = (1..n).filter(|h| h % 2 == 0).collect();
    order.extend((1..n).rev().filter(|h| h % 2 == 1));
    order.push(n);
    order
}

/// Label block of every level, indexed by `level - 1`.
pub fn level_label_ranges(t: u32, n: u32) -> Result<Vec<Interval>> {
    let tree = TaryTree::new(t, n)?;
    let mut ranges = vec![None; n as usize];
    let mut next: i64 = 1;
    for h in level_order(n) {
        let size = tree.level_size(h);
        ranges[(h - 1) as usize] = Some(Interval::with_len(next, size)?);
        next += size as i64;
    }
    Ok(ranges
        .into_iter()
        .map(|r| r.expect("level order covers every level"))
        .collect())
}

/// The block of consecutive labels that level `level` receives.
///
/// ```
/// use local_antimagic::tree::level_label_range;
///
/// let r = level_label_range(3, 4, 1).unwrap();
/// assert_eq!((r.lo(), r.hi()), (37, 39));
/// ```
pub fn level_label_range(t: u32, n: u32, level: u32) -> Result<Interval> {
    if level < 1 || level > n {
        return Err(Error::param(format!("level {level} outside [1, {n}]")));
    }
    Ok(level_label_ranges(t, n)?[(level - 1) as usize])
}

/// An arbitrary tree given by its vertex count and edge list, with 0-based
/// vertex ids. Serializes as `{"nodes": int, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitTree {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl ExplicitTree {
    /// A path on `nodes` vertices.
    pub fn path(nodes: usize) -> Self {
        ExplicitTree {
            nodes,
            edges: (1..nodes).map(|v| (v - 1, v)).collect(),
        }
    }

    /// The star `K_{1, leaves}` centred at vertex 0.
    pub fn star(leaves: usize) -> Self {
        ExplicitTree {
            nodes: leaves + 1,
            edges: (1..=leaves).map(|v| (0, v)).collect(),
        }
    }

    /// Checks ids, simplicity and connectivity; a connected graph with
    /// `nodes - 1` edges is a tree.
    pub fn validate(&self) -> Result<()> {
        if self.nodes == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        if self.edges.len() + 1 != self.nodes {
            return Err(Error::InvalidTree(format!(
                "{} vertices need {} edges, found {}",
                self.nodes,
                self.nodes - 1,
                self.edges.len()
            )));
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u >= self.nodes || v >= self.nodes {
                return Err(Error::InvalidTree(format!(
                    "edge {i} ({u}, {v}) names a missing vertex"
                )));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("edge {i} is a loop at {u}")));
            }
        }
        let adjacency = self.adjacency();
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidTree(format!(
                "vertex {v} is unreachable from vertex 0"
            )));
        }
        Ok(())
    }

    /// Neighbours of every vertex as `(neighbour, edge index)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u < self.nodes && v < self.nodes {
                adj[u].push((v, i));
                adj[v].push((u, i));
            }
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn leaf_count(&self) -> usize {
        self.degrees().iter().filter(|&&d| d == 1).count()
    }

    /// Distance of every vertex from vertex 0. Assumes a validated tree.
    pub fn depths(&self) -> Vec<u32> {
        let adjacency = self.adjacency();
        let mut depth = vec![u32::MAX; self.nodes];
        let mut queue = std::collections::VecDeque::from([0]);
        depth[0] = 0;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adjacency[u] {
                if depth[v] == u32::MAX {
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        depth
    }
}
