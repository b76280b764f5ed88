//! Level-ordered construction of local antimagic labelings of complete full
//! t-ary trees, and closed forms for the colors it produces.
//!
//! Labels are handed out in consecutive blocks, one block per level, in the
//! order given by [`level_order`]. The root's edges take the level-1 block in
//! ascending order. Each lower level is then split into `t`-tuples with
//! consecutive sums, and tuples are matched to parents in reverse: the
//! smallest tuple sum goes under the largest parent label. With consecutive
//! parent labels this makes every vertex of a row sum to the same color.
//!
//! For even `t` every row below the root has an even number of vertices, so
//! the tuple sums have one isolated value. That tuple goes under the largest
//! parent label and produces a second color, the jump color, held by a single
//! vertex.
//!
//! Odd `t` yields `t^n + 1` colors: every row above the last internal one
//! reuses a leaf color. Even `t` yields at most `t^n + 2`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::tuple_partition;
use crate::tree::{level_label_ranges, level_order, tary_value, EdgeId, NodeId, TaryTree};
use crate::verifier::LabeledTree;

/// Default upper bound on the number of edges [`label_tree`] will label.
pub const DEFAULT_MAX_LABELS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelerConfig {
    pub max_labels: u64,
}

impl Default for LabelerConfig {
    fn default() -> Self {
        LabelerConfig {
            max_labels: DEFAULT_MAX_LABELS,
        }
    }
}

/// An assignment of an integer label to every edge of a [`TaryTree`].
///
/// Serializes as `{"t", "n", "labels": [{"level", "index", "label"}, ...]}`
/// with entries sorted by `(level, index)`. Nothing here requires the labels
/// to form a bijection; that is the verifier's job.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLabeling", into = "RawLabeling")]
pub struct EdgeLabeling {
    tree: TaryTree,
    /// `levels[h - 1][i]` is the label of edge `(h, i)`.
    levels: Vec<Vec<i64>>,
}

impl EdgeLabeling {
    /// `levels[h - 1]` must hold exactly `t^h` labels.
    pub fn new(tree: TaryTree, levels: Vec<Vec<i64>>) -> Result<Self> {
        if levels.len() != tree.levels() as usize {
            return Err(Error::param(format!(
                "{} levels of labels for a tree with {} levels",
                levels.len(),
                tree.levels()
            )));
        }
        for (h, level) in (1..).zip(&levels) {
            if level.len() as u64 != tree.level_size(h) {
                return Err(Error::param(format!(
                    "level {h} has {} labels, expected {}",
                    level.len(),
                    tree.level_size(h)
                )));
            }
        }
        Ok(EdgeLabeling { tree, levels })
    }

    pub fn tree(&self) -> TaryTree {
        self.tree
    }

    pub fn label(&self, edge: EdgeId) -> i64 {
        self.levels[(edge.level - 1) as usize][edge.index as usize]
    }

    pub fn level(&self, h: u32) -> &[i64] {
        &self.levels[(h - 1) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, i64)> + '_ {
        (1..).zip(&self.levels).flat_map(|(level, labels)| {
            labels.iter().enumerate().map(move |(i, &l)| {
                (
                    EdgeId {
                        level,
                        index: i as u64,
                    },
                    l,
                )
            })
        })
    }

    /// Vertex sums of the row at `depth`, by index within the row.
    pub fn row_sums(&self, depth: u32) -> Vec<i64> {
        let t = self.tree.branching() as usize;
        let n = self.tree.levels();
        let size = self.tree.level_size(depth) as usize;
        (0..size)
            .map(|i| {
                let up = if depth > 0 { self.level(depth)[i] } else { 0 };
                let down: i64 = if depth < n {
                    self.level(depth + 1)[t * i..t * (i + 1)].iter().sum()
                } else {
                    0
                };
                up + down
            })
            .collect()
    }

    /// Explicit form with breadth-first vertex ids, edges in level order.
    pub fn to_labeled_tree(&self) -> LabeledTree {
        let shape = self.tree.to_explicit();
        LabeledTree {
            nodes: shape.nodes,
            edges: shape
                .edges
                .into_iter()
                .zip(self.levels.iter().flatten())
                .map(|((u, v), &l)| (u, v, Some(l)))
                .collect(),
        }
    }

    fn swap_child_tuples(&mut self, depth: u32, a: usize, b: usize) {
        let t = self.tree.branching() as usize;
        let level = &mut self.levels[depth as usize];
        for j in 0..t {
            level.swap(t * a + j, t * b + j);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawLabeling {
    t: u32,
    n: u32,
    labels: Vec<RawEntry>,
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    level: u32,
    index: u64,
    label: i64,
}

impl TryFrom<RawLabeling> for EdgeLabeling {
    type Error = Error;

    fn try_from(raw: RawLabeling) -> Result<Self> {
        let tree = TaryTree::new(raw.t, raw.n)?;
        let mut levels: Vec<Vec<Option<i64>>> = (1..=tree.levels())
            .map(|h| vec![None; tree.level_size(h) as usize])
            .collect();
        for e in raw.labels {
            let slot = (e.level >= 1 && e.level <= tree.levels())
                .then(|| levels[(e.level - 1) as usize].get_mut(e.index as usize))
                .flatten()
                .ok_or_else(|| {
                    Error::param(format!("no edge ({}, {}) in the tree", e.level, e.index))
                })?;
            if slot.replace(e.label).is_some() {
                return Err(Error::param(format!(
                    "edge ({}, {}) labeled twice",
                    e.level, e.index
                )));
            }
        }
        let levels = (1..)
            .zip(levels)
            .map(|(h, level)| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, l)| {
                        l.ok_or_else(|| Error::param(format!("edge ({h}, {i}) has no label")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        EdgeLabeling::new(tree, levels)
    }
}

impl From<EdgeLabeling> for RawLabeling {
    fn from(l: EdgeLabeling) -> Self {
        RawLabeling {
            t: l.tree.branching(),
            n: l.tree.levels(),
            labels: l
                .iter()
                .map(|(e, label)| RawEntry {
                    level: e.level,
                    index: e.index,
                    label,
                })
                .collect(),
        }
    }
}

/// Labels the complete full t-ary tree with `n` levels using the default
/// size guard.
///
/// ```
/// use local_antimagic::labeler::label_tree;
/// use local_antimagic::verifier::check_labeling;
///
/// let labeling = label_tree(3, 4).unwrap();
/// let report = check_labeling(&labeling).unwrap();
/// assert!(report.is_local_antimagic);
/// assert_eq!(report.distinct_colors, 3usize.pow(4) + 1);
/// ```
pub fn label_tree(t: u32, n: u32) -> Result<EdgeLabeling> {
    label_tree_with(t, n, &LabelerConfig::default())
}

pub fn label_tree_with(t: u32, n: u32, config: &LabelerConfig) -> Result<EdgeLabeling> {
    let tree = TaryTree::new(t, n)?;
    if tree.edge_count() > config.max_labels {
        return Err(Error::too_large(format!(
            "t = {t}, n = {n} has {} edges, limit is {}",
            tree.edge_count(),
            config.max_labels
        )));
    }
    let levels = match n {
        1 => vec![(1..=t as i64).collect()],
        2 if t.is_multiple_of(2) => two_level_even(t)?,
        _ => level_ordered(&tree)?,
    };
    EdgeLabeling::new(tree, levels)
}

fn level_ordered(tree: &TaryTree) -> Result<Vec<Vec<i64>>> {
    let t = tree.branching() as usize;
    let ranges = level_label_ranges(tree.branching(), tree.levels())?;
    let mut levels: Vec<Vec<i64>> = Vec::with_capacity(ranges.len());
    levels.push(ranges[0].iter().collect());

    for h in 2..=tree.levels() {
        let parents = &levels[(h - 2) as usize];
        let c = parents.len();
        let part = tuple_partition(t, c as u64, ranges[(h - 1) as usize].lo())?;

        let mut by_label: Vec<usize> = (0..c).collect();
        by_label.sort_unstable_by_key(|&i| parents[i]);

        let mut level = vec![0i64; c * t];
        let isolated = part.profile().isolate.is_some();
        for (k, tuple) in part.tuples().enumerate() {
            let parent = match isolated {
                true if k == c - 1 => by_label[c - 1],
                true => by_label[c - 2 - k],
                false => by_label[c - 1 - k],
            };
            let slot = &mut level[parent * t..(parent + 1) * t];
            slot.copy_from_slice(tuple);
            slot.sort_unstable();
        }
        levels.push(level);
    }
    Ok(levels)
}

/// Two levels, even `t`: gives exactly `t^2 + 1` colors.
///
/// The root edges carry `1` and `B = [t/2 + 3, 3t/2 + 1]`. The vertex under
/// `1` takes the rest of `[2, 2t]`, so it sums to `t^2 + 2`. The vertices
/// under `B` take tuples of `[2t + 1, t^2 + t]` with consecutive sums in
/// reverse order, giving one constant color above every label. The root sums
/// to `t^2 + t - 1`. Both `t^2 + 2` and `t^2 + t - 1` are leaf labels, so the
/// constant is the only color not carried by a leaf.
fn two_level_even(t: u32) -> Result<Vec<Vec<i64>>> {
    let tu = t as usize;
    let ti = t as i64;
    let b_lo = ti / 2 + 3;
    let b_hi = b_lo + ti - 2;

    let mut top = vec![1];
    top.extend(b_lo..=b_hi);

    let mut bottom = vec![0i64; tu * tu];
    let first: Vec<i64> = (2..=2 * ti)
        .filter(|v| !(b_lo..=b_hi).contains(v))
        .collect();
    bottom[..tu].copy_from_slice(&first);

    let part = tuple_partition(tu, (tu - 1) as u64, 2 * ti + 1)?;
    for (k, tuple) in part.tuples().enumerate() {
        let vertex = tu - 1 - k;
        let slot = &mut bottom[vertex * tu..(vertex + 1) * tu];
        slot.copy_from_slice(tuple);
        slot.sort_unstable();
    }
    Ok(vec![top, bottom])
}

/// Index and color of the vertex holding a row's jump color, if the row has
/// one: exactly two colors, one of them on a single vertex. When both colors
/// sit on a single vertex the larger one counts as the jump.
fn row_jump(sums: &[i64]) -> Option<(usize, i64)> {
    let mut census: BTreeMap<i64, usize> = BTreeMap::new();
    for &s in sums {
        *census.entry(s).or_default() += 1;
    }
    let mut it = census.iter();
    let ((&lo, &lo_n), (&hi, &hi_n)) = (it.next()?, it.next()?);
    if it.next().is_some() {
        return None;
    }
    let color = match (lo_n, hi_n) {
        (_, 1) => hi,
        (1, _) => lo,
        _ => return None,
    };
    sums.iter().position(|&s| s == color).map(|i| (i, color))
}

/// Repairs adjacent rows whose jump vertices clash.
///
/// When the jump vertex `w` of row `h + 1` is a child of the jump vertex `u`
/// of row `h` and both carry the same color, the level-`h + 1` label tuples
/// of `u` and of the row-`h` vertex with the smallest parent label are
/// exchanged. Deeper levels are left alone. Labelings without such a clash
/// are returned unchanged, which includes every odd-`t` labeling.
pub fn resolve_jump_conflicts(mut labeling: EdgeLabeling) -> EdgeLabeling {
    let tree = labeling.tree();
    let t = tree.branching();
    if t % 2 == 1 {
        return labeling;
    }
    for h in 1..tree.levels().saturating_sub(1) {
        let upper = labeling.row_sums(h);
        let lower = labeling.row_sums(h + 1);
        let (Some((u, j_upper)), Some((w, j_lower))) = (row_jump(&upper), row_jump(&lower)) else {
            continue;
        };
        let w_parent = NodeId {
            depth: h + 1,
            index: w as u64,
        }
        .parent(t)
        .map(|p| p.index as usize);
        if j_upper != j_lower || w_parent != Some(u) {
            continue;
        }
        let parents = labeling.level(h);
        let smallest = (0..parents.len()).min_by_key(|&i| parents[i]).unwrap_or(u);
        if smallest != u {
            labeling.swap_child_tuples(h, u, smallest);
        }
    }
    labeling
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    /// The root row.
    Single,
    Constant,
    ConstantWithJump,
}

/// The colors of one internal row of vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowColorPrediction {
    pub row_depth: u32,
    pub kind: RowKind,
    pub constant_color: i64,
    pub jump_color: Option<i64>,
}

impl RowColorPrediction {
    fn single(color: i64) -> Self {
        RowColorPrediction {
            row_depth: 0,
            kind: RowKind::Single,
            constant_color: color,
            jump_color: None,
        }
    }

    fn constant(row_depth: u32, color: i64) -> Self {
        RowColorPrediction {
            row_depth,
            kind: RowKind::Constant,
            constant_color: color,
            jump_color: None,
        }
    }

    fn with_jump(row_depth: u32, constant: i64, jump: i64) -> Self {
        RowColorPrediction {
            row_depth,
            kind: RowKind::ConstantWithJump,
            constant_color: constant,
            jump_color: Some(jump),
        }
    }

    pub fn colors(&self) -> impl Iterator<Item = i64> {
        std::iter::once(self.constant_color).chain(self.jump_color)
    }
}

/// Reads the color census of every internal row (depths `0..n`) off a labeling.
pub fn extract_row_colors(labeling: &EdgeLabeling) -> Result<Vec<RowColorPrediction>> {
    let n = labeling.tree().levels();
    let mut rows = Vec::with_capacity(n as usize);
    rows.push(RowColorPrediction::single(labeling.row_sums(0)[0]));
    for depth in 1..n {
        let sums = labeling.row_sums(depth);
        let mut distinct = sums.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let row = match distinct.len() {
            1 => RowColorPrediction::constant(depth, distinct[0]),
            2 => {
                let (_, jump) =
                    row_jump(&sums).ok_or(Error::IrregularRow { depth, distinct: 2 })?;
                let constant = if jump == distinct[0] {
                    distinct[1]
                } else {
                    distinct[0]
                };
                RowColorPrediction::with_jump(depth, constant, jump)
            }
            d => return Err(Error::IrregularRow { depth, distinct: d }),
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Closed-form row colors of [`label_tree`] for even `n`.
///
/// Rows at even depth `d >= 2` follow `(2t^{n+1} + (-t^3 + t^2 - t + 1) t^d - t^2 - 1) / (2t - 2)`
/// for odd `t`; rows at odd depth `d <= n - 3` follow
/// `(2t^n + (t^3 - t^2 + t - 1) t^d - t^2 - 1) / (2t - 2)`. For even `t` the
/// constant term `t^2 + 1` becomes `t^2 + 3t - 2`, and the jump colors replace
/// the coefficients of `t^d` by `-t^3 + t^2 + 2t - 2` and `t^3 - t^2 + 4t - 4`
/// respectively. The last internal row `n - 1` is computed from the label
/// blocks of levels `n - 1` and `n`; see [`last_row`].
///
/// ```
/// use local_antimagic::labeler::predict_row_colors;
///
/// let rows = predict_row_colors(3, 4).unwrap();
/// let colors: Vec<i64> = rows.iter().map(|r| r.constant_color).collect();
/// assert_eq!(colors, [114, 53, 74, 263]);
/// ```
pub fn predict_row_colors(t: u32, n: u32) -> Result<Vec<RowColorPrediction>> {
    TaryTree::new(t, n)?;
    if n % 2 == 1 {
        return Err(Error::param(format!(
            "no closed form for odd n = {n}; extract the colors from a labeling instead"
        )));
    }
    let even = t.is_multiple_of(2);
    if even && n == 2 {
        return Ok(two_level_even_rows(t));
    }

    let tt = t as i128;
    let pw = |e: u32| tt.pow(e);
    let den = 2 * tt - 2;
    let tail_odd = pw(2) + 1;
    let tail_even = pw(2) + 3 * tt - 2;
    let tail = if even { tail_even } else { tail_odd };

    let mut rows = vec![RowColorPrediction::single(root_color(t, n)?)];
    for d in 1..n - 1 {
        let row = if d % 2 == 0 {
            let base = 2 * pw(n + 1) - tail;
            let constant = exact(base + (-pw(3) + pw(2) - tt + 1) * pw(d), den)?;
            if even {
                let jump = exact(base + (-pw(3) + pw(2) + 2 * tt - 2) * pw(d), den)?;
                RowColorPrediction::with_jump(d, constant, jump)
            } else {
                RowColorPrediction::constant(d, constant)
            }
        } else {
            let base = 2 * pw(n) - tail;
            let constant = exact(base + (pw(3) - pw(2) + tt - 1) * pw(d), den)?;
            if even {
                let jump = exact(base + (pw(3) - pw(2) + 4 * tt - 4) * pw(d), den)?;
                RowColorPrediction::with_jump(d, constant, jump)
            } else {
                RowColorPrediction::constant(d, constant)
            }
        };
        rows.push(row);
    }
    rows.push(last_row(t, n)?);
    Ok(rows)
}

/// Sum of the level-1 block `[(n-1, 2, 0)_t, (n-1, 1, 1)_t]`, or `[1, t]` when `n = 2`.
fn root_color(t: u32, n: u32) -> Result<i64> {
    let lo = if n == 2 {
        1
    } else {
        tary_value(n - 1, 2, 0, t)?
    };
    let t = t as i64;
    Ok(t * lo + t * (t - 1) / 2)
}

/// Colors of row `n - 1` for even `n`.
///
/// The row's parent labels are the level-`(n-1)` block `[P, P + c - 1]` with
/// `P = (t^n - 1) / (t^2 - 1)` and `c = t^{n-1}`; its children use the level-n
/// block, which starts after `L - 1 = (t^n - t) / (t - 1)` labels. Tuple sums
/// of `[1, tc]` start at `s = (t + 1)((t - 1)c + 1) / 2` for odd `t`, and the
/// shift adds `t (L - 1)`. The largest parent meets the smallest sum, so the
/// row color is `P + c - 1 + s + t (L - 1)`. For even `t` the consecutive
/// sums start at `s = (t/2 - 1)(1 + tc) + (t - 2)c + 3c/2 + 1` and meet the
/// `c - 1` smallest parents; the isolated sum `s + 3c/2 - 1` meets the largest.
fn last_row(t: u32, n: u32) -> Result<RowColorPrediction> {
    let tt = t as i128;
    let c = tt.pow(n - 1);
    let p = exact(tt.pow(n) - 1, tt * tt - 1)? as i128;
    let shift = tt * exact(tt.pow(n) - tt, tt - 1)? as i128;
    let depth = n - 1;
    if t % 2 == 1 {
        let s = exact((tt + 1) * ((tt - 1) * c + 1), 2)? as i128;
        return Ok(RowColorPrediction::constant(
            depth,
            narrow(p + c - 1 + s + shift)?,
        ));
    }
    let k = c / 2;
    let s = (tt / 2 - 1) * (1 + tt * c) + (tt - 2) * c + 3 * k + 1;
    let constant = narrow(p + c - 2 + s + shift)?;
    let jump = narrow(p + c - 1 + s + 3 * k - 1 + shift)?;
    Ok(RowColorPrediction::with_jump(depth, constant, jump))
}

/// Rows of the two-level even-`t` construction in [`two_level_even`].
fn two_level_even_rows(t: u32) -> Vec<RowColorPrediction> {
    let t = t as i64;
    let c = t - 1;
    // Smallest tuple sum of [1, tc] for odd c, shifted to start at 2t + 1.
    let k = (c - 1) / 2;
    let s = (t / 2 - 1) * (1 + t * c) + (t - 2) * c + 3 * k + 3 + t * 2 * t;
    let constant = 3 * t / 2 + 1 + s;
    let leafy = t * t + 2;
    let depth_one = if t == 2 {
        RowColorPrediction::with_jump(1, leafy, constant)
    } else {
        RowColorPrediction::with_jump(1, constant, leafy)
    };
    vec![RowColorPrediction::single(t * t + t - 1), depth_one]
}

fn exact(num: i128, den: i128) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::Certification(format!(
            "{num} / {den} is not an integer"
        )));
    }
    narrow(num / den)
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::too_large(format!("color {v}")))
}

/// The order of levels, re-exported for callers that only need the labeler.
pub fn labeling_level_order(n: u32) -> Vec<u32> {
    level_order(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::check_labeling;

    #[test]
    fn star() {
        let l = label_tree(3, 1).unwrap();
        assert_eq!(l.level(1), [1, 2, 3]);
        assert_eq!(l.row_sums(0), [6]);
        let rows = extract_row_colors(&l).unwrap();
        assert_eq!(rows, [RowColorPrediction::single(6)]);
    }

    #[test]
    fn ternary_four_levels() {
        let l = label_tree(3, 4).unwrap();
        assert_eq!(l.level(1), [37, 38, 39]);
        assert_eq!(l.row_sums(0), [114]);
        assert!(l.row_sums(1).iter().all(|&s| s == 53));
        assert!(l.row_sums(2).iter().all(|&s| s == 74));
        assert!(l.row_sums(3).iter().all(|&s| s == 263));
        let leaves = l.row_sums(4);
        assert_eq!(leaves.iter().min(), Some(&40));
        assert_eq!(leaves.iter().max(), Some(&120));
        let report = check_labeling(&l).unwrap();
        assert_eq!(report.distinct_colors, 82);
    }

    #[test]
    fn binary_four_levels_jump() {
        let l = label_tree(2, 4).unwrap();
        assert_eq!(l.level(1), [13, 14]);
        // 13 + (1 + 3) and 14 + (2 + 4).
        assert_eq!(l.row_sums(1), [17, 20]);
        let rows = extract_row_colors(&l).unwrap();
        assert_eq!(rows[1], RowColorPrediction::with_jump(1, 17, 20));
        let jumps: Vec<_> = rows.iter().filter_map(|r| r.jump_color).collect();
        assert_eq!(jumps, [20, 24, 64]);
        assert_eq!(resolve_jump_conflicts(l.clone()), l);
    }

    #[test]
    fn binary_two_levels() {
        let l = label_tree(2, 2).unwrap();
        assert_eq!(l.level(1), [1, 4]);
        assert_eq!(l.level(2), [2, 3, 5, 6]);
        let report = check_labeling(&l).unwrap();
        assert!(report.is_local_antimagic);
        assert_eq!(report.distinct_colors, 5);
    }

    #[test]
    fn two_levels_even_t_use_one_new_color() {
        for t in [2, 4, 6, 8, 10] {
            let l = label_tree(t, 2).unwrap();
            let report = check_labeling(&l).unwrap();
            assert!(report.is_local_antimagic, "t = {t}");
            assert_eq!(report.distinct_colors as u64, (t * t + 1) as u64, "t = {t}");
            assert_eq!(l.row_sums(0), [(t * t + t - 1) as i64]);
            assert_eq!(
                extract_row_colors(&l).unwrap(),
                predict_row_colors(t, 2).unwrap()
            );
        }
    }

    #[test]
    fn odd_t_is_untouched_by_conflict_resolution() {
        let l = label_tree(3, 3).unwrap();
        assert_eq!(resolve_jump_conflicts(l.clone()), l);
    }

    #[test]
    fn injected_jump_collision_is_repaired() {
        // Row 1 sums (19, 8); row 2 sums (24, 19, 24, 24). The row-2 jump
        // vertex is a child of the row-1 jump vertex and both are 19.
        let tree = TaryTree::new(2, 3).unwrap();
        let l = EdgeLabeling::new(
            tree,
            vec![
                vec![11, 3],
                vec![6, 2, 4, 1],
                vec![8, 10, 12, 5, 13, 7, 9, 14],
            ],
        )
        .unwrap();
        assert!(!check_labeling(&l).unwrap().is_local_antimagic);

        let fixed = resolve_jump_conflicts(l);
        assert_eq!(fixed.level(2), [4, 1, 6, 2]);
        assert_eq!(fixed.level(3), [8, 10, 12, 5, 13, 7, 9, 14]);
        let report = check_labeling(&fixed).unwrap();
        assert!(report.is_valid());
    }

    #[test]
    fn formulas_for_ternary_and_binary() {
        let rows = predict_row_colors(3, 4).unwrap();
        assert_eq!(rows[0], RowColorPrediction::single(114));
        assert_eq!(rows[1], RowColorPrediction::constant(1, 53));
        assert_eq!(rows[2], RowColorPrediction::constant(2, 74));
        assert_eq!(rows[3], RowColorPrediction::constant(3, 263));

        let rows = predict_row_colors(2, 4).unwrap();
        assert_eq!(rows[1], RowColorPrediction::with_jump(1, 17, 20));
        assert_eq!(rows[2], RowColorPrediction::with_jump(2, 18, 24));
        assert_eq!(rows[3], RowColorPrediction::with_jump(3, 52, 64));
    }

    #[test]
    fn odd_n_has_no_closed_form() {
        assert!(predict_row_colors(2, 5).is_err());
        assert!(predict_row_colors(3, 1).is_err());
    }

    #[test]
    fn binary_five_levels_rows_have_at_most_two_colors() {
        let l = label_tree(2, 5).unwrap();
        let rows = extract_row_colors(&l).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows[1..]
            .iter()
            .all(|r| matches!(r.kind, RowKind::Constant | RowKind::ConstantWithJump)));
    }

    #[test]
    fn irregular_rows_are_reported() {
        let tree = TaryTree::new(3, 2).unwrap();
        let l = EdgeLabeling::new(tree, vec![vec![1, 2, 3], (4..=12).collect()]).unwrap();
        // Row 1 sums 1+15, 2+24, 3+33 are all different.
        assert_eq!(
            extract_row_colors(&l),
            Err(Error::IrregularRow {
                depth: 1,
                distinct: 3
            })
        );
    }

    #[test]
    fn size_guard() {
        let cfg = LabelerConfig { max_labels: 100 };
        assert!(matches!(
            label_tree_with(3, 4, &cfg),
            Err(Error::TooLarge(_))
        ));
        assert!(label_tree_with(3, 3, &cfg).is_ok());
    }

    #[test]
    fn json_round_trip_and_shape_errors() {
        let l = label_tree(2, 2).unwrap();
        let json = serde_json::to_string(&l).unwrap();
        assert!(json.starts_with(r#"{"t":2,"n":2,"labels":[{"level":1,"index":0,"label":1},"#));
        assert_eq!(serde_json::from_str::<EdgeLabeling>(&json).unwrap(), l);

        let missing = r#"{"t":2,"n":1,"labels":[{"level":1,"index":0,"label":1}]}"#;
        assert!(serde_json::from_str::<EdgeLabeling>(missing).is_err());
        let twice = r#"{"t":2,"n":1,"labels":[{"level":1,"index":0,"label":1},{"level":1,"index":0,"label":2}]}"#;
        assert!(serde_json::from_str::<EdgeLabeling>(twice).is_err());
        let stray = r#"{"t":2,"n":1,"labels":[{"level":2,"index":0,"label":1}]}"#;
        assert!(serde_json::from_str::<EdgeLabeling>(stray).is_err());
    }
}
