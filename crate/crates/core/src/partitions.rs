//! Partitions of consecutive integers into fixed-size tuples whose sums are
//! consecutive, or consecutive except for one isolated value.
//!
//! These are the additive analogue of Skolem's pairing problem. Pairs of
//! `[1, 4k+2]` always admit consecutive sums; pairs of `[1, 4k]` never do, and
//! the best possible is `2k - 1` consecutive sums plus one isolated sum.
//! [`tuple_partition`] lifts both pair constructions to tuples of any size by
//! splitting the interval into blocks and pairing blocks in reversed order so
//! that their partial sums are constant.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An inclusive range `[lo, hi]` of consecutive integers.
///
/// Serializes as the two-element array `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Interval {
    lo: i64,
    hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::param(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    /// The interval of `len` integers starting at `lo`.
    pub fn with_len(lo: i64, len: u64) -> Result<Self> {
        if len == 0 {
            return Err(Error::param("interval length must be positive"));
        }
        let hi = i64::try_from(len - 1)
            .ok()
            .and_then(|d| lo.checked_add(d))
            .ok_or_else(|| Error::too_large(format!("interval of length {len} from {lo}")))?;
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> u64 {
        self.hi.abs_diff(self.lo) + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, value: i64) -> bool {
        self.lo <= value && value <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn shifted(&self, delta: i64) -> Result<Self> {
        match (self.lo.checked_add(delta), self.hi.checked_add(delta)) {
            (Some(lo), Some(hi)) => Ok(Interval { lo, hi }),
            _ => Err(Error::too_large(format!("{self} shifted by {delta}"))),
        }
    }
}

impl TryFrom<(i64, i64)> for Interval {
    type Error = Error;

    fn try_from((lo, hi): (i64, i64)) -> Result<Self> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for (i64, i64) {
    fn from(iv: Interval) -> Self {
        (iv.lo, iv.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// The set of tuple sums: a block of consecutive values plus at most one
/// isolated value above the block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumProfile {
    pub consecutive: Interval,
    pub isolate: Option<i64>,
}

impl SumProfile {
    pub fn len(&self) -> u64 {
        self.consecutive.len() + u64::from(self.isolate.is_some())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_consecutive(&self) -> bool {
        self.isolate.is_none()
    }

    pub fn contains(&self, sum: i64) -> bool {
        self.consecutive.contains(sum) || self.isolate == Some(sum)
    }
}

/// A partition of an [`Interval`] into tuples of equal size, stored in
/// ascending order of tuple sum.
///
/// Every instance is certified on construction: the tuples cover the source
/// exactly once and their sums are exactly the values described by the
/// profile, each occurring once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPartition", into = "RawPartition")]
pub struct TuplePartition {
    source: Interval,
    tuple_size: usize,
    values: Vec<i64>,
    profile: SumProfile,
}

impl TuplePartition {
    pub fn source(&self) -> Interval {
        self.source
    }

    pub fn tuple_size(&self) -> usize {
        self.tuple_size
    }

    pub fn profile(&self) -> SumProfile {
        self.profile
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.tuple_size
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The tuples, in ascending order of their sums.
    pub fn tuples(&self) -> impl ExactSizeIterator<Item = &[i64]> + '_ {
        self.values.chunks_exact(self.tuple_size)
    }

    pub fn tuple(&self, i: usize) -> &[i64] {
        &self.values[i * self.tuple_size..(i + 1) * self.tuple_size]
    }

    pub fn sums(&self) -> Vec<i64> {
        self.tuples().map(|tp| tp.iter().sum()).collect()
    }

    /// Translates every element by `delta`.
    pub fn shifted(&self, delta: i64) -> Result<Self> {
        let overflow =
            || Error::too_large(format!("partition of {} shifted by {delta}", self.source));
        let step = i64::try_from(self.tuple_size)
            .ok()
            .and_then(|t| t.checked_mul(delta))
            .ok_or_else(overflow)?;
        let values = self
            .values
            .iter()
            .map(|v| v.checked_add(delta))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(overflow)?;
        let isolate = match self.profile.isolate {
            Some(s) => Some(s.checked_add(step).ok_or_else(overflow)?),
            None => None,
        };
        Ok(TuplePartition {
            source: self.source.shifted(delta)?,
            tuple_size: self.tuple_size,
            values,
            profile: SumProfile {
                consecutive: self.profile.consecutive.shifted(step)?,
                isolate,
            },
        })
    }

    /// Builds a partition from flat tuple storage, sorting tuples by sum and
    /// deriving and certifying the sum profile.
    fn certify(source: Interval, tuple_size: usize, values: Vec<i64>) -> Result<Self> {
        if tuple_size < 2 {
            return Err(Error::param(format!("tuple size {tuple_size} < 2")));
        }
        if values.len() as u64 != source.len() || !values.len().is_multiple_of(tuple_size) {
            return Err(Error::Certification(format!(
                "{} values cannot be split into {tuple_size}-tuples covering {source}",
                values.len()
            )));
        }

        let mut seen = vec![false; values.len()];
        for &v in &values {
            if !source.contains(v) {
                return Err(Error::Certification(format!("{v} lies outside {source}")));
            }
            let slot = &mut seen[(v - source.lo) as usize];
            if *slot {
                return Err(Error::Certification(format!("{v} used twice")));
            }
            *slot = true;
        }

        let mut keyed: Vec<(i64, usize)> = values
            .chunks_exact(tuple_size)
            .enumerate()
            .map(|(i, tp)| {
                tp.iter()
                    .try_fold(0i64, |acc, &v| acc.checked_add(v))
                    .map(|s| (s, i))
                    .ok_or_else(|| Error::too_large("tuple sum overflows i64"))
            })
            .collect::<Result<_>>()?;
        keyed.sort_unstable();

        let profile = profile_of(keyed.iter().map(|&(s, _)| s))?;
        let mut sorted = Vec::with_capacity(values.len());
        for &(_, i) in &keyed {
            sorted.extend_from_slice(&values[i * tuple_size..(i + 1) * tuple_size]);
        }
        Ok(TuplePartition {
            source,
            tuple_size,
            values: sorted,
            profile,
        })
    }
}

/// Reads a sum profile off an ascending sequence of sums.
fn profile_of(mut sums: impl Iterator<Item = i64>) -> Result<SumProfile> {
    let first = sums
        .next()
        .ok_or_else(|| Error::Certification("no tuples".into()))?;
    let mut hi = first;
    let mut isolate = None;
    for s in sums {
        if isolate.is_some() {
            return Err(Error::Certification(format!(
                "sum {s} follows the isolated sum {}",
                isolate.unwrap_or_default()
            )));
        }
        if s == hi + 1 {
            hi = s;
        } else if s > hi + 1 {
            isolate = Some(s);
        } else {
            return Err(Error::Certification(format!("repeated tuple sum {s}")));
        }
    }
    Ok(SumProfile {
        consecutive: Interval { lo: first, hi },
        isolate,
    })
}

#[derive(Serialize, Deserialize)]
struct RawPartition {
    source: Interval,
    tuple_size: usize,
    tuples: Vec<Vec<i64>>,
    profile: SumProfile,
}

impl TryFrom<RawPartition> for TuplePartition {
    type Error = Error;

    fn try_from(raw: RawPartition) -> Result<Self> {
        if let Some(bad) = raw.tuples.iter().find(|tp| tp.len() != raw.tuple_size) {
            return Err(Error::param(format!(
                "tuple {bad:?} does not have {} elements",
                raw.tuple_size
            )));
        }
        let values = raw.tuples.into_iter().flatten().collect();
        let p = TuplePartition::certify(raw.source, raw.tuple_size, values)?;
        if p.profile != raw.profile {
            return Err(Error::Certification(format!(
                "declared profile {:?} differs from the tuple sums {:?}",
                raw.profile, p.profile
            )));
        }
        Ok(p)
    }
}

impl From<TuplePartition> for RawPartition {
    fn from(p: TuplePartition) -> Self {
        RawPartition {
            source: p.source,
            tuple_size: p.tuple_size,
            tuples: p.tuples().map(<[i64]>::to_vec).collect(),
            profile: p.profile,
        }
    }
}

/// Pairs of `[1, 4k+2]` listed odd-first: `(1, 3k+2), (3, 3k+1), ..., (2k+1, 2k+2)`
/// then `(2, 4k+2), (4, 4k+1), ..., (2k, 3k+3)`. Sums cover `[3k+3, 5k+3]`.
fn odd_count_pairs(k: i64) -> impl Iterator<Item = [i64; 2]> {
    let odd = (0..=k).map(move |i| [2 * i + 1, 3 * k + 2 - i]);
    let even = (0..k).map(move |i| [2 * i + 2, 4 * k + 2 - i]);
    odd.chain(even)
}

/// Pairs of `[1, 4k]`: `(1, 3k), ..., (2k-1, 2k+1)`, then
/// `(2, 4k-1), ..., (2k-2, 3k+1)`, then the leftover `(2k, 4k)`.
/// Sums cover `[3k+1, 5k-1]` plus the isolated `6k`.
fn even_count_pairs(k: i64) -> impl Iterator<Item = [i64; 2]> {
    let odd = (0..k).map(move |i| [2 * i + 1, 3 * k - i]);
    let even = (0..k - 1).map(move |i| [2 * i + 2, 4 * k - 1 - i]);
    odd.chain(even).chain(std::iter::once([2 * k, 4 * k]))
}

/// Any number of pairs of `[1, 2 * count]` with the best achievable sums.
fn pairs(count: i64) -> Vec<[i64; 2]> {
    match count {
        1 => vec![[1, 2]],
        c if c % 2 == 1 => odd_count_pairs((c - 1) / 2).collect(),
        c => even_count_pairs(c / 2).collect(),
    }
}

fn check_k(k: u64, span: u64) -> Result<i64> {
    if k < 1 {
        return Err(Error::param("k must be at least 1"));
    }
    k.checked_mul(span)
        .and_then(|v| i64::try_from(v).ok())
        .ok_or_else(|| Error::too_large(format!("k = {k}")))?;
    Ok(k as i64)
}

/// Partitions `[1, 4k+2]` into `2k+1` pairs whose sums are `[3k+3, 5k+3]`.
pub fn pair_partition_odd_count(k: u64) -> Result<TuplePartition> {
    let k = check_k(k, 6)?;
    let values = odd_count_pairs(k).flatten().collect();
    TuplePartition::certify(Interval::new(1, 4 * k + 2)?, 2, values)
}

/// Partitions `[1, 4k]` into `2k` pairs whose sums are `[3k+1, 5k-1]` plus
/// the isolated sum `6k`.
pub fn pair_partition_even_count(k: u64) -> Result<TuplePartition> {
    let k = check_k(k, 6)?;
    let values = even_count_pairs(k).flatten().collect();
    TuplePartition::certify(Interval::new(1, 4 * k)?, 2, values)
}

/// Translates a partition by `delta`; sums move by `tuple_size * delta`.
pub fn shift(p: &TuplePartition, delta: i64) -> Result<TuplePartition> {
    p.shifted(delta)
}

/// Partitions `[base, base + t*count - 1]` into `count` tuples of size `t`.
///
/// The sums are consecutive when `t` or `count` is odd. When both are even
/// they are `count - 1` consecutive values plus one isolated value above them,
/// which is the best possible.
///
/// ```
/// use local_antimagic::partitions::tuple_partition;
///
/// let p = tuple_partition(3, 2, 1).unwrap();
/// assert_eq!(p.tuples().collect::<Vec<_>>(), [[1, 4, 5], [2, 3, 6]]);
/// assert_eq!(p.sums(), [10, 11]);
/// ```
pub fn tuple_partition(t: usize, count: u64, base: i64) -> Result<TuplePartition> {
    if t < 2 {
        return Err(Error::param(format!("tuple size {t} < 2")));
    }
    if count < 1 {
        return Err(Error::param("count must be at least 1"));
    }
    let total = (t as u64)
        .checked_mul(count)
        .ok_or_else(|| Error::too_large("t * count"))?;
    let source = Interval::with_len(base, total)?;
    // Every tuple sum is bounded by t * max |element|.
    source
        .lo()
        .checked_abs()
        .zip(source.hi().checked_abs())
        .and_then(|(a, b)| a.max(b).checked_mul(t as i64))
        .ok_or_else(|| Error::too_large(format!("t = {t}, count = {count}, base = {base}")))?;

    let c = count as i64;
    let ti = t as i64;
    // Block j (0-based) is [j*c + 1, (j+1)*c] before shifting.
    let block = |j: i64, i: i64| j * c + 1 + i;
    let offset = base - 1;
    let mut values = Vec::with_capacity(total as usize);

    if t % 2 == 1 {
        // Pair blocks (0,1), (2,3), ... in reversed order for constant partial
        // sums, then take the last block sequentially.
        for i in 0..c {
            for j in (0..ti - 1).step_by(2) {
                values.push(block(j, i) + offset);
                values.push(block(j + 1, c - 1 - i) + offset);
            }
            values.push(block(ti - 1, i) + offset);
        }
    } else {
        // Outer blocks (0, t-1), (1, t-2), ... pair in reversed order; the two
        // middle blocks get the pair construction.
        let outer = ti / 2 - 1;
        let middle_base = outer * c;
        for (i, [x, y]) in pairs(c).into_iter().enumerate() {
            let i = i as i64;
            for j in 0..outer {
                values.push(block(j, i) + offset);
                values.push(block(ti - 1 - j, c - 1 - i) + offset);
            }
            values.push(middle_base + x + offset);
            values.push(middle_base + y + offset);
        }
    }
    TuplePartition::certify(source, t, values)
}

/// Largest `t * count` accepted by [`consecutive_partition_exists`].
pub const EXHAUSTIVE_LIMIT: usize = 16;

/// Decides by exhaustive search whether `[1, t*count]` splits into `count`
/// tuples of size `t` whose sums are `count` consecutive integers.
pub fn consecutive_partition_exists(t: usize, count: usize) -> Result<bool> {
    if t < 2 || count < 1 {
        return Err(Error::param(format!(
            "need t >= 2 and count >= 1, got t = {t}, count = {count}"
        )));
    }
    let n = t
        .checked_mul(count)
        .filter(|&n| n <= EXHAUSTIVE_LIMIT)
        .ok_or_else(|| Error::too_large(format!("t * count must be at most {EXHAUSTIVE_LIMIT}")))?;
    let mut search = Search {
        n,
        t,
        count: count as i64,
        sums: Vec::with_capacity(count),
    };
    Ok(search.run(0))
}

struct Search {
    n: usize,
    t: usize,
    count: i64,
    sums: Vec<i64>,
}

impl Search {
    /// `used` has bit `v - 1` set for every placed value `v`.
    fn run(&mut self, used: u32) -> bool {
        let full = (1u32 << self.n) - 1;
        if used == full {
            return true;
        }
        // The tuple containing the smallest free value is chosen next, so every
        // partition is visited exactly once.
        let first = (!used).trailing_zeros() as usize;
        let rest: Vec<usize> = (first + 1..self.n)
            .filter(|&v| used & (1 << v) == 0)
            .collect();
        let mut pick = Vec::with_capacity(self.t - 1);
        self.choose(used | (1 << first), first as i64 + 1, &rest, 0, &mut pick)
    }

    fn choose(
        &mut self,
        used: u32,
        partial: i64,
        rest: &[usize],
        from: usize,
        pick: &mut Vec<usize>,
    ) -> bool {
        if pick.len() == self.t - 1 {
            let sum = partial;
            if self.sums.contains(&sum) {
                return false;
            }
            let lo = self.sums.iter().copied().chain([sum]).min().unwrap_or(sum);
            let hi = self.sums.iter().copied().chain([sum]).max().unwrap_or(sum);
            if hi - lo > self.count - 1 {
                return false;
            }
            self.sums.push(sum);
            let mask = pick.iter().fold(used, |m, &v| m | (1 << v));
            let found = self.run(mask);
            self.sums.pop();
            return found;
        }
        let need = self.t - 1 - pick.len();
        for idx in from..rest.len() {
            if rest.len() - idx < need {
                break;
            }
            let v = rest[idx];
            pick.push(v);
            let found = self.choose(used, partial + v as i64 + 1, rest, idx + 1, pick);
            pick.pop();
            if found {
                return true;
            }
        }
        false
    }
}
