//! Permutations on strand labels, crossing types and their enumeration.
//!
//! A permutation is stored purely as its position-to-label sequence: `seq[p]`
//! is the label of the strand currently at position `p`. All moves below are
//! adjacent exchanges of sequence entries, so no composition convention is
//! ever needed.
//!
//! A crossing type `(I1, I2, I3)` is an ordered partition of the labels with
//! `|I2| = 2`; it records which strands pass left of, through, and right of a
//! crossing. A type is *essential* when some strand in `I3` carries a label
//! larger than both labels in `I2`. Double crossing types `(J1..J5)` with
//! `|J2| = |J4| = 2` describe two crossings on the same level.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Error;
use crate::Result;

/// Default upper bound on the strand count accepted by the enumeration entry
/// points. Larger values are possible via the `_with_limit` variants.
pub const DEFAULT_MAX_N: usize = 9;

/// Smallest strand count for which types are enumerated.
pub const MIN_ENUMERATION_N: usize = 3;

/// A labelling of `n` strand positions by the labels `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    seq: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its position-to-label sequence.
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        if n < 2 {
            return Err(Error::StrandCountOutOfRange {
                n,
                min: 2,
                max: usize::MAX,
            });
        }
        let mut seen = vec![false; n + 1];
        for &x in &seq {
            if x == 0 || x > n || seen[x] {
                return Err(Error::NotAPermutation { seq, n });
            }
            seen[x] = true;
        }
        Ok(Self { seq })
    }

    /// The identity labelling `(1, 2, ..., n)`.
    pub fn identity(n: usize) -> Self {
        Self {
            seq: (1..=n).collect(),
        }
    }

    /// The reversal `(n, n-1, ..., 1)`, the root of the descending tree.
    pub fn reversal(n: usize) -> Self {
        Self {
            seq: (1..=n).rev().collect(),
        }
    }

    /// A uniformly random labelling.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut seq: Vec<usize> = (1..=n).collect();
        seq.shuffle(rng);
        Self { seq }
    }

    pub fn n(&self) -> usize {
        self.seq.len()
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    /// Label at position `pos` (1-based).
    pub fn label_at(&self, pos: usize) -> usize {
        self.seq[pos - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.seq.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Exchanges the labels at positions `i` and `i + 1`; involutive.
    pub fn swap_adjacent(&self, i: usize) -> Result<Self> {
        if i == 0 || i >= self.n() {
            return Err(Error::PositionOutOfRange {
                pos: i,
                max: self.n() - 1,
            });
        }
        Ok(self.swapped(i))
    }

    /// Unchecked adjacent exchange for internal callers.
    pub(crate) fn swapped(&self, i: usize) -> Self {
        debug_assert!(i >= 1 && i < self.n());
        let mut seq = self.seq.clone();
        seq.swap(i - 1, i);
        Self { seq }
    }

    /// Number of out-of-order pairs in the sequence.
    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.seq.len() {
            for j in i + 1..self.seq.len() {
                if self.seq[i] > self.seq[j] {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.seq.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// All `n!` labellings, in a deterministic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut items: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    permute_rec(&mut items, 0, &mut out);
    out
}

fn permute_rec(items: &mut Vec<usize>, at: usize, out: &mut Vec<Permutation>) {
    if at == items.len() {
        out.push(Permutation { seq: items.clone() });
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute_rec(items, at + 1, out);
        items.swap(at, i);
    }
}

/// An ordered partition `(I1, I2, I3)` of `1..=n` with `|I2| = 2`.
///
/// Blocks are stored ascending; the derived `Ord` therefore orders types
/// lexicographically by `(I1, I2, I3)` compared as sorted label lists, which
/// is the enumeration (and generator numbering) order used everywhere.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CrossingType {
    n: usize,
    i1: Vec<usize>,
    i2: Vec<usize>,
    i3: Vec<usize>,
}

fn check_partition(n: usize, blocks: &[&[usize]]) -> Result<()> {
    let mut seen = vec![false; n + 1];
    let mut total = 0;
    for block in blocks {
        for &x in *block {
            if x == 0 || x > n {
                return Err(Error::InvalidPartition {
                    n,
                    reason: format!("label {x} out of range"),
                });
            }
            if seen[x] {
                return Err(Error::InvalidPartition {
                    n,
                    reason: format!("label {x} appears twice"),
                });
            }
            seen[x] = true;
            total += 1;
        }
    }
    if total != n {
        return Err(Error::InvalidPartition {
            n,
            reason: format!("blocks cover {total} of {n} labels"),
        });
    }
    Ok(())
}

impl CrossingType {
    pub fn new(
        n: usize,
        mut i1: Vec<usize>,
        mut i2: Vec<usize>,
        mut i3: Vec<usize>,
    ) -> Result<Self> {
        i1.sort_unstable();
        i2.sort_unstable();
        i3.sort_unstable();
        check_partition(n, &[&i1, &i2, &i3])?;
        if i2.len() != 2 {
            return Err(Error::InvalidPartition {
                n,
                reason: format!("middle block has {} labels, expected 2", i2.len()),
            });
        }
        Ok(Self { n, i1, i2, i3 })
    }

    /// The type of the crossing at position `k` of the labelling `p`:
    /// `I1` holds the first `k - 1` labels, `I2` the two labels being
    /// exchanged, `I3` the rest.
    pub fn at(p: &Permutation, k: usize) -> Result<Self> {
        if k == 0 || k >= p.n() {
            return Err(Error::PositionOutOfRange {
                pos: k,
                max: p.n() - 1,
            });
        }
        let seq = p.seq();
        let mut i1 = seq[..k - 1].to_vec();
        let mut i2 = seq[k - 1..k + 1].to_vec();
        let mut i3 = seq[k + 1..].to_vec();
        i1.sort_unstable();
        i2.sort_unstable();
        i3.sort_unstable();
        Ok(Self {
            n: p.n(),
            i1,
            i2,
            i3,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ascending label lists of the three blocks.
    pub fn blocks(&self) -> (&[usize], &[usize], &[usize]) {
        (&self.i1, &self.i2, &self.i3)
    }

    pub fn i1(&self) -> &[usize] {
        &self.i1
    }

    pub fn i2(&self) -> &[usize] {
        &self.i2
    }

    pub fn i3(&self) -> &[usize] {
        &self.i3
    }

    /// True when some label in `I3` exceeds both labels in `I2`.
    pub fn is_essential(&self) -> bool {
        match self.i3.last() {
            Some(&m) => m > self.i2[1],
            None => false,
        }
    }

    /// Position of the crossing in the generator this type names: `|I1| + 1`.
    pub fn position(&self) -> usize {
        self.i1.len() + 1
    }

    /// The generator whose labelling lists `I1`, `I2`, `I3` each in
    /// decreasing order, crossing at `position()`.
    pub fn decreasing_generator(&self) -> GroupoidGenerator {
        let mut seq = Vec::with_capacity(self.n);
        seq.extend(self.i1.iter().rev());
        seq.extend(self.i2.iter().rev());
        seq.extend(self.i3.iter().rev());
        GroupoidGenerator {
            alpha: Permutation { seq },
            k: self.position(),
        }
    }

    /// Canonical name: `I1` decreasing, then `<`, the two `I2` labels
    /// decreasing, then `>`. `I3` is omitted. Example: `3<2,1>`.
    pub fn name(&self) -> String {
        let join = |labels: &[usize]| {
            labels
                .iter()
                .rev()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{}<{}>", join(&self.i1), join(&self.i2))
    }

    /// Parses a canonical name back into a type on `n` strands.
    pub fn parse(n: usize, input: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: input.to_string(),
            what: "crossing type",
            reason: reason.to_string(),
        };
        let open = input.find('<').ok_or_else(|| err("missing '<'"))?;
        if !input.ends_with('>') {
            return Err(err("missing closing '>'"));
        }
        let head = &input[..open];
        let mid = &input[open + 1..input.len() - 1];
        let parse_labels = |s: &str| -> Result<Vec<usize>> {
            if s.is_empty() {
                return Ok(Vec::new());
            }
            s.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<usize>()
                        .map_err(|_| err(&format!("bad label {tok:?}")))
                })
                .collect()
        };
        let i1 = parse_labels(head)?;
        let i2 = parse_labels(mid)?;
        if i2.len() != 2 {
            return Err(err("expected exactly two labels between '<' and '>'"));
        }
        for labels in [&i1, &i2] {
            if labels.windows(2).any(|w| w[0] <= w[1]) {
                return Err(err("labels must be listed in decreasing order"));
            }
        }
        let mut used = vec![false; n + 1];
        for &x in i1.iter().chain(i2.iter()) {
            if x == 0 || x > n {
                return Err(err(&format!("label {x} out of range 1..={n}")));
            }
            if used[x] {
                return Err(err(&format!("label {x} appears twice")));
            }
            used[x] = true;
        }
        let i3: Vec<usize> = (1..=n).filter(|&x| !used[x]).collect();
        Self::new(n, i1, i2, i3)
    }
}

impl fmt::Display for CrossingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// An ordered partition `(J1, ..., J5)` of `1..=n` with `|J2| = |J4| = 2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DoubleCrossingType {
    n: usize,
    blocks: [Vec<usize>; 5],
}

impl DoubleCrossingType {
    pub fn new(n: usize, mut blocks: [Vec<usize>; 5]) -> Result<Self> {
        for block in blocks.iter_mut() {
            block.sort_unstable();
        }
        {
            let refs: Vec<&[usize]> = blocks.iter().map(|b| b.as_slice()).collect();
            check_partition(n, &refs)?;
        }
        if blocks[1].len() != 2 || blocks[3].len() != 2 {
            return Err(Error::InvalidPartition {
                n,
                reason: "second and fourth blocks must each hold 2 labels".to_string(),
            });
        }
        Ok(Self { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ascending label list of block `r`, `r` in `1..=5`.
    pub fn block(&self, r: usize) -> &[usize] {
        &self.blocks[r - 1]
    }

    /// True when some label in `J3` exceeds both labels of `J2` and some
    /// label in `J5` exceeds both labels of `J4`. The witnesses must come
    /// from `J3` and `J5` themselves.
    pub fn is_essential(&self) -> bool {
        let above = |block: &[usize], pair: &[usize]| match block.last() {
            Some(&m) => m > pair[1],
            None => false,
        };
        above(&self.blocks[2], &self.blocks[1]) && above(&self.blocks[4], &self.blocks[3])
    }

    /// The two crossing types obtained by separating the levels:
    /// `(J1, J2, J3+J4+J5)` and `(J1+J2+J3, J4, J5)`.
    pub fn projections(&self) -> (CrossingType, CrossingType) {
        let union = |parts: &[&[usize]]| {
            let mut v: Vec<usize> = parts.iter().flat_map(|p| p.iter().copied()).collect();
            v.sort_unstable();
            v
        };
        let first = CrossingType {
            n: self.n,
            i1: self.blocks[0].clone(),
            i2: self.blocks[1].clone(),
            i3: union(&[&self.blocks[2], &self.blocks[3], &self.blocks[4]]),
        };
        let second = CrossingType {
            n: self.n,
            i1: union(&[&self.blocks[0], &self.blocks[1], &self.blocks[2]]),
            i2: self.blocks[3].clone(),
            i3: self.blocks[4].clone(),
        };
        (first, second)
    }

    /// Name in the same spirit as crossing-type names, with both exchanged
    /// pairs bracketed: e.g. `<2,1>3<5,4>6`.
    pub fn name(&self) -> String {
        let join = |labels: &[usize]| {
            labels
                .iter()
                .rev()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "{}<{}>{}<{}>{}",
            join(&self.blocks[0]),
            join(&self.blocks[1]),
            join(&self.blocks[2]),
            join(&self.blocks[3]),
            join(&self.blocks[4]),
        )
    }
}

impl fmt::Display for DoubleCrossingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// The groupoid generator `[alpha, k]`: the single crossing at position `k`
/// applied to the labelling `alpha`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupoidGenerator {
    alpha: Permutation,
    k: usize,
}

impl GroupoidGenerator {
    pub fn new(alpha: Permutation, k: usize) -> Result<Self> {
        if k == 0 || k >= alpha.n() {
            return Err(Error::PositionOutOfRange {
                pos: k,
                max: alpha.n() - 1,
            });
        }
        Ok(Self { alpha, k })
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.alpha.n()
    }

    /// The labelling after the crossing.
    pub fn target(&self) -> Permutation {
        self.alpha.swapped(self.k)
    }

    pub fn crossing_type(&self) -> CrossingType {
        CrossingType::at(&self.alpha, self.k).expect("position validated on construction")
    }

    pub fn is_essential(&self) -> bool {
        self.crossing_type().is_essential()
    }
}

impl fmt::Display for GroupoidGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[({}), {}]", self.alpha, self.k)
    }
}

fn check_enumeration_range(n: usize, max_n: usize) -> Result<()> {
    if n < MIN_ENUMERATION_N || n > max_n {
        return Err(Error::StrandCountOutOfRange {
            n,
            min: MIN_ENUMERATION_N,
            max: max_n,
        });
    }
    Ok(())
}

/// All essential crossing types on `n` strands, each exactly once, ordered
/// lexicographically by `(I1, I2, I3)` as sorted label lists.
pub fn enumerate_essential_crossing_types(n: usize) -> Result<Vec<CrossingType>> {
    enumerate_essential_crossing_types_with_limit(n, DEFAULT_MAX_N)
}

pub fn enumerate_essential_crossing_types_with_limit(
    n: usize,
    max_n: usize,
) -> Result<Vec<CrossingType>> {
    check_enumeration_range(n, max_n)?;
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let rest: Vec<usize> = (1..=n).filter(|&x| x != a && x != b).collect();
            for mask in 0..(1u32 << rest.len()) {
                let mut i1 = Vec::new();
                let mut i3 = Vec::new();
                for (t, &x) in rest.iter().enumerate() {
                    if mask >> t & 1 == 1 {
                        i1.push(x);
                    } else {
                        i3.push(x);
                    }
                }
                let ty = CrossingType {
                    n,
                    i1,
                    i2: vec![a, b],
                    i3,
                };
                if ty.is_essential() {
                    out.push(ty);
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// All essential double crossing types on `n` strands, ordered
/// lexicographically by `(J1, ..., J5)` as sorted label lists.
pub fn enumerate_essential_double_types(n: usize) -> Result<Vec<DoubleCrossingType>> {
    enumerate_essential_double_types_with_limit(n, DEFAULT_MAX_N)
}

pub fn enumerate_essential_double_types_with_limit(
    n: usize,
    max_n: usize,
) -> Result<Vec<DoubleCrossingType>> {
    check_enumeration_range(n, max_n)?;
    let mut out = Vec::new();
    let labels: Vec<usize> = (1..=n).collect();
    for_each_pair(&labels, |j2, rest1| {
        for_each_pair(rest1, |j4, rest2| {
            // Distribute the leftover labels over J1, J3, J5.
            let ways = 3usize.pow(rest2.len() as u32);
            for code in 0..ways {
                let mut blocks: [Vec<usize>; 5] =
                    [Vec::new(), j2.to_vec(), Vec::new(), j4.to_vec(), Vec::new()];
                let mut c = code;
                for &x in rest2 {
                    blocks[[0usize, 2, 4][c % 3]].push(x);
                    c /= 3;
                }
                let ty = DoubleCrossingType { n, blocks };
                if ty.is_essential() {
                    out.push(ty);
                }
            }
        });
    });
    out.sort_unstable();
    Ok(out)
}

fn for_each_pair(labels: &[usize], mut f: impl FnMut(&[usize; 2], &[usize])) {
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let pair = [labels[i], labels[j]];
            let rest: Vec<usize> = labels
                .iter()
                .copied()
                .filter(|&x| x != pair[0] && x != pair[1])
                .collect();
            f(&pair, &rest);
        }
    }
}

/// Independent count of essential crossing types by scanning all `3^n`
/// block assignments. Deliberately shares no code with the enumerator.
pub fn count_essential_crossing_types_exhaustive(n: usize) -> usize {
    let mut count = 0;
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut mid = Vec::new();
        let mut right_max = 0;
        for label in 1..=n {
            match c % 3 {
                1 => mid.push(label),
                2 => right_max = label,
                _ => {}
            }
            c /= 3;
        }
        if mid.len() == 2 && right_max > mid[1] {
            count += 1;
        }
    }
    count
}

/// Independent count of essential double crossing types by scanning all
/// `5^n` block assignments.
pub fn count_essential_double_types_exhaustive(n: usize) -> usize {
    let mut count = 0;
    let total = 5usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut j2 = Vec::new();
        let mut j4 = Vec::new();
        let mut j3_max = 0;
        let mut j5_max = 0;
        for label in 1..=n {
            match c % 5 {
                1 => j2.push(label),
                2 => j3_max = label,
                3 => j4.push(label),
                4 => j5_max = label,
                _ => {}
            }
            c /= 5;
        }
        if j2.len() == 2 && j4.len() == 2 && j3_max > j2[1] && j5_max > j4[1] {
            count += 1;
        }
    }
    count
}
