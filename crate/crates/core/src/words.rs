//! Word problem for the ambient twin group.
//!
//! The group on letters `1..=n-1` is subject only to `g*g = 1` and to far
//! commutation `g*h = h*g` for `|g - h| > 1`, which makes it a right-angled
//! Coxeter group. Two facts drive everything here:
//!
//! * a word is geodesic iff no letter can be cancelled against an equal
//!   letter separated only by commuting letters, and the left-to-right
//!   insertion scan below produces a geodesic for any input;
//! * two geodesics represent the same element iff they differ by far
//!   commutations alone, so the lexicographically least word of the
//!   commutation class is a canonical form.
//!
//! Words carry their start labelling. The letters alone determine the group
//! element; the start is needed for composability checks and for the signed
//! crossing census, whose types depend on the running labelling.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use crate::error::Error;
use crate::perm::{CrossingType, Permutation};
use crate::Result;

/// Hard ceiling on the number of states a brute-force search may visit.
pub const BRUTE_FORCE_STATE_CAP: usize = 4_000_000;

/// A word in the twin-group letters, anchored at a start labelling.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TwinWord {
    start: Permutation,
    letters: Vec<usize>,
}

impl TwinWord {
    pub fn new(start: Permutation, letters: Vec<usize>) -> Result<Self> {
        let n = start.n();
        for &g in &letters {
            if g == 0 || g >= n {
                return Err(Error::PositionOutOfRange { pos: g, max: n - 1 });
            }
        }
        Ok(Self { start, letters })
    }

    /// A word starting at the identity labelling.
    pub fn from_letters(n: usize, letters: Vec<usize>) -> Result<Self> {
        Self::new(Permutation::identity(n), letters)
    }

    /// The empty word at the identity labelling.
    pub fn empty(n: usize) -> Self {
        Self {
            start: Permutation::identity(n),
            letters: Vec::new(),
        }
    }

    pub(crate) fn from_parts(start: Permutation, letters: Vec<usize>) -> Self {
        debug_assert!(letters.iter().all(|&g| g >= 1 && g < start.n()));
        Self { start, letters }
    }

    pub fn n(&self) -> usize {
        self.start.n()
    }

    pub fn start(&self) -> &Permutation {
        &self.start
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The labelling after all crossings have been applied.
    pub fn end(&self) -> Permutation {
        let mut p = self.start.clone();
        for &g in &self.letters {
            p = p.swapped(g);
        }
        p
    }

    pub fn is_pure(&self) -> bool {
        self.end() == self.start
    }

    /// The inverse word: letters reversed (every letter is an involution),
    /// anchored at this word's end.
    pub fn invert(&self) -> TwinWord {
        TwinWord {
            start: self.end(),
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Concatenation; the other word must start where this one ends.
    pub fn concat(&self, other: &TwinWord) -> Result<TwinWord> {
        if self.n() != other.n() {
            return Err(Error::Incompatible(format!(
                "strand counts differ: {} vs {}",
                self.n(),
                other.n()
            )));
        }
        let end = self.end();
        if end != *other.start() {
            return Err(Error::Incompatible(format!(
                "endpoints do not match: ({end}) vs ({})",
                other.start()
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(TwinWord {
            start: self.start.clone(),
            letters,
        })
    }

    /// Geodesic form. Letters are inserted left to right into a reduced
    /// prefix: a new letter cancels the nearest equal letter it can commute
    /// up to, and is appended otherwise.
    pub fn reduce(&self) -> TwinWord {
        let mut out: Vec<usize> = Vec::with_capacity(self.letters.len());
        'next: for &g in &self.letters {
            for idx in (0..out.len()).rev() {
                let x = out[idx];
                if x == g {
                    out.remove(idx);
                    continue 'next;
                }
                if x.abs_diff(g) == 1 {
                    break;
                }
            }
            out.push(g);
        }
        TwinWord {
            start: self.start.clone(),
            letters: out,
        }
    }

    /// Canonical form: the lexicographically least word in the commutation
    /// class of the geodesic. Computed greedily by repeatedly emitting the
    /// smallest letter whose whole left context commutes with it.
    pub fn canonical(&self) -> TwinWord {
        let mut rem = self.reduce().letters;
        let mut out = Vec::with_capacity(rem.len());
        while !rem.is_empty() {
            let mut best: Option<usize> = None;
            'cand: for i in 0..rem.len() {
                for j in 0..i {
                    if rem[j].abs_diff(rem[i]) <= 1 {
                        continue 'cand;
                    }
                }
                match best {
                    Some(b) if rem[i] >= rem[b] => {}
                    _ => best = Some(i),
                }
            }
            let b = best.expect("the first letter is always movable to the front");
            out.push(rem.remove(b));
        }
        TwinWord {
            start: self.start.clone(),
            letters: out,
        }
    }

    /// Group equality. Both words must share strand count and start.
    pub fn equals(&self, other: &TwinWord) -> Result<bool> {
        if self.n() != other.n() || self.start != other.start {
            return Err(Error::Incompatible(format!(
                "words anchored differently: n={} at ({}) vs n={} at ({})",
                self.n(),
                self.start,
                other.n(),
                other.start()
            )));
        }
        Ok(self.canonical().letters == other.canonical().letters)
    }

    /// The crossing of each step: its type and its sign. A crossing is
    /// positive when the larger label sits on the left immediately before
    /// it, so the smaller-labelled strand overtakes leftwards.
    pub fn crossing_events(&self) -> Vec<(CrossingType, i64)> {
        let mut p = self.start.clone();
        let mut out = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            let ty = CrossingType::at(&p, g).expect("letters validated on construction");
            let sign = if p.label_at(g) > p.label_at(g + 1) {
                1
            } else {
                -1
            };
            out.push((ty, sign));
            p = p.swapped(g);
        }
        out
    }

    /// Signed crossing counts per type.
    pub fn census(&self) -> CrossingCensus {
        let mut census = CrossingCensus::default();
        for (ty, sign) in self.crossing_events() {
            census.add(ty, sign);
        }
        census
    }

    /// Parses a space-separated letter list, e.g. `"2 1 2 1 2 1"`.
    pub fn parse(n: usize, input: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in input.split_whitespace() {
            let g: usize = tok.parse().map_err(|_| Error::Parse {
                input: input.to_string(),
                what: "twin word",
                reason: format!("bad letter {tok:?}"),
            })?;
            letters.push(g);
        }
        Self::from_letters(n, letters)
    }
}

impl fmt::Display for TwinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Signed crossing counts keyed by crossing type; absent keys mean zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossingCensus {
    counts: BTreeMap<CrossingType, i64>,
}

impl CrossingCensus {
    pub fn get(&self, ty: &CrossingType) -> i64 {
        self.counts.get(ty).copied().unwrap_or(0)
    }

    pub fn add(&mut self, ty: CrossingType, delta: i64) {
        use std::collections::btree_map::Entry;
        match self.counts.entry(ty) {
            Entry::Vacant(slot) => {
                if delta != 0 {
                    slot.insert(delta);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += delta;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CrossingType, i64)> {
        self.counts.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn plus(&self, other: &CrossingCensus) -> CrossingCensus {
        let mut out = self.clone();
        for (ty, v) in other.iter() {
            out.add(ty.clone(), v);
        }
        out
    }
}

/// Value of the counting homomorphism of type `ty` on a pure word: the
/// signed number of its crossings of that type.
pub fn pair(ty: &CrossingType, w: &TwinWord) -> Result<i64> {
    if ty.n() != w.n() {
        return Err(Error::Incompatible(format!(
            "type on {} strands paired with word on {}",
            ty.n(),
            w.n()
        )));
    }
    let end = w.end();
    if end != *w.start() {
        return Err(Error::NotPure {
            start: w.start().to_string(),
            end: end.to_string(),
        });
    }
    Ok(w.census().get(ty))
}

/// All words reachable from `w` by single moves: far commutation of adjacent
/// letters, deletion of an adjacent equal pair, and insertion of an adjacent
/// equal pair while the length stays within `max_len + 2`.
pub fn brute_force_closure(
    w: &TwinWord,
    max_len: usize,
    state_cap: usize,
) -> Result<HashSet<Vec<usize>>> {
    let n = w.n();
    let cap_len = max_len + 2;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    seen.insert(w.letters().to_vec());
    queue.push_back(w.letters().to_vec());
    while let Some(v) = queue.pop_front() {
        let push =
            |nb: Vec<usize>, seen: &mut HashSet<Vec<usize>>, queue: &mut VecDeque<Vec<usize>>| {
                if seen.insert(nb.clone()) {
                    queue.push_back(nb);
                }
            };
        for t in 0..v.len().saturating_sub(1) {
            if v[t] == v[t + 1] {
                let mut nb = v.clone();
                nb.drain(t..t + 2);
                push(nb, &mut seen, &mut queue);
            } else if v[t].abs_diff(v[t + 1]) > 1 {
                let mut nb = v.clone();
                nb.swap(t, t + 1);
                push(nb, &mut seen, &mut queue);
            }
        }
        if v.len() + 2 <= cap_len {
            for pos in 0..=v.len() {
                for g in 1..n {
                    let mut nb = Vec::with_capacity(v.len() + 2);
                    nb.extend_from_slice(&v[..pos]);
                    nb.push(g);
                    nb.push(g);
                    nb.extend_from_slice(&v[pos..]);
                    push(nb, &mut seen, &mut queue);
                }
            }
        }
        if seen.len() > state_cap {
            return Err(Error::SearchCapExceeded(state_cap));
        }
    }
    Ok(seen)
}

/// Test oracle for `equals`: breadth-first closure of `w1` under single
/// moves, checked for membership of `w2`. Only practical for short words on
/// few strands.
pub fn brute_force_equals(w1: &TwinWord, w2: &TwinWord, max_len: usize) -> Result<bool> {
    if w1.n() != w2.n() || w1.start() != w2.start() {
        return Err(Error::Incompatible(
            "words anchored differently".to_string(),
        ));
    }
    if w1.n() > 5 || max_len > 12 {
        return Err(Error::Incompatible(format!(
            "brute force limited to n <= 5 and max_len <= 12, got n={} max_len={}",
            w1.n(),
            max_len
        )));
    }
    if w1.len() > max_len || w2.len() > max_len {
        return Err(Error::Incompatible(format!(
            "word longer than max_len={max_len}"
        )));
    }
    let closure = brute_force_closure(w1, max_len, BRUTE_FORCE_STATE_CAP)?;
    Ok(closure.contains(w2.letters()))
}
