//! Rewriting groupoid generators into words over essential decreasing
//! generators, and realizing both as pure braid words.
//!
//! A generator `[alpha, k]` whose labelling decreases within each block of
//! its crossing type is *decreasing*; decreasing generators correspond
//! one-to-one with crossing types, and the essential ones generate the pure
//! group. Any `[alpha, k]` equals a conjugate `p * c * p^-1` of the
//! decreasing generator `c` of its type, where `p` is produced by repeatedly
//! clearing the rightmost ascent among the first `k - 1` entries: each
//! cleared ascent at position `m` contributes the recursively rewritten word
//! for `[alpha_j, m]`, and the exchange moves the prefix one step closer to
//! decreasing order. The loop adds one prefix inversion per step, so it
//! terminates within `(k-1)(k-2)/2` iterations, and every recursive call has
//! `m < k - 1`.
//!
//! Orders inside `I3` never matter (such generators are equal in the pure
//! group), so the tail is normalized to decreasing order up front; an
//! increasing middle pair is handled by rewriting the inverse generator.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use crate::error::Error;
use crate::perm::{CrossingType, GroupoidGenerator, Permutation};
use crate::tree::tree_word;
use crate::words::TwinWord;
use crate::Result;

/// A named generator of the presented group: an essential crossing type,
/// standing for its decreasing generator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GeneratorSymbol {
    ty: CrossingType,
}

impl GeneratorSymbol {
    pub fn new(ty: CrossingType) -> Result<Self> {
        if !ty.is_essential() {
            return Err(Error::NotEssential(ty.name()));
        }
        Ok(Self { ty })
    }

    pub fn ty(&self) -> &CrossingType {
        &self.ty
    }

    pub fn n(&self) -> usize {
        self.ty.n()
    }

    /// Crossing position of the underlying decreasing generator.
    pub fn position(&self) -> usize {
        self.ty.position()
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ty.name())
    }
}

/// A freely reduced word in generator symbols with exponents `±1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GeneratorWord {
    letters: Vec<(GeneratorSymbol, i8)>,
}

impl GeneratorWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(symbol: GeneratorSymbol, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Self {
            letters: vec![(symbol, exponent)],
        }
    }

    /// Appends a letter, cancelling against the tail when possible.
    pub fn push(&mut self, symbol: GeneratorSymbol, exponent: i8) {
        debug_assert!(exponent == 1 || exponent == -1);
        match self.letters.last() {
            Some((last, e)) if *last == symbol && *e == -exponent => {
                self.letters.pop();
            }
            _ => self.letters.push((symbol, exponent)),
        }
    }

    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut out = self.clone();
        for (s, e) in &other.letters {
            out.push(s.clone(), *e);
        }
        out
    }

    pub fn inverted(&self) -> GeneratorWord {
        GeneratorWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(s, e)| (s.clone(), -e))
                .collect(),
        }
    }

    pub fn letters(&self) -> &[(GeneratorSymbol, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, symbol: &GeneratorSymbol) -> bool {
        self.letters.iter().any(|(s, _)| s == symbol)
    }
}

impl fmt::Display for GeneratorWord {
    /// Space-separated symbol names with a `^-1` suffix on inverses, e.g.
    /// `<2,1>^-1 1,2<4,3> <2,1>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(s, e)| {
                if *e == 1 {
                    s.to_string()
                } else {
                    format!("{s}^-1")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Names the decreasing generator equal to `g`, given that `g`'s prefix is
/// already in decreasing order. Non-essential generators map to the trivial
/// element, reported as `(None, 0)`; otherwise the exponent records whether
/// the middle pair decreases (`+1`) or increases (`-1`).
pub fn decreasing_representative(g: &GroupoidGenerator) -> Result<(Option<GeneratorSymbol>, i8)> {
    let seq = g.alpha().seq();
    let k = g.k();
    if seq[..k - 1].windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Incompatible(format!(
            "prefix of {g} is not in decreasing order"
        )));
    }
    let ty = g.crossing_type();
    if !ty.is_essential() {
        return Ok((None, 0));
    }
    let exponent = if seq[k - 1] > seq[k] { 1 } else { -1 };
    Ok((Some(GeneratorSymbol::new(ty)?), exponent))
}

type PrefixKey = (usize, Vec<usize>, usize);

/// Rewriting engine with a memo table keyed on the strand count, the labels
/// at positions `1..=k+1`, and `k`; the tail beyond position `k + 1` is
/// normalized before keying, so it carries no extra information.
///
/// The table is fill-once: concurrent rewrites may race to compute the same
/// entry, but every computation yields the identical word.
#[derive(Default)]
pub struct Rewriter {
    memo: RwLock<HashMap<PrefixKey, (GeneratorWord, Option<GeneratorSymbol>)>>,
}

impl Rewriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// A word in essential decreasing generators equal to `g` in the pure
    /// group, of the form `p * c * p^-1` with `c` the decreasing
    /// representative of `g`'s type; empty when the type is non-essential.
    pub fn rewrite(&self, g: &GroupoidGenerator) -> GeneratorWord {
        let k = g.k();
        if g.alpha().label_at(k) < g.alpha().label_at(k + 1) {
            let inverse = GroupoidGenerator::new(g.target(), k).expect("k validated");
            return self.rewrite(&inverse).inverted();
        }
        let (prefix, core) = self.conjugating_prefix(g);
        match core {
            Some(c) => prefix
                .concat(&GeneratorWord::single(c, 1))
                .concat(&prefix.inverted()),
            None => GeneratorWord::empty(),
        }
    }

    /// Splits an essential `g` as `w^-1 * core^exp * w` with `core` the
    /// symbol of `g`'s type and `w` built from crossings at positions below
    /// `k - 1`.
    pub fn decompose(&self, g: &GroupoidGenerator) -> Result<(GeneratorWord, GeneratorSymbol, i8)> {
        if !g.is_essential() {
            return Err(Error::NotEssential(g.crossing_type().name()));
        }
        let k = g.k();
        let (exponent, subject) = if g.alpha().label_at(k) > g.alpha().label_at(k + 1) {
            (1, g.clone())
        } else {
            (
                -1,
                GroupoidGenerator::new(g.target(), k).expect("k validated"),
            )
        };
        let (prefix, core) = self.conjugating_prefix(&subject);
        let core = core.ok_or_else(|| {
            Error::Internal(format!("essential {g} reached a non-essential core"))
        })?;
        Ok((prefix.inverted(), core, exponent))
    }

    /// Core loop. Requires the middle pair of `g` to be decreasing; returns
    /// `(p, core)` with `g = p * core * p^-1` in the pure group and `core`
    /// the decreasing generator of `g`'s type (`None` when non-essential).
    fn conjugating_prefix(
        &self,
        g: &GroupoidGenerator,
    ) -> (GeneratorWord, Option<GeneratorSymbol>) {
        let k = g.k();
        let n = g.n();
        debug_assert!(g.alpha().label_at(k) > g.alpha().label_at(k + 1));
        let key: PrefixKey = (n, g.alpha().seq()[..k + 1].to_vec(), k);
        if let Some(hit) = self.memo.read().expect("memo lock").get(&key) {
            return hit.clone();
        }

        let mut seq = g.alpha().seq().to_vec();
        seq[k + 1..].sort_unstable_by(|a, b| b.cmp(a));
        let mut cur = Permutation::new(seq).expect("reordering preserves the permutation");
        let mut prefix = GeneratorWord::empty();
        loop {
            let ascent = (1..k.saturating_sub(1))
                .rev()
                .find(|&m| cur.label_at(m) < cur.label_at(m + 1));
            let Some(m) = ascent else { break };
            let step = GroupoidGenerator::new(cur.clone(), m).expect("m < k");
            prefix = prefix.concat(&self.rewrite(&step));
            cur = cur.swapped(m);
        }
        let terminal = GroupoidGenerator::new(cur, k).expect("k validated");
        let (core, exponent) =
            decreasing_representative(&terminal).expect("prefix decreasing after the loop");
        debug_assert!(core.is_none() || exponent == 1);

        let value = (prefix, core);
        self.memo
            .write()
            .expect("memo lock")
            .entry(key)
            .or_insert_with(|| value.clone());
        value
    }
}

/// The pure braid of `[alpha, k]` over the identity labelling: the tree word
/// to `alpha`, the crossing, and the reversed tree word from the target.
pub fn realize_groupoid_generator(g: &GroupoidGenerator) -> TwinWord {
    let up = tree_word(g.alpha());
    let mid = TwinWord::from_parts(g.alpha().clone(), vec![g.k()]);
    let down = tree_word(&g.target()).invert();
    let word = up
        .concat(&mid)
        .and_then(|w| w.concat(&down))
        .expect("tree words connect matching labellings");
    debug_assert!(word.is_pure());
    word
}

/// The pure braid representing an essential crossing type. It contains
/// exactly one essential crossing, of this type, with positive sign.
pub fn realize_generator(ty: &CrossingType) -> Result<TwinWord> {
    if !ty.is_essential() {
        return Err(Error::NotEssential(ty.name()));
    }
    Ok(realize_groupoid_generator(&ty.decreasing_generator()))
}

/// Concatenated realization of a generator word; inverse letters contribute
/// reversed braids. The result is pure over the identity labelling.
pub fn realize_word(n: usize, word: &GeneratorWord) -> Result<TwinWord> {
    let mut out = TwinWord::empty(n);
    for (symbol, exponent) in word.letters() {
        if symbol.n() != n {
            return Err(Error::Incompatible(format!(
                "symbol {symbol} lives on {} strands, not {n}",
                symbol.n()
            )));
        }
        let mut braid = realize_generator(symbol.ty())?;
        if *exponent == -1 {
            braid = braid.invert();
        }
        out = out.concat(&braid).expect("pure words compose");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_essential_crossing_types;
    use crate::words::pair;

    fn gen(seq: &[usize], k: usize) -> GroupoidGenerator {
        GroupoidGenerator::new(Permutation::new(seq.to_vec()).unwrap(), k).unwrap()
    }

    fn ct(n: usize, i1: &[usize], i2: &[usize], i3: &[usize]) -> CrossingType {
        CrossingType::new(n, i1.to_vec(), i2.to_vec(), i3.to_vec()).unwrap()
    }

    fn sym(n: usize, i1: &[usize], i2: &[usize], i3: &[usize]) -> GeneratorSymbol {
        GeneratorSymbol::new(ct(n, i1, i2, i3)).unwrap()
    }

    #[test]
    fn decreasing_representative_examples() {
        let (s, e) = decreasing_representative(&gen(&[2, 1, 3], 1)).unwrap();
        assert_eq!(s.unwrap(), sym(3, &[], &[1, 2], &[3]));
        assert_eq!(e, 1);

        let (s, e) = decreasing_representative(&gen(&[1, 2, 3], 1)).unwrap();
        assert_eq!(s.unwrap(), sym(3, &[], &[1, 2], &[3]));
        assert_eq!(e, -1);

        let (s, e) = decreasing_representative(&gen(&[1, 2, 3], 2)).unwrap();
        assert!(s.is_none());
        assert_eq!(e, 0);

        // ascending prefix violates the precondition
        assert!(decreasing_representative(&gen(&[1, 2, 4, 3], 3)).is_err());
    }

    #[test]
    fn rewrite_decreasing_generator_is_single_letter() {
        let rw = Rewriter::new();
        let g = gen(&[2, 1, 3], 1);
        let word = rw.rewrite(&g);
        assert_eq!(word.letters(), &[(sym(3, &[], &[1, 2], &[3]), 1)]);
    }

    #[test]
    fn rewrite_nonessential_is_empty() {
        let rw = Rewriter::new();
        assert!(rw.rewrite(&gen(&[1, 2, 3], 2)).is_empty());
        // non-essential with an ascent in the prefix: the loop runs, yet the
        // conjugate of a trivial core collapses to the empty word
        assert!(rw.rewrite(&gen(&[1, 3, 4, 2], 3)).is_empty());
    }

    #[test]
    fn rewrite_worked_example_on_five_strands() {
        let rw = Rewriter::new();
        let word = rw.rewrite(&gen(&[1, 2, 4, 3, 5], 3));
        let g1 = sym(5, &[], &[1, 2], &[3, 4, 5]);
        let g2 = sym(5, &[1, 2], &[3, 4], &[5]);
        assert_eq!(
            word.letters(),
            &[(g1.clone(), -1), (g2.clone(), 1), (g1.clone(), 1)]
        );

        let (w, core, e) = rw.decompose(&gen(&[1, 2, 4, 3, 5], 3)).unwrap();
        assert_eq!(w.letters(), &[(g1, 1)]);
        assert_eq!(core, g2);
        assert_eq!(e, 1);
    }

    #[test]
    fn decompose_decreasing_generator() {
        let rw = Rewriter::new();
        let g = gen(&[2, 1, 3], 1);
        let (w, core, e) = rw.decompose(&g).unwrap();
        assert!(w.is_empty());
        assert_eq!(core, sym(3, &[], &[1, 2], &[3]));
        assert_eq!(e, 1);
    }

    #[test]
    fn decompose_rejects_nonessential() {
        let rw = Rewriter::new();
        assert!(rw.decompose(&gen(&[1, 2, 3], 2)).is_err());
    }

    #[test]
    fn generator_word_reduces_freely() {
        let a = sym(3, &[], &[1, 2], &[3]);
        let mut w = GeneratorWord::empty();
        w.push(a.clone(), 1);
        w.push(a.clone(), -1);
        assert!(w.is_empty());

        let w = GeneratorWord::single(a.clone(), 1);
        assert!(w.concat(&w.inverted()).is_empty());
    }

    #[test]
    fn generator_word_display() {
        let g1 = sym(5, &[], &[1, 2], &[3, 4, 5]);
        let g2 = sym(5, &[1, 2], &[3, 4], &[5]);
        let word = GeneratorWord::single(g1.clone(), -1)
            .concat(&GeneratorWord::single(g2, 1))
            .concat(&GeneratorWord::single(g1, 1));
        assert_eq!(word.to_string(), "<2,1>^-1 2,1<4,3> <2,1>");
    }

    #[test]
    fn realize_generator_on_three_strands() {
        let braid = realize_generator(&ct(3, &[], &[1, 2], &[3])).unwrap();
        assert_eq!(braid.letters(), &[2, 1, 2, 1, 2, 1]);
        assert!(braid.is_pure());
    }

    #[test]
    fn realized_generators_have_unit_self_pairing() {
        for n in 3..=5 {
            for ty in enumerate_essential_crossing_types(n).unwrap() {
                let braid = realize_generator(&ty).unwrap();
                assert!(braid.is_pure());
                assert_eq!(pair(&ty, &braid).unwrap(), 1);
                // exactly one crossing is essential, and it is this one
                let essential: Vec<_> = braid
                    .crossing_events()
                    .into_iter()
                    .filter(|(t, _)| t.is_essential())
                    .collect();
                assert_eq!(essential, vec![(ty.clone(), 1)]);
            }
        }
    }

    #[test]
    fn realize_word_examples() {
        assert!(realize_word(4, &GeneratorWord::empty()).unwrap().is_empty());

        let s = sym(3, &[], &[1, 2], &[3]);
        let single = realize_word(3, &GeneratorWord::single(s.clone(), 1)).unwrap();
        assert_eq!(
            single.letters(),
            realize_generator(s.ty()).unwrap().letters()
        );

        // g * g^-1 assembled at the braid level reduces to the empty word
        let g = GeneratorWord::single(s.clone(), 1);
        let braid = realize_word(3, &g)
            .unwrap()
            .concat(&realize_word(3, &g.inverted()).unwrap())
            .unwrap();
        assert!(braid.reduce().is_empty());
    }

    #[test]
    fn rewrite_realization_matches_direct_realization() {
        let rw = Rewriter::new();
        for seq in [
            vec![1, 2, 4, 3, 5],
            vec![4, 2, 1, 5, 3],
            vec![1, 2, 3, 4, 5],
            vec![5, 3, 4, 1, 2],
        ] {
            for k in 1..5 {
                let g = gen(&seq, k);
                let lhs = realize_word(5, &rw.rewrite(&g)).unwrap();
                let rhs = realize_groupoid_generator(&g);
                assert!(lhs.equals(&rhs).unwrap(), "mismatch at {g}");
            }
        }
    }
}
