//! Cross-module invariants: tree/word/rewrite interplay and the properties
//! that make the skipped relations trivially true.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use puretwin::perm::{all_permutations, enumerate_essential_double_types};
use puretwin::presentation::{build_relation, decreasing_triple};
use puretwin::rewrite::{realize_groupoid_generator, realize_word, GeneratorWord, Rewriter};
use puretwin::tree::{chain_to_root, parent, tree_word};
use puretwin::words::TwinWord;
use puretwin::{CrossingType, DoubleCrossingType, GeneratorSymbol, GroupoidGenerator, Permutation};

fn random_perm(n: usize, rng: &mut StdRng) -> Permutation {
    Permutation::random(n, rng)
}

#[test]
fn tree_edges_are_never_essential() {
    for n in 3..=6 {
        for p in all_permutations(n) {
            if let Some(edge) = parent(&p) {
                let g = GroupoidGenerator::new(edge.child.clone(), edge.letter).unwrap();
                assert!(
                    !g.is_essential(),
                    "tree edge {g} has an essential crossing type"
                );
            }
        }
    }
}

#[test]
fn tree_words_have_no_essential_crossings() {
    for n in 3..=5 {
        for beta in all_permutations(n) {
            for (ty, _) in tree_word(&beta).crossing_events() {
                assert!(!ty.is_essential());
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..200 {
        let beta = random_perm(6, &mut rng);
        for (ty, _) in tree_word(&beta).crossing_events() {
            assert!(!ty.is_essential());
        }
    }
}

#[test]
fn trimmed_and_untrimmed_tree_paths_agree_in_the_group() {
    // The untrimmed path walks the full chain of the identity up to the
    // root and the full chain of beta back down; trimming removes the
    // backtracking beyond the lowest common ancestor and nothing else.
    for n in 2..=5 {
        for beta in all_permutations(n) {
            let trimmed = tree_word(&beta);
            let mut letters: Vec<usize> = chain_to_root(&Permutation::identity(n))
                .iter()
                .map(|e| e.letter)
                .collect();
            letters.extend(chain_to_root(&beta).iter().rev().map(|e| e.letter));
            let untrimmed = TwinWord::from_letters(n, letters).unwrap();
            assert_eq!(untrimmed.end(), beta);
            assert!(trimmed.equals(&untrimmed).unwrap());
        }
    }
}

#[test]
fn conjugating_word_uses_lower_positions_only() {
    let rw = Rewriter::new();
    let check = |g: &GroupoidGenerator| {
        if !g.is_essential() {
            return;
        }
        let (w, core, _) = rw.decompose(g).unwrap();
        assert_eq!(core.ty(), &g.crossing_type());
        for (symbol, _) in w.letters() {
            assert!(
                symbol.position() + 1 < g.k(),
                "conjugating word of {g} uses position {}",
                symbol.position()
            );
        }
    };
    for n in 3..=5 {
        for alpha in all_permutations(n) {
            for k in 1..n {
                check(&GroupoidGenerator::new(alpha.clone(), k).unwrap());
            }
        }
    }
}

/// Pairs of labels listed in decreasing order in the generator's labelling
/// never show up crossed (as the middle block) nor split across the middle
/// and right blocks of any symbol in its conjugating word.
#[test]
fn conjugating_word_avoids_descending_pairs() {
    let rw = Rewriter::new();
    let check = |g: &GroupoidGenerator| {
        if !g.is_essential() {
            return;
        }
        let (w, _, _) = rw.decompose(g).unwrap();
        let seq = g.alpha().seq();
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                let (p, q) = (seq[i], seq[j]);
                if p < q {
                    continue;
                }
                for (symbol, _) in w.letters() {
                    let ty = symbol.ty();
                    assert!(
                        !(ty.i2() == [q, p]),
                        "word of {g} crosses the descending pair ({p}, {q})"
                    );
                    assert!(
                        !(ty.i3().contains(&p) && ty.i2().contains(&q)),
                        "word of {g} has {p} right of a crossing of {q}"
                    );
                }
            }
        }
    };
    for n in 3..=5 {
        for alpha in all_permutations(n) {
            for k in 1..n {
                check(&GroupoidGenerator::new(alpha.clone(), k).unwrap());
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..300 {
        let alpha = random_perm(6, &mut rng);
        let k = rng.gen_range(1..6);
        check(&GroupoidGenerator::new(alpha, k).unwrap());
    }
}

#[test]
fn both_conjugation_routes_reach_the_same_core() {
    let rw = Rewriter::new();
    for n in [6usize, 7] {
        let doubles = enumerate_essential_double_types(n).unwrap();
        let step = if n == 6 { 1 } else { 7 };
        for j in doubles.iter().step_by(step) {
            let (alpha, k, l) = decreasing_triple(j);
            let (_, core_a, ea) = rw
                .decompose(&GroupoidGenerator::new(alpha.clone(), l).unwrap())
                .unwrap();
            let (_, core_b, eb) = rw
                .decompose(&GroupoidGenerator::new(alpha.swap_adjacent(k).unwrap(), l).unwrap())
                .unwrap();
            assert_eq!(core_a, core_b);
            assert_eq!((ea, eb), (1, 1));
            assert_eq!(*core_a.ty(), j.projections().1);
        }
    }
}

#[test]
fn relation_words_are_nonempty_on_six_strands() {
    let rw = Rewriter::new();
    for j in enumerate_essential_double_types(6).unwrap() {
        let r = build_relation(&rw, &j).unwrap();
        assert!(!r.word.is_empty(), "relation of {j} collapsed");
    }
}

/// Non-essential double types contribute no relation: over their decreasing
/// triples, either the second projection is itself non-essential, or the
/// two conjugating words satisfy `u * g1 == v` letter for letter.
#[test]
fn skipped_double_types_are_trivially_satisfied() {
    let rw = Rewriter::new();
    for n in [5usize, 6] {
        let mut case_nonessential = 0usize;
        let mut case_matching_words = 0usize;
        for j in all_double_types(n) {
            if j.is_essential() {
                continue;
            }
            let (alpha, k, l) = decreasing_triple(&j);
            let second = GroupoidGenerator::new(alpha.clone(), l).unwrap();
            if !second.is_essential() {
                case_nonessential += 1;
                continue;
            }
            let (u, _, _) = rw.decompose(&second).unwrap();
            let (v, _, _) = rw
                .decompose(&GroupoidGenerator::new(alpha.swap_adjacent(k).unwrap(), l).unwrap())
                .unwrap();
            let first = GroupoidGenerator::new(alpha.clone(), k).unwrap();
            let ug1 = if first.is_essential() {
                u.concat(&GeneratorWord::single(
                    GeneratorSymbol::new(first.crossing_type()).unwrap(),
                    1,
                ))
            } else {
                u
            };
            assert_eq!(ug1, v, "double type {j} is not trivially satisfied");
            case_matching_words += 1;
        }
        assert!(case_nonessential > 0 && case_matching_words > 0);
    }
}

fn all_double_types(n: usize) -> Vec<DoubleCrossingType> {
    let mut out = Vec::new();
    let labels: Vec<usize> = (1..=n).collect();
    for a in 0..labels.len() {
        for b in a + 1..labels.len() {
            let j2 = [labels[a], labels[b]];
            let rest1: Vec<usize> = labels.iter().copied().filter(|x| !j2.contains(x)).collect();
            for c in 0..rest1.len() {
                for d in c + 1..rest1.len() {
                    let j4 = [rest1[c], rest1[d]];
                    let rest2: Vec<usize> =
                        rest1.iter().copied().filter(|x| !j4.contains(x)).collect();
                    for code in 0..3usize.pow(rest2.len() as u32) {
                        let mut blocks: [Vec<usize>; 5] =
                            [Vec::new(), j2.to_vec(), Vec::new(), j4.to_vec(), Vec::new()];
                        let mut w = code;
                        for &x in &rest2 {
                            blocks[[0usize, 2, 4][w % 3]].push(x);
                            w /= 3;
                        }
                        out.push(DoubleCrossingType::new(n, blocks).unwrap());
                    }
                }
            }
        }
    }
    out
}

#[test]
fn realized_rewrites_match_direct_realizations_on_samples() {
    let rw = Rewriter::new();
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..120 {
        let n = rng.gen_range(3..=6);
        let alpha = random_perm(n, &mut rng);
        let k = rng.gen_range(1..n);
        let g = GroupoidGenerator::new(alpha, k).unwrap();
        let lhs = realize_word(n, &rw.rewrite(&g)).unwrap();
        let rhs = realize_groupoid_generator(&g);
        assert!(lhs.equals(&rhs).unwrap(), "soundness failed at {g}");
    }
}

// Random single moves that preserve the group element and the start.
fn scramble(letters: &mut Vec<usize>, n: usize, rng: &mut StdRng) {
    match rng.gen_range(0..3) {
        0 => {
            // far commutation
            let spots: Vec<usize> = (0..letters.len().saturating_sub(1))
                .filter(|&t| letters[t].abs_diff(letters[t + 1]) > 1)
                .collect();
            if !spots.is_empty() {
                let t = spots[rng.gen_range(0..spots.len())];
                letters.swap(t, t + 1);
            }
        }
        1 => {
            // insert an adjacent equal pair
            let pos = rng.gen_range(0..=letters.len());
            let g = rng.gen_range(1..n);
            letters.insert(pos, g);
            letters.insert(pos, g);
        }
        _ => {
            // delete an adjacent equal pair
            let spots: Vec<usize> = (0..letters.len().saturating_sub(1))
                .filter(|&t| letters[t] == letters[t + 1])
                .collect();
            if !spots.is_empty() {
                let t = spots[rng.gen_range(0..spots.len())];
                letters.drain(t..t + 2);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduce_is_idempotent_and_never_longer(
        n in 3usize..=5,
        raw in proptest::collection::vec(1usize..=4, 0..24),
    ) {
        let letters: Vec<usize> = raw.into_iter().map(|g| 1 + (g - 1) % (n - 1)).collect();
        let w = TwinWord::from_letters(n, letters).unwrap();
        let r = w.reduce();
        prop_assert!(r.len() <= w.len());
        let rr = r.reduce();
        prop_assert_eq!(rr.letters(), r.letters());
        prop_assert!(w.equals(&r).unwrap());
        prop_assert_eq!(w.end(), r.end());
    }

    #[test]
    fn census_and_canonical_are_move_invariant(
        n in 3usize..=5,
        raw in proptest::collection::vec(1usize..=4, 0..16),
        seed in 0u64..1024,
        moves in 1usize..30,
    ) {
        let letters: Vec<usize> = raw.into_iter().map(|g| 1 + (g - 1) % (n - 1)).collect();
        let w = TwinWord::from_letters(n, letters.clone()).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let mut scrambled = letters;
        for _ in 0..moves {
            scramble(&mut scrambled, n, &mut rng);
        }
        let s = TwinWord::from_letters(n, scrambled).unwrap();
        prop_assert_eq!(w.census(), s.census());
        prop_assert_eq!(w.end(), s.end());
        let (cw, cs) = (w.canonical(), s.canonical());
        prop_assert_eq!(cw.letters(), cs.letters());
    }

    #[test]
    fn word_times_inverse_reduces_to_empty(
        n in 3usize..=5,
        raw in proptest::collection::vec(1usize..=4, 0..16),
    ) {
        let letters: Vec<usize> = raw.into_iter().map(|g| 1 + (g - 1) % (n - 1)).collect();
        let w = TwinWord::from_letters(n, letters).unwrap();
        prop_assert!(w.concat(&w.invert()).unwrap().reduce().is_empty());
    }

    #[test]
    fn swap_adjacent_is_an_involution(
        n in 2usize..=7,
        seed in 0u64..4096,
    ) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = Permutation::random(n, &mut rng);
        for i in 1..n {
            prop_assert_eq!(p.swap_adjacent(i).unwrap().swap_adjacent(i).unwrap(), p.clone());
        }
    }

    #[test]
    fn crossing_types_partition_labels(
        n in 3usize..=7,
        seed in 0u64..4096,
    ) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = Permutation::random(n, &mut rng);
        for k in 1..n {
            let t = CrossingType::at(&p, k).unwrap();
            let mut all: Vec<usize> = t.i1().iter().chain(t.i2()).chain(t.i3()).copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (1..=n).collect::<Vec<_>>());
        }
    }
}
