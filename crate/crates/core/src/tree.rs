//! The descending spanning tree of the permutohedron's 1-skeleton.
//!
//! Vertices are labellings, edges adjacent exchanges. The tree is rooted at
//! the reversal `(n, ..., 1)`; the parent of any other vertex exchanges the
//! rightmost adjacent pair that fails to be in decreasing order. Every tree
//! edge, read as a crossing, is non-essential, which is what makes the tree
//! words usable as canonical connectors.

use crate::perm::Permutation;
use crate::words::TwinWord;

/// A tree edge from a vertex towards the root.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TreeEdge {
    pub child: Permutation,
    /// Position of the exchanged adjacent pair; the child's rightmost ascent.
    pub letter: usize,
    pub parent: Permutation,
}

/// The edge from `p` towards the root, or `None` at the root itself.
pub fn parent(p: &Permutation) -> Option<TreeEdge> {
    let seq = p.seq();
    for i in (1..p.n()).rev() {
        if seq[i - 1] < seq[i] {
            return Some(TreeEdge {
                child: p.clone(),
                letter: i,
                parent: p.swapped(i),
            });
        }
    }
    None
}

/// Repeated parent steps; the last edge ends at the root. Each step creates
/// one inversion, so the chain has at most `n(n-1)/2` edges.
pub fn chain_to_root(p: &Permutation) -> Vec<TreeEdge> {
    let mut out = Vec::new();
    let mut cur = p.clone();
    while let Some(edge) = parent(&cur) {
        cur = edge.parent.clone();
        out.push(edge);
    }
    out
}

/// The word along the unique tree path from the identity labelling to
/// `beta`. The two root chains are concatenated and their common tail is
/// trimmed away at the lowest common ancestor.
pub fn tree_word(beta: &Permutation) -> TwinWord {
    let n = beta.n();
    let up = chain_to_root(&Permutation::identity(n));
    let down = chain_to_root(beta);
    let mut shared = 0;
    while shared < up.len()
        && shared < down.len()
        && up[up.len() - 1 - shared] == down[down.len() - 1 - shared]
    {
        shared += 1;
    }
    let mut letters: Vec<usize> = up[..up.len() - shared].iter().map(|e| e.letter).collect();
    letters.extend(down[..down.len() - shared].iter().rev().map(|e| e.letter));
    let word = TwinWord::from_parts(Permutation::identity(n), letters);
    debug_assert_eq!(word.end(), *beta);
    word
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn perm(seq: &[usize]) -> Permutation {
        Permutation::new(seq.to_vec()).unwrap()
    }

    #[test]
    fn parent_examples() {
        let e = parent(&perm(&[1, 2, 3])).unwrap();
        assert_eq!(e.letter, 2);
        assert_eq!(e.parent, perm(&[1, 3, 2]));

        assert!(parent(&perm(&[3, 2, 1])).is_none());

        let e = parent(&perm(&[2, 1, 3])).unwrap();
        assert_eq!(e.letter, 2);
        assert_eq!(e.parent, perm(&[2, 3, 1]));
    }

    #[test]
    fn chain_examples() {
        assert!(chain_to_root(&perm(&[3, 2, 1])).is_empty());

        let chain = chain_to_root(&perm(&[1, 2, 3]));
        let letters: Vec<usize> = chain.iter().map(|e| e.letter).collect();
        let visited: Vec<Permutation> = chain.iter().map(|e| e.parent.clone()).collect();
        assert_eq!(letters, vec![2, 1, 2]);
        assert_eq!(
            visited,
            vec![perm(&[1, 3, 2]), perm(&[3, 1, 2]), perm(&[3, 2, 1])]
        );

        let chain = chain_to_root(&perm(&[2, 1, 3]));
        let letters: Vec<usize> = chain.iter().map(|e| e.letter).collect();
        assert_eq!(letters, vec![2, 1]);
        assert_eq!(chain.last().unwrap().parent, perm(&[3, 2, 1]));
    }

    #[test]
    fn chains_terminate_within_bound() {
        for n in 2..=6 {
            let bound = n * (n - 1) / 2;
            for p in all_permutations(n) {
                let chain = chain_to_root(&p);
                assert!(chain.len() <= bound);
                assert_eq!(chain.len(), bound - p.inversions());
                for edge in &chain {
                    assert_eq!(edge.parent, edge.child.swapped(edge.letter));
                    assert_eq!(edge.parent.inversions(), edge.child.inversions() + 1);
                }
            }
        }
    }

    #[test]
    fn tree_word_examples() {
        assert!(tree_word(&Permutation::identity(3)).is_empty());
        assert_eq!(tree_word(&perm(&[1, 3, 2])).letters(), &[2]);
        assert_eq!(tree_word(&perm(&[2, 1, 3])).letters(), &[2, 1, 2, 1, 2]);
    }

    #[test]
    fn tree_word_reaches_beta() {
        for n in 2..=6 {
            for p in all_permutations(n) {
                assert_eq!(tree_word(&p).end(), p);
            }
        }
    }
}
