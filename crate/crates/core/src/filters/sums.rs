//! Grouped subset sums: pick at most one value from each group.

use alloc::vec;
use alloc::vec::Vec;

struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn new(len: usize) -> Self {
        let mut words = vec![0u64; len.div_ceil(64).max(1)];
        words[0] = 1;
        Bits { words }
    }

    fn get(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    /// `out |= self << shift`, truncated to the word length.
    fn shl_or_into(&self, shift: usize, out: &mut [u64]) {
        let (ws, bs) = (shift / 64, shift % 64);
        let n = self.words.len();
        for i in (ws..n).rev() {
            let src = i - ws;
            let mut v = self.words[src] << bs;
            if bs > 0 && src > 0 {
                v |= self.words[src - 1] >> (64 - bs);
            }
            out[i] |= v;
        }
    }
}

/// Whether some choice of at most one value per group sums to `target`.
pub(crate) fn reachable(groups: &[&[u32]], target: u32) -> bool {
    let len = target as usize + 1;
    let mut reach = Bits::new(len);
    for g in groups {
        let mut next = reach.words.clone();
        for &v in g.iter() {
            if v > 0 && v <= target {
                reach.shl_or_into(v as usize, &mut next);
            }
        }
        reach.words = next;
        if reach.get(target as usize) {
            return true;
        }
    }
    reach.get(target as usize)
}

/// One choice `(group, value)` per selected group summing to `target`, if any.
/// Groups are tried in order; among witnesses the one found by backtracking
/// from the last group is returned.
pub(crate) fn witness(groups: &[&[u32]], target: u32) -> Option<Vec<(usize, u32)>> {
    let len = target as usize + 1;
    let mut layers = Vec::with_capacity(groups.len() + 1);
    layers.push(Bits::new(len));
    for g in groups {
        let prev = layers.last().unwrap();
        let mut next = prev.words.clone();
        for &v in g.iter() {
            if v > 0 && v <= target {
                prev.shl_or_into(v as usize, &mut next);
            }
        }
        layers.push(Bits { words: next });
    }
    if !layers[groups.len()].get(target as usize) {
        return None;
    }
    let mut out = Vec::new();
    let mut rest = target as usize;
    for gi in (0..groups.len()).rev() {
        if layers[gi].get(rest) {
            continue;
        }
        let v = groups[gi]
            .iter()
            .copied()
            .find(|&v| v > 0 && v as usize <= rest && layers[gi].get(rest - v as usize))
            .expect("layer invariant");
        out.push((gi, v));
        rest -= v as usize;
    }
    debug_assert_eq!(rest, 0);
    out.reverse();
    Some(out)
}
