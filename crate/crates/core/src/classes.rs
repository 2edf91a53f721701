//! Sets of congruence-class ids.
//!
//! The filter cascade does most of its work on class sets. Every board in
//! practical range has at most 64 classes, so `u64` is the working
//! representation; [`WideClassSet`] takes over beyond that.

use alloc::vec;
use alloc::vec::Vec;

pub trait ClassBits: Clone + PartialEq + core::fmt::Debug {
    /// An empty set able to hold ids `0..classes`.
    fn empty(classes: usize) -> Self;
    fn insert(&mut self, class: usize);
    fn contains(&self, class: usize) -> bool;
    fn union_with(&mut self, other: &Self);
    fn intersection_len(&self, other: &Self) -> u32;
    fn len(&self) -> u32;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn intersects(&self, other: &Self) -> bool {
        self.intersection_len(other) > 0
    }

    fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    fn intersection(&self, other: &Self) -> Self;
}

impl ClassBits for u64 {
    #[inline]
    fn empty(classes: usize) -> Self {
        assert!(classes <= 64, "u64 class set holds at most 64 classes");
        0
    }

    #[inline]
    fn insert(&mut self, class: usize) {
        *self |= 1 << class;
    }

    #[inline]
    fn contains(&self, class: usize) -> bool {
        *self >> class & 1 == 1
    }

    #[inline]
    fn union_with(&mut self, other: &Self) {
        *self |= *other;
    }

    #[inline]
    fn intersection_len(&self, other: &Self) -> u32 {
        (*self & *other).count_ones()
    }

    #[inline]
    fn len(&self) -> u32 {
        self.count_ones()
    }

    #[inline]
    fn intersection(&self, other: &Self) -> Self {
        *self & *other
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WideClassSet(Vec<u64>);

impl ClassBits for WideClassSet {
    fn empty(classes: usize) -> Self {
        WideClassSet(vec![0; classes.div_ceil(64).max(1)])
    }

    fn insert(&mut self, class: usize) {
        self.0[class / 64] |= 1 << (class % 64);
    }

    fn contains(&self, class: usize) -> bool {
        self.0
            .get(class / 64)
            .is_some_and(|w| w >> (class % 64) & 1 == 1)
    }

    fn union_with(&mut self, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= *b;
        }
    }

    fn intersection_len(&self, other: &Self) -> u32 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    fn len(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn intersection(&self, other: &Self) -> Self {
        WideClassSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exercise<S: ClassBits>(classes: usize) {
        let mut a = S::empty(classes);
        let mut b = S::empty(classes);
        a.insert(0);
        a.insert(classes - 1);
        b.insert(classes - 1);
        b.insert(classes / 2);
        assert!(a.contains(0) && !a.contains(1));
        assert_eq!(a.intersection_len(&b), 1);
        assert_eq!(a.union(&b).len(), if classes / 2 == 0 { 2 } else { 3 });
        assert!(S::empty(classes).is_empty());
    }

    #[test]
    fn narrow_and_wide_agree() {
        exercise::<u64>(64);
        exercise::<u64>(7);
        exercise::<WideClassSet>(64);
        exercise::<WideClassSet>(200);
    }
}
