//! Integer helpers.

use alloc::vec::Vec;

/// All positive divisors of `x` in ascending order.
///
/// Trial division up to `sqrt(x)`; inputs in this crate stay below `10^10`.
pub fn divisors(x: u64) -> Vec<u64> {
    assert!(x >= 1, "divisors of zero are undefined");
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d = 1u64;
    while d * d <= x {
        if x.is_multiple_of(d) {
            low.push(d);
            if d * d != x {
                high.push(x / d);
            }
        }
        d += 1;
    }
    low.extend(high.into_iter().rev());
    low
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn brute(x: u64) -> Vec<u64> {
        (1..=x).filter(|d| x.is_multiple_of(*d)).collect()
    }

    #[test]
    fn small_values() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn area_of_the_84_case() {
        let d = divisors(1008);
        assert_eq!(d, brute(1008));
        assert_eq!(d.len(), 30);
        assert_eq!(*d.last().unwrap(), 1008);
    }

    #[test]
    fn matches_trial_division_up_to_2000() {
        for x in 1..2000 {
            assert_eq!(divisors(x), brute(x), "x = {x}");
        }
    }
}
