use alloc::vec::Vec;

/// Every subset of `values` (`(class, span)` pairs) with pairwise distinct
/// classes, at least `min_size` members and spans summing to `target`.
/// Subsets are returned as ascending index lists, in lexicographic order.
///
/// Plain power-set filtering; `values` is limited to 30 entries.
pub fn subset_sum_all(values: &[(usize, u32)], target: u64, min_size: usize) -> Vec<Vec<usize>> {
    assert!(values.len() <= 30, "power-set oracle limited to 30 values");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << values.len()) {
        let members: Vec<usize> = (0..values.len()).filter(|&i| mask >> i & 1 == 1).collect();
        if members.len() < min_size {
            continue;
        }
        let sum: u64 = members.iter().map(|&i| values[i].1 as u64).sum();
        if sum != target {
            continue;
        }
        let distinct = members
            .iter()
            .enumerate()
            .all(|(a, &i)| members[..a].iter().all(|&j| values[j].0 != values[i].0));
        if distinct {
            out.push(members);
        }
    }
    out.sort();
    out
}
