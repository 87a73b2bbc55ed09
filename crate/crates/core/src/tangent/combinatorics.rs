//! Integer compositions, their coefficients, and ordered set partitions.

/// All compositions `(i1, …, il)` of `k` into positive parts, ordered
/// anti-lexicographically (largest first part first).
pub fn compositions(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=k).rev() {
        for mut rest in compositions(k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `N_(i1..il) = Π_{j=2..l} C(i1 + … + ij − 1, ij − 1)`.
pub fn partition_coefficient(parts: &[usize]) -> u64 {
    let mut prefix = parts.first().copied().unwrap_or(0) as u64;
    let mut n = 1;
    for &p in parts.iter().skip(1) {
        let p = p as u64;
        prefix += p;
        n *= binomial(prefix - 1, p - 1);
    }
    n
}

/// Ordered partitions `(λ1, …, λl)` of the set encoded by the bitmask
/// `alpha` whose block maxima increase strictly. Each block is a bitmask.
pub fn ordered_set_partitions(alpha: u32) -> Vec<Vec<u32>> {
    if alpha == 0 {
        return vec![Vec::new()];
    }
    let top = 1u32 << (31 - alpha.leading_zeros());
    let rest = alpha & !top;
    let mut out = Vec::new();
    // The last block holds the top element together with any subset of the rest.
    let mut sub = rest;
    loop {
        let last = top | sub;
        for mut head in ordered_set_partitions(rest & !sub) {
            head.push(last);
            out.push(head);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts() {
        for k in 1..8 {
            assert_eq!(compositions(k).len(), 1 << (k - 1));
        }
        assert_eq!(compositions(3), vec![vec![3], vec![2, 1], vec![1, 2], vec![1, 1, 1]]);
    }

    #[test]
    fn printed_coefficients() {
        assert_eq!(partition_coefficient(&[4]), 1);
        assert_eq!(partition_coefficient(&[1, 2]), 2);
        assert_eq!(partition_coefficient(&[1, 1, 2]), 3);
        assert_eq!(partition_coefficient(&[1, 3]), 3);
        assert_eq!(partition_coefficient(&[1, 2, 1]), 2);
        assert_eq!(partition_coefficient(&[2, 1]), 1);
    }

    #[test]
    fn coefficients_count_set_partitions() {
        // N counts the set partitions of {1..k} whose block sizes follow the
        // composition and whose maxima increase.
        for n in 1..=5u32 {
            let full = (1u32 << n) - 1;
            for comp in compositions(n as usize) {
                let count = ordered_set_partitions(full)
                    .iter()
                    .filter(|p| {
                        p.len() == comp.len()
                            && p.iter().zip(&comp).all(|(b, &s)| b.count_ones() as usize == s)
                    })
                    .count() as u64;
                assert_eq!(count, partition_coefficient(&comp), "{comp:?}");
            }
        }
    }

    #[test]
    fn three_element_partitions() {
        let p = ordered_set_partitions(0b111);
        assert_eq!(p.len(), 5);
        for part in &p {
            let maxima: Vec<u32> = part.iter().map(|b| 31 - b.leading_zeros()).collect();
            assert!(maxima.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(part.iter().fold(0, |a, b| a | b), 0b111);
        }
    }
}
