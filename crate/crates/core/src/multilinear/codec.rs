//! Index codecs for subsets (colexicographic rank) and tuples (mixed radix).

/// `C(n, k)` as `u64`; saturates at `u64::MAX` on overflow.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Colexicographic rank of a strictly increasing tuple: `Σ C(c_i, i+1)`.
/// Ranks only depend on the elements, so enlarging the ground set keeps
/// every existing rank.
pub fn colex_rank(subset: &[usize]) -> u64 {
    subset
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c as u64, i as u64 + 1))
        .sum()
}

/// Inverse of [`colex_rank`] for subsets of size `k`.
pub fn colex_unrank(mut rank: u64, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (0..k).rev() {
        // largest c with C(c, i+1) <= rank
        let mut c = i;
        while binomial(c as u64 + 1, i as u64 + 1) <= rank {
            c += 1;
        }
        out[i] = c;
        rank -= binomial(c as u64, i as u64 + 1);
    }
    out
}

/// Mixed-radix code of a tuple over `radix` symbols, first slot most
/// significant, so numeric order is lexicographic order.
pub fn tuple_code(tuple: &[usize], radix: usize) -> u64 {
    tuple.iter().fold(0u64, |acc, &t| acc * radix as u64 + t as u64)
}

pub fn tuple_decode(mut code: u64, radix: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = (code % radix as u64) as usize;
        code /= radix as u64;
    }
    out
}

/// `radix^k`, or `None` when it does not fit in `u64`.
pub fn checked_power(radix: usize, k: usize) -> Option<u64> {
    (0..k).try_fold(1u64, |acc, _| acc.checked_mul(radix as u64))
}

/// Sorts `xs` in place and returns the sign of the sorting permutation, or
/// `None` if two entries coincide.
pub fn sort_with_sign(xs: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..xs.len() {
        let mut j = i;
        while j > 0 && xs[j - 1] > xs[j] {
            xs.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && xs[j - 1] == xs[j] {
            return None;
        }
    }
    Some(sign)
}

/// All permutations of `0..k` with their signs (Heap's algorithm).
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut out = vec![(perm.clone(), 1)];
    let mut c = vec![0usize; k];
    let mut sign = 1;
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            out.push((perm.clone(), sign));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(24, 12), 2_704_156);
    }

    #[test]
    fn colex_is_a_bijection_on_small_spaces() {
        for n in 0..9usize {
            for k in 0..=n {
                let mut seen = vec![false; binomial(n as u64, k as u64) as usize];
                for mask in 0u32..(1 << n) {
                    if mask.count_ones() as usize != k {
                        continue;
                    }
                    let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                    let r = colex_rank(&subset) as usize;
                    assert!(!seen[r]);
                    seen[r] = true;
                    assert_eq!(colex_unrank(r as u64, k), subset);
                }
                assert!(seen.iter().all(|s| *s));
            }
        }
    }

    #[test]
    fn permutation_signs() {
        let perms = signed_permutations(4);
        assert_eq!(perms.len(), 24);
        for (p, s) in perms {
            let mut q = p.clone();
            assert_eq!(sort_with_sign(&mut q), Some(s));
        }
        assert_eq!(sort_with_sign(&mut [2, 1, 2]), None);
    }

    proptest! {
        #[test]
        fn colex_roundtrip_large(mut v in prop::collection::btree_set(0usize..60, 0..12)) {
            let subset: Vec<usize> = std::mem::take(&mut v).into_iter().collect();
            prop_assert_eq!(colex_unrank(colex_rank(&subset), subset.len()), subset);
        }

        #[test]
        fn tuple_roundtrip(t in prop::collection::vec(0usize..17, 0..9)) {
            prop_assert_eq!(tuple_decode(tuple_code(&t, 17), 17, t.len()), t);
        }
    }
}
