//! Enumeration of perfect matchings (fixed-point-free involutions).

use crate::error::{Error, Result};
use crate::oracle::OracleCaps;

/// Streams every perfect matching of `{0..n}` exactly once, as an involution
/// array. There are (n-1)!! of them.
pub fn enumerate_matchings(n: usize, caps: &OracleCaps, mut f: impl FnMut(&[usize])) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::OddMatchingSize { n });
    }
    if n > caps.max_matching_size {
        return Err(Error::CapExceeded {
            what: "matching set size",
            requested: n,
            cap: caps.max_matching_size,
        });
    }
    let mut pairing: Vec<usize> = (0..n).collect();
    match_range(&mut pairing, 0, n, &mut f);
    Ok(())
}

/// Collects the matchings of `{0..n}` into a vector.
pub fn collect_matchings(n: usize, caps: &OracleCaps) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    enumerate_matchings(n, caps, |p| out.push(p.to_vec()))?;
    Ok(out)
}

/// Backtracking core: completes matchings on the slots `lo..hi` of `pairing`
/// that still hold their own index. Slots outside the range (already paired
/// edges or intentional fixed points) are left untouched.
pub(crate) fn match_range(
    pairing: &mut [usize],
    lo: usize,
    hi: usize,
    f: &mut impl FnMut(&[usize]),
) {
    let mut i = lo;
    while i < hi && pairing[i] != i {
        i += 1;
    }
    if i == hi {
        f(pairing);
        return;
    }
    for j in i + 1..hi {
        if pairing[j] == j {
            pairing[i] = j;
            pairing[j] = i;
            match_range(pairing, i + 1, hi, f);
            pairing[i] = i;
            pairing[j] = j;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize) -> u64 {
        let caps = OracleCaps::default();
        let mut c = 0;
        enumerate_matchings(n, &caps, |_| c += 1).unwrap();
        c
    }

    #[test]
    fn counts_are_double_factorials() {
        assert_eq!(count(0), 1);
        assert_eq!(count(2), 1);
        assert_eq!(count(4), 3);
        assert_eq!(count(10), 945);
    }

    #[test]
    fn each_matching_is_a_fixed_point_free_involution_seen_once() {
        let caps = OracleCaps::default();
        let all = collect_matchings(6, &caps).unwrap();
        assert_eq!(all.len(), 15);
        for p in &all {
            for (i, &x) in p.iter().enumerate() {
                assert_ne!(i, x);
                assert_eq!(p[x], i);
            }
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 15);
    }

    #[test]
    fn odd_size_is_a_usage_error() {
        let caps = OracleCaps::default();
        assert_eq!(
            enumerate_matchings(3, &caps, |_| {}).unwrap_err(),
            Error::OddMatchingSize { n: 3 }
        );
    }

    #[test]
    fn over_cap_is_refused_with_guidance() {
        let caps = OracleCaps::default();
        let err = enumerate_matchings(16, &caps, |_| {}).unwrap_err();
        assert!(matches!(
            err,
            Error::CapExceeded {
                requested: 16,
                cap: 14,
                ..
            }
        ));
        assert!(err.to_string().contains("--force"));
    }

    #[test]
    fn respects_pre_set_fixed_points_outside_range() {
        // Slots 0..3 stay fixed; only 3..7 get matched.
        let mut pairing: Vec<usize> = (0..7).collect();
        let mut seen = 0;
        match_range(&mut pairing, 3, 7, &mut |p| {
            seen += 1;
            assert_eq!(&p[..3], &[0, 1, 2]);
        });
        assert_eq!(seen, 3);
    }
}
