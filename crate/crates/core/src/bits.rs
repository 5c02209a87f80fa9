//! Small helpers for `u64` vertex sets.

/// Iterates the set bits of `mask`, lowest first.
pub fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | (1u64 << v))
}

pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All `k`-subsets of `{0..n}` in increasing numeric order (Gosper's hack).
pub struct Combinations {
    cur: u128,
    limit: u128,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Combinations {
        assert!(n <= 64);
        Combinations {
            cur: (1u128 << k) - 1,
            limit: 1u128 << n,
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done || self.cur >= self.limit {
            return None;
        }
        let out = self.cur as u64;
        if self.cur == 0 {
            self.done = true;
        } else {
            let c = self.cur & self.cur.wrapping_neg();
            let r = self.cur + c;
            self.cur = (((r ^ self.cur) >> 2) / c) | r;
        }
        Some(out)
    }
}

/// Spreads the low bits of `compact` onto the positions listed in `slots`.
pub fn deposit(compact: u64, slots: &[usize]) -> u64 {
    let mut out = 0;
    for i in iter_bits(compact) {
        out |= 1u64 << slots[i];
    }
    out
}

/// Finds the first `k`-subset of `{0..n}` accepted by `pred`.
///
/// Subsets are grouped by their smallest element and visited in increasing
/// order of it; within a group they come in numeric order. The parallel and
/// sequential paths return the same subset.
pub fn first_subset<F>(n: usize, k: usize, parallel: bool, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync,
{
    if k == 0 {
        return pred(0).then_some(0);
    }
    if k > n {
        return None;
    }
    let group = |low: usize| -> Option<u64> {
        let rest = n - low - 1;
        let slots: Vec<usize> = (low + 1..n).collect();
        Combinations::new(rest, k - 1)
            .map(|c| deposit(c, &slots) | (1u64 << low))
            .find(|&s| pred(s))
    };
    if parallel {
        use rayon::prelude::*;
        (0..=n - k).into_par_iter().find_map_first(group)
    } else {
        (0..=n - k).find_map(group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn combination_counts() {
        for n in 0..=10 {
            for k in 0..=n {
                let all: Vec<u64> = Combinations::new(n, k).collect();
                assert_eq!(all.len() as u64, binom(n as u64, k as u64), "n={n} k={k}");
                assert!(all.iter().all(|m| m.count_ones() as usize == k));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(Combinations::new(64, 64).collect::<Vec<_>>(), vec![u64::MAX]);
        assert_eq!(Combinations::new(64, 63).count(), 64);
    }

    #[test]
    fn first_subset_matches_in_both_modes() {
        let pred = |s: u64| s & 0b1010_0000 == 0b1010_0000;
        let a = first_subset(10, 3, false, pred);
        let b = first_subset(10, 3, true, pred);
        assert_eq!(a, b);
        assert_eq!(a, Some(0b1010_0001));
        assert_eq!(first_subset(4, 5, false, |_| true), None);
        assert_eq!(first_subset(4, 0, false, |_| true), Some(0));
    }

    #[test]
    fn bit_iteration() {
        assert_eq!(iter_bits(0b1011).collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(mask_of(&[0, 1, 3]), 0b1011);
        assert_eq!(low_mask(64), u64::MAX);
        assert_eq!(deposit(0b11, &[2, 5]), 0b100100);
    }
}
