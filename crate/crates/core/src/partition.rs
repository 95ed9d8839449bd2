//! Ordinary partitions: enumeration, the congruence-side counts computed by
//! dynamic programming, and the difference-condition predicates.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_ki, Error, Result};

/// A partition stored as a weakly decreasing list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts `parts` into weakly decreasing order. Zero parts are dropped.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, part: usize) -> bool {
        // parts are decreasing
        self.parts.binary_search_by(|p| part.cmp(p)).is_ok()
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Iterator over the partitions of `n` with parts at most `max_part`, in
/// lexicographically decreasing order.
#[derive(Clone, Debug)]
pub struct Partitions {
    next: Option<Vec<usize>>,
    max_part: usize,
}

impl Partitions {
    fn new(n: usize, max_part: usize) -> Self {
        let next = if n == 0 {
            Some(Vec::new())
        } else if max_part == 0 {
            None
        } else {
            let mut first = vec![max_part; n / max_part];
            if n % max_part > 0 {
                first.push(n % max_part);
            }
            Some(first)
        };
        Self { next, max_part }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // strip trailing ones, then lower the last part > 1 and refill greedily
        let mut freed = 0;
        while succ.last() == Some(&1) {
            succ.pop();
            freed += 1;
        }
        if let Some(last) = succ.pop() {
            let cap = last - 1;
            freed += last;
            succ.push(cap);
            freed -= cap;
            while freed > 0 {
                let p = freed.min(cap);
                succ.push(p);
                freed -= p;
            }
            debug_assert!(succ[0] <= self.max_part);
            self.next = Some(succ);
        }
        Some(Partition { parts: current })
    }
}

/// Every partition of `n`, each exactly once, in lexicographically
/// decreasing order (`n`, then `n-1 + 1`, ...).
pub fn enumerate_partitions(n: usize) -> Partitions {
    Partitions::new(n, n)
}

/// Partitions of `n` into parts no larger than `max_part`.
pub fn enumerate_partitions_bounded(n: usize, max_part: usize) -> Partitions {
    Partitions::new(n, max_part.min(n))
}

/// Number of partitions of each `0..=n_max` into parts accepted by
/// `allowed`, by an unbounded-knapsack sweep over part sizes.
pub fn count_restricted(n_max: usize, allowed: impl Fn(usize) -> bool) -> Vec<BigInt> {
    let mut ways = vec![BigInt::zero(); n_max + 1];
    ways[0] = BigInt::one();
    for p in (1..=n_max).filter(|&p| allowed(p)) {
        for n in p..=n_max {
            let (lo, hi) = ways.split_at_mut(n);
            hi[0] += &lo[n - p];
        }
    }
    ways
}

/// Congruence condition of the B-side: a part `p` is allowed when it is even
/// with `p mod 4k != 4i+2`, or odd with `p mod 4k` in `{2i+1, 2k+2i+1}`.
pub fn is_b_part(p: usize, k: usize, i: usize) -> bool {
    let r = p % (4 * k);
    if p % 2 == 0 {
        r != 4 * i + 2
    } else {
        r == 2 * i + 1 || r == 2 * k + 2 * i + 1
    }
}

/// `B_{i,k}(n)`: partitions of `n` into parts satisfying [`is_b_part`].
pub fn count_b(n: usize, k: usize, i: usize) -> Result<BigInt> {
    Ok(count_b_table(n, k, i)?.swap_remove(n))
}

/// `B_{i,k}(n)` for every `n <= n_max`.
pub fn count_b_table(n_max: usize, k: usize, i: usize) -> Result<Vec<BigInt>> {
    check_ki(k, i)?;
    Ok(count_restricted(n_max, |p| is_b_part(p, k, i)))
}

/// Which statement of the difference condition to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phrasing {
    /// The general form, valid for every `0 <= i <= k-1`.
    Corollary,
    /// The form stated for `i = k-1`.
    Andrews,
    /// The form stated for `i = 0`.
    Dual,
}

impl fmt::Display for Phrasing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phrasing::Corollary => "corollary",
            Phrasing::Andrews => "andrews",
            Phrasing::Dual => "dual",
        })
    }
}

fn check_phrasing(k: usize, i: usize, phrasing: Phrasing) -> Result<()> {
    check_ki(k, i)?;
    let required = match phrasing {
        Phrasing::Corollary => return Ok(()),
        Phrasing::Andrews => k - 1,
        Phrasing::Dual => 0,
    };
    if i != required {
        return Err(Error::PhrasingMismatch {
            phrasing,
            required,
            i,
            k,
        });
    }
    Ok(())
}

/// Difference condition of the C-side.
///
/// Parameters are not validated here; see [`count_c`].
pub fn satisfies_c(lambda: &Partition, k: usize, i: usize, phrasing: Phrasing) -> bool {
    let parts = lambda.parts();
    // with an occurrence of odd part 2j+1 removed, does `forbidden` hit any
    // remaining part?
    let others_hit = |odd: usize, forbidden: &dyn Fn(usize) -> bool| {
        let mut skipped = false;
        parts.iter().any(|&p| {
            if p == odd && !skipped {
                skipped = true;
                false
            } else {
                forbidden(p)
            }
        })
    };
    let mut distinct_odds = parts.iter().copied().filter(|p| p % 2 == 1).collect::<Vec<_>>();
    distinct_odds.dedup();

    match phrasing {
        Phrasing::Corollary => {
            if distinct_odds.last().is_some_and(|&s| s < 2 * i + 1) {
                return false;
            }
            distinct_odds.iter().all(|&odd| {
                let j2 = odd - 1;
                let (even_lo, even_hi) = ((j2 + 2).saturating_sub(2 * i), j2 + 2 * k - 2 * i - 2);
                let (odd_lo, odd_hi) = (j2 + 1, j2 + 2 * k - 1);
                !others_hit(odd, &|p| {
                    if p % 2 == 0 {
                        (even_lo..=even_hi).contains(&p)
                    } else {
                        (odd_lo..=odd_hi).contains(&p)
                    }
                })
            })
        }
        Phrasing::Andrews => {
            let smallest = parts.last().copied();
            if smallest.is_some_and(|s| s % 2 == 1 && s <= 2 * k - 3) {
                return false;
            }
            distinct_odds.iter().all(|&odd| {
                let lo = (odd + 2).saturating_sub(2 * k);
                !others_hit(odd, &|p| (lo..=odd).contains(&p))
            })
        }
        Phrasing::Dual => distinct_odds.iter().all(|&odd| {
            let hi = odd + 2 * k - 2;
            !others_hit(odd, &|p| (odd..=hi).contains(&p))
        }),
    }
}

/// Partitions of `n` satisfying the chosen C-side phrasing, in enumeration
/// order.
pub fn c_partitions(n: usize, k: usize, i: usize, phrasing: Phrasing) -> Result<Vec<Partition>> {
    check_phrasing(k, i, phrasing)?;
    Ok(enumerate_partitions(n)
        .filter(|l| satisfies_c(l, k, i, phrasing))
        .collect())
}

/// Partitions of `n` into B-side parts, by filtering the full enumeration.
pub fn b_partitions(n: usize, k: usize, i: usize) -> Result<Vec<Partition>> {
    check_ki(k, i)?;
    Ok(enumerate_partitions(n)
        .filter(|l| l.parts().iter().all(|&p| is_b_part(p, k, i)))
        .collect())
}

/// `C_{i,k}(n)` under the chosen phrasing, by filtering the enumeration.
pub fn count_c(n: usize, k: usize, i: usize, phrasing: Phrasing) -> Result<u64> {
    check_phrasing(k, i, phrasing)?;
    Ok(enumerate_partitions(n)
        .filter(|l| satisfies_c(l, k, i, phrasing))
        .count() as u64)
}

pub fn is_schur_product_part(p: usize) -> bool {
    matches!(p % 6, 1 | 5)
}

/// Partitions of `n` into parts congruent to 1 or 5 mod 6.
pub fn count_schur_product(n: usize) -> BigInt {
    count_schur_product_table(n).swap_remove(n)
}

pub fn count_schur_product_table(n_max: usize) -> Vec<BigInt> {
    count_restricted(n_max, is_schur_product_part)
}

/// Adjacent parts differ by at least 3, and by at least 6 when both are
/// multiples of 3.
pub fn satisfies_schur_gap(lambda: &Partition) -> bool {
    lambda.parts().windows(2).all(|w| {
        let d = w[0] - w[1];
        d >= 3 && !(w[0] % 3 == 0 && w[1] % 3 == 0 && d < 6)
    })
}

pub fn count_schur_gap(n: usize) -> u64 {
    enumerate_partitions(n).filter(satisfies_schur_gap).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::QSeries;

    fn p(parts: &[usize]) -> Partition {
        Partition::from_parts(parts.to_vec())
    }

    #[test]
    fn enumerate_small() {
        let zero: Vec<_> = enumerate_partitions(0).collect();
        assert_eq!(zero, vec![Partition::empty()]);

        let four: Vec<_> = enumerate_partitions(4).collect();
        assert_eq!(
            four,
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(enumerate_partitions(10).count(), 42);
    }

    #[test]
    fn enumeration_is_strictly_decreasing() {
        let all: Vec<_> = enumerate_partitions(15).collect();
        assert!(all.windows(2).all(|w| w[0] > w[1]));
        assert!(all.iter().all(|l| l.weight() == 15));
        assert!(all.iter().all(|l| l.parts().windows(2).all(|w| w[0] >= w[1])));
    }

    #[test]
    fn bounded_enumeration() {
        let got: Vec<_> = enumerate_partitions_bounded(5, 2).collect();
        assert_eq!(got, vec![p(&[2, 2, 1]), p(&[2, 1, 1, 1]), p(&[1, 1, 1, 1, 1])]);
        assert_eq!(enumerate_partitions_bounded(3, 0).count(), 0);
        assert_eq!(enumerate_partitions_bounded(0, 0).count(), 1);
    }

    #[test]
    fn partition_numbers_match_euler_inverse() {
        let inv = QSeries::euler(40).invert_unit().unwrap();
        for n in 0..=40 {
            assert_eq!(BigInt::from(enumerate_partitions(n).count()), *inv.coeff(n), "n = {n}");
        }
    }

    #[test]
    fn b02_worked_example() {
        assert_eq!(count_b(10, 2, 0).unwrap(), BigInt::from(10));
        let got = b_partitions(10, 2, 0).unwrap();
        let expected = vec![
            p(&[9, 1]),
            p(&[8, 1, 1]),
            p(&[6, 4]),
            p(&[6, 1, 1, 1, 1]),
            p(&[5, 5]),
            p(&[5, 4, 1]),
            p(&[5, 1, 1, 1, 1, 1]),
            p(&[4, 4, 1, 1]),
            p(&[4, 1, 1, 1, 1, 1, 1]),
            p(&[1; 10]),
        ];
        assert_eq!(got, expected);
        let allowed: Vec<usize> = (0..8).filter(|&r| is_b_part(r + 8, 2, 0)).collect();
        assert_eq!(allowed, vec![0, 1, 4, 5, 6]);
    }

    #[test]
    fn b_table_k2_i1() {
        // independently enumerated
        let expected = [1, 0, 1, 1, 2, 1, 3, 3, 5, 4, 8, 8, 12];
        let got = count_b_table(12, 2, 1).unwrap();
        assert_eq!(got, expected.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    }

    #[test]
    fn b_of_zero_is_one() {
        for k in 2..6 {
            for i in 0..k {
                assert_eq!(count_b(0, k, i).unwrap(), BigInt::one());
                assert_eq!(count_c(0, k, i, Phrasing::Corollary).unwrap(), 1);
            }
        }
    }

    #[test]
    fn c02_worked_example() {
        let got = c_partitions(10, 2, 0, Phrasing::Dual).unwrap();
        let expected = vec![
            p(&[10]),
            p(&[9, 1]),
            p(&[8, 2]),
            p(&[7, 3]),
            p(&[6, 4]),
            p(&[6, 2, 2]),
            p(&[5, 4, 1]),
            p(&[4, 4, 2]),
            p(&[4, 2, 2, 2]),
            p(&[2, 2, 2, 2, 2]),
        ];
        assert_eq!(got, expected);
        assert_eq!(c_partitions(10, 2, 0, Phrasing::Corollary).unwrap(), expected);
    }

    #[test]
    fn c_table_k3_i1() {
        let expected = [1u64, 0, 1, 1, 2, 1, 3, 2, 5, 4, 7, 6, 12, 9, 16, 15];
        let got: Vec<u64> = (0..16)
            .map(|n| count_c(n, 3, 1, Phrasing::Corollary).unwrap())
            .collect();
        assert_eq!(got, expected);
        let b = count_b_table(15, 3, 1).unwrap();
        assert_eq!(b, expected.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    }

    #[test]
    fn repeated_odd_part_is_rejected() {
        for ph in [Phrasing::Corollary, Phrasing::Dual] {
            assert!(!satisfies_c(&p(&[3, 3]), 2, 0, ph));
            assert!(satisfies_c(&p(&[3]), 2, 0, ph));
        }
        assert!(!satisfies_c(&p(&[5, 5]), 2, 1, Phrasing::Andrews));
    }

    #[test]
    fn smallest_odd_part_bound() {
        // k = 3, i = 2: odd parts below 5 are excluded
        assert!(!satisfies_c(&p(&[8, 3]), 3, 2, Phrasing::Corollary));
        assert!(!satisfies_c(&p(&[8, 3]), 3, 2, Phrasing::Andrews));
        assert!(satisfies_c(&p(&[8, 5]), 3, 2, Phrasing::Corollary));
        assert!(satisfies_c(&p(&[8, 5]), 3, 2, Phrasing::Andrews));
        assert!(satisfies_c(&p(&[2, 2]), 3, 2, Phrasing::Andrews));
    }

    #[test]
    fn phrasing_mismatch_is_rejected() {
        assert!(matches!(
            count_c(5, 3, 1, Phrasing::Andrews),
            Err(Error::PhrasingMismatch { required: 2, .. })
        ));
        assert!(matches!(
            count_c(5, 3, 1, Phrasing::Dual),
            Err(Error::PhrasingMismatch { required: 0, .. })
        ));
        assert_eq!(count_b(3, 1, 0), Err(Error::InvalidK(1)));
        assert_eq!(count_b(3, 2, 2), Err(Error::InvalidI { i: 2, k: 2 }));
    }

    #[test]
    fn schur_small() {
        let prod: Vec<_> = count_schur_product_table(7);
        let gap: Vec<_> = (0..=7).map(count_schur_gap).collect();
        let expected = [1u64, 1, 1, 1, 1, 2, 2, 3];
        assert_eq!(gap, expected);
        assert_eq!(prod, expected.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        assert!(!satisfies_schur_gap(&p(&[6, 3])));
        assert!(satisfies_schur_gap(&p(&[9, 3])));
        assert!(satisfies_schur_gap(&p(&[7, 4])));
        assert!(!satisfies_schur_gap(&p(&[4, 3])));
        assert_eq!(count_schur_gap(40), 169);
        assert_eq!(count_schur_product(40), BigInt::from(169));
    }

    #[test]
    fn dp_matches_filtering() {
        for k in 2..=5 {
            for i in 0..k {
                let dp = count_b_table(25, k, i).unwrap();
                for n in 0..=25 {
                    let brute = b_partitions(n, k, i).unwrap().len();
                    assert_eq!(dp[n], BigInt::from(brute), "n={n} k={k} i={i}");
                }
            }
        }
    }

    #[test]
    fn special_phrasings_agree_with_corollary() {
        for k in 2..=5 {
            for n in 0..=25 {
                for l in enumerate_partitions(n) {
                    assert_eq!(
                        satisfies_c(&l, k, k - 1, Phrasing::Corollary),
                        satisfies_c(&l, k, k - 1, Phrasing::Andrews),
                        "{l} k={k}"
                    );
                    assert_eq!(
                        satisfies_c(&l, k, 0, Phrasing::Corollary),
                        satisfies_c(&l, k, 0, Phrasing::Dual),
                        "{l} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn c_sets_shrink_as_k_grows() {
        for k in 2..5 {
            for i in 0..k {
                for n in 0..=20 {
                    let wider = c_partitions(n, k + 1, i, Phrasing::Corollary).unwrap();
                    let narrower = c_partitions(n, k, i, Phrasing::Corollary).unwrap();
                    assert!(wider.iter().all(|l| narrower.contains(l)), "n={n} k={k} i={i}");
                }
            }
        }
    }
}
