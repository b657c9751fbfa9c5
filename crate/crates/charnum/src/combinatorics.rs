//! Partitions stored as exponent vectors, dyadic digit counts, and exact
//! binomial/factorial arithmetic.
//!
//! A partition of weight `n` is the exponent vector `(i_1, i_2, ...)` with
//! `sum_r r*i_r = n`; entry `i_r` counts the parts equal to `r`. Partitions
//! index monomials in characteristic classes, so their enumeration order
//! fixes the column order of every characteristic-number vector produced by
//! this crate.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Number of 1's in the dyadic expansion of `m`.
pub fn alpha(m: u64) -> u32 {
    m.count_ones()
}

/// A partition of a nonnegative integer, stored as the exponent vector
/// `(i_1, i_2, ...)`. Trailing zero exponents are trimmed; the empty vector
/// is the unique partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    exponents: Vec<u32>,
}

impl Partition {
    /// Builds a partition from an exponent vector, trimming trailing zeros.
    pub fn from_exponents(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Partition { exponents }
    }

    /// The empty partition of weight 0.
    pub fn empty() -> Self {
        Partition {
            exponents: Vec::new(),
        }
    }

    /// `sum_r r*i_r`.
    pub fn weight(&self) -> u32 {
        self.exponents
            .iter()
            .enumerate()
            .map(|(idx, &count)| (idx as u32 + 1) * count)
            .sum()
    }

    /// Trimmed exponent vector `(i_1, i_2, ...)`.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Multiplicity of the part `r` (1-based).
    pub fn exponent_of(&self, part: u32) -> u32 {
        assert!(part >= 1, "parts are 1-based");
        self.exponents.get(part as usize - 1).copied().unwrap_or(0)
    }

    /// Exponent vector padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<u32> {
        let mut out = self.exponents.clone();
        out.resize(len.max(out.len()), 0);
        out
    }

    /// Parts in descending order, e.g. `[2, 1, 1]` for `i_1 = 2, i_2 = 1`.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (idx, &count) in self.exponents.iter().enumerate().rev() {
            for _ in 0..count {
                out.push(idx as u32 + 1);
            }
        }
        out
    }

    /// Number of parts, `sum_r i_r`.
    pub fn part_count(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Renders the class monomial indexed by this partition, e.g. `c1^2 c2`
    /// for exponents `(2, 1)` with letter `c`. The empty partition renders
    /// as `1`.
    pub fn monomial_string(&self, letter: char) -> String {
        if self.exponents.is_empty() {
            return "1".to_string();
        }
        let mut pieces = Vec::new();
        for (idx, &count) in self.exponents.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let var = format!("{letter}{}", idx + 1);
            if count == 1 {
                pieces.push(var);
            } else {
                pieces.push(format!("{var}^{count}"));
            }
        }
        pieces.join(" ")
    }
}

/// Canonical order: by weight, then ascending lexicographic on the exponent
/// vector read from the largest part down to the smallest. Within a fixed
/// weight `n` this puts the all-ones partition `(n, 0, ...)` first and the
/// single part `n` last, matching the column order of characteristic-number
/// vectors.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| {
            let len = self.exponents.len().max(other.exponents.len());
            let left = self.padded(len);
            let right = other.padded(len);
            left.iter().rev().cmp(right.iter().rev())
        })
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let padded = self.padded(self.weight() as usize);
        let body: Vec<String> = padded.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", body.join(", "))
    }
}

/// All partitions of weight `n` in canonical order, each exactly once.
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut exponents = vec![0u32; n as usize];
    enumerate(n, n, &mut exponents, &mut out);
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

fn enumerate(remaining: u32, cap: u32, exponents: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_exponents(exponents.clone()));
        return;
    }
    // Choosing the largest part in ascending order yields the canonical
    // enumeration directly.
    for part in 1..=remaining.min(cap) {
        exponents[part as usize - 1] += 1;
        enumerate(remaining - part, part, exponents, out);
        exponents[part as usize - 1] -= 1;
    }
}

/// Exact factorial.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Exact binomial coefficient; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut num = BigInt::one();
    for step in 0..k {
        num *= BigInt::from(n - step);
        num /= BigInt::from(step + 1);
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    /// p(n) via the pentagonal-number recurrence, independent of the
    /// enumeration above.
    fn partition_count(n: usize) -> u64 {
        let mut table = vec![0u64; n + 1];
        table[0] = 1;
        for i in 1..=n {
            let mut sum: i64 = 0;
            let mut k: i64 = 1;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                sum += sign * table[i - g1] as i64;
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    sum += sign * table[i - g2] as i64;
                }
                k += 1;
            }
            table[i] = sum as u64;
        }
        table[n]
    }

    #[test]
    fn alpha_small_values() {
        assert_eq!(alpha(0), 0);
        assert_eq!(alpha(3), 2);
        assert_eq!(alpha(12), 2);
    }

    #[test]
    fn alpha_powers_of_two() {
        for k in 0..=30 {
            assert_eq!(alpha(1u64 << k), 1);
            assert_eq!(alpha((1u64 << k) - 1), k);
        }
    }

    #[test]
    fn partitions_of_zero() {
        let list = partitions(0);
        assert_eq!(list, vec![Partition::empty()]);
        assert_eq!(list[0].weight(), 0);
    }

    #[test]
    fn partitions_of_three_in_canonical_order() {
        let list = partitions(3);
        let exps: Vec<&[u32]> = list.iter().map(|p| p.exponents()).collect();
        assert_eq!(exps, vec![&[3][..], &[1, 1][..], &[0, 0, 1][..]]);
    }

    #[test]
    fn partitions_of_four_count() {
        assert_eq!(partitions(4).len(), 5);
    }

    #[test]
    fn partitions_of_four_in_canonical_order() {
        let parts: Vec<Vec<u32>> = partitions(4).iter().map(|p| p.parts()).collect();
        assert_eq!(
            parts,
            vec![
                vec![1, 1, 1, 1],
                vec![2, 1, 1],
                vec![2, 2],
                vec![3, 1],
                vec![4],
            ]
        );
    }

    #[test]
    fn partition_counts_match_pentagonal_recurrence() {
        for n in 0..=20u32 {
            assert_eq!(partitions(n).len() as u64, partition_count(n as usize));
        }
    }

    #[test]
    fn partitions_have_correct_weight_and_no_duplicates() {
        for n in 0..=20u32 {
            let list = partitions(n);
            for p in &list {
                assert_eq!(p.weight(), n);
            }
            for pair in list.windows(2) {
                assert!(pair[0] < pair[1]);
            }
        }
    }

    #[test]
    fn monomial_rendering() {
        let p = Partition::from_exponents(vec![2, 1]);
        assert_eq!(p.monomial_string('c'), "c1^2 c2");
        assert_eq!(Partition::empty().monomial_string('w'), "1");
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(4, -1), BigInt::from(0));
        assert_eq!(binomial(4, 5), BigInt::from(0));
    }

    #[test]
    fn central_binomial_halving_identity() {
        for k in 1..=8u64 {
            assert_eq!(
                binomial(2 * k, k as i64),
                BigInt::from(2) * binomial(2 * k - 1, k as i64)
            );
        }
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
