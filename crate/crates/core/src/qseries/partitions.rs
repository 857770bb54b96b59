//! Brute-force partition enumeration.
//!
//! This is the independent oracle for every character and generating-function
//! formula in the crate, so it deliberately shares no code with the product
//! expansions.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionConstraint {
    All,
    /// Pairwise distinct parts.
    Distinct,
    /// Every part odd.
    OddParts,
    /// Distinct odd parts.
    DistinctOdd,
}

impl PartitionConstraint {
    fn allows_part(self, part: u32) -> bool {
        match self {
            PartitionConstraint::All | PartitionConstraint::Distinct => true,
            PartitionConstraint::OddParts | PartitionConstraint::DistinctOdd => part % 2 == 1,
        }
    }

    fn distinct(self) -> bool {
        matches!(
            self,
            PartitionConstraint::Distinct | PartitionConstraint::DistinctOdd
        )
    }
}

/// Every partition of `n` obeying `constraint`, each a non-increasing list of
/// positive parts, in reverse lexicographic order (`[n]` first).
pub fn enumerate_partitions(n: u32, constraint: PartitionConstraint) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend(n, n, constraint, &mut current, &mut out);
    out
}

fn extend(
    remaining: u32,
    max_part: u32,
    constraint: PartitionConstraint,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        if !constraint.allows_part(part) {
            continue;
        }
        current.push(part);
        let next_max = if constraint.distinct() {
            part - 1
        } else {
            part
        };
        extend(remaining - part, next_max, constraint, current, out);
        current.pop();
    }
}

pub fn count_partitions(n: u32, constraint: PartitionConstraint) -> usize {
    enumerate_partitions(n, constraint).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_four() {
        let p = enumerate_partitions(4, PartitionConstraint::All);
        assert_eq!(
            p,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    #[test]
    fn zero_has_the_empty_partition() {
        for c in [
            PartitionConstraint::All,
            PartitionConstraint::Distinct,
            PartitionConstraint::OddParts,
            PartitionConstraint::DistinctOdd,
        ] {
            assert_eq!(enumerate_partitions(0, c), vec![Vec::<u32>::new()]);
        }
    }

    #[test]
    fn euler_distinct_equals_odd_at_six() {
        assert_eq!(count_partitions(6, PartitionConstraint::Distinct), 4);
        assert_eq!(count_partitions(6, PartitionConstraint::OddParts), 4);
    }

    #[test]
    fn every_partition_is_valid_and_unique() {
        for n in 0..=12 {
            for c in [
                PartitionConstraint::All,
                PartitionConstraint::Distinct,
                PartitionConstraint::OddParts,
                PartitionConstraint::DistinctOdd,
            ] {
                let parts = enumerate_partitions(n, c);
                let mut sorted = parts.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), parts.len());
                for p in &parts {
                    assert_eq!(p.iter().sum::<u32>(), n);
                    assert!(p.windows(2).all(|w| w[0] >= w[1]));
                    if c.distinct() {
                        assert!(p.windows(2).all(|w| w[0] > w[1]));
                    }
                    assert!(p.iter().all(|&x| x > 0 && c.allows_part(x)));
                }
            }
        }
    }
}
