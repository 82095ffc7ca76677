use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// A set of arm indices played together in one round.
///
/// Stored as a strictly increasing, non-empty list. Empty slots of a
/// fixed-width strategy vector are represented by absence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strategy(Vec<usize>);

impl Strategy {
    /// Builds a strategy from arm indices in any order; duplicates are rejected.
    pub fn new(mut arms: Vec<usize>) -> Result<Self> {
        if arms.is_empty() {
            return Err(Error::InvalidStrategy("empty"));
        }
        arms.sort_unstable();
        if arms.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidStrategy("duplicate arm"));
        }
        Ok(Self(arms))
    }

    /// Builds from an already strictly increasing list.
    pub(crate) fn from_sorted(arms: Vec<usize>) -> Self {
        debug_assert!(!arms.is_empty());
        debug_assert!(arms.windows(2).all(|w| w[0] < w[1]));
        Self(arms)
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut arms = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        while m != 0 {
            arms.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        Self::from_sorted(arms)
    }

    pub fn arms(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, arm: usize) -> bool {
        self.0.binary_search(&arm).is_ok()
    }

    /// Errors unless every arm index is `< arms`.
    pub fn check_range(&self, arms: usize) -> Result<()> {
        match self.0.last() {
            Some(&last) if last >= arms => Err(Error::ArmOutOfRange { arm: last, arms }),
            _ => Ok(()),
        }
    }

    /// Tie-break order among equal-valued strategies.
    ///
    /// At the smallest arm on which the two strategies differ, the one that
    /// contains it comes first. For equal cardinalities this is plain
    /// lexicographic order of the index sequences; when one strategy extends
    /// the other, the larger one comes first.
    pub fn tie_order(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        while i < a.len() && i < b.len() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => i += 1,
                // `a` holds the smaller differing element.
                Ordering::Less => return Ordering::Less,
                Ordering::Greater => return Ordering::Greater,
            }
        }
        // One is a prefix of the other: the longer one contains the differing arm.
        b.len().cmp(&a.len())
    }
}

impl fmt::Display for Strategy {
    /// `{1,2,4}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn new_sorts_and_rejects_duplicates() {
        assert_eq!(Strategy::new(vec![3, 1]).unwrap().arms(), &[1, 3]);
        assert!(Strategy::new(vec![2, 2]).is_err());
        assert!(Strategy::new(vec![]).is_err());
    }

    #[test]
    fn tie_order_matches_lexicographic_for_equal_length() {
        let a = Strategy::new(vec![0, 2, 5]).unwrap();
        let b = Strategy::new(vec![0, 3, 4]).unwrap();
        assert_eq!(a.tie_order(&b), Ordering::Less);
        assert_eq!(b.tie_order(&a), Ordering::Greater);
        assert_eq!(a.tie_order(&a), Ordering::Equal);
    }

    #[test]
    fn tie_order_prefers_extension() {
        let short = Strategy::new(vec![0, 1]).unwrap();
        let long = Strategy::new(vec![0, 1, 2]).unwrap();
        assert_eq!(long.tie_order(&short), Ordering::Less);
    }

    #[test]
    fn mask_round_trip_and_display() {
        let s = Strategy::from_mask(0b1010_0110);
        assert_eq!(s.arms(), &[1, 2, 5, 7]);
        assert_eq!(s.to_string(), "{1,2,5,7}");
        assert!(s.check_range(8).is_ok());
        assert_eq!(
            s.check_range(7),
            Err(Error::ArmOutOfRange { arm: 7, arms: 7 })
        );
    }
}
