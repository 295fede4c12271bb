//! Strict partitions in the `m × m` box and their subset encoding.
//!
//! A subset `I ⊆ {1,…,m}` is a bitmask with bit `i−1` standing for `i`. The
//! partition attached to `I = {i₁ < … < i_k}` is `(m+1−i₁, …, m+1−i_k)`.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Bitmask subset of `{1,…,m}`.
pub type Subset = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("index {index} outside 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("parts {0:?} are not a strict partition in the box")]
    NotStrict(Vec<usize>),
    #[error("l = {l} out of range for m = {m}")]
    LevelOutOfRange { l: usize, m: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct StrictPartition {
    parts: Vec<usize>,
    m: usize,
}

/// Elements of a subset in increasing order.
pub fn elements(s: Subset) -> Vec<usize> {
    (0..32).filter(|&k| s >> k & 1 == 1).map(|k| k + 1).collect()
}

pub fn subset_of(elems: &[usize]) -> Subset {
    elems.iter().fold(0, |acc, &i| acc | 1 << (i - 1))
}

/// `s(J) = Σ_{j∈J} j`.
pub fn subset_sum(s: Subset) -> usize {
    elements(s).iter().sum()
}

/// Sign `(−1)^{Σ_{j∈J}(l+1−j)}` attached to `J` in the bilinear sums of the
/// superpotential: the parity of the total length of the removed rows.
pub fn term_sign(l: usize, j: Subset) -> i64 {
    let removed: usize = elements(j).iter().map(|&i| l + 1 - i).sum();
    if removed.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All subsets of `{1,…,l}`.
pub fn subsets(l: usize) -> impl Iterator<Item = Subset> {
    0..(1u32 << l)
}

impl StrictPartition {
    pub fn new(parts: Vec<usize>, m: usize) -> Result<Self, PartitionError> {
        let strict = parts.windows(2).all(|w| w[0] > w[1]);
        let boxed = parts.iter().all(|&p| (1..=m).contains(&p));
        if strict && boxed {
            Ok(StrictPartition { parts, m })
        } else {
            Err(PartitionError::NotStrict(parts))
        }
    }

    pub fn empty(m: usize) -> Self {
        StrictPartition { parts: Vec::new(), m }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn from_subset(s: Subset, m: usize) -> Result<Self, PartitionError> {
        if let Some(&i) = elements(s).iter().find(|&&i| i > m) {
            return Err(PartitionError::IndexOutOfRange { index: i, m });
        }
        Ok(StrictPartition { parts: elements(s).iter().map(|i| m + 1 - i).collect(), m })
    }

    pub fn to_subset(&self) -> Subset {
        self.parts.iter().fold(0, |acc, &p| acc | 1 << (self.m - p))
    }

    /// Poincaré dual: complement of the subset.
    pub fn pd(&self) -> Self {
        let full = (1u32 << self.m) - 1;
        StrictPartition::from_subset(full & !self.to_subset(), self.m).unwrap()
    }

    /// All `2^m` strict partitions, ordered by subset mask.
    pub fn all(m: usize) -> Vec<Self> {
        subsets(m).map(|s| StrictPartition::from_subset(s, m).unwrap()).collect()
    }

    /// Text form `"(3,2,1)"`; the empty partition is `"()"`.
    pub fn render(&self) -> String {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        format!("({})", body.join(","))
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for StrictPartition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

fn check_level(l: usize, m: usize, max: usize) -> Result<(), PartitionError> {
    if l > max {
        Err(PartitionError::LevelOutOfRange { l, m })
    } else {
        Ok(())
    }
}

/// `ρ_l = (l, l−1, …, 1)`.
pub fn rho(l: usize, m: usize) -> Result<StrictPartition, PartitionError> {
    check_level(l, m, m)?;
    Ok(StrictPartition { parts: (1..=l).rev().collect(), m })
}

/// `μ_l = (m, m−1, …, m+1−l)`.
pub fn mu(l: usize, m: usize) -> Result<StrictPartition, PartitionError> {
    check_level(l, m, m)?;
    Ok(StrictPartition { parts: (m + 1 - l..=m).rev().collect(), m })
}

/// `ρ_{l,+}`: one box added to the first row of `ρ_l`; `ρ_{0,+} = (1)`.
pub fn rho_plus(l: usize, m: usize) -> Result<StrictPartition, PartitionError> {
    if l >= m {
        return Err(PartitionError::LevelOutOfRange { l, m });
    }
    let mut parts: Vec<usize> = (1..=l).rev().collect();
    match parts.first_mut() {
        Some(p) => *p += 1,
        None => parts.push(1),
    }
    Ok(StrictPartition { parts, m })
}

fn remove_rows(p: &StrictPartition, j: Subset) -> StrictPartition {
    let parts = p
        .parts
        .iter()
        .enumerate()
        .filter(|(k, _)| j >> k & 1 == 0)
        .map(|(_, &x)| x)
        .collect();
    StrictPartition { parts, m: p.m }
}

/// `ρ_l^J`: the `j`-th row (from the top) removed for each `j ∈ J`.
pub fn rho_removed(l: usize, j: Subset, m: usize) -> Result<StrictPartition, PartitionError> {
    Ok(remove_rows(&rho(l, m)?, j))
}

/// `ρ_{l,+}^J`.
pub fn rho_plus_removed(l: usize, j: Subset, m: usize) -> Result<StrictPartition, PartitionError> {
    Ok(remove_rows(&rho_plus(l, m)?, j))
}

fn add_rows(l: usize, j: Subset, m: usize, plus: bool) -> Result<Option<StrictPartition>, PartitionError> {
    let mut parts = mu(l, m)?.parts;
    for &jj in elements(j).iter() {
        if jj > l {
            return Err(PartitionError::IndexOutOfRange { index: jj, m: l });
        }
        parts.push(l + 1 - jj + usize::from(plus && jj == 1));
    }
    Ok(StrictPartition::new(parts, m).ok())
}

/// `μ_l^J`: rows of length `l+1−j` appended in increasing `j`; `None` when
/// the result is not strict.
pub fn mu_added(l: usize, j: Subset, m: usize) -> Result<Option<StrictPartition>, PartitionError> {
    add_rows(l, j, m, false)
}

/// `μ_{l,+}^J`: as [`mu_added`] with `l+1−j+δ_{j,1}` boxes per row.
pub fn mu_plus_added(l: usize, j: Subset, m: usize) -> Result<Option<StrictPartition>, PartitionError> {
    add_rows(l, j, m, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize], m: usize) -> StrictPartition {
        StrictPartition::new(parts.to_vec(), m).unwrap()
    }

    #[test]
    fn subset_bijection_examples() {
        assert_eq!(StrictPartition::from_subset(0b11, 2).unwrap(), p(&[2, 1], 2));
        assert!(StrictPartition::from_subset(0, 4).unwrap().is_empty());
        assert_eq!(StrictPartition::from_subset(0b101, 3).unwrap(), p(&[3, 1], 3));
        assert!(StrictPartition::from_subset(0b100, 2).is_err());
    }

    #[test]
    fn pd_examples() {
        assert_eq!(StrictPartition::empty(3).pd(), p(&[3, 2, 1], 3));
        assert!(p(&[3, 2, 1], 3).pd().is_empty());
        assert_eq!(p(&[2], 2).pd(), p(&[1], 2));
    }

    #[test]
    fn family_examples() {
        assert_eq!(rho(3, 3).unwrap(), p(&[3, 2, 1], 3));
        assert_eq!(mu(2, 4).unwrap(), p(&[4, 3], 4));
        assert_eq!(rho_plus(1, 2).unwrap(), p(&[2], 2));
        assert_eq!(rho_plus(0, 2).unwrap(), p(&[1], 2));
        assert!(rho_plus(2, 2).is_err());
        assert!(rho(0, 2).unwrap().is_empty());
    }

    #[test]
    fn removal_examples() {
        assert!(rho_removed(1, 0b1, 2).unwrap().is_empty());
        assert_eq!(rho_removed(2, 0, 2).unwrap(), p(&[2, 1], 2));
        assert_eq!(rho_removed(3, 0b10, 3).unwrap(), p(&[3, 1], 3));
    }

    #[test]
    fn addition_examples() {
        assert_eq!(mu_added(1, 0b1, 2).unwrap(), Some(p(&[2, 1], 2)));
        assert_eq!(mu_plus_added(1, 0b1, 2).unwrap(), None);
        assert_eq!(mu_added(1, 0, 2).unwrap(), Some(p(&[2], 2)));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[3, 2, 1], 3).to_string(), "(3,2,1)");
        assert_eq!(StrictPartition::empty(2).to_string(), "()");
    }
}
