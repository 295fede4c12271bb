//! The Weyl group of type `B_m` as signed permutations, reduced words and
//! reduced subwords.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Mul;

use serde::Serialize;
use thiserror::Error;

use crate::clifford::{chevalley_e_cl, clifford_to_end};
use crate::partitions::{StrictPartition, Subset};
use crate::scalars::{QSqrt2, ScalarRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("simple reflection index {i} outside 1..={m}")]
    OutOfRange { i: usize, m: usize },
}

/// A word in the simple reflections `s_1, …, s_m`.
pub type Word = Vec<usize>;

/// `w` given by its images `w(1), …, w(m)` in `{±1, …, ±m}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignedPermutation(Vec<i32>);

impl SignedPermutation {
    pub fn identity(m: usize) -> Self {
        SignedPermutation((1..=m as i32).collect())
    }

    pub fn from_images(images: Vec<i32>) -> Option<Self> {
        let m = images.len() as i32;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let a = x.abs();
            if a == 0 || a > m || seen[(a - 1) as usize] {
                return None;
            }
            seen[(a - 1) as usize] = true;
        }
        Some(SignedPermutation(images))
    }

    pub fn images(&self) -> &[i32] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    /// `w(k)` for `k ∈ {±1, …, ±m}`.
    pub fn apply(&self, k: i32) -> i32 {
        let v = self.0[(k.unsigned_abs() - 1) as usize];
        if k > 0 {
            v
        } else {
            -v
        }
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0; self.m()];
        for (k, &v) in self.0.iter().enumerate() {
            out[(v.unsigned_abs() - 1) as usize] = if v > 0 { k as i32 + 1 } else { -(k as i32 + 1) };
        }
        SignedPermutation(out)
    }

    /// Number of positive roots `ε_i − ε_j`, `ε_i + ε_j` (i < j) and `ε_i`
    /// sent to negative roots.
    pub fn length(&self) -> usize {
        let w = &self.0;
        let m = w.len();
        let mut n = w.iter().filter(|&&x| x < 0).count();
        for i in 0..m {
            for j in i + 1..m {
                if signed_rank(w[i]) > signed_rank(w[j]) {
                    n += 1;
                }
                // ε_a + ε_b is negative iff the entry of smaller absolute value is negative.
                let small = if w[i].abs() < w[j].abs() { w[i] } else { w[j] };
                if small < 0 {
                    n += 1;
                }
            }
        }
        n
    }
}

/// Position in the order `1 < 2 < … < m < −m < … < −1`, in which
/// `ε_i − ε_j ↦ ε_{w(i)} − ε_{w(j)}` is negative exactly for an inversion.
fn signed_rank(x: i32) -> i64 {
    if x > 0 {
        x as i64
    } else {
        1000 - x.unsigned_abs() as i64
    }
}

impl Mul for &SignedPermutation {
    type Output = SignedPermutation;
    /// `(uv)(k) = u(v(k))`.
    fn mul(self, v: &SignedPermutation) -> SignedPermutation {
        SignedPermutation(v.0.iter().map(|&x| self.apply(x)).collect())
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `s_i`: swaps `i, i+1` for `i < m`; negates coordinate `m` for `i = m`.
pub fn simple_reflection(i: usize, m: usize) -> Result<SignedPermutation, WeylError> {
    if !(1..=m).contains(&i) {
        return Err(WeylError::OutOfRange { i, m });
    }
    let mut w: Vec<i32> = (1..=m as i32).collect();
    if i < m {
        w.swap(i - 1, i);
    } else {
        w[m - 1] = -w[m - 1];
    }
    Ok(SignedPermutation(w))
}

pub fn word_product(word: &[usize], m: usize) -> SignedPermutation {
    word.iter().fold(SignedPermutation::identity(m), |acc, &i| &acc * &simple_reflection(i, m).unwrap())
}

/// `[m; m−1, m; …; 1, …, m]`, a reduced word for `w^P`.
pub fn canonical_wp_word(m: usize) -> Word {
    (1..=m).rev().flat_map(|k| k..=m).collect()
}

/// `N = m(m+1)/2`.
pub fn n_of(m: usize) -> usize {
    m * (m + 1) / 2
}

/// Minimal-length coset representatives of `W/W_P`, `W_P = ⟨s_1, …, s_{m−1}⟩`,
/// indexed by subset mask. Found by walking the spin weight basis from `w_∅`
/// with the raising operators: `e_i · w_L = w_{L'}` gives `rep(L') = s_i rep(L)`.
pub fn coset_reps(m: usize) -> Vec<SignedPermutation> {
    let n = 1usize << m;
    let e: Vec<_> = (1..=m).map(|i| clifford_to_end(&chevalley_e_cl(i, m))).collect();
    let mut rep: Vec<Option<SignedPermutation>> = vec![None; n];
    rep[0] = Some(SignedPermutation::identity(m));
    let mut queue = VecDeque::from([0usize]);
    while let Some(l) = queue.pop_front() {
        let w = rep[l].clone().unwrap();
        for (i, ei) in e.iter().enumerate() {
            let Some(target) = (0..n).find(|&r| !ei.get(r, l).is_zero()) else {
                continue;
            };
            assert_eq!(*ei.get(target, l), QSqrt2::one(), "raising operators act with coefficient 1");
            let w2 = &simple_reflection(i + 1, m).unwrap() * &w;
            match &rep[target] {
                Some(existing) => assert_eq!(*existing, w2),
                None => {
                    rep[target] = Some(w2);
                    queue.push_back(target);
                }
            }
        }
    }
    rep.into_iter().map(|w| w.expect("every weight is reached")).collect()
}

pub fn coset_min_rep(lambda: &StrictPartition) -> SignedPermutation {
    coset_reps(lambda.m())[lambda.to_subset() as usize].clone()
}

/// Inverse of [`coset_reps`].
pub fn coset_index(m: usize) -> HashMap<SignedPermutation, Subset> {
    coset_reps(m).into_iter().enumerate().map(|(l, w)| (w, l as Subset)).collect()
}

pub fn is_min_coset_rep(w: &SignedPermutation) -> bool {
    let m = w.m();
    let l = w.length();
    (1..m).all(|i| (w * &simple_reflection(i, m).unwrap()).length() > l)
}

/// The minimal-length element of `u W_P`: right multiplication by an
/// unsigned permutation reorders the images, and length is minimal when they
/// are sorted in the order `1 < … < m < −m < … < −1`.
pub fn min_in_coset(u: &SignedPermutation) -> SignedPermutation {
    let mut v = u.0.clone();
    v.sort_by_key(|&x| signed_rank(x));
    SignedPermutation(v)
}

/// Position subsets (1-based, increasing) whose letters multiply to `target`
/// with exactly `ℓ(target)` letters.
pub fn reduced_subwords(word: &[usize], target: &SignedPermutation) -> Vec<Vec<usize>> {
    let m = target.m();
    let goal = target.length();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        word: &[usize],
        start: usize,
        cur: &SignedPermutation,
        goal: usize,
        target: &SignedPermutation,
        m: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == goal {
            if cur == target {
                out.push(chosen.clone());
            }
            return;
        }
        if word.len() - start < goal - chosen.len() {
            return;
        }
        for p in start..word.len() {
            let next = cur * &simple_reflection(word[p], m).unwrap();
            if next.length() != chosen.len() + 1 {
                continue;
            }
            chosen.push(p + 1);
            rec(word, p + 1, &next, goal, target, m, chosen, out);
            chosen.pop();
        }
    }
    rec(word, 0, &SignedPermutation::identity(m), goal, target, m, &mut chosen, &mut out);
    out
}

/// Position subsets `S` of the canonical word with `|S| = N − m` such that
/// `(subword at S) · s_1 s_2 ⋯ s_m` is a reduced expression of `w^P`.
pub fn complement_subwords(m: usize) -> Vec<Vec<usize>> {
    let word = canonical_wp_word(m);
    let wp = word_product(&word, m);
    let tail: Word = (1..=m).collect();
    let target = &wp * &word_product(&tail, m).inverse();
    reduced_subwords(&word, &target)
        .into_iter()
        .filter(|s| {
            let mut full: Word = s.iter().map(|&p| word[p - 1]).collect();
            full.extend(&tail);
            full.len() == n_of(m) && word_product(&full, m) == wp
        })
        .collect()
}
