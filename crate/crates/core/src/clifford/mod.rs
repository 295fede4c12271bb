//! The Clifford algebra of the `(2m+1)`-dimensional quadratic space `V` and
//! its spin representation.
//!
//! `V` has basis `v_1, …, v_{2m+1}` with `v̄_i = v_{2m+2−i}`. The relations are
//! `v_i v̄_i + v̄_i v_i = ε(i)` for `i ≤ m`, `v_{m+1}² = ½`, and all other pairs
//! anticommute. Monomials `v_S` (product in increasing index order) are keyed
//! by bitmasks with bit `k−1` for `v_k`.

mod exterior;
pub mod identities;
mod projection;
mod spin;

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{QSqrt2, ScalarRing};

pub use exterior::{antisymmetrize, antisymmetrize_brute, antisymmetrize_inv, wedge_sort, ExteriorElement};
pub use projection::{
    build_d, build_n, contract, delta, delta_matrix, dual_map, iota, pi_map, pi_stages, sym_square_action,
    wedge_j, wedge_j_plus, PiStages, SymSquare,
};
pub use spin::{
    clifford_to_end, end_to_clifford, monomial_action, spin_generator_action, spin_matrix_of, SpinVector,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("element mixes even and odd degrees")]
    MixedParity,
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("j = {j} outside 2..={m}")]
    JOutOfRange { j: usize, m: usize },
}

/// Bitmask of generator indices `1..=2m+1`.
pub type Monomial = u32;

pub fn bits(s: Monomial) -> Vec<usize> {
    (0..32).filter(|&k| s >> k & 1 == 1).map(|k| k + 1).collect()
}

pub fn mask_of(idx: &[usize]) -> Monomial {
    idx.iter().fold(0, |acc, &k| acc | 1 << (k - 1))
}

/// `ε(i) = (−1)^{m+1−i}` for `1 ≤ i ≤ m`.
pub fn epsilon(i: usize, m: usize) -> i64 {
    assert!((1..=m).contains(&i), "epsilon index {i} outside 1..={m}");
    if (m + 1 - i).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `2m+2−i`, the index of `v̄_i`.
pub fn bar(i: usize, m: usize) -> usize {
    2 * m + 2 - i
}

fn parity_of(s: Monomial) -> u32 {
    s.count_ones() % 2
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct CliffordElement {
    m: usize,
    terms: BTreeMap<Monomial, QSqrt2>,
}

impl CliffordElement {
    pub fn zero(m: usize) -> Self {
        CliffordElement { m, terms: BTreeMap::new() }
    }

    pub fn scalar(m: usize, c: QSqrt2) -> Self {
        let mut x = Self::zero(m);
        x.add_term(0, c);
        x
    }

    pub fn one(m: usize) -> Self {
        Self::scalar(m, QSqrt2::one())
    }

    /// The generator `v_k`.
    pub fn generator(k: usize, m: usize) -> Self {
        assert!((1..=2 * m + 1).contains(&k));
        let mut x = Self::zero(m);
        x.add_term(1 << (k - 1), QSqrt2::one());
        x
    }

    /// The ordered product `v_{k_1} ⋯ v_{k_r}` of arbitrary (unsorted) indices.
    pub fn word(idx: &[usize], m: usize) -> Self {
        idx.iter().fold(Self::one(m), |acc, &k| acc.mul(&Self::generator(k, m)))
    }

    /// `v_S` for a sorted index set given as mask.
    pub fn monomial(s: Monomial, c: QSqrt2, m: usize) -> Self {
        let mut x = Self::zero(m);
        x.add_term(s, c);
        x
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, QSqrt2> {
        &self.terms
    }

    pub fn coeff(&self, s: Monomial) -> QSqrt2 {
        self.terms.get(&s).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: Monomial, c: QSqrt2) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(s).or_default();
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (s, c) in &o.terms {
            r.add_term(*s, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &QSqrt2) -> Self {
        let mut r = Self::zero(self.m);
        for (s, d) in &self.terms {
            r.add_term(*s, d * c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-QSqrt2::one()))
    }

    /// `Some(0)` / `Some(1)` for homogeneous parity, `None` for mixed (zero is even).
    pub fn parity(&self) -> Option<u32> {
        let mut ps = self.terms.keys().map(|&s| parity_of(s));
        let first = ps.next().unwrap_or(0);
        ps.all(|p| p == first).then_some(first)
    }

    /// Right multiplication of the monomial `c·v_S` by the generator `v_g`,
    /// accumulating into `out`.
    fn mono_times_gen(&self, s: Monomial, g: usize, c: &QSqrt2, out: &mut Self) {
        let m = self.m;
        let list = bits(s);
        let mut sign = QSqrt2::one();
        let mut p = list.len();
        while p > 0 {
            let h = list[p - 1];
            if h < g {
                break;
            }
            if h == g {
                if g == m + 1 {
                    let rest = s & !(1 << (h - 1));
                    out.add_term(rest, c * &sign * QSqrt2::from_ratio(1, 2));
                }
                return;
            }
            if g <= m && h == bar(g, m) {
                // v̄_g v_g = ε(g) − v_g v̄_g
                let rest = s & !(1 << (h - 1));
                out.add_term(rest, c * &sign * QSqrt2::from_int(epsilon(g, m)));
            }
            sign = -sign;
            p -= 1;
        }
        out.add_term(s | 1 << (g - 1), c * &sign);
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.m, o.m);
        let mut out = Self::zero(self.m);
        for (t, ct) in &o.terms {
            let mut part = self.scale(ct);
            for g in bits(*t) {
                let mut next = Self::zero(self.m);
                for (s, c) in &part.terms {
                    part.mono_times_gen(*s, g, c, &mut next);
                }
                part = next;
            }
            out = out.add(&part);
        }
        out
    }

    /// `[x, y] = xy − yx`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Terms of a given degree only.
    pub fn degree_part(&self, k: u32) -> Self {
        let mut r = Self::zero(self.m);
        for (s, c) in &self.terms {
            if s.count_ones() == k {
                r.add_term(*s, c.clone());
            }
        }
        r
    }

    /// Debug dump as `coeff * v{S}` lines.
    pub fn dump(&self) -> String {
        self.terms
            .iter()
            .map(|(s, c)| {
                let idx: Vec<String> = bits(*s).iter().map(|k| k.to_string()).collect();
                format!("{} * v{{{}}}", c, idx.join(","))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl[m={}]{{{}}}", self.m, self.dump().replace('\n', "; "))
    }
}

/// `v_S` monomial coefficient list helper for scalars in `ScalarRing` form.
fn qs(n: i64) -> QSqrt2 {
    QSqrt2::from_int(n)
}

/// Clifford image of the Chevalley generator `e_i`:
/// `ε(i+1) v_i v̄_{i+1}` for `i < m`, `√2 v_m v_{m+1}` for `i = m`.
pub fn chevalley_e_cl(i: usize, m: usize) -> CliffordElement {
    assert!((1..=m).contains(&i));
    if i < m {
        CliffordElement::word(&[i, bar(i + 1, m)], m).scale(&qs(epsilon(i + 1, m)))
    } else {
        CliffordElement::word(&[m, m + 1], m).scale(&QSqrt2::sqrt2())
    }
}

/// Clifford image of `f_i`: `ε(i) v_{i+1} v̄_i` for `i < m`, `√2 v̄_m v_{m+1}` for `i = m`.
pub fn chevalley_f_cl(i: usize, m: usize) -> CliffordElement {
    assert!((1..=m).contains(&i));
    if i < m {
        CliffordElement::word(&[i + 1, bar(i, m)], m).scale(&qs(epsilon(i, m)))
    } else {
        CliffordElement::word(&[bar(m, m), m + 1], m).scale(&QSqrt2::sqrt2())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(k: usize, m: usize) -> CliffordElement {
        CliffordElement::generator(k, m)
    }

    #[test]
    fn epsilon_examples() {
        for m in 2..6 {
            assert_eq!(epsilon(m, m), -1);
            assert_eq!(epsilon(m - 1, m), 1);
        }
    }

    #[test]
    fn defining_relations() {
        for m in 2..5 {
            for i in 1..=2 * m + 1 {
                for j in 1..=2 * m + 1 {
                    let anti = g(i, m).mul(&g(j, m)).add(&g(j, m).mul(&g(i, m)));
                    let expected = if i == j && i == m + 1 {
                        CliffordElement::one(m)
                    } else if i + j == 2 * m + 2 && i != j {
                        CliffordElement::scalar(m, qs(epsilon(i.min(j), m)))
                    } else {
                        CliffordElement::zero(m)
                    };
                    assert_eq!(anti, expected, "m={m} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn relation_examples() {
        let m = 3;
        let vm = g(m, m);
        let vbm = g(bar(m, m), m);
        assert_eq!(vm.mul(&vbm).add(&vbm.mul(&vm)), CliffordElement::scalar(m, qs(-1)));
        assert_eq!(g(m + 1, m).mul(&g(m + 1, m)), CliffordElement::scalar(m, QSqrt2::from_ratio(1, 2)));
        assert_eq!(g(1, m).mul(&g(2, m)), g(2, m).mul(&g(1, m)).scale(&qs(-1)));
    }

    #[test]
    fn associativity_on_words() {
        let m = 2;
        let a = CliffordElement::word(&[4, 1, 3], m).add(&CliffordElement::one(m));
        let b = CliffordElement::word(&[2, 5, 3], m);
        let c = CliffordElement::word(&[5, 1], m).add(&g(3, m));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}
