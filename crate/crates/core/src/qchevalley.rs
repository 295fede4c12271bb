//! Quantum Chevalley multiplication by `σ_1` on `qH*(LG(m))`.
//!
//! Schubert classes are indexed by minimal coset representatives of
//! `W(C_m)/S_m`, identified with strict partitions through the spin weights
//! (see [`crate::weyl::coset_reps`]). For a positive root `α ∉ R_P⁺` put
//! `c = α^∨(ω_m)`, `d(α) = c` and `n_α = (m+1)c`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::partitions::{StrictPartition, Subset};
use crate::weyl::{coset_index, coset_reps, min_in_coset, SignedPermutation};

/// Positive root of `C_m` in the basis `ε_1, …, ε_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Root {
    /// `ε_i − ε_j`, `i < j`.
    Minus(usize, usize),
    /// `ε_i + ε_j`, `i < j`.
    Plus(usize, usize),
    /// `2ε_i`.
    Long(usize),
}

impl Root {
    pub fn coords(&self, m: usize) -> Vec<i32> {
        let mut v = vec![0; m];
        match *self {
            Root::Minus(i, j) => {
                v[i - 1] = 1;
                v[j - 1] = -1;
            }
            Root::Plus(i, j) => {
                v[i - 1] = 1;
                v[j - 1] = 1;
            }
            Root::Long(i) => v[i - 1] = 2,
        }
        v
    }

    /// Coroot `2α/(α,α)` in the same basis.
    pub fn coroot(&self, m: usize) -> Vec<i32> {
        let v = self.coords(m);
        match self {
            Root::Long(_) => v.iter().map(|x| x / 2).collect(),
            _ => v,
        }
    }

    /// `α^∨(ω_m)` with `ω_m = ε_1 + … + ε_m`.
    pub fn pairing_omega_m(&self, m: usize) -> i64 {
        self.coroot(m).iter().map(|&x| x as i64).sum()
    }

    pub fn reflection(&self, m: usize) -> SignedPermutation {
        let mut w: Vec<i32> = (1..=m as i32).collect();
        match *self {
            Root::Minus(i, j) => w.swap(i - 1, j - 1),
            Root::Plus(i, j) => {
                w[i - 1] = -(j as i32);
                w[j - 1] = -(i as i32);
            }
            Root::Long(i) => w[i - 1] = -w[i - 1],
        }
        SignedPermutation::from_images(w).expect("reflection is a signed permutation")
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::Minus(i, j) => write!(f, "e{i}-e{j}"),
            Root::Plus(i, j) => write!(f, "e{i}+e{j}"),
            Root::Long(i) => write!(f, "2e{i}"),
        }
    }
}

/// The `m²` positive roots.
pub fn positive_roots(m: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            out.push(Root::Minus(i, j));
            out.push(Root::Plus(i, j));
        }
        out.push(Root::Long(i));
    }
    out
}

/// Positive roots outside the Levi factor (`ε_i + ε_j`, `2ε_i`).
pub fn non_levi_roots(m: usize) -> Vec<Root> {
    positive_roots(m).into_iter().filter(|a| !matches!(a, Root::Minus(..))).collect()
}

/// Finite sum `Σ c · q^d σ_λ` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct CohClass {
    pub terms: BTreeMap<(u32, StrictPartition), i64>,
}

impl CohClass {
    pub fn schubert(lambda: StrictPartition) -> Self {
        let mut c = CohClass::default();
        c.add_term(lambda, 0, 1);
        c
    }

    pub fn add_term(&mut self, lambda: StrictPartition, q_degree: u32, c: i64) {
        let e = self.terms.entry((q_degree, lambda.clone())).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(q_degree, lambda));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for ((d, l), c) in &o.terms {
            r.add_term(l.clone(), *d, *c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for ((d, l), c) in &o.terms {
            r.add_term(l.clone(), *d, -c);
        }
        r
    }

    /// Value of the `σ_μ` coefficient at numeric `q`.
    pub fn coefficient_at(&self, mu: &StrictPartition, q: Complex64) -> Complex64 {
        self.terms
            .iter()
            .filter(|((_, l), _)| l == mu)
            .map(|((d, _), c)| q.powu(*d) * *c as f64)
            .sum()
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((d, l), c)| {
                let q = match d {
                    0 => String::new(),
                    1 => "q*".to_string(),
                    _ => format!("q^{d}*"),
                };
                let c = if *c == 1 { String::new() } else { format!("{c}*") };
                format!("{c}{q}s{l}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// One summand of the Chevalley formula, with the root that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChevalleyTerm {
    pub root: String,
    pub target: StrictPartition,
    pub q_degree: u32,
    pub coefficient: i64,
}

/// Coset representatives and their inverse map for one `m`.
pub struct SchubertBasis {
    pub m: usize,
    reps: Vec<SignedPermutation>,
    index: HashMap<SignedPermutation, Subset>,
}

impl SchubertBasis {
    pub fn new(m: usize) -> Self {
        SchubertBasis { m, reps: coset_reps(m), index: coset_index(m) }
    }

    fn partition(&self, w: &SignedPermutation) -> StrictPartition {
        StrictPartition::from_subset(self.index[&min_in_coset(w)], self.m).unwrap()
    }

    /// The terms of `σ_1 ⋆ σ_λ`: classical ones for `ℓ(w s_α) = ℓ(w) + 1`
    /// with coefficient `α^∨(ω_m)`, quantum ones `α^∨(ω_m) q^{d(α)}` for
    /// `ℓ(⌊w s_α⌋) = ℓ(w) + 1 − n_α`.
    pub fn chevalley_terms(&self, lambda: &StrictPartition) -> Vec<ChevalleyTerm> {
        let m = self.m;
        let w = &self.reps[lambda.to_subset() as usize];
        let lw = w.length() as i64;
        let mut out = Vec::new();
        for alpha in non_levi_roots(m) {
            let c = alpha.pairing_omega_m(m);
            let ws = w * &alpha.reflection(m);
            if ws.length() as i64 == lw + 1 {
                debug_assert_eq!(min_in_coset(&ws), ws);
                out.push(ChevalleyTerm { root: alpha.to_string(), target: self.partition(&ws), q_degree: 0, coefficient: c });
            }
            let floor = min_in_coset(&ws);
            if floor.length() as i64 == lw + 1 - (m as i64 + 1) * c {
                out.push(ChevalleyTerm {
                    root: alpha.to_string(),
                    target: self.partition(&floor),
                    q_degree: c as u32,
                    coefficient: c,
                });
            }
        }
        out
    }

    pub fn chevalley_multiply(&self, lambda: &StrictPartition) -> CohClass {
        let mut out = CohClass::default();
        for t in self.chevalley_terms(lambda) {
            out.add_term(t.target, t.q_degree, t.coefficient);
        }
        out
    }

    /// `σ_1 ⋆ σ_(m) − σ_∅ ⋆ σ_(m,1) = q`, with `σ_∅` the unit.
    pub fn verify_relation_l1(&self) -> bool {
        let m = self.m;
        let top = StrictPartition::new(vec![m], m).unwrap();
        let hook = StrictPartition::new(vec![m, 1], m).unwrap();
        let lhs = self.chevalley_multiply(&top).sub(&CohClass::schubert(hook));
        let mut q = CohClass::default();
        q.add_term(StrictPartition::empty(m), 1, 1);
        lhs == q
    }

    /// `|μ| + (m+1)d = |λ| + 1` and positive coefficients for every term.
    pub fn grading_and_positivity(&self) -> bool {
        StrictPartition::all(self.m).iter().all(|l| {
            self.chevalley_multiply(l)
                .terms
                .iter()
                .all(|((d, mu), c)| *c > 0 && mu.size() + (self.m + 1) * *d as usize == l.size() + 1)
        })
    }

    /// Entry `(μ, λ)` is the `σ_μ` coefficient of `σ_1 ⋆ σ_λ` at `q`; rows and
    /// columns follow subset-mask order.
    pub fn sigma1_matrix(&self, q: Complex64) -> DMatrix<Complex64> {
        let all = StrictPartition::all(self.m);
        let n = all.len();
        let cols: Vec<CohClass> = all.iter().map(|l| self.chevalley_multiply(l)).collect();
        DMatrix::from_fn(n, n, |r, c| cols[c].coefficient_at(&all[r], q))
    }
}

/// All eigenvalues of a complex square matrix, sorted by (re, im).
pub fn eigenvalues(a: &DMatrix<Complex64>) -> Vec<Complex64> {
    let mut ev: Vec<Complex64> = a.clone().schur().eigenvalues().expect("complex Schur form is triangular").iter().copied().collect();
    ev.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    ev
}
