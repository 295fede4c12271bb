//! The superpotential `W_t` in Plücker coordinates, its Laurent form `W̃_t`
//! on the torus chart `b ↦ ū₂(b)`, and the exact identities linking them.

use serde::Serialize;
use thiserror::Error;

use crate::grouprep::{
    build_u2bar, build_u2bar_spin, extract_f_coeff, fj_minor_ratio, fj_vanishing_minor, minor, spin_f_matrices,
    GroupError,
};
use crate::matrix::Matrix;
use crate::partitions::{
    mu_added, mu_plus_added, rho, rho_plus, rho_plus_removed, rho_removed, subsets, term_sign, StrictPartition,
    Subset,
};
use crate::scalars::{QSqrt2, ScalarRing};
use crate::weyl::{canonical_wp_word, complement_subwords, coset_reps, n_of, reduced_subwords};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuperpotentialError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("point lies on the divisor D_{l}")]
    OnDivisor { l: usize },
    #[error("coordinate b_{k} vanishes")]
    ZeroCoordinate { k: usize },
    #[error("level l = {l} outside 1..={max}")]
    LevelOutOfRange { l: usize, max: usize },
    #[error("m = {0} is below 2")]
    SmallM(usize),
}

/// All `2^m` Plücker coordinates `p_λ`, indexed by subset mask.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PluckerVector<T> {
    pub m: usize,
    pub values: Vec<T>,
}

impl<T: ScalarRing> PluckerVector<T> {
    pub fn get(&self, lambda: &StrictPartition) -> &T {
        &self.values[lambda.to_subset() as usize]
    }

    pub fn at(&self, s: Subset) -> &T {
        &self.values[s as usize]
    }
}

/// `p_λ(ū₂) = ⟨w*_∅ · ū₂, w_λ⟩` for every `λ`, as the row vector
/// `e_∅ · y_{i_N}(b_N) ⋯ y_{i_1}(b_1)` on `V_Spin`.
pub fn plucker_spin_all<T: ScalarRing>(b: &[T], m: usize) -> Result<PluckerVector<T>, SuperpotentialError> {
    if b.len() != n_of(m) {
        return Err(GroupError::WrongLength { expected: n_of(m), got: b.len() }.into());
    }
    let f = spin_f_matrices::<T>(m);
    let word = canonical_wp_word(m);
    let mut row = vec![T::zero(); 1 << m];
    row[0] = T::one();
    for k in (0..word.len()).rev() {
        // f_i² = 0 on V_Spin, so y_i(a) = 1 + a f_i there.
        let step = f[word[k] - 1].row_mul(&row);
        for (r, s) in row.iter_mut().zip(step) {
            *r = r.clone() + b[k].clone() * s;
        }
    }
    Ok(PluckerVector { m, values: row })
}

pub fn plucker_spin<T: ScalarRing>(lambda: &StrictPartition, b: &[T]) -> Result<T, SuperpotentialError> {
    Ok(plucker_spin_all(b, lambda.m())?.get(lambda).clone())
}

/// Dense version of [`plucker_spin_all`]: row `∅` of the full spin matrix.
pub fn plucker_spin_dense<T: ScalarRing>(b: &[T], m: usize) -> Result<PluckerVector<T>, SuperpotentialError> {
    let u = build_u2bar_spin(b, m)?;
    Ok(PluckerVector { m, values: (0..1 << m).map(|l| u.get(0, l).clone()).collect() })
}

/// Reduced subwords of the canonical word for each coset representative,
/// and the complement subwords entering `𝒩`.
#[derive(Clone, Debug)]
pub struct SubwordTable {
    pub m: usize,
    pub word: Vec<usize>,
    pub by_mask: Vec<Vec<Vec<usize>>>,
    pub complement: Vec<Vec<usize>>,
}

impl SubwordTable {
    pub fn new(m: usize) -> Self {
        let word = canonical_wp_word(m);
        let by_mask = coset_reps(m).iter().map(|w| reduced_subwords(&word, w)).collect();
        SubwordTable { m, word, by_mask, complement: complement_subwords(m) }
    }

    /// Total number of monomials over all `p_λ`.
    pub fn monomial_count(&self) -> usize {
        self.by_mask.iter().map(Vec::len).sum()
    }
}

fn monomial_sum<T: ScalarRing>(sets: &[Vec<usize>], b: &[T]) -> T {
    sets.iter().fold(T::zero(), |acc, s| acc + s.iter().fold(T::one(), |p, &k| p * b[k - 1].clone()))
}

/// `p_λ(ū₂) = Σ_J b_{j_1} ⋯ b_{j_r}` over reduced subwords `J` for `λ`.
pub fn plucker_subword_all<T: ScalarRing>(b: &[T], table: &SubwordTable) -> Result<PluckerVector<T>, SuperpotentialError> {
    if b.len() != table.word.len() {
        return Err(GroupError::WrongLength { expected: table.word.len(), got: b.len() }.into());
    }
    Ok(PluckerVector { m: table.m, values: table.by_mask.iter().map(|s| monomial_sum(s, b)).collect() })
}

pub fn plucker_subword<T: ScalarRing>(lambda: &StrictPartition, b: &[T]) -> Result<T, SuperpotentialError> {
    Ok(plucker_subword_all(b, &SubwordTable::new(lambda.m()))?.get(lambda).clone())
}

fn check_level(l: usize, m: usize) -> Result<(), SuperpotentialError> {
    if (1..m).contains(&l) {
        Ok(())
    } else {
        Err(SuperpotentialError::LevelOutOfRange { l, max: m - 1 })
    }
}

fn bilinear<T: ScalarRing>(l: usize, p: &PluckerVector<T>, plus: bool) -> Result<T, SuperpotentialError> {
    let m = p.m;
    check_level(l, m)?;
    let mut s = T::zero();
    for j in subsets(l) {
        let (a, b) = if plus {
            (rho_plus_removed(l, j, m), mu_plus_added(l, j, m))
        } else {
            (rho_removed(l, j, m), mu_added(l, j, m))
        };
        if let Some(b) = b.expect("level checked") {
            let t = p.get(&a.expect("level checked")).clone() * p.get(&b).clone();
            s = if term_sign(l, j) > 0 { s + t } else { s - t };
        }
    }
    Ok(s)
}

/// `Σ_J (−1)^{Σ_{j∈J}(l+1−j)} p_{ρ_l^J} p_{μ_l^J}`.
pub fn eval_denominator<T: ScalarRing>(l: usize, p: &PluckerVector<T>) -> Result<T, SuperpotentialError> {
    bilinear(l, p, false)
}

/// `Σ_J (−1)^{Σ_{j∈J}(l+1−j)} p_{ρ_{l,+}^J} p_{μ_{l,+}^J}`.
pub fn eval_numerator<T: ScalarRing>(l: usize, p: &PluckerVector<T>) -> Result<T, SuperpotentialError> {
    bilinear(l, p, true)
}

/// Defining functions of `D_0, …, D_m`: `p_∅`, the middle denominators, `p_{ρ_m}`.
pub fn divisor_values<T: ScalarRing>(p: &PluckerVector<T>) -> Vec<T> {
    let m = p.m;
    let mut out = vec![p.at(0).clone()];
    for l in 1..m {
        out.push(eval_denominator(l, p).expect("level in range"));
    }
    out.push(p.get(&rho(m, m).unwrap()).clone());
    out
}

/// The `m+1` summands of `W_t`.
pub fn eval_terms<T: ScalarRing>(q: &T, p: &PluckerVector<T>) -> Result<Vec<T>, SuperpotentialError> {
    let m = p.m;
    if m < 2 {
        return Err(SuperpotentialError::SmallM(m));
    }
    let inv = divisor_values(p)
        .iter()
        .enumerate()
        .map(|(l, d)| d.try_inv().map_err(|_| SuperpotentialError::OnDivisor { l }))
        .collect::<Result<Vec<T>, _>>()?;
    let mut out = vec![p.get(&rho_plus(0, m).unwrap()).clone() * inv[0].clone()];
    for l in 1..m {
        out.push(eval_numerator(l, p)? * inv[l].clone());
    }
    out.push(q.clone() * p.get(&rho(m - 1, m).unwrap()).clone() * inv[m].clone());
    Ok(out)
}

/// `W_t = p_{(1)}/p_∅ + Σ_{l=1}^{m−1} num_l/den_l + q p_{ρ_{m−1}}/p_{ρ_m}`.
pub fn eval_w<T: ScalarRing>(q: &T, p: &PluckerVector<T>) -> Result<T, SuperpotentialError> {
    Ok(eval_terms(q, p)?.into_iter().fold(T::zero(), |a, t| a + t))
}

/// `𝒩(b) = Σ_S ∏_{k∈S} b_k` over the complement subwords `S`.
pub fn n_poly<T: ScalarRing>(b: &[T], table: &SubwordTable) -> T {
    monomial_sum(&table.complement, b)
}

/// `W̃_t(b) = Σ_k b_k + q 𝒩(b) / ∏_k b_k`.
pub fn eval_w_tilde<T: ScalarRing>(q: &T, b: &[T], table: &SubwordTable) -> Result<T, SuperpotentialError> {
    if b.len() != table.word.len() {
        return Err(GroupError::WrongLength { expected: table.word.len(), got: b.len() }.into());
    }
    if let Some(k) = b.iter().position(ScalarRing::is_zero) {
        return Err(SuperpotentialError::ZeroCoordinate { k: k + 1 });
    }
    let sum = b.iter().fold(T::zero(), |a, x| a + x.clone());
    let prod = b.iter().fold(T::one(), |a, x| a * x.clone());
    Ok(sum + q.clone() * n_poly(b, table).try_div(&prod).expect("nonzero product"))
}

/// Two exact values that an identity asserts to be equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub lhs: QSqrt2,
    pub rhs: QSqrt2,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `W_t(ū₂(b)) = W̃_t(b)`.
pub fn verify_theorem_w(q: &QSqrt2, b: &[QSqrt2], table: &SubwordTable) -> Result<Comparison, SuperpotentialError> {
    let p = plucker_spin_all(b, table.m)?;
    let rhs = eval_w_tilde(q, b, table)?;
    Ok(Comparison { lhs: eval_w(q, &p)?, rhs })
}

/// Minor sides of the denominator and numerator identities for `2 ≤ j ≤ m`,
/// `l = m+1−j`: `den_l = Δ^{m+1,…,2m+1}_{j,…,j+m}` and
/// `num_l = Δ^{m+1,…,2m+1}_{j−1,j+1,…,j+m}`.
pub fn sym_to_minor_columns(j: usize, m: usize) -> (Vec<usize>, Vec<usize>) {
    let den: Vec<usize> = (j..=j + m).collect();
    let mut num = vec![j - 1];
    num.extend(j + 1..=j + m);
    (den, num)
}

/// Returns the (denominator, numerator) comparisons.
pub fn verify_sym_to_minor(j: usize, b: &[QSqrt2], m: usize) -> Result<(Comparison, Comparison), SuperpotentialError> {
    if !(2..=m).contains(&j) {
        return Err(SuperpotentialError::LevelOutOfRange { l: j, max: m });
    }
    let l = m + 1 - j;
    let p = plucker_spin_all(b, m)?;
    let u = build_u2bar(b, m)?;
    let rows: Vec<usize> = (m + 1..=2 * m + 1).collect();
    let (dc, nc) = sym_to_minor_columns(j, m);
    let den = Comparison { lhs: eval_denominator(l, &p)?, rhs: minor(&u, &rows, &dc)? };
    let num = Comparison { lhs: eval_numerator(l, &p)?, rhs: minor(&u, &rows, &nc)? };
    Ok((den, num))
}

/// `𝒩(b) · p_{ρ_m} = p_{ρ_{m−1}} · ∏ b_k`.
pub fn verify_em_formula(b: &[QSqrt2], table: &SubwordTable) -> Result<Comparison, SuperpotentialError> {
    let m = table.m;
    let p = plucker_spin_all(b, m)?;
    let prod = b.iter().fold(QSqrt2::one(), |a, x| a * x.clone());
    Ok(Comparison {
        lhs: n_poly(b, table) * p.get(&rho(m, m).unwrap()).clone(),
        rhs: p.get(&rho(m - 1, m).unwrap()).clone() * prod,
    })
}

/// The `f_j*` minor ratio (`1 ≤ j ≤ m−1`) and the vanishing minor of its proof.
pub fn verify_fj(j: usize, b: &[QSqrt2], m: usize) -> Result<(Comparison, Comparison), SuperpotentialError> {
    let u: Matrix<QSqrt2> = build_u2bar(b, m)?;
    let ratio = Comparison { lhs: extract_f_coeff(&u, j, m), rhs: fj_minor_ratio(&u, j, m)? };
    let vanish = Comparison { lhs: fj_vanishing_minor(&u, j, m)?, rhs: QSqrt2::zero() };
    Ok((ratio, vanish))
}

/// `f_m*(ū₂) = p_{(1)}/p_∅`.
pub fn verify_fm(b: &[QSqrt2], m: usize) -> Result<Comparison, SuperpotentialError> {
    let u = build_u2bar(b, m)?;
    let p = plucker_spin_all(b, m)?;
    let rhs = p.get(&rho_plus(0, m).unwrap()).try_div(p.at(0)).map_err(|_| SuperpotentialError::OnDivisor { l: 0 })?;
    Ok(Comparison { lhs: extract_f_coeff(&u, m, m), rhs })
}

/// A signed product of Plücker coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PluckerProduct {
    pub sign: i64,
    pub factors: Vec<StrictPartition>,
}

/// One summand `q^{q_power} · (Σ num) / (Σ den)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WTermSymbolic {
    pub num: Vec<PluckerProduct>,
    pub den: Vec<PluckerProduct>,
    pub q_power: u32,
}

impl WTermSymbolic {
    pub fn den_degree(&self) -> usize {
        self.den.first().map_or(0, |p| p.factors.len())
    }
}

fn single(p: StrictPartition) -> Vec<PluckerProduct> {
    vec![PluckerProduct { sign: 1, factors: vec![p] }]
}

fn bilinear_symbolic(l: usize, m: usize, plus: bool) -> Vec<PluckerProduct> {
    let mut out = Vec::new();
    for j in subsets(l) {
        let (a, b) = if plus {
            (rho_plus_removed(l, j, m), mu_plus_added(l, j, m))
        } else {
            (rho_removed(l, j, m), mu_added(l, j, m))
        };
        if let Some(b) = b.unwrap() {
            out.push(PluckerProduct { sign: term_sign(l, j), factors: vec![a.unwrap(), b] });
        }
    }
    out
}

/// The `m+1` summands of `W_t` as partition data.
pub fn symbolic_w(m: usize) -> Result<Vec<WTermSymbolic>, SuperpotentialError> {
    if m < 2 {
        return Err(SuperpotentialError::SmallM(m));
    }
    let mut out = vec![WTermSymbolic {
        num: single(rho_plus(0, m).unwrap()),
        den: single(StrictPartition::empty(m)),
        q_power: 0,
    }];
    for l in 1..m {
        out.push(WTermSymbolic { num: bilinear_symbolic(l, m, true), den: bilinear_symbolic(l, m, false), q_power: 0 });
    }
    out.push(WTermSymbolic { num: single(rho(m - 1, m).unwrap()), den: single(rho(m, m).unwrap()), q_power: 1 });
    Ok(out)
}

struct Style {
    factor: fn(&StrictPartition) -> String,
    frac: fn(&str, &str, bool, bool) -> String,
    q: &'static str,
}

fn render_product(p: &PluckerProduct, style: &Style) -> String {
    let mut s = String::new();
    let mut k = 0;
    while k < p.factors.len() {
        let mut run = 1;
        while k + run < p.factors.len() && p.factors[k + run] == p.factors[k] {
            run += 1;
        }
        s += &(style.factor)(&p.factors[k]);
        if run > 1 {
            s += &format!("^{run}");
        }
        k += run;
    }
    s
}

fn render_sum(ps: &[PluckerProduct], style: &Style) -> String {
    let mut s = String::new();
    for (k, p) in ps.iter().enumerate() {
        match (k, p.sign < 0) {
            (0, true) => s += "-",
            (0, false) => {}
            (_, true) => s += " - ",
            (_, false) => s += " + ",
        }
        s += &render_product(p, style);
    }
    s
}

fn render(terms: &[WTermSymbolic], style: &Style) -> String {
    let parts: Vec<String> = terms
        .iter()
        .map(|t| {
            let body = (style.frac)(&render_sum(&t.num, style), &render_sum(&t.den, style), t.num.len() > 1, t.den.len() > 1);
            if t.q_power > 0 {
                format!("{}{body}", style.q)
            } else {
                body
            }
        })
        .collect();
    parts.join(" + ")
}

fn text_factor(p: &StrictPartition) -> String {
    let body: Vec<String> = p.parts().iter().map(ToString::to_string).collect();
    format!("p[{}]", body.join(","))
}

fn text_frac(n: &str, d: &str, wrap_n: bool, wrap_d: bool) -> String {
    let w = |s: &str, b: bool| if b { format!("({s})") } else { s.to_string() };
    format!("{}/{}", w(n, wrap_n), w(d, wrap_d))
}

fn latex_factor(p: &StrictPartition) -> String {
    if p.is_empty() {
        "p_{\\emptyset}".to_string()
    } else {
        format!("p_{{{}}}", p.render())
    }
}

fn latex_frac(n: &str, d: &str, _: bool, _: bool) -> String {
    format!("\\frac{{{n}}}{{{d}}}")
}

/// Plain text, e.g. `p[1]/p[] + p[2]^2/(p[1]p[2] - p[]p[2,1]) + q*p[1]/p[2,1]`.
pub fn render_text(terms: &[WTermSymbolic]) -> String {
    render(terms, &Style { factor: text_factor, frac: text_frac, q: "q*" })
}

/// LaTeX with partition subscripts and `e^t` for `q`.
pub fn render_latex(terms: &[WTermSymbolic]) -> String {
    format!("W_t = {}", render(terms, &Style { factor: latex_factor, frac: latex_frac, q: "e^t" }))
}
