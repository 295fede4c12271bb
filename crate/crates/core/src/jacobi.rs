//! Numerical critical points of the superpotential and their values.
//!
//! The torus `b ∈ (ℂ*)^N` misses some critical points of `W_t` (for `m = 2`
//! the point with value 0 has a vanishing torus coordinate), so the search
//! runs Newton on `W̃_t` in log coordinates first and then polishes on the
//! big cell `p_∅ ≠ 0`, parametrized as `x ↦ w*_∅ · exp(Σ x_k F_k)` with
//! `F_k` spanning the spin image of the opposite unipotent radical:
//! `v̄_i v̄_j` (`i < j`) followed by `v̄_i v_{m+1}`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::clifford::{bar, clifford_to_end, CliffordElement};
use crate::matrix::lift;
use crate::partitions::{subset_of, Subset};
use crate::qchevalley::{eigenvalues, SchubertBasis};
use crate::scalars::{Jet, QSqrt2, ScalarRing};
use crate::superpotential::{eval_denominator, eval_w, plucker_spin_all, PluckerVector, SubwordTable};
use crate::weyl::n_of;

pub const GRAD_TOL: f64 = 1e-10;
pub const DEDUPE_RADIUS: f64 = 1e-6;
const TORUS_STEPS: usize = 100;
const CHART_STEPS: usize = 40;

/// Analytic gradient of `W̃_t = Σ b_k + q 𝒩(b)/∏ b_k`:
/// `∂_j W̃ = 1 + q (∂_j 𝒩 − 𝒩/b_j) / ∏ b_k`.
pub fn grad_w_tilde(q: Complex64, b: &[Complex64], table: &SubwordTable) -> Option<Vec<Complex64>> {
    if b.iter().any(|x| x.norm() == 0.0) {
        return None;
    }
    let prod: Complex64 = b.iter().product();
    let mono = |s: &[usize], skip: usize| s.iter().filter(|&&k| k != skip).map(|&k| b[k - 1]).product::<Complex64>();
    let n: Complex64 = table.complement.iter().map(|s| mono(s, 0)).sum();
    Some(
        (1..=b.len())
            .map(|j| {
                let dn: Complex64 = table.complement.iter().filter(|s| s.contains(&j)).map(|s| mono(s, j)).sum();
                1.0 + q * (dn - n / b[j - 1]) / prod
            })
            .collect(),
    )
}

/// Sparse spin matrices of the chart directions, entries `(row, col, value)`.
#[derive(Clone, Debug)]
pub struct Chart {
    pub m: usize,
    pub basis: Vec<Vec<(usize, usize, QSqrt2)>>,
    /// `(mask, direction)` pairs used to read coordinates off a Plücker vector.
    singles: Vec<(Subset, usize)>,
    pairs: Vec<(Subset, usize)>,
}

impl Chart {
    pub fn new(m: usize) -> Self {
        let mut words = Vec::new();
        let mut pairs = Vec::new();
        let mut singles = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                pairs.push((subset_of(&[i, j]), words.len()));
                words.push(vec![bar(i, m), bar(j, m)]);
            }
        }
        for i in 1..=m {
            singles.push((subset_of(&[i]), words.len()));
            words.push(vec![bar(i, m), m + 1]);
        }
        let basis = words
            .iter()
            .map(|w| {
                let a = clifford_to_end(&CliffordElement::word(w, m));
                let n = a.rows();
                let mut e = Vec::new();
                for r in 0..n {
                    for c in 0..n {
                        if !a.get(r, c).is_zero() {
                            e.push((r, c, a.get(r, c).clone()));
                        }
                    }
                }
                e
            })
            .collect();
        Chart { m, basis, singles, pairs }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `w*_∅ · exp(Σ x_k F_k)`; the exponential series stops after `m+1`
    /// terms since each `F_k` lowers the degree of `w_L`.
    pub fn plucker<T: ScalarRing>(&self, x: &[T]) -> PluckerVector<T> {
        let n = 1usize << self.m;
        let mut term = vec![T::zero(); n];
        term[0] = T::one();
        let mut acc = term.clone();
        let basis: Vec<Vec<(usize, usize, T)>> =
            self.basis.iter().map(|f| f.iter().map(|(r, c, v)| (*r, *c, lift(v))).collect()).collect();
        for k in 1..=self.m + 1 {
            let mut next = vec![T::zero(); n];
            for (xk, f) in x.iter().zip(&basis) {
                for (r, c, v) in f {
                    if !term[*r].is_zero() {
                        next[*c] = next[*c].clone() + term[*r].clone() * xk.clone() * v.clone();
                    }
                }
            }
            let inv_k = T::from_i64(k as i64).try_inv().expect("k > 0");
            term = next.into_iter().map(|t| t * inv_k.clone()).collect();
            for (a, t) in acc.iter_mut().zip(&term) {
                *a = a.clone() + t.clone();
            }
        }
        PluckerVector { m: self.m, values: acc }
    }

    fn entry(&self, k: usize, mask: Subset) -> Complex64 {
        self.basis[k].iter().find(|e| e.0 == 0 && e.1 == mask as usize).map_or(Complex64::new(0.0, 0.0), |e| lift(&e.2))
    }

    /// Chart coordinates of a Plücker vector with `p_∅ = 1`: degree-one
    /// entries fix the single directions, degree-two entries then fix the
    /// pairs linearly.
    pub fn coordinates(&self, p: &[Complex64]) -> Vec<Complex64> {
        let mut x = vec![Complex64::new(0.0, 0.0); self.dim()];
        for &(mask, k) in &self.singles {
            x[k] = p[mask as usize] / self.entry(k, mask);
        }
        let base = self.plucker(&x);
        for &(mask, k) in &self.pairs {
            x[k] = (p[mask as usize] - base.values[mask as usize]) / self.entry(k, mask);
        }
        x
    }
}

/// `W_t` at chart coordinates with its gradient and Hessian.
pub fn chart_jet(q: Complex64, x: &[Complex64], chart: &Chart) -> Option<Jet> {
    let n = x.len();
    let vars: Vec<Jet> = x.iter().enumerate().map(|(k, &v)| Jet::variable(v, k, n)).collect();
    eval_w(&Jet::constant(q), &chart.plucker(&vars)).ok()
}

fn solve(h: DMatrix<Complex64>, g: &[Complex64]) -> Option<Vec<Complex64>> {
    let rhs = DVector::from_iterator(g.len(), g.iter().map(|z| -z));
    let dx = h.lu().solve(&rhs)?;
    dx.iter().all(|z| z.is_finite()).then(|| dx.iter().copied().collect())
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Newton on `W̃_t(e^z)`, steps capped at length 1. Returns the endpoint
/// and whether the gradient fell below `1e−9`.
pub fn torus_newton(q: Complex64, z0: Vec<Complex64>, table: &SubwordTable) -> (Vec<Complex64>, bool) {
    let n = z0.len();
    let exps: Vec<Vec<f64>> = table
        .complement
        .iter()
        .map(|s| (1..=n).map(|k| if s.contains(&k) { 0.0 } else { -1.0 }).collect())
        .collect();
    let mut z = z0;
    for _ in 0..TORUS_STEPS {
        let b: Vec<Complex64> = z.iter().map(|w| w.exp()).collect();
        let mut g = b.clone();
        let mut h = DMatrix::from_diagonal(&DVector::from_vec(b.clone()));
        for e in &exps {
            let t = q * e.iter().zip(&z).map(|(a, w)| w * a).sum::<Complex64>().exp();
            for i in 0..n {
                g[i] += t * e[i];
                for j in 0..n {
                    h[(i, j)] += t * e[i] * e[j];
                }
            }
        }
        if norm(&g) < 1e-9 {
            return (z, true);
        }
        let Some(mut dz) = solve(h, &g) else {
            return (z, false);
        };
        let len = norm(&dz);
        if len > 1.0 {
            dz.iter_mut().for_each(|d| *d /= len);
        }
        z.iter_mut().zip(&dz).for_each(|(a, d)| *a += d);
    }
    (z, false)
}

/// Newton on the chart with jet derivatives; `Some` once `‖∇W‖ < GRAD_TOL`.
pub fn chart_newton(q: Complex64, x0: Vec<Complex64>, chart: &Chart) -> Option<(Vec<Complex64>, Jet)> {
    let n = x0.len();
    let mut x = x0;
    for _ in 0..CHART_STEPS {
        let w = chart_jet(q, &x, chart)?;
        if norm(&w.g) < GRAD_TOL {
            return Some((x, w));
        }
        let h = DMatrix::from_row_slice(n, n, &w.h);
        let dx = solve(h, &w.g)?;
        x.iter_mut().zip(&dx).for_each(|(a, d)| *a += d);
        if x.iter().any(|z| !z.is_finite()) {
            return None;
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPoint {
    /// Chart coordinates.
    pub x: Vec<Complex64>,
    /// Torus coordinates when the torus stage itself converged.
    pub b: Option<Vec<Complex64>>,
    pub value: Complex64,
    pub grad_norm: f64,
    pub cluster: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalSearch {
    pub m: usize,
    pub q: Complex64,
    pub trials: usize,
    pub seed: u64,
    pub points: Vec<CriticalPoint>,
    /// Starts that did not reach `GRAD_TOL`.
    pub discarded: usize,
}

fn same_point(a: &[Complex64], b: &[Complex64]) -> bool {
    let scale = norm(b).max(1.0);
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt() <= DEDUPE_RADIUS * scale
}

/// Multi-start search: random `z = u + 2i v` with standard normal `u`, `v`,
/// torus Newton, transfer to the chart, chart Newton, then dedupe.
pub fn find_critical_points(m: usize, q: Complex64, trials: usize, seed: u64) -> CriticalSearch {
    let table = SubwordTable::new(m);
    let chart = Chart::new(m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = n_of(m);
    let mut points: Vec<CriticalPoint> = Vec::new();
    let mut discarded = 0;
    for _ in 0..trials {
        let z0: Vec<Complex64> = (0..n)
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                Complex64::new(re, 2.0 * im)
            })
            .collect();
        let (z, torus_ok) = torus_newton(q, z0, &table);
        let b: Vec<Complex64> = z.iter().map(|w| w.exp()).collect();
        let Ok(p) = plucker_spin_all(&b, m) else {
            discarded += 1;
            continue;
        };
        if p.values.iter().any(|v| !v.is_finite()) {
            discarded += 1;
            continue;
        }
        let Some((x, w)) = chart_newton(q, chart.coordinates(&p.values), &chart) else {
            discarded += 1;
            continue;
        };
        if points.iter().any(|c| same_point(&x, &c.x)) {
            continue;
        }
        let b = (torus_ok && grad_w_tilde(q, &b, &table).is_some_and(|g| norm(&g) < 1e-8)).then_some(b);
        points.push(CriticalPoint { grad_norm: norm(&w.g), value: w.v, x, b, cluster: 0 });
    }
    points.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
            .then_with(|| {
                a.x.iter()
                    .zip(&b.x)
                    .map(|(u, v)| u.re.total_cmp(&v.re).then(u.im.total_cmp(&v.im)))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
    });
    // Points with equal critical values share a cluster id.
    let mut cluster = 0;
    for k in 0..points.len() {
        if k > 0 && (points[k].value - points[k - 1].value).norm() > DEDUPE_RADIUS * points[k].value.norm().max(1.0) {
            cluster += 1;
        }
        points[k].cluster = cluster;
    }
    CriticalSearch { m, q, trials, seed, points, discarded }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub critical_values: Vec<Complex64>,
    /// `(m+1) ×` the eigenvalues of `σ_1 ⋆` at `q`.
    pub expected: Vec<Complex64>,
    pub max_rel_err: f64,
    pub count_match: bool,
}

impl SpectrumReport {
    pub fn matches(&self, tol: f64) -> bool {
        self.count_match && self.max_rel_err <= tol
    }
}

/// `(m+1) ×` eigenvalues of the `σ_1 ⋆` matrix at `q`.
pub fn expected_spectrum(m: usize, q: Complex64) -> Vec<Complex64> {
    eigenvalues(&SchubertBasis::new(m).sigma1_matrix(q)).into_iter().map(|e| e * (m as f64 + 1.0)).collect()
}

/// Greedy nearest matching of the two multisets; relative error
/// `|a − b| / max(1, |b|)`.
pub fn compare_spectrum(values: &[Complex64], expected: &[Complex64]) -> SpectrumReport {
    let mut used = vec![false; values.len()];
    let mut worst: f64 = 0.0;
    for e in expected {
        let best = (0..values.len())
            .filter(|&k| !used[k])
            .min_by(|&a, &b| (values[a] - e).norm().total_cmp(&(values[b] - e).norm()));
        match best {
            Some(k) => {
                used[k] = true;
                worst = worst.max((values[k] - e).norm() / e.norm().max(1.0));
            }
            None => worst = f64::INFINITY,
        }
    }
    SpectrumReport {
        critical_values: values.to_vec(),
        expected: expected.to_vec(),
        max_rel_err: worst,
        count_match: values.len() == expected.len(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub l: usize,
    /// `|den_l(p)/p_∅² − q^l|` at each critical point.
    pub deviations: Vec<f64>,
    pub max_dev: f64,
}

/// Evidence for the quantum relation of level `l`: at each critical point,
/// `Σ_J ± (p_{ρ_l^J}/p_∅)(p_{μ_l^J}/p_∅)` against `q^l`.
pub fn conjecture_probe(search: &CriticalSearch, chart: &Chart, l: usize) -> ProbeReport {
    let q = search.q;
    let deviations: Vec<f64> = search
        .points
        .iter()
        .map(|pt| {
            let p = chart.plucker(&pt.x);
            let p0 = p.values[0];
            let den = eval_denominator(l, &p).expect("1 ≤ l ≤ m−1");
            (den / (p0 * p0) - q.powu(l as u32)).norm()
        })
        .collect();
    let max_dev = deviations.iter().copied().fold(0.0, f64::max);
    ProbeReport { l, deviations, max_dev }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpotential::eval_w_tilde;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gradient_matches_finite_differences() {
        for m in 2..4 {
            let t = SubwordTable::new(m);
            let q = c(0.7, -0.3);
            let b: Vec<Complex64> = (0..n_of(m)).map(|k| c(0.5 + k as f64 * 0.3, 0.2 - 0.1 * k as f64)).collect();
            let g = grad_w_tilde(q, &b, &t).unwrap();
            let h = 1e-6;
            for j in 0..b.len() {
                let mut bp = b.clone();
                let mut bm = b.clone();
                bp[j] += h;
                bm[j] -= h;
                let fd = (eval_w_tilde(&q, &bp, &t).unwrap() - eval_w_tilde(&q, &bm, &t).unwrap()) / (2.0 * h);
                assert!((fd - g[j]).norm() < 1e-7 * g[j].norm().max(1.0), "m={m} j={j}");
            }
        }
        let t = SubwordTable::new(2);
        let b = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        let g = grad_w_tilde(c(1.0, 0.0), &b, &t).unwrap();
        assert!((g[1] - (1.0 - 4.0 / 12.0)).norm() < 1e-14);
        assert!(grad_w_tilde(c(1.0, 0.0), &[c(0.0, 0.0), b[1], b[2]], &t).is_none());
    }

    #[test]
    fn chart_recovers_torus_points() {
        for m in 2..4 {
            let chart = Chart::new(m);
            let b: Vec<Complex64> = (0..n_of(m)).map(|k| c(0.3 + 0.2 * k as f64, 0.1 * k as f64 - 0.2)).collect();
            let p = plucker_spin_all(&b, m).unwrap();
            let x = chart.coordinates(&p.values);
            let back = chart.plucker(&x);
            for (u, v) in back.values.iter().zip(&p.values) {
                assert!((u - v).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn jet_matches_plain_evaluation() {
        let m = 2;
        let chart = Chart::new(m);
        let x = vec![c(0.3, 0.1), c(-0.4, 0.2), c(0.7, -0.5)];
        let q = c(1.0, 0.0);
        let w = chart_jet(q, &x, &chart).unwrap();
        let plain = eval_w(&q, &chart.plucker(&x)).unwrap();
        assert!((w.v - plain).norm() < 1e-14);
        let h = 1e-6;
        for k in 0..3 {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[k] += h;
            xm[k] -= h;
            let fd = (eval_w(&q, &chart.plucker(&xp)).unwrap() - eval_w(&q, &chart.plucker(&xm)).unwrap()) / (2.0 * h);
            assert!((fd - w.g[k]).norm() < 1e-7);
        }
    }

    #[test]
    fn m2_spectrum() {
        let q = c(1.0, 0.0);
        let s = find_critical_points(2, q, 40, 1);
        assert_eq!(s.points.len(), 4);
        let vals: Vec<Complex64> = s.points.iter().map(|p| p.value).collect();
        let r = compare_spectrum(&vals, &expected_spectrum(2, q));
        assert!(r.matches(1e-6), "{r:?}");
        let probe = conjecture_probe(&s, &Chart::new(2), 1);
        assert!(probe.max_dev < 1e-6);
    }
}
