//! Pure-state ensemble decompositions of a density operator.
//!
//! An ensemble is stored as subnormalized vectors `w_j = √p_j ŵ_j`, so
//! `ρ = Σ_j w_j w_jᵀ`. Every decomposition arises from the subnormalized
//! eigenvectors through a mixer with orthonormal rows; [`flatten`] walks that
//! family to an ensemble whose members all share the preconcurrence `tr τ`,
//! and [`brute_force_min_eof`] searches it numerically with no knowledge of
//! the closed form.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{dot, psd_sqrt, sym_eig, RealMatrix, SymmetricMatrix};
use crate::measures::eof_curve_clamped;
use crate::state::{yy_form, DensityOperator, RANK_TOLERANCE};

/// Members with squared norm at or below this carry no probability.
pub const ZERO_PROBABILITY: f64 = 1e-14;
pub const FLATTEN_TOLERANCE: f64 = 1e-9;
pub const MAX_ORACLE_MEMBERS: usize = 8;
const ORTHONORMAL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SubnormalizedEnsemble {
    members: Vec<[f64; 4]>,
}

impl SubnormalizedEnsemble {
    pub fn new(members: Vec<[f64; 4]>) -> Self {
        Self { members }
    }

    pub fn members(&self) -> &[[f64; 4]] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.members.iter().map(|w| dot(w, w)).collect()
    }

    /// Preconcurrence of each normalized member, `None` for zero-probability members.
    pub fn normalized_preconcurrences(&self) -> Vec<Option<f64>> {
        self.members.iter().map(normalized_preconcurrence).collect()
    }

    /// `Σ_j w_j w_jᵀ`.
    pub fn density_matrix(&self) -> SymmetricMatrix {
        SymmetricMatrix::symmetrize(RealMatrix::outer_sum(
            4,
            self.members.iter().map(|w| w.as_slice()),
        ))
    }

    pub fn reconstruction_error(&self, rho: &DensityOperator) -> f64 {
        (&*self.density_matrix() - &**rho.matrix()).frobenius_norm()
    }
}

fn normalized_preconcurrence(w: &[f64; 4]) -> Option<f64> {
    let p = dot(w, w);
    (p > ZERO_PROBABILITY).then(|| yy_form(w, w) / p)
}

/// `n x m` matrix with orthonormal rows; column `j` says how the `n`
/// subnormalized eigenvectors combine into member `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalMixer {
    rows: Vec<Vec<f64>>,
}

impl OrthogonalMixer {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if n == 0 || rows.iter().any(|r| r.len() != m) || m < n {
            return Err(Error::DimensionMismatch(format!(
                "mixer must be n x m with 1 <= n <= m (got {n} rows of lengths {:?})",
                rows.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut deviation = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                deviation = deviation.max((dot(&rows[i], &rows[j]) - target).abs());
            }
        }
        if deviation > ORTHONORMAL_TOLERANCE {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self { rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self { rows }
    }

    /// First `n` rows of `G(0,1,θ₀) G(0,2,θ₁) ⋯ G(m-2,m-1,θ_K)`, one plane
    /// rotation per index pair in lexicographic order.
    pub fn from_givens(n: usize, m: usize, angles: &[f64]) -> Result<Self> {
        if n == 0 || n > m || angles.len() != m * (m - 1) / 2 {
            return Err(Error::DimensionMismatch(format!(
                "{} angles for an {n} x {m} mixer (need {})",
                angles.len(),
                m * (m - 1) / 2
            )));
        }
        let mut rows: Vec<Vec<f64>> = Self::identity(m).rows.into_iter().take(n).collect();
        for ((p, q), &theta) in givens_pairs(m).zip(angles) {
            let (s, c) = theta.sin_cos();
            for row in rows.iter_mut() {
                let (a, b) = (row[p], row[q]);
                row[p] = c * a + s * b;
                row[q] = -s * a + c * b;
            }
        }
        Self::new(rows)
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.rows[0].len()
    }

    /// Extends the rows to a full `m x m` orthogonal matrix whose first `n`
    /// rows are this mixer.
    pub fn complete(&self) -> Vec<Vec<f64>> {
        let m = self.m();
        let mut full = self.rows.clone();
        while full.len() < m {
            // pick the standard basis vector with the largest residual
            let best = (0..m)
                .map(|k| {
                    let mut v = vec![0.0; m];
                    v[k] = 1.0;
                    for _ in 0..2 {
                        for r in &full {
                            let d = dot(&v, r);
                            v.iter_mut().zip(r).for_each(|(x, y)| *x -= d * y);
                        }
                    }
                    v
                })
                .max_by(|a, b| dot(a, a).total_cmp(&dot(b, b)))
                .expect("m >= 1");
            let norm = dot(&best, &best).sqrt();
            full.push(best.into_iter().map(|x| x / norm).collect());
        }
        full
    }
}

fn givens_pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |p| ((p + 1)..m).map(move |q| (p, q)))
}

/// Eigenpairs of ρ with eigenvalue above [`RANK_TOLERANCE`], largest first.
fn support(rho: &DensityOperator) -> Vec<(f64, [f64; 4])> {
    let spec = sym_eig(rho.matrix());
    spec.eigenvalues
        .iter()
        .zip(&spec.eigenvectors)
        .rev()
        .filter(|(&mu, _)| mu > RANK_TOLERANCE)
        .map(|(&mu, v)| (mu, [v[0], v[1], v[2], v[3]]))
        .collect()
}

/// Subnormalized eigenvectors `√μ_k ê_k`, largest eigenvalue first.
pub fn eigen_ensemble(rho: &DensityOperator) -> SubnormalizedEnsemble {
    SubnormalizedEnsemble::new(
        support(rho)
            .into_iter()
            .map(|(mu, v)| v.map(|x| mu.sqrt() * x))
            .collect(),
    )
}

/// `w'_j = Σ_k O_kj w_k`.
pub fn apply_mixer(
    base: &SubnormalizedEnsemble,
    mixer: &OrthogonalMixer,
) -> Result<SubnormalizedEnsemble> {
    if base.len() != mixer.n() {
        return Err(Error::DimensionMismatch(format!(
            "ensemble has {} members but the mixer has {} rows",
            base.len(),
            mixer.n()
        )));
    }
    let members = (0..mixer.m())
        .map(|j| {
            let mut w = [0.0; 4];
            for (e, row) in base.members.iter().zip(mixer.rows()) {
                for i in 0..4 {
                    w[i] += row[j] * e[i];
                }
            }
            w
        })
        .collect();
    Ok(SubnormalizedEnsemble::new(members))
}

/// `Σ_j ⟨w_j|σy⊗σy|w_j⟩`; the same for every decomposition of one state.
pub fn average_preconcurrence(e: &SubnormalizedEnsemble) -> f64 {
    e.members.iter().map(|w| yy_form(w, w)).sum()
}

/// `Σ_j p_j |c(ŵ_j)|`.
pub fn average_concurrence(e: &SubnormalizedEnsemble) -> f64 {
    e.members.iter().map(|w| yy_form(w, w).abs()).sum()
}

/// `Σ_j p_j ℰ(|c(ŵ_j)|)`, skipping zero-probability members.
pub fn average_eof(e: &SubnormalizedEnsemble) -> f64 {
    e.members.iter().map(member_eof).sum()
}

#[inline]
fn member_eof(w: &[f64; 4]) -> f64 {
    let p = dot(w, w);
    if p <= ZERO_PROBABILITY {
        return 0.0;
    }
    p * eof_curve_clamped(yy_form(w, w) / p)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlattenResult {
    pub ensemble: SubnormalizedEnsemble,
    /// `tr τ`, the preconcurrence every member ends up with.
    pub target: f64,
    pub iterations: usize,
    pub max_deviation: f64,
}

/// Flattens the eigen-ensemble of `rho`; see [`flatten_ensemble`].
pub fn flatten(rho: &DensityOperator) -> Result<FlattenResult> {
    flatten_ensemble(&eigen_ensemble(rho))
}

/// Rotates members pairwise until each has preconcurrence equal to the
/// ensemble average.
///
/// Each round takes the active members with the largest and smallest
/// normalized preconcurrence (lowest index on ties) and turns the pair by the
/// angle at which the first one hits the average, found by bisection. That
/// member is then frozen. The active members always average to the target, so
/// a crossing exists in `[0, π/2]` and at most `len - 1` rotations are needed.
pub fn flatten_ensemble(start: &SubnormalizedEnsemble) -> Result<FlattenResult> {
    let mut members: Vec<[f64; 4]> = start
        .members
        .iter()
        .copied()
        .filter(|w| dot(w, w) > ZERO_PROBABILITY)
        .collect();
    // Σ p_j is one up to rounding; dividing by it keeps a lone member exact
    let total: f64 = members.iter().map(|w| dot(w, w)).sum();
    let target = members.iter().map(|w| yy_form(w, w)).sum::<f64>() / total;
    let mut active: Vec<usize> = (0..members.len()).collect();
    let mut iterations = 0;

    while active.len() > 1 {
        let c = |i: usize| normalized_preconcurrence(&members[i]).expect("nonzero member");
        let (mut hi, mut lo) = (active[0], active[0]);
        for &i in &active[1..] {
            if c(i) > c(hi) {
                hi = i;
            }
            if c(i) < c(lo) {
                lo = i;
            }
        }
        if c(hi) == c(lo) {
            break;
        }

        let theta = crossing_angle(&members[hi], &members[lo], target);
        let (a, b) = rotate_pair(&members[hi], &members[lo], theta);
        members[hi] = a;
        members[lo] = b;
        iterations += 1;
        active.retain(|&i| i != hi);
    }

    let max_deviation = members
        .iter()
        .map(|w| (normalized_preconcurrence(w).expect("nonzero member") - target).abs())
        .fold(0.0, f64::max);
    if max_deviation > FLATTEN_TOLERANCE {
        return Err(Error::Defect(format!(
            "flattening left a member {max_deviation:e} away from tr τ = {target}"
        )));
    }
    Ok(FlattenResult {
        ensemble: SubnormalizedEnsemble::new(members),
        target,
        iterations,
        max_deviation,
    })
}

#[inline]
fn rotate_pair(v: &[f64; 4], w: &[f64; 4], theta: f64) -> ([f64; 4], [f64; 4]) {
    let (s, c) = theta.sin_cos();
    (
        std::array::from_fn(|i| c * v[i] + s * w[i]),
        std::array::from_fn(|i| -s * v[i] + c * w[i]),
    )
}

/// Root in `[0, π/2]` of `e(θ) = ⟨v'|M|v'⟩ - target ‖v'‖²` where `v'` is the
/// first output of the rotation. Assumes `e(0) >= 0 >= e(π/2)`; bisects to the
/// last representable angle.
fn crossing_angle(v: &[f64; 4], w: &[f64; 4], target: f64) -> f64 {
    let excess = |theta: f64| {
        let (x, _) = rotate_pair(v, w, theta);
        yy_form(&x, &x) - target * dot(&x, &x)
    };
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    let (mut e_lo, mut e_hi) = (excess(lo), excess(hi));
    if e_lo <= 0.0 {
        return lo;
    }
    if e_hi >= 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let e_mid = excess(mid);
        if e_mid == 0.0 {
            return mid;
        }
        if e_mid > 0.0 {
            (lo, e_lo) = (mid, e_mid);
        } else {
            (hi, e_hi) = (mid, e_mid);
        }
    }
    if e_lo.abs() <= e_hi.abs() {
        lo
    } else {
        hi
    }
}

/// Best decomposition found by the numerical search.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// `Σ_j p_j ℰ(C(ŵ_j))` of `best`, in bits; an upper bound on the
    /// entanglement of formation.
    pub value: f64,
    pub best: SubnormalizedEnsemble,
    pub angles: Vec<f64>,
    /// Restart that produced `best`.
    pub restart: usize,
}

/// Minimizes the average pure-state entanglement over `m`-member
/// decompositions of `rho`.
///
/// Decompositions are parameterized by the `m(m-1)/2` plane-rotation angles of
/// an `m x m` orthogonal matrix (see [`OrthogonalMixer::from_givens`]). Each
/// restart draws uniform angles from its own stream of the seeded generator
/// and runs coordinate descent, with a golden-section search per angle, until
/// a full pass gains less than `1e-12`. Restarts are independent and run in
/// parallel; the answer does not depend on scheduling.
pub fn brute_force_min_eof(
    rho: &DensityOperator,
    m: usize,
    restarts: usize,
    seed: u64,
) -> Result<OracleResult> {
    let base = eigen_ensemble(rho);
    let n = base.len();
    if m < n || m > MAX_ORACLE_MEMBERS {
        return Err(Error::DimensionMismatch(format!(
            "oracle needs rank {n} <= m <= {MAX_ORACLE_MEMBERS}, got m = {m}"
        )));
    }
    if restarts == 0 {
        return Err(Error::DimensionMismatch(
            "oracle needs at least one restart".into(),
        ));
    }

    let runs: Vec<(f64, Vec<f64>)> = (0..restarts)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index as u64);
            let search = GivensSearch::new(&base, m);
            let angles: Vec<f64> = (0..search.pairs.len())
                .map(|_| rng.random_range(-PI..PI))
                .collect();
            search.descend(angles)
        })
        .collect();

    let (restart, (value, angles)) = runs
        .into_iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.0.total_cmp(&b.0).then(i.cmp(j)))
        .expect("at least one restart");
    let mixer = OrthogonalMixer::from_givens(n, m, &angles)?;
    let best = apply_mixer(&base, &mixer)?;
    Ok(OracleResult {
        value,
        best,
        angles,
        restart,
    })
}

struct GivensSearch<'a> {
    base: &'a SubnormalizedEnsemble,
    m: usize,
    pairs: Vec<(usize, usize)>,
}

impl<'a> GivensSearch<'a> {
    const PASS_GAIN: f64 = 1e-12;
    const MAX_PASSES: usize = 500;
    const GRID: usize = 12;
    const ANGLE_TOLERANCE: f64 = 1e-9;

    fn new(base: &'a SubnormalizedEnsemble, m: usize) -> Self {
        Self {
            base,
            m,
            pairs: givens_pairs(m).collect(),
        }
    }

    /// Same members as `apply_mixer(base, from_givens(n, m, angles))`: the
    /// rotations act on columns of the mixer, hence on the members directly.
    fn objective(&self, angles: &[f64]) -> f64 {
        let mut w = [[0.0; 4]; MAX_ORACLE_MEMBERS];
        w[..self.base.len()].copy_from_slice(self.base.members());
        for (&(p, q), &theta) in self.pairs.iter().zip(angles) {
            (w[p], w[q]) = rotate_pair(&w[p], &w[q], theta);
        }
        w[..self.m].iter().map(member_eof).sum()
    }

    fn descend(&self, mut angles: Vec<f64>) -> (f64, Vec<f64>) {
        let mut best = self.objective(&angles);
        if self.pairs.is_empty() {
            return (best, angles);
        }
        for pass in 0..Self::MAX_PASSES {
            let before = best;
            for k in 0..angles.len() {
                // a coarse scan over the full circle on the first pass, local
                // refinement afterwards
                let half_width = if pass == 0 {
                    PI
                } else {
                    PI / Self::GRID as f64
                };
                let (theta, value) = self.line_search(&mut angles, k, half_width);
                if value < best {
                    best = value;
                    angles[k] = theta;
                }
            }
            if before - best < Self::PASS_GAIN {
                break;
            }
        }
        (best, angles)
    }

    /// Minimizes over `angles[k]` in `[θ - half_width, θ + half_width]`:
    /// a uniform grid picks the bracket, golden-section search refines it.
    /// Leaves `angles[k]` unchanged.
    fn line_search(&self, angles: &mut [f64], k: usize, half_width: f64) -> (f64, f64) {
        let center = angles[k];
        let mut f = |theta: f64| {
            angles[k] = theta;
            self.objective(angles)
        };
        let step = 2.0 * half_width / Self::GRID as f64;
        let (mut best_theta, mut best_value) = (center, f(center));
        for i in 1..Self::GRID {
            let theta = center - half_width + i as f64 * step;
            let value = f(theta);
            if value < best_value {
                (best_theta, best_value) = (theta, value);
            }
        }

        let ratio = 0.5 * (5f64.sqrt() - 1.0);
        let (mut a, mut b) = (best_theta - step, best_theta + step);
        let mut x1 = b - ratio * (b - a);
        let mut x2 = a + ratio * (b - a);
        let (mut f1, mut f2) = (f(x1), f(x2));
        while b - a > Self::ANGLE_TOLERANCE {
            if f1 <= f2 {
                b = x2;
                (x2, f2) = (x1, f1);
                x1 = b - ratio * (b - a);
                f1 = f(x1);
            } else {
                a = x1;
                (x1, f1) = (x2, f2);
                x2 = a + ratio * (b - a);
                f2 = f(x2);
            }
        }
        for (theta, value) in [(x1, f1), (x2, f2)] {
            if value < best_value {
                (best_theta, best_value) = (theta, value);
            }
        }
        angles[k] = center;
        (best_theta, best_value)
    }
}

/// Orthonormal vectors `w̄_j` in `ℝ^{4 + m - n}` from which the members are
/// recovered as `w_j = ρ^{1/2} w̄_j` (with `ρ^{1/2}` extended by zero).
#[derive(Debug, Clone, PartialEq)]
pub struct NeumarkExtension {
    pub vectors: Vec<Vec<f64>>,
}

impl NeumarkExtension {
    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    /// `ρ^{1/2} w̄_j` restricted to the original four coordinates.
    pub fn project(&self, rho: &DensityOperator) -> Result<Vec<[f64; 4]>> {
        let root = psd_sqrt(rho.matrix())?;
        Ok(self
            .vectors
            .iter()
            .map(|v| {
                let w = root.mul_vec(&v[..4]);
                [w[0], w[1], w[2], w[3]]
            })
            .collect())
    }
}

/// `w̄_j = Σ_{k≤m} O_kj ê_k`, using the completed mixer and `m - n` extra unit
/// vectors orthogonal to the original space.
pub fn neumark_extension(
    rho: &DensityOperator,
    mixer: &OrthogonalMixer,
) -> Result<NeumarkExtension> {
    let eig = support(rho);
    let n = eig.len();
    if mixer.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "state has rank {n} but the mixer has {} rows",
            mixer.n()
        )));
    }
    let m = mixer.m();
    let dim = 4 + m - n;
    let full = mixer.complete();
    let basis: Vec<Vec<f64>> = (0..m)
        .map(|k| {
            let mut e = vec![0.0; dim];
            if k < n {
                e[..4].copy_from_slice(&eig[k].1);
            } else {
                e[4 + k - n] = 1.0;
            }
            e
        })
        .collect();
    let vectors = (0..m)
        .map(|j| {
            let mut v = vec![0.0; dim];
            for (row, e) in full.iter().zip(&basis) {
                v.iter_mut().zip(e).for_each(|(x, y)| *x += row[j] * y);
            }
            v
        })
        .collect();
    Ok(NeumarkExtension { vectors })
}
