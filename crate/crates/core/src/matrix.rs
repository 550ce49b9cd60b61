//! Small dense real matrices.
//!
//! Everything here works on the 2x2 single-rebit and 4x4 two-rebit operators,
//! stored row-major. The eigensolver is a cyclic Jacobi iteration, which is
//! unconditionally stable for symmetric input and deterministic for a fixed
//! input bit pattern.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};

/// Jacobi stops once the off-diagonal Frobenius norm falls below this
/// fraction of the input norm.
pub const JACOBI_THRESHOLD: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Relative PSD tolerance: eigenvalues down to `-PSD_TOLERANCE * trace` are
/// accepted as rounding noise.
pub const PSD_TOLERANCE: f64 = 1e-10;

/// Square real matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct RealMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {dim}x{dim} matrix",
                data.len()
            )));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows<const N: usize>(rows: [[f64; N]; N]) -> Result<Self> {
        Self::new(N, rows.iter().flatten().copied().collect())
    }

    /// Builds from nested rows of arbitrary (but square) shape.
    pub fn from_nested(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::NotSquare {
                rows: dim,
                cols: bad.len(),
            });
        }
        Self::new(dim, rows.iter().flatten().copied().collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// `Σ_j v_j v_jᵀ`.
    pub fn outer_sum<'a, I>(dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        let mut m = Self::zeros(dim);
        for v in vectors {
            debug_assert_eq!(v.len(), dim);
            for i in 0..dim {
                for j in 0..dim {
                    m[(i, j)] += v[i] * v[j];
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn to_nested(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(
            v.len(),
            self.dim,
            "vector length must match matrix dimension"
        );
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `vᵀ M w`.
    pub fn bilinear(&self, v: &[f64], w: &[f64]) -> f64 {
        v.iter().zip(self.mul_vec(w)).map(|(a, b)| a * b).sum()
    }

    /// Largest `|m[i][j] - m[j][i]|` and where it occurs.
    fn max_asymmetry(&self) -> (usize, usize, f64) {
        let mut worst = (0, 0, 0.0);
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let gap = (self[(i, j)] - self[(j, i)]).abs();
                if gap > worst.2 {
                    worst = (i, j, gap);
                }
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &RealMatrix {
    type Output = RealMatrix;

    fn mul(self, rhs: &RealMatrix) -> RealMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = RealMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &RealMatrix {
    type Output = RealMatrix;

    fn add(self, rhs: &RealMatrix) -> RealMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        RealMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RealMatrix {
    type Output = RealMatrix;

    fn sub(self, rhs: &RealMatrix) -> RealMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        RealMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.dim).map(|i| self.row(i)))
            .finish()
    }
}

/// Kronecker product; block `(i, j)` of the result is `a[i][j] * b`.
pub fn tensor_product(a: &RealMatrix, b: &RealMatrix) -> RealMatrix {
    let (na, nb) = (a.dim, b.dim);
    let mut out = RealMatrix::zeros(na * nb);
    for i in 0..na {
        for j in 0..na {
            let s = a[(i, j)];
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

/// A real matrix whose entries are exactly symmetric.
#[derive(Clone, PartialEq)]
pub struct SymmetricMatrix(RealMatrix);

impl SymmetricMatrix {
    /// Accepts `m` if it is symmetric up to `1e-12 (1 + ‖m‖_F)` and averages
    /// the two triangles, so the stored entries are exactly symmetric.
    pub fn new(m: RealMatrix) -> Result<Self> {
        let (row, col, gap) = m.max_asymmetry();
        if gap > 1e-12 * (1.0 + m.frobenius_norm()) {
            return Err(Error::NotSymmetric { row, col, gap });
        }
        Ok(Self::symmetrize(m))
    }

    /// `(m + mᵀ) / 2` without any tolerance check.
    pub fn symmetrize(mut m: RealMatrix) -> Self {
        for i in 0..m.dim {
            for j in (i + 1)..m.dim {
                let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
                m[(i, j)] = avg;
                m[(j, i)] = avg;
            }
        }
        Self(m)
    }

    pub fn identity(dim: usize) -> Self {
        Self(RealMatrix::identity(dim))
    }

    pub fn as_matrix(&self) -> &RealMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> RealMatrix {
        self.0
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale(s))
    }

    pub fn eig(&self) -> SpectralDecomposition {
        sym_eig(self)
    }

    /// `vᵀ M v`.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        self.0.bilinear(v, v)
    }
}

impl std::ops::Deref for SymmetricMatrix {
    type Target = RealMatrix;

    fn deref(&self) -> &RealMatrix {
        &self.0
    }
}

impl fmt::Debug for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<f64>>,
}

impl SpectralDecomposition {
    /// `V diag(f(λ)) Vᵀ`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> SymmetricMatrix {
        let n = self.eigenvalues.len();
        let mut m = RealMatrix::zeros(n);
        for (&lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let s = f(lambda);
            if s == 0.0 {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += s * v[i] * v[j];
                }
            }
        }
        SymmetricMatrix::symmetrize(m)
    }

    pub fn reconstruct(&self) -> SymmetricMatrix {
        self.reconstruct_with(|x| x)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("empty spectrum")
    }
}

/// Full spectral decomposition by cyclic Jacobi sweeps.
///
/// Eigenvalues come back ascending; each eigenvector is signed so that its
/// largest-magnitude component (first one, on ties) is positive. Within a
/// degenerate eigenspace the basis is whatever the sweeps produce.
///
/// Panics if the sweep cap is exceeded, which cannot happen for finite
/// symmetric input.
pub fn sym_eig(m: &SymmetricMatrix) -> SpectralDecomposition {
    let n = m.dim();
    let mut a = m.as_matrix().clone();
    let mut v = RealMatrix::identity(n);
    let threshold = JACOBI_THRESHOLD * a.frobenius_norm();

    let off_norm = |a: &RealMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)] * a[(i, j)];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) > threshold {
        assert!(
            sweeps < JACOBI_MAX_SWEEPS,
            "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps"
        );
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));

    let eigenvalues = order.iter().map(|&k| a[(k, k)]).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| {
            let mut col: Vec<f64> = (0..n).map(|i| v[(i, k)]).collect();
            let lead = col
                .iter()
                .enumerate()
                .fold((0, 0.0_f64), |best, (i, x)| {
                    if x.abs() > best.1 {
                        (i, x.abs())
                    } else {
                        best
                    }
                })
                .0;
            if col[lead] < 0.0 {
                col.iter_mut().for_each(|x| *x = -*x);
            }
            col
        })
        .collect();

    SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// `V diag(√max(λ, 0)) Vᵀ`, rejecting eigenvalues below `-1e-10 · |tr m|`.
pub fn psd_sqrt(m: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    let spec = sym_eig(m);
    check_psd(&spec, m.trace())?;
    Ok(spec.reconstruct_with(|x| x.max(0.0).sqrt()))
}

pub(crate) fn check_psd(spec: &SpectralDecomposition, trace: f64) -> Result<()> {
    let tolerance = PSD_TOLERANCE * trace.abs();
    let min = spec.min_eigenvalue();
    if min < -tolerance {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
            tolerance,
        });
    }
    Ok(())
}

/// Plane rotation of two vectors: `(cos θ v + sin θ w, -sin θ v + cos θ w)`.
///
/// Preserves `v vᵀ + w wᵀ`, so applying it to two members of an ensemble
/// leaves the represented state unchanged.
pub fn givens_mix(v: &[f64], w: &[f64], theta: f64) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(v.len(), w.len(), "givens_mix needs equal-length vectors");
    let (s, c) = theta.sin_cos();
    v.iter()
        .zip(w)
        .map(|(&a, &b)| (c * a + s * b, -s * a + c * b))
        .unzip()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sym(rows: [[f64; 4]; 4]) -> SymmetricMatrix {
        SymmetricMatrix::new(RealMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn assert_close(a: &RealMatrix, b: &RealMatrix, tol: f64) {
        let d = (a - b).frobenius_norm();
        assert!(d <= tol, "‖a - b‖ = {d:e} > {tol:e}\n{a:?}\n{b:?}");
    }

    #[test]
    fn kron_identity() {
        let i2 = RealMatrix::identity(2);
        assert_eq!(tensor_product(&i2, &i2), RealMatrix::identity(4));
    }

    #[test]
    fn kron_of_real_antisymmetric_pair() {
        let y = RealMatrix::from_rows([[0.0, -1.0], [1.0, 0.0]]).unwrap();
        let expected = RealMatrix::from_rows([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(tensor_product(&y, &y), expected);
    }

    #[test]
    fn kron_z_x() {
        let z = RealMatrix::from_rows([[1.0, 0.0], [0.0, -1.0]]).unwrap();
        let x = RealMatrix::from_rows([[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let expected = RealMatrix::from_rows([
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, -1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(tensor_product(&z, &x), expected);
    }

    #[test]
    fn rejects_non_finite_and_asymmetric() {
        assert_eq!(
            RealMatrix::new(2, vec![0.0, f64::NAN, 0.0, 0.0]),
            Err(Error::NonFinite)
        );
        let m = RealMatrix::from_rows([[0.0, 1.0], [0.5, 0.0]]).unwrap();
        assert!(matches!(
            SymmetricMatrix::new(m),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn eig_of_diagonal() {
        let m = sym([
            [3.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 2.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]);
        let spec = sym_eig(&m);
        assert_eq!(spec.eigenvalues, vec![0.0, 1.0, 2.0, 3.0]);
        let expected = [3, 1, 2, 0];
        for (v, &k) in spec.eigenvectors.iter().zip(&expected) {
            let mut e = vec![0.0; 4];
            e[k] = 1.0;
            assert_eq!(v, &e);
        }
    }

    #[test]
    fn eig_of_2x2_exchange() {
        let m = SymmetricMatrix::new(RealMatrix::from_rows([[0.0, -1.0], [-1.0, 0.0]]).unwrap())
            .unwrap();
        let spec = sym_eig(&m);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((spec.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((spec.eigenvalues[1] - 1.0).abs() < 1e-15);
        // sign rule: the first of two equal-magnitude components is positive
        assert!((spec.eigenvectors[0][0] - r).abs() < 1e-15);
        assert!((spec.eigenvectors[0][1] - r).abs() < 1e-15);
        assert!((spec.eigenvectors[1][0] - r).abs() < 1e-15);
        assert!((spec.eigenvectors[1][1] + r).abs() < 1e-15);
    }

    #[test]
    fn eig_is_deterministic() {
        let m = sym([
            [0.3, 0.1, -0.2, 0.05],
            [0.1, 0.2, 0.0, 0.1],
            [-0.2, 0.0, 0.4, -0.1],
            [0.05, 0.1, -0.1, 0.1],
        ]);
        assert_eq!(sym_eig(&m), sym_eig(&m));
    }

    #[test]
    fn eig_of_zero_matrix() {
        let spec = sym_eig(&SymmetricMatrix::symmetrize(RealMatrix::zeros(4)));
        assert_eq!(spec.eigenvalues, vec![0.0; 4]);
    }

    #[test]
    fn sqrt_of_scalar_matrix() {
        let m = SymmetricMatrix::identity(4).scale(0.25);
        assert_close(
            &psd_sqrt(&m).unwrap(),
            &RealMatrix::identity(4).scale(0.5),
            1e-15,
        );
    }

    #[test]
    fn sqrt_of_diagonal() {
        let m = sym([
            [0.36, 0.0, 0.0, 0.0],
            [0.0, 0.64, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]);
        let expected = RealMatrix::diagonal(&[0.6, 0.8, 0.0, 0.0]);
        assert_close(&psd_sqrt(&m).unwrap(), &expected, 1e-15);
    }

    #[test]
    fn sqrt_of_rank_two_projector() {
        // (I + σy⊗σy)/4 is half a rank-2 projector P, so its root is P/√2
        let m = sym([
            [0.25, 0.0, 0.0, -0.25],
            [0.0, 0.25, 0.25, 0.0],
            [0.0, 0.25, 0.25, 0.0],
            [-0.25, 0.0, 0.0, 0.25],
        ]);
        let root = psd_sqrt(&m).unwrap();
        assert_close(&(&*root * &*root), &m, 1e-10);
        assert_close(&root, &m.scale(2.0 / 2f64.sqrt()), 1e-12);
    }

    #[test]
    fn sqrt_rejects_indefinite() {
        let m = sym([
            [0.5, 0.0, 0.0, 0.0],
            [0.0, 0.5, 0.0, 0.0],
            [0.0, 0.0, 0.25, 0.0],
            [0.0, 0.0, 0.0, -0.25],
        ]);
        assert!(matches!(psd_sqrt(&m), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn sqrt_clamps_rounding_noise() {
        let m = RealMatrix::diagonal(&[0.5, 0.5, 0.0, -1e-13]);
        let root = psd_sqrt(&SymmetricMatrix::new(m).unwrap()).unwrap();
        assert_eq!(root[(3, 3)], 0.0);
    }

    #[test]
    fn givens_special_angles() {
        let v = [1.0, 2.0, -3.0, 0.5];
        let w = [0.0, -1.0, 4.0, 2.0];
        let (a, b) = givens_mix(&v, &w, 0.0);
        assert_eq!((a.as_slice(), b.as_slice()), (&v[..], &w[..]));

        let (a, b) = givens_mix(&v, &w, std::f64::consts::FRAC_PI_2);
        for i in 0..4 {
            assert!((a[i] - w[i]).abs() < 1e-15);
            assert!((b[i] + v[i]).abs() < 1e-15);
        }

        let r = std::f64::consts::FRAC_1_SQRT_2;
        let (a, b) = givens_mix(&[1.0, 0.0], &[0.0, 1.0], std::f64::consts::FRAC_PI_4);
        assert!((a[0] - r).abs() < 1e-15 && (a[1] - r).abs() < 1e-15);
        assert!((b[0] + r).abs() < 1e-15 && (b[1] - r).abs() < 1e-15);
    }

    fn symmetric_4x4() -> impl Strategy<Value = SymmetricMatrix> {
        proptest::collection::vec(-10.0f64..10.0, 16)
            .prop_map(|d| SymmetricMatrix::symmetrize(RealMatrix::new(4, d).unwrap()))
    }

    fn psd_4x4() -> impl Strategy<Value = SymmetricMatrix> {
        (proptest::collection::vec(-1.0f64..1.0, 16), 1usize..=4).prop_map(|(d, rank)| {
            let g = RealMatrix::new(4, d).unwrap();
            let cols: Vec<Vec<f64>> = (0..rank)
                .map(|k| (0..4).map(|i| g[(i, k)]).collect())
                .collect();
            SymmetricMatrix::symmetrize(RealMatrix::outer_sum(4, cols.iter().map(|c| c.as_slice())))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn eig_reconstructs_and_is_orthonormal(m in symmetric_4x4()) {
            let spec = sym_eig(&m);
            let err = (&*spec.reconstruct() - &*m).frobenius_norm();
            prop_assert!(err <= 1e-12 * (1.0 + m.frobenius_norm()), "reconstruction error {err:e}");
            for i in 0..4 {
                for j in 0..4 {
                    let g = dot(&spec.eigenvectors[i], &spec.eigenvectors[j]);
                    let target = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((g - target).abs() <= 1e-12);
                }
            }
            prop_assert!(spec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn sqrt_squares_back(m in psd_4x4()) {
            let root = psd_sqrt(&m).unwrap();
            prop_assert!((&(&*root * &*root) - &*m).frobenius_norm() <= 1e-10);
        }

        #[test]
        fn givens_preserves_frame(
            v in proptest::collection::vec(-1.0f64..1.0, 4),
            w in proptest::collection::vec(-1.0f64..1.0, 4),
            theta in -7.0f64..7.0,
        ) {
            let (a, b) = givens_mix(&v, &w, theta);
            let before = dot(&v, &v) + dot(&w, &w);
            let after = dot(&a, &a) + dot(&b, &b);
            prop_assert!((before - after).abs() <= 1e-14);
            let gram = RealMatrix::outer_sum(4, [v.as_slice(), w.as_slice()]);
            let rotated = RealMatrix::outer_sum(4, [a.as_slice(), b.as_slice()]);
            prop_assert!((&gram - &rotated).frobenius_norm() <= 1e-12 * (1.0 + gram.frobenius_norm()));
        }

        #[test]
        fn kron_mixed_product(d in proptest::collection::vec(-3.0f64..3.0, 16)) {
            let m = |o: usize| RealMatrix::new(2, d[o..o + 4].to_vec()).unwrap();
            let (a, b, c, e) = (m(0), m(4), m(8), m(12));
            let lhs = &tensor_product(&a, &b) * &tensor_product(&c, &e);
            let rhs = tensor_product(&(&a * &c), &(&b * &e));
            prop_assert!((&lhs - &rhs).frobenius_norm() <= 1e-12 * (1.0 + lhs.frobenius_norm()));
        }
    }
}
