//! Two-rebit states.
//!
//! Basis order is `|00⟩, |01⟩, |10⟩, |11⟩` with subsystem A the left tensor
//! factor, so amplitude index `2a + b` carries A-index `a` and B-index `b`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{check_psd, dot, sym_eig, tensor_product, RealMatrix, SymmetricMatrix};

/// Singular values (and marginal eigenvalues) below this are treated as zero.
pub const RANK_TOLERANCE: f64 = 1e-12;

const TRACE_TOLERANCE: f64 = 1e-12;
const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// The single-rebit Pauli operators that are real and symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::I, Pauli::X, Pauli::Z];

    pub fn matrix(self) -> RealMatrix {
        let rows = match self {
            Pauli::I => [[1.0, 0.0], [0.0, 1.0]],
            Pauli::X => [[0.0, 1.0], [1.0, 0.0]],
            Pauli::Z => [[1.0, 0.0], [0.0, -1.0]],
        };
        RealMatrix::from_rows(rows).expect("finite constant")
    }

    pub fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_label(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// `iσy`, the real antisymmetric single-rebit generator.
pub fn real_sigma_y() -> RealMatrix {
    RealMatrix::from_rows([[0.0, 1.0], [-1.0, 0.0]]).expect("finite constant")
}

/// `σy⊗σy` as a real 4x4 matrix (equal to `iσy ⊗ iσy` up to sign).
pub fn sigma_yy() -> SymmetricMatrix {
    let y = real_sigma_y();
    SymmetricMatrix::new(tensor_product(&y, &y).scale(-1.0)).expect("symmetric constant")
}

/// `⟨v|σy⊗σy|w⟩` without forming the matrix.
///
/// `σy⊗σy` maps `|00⟩ ↦ -|11⟩`, `|01⟩ ↦ |10⟩`, `|10⟩ ↦ |01⟩`, `|11⟩ ↦ -|00⟩`.
#[inline]
pub fn yy_form(v: &[f64; 4], w: &[f64; 4]) -> f64 {
    -v[0] * w[3] + v[1] * w[2] + v[2] * w[1] - v[3] * w[0]
}

fn basis_matrix(a: Pauli, b: Pauli) -> RealMatrix {
    tensor_product(&a.matrix(), &b.matrix())
}

/// Density operator of two rebits: 4x4, symmetric, unit trace, PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    mat: SymmetricMatrix,
}

impl DensityOperator {
    pub fn new(mat: SymmetricMatrix) -> Result<Self> {
        if mat.dim() != 4 {
            return Err(Error::WrongDimension {
                expected: 4,
                actual: mat.dim(),
            });
        }
        let trace = mat.trace();
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::NotUnitTrace { trace });
        }
        check_psd(&sym_eig(&mat), trace)?;
        Ok(Self { mat })
    }

    /// Validates a raw matrix: finite, symmetric, unit trace, PSD.
    pub fn from_matrix(m: RealMatrix) -> Result<Self> {
        Self::new(SymmetricMatrix::new(m)?)
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Result<Self> {
        Self::from_matrix(RealMatrix::from_rows(rows)?)
    }

    pub fn maximally_mixed() -> Self {
        Self {
            mat: SymmetricMatrix::identity(4).scale(0.25),
        }
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn pure(psi: &PureState) -> Self {
        let v = psi.amplitudes();
        Self {
            mat: SymmetricMatrix::symmetrize(RealMatrix::outer_sum(4, [v.as_slice()])),
        }
    }

    /// Convex combination `Σ w_k ρ_k`; weights must be nonnegative and sum to one.
    pub fn mixture(parts: &[(f64, DensityOperator)]) -> Result<Self> {
        let mut acc = RealMatrix::zeros(4);
        for (w, rho) in parts {
            if *w < 0.0 {
                return Err(Error::Domain {
                    name: "mixture weight",
                    value: *w,
                    lo: 0.0,
                    hi: 1.0,
                });
            }
            acc = &acc + &rho.mat.scale(*w);
        }
        Self::new(SymmetricMatrix::symmetrize(acc))
    }

    /// `ρ_A ⊗ ρ_B` for two single-rebit density matrices.
    pub fn product(a: &SymmetricMatrix, b: &SymmetricMatrix) -> Result<Self> {
        Self::from_matrix(tensor_product(a, b))
    }

    pub fn matrix(&self) -> &SymmetricMatrix {
        &self.mat
    }

    pub fn to_rows(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            row.copy_from_slice(self.mat.row(i));
        }
        out
    }

    pub fn frobenius_distance(&self, other: &DensityOperator) -> f64 {
        (&*self.mat - &*other.mat).frobenius_norm()
    }

    /// Number of eigenvalues above [`RANK_TOLERANCE`].
    pub fn rank(&self) -> usize {
        sym_eig(&self.mat)
            .eigenvalues
            .iter()
            .filter(|&&mu| mu > RANK_TOLERANCE)
            .count()
    }
}

/// Real unit 4-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    vec: [f64; 4],
}

impl PureState {
    pub fn new(vec: [f64; 4]) -> Result<Self> {
        if vec.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = dot(&vec, &vec).sqrt();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { vec })
    }

    /// Scales a nonzero vector to unit length.
    pub fn normalized(vec: [f64; 4]) -> Result<Self> {
        let norm = dot(&vec, &vec).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized { norm });
        }
        Self::new(vec.map(|x| x / norm))
    }

    /// `|a⟩ ⊗ |b⟩`.
    pub fn product(a: [f64; 2], b: [f64; 2]) -> Result<Self> {
        Self::normalized([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
    }

    pub fn amplitudes(&self) -> [f64; 4] {
        self.vec
    }

    /// The 2x2 amplitude matrix `Ψ[a][b]`.
    fn reshape(&self) -> [[f64; 2]; 2] {
        [[self.vec[0], self.vec[1]], [self.vec[2], self.vec[3]]]
    }
}

/// Pauli-basis coordinates `t_jk = tr(ρ σ_j⊗σ_k)` over `{I, X, Z}²`, plus the
/// single doubly-antisymmetric coordinate `t_yy = tr(ρ σy⊗σy)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliCoordinates {
    /// Indexed by `[Pauli as A][Pauli as B]` in `I, X, Z` order.
    pub sym: [[f64; 3]; 3],
    pub anti: f64,
}

impl PauliCoordinates {
    pub fn identity_only() -> Self {
        let mut sym = [[0.0; 3]; 3];
        sym[0][0] = 1.0;
        Self { sym, anti: 0.0 }
    }

    pub fn get(&self, a: Pauli, b: Pauli) -> f64 {
        self.sym[a as usize][b as usize]
    }

    pub fn set(&mut self, a: Pauli, b: Pauli, value: f64) {
        self.sym[a as usize][b as usize] = value;
    }

    /// The ten allowed two-letter labels, `II` first and `YY` last.
    pub fn labels() -> impl Iterator<Item = String> {
        Pauli::ALL
            .into_iter()
            .flat_map(|a| {
                Pauli::ALL
                    .into_iter()
                    .map(move |b| format!("{}{}", a.label(), b.label()))
            })
            .chain(std::iter::once("YY".to_string()))
    }

    /// Coordinate by label, or `None` for a label outside the real-symmetric set.
    pub fn by_label(&self, label: &str) -> Option<f64> {
        if label == "YY" {
            return Some(self.anti);
        }
        let (a, b) = parse_label(label)?;
        Some(self.get(a, b))
    }

    pub fn set_by_label(&mut self, label: &str, value: f64) -> Option<()> {
        if label == "YY" {
            self.anti = value;
            return Some(());
        }
        let (a, b) = parse_label(label)?;
        self.set(a, b, value);
        Some(())
    }

    /// `(1/4)(Σ t_jk σ_j⊗σ_k + t_yy σy⊗σy)` without any state validation.
    pub fn to_matrix(&self) -> SymmetricMatrix {
        let mut m = sigma_yy().into_matrix().scale(self.anti);
        for a in Pauli::ALL {
            for b in Pauli::ALL {
                m = &m + &basis_matrix(a, b).scale(self.get(a, b));
            }
        }
        SymmetricMatrix::symmetrize(m.scale(0.25))
    }
}

fn parse_label(label: &str) -> Option<(Pauli, Pauli)> {
    let mut chars = label.chars();
    let a = Pauli::from_label(chars.next()?)?;
    let b = Pauli::from_label(chars.next()?)?;
    chars.next().is_none().then_some((a, b))
}

fn trace_product(a: &RealMatrix, b: &RealMatrix) -> f64 {
    // tr(AB) = Σ_ij A_ij B_ji
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += a[(i, j)] * b[(j, i)];
        }
    }
    s
}

pub fn pauli_expand(rho: &DensityOperator) -> PauliCoordinates {
    let mut coords = PauliCoordinates {
        sym: [[0.0; 3]; 3],
        anti: trace_product(rho.matrix(), &sigma_yy()),
    };
    for a in Pauli::ALL {
        for b in Pauli::ALL {
            coords.set(a, b, trace_product(rho.matrix(), &basis_matrix(a, b)));
        }
    }
    coords
}

pub fn from_pauli(coords: &PauliCoordinates) -> Result<DensityOperator> {
    DensityOperator::new(coords.to_matrix())
}

/// Partial trace over the other subsystem.
pub fn marginal(rho: &DensityOperator, keep: Subsystem) -> SymmetricMatrix {
    let r = rho.matrix();
    let mut out = RealMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = (0..2)
                .map(|k| match keep {
                    Subsystem::A => r[(2 * i + k, 2 * j + k)],
                    Subsystem::B => r[(2 * k + i, 2 * k + j)],
                })
                .sum();
        }
    }
    SymmetricMatrix::symmetrize(out)
}

/// Von Neumann entropy in bits; eigenvalues at or below [`RANK_TOLERANCE`] contribute nothing.
pub fn entropy_bits(m: &SymmetricMatrix) -> f64 {
    sym_eig(m)
        .eigenvalues
        .iter()
        .filter(|&&p| p > RANK_TOLERANCE)
        .map(|&p| -p * p.log2())
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtForm {
    pub a1: f64,
    pub a2: f64,
    pub e1: [f64; 2],
    pub e2: [f64; 2],
    pub f1: [f64; 2],
    pub f2: [f64; 2],
}

impl SchmidtForm {
    /// `a1 e1⊗f1 + a2 e2⊗f2`.
    pub fn recompose(&self) -> [f64; 4] {
        let mut v = [0.0; 4];
        for a in 0..2 {
            for b in 0..2 {
                v[2 * a + b] =
                    self.a1 * self.e1[a] * self.f1[b] + self.a2 * self.e2[a] * self.f2[b];
            }
        }
        v
    }
}

/// Schmidt decomposition from the eigenvectors of the A marginal `ΨΨᵀ`.
///
/// Coefficients are nonnegative; any sign goes into `f1`, `f2`.
pub fn schmidt(psi: &PureState) -> SchmidtForm {
    let amp = psi.reshape();
    let gram = RealMatrix::from_rows([
        [
            amp[0][0] * amp[0][0] + amp[0][1] * amp[0][1],
            amp[0][0] * amp[1][0] + amp[0][1] * amp[1][1],
        ],
        [
            amp[1][0] * amp[0][0] + amp[1][1] * amp[0][1],
            amp[1][0] * amp[1][0] + amp[1][1] * amp[1][1],
        ],
    ])
    .expect("finite amplitudes");
    let spec = sym_eig(&SymmetricMatrix::symmetrize(gram));

    let as_pair = |v: &[f64]| [v[0], v[1]];
    // ascending order: index 1 is the dominant direction
    let e1 = as_pair(&spec.eigenvectors[1]);
    let e2 = as_pair(&spec.eigenvectors[0]);

    // Ψᵀe = a f
    let project = |e: [f64; 2]| {
        [
            amp[0][0] * e[0] + amp[1][0] * e[1],
            amp[0][1] * e[0] + amp[1][1] * e[1],
        ]
    };
    let g1 = project(e1);
    let g2 = project(e2);
    let a1 = dot(&g1, &g1).sqrt();
    let a2 = dot(&g2, &g2).sqrt();

    let f1 = [g1[0] / a1, g1[1] / a1];
    let f2 = if a2 > RANK_TOLERANCE {
        [g2[0] / a2, g2[1] / a2]
    } else {
        [-f1[1], f1[0]]
    };
    let a2 = if a2 > RANK_TOLERANCE { a2 } else { 0.0 };

    // a degenerate spectrum can leave the pair misordered by rounding
    if a2 > a1 {
        SchmidtForm {
            a1: a2,
            a2: a1,
            e1: e2,
            e2: e1,
            f1: f2,
            f2: f1,
        }
    } else {
        SchmidtForm {
            a1,
            a2,
            e1,
            e2,
            f1,
            f2,
        }
    }
}

/// `(1/4)(I⊗I + α σy⊗σy)` for `α ∈ [0, 1]`.
pub fn alpha_state(alpha: f64) -> Result<DensityOperator> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain {
            name: "alpha",
            value: alpha,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let mut coords = PauliCoordinates::identity_only();
    coords.anti = alpha;
    from_pauli(&coords)
}

/// Bell state `(|00⟩ + |11⟩)/√2`.
pub fn phi_plus() -> PureState {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    PureState::new([r, 0.0, 0.0, r]).expect("unit vector")
}

/// Bell state `(|00⟩ - |11⟩)/√2`.
pub fn phi_minus() -> PureState {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    PureState::new([r, 0.0, 0.0, -r]).expect("unit vector")
}

/// Singlet `(|01⟩ - |10⟩)/√2`.
pub fn singlet() -> PureState {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    PureState::new([0.0, r, -r, 0.0]).expect("unit vector")
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<const N: usize>(rng: &mut ChaCha8Rng) -> [f64; N] {
    std::array::from_fn(|_| StandardNormal.sample(rng))
}

/// `G Gᵀ / tr(G Gᵀ)` with `G` a 4 x rank matrix of standard normals.
pub fn random_state(seed: u64, rank: usize) -> Result<DensityOperator> {
    if !(1..=4).contains(&rank) {
        return Err(Error::Domain {
            name: "rank",
            value: rank as f64,
            lo: 1.0,
            hi: 4.0,
        });
    }
    let mut rng = rng(seed);
    let cols: Vec<[f64; 4]> = (0..rank).map(|_| gaussian(&mut rng)).collect();
    let gram = RealMatrix::outer_sum(4, cols.iter().map(|c| c.as_slice()));
    let trace = gram.trace();
    DensityOperator::new(SymmetricMatrix::symmetrize(gram.scale(1.0 / trace)))
}

/// Uniformly distributed real unit 4-vector.
pub fn random_pure_state(seed: u64) -> PureState {
    let v = gaussian(&mut rng(seed));
    PureState::normalized(v).expect("gaussian draw is nonzero")
}

/// `ρ_A ⊗ ρ_B` with each factor an independent random real 2x2 density matrix
/// of full rank.
pub fn random_product_state(seed: u64) -> DensityOperator {
    let mut rng = rng(seed);
    let mut factor = || {
        let cols: [[f64; 2]; 2] = [gaussian(&mut rng), gaussian(&mut rng)];
        let g = RealMatrix::outer_sum(2, cols.iter().map(|c| c.as_slice()));
        SymmetricMatrix::symmetrize(g.scale(1.0 / g.trace()))
    };
    let a = factor();
    let b = factor();
    DensityOperator::product(&a, &b).expect("product of density matrices")
}
