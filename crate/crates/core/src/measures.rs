//! Scalar entanglement measures.
//!
//! The real concurrence `C = |tr(ρ σy⊗σy)|` and the real entanglement of
//! formation `ℰ(C)` sit next to the standard two-qubit quantities (Wootters
//! concurrence and the partial-transpose test) so that the two number fields
//! can be compared on the same state.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{psd_sqrt, sym_eig, RealMatrix, SymmetricMatrix};
use crate::state::{sigma_yy, yy_form, DensityOperator, PureState, Subsystem};

/// Concurrences at or below this count as zero when classifying.
pub const CONCURRENCE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    /// `C = 0`: a mixture of real product states.
    RealSeparable,
    /// Real-entangled but separable over the complex numbers.
    RealBoundEntangled,
    BothEntangled,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::RealSeparable => "REAL_SEPARABLE",
            Classification::RealBoundEntangled => "REAL_BOUND_ENTANGLED",
            Classification::BothEntangled => "BOTH_ENTANGLED",
        }
    }

    pub fn from_concurrences(real: f64, wootters: f64) -> Self {
        if real <= CONCURRENCE_TOLERANCE {
            Classification::RealSeparable
        } else if wootters <= CONCURRENCE_TOLERANCE {
            Classification::RealBoundEntangled
        } else {
            Classification::BothEntangled
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub concurrence_real: f64,
    pub wootters_concurrence: f64,
    /// Bits.
    pub eof_real: f64,
    /// Bits; `ℰ(C_W)`.
    pub eof_complex: f64,
    /// Eigenvalues of τ by descending magnitude.
    pub tau_spectrum: [f64; 4],
    pub pt_min_eig: f64,
    pub classification: Classification,
}

fn check_unit_interval(name: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: x,
            lo: 0.0,
            hi: 1.0,
        })
    }
}

fn xlog2x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `H(x) = -x log₂x - (1-x) log₂(1-x)` with `0 log 0 = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    check_unit_interval("x", x)?;
    Ok(0.0 - xlog2x(x) - xlog2x(1.0 - x))
}

/// `ℰ(c) = H((1 + √(1 - c²)) / 2)`: entanglement of formation, in bits, of a
/// pure state with concurrence `c`.
pub fn eof_curve(c: f64) -> Result<f64> {
    check_unit_interval("concurrence", c)?;
    binary_entropy(0.5 * (1.0 + (1.0 - c * c).sqrt()))
}

/// `ℰ` for values that are concurrences up to rounding.
pub(crate) fn eof_curve_clamped(c: f64) -> f64 {
    eof_curve(c.abs().min(1.0)).expect("clamped into [0, 1]")
}

/// `⟨ψ|σy⊗σy|ψ⟩`, the signed pure-state concurrence.
pub fn preconcurrence(psi: &PureState) -> f64 {
    let v = psi.amplitudes();
    yy_form(&v, &v)
}

pub fn concurrence_pure(psi: &PureState) -> f64 {
    preconcurrence(psi).abs().min(1.0)
}

/// `tr(ρ σy⊗σy)`, equal to `tr τ`.
pub fn signed_concurrence(rho: &DensityOperator) -> f64 {
    let r = rho.matrix();
    // tr(ρM) with M exchanging |00⟩↔|11⟩ (sign -) and |01⟩↔|10⟩ (sign +)
    -2.0 * r[(0, 3)] + 2.0 * r[(1, 2)]
}

pub fn concurrence_real(rho: &DensityOperator) -> f64 {
    signed_concurrence(rho).abs().min(1.0)
}

pub fn eof_real(rho: &DensityOperator) -> f64 {
    eof_curve_clamped(concurrence_real(rho))
}

/// `τ = ρ^{1/2} (σy⊗σy) ρ^{1/2}`.
pub fn tau(rho: &DensityOperator) -> Result<SymmetricMatrix> {
    let root = psd_sqrt(rho.matrix())?;
    let m = sigma_yy();
    Ok(SymmetricMatrix::symmetrize(&(&*root * &*m) * &*root))
}

/// Eigenvalues of τ ordered by descending absolute value.
pub fn tau_spectrum(rho: &DensityOperator) -> Result<[f64; 4]> {
    let mut nu: [f64; 4] = sym_eig(&tau(rho)?)
        .eigenvalues
        .try_into()
        .expect("4x4 spectrum");
    nu.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    Ok(nu)
}

/// `max(0, |ν₁| - |ν₂| - |ν₃| - |ν₄|)` from the τ spectrum. The eigenvalues of
/// `ρρ̃` are `λ_j = ν_j²`, so this is the usual two-qubit formula.
pub fn wootters_concurrence(rho: &DensityOperator) -> Result<f64> {
    Ok(wootters_from_spectrum(&tau_spectrum(rho)?))
}

fn wootters_from_spectrum(nu: &[f64; 4]) -> f64 {
    let [a, b, c, d] = nu.map(f64::abs);
    (a - b - c - d).clamp(0.0, 1.0)
}

/// The spin-flipped state `ρ̃ = (σy⊗σy) ρ (σy⊗σy)`; complex conjugation is the
/// identity on real matrices.
pub fn spin_flip(rho: &DensityOperator) -> SymmetricMatrix {
    let m = sigma_yy();
    SymmetricMatrix::symmetrize(&(&*m * rho.matrix()) * &*m)
}

/// Transpose on the indices of one tensor factor.
pub fn partial_transpose(rho: &DensityOperator, subsystem: Subsystem) -> SymmetricMatrix {
    let r = rho.matrix();
    let mut out = RealMatrix::zeros(4);
    for a in 0..2 {
        for b in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    let src = match subsystem {
                        Subsystem::A => (2 * a2 + b, 2 * a + b2),
                        Subsystem::B => (2 * a + b2, 2 * a2 + b),
                    };
                    out[(2 * a + b, 2 * a2 + b2)] = r[src];
                }
            }
        }
    }
    SymmetricMatrix::symmetrize(out)
}

/// Smallest eigenvalue of `ρ^{T_B}`; negative exactly when the state is
/// entangled over the complex numbers.
pub fn peres_min_eig(rho: &DensityOperator) -> f64 {
    sym_eig(&partial_transpose(rho, Subsystem::B)).min_eigenvalue()
}

pub fn measure_report(rho: &DensityOperator) -> Result<MeasureReport> {
    let concurrence_real = concurrence_real(rho);
    let tau_spectrum = tau_spectrum(rho)?;
    let wootters_concurrence = wootters_from_spectrum(&tau_spectrum);
    Ok(MeasureReport {
        concurrence_real,
        wootters_concurrence,
        eof_real: eof_curve_clamped(concurrence_real),
        eof_complex: eof_curve_clamped(wootters_concurrence),
        tau_spectrum,
        pt_min_eig: peres_min_eig(rho),
        classification: Classification::from_concurrences(concurrence_real, wootters_concurrence),
    })
}
