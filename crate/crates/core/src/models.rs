//! Model Hamiltonians as functions of the swept parameter (hbar = 1).
//!
//! Basis convention for the three-spin model: qubit 1 is the most significant
//! bit, spin up is bit 0 and spin down is bit 1, with `sigma_z |up> = +|up>`.
//! The all-down state `|111>` is therefore index 7.

use alloc::vec::Vec;

use crate::error::{check_positive, check_range, Error, Result};
use crate::hermlin::{kron, ComplexMatrix};

/// Landau-Zener two-level system `omega_x sigma_x + omega_z(t) sigma_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LzParams {
    omega0: f64,
    omega_x: f64,
}

impl LzParams {
    pub fn new(omega0: f64, omega_x: f64) -> Result<Self> {
        Ok(Self {
            omega0: check_positive("omega0", omega0)?,
            omega_x: check_positive("omega_x", omega_x)?,
        })
    }

    /// Sweep amplitude: `omega_z` runs from `-omega0` to `+omega0`.
    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn omega_x(&self) -> f64 {
        self.omega_x
    }
}

/// Single-qubit interpolation `(1 - s) omega_x sigma_x + s omega_z sigma_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aqc1Params {
    omega_x: f64,
    omega_z: f64,
}

impl Aqc1Params {
    pub fn new(omega_x: f64, omega_z: f64) -> Result<Self> {
        Ok(Self {
            omega_x: check_positive("omega_x", omega_x)?,
            omega_z: check_positive("omega_z", omega_z)?,
        })
    }

    pub fn omega_x(&self) -> f64 {
        self.omega_x
    }

    pub fn omega_z(&self) -> f64 {
        self.omega_z
    }
}

/// Transverse field strength `g` of the three-spin driver Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factor21Params {
    g: f64,
}

impl Factor21Params {
    pub fn new(g: f64) -> Result<Self> {
        Ok(Self {
            g: check_positive("g", g)?,
        })
    }

    pub fn g(&self) -> f64 {
        self.g
    }
}

/// The single-qubit model rewritten as a Landau-Zener problem in a frame
/// rotated by `theta` about the y axis, where only the coefficient of
/// `sigma_n` depends on `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedFrame {
    /// Rotation angle with `cos theta = omega_z / Omega`, `sin theta = omega_x / Omega`.
    pub theta: f64,
    /// `Omega = sqrt(omega_z^2 + omega_x^2)`.
    pub omega: f64,
    /// Constant coefficient `omega_x cos theta` of `sigma_perp`.
    pub omega_perp: f64,
    omega_x: f64,
}

impl RotatedFrame {
    pub fn sin_theta(&self) -> f64 {
        libm::sin(self.theta)
    }

    pub fn cos_theta(&self) -> f64 {
        libm::cos(self.theta)
    }

    /// `sigma_z sin theta + sigma_x cos theta`.
    pub fn sigma_perp(&self) -> ComplexMatrix {
        ComplexMatrix::sigma_z()
            .combine(self.sin_theta(), &ComplexMatrix::sigma_x(), self.cos_theta())
            .unwrap()
    }

    /// `sigma_z cos theta - sigma_x sin theta`.
    pub fn sigma_n(&self) -> ComplexMatrix {
        ComplexMatrix::sigma_z()
            .combine(self.cos_theta(), &ComplexMatrix::sigma_x(), -self.sin_theta())
            .unwrap()
    }

    /// `omega_perp sigma_perp + omega_n(s) sigma_n`.
    pub fn hamiltonian(&self, s: f64) -> ComplexMatrix {
        self.sigma_perp()
            .combine(self.omega_perp, &self.sigma_n(), rotated_omega_n(self, s))
            .unwrap()
    }
}

pub fn lz_hamiltonian(p: &LzParams, omega_z: f64) -> Result<ComplexMatrix> {
    if !omega_z.is_finite() {
        return Err(Error::InvalidParameter {
            name: "omega_z",
            value: omega_z,
            reason: "must be finite",
        });
    }
    ComplexMatrix::sigma_x().combine(p.omega_x, &ComplexMatrix::sigma_z(), omega_z)
}

pub fn aqc1_hamiltonian(p: &Aqc1Params, s: f64) -> Result<ComplexMatrix> {
    let s = check_range("s", s, 0.0, 1.0)?;
    ComplexMatrix::sigma_x().combine((1.0 - s) * p.omega_x, &ComplexMatrix::sigma_z(), s * p.omega_z)
}

pub fn rotated_frame(p: &Aqc1Params) -> RotatedFrame {
    let theta = libm::atan2(p.omega_x, p.omega_z);
    let omega = libm::hypot(p.omega_x, p.omega_z);
    RotatedFrame {
        theta,
        omega,
        omega_perp: p.omega_x * libm::cos(theta),
        omega_x: p.omega_x,
    }
}

/// `s Omega - omega_x sin theta`; vanishes at the minimal-gap point.
pub fn rotated_omega_n(frame: &RotatedFrame, s: f64) -> f64 {
    // omega_x sin(theta) = omega_x^2 / Omega
    s * frame.omega - frame.omega_x * frame.omega_x / frame.omega
}

/// Single-spin operator `op` acting on qubit `qubit` (1-based) of three.
fn on_qubit(op: &ComplexMatrix, qubit: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    let factors: [&ComplexMatrix; 3] = match qubit {
        1 => [op, &id, &id],
        2 => [&id, op, &id],
        3 => [&id, &id, op],
        _ => unreachable!("three-qubit model"),
    };
    kron(&kron(factors[0], factors[1]).unwrap(), factors[2]).unwrap()
}

/// Driver Hamiltonian `g (sigma_1x + sigma_2x + sigma_3x)`.
pub fn factor21_h0(p: &Factor21Params) -> ComplexMatrix {
    let sx = ComplexMatrix::sigma_x();
    let sum = (1..=3)
        .map(|q| on_qubit(&sx, q))
        .reduce(|acc, m| acc.add(&m).unwrap())
        .unwrap();
    sum.scale(p.g)
}

/// Number encoded by the problem Hamiltonian.
pub const FACTORED_NUMBER: f64 = 21.0;

/// Problem Hamiltonian `[N - (2I - sigma_1z)(4I - sigma_2z - 2 sigma_3z)]^2`
/// with `N = 21`; its unique zero-energy state `|111>` reads `3 x 7`.
pub fn factor21_hp() -> ComplexMatrix {
    let sz = ComplexMatrix::sigma_z();
    let id = ComplexMatrix::identity(8);
    let z1 = on_qubit(&sz, 1);
    let z2 = on_qubit(&sz, 2);
    let z3 = on_qubit(&sz, 3);
    let first = id.combine(2.0, &z1, -1.0).unwrap();
    let second = id.combine(4.0, &z2, -1.0).unwrap().combine(1.0, &z3, -2.0).unwrap();
    let product = first.matmul(&second).unwrap();
    let residual = id.combine(FACTORED_NUMBER, &product, -1.0).unwrap();
    residual.matmul(&residual).unwrap()
}

pub fn factor21_hamiltonian(p: &Factor21Params, s: f64) -> Result<ComplexMatrix> {
    let s = check_range("s", s, 0.0, 1.0)?;
    factor21_h0(p).combine(1.0 - s, &factor21_hp(), s)
}

/// One of the three supported models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    Lz(LzParams),
    Aqc1(Aqc1Params),
    Factor21(Factor21Params),
}

impl ModelSpec {
    pub fn id(&self) -> &'static str {
        match self {
            ModelSpec::Lz(_) => "lz",
            ModelSpec::Aqc1(_) => "aqc1",
            ModelSpec::Factor21(_) => "factor21",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ModelSpec::Lz(_) | ModelSpec::Aqc1(_) => 2,
            ModelSpec::Factor21(_) => 8,
        }
    }

    /// Whether the model is driven by an interpolation parameter `s` in
    /// `[0, 1]` (as opposed to the Landau-Zener bias `omega_z`).
    pub fn is_interpolating(&self) -> bool {
        !matches!(self, ModelSpec::Lz(_))
    }

    /// Hamiltonian at sweep value `x` (`omega_z` for Landau-Zener, `s` otherwise).
    pub fn hamiltonian(&self, x: f64) -> Result<ComplexMatrix> {
        match self {
            ModelSpec::Lz(p) => lz_hamiltonian(p, x),
            ModelSpec::Aqc1(p) => aqc1_hamiltonian(p, x),
            ModelSpec::Factor21(p) => factor21_hamiltonian(p, x),
        }
    }

    /// Maps a normalized coordinate `u` in `[0, 1]` to the sweep value:
    /// identity for interpolating models, `-omega0 + 2 omega0 u` for
    /// Landau-Zener.
    pub fn sweep_value(&self, u: f64) -> f64 {
        match self {
            ModelSpec::Lz(p) => -p.omega0 + 2.0 * p.omega0 * u,
            _ => u,
        }
    }

    /// Precomputes the operators needed to evaluate `H(x)` repeatedly.
    pub fn family(&self) -> HamiltonianFamily {
        match self {
            ModelSpec::Lz(p) => HamiltonianFamily {
                model: *self,
                first: ComplexMatrix::sigma_x().scale(p.omega_x),
                second: ComplexMatrix::sigma_z(),
            },
            ModelSpec::Aqc1(p) => HamiltonianFamily {
                model: *self,
                first: ComplexMatrix::sigma_x().scale(p.omega_x),
                second: ComplexMatrix::sigma_z().scale(p.omega_z),
            },
            ModelSpec::Factor21(p) => HamiltonianFamily {
                model: *self,
                first: factor21_h0(p),
                second: factor21_hp(),
            },
        }
    }
}

/// Cached operator pair for a model: `first + x second` (Landau-Zener) or
/// `(1 - x) first + x second` (interpolating models).
#[derive(Debug, Clone)]
pub struct HamiltonianFamily {
    model: ModelSpec,
    first: ComplexMatrix,
    second: ComplexMatrix,
}

impl HamiltonianFamily {
    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn at(&self, x: f64) -> Result<ComplexMatrix> {
        match self.model {
            ModelSpec::Lz(_) => {
                if !x.is_finite() {
                    return Err(Error::InvalidParameter {
                        name: "omega_z",
                        value: x,
                        reason: "must be finite",
                    });
                }
                self.first.combine(1.0, &self.second, x)
            }
            _ => {
                let s = check_range("s", x, 0.0, 1.0)?;
                self.first.combine(1.0 - s, &self.second, s)
            }
        }
    }
}

/// Diagonal of a matrix as real numbers (for diagonal operators).
pub fn real_diagonal(m: &ComplexMatrix) -> Vec<f64> {
    m.diagonal().iter().map(|z| z.re).collect()
}
