//! Complex Clifford algebras `Cl(R^m)` with the negative-definite convention
//! `κ_j κ_k + κ_k κ_j = −2δ_jk`, their spinor representations, chirality and
//! the charge conjugation for `m = 3`.

use crate::error::{Error, Result};
use crate::liealg::su2_basis;
use crate::numlin::{kron, op_norm, ComplexMatrix, C64, I, ONE, ZERO};

/// Irreducible spinor representation of `Cl(R^m)`.
#[derive(Clone, Debug)]
pub struct CliffordRep {
    m: usize,
    sign: i8,
    gammas: Vec<ComplexMatrix>,
    chirality: ComplexMatrix,
    zeta: C64,
}

impl CliffordRep {
    pub fn m(&self) -> usize {
        self.m
    }

    /// For odd `m`, the scalar by which the chirality element is represented.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn gammas(&self) -> &[ComplexMatrix] {
        &self.gammas
    }

    pub fn gamma(&self, j: usize) -> &ComplexMatrix {
        &self.gammas[j]
    }

    pub fn spinor_dim(&self) -> usize {
        self.gammas[0].rows()
    }

    /// Normalization `ζ` in `γ = ζ κ₁⋯κ_m`.
    pub fn zeta(&self) -> C64 {
        self.zeta
    }

    /// `κ_{j₁}⋯κ_{j_r}` for a word of generator indices.
    pub fn word(&self, word: &[usize]) -> ComplexMatrix {
        word.iter().fold(ComplexMatrix::identity(self.spinor_dim()), |acc, &j| {
            &acc * &self.gammas[j]
        })
    }
}

fn pauli() -> [ComplexMatrix; 3] {
    [
        ComplexMatrix::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]),
        ComplexMatrix::from_rows(&[&[ZERO, -I], &[I, ZERO]]),
        ComplexMatrix::from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]]),
    ]
}

/// Hermitian Euclidean gammas (`γ² = +1`) built from iterated 2×2 blocks.
fn euclidean_gammas(m: usize) -> Vec<ComplexMatrix> {
    let [sx, sy, sz] = pauli();
    let half = m / 2;
    let id2 = ComplexMatrix::identity(2);
    let tensor = |factors: &[&ComplexMatrix]| -> ComplexMatrix {
        factors
            .iter()
            .fold(ComplexMatrix::identity(1), |acc, f| kron(&acc, f))
    };
    let mut out = Vec::with_capacity(m);
    for j in 0..half {
        for s in [&sx, &sy] {
            let mut factors: Vec<&ComplexMatrix> = Vec::with_capacity(half);
            factors.extend(std::iter::repeat_n(&sz, j));
            factors.push(s);
            factors.extend(std::iter::repeat_n(&id2, half - j - 1));
            out.push(tensor(&factors));
        }
    }
    if m % 2 == 1 {
        let factors: Vec<&ComplexMatrix> = std::iter::repeat_n(&sz, half).collect();
        out.push(tensor(&factors));
    }
    out
}

/// Product `κ₁⋯κ_m` normalized by the first `ζ ∈ {1, i, −1, −i}` for which
/// the result is a self-adjoint involution.
fn normalized_chirality(gammas: &[ComplexMatrix]) -> (C64, ComplexMatrix) {
    let dim = gammas[0].rows();
    let prod = gammas
        .iter()
        .fold(ComplexMatrix::identity(dim), |acc, g| &acc * g);
    let id = ComplexMatrix::identity(dim);
    for zeta in [ONE, I, -ONE, -I] {
        let g = prod.scale(zeta);
        if (&g * &g).max_abs_diff(&id) < 1e-12 && g.is_hermitian(1e-12) {
            return (zeta, g);
        }
    }
    unreachable!("a product of anticommuting unitaries squares to ±1")
}

/// Intertwiner `W` with `W source_j W^{-1} = target_j`, obtained by
/// averaging over the finite group generated by the generators.
fn intertwiner(target: &[ComplexMatrix], source: &[ComplexMatrix]) -> Option<ComplexMatrix> {
    let m = target.len();
    let dim = target[0].rows();
    for seed_idx in 0..dim * dim {
        let mut x = ComplexMatrix::zeros(dim, dim);
        x[(seed_idx / dim, seed_idx % dim)] = ONE;
        let mut w = ComplexMatrix::zeros(dim, dim);
        for mask in 0..(1usize << m) {
            let mut t = ComplexMatrix::identity(dim);
            let mut s = ComplexMatrix::identity(dim);
            for j in 0..m {
                if mask & (1 << j) != 0 {
                    t = &t * &target[j];
                    s = &s * &source[j];
                }
            }
            // Words are unitary, so the inverse is the adjoint.
            w = &w + &(&(&t * &x) * &s.adjoint());
        }
        let gram = &w * &w.adjoint();
        let c = gram[(0, 0)].re;
        if c > 1e-8 {
            return Some(w.scale_re(1.0 / c.sqrt()));
        }
    }
    None
}

/// Spinor representation of `Cl(R^m)`. For odd `m`, `sign` picks which of
/// the two inequivalent irreducibles (chirality represented by `sign·I`).
/// For `m = 3` the gauge is fixed to `κ_j = −sign·E_j`.
pub fn clifford_gammas(m: usize, sign: i8) -> Result<CliffordRep> {
    if m == 0 {
        return Err(Error::InvalidArgument("Clifford dimension must be ≥ 1".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!("sign must be ±1, got {sign}")));
    }
    let mut gammas: Vec<ComplexMatrix> = euclidean_gammas(m).iter().map(|g| g.scale(I)).collect();
    let (mut zeta, mut chir) = normalized_chirality(&gammas);
    if m % 2 == 1 {
        let represented = chir[(0, 0)].re;
        if (represented - sign as f64).abs() > 1e-12 {
            gammas = gammas.iter().map(|g| g.scale_re(-1.0)).collect();
            let (z, c) = normalized_chirality(&gammas);
            zeta = z;
            chir = c;
        }
        if m == 3 {
            let target: Vec<ComplexMatrix> = su2_basis()
                .generators
                .iter()
                .map(|e| e.scale_re(-(sign as f64)))
                .collect();
            let w = intertwiner(&target, &gammas).expect("equivalent irreducibles");
            gammas = gammas.iter().map(|g| &(&w * g) * &w.adjoint()).collect();
            let (z, c) = normalized_chirality(&gammas);
            zeta = z;
            chir = c;
        }
    }
    Ok(CliffordRep {
        m,
        sign,
        gammas,
        chirality: chir,
        zeta,
    })
}

pub fn chirality(rep: &CliffordRep) -> &ComplexMatrix {
    &rep.chirality
}

/// `‖Σ_j a_j ⊗ ε_j‖` in `B ⊗ Cl(R^m)`, evaluated in a spinor representation.
pub fn clifford_norm(coeffs: &[ComplexMatrix]) -> Result<f64> {
    let rep = clifford_gammas(coeffs.len(), -1)?;
    clifford_norm_in(&rep, coeffs)
}

pub fn clifford_norm_in(rep: &CliffordRep, coeffs: &[ComplexMatrix]) -> Result<f64> {
    let first = coeffs
        .first()
        .ok_or_else(|| Error::DimensionMismatch("no coefficients".into()))?;
    if coeffs.len() != rep.m() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for Cl(R^{})",
            coeffs.len(),
            rep.m()
        )));
    }
    let d = first.rows();
    if coeffs.iter().any(|a| a.rows() != d || a.cols() != d) {
        return Err(Error::DimensionMismatch(
            "Clifford coefficients must be square of equal size".into(),
        ));
    }
    let total = coeffs
        .iter()
        .zip(rep.gammas())
        .map(|(a, k)| kron(a, k))
        .reduce(|x, y| &x + &y)
        .unwrap();
    Ok(op_norm(&total))
}

/// Antilinear map `v ↦ M · conj(v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AntilinearMap {
    pub matrix: ComplexMatrix,
}

impl AntilinearMap {
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let conj: Vec<C64> = v.iter().map(|z| z.conj()).collect();
        self.matrix.mul_vec(&conj)
    }

    /// `self ∘ other`, which is linear: `M₁ · conj(M₂)`.
    pub fn compose(&self, other: &AntilinearMap) -> ComplexMatrix {
        &self.matrix * &other.matrix.conj()
    }

    pub fn inverse(&self) -> AntilinearMap {
        // C(v) = M conj(v)  ⇒  C^{-1}(w) = conj(M^{-1} w) = conj(M^{-1}) conj(w).
        let inv = unitary_inverse(&self.matrix);
        AntilinearMap { matrix: inv.conj() }
    }

    /// `C A C^{-1} = M · conj(A) · M^{-1}` for a linear `A`.
    pub fn conjugate_linear(&self, a: &ComplexMatrix) -> ComplexMatrix {
        &(&self.matrix * &a.conj()) * &unitary_inverse(&self.matrix)
    }
}

fn unitary_inverse(m: &ComplexMatrix) -> ComplexMatrix {
    debug_assert!(m.is_unitary(1e-10), "antilinear maps here are antiunitary");
    m.adjoint()
}

/// `C_S(v) = σ₂ v̄` on the two-dimensional spinors of `Cl(R³)`.
pub fn charge_conj_3d() -> AntilinearMap {
    AntilinearMap {
        matrix: pauli()[1].clone(),
    }
}
