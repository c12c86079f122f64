//! su(2) structure data, irreducible representations by highest weight and
//! the induced actions on the matrix algebra `B^n = M_{n+1}`.
//!
//! Superoperators act on row-major vectorizations: `vec(T)[r·d + c] = T[r,c]`,
//! so `vec(A T B) = (A ⊗ Bᵀ) vec(T)`.

use crate::error::{Error, Result};
use crate::numlin::{herm_eig, kron, ComplexMatrix, SkewGenerator, C64, I, ONE, ZERO};

/// Coefficients of a Lie algebra element in the basis `E₁, E₂, E₃`.
pub type LieElement = [f64; 3];

/// The basis `E_j` (i times the Pauli matrices) with `⟨X,Y⟩ = −½ tr(XY)`.
#[derive(Clone, Debug)]
pub struct LieBasis {
    pub generators: [ComplexMatrix; 3],
}

pub fn su2_basis() -> LieBasis {
    LieBasis {
        generators: [
            ComplexMatrix::from_rows(&[&[ZERO, I], &[I, ZERO]]),
            ComplexMatrix::from_rows(&[&[ZERO, -ONE], &[ONE, ZERO]]),
            ComplexMatrix::from_rows(&[&[I, ZERO], &[ZERO, -I]]),
        ],
    }
}

impl LieBasis {
    pub fn inner_product(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
        -0.5 * (x * y).trace().re
    }

    pub fn element(&self, x: LieElement) -> ComplexMatrix {
        combine(&self.generators, x)
    }
}

fn combine(gens: &[ComplexMatrix; 3], x: LieElement) -> ComplexMatrix {
    let mut out = gens[0].scale_re(x[0]);
    for j in 1..3 {
        out = &out + &gens[j].scale_re(x[j]);
    }
    out
}

/// Irreducible representation of highest weight `n` on `C^{n+1}`, weight
/// basis ordered `n, n−2, …, −n`.
#[derive(Clone, Debug)]
pub struct Irrep {
    n: usize,
    generators: [ComplexMatrix; 3],
    h: ComplexMatrix,
    e: ComplexMatrix,
    f: ComplexMatrix,
    highest_projector: ComplexMatrix,
}

pub fn irrep(n: usize) -> Irrep {
    let d = n + 1;
    let h = ComplexMatrix::from_real_diag(&(0..d).map(|k| n as f64 - 2.0 * k as f64).collect::<Vec<_>>());
    let mut e = ComplexMatrix::zeros(d, d);
    for k in 1..d {
        e[(k - 1, k)] = C64::new(((k * (n - k + 1)) as f64).sqrt(), 0.0);
    }
    let f = e.transpose();
    let e1 = (&e + &f).scale(I);
    let e2 = &f - &e;
    let e3 = h.scale(I);
    let mut p = ComplexMatrix::zeros(d, d);
    p[(0, 0)] = ONE;
    Irrep {
        n,
        generators: [e1, e2, e3],
        h,
        e,
        f,
        highest_projector: p,
    }
}

impl Irrep {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// `U_{E₁}, U_{E₂}, U_{E₃}`.
    pub fn generators(&self) -> &[ComplexMatrix; 3] {
        &self.generators
    }

    pub fn generator(&self, j: usize) -> &ComplexMatrix {
        &self.generators[j]
    }

    pub fn ladder(&self) -> (&ComplexMatrix, &ComplexMatrix, &ComplexMatrix) {
        (&self.h, &self.e, &self.f)
    }

    /// Rank-one projector onto the highest weight vector.
    pub fn highest_projector(&self) -> &ComplexMatrix {
        &self.highest_projector
    }

    pub fn lie(&self, x: LieElement) -> ComplexMatrix {
        combine(&self.generators, x)
    }

    /// `exp(t U_X)`, the image of `exp(tX)`.
    pub fn group_element(&self, x: LieElement, t: f64) -> ComplexMatrix {
        SkewGenerator::new(&self.lie(x))
            .expect("irrep generators are skew-hermitian")
            .exp(t)
    }
}

/// `Σ_j U_{E_j}²`.
pub fn casimir_image(rep: &Irrep) -> ComplexMatrix {
    rep.generators
        .iter()
        .map(|u| u * u)
        .reduce(|a, b| &a + &b)
        .unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuperopKind {
    Derivation,
    Conjugation,
    Berezin,
    Projector,
    Other,
}

/// Linear map on `B^n`, stored as a `(n+1)² × (n+1)²` matrix on vectorizations.
#[derive(Clone, Debug)]
pub struct Superop {
    pub level: usize,
    pub matrix: ComplexMatrix,
    pub kind: SuperopKind,
}

impl Superop {
    pub fn new(level: usize, matrix: ComplexMatrix, kind: SuperopKind) -> Self {
        let d = (level + 1) * (level + 1);
        assert_eq!((matrix.rows(), matrix.cols()), (d, d), "superop shape");
        Self { level, matrix, kind }
    }

    pub fn identity(level: usize) -> Self {
        let d = (level + 1) * (level + 1);
        Self::new(level, ComplexMatrix::identity(d), SuperopKind::Other)
    }

    pub fn apply(&self, t: &ComplexMatrix) -> ComplexMatrix {
        let d = self.level + 1;
        assert_eq!((t.rows(), t.cols()), (d, d), "superop input shape");
        let out = self.matrix.mul_vec(t.data());
        ComplexMatrix::from_vec(d, d, out).unwrap()
    }

    pub fn compose(&self, other: &Superop) -> Superop {
        Superop::new(self.level, &self.matrix * &other.matrix, SuperopKind::Other)
    }
}

/// Left multiplication `T ↦ A T` on vectorizations.
pub fn left_mult(a: &ComplexMatrix) -> ComplexMatrix {
    kron(a, &ComplexMatrix::identity(a.rows()))
}

/// Right multiplication `T ↦ T B` on vectorizations.
pub fn right_mult(b: &ComplexMatrix) -> ComplexMatrix {
    kron(&ComplexMatrix::identity(b.rows()), &b.transpose())
}

/// `T ↦ [U_X, T]`.
pub fn derivation(rep: &Irrep, x: LieElement) -> Superop {
    let u = rep.lie(x);
    Superop::new(rep.n, &left_mult(&u) - &right_mult(&u), SuperopKind::Derivation)
}

/// Derivations along the three basis directions.
pub fn basis_derivations(rep: &Irrep) -> [Superop; 3] {
    [
        derivation(rep, [1.0, 0.0, 0.0]),
        derivation(rep, [0.0, 1.0, 0.0]),
        derivation(rep, [0.0, 0.0, 1.0]),
    ]
}

/// `T ↦ U T U^{−1}` for a unitary `U` acting on the irrep space.
pub fn conjugation(rep: &Irrep, u: &ComplexMatrix) -> Result<Superop> {
    if u.rows() != rep.dim() || !u.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "group element of size {}x{} for irrep of dimension {}",
            u.rows(),
            u.cols(),
            rep.dim()
        )));
    }
    let res = u.unitary_residual();
    if res > 1e-10 {
        return Err(Error::NotGroupElement(res));
    }
    Ok(Superop::new(rep.n, kron(u, &u.conj()), SuperopKind::Conjugation))
}

/// Casimir superoperator `Σ_j α_{E_j}²`.
pub fn casimir_superop(rep: &Irrep) -> ComplexMatrix {
    basis_derivations(rep)
        .iter()
        .map(|a| &a.matrix * &a.matrix)
        .reduce(|a, b| &a + &b)
        .unwrap()
}

/// Orthogonal projectors onto the isotypic sectors of `B^n`; sector `k`
/// carries the irrep of highest weight `2k` and Casimir value `−2k(2k+2)`.
pub fn isotypic_projectors(n: usize) -> Result<Vec<(usize, Superop)>> {
    let rep = irrep(n);
    let cas = casimir_superop(&rep);
    let eig = herm_eig(&cas)?;
    let gap_tol = 1e-6;

    // Clusters in ascending eigenvalue order correspond to k = n, …, 0.
    let mut clusters: Vec<Vec<usize>> = vec![];
    for (i, &v) in eig.values.iter().enumerate() {
        match clusters.last_mut() {
            Some(last) if (v - eig.values[*last.last().unwrap()]).abs() <= gap_tol => last.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    if clusters.len() != n + 1 {
        let min_gap = eig
            .values
            .windows(2)
            .map(|w| w[1] - w[0])
            .filter(|g| *g > gap_tol)
            .fold(f64::INFINITY, f64::min);
        return Err(Error::DegenerateSpectrum(min_gap));
    }

    let dim = eig.values.len();
    let mut out = Vec::with_capacity(n + 1);
    for (idx, cluster) in clusters.iter().enumerate().rev() {
        let k = n - idx;
        let expected = -(2.0 * k as f64) * (2.0 * k as f64 + 2.0);
        let mean = cluster.iter().map(|&i| eig.values[i]).sum::<f64>() / cluster.len() as f64;
        if (mean - expected).abs() > gap_tol || cluster.len() != 2 * k + 1 {
            return Err(Error::DegenerateSpectrum((mean - expected).abs()));
        }
        let mut proj = ComplexMatrix::zeros(dim, dim);
        for &c in cluster {
            let v = eig.vectors.column(c);
            for r in 0..dim {
                if v[r] == ZERO {
                    continue;
                }
                for s in 0..dim {
                    proj[(r, s)] += v[r] * v[s].conj();
                }
            }
        }
        out.push((k, Superop::new(n, proj, SuperopKind::Projector)));
    }
    Ok(out)
}

/// Bi-invariant length `ℓ(g) = arccos(Re tr(g) / 2)` on SU(2).
pub fn length_function(g: &ComplexMatrix) -> Result<f64> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(Error::NotSU2(f64::INFINITY));
    }
    let res = g.unitary_residual().max((g.det() - ONE).norm());
    if res > 1e-10 {
        return Err(Error::NotSU2(res));
    }
    Ok((g.trace().re / 2.0).clamp(-1.0, 1.0).acos())
}
