//! The linking operator `D_r = D^A ⊕ r^{-1} D_ω ⊕ D^B` of a Hilbert bridge.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numlin::{herm_eig, op_norm, ComplexMatrix, C64, ONE, TAU_HERM, ZERO};
use crate::random::{random_hermitian, stream_rng};

#[derive(Clone, Debug)]
pub struct LinkingOperator {
    dim: usize,
    a_basis: Vec<ComplexMatrix>,
    b_basis: Vec<ComplexMatrix>,
    pivot: ComplexMatrix,
    r: f64,
    d_a: ComplexMatrix,
    d_b: ComplexMatrix,
    d_omega: ComplexMatrix,
    d_r: ComplexMatrix,
}

fn direct_sum(blocks: &[&ComplexMatrix]) -> ComplexMatrix {
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out[(off + i, off + j)] = b[(i, j)];
            }
        }
        off += b.rows();
    }
    out
}

fn contains_unit(basis: &[ComplexMatrix], dim: usize) -> bool {
    // The identity lies in the span iff the least-squares residual vanishes.
    let id = ComplexMatrix::identity(dim);
    let k = basis.len();
    let mut gram = ComplexMatrix::zeros(k, k);
    let mut rhs = vec![ZERO; k];
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = (&basis[i].adjoint() * &basis[j]).trace();
        }
        rhs[i] = (&basis[i].adjoint() * &id).trace();
    }
    let Ok(eig) = herm_eig(&gram) else { return false };
    let top = eig.values.last().copied().unwrap_or(0.0);
    let pinv = eig.apply_fn(|x| if x > 1e-12 * top { C64::new(1.0 / x, 0.0) } else { ZERO });
    let coeffs = pinv.mul_vec(&rhs);
    let mut fit = ComplexMatrix::zeros(dim, dim);
    for (c, b) in coeffs.iter().zip(basis) {
        fit = &fit + &b.scale(*c);
    }
    fit.max_abs_diff(&id) < 1e-9
}

pub fn linking_dirac(
    a_basis: Vec<ComplexMatrix>,
    b_basis: Vec<ComplexMatrix>,
    pivot: ComplexMatrix,
    r: f64,
    d_a: ComplexMatrix,
    d_b: ComplexMatrix,
) -> Result<LinkingOperator> {
    let dim = pivot.rows();
    if !pivot.is_square() || dim == 0 {
        return Err(Error::DimensionMismatch("pivot must be square".into()));
    }
    for m in a_basis.iter().chain(&b_basis).chain([&d_a, &d_b]) {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix in a {dim}-dimensional container",
                m.rows(),
                m.cols()
            )));
        }
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("r must be positive, got {r}")));
    }
    for d in [&d_a, &d_b] {
        let res = d.hermitian_residual();
        if res > TAU_HERM {
            return Err(Error::NotHermitian(res));
        }
    }
    let res = pivot.hermitian_residual();
    if res > TAU_HERM {
        return Err(Error::BadPivot(format!("pivot not self-adjoint (residual {res:.3e})")));
    }
    let spec = herm_eig(&pivot)?.values;
    let norm = spec.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::BadPivot(format!("pivot norm {norm} ≠ 1")));
    }
    if !spec.iter().any(|x| (x - 1.0).abs() <= 1e-10) {
        return Err(Error::BadPivot("1 is not in the spectrum of the pivot".into()));
    }
    if !contains_unit(&a_basis, dim) || !contains_unit(&b_basis, dim) {
        return Err(Error::InvalidArgument("algebra bases must span the unit".into()));
    }
    let zero = ComplexMatrix::zeros(dim, dim);
    let mut d_omega = direct_sum(&[&zero, &zero]);
    for i in 0..dim {
        for j in 0..dim {
            d_omega[(i, dim + j)] = pivot[(i, j)];
            d_omega[(dim + i, j)] = pivot[(i, j)];
        }
    }
    let d_r = direct_sum(&[&d_a, &d_omega.scale_re(1.0 / r), &d_b]);
    Ok(LinkingOperator {
        dim,
        a_basis,
        b_basis,
        pivot,
        r,
        d_a,
        d_b,
        d_omega,
        d_r,
    })
}

/// Terms of the commutator-norm identity for one pair `(a, b)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LinkingTerms {
    pub direct: f64,
    pub la: f64,
    pub bridge: f64,
    pub lb: f64,
}

impl LinkingTerms {
    /// `L^A(a) ∨ r^{-1} N̂(a,b) ∨ L^B(b)`.
    pub fn formula(&self) -> f64 {
        self.la.max(self.bridge).max(self.lb)
    }
}

impl LinkingOperator {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn pivot(&self) -> &ComplexMatrix {
        &self.pivot
    }

    pub fn d_omega(&self) -> &ComplexMatrix {
        &self.d_omega
    }

    pub fn d_r(&self) -> &ComplexMatrix {
        &self.d_r
    }

    /// `(a, b)` acting on `H^A ⊕ H ⊕ H ⊕ H^B`.
    pub fn represent(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        direct_sum(&[a, a, b, b])
    }

    /// `N_Π(a, b) = ‖aω − ωb‖`.
    pub fn bridge_seminorm(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        op_norm(&(&(a * &self.pivot) - &(&self.pivot * b)))
    }

    pub fn commutator_norm(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        op_norm(&self.d_r.commutator(&self.represent(a, b)))
    }

    pub fn terms(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> LinkingTerms {
        let hat = self
            .bridge_seminorm(a, b)
            .max(self.bridge_seminorm(&a.adjoint(), &b.adjoint()));
        LinkingTerms {
            direct: self.commutator_norm(a, b),
            la: op_norm(&self.d_a.commutator(a)),
            bridge: hat / self.r,
            lb: op_norm(&self.d_b.commutator(b)),
        }
    }

    /// Random element of the span of a basis.
    fn sample(basis: &[ComplexMatrix], rng: &mut impl rand::Rng) -> ComplexMatrix {
        let dim = basis[0].rows();
        basis.iter().fold(ComplexMatrix::zeros(dim, dim), |acc, b| {
            &acc + &b.scale(crate::random::complex_gaussian(rng))
        })
    }

    /// Terms for `pairs` random non-self-adjoint pairs; pair `i` draws from
    /// stream `i` of `seed`.
    pub fn sample_terms(&self, pairs: usize, seed: u64) -> Vec<LinkingTerms> {
        (0..pairs)
            .map(|i| {
                let mut rng = stream_rng(seed, i as u64);
                let a = Self::sample(&self.a_basis, &mut rng);
                let b = Self::sample(&self.b_basis, &mut rng);
                self.terms(&a, &b)
            })
            .collect()
    }

    /// Largest `|direct − formula|` over `pairs` random pairs.
    pub fn verify_identity(&self, pairs: usize, seed: u64) -> f64 {
        self.sample_terms(pairs, seed)
            .iter()
            .map(|t| (t.direct - t.formula()).abs())
            .fold(0.0, f64::max)
    }
}

/// `A` = diagonal matrices in `M₄`, `B = M₄`, rank-one pivot, `r = 0.7`.
pub fn demo_instance(seed: u64) -> Result<LinkingOperator> {
    let dim = 4;
    let unit = |i: usize, j: usize| {
        let mut e = ComplexMatrix::zeros(dim, dim);
        e[(i, j)] = ONE;
        e
    };
    let a_basis: Vec<ComplexMatrix> = (0..dim).map(|i| unit(i, i)).collect();
    let b_basis: Vec<ComplexMatrix> = (0..dim * dim).map(|k| unit(k / dim, k % dim)).collect();
    let v = vec![C64::new(0.5, 0.0), C64::new(0.0, 0.5), C64::new(-0.5, 0.0), C64::new(0.5, 0.0)];
    let pivot = ComplexMatrix::outer(&v, &v);
    let mut rng = stream_rng(seed, u64::MAX);
    let d_a = random_hermitian(dim, &mut rng);
    let d_b = random_hermitian(dim, &mut rng);
    linking_dirac(a_basis, b_basis, pivot, 0.7, d_a, d_b)
}
