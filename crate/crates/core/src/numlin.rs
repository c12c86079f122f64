//! Dense complex matrix kernels: Hermitian eigendecomposition by cyclic
//! Jacobi, operator norm, Kronecker products and exponentials of
//! skew-hermitian matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Input symmetry tolerance for hermitian / skew-hermitian inputs.
pub const TAU_HERM: f64 = 1e-10;
/// Relative off-diagonal tolerance of the Jacobi eigensolver.
pub const EPS_EIG: f64 = 1e-11;

const MAX_SWEEPS: usize = 80;

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// Builds a matrix from nested rows. Panics on ragged input; meant for
    /// literal constants.
    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |r, c| rows[r][c])
    }

    /// `|v><v|`-style outer product `u v^*`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, c| u[r] * v[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[C64]) {
        for (r, &z) in v.iter().enumerate() {
            self[(r, c)] = z;
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        self.data
            .chunks_exact(self.cols.max(1))
            .take(self.rows)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `v^* A v`.
    pub fn quadratic_form(&self, v: &[C64]) -> C64 {
        let av = self.mul_vec(v);
        v.iter().zip(&av).map(|(a, b)| a.conj() * b).sum()
    }

    fn asymmetry(&self, sign: f64) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                let d = self[(r, c)] - self[(c, r)].conj() * sign;
                worst = worst.max(d.norm());
            }
        }
        worst / self.max_abs().max(1.0)
    }

    /// Relative hermitian asymmetry `max|A - A^*| / max(1, max|A|)`.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.asymmetry(1.0)
    }

    pub fn skew_hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.asymmetry(-1.0)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_residual() <= tol
    }

    pub fn is_skew_hermitian(&self, tol: f64) -> bool {
        self.skew_hermitian_residual() <= tol
    }

    pub fn unitary_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.rows))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_residual() <= tol
    }

    /// Determinant by partial-pivot LU; intended for small matrices.
    pub fn det(&self) -> C64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = ONE;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
                .unwrap();
            if a[p * n + k].norm() == 0.0 {
                return ZERO;
            }
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                det = -det;
            }
            let pivot = a[k * n + k];
            det *= pivot;
            for r in k + 1..n {
                let f = a[r * n + k] / pivot;
                for c in k..n {
                    let t = a[k * n + c];
                    a[r * n + c] -= f * t;
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "mul shape");
        let (n, k, m) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![ZERO; n * m];
        for r in 0..n {
            let orow = &mut out[r * m..(r + 1) * m];
            for t in 0..k {
                let a = self.data[r * k + t];
                if a == ZERO {
                    continue;
                }
                let brow = &rhs.data[t * m..(t + 1) * m];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        ComplexMatrix {
            rows: n,
            cols: m,
            data: out,
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $f(self, rhs: ComplexMatrix) -> ComplexMatrix {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        let data = raw.data.iter().map(|&[re, im]| C64::new(re, im)).collect();
        ComplexMatrix::from_vec(raw.rows, raw.cols, data).map_err(serde::de::Error::custom)
    }
}

/// Eigenvalues in ascending order with the matching unitary eigenvector
/// matrix (eigenvectors as columns).
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V f(Λ) V^*` for a real spectral function.
    pub fn apply_fn(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += v[(r, k)] * fv[k] * v[(c, k)].conj();
                }
                out[(r, c)] = acc;
            }
        }
        out
    }
}

/// Eigendecomposition of a hermitian matrix by cyclic complex Jacobi.
pub fn herm_eig(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let asym = h.hermitian_residual();
    if asym > TAU_HERM {
        return Err(Error::NotHermitian(asym));
    }
    let n = h.rows();
    let mut a = h.data.clone();
    // Enforce exact symmetry so rotations stay hermitian.
    for r in 0..n {
        a[r * n + r] = C64::new(a[r * n + r].re, 0.0);
        for c in r + 1..n {
            let z = (a[r * n + c] + a[c * n + r].conj()) * 0.5;
            a[r * n + c] = z;
            a[c * n + r] = z.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n).data;
    let fro = h.norm_fro();

    let off = |a: &[C64]| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in r + 1..n {
                s += a[r * n + c].norm_sqr();
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let o = off(&a);
        if o == 0.0 || o <= f64::EPSILON * 1e-3 * fro {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            if o <= EPS_EIG * fro {
                break;
            }
            return Err(Error::NoConvergence { sweeps, off: o });
        }
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let g = 100.0 * r;
                let negligible = r <= 1e-18 * fro
                    || (sweeps > 4 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs());
                if negligible {
                    a[p * n + q] = ZERO;
                    a[q * n + p] = ZERO;
                    continue;
                }
                rotated = true;
                let u = apq / r;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                } else {
                    0.0
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // V = [[c, s u], [-s conj(u), c]] on the (p, q) plane.
                let vpq = u * s;
                let vqp = -u.conj() * s;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c + akq * vqp;
                    a[k * n + q] = akp * vpq + akq * c;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c + aqk * vqp.conj();
                    a[q * n + k] = apk * vpq.conj() + aqk * c;
                }
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p] = C64::new(app - t * r, 0.0);
                a[q * n + q] = C64::new(aqq + t * r, 0.0);
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c + vkq * vqp;
                    v[k * n + q] = vkp * vpq + vkq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[r * n + order[c]]);
    Ok(HermitianEigen { values, vectors })
}

/// Largest singular value, `sqrt(λ_max(A^* A))`.
pub fn op_norm(a: &ComplexMatrix) -> f64 {
    if a.rows == 0 || a.cols == 0 {
        return 0.0;
    }
    let gram = if a.rows < a.cols {
        a * &a.adjoint()
    } else {
        &a.adjoint() * a
    };
    let eig = herm_eig(&gram).expect("Gram matrix is hermitian by construction");
    eig.values.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Spectral radius of a hermitian matrix; equals its operator norm.
pub fn herm_norm(h: &ComplexMatrix) -> Result<f64> {
    let eig = herm_eig(h)?;
    Ok(eig
        .values
        .first()
        .map_or(0.0, |lo| lo.abs().max(eig.values.last().unwrap().abs())))
}

/// Kronecker product: `(A⊗B)[i·rB + k, j·cB + l] = A[i,j]·B[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca, rb, cb) = (a.rows, a.cols, b.rows, b.cols);
    let mut out = ComplexMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let x = a[(i, j)];
            if x == ZERO {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = x * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Spectral data of a skew-hermitian generator `X`, reusable for many
/// exponentials `exp(tX)`.
#[derive(Clone, Debug)]
pub struct SkewGenerator {
    eig: HermitianEigen,
}

impl SkewGenerator {
    pub fn new(x: &ComplexMatrix) -> Result<Self> {
        let res = x.skew_hermitian_residual();
        if res > TAU_HERM {
            return Err(Error::NotSkewHermitian(res));
        }
        // iX is hermitian; X = -i (iX).
        let eig = herm_eig(&x.scale(I))?;
        Ok(Self { eig })
    }

    pub fn exp(&self, t: f64) -> ComplexMatrix {
        self.eig.apply_fn(|l| C64::from_polar(1.0, -t * l))
    }
}

/// `exp(tX)` for skew-hermitian `X`, through the eigendecomposition of `iX`.
pub fn expm_skew(x: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    Ok(SkewGenerator::new(x)?.exp(t))
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_complex, random_hermitian, stream_rng};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn e_gens() -> [ComplexMatrix; 3] {
        [
            ComplexMatrix::from_rows(&[&[ZERO, I], &[I, ZERO]]),
            ComplexMatrix::from_rows(&[&[ZERO, -ONE], &[ONE, ZERO]]),
            ComplexMatrix::from_rows(&[&[I, ZERO], &[ZERO, -I]]),
        ]
    }

    fn residual(h: &ComplexMatrix, eig: &HermitianEigen) -> f64 {
        let lam = ComplexMatrix::from_real_diag(&eig.values);
        let lhs = h * &eig.vectors;
        let rhs = &eig.vectors * &lam;
        op_norm(&(&lhs - &rhs))
    }

    #[test]
    fn eig_identity_and_diagonal() {
        let eig = herm_eig(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(eig.values, vec![1.0; 4]);

        let eig = herm_eig(&ComplexMatrix::from_real_diag(&[3.0, -1.0])).unwrap();
        assert_eq!(eig.values, vec![-1.0, 3.0]);
        assert!((eig.vectors[(1, 0)].norm() - 1.0).abs() < 1e-15);
        assert!((eig.vectors[(0, 1)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eig_of_rotated_generator() {
        // -i E3 = diag(1, -1)
        let h = e_gens()[2].scale(-I);
        let eig = herm_eig(&h).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[&[ONE, ONE], &[ZERO, ONE]]);
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn eig_random_reconstruction() {
        let mut rng = stream_rng(7, 0);
        for &n in &[1usize, 2, 5, 30, 120] {
            let h = random_hermitian(n, &mut rng);
            let eig = herm_eig(&h).unwrap();
            let scale = op_norm(&h);
            assert!(residual(&h, &eig) <= 1e-10 * scale, "n={n}");
            assert!(eig.vectors.unitary_residual() < 1e-11);
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    #[ignore = "slow: 400x400 Jacobi"]
    fn eig_random_reconstruction_400() {
        let mut rng = stream_rng(8, 0);
        let h = random_hermitian(400, &mut rng);
        let eig = herm_eig(&h).unwrap();
        assert!(residual(&h, &eig) <= 1e-10 * op_norm(&h));
    }

    #[test]
    fn op_norm_examples() {
        assert_eq!(op_norm(&ComplexMatrix::zeros(3, 3)), 0.0);
        let u = expm_skew(&e_gens()[0], 0.7).unwrap();
        assert!((op_norm(&u) - 1.0).abs() < 1e-14);

        // 2(E1⊗E2 - E2⊗E1) has norm 4
        let [e1, e2, _] = e_gens();
        let m = (&kron(&e1, &e2) - &kron(&e2, &e1)).scale_re(2.0);
        assert!((op_norm(&m) - 4.0).abs() < 1e-13);
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            kron(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3)),
            ComplexMatrix::identity(6)
        );
        let d = ComplexMatrix::from_diag(&[c(2.0, 1.0), c(-3.0, 0.0)]);
        let k = kron(&d, &ComplexMatrix::identity(2));
        assert_eq!(
            k,
            ComplexMatrix::from_diag(&[c(2.0, 1.0), c(2.0, 1.0), c(-3.0, 0.0), c(-3.0, 0.0)])
        );
        // E3⊗E3 = -diag(1,-1)⊗diag(1,-1)
        let e3 = &e_gens()[2];
        let k = kron(e3, e3);
        let diag: Vec<C64> = (0..4).map(|i| k[(i, i)]).collect();
        assert_eq!(diag, vec![-ONE, ONE, ONE, -ONE]);
    }

    #[test]
    fn expm_examples() {
        let [_, e2, e3] = e_gens();
        assert!(expm_skew(&e3, 0.0).unwrap().max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        let t = 0.83;
        let expect = ComplexMatrix::from_diag(&[C64::from_polar(1.0, t), C64::from_polar(1.0, -t)]);
        assert!(expm_skew(&e3, t).unwrap().max_abs_diff(&expect) < 1e-14);
        let minus_i = ComplexMatrix::identity(2).scale_re(-1.0);
        assert!(expm_skew(&e2, std::f64::consts::PI).unwrap().max_abs_diff(&minus_i) < 1e-14);
        assert!(matches!(
            expm_skew(&ComplexMatrix::identity(2), 1.0),
            Err(Error::NotSkewHermitian(_))
        ));
    }

    #[test]
    fn det_small() {
        let m = ComplexMatrix::from_rows(&[&[c(1.0, 0.0), c(2.0, 0.0)], &[c(3.0, 0.0), c(4.0, 0.0)]]);
        assert!((m.det() - c(-2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn json_encoding() {
        let m = ComplexMatrix::from_rows(&[&[c(1.0, -2.0)], &[c(0.5, 0.0)]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":1,"data":[[1.0,-2.0],[0.5,0.0]]}"#);
        let back: ComplexMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<ComplexMatrix>(r#"{"rows":2,"cols":2,"data":[[1,0]]}"#).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn op_norm_unitary_invariance(seed in 0u64..1000, n in 1usize..8) {
            let mut rng = stream_rng(seed, 1);
            let a = random_complex(n, n, &mut rng);
            let u = expm_skew(&{ let h = random_hermitian(n, &mut rng); h.scale(I) }, 1.0).unwrap();
            let v = expm_skew(&{ let h = random_hermitian(n, &mut rng); h.scale(I) }, 0.4).unwrap();
            let base = op_norm(&a);
            prop_assert!((op_norm(&a.adjoint()) - base).abs() <= 1e-10 * base.max(1.0));
            prop_assert!((op_norm(&(&(&u * &a) * &v)) - base).abs() <= 1e-10 * base.max(1.0));
        }

        #[test]
        fn expm_group_law(seed in 0u64..1000, n in 1usize..7, s in -3.0f64..3.0, t in -3.0f64..3.0) {
            let mut rng = stream_rng(seed, 2);
            let x = random_hermitian(n, &mut rng).scale(I);
            let g = SkewGenerator::new(&x).unwrap();
            let lhs = &g.exp(s) * &g.exp(t);
            prop_assert!(lhs.max_abs_diff(&g.exp(s + t)) < 1e-10);
            prop_assert!(g.exp(t).is_unitary(1e-11));
        }
    }
}
