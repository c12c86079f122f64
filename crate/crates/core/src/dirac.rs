//! The Dirac operator `D = Σ_j α_{E_j} ⊗ κ_j` on `B^n ⊗ S`, its spectrum,
//! the seminorms `L^D`, `L_d`, `L_ℓ` and the algebraic identity suite.
//!
//! Vectors of `B^n ⊗ S` are indexed by `(row·(n+1) + col)·2 + spinor`.

use serde::Serialize;

use crate::clifford::{charge_conj_3d, clifford_gammas, clifford_norm_in, CliffordRep};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::liealg::{
    basis_derivations, casimir_superop, conjugation, irrep, left_mult, length_function, su2_basis,
    Irrep, LieBasis, LieElement,
};
use crate::numlin::{herm_eig, kron, op_norm, ComplexMatrix, SkewGenerator, C64, ONE, ZERO};
use crate::random::{random_unit_vector3, stream_rng};

/// Tolerance for matching the closed-form spectrum.
pub const SPECTRUM_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct DiracOp {
    n: usize,
    sign: i8,
    matrix: ComplexMatrix,
    rep: Irrep,
    cliff: CliffordRep,
}

pub fn build_dirac(n: usize, sign: i8) -> Result<DiracOp> {
    if n == 0 {
        return Err(Error::InvalidArgument("Dirac operator needs level n ≥ 1".into()));
    }
    let rep = irrep(n);
    let cliff = clifford_gammas(3, sign)?;
    let matrix = dirac_matrix(&rep, &cliff);
    Ok(DiracOp {
        n,
        sign,
        matrix,
        rep,
        cliff,
    })
}

/// `Σ_j α_{E_j} ⊗ κ_j` for an arbitrary irrep and spinor representation.
pub fn dirac_matrix(rep: &Irrep, cliff: &CliffordRep) -> ComplexMatrix {
    basis_derivations(rep)
        .iter()
        .zip(cliff.gammas())
        .map(|(a, k)| kron(&a.matrix, k))
        .reduce(|x, y| &x + &y)
        .unwrap()
}

impl DiracOp {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn dim(&self) -> usize {
        2 * (self.n + 1) * (self.n + 1)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn rep(&self) -> &Irrep {
        &self.rep
    }

    pub fn cliff(&self) -> &CliffordRep {
        &self.cliff
    }

    /// Left multiplication `M_a` on `B^n ⊗ S`.
    pub fn left_mult(&self, a: &ComplexMatrix) -> ComplexMatrix {
        kron(&left_mult(a), &ComplexMatrix::identity(2))
    }

    fn check_dim(&self, a: &ComplexMatrix) -> Result<()> {
        let d = self.n + 1;
        if a.rows() != d || a.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} element for level {} (expected {d}x{d})",
                a.rows(),
                a.cols(),
                self.n
            )));
        }
        Ok(())
    }

    /// `L^D(a) = ‖[D, M_a]‖`, computed on the full spinor module.
    pub fn lip_seminorm(&self, a: &ComplexMatrix) -> Result<f64> {
        self.check_dim(a)?;
        let m = self.left_mult(a);
        Ok(op_norm(&self.matrix.commutator(&m)))
    }

    /// `‖Σ_j [U_{E_j}, a] ⊗ κ_j‖`; equal to [`Self::lip_seminorm`] and much
    /// cheaper, since `[D, M_a] = Σ_j M_{[U_j, a]} ⊗ κ_j`.
    pub fn lip_seminorm_reduced(&self, a: &ComplexMatrix) -> Result<f64> {
        self.check_dim(a)?;
        lip_reduced(&self.rep, &self.cliff, a)
    }
}

pub(crate) fn lip_reduced(rep: &Irrep, cliff: &CliffordRep, a: &ComplexMatrix) -> Result<f64> {
    let coeffs: Vec<ComplexMatrix> = rep.generators().iter().map(|u| u.commutator(a)).collect();
    clifford_norm_in(cliff, &coeffs)
}

/// `L^D(a)` at level `n` with the `κ_γ = −I` spinors.
pub fn lip_seminorm(n: usize, a: &ComplexMatrix) -> Result<f64> {
    build_dirac(n, -1)?.lip_seminorm(a)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumCluster {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub predicted: f64,
    pub predicted_multiplicity: usize,
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub sign: i8,
    /// `s` in `D′ = s·D + 2`; `s = sign`, so `D′ = D + 2` for `κ_γ = +I`.
    pub orientation: i8,
    /// Eigenvalues of `D`, ascending.
    pub raw: Vec<f64>,
    /// Eigenvalues of `D′`, ascending.
    pub shifted: Vec<f64>,
    pub clusters: Vec<SpectrumCluster>,
    pub max_deviation: f64,
}

/// Closed-form spectrum of `D′` at level `n` as `(value, multiplicity)`,
/// ascending.
pub fn predicted_spectrum(n: usize) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = (1..=n).rev().map(|k| (-2.0 * k as f64, 2 * k)).collect();
    out.extend((1..=n).map(|k| (2.0 * k as f64, 2 * k)));
    out.push((2.0 * (n + 1) as f64, 2 * (n + 1)));
    out
}

fn expand(spec: &[(f64, usize)]) -> Vec<f64> {
    spec.iter()
        .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
        .collect()
}

/// Spectrum of `d` against the closed form, failing with `SpectrumMismatch`
/// beyond [`SPECTRUM_TOL`].
pub fn spectrum(d: &DiracOp) -> Result<SpectrumReport> {
    let report = spectrum_report(d)?;
    if !report.matches(SPECTRUM_TOL) {
        return Err(Error::SpectrumMismatch(report.max_deviation));
    }
    Ok(report)
}

impl SpectrumReport {
    /// Every cluster has the predicted multiplicity and every eigenvalue lies
    /// within `tol` of the closed form.
    pub fn matches(&self, tol: f64) -> bool {
        let predicted = predicted_spectrum(self.n);
        self.max_deviation <= tol
            && self.clusters.len() == predicted.len()
            && self
                .clusters
                .iter()
                .zip(&predicted)
                .all(|(c, p)| c.multiplicity == p.1 && c.predicted == p.0)
    }
}

pub fn spectrum_report(d: &DiracOp) -> Result<SpectrumReport> {
    let raw = herm_eig(d.matrix())?.values;
    let orientation = d.sign;
    let mut shifted: Vec<f64> = raw.iter().map(|&x| orientation as f64 * x + 2.0).collect();
    shifted.sort_by(f64::total_cmp);

    let predicted = predicted_spectrum(d.n);
    let expanded = expand(&predicted);
    let max_deviation = shifted
        .iter()
        .zip(&expanded)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let mut clusters: Vec<SpectrumCluster> = Vec::new();
    let mut start = 0;
    while start < shifted.len() {
        let mut end = start + 1;
        while end < shifted.len() && shifted[end] - shifted[end - 1] < 0.5 {
            end += 1;
        }
        let vals = &shifted[start..end];
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let (pv, pm) = predicted
            .iter()
            .copied()
            .min_by(|a, b| (a.0 - mean).abs().total_cmp(&(b.0 - mean).abs()))
            .unwrap();
        clusters.push(SpectrumCluster {
            eigenvalue: mean,
            multiplicity: vals.len(),
            predicted: pv,
            predicted_multiplicity: pm,
            deviation: vals.iter().map(|v| (v - pv).abs()).fold(0.0, f64::max),
        });
        start = end;
    }

    Ok(SpectrumReport {
        n: d.n,
        sign: d.sign,
        orientation,
        raw,
        shifted,
        clusters,
        max_deviation,
    })
}

/// Estimate of a supremum with the sampling that produced it.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SupEstimate {
    pub value: f64,
    pub samples: usize,
    pub refinements: usize,
}

/// Points of a Fibonacci lattice on the unit sphere.
pub fn fibonacci_sphere(count: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

fn normalize3(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Local pattern search on the unit sphere maximizing `f`.
pub(crate) fn refine_on_sphere(f: &dyn Fn([f64; 3]) -> f64, start: [f64; 3], step0: f64) -> ([f64; 3], f64, usize) {
    let mut x = start;
    let mut best = f(x);
    let mut step = step0;
    let mut iters = 0;
    while step > 1e-10 && iters < 400 {
        iters += 1;
        // Orthonormal tangent frame at x.
        let helper = if x[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let dot = helper[0] * x[0] + helper[1] * x[1] + helper[2] * x[2];
        let t1 = normalize3([helper[0] - dot * x[0], helper[1] - dot * x[1], helper[2] - dot * x[2]]);
        let t2 = [
            x[1] * t1[2] - x[2] * t1[1],
            x[2] * t1[0] - x[0] * t1[2],
            x[0] * t1[1] - x[1] * t1[0],
        ];
        let mut improved = false;
        for (a, b) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (0.7, 0.7), (-0.7, -0.7), (0.7, -0.7), (-0.7, 0.7)] {
            let y = normalize3([
                x[0] + step * (a * t1[0] + b * t2[0]),
                x[1] + step * (a * t1[1] + b * t2[1]),
                x[2] + step * (a * t1[2] + b * t2[2]),
            ]);
            let v = f(y);
            if v > best {
                best = v;
                x = y;
                improved = true;
                break;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, best, iters)
}

/// Number of grid directions used by [`ld_seminorm`].
pub const LD_DIRECTIONS: usize = 256;

/// `L_d(a) = sup{‖[U_X, a]‖ : ‖X‖ ≤ 1}` over a Fibonacci grid (plus the
/// coordinate axes) followed by local refinement of the best directions.
pub fn ld_seminorm(rep: &Irrep, a: &ComplexMatrix) -> SupEstimate {
    ld_seminorm_with(rep, a, LD_DIRECTIONS, Exec::Sequential)
}

pub fn ld_seminorm_with(rep: &Irrep, a: &ComplexMatrix, directions: usize, exec: Exec) -> SupEstimate {
    let comms: Vec<ComplexMatrix> = rep.generators().iter().map(|u| u.commutator(a)).collect();
    let eval = |x: [f64; 3]| -> f64 {
        let m = &(&comms[0].scale_re(x[0]) + &comms[1].scale_re(x[1])) + &comms[2].scale_re(x[2]);
        op_norm(&m)
    };
    let mut dirs = vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    dirs.extend(fibonacci_sphere(directions));
    let values = exec.map(&dirs, |&x| eval(x));
    let mut order: Vec<usize> = (0..dirs.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let step = (4.0 * std::f64::consts::PI / directions as f64).sqrt();
    let starts: Vec<[f64; 3]> = order.iter().take(4).map(|&i| dirs[i]).collect();
    let refined = exec.map(&starts, |&s| refine_on_sphere(&eval, s, step));
    let best_grid = values[order[0]];
    let (value, refinements) = refined
        .iter()
        .fold((best_grid, 0), |(v, r), &(_, rv, it)| (v.max(rv), r + it));
    SupEstimate {
        value,
        samples: dirs.len(),
        refinements,
    }
}

/// Geometric ladder of group parameters used by [`lell_estimate`].
pub fn lell_ladder() -> Vec<f64> {
    let (hi, lo, steps) = (std::f64::consts::PI, 1e-4_f64, 16);
    (0..steps)
        .map(|i| hi * (lo / hi).powf(i as f64 / (steps - 1) as f64))
        .collect()
}

/// Lower estimate of `L_ℓ(a) = sup ‖α_g(a) − a‖ / ℓ(g)` over sampled
/// `g = exp(tX)`. Sample `i` depends only on `(seed, i)`, so the estimate is
/// monotone in `samples`.
pub fn lell_estimate(rep: &Irrep, a: &ComplexMatrix, samples: usize, seed: u64) -> f64 {
    let basis = su2_basis();
    let ladder = lell_ladder();
    let vals = Exec::Sequential.map_range(samples.max(1), |i| {
        let mut rng = stream_rng(seed, i as u64);
        let x = random_unit_vector3(&mut rng);
        let lifted = SkewGenerator::new(&rep.lie(x)).expect("skew generator");
        let defining = SkewGenerator::new(&basis.element(x)).expect("skew generator");
        ladder
            .iter()
            .map(|&t| {
                let u = lifted.exp(t);
                let moved = &(&u * a) * &u.adjoint();
                let ell = length_function(&defining.exp(t)).expect("exp of su(2) is in SU(2)");
                if ell <= 0.0 {
                    0.0
                } else {
                    op_norm(&(&moved - a)) / ell
                }
            })
            .fold(0.0, f64::max)
    });
    vals.into_iter().fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CasimirCheck {
    /// `min_s ‖D − s·½(σ̃_C − α_C⊗I − I⊗σ_C)‖`.
    pub residual: f64,
    /// The minimizing `s`.
    pub matched_sign: i8,
    /// `‖I⊗σ_C + 3I‖`.
    pub spinor_casimir_residual: f64,
    /// `‖σ̃_C − α_C⊗I − I⊗σ_C − 2Σ_j α_{E_j}⊗σ_{E_j}‖`.
    pub decomposition_residual: f64,
}

pub fn check_casimir_identity(n: usize, sign: i8) -> Result<CasimirCheck> {
    let d = build_dirac(n, sign)?;
    let rep = d.rep();
    let sigma = su2_basis().generators;
    let alphas = basis_derivations(rep);
    let big = (n + 1) * (n + 1);
    let id_a = ComplexMatrix::identity(big);
    let id_s = ComplexMatrix::identity(2);

    let tilde: Vec<ComplexMatrix> = alphas
        .iter()
        .zip(&sigma)
        .map(|(a, s)| &kron(&a.matrix, &id_s) + &kron(&id_a, s))
        .collect();
    let tilde_c = tilde.iter().map(|t| t * t).reduce(|x, y| &x + &y).unwrap();
    let alpha_c = kron(&casimir_superop(rep), &id_s);
    let sigma_c_small = sigma.iter().map(|s| s * s).reduce(|x, y| &x + &y).unwrap();
    let sigma_c = kron(&id_a, &sigma_c_small);
    let combo = &(&tilde_c - &alpha_c) - &sigma_c;

    let cross = alphas
        .iter()
        .zip(&sigma)
        .map(|(a, s)| kron(&a.matrix, s))
        .reduce(|x, y| &x + &y)
        .unwrap()
        .scale_re(2.0);
    let decomposition_residual = op_norm(&(&combo - &cross));
    let spinor_casimir_residual =
        op_norm(&(&sigma_c + &ComplexMatrix::identity(2 * big).scale_re(3.0)));

    let half = combo.scale_re(0.5);
    let r_plus = op_norm(&(d.matrix() - &half));
    let r_minus = op_norm(&(d.matrix() + &half));
    let (residual, matched_sign) = if r_plus <= r_minus { (r_plus, 1) } else { (r_minus, -1) };
    Ok(CasimirCheck {
        residual,
        matched_sign,
        spinor_casimir_residual,
        decomposition_residual,
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SquareCheck {
    /// `‖D² − (−α_C⊗I + Σ_{j<k} α_{[E_j,E_k]}⊗κ_jκ_k)‖`.
    pub residual: f64,
    /// `‖Σ_{j<k} α_{[E_j,E_k]}⊗κ_jκ_k‖`.
    pub curvature_norm: f64,
}

/// Coordinates of `[E_j, E_k]` in the basis `E_l`.
fn bracket_coords(j: usize, k: usize) -> LieElement {
    let b = su2_basis();
    let br = b.generators[j].commutator(&b.generators[k]);
    let mut out = [0.0; 3];
    for (l, e) in b.generators.iter().enumerate() {
        out[l] = LieBasis::inner_product(&br, e);
    }
    out
}

pub fn check_square(n: usize, sign: i8) -> Result<SquareCheck> {
    let d = build_dirac(n, sign)?;
    let rep = d.rep();
    let cliff = d.cliff();
    let big = (n + 1) * (n + 1);
    let alpha_c = kron(&casimir_superop(rep), &ComplexMatrix::identity(2));
    let mut curvature = ComplexMatrix::zeros(2 * big, 2 * big);
    for j in 0..3 {
        for k in j + 1..3 {
            let der = crate::liealg::derivation(rep, bracket_coords(j, k));
            let kk = cliff.gamma(j) * cliff.gamma(k);
            curvature = &curvature + &kron(&der.matrix, &kk);
        }
    }
    let rhs = &curvature - &alpha_c;
    let sq = d.matrix() * d.matrix();
    Ok(SquareCheck {
        residual: op_norm(&(&sq - &rhs)),
        curvature_norm: op_norm(&curvature),
    })
}

/// `max_g ‖σ̃_g D σ̃_g^{−1} − D‖` over `trials` random group elements, with
/// `σ̃_g = α_g ⊗ g` (defining representation on spinors).
pub fn check_equivariance(n: usize, sign: i8, trials: usize, seed: u64) -> Result<f64> {
    let d = build_dirac(n, sign)?;
    let basis = su2_basis();
    let residuals: Result<Vec<f64>> = Exec::default()
        .map_range(trials, |i| {
            let mut rng = stream_rng(seed, i as u64);
            let x = random_unit_vector3(&mut rng);
            let t = rand::Rng::random_range(&mut rng, 0.0..std::f64::consts::TAU);
            equivariance_residual(&d, &basis, x, t)
        })
        .into_iter()
        .collect();
    Ok(residuals?.into_iter().fold(0.0, f64::max))
}

/// `‖σ̃_g D σ̃_g^{−1} − D‖` for `g = exp(tX)`.
pub fn equivariance_residual(d: &DiracOp, basis: &LieBasis, x: LieElement, t: f64) -> Result<f64> {
    let u = d.rep().group_element(x, t);
    let g = crate::numlin::expm_skew(&basis.element(x), t)?;
    let alpha = conjugation(d.rep(), &u)?;
    let tilde = kron(&alpha.matrix, &g);
    let moved = &(&tilde * d.matrix()) * &tilde.adjoint();
    Ok(op_norm(&(&moved - d.matrix())))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FirstOrderCheck {
    /// `max_{a,b} ‖[M_a, C M_{b*} C^{-1}]‖`.
    pub zeroth_order: f64,
    /// `max_{a,b} ‖[[D, M_a], C M_{b*} C^{-1}]‖`.
    pub first_order: f64,
    /// `s` with `C D = s D C`.
    pub cd_sign: i8,
    /// `‖C D − s D C‖` for that `s`.
    pub cd_residual: f64,
}

/// Matrix `K` of the charge conjugation `C(v) = K·conj(v)` on `B^n ⊗ S`,
/// `C(T ⊗ ψ) = T* ⊗ C_S ψ`.
pub fn charge_conjugation_matrix(n: usize) -> ComplexMatrix {
    let d = n + 1;
    let mut swap = ComplexMatrix::zeros(d * d, d * d);
    for r in 0..d {
        for c in 0..d {
            swap[(r * d + c, c * d + r)] = ONE;
        }
    }
    kron(&swap, &charge_conj_3d().matrix)
}

fn sparse_entries(m: &ComplexMatrix) -> Vec<(usize, usize, C64)> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let z = m[(r, c)];
            if z != ZERO {
                out.push((r, c, z));
            }
        }
    }
    out
}

/// Frobenius norm of `[X, J]` for sparse `J`; an upper bound on the operator
/// norm of the commutator.
fn commutator_fro_sparse(x: &ComplexMatrix, j: &[(usize, usize, C64)]) -> f64 {
    let n = x.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for &(r, c, z) in j {
        // (X J)[i, c] += X[i, r] z ; (J X)[r, k] += z X[c, k]
        for i in 0..n {
            out[(i, c)] += x[(i, r)] * z;
        }
        for k in 0..n {
            out[(r, k)] -= z * x[(c, k)];
        }
    }
    out.norm_fro()
}

/// Zeroth- and first-order conditions over all matrix-unit pairs, and the
/// sign relating `C D` and `D C`. Commutator norms are bounded above by
/// their Frobenius norms.
pub fn check_first_order(n: usize, sign: i8) -> Result<FirstOrderCheck> {
    let d = build_dirac(n, sign)?;
    let dim = n + 1;
    let k = charge_conjugation_matrix(n);
    let k_inv = k.adjoint();
    let unit = |idx: usize| {
        let mut e = ComplexMatrix::zeros(dim, dim);
        e[(idx / dim, idx % dim)] = ONE;
        e
    };
    let exec = Exec::default();
    let rights: Vec<Vec<(usize, usize, C64)>> = exec.map_range(dim * dim, |idx| {
        let b_star = unit(idx).adjoint();
        let j = &(&k * &d.left_mult(&b_star).conj()) * &k_inv;
        sparse_entries(&j)
    });
    let rows: Vec<(f64, f64)> = exec.map_range(dim * dim, |idx| {
        let m_a = d.left_mult(&unit(idx));
        let comm = d.matrix().commutator(&m_a);
        rights.iter().fold((0.0f64, 0.0f64), |(z, f), j| {
            (
                z.max(commutator_fro_sparse(&m_a, j)),
                f.max(commutator_fro_sparse(&comm, j)),
            )
        })
    });
    let (zeroth_order, first_order) = rows
        .into_iter()
        .fold((0.0f64, 0.0f64), |(a, b), (z, f)| (a.max(z), b.max(f)));

    let cd = &k * &d.matrix().conj();
    let dc = d.matrix() * &k;
    let r_plus = op_norm(&(&cd - &dc));
    let r_minus = op_norm(&(&cd + &dc));
    let (cd_residual, cd_sign) = if r_plus <= r_minus { (r_plus, 1) } else { (r_minus, -1) };
    Ok(FirstOrderCheck {
        zeroth_order,
        first_order,
        cd_sign,
        cd_residual,
    })
}

/// One line of an identity-suite report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckRow {
    pub fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            passed: value.is_finite() && value <= tolerance,
        }
    }
}

/// Tolerances of the identity suite.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteTolerances {
    pub identity: f64,
    pub spectrum: f64,
}

impl Default for SuiteTolerances {
    fn default() -> Self {
        Self {
            identity: 1e-9,
            spectrum: SPECTRUM_TOL,
        }
    }
}

/// Runs the full identity suite at level `n` for both spinor signs.
pub fn verify_suite(n: usize, seed: u64, tol: SuiteTolerances) -> Result<Vec<CheckRow>> {
    let mut rows = vec![CheckRow::new(
        "casimir_scalar",
        crate::liealg::casimir_image(&irrep(n))
            .max_abs_diff(&ComplexMatrix::identity(n + 1).scale_re(-((n * (n + 2)) as f64))),
        tol.identity,
    )];
    for sign in [-1i8, 1] {
        let tag = if sign < 0 { "minus" } else { "plus" };
        let d = build_dirac(n, sign)?;
        rows.push(CheckRow::new(format!("hermitian[{tag}]"), d.matrix().hermitian_residual(), tol.identity));
        rows.push(CheckRow::new(format!("trace[{tag}]"), d.matrix().trace().norm(), tol.identity));
        let report = spectrum_report(&d)?;
        // A multiplicity mismatch has no finite deviation.
        let dev = if report.matches(tol.spectrum) || report.max_deviation > tol.spectrum {
            report.max_deviation
        } else {
            f64::INFINITY
        };
        rows.push(CheckRow::new(format!("spectrum[{tag}]"), dev, tol.spectrum));
        let cas = check_casimir_identity(n, sign)?;
        rows.push(CheckRow::new(format!("casimir_identity[{tag}]"), cas.residual, tol.identity));
        let expected_sign = if cas.matched_sign == -sign { 0.0 } else { 1.0 };
        rows.push(CheckRow::new(format!("casimir_sign_is_minus_clifford_sign[{tag}]"), expected_sign, 0.0));
        rows.push(CheckRow::new(format!("casimir_decomposition[{tag}]"), cas.decomposition_residual, tol.identity));
        rows.push(CheckRow::new(format!("square[{tag}]"), check_square(n, sign)?.residual, tol.identity));
        rows.push(CheckRow::new(
            format!("equivariance[{tag}]"),
            check_equivariance(n, sign, 8, seed)?,
            tol.identity,
        ));
        let fo = check_first_order(n, sign)?;
        rows.push(CheckRow::new(format!("zeroth_order[{tag}]"), fo.zeroth_order, tol.identity));
        rows.push(CheckRow::new(format!("first_order[{tag}]"), fo.first_order, tol.identity));
        rows.push(CheckRow::new(format!("cd_commutes_up_to_sign[{tag}]"), fo.cd_residual, tol.identity));
    }
    Ok(rows)
}
