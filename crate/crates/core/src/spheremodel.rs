//! Desk-scale model of `C(S²)`: points as rotations, coherent projectors,
//! exact quadrature and band-limited functions given as covariant symbols.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::dirac::refine_on_sphere;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::liealg::irrep;
use crate::numlin::{expm_skew, ComplexMatrix, C64, TAU_HERM};
use crate::liealg::su2_basis;

/// A point `R(θ,φ)·K` of `S² = SU(2)/K`.
#[derive(Clone, Debug)]
pub struct GroupPoint {
    theta: f64,
    phi: f64,
    rotation: ComplexMatrix,
}

pub fn group_point(theta: f64, phi: f64) -> GroupPoint {
    let mut t = theta.rem_euclid(TAU);
    let mut p = phi;
    if t > PI {
        t = TAU - t;
        p += PI;
    }
    let p = p.rem_euclid(TAU);
    let b = su2_basis();
    let rotation = &expm_skew(&b.generators[2], p / 2.0).expect("E3 is skew")
        * &expm_skew(&b.generators[1], t / 2.0).expect("E2 is skew");
    GroupPoint {
        theta: t,
        phi: p,
        rotation,
    }
}

impl GroupPoint {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The cached `R(θ,φ) ∈ SU(2)`.
    pub fn rotation(&self) -> &ComplexMatrix {
        &self.rotation
    }

    /// Unit vector in `R³` with the same coordinates.
    pub fn bloch(&self) -> [f64; 3] {
        let s = self.theta.sin();
        [s * self.phi.cos(), s * self.phi.sin(), self.theta.cos()]
    }

    pub fn from_bloch(v: [f64; 3]) -> GroupPoint {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let z = (v[2] / n).clamp(-1.0, 1.0);
        group_point(z.acos(), v[1].atan2(v[0]))
    }

    /// `g·x` for `g ∈ SU(2)` given as a 2×2 matrix.
    pub fn act(&self, g: &ComplexMatrix) -> GroupPoint {
        let p = coherent_projector_from_rotation(&(g * &self.rotation));
        let off = p[(0, 1)];
        GroupPoint::from_bloch([2.0 * off.re, 2.0 * off.im, (p[(0, 0)] - p[(1, 1)]).re])
    }
}

fn coherent_projector_from_rotation(r: &ComplexMatrix) -> ComplexMatrix {
    let v = r.column(0);
    ComplexMatrix::outer(&v, &v)
}

fn binomial_sqrt(n: usize, k: usize) -> f64 {
    let mut acc = 0.0f64;
    for i in 0..k {
        acc += ((n - i) as f64).ln() - ((i + 1) as f64).ln();
    }
    (0.5 * acc).exp()
}

/// Coherent vector `U^n_{R(θ,φ)} ξ` in the weight basis.
pub fn coherent_vector(n: usize, p: &GroupPoint) -> Vec<C64> {
    let (c, s) = ((p.theta / 2.0).cos(), (p.theta / 2.0).sin());
    (0..=n)
        .map(|k| {
            let mag = binomial_sqrt(n, k) * c.powi((n - k) as i32) * s.powi(k as i32);
            C64::from_polar(mag, p.phi * (n as f64 - 2.0 * k as f64) / 2.0)
        })
        .collect()
}

/// `α_{R}(P) = U_R P U_R^{-1}` at level `n`.
pub fn coherent_projector(n: usize, p: &GroupPoint) -> ComplexMatrix {
    let v = coherent_vector(n, p);
    ComplexMatrix::outer(&v, &v)
}

/// Product rule: Gauss–Legendre in `cos θ` times uniform `φ`, normalized to
/// total weight 1.
#[derive(Clone, Debug, Serialize)]
pub struct QuadratureGrid {
    pub degree: usize,
    pub cos_nodes: Vec<f64>,
    pub cos_weights: Vec<f64>,
    pub phi_nodes: Vec<f64>,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; count];
    let mut weights = vec![0.0; count];
    for i in 0..count.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (count as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=count {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if count == 0 { 1.0 } else { p1 };
            let pm = if count == 1 { 1.0 } else { p0 };
            dp = count as f64 * (x * p - pm) / (x * x - 1.0);
            if count == 1 {
                dp = 1.0;
            }
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        if count == 1 {
            x = 0.0;
            dp = 1.0;
        }
        nodes[i] = x;
        nodes[count - 1 - i] = -x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[count - 1 - i] = w;
    }
    (nodes, weights)
}

pub fn quadrature_grid(degree: usize) -> QuadratureGrid {
    let n_theta = (degree + 2).div_ceil(2);
    let n_phi = degree + 1;
    let (cos_nodes, w) = gauss_legendre(n_theta);
    QuadratureGrid {
        degree,
        cos_nodes,
        cos_weights: w.iter().map(|x| x / 2.0).collect(),
        phi_nodes: (0..n_phi).map(|j| TAU * j as f64 / n_phi as f64).collect(),
    }
}

impl QuadratureGrid {
    /// Nodes with their weights.
    pub fn points(&self) -> Vec<(GroupPoint, f64)> {
        let wphi = 1.0 / self.phi_nodes.len() as f64;
        let mut out = Vec::with_capacity(self.len());
        for (x, w) in self.cos_nodes.iter().zip(&self.cos_weights) {
            for &phi in &self.phi_nodes {
                out.push((group_point(x.clamp(-1.0, 1.0).acos(), phi), w * wphi));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.cos_nodes.len() * self.phi_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn integrate(&self, f: impl Fn(&GroupPoint) -> C64) -> C64 {
        self.points().iter().map(|(p, w)| f(p) * *w).sum()
    }
}

/// Coherent vectors of one level at every node of a grid.
#[derive(Clone, Debug)]
pub struct CoherentFamily {
    pub level: usize,
    pub weights: Vec<f64>,
    pub vectors: Vec<Vec<C64>>,
}

pub fn coherent_family(level: usize, grid: &QuadratureGrid) -> CoherentFamily {
    let pts = grid.points();
    CoherentFamily {
        level,
        weights: pts.iter().map(|p| p.1).collect(),
        vectors: pts.iter().map(|p| coherent_vector(level, &p.0)).collect(),
    }
}

/// `v* B v`.
pub(crate) fn expectation(b: &ComplexMatrix, v: &[C64]) -> C64 {
    b.quadratic_form(v)
}

/// A function `x ↦ tr(b·α_x(P^L))` on the sphere.
#[derive(Clone, Debug)]
pub struct BandLimited {
    level: usize,
    matrix: ComplexMatrix,
}

pub fn symbol_covariant(b: &ComplexMatrix) -> Result<BandLimited> {
    if !b.is_square() || b.rows() == 0 {
        return Err(Error::DimensionMismatch(format!("{}x{} is not a level matrix", b.rows(), b.cols())));
    }
    Ok(BandLimited {
        level: b.rows() - 1,
        matrix: b.clone(),
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ContSeminorm {
    pub value: f64,
    pub grid_max: f64,
    pub resolution: usize,
    /// `(value − grid_max) / value`: how much the grid alone missed.
    pub refinement_gain: f64,
}

pub const DEFAULT_RESOLUTION: usize = 64;

impl BandLimited {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn eval(&self, p: &GroupPoint) -> C64 {
        expectation(&self.matrix, &coherent_vector(self.level, p))
    }

    fn derivative_matrices(&self) -> Result<[ComplexMatrix; 3]> {
        let r = self.matrix.hermitian_residual();
        if r > TAU_HERM {
            return Err(Error::NotSelfAdjoint(r));
        }
        let rep = irrep(self.level);
        let g = rep.generators();
        Ok([g[0].commutator(&self.matrix), g[1].commutator(&self.matrix), g[2].commutator(&self.matrix)])
    }

    /// `‖df_x‖ = sqrt(Σ_j (α_{E_j} f)(x)²)`.
    pub fn grad_norm(&self, p: &GroupPoint) -> Result<f64> {
        let ders = self.derivative_matrices()?;
        Ok(grad_from(&ders, &coherent_vector(self.level, p)))
    }

    /// `sup_x ‖df_x‖` on a `resolution × 2·resolution` grid, refined locally.
    pub fn cont_seminorm(&self, resolution: usize) -> Result<ContSeminorm> {
        self.cont_seminorm_with(resolution, Exec::default())
    }

    pub fn cont_seminorm_with(&self, resolution: usize, exec: Exec) -> Result<ContSeminorm> {
        let ders = self.derivative_matrices()?;
        let level = self.level;
        let res = resolution.max(2);
        let eval_at = |x: [f64; 3]| grad_from(&ders, &coherent_vector(level, &GroupPoint::from_bloch(x)));
        let cells: Vec<(usize, usize)> = (0..res).flat_map(|i| (0..2 * res).map(move |j| (i, j))).collect();
        let values = exec.map(&cells, |&(i, j)| {
            let p = group_point(PI * (i as f64 + 0.5) / res as f64, PI * j as f64 / res as f64);
            (p.bloch(), eval_at(p.bloch()))
        });
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[b].1.total_cmp(&values[a].1));
        let grid_max = values[order[0]].1;
        let starts: Vec<[f64; 3]> = order.iter().take(8).map(|&k| values[k].0).collect();
        let refined = exec.map(&starts, |&x| refine_on_sphere(&eval_at, x, PI / res as f64).1);
        let value = refined.iter().copied().fold(grid_max, f64::max);
        let refinement_gain = if value > 0.0 { (value - grid_max) / value } else { 0.0 };
        Ok(ContSeminorm {
            value,
            grid_max,
            resolution: res,
            refinement_gain,
        })
    }
}

fn grad_from(ders: &[ComplexMatrix; 3], v: &[C64]) -> f64 {
    ders.iter()
        .map(|d| expectation(d, v).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
