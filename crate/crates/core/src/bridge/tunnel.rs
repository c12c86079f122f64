//! Tunnel maps `θ^A = σ^A ⊗ I_S` and `θ^B = σ^B ⊗ I_S` between `B^m ⊗ S`
//! and the band-limited model `B^L ⊗ S` of the sphere's spinors.
//!
//! Coordinates: on `B^m ⊗ S` a spinor `η` is `vec(b)/sqrt(m+1)` (normalized
//! trace); on the sphere side a band-limited `f = σ^A_L(c)` has orthonormal
//! `L²` coordinates `w = Ber_L^{1/2} vec(c) / sqrt(L+1)`. The Dirac operator of
//! the sphere side is then the level-`L` matrix, since `Ber_L` commutes with
//! every derivation.

use serde::Serialize;

use crate::dirac::build_dirac;
use crate::error::{Error, Result};
use crate::numlin::{herm_eig, inner, kron, op_norm, vec_norm, ComplexMatrix, C64};
use crate::random::{random_complex_vector, stream_rng};
use crate::spheremodel::quadrature_grid;

use super::symbol_composition;

/// Band `|λ| ≤ LOW_BAND` of Dirac eigenvalues used for the contraction check.
pub const LOW_BAND: f64 = 4.0;

#[derive(Clone, Debug, Serialize)]
pub struct TunnelDiagnostics {
    pub m: usize,
    pub band: usize,
    /// `‖D^A θ^A − θ^A D^m‖`.
    pub intertwining_a: f64,
    /// `‖D^m θ^B − θ^B D^A‖`.
    pub intertwining_b: f64,
    pub norm_a: f64,
    pub norm_b: f64,
    /// `max |⟨θ^A η, ξ⟩ − ⟨η, θ^B ξ⟩|` over random unit pairs.
    pub adjointness: f64,
    /// `‖θ^B − (θ^A)*‖`.
    pub adjoint_matrix_residual: f64,
    /// Largest relative eigen-residual of a transported `D^m` eigenvector.
    pub transport: f64,
    pub transported: usize,
    /// `max ‖ξ − θ^A θ^B ξ‖` over unit `D^A` eigenvectors with `|λ| ≤ 4`.
    pub low_band_a: f64,
    /// `max ‖η − θ^B θ^A η‖` over unit `D^m` eigenvectors with `|λ| ≤ 4`.
    pub low_band_b: f64,
    /// Third tunnel-norm term on matched pairs `(θ^A η, η)`.
    pub matched_third_term: f64,
    /// `max D^A(θ^A η) / D^m(η)` over random `η`.
    pub graph_norm_ratio: f64,
}

#[derive(Clone, Debug)]
pub struct Tunnel {
    m: usize,
    band: usize,
    theta_a: ComplexMatrix,
    theta_b: ComplexMatrix,
    d_a: ComplexMatrix,
    d_m: ComplexMatrix,
    pub diagnostics: TunnelDiagnostics,
}

fn graph_norm(d: &ComplexMatrix, v: &[C64]) -> f64 {
    vec_norm(v) + vec_norm(&d.mul_vec(v))
}

fn sub(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Tunnel {
    pub fn theta_a(&self) -> &ComplexMatrix {
        &self.theta_a
    }

    pub fn theta_b(&self) -> &ComplexMatrix {
        &self.theta_b
    }

    pub fn dirac_a(&self) -> &ComplexMatrix {
        &self.d_a
    }

    pub fn dirac_m(&self) -> &ComplexMatrix {
        &self.d_m
    }

    pub fn level(&self) -> usize {
        self.m
    }

    pub fn band(&self) -> usize {
        self.band
    }

    /// `D^A(ξ) ∨ D^m(η) ∨ ε^{-1}‖ξ − θ^A η‖`.
    pub fn tunnel_norm(&self, xi: &[C64], eta: &[C64], eps: f64) -> f64 {
        let third = vec_norm(&sub(xi, &self.theta_a.mul_vec(eta))) / eps;
        graph_norm(&self.d_a, xi).max(graph_norm(&self.d_m, eta)).max(third)
    }
}

pub fn tunnel_maps(m: usize, band: usize) -> Result<Tunnel> {
    if band < m {
        return Err(Error::BandTooSmall { band, level: m });
    }
    if m == 0 {
        return Err(Error::InvalidArgument("tunnels need m ≥ 1".into()));
    }
    let (dm, dl) = ((m + 1) as f64, (band + 1) as f64);
    let grid = quadrature_grid(2 * band);
    let ber = symbol_composition(band, band, &grid)?;
    let eig = herm_eig(&ber)?;
    let inv_sqrt = eig.apply_fn(|x| C64::new(1.0 / x.max(f64::MIN_POSITIVE).sqrt(), 0.0));
    let up = symbol_composition(band, m, &grid)?;
    let down = symbol_composition(m, band, &grid)?;
    // w = Ber^{1/2} c / sqrt(L+1) with c = Ber^{-1} σ^B_L σ^A_m b, so
    // w = Ber^{-1/2} σ^B_L σ^A_m vec(b) / sqrt(L+1), and vec(b) = sqrt(m+1) η.
    let theta_a_small = (&inv_sqrt * &up).scale_re((dm / dl).sqrt());
    // c = sqrt(L+1) Ber^{-1/2} w and η = vec(σ^B_m σ^A_L c) / sqrt(m+1).
    let theta_b_small = (&down * &inv_sqrt).scale_re((dl / dm).sqrt());
    let id2 = ComplexMatrix::identity(2);
    let theta_a = kron(&theta_a_small, &id2);
    let theta_b = kron(&theta_b_small, &id2);

    let d_m = build_dirac(m, -1)?.matrix().clone();
    let d_a = build_dirac(band, -1)?.matrix().clone();

    let intertwining_a = op_norm(&(&(&d_a * &theta_a) - &(&theta_a * &d_m)));
    let intertwining_b = op_norm(&(&(&d_m * &theta_b) - &(&theta_b * &d_a)));
    let norm_a = op_norm(&theta_a);
    let norm_b = op_norm(&theta_b);
    let adjoint_matrix_residual = op_norm(&(&theta_b - &theta_a.adjoint()));

    let mut adjointness = 0.0f64;
    let mut graph_norm_ratio = 0.0f64;
    let mut matched_third_term = 0.0f64;
    for i in 0..16 {
        let mut rng = stream_rng(0x7e, i);
        let mut eta = random_complex_vector(theta_a.cols(), &mut rng);
        let mut xi = random_complex_vector(theta_a.rows(), &mut rng);
        let (ne, nx) = (vec_norm(&eta), vec_norm(&xi));
        eta.iter_mut().for_each(|z| *z /= ne);
        xi.iter_mut().for_each(|z| *z /= nx);
        let lhs = inner(&theta_a.mul_vec(&eta), &xi);
        let rhs = inner(&eta, &theta_b.mul_vec(&xi));
        adjointness = adjointness.max((lhs - rhs).norm());
        let image = theta_a.mul_vec(&eta);
        graph_norm_ratio = graph_norm_ratio.max(graph_norm(&d_a, &image) / graph_norm(&d_m, &eta));
        matched_third_term = matched_third_term.max(vec_norm(&sub(&image, &theta_a.mul_vec(&eta))));
    }

    let em = herm_eig(&d_m)?;
    let ea = herm_eig(&d_a)?;
    let mut transport = 0.0f64;
    let mut transported = 0;
    let mut low_band_b = 0.0f64;
    for (k, &lambda) in em.values.iter().enumerate() {
        let eta = em.vectors.column(k);
        let image = theta_a.mul_vec(&eta);
        let n = vec_norm(&image);
        if n > 1e-8 {
            transported += 1;
            let res: Vec<C64> = d_a
                .mul_vec(&image)
                .iter()
                .zip(&image)
                .map(|(a, b)| a - b * lambda)
                .collect();
            transport = transport.max(vec_norm(&res) / n);
        }
        if lambda.abs() <= LOW_BAND + 1e-9 {
            let back = theta_b.mul_vec(&image);
            low_band_b = low_band_b.max(vec_norm(&sub(&eta, &back)));
        }
    }
    let mut low_band_a = 0.0f64;
    for (k, &lambda) in ea.values.iter().enumerate() {
        if lambda.abs() <= LOW_BAND + 1e-9 {
            let xi = ea.vectors.column(k);
            let back = theta_a.mul_vec(&theta_b.mul_vec(&xi));
            low_band_a = low_band_a.max(vec_norm(&sub(&xi, &back)));
        }
    }

    let diagnostics = TunnelDiagnostics {
        m,
        band,
        intertwining_a,
        intertwining_b,
        norm_a,
        norm_b,
        adjointness,
        adjoint_matrix_residual,
        transport,
        transported,
        low_band_a,
        low_band_b,
        matched_third_term,
        graph_norm_ratio,
    };
    Ok(Tunnel {
        m,
        band,
        theta_a,
        theta_b,
        d_a,
        d_m,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::{ONE, ZERO};

    #[test]
    fn band_too_small() {
        assert!(matches!(tunnel_maps(3, 2), Err(Error::BandTooSmall { band: 2, level: 3 })));
    }

    #[test]
    fn unit_goes_to_constant() {
        // η = I ⊗ ψ; its image is the constant function ⊗ ψ, which in L²
        // coordinates is Ber^{1/2} vec(I) / sqrt(L+1) = vec(I)/sqrt(L+1).
        let t = tunnel_maps(2, 4).unwrap();
        let (dm, dl) = (3usize, 5usize);
        let mut eta = vec![ZERO; 2 * dm * dm];
        for i in 0..dm {
            eta[(i * dm + i) * 2] = C64::new(1.0 / (dm as f64).sqrt(), 0.0);
        }
        let image = t.theta_a().mul_vec(&eta);
        for (k, z) in image.iter().enumerate() {
            let (rc, s) = (k / 2, k % 2);
            let expect = if s == 0 && rc / dl == rc % dl { ONE / (dl as f64).sqrt() } else { ZERO };
            assert!((z - expect).norm() < 1e-10);
        }
    }

    #[test]
    fn diagnostics_small() {
        for m in 1..=3 {
            let t = tunnel_maps(m, m + 4).unwrap();
            let d = &t.diagnostics;
            assert!(d.intertwining_a < 1e-9 && d.intertwining_b < 1e-9, "{d:?}");
            assert!(d.norm_a <= 1.0 + 1e-9 && d.norm_b <= 1.0 + 1e-9);
            assert!((d.norm_a - 1.0).abs() < 1e-9);
            assert!(d.adjointness < 1e-9 && d.adjoint_matrix_residual < 1e-9);
            assert!(d.transport < 1e-9);
            assert_eq!(d.transported, 2 * (m + 1) * (m + 1));
            assert_eq!(d.matched_third_term, 0.0);
            assert!(d.graph_norm_ratio <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn low_band_contraction_values() {
        // On sector k the composite acts as λ_k(m) (zero when k > m); the band
        // |λ| ≤ 4 of D reaches sectors k ≤ 2.
        let a: Vec<f64> = (1..=4).map(|m| tunnel_maps(m, m + 4).unwrap().diagnostics.low_band_a).collect();
        let expect = [1.0, 0.9, 0.8, 1.0 - 2.0 / 7.0];
        assert!((a[0] - expect[0]).abs() < 1e-8);
        assert!((a[1] - expect[1]).abs() < 1e-8);
        assert!((a[2] - expect[2]).abs() < 1e-8);
        assert!((a[3] - expect[3]).abs() < 1e-8, "{a:?}");
        let b1 = tunnel_maps(1, 5).unwrap().diagnostics.low_band_b;
        assert!((b1 - 2.0 / 3.0).abs() < 1e-8);
    }

    #[test]
    fn tunnel_norm_matched_pair() {
        let t = tunnel_maps(1, 3).unwrap();
        let mut rng = stream_rng(5, 0);
        let eta = random_complex_vector(8, &mut rng);
        let xi = t.theta_a().mul_vec(&eta);
        let tn = t.tunnel_norm(&xi, &eta, 1e-3);
        assert!((tn - graph_norm(t.dirac_m(), &eta)).abs() < 1e-9);
    }
}
