//! Bridges from the sphere to the fuzzy spheres: contravariant symbols, the
//! Berezin transform, bridge norms, reach/height estimates, the linking
//! operator and the tunnel maps.

pub mod ascent;
pub mod linking;
pub mod tunnel;

use std::f64::consts::PI;
use std::time::Instant;

use serde::Serialize;

use crate::dirac::{build_dirac, lip_reduced, refine_on_sphere, CheckRow};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::liealg::{conjugation, irrep, isotypic_projectors, Irrep, Superop, SuperopKind};
use crate::numlin::{op_norm, ComplexMatrix, C64, I};
use crate::random::{random_hermitian, random_unit_vector3, stream_rng};
use crate::spheremodel::{
    coherent_family, coherent_vector, group_point, quadrature_grid, symbol_covariant, BandLimited,
    GroupPoint, QuadratureGrid, DEFAULT_RESOLUTION,
};

pub use ascent::{ascend, traceless, AscentResult};
pub use linking::{demo_instance, linking_dirac, LinkingOperator, LinkingTerms};
pub use tunnel::{tunnel_maps, Tunnel, TunnelDiagnostics};

/// Extra band used on the continuous side of bridge computations.
pub const WORK_BAND: usize = 4;

/// Grid resolution for bridge norms inside ascent loops.
pub const INNER_RESOLUTION: usize = 12;
/// Grid resolution for seminorm normalization inside ascent loops.
pub const INNER_SEMINORM_RESOLUTION: usize = 16;
/// Grid resolution for final bridge-norm evaluations.
pub const FINAL_RESOLUTION: usize = 32;

/// Level-`m` bridge with pivot `x ↦ α_x(P^m)`.
#[derive(Clone, Debug)]
pub struct Bridge {
    m: usize,
    grid: QuadratureGrid,
}

impl Bridge {
    pub fn new(m: usize) -> Self {
        Self {
            m,
            grid: quadrature_grid(2 * m + WORK_BAND),
        }
    }

    pub fn level(&self) -> usize {
        self.m
    }

    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    pub fn pivot(&self, p: &GroupPoint) -> ComplexMatrix {
        crate::spheremodel::coherent_projector(self.m, p)
    }
}

/// `vec(σ^B_out ∘ σ^A_in)`: the `(out+1)² × (in+1)²` matrix of
/// `c ↦ (out+1) Σ_x w_x tr(c P^in_x) P^out_x`.
pub fn symbol_composition(out: usize, input: usize, grid: &QuadratureGrid) -> Result<ComplexMatrix> {
    if grid.degree < out + input {
        return Err(Error::DegreeOverflow {
            have: grid.degree,
            need: out + input,
        });
    }
    let fo = coherent_family(out, grid);
    let fi = coherent_family(input, grid);
    let (d_o, d_i) = (out + 1, input + 1);
    let mut m = ComplexMatrix::zeros(d_o * d_o, d_i * d_i);
    let scale = (out + 1) as f64;
    for ((vo, vi), w) in fo.vectors.iter().zip(&fi.vectors).zip(&fo.weights) {
        // vec(P)[r·d + c] = v_r conj(v_c); σ^A_in(c) = Σ c_rc conj(v_r) v_c.
        let po: Vec<C64> = (0..d_o * d_o).map(|k| vo[k / d_o] * vo[k % d_o].conj()).collect();
        let pi: Vec<C64> = (0..d_i * d_i).map(|k| vi[k / d_i].conj() * vi[k % d_i]).collect();
        let s = scale * w;
        for (r, a) in po.iter().enumerate() {
            let a = *a * s;
            for (c, b) in pi.iter().enumerate() {
                m[(r, c)] += a * b;
            }
        }
    }
    Ok(m)
}

/// `σ^B(f) = (m+1) Σ_x w_x f(x) α_x(P^m)` on a grid of degree `≥ L + m`.
pub fn symbol_contravariant(f: &BandLimited, m: usize) -> Result<ComplexMatrix> {
    symbol_contravariant_on(f, m, &quadrature_grid(f.level() + m))
}

pub fn symbol_contravariant_on(f: &BandLimited, m: usize, grid: &QuadratureGrid) -> Result<ComplexMatrix> {
    let k = symbol_composition(m, f.level(), grid)?;
    let d = m + 1;
    ComplexMatrix::from_vec(d, d, k.mul_vec(f.matrix().data()))
}

#[derive(Clone, Debug, Serialize)]
pub struct BerezinSpectrum {
    pub m: usize,
    /// `λ_k` for sectors `k = 0..=m`.
    pub eigenvalues: Vec<f64>,
    pub max_variance: f64,
    pub conjugation_residual: f64,
}

impl BerezinSpectrum {
    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `max_k (1 − λ_k)`.
    pub fn gap(&self) -> f64 {
        self.eigenvalues.iter().map(|l| 1.0 - l).fold(0.0, f64::max)
    }
}

pub const SECTOR_VARIANCE_TOL: f64 = 1e-10;

/// `σ^B ∘ σ^A` on `B^m` with its sector eigenvalues.
pub fn berezin_map(m: usize) -> Result<(Superop, BerezinSpectrum)> {
    if m == 0 {
        return Err(Error::InvalidArgument("Berezin transform needs m ≥ 1".into()));
    }
    let ber = symbol_composition(m, m, &quadrature_grid(2 * m))?;
    let rep = irrep(m);
    let conjugation_residual = (0..10)
        .map(|i| {
            let mut rng = stream_rng(0xbe, i);
            let g = rep.group_element(random_unit_vector3(&mut rng), 0.37 + i as f64);
            let a = conjugation(&rep, &g).expect("lifted group element is unitary").matrix;
            op_norm(&(&(&ber * &a) - &(&a * &ber)))
        })
        .fold(0.0, f64::max);
    let mut eigenvalues = Vec::with_capacity(m + 1);
    let mut max_variance = 0.0f64;
    for (k, proj) in isotypic_projectors(m)? {
        let dim = (2 * k + 1) as f64;
        let restricted = &(&proj.matrix * &ber) * &proj.matrix;
        let lambda = restricted.trace().re / dim;
        let dev = &restricted - &proj.matrix.scale_re(lambda);
        let variance = dev.norm_fro().powi(2) / dim;
        if variance > SECTOR_VARIANCE_TOL {
            return Err(Error::SectorNotScalar { sector: k, variance });
        }
        max_variance = max_variance.max(variance);
        eigenvalues.push(lambda);
    }
    Ok((
        Superop::new(m, ber, SuperopKind::Berezin),
        BerezinSpectrum {
            m,
            eigenvalues,
            max_variance,
            conjugation_residual,
        },
    ))
}

/// `‖f(x)·P_x − P_x·b‖ = ‖(f(x) − b*) v_x‖` for the coherent vector `v_x`.
fn bridge_pointwise(f: &BandLimited, b_adj: &ComplexMatrix, m: usize, x: &GroupPoint) -> f64 {
    let fx = f.eval(x);
    let v = coherent_vector(m, x);
    let bv = b_adj.mul_vec(&v);
    v.iter()
        .zip(&bv)
        .map(|(a, c)| (fx * a - c).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `sup_x ‖f(x)·α_x(P^m) − α_x(P^m)·b‖` on a `res × 2·res` grid with local
/// refinement of the best nodes.
pub fn bridge_norm(m: usize, f: &BandLimited, b: &ComplexMatrix) -> Result<f64> {
    bridge_norm_at(m, f, b, FINAL_RESOLUTION)
}

pub fn bridge_norm_at(m: usize, f: &BandLimited, b: &ComplexMatrix, resolution: usize) -> Result<f64> {
    if b.rows() != m + 1 || b.cols() != m + 1 {
        return Err(Error::DimensionMismatch(format!("{}x{} element at level {m}", b.rows(), b.cols())));
    }
    let b_adj = b.adjoint();
    let res = resolution.max(2);
    let eval = |x: [f64; 3]| bridge_pointwise(f, &b_adj, m, &GroupPoint::from_bloch(x));
    let mut nodes: Vec<([f64; 3], f64)> = (0..res)
        .flat_map(|i| (0..2 * res).map(move |j| (i, j)))
        .map(|(i, j)| {
            let p = group_point(PI * (i as f64 + 0.5) / res as f64, PI * j as f64 / res as f64).bloch();
            (p, eval(p))
        })
        .collect();
    nodes.sort_by(|a, b| b.1.total_cmp(&a.1));
    let best = nodes
        .iter()
        .take(3)
        .map(|&(x, _)| refine_on_sphere(&eval, x, PI / res as f64).1)
        .fold(nodes[0].1, f64::max);
    Ok(best)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReachEstimate {
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub restarts: usize,
}

fn seed_candidates(rep: &Irrep) -> Vec<ComplexMatrix> {
    let h = rep.generator(2).scale(-I);
    let quad = &h * &h;
    vec![h, rep.highest_projector().clone(), quad]
}

/// Lower bounds of the two reaches of the level-`m` bridge.
///
/// `γ̂^B`: self-adjoint `b` with `L^D(b) = 1`, scored by
/// `bridge_norm(σ^A(b), b)`. `γ̂^A`: band-limited `f` at level `m + 4` with
/// `‖df‖_∞ = 1`, scored by `bridge_norm(f, σ^B(f))`.
pub fn reach_estimate(m: usize, budget: usize, seed: u64) -> Result<ReachEstimate> {
    reach_estimate_with(m, budget, seed, Exec::default())
}

pub fn reach_estimate_with(m: usize, budget: usize, seed: u64, exec: Exec) -> Result<ReachEstimate> {
    if m == 0 {
        return Err(Error::InvalidArgument("bridges need m ≥ 1".into()));
    }
    let d = build_dirac(m, -1)?;
    let rep = d.rep().clone();
    let cliff = d.cliff().clone();
    let normalize_b = |b: &ComplexMatrix| {
        let l = lip_reduced(&rep, &cliff, b).ok()?;
        (l > 1e-12).then(|| b.scale_re(1.0 / l))
    };
    let objective_b = |b: &ComplexMatrix, res: usize| {
        let f = symbol_covariant(b).expect("square");
        bridge_norm_at(m, &f, b, res).expect("level matches")
    };
    let b_run = ascend(
        m + 1,
        budget,
        seed,
        &seed_candidates(&rep),
        normalize_b,
        |b| objective_b(b, INNER_RESOLUTION),
        exec,
    );
    let gamma_b = if b_run.value > 0.0 {
        objective_b(&b_run.argmax, FINAL_RESOLUTION).max(b_run.value)
    } else {
        0.0
    };

    let level = m + WORK_BAND;
    let rep_a = irrep(level);
    let grid = quadrature_grid(level + m);
    let to_b = symbol_composition(m, level, &grid)?;
    let normalize_a = |c: &ComplexMatrix, res: usize| {
        let f = symbol_covariant(c).ok()?;
        let s = f.cont_seminorm_with(res, Exec::Sequential).ok()?.value;
        (s > 1e-12).then(|| c.scale_re(1.0 / s))
    };
    let objective_a = |c: &ComplexMatrix, res: usize| {
        let f = symbol_covariant(c).expect("square");
        let b = ComplexMatrix::from_vec(m + 1, m + 1, to_b.mul_vec(c.data())).expect("shape");
        bridge_norm_at(m, &f, &b, res).expect("level matches")
    };
    let a_run = ascend(
        level + 1,
        budget,
        seed ^ 0xa5a5,
        &seed_candidates(&rep_a),
        |c| normalize_a(c, INNER_SEMINORM_RESOLUTION),
        |c| objective_a(c, INNER_RESOLUTION),
        exec,
    );
    // Renormalize the winner with the accurate seminorm; a finer sup can only
    // raise the seminorm, keeping the estimate a lower bound.
    let gamma_a = match normalize_a(&a_run.argmax, DEFAULT_RESOLUTION) {
        Some(c) if a_run.value > 0.0 => objective_a(&c, FINAL_RESOLUTION),
        _ => 0.0,
    };
    Ok(ReachEstimate {
        gamma_a,
        gamma_b,
        restarts: a_run.restarts + b_run.restarts,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HeightEstimate {
    pub delta_hat: f64,
    /// `max_k (1 − λ_k)·‖b_k‖` for the best `b` split into sectors.
    pub surrogate: f64,
    pub restarts: usize,
}

/// Lower bound of `sup{‖b − σ^B σ^A b‖ : L^D(b) ≤ 1}`.
pub fn height_estimate(m: usize, budget: usize, seed: u64) -> Result<HeightEstimate> {
    height_estimate_with(m, budget, seed, Exec::default())
}

pub fn height_estimate_with(m: usize, budget: usize, seed: u64, exec: Exec) -> Result<HeightEstimate> {
    let (ber, spec) = berezin_map(m)?;
    let d = build_dirac(m, -1)?;
    let rep = d.rep().clone();
    let cliff = d.cliff().clone();
    let defect = &ComplexMatrix::identity((m + 1) * (m + 1)) - &ber.matrix;
    let defect = Superop::new(m, defect, SuperopKind::Other);
    let run = ascend(
        m + 1,
        budget,
        seed,
        &seed_candidates(&rep),
        |b| {
            let l = lip_reduced(&rep, &cliff, b).ok()?;
            (l > 1e-12).then(|| b.scale_re(1.0 / l))
        },
        |b| op_norm(&defect.apply(b)),
        exec,
    );
    let surrogate = isotypic_projectors(m)?
        .iter()
        .map(|(k, p)| (1.0 - spec.eigenvalues[*k]) * op_norm(&p.apply(&run.argmax)))
        .fold(0.0, f64::max);
    Ok(HeightEstimate {
        delta_hat: run.value,
        surrogate,
        restarts: run.restarts,
    })
}

/// Largest ratios `‖dσ^A(b)‖_∞ / L^D(b)` and `L^D(σ^B f) / ‖df‖_∞` over
/// random self-adjoint inputs, with the largest relative grid error of the
/// sphere sups.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Compatibility {
    pub covariant_ratio: f64,
    pub contravariant_ratio: f64,
    pub grid_error: f64,
}

pub fn compatibility(m: usize, samples: usize, seed: u64, resolution: usize) -> Result<Compatibility> {
    let d = build_dirac(m, -1)?;
    let level = m + WORK_BAND;
    let grid = quadrature_grid(level + m);
    let to_b = symbol_composition(m, level, &grid)?;
    let rows: Result<Vec<(f64, f64, f64)>> = Exec::default()
        .map_range(samples, |i| {
            let mut rng = stream_rng(seed, i as u64);
            let b = random_hermitian(m + 1, &mut rng);
            let cov = symbol_covariant(&b)?.cont_seminorm_with(resolution, Exec::Sequential)?;
            let r1 = cov.value / d.lip_seminorm_reduced(&b)?;
            let c = random_hermitian(level + 1, &mut rng);
            let f = symbol_covariant(&c)?.cont_seminorm_with(resolution, Exec::Sequential)?;
            let sb = ComplexMatrix::from_vec(m + 1, m + 1, to_b.mul_vec(c.data()))?;
            let r2 = d.lip_seminorm_reduced(&sb)? / f.value;
            Ok((r1, r2, cov.refinement_gain.max(f.refinement_gain)))
        })
        .into_iter()
        .collect();
    let rows = rows?;
    Ok(Compatibility {
        covariant_ratio: rows.iter().map(|r| r.0).fold(0.0, f64::max),
        contravariant_ratio: rows.iter().map(|r| r.1).fold(0.0, f64::max),
        grid_error: rows.iter().map(|r| r.2).fold(0.0, f64::max),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    pub m: usize,
    pub berezin: Vec<f64>,
    pub lambda_min: f64,
    pub gap: f64,
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub delta_hat: f64,
    pub delta_surrogate: f64,
    /// `max(γ̂^A, γ̂^B, δ̂)`.
    pub length_bound: f64,
    /// `1 − ratio` for the two symbol-compatibility inequalities.
    pub covariant_margin: f64,
    pub contravariant_margin: f64,
    pub runtime_ms: u128,
}

/// Samples and resolution of the compatibility margins in a report.
pub const MARGIN_SAMPLES: usize = 4;

pub fn bridge_report(m: usize, budget: usize, seed: u64) -> Result<BridgeReport> {
    let start = Instant::now();
    let (_, spec) = berezin_map(m)?;
    let reach = reach_estimate(m, budget, seed)?;
    let height = height_estimate(m, budget, seed)?;
    let compat = compatibility(m, MARGIN_SAMPLES, seed, 24)?;
    Ok(BridgeReport {
        m,
        lambda_min: spec.lambda_min(),
        gap: spec.gap(),
        berezin: spec.eigenvalues,
        gamma_a: reach.gamma_a,
        gamma_b: reach.gamma_b,
        delta_hat: height.delta_hat,
        delta_surrogate: height.surrogate,
        length_bound: reach.gamma_a.max(reach.gamma_b).max(height.delta_hat),
        covariant_margin: (1.0 - compat.covariant_ratio).max(0.0),
        contravariant_margin: (1.0 - compat.contravariant_ratio).max(0.0),
        runtime_ms: start.elapsed().as_millis(),
    })
}

/// Reports for `m = 1..=m_max`, computed level by level.
pub fn convergence_study(m_max: usize, budget: usize, seed: u64) -> Result<Vec<BridgeReport>> {
    if m_max < 2 {
        return Err(Error::InvalidArgument("convergence study needs m_max ≥ 2".into()));
    }
    (1..=m_max).map(|m| bridge_report(m, budget, seed)).collect()
}

/// Relative band within which `γ̂` may rise between consecutive levels.
pub const REACH_NOISE: f64 = 0.05;

/// Trend checks over a study: strictly decreasing gap and `δ̂`, `γ̂`
/// nonincreasing up to [`REACH_NOISE`].
pub fn trend_checks(reports: &[BridgeReport]) -> Vec<CheckRow> {
    let worst = |f: &dyn Fn(&BridgeReport, &BridgeReport) -> f64| {
        reports.windows(2).map(|w| f(&w[0], &w[1])).fold(f64::NEG_INFINITY, f64::max)
    };
    // A strict decrease needs every step negative; report the worst step,
    // floored just above 0 when it fails.
    let strict = |rise: f64| if rise < 0.0 { 0.0 } else { rise.max(f64::MIN_POSITIVE) };
    vec![
        CheckRow::new("gap_strictly_decreasing", strict(worst(&|a, b| b.gap - a.gap)), 0.0),
        CheckRow::new("delta_strictly_decreasing", strict(worst(&|a, b| b.delta_hat - a.delta_hat)), 0.0),
        CheckRow::new(
            "gamma_a_nonincreasing",
            worst(&|a, b| b.gamma_a - a.gamma_a * (1.0 + REACH_NOISE)).max(0.0),
            0.0,
        ),
        CheckRow::new(
            "gamma_b_nonincreasing",
            worst(&|a, b| b.gamma_b - a.gamma_b * (1.0 + REACH_NOISE)).max(0.0),
            0.0,
        ),
    ]
}
