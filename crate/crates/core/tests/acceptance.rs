//! Acceptance suite: one PASS/FAIL line per criterion, every tolerance pinned
//! below. Runs without the test harness so the lines always print; exits 1
//! if any criterion fails.

use std::time::{Duration, Instant};

use fuzzy_dirac::bridge::linking::demo_instance;
use fuzzy_dirac::bridge::tunnel::tunnel_maps;
use fuzzy_dirac::bridge::{berezin_map, compatibility, convergence_study, REACH_NOISE};
use fuzzy_dirac::clifford::clifford_norm;
use fuzzy_dirac::dirac::{
    build_dirac, check_casimir_identity, check_equivariance, check_first_order, check_square, ld_seminorm,
    lell_estimate, spectrum_report,
};
use fuzzy_dirac::liealg::{casimir_image, irrep};
use fuzzy_dirac::numlin::{herm_eig, ComplexMatrix};
use fuzzy_dirac::random::{random_hermitian, random_unit_vector3, stream_rng};
use fuzzy_dirac::spheremodel::quadrature_grid;
use fuzzy_dirac::C64;
use rand::Rng;

const SEED: u64 = 1;

const TOL_SPECTRUM: f64 = 1e-9;
const LIMIT_SPECTRUM: Duration = Duration::from_secs(60);
const TOL_CASIMIR: f64 = 1e-10;
const TOL_DCAS: f64 = 1e-10;
const TOL_SQUARE: f64 = 1e-10;
const SANDWICH_LD: f64 = 1e-4;
const SANDWICH_UPPER: f64 = 1e-3;
const SANDWICH_LELL: f64 = 1e-6;
const SANDWICH_SAMPLES: usize = 100;
const LELL_SAMPLES: usize = 24;
const TOL_GOLDEN: f64 = 1e-9;
const TOL_SPINOR: f64 = 1e-9;
const SPINOR_SAMPLES: usize = 50;
const TOL_STRUCTURE: f64 = 1e-9;
const TOL_BEREZIN: f64 = 1e-12;
const COMPAT_SLACK: f64 = 1e-6;
const COMPAT_SAMPLES: usize = 50;
const COMPAT_RESOLUTION: usize = 32;
const STUDY_M_MAX: usize = 8;
const STUDY_BUDGET: usize = 2;
const LIMIT_STUDY: Duration = Duration::from_secs(600);
const TOL_LINKING: f64 = 1e-10;
const LINKING_PAIRS: usize = 50;
const TOL_TUNNEL: f64 = 1e-9;
const TUNNEL_BAND: usize = 4;
const TOL_CLUSTER: f64 = 1e-6;
const TOL_QUADRATURE: f64 = 1e-12;
const QUADRATURE_DEGREE: usize = 16;

/// Clauses of one criterion plus information lines.
#[derive(Default)]
struct Report {
    clauses: Vec<(String, bool)>,
    info: Vec<String>,
}

impl Report {
    fn clause(&mut self, text: impl Into<String>, ok: bool) {
        self.clauses.push((text.into(), ok));
    }

    fn info(&mut self, text: impl Into<String>) {
        self.info.push(text.into());
    }

    fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.1)
    }
}

fn max_abs_dev(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// `{±2k ×2k : k ≤ n} ∪ {2(n+1) ×2(n+1)}`, ascending, with multiplicity.
fn closed_form(n: usize) -> Vec<f64> {
    let mut out = Vec::new();
    for k in (1..=n).rev() {
        out.extend(std::iter::repeat_n(-2.0 * k as f64, 2 * k));
    }
    for k in 1..=n {
        out.extend(std::iter::repeat_n(2.0 * k as f64, 2 * k));
    }
    out.extend(std::iter::repeat_n(2.0 * (n + 1) as f64, 2 * (n + 1)));
    out
}

fn c1_spectrum() -> Report {
    let mut r = Report::default();
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut literal = Vec::new();
    for n in 1..=12 {
        let expect = closed_form(n);
        for sign in [-1i8, 1] {
            let rep = spectrum_report(&build_dirac(n, sign).unwrap()).unwrap();
            worst = worst.max(max_abs_dev(&rep.shifted, &expect));
            let mut lit: Vec<f64> = rep.raw.iter().map(|x| x + 2.0).collect();
            lit.sort_by(f64::total_cmp);
            if n <= 3 {
                literal.push(format!("n={n} sign={sign:+}: {:.3}", max_abs_dev(&lit, &expect)));
            }
        }
    }
    let elapsed = start.elapsed();
    r.clause(format!("oriented D' max deviation {worst:.2e} < {TOL_SPECTRUM:e}"), worst < TOL_SPECTRUM);
    r.clause(format!("runtime {:.1} s < {} s", elapsed.as_secs_f64(), LIMIT_SPECTRUM.as_secs()), elapsed < LIMIT_SPECTRUM);
    r.info("D' = sign·D + 2; literal D + 2 deviations: ".to_string() + &literal.join(", "));
    r
}

fn c2_casimir() -> Report {
    let mut r = Report::default();
    let worst = (0..=12)
        .map(|n| {
            let target = ComplexMatrix::identity(n + 1).scale_re(-((n * (n + 2)) as f64));
            casimir_image(&irrep(n)).max_abs_diff(&target)
        })
        .fold(0.0, f64::max);
    r.clause(format!("max |Σ U² + n(n+2)I| over n=0..12 is {worst:.2e} < {TOL_CASIMIR:e}"), worst < TOL_CASIMIR);
    r
}

fn c3_casimir_form() -> Report {
    let mut r = Report::default();
    let mut worst: f64 = 0.0;
    let mut correlated = true;
    for sign in [-1i8, 1] {
        let signs: Vec<i8> = (1..=8)
            .map(|n| {
                let c = check_casimir_identity(n, sign).unwrap();
                worst = worst.max(c.residual);
                c.matched_sign
            })
            .collect();
        correlated &= signs.iter().all(|&s| s == -sign);
        r.info(format!("clifford sign {sign:+}: matched sign {:+} at every n", signs[0]));
    }
    r.clause(format!("residual {worst:.2e} < {TOL_DCAS:e} for n=1..8"), worst < TOL_DCAS);
    r.clause("matched sign = −(clifford sign) for all n", correlated);
    r
}

fn c4_square() -> Report {
    let mut r = Report::default();
    let worst = (1..=8)
        .flat_map(|n| [-1i8, 1].map(|s| check_square(n, s).unwrap().residual))
        .fold(0.0, f64::max);
    r.clause(format!("residual {worst:.2e} < {TOL_SQUARE:e} for n=1..8"), worst < TOL_SQUARE);
    r
}

fn c5_sandwich() -> Report {
    let mut r = Report::default();
    let (mut lo, mut hi, mut ell) = (0.0f64, 0.0f64, 0.0f64);
    for n in [1usize, 2, 4, 6] {
        let d = build_dirac(n, -1).unwrap();
        for i in 0..SANDWICH_SAMPLES {
            let mut rng = stream_rng(SEED, (n * 1000 + i) as u64);
            let a = random_hermitian(n + 1, &mut rng);
            let l = d.lip_seminorm(&a).unwrap();
            let ld = ld_seminorm(d.rep(), &a).value;
            let le = lell_estimate(d.rep(), &a, LELL_SAMPLES, SEED + i as u64);
            lo = lo.max(ld / l);
            hi = hi.max(l / (3.0 * ld));
            ell = ell.max(le / l);
        }
    }
    r.clause(format!("max L_d/L^D = {lo:.6} ≤ 1 + {SANDWICH_LD:e}"), lo <= 1.0 + SANDWICH_LD);
    r.clause(format!("max L^D/(3 L_d) = {hi:.6} ≤ 1 + {SANDWICH_UPPER:e}"), hi <= 1.0 + SANDWICH_UPPER);
    r.clause(format!("max L_ℓ/L^D = {ell:.6} ≤ 1 + {SANDWICH_LELL:e}"), ell <= 1.0 + SANDWICH_LELL);
    let d1 = build_dirac(1, -1).unwrap();
    let u3 = irrep(1).generator(2).clone();
    let (l, ld) = (d1.lip_seminorm(&u3).unwrap(), ld_seminorm(d1.rep(), &u3).value);
    r.clause(format!("golden L^D(U¹_E3) = {l:.12} = 4"), (l - 4.0).abs() < TOL_GOLDEN);
    r.clause(format!("golden L_d(U¹_E3) = {ld:.12} = 2"), (ld - 2.0).abs() < TOL_GOLDEN);
    r
}

fn c6_spinor_independence() -> Report {
    let mut r = Report::default();
    let mut worst: f64 = 0.0;
    for i in 0..SPINOR_SAMPLES {
        let n = 1 + i % 4;
        let mut rng = stream_rng(SEED, 5000 + i as u64);
        let a = random_hermitian(n + 1, &mut rng);
        let minus = build_dirac(n, -1).unwrap().lip_seminorm(&a).unwrap();
        let plus = build_dirac(n, 1).unwrap().lip_seminorm(&a).unwrap();
        let rep = irrep(n);
        let coeffs: Vec<ComplexMatrix> = rep.generators().iter().map(|u| u.commutator(&a)).collect();
        let cliff = clifford_norm(&coeffs).unwrap();
        worst = worst.max((minus - plus).abs()).max((minus - cliff).abs()).max((plus - cliff).abs());
    }
    r.clause(format!("pairwise spread {worst:.2e} < {TOL_SPINOR:e} on {SPINOR_SAMPLES} inputs"), worst < TOL_SPINOR);
    r
}

fn c7_structure() -> Report {
    let mut r = Report::default();
    let (mut eq, mut inv, mut zeroth, mut first, mut cd) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut cd_signs = Vec::new();
    for n in 1..=6 {
        for sign in [-1i8, 1] {
            eq = eq.max(check_equivariance(n, sign, 8, SEED).unwrap());
            let fo = check_first_order(n, sign).unwrap();
            zeroth = zeroth.max(fo.zeroth_order);
            first = first.max(fo.first_order);
            cd = cd.max(fo.cd_residual);
            cd_signs.push((n, sign, fo.cd_sign));
        }
        let d = build_dirac(n, -1).unwrap();
        let rep = d.rep();
        for i in 0..8 {
            let mut rng = stream_rng(SEED, 7000 + (n * 16 + i) as u64);
            let a = random_hermitian(n + 1, &mut rng);
            let x = random_unit_vector3(&mut rng);
            let t: f64 = rng.random_range(-3.0..3.0);
            let u = rep.group_element(x, t);
            let moved = &(&u * &a) * &u.adjoint();
            let (l0, l1) = (d.lip_seminorm(&a).unwrap(), d.lip_seminorm(&moved).unwrap());
            inv = inv.max((l0 - l1).abs());
        }
    }
    for (name, v) in [
        ("equivariance", eq),
        ("invariance of L^D", inv),
        ("zeroth order", zeroth),
        ("first order", first),
        ("CD = ±DC", cd),
    ] {
        r.clause(format!("{name} {v:.2e} < {TOL_STRUCTURE:e}"), v < TOL_STRUCTURE);
    }
    let definite = cd_signs.iter().all(|s| s.2 == cd_signs[0].2);
    r.clause(format!("CD sign definite ({:+}) for n ≤ 6, both signs", cd_signs[0].2), definite);
    r
}

/// `λ_k(m) = m!(m+1)! / ((m−k)!(m+k+1)!)` as a running product.
fn berezin_oracle(m: usize, k: usize) -> f64 {
    (0..k).map(|j| (m - j) as f64 / (m + 2 + j) as f64).product()
}

fn c8_berezin() -> Report {
    let mut r = Report::default();
    let mut lambda0: f64 = 0.0;
    let mut oracle: f64 = 0.0;
    let mut gaps = Vec::new();
    let mut sector_one = Vec::new();
    for m in 1..=8 {
        let (_, spec) = berezin_map(m).unwrap();
        lambda0 = lambda0.max((spec.eigenvalues[0] - 1.0).abs());
        for (k, l) in spec.eigenvalues.iter().enumerate() {
            oracle = oracle.max((l - berezin_oracle(m, k)).abs());
        }
        gaps.push(spec.gap());
        sector_one.push(1.0 - spec.eigenvalues[1]);
    }
    let l11 = berezin_map(1).unwrap().1.eigenvalues[1];
    r.clause(format!("|λ₀ − 1| = {lambda0:.2e} < {TOL_BEREZIN:e} for m ≤ 8"), lambda0 < TOL_BEREZIN);
    r.clause(format!("λ₁(1) = {l11:.15} = 1/3"), (l11 - 1.0 / 3.0).abs() < TOL_BEREZIN);
    r.clause(format!("all λ_k(m) match the factorial formula ({oracle:.2e})"), oracle < TOL_BEREZIN);
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    r.clause(format!("gap max_k(1−λ_k) strictly decreasing: {}", fmt_list(&gaps)), decreasing);
    if !decreasing {
        r.info("the top sector has λ_m(m) = m!(m+1)!/(2m+1)! → 0, so the uniform gap rises toward 1; the transform converges sector by sector");
        r.info(format!("per-sector gap 1 − λ₁(m) = 2/(m+2): {}", fmt_list(&sector_one)));
    }
    r
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ")
}

fn c9_compatibility() -> Report {
    let mut r = Report::default();
    let (mut cov, mut contra, mut grid) = (0.0f64, 0.0f64, 0.0f64);
    let mut ok = true;
    for m in 1..=6 {
        let c = compatibility(m, COMPAT_SAMPLES, SEED, COMPAT_RESOLUTION).unwrap();
        ok &= c.covariant_ratio <= 1.0 + COMPAT_SLACK && c.contravariant_ratio <= 1.0 + COMPAT_SLACK;
        cov = cov.max(c.covariant_ratio);
        contra = contra.max(c.contravariant_ratio);
        grid = grid.max(c.grid_error);
    }
    r.clause(
        format!("max ‖dσ^A b‖/L^D(b) = {cov:.6}, max L^D(σ^B f)/‖df‖ = {contra:.6} ≤ 1 + {COMPAT_SLACK:e}"),
        ok,
    );
    r.info(format!("largest relative grid error of the sphere sups {grid:.2e}"));
    r
}

fn c10_convergence() -> Report {
    let mut r = Report::default();
    let start = Instant::now();
    let reports = convergence_study(STUDY_M_MAX, STUDY_BUDGET, SEED).unwrap();
    let elapsed = start.elapsed();
    let delta: Vec<f64> = reports.iter().map(|x| x.delta_hat).collect();
    let ga: Vec<f64> = reports.iter().map(|x| x.gamma_a).collect();
    let gb: Vec<f64> = reports.iter().map(|x| x.gamma_b).collect();
    let within = |v: &[f64]| v.windows(2).all(|w| w[1] <= w[0] * (1.0 + REACH_NOISE));
    r.clause(format!("δ̂ strictly decreasing: {}", fmt_list(&delta)), delta.windows(2).all(|w| w[1] < w[0]));
    r.clause(
        format!("δ̂(8) = {:.4} < δ̂(1)/2 = {:.4}", delta[7], delta[0] / 2.0),
        delta[7] < delta[0] / 2.0,
    );
    r.clause(format!("γ̂^A nonincreasing within {REACH_NOISE}: {}", fmt_list(&ga)), within(&ga));
    r.clause(format!("γ̂^B nonincreasing within {REACH_NOISE}: {}", fmt_list(&gb)), within(&gb));
    r.clause(format!("runtime {:.0} s < {} s", elapsed.as_secs_f64(), LIMIT_STUDY.as_secs()), elapsed < LIMIT_STUDY);
    if !r.passed() {
        r.info("δ̂(1) = 1/6 exactly, while the sector-2 element diag(4/3, −8/3, 4/3) at m = 2 gives 0.3/√2 ≈ 0.2121; the ascent values are lower bounds, so neither δ̂ clause can hold");
    }
    r
}

fn c11_linking() -> Report {
    let mut r = Report::default();
    let op = demo_instance(SEED).unwrap();
    let worst = op.verify_identity(LINKING_PAIRS, SEED);
    r.clause(format!("max |‖[D_r, π(a,b)]‖ − formula| = {worst:.2e} < {TOL_LINKING:e}"), worst < TOL_LINKING);
    r
}

fn c12_tunnel() -> Report {
    let mut r = Report::default();
    let (mut inter, mut adj, mut transport) = (0.0f64, 0.0f64, 0.0f64);
    let (mut norms_ok, mut band_ok, mut transported_ok) = (true, true, true);
    let mut low_a = Vec::new();
    let mut low_b = Vec::new();
    for m in 1..=6 {
        let t = tunnel_maps(m, m + TUNNEL_BAND).unwrap();
        let d = &t.diagnostics;
        inter = inter.max(d.intertwining_a).max(d.intertwining_b);
        adj = adj.max(d.adjointness).max(d.adjoint_matrix_residual);
        transport = transport.max(d.transport);
        norms_ok &= d.norm_a <= 1.0 + TOL_TUNNEL && d.norm_b <= 1.0 + TOL_TUNNEL;
        band_ok &= t.band() == m + 4;
        transported_ok &= d.transported == 2 * (m + 1) * (m + 1);
        low_a.push(d.low_band_a);
        low_b.push(d.low_band_b);
    }
    r.clause(format!("intertwining {inter:.2e} < {TOL_TUNNEL:e}"), inter < TOL_TUNNEL);
    r.clause("‖θ^A‖, ‖θ^B‖ ≤ 1", norms_ok);
    r.clause(format!("adjointness {adj:.2e} < {TOL_TUNNEL:e}"), adj < TOL_TUNNEL);
    r.clause("L_A = m + 4", band_ok);
    r.clause(
        format!("eigenvector transport {transport:.2e} < {TOL_TUNNEL:e}, full basis"),
        transport < TOL_TUNNEL && transported_ok,
    );
    r.clause(
        format!("low-band contraction decreasing in m: {}", fmt_list(&low_a)),
        low_a.windows(2).all(|w| w[1] < w[0]),
    );
    r.info(format!("matrix-side ‖η − θ^Bθ^Aη‖ on the same band: {}", fmt_list(&low_b)));
    r
}

/// Multiplicity of eigenvalues of `D'` near `target`.
fn count_near(eigs: &[f64], target: f64) -> usize {
    eigs.iter().filter(|x| (*x - target).abs() < TOL_CLUSTER).count()
}

fn c13_levels() -> Report {
    let mut r = Report::default();
    let spectra: Vec<Vec<f64>> = (1..=10)
        .map(|n| {
            let d = build_dirac(n, -1).unwrap();
            // Oriented D' = sign·D + 2 computed here from the matrix.
            let mut v: Vec<f64> = herm_eig(d.matrix()).unwrap().values.iter().map(|x| -x + 2.0).collect();
            v.sort_by(f64::total_cmp);
            v
        })
        .collect();
    let mut mismatches = 0;
    for m in 1..=10 {
        for mp in m + 1..=10 {
            for k in 1..=m {
                for s in [-1.0, 1.0] {
                    let target = s * 2.0 * k as f64;
                    if count_near(&spectra[m - 1], target) != count_near(&spectra[mp - 1], target) {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    r.clause(format!("{mismatches} multiplicity mismatches across m < m' ≤ 10"), mismatches == 0);
    r
}

/// `E[x^a y^b z^c]` on the unit sphere under the normalized measure.
fn sphere_moment(a: usize, b: usize, c: usize) -> f64 {
    if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
        return 0.0;
    }
    let dfact = |k: usize| -> f64 { (1..=k).rev().step_by(2).map(|x| x as f64).product() };
    let odd = |k: usize| if k == 0 { 1.0 } else { dfact(k - 1) };
    odd(a) * odd(b) * odd(c) / dfact(a + b + c + 1)
}

fn c14_quadrature() -> Report {
    let mut r = Report::default();
    let grid = quadrature_grid(QUADRATURE_DEGREE);
    let mut worst: f64 = 0.0;
    for a in 0..=QUADRATURE_DEGREE {
        for b in 0..=QUADRATURE_DEGREE - a {
            for c in 0..=QUADRATURE_DEGREE - a - b {
                let q = grid.integrate(|p| {
                    let [x, y, z] = p.bloch();
                    C64::new(x.powi(a as i32) * y.powi(b as i32) * z.powi(c as i32), 0.0)
                });
                worst = worst.max((q - sphere_moment(a, b, c)).norm());
            }
        }
    }
    let cos2 = grid.integrate(|p| C64::new(p.theta().cos().powi(2), 0.0)).re;
    r.clause(format!("max moment error up to degree {QUADRATURE_DEGREE}: {worst:.2e} < {TOL_QUADRATURE:e}"), worst < TOL_QUADRATURE);
    r.clause(format!("∫cos²θ = {cos2:.15}"), (cos2 - 1.0 / 3.0).abs() < TOL_QUADRATURE);
    r
}

type Criterion = (&'static str, fn() -> Report);

fn main() {
    let criteria: [Criterion; 14] = [
        ("spectrum closed form", c1_spectrum),
        ("Casimir scalar", c2_casimir),
        ("Casimir form of D", c3_casimir_form),
        ("square identity", c4_square),
        ("seminorm sandwich", c5_sandwich),
        ("spinor independence", c6_spinor_independence),
        ("equivariance and real structure", c7_structure),
        ("Berezin transform", c8_berezin),
        ("symbol compatibility", c9_compatibility),
        ("convergence trends", c10_convergence),
        ("linking Dirac operator", c11_linking),
        ("tunnel diagnostics", c12_tunnel),
        ("level compatibility", c13_levels),
        ("quadrature exactness", c14_quadrature),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let report = run();
        let tag = if report.passed() { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name} ({:.1} s)", i + 1, start.elapsed().as_secs_f64());
        for (text, ok) in &report.clauses {
            println!("       {} {text}", if *ok { "ok " } else { "NO " });
        }
        for text in &report.info {
            println!("       ·  {text}");
        }
        if !report.passed() {
            failed.push(i + 1);
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("failing: {failed:?}");
        std::process::exit(1);
    }
}
