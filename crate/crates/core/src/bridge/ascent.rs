//! Seeded random-perturbation ascent on a seminorm unit sphere.

use rand::Rng;

use crate::exec::Exec;
use crate::numlin::{ComplexMatrix, C64};
use crate::random::{random_hermitian, stream_rng};

pub const RESTARTS_PER_BUDGET: usize = 3;
pub const ITERATIONS: usize = 40;

/// Traceless part of a square matrix.
pub fn traceless(a: &ComplexMatrix) -> ComplexMatrix {
    let d = a.rows();
    let mut out = a.clone();
    let t = a.trace() / C64::new(d as f64, 0.0);
    for k in 0..d {
        out[(k, k)] -= t;
    }
    out
}

/// Best value found and its argument.
#[derive(Clone, Debug)]
pub struct AscentResult {
    pub value: f64,
    pub argmax: ComplexMatrix,
    pub restarts: usize,
}

/// Maximizes `objective` over self-adjoint traceless `dim × dim` matrices
/// scaled onto the unit sphere of a seminorm by `normalize` (which returns
/// `None` on the seminorm's kernel). Restart `i` starts from `seeds[i]` when
/// present and otherwise from a random matrix; its RNG is stream `i` of
/// `seed`, so raising `budget` only adds restarts.
pub fn ascend<N, O>(dim: usize, budget: usize, seed: u64, seeds: &[ComplexMatrix], normalize: N, objective: O, exec: Exec) -> AscentResult
where
    N: Fn(&ComplexMatrix) -> Option<ComplexMatrix> + Sync,
    O: Fn(&ComplexMatrix) -> f64 + Sync,
{
    let restarts = RESTARTS_PER_BUDGET * budget.max(1);
    let runs = exec.map_range(restarts, |i| {
        let mut rng = stream_rng(seed, i as u64);
        let start = match seeds.get(i) {
            Some(s) => traceless(s),
            None => traceless(&random_hermitian(dim, &mut rng)),
        };
        let Some(mut current) = normalize(&start) else {
            return (0.0, ComplexMatrix::zeros(dim, dim));
        };
        let mut value = objective(&current);
        let mut step = 0.3;
        for _ in 0..ITERATIONS {
            let dir = traceless(&random_hermitian(dim, &mut rng));
            let scale = step * current.norm_fro() / dir.norm_fro().max(1e-300);
            let jitter: f64 = rng.random_range(0.5..1.5);
            let trial = &current + &dir.scale_re(scale * jitter);
            if let Some(cand) = normalize(&trial) {
                let v = objective(&cand);
                if v > value {
                    value = v;
                    current = cand;
                    step = (step * 1.5).min(1.0);
                    continue;
                }
            }
            step *= 0.7;
        }
        (value, current)
    });
    // Earliest restart wins ties, so the merge does not depend on scheduling.
    let (value, argmax) = runs
        .into_iter()
        .reduce(|best, r| if r.0 > best.0 { r } else { best })
        .expect("at least one restart");
    AscentResult {
        value,
        argmax,
        restarts,
    }
}
