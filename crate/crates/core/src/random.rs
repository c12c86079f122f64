//! Seeded sampling helpers. Every randomized routine takes an explicit seed
//! and derives per-task streams, so results do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::numlin::{ComplexMatrix, C64};

/// RNG for task `stream` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(gaussian(rng), gaussian(rng))
}

/// GUE-style random hermitian matrix.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = random_complex(dim, dim, rng);
    (&g + &g.adjoint()).scale(C64::new(0.5, 0.0))
}

pub fn random_complex<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn random_unit_vector3<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [gaussian(rng), gaussian(rng), gaussian(rng)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-8 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

pub fn random_complex_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<C64> {
    (0..dim).map(|_| complex_gaussian(rng)).collect()
}
