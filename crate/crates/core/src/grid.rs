//! Fixed sample grids and seeded samplers for the real and complex bases.

use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `|x - y| <= tol * max(1, |x|, |y|)`.
pub fn approx_eq_real(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * 1f64.max(x.abs()).max(y.abs())
}

pub fn approx_eq_complex(x: Complex64, y: Complex64, tol: f64) -> bool {
    (x - y).norm() <= tol * 1f64.max(x.norm()).max(y.norm())
}

const GRID_MODULI: [f64; 5] = [0.5, 1.0, 2.0, E, 10.0];
const GRID_ARGS: [f64; 5] = [0.0, FRAC_PI_4, FRAC_PI_2, 2.0, 3.0];

/// The 25 points `r e^{i t}` for r in {0.5, 1, 2, e, 10} and t in {0, pi/4, pi/2, 2, 3}.
pub fn complex_grid() -> Vec<Complex64> {
    GRID_MODULI
        .iter()
        .flat_map(|&r| GRID_ARGS.iter().map(move |&t| Complex64::from_polar(r, t)))
        .collect()
}

/// Real counterpart of [`complex_grid`]: the moduli with both signs.
pub fn real_grid() -> Vec<f64> {
    GRID_MODULI.iter().flat_map(|&r| [r, -r]).collect()
}

/// Scalars used for the (alpha, beta) pairs in sampled quasi-kernel tests.
/// (1, 1) comes first so the simplest failure is reported as the witness.
pub const REAL_PAIR_VALUES: [f64; 7] = [1.0, 2.0, -1.0, 0.5, 3.0, -2.5, 0.0];

pub fn complex_pair_values() -> [Complex64; 7] {
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.5),
        Complex64::new(0.5, -2.0),
        Complex64::new(-3.0, 0.0),
        Complex64::new(0.0, 0.0),
    ]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero real with log-uniform magnitude in [0.1, 10] and random sign.
pub fn sample_real<R: Rng>(rng: &mut R) -> f64 {
    let mag = 10f64.powf(rng.gen_range(-1.0..1.0));
    if rng.gen_bool(0.5) {
        mag
    } else {
        -mag
    }
}

/// Nonzero complex with log-uniform modulus in [0.1, 10] and uniform argument.
pub fn sample_complex<R: Rng>(rng: &mut R) -> Complex64 {
    let mag = 10f64.powf(rng.gen_range(-1.0..1.0));
    Complex64::from_polar(mag, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
}
