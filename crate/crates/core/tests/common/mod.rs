//! Shared test utilities: seeded random mixtures and admissible tuples.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stochord::distribution::{Atom, Distribution, Segment};

/// Draw a random atom + uniform-segment mixture on `[a, b]` with at least
/// one component; masses normalized to one.
pub fn random_mixture(rng: &mut ChaCha8Rng, a: f64, b: f64) -> Distribution {
    loop {
        let n_atoms = rng.gen_range(0..=3usize);
        let n_segs = rng.gen_range(0..=2usize);
        if n_atoms + n_segs == 0 {
            continue;
        }
        let mut raw: Vec<f64> = (0..n_atoms + n_segs).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        for w in &mut raw {
            *w /= total;
        }
        let atoms: Vec<Atom> =
            (0..n_atoms).map(|i| Atom { x: rng.gen_range(a..=b), p: raw[i] }).collect();
        let segments: Vec<Segment> = (0..n_segs)
            .map(|i| {
                let lo = rng.gen_range(a..b);
                let hi = rng.gen_range(lo..=b).max(lo + 1e-3 * (b - a)).min(b);
                Segment { lo, hi, p: raw[n_atoms + i] }
            })
            .collect();
        if segments.iter().any(|s| s.lo >= s.hi) {
            continue;
        }
        match Distribution::new(a, b, atoms, segments) {
            Ok(d) => return d,
            Err(_) => continue,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
