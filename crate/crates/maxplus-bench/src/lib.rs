//! Shared instance generation for the benchmarks.

use maxplus::{MpMatrix, MpScalar};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Random irreducible definite visualized matrix with integer entries:
/// a Hamiltonian cycle for strong connectivity, an all-zero cycle pinning
/// the cycle mean at 0, and sparse extra entries.
pub fn random_instance(seed: u64, n: usize, density: f64) -> MpMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = MpMatrix::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    for w in 0..n {
        let weight = -(rng.gen_range(1..=9) as f64);
        m.set(perm[w], perm[(w + 1) % n], MpScalar::finite(weight));
    }
    let g = rng.gen_range(1..=n);
    let mut cyc: Vec<usize> = (0..n).collect();
    cyc.shuffle(&mut rng);
    cyc.truncate(g);
    for w in 0..g {
        m.set(cyc[w], cyc[(w + 1) % g], MpScalar::UNIT);
    }
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(density) {
                let weight = -(rng.gen_range(0..=9) as f64);
                let v = m.get(i, j).oplus(MpScalar::finite(weight));
                m.set(i, j, v);
            }
        }
    }
    m
}
