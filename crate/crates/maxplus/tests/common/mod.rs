#![allow(dead_code)] // fixtures are shared by several test binaries

//! Shared fixtures: the three worked 6x6/9x9 golden matrices and a seeded
//! generator of random irreducible definite visualized instances.

use maxplus::{MpMatrix, MpVector};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub const NEG_INF: f64 = f64::NEG_INFINITY;

pub fn matrix(rows: &[Vec<f64>]) -> MpMatrix {
    MpMatrix::from_rows(rows).unwrap()
}

/// 9x9 squaring example: two critical components with cyclicities 2 and 3,
/// transient 154.
pub fn golden_squaring() -> MpMatrix {
    matrix(&[
        vec![-1.0, 0.0, -1.0, -1.0, -9.0, -7.0, -10.0, -4.0, -8.0],
        vec![0.0, -1.0, 0.0, -1.0, -10.0, -1.0, -10.0, -9.0, -4.0],
        vec![-1.0, -1.0, -1.0, 0.0, -2.0, -3.0, -2.0, -6.0, -6.0],
        vec![0.0, -1.0, -1.0, -1.0, -10.0, -6.0, -10.0, -6.0, -1.0],
        vec![-10.0, -2.0, -8.0, -1.0, -1.0, 0.0, -1.0, -10.0, -1.0],
        vec![-5.0, -5.0, -10.0, -9.0, -1.0, -1.0, 0.0, -3.0, -6.0],
        vec![-9.0, -10.0, -7.0, -10.0, 0.0, -1.0, -1.0, -8.0, -8.0],
        vec![-75.0, -80.0, -77.0, -83.0, -80.0, -77.0, -82.0, -2.0, -0.5],
        vec![-84.0, -81.0, -77.0, -80.0, -78.0, -77.0, -78.0, -0.5, -2.0],
    ])
}

/// The four orbit vectors studied on the squaring example, with their
/// ultimate periods 6, 2, 3, 1.
pub fn golden_squaring_orbits() -> Vec<(MpVector, u64)> {
    let v = |vals: &[f64]| MpVector::from_values(vals).unwrap();
    vec![
        (v(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0]), 6),
        (v(&[1.0, 2.0, 3.0, 4.0, 0.0, 0.0, 0.0, 0.0, 0.0]), 2),
        (v(&[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0]), 3),
        (v(&[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]), 1),
    ]
}

/// 9x9 circulant example: definite and visualized, all nodes critical,
/// transient 6.
pub fn golden_circulant() -> MpMatrix {
    matrix(&[
        vec![-8.0, 0.0, -1.0, -8.0, -8.0, -9.0, -4.0, -5.0, -1.0],
        vec![-4.0, -5.0, 0.0, -2.0, -6.0, 0.0, -7.0, -3.0, -9.0],
        vec![-7.0, -9.0, -8.0, 0.0, -8.0, -4.0, -6.0, -9.0, -10.0],
        vec![-8.0, -8.0, -10.0, -7.0, 0.0, -4.0, -6.0, -10.0, -1.0],
        vec![-2.0, -8.0, -7.0, -4.0, -8.0, 0.0, -3.0, -1.0, -10.0],
        vec![0.0, -1.0, -2.0, -7.0, -10.0, -6.0, -3.0, -6.0, -1.0],
        vec![-10.0, -7.0, -7.0, -7.0, -6.0, -1.0, -5.0, 0.0, -9.0],
        vec![-8.0, -3.0, -6.0, -8.0, -6.0, -8.0, -5.0, -10.0, 0.0],
        vec![-4.0, -3.0, -5.0, -6.0, -6.0, -10.0, 0.0, -6.0, -9.0],
    ])
}

/// 6x6 strongly-connected-critical example: one critical 3-cycle, three
/// non-critical nodes, transient 8.
pub fn golden_chain() -> MpMatrix {
    matrix(&[
        vec![-3.0, 0.0, -1.0, -19.0, -7.0, -3.0],
        vec![-3.0, -4.0, 0.0, -10.0, -19.0, -16.0],
        vec![0.0, -3.0, -1.0, -10.0, -8.0, -8.0],
        vec![-1.0, -4.0, -4.0, -1.0, -1.0, -3.0],
        vec![-1.0, -1.0, -4.0, -2.0, -4.0, -1.0],
        vec![-4.0, -2.0, -4.0, -1.0, -4.0, -1.0],
    ])
}

/// A^8 of the chain example. The (4,5) entry must be -7 for consistency
/// with the A^9 fixture: A^9 = A^8 ⊗ A, and a -1 there would force the
/// (4,5) entry of A^9 up to -5.
pub fn golden_chain_p8() -> MpMatrix {
    matrix(&[
        vec![-1.0, -1.0, 0.0, -4.0, -6.0, -4.0],
        vec![0.0, -1.0, -1.0, -5.0, -5.0, -4.0],
        vec![-1.0, 0.0, -1.0, -5.0, -6.0, -3.0],
        vec![-2.0, -1.0, -2.0, -6.0, -7.0, -4.0],
        vec![-2.0, -1.0, -1.0, -5.0, -7.0, -4.0],
        vec![-2.0, -3.0, -2.0, -6.0, -7.0, -6.0],
    ])
}

/// A^9 of the chain example.
pub fn golden_chain_p9() -> MpMatrix {
    matrix(&[
        vec![0.0, -1.0, -1.0, -5.0, -5.0, -4.0],
        vec![-1.0, 0.0, -1.0, -5.0, -6.0, -3.0],
        vec![-1.0, -1.0, 0.0, -4.0, -6.0, -4.0],
        vec![-2.0, -2.0, -1.0, -5.0, -7.0, -5.0],
        vec![-1.0, -2.0, -1.0, -5.0, -6.0, -5.0],
        vec![-2.0, -2.0, -3.0, -7.0, -7.0, -5.0],
    ])
}

/// Deterministic RNG for the test corpora.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random irreducible definite visualized matrix: entries in {0,-1,...,-9}
/// or -inf, a planted all-zero cycle pins the cycle mean at 0, and a planted
/// Hamiltonian cycle guarantees strong connectivity.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> MpMatrix {
    let mut m = MpMatrix::zero(n);
    // Hamiltonian cycle over a random permutation, strictly negative weights
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    for w in 0..n {
        let i = perm[w];
        let j = perm[(w + 1) % n];
        let weight = -(rng.gen_range(1..=9) as f64);
        m.set(i, j, maxplus::MpScalar::finite(weight));
    }
    // planted zero cycle
    let g = rng.gen_range(1..=n);
    let mut cyc: Vec<usize> = (0..n).collect();
    cyc.shuffle(rng);
    cyc.truncate(g);
    for w in 0..g {
        m.set(cyc[w], cyc[(w + 1) % g], maxplus::MpScalar::UNIT);
    }
    // sparse extra entries, never overriding a planted value upward
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(0.3) {
                let weight = -(rng.gen_range(0..=9) as f64);
                let v = m.get(i, j).oplus(maxplus::MpScalar::finite(weight));
                m.set(i, j, v);
            }
        }
    }
    m
}

/// Random vector with coordinates from {0, -1, -2, -inf}.
pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> MpVector {
    let vals: Vec<f64> = (0..n)
        .map(|_| match rng.gen_range(0..4) {
            0 => 0.0,
            1 => -1.0,
            2 => -2.0,
            _ => NEG_INF,
        })
        .collect();
    MpVector::from_values(&vals).unwrap()
}

/// All vectors with coordinates from the given palette.
pub fn grid_vectors(n: usize, palette: &[f64]) -> Vec<MpVector> {
    let mut out = Vec::with_capacity(palette.len().pow(n as u32));
    let mut idx = vec![0usize; n];
    loop {
        let vals: Vec<f64> = idx.iter().map(|&k| palette[k]).collect();
        out.push(MpVector::from_values(&vals).unwrap());
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < palette.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
