//! Shared helpers for integration tests: seeded random states and a dense
//! matrix-exponential propagation oracle that is independent of the
//! closed-form block rotations in the library.

use jcsim_core::dynamics::AtomFieldState;
use jcsim_core::two_cavity::TwoCavityState;
use jcsim_core::{C64, FockBasisSpec64};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random normalized complex vector.
pub fn random_vec(rng: &mut ChaCha8Rng, dim: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in &mut v {
        *c /= norm;
    }
    v
}

/// Dense single-cavity Hamiltonian on the truncated basis, row-major over
/// `2 * (n_max + 1)` levels: `|g,n>` at index `n`, `|e,n>` at `dim + n`.
pub fn dense_single_h(n_max: usize, lambda: f64, omega: f64, schrodinger: bool) -> Vec<C64> {
    let dim = n_max + 1;
    let size = 2 * dim;
    let mut h = vec![C64::new(0.0, 0.0); size * size];
    for n in 0..n_max {
        let g = lambda * ((n + 1) as f64).sqrt();
        // |e,n> <-> |g,n+1>
        h[(dim + n) * size + (n + 1)] = C64::new(g, 0.0);
        h[(n + 1) * size + (dim + n)] = C64::new(g, 0.0);
    }
    if schrodinger {
        for n in 0..dim {
            h[n * size + n] += C64::new(omega * (n as f64 - 0.5), 0.0);
            h[(dim + n) * size + (dim + n)] += C64::new(omega * (n as f64 + 0.5), 0.0);
        }
    }
    h
}

/// Dense two-cavity Hamiltonian `H_A (x) 1 + 1 (x) H_B` (interaction
/// picture), indexed `((2 sA + sB) * D + n_a) * D + n_b`.
pub fn dense_two_h(n_max: usize, lambda: f64) -> Vec<C64> {
    let d = n_max + 1;
    let size = 4 * d * d;
    let idx = |sa: usize, sb: usize, na: usize, nb: usize| ((2 * sa + sb) * d + na) * d + nb;
    let mut h = vec![C64::new(0.0, 0.0); size * size];
    for sb in 0..2 {
        for nb in 0..d {
            for na in 0..n_max {
                let g = lambda * ((na + 1) as f64).sqrt();
                let row = idx(1, sb, na, nb);
                let col = idx(0, sb, na + 1, nb);
                h[row * size + col] += C64::new(g, 0.0);
                h[col * size + row] += C64::new(g, 0.0);
            }
        }
    }
    for sa in 0..2 {
        for na in 0..d {
            for nb in 0..n_max {
                let g = lambda * ((nb + 1) as f64).sqrt();
                let row = idx(sa, 1, na, nb);
                let col = idx(sa, 0, na, nb + 1);
                h[row * size + col] += C64::new(g, 0.0);
                h[col * size + row] += C64::new(g, 0.0);
            }
        }
    }
    h
}

fn inf_norm(h: &[C64], size: usize) -> f64 {
    (0..size)
        .map(|i| h[i * size..(i + 1) * size].iter().map(|c| c.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn matvec(h: &[C64], size: usize, v: &[C64]) -> Vec<C64> {
    (0..size)
        .map(|i| {
            h[i * size..(i + 1) * size]
                .iter()
                .zip(v)
                .fold(C64::new(0.0, 0.0), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// `e^{-iHt} v` by substepped Taylor series: the step count keeps the
/// per-step operator norm at or below one, where the series converges to
/// machine precision in a few dozen terms.
pub fn expm_apply(h: &[C64], size: usize, t: f64, v: &[C64]) -> Vec<C64> {
    let norm = inf_norm(h, size) * t.abs();
    let steps = norm.ceil().max(1.0) as usize;
    let dt = t / steps as f64;
    let mut state = v.to_vec();
    for _ in 0..steps {
        let mut term = state.clone();
        let mut acc = state.clone();
        for k in 1..=60 {
            let hv = matvec(h, size, &term);
            let coef = C64::new(0.0, -dt) / k as f64;
            term = hv.iter().map(|c| c * coef).collect();
            for (a, b) in acc.iter_mut().zip(&term) {
                *a += b;
            }
            let tn: f64 = term.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if tn < 1e-30 {
                break;
            }
        }
        state = acc;
    }
    state
}

/// Pack an atom-field state into the dense-oracle ordering.
pub fn pack_single(state: &AtomFieldState<f64>) -> Vec<C64> {
    let mut v = state.amps_g.clone();
    v.extend_from_slice(&state.amps_e);
    v
}

/// Unpack a dense-oracle vector into an atom-field state.
pub fn unpack_single(v: &[C64], basis: FockBasisSpec64) -> AtomFieldState<f64> {
    let dim = basis.dim();
    AtomFieldState {
        amps_g: v[..dim].to_vec(),
        amps_e: v[dim..].to_vec(),
        basis,
    }
}

/// Pack a two-cavity state into the dense-oracle ordering.
pub fn pack_two(state: &TwoCavityState<f64>) -> Vec<C64> {
    let d = state.basis.dim();
    let mut v = vec![C64::new(0.0, 0.0); 4 * d * d];
    for k in 0..4 {
        for na in 0..d {
            for nb in 0..d {
                v[(k * d + na) * d + nb] = state.blocks[k][[na, nb]];
            }
        }
    }
    v
}

/// Unpack a dense-oracle vector into a two-cavity state.
pub fn unpack_two(v: &[C64], basis: FockBasisSpec64) -> TwoCavityState<f64> {
    let d = basis.dim();
    let mut state = TwoCavityState::zero(basis);
    for k in 0..4 {
        for na in 0..d {
            for nb in 0..d {
                state.blocks[k][[na, nb]] = v[(k * d + na) * d + nb];
            }
        }
    }
    state
}

pub fn vec_distance(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
