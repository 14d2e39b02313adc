//! Two non-interacting Jaynes-Cummings cells with initially entangled atoms,
//! and the field-purity diagnostics of the entanglement transfer.

use ndarray::{Array2, Zip};

use crate::dynamics::{CouplingSchedule, JcParams};
use crate::error::Result;
use crate::fock::{make_coherent, FieldState, FockBasisSpec};
use crate::real::{cast, im_unit, Real, C};

/// Atomic configuration index: `2 * atom_A + atom_B` with `g = 0`, `e = 1`.
pub const ATOM_CONFIGS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

/// Joint state of atoms A, B and fields a, b.
///
/// Stored as four `(n_max+1) x (n_max+1)` field-field blocks, one per atomic
/// configuration; the joint density matrix is never materialized.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoCavityState<T: Real> {
    /// `blocks[2*sA + sB][[n_a, n_b]]`.
    pub blocks: [Array2<C<T>>; 4],
    pub basis: FockBasisSpec<T>,
}

impl<T: Real> TwoCavityState<T> {
    pub fn zero(basis: FockBasisSpec<T>) -> Self {
        let dim = basis.dim();
        let z = Array2::from_elem((dim, dim), C::new(T::zero(), T::zero()));
        Self { blocks: [z.clone(), z.clone(), z.clone(), z], basis }
    }

    pub fn norm_sqr(&self) -> T {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|c| c.norm_sqr()).sum())
            .sum()
    }

    pub fn overlap(&self, other: &Self) -> C<T> {
        let mut acc = C::new(T::zero(), T::zero());
        for (x, y) in self.blocks.iter().zip(&other.blocks) {
            for (a, b) in x.iter().zip(y.iter()) {
                acc = acc + a.conj() * *b;
            }
        }
        acc
    }
}

/// `(|e>_A |g>_B - |g>_A |e>_B)/sqrt(2) (x) |alpha>_a (x) |alpha>_b`.
pub fn make_bell_initial<T: Real>(
    alpha: C<T>,
    basis: FockBasisSpec<T>,
) -> Result<TwoCavityState<T>> {
    let field = make_coherent(alpha, basis)?;
    Ok(bell_product(&field, &field))
}

/// Singlet atoms tensored with arbitrary per-cavity fields.
pub fn bell_product<T: Real>(field_a: &FieldState<T>, field_b: &FieldState<T>) -> TwoCavityState<T> {
    let basis = field_a.basis;
    let dim = basis.dim();
    let mut state = TwoCavityState::zero(basis);
    let r = T::one() / cast::<T>(2.0).sqrt();
    for na in 0..dim {
        for nb in 0..dim {
            let joint = field_a.amps[na] * field_b.amps[nb];
            state.blocks[2][[na, nb]] = joint.scale(r); // |e g>
            state.blocks[1][[na, nb]] = -joint.scale(r); // |g e>
        }
    }
    state
}

/// Apply the single-cell block rotation of angle `theta = lambda t` to one
/// cell. `cell = 0` acts on `(atom_A, n_a)`, `cell = 1` on `(atom_B, n_b)`.
fn rotate_cell<T: Real>(state: &mut TwoCavityState<T>, theta: T, cell: usize) {
    let dim = state.basis.dim();
    let mi = -im_unit::<T>();
    // atomic config indices with the chosen cell in g / e, other cell fixed
    let pairs: [(usize, usize); 2] = if cell == 0 { [(0, 2), (1, 3)] } else { [(0, 1), (2, 3)] };
    for (kg, ke) in pairs {
        let (bg, be) = {
            // split_at_mut cannot borrow two array elements; index carefully
            let blocks = &mut state.blocks;
            let (lo, hi) = blocks.split_at_mut(ke);
            (&mut lo[kg], &mut hi[0])
        };
        for n in 0..dim - 1 {
            let angle = theta * cast::<T>((n + 1) as f64).sqrt();
            let (s, c) = angle.sin_cos();
            if cell == 0 {
                let (g_row, e_row) = (bg.row_mut(n + 1), be.row_mut(n));
                let mut g_row = g_row;
                let mut e_row = e_row;
                Zip::from(&mut e_row).and(&mut g_row).for_each(|e, g| {
                    let (e0, g0) = (*e, *g);
                    *e = e0.scale(c) + mi * g0.scale(s);
                    *g = g0.scale(c) + mi * e0.scale(s);
                });
            } else {
                let mut g_col = bg.column_mut(n + 1);
                let mut e_col = be.column_mut(n);
                Zip::from(&mut e_col).and(&mut g_col).for_each(|e, g| {
                    let (e0, g0) = (*e, *g);
                    *e = e0.scale(c) + mi * g0.scale(s);
                    *g = g0.scale(c) + mi * e0.scale(s);
                });
            }
        }
    }
}

/// Resonant propagation `U_A(t) (x) U_B(t)` with equal coupling in both
/// cells; the joint Hamiltonian is never formed.
pub fn propagate_two_cavity<T: Real>(
    state: &TwoCavityState<T>,
    t: T,
    params: &JcParams<T>,
) -> Result<TwoCavityState<T>> {
    params.check_resonant()?;
    let mut out = state.clone();
    let theta = params.lambda * t;
    rotate_cell(&mut out, theta, 0);
    rotate_cell(&mut out, theta, 1);
    Ok(out)
}

/// Propagation with independent coupling schedules per cell, for staggered
/// switching of the two interactions.
pub fn propagate_two_cavity_scheduled<T: Real>(
    state: &TwoCavityState<T>,
    t: T,
    schedule_a: &CouplingSchedule<T>,
    schedule_b: &CouplingSchedule<T>,
    params: &JcParams<T>,
) -> Result<TwoCavityState<T>> {
    params.check_resonant()?;
    let mut out = state.clone();
    rotate_cell(&mut out, schedule_a.effective_time(t), 0);
    rotate_cell(&mut out, schedule_b.effective_time(t), 1);
    Ok(out)
}

/// Purity `p_ab = Tr(rho_ab^2)` of the two-field subsystem after tracing out
/// both atoms, via the Gram identity `p_ab = sum_{j,k} |<v_j|v_k>|^2` over
/// the four atomic-configuration field vectors.
pub fn purity_fields<T: Real>(state: &TwoCavityState<T>) -> T {
    let mut acc = T::zero();
    for j in 0..4 {
        for k in 0..4 {
            let mut ov = C::new(T::zero(), T::zero());
            for (a, b) in state.blocks[j].iter().zip(state.blocks[k].iter()) {
                ov = ov + a.conj() * *b;
            }
            acc = acc + ov.norm_sqr();
        }
    }
    acc
}

fn dagger_dot<T: Real>(m: &Array2<C<T>>, into: &mut Array2<C<T>>) {
    // into += M M^dag; row-row dots keep the inner loop contiguous
    let dim = m.nrows();
    let data = m.as_slice().expect("blocks are stored in standard layout");
    for i in 0..dim {
        let row_i = &data[i * dim..(i + 1) * dim];
        for j in 0..dim {
            let row_j = &data[j * dim..(j + 1) * dim];
            let mut acc = C::new(T::zero(), T::zero());
            for (x, y) in row_i.iter().zip(row_j) {
                acc = acc + *x * y.conj();
            }
            into[[i, j]] = into[[i, j]] + acc;
        }
    }
}

/// Single-cavity purities `(p_a, p_b)` via the reshape identity
/// `rho_a = sum_k M_k M_k^dag` with `M_k` the field-field block for atomic
/// configuration `k`.
pub fn purity_single<T: Real>(state: &TwoCavityState<T>) -> (T, T) {
    let dim = state.basis.dim();
    let mut rho_a = Array2::from_elem((dim, dim), C::new(T::zero(), T::zero()));
    let mut rho_b = rho_a.clone();
    for block in &state.blocks {
        dagger_dot(block, &mut rho_a);
        let transposed = block.t().as_standard_layout().into_owned();
        dagger_dot(&transposed, &mut rho_b);
    }
    // Tr(rho^2) = Frobenius norm squared for Hermitian rho
    let p_a = rho_a.iter().map(|c| c.norm_sqr()).sum();
    let p_b = rho_b.iter().map(|c| c.norm_sqr()).sum();
    (p_a, p_b)
}

/// Purity of the atoms-only reduction, `Tr(rho_AB^2)` over the 4x4 atomic
/// density matrix.
pub fn purity_atoms<T: Real>(state: &TwoCavityState<T>) -> T {
    let mut rho = [[C::new(T::zero(), T::zero()); 4]; 4];
    for j in 0..4 {
        for k in 0..4 {
            let mut ov = C::new(T::zero(), T::zero());
            for (a, b) in state.blocks[j].iter().zip(state.blocks[k].iter()) {
                ov = ov + a.conj() * *b;
            }
            rho[k][j] = ov;
        }
    }
    let mut acc = T::zero();
    for j in 0..4 {
        for k in 0..4 {
            acc = acc + (rho[j][k] * rho[k][j]).re;
        }
    }
    acc
}

/// One row of a purity sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurityRow<T: Real> {
    pub t_over_tau: T,
    pub p_ab: T,
    pub p_a: T,
    pub p_b: T,
}

/// Purity sweep over a time grid given in units of `tau = alpha pi / lambda`.
#[derive(Debug, Clone)]
pub struct PurityCurve<T: Real> {
    pub alpha: T,
    pub tau: T,
    pub rows: Vec<PurityRow<T>>,
}

/// Sweep the purities from the singlet-atoms initial state.
///
/// `t_grid` is in units of `tau`; each point propagates from `t = 0` with the
/// closed-form blocks, so grid points are independent.
pub fn purity_curve<T: Real>(
    alpha: T,
    t_grid: &[T],
    params: &JcParams<T>,
) -> Result<PurityCurve<T>> {
    let basis = FockBasisSpec::for_mean_photon(alpha * alpha);
    let initial = make_bell_initial(C::new(alpha, T::zero()), basis)?;
    let tau = alpha * T::PI() / params.lambda;
    let mut rows = Vec::with_capacity(t_grid.len());
    for &u in t_grid {
        let evolved = propagate_two_cavity(&initial, u * tau, params)?;
        let p_ab = purity_fields(&evolved);
        let (p_a, p_b) = purity_single(&evolved);
        rows.push(PurityRow { t_over_tau: u, p_ab, p_a, p_b });
    }
    Ok(PurityCurve { alpha, tau, rows })
}

/// Fitted early-time single-cavity purity `0.5 e^{-lambda^2 t^2} + 0.5`.
pub fn fitted_pa<T: Real>(t: T, _alpha: T, lambda: T) -> T {
    cast::<T>(0.5) * (-(lambda * t).powi(2)).exp() + cast::<T>(0.5)
}

/// Fitted two-field purity around the revival:
/// `0.5 sin^4(lambda t / 2 alpha) e^{-lambda^2 t^2 / 8 alpha^4} + 0.5`.
pub fn fitted_pab<T: Real>(t: T, alpha: T, lambda: T) -> T {
    let half = cast::<T>(0.5);
    let s = (lambda * t / (cast::<T>(2.0) * alpha)).sin();
    half * s.powi(4) * (-(lambda * t).powi(2) / (cast::<T>(8.0) * alpha.powi(4))).exp() + half
}

/// Full width of the `p_ab` revival at half height (crossings of 0.75),
/// interpolated on the sampled curve around its peak.
pub fn revival_width<T: Real>(rows: &[(T, T)]) -> Option<T> {
    let half_height = cast::<T>(0.75);
    let peak = rows
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.partial_cmp(&b.1 .1).unwrap())?
        .0;
    if rows[peak].1 < half_height {
        return None;
    }
    let cross = |i0: usize, i1: usize| -> T {
        let (t0, v0) = rows[i0];
        let (t1, v1) = rows[i1];
        t0 + (half_height - v0) / (v1 - v0) * (t1 - t0)
    };
    let mut left = None;
    for i in (1..=peak).rev() {
        if rows[i - 1].1 < half_height && rows[i].1 >= half_height {
            left = Some(cross(i - 1, i));
            break;
        }
    }
    let mut right = None;
    for i in peak..rows.len() - 1 {
        if rows[i].1 >= half_height && rows[i + 1].1 < half_height {
            right = Some(cross(i, i + 1));
            break;
        }
    }
    match (left, right) {
        (Some(l), Some(r)) => Some(r - l),
        _ => None,
    }
}
