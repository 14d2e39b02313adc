//! Time evolution of the single-cavity resonant Jaynes-Cummings system.
//!
//! The resonant interaction-picture Hamiltonian couples `|e,n>` with
//! `|g,n+1>` only, so the propagator factorizes into 2x2 rotations per
//! excitation block; no matrix exponential is ever formed.

use crate::error::{Error, Result};
use crate::fock::{estimate_phi, FieldState, FockBasisSpec};
use crate::real::{cast, cis, im_unit, Real, C};

/// Which picture the propagator works in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Picture {
    Interaction,
    Schrodinger,
}

/// Parameters of the single-cavity JC model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcParams<T: Real> {
    /// Atom-field coupling.
    pub lambda: T,
    /// Photon frequency.
    pub omega: T,
    /// Atomic transition frequency.
    pub omega_a: T,
    pub picture: Picture,
}

impl<T: Real> JcParams<T> {
    /// Resonant parameters (`omega_a = omega`) in the given picture.
    pub fn resonant(lambda: T, omega: T, picture: Picture) -> Self {
        assert!(lambda > T::zero(), "coupling must be positive");
        Self { lambda, omega, omega_a: omega, picture }
    }

    /// Resonant interaction-picture parameters; the free frequencies drop out.
    pub fn interaction(lambda: T) -> Self {
        Self::resonant(lambda, T::zero(), Picture::Interaction)
    }

    pub fn check_resonant(&self) -> Result<()> {
        let tol = cast::<T>(1e-12) * self.omega.abs().max(T::one());
        if (self.omega - self.omega_a).abs() > tol {
            return Err(Error::NotResonant {
                omega: self.omega.to_f64().unwrap_or(f64::NAN),
                omega_a: self.omega_a.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }
}

/// Joint state of qubit and field: field amplitudes paired with `|g>` and `|e>`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomFieldState<T: Real> {
    pub amps_g: Vec<C<T>>,
    pub amps_e: Vec<C<T>>,
    pub basis: FockBasisSpec<T>,
}

impl<T: Real> AtomFieldState<T> {
    /// Product state `(c_g |g> + c_e |e>) (x) field`.
    pub fn product(c_g: C<T>, c_e: C<T>, field: &FieldState<T>) -> Self {
        Self {
            amps_g: field.amps.iter().map(|f| *f * c_g).collect(),
            amps_e: field.amps.iter().map(|f| *f * c_e).collect(),
            basis: field.basis,
        }
    }

    pub fn norm_sqr(&self) -> T {
        let g: T = self.amps_g.iter().map(|f| f.norm_sqr()).sum();
        let e: T = self.amps_e.iter().map(|f| f.norm_sqr()).sum();
        g + e
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &Self) -> Result<C<T>> {
        if self.basis.n_max != other.basis.n_max {
            return Err(Error::BasisMismatch {
                left: self.basis.n_max,
                right: other.basis.n_max,
            });
        }
        let mut acc = C::new(T::zero(), T::zero());
        for (a, b) in self.amps_g.iter().zip(&other.amps_g) {
            acc = acc + a.conj() * *b;
        }
        for (a, b) in self.amps_e.iter().zip(&other.amps_e) {
            acc = acc + a.conj() * *b;
        }
        Ok(acc)
    }

    /// `|<self|other>|`.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.overlap(other)?.norm())
    }

    /// Probability mass in each excitation block `N = 0 .. n_max + 1`.
    /// Block `N` holds `|g,N>` and (for `N >= 1`) `|e,N-1>`.
    pub fn block_masses(&self) -> Vec<T> {
        let dim = self.basis.dim();
        let mut masses = vec![T::zero(); dim + 1];
        for n in 0..dim {
            masses[n] = masses[n] + self.amps_g[n].norm_sqr();
            masses[n + 1] = masses[n + 1] + self.amps_e[n].norm_sqr();
        }
        masses
    }
}

/// Closed-form resonant propagation by the angle `theta = lambda t` on each
/// block: within `{|e,n>, |g,n+1>}` the unitary is
/// `cos(theta sqrt(n+1)) 1 - i sin(theta sqrt(n+1)) swap`.
fn rotate_blocks<T: Real>(state: &AtomFieldState<T>, theta: T) -> AtomFieldState<T> {
    let dim = state.basis.dim();
    let mut out = state.clone();
    let mi = -im_unit::<T>();
    for n in 0..dim - 1 {
        let angle = theta * cast::<T>((n + 1) as f64).sqrt();
        let (s, c) = angle.sin_cos();
        let e = state.amps_e[n];
        let g = state.amps_g[n + 1];
        out.amps_e[n] = e.scale(c) + mi * g.scale(s);
        out.amps_g[n + 1] = g.scale(c) + mi * e.scale(s);
    }
    // |g,0> is dark; |e,n_max> has no partner on the truncated basis.
    out
}

fn apply_free_phases<T: Real>(state: &mut AtomFieldState<T>, omega: T, t: T) {
    // e^{-i omega (N - 1/2) t}, N = n for |g,n>, n+1 for |e,n>
    let half = cast::<T>(0.5);
    for (n, f) in state.amps_g.iter_mut().enumerate() {
        *f = *f * cis(-omega * (cast::<T>(n as f64) - half) * t);
    }
    for (n, f) in state.amps_e.iter_mut().enumerate() {
        *f = *f * cis(-omega * (cast::<T>(n as f64) + half) * t);
    }
}

/// Exact propagation for time `t` under the resonant JC Hamiltonian.
pub fn propagate_exact<T: Real>(
    state: &AtomFieldState<T>,
    t: T,
    params: &JcParams<T>,
) -> Result<AtomFieldState<T>> {
    params.check_resonant()?;
    let mut out = rotate_blocks(state, params.lambda * t);
    if params.picture == Picture::Schrodinger {
        apply_free_phases(&mut out, params.omega, t);
    }
    Ok(out)
}

/// Kind of time dependence of the coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScheduleKind<T: Real> {
    Constant,
    /// `lambda(t) = lambda0 e^{-width^2 t^2}`.
    Gaussian { width: T },
}

/// Time-dependent coupling `lambda(t)` with its effective-time integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSchedule<T: Real> {
    pub kind: ScheduleKind<T>,
    pub lambda0: T,
}

impl<T: Real> CouplingSchedule<T> {
    pub fn constant(lambda0: T) -> Self {
        Self { kind: ScheduleKind::Constant, lambda0 }
    }

    pub fn gaussian(lambda0: T, width: T) -> Self {
        Self { kind: ScheduleKind::Gaussian { width }, lambda0 }
    }

    pub fn lambda_at(&self, t: T) -> T {
        match self.kind {
            ScheduleKind::Constant => self.lambda0,
            ScheduleKind::Gaussian { width } => self.lambda0 * (-(width * t).powi(2)).exp(),
        }
    }

    /// `Theta(t) = int_0^t lambda(s) ds`.
    pub fn effective_time(&self, t: T) -> T {
        match self.kind {
            ScheduleKind::Constant => self.lambda0 * t,
            ScheduleKind::Gaussian { .. } => {
                adaptive_simpson(|s| self.lambda_at(s), T::zero(), t, cast(1e-10), 30)
            }
        }
    }
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
pub fn adaptive_simpson<T: Real, F: Fn(T) -> T + Copy>(
    f: F,
    a: T,
    b: T,
    tol: T,
    max_depth: usize,
) -> T {
    fn simpson<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> T {
        let mid = (a + b) / cast::<T>(2.0);
        (b - a) / cast::<T>(6.0) * (f(a) + cast::<T>(4.0) * f(mid) + f(b))
    }
    fn recurse<T: Real, F: Fn(T) -> T>(
        f: &F,
        a: T,
        b: T,
        whole: T,
        tol: T,
        depth: usize,
    ) -> T {
        let mid = (a + b) / cast::<T>(2.0);
        let left = simpson(f, a, mid);
        let right = simpson(f, mid, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= cast::<T>(15.0) * tol {
            left + right + delta / cast::<T>(15.0)
        } else {
            let half_tol = tol / cast::<T>(2.0);
            recurse(f, a, mid, left, half_tol, depth - 1)
                + recurse(f, mid, b, right, half_tol, depth - 1)
        }
    }
    if a == b {
        return T::zero();
    }
    let whole = simpson(&f, a, b);
    recurse(&f, a, b, whole, tol, max_depth)
}

/// Propagation under a time-dependent coupling; exact because the scheduled
/// Hamiltonians at different times commute.
pub fn propagate_scheduled<T: Real>(
    state: &AtomFieldState<T>,
    t: T,
    schedule: &CouplingSchedule<T>,
    params: &JcParams<T>,
) -> Result<AtomFieldState<T>> {
    params.check_resonant()?;
    let mut out = rotate_blocks(state, schedule.effective_time(t));
    if params.picture == Picture::Schrodinger {
        apply_free_phases(&mut out, params.omega, t);
    }
    Ok(out)
}

/// Thresholds for the effective-separation validity checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionThresholds<T: Real> {
    pub max_residual: T,
    pub min_nbar_over_spread: T,
    pub min_spread: T,
}

impl<T: Real> Default for ConditionThresholds<T> {
    fn default() -> Self {
        Self {
            max_residual: cast(0.05),
            min_nbar_over_spread: cast(3.0),
            min_spread: cast(3.0),
        }
    }
}

/// Measured validity of the effective-Hamiltonian approximation for a field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionReport<T: Real> {
    pub phi: T,
    /// Residual of the uniform-phase condition `f_n ~ e^{i phi} f_{n-1}`.
    pub residual: T,
    pub n_bar: T,
    /// Photon-number spread, taken as twice the standard deviation.
    pub spread: T,
    pub max_level_prob: T,
    pub phase_ok: bool,
    pub spread_ok: bool,
}

impl<T: Real> ConditionReport<T> {
    pub fn passed(&self) -> bool {
        self.phase_ok && self.spread_ok
    }
}

/// Check the two validity conditions: phase coherence between neighboring
/// levels, and a photon distribution that is wide but narrow relative to its
/// mean.
pub fn check_conditions<T: Real>(
    field: &FieldState<T>,
    thresholds: &ConditionThresholds<T>,
) -> ConditionReport<T> {
    let (phi, residual) = match estimate_phi(field) {
        Ok(pair) => pair,
        Err(_) => (T::zero(), T::infinity()),
    };
    let n_bar = field.mean_photon();
    let spread = cast::<T>(2.0) * field.photon_variance().sqrt();
    let max_level_prob = field
        .amps
        .iter()
        .map(|f| f.norm_sqr())
        .fold(T::zero(), T::max);
    let phase_ok = residual < thresholds.max_residual;
    let spread_ok = spread > thresholds.min_spread
        && spread > T::zero()
        && n_bar / spread > thresholds.min_nbar_over_spread;
    ConditionReport { phi, residual, n_bar, spread, max_level_prob, phase_ok, spread_ok }
}

/// Effective time evolution of a product state under the diagonalized
/// approximate Hamiltonian: the A branch picks up field phases
/// `e^{-i sqrt(n) lambda t}` and atomic phase `e^{-i lambda t / (2 sqrt(nbar))}`,
/// the B branch the conjugated ones.
///
/// The evolution is returned regardless of the condition verdict so that
/// Loschmidt-echo studies can probe the approximation where it degrades.
pub fn effective_propagate<T: Real>(
    c_g: C<T>,
    c_e: C<T>,
    field: &FieldState<T>,
    phi: T,
    t: T,
    params: &JcParams<T>,
) -> (AtomFieldState<T>, ConditionReport<T>) {
    let report = check_conditions(field, &ConditionThresholds::default());
    let dim = field.basis.dim();
    let sqrt2 = cast::<T>(2.0).sqrt();
    let a_coef = (c_g + cis(-phi) * c_e) / sqrt2;
    let b_coef = (c_g - cis(-phi) * c_e) / sqrt2;
    let n_bar = field.mean_photon();
    let mu = if n_bar > T::zero() {
        params.lambda * t / (cast::<T>(2.0) * n_bar.sqrt())
    } else {
        T::zero()
    };
    let mut amps_g = vec![C::new(T::zero(), T::zero()); dim];
    let mut amps_e = vec![C::new(T::zero(), T::zero()); dim];
    let e_phase = cis(phi);
    for n in 0..dim {
        let chi = cast::<T>(n as f64).sqrt() * params.lambda * t;
        let plus = field.amps[n] * cis(-chi);
        let minus = field.amps[n] * cis(chi);
        let branch_a = a_coef * plus;
        let branch_b = b_coef * minus;
        amps_g[n] = (branch_a + branch_b) / sqrt2;
        amps_e[n] = e_phase * (branch_a * cis(-mu) - branch_b * cis(mu)) / sqrt2;
    }
    (AtomFieldState { amps_g, amps_e, basis: field.basis }, report)
}

/// First attractor instant `tau = sqrt(nbar) pi / lambda`; later ones are
/// `t_l = (2l + 1) tau`.
pub fn attractor_time<T: Real>(field: &FieldState<T>, params: &JcParams<T>) -> Result<T> {
    let n_bar = field.mean_photon();
    if n_bar <= T::zero() {
        return Err(Error::VacuumField);
    }
    Ok(n_bar.sqrt() * T::PI() / params.lambda)
}
