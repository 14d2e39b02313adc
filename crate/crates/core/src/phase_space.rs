//! Phase-space diagnostics: momentum distributions and Wigner functions
//! establishing the macroscopic distinguishability of the cat components.

use crate::error::Result;
use crate::fock::{make_mcs, FieldState, FockBasisSpec, McsLabel};
use crate::real::{cast, cis, im_unit, Real, C};

/// Uniform rectangular grid in the quadrature plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGrid<T: Real> {
    pub x_min: T,
    pub x_max: T,
    pub p_min: T,
    pub p_max: T,
    pub nx: usize,
    pub np: usize,
}

impl<T: Real> QuadratureGrid<T> {
    pub fn new(x_min: T, x_max: T, p_min: T, p_max: T, nx: usize, np: usize) -> Self {
        assert!(nx >= 2 && np >= 2, "grid counts must be >= 2");
        assert!(x_max > x_min && p_max > p_min, "grid bounds must be ordered");
        Self { x_min, x_max, p_min, p_max, nx, np }
    }

    /// Size the grid from the state's first and second quadrature moments,
    /// extending `n_sigma` standard deviations past the means.
    pub fn auto_for_state(state: &FieldState<T>, n_sigma: T, nx: usize, np: usize) -> Self {
        let (mx, sx, mp, sp) = quadrature_moments(state);
        Self::new(
            mx - n_sigma * sx,
            mx + n_sigma * sx,
            mp - n_sigma * sp,
            mp + n_sigma * sp,
            nx,
            np,
        )
    }

    pub fn x_at(&self, i: usize) -> T {
        self.x_min + (self.x_max - self.x_min) * cast::<T>(i as f64) / cast::<T>((self.nx - 1) as f64)
    }

    pub fn p_at(&self, j: usize) -> T {
        self.p_min + (self.p_max - self.p_min) * cast::<T>(j as f64) / cast::<T>((self.np - 1) as f64)
    }
}

/// Means and standard deviations of `x = (a + a^dag)/sqrt(2)` and
/// `p = (a - a^dag)/(i sqrt(2))`.
pub fn quadrature_moments<T: Real>(state: &FieldState<T>) -> (T, T, T, T) {
    let dim = state.basis.dim();
    let mut a_mean = C::new(T::zero(), T::zero());
    for n in 1..dim {
        a_mean = a_mean + state.amps[n - 1].conj() * state.amps[n] * cast::<T>(n as f64).sqrt();
    }
    let mut a2_mean = C::new(T::zero(), T::zero());
    for n in 2..dim {
        let w = (cast::<T>(n as f64) * cast::<T>((n - 1) as f64)).sqrt();
        a2_mean = a2_mean + state.amps[n - 2].conj() * state.amps[n] * w;
    }
    let n_mean = state.mean_photon();
    let two = cast::<T>(2.0);
    let half = cast::<T>(0.5);
    let mx = two.sqrt() * a_mean.re;
    let mp = two.sqrt() * a_mean.im;
    // <x^2> = (  <a^2> + <a'^2> + 2<n> + 1) / 2 = Re<a^2> + <n> + 1/2
    // <p^2> = (-(<a^2> + <a'^2>) + 2<n> + 1) / 2
    let x2 = a2_mean.re + n_mean + half;
    let p2 = -a2_mean.re + n_mean + half;
    let sx = (x2 - mx * mx).max(cast(1e-12)).sqrt();
    let sp = (p2 - mp * mp).max(cast(1e-12)).sqrt();
    (mx, sx, mp, sp)
}

/// Kind of distribution stored in a [`DistributionTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionKind {
    Momentum,
    Wigner,
}

/// Tabulated distribution: a 1-D momentum density or a 2-D Wigner function
/// stored row-major over `(x, p)`.
#[derive(Debug, Clone)]
pub struct DistributionTable<T: Real> {
    pub kind: DistributionKind,
    pub x_axis: Vec<T>,
    pub p_axis: Vec<T>,
    /// `values[i * p_axis.len() + j]` for Wigner, `values[j]` for momentum.
    pub values: Vec<T>,
}

impl<T: Real> DistributionTable<T> {
    /// Trapezoid-rule integral over the stored grid.
    pub fn integral(&self) -> T {
        match self.kind {
            DistributionKind::Momentum => trapezoid(&self.p_axis, &self.values),
            DistributionKind::Wigner => {
                let np = self.p_axis.len();
                let rows: Vec<T> = (0..self.x_axis.len())
                    .map(|i| trapezoid(&self.p_axis, &self.values[i * np..(i + 1) * np]))
                    .collect();
                trapezoid(&self.x_axis, &rows)
            }
        }
    }

    /// Integrate a Wigner table over `x`, yielding the momentum marginal.
    pub fn momentum_marginal(&self) -> Vec<T> {
        assert_eq!(self.kind, DistributionKind::Wigner);
        let np = self.p_axis.len();
        (0..np)
            .map(|j| {
                let column: Vec<T> = (0..self.x_axis.len())
                    .map(|i| self.values[i * np + j])
                    .collect();
                trapezoid(&self.x_axis, &column)
            })
            .collect()
    }
}

fn trapezoid<T: Real>(axis: &[T], values: &[T]) -> T {
    let mut acc = T::zero();
    for k in 1..axis.len() {
        acc = acc + (axis[k] - axis[k - 1]) * (values[k] + values[k - 1]) / cast::<T>(2.0);
    }
    acc
}

/// Normalized harmonic-oscillator eigenfunction `phi_n(p)` by the stable
/// two-term recurrence
/// `phi_{n+1} = sqrt(2/(n+1)) p phi_n - sqrt(n/(n+1)) phi_{n-1}`.
pub fn hermite_phi<T: Real>(n: usize, p: T) -> T {
    hermite_phi_all(n, p)[n]
}

/// All of `phi_0(p) .. phi_n(p)` in one recurrence pass.
pub fn hermite_phi_all<T: Real>(n: usize, p: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    let quarter = cast::<T>(0.25);
    let phi0 = T::PI().powf(-quarter) * (-p * p / cast::<T>(2.0)).exp();
    out.push(phi0);
    if n == 0 {
        return out;
    }
    out.push(cast::<T>(2.0).sqrt() * p * phi0);
    for k in 1..n {
        let kp1 = cast::<T>((k + 1) as f64);
        let next = (cast::<T>(2.0) / kp1).sqrt() * p * out[k]
            - (cast::<T>(k as f64) / kp1).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// Position-space wavefunction `psi(x) = sum_n f_n phi_n(x)` of a field state.
pub fn position_wavefunction<T: Real>(state: &FieldState<T>, x: T) -> C<T> {
    let phis = hermite_phi_all(state.basis.n_max, x);
    state
        .amps
        .iter()
        .zip(&phis)
        .fold(C::new(T::zero(), T::zero()), |acc, (f, phi)| acc + f.scale(*phi))
}

/// Momentum-space wavefunction `psi(p) = sum_n f_n (-i)^n phi_n(p)`; the
/// `(-i)^n` is the Fourier factor of the oscillator eigenfunctions.
pub fn momentum_wavefunction<T: Real>(state: &FieldState<T>, p: T) -> C<T> {
    let phis = hermite_phi_all(state.basis.n_max, p);
    let mi = -im_unit::<T>();
    let mut factor = C::new(T::one(), T::zero());
    let mut acc = C::new(T::zero(), T::zero());
    for (f, phi) in state.amps.iter().zip(&phis) {
        acc = acc + *f * factor.scale(*phi);
        factor = factor * mi;
    }
    acc
}

/// `P(p, gamma) = |sum_n f_n phi_n(p)|^2` of the modified coherent state on
/// the given momentum grid.
pub fn momentum_distribution<T: Real>(
    label: &McsLabel<T>,
    p_grid: &[T],
    basis: FockBasisSpec<T>,
) -> Result<DistributionTable<T>> {
    let state = make_mcs(label, basis)?;
    Ok(momentum_distribution_of(&state, p_grid))
}

/// Momentum density of an arbitrary field state.
pub fn momentum_distribution_of<T: Real>(state: &FieldState<T>, p_grid: &[T]) -> DistributionTable<T> {
    let values = p_grid
        .iter()
        .map(|&p| momentum_wavefunction(state, p).norm_sqr())
        .collect();
    DistributionTable {
        kind: DistributionKind::Momentum,
        x_axis: Vec::new(),
        p_axis: p_grid.to_vec(),
        values,
    }
}

/// Quadrature settings for the Wigner transform integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerQuadrature<T: Real> {
    /// Half-range of the `y` integration.
    pub y_half_range: T,
    /// Number of Simpson points (odd count).
    pub n_y: usize,
}

impl<T: Real> Default for WignerQuadrature<T> {
    fn default() -> Self {
        Self { y_half_range: cast(8.0), n_y: 3201 }
    }
}

/// Wigner function
/// `W(x,p) = (1/pi) int psi*(x+y) psi(x-y) e^{2ipy} dy`
/// of a pure state, by Simpson quadrature in `y` on the position
/// wavefunction `psi(x) = sum_n f_n phi_n(x)`.
pub fn wigner<T: Real>(
    state: &FieldState<T>,
    grid: &QuadratureGrid<T>,
    quad: &WignerQuadrature<T>,
) -> DistributionTable<T> {
    let n_y = if quad.n_y % 2 == 0 { quad.n_y + 1 } else { quad.n_y };
    let h = cast::<T>(2.0) * quad.y_half_range / cast::<T>((n_y - 1) as f64);
    let y_nodes: Vec<T> = (0..n_y)
        .map(|k| -quad.y_half_range + h * cast::<T>(k as f64))
        .collect();
    let simpson_w: Vec<T> = (0..n_y)
        .map(|k| {
            if k == 0 || k == n_y - 1 {
                T::one()
            } else if k % 2 == 1 {
                cast(4.0)
            } else {
                cast(2.0)
            }
        })
        .collect();
    let x_axis: Vec<T> = (0..grid.nx).map(|i| grid.x_at(i)).collect();
    let p_axis: Vec<T> = (0..grid.np).map(|j| grid.p_at(j)).collect();
    let mut values = vec![T::zero(); grid.nx * grid.np];
    let norm = h / (cast::<T>(3.0) * T::PI());
    for (i, &x) in x_axis.iter().enumerate() {
        // kernel k(y) = psi*(x+y) psi(x-y), weighted for Simpson
        let kernel: Vec<C<T>> = y_nodes
            .iter()
            .zip(&simpson_w)
            .map(|(&y, &w)| {
                let fwd = position_wavefunction(state, x + y);
                let bwd = position_wavefunction(state, x - y);
                (fwd.conj() * bwd).scale(w)
            })
            .collect();
        for (j, &p) in p_axis.iter().enumerate() {
            let mut acc = C::new(T::zero(), T::zero());
            for (&y, k) in y_nodes.iter().zip(&kernel) {
                acc = acc + *k * cis(cast::<T>(2.0) * p * y);
            }
            values[i * grid.np + j] = acc.re * norm;
        }
    }
    DistributionTable { kind: DistributionKind::Wigner, x_axis, p_axis, values }
}

/// Overlap between the exact `sqrt(n)`-phase evolution and its linearized
/// approximation: the direct series value and the stationary-phase
/// closed form `(1 + pi^2/16)^{-1/4} = 0.8868`.
pub fn gea_banacloche_overlap<T: Real>(alpha: T) -> (T, T) {
    let a2 = alpha * alpha;
    let n_up = (a2 + cast::<T>(20.0) * alpha + cast::<T>(30.0))
        .to_usize()
        .unwrap_or(64);
    let mut p = (-a2).exp();
    let mut acc = C::new(p, T::zero());
    for n in 1..=n_up {
        p = p * a2 / cast::<T>(n as f64);
        let phase = -T::PI() * (alpha * cast::<T>(n as f64).sqrt() - cast::<T>(n as f64) / cast::<T>(2.0));
        acc = acc + cis(phase).scale(p);
    }
    let closed = (T::one() + T::PI() * T::PI() / cast::<T>(16.0)).powf(-cast::<T>(0.25));
    (acc.norm(), closed)
}

/// `<alpha, gamma | alpha, -gamma> = e^{-|alpha|^2} sum |alpha|^{2n}/n! e^{2 i gamma sqrt(n)}`.
pub fn cat_overlap<T: Real>(alpha: C<T>, gamma: T) -> C<T> {
    let a2 = alpha.norm_sqr();
    let n_up = (a2 + cast::<T>(20.0) * a2.sqrt() + cast::<T>(30.0))
        .to_usize()
        .unwrap_or(64);
    let mut p = (-a2).exp();
    let mut acc = C::new(p, T::zero());
    for n in 1..=n_up {
        p = p * a2 / cast::<T>(n as f64);
        acc = acc + cis(cast::<T>(2.0) * gamma * cast::<T>(n as f64).sqrt()).scale(p);
    }
    acc
}

/// `int min(P_plus, P_minus) dp`: overlap of the two cat-component momentum
/// densities, the quantitative distinguishability measure.
pub fn distribution_overlap<T: Real>(a: &DistributionTable<T>, b: &DistributionTable<T>) -> T {
    assert_eq!(a.kind, DistributionKind::Momentum);
    assert_eq!(b.kind, DistributionKind::Momentum);
    assert_eq!(a.p_axis.len(), b.p_axis.len());
    let merged: Vec<T> = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| x.min(*y))
        .collect();
    trapezoid(&a.p_axis, &merged)
}
