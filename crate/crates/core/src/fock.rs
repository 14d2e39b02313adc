//! Truncated Fock-basis field states and the (modified) boson operators.

use crate::error::{Error, Result};
use crate::real::{cast, cis, Real, C};

/// Truncation of the single-mode Fock space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockBasisSpec<T: Real> {
    /// Highest retained Fock index.
    pub n_max: usize,
    /// Maximum allowed discarded probability mass.
    pub tail_tol: T,
}

impl<T: Real> FockBasisSpec<T> {
    pub fn new(n_max: usize, tail_tol: T) -> Self {
        assert!(
            tail_tol > T::zero() && tail_tol < T::one(),
            "tail_tol must lie in (0, 1)"
        );
        Self { n_max, tail_tol }
    }

    /// Default truncation for a state with mean photon number `n_bar`:
    /// `n_max = ceil(n_bar + 12 sqrt(n_bar))`, tail tolerance `1e-12`.
    pub fn for_mean_photon(n_bar: T) -> Self {
        let n_bar = n_bar.max(T::zero());
        let n_max = (n_bar + cast::<T>(12.0) * n_bar.sqrt()).ceil();
        Self::new(n_max.to_usize().unwrap_or(0).max(1), cast(1e-12))
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }
}

/// Single-mode field state over a truncated Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState<T: Real> {
    pub amps: Vec<C<T>>,
    pub basis: FockBasisSpec<T>,
}

/// Phase function `g(n)` selecting the flavor of modified coherent state.
#[derive(Debug, Clone, PartialEq)]
pub enum PhaseProfile<T: Real> {
    /// `g(n) = 0`: the canonical coherent state.
    Zero,
    /// `g(n) = gamma sqrt(n)`.
    Sqrt,
    /// Tabulated `g(n)`; `table[0]` must be zero.
    Custom(Vec<T>),
}

impl<T: Real> PhaseProfile<T> {
    /// Evaluate `g(n)`. Indices past a custom table's end are held at the
    /// last tabulated value.
    pub fn g(&self, n: usize, gamma: T) -> T {
        match self {
            PhaseProfile::Zero => T::zero(),
            PhaseProfile::Sqrt => gamma * cast::<T>(n as f64).sqrt(),
            PhaseProfile::Custom(table) => {
                if table.is_empty() {
                    T::zero()
                } else {
                    table[n.min(table.len() - 1)]
                }
            }
        }
    }
}

/// Label of a modified coherent state `|alpha, gamma>`.
#[derive(Debug, Clone, PartialEq)]
pub struct McsLabel<T: Real> {
    pub alpha: C<T>,
    pub gamma: T,
    pub profile: PhaseProfile<T>,
}

impl<T: Real> McsLabel<T> {
    /// The workhorse profile `g(n) = gamma sqrt(n)`.
    pub fn sqrt(alpha: C<T>, gamma: T) -> Self {
        Self { alpha, gamma, profile: PhaseProfile::Sqrt }
    }

    pub fn new(alpha: C<T>, gamma: T, profile: PhaseProfile<T>) -> Self {
        if let PhaseProfile::Custom(table) = &profile {
            assert!(
                table.first().map_or(true, |g0| *g0 == T::zero()),
                "g(0) must vanish"
            );
        }
        Self { alpha, gamma, profile }
    }
}

/// Coherent state `|alpha>` with `f_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!)`,
/// built by the multiplicative recurrence `f_n = f_{n-1} alpha / sqrt(n)`.
pub fn make_coherent<T: Real>(alpha: C<T>, basis: FockBasisSpec<T>) -> Result<FieldState<T>> {
    let dim = basis.dim();
    let mut amps = vec![C::new(T::zero(), T::zero()); dim];
    let a2 = alpha.norm_sqr();
    amps[0] = C::new((-a2 / cast::<T>(2.0)).exp(), T::zero());
    for n in 1..dim {
        let f = amps[n - 1] * alpha / cast::<T>(n as f64).sqrt();
        amps[n] = f;
    }
    // analytic Poisson tail beyond n_max
    let mut p = (-a2).exp();
    let mut kept = p;
    for n in 1..dim {
        p = p * a2 / cast::<T>(n as f64);
        kept = kept + p;
    }
    let lost = (T::one() - kept).max(T::zero());
    if lost > basis.tail_tol {
        return Err(Error::TruncationTooSmall {
            lost: lost.to_f64().unwrap_or(f64::NAN),
            tol: basis.tail_tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut state = FieldState { amps, basis };
    state.renormalize()?;
    Ok(state)
}

/// Modified coherent state: coherent amplitudes times `e^{-i g(n)}`.
pub fn make_mcs<T: Real>(label: &McsLabel<T>, basis: FockBasisSpec<T>) -> Result<FieldState<T>> {
    let mut state = make_coherent(label.alpha, basis)?;
    for (n, f) in state.amps.iter_mut().enumerate() {
        *f = *f * cis(-label.profile.g(n, label.gamma));
    }
    Ok(state)
}

/// Top-hat state: `f_n = 1/sqrt(delta)` on `n_bar - delta/2 <= n < n_bar + delta/2`,
/// zero elsewhere.
pub fn make_tophat<T: Real>(
    n_bar: usize,
    delta: usize,
    basis: FockBasisSpec<T>,
) -> Result<FieldState<T>> {
    assert!(delta >= 1, "window must contain at least one level");
    let lo = n_bar as i64 - (delta / 2) as i64;
    let hi = lo + delta as i64 - 1;
    if lo < 0 || hi > basis.n_max as i64 {
        return Err(Error::WindowOutOfRange { lo, hi, n_max: basis.n_max });
    }
    let mut amps = vec![C::new(T::zero(), T::zero()); basis.dim()];
    let f = T::one() / cast::<T>(delta as f64).sqrt();
    for n in lo..=hi {
        amps[n as usize] = C::new(f, T::zero());
    }
    Ok(FieldState { amps, basis })
}

/// Ladder action `a|n> = sqrt(n) |n-1>`; result left unnormalized.
pub fn apply_annihilation<T: Real>(state: &FieldState<T>) -> FieldState<T> {
    let dim = state.basis.dim();
    let mut amps = vec![C::new(T::zero(), T::zero()); dim];
    for n in 1..dim {
        amps[n - 1] = state.amps[n] * cast::<T>(n as f64).sqrt();
    }
    FieldState { amps, basis: state.basis }
}

/// Ladder action `a^dag |n> = sqrt(n+1) |n+1>`; amplitude flowing past
/// `n_max` is dropped and returned as the lost probability mass.
pub fn apply_creation<T: Real>(state: &FieldState<T>) -> (FieldState<T>, T) {
    let dim = state.basis.dim();
    let mut amps = vec![C::new(T::zero(), T::zero()); dim];
    for n in 0..dim - 1 {
        amps[n + 1] = state.amps[n] * cast::<T>((n + 1) as f64).sqrt();
    }
    let lost = state.amps[dim - 1].norm_sqr() * cast::<T>(dim as f64);
    (FieldState { amps, basis: state.basis }, lost)
}

/// Deformed annihilation `b = e^{i[g(a^dag a) - g(a^dag a + 1)]} a`, i.e.
/// `b|n> = e^{i[g(n-1) - g(n)]} sqrt(n) |n-1>`.
pub fn apply_modified_annihilation<T: Real>(
    state: &FieldState<T>,
    profile: &PhaseProfile<T>,
    gamma: T,
) -> FieldState<T> {
    let dim = state.basis.dim();
    let mut amps = vec![C::new(T::zero(), T::zero()); dim];
    for n in 1..dim {
        let phase = cis(profile.g(n - 1, gamma) - profile.g(n, gamma));
        amps[n - 1] = state.amps[n] * phase * cast::<T>(n as f64).sqrt();
    }
    FieldState { amps, basis: state.basis }
}

/// Estimate the common nearest-neighbor phase `phi` in `f_n ~ e^{i phi} f_{n-1}`.
///
/// Returns `(phi, residual)` where `phi` is the probability-weighted circular
/// mean of `arg(f_n / f_{n-1})` and `residual` is the weighted mean of
/// `|f_n - e^{i phi} f_{n-1}|^2`, a direct measure of how well the
/// uniform-phase condition holds.
pub fn estimate_phi<T: Real>(state: &FieldState<T>) -> Result<(T, T)> {
    let mut acc = C::new(T::zero(), T::zero());
    let mut pairs = 0usize;
    for n in 1..state.basis.dim() {
        let (prev, cur) = (state.amps[n - 1], state.amps[n]);
        if prev.norm_sqr() > T::zero() && cur.norm_sqr() > T::zero() {
            acc = acc + cur * prev.conj();
            pairs += 1;
        }
    }
    if pairs == 0 {
        return Err(Error::DegenerateState);
    }
    let phi = acc.im.atan2(acc.re);
    let rot = cis(phi);
    let mut num = T::zero();
    let mut den = T::zero();
    for n in 1..state.basis.dim() {
        let (prev, cur) = (state.amps[n - 1], state.amps[n]);
        let w = prev.norm_sqr();
        num = num + w * (cur - rot * prev).norm_sqr();
        den = den + w;
    }
    Ok((phi, num / den))
}

impl<T: Real> FieldState<T> {
    pub fn vacuum(basis: FockBasisSpec<T>) -> Self {
        let mut amps = vec![C::new(T::zero(), T::zero()); basis.dim()];
        amps[0] = C::new(T::one(), T::zero());
        Self { amps, basis }
    }

    pub fn fock(n: usize, basis: FockBasisSpec<T>) -> Self {
        assert!(n <= basis.n_max);
        let mut amps = vec![C::new(T::zero(), T::zero()); basis.dim()];
        amps[n] = C::new(T::one(), T::zero());
        Self { amps, basis }
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|f| f.norm_sqr()).sum()
    }

    pub fn renormalize(&mut self) -> Result<()> {
        let n2 = self.norm_sqr();
        if n2 <= T::zero() {
            return Err(Error::ZeroNorm);
        }
        let inv = T::one() / n2.sqrt();
        for f in &mut self.amps {
            *f = f.scale(inv);
        }
        Ok(())
    }

    /// `<n> = sum_n n |f_n|^2`.
    pub fn mean_photon(&self) -> T {
        self.amps
            .iter()
            .enumerate()
            .map(|(n, f)| cast::<T>(n as f64) * f.norm_sqr())
            .sum()
    }

    /// Variance of the photon-number distribution.
    pub fn photon_variance(&self) -> T {
        let mean = self.mean_photon();
        self.amps
            .iter()
            .enumerate()
            .map(|(n, f)| {
                let d = cast::<T>(n as f64) - mean;
                d * d * f.norm_sqr()
            })
            .sum()
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &Self) -> Result<C<T>> {
        if self.basis.n_max != other.basis.n_max {
            return Err(Error::BasisMismatch {
                left: self.basis.n_max,
                right: other.basis.n_max,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(C::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * *b
            }))
    }
}
