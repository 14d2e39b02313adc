//! Scalar figures of merit: transfer fidelities, the Loschmidt echo, and
//! the closed-form dissipation factor.

use crate::dynamics::{
    effective_propagate, propagate_exact, AtomFieldState, ConditionReport, JcParams,
};
use crate::error::Result;
use crate::fock::{estimate_phi, FieldState};
use crate::protocol::{flip_atom, target_write_state, QubitState};
use crate::real::{cast, Real};

/// Write fidelity `F_W(t) = |<phi_W| e^{-iHt} |phi(0)>|`: overlap of the
/// exactly propagated initial product state with the idealized cat target.
pub fn write_fidelity<T: Real>(
    t: T,
    qubit: &QubitState<T>,
    field: &FieldState<T>,
    params: &JcParams<T>,
) -> Result<T> {
    let initial = AtomFieldState::product(qubit.c_g, qubit.c_e, field);
    let target = target_write_state(qubit, field, params, 0)?;
    let evolved = propagate_exact(&initial, t, params)?;
    evolved.fidelity(&target)
}

/// Read fidelity `F_R(t)`: starting from the flipped cat target, overlap of
/// the propagated state with `-sigma_z` applied to the pre-write state.
pub fn read_fidelity<T: Real>(
    t: T,
    qubit: &QubitState<T>,
    field: &FieldState<T>,
    params: &JcParams<T>,
) -> Result<T> {
    let written = target_write_state(qubit, field, params, 0)?;
    let start = flip_atom(&written);
    let target = flip_atom(&AtomFieldState::product(qubit.c_g, qubit.c_e, field));
    let evolved = propagate_exact(&start, t, params)?;
    evolved.fidelity(&target)
}

/// Loschmidt echo `L(t) = |<psi(0)| e^{iHt} e^{-iH_eff t} |psi(0)>|`
/// comparing exact and effective forward evolution of a product state.
///
/// Also returns the condition report of the field, since the echo is
/// precisely the measure of how far the conditions are violated.
pub fn loschmidt_echo<T: Real>(
    qubit: &QubitState<T>,
    field: &FieldState<T>,
    t: T,
    params: &JcParams<T>,
) -> Result<(T, ConditionReport<T>)> {
    let (phi, _) = estimate_phi(field)?;
    let initial = AtomFieldState::product(qubit.c_g, qubit.c_e, field);
    let exact = propagate_exact(&initial, t, params)?;
    let (effective, report) = effective_propagate(qubit.c_g, qubit.c_e, field, phi, t, params);
    Ok((exact.fidelity(&effective)?, report))
}

/// Parameters of the closed-form cavity-damping estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissipationParams<T: Real> {
    /// Photon damping rate (zero-temperature reservoir).
    pub kappa: T,
    /// Atom-field coupling, in the same unit as `kappa`.
    pub lambda: T,
    /// Mean photon number.
    pub n_bar: T,
}

impl<T: Real> DissipationParams<T> {
    pub fn new(kappa: T, lambda: T, n_bar: T) -> Self {
        assert!(kappa >= T::zero(), "damping rate must be nonnegative");
        assert!(lambda > T::zero(), "coupling must be positive");
        assert!(n_bar >= T::zero(), "mean photon number must be nonnegative");
        Self { kappa, lambda, n_bar }
    }
}

/// Coherence factor at the revival time `t_R = 2 tau`:
/// `|F(t_R)| = e^{-4 pi kappa nbar^{3/2} / lambda}`.
/// Only the ratio `kappa / lambda` enters.
pub fn dissipation_factor<T: Real>(p: &DissipationParams<T>) -> T {
    (-cast::<T>(4.0) * T::PI() * p.kappa * p.n_bar.powf(cast(1.5)) / p.lambda).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{make_coherent, FockBasisSpec};
    use crate::real::C;

    type F = f64;

    #[test]
    fn dissipation_reference_values() {
        // kappa/lambda = 1e-5, nbar = 25
        let p = DissipationParams::new(1e-5 as F, 1.0, 25.0);
        assert!((dissipation_factor(&p) - 0.9844).abs() < 1e-4);
        // fiber decay 0.152 MHz against lambda = 2 pi x 75 MHz
        let p = DissipationParams::new(0.152 as F, 2.0 * std::f64::consts::PI * 75.0, 25.0);
        assert!((dissipation_factor(&p) - 0.6025).abs() < 1e-3);
        // optical cavity: essentially complete loss of coherence
        let two_pi = 2.0 * std::f64::consts::PI;
        let p = DissipationParams::new(two_pi * 3.5 as F, two_pi * 75.0, 25.0);
        assert!(dissipation_factor(&p) < 1e-3);
        // kappa = 0 leaves the factor at 1
        let p = DissipationParams::new(0.0 as F, 1.0, 25.0);
        assert!((dissipation_factor(&p) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dissipation_monotonicity() {
        let base = dissipation_factor(&DissipationParams::new(1e-4 as F, 1.0, 25.0));
        assert!(dissipation_factor(&DissipationParams::new(2e-4 as F, 1.0, 25.0)) < base);
        assert!(dissipation_factor(&DissipationParams::new(1e-4 as F, 1.0, 36.0)) < base);
        assert!(dissipation_factor(&DissipationParams::new(1e-4 as F, 2.0, 25.0)) > base);
    }

    #[test]
    fn write_equals_read_fidelity() {
        let alpha = 5.0;
        let basis = FockBasisSpec::for_mean_photon(alpha * alpha);
        let field = make_coherent(C::new(alpha, 0.0), basis).unwrap();
        let params = JcParams::interaction(1.0);
        let qubit = QubitState::plus();
        let tau = crate::dynamics::attractor_time(&field, &params).unwrap();
        for k in 0..50 {
            let t = 2.0 * tau * k as F / 49.0;
            let w = write_fidelity(t, &qubit, &field, &params).unwrap();
            let r = read_fidelity(t, &qubit, &field, &params).unwrap();
            assert!((w - r).abs() < 1e-12, "t = {t}: {w} vs {r}");
        }
    }

    #[test]
    fn initial_write_fidelity_below_one() {
        let alpha = 5.0;
        let basis = FockBasisSpec::<F>::for_mean_photon(alpha * alpha);
        let field = make_coherent(C::new(alpha, 0.0), basis).unwrap();
        let params = JcParams::interaction(1.0);
        let f0 = write_fidelity(0.0, &QubitState::plus(), &field, &params).unwrap();
        assert!(f0 < 1.0);
        // direct inner product of initial vs target as an independent check
        let initial = AtomFieldState::product(
            QubitState::plus().c_g,
            QubitState::plus().c_e,
            &field,
        );
        let target = target_write_state(&QubitState::plus(), &field, &params, 0).unwrap();
        assert!((f0 - initial.fidelity(&target).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn loschmidt_echo_at_zero_is_one() {
        let alpha = 4.0;
        let basis = FockBasisSpec::<F>::for_mean_photon(alpha * alpha);
        let field = make_coherent(C::new(alpha, 0.0), basis).unwrap();
        let params = JcParams::interaction(1.0);
        let (l0, _) = loschmidt_echo(&QubitState::plus(), &field, 0.0, &params).unwrap();
        assert!((l0 - 1.0).abs() < 1e-12);
    }
}
