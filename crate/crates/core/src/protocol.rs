//! Write (qubit -> field cat) and read (spin-echo recovery) protocols.

use crate::dynamics::{attractor_time, propagate_exact, AtomFieldState, JcParams};
use crate::error::{Error, Result};
use crate::fock::{estimate_phi, FieldState};
use crate::real::{cast, cis, im_unit, Real, C};

/// Pure qubit state `c_g |g> + c_e |e>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState<T: Real> {
    pub c_g: C<T>,
    pub c_e: C<T>,
}

impl<T: Real> QubitState<T> {
    pub fn new(c_g: C<T>, c_e: C<T>) -> Result<Self> {
        let n2 = c_g.norm_sqr() + c_e.norm_sqr();
        if n2 <= T::zero() {
            return Err(Error::ZeroNorm);
        }
        let inv = T::one() / n2.sqrt();
        Ok(Self { c_g: c_g.scale(inv), c_e: c_e.scale(inv) })
    }

    /// `(|g> + |e>) / sqrt(2)`.
    pub fn plus() -> Self {
        let r = T::one() / cast::<T>(2.0).sqrt();
        Self { c_g: C::new(r, T::zero()), c_e: C::new(r, T::zero()) }
    }
}

/// Record of a protocol run: labeled states plus the fidelity-vs-time curve.
#[derive(Debug, Clone)]
pub struct ProtocolTrace<T: Real> {
    pub checkpoints: Vec<(String, T, AtomFieldState<T>)>,
    pub fidelity_curve: Vec<(T, T)>,
}

/// The idealized state at the attractor instant `t_l = (2l+1) tau`:
/// `(|g> - (-1)^l i e^{i phi} |e>)/sqrt(2) (x) (A |Phi_+> + B |Phi_->)`
/// with `|Phi_+->` carrying field phases `e^{-+ i sqrt(n) lambda t_l}`.
pub fn target_write_state<T: Real>(
    qubit: &QubitState<T>,
    field: &FieldState<T>,
    params: &JcParams<T>,
    l: usize,
) -> Result<AtomFieldState<T>> {
    let (phi, _) = estimate_phi(field)?;
    let tau = attractor_time(field, params)?;
    let t_l = cast::<T>((2 * l + 1) as f64) * tau;
    let sqrt2 = cast::<T>(2.0).sqrt();
    let a_coef = (qubit.c_g + cis(-phi) * qubit.c_e) / sqrt2;
    let b_coef = (qubit.c_g - cis(-phi) * qubit.c_e) / sqrt2;
    let sign = if l % 2 == 0 { T::one() } else { -T::one() };
    let atom_e = -im_unit::<T>().scale(sign) * cis(phi);
    let dim = field.basis.dim();
    let mut amps_g = vec![C::new(T::zero(), T::zero()); dim];
    let mut amps_e = vec![C::new(T::zero(), T::zero()); dim];
    for n in 0..dim {
        let chi = cast::<T>(n as f64).sqrt() * params.lambda * t_l;
        let cat = a_coef * field.amps[n] * cis(-chi) + b_coef * field.amps[n] * cis(chi);
        amps_g[n] = cat / sqrt2;
        amps_e[n] = atom_e * cat / sqrt2;
    }
    Ok(AtomFieldState { amps_g, amps_e, basis: field.basis })
}

/// Atomic flip `-sigma_z`: `|g> -> |g>`, `|e> -> -|e>`.
pub fn flip_atom<T: Real>(state: &AtomFieldState<T>) -> AtomFieldState<T> {
    AtomFieldState {
        amps_g: state.amps_g.clone(),
        amps_e: state.amps_e.iter().map(|f| -*f).collect(),
        basis: state.basis,
    }
}

/// Spin-echo conjugation `(-sigma_z) U(t) (-sigma_z) U(t)`.
///
/// At resonance `{sigma_z, H} = 0` makes this the identity in the
/// interaction picture; in the Schrodinger picture it leaves per-block
/// phases `e^{-2 i omega (N - 1/2) t}`.
pub fn spin_echo_sequence<T: Real>(
    state0: &AtomFieldState<T>,
    t: T,
    params: &JcParams<T>,
) -> Result<AtomFieldState<T>> {
    let half = propagate_exact(state0, t, params)?;
    let flipped = flip_atom(&half);
    let full = propagate_exact(&flipped, t, params)?;
    Ok(flip_atom(&full))
}

/// Exact write: propagate `qubit (x) field` to the attractor instant `tau`,
/// recording the overlap with the idealized target over `grid_points`
/// instants in `[0, 2 tau]`.
pub fn write_protocol<T: Real>(
    qubit: &QubitState<T>,
    field: &FieldState<T>,
    params: &JcParams<T>,
    grid_points: usize,
) -> Result<(AtomFieldState<T>, ProtocolTrace<T>)> {
    let initial = AtomFieldState::product(qubit.c_g, qubit.c_e, field);
    let target = target_write_state(qubit, field, params, 0)?;
    let tau = attractor_time(field, params)?;
    let mut curve = Vec::with_capacity(grid_points);
    for k in 0..grid_points {
        let t = cast::<T>(2.0) * tau * cast::<T>(k as f64) / cast::<T>((grid_points - 1) as f64);
        let evolved = propagate_exact(&initial, t, params)?;
        curve.push((t, evolved.fidelity(&target)?));
    }
    let written = propagate_exact(&initial, tau, params)?;
    let trace = ProtocolTrace {
        checkpoints: vec![
            ("initial".into(), T::zero(), initial),
            ("written".into(), tau, written.clone()),
        ],
        fidelity_curve: curve,
    };
    Ok((written, trace))
}

/// Spin-echo read: flip the atom, propagate for `tau`, and compare against
/// `-sigma_z` applied to the original pre-write state.
pub fn read_protocol<T: Real>(
    written: &AtomFieldState<T>,
    original: &AtomFieldState<T>,
    field: &FieldState<T>,
    params: &JcParams<T>,
    grid_points: usize,
) -> Result<(AtomFieldState<T>, ProtocolTrace<T>)> {
    let start = flip_atom(written);
    let target = flip_atom(original);
    let tau = attractor_time(field, params)?;
    let mut curve = Vec::with_capacity(grid_points);
    for k in 0..grid_points {
        let t = cast::<T>(2.0) * tau * cast::<T>(k as f64) / cast::<T>((grid_points - 1) as f64);
        let evolved = propagate_exact(&start, t, params)?;
        curve.push((t, evolved.fidelity(&target)?));
    }
    let recovered = propagate_exact(&start, tau, params)?;
    let trace = ProtocolTrace {
        checkpoints: vec![
            ("flipped".into(), T::zero(), start),
            ("recovered".into(), tau, recovered.clone()),
        ],
        fidelity_curve: curve,
    };
    Ok((recovered, trace))
}

/// Recover the qubit encoded in a written state by least-squares projection
/// of the field (conditioned on the attractor atomic state) onto the
/// slightly non-orthogonal cat pair.
///
/// Returns the decoded qubit and the leakage `1 - captured probability`.
pub fn decode_qubit<T: Real>(
    state: &AtomFieldState<T>,
    cat_plus: &FieldState<T>,
    cat_minus: &FieldState<T>,
    phi: T,
) -> Result<(QubitState<T>, T)> {
    let cross = cat_plus.overlap(cat_minus)?;
    if cross.norm() >= cast::<T>(0.05) {
        return Err(Error::BasisNotOrthogonal {
            overlap: cross.norm().to_f64().unwrap_or(f64::NAN),
        });
    }
    // project the atom onto the attractor (|g> - i e^{i phi} |e>)/sqrt(2)
    let sqrt2 = cast::<T>(2.0).sqrt();
    let atom_e = -im_unit::<T>() * cis(phi);
    let dim = state.basis.dim();
    let mut field_vec = vec![C::new(T::zero(), T::zero()); dim];
    for n in 0..dim {
        field_vec[n] = (state.amps_g[n] + atom_e.conj() * state.amps_e[n]) / sqrt2;
    }
    let dot = |a: &[C<T>], b: &[C<T>]| -> C<T> {
        a.iter()
            .zip(b)
            .fold(C::new(T::zero(), T::zero()), |acc, (x, y)| acc + x.conj() * *y)
    };
    // 2x2 Gram solve for (A, B)
    let gpp = C::new(cat_plus.norm_sqr(), T::zero());
    let gmm = C::new(cat_minus.norm_sqr(), T::zero());
    let gpm = cross;
    let rp = dot(&cat_plus.amps, &field_vec);
    let rm = dot(&cat_minus.amps, &field_vec);
    let det = gpp * gmm - gpm * gpm.conj();
    let a_coef = (gmm * rp - gpm * rm) / det;
    let b_coef = (gpp * rm - gpm.conj() * rp) / det;
    // captured probability of the fitted model within the full state
    let fit_norm = (a_coef.conj() * a_coef * gpp
        + b_coef.conj() * b_coef * gmm
        + a_coef.conj() * b_coef * gpm
        + b_coef.conj() * a_coef * gpm.conj())
    .re;
    let leakage = (T::one() - fit_norm / state.norm_sqr()).max(T::zero());
    let c_g = (a_coef + b_coef) / sqrt2;
    let c_e = cis(phi) * (a_coef - b_coef) / sqrt2;
    Ok((QubitState::new(c_g, c_e)?, leakage))
}

/// Locate the fidelity peak `t_m` on `[0.8 tau, 1.2 tau]` by a dense scan at
/// `1e-3 tau` resolution followed by golden-section refinement.
pub fn peak_fidelity<T: Real, F: Fn(T) -> T>(fidelity: F, tau: T) -> (T, T) {
    let lo0 = cast::<T>(0.8) * tau;
    let hi0 = cast::<T>(1.2) * tau;
    let steps = 400usize;
    let mut best_k = 0usize;
    let mut best = T::neg_infinity();
    for k in 0..=steps {
        let t = lo0 + (hi0 - lo0) * cast::<T>(k as f64) / cast::<T>(steps as f64);
        let f = fidelity(t);
        if f > best {
            best = f;
            best_k = k;
        }
    }
    let h = (hi0 - lo0) / cast::<T>(steps as f64);
    let mut lo = lo0 + h * cast::<T>(best_k.saturating_sub(1) as f64);
    let mut hi = lo0 + h * cast::<T>((best_k + 1).min(steps) as f64);
    let inv_phi = cast::<T>(0.618_033_988_749_894_8);
    for _ in 0..60 {
        let d = (hi - lo) * inv_phi;
        let t1 = hi - d;
        let t2 = lo + d;
        if fidelity(t1) < fidelity(t2) {
            lo = t1;
        } else {
            hi = t2;
        }
    }
    let t_m = (lo + hi) / cast::<T>(2.0);
    (t_m, fidelity(t_m))
}
