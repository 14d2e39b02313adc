//! Deterministic CSV emission for the state and distribution tables.
//!
//! Floats are rendered with 12 significant digits in scientific notation so
//! identical inputs produce byte-identical files.

use std::fmt::Write as _;

use crate::fock::FieldState;
use crate::phase_space::{DistributionKind, DistributionTable};
use crate::protocol::ProtocolTrace;
use crate::real::Real;
use crate::two_cavity::PurityCurve;

/// Render a scalar with 12 significant digits.
pub fn fmt_sig<T: Real>(x: T) -> String {
    let v = x.to_f64().unwrap_or(f64::NAN);
    format!("{v:.11e}")
}

/// `(n, Re f_n, Im f_n)` rows.
pub fn field_state_csv<T: Real>(state: &FieldState<T>) -> String {
    let mut out = String::from("n,re_f,im_f\n");
    for (n, f) in state.amps.iter().enumerate() {
        let _ = writeln!(out, "{n},{},{}", fmt_sig(f.re), fmt_sig(f.im));
    }
    out
}

/// `(p, P)` or `(x, p, W)` rows depending on the table kind.
pub fn distribution_csv<T: Real>(table: &DistributionTable<T>) -> String {
    match table.kind {
        DistributionKind::Momentum => {
            let mut out = String::from("p,density\n");
            for (p, v) in table.p_axis.iter().zip(&table.values) {
                let _ = writeln!(out, "{},{}", fmt_sig(*p), fmt_sig(*v));
            }
            out
        }
        DistributionKind::Wigner => {
            let mut out = String::from("x,p,wigner\n");
            let np = table.p_axis.len();
            for (i, x) in table.x_axis.iter().enumerate() {
                for (j, p) in table.p_axis.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "{},{},{}",
                        fmt_sig(*x),
                        fmt_sig(*p),
                        fmt_sig(table.values[i * np + j])
                    );
                }
            }
            out
        }
    }
}

/// `(time, fidelity)` rows of a protocol trace.
pub fn trace_csv<T: Real>(trace: &ProtocolTrace<T>) -> String {
    let mut out = String::from("time,fidelity\n");
    for (t, f) in &trace.fidelity_curve {
        let _ = writeln!(out, "{},{}", fmt_sig(*t), fmt_sig(*f));
    }
    out
}

/// `(t_over_tau, p_ab, p_a, p_b)` rows of a purity sweep.
pub fn purity_csv<T: Real>(curve: &PurityCurve<T>) -> String {
    let mut out = String::from("t_over_tau,p_ab,p_a,p_b\n");
    for row in &curve.rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_sig(row.t_over_tau),
            fmt_sig(row.p_ab),
            fmt_sig(row.p_a),
            fmt_sig(row.p_b)
        );
    }
    out
}
