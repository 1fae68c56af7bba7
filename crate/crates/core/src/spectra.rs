//! Closed-form Casimir eigenvalues and annihilating-polynomial checks.
//!
//! On the weight-`w` block the interval Casimir `Q^(A)` has its spectrum
//! inside `{λ(k_A + x) : 0 ≤ x ≤ w}`, so the product of `Q^(A) - λ·Id` over
//! that set must vanish there. No eigensolver is involved.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::opalgebra::{GeneratorLabel, GeneratorRegistry};
use crate::relcheck::{inputs, RelationReport, Suite};
use crate::uqrep::{IntervalLabel, RepParams};

/// Label `κ = k_A + x` of an irreducible component inside the interval `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EigenvalueIndex {
    kappa: i64,
}

impl EigenvalueIndex {
    /// Fails unless `kappa ≥ k_A`.
    pub fn new(p: &RepParams, a: IntervalLabel, kappa: i64) -> Result<Self> {
        let floor = p.k_sum(a);
        if kappa < floor {
            return Err(Error::OutOfRange(format!(
                "kappa {kappa} below k_A = {floor} for interval {a}"
            )));
        }
        Ok(EigenvalueIndex { kappa })
    }

    pub fn kappa(self) -> i64 {
        self.kappa
    }
}

fn qpow(q: &Rational, e: i64) -> Rational {
    let e = i32::try_from(e).expect("exponent within i32");
    q.pow(e).expect("admissible q is nonzero")
}

/// Shifted eigenvalue `λ(κ) = -(q^{2κ-1} + q^{1-2κ}) / (q + q^{-1})`.
///
/// Panics if `q` is zero or `q + q^{-1}` vanishes, neither of which happens
/// for an admissible rational `q`.
pub fn casimir_eigenvalue(q: &Rational, kappa: i64) -> Rational {
    let num = qpow(q, 2 * kappa - 1) + qpow(q, 1 - 2 * kappa);
    let den = q + &qpow(q, -1);
    -(num.checked_div(&den).expect("q + 1/q is nonzero"))
}

/// Unshifted eigenvalue `(q^{2κ-1} + q^{1-2κ} - 2) / (q^{-1} - q)²`.
pub fn casimir_eigenvalue_unshifted(q: &Rational, kappa: i64) -> Rational {
    let num = qpow(q, 2 * kappa - 1) + qpow(q, 1 - 2 * kappa) - Rational::from_integer(2);
    let d = qpow(q, -1) - q.clone();
    num.checked_div(&(&d * &d)).expect("q is not ±1")
}

/// `λ(k_A + x)` for `x = 0..=w`.
pub fn predicted_spectrum(p: &RepParams, a: IntervalLabel, w: usize) -> Vec<Rational> {
    let base = p.k_sum(a);
    (0..=w as i64)
        .map(|x| casimir_eigenvalue(p.q(), base + x))
        .collect()
}

/// Generator label of a consecutive interval.
pub fn interval_label(a: IntervalLabel) -> GeneratorLabel {
    let mask = a.members().fold(0u8, |m, i| m | 1 << (i - 1));
    GeneratorLabel::from_subset(mask).expect("every consecutive subset has a label")
}

/// Checks that `Π_{x=0}^{w} (Q^(A) - λ(k_A+x)·Id)` vanishes on the weight-`w` block.
pub fn check_annihilating(
    reg: &GeneratorRegistry,
    a: IntervalLabel,
    w: usize,
) -> Result<RelationReport> {
    let p = reg.params();
    IntervalLabel::new(a.lo(), a.hi(), reg.legs())?;
    if w > p.nmax() {
        return Err(Error::OutOfRange(format!(
            "weight {w} exceeds N_max = {}",
            p.nmax()
        )));
    }
    let label = interval_label(a);
    let q_op = reg.get(label)?;
    let spectrum = predicted_spectrum(p, a, w);

    let mut acc = q_op.shift(&-spectrum[0].clone()).at_weight(w);
    for lambda in &spectrum[1..] {
        acc = q_op.shift(&-lambda.clone()).compose(&acc)?;
    }
    let listed: Vec<String> = spectrum.iter().map(ToString::to_string).collect();
    Ok(RelationReport::from_residual(
        format!("spectra:{label}@{w}"),
        Suite::Spectra,
        inputs(&[label]),
        &acc,
    )
    .with_note(format!("eigenvalues {{{}}}", listed.join(", "))))
}

/// Annihilating checks for every consecutive interval and every weight `≤ N_max`.
pub fn check_all_annihilating(reg: &GeneratorRegistry) -> Result<Vec<RelationReport>> {
    let legs = reg.legs();
    let mut jobs = Vec::new();
    for len in 1..=legs {
        for lo in 1..=legs + 1 - len {
            let a = IntervalLabel::new(lo, lo + len - 1, legs)?;
            jobs.extend((0..=reg.params().nmax()).map(move |w| (a, w)));
        }
    }
    jobs.par_iter()
        .map(|&(a, w)| check_annihilating(reg, a, w))
        .collect()
}
