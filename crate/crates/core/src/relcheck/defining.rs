//! Defining relations of U_q(sl2) per leg and per interval, coassociativity of
//! the coproduct, and centrality of the interval Casimirs.
//!
//! E is truncated at the top weight, so `[E, F]` and anything else that
//! raises past `N_max` is only compared on states of weight `≤ N_max - 1`.

use std::sync::Arc;

use crate::error::Result;
use crate::exactnum::Rational;
use crate::fockspace::TruncatedBasis;
use crate::opalgebra::commutator;
use crate::operator::SparseOperator;
use crate::uqrep::{
    assembled_interval_generator, casimir, casimir_unshifted, interval_generator, shift_casimir,
    Coupling, IntervalLabel, RepParams, UqGenerator,
};

use super::{RelationReport, Suite};

/// Every interval of the leg range, shortest first.
pub(crate) fn all_intervals(legs: usize) -> Vec<IntervalLabel> {
    let mut out = Vec::new();
    for len in 1..=legs {
        for lo in 1..=legs + 1 - len {
            out.push(IntervalLabel::new(lo, lo + len - 1, legs).expect("in range"));
        }
    }
    out
}

/// K K^{-1} = K^{-1} K = Id, KE = qEK, qKF = FK on the full space, and
/// [E,F] = (K² - K^{-2})/(q - q^{-1}) below the top weight; for each leg
/// and each longer interval.
pub fn check_defining_relations(
    p: &RepParams,
    basis: &Arc<TruncatedBasis>,
) -> Result<Vec<RelationReport>> {
    let q = p.q();
    let below_top = basis.nmax() - 1;
    let id = SparseOperator::identity(basis.clone());
    let mut reports = Vec::new();
    for a in all_intervals(p.legs()) {
        let g = |w| interval_generator(p, basis, a, w);
        let (e, f, k, kinv) = (
            g(UqGenerator::E)?,
            g(UqGenerator::F)?,
            g(UqGenerator::K)?,
            g(UqGenerator::KInv)?,
        );
        let inputs = vec![format!("interval={a}")];
        let mut push = |name: &str, residual: SparseOperator| {
            reports.push(RelationReport::from_residual(
                format!("defining:{a}:{name}"),
                Suite::Defining,
                inputs.clone(),
                &residual,
            ));
        };

        push("K*Kinv=1", k.compose(&kinv)?.sub(&id)?);
        push("Kinv*K=1", kinv.compose(&k)?.sub(&id)?);
        push(
            "KE=qEK",
            k.compose(&e)?
                .combine(&Rational::one(), &e.compose(&k)?, &-q)?,
        );
        push(
            "qKF=FK",
            k.compose(&f)?
                .combine(q, &f.compose(&k)?, &Rational::from_integer(-1))?,
        );

        let lhs = commutator(&e, &f)?;
        let k2 = k.compose(&k)?;
        let kinv2 = kinv.compose(&kinv)?;
        let rhs = k2.sub(&kinv2)?.scale(&p.q_minus_inv().inv()?);
        push("[E,F]", lhs.sub(&rhs)?.up_to_weight(below_top));
    }
    Ok(reports)
}

/// Left-iterated, right-iterated and closed-form coproduct images agree on
/// every interval of two or more legs.
pub fn check_coassociativity(
    p: &RepParams,
    basis: &Arc<TruncatedBasis>,
) -> Result<Vec<RelationReport>> {
    let mut reports = Vec::new();
    for a in all_intervals(p.legs()).into_iter().filter(|a| a.len() >= 2) {
        for which in UqGenerator::ALL {
            let left = assembled_interval_generator(p, basis, a, which, Coupling::Left)?;
            let right = assembled_interval_generator(p, basis, a, which, Coupling::Right)?;
            let direct = interval_generator(p, basis, a, which)?;
            let inputs = vec![format!("interval={a}"), format!("generator={which:?}")];
            reports.push(RelationReport::from_residual(
                format!("coassociativity:{a}:{which:?}:left-right"),
                Suite::Coassociativity,
                inputs.clone(),
                &left.sub(&right)?,
            ));
            reports.push(RelationReport::from_residual(
                format!("coassociativity:{a}:{which:?}:left-closed"),
                Suite::Coassociativity,
                inputs,
                &left.sub(&direct)?,
            ));
        }
    }
    Ok(reports)
}

/// `[Q^(A), X^(B)] = 0` for `A ⊆ B` and X ∈ {E, F, K}; E and F only below the top weight.
pub fn check_casimir_centrality(
    p: &RepParams,
    basis: &Arc<TruncatedBasis>,
) -> Result<Vec<RelationReport>> {
    let intervals = all_intervals(p.legs());
    let below_top = basis.nmax() - 1;
    let mut reports = Vec::new();
    for &a in &intervals {
        let qa = casimir(p, basis, a)?;
        for &b in intervals
            .iter()
            .filter(|b| b.lo() <= a.lo() && a.hi() <= b.hi())
        {
            for which in [UqGenerator::E, UqGenerator::F, UqGenerator::K] {
                let x = interval_generator(p, basis, b, which)?;
                let mut residual = commutator(&qa, &x)?;
                if which != UqGenerator::K {
                    residual = residual.up_to_weight(below_top);
                }
                reports.push(RelationReport::from_residual(
                    format!("defining:centrality:Q{a}:{which:?}{b}"),
                    Suite::Defining,
                    vec![
                        format!("casimir={a}"),
                        format!("generator={which:?}"),
                        format!("interval={b}"),
                    ],
                    &residual,
                ));
            }
        }
    }
    Ok(reports)
}

/// The shifted Casimir equals `-((q-q^{-1})² Ω + 2)/(q+q^{-1})` of the unshifted one.
pub fn check_shift_identity(
    p: &RepParams,
    basis: &Arc<TruncatedBasis>,
) -> Result<Vec<RelationReport>> {
    all_intervals(p.legs())
        .into_iter()
        .map(|a| {
            let residual =
                casimir(p, basis, a)?.sub(&shift_casimir(p, &casimir_unshifted(p, basis, a)?)?)?;
            Ok(RelationReport::from_residual(
                format!("defining:shift:Q{a}"),
                Suite::Defining,
                vec![format!("interval={a}")],
                &residual,
            ))
        })
        .collect()
}
