//! Gauged positive discrete series of U_q(su(1,1)) and its tensor powers.
//!
//! The unitary matrix elements of E and F involve square roots. Rescaling the
//! basis vectors diagonally moves the whole product of the two coefficients
//! onto E and leaves F with coefficient 1:
//!
//! ```text
//! K e_n    = q^{k+n} e_n
//! K^-1 e_n = q^{-k-n} e_n
//! E e_n    = A_n e_{n+1},  A_n = -q^{-1-2k-2n} (1-q^{2n+2})(1-q^{4k+2n}) / (q^-1 - q)^2
//! F e_n    = e_{n-1}       (F e_0 = 0)
//! ```
//!
//! Conjugation is an algebra isomorphism, so every relation survives and every
//! entry stays rational. The model is not unitary.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::fockspace::{MultiIndex, TruncatedBasis, MAX_LEGS, MIN_LEGS};
use crate::operator::{SparseOperator, WeightDegree};

/// Specialization of the representation: `q`, the lowest weights `k_i`, and the truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepParams {
    q: Rational,
    k: Vec<u32>,
    nmax: usize,
    q_inv: Rational,
}

impl RepParams {
    pub fn new(q: Rational, k: Vec<u32>, nmax: usize) -> Result<Self> {
        if q.is_zero() || q.abs().is_one() {
            return Err(Error::InvalidConfig(format!(
                "q must not be 0 or ±1, got {q}"
            )));
        }
        if !(MIN_LEGS..=MAX_LEGS).contains(&k.len()) {
            return Err(Error::InvalidConfig(format!(
                "need 2 to 4 legs, got {}",
                k.len()
            )));
        }
        if k.iter().any(|&ki| ki < 1) {
            return Err(Error::InvalidConfig(
                "every k_i must be a positive integer".into(),
            ));
        }
        if nmax < 1 {
            return Err(Error::InvalidConfig("N_max must be at least 1".into()));
        }
        let q_inv = q.inv()?;
        Ok(RepParams { q, k, nmax, q_inv })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn q_inv(&self) -> &Rational {
        &self.q_inv
    }

    /// q - q^{-1}; nonzero for admissible q.
    pub fn q_minus_inv(&self) -> Rational {
        &self.q - &self.q_inv
    }

    /// q + q^{-1}.
    pub fn q_plus_inv(&self) -> Rational {
        &self.q + &self.q_inv
    }

    /// q^e.
    pub fn qpow(&self, e: i64) -> Rational {
        let e = i32::try_from(e).expect("exponent fits in i32");
        self.q.pow(e).expect("q is nonzero")
    }

    pub fn k(&self) -> &[u32] {
        &self.k
    }

    /// Lowest weight of the 1-based `leg`.
    pub fn k_of(&self, leg: usize) -> u32 {
        self.k[leg - 1]
    }

    /// Σ k_i over the interval.
    pub fn k_sum(&self, a: IntervalLabel) -> i64 {
        a.members().map(|i| self.k_of(i) as i64).sum()
    }

    pub fn legs(&self) -> usize {
        self.k.len()
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn with_nmax(&self, nmax: usize) -> Result<Self> {
        RepParams::new(self.q.clone(), self.k.clone(), nmax)
    }

    pub fn basis(&self) -> Result<Arc<TruncatedBasis>> {
        TruncatedBasis::enumerate(self.legs(), self.nmax).map(Arc::new)
    }

    /// Gauged raising coefficient A_n for lowest weight `k`.
    pub fn raising_coefficient(&self, k: u32, n: u32) -> Rational {
        let (k, n) = (k as i64, n as i64);
        let one = Rational::one();
        let d = &self.q_inv - &self.q;
        let num = -self.qpow(-1 - 2 * k - 2 * n)
            * (&one - &self.qpow(2 * n + 2))
            * (&one - &self.qpow(4 * k + 2 * n));
        num.checked_div(&(&d * &d)).expect("q^-1 - q is nonzero")
    }

    fn check_basis(&self, basis: &TruncatedBasis) -> Result<()> {
        if basis.legs() != self.legs() || basis.nmax() != self.nmax {
            return Err(Error::InvalidConfig(format!(
                "basis has {} legs / N_max {}, parameters have {} / {}",
                basis.legs(),
                basis.nmax(),
                self.legs(),
                self.nmax
            )));
        }
        Ok(())
    }
}

/// Consecutive index set `{lo, ..., hi}` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalLabel {
    lo: usize,
    hi: usize,
}

impl IntervalLabel {
    pub fn new(lo: usize, hi: usize, legs: usize) -> Result<Self> {
        if lo < 1 || lo > hi || hi > legs {
            return Err(Error::InvalidInterval { lo, hi, legs });
        }
        Ok(IntervalLabel { lo, hi })
    }

    pub fn single(leg: usize, legs: usize) -> Result<Self> {
        Self::new(leg, leg, legs)
    }

    pub fn lo(self) -> usize {
        self.lo
    }

    pub fn hi(self) -> usize {
        self.hi
    }

    pub fn len(self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }

    pub fn contains(self, leg: usize) -> bool {
        (self.lo..=self.hi).contains(&leg)
    }

    fn check(self, legs: usize) -> Result<()> {
        Self::new(self.lo, self.hi, legs).map(|_| ())
    }
}

impl fmt::Display for IntervalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.members() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UqGenerator {
    E,
    F,
    K,
    KInv,
}

impl UqGenerator {
    pub const ALL: [UqGenerator; 4] = [
        UqGenerator::E,
        UqGenerator::F,
        UqGenerator::K,
        UqGenerator::KInv,
    ];

    pub fn degree(self) -> i32 {
        match self {
            UqGenerator::E => 1,
            UqGenerator::F => -1,
            UqGenerator::K | UqGenerator::KInv => 0,
        }
    }
}

/// Order in which the coproduct is iterated over an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coupling {
    /// (Δ ⊗ id)∘Δ: peel the last leg off, recurse on the left part.
    Left,
    /// (id ⊗ Δ)∘Δ: peel the first leg off, recurse on the right part.
    Right,
}

/// `which` acting on one leg, identity elsewhere.
pub fn primitive_generator(
    p: &RepParams,
    basis: &Arc<TruncatedBasis>,
    leg: usize,
    which: UqGenerator,
) -> Result<SparseOperator> {
    p.check_basis(basis)?;
    if leg < 1 || leg > p.legs() {
        return Err(Error::InvalidConfig(format!(
            "leg {leg} out of range 1..={}",
            p.legs()
        )));
    }
    let k = p.k_of(leg) as i64;
    let columns = basis
        .states()
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let n = s.get(leg);
            match which {
                UqGenerator::K => vec![(j, p.qpow(k + n as i64))],
                UqGenerator::KInv => vec![(j, p.qpow(-k - n as i64))],
                UqGenerator::F => match s.shifted(leg, -1) {
                    Some(t) => vec![(
                        basis.find(&t).expect("lowering stays in basis"),
                        Rational::one(),
                    )],
                    None => Vec::new(),
                },
                UqGenerator::E => match s.shifted(leg, 1).and_then(|t| basis.find(&t)) {
                    Some(i) => vec![(i, p.raising_coefficient(k as u32, n))],
                    None => Vec::new(),
                },
            }
        })
        .collect();
    Ok(SparseOperator::from_columns(
        basis.clone(),
        columns,
        WeightDegree::Homogeneous(which.degree()),
    ))
}

/// Weight of K on `leg` at state `s`, as a power of q: k + n.
fn k_exponent(p: &RepParams, s: &MultiIndex, leg: usize) -> i64 {
    p.k_of(leg) as i64 + s.get(leg) as i64
}

/// Coproduct image of `which` on the interval, from the closed form
/// `E^(A) = Σ_{i∈A} (Π_{j<i} K_j) E_i (Π_{j>i} K_j^{-1})` (likewise F) and
/// `K^(A) = Π K_i`.
pub fn interval_generator(
    p: &RepParams,
    basis: &Arc<TruncatedBasis>,
    a: IntervalLabel,
    which: UqGenerator,
) -> Result<SparseOperator> {
    p.check_basis(basis)?;
    a.check(p.legs())?;
    let columns = basis
        .states()
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let total: i64 = a.members().map(|i| k_exponent(p, s, i)).sum();
            match which {
                UqGenerator::K => vec![(j, p.qpow(total))],
                UqGenerator::KInv => vec![(j, p.qpow(-total))],
                UqGenerator::E | UqGenerator::F => {
                    let delta = which.degree();
                    a.members()
                        .filter_map(|i| {
                            let target = basis.find(&s.shifted(i, delta)?)?;
                            // K_j acts after E_i/F_i only for j = i, so the other
                            // weights are read off the source state.
                            let before: i64 = (a.lo()..i).map(|j| k_exponent(p, s, j)).sum();
                            let after: i64 = (i + 1..=a.hi()).map(|j| k_exponent(p, s, j)).sum();
                            let local = match which {
                                UqGenerator::E => p.raising_coefficient(p.k_of(i), s.get(i)),
                                _ => Rational::one(),
                            };
                            Some((target, local * p.qpow(before - after)))
                        })
                        .collect()
                }
            }
        })
        .collect();
    Ok(SparseOperator::from_columns(
        basis.clone(),
        columns,
        WeightDegree::Homogeneous(which.degree()),
    ))
}

/// Coproduct image assembled by iterating Δ(E) = K⊗E + E⊗K^{-1} (same for F)
/// and Δ(K^{±1}) = K^{±1}⊗K^{±1} with operator products on the full space.
pub fn assembled_interval_generator(
    p: &RepParams,
    basis: &Arc<TruncatedBasis>,
    a: IntervalLabel,
    which: UqGenerator,
    coupling: Coupling,
) -> Result<SparseOperator> {
    p.check_basis(basis)?;
    a.check(p.legs())?;
    if a.len() == 1 {
        return primitive_generator(p, basis, a.lo(), which);
    }
    let (left, right) = match coupling {
        Coupling::Left => (
            IntervalLabel {
                lo: a.lo,
                hi: a.hi - 1,
            },
            IntervalLabel { lo: a.hi, hi: a.hi },
        ),
        Coupling::Right => (
            IntervalLabel { lo: a.lo, hi: a.lo },
            IntervalLabel {
                lo: a.lo + 1,
                hi: a.hi,
            },
        ),
    };
    let part =
        |iv: IntervalLabel, g: UqGenerator| assembled_interval_generator(p, basis, iv, g, coupling);
    match which {
        UqGenerator::K | UqGenerator::KInv => part(left, which)?.compose(&part(right, which)?),
        UqGenerator::E | UqGenerator::F => {
            let first = part(left, UqGenerator::K)?.compose(&part(right, which)?)?;
            let second = part(left, which)?.compose(&part(right, UqGenerator::KInv)?)?;
            first.add(&second)
        }
    }
}

struct IntervalOps {
    k: SparseOperator,
    kinv: SparseOperator,
    e: SparseOperator,
    f: SparseOperator,
}

fn interval_ops(
    p: &RepParams,
    basis: &Arc<TruncatedBasis>,
    a: IntervalLabel,
) -> Result<IntervalOps> {
    Ok(IntervalOps {
        k: interval_generator(p, basis, a, UqGenerator::K)?,
        kinv: interval_generator(p, basis, a, UqGenerator::KInv)?,
        e: interval_generator(p, basis, a, UqGenerator::E)?,
        f: interval_generator(p, basis, a, UqGenerator::F)?,
    })
}

/// Shifted Casimir `-(q^{-1}K² + qK^{-2} + (q-q^{-1})² EF) / (q+q^{-1})` of the interval.
pub fn casimir(
    p: &RepParams,
    basis: &Arc<TruncatedBasis>,
    a: IntervalLabel,
) -> Result<SparseOperator> {
    let ops = interval_ops(p, basis, a)?;
    let d = p.q_minus_inv();
    let k2 = ops.k.compose(&ops.k)?;
    let kinv2 = ops.kinv.compose(&ops.kinv)?;
    let ef = ops.e.compose(&ops.f)?;
    let scale = -p.q_plus_inv().inv()?;
    SparseOperator::linear_combination(&[
        (&scale * p.q_inv(), &k2),
        (&scale * p.q(), &kinv2),
        (&scale * &(&d * &d), &ef),
    ])
}

/// Unshifted Casimir `(q^{-1}K² + qK^{-2} - 2)/(q-q^{-1})² + EF` of the interval.
pub fn casimir_unshifted(
    p: &RepParams,
    basis: &Arc<TruncatedBasis>,
    a: IntervalLabel,
) -> Result<SparseOperator> {
    let ops = interval_ops(p, basis, a)?;
    let d = p.q_minus_inv();
    let d2inv = (&d * &d).inv()?;
    let k2 = ops.k.compose(&ops.k)?;
    let kinv2 = ops.kinv.compose(&ops.kinv)?;
    let ef = ops.e.compose(&ops.f)?;
    let partial = SparseOperator::linear_combination(&[
        (&d2inv * p.q_inv(), &k2),
        (&d2inv * p.q(), &kinv2),
        (Rational::one(), &ef),
    ])?;
    Ok(partial.shift(&(Rational::from_integer(-2) * d2inv)))
}

/// Maps an unshifted Casimir (operator) to the shifted one:
/// `-((q-q^{-1})² U + 2)/(q+q^{-1})`.
pub fn shift_casimir(p: &RepParams, unshifted: &SparseOperator) -> Result<SparseOperator> {
    let d = p.q_minus_inv();
    let s = -p.q_plus_inv().inv()?;
    Ok(unshifted
        .scale(&(&s * &(&d * &d)))
        .shift(&(s * Rational::from_integer(2))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn setup(q: &str, k: &[u32], nmax: usize) -> (RepParams, Arc<TruncatedBasis>) {
        let p = RepParams::new(r(q), k.to_vec(), nmax).unwrap();
        let b = p.basis().unwrap();
        (p, b)
    }

    fn idx(b: &TruncatedBasis, occ: &[u32]) -> usize {
        b.index_of(&MultiIndex::new(occ.to_vec())).unwrap()
    }

    #[test]
    fn params_validation() {
        for q in ["0", "1", "-1"] {
            assert!(RepParams::new(r(q), vec![1, 1], 2).is_err());
        }
        assert!(RepParams::new(r("2"), vec![0, 1], 2).is_err());
        assert!(RepParams::new(r("2"), vec![1], 2).is_err());
        assert!(RepParams::new(r("2"), vec![1; 5], 2).is_err());
        assert!(RepParams::new(r("2"), vec![1, 1], 0).is_err());
        assert!(RepParams::new(r("-3/7"), vec![1, 1], 1).is_ok());
    }

    #[test]
    fn primitive_entries() {
        let (p, b) = setup("2", &[1, 1], 2);
        let k1 = primitive_generator(&p, &b, 1, UqGenerator::K).unwrap();
        assert_eq!(k1.get(0, 0), r("2"));
        let e1 = primitive_generator(&p, &b, 1, UqGenerator::E).unwrap();
        // A_0 = -2^{-3}(1-4)(1-16)/(1/2-2)^2
        assert_eq!(e1.get(idx(&b, &[1, 0]), idx(&b, &[0, 0])), r("-5/2"));
        assert_eq!(e1.get(idx(&b, &[1, 1]), idx(&b, &[0, 1])), r("-5/2"));
        let f1 = primitive_generator(&p, &b, 1, UqGenerator::F).unwrap();
        for n2 in 0..=2 {
            assert!(f1.column(idx(&b, &[0, n2])).is_empty());
        }
        // top-weight states are annihilated by E
        assert!(e1.column(idx(&b, &[0, 2])).is_empty());
        assert!(primitive_generator(&p, &b, 3, UqGenerator::E).is_err());
        for g in UqGenerator::ALL {
            assert!(primitive_generator(&p, &b, 2, g).unwrap().respects_degree());
        }
    }

    #[test]
    fn unitary_coefficients_multiply_to_gauged_one() {
        // a_n b_{n+1} with the radicands squared away: sign and q-powers only.
        let p = RepParams::new(r("5/3"), vec![2, 1], 3).unwrap();
        let q = p.q().clone();
        let d = p.q_inv() - &q;
        for n in 0..4i64 {
            let k = 2i64;
            let radicand =
                (Rational::one() - p.qpow(2 * n + 2)) * (Rational::one() - p.qpow(4 * k + 2 * n));
            // (q^{-1/2-k-n}/d) * (-q^{1/2-k-(n+1)}/d) = -q^{-1-2k-2n}/d^2
            let prefactor = -p.qpow(-1 - 2 * k - 2 * n).checked_div(&(&d * &d)).unwrap();
            assert_eq!(p.raising_coefficient(2, n as u32), prefactor * radicand);
        }
    }

    #[test]
    fn intervals() {
        assert!(IntervalLabel::new(0, 1, 4).is_err());
        assert!(IntervalLabel::new(3, 2, 4).is_err());
        assert!(IntervalLabel::new(2, 5, 4).is_err());
        assert_eq!(IntervalLabel::new(2, 4, 4).unwrap().to_string(), "234");
    }

    #[test]
    fn single_leg_interval_is_primitive() {
        let (p, b) = setup("5/3", &[1, 2, 3], 3);
        for leg in 1..=3 {
            let a = IntervalLabel::single(leg, 3).unwrap();
            for g in UqGenerator::ALL {
                assert_eq!(
                    interval_generator(&p, &b, a, g).unwrap(),
                    primitive_generator(&p, &b, leg, g).unwrap()
                );
            }
        }
    }

    #[test]
    fn two_leg_raising_has_two_summands() {
        let (p, b) = setup("2", &[1, 1], 2);
        let a = IntervalLabel::new(1, 2, 2).unwrap();
        let e = interval_generator(&p, &b, a, UqGenerator::E).unwrap();
        let targets: Vec<usize> = e.column(0).iter().map(|(i, _)| *i).collect();
        assert_eq!(targets, vec![idx(&b, &[0, 1]), idx(&b, &[1, 0])]);
    }

    #[test]
    fn coproduct_routes_agree() {
        let (p, b) = setup("5/3", &[1, 2, 1, 3], 3);
        for (lo, hi) in [(1, 2), (1, 3), (2, 4), (1, 4)] {
            let a = IntervalLabel::new(lo, hi, 4).unwrap();
            for g in UqGenerator::ALL {
                let direct = interval_generator(&p, &b, a, g).unwrap();
                let left = assembled_interval_generator(&p, &b, a, g, Coupling::Left).unwrap();
                let right = assembled_interval_generator(&p, &b, a, g, Coupling::Right).unwrap();
                assert_eq!(direct, left, "{a} {g:?} left");
                assert_eq!(direct, right, "{a} {g:?} right");
            }
        }
    }

    #[test]
    fn single_leg_casimir_is_scalar() {
        let (p, b) = setup("5/3", &[1, 2, 1, 3], 3);
        let minus_one = SparseOperator::scalar(b.clone(), &r("-1"));
        assert_eq!(
            casimir(&p, &b, IntervalLabel::single(1, 4).unwrap()).unwrap(),
            minus_one
        );
        // k = 2: -(q^3 + q^-3)/(q + q^-1)
        let q = p.q();
        let expected = -(q.pow(3).unwrap() + q.pow(-3).unwrap())
            .checked_div(&p.q_plus_inv())
            .unwrap();
        let c2 = casimir(&p, &b, IntervalLabel::single(2, 4).unwrap()).unwrap();
        assert_eq!(c2, SparseOperator::scalar(b.clone(), &expected));
        let u1 = casimir_unshifted(&p, &b, IntervalLabel::single(1, 4).unwrap()).unwrap();
        let d = p.q_minus_inv();
        let eig = (q + p.q_inv() - r("2")).checked_div(&(&d * &d)).unwrap();
        assert_eq!(u1, SparseOperator::scalar(b, &eig));
    }

    #[test]
    fn two_leg_casimir_ground_value() {
        let (p, b) = setup("2", &[1, 1], 2);
        let c = casimir(&p, &b, IntervalLabel::new(1, 2, 2).unwrap()).unwrap();
        assert_eq!(c.get(0, 0), r("-13/4"));
        assert_eq!(c.column(0).len(), 1);
    }

    #[test]
    fn casimirs_are_block_diagonal_and_shift_consistent() {
        let (p, b) = setup("2/5", &[2, 1, 1, 1], 3);
        for (lo, hi) in [(1, 1), (1, 2), (2, 3), (2, 4), (1, 4)] {
            let a = IntervalLabel::new(lo, hi, 4).unwrap();
            let s = casimir(&p, &b, a).unwrap();
            let u = casimir_unshifted(&p, &b, a).unwrap();
            assert!(s.respects_degree() && u.respects_degree());
            assert_eq!(shift_casimir(&p, &u).unwrap(), s);
        }
    }
}
