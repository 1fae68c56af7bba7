//! AW(3) relations: the symmetric q-commutator relations for every allowable
//! triple, the double q-commutator (linear) form, and the quadratic form in
//! the unshifted Casimirs.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::opalgebra::{
    anticommutator, involute_monomial, q_commutator, GeneratorLabel, GeneratorRegistry,
};
use crate::operator::SparseOperator;
use crate::uqrep::{casimir_unshifted, IntervalLabel};

use super::{inputs, RelationReport, Suite};

/// Ordered triple `(i, j, k)` of disjoint nonempty subsets of `{1,..,4}`,
/// stored as bitmasks, in its canonical rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AllowableTriple {
    pub i: u8,
    pub j: u8,
    pub k: u8,
}

fn mask_name(m: u8) -> String {
    let digits: String = (0..4)
        .filter(|b| m >> b & 1 == 1)
        .map(|b| char::from(b'1' + b))
        .collect();
    if m.count_ones() > 1 {
        format!("{{{digits}}}")
    } else {
        digits
    }
}

fn min_leg(m: u8) -> u32 {
    m.trailing_zeros()
}

impl AllowableTriple {
    /// Canonical rotation of `(i, j, k)` if the cyclic order is allowable:
    /// all singletons with some rotation increasing, or one doubleton rotated
    /// into the middle with `i < k`.
    pub fn new(i: u8, j: u8, k: u8) -> Option<Self> {
        let sets = [i, j, k];
        if sets
            .iter()
            .any(|&s| s == 0 || s & !0b1111 != 0 || s.count_ones() > 2)
            || i & j != 0
            || j & k != 0
            || i & k != 0
        {
            return None;
        }
        let doubletons = sets.iter().filter(|s| s.count_ones() == 2).count();
        let rotations = [(i, j, k), (j, k, i), (k, i, j)];
        let found = match doubletons {
            0 => rotations.into_iter().find(|&(a, b, c)| a < b && b < c),
            1 => rotations
                .into_iter()
                .find(|&(a, b, c)| b.count_ones() == 2 && min_leg(a) < min_leg(c)),
            _ => None,
        };
        found.map(|(i, j, k)| AllowableTriple { i, j, k })
    }

    /// The allowable cyclic order on the same three sets.
    pub fn oriented(i: u8, j: u8, k: u8) -> Option<Self> {
        Self::new(i, j, k).or_else(|| Self::new(k, j, i))
    }

    /// True when two of the three pairwise unions are consecutive.
    pub fn is_two_bosonic(self) -> bool {
        self.relations()
            .iter()
            .filter(|r| !r.left.is_fermionic())
            .count()
            == 2
    }

    /// The three cyclic relations
    /// `(q-q^{-1})^{-1}[Q^(ab), Q^(bc)]_q = Q^(ca) + I(Q^(a)Q^(c) + Q^(abc)Q^(b))`
    /// for the rotations (i,j,k), (k,i,j), (j,k,i).
    pub fn relations(self) -> [SymmetricRelation; 3] {
        let all = self.i | self.j | self.k;
        let rel = |a: u8, b: u8, c: u8| {
            let l =
                |m| GeneratorLabel::from_subset(m).expect("every subset of size ≤ 4 has a label");
            SymmetricRelation {
                left: l(a | b),
                right: l(b | c),
                linear: l(c | a),
                monomials: [[l(a), l(c)], [l(all), l(b)]],
            }
        };
        [
            rel(self.i, self.j, self.k),
            rel(self.k, self.i, self.j),
            rel(self.j, self.k, self.i),
        ]
    }
}

impl fmt::Display for AllowableTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{})",
            mask_name(self.i),
            mask_name(self.j),
            mask_name(self.k)
        )
    }
}

/// All ten allowable triples: singletons first, then by doubleton.
pub fn enumerate_allowable() -> Vec<AllowableTriple> {
    let singles = [1u8, 2, 4, 8];
    let mut out = Vec::new();
    for (x, &a) in singles.iter().enumerate() {
        for (y, &b) in singles.iter().enumerate().skip(x + 1) {
            for &c in &singles[y + 1..] {
                out.extend(AllowableTriple::new(a, b, c));
            }
        }
    }
    for double in [0b0011u8, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100] {
        let rest: Vec<u8> = singles
            .iter()
            .copied()
            .filter(|s| s & double == 0)
            .collect();
        out.extend(AllowableTriple::new(rest[0], double, rest[1]));
    }
    out
}

/// One symmetric relation in label form, before any involution is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetricRelation {
    pub left: GeneratorLabel,
    pub right: GeneratorLabel,
    pub linear: GeneratorLabel,
    /// The two monomials the involution acts on.
    pub monomials: [[GeneratorLabel; 2]; 2],
}

/// Which generator orientation fills each slot of a symmetric relation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Orientation {
    pub left: bool,
    pub right: bool,
    pub linear: bool,
    /// Monomials involuted with reversed factor order.
    pub reversed_monomials: bool,
}

impl Orientation {
    pub fn is_default(self) -> bool {
        self == Orientation::default()
    }

    fn all() -> impl Iterator<Item = Orientation> {
        (0u8..16).map(|m| Orientation {
            left: m & 1 != 0,
            right: m & 2 != 0,
            linear: m & 4 != 0,
            reversed_monomials: m & 8 != 0,
        })
    }

    fn admissible(self, rel: &SymmetricRelation) -> bool {
        (!self.left || rel.left.is_fermionic())
            && (!self.right || rel.right.is_fermionic())
            && (!self.linear || rel.linear.is_fermionic())
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_default() {
            return f.write_str("default");
        }
        let flips: Vec<&str> = [
            (self.left, "left involuted"),
            (self.right, "right involuted"),
            (self.linear, "linear term involuted"),
            (self.reversed_monomials, "monomial factors reversed"),
        ]
        .into_iter()
        .filter_map(|(on, s)| on.then_some(s))
        .collect();
        f.write_str(&flips.join(", "))
    }
}

fn orient(label: GeneratorLabel, flip: bool) -> GeneratorLabel {
    if flip {
        label.involution()
    } else {
        label
    }
}

fn symmetric_residual(
    reg: &GeneratorRegistry,
    rel: &SymmetricRelation,
    o: Orientation,
) -> Result<SparseOperator> {
    let c = reg.params().q_minus_inv().inv()?;
    let lhs = reg
        .q_commutator(orient(rel.left, o.left), orient(rel.right, o.right))?
        .scale(&c);
    let mut rhs = reg.get(orient(rel.linear, o.linear))?.clone();
    for m in &rel.monomials {
        let mut factors = involute_monomial(m);
        if o.reversed_monomials {
            factors.reverse();
        }
        rhs = rhs.add(&reg.product(&factors)?)?;
    }
    lhs.sub(&rhs)
}

/// Checks the three symmetric relations of `t`. Each is tried under the
/// default orientation first; on failure every admissible orientation is
/// searched and the first passing one is recorded in the report note.
pub fn check_aw3_symmetric(
    reg: &GeneratorRegistry,
    t: AllowableTriple,
) -> Result<Vec<RelationReport>> {
    t.relations()
        .iter()
        .enumerate()
        .map(|(n, rel)| {
            let labels = [
                rel.left,
                rel.right,
                rel.linear,
                rel.monomials[0][0],
                rel.monomials[0][1],
                rel.monomials[1][0],
                rel.monomials[1][1],
            ];
            let id = format!("aw3-symmetric:{t}:{}", n + 1);
            let default = symmetric_residual(reg, rel, Orientation::default())?;
            if default.is_zero() {
                return Ok(RelationReport::from_residual(
                    id,
                    Suite::Aw3Symmetric,
                    inputs(&labels),
                    &default,
                )
                .with_note("orientation: default"));
            }
            for o in Orientation::all().skip(1).filter(|o| o.admissible(rel)) {
                let residual = symmetric_residual(reg, rel, o)?;
                if residual.is_zero() {
                    return Ok(RelationReport::from_residual(
                        id,
                        Suite::Aw3Symmetric,
                        inputs(&labels),
                        &residual,
                    )
                    .with_note(format!("orientation: {o}")));
                }
            }
            Ok(
                RelationReport::from_residual(id, Suite::Aw3Symmetric, inputs(&labels), &default)
                    .with_note("orientation: none passes"),
            )
        })
        .collect()
}

/// Consecutive labels for the AW(3) copy on legs `s, s+1, s+2`.
struct Aw3Copy {
    single: [GeneratorLabel; 3],
    left: GeneratorLabel,
    right: GeneratorLabel,
    total: GeneratorLabel,
}

fn aw3_copies(legs: usize) -> Vec<Aw3Copy> {
    use GeneratorLabel::*;
    let mut out = Vec::new();
    if legs >= 3 {
        out.push(Aw3Copy {
            single: [Q1, Q2, Q3],
            left: Q12,
            right: Q23,
            total: Q123,
        });
    }
    if legs >= 4 {
        out.push(Aw3Copy {
            single: [Q2, Q3, Q4],
            left: Q23,
            right: Q34,
            total: Q234,
        });
    }
    out
}

/// Double q-commutator form with shifted Casimirs, `B = Q1 Q3 + Q2 Q123`:
///
/// ```text
/// [[Q12,Q23]_q,Q12]_q = (q-q^{-1})² (B Q12 + Q23 + Q1 Q123 + Q2 Q3)
/// [[Q23,Q12]_q,Q23]_q = (q-q^{-1})² (B Q23 + Q12 + Q3 Q123 + Q1 Q2)
/// ```
///
/// On four legs the copy on legs 2..4 is checked too.
pub fn check_aw3_linear(reg: &GeneratorRegistry) -> Result<Vec<RelationReport>> {
    let q = reg.q();
    let d = reg.params().q_minus_inv();
    let d2 = &d * &d;
    let mut reports = Vec::new();
    for copy in aw3_copies(reg.legs()) {
        let [a, b, c] = copy.single;
        let (x, y, t) = (copy.left, copy.right, copy.total);
        let central_b = reg.product(&[a, c])?.add(&reg.product(&[b, t])?)?;
        let lines = [(x, y, [a, t], [b, c]), (y, x, [c, t], [a, b])];
        for (n, (first, second, m1, m2)) in lines.into_iter().enumerate() {
            let outer = reg.get(first)?;
            let lhs = q_commutator(q, &reg.q_commutator(first, second)?, outer)?;
            let rhs = central_b
                .compose(outer)?
                .add(reg.get(second)?)?
                .add(&reg.product(&m1)?)?
                .add(&reg.product(&m2)?)?
                .scale(&d2);
            reports.push(RelationReport::from_residual(
                format!("aw3-linear:{t}:{}", n + 1),
                Suite::Aw3Linear,
                inputs(&[first, second, a, b, c, t]),
                &lhs.sub(&rhs)?,
            ));
        }
    }
    Ok(reports)
}

/// Central combinations of the quadratic form.
pub struct Aw3QuadraticConstants {
    pub b: SparseOperator,
    pub d1: SparseOperator,
    pub d2: SparseOperator,
}

struct Unshifted {
    q1: SparseOperator,
    q2: SparseOperator,
    q3: SparseOperator,
    q12: SparseOperator,
    q23: SparseOperator,
    q123: SparseOperator,
}

fn unshifted(reg: &GeneratorRegistry) -> Result<Unshifted> {
    let p = reg.params();
    let b = reg.basis();
    let legs = reg.legs();
    let u = |lo, hi| casimir_unshifted(p, b, IntervalLabel::new(lo, hi, legs)?);
    Ok(Unshifted {
        q1: u(1, 1)?,
        q2: u(2, 2)?,
        q3: u(3, 3)?,
        q12: u(1, 2)?,
        q23: u(2, 3)?,
        q123: u(1, 3)?,
    })
}

impl Aw3QuadraticConstants {
    fn build(reg: &GeneratorRegistry, u: &Unshifted) -> Result<Self> {
        let q = reg.q();
        let qi = reg.params().q_inv();
        let d = reg.params().q_minus_inv();
        let one = Rational::one();
        let two = Rational::from_integer(2);
        let q_plus_1 = q + &one;
        let q_plus_1_sq = &q_plus_1 * &q_plus_1;

        let p13_2_123 = u.q1.compose(&u.q3)?.add(&u.q2.compose(&u.q123)?)?;
        let sum = u.q1.add(&u.q2)?.add(&u.q3)?.add(&u.q123)?;
        let b = p13_2_123.scale(&(&d * &d)).add(&sum.scale(&two))?;

        let d_common = |pair: SparseOperator| -> Result<SparseOperator> {
            let lin = -(&two * q).checked_div(&q_plus_1_sq)?;
            let constant = (&two * &(q * q)).checked_div(&(&q_plus_1_sq * &q_plus_1_sq))?;
            Ok(SparseOperator::linear_combination(&[
                (two.clone(), &p13_2_123),
                (lin, &sum),
                (-(q + qi), &pair),
            ])?
            .shift(&constant))
        };
        let d1 = d_common(u.q1.compose(&u.q123)?.add(&u.q2.compose(&u.q3)?)?)?;
        let d2 = d_common(u.q3.compose(&u.q123)?.add(&u.q1.compose(&u.q2)?)?)?;
        Ok(Aw3QuadraticConstants { b, d1, d2 })
    }
}

/// Quadratic form with unshifted Casimirs:
///
/// ```text
/// [[Q12,Q23]_q,Q12]_q = -2 Q12² - 2{Q12,Q23} + B Q12 + Q23 + D1
/// [[Q23,Q12]_q,Q23]_q = -2 Q23² - 2{Q12,Q23} + B Q23 + Q12 + D2
/// ```
///
/// Informational: reports never gate. The note lists the nonzero count of
/// every right-hand term so a failure can be attributed.
pub fn check_aw3_quadratic_form(reg: &GeneratorRegistry) -> Result<Vec<RelationReport>> {
    if reg.legs() < 3 {
        return Err(Error::InvalidConfig(
            "the quadratic AW(3) form needs at least 3 legs".into(),
        ));
    }
    let q = reg.q();
    let u = unshifted(reg)?;
    let consts = Aw3QuadraticConstants::build(reg, &u)?;
    let anti = anticommutator(&u.q12, &u.q23)?;
    let minus_two = Rational::from_integer(-2);
    let lines = [
        (&u.q12, &u.q23, &consts.d1, "Q12,Q23"),
        (&u.q23, &u.q12, &consts.d2, "Q23,Q12"),
    ];
    lines
        .into_iter()
        .enumerate()
        .map(|(n, (x, y, dconst, names))| {
            let lhs = q_commutator(q, &q_commutator(q, x, y)?, x)?;
            let terms: Vec<(&str, SparseOperator)> = vec![
                ("-2X^2", x.compose(x)?.scale(&minus_two)),
                ("-2{X,Y}", anti.scale(&minus_two)),
                ("B*X", consts.b.compose(x)?),
                ("Y", y.clone()),
                ("D", dconst.clone()),
            ];
            let rhs = SparseOperator::linear_combination(
                &terms
                    .iter()
                    .map(|(_, op)| (Rational::one(), op))
                    .collect::<Vec<_>>(),
            )?;
            let residual = lhs.sub(&rhs)?;
            let diag: Vec<String> = std::iter::once(format!("lhs nnz={}", lhs.nnz()))
                .chain(
                    terms
                        .iter()
                        .map(|(name, op)| format!("{name} nnz={}", op.nnz())),
                )
                .collect();
            Ok(RelationReport::from_residual(
                format!("aw3-quadratic:{}", n + 1),
                Suite::Aw3Quadratic,
                names.split(',').map(String::from).collect(),
                &residual,
            )
            .informational()
            .with_note(format!("unshifted Casimirs; {}", diag.join(", "))))
        })
        .collect()
}

/// Linear form (gating) followed by the quadratic form (informational).
pub fn check_aw3_quadratic(reg: &GeneratorRegistry) -> Result<Vec<RelationReport>> {
    let mut reports = check_aw3_linear(reg)?;
    reports.extend(check_aw3_quadratic_form(reg)?);
    Ok(reports)
}
