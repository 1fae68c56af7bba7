//! Operator arithmetic and the labeled generators of AW(4).
//!
//! Consecutive labels (`Q12`, `Q123`, ...) are intermediate Casimirs built from
//! the coproduct. The five non-consecutive labels are defined from
//! q-commutators of consecutive ones; their `IQ` partners swap the two
//! q-commutator arguments. The involution is a relabeling: with q specialized
//! there is no matrix realization of q → q^{-1}.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::fockspace::TruncatedBasis;
use crate::operator::SparseOperator;
use crate::uqrep::{casimir, IntervalLabel, RepParams};

/// `[A, B]_q = q AB - q^{-1} BA`.
pub fn q_commutator(
    q: &Rational,
    a: &SparseOperator,
    b: &SparseOperator,
) -> Result<SparseOperator> {
    let ab = a.compose(b)?;
    let ba = b.compose(a)?;
    ab.combine(q, &ba, &(-q.inv()?))
}

/// `AB - BA`.
pub fn commutator(a: &SparseOperator, b: &SparseOperator) -> Result<SparseOperator> {
    a.compose(b)?.sub(&b.compose(a)?)
}

/// `AB + BA`.
pub fn anticommutator(a: &SparseOperator, b: &SparseOperator) -> Result<SparseOperator> {
    a.compose(b)?.add(&b.compose(a)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorLabel {
    Q0,
    Q1,
    Q2,
    Q3,
    Q4,
    Q12,
    Q23,
    Q34,
    Q123,
    Q234,
    Q1234,
    Q13,
    Q24,
    Q14,
    Q124,
    Q134,
    IQ13,
    IQ24,
    IQ14,
    IQ124,
    IQ134,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelClass {
    /// `Q0`, the singletons and `Q1234`.
    Central,
    /// Consecutive labels of size 2 or 3.
    Bosonic,
    /// Non-consecutive labels and their involutions.
    Fermionic,
}

use GeneratorLabel::*;

impl GeneratorLabel {
    pub const ALL: [GeneratorLabel; 21] = [
        Q0, Q1, Q2, Q3, Q4, Q12, Q23, Q34, Q123, Q234, Q1234, Q13, Q24, Q14, Q124, Q134, IQ13,
        IQ24, IQ14, IQ124, IQ134,
    ];

    pub const BOSONIC: [GeneratorLabel; 5] = [Q12, Q23, Q34, Q123, Q234];

    /// The fifteen non-central generators.
    pub const GENERATORS: [GeneratorLabel; 15] = [
        Q12, Q23, Q34, Q123, Q234, Q13, Q24, Q14, Q124, Q134, IQ13, IQ24, IQ14, IQ124, IQ134,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Q0 => "Q0",
            Q1 => "Q1",
            Q2 => "Q2",
            Q3 => "Q3",
            Q4 => "Q4",
            Q12 => "Q12",
            Q23 => "Q23",
            Q34 => "Q34",
            Q123 => "Q123",
            Q234 => "Q234",
            Q1234 => "Q1234",
            Q13 => "Q13",
            Q24 => "Q24",
            Q14 => "Q14",
            Q124 => "Q124",
            Q134 => "Q134",
            IQ13 => "IQ13",
            IQ24 => "IQ24",
            IQ14 => "IQ14",
            IQ124 => "IQ124",
            IQ134 => "IQ134",
        }
    }

    /// Index set as a bitmask, bit `i-1` for leg `i`.
    pub fn subset(self) -> u8 {
        let digits = self.name().trim_start_matches('I').trim_start_matches('Q');
        digits
            .bytes()
            .filter(|&d| d != b'0')
            .fold(0, |m, d| m | 1 << (d - b'1'))
    }

    /// The defined (un-involuted) label for an index set; `None` for sets with no generator.
    pub fn from_subset(mask: u8) -> Option<GeneratorLabel> {
        Self::ALL
            .into_iter()
            .find(|l| !l.is_involuted() && l.subset() == mask)
    }

    pub fn class(self) -> LabelClass {
        match self {
            Q0 | Q1 | Q2 | Q3 | Q4 | Q1234 => LabelClass::Central,
            Q12 | Q23 | Q34 | Q123 | Q234 => LabelClass::Bosonic,
            _ => LabelClass::Fermionic,
        }
    }

    pub fn is_fermionic(self) -> bool {
        self.class() == LabelClass::Fermionic
    }

    pub fn is_involuted(self) -> bool {
        matches!(self, IQ13 | IQ24 | IQ14 | IQ124 | IQ134)
    }

    /// Involution q → q^{-1}, E ↔ F on labels: fixes bosonic and central
    /// labels, swaps `QA ↔ IQA` on fermionic ones.
    pub fn involution(self) -> GeneratorLabel {
        match self {
            Q13 => IQ13,
            Q24 => IQ24,
            Q14 => IQ14,
            Q124 => IQ124,
            Q134 => IQ134,
            IQ13 => Q13,
            IQ24 => Q24,
            IQ14 => Q14,
            IQ124 => Q124,
            IQ134 => Q134,
            other => other,
        }
    }

    /// Consecutive index set, for labels built directly from the coproduct.
    pub fn interval(self) -> Option<(usize, usize)> {
        if self.is_fermionic() || self == Q0 {
            return None;
        }
        let mask = self.subset();
        let lo = mask.trailing_zeros() as usize + 1;
        let hi = 8 - mask.leading_zeros() as usize;
        Some((lo, hi))
    }

    /// Highest leg index the label (or its definition) touches.
    pub fn max_leg(self) -> usize {
        8 - self.subset().leading_zeros() as usize
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

impl Serialize for GeneratorLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Factor-wise involution of a product, order preserved.
pub fn involute_monomial(labels: &[GeneratorLabel]) -> Vec<GeneratorLabel> {
    labels.iter().map(|l| l.involution()).collect()
}

/// `Q^(C) = (q-q^{-1})^{-1} [left, right]_q - a1·a2 - b1·b2`.
#[derive(Clone, Copy, Debug)]
pub struct DerivedDefinition {
    pub label: GeneratorLabel,
    pub left: GeneratorLabel,
    pub right: GeneratorLabel,
    pub central: [(GeneratorLabel, GeneratorLabel); 2],
}

pub const DERIVED: [DerivedDefinition; 5] = [
    DerivedDefinition {
        label: Q13,
        left: Q12,
        right: Q23,
        central: [(Q1, Q3), (Q2, Q123)],
    },
    DerivedDefinition {
        label: Q24,
        left: Q23,
        right: Q34,
        central: [(Q2, Q4), (Q3, Q234)],
    },
    DerivedDefinition {
        label: Q124,
        left: Q34,
        right: Q123,
        central: [(Q12, Q4), (Q3, Q1234)],
    },
    DerivedDefinition {
        label: Q14,
        left: Q123,
        right: Q234,
        central: [(Q1, Q4), (Q23, Q1234)],
    },
    DerivedDefinition {
        label: Q134,
        left: Q234,
        right: Q12,
        central: [(Q1, Q34), (Q2, Q1234)],
    },
];

impl DerivedDefinition {
    /// Definition of `label` (either orientation).
    pub fn of(label: GeneratorLabel) -> Option<DerivedDefinition> {
        let base = if label.is_involuted() {
            label.involution()
        } else {
            label
        };
        let def = DERIVED.into_iter().find(|d| d.label == base)?;
        Some(if label.is_involuted() {
            DerivedDefinition {
                label,
                left: def.right,
                right: def.left,
                central: def.central,
            }
        } else {
            def
        })
    }
}

/// All labeled operators for one specialization.
pub struct GeneratorRegistry {
    params: RepParams,
    basis: Arc<TruncatedBasis>,
    table: BTreeMap<GeneratorLabel, SparseOperator>,
}

impl GeneratorRegistry {
    /// Builds every label meaningful for `p.legs()`: consecutive ones from the
    /// coproduct, `Q0 = -Id`, then the derived ones.
    pub fn build(p: &RepParams, basis: Arc<TruncatedBasis>) -> Result<Self> {
        if basis.legs() != p.legs() || basis.nmax() != p.nmax() {
            return Err(Error::InvalidConfig(
                "basis does not match parameters".into(),
            ));
        }
        let legs = p.legs();
        let available: Vec<GeneratorLabel> = GeneratorLabel::ALL
            .into_iter()
            .filter(|l| l.max_leg() <= legs)
            .collect();

        let casimirs = available
            .par_iter()
            .filter_map(|l| l.interval().map(|iv| (*l, iv)))
            .map(|(l, (lo, hi))| Ok((l, casimir(p, &basis, IntervalLabel::new(lo, hi, legs)?)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut table: BTreeMap<_, _> = casimirs.into_iter().collect();
        table.insert(
            Q0,
            SparseOperator::scalar(basis.clone(), &Rational::from_integer(-1)),
        );

        let mut reg = GeneratorRegistry {
            params: p.clone(),
            basis,
            table,
        };
        let derived = available
            .par_iter()
            .filter(|l| l.is_fermionic())
            .map(|&l| {
                Ok((
                    l,
                    reg.evaluate_definition(DerivedDefinition::of(l).expect("fermionic label"))?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        reg.table.extend(derived);
        Ok(reg)
    }

    /// Right-hand side of a derived definition, from the stored operators.
    pub fn evaluate_definition(&self, def: DerivedDefinition) -> Result<SparseOperator> {
        let c = self.params.q_minus_inv().inv()?;
        let qc = self.q_commutator(def.left, def.right)?;
        let [(a1, a2), (b1, b2)] = def.central;
        let m1 = self.product(&[a1, a2])?;
        let m2 = self.product(&[b1, b2])?;
        SparseOperator::linear_combination(&[
            (c, &qc),
            (Rational::from_integer(-1), &m1),
            (Rational::from_integer(-1), &m2),
        ])
    }

    pub fn params(&self) -> &RepParams {
        &self.params
    }

    pub fn basis(&self) -> &Arc<TruncatedBasis> {
        &self.basis
    }

    pub fn legs(&self) -> usize {
        self.params.legs()
    }

    pub fn q(&self) -> &Rational {
        self.params.q()
    }

    pub fn contains(&self, label: GeneratorLabel) -> bool {
        self.table.contains_key(&label)
    }

    pub fn labels(&self) -> impl Iterator<Item = GeneratorLabel> + '_ {
        self.table.keys().copied()
    }

    pub fn get(&self, label: GeneratorLabel) -> Result<&SparseOperator> {
        self.table
            .get(&label)
            .ok_or_else(|| Error::MissingGenerator(label.to_string()))
    }

    /// Ordered product of the labeled operators; the empty product is `Id`.
    pub fn product(&self, labels: &[GeneratorLabel]) -> Result<SparseOperator> {
        let mut acc = SparseOperator::identity(self.basis.clone());
        for l in labels {
            acc = acc.compose(self.get(*l)?)?;
        }
        Ok(acc)
    }

    pub fn q_commutator(&self, a: GeneratorLabel, b: GeneratorLabel) -> Result<SparseOperator> {
        q_commutator(self.q(), self.get(a)?, self.get(b)?)
    }

    pub fn commutator(&self, a: GeneratorLabel, b: GeneratorLabel) -> Result<SparseOperator> {
        commutator(self.get(a)?, self.get(b)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::TruncatedBasis;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn registry(q: &str, k: &[u32], nmax: usize) -> GeneratorRegistry {
        let p = RepParams::new(r(q), k.to_vec(), nmax).unwrap();
        GeneratorRegistry::build(&p, p.basis().unwrap()).unwrap()
    }

    #[test]
    fn scalar_q_commutator() {
        let b = Arc::new(TruncatedBasis::enumerate(2, 1).unwrap());
        let three = SparseOperator::scalar(b.clone(), &r("3"));
        let five = SparseOperator::scalar(b.clone(), &r("5"));
        let out = q_commutator(&r("2"), &three, &five).unwrap();
        assert_eq!(out, SparseOperator::scalar(b, &r("45/2")));
    }

    #[test]
    fn q_commutator_identities() {
        let reg = registry("5/3", &[1, 2, 1], 2);
        let q = reg.q().clone();
        let d = reg.params().q_minus_inv();
        let x = reg.get(Q12).unwrap();
        let y = reg.get(Q23).unwrap();
        // [X, X]_q = (q - q^{-1}) X²
        assert_eq!(
            q_commutator(&q, x, x).unwrap(),
            x.compose(x).unwrap().scale(&d)
        );
        // commuting pair
        let c = reg.get(Q123).unwrap();
        assert_eq!(
            q_commutator(&q, x, c).unwrap(),
            x.compose(c).unwrap().scale(&d)
        );
        // [A,B]_q + [B,A]_{1/q} = 0
        let sum = q_commutator(&q, x, y)
            .unwrap()
            .add(&q_commutator(&q.inv().unwrap(), y, x).unwrap())
            .unwrap();
        assert!(sum.is_zero());
        assert!(commutator(x, x).unwrap().is_zero());
        let id = SparseOperator::identity(reg.basis().clone());
        assert_eq!(anticommutator(&id, y).unwrap(), y.scale(&r("2")));
        assert!(reg.commutator(Q1, Q2).unwrap().is_zero());
        assert!(!reg.commutator(Q12, Q23).unwrap().is_zero());
    }

    #[test]
    fn label_metadata() {
        assert_eq!(Q134.subset(), 0b1101);
        assert_eq!(IQ134.subset(), 0b1101);
        assert_eq!(Q0.subset(), 0);
        assert_eq!(GeneratorLabel::from_subset(0b1101), Some(Q134));
        assert_eq!(GeneratorLabel::from_subset(0b0110), Some(Q23));
        assert_eq!(Q234.interval(), Some((2, 4)));
        assert_eq!(Q3.interval(), Some((3, 3)));
        assert_eq!(Q13.interval(), None);
        assert_eq!(Q13.max_leg(), 3);
        let central = GeneratorLabel::ALL
            .iter()
            .filter(|l| l.class() == LabelClass::Central)
            .count();
        let fermionic = GeneratorLabel::ALL
            .iter()
            .filter(|l| l.is_fermionic())
            .count();
        assert_eq!((central, fermionic), (6, 10));
        for l in GeneratorLabel::ALL {
            assert_eq!(l.name().parse::<GeneratorLabel>().unwrap(), l);
        }
        assert!("Q5".parse::<GeneratorLabel>().is_err());
    }

    #[test]
    fn involution_on_labels() {
        assert_eq!(Q12.involution(), Q12);
        assert_eq!(Q134.involution(), IQ134);
        for l in GeneratorLabel::ALL {
            assert_eq!(l.involution().involution(), l);
            assert_eq!(l.involution() != l, l.is_fermionic());
        }
        assert_eq!(involute_monomial(&[Q1, Q3]), vec![Q1, Q3]);
        assert_eq!(involute_monomial(&[Q134, Q2]), vec![IQ134, Q2]);
        assert_eq!(involute_monomial(&[IQ13]), vec![Q13]);
    }

    #[test]
    fn involuted_definitions_swap_arguments() {
        let d = DerivedDefinition::of(IQ124).unwrap();
        assert_eq!((d.left, d.right), (Q123, Q34));
        assert_eq!(d.central, [(Q12, Q4), (Q3, Q1234)]);
        assert!(DerivedDefinition::of(Q12).is_none());
    }

    #[test]
    fn registry_contents() {
        let reg = registry("5/3", &[1, 2, 1, 3], 2);
        assert_eq!(reg.labels().count(), 21);
        let minus_id = SparseOperator::scalar(reg.basis().clone(), &r("-1"));
        assert_eq!(reg.get(Q0).unwrap(), &minus_id);
        assert_eq!(reg.get(Q1).unwrap(), &minus_id);
        assert_eq!(reg.get(Q3).unwrap(), &minus_id);
        for l in reg.labels() {
            assert!(reg.get(l).unwrap().respects_degree(), "{l}");
        }
        assert!(reg.commutator(Q13, Q2).unwrap().is_zero());
        assert_ne!(reg.get(Q13).unwrap(), reg.get(IQ13).unwrap());

        let three = registry("5/3", &[1, 2, 1], 2);
        let labels: Vec<_> = three.labels().collect();
        assert_eq!(labels, vec![Q0, Q1, Q2, Q3, Q12, Q23, Q123, Q13, IQ13]);
        assert!(matches!(three.get(Q24), Err(Error::MissingGenerator(_))));
        assert_eq!(registry("2", &[1, 1], 1).labels().count(), 4);
    }
}
