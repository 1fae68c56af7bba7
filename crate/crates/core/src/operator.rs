//! Sparse exact operators on a truncated basis.
//!
//! Storage is column-major: column `j` lists the nonzero `(row, value)` pairs
//! of the image of basis state `j`, sorted by row. Zero scalars are never
//! stored, so two operators are equal iff their column lists are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::fockspace::{MultiIndex, TruncatedBasis};

/// Change in total weight effected by an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightDegree {
    Homogeneous(i32),
    Mixed,
}

impl WeightDegree {
    fn compose(self, other: WeightDegree) -> WeightDegree {
        match (self, other) {
            (WeightDegree::Homogeneous(a), WeightDegree::Homogeneous(b)) => {
                WeightDegree::Homogeneous(a + b)
            }
            _ => WeightDegree::Mixed,
        }
    }

    fn sum(self, other: WeightDegree) -> WeightDegree {
        if self == other {
            self
        } else {
            WeightDegree::Mixed
        }
    }
}

pub type Column = Vec<(usize, Rational)>;

#[derive(Clone)]
pub struct SparseOperator {
    basis: Arc<TruncatedBasis>,
    columns: Vec<Column>,
    degree: WeightDegree,
}

impl SparseOperator {
    /// Builds an operator from raw columns; entries are sorted, duplicates summed
    /// and zeros dropped.
    pub fn from_columns(
        basis: Arc<TruncatedBasis>,
        columns: Vec<Column>,
        degree: WeightDegree,
    ) -> Self {
        assert_eq!(columns.len(), basis.len(), "one column per basis state");
        let columns = columns.into_iter().map(normalize_column).collect();
        SparseOperator {
            basis,
            columns,
            degree,
        }
    }

    pub fn zero(basis: Arc<TruncatedBasis>, degree: WeightDegree) -> Self {
        let columns = vec![Vec::new(); basis.len()];
        SparseOperator {
            basis,
            columns,
            degree,
        }
    }

    pub fn identity(basis: Arc<TruncatedBasis>) -> Self {
        Self::scalar(basis, &Rational::one())
    }

    /// `c · Id`.
    pub fn scalar(basis: Arc<TruncatedBasis>, c: &Rational) -> Self {
        Self::diagonal(basis, |_| c.clone())
    }

    pub fn diagonal(basis: Arc<TruncatedBasis>, f: impl Fn(&MultiIndex) -> Rational) -> Self {
        let columns = basis
            .states()
            .iter()
            .enumerate()
            .map(|(j, s)| {
                let v = f(s);
                if v.is_zero() {
                    Vec::new()
                } else {
                    vec![(j, v)]
                }
            })
            .collect();
        SparseOperator {
            basis,
            columns,
            degree: WeightDegree::Homogeneous(0),
        }
    }

    pub fn basis(&self) -> &Arc<TruncatedBasis> {
        &self.basis
    }

    pub fn degree(&self) -> WeightDegree {
        self.degree
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &Column {
        &self.columns[j]
    }

    /// Entry in row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.columns[j]
            .binary_search_by_key(&i, |(r, _)| *r)
            .map(|pos| self.columns[j][pos].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// First stored entry in column-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Rational)> {
        self.columns
            .iter()
            .enumerate()
            .find_map(|(j, col)| col.first().map(|(i, v)| (*i, j, v)))
    }

    /// Weights of the source states whose columns are nonzero.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..=self.basis.nmax())
            .filter(|&w| self.basis.block(w).any(|j| !self.columns[j].is_empty()))
            .collect();
        out.dedup();
        out
    }

    /// True when every entry respects the declared weight degree.
    pub fn respects_degree(&self) -> bool {
        match self.degree {
            WeightDegree::Mixed => true,
            WeightDegree::Homogeneous(d) => self.columns.iter().enumerate().all(|(j, col)| {
                let w = self.basis.weight_of(j) as i64;
                col.iter()
                    .all(|(i, _)| self.basis.weight_of(*i) as i64 == w + d as i64)
            }),
        }
    }

    fn check_basis(&self, other: &SparseOperator) -> Result<()> {
        let same = Arc::ptr_eq(&self.basis, &other.basis)
            || (self.basis.legs() == other.basis.legs() && self.basis.nmax() == other.basis.nmax());
        if same {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    /// Operator product `self · rhs` (apply `rhs` first).
    ///
    /// Entries are cleared to integers (one common denominator for `self`,
    /// one per column of `rhs`) so the inner sums run on `BigInt` and each
    /// output entry is reduced once.
    pub fn compose(&self, rhs: &SparseOperator) -> Result<SparseOperator> {
        self.check_basis(rhs)?;
        let (left, left_den) = integer_columns(&self.columns);
        let columns = rhs
            .columns
            .par_iter()
            .map(|col| {
                let (right, right_den) = integer_column(col);
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, b) in &right {
                    for (i, a) in &left[*k] {
                        *acc.entry(*i).or_default() += a * b;
                    }
                }
                let den = &left_den * &right_den;
                acc.into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| {
                        (
                            i,
                            Rational::new(v, den.clone()).expect("nonzero denominator"),
                        )
                    })
                    .collect()
            })
            .collect();
        Ok(SparseOperator {
            basis: self.basis.clone(),
            columns,
            degree: self.degree.compose(rhs.degree),
        })
    }

    /// `a · self + b · rhs`.
    pub fn combine(
        &self,
        a: &Rational,
        rhs: &SparseOperator,
        b: &Rational,
    ) -> Result<SparseOperator> {
        self.check_basis(rhs)?;
        let columns = self
            .columns
            .par_iter()
            .zip(rhs.columns.par_iter())
            .map(|(x, y)| merge_columns(x, a, y, b))
            .collect();
        Ok(SparseOperator {
            basis: self.basis.clone(),
            columns,
            degree: self.degree.sum(rhs.degree),
        })
    }

    pub fn add(&self, rhs: &SparseOperator) -> Result<SparseOperator> {
        self.combine(&Rational::one(), rhs, &Rational::one())
    }

    pub fn sub(&self, rhs: &SparseOperator) -> Result<SparseOperator> {
        self.combine(&Rational::one(), rhs, &Rational::from_integer(-1))
    }

    pub fn scale(&self, c: &Rational) -> SparseOperator {
        if c.is_zero() {
            return SparseOperator::zero(self.basis.clone(), self.degree);
        }
        let columns = self
            .columns
            .iter()
            .map(|col| col.iter().map(|(i, v)| (*i, v * c)).collect())
            .collect();
        SparseOperator {
            basis: self.basis.clone(),
            columns,
            degree: self.degree,
        }
    }

    pub fn neg(&self) -> SparseOperator {
        self.scale(&Rational::from_integer(-1))
    }

    /// `self + c · Id`.
    pub fn shift(&self, c: &Rational) -> SparseOperator {
        let id = SparseOperator::scalar(self.basis.clone(), c);
        self.add(&id).expect("same basis")
    }

    /// Σ cᵢ · Aᵢ over a nonempty list of terms.
    pub fn linear_combination(terms: &[(Rational, &SparseOperator)]) -> Result<SparseOperator> {
        let ((c0, first), rest) = terms
            .split_first()
            .ok_or_else(|| Error::Consistency("empty linear combination".into()))?;
        let mut acc = first.scale(c0);
        for (c, op) in rest {
            acc = acc.combine(&Rational::one(), op, c)?;
        }
        Ok(acc)
    }

    /// Keeps only the columns whose source state satisfies `keep(weight)`.
    pub fn restrict_columns(&self, keep: impl Fn(usize) -> bool) -> SparseOperator {
        let columns = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, col)| {
                if keep(self.basis.weight_of(j)) {
                    col.clone()
                } else {
                    Vec::new()
                }
            })
            .collect();
        SparseOperator {
            basis: self.basis.clone(),
            columns,
            degree: self.degree,
        }
    }

    /// Restriction to source states of weight at most `w`.
    pub fn up_to_weight(&self, w: usize) -> SparseOperator {
        self.restrict_columns(|x| x <= w)
    }

    /// Restriction to the weight-`w` block of source states.
    pub fn at_weight(&self, w: usize) -> SparseOperator {
        self.restrict_columns(|x| x == w)
    }
}

type IntColumn = Vec<(usize, BigInt)>;

fn common_denominator<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| {
        if v.denom().is_one() {
            acc
        } else {
            acc.lcm(v.denom())
        }
    })
}

fn scaled(col: &Column, den: &BigInt) -> IntColumn {
    col.iter()
        .map(|(i, v)| (*i, v.numer() * (den / v.denom())))
        .collect()
}

fn integer_column(col: &Column) -> (IntColumn, BigInt) {
    let den = common_denominator(col.iter().map(|(_, v)| v));
    (scaled(col, &den), den)
}

fn integer_columns(cols: &[Column]) -> (Vec<IntColumn>, BigInt) {
    let den = common_denominator(cols.iter().flatten().map(|(_, v)| v));
    (cols.par_iter().map(|c| scaled(c, &den)).collect(), den)
}

fn normalize_column(mut col: Column) -> Column {
    col.sort_by_key(|(i, _)| *i);
    let mut out: Column = Vec::with_capacity(col.len());
    for (i, v) in col {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

fn merge_columns(x: &Column, a: &Rational, y: &Column, b: &Rational) -> Column {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut p, mut q) = (0, 0);
    while p < x.len() || q < y.len() {
        let take_x = q >= y.len() || (p < x.len() && x[p].0 < y[q].0);
        let take_y = p >= x.len() || (q < y.len() && y[q].0 < x[p].0);
        let (row, v) = if take_x {
            p += 1;
            (x[p - 1].0, &x[p - 1].1 * a)
        } else if take_y {
            q += 1;
            (y[q - 1].0, &y[q - 1].1 * b)
        } else {
            p += 1;
            q += 1;
            (x[p - 1].0, &x[p - 1].1 * a + &y[q - 1].1 * b)
        };
        if !v.is_zero() {
            out.push((row, v));
        }
    }
    out
}

impl PartialEq for SparseOperator {
    fn eq(&self, other: &Self) -> bool {
        self.check_basis(other).is_ok() && self.columns == other.columns
    }
}

impl fmt::Debug for SparseOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SparseOperator")
            .field("dim", &self.basis.len())
            .field("degree", &self.degree)
            .field("nnz", &self.nnz())
            .finish()
    }
}
