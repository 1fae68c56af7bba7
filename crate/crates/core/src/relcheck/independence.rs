//! Linear independence of the fifteen non-central generators, by exact rank.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::opalgebra::{GeneratorLabel, GeneratorRegistry};

use super::{inputs, RelationReport, ResidualSummary, Status, Suite};

/// Rank of a rational matrix given as rows.
///
/// Rows are cleared to integers, then reduced by fraction-free elimination
/// (`r ← p·r - r_p·pivot_row`), dividing each row by its content after every
/// step to keep entries small.
pub fn exact_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let width = m.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| col < m[r].len() && !m[r][col].is_zero())
        else {
            continue;
        };
        m.swap(rank, pivot);
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if col >= row.len() || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(prow).skip(col) {
                *x = &*x * &prow[col] - &factor * p;
            }
            primitive(row);
        }
        rank += 1;
    }
    rank
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive(&mut out);
    out
}

/// Divides a row by the gcd of its entries.
fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.abs().is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Vectorizes the operators over the union of their stored positions.
pub fn vectorize(ops: &[&crate::operator::SparseOperator]) -> Vec<Vec<Rational>> {
    let mut positions: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for op in ops {
        for (j, col) in op.columns().iter().enumerate() {
            for (i, _) in col {
                positions.entry((i.to_owned(), j)).or_insert(0);
            }
        }
    }
    for (n, slot) in positions.values_mut().enumerate() {
        *slot = n;
    }
    ops.iter()
        .map(|op| {
            let mut row = vec![Rational::zero(); positions.len()];
            for (j, col) in op.columns().iter().enumerate() {
                for (i, v) in col {
                    row[positions[&(*i, j)]] = v.clone();
                }
            }
            row
        })
        .collect()
}

/// Passes iff the fifteen non-central generators have rank 15.
pub fn check_independence(reg: &GeneratorRegistry) -> Result<RelationReport> {
    if reg.legs() != 4 {
        return Err(Error::InvalidConfig(
            "independence needs the 4-leg registry".into(),
        ));
    }
    let labels = GeneratorLabel::GENERATORS;
    let ops = labels
        .iter()
        .map(|l| reg.get(*l))
        .collect::<Result<Vec<_>>>()?;
    let rank = exact_rank(&vectorize(&ops));
    let deficiency = labels.len() - rank;
    Ok(RelationReport {
        id: "independence:15".into(),
        kind: Suite::Independence,
        inputs: inputs(&labels),
        status: if deficiency == 0 {
            Status::Pass
        } else {
            Status::Fail
        },
        gating: true,
        residual_summary: ResidualSummary {
            nonzero: deficiency,
            sample: None,
            weights: Vec::new(),
        },
        note: Some(format!("rank {rank} of {}", labels.len())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqrep::RepParams;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    /// Rank by plain Gaussian elimination over the rationals.
    fn rank_oracle(rows: &[Vec<Rational>]) -> usize {
        let mut m = rows.to_vec();
        let width = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..width {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][col].inv().unwrap();
            let pivot = m[rank].clone();
            for row in m.iter_mut().skip(rank + 1) {
                let f = &row[col] * &inv;
                for (x, p) in row.iter_mut().zip(&pivot).skip(col) {
                    *x -= &f * p;
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_cases() {
        assert_eq!(exact_rank(&[]), 0);
        assert_eq!(exact_rank(&[vec![Rational::zero(); 3]]), 0);
        assert_eq!(
            exact_rank(&[vec![r(1, 2), r(1, 3)], vec![r(3, 2), r(1, 1)]]),
            1
        );
        assert_eq!(
            exact_rank(&[vec![r(1, 2), r(1, 3)], vec![r(3, 2), r(2, 1)]]),
            2
        );
    }

    #[test]
    fn duplicates_do_not_raise_rank() {
        let p = RepParams::new("5/3".parse().unwrap(), vec![1, 2, 1, 3], 2).unwrap();
        let reg = GeneratorRegistry::build(&p, p.basis().unwrap()).unwrap();
        let q12 = reg.get(GeneratorLabel::Q12).unwrap();
        assert_eq!(exact_rank(&vectorize(&[q12])), 1);
        let q13 = reg.get(GeneratorLabel::Q13).unwrap();
        let rebuilt = reg
            .evaluate_definition(
                crate::opalgebra::DerivedDefinition::of(GeneratorLabel::Q13).unwrap(),
            )
            .unwrap();
        assert_eq!(exact_rank(&vectorize(&[q12, q13, &rebuilt, &rebuilt])), 2);
    }

    proptest! {
        #[test]
        fn matches_gaussian_oracle(
            entries in proptest::collection::vec((-4i64..5, 1i64..4), 20),
            dup in any::<bool>(),
        ) {
            let mut rows: Vec<Vec<Rational>> = entries.chunks(5).map(|c| c.iter().map(|&(n, d)| r(n, d)).collect()).collect();
            if dup {
                let scaled: Vec<Rational> = rows[0].iter().map(|x| x * &r(-7, 3)).collect();
                rows.push(scaled);
            }
            prop_assert_eq!(exact_rank(&rows), rank_oracle(&rows));
        }
    }
}
