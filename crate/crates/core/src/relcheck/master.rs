//! The six-term triple q-commutator identity
//!
//! ```text
//! [[A,B]_q,C]_q + [[α,β]_q,γ]_q + [[X,Y]_q,Z]_q
//!     = [[A,β]_q,Z]_q + [[X,B]_q,γ]_q + [[α,Y]_q,C]_q
//! ```
//!
//! over the twenty shipped parameter rows, with `Q0 = -Id`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::opalgebra::{q_commutator, GeneratorLabel, GeneratorRegistry};
use crate::operator::SparseOperator;

use super::{RelationReport, Suite};

/// Raw table data, shipped with the crate.
pub const MASTER_TABLES_CSV: &str = include_str!("../../data/master_tables.csv");
pub const MASTER_TABLES_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MasterTable {
    /// Three pairwise non-commuting operators.
    Table1,
    /// Triple commutators of pairs.
    Table2,
}

impl MasterTable {
    pub fn name(self) -> &'static str {
        match self {
            MasterTable::Table1 => "table1",
            MasterTable::Table2 => "table2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MasterRow {
    pub table: MasterTable,
    /// 1-based position within its table.
    pub index: usize,
    pub abc: [GeneratorLabel; 3],
    pub abg: [GeneratorLabel; 3],
    pub xyz: [GeneratorLabel; 3],
}

impl MasterRow {
    pub fn id(&self) -> String {
        format!("{}:{}", self.table.name(), self.index)
    }

    /// The six `(outer-left, inner-right, outer)` triples: left side first.
    pub fn terms(&self) -> [[GeneratorLabel; 3]; 6] {
        let [a, b, c] = self.abc;
        let [al, be, ga] = self.abg;
        let [x, y, z] = self.xyz;
        [
            [a, b, c],
            [al, be, ga],
            [x, y, z],
            [a, be, z],
            [x, b, ga],
            [al, y, c],
        ]
    }

    /// `(234,12,23 | 1,2,4 | 0,34,123)`.
    pub fn short(&self) -> String {
        let part = |t: &[GeneratorLabel; 3]| {
            t.iter()
                .map(|l| l.name().trim_start_matches('Q'))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "({} | {} | {})",
            part(&self.abc),
            part(&self.abg),
            part(&self.xyz)
        )
    }
}

impl fmt::Display for MasterRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part =
            |t: &[GeneratorLabel; 3]| t.iter().map(|l| l.name()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{} {} | {} | {}",
            self.table.name(),
            part(&self.abc),
            part(&self.abg),
            part(&self.xyz)
        )
    }
}

#[derive(Deserialize)]
struct RawRow {
    table: String,
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
    #[serde(rename = "C")]
    c: String,
    alpha: String,
    beta: String,
    gamma: String,
    #[serde(rename = "X")]
    x: String,
    #[serde(rename = "Y")]
    y: String,
    #[serde(rename = "Z")]
    z: String,
}

/// Parses table data in the shipped format.
pub fn parse_master_rows(text: &str) -> Result<Vec<MasterRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut counts: HashMap<MasterTable, usize> = HashMap::new();
    let mut rows = Vec::new();
    for record in reader.deserialize::<RawRow>() {
        let raw = record.map_err(|e| Error::TableData(e.to_string()))?;
        let table = match raw.table.as_str() {
            "table1" => MasterTable::Table1,
            "table2" => MasterTable::Table2,
            other => return Err(Error::TableData(format!("unknown table tag {other:?}"))),
        };
        let l = |s: &str| s.parse::<GeneratorLabel>();
        let index = counts.entry(table).or_insert(0);
        *index += 1;
        rows.push(MasterRow {
            table,
            index: *index,
            abc: [l(&raw.a)?, l(&raw.b)?, l(&raw.c)?],
            abg: [l(&raw.alpha)?, l(&raw.beta)?, l(&raw.gamma)?],
            xyz: [l(&raw.x)?, l(&raw.y)?, l(&raw.z)?],
        });
    }
    Ok(rows)
}

/// The twenty shipped rows, table 1 first.
pub fn master_rows() -> Vec<MasterRow> {
    parse_master_rows(MASTER_TABLES_CSV).expect("shipped table data is well formed")
}

/// Looks a row up by id, e.g. `table2:3`.
pub fn find_row(id: &str) -> Result<MasterRow> {
    master_rows()
        .into_iter()
        .find(|r| r.id() == id)
        .ok_or_else(|| Error::UnknownRow(id.to_string()))
}

/// Inner q-commutators shared between terms and rows.
struct InnerCache(HashMap<(GeneratorLabel, GeneratorLabel), SparseOperator>);

impl InnerCache {
    fn build(reg: &GeneratorRegistry, rows: &[MasterRow]) -> Result<Self> {
        let pairs: BTreeSet<(GeneratorLabel, GeneratorLabel)> = rows
            .iter()
            .flat_map(|r| r.terms())
            .map(|[a, b, _]| (a, b))
            .collect();
        let map = pairs
            .into_par_iter()
            .map(|(a, b)| Ok(((a, b), reg.q_commutator(a, b)?)))
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(InnerCache(map))
    }

    fn triple(
        &self,
        reg: &GeneratorRegistry,
        [a, b, c]: [GeneratorLabel; 3],
    ) -> Result<SparseOperator> {
        q_commutator(reg.q(), &self.0[&(a, b)], reg.get(c)?)
    }
}

fn evaluate_row(
    reg: &GeneratorRegistry,
    cache: &InnerCache,
    row: &MasterRow,
) -> Result<RelationReport> {
    let terms = row
        .terms()
        .into_par_iter()
        .map(|t| cache.triple(reg, t))
        .collect::<Result<Vec<_>>>()?;
    let lhs = terms[0].add(&terms[1])?.add(&terms[2])?;
    let rhs = terms[3].add(&terms[4])?.add(&terms[5])?;
    let residual = lhs.sub(&rhs)?;
    let inputs = row
        .abc
        .iter()
        .chain(&row.abg)
        .chain(&row.xyz)
        .map(ToString::to_string)
        .collect();
    let mut report = RelationReport::from_residual(
        format!("master:{}", row.id()),
        Suite::Master,
        inputs,
        &residual,
    );
    if let Some((i, j, v)) = residual.first_nonzero() {
        // value of every term at the first offending entry
        let basis = reg.basis();
        let parts: Vec<String> = row
            .terms()
            .iter()
            .zip(&terms)
            .enumerate()
            .map(|(n, ([a, b, c], op))| {
                let side = if n < 3 { "lhs" } else { "rhs" };
                format!("{side} [[{a},{b}]_q,{c}]_q = {}", op.get(i, j))
            })
            .collect();
        report = report.with_note(format!(
            "residual {v} at row {} col {}; {}",
            basis.state(i),
            basis.state(j),
            parts.join("; ")
        ));
    }
    Ok(report)
}

pub fn check_master(reg: &GeneratorRegistry, row: &MasterRow) -> Result<RelationReport> {
    let cache = InnerCache::build(reg, std::slice::from_ref(row))?;
    evaluate_row(reg, &cache, row)
}

/// All shipped rows, sharing inner q-commutators.
pub fn check_master_all(reg: &GeneratorRegistry) -> Result<Vec<RelationReport>> {
    let rows = master_rows();
    let cache = InnerCache::build(reg, &rows)?;
    rows.iter()
        .map(|row| evaluate_row(reg, &cache, row))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqrep::RepParams;
    use GeneratorLabel::*;

    #[test]
    fn shipped_rows() {
        let rows = master_rows();
        assert_eq!(rows.len(), 20);
        assert_eq!(
            rows.iter()
                .filter(|r| r.table == MasterTable::Table1)
                .count(),
            10
        );
        assert_eq!(rows[0].short(), "(234,12,23 | 1,2,4 | 0,34,123)");
        assert_eq!(rows[10].short(), "(12,23,12 | 3,2,0 | 0,1,123)");
        assert_eq!(rows[10].id(), "table2:1");
        assert_eq!(find_row("table1:3").unwrap().abc, [Q34, Q123, Q234]);
        assert_eq!(
            find_row("table3:1"),
            Err(Error::UnknownRow("table3:1".into()))
        );
        assert!(rows.iter().all(|r| r.xyz[0] == Q0));
        assert!(rows[10..].iter().all(|r| r.abg[2] == Q0));
    }

    #[test]
    fn malformed_tables() {
        let header = "table,A,B,C,alpha,beta,gamma,X,Y,Z\n";
        assert!(
            parse_master_rows(&format!("{header}table9,Q1,Q1,Q1,Q1,Q1,Q1,Q1,Q1,Q1\n")).is_err()
        );
        assert!(
            parse_master_rows(&format!("{header}table1,Q7,Q1,Q1,Q1,Q1,Q1,Q1,Q1,Q1\n")).is_err()
        );
        assert!(parse_master_rows(&format!("{header}table1,Q1\n")).is_err());
    }

    #[test]
    fn q0_reduction() {
        let p = RepParams::new("5/3".parse().unwrap(), vec![1, 2, 1, 3], 2).unwrap();
        let reg = GeneratorRegistry::build(&p, p.basis().unwrap()).unwrap();
        let q = reg.q();
        let lhs = q_commutator(
            q,
            &reg.q_commutator(Q0, Q34).unwrap(),
            reg.get(Q123).unwrap(),
        )
        .unwrap();
        let rhs = reg
            .q_commutator(Q34, Q123)
            .unwrap()
            .scale(&-p.q_minus_inv());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn first_rows_pass_small() {
        let p = RepParams::new("5/3".parse().unwrap(), vec![1, 2, 1, 3], 2).unwrap();
        let reg = GeneratorRegistry::build(&p, p.basis().unwrap()).unwrap();
        for id in ["table1:1", "table2:1"] {
            let report = check_master(&reg, &find_row(id).unwrap()).unwrap();
            assert!(report.passed(), "{report:#?}");
        }
    }
}
