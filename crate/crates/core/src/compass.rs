//! The pentagon of bosonic generators: which pairs commute, which do not, and
//! the derived generator attached to each non-commuting pair.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::opalgebra::{DerivedDefinition, GeneratorLabel, GeneratorRegistry, DERIVED};

/// Non-commuting pair `from → to`, oriented as `[from, to]_q` in the
/// definition of `label`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DashedEdge {
    pub from: GeneratorLabel,
    pub to: GeneratorLabel,
    pub label: GeneratorLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompassGraph {
    pub vertices: Vec<GeneratorLabel>,
    pub dashed: Vec<DashedEdge>,
    pub solid: Vec<(GeneratorLabel, GeneratorLabel)>,
    /// Third vertex commuting with both endpoints, per dashed edge.
    pub triangles: Vec<(DashedEdge, GeneratorLabel)>,
}

/// Expected cycle, in definition order.
const CYCLE: [(GeneratorLabel, GeneratorLabel, GeneratorLabel); 5] = {
    use GeneratorLabel::*;
    [
        (Q12, Q23, Q13),
        (Q23, Q34, Q24),
        (Q34, Q123, Q124),
        (Q123, Q234, Q14),
        (Q234, Q12, Q134),
    ]
};

fn position(v: GeneratorLabel) -> usize {
    GeneratorLabel::BOSONIC
        .iter()
        .position(|&b| b == v)
        .expect("bosonic vertex")
}

/// Classifies every bosonic pair by its actual commutator, orients the
/// non-commuting ones via the derived-generator definitions, and checks the
/// result against the expected 5-cycle.
pub fn build_compass(reg: &GeneratorRegistry) -> Result<CompassGraph> {
    if reg.legs() != 4 {
        return Err(Error::InvalidConfig(
            "the compass needs the 4-leg registry".into(),
        ));
    }
    let vertices = GeneratorLabel::BOSONIC.to_vec();
    let mut commutes = [[true; 5]; 5];
    let mut dashed = Vec::new();
    let mut solid = Vec::new();
    for (i, &a) in vertices.iter().enumerate() {
        for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
            if reg.commutator(a, b)?.is_zero() {
                solid.push((a, b));
                continue;
            }
            commutes[i][j] = false;
            commutes[j][i] = false;
            let def: DerivedDefinition = DERIVED
                .into_iter()
                .find(|d| (d.left, d.right) == (a, b) || (d.left, d.right) == (b, a))
                .ok_or_else(|| {
                    Error::Consistency(format!(
                        "{a} and {b} do not commute but define no generator"
                    ))
                })?;
            dashed.push(DashedEdge {
                from: def.left,
                to: def.right,
                label: def.label,
            });
        }
    }
    dashed.sort_by_key(|e| {
        CYCLE
            .iter()
            .position(|c| (c.0, c.1) == (e.from, e.to))
            .unwrap_or(usize::MAX)
    });

    let computed: Vec<_> = dashed.iter().map(|e| (e.from, e.to, e.label)).collect();
    if computed != CYCLE {
        let shown: Vec<String> = computed
            .iter()
            .map(|(f, t, l)| format!("{f}->{t} ({l})"))
            .collect();
        return Err(Error::Consistency(format!(
            "non-commuting bosonic pairs [{}] differ from the 5-cycle",
            shown.join(", ")
        )));
    }

    let mut triangles = Vec::new();
    for e in &dashed {
        let (f, t) = (position(e.from), position(e.to));
        let third: Vec<usize> = (0..5)
            .filter(|&v| v != f && v != t && commutes[v][f] && commutes[v][t])
            .collect();
        match third.as_slice() {
            [v] => triangles.push((*e, vertices[*v])),
            _ => {
                return Err(Error::Consistency(format!(
                    "dashed edge {}->{} has {} commuting third vertices",
                    e.from,
                    e.to,
                    third.len()
                )))
            }
        }
    }
    Ok(CompassGraph {
        vertices,
        dashed,
        solid,
        triangles,
    })
}

/// DOT rendering: dashed directed edges carry their derived label, solid
/// edges are undirected.
pub fn export_dot(g: &CompassGraph) -> String {
    let mut out = String::from("digraph compass {\n");
    for v in &g.vertices {
        writeln!(out, "  \"{v}\";").unwrap();
    }
    for e in &g.dashed {
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [style=dashed, label=\"{}\"];",
            e.from, e.to, e.label
        )
        .unwrap();
    }
    for (a, b) in &g.solid {
        writeln!(out, "  \"{a}\" -> \"{b}\" [style=solid, dir=none];").unwrap();
    }
    out.push_str("}\n");
    out
}
