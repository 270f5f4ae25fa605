//! Output document and its plain-text rendering. Every JSON document parses
//! back into [`OutputDocument`] and re-serializes to the same bytes.

use std::fmt::Write as _;

use mdcore::chain::{AbelianGroup, IntMatrix};
use mdcore::presentation::Presentation;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};

use crate::input::Int;

impl Serialize for Int {
    /// A JSON integer when it fits in 64 bits, a decimal string otherwise.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: String,
    #[serde(flatten)]
    pub result: CommandOutput,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum CommandOutput {
    Jumps(JumpsDoc),
    Invariants(InvariantsDoc),
    Bcone(ConeDoc),
    Thicken(ThickenDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpsDoc {
    pub jumps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub rank: usize,
    /// Invariant factors, each dividing the next.
    pub torsion: Vec<Int>,
}

impl From<&AbelianGroup> for GroupDoc {
    fn from(g: &AbelianGroup) -> Self {
        GroupDoc {
            rank: g.free_rank,
            torsion: g.torsion.iter().cloned().map(Int).collect(),
        }
    }
}

impl GroupDoc {
    pub fn to_group(&self) -> AbelianGroup {
        AbelianGroup {
            free_rank: self.rank,
            torsion: self.torsion.iter().map(|i| i.0.clone()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

impl From<&Presentation> for PresentationDoc {
    fn from(p: &Presentation) -> Self {
        PresentationDoc {
            generators: p.generators().to_vec(),
            relators: p.relator_strings(),
        }
    }
}

impl PresentationDoc {
    pub fn text(&self) -> String {
        if self.relators.is_empty() {
            format!("< {} | >", self.generators.join(", "))
        } else {
            format!("< {} | {} >", self.generators.join(", "), self.relators.join(", "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Pass,
    Fail,
}

impl Check {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }

    fn word(self) -> &'static str {
        match self {
            Check::Pass => "pass",
            Check::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelChecks {
    pub hurewicz: Check,
    pub d2: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDoc {
    pub b: String,
    pub collapsed: Vec<String>,
    pub pi1: PresentationDoc,
    pub pi1_abelian: GroupDoc,
    /// `H_0 ..= H_max_degree`.
    pub homology: Vec<GroupDoc>,
    pub euler_characteristic: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<LevelChecks>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalDoc {
    pub lower: String,
    pub upper: Option<String>,
    pub samples: Vec<String>,
    pub level: LevelDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Int>>,
}

impl MatrixDoc {
    pub fn new(degree: usize, m: &IntMatrix) -> Self {
        MatrixDoc {
            degree,
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows()).map(|i| m.row(i).iter().cloned().map(Int).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let data: Vec<BigInt> = self.entries.iter().flatten().map(|i| i.0.clone()).collect();
        IntMatrix::from_vec(self.rows, self.cols, data).expect("consistent shape")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorImage {
    pub generator: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureMapDoc {
    pub from: String,
    pub to: String,
    /// One matrix per degree, target generators by source generators.
    pub homology: Vec<MatrixDoc>,
    pub generators: Vec<GeneratorImage>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalChecks {
    pub hurewicz: Check,
    pub d2: Check,
    pub constancy: Check,
}

impl GlobalChecks {
    pub fn all_pass(&self) -> bool {
        [self.hurewicz, self.d2, self.constancy].iter().all(|c| *c == Check::Pass)
    }
}

/// A single level (`levels` has one entry) or the whole filtration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsDoc {
    pub jumps: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub levels: Vec<LevelDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub intervals: Vec<IntervalDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infinity: Option<LevelDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub structure_maps: Vec<StructureMapDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<GlobalChecks>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDoc {
    pub b: String,
    pub b_query: String,
    pub degree: usize,
    pub pi1: PresentationDoc,
    pub pi1_abelian: GroupDoc,
    pub homology: GroupDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceDoc {
    pub simplex: usize,
    pub kind: String,
    /// Vertex ids of the face; all vertices of the simplex for the core.
    pub face: Vec<usize>,
    pub vertices: Vec<Vec<String>>,
    pub volume_fraction: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDoc {
    pub simplex: usize,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDoc {
    pub point: Vec<String>,
    pub simplex: usize,
    pub kind: String,
    pub face: Vec<usize>,
    pub barycentric: Vec<String>,
    pub value: Vec<String>,
    pub weights: Vec<WeightDoc>,
    pub weight_sum: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThickenDoc {
    pub pieces: Vec<PieceDoc>,
    pub points: Vec<PointDoc>,
}

/// Pretty JSON with a trailing newline.
pub fn to_json(doc: &OutputDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

fn group_text(g: &GroupDoc) -> String {
    g.to_group().to_string()
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| {
                if c + 1 == r.len() {
                    s.clone()
                } else {
                    format!("{s:<w$}", w = widths[c])
                }
            })
            .collect();
        out.push_str(cells.join(" | ").trim_end());
        out.push('\n');
    }
    out
}

fn level_row(label: String, l: &LevelDoc, degrees: usize) -> Vec<String> {
    let mut row = vec![label, l.pi1.text()];
    for n in 0..degrees {
        row.push(l.homology.get(n).map_or_else(|| "?".to_string(), group_text));
    }
    row.push(match &l.checks {
        Some(c) => format!("hurewicz={} d2={}", c.hurewicz.word(), c.d2.word()),
        None => "-".to_string(),
    });
    row
}

fn matrix_text(m: &MatrixDoc) -> String {
    let rows: Vec<String> = m
        .entries
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|i| i.0.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("{}x{} [{}]", m.rows, m.cols, rows.join(", "))
}

fn invariants_text(d: &InvariantsDoc) -> String {
    let degrees = d
        .levels
        .iter()
        .chain(d.intervals.iter().map(|i| &i.level))
        .map(|l| l.homology.len())
        .max()
        .unwrap_or(0);
    let mut header = vec!["b".to_string(), "pi1".to_string()];
    header.extend((0..degrees).map(|n| format!("H{n}")));
    header.push("checks".to_string());
    let mut rows = vec![header];
    for l in &d.levels {
        rows.push(level_row(l.b.clone(), l, degrees));
    }
    for i in &d.intervals {
        let label = format!("[{}, {})", i.lower, i.upper.as_deref().unwrap_or("inf"));
        rows.push(level_row(label, &i.level, degrees));
    }
    if let Some(l) = &d.infinity {
        rows.push(level_row("inf".to_string(), l, degrees));
    }
    let mut out = table(&rows);
    if !d.structure_maps.is_empty() {
        out.push_str("\nstructure maps\n");
        for s in &d.structure_maps {
            let _ = writeln!(out, "{} -> {}", s.from, s.to);
            for m in &s.homology {
                let _ = writeln!(out, "  H{}: {}", m.degree, matrix_text(m));
            }
        }
    }
    if let Some(c) = &d.checks {
        let _ = writeln!(
            out,
            "\nchecks: hurewicz={} d2={} constancy={}",
            c.hurewicz.word(),
            c.d2.word(),
            c.constancy.word()
        );
    }
    out
}

fn tuple(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn thicken_text(d: &ThickenDoc) -> String {
    let mut out = String::from("pieces\n");
    for p in &d.pieces {
        let verts: Vec<String> = p.vertices.iter().map(|v| tuple(v)).collect();
        let _ = writeln!(
            out,
            "simplex {} {} {:?}: {}; volume fraction {}",
            p.simplex,
            p.kind,
            p.face,
            verts.join(" "),
            p.volume_fraction.as_deref().unwrap_or("?")
        );
    }
    if !d.points.is_empty() {
        out.push_str("\npoints\n");
        for p in &d.points {
            let weights: Vec<String> = p.weights.iter().map(|w| format!("{}:{}", w.simplex, w.weight)).collect();
            let _ = writeln!(
                out,
                "{} in simplex {} {} {:?}: value {}; weights {}; sum {}",
                tuple(&p.point),
                p.simplex,
                p.kind,
                p.face,
                tuple(&p.value),
                weights.join(" "),
                p.weight_sum
            );
        }
    }
    out
}

/// The plain-text form of a document.
pub fn to_text(doc: &OutputDocument) -> String {
    match &doc.result {
        CommandOutput::Jumps(j) => j.jumps.iter().map(|b| format!("{b}\n")).collect(),
        CommandOutput::Invariants(d) => invariants_text(d),
        CommandOutput::Bcone(c) => format!(
            "b = {}, query = {}\npi1: {}\npi1 abelianized: {}\nH{}: {}\n",
            c.b,
            c.b_query,
            c.pi1.text(),
            group_text(&c.pi1_abelian),
            c.degree,
            group_text(&c.homology)
        ),
        CommandOutput::Thicken(t) => thicken_text(t),
    }
}
