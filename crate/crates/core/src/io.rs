//! Versioned JSON documents. Exact values are written as strings.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, Rational, RingDescriptor, ScalarIo};
use crate::arrangement::{Arrangement, BasedArrangement, MarkedArrangement, Sort};
use crate::deform::CohomologyDims;
use crate::error::{Error, Result};
use crate::gadgets::{FunctionalArrangement, Realization, Step};
use crate::geom::{ProjLine, ProjPoint};
use crate::groups::{LabelledGraph, Presentation};
use crate::represent::{ProjMatrix, RelationCheck, Representation};

pub const FUNCTIONAL: &str = "staudt.functional/1";
pub const REALIZATION: &str = "staudt.realization/1";
pub const GRAPH: &str = "staudt.graph/1";
pub const PRESENTATION: &str = "staudt.presentation/1";
pub const REPRESENTATION: &str = "staudt.representation/1";
pub const RELATIONS: &str = "staudt.relations/1";
pub const COHOMOLOGY: &str = "staudt.cohomology/1";

fn check_schema(found: &str, want: &str) -> Result<()> {
    if found == want {
        Ok(())
    } else {
        Err(Error::Schema(format!(
            "expected schema `{want}`, found `{found}`"
        )))
    }
}

/// Parses a document after checking its `schema` field.
pub fn from_str<T: DeserializeOwned>(text: &str, want: &str) -> Result<T> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let found = v
        .get("schema")
        .and_then(|s| s.as_str())
        .ok_or_else(|| Error::Schema("missing `schema` field".into()))?;
    check_schema(found, want)?;
    serde_json::from_value(v).map_err(|e| Error::Schema(e.to_string()))
}

pub fn to_string<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Reads the `schema` field of any document.
pub fn schema_of(text: &str) -> Result<String> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    v.get("schema")
        .and_then(|s| s.as_str())
        .map(str::to_string)
        .ok_or_else(|| Error::Schema("missing `schema` field".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalDoc {
    pub schema: String,
    pub points: Vec<String>,
    pub lines: Vec<String>,
    pub incidences: Vec<(String, String)>,
    pub base: BTreeMap<String, String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub schedule: Vec<Step>,
    pub gadgets: usize,
    /// Outputs identified with `v00` and removed from the marking.
    #[serde(default)]
    pub identified_outputs: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl FunctionalDoc {
    pub fn new(fa: &FunctionalArrangement) -> Self {
        let arr = fa.arrangement();
        FunctionalDoc {
            schema: FUNCTIONAL.into(),
            points: arr.points().to_vec(),
            lines: arr.lines().to_vec(),
            incidences: arr.incidences().to_vec(),
            base: fa.based().base.clone(),
            inputs: fa.inputs().to_vec(),
            outputs: fa.outputs().to_vec(),
            schedule: fa.schedule.clone(),
            gadgets: fa.gadgets,
            identified_outputs: 0,
            source: None,
        }
    }

    pub fn to_functional(&self) -> Result<FunctionalArrangement> {
        check_schema(&self.schema, FUNCTIONAL)?;
        let mut arr = Arrangement::new();
        for p in &self.points {
            arr.add(p.clone(), Sort::Point)?;
        }
        for l in &self.lines {
            arr.add(l.clone(), Sort::Line)?;
        }
        for (p, l) in &self.incidences {
            arr.add_incidence(p, l)?;
        }
        let based = BasedArrangement::new(arr, self.base.clone())?;
        let marked = MarkedArrangement::new(based, self.inputs.clone(), self.outputs.clone())?;
        FunctionalArrangement::new(marked, self.schedule.clone(), self.gadgets)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationDoc {
    pub schema: String,
    pub ring: RingDescriptor,
    pub points: BTreeMap<String, [String; 3]>,
    pub lines: BTreeMap<String, [String; 3]>,
}

impl RealizationDoc {
    pub fn new<S: ScalarIo>(ring: &RingDescriptor, r: &Realization<S>) -> Self {
        let render = |c: &[S; 3]| -> [String; 3] { std::array::from_fn(|i| c[i].render_in(ring)) };
        RealizationDoc {
            schema: REALIZATION.into(),
            ring: ring.clone(),
            points: r
                .points
                .iter()
                .map(|(k, p)| (k.clone(), render(p.coords())))
                .collect(),
            lines: r
                .lines
                .iter()
                .map(|(k, l)| (k.clone(), render(l.coords())))
                .collect(),
        }
    }

    pub fn to_realization<S: ScalarIo>(&self) -> Result<Realization<S>> {
        check_schema(&self.schema, REALIZATION)?;
        self.ring.validate()?;
        let parse = |c: &[String; 3]| -> Result<[S; 3]> {
            Ok([
                S::parse_in(&self.ring, &c[0])?,
                S::parse_in(&self.ring, &c[1])?,
                S::parse_in(&self.ring, &c[2])?,
            ])
        };
        let mut r = Realization::default();
        for (k, c) in &self.points {
            r.points
                .insert(k.clone(), ProjPoint::from_coords(parse(c)?)?);
        }
        for (k, c) in &self.lines {
            r.lines.insert(k.clone(), ProjLine::from_coords(parse(c)?)?);
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub a: String,
    pub b: String,
    pub label: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub schema: String,
    pub vertices: Vec<String>,
    pub vertex_labels: Vec<u32>,
    pub edges: Vec<EdgeDoc>,
}

impl GraphDoc {
    pub fn new(g: &LabelledGraph) -> Self {
        GraphDoc {
            schema: GRAPH.into(),
            vertices: g.vertices.clone(),
            vertex_labels: g.vertex_labels.clone(),
            edges: g
                .edges
                .iter()
                .map(|(&(i, j), &label)| EdgeDoc {
                    a: g.vertices[i].clone(),
                    b: g.vertices[j].clone(),
                    label,
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<LabelledGraph> {
        check_schema(&self.schema, GRAPH)?;
        let mut g = LabelledGraph::new(self.vertices.clone());
        g.vertex_labels = self.vertex_labels.clone();
        for e in &self.edges {
            let i = g
                .index(&e.a)
                .ok_or_else(|| Error::UnknownElement(e.a.clone()))?;
            let j = g
                .index(&e.b)
                .ok_or_else(|| Error::UnknownElement(e.b.clone()))?;
            if g.edge(i, j).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "parallel edge {} {}",
                    e.a, e.b
                )));
            }
            g.set_edge(i, j, e.label)?;
        }
        g.validate()?;
        Ok(g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub schema: String,
    #[serde(flatten)]
    pub presentation: Presentation,
}

impl PresentationDoc {
    pub fn new(p: &Presentation) -> Self {
        PresentationDoc {
            schema: PRESENTATION.into(),
            presentation: p.clone(),
        }
    }
}

pub fn matrix_to_strings(m: &ProjMatrix) -> [[String; 3]; 3] {
    m.entries().clone().map(|r| r.map(|x| x.to_string()))
}

pub fn matrix_from_strings(m: &[[String; 3]; 3]) -> Result<ProjMatrix> {
    let mut out: [[Rational; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = parse_rational(&m[i][j])?;
        }
    }
    ProjMatrix::new(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationDoc {
    pub schema: String,
    pub presentation: Presentation,
    pub images: BTreeMap<String, [[String; 3]; 3]>,
}

impl RepresentationDoc {
    pub fn new(rep: &Representation) -> Self {
        RepresentationDoc {
            schema: REPRESENTATION.into(),
            presentation: rep.presentation.clone(),
            images: rep
                .presentation
                .generators
                .iter()
                .zip(&rep.images)
                .map(|(g, m)| (g.clone(), matrix_to_strings(m)))
                .collect(),
        }
    }

    pub fn to_representation(&self) -> Result<Representation> {
        check_schema(&self.schema, REPRESENTATION)?;
        let images = self
            .presentation
            .generators
            .iter()
            .map(|g| {
                self.images
                    .get(g)
                    .ok_or_else(|| Error::UnknownGenerator(g.clone()))
                    .and_then(matrix_from_strings)
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::new(self.presentation.clone(), images)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationStatus {
    pub relation: String,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsReport {
    pub schema: String,
    pub ok: bool,
    pub relations: Vec<RelationStatus>,
}

impl RelationsReport {
    pub fn new(checks: &[RelationCheck]) -> Self {
        RelationsReport {
            schema: RELATIONS.into(),
            ok: checks.iter().all(|c| c.holds),
            relations: checks
                .iter()
                .map(|c| RelationStatus {
                    relation: c.relation.clone(),
                    status: if c.holds { "pass" } else { "fail" }.into(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub schema: String,
    #[serde(flatten)]
    pub dims: CohomologyDims,
}

impl CohomologyReport {
    pub fn new(dims: CohomologyDims) -> Self {
        CohomologyReport {
            schema: COHOMOLOGY.into(),
            dims,
        }
    }
}
