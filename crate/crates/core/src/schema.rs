//! JSON interchange.
//!
//! Every document carries a `"schema"` tag:
//!
//! * `decomposition/v1`: `{kind: "tree"|"path", nodes, edges (tree only),
//!   bags: {id: [vertex...]}, layering?, goodness?}`
//! * `spqr/v1`: skeleton nodes with kind, vertices, real and virtual edges
//!   (each virtual edge names its partner node), plus the tree edges
//! * `report/v1`: `{n, m, w, p, ell, bound, flags}`
//! * `minor-model/v1`: the pattern graph and one branch set per pattern
//!   vertex
//! * `decompose/v1`: a report with the tree and path decompositions it
//!   describes
//!
//! Serialization is canonical: bags, vertex lists and edge lists are sorted,
//! so equal values give identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{
    goodness, layered_width, verify_path_decomposition, verify_tree_decomposition,
    PathDecomposition, TreeDecomposition,
};
use crate::error::{bail, Check};
use crate::graph::{verify_minor_model, Graph, Layering, MinorModel, Vertex};
use crate::pipeline::{GoodDecomposition, LayeredPD, Report};
use crate::spqr::{verify_spqr, NodeKind, Skeleton, SpqrTree, VirtualEdge};

pub const DECOMPOSITION_V1: &str = "decomposition/v1";
pub const SPQR_V1: &str = "spqr/v1";
pub const REPORT_V1: &str = "report/v1";
pub const MINOR_MODEL_V1: &str = "minor-model/v1";
pub const DECOMPOSE_V1: &str = "decompose/v1";

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("missing \"schema\" tag")]
    MissingTag,
    #[error("unknown schema {0:?}")]
    UnknownSchema(String),
    #[error("expected schema {expected:?}, found {found:?}")]
    WrongSchema { expected: &'static str, found: String },
    #[error("invalid {schema} document: {reason}")]
    Invalid { schema: &'static str, reason: String },
}

fn invalid(schema: &'static str, reason: impl Into<String>) -> SchemaError {
    SchemaError::Invalid {
        schema,
        reason: reason.into(),
    }
}

fn expect_tag(expected: &'static str, found: &str) -> Result<(), SchemaError> {
    if found != expected {
        return Err(SchemaError::WrongSchema {
            expected,
            found: found.to_string(),
        });
    }
    Ok(())
}

fn canonical<T: Ord>(mut items: Vec<T>) -> Vec<T> {
    items.sort();
    items
}

fn sorted<T: Ord + Clone>(items: &[T]) -> Vec<T> {
    canonical(items.to_vec())
}

fn edge_pairs(g: &Graph) -> Vec<[Vertex; 2]> {
    canonical(g.edges().map(|(u, v)| [u.min(v), u.max(v)]).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionKind {
    Tree,
    Path,
}

/// Claimed upper bounds on width and subtree pathwidth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodnessClaim {
    pub w: usize,
    pub p: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDoc {
    pub schema: String,
    pub kind: DecompositionKind,
    pub nodes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    pub bags: BTreeMap<usize, Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layering: Option<Vec<Vec<Vertex>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goodness: Option<GoodnessClaim>,
}

impl DecompositionDoc {
    pub fn from_tree(td: &TreeDecomposition, claim: Option<GoodnessClaim>) -> Self {
        DecompositionDoc {
            schema: DECOMPOSITION_V1.into(),
            kind: DecompositionKind::Tree,
            nodes: (0..td.bags.len()).collect(),
            edges: Some(edge_pairs(&td.tree)),
            bags: td.bags.iter().map(|b| sorted(b)).enumerate().collect(),
            layering: None,
            goodness: claim,
        }
    }

    /// Nodes are numbered along the path.
    pub fn from_path(pd: &PathDecomposition, layering: Option<&Layering>) -> Self {
        DecompositionDoc {
            schema: DECOMPOSITION_V1.into(),
            kind: DecompositionKind::Path,
            nodes: (0..pd.bags.len()).collect(),
            edges: None,
            bags: pd.bags.iter().map(|b| sorted(b)).enumerate().collect(),
            layering: layering.map(|l| l.layers().iter().map(|layer| sorted(layer)).collect()),
            goodness: None,
        }
    }

    fn check_shape(&self) -> Result<(), SchemaError> {
        expect_tag(DECOMPOSITION_V1, &self.schema)?;
        let k = self.nodes.len();
        if self.nodes.iter().enumerate().any(|(i, &x)| i != x) {
            return Err(invalid(DECOMPOSITION_V1, "node ids must be 0, 1, ..., k-1 in order"));
        }
        if self.bags.len() != k || self.bags.keys().enumerate().any(|(i, &x)| i != x) {
            return Err(invalid(DECOMPOSITION_V1, "bags must be given for exactly the listed nodes"));
        }
        match (self.kind, &self.edges) {
            (DecompositionKind::Path, Some(_)) => {
                Err(invalid(DECOMPOSITION_V1, "path decompositions have no edge list"))
            }
            (DecompositionKind::Tree, None) => {
                Err(invalid(DECOMPOSITION_V1, "tree decompositions need an edge list"))
            }
            (DecompositionKind::Path, None) if self.goodness.is_some() => Err(invalid(
                DECOMPOSITION_V1,
                "goodness claims apply to tree decompositions",
            )),
            (_, Some(edges)) if edges.iter().flatten().any(|&x| x >= k) => {
                Err(invalid(DECOMPOSITION_V1, "edge endpoint is not a listed node"))
            }
            _ => Ok(()),
        }
    }

    pub fn to_tree(&self) -> Result<TreeDecomposition, SchemaError> {
        self.check_shape()?;
        let bags: Vec<Vec<Vertex>> = self.bags.values().cloned().collect();
        let tree = match &self.edges {
            Some(edges) => Graph::from_edges(bags.len(), edges.iter().map(|e| (e[0], e[1])))
                .map_err(|e| invalid(DECOMPOSITION_V1, e.to_string()))?,
            None => Graph::from_edges(bags.len(), (1..bags.len()).map(|i| (i - 1, i)))
                .expect("path edges are proper"),
        };
        Ok(TreeDecomposition { tree, bags })
    }

    pub fn to_path(&self) -> Result<PathDecomposition, SchemaError> {
        self.check_shape()?;
        if self.kind != DecompositionKind::Path {
            return Err(invalid(DECOMPOSITION_V1, "expected kind \"path\""));
        }
        Ok(PathDecomposition {
            bags: self.bags.values().cloned().collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VirtualEdgeDoc {
    pub u: Vertex,
    pub v: Vertex,
    pub partner: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpqrNodeDoc {
    pub id: usize,
    pub kind: String,
    pub vertices: Vec<Vertex>,
    pub real_edges: Vec<[Vertex; 2]>,
    pub virtual_edges: Vec<VirtualEdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpqrDoc {
    pub schema: String,
    pub n: usize,
    pub nodes: Vec<SpqrNodeDoc>,
    pub tree_edges: Vec<[usize; 2]>,
}

impl SpqrDoc {
    pub fn from_spqr(s: &SpqrTree) -> Self {
        let nodes = s
            .skeletons
            .iter()
            .enumerate()
            .map(|(id, sk)| SpqrNodeDoc {
                id,
                kind: sk.kind.to_string(),
                vertices: sorted(&sk.vertices),
                real_edges: canonical(sk.real_edges.iter().map(|&(u, v)| [u.min(v), u.max(v)]).collect()),
                virtual_edges: canonical(
                    sk.virtual_edges
                        .iter()
                        .map(|e| VirtualEdgeDoc {
                            u: e.u.min(e.v),
                            v: e.u.max(e.v),
                            partner: e.partner,
                        })
                        .collect(),
                ),
            })
            .collect();
        SpqrDoc {
            schema: SPQR_V1.into(),
            n: s.n,
            nodes,
            tree_edges: edge_pairs(&s.tree),
        }
    }

    pub fn to_spqr(&self) -> Result<SpqrTree, SchemaError> {
        expect_tag(SPQR_V1, &self.schema)?;
        let k = self.nodes.len();
        let mut skeletons = Vec::with_capacity(k);
        for (i, node) in self.nodes.iter().enumerate() {
            if node.id != i {
                return Err(invalid(SPQR_V1, "node ids must be 0, 1, ..., k-1 in order"));
            }
            let kind = match node.kind.as_str() {
                "S" => NodeKind::S,
                "P" => NodeKind::P,
                "R" => NodeKind::R,
                other => return Err(invalid(SPQR_V1, format!("unknown node kind {other:?}"))),
            };
            if node.virtual_edges.iter().any(|e| e.partner >= k) {
                return Err(invalid(SPQR_V1, format!("node {i} names a missing partner")));
            }
            skeletons.push(Skeleton {
                kind,
                vertices: sorted(&node.vertices),
                real_edges: node.real_edges.iter().map(|e| (e[0], e[1])).collect(),
                virtual_edges: node
                    .virtual_edges
                    .iter()
                    .map(|e| VirtualEdge {
                        u: e.u,
                        v: e.v,
                        partner: e.partner,
                    })
                    .collect(),
            });
        }
        let tree = Graph::from_edges(k, self.tree_edges.iter().map(|e| (e[0], e[1])))
            .map_err(|e| invalid(SPQR_V1, e.to_string()))?;
        Ok(SpqrTree {
            n: self.n,
            tree,
            skeletons,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub schema: String,
    pub n: usize,
    pub m: usize,
    pub w: usize,
    pub p: usize,
    pub ell: usize,
    pub bound: usize,
    pub flags: Vec<String>,
}

impl ReportDoc {
    pub fn from_report(r: &Report) -> Self {
        ReportDoc {
            schema: REPORT_V1.into(),
            n: r.n,
            m: r.m,
            w: r.w,
            p: r.p,
            ell: r.ell,
            bound: r.bound,
            flags: sorted(&r.flags),
        }
    }

    pub fn to_report(&self) -> Result<Report, SchemaError> {
        expect_tag(REPORT_V1, &self.schema)?;
        Ok(Report {
            n: self.n,
            m: self.m,
            w: self.w,
            p: self.p,
            ell: self.ell,
            bound: self.bound,
            flags: self.flags.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternDoc {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinorModelDoc {
    pub schema: String,
    pub pattern: PatternDoc,
    pub branch_sets: Vec<Vec<Vertex>>,
}

impl MinorModelDoc {
    pub fn new(pattern: &Graph, model: &MinorModel) -> Self {
        MinorModelDoc {
            schema: MINOR_MODEL_V1.into(),
            pattern: PatternDoc {
                n: pattern.n(),
                edges: edge_pairs(pattern),
            },
            branch_sets: model.branch_sets.iter().map(|b| sorted(b)).collect(),
        }
    }

    pub fn to_parts(&self) -> Result<(Graph, MinorModel), SchemaError> {
        expect_tag(MINOR_MODEL_V1, &self.schema)?;
        let h = Graph::from_edges(self.pattern.n, self.pattern.edges.iter().map(|e| (e[0], e[1])))
            .map_err(|e| invalid(MINOR_MODEL_V1, e.to_string()))?;
        Ok((
            h,
            MinorModel {
                branch_sets: self.branch_sets.clone(),
            },
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecomposeDoc {
    pub schema: String,
    pub report: ReportDoc,
    pub tree: DecompositionDoc,
    pub path: DecompositionDoc,
}

impl DecomposeDoc {
    pub fn new(report: &Report, gd: &GoodDecomposition, lpd: &LayeredPD) -> Self {
        DecomposeDoc {
            schema: DECOMPOSE_V1.into(),
            report: ReportDoc::from_report(report),
            tree: DecompositionDoc::from_tree(
                &gd.td,
                Some(GoodnessClaim {
                    w: gd.report.width,
                    p: gd.report.subtree_pathwidth,
                }),
            ),
            path: DecompositionDoc::from_path(&lpd.pd, Some(&lpd.layering)),
        }
    }
}

/// Any document this module understands, identified by its schema tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Artifact {
    Decomposition(DecompositionDoc),
    Spqr(SpqrDoc),
    Report(ReportDoc),
    MinorModel(MinorModelDoc),
    Decompose(DecomposeDoc),
}

impl Artifact {
    pub fn parse(text: &str) -> Result<Self, SchemaError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let tag = value
            .get("schema")
            .and_then(|s| s.as_str())
            .ok_or(SchemaError::MissingTag)?
            .to_string();
        Ok(match tag.as_str() {
            DECOMPOSITION_V1 => Artifact::Decomposition(serde_json::from_value(value)?),
            SPQR_V1 => Artifact::Spqr(serde_json::from_value(value)?),
            REPORT_V1 => Artifact::Report(serde_json::from_value(value)?),
            MINOR_MODEL_V1 => Artifact::MinorModel(serde_json::from_value(value)?),
            DECOMPOSE_V1 => Artifact::Decompose(serde_json::from_value(value)?),
            _ => return Err(SchemaError::UnknownSchema(tag)),
        })
    }

    pub fn schema(&self) -> &'static str {
        match self {
            Artifact::Decomposition(_) => DECOMPOSITION_V1,
            Artifact::Spqr(_) => SPQR_V1,
            Artifact::Report(_) => REPORT_V1,
            Artifact::MinorModel(_) => MINOR_MODEL_V1,
            Artifact::Decompose(_) => DECOMPOSE_V1,
        }
    }

    /// Checks the document's structural shape without a graph, so that
    /// schema errors can be told apart from verification failures.
    pub fn check_shape(&self) -> Result<(), SchemaError> {
        match self {
            Artifact::Decomposition(d) => d.check_shape(),
            Artifact::Spqr(d) => d.to_spqr().map(drop),
            Artifact::Report(d) => d.to_report().map(drop),
            Artifact::MinorModel(d) => d.to_parts().map(drop),
            Artifact::Decompose(d) => {
                expect_tag(DECOMPOSE_V1, &d.schema)?;
                d.report.to_report()?;
                d.tree.to_tree()?;
                d.path.to_path()?;
                if d.tree.kind != DecompositionKind::Tree {
                    return Err(invalid(DECOMPOSE_V1, "\"tree\" must have kind \"tree\""));
                }
                Ok(())
            }
        }
    }
}

/// Serializes with stable key order and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// Runs the verifier matching the artifact against `g`.
///
/// Decompositions are checked for validity, their layering (if any) for
/// validity and coverage, and goodness claims against the measured width
/// and subtree pathwidth. Reports must be consistent with `g` and satisfy
/// their bound. Call [`Artifact::check_shape`] first to separate malformed
/// documents from failed checks.
pub fn verify_artifact(g: &Graph, artifact: &Artifact) -> Check {
    let shape = |e: SchemaError| crate::Violation::new(e.to_string());
    match artifact {
        Artifact::Decomposition(doc) => verify_decomposition_doc(g, doc).map(drop),
        Artifact::Spqr(doc) => verify_spqr(g, &doc.to_spqr().map_err(shape)?),
        Artifact::MinorModel(doc) => {
            let (h, model) = doc.to_parts().map_err(shape)?;
            verify_minor_model(g, &h, &model)
        }
        Artifact::Report(doc) => check_report(g, &doc.to_report().map_err(shape)?),
        Artifact::Decompose(doc) => {
            let report = doc.report.to_report().map_err(shape)?;
            check_report(g, &report)?;
            let measured = verify_decomposition_doc(g, &doc.tree)?;
            if let Some((w, p)) = measured {
                if (w, p) != (report.w, report.p) {
                    bail!(
                        "report claims (w, p) = ({}, {}) but the tree decomposition measures ({w}, {p})",
                        report.w,
                        report.p
                    );
                }
            }
            if doc.path.layering.is_none() {
                bail!("the path decomposition carries no layering");
            }
            let ell = verify_decomposition_doc(g, &doc.path)?.map(|(_, ell)| ell);
            if ell != Some(report.ell) {
                bail!(
                    "report claims ell = {} but the path decomposition measures {}",
                    report.ell,
                    ell.unwrap_or(0)
                );
            }
            Ok(())
        }
    }
}

/// For trees returns the measured `(w, p)`; for layered paths `(width, ell)`.
fn verify_decomposition_doc(g: &Graph, doc: &DecompositionDoc) -> Result<Option<(usize, usize)>, crate::Violation> {
    let shape = |e: SchemaError| crate::Violation::new(e.to_string());
    let td = doc.to_tree().map_err(shape)?;
    match doc.kind {
        DecompositionKind::Tree => verify_tree_decomposition(g, &td)?,
        DecompositionKind::Path => verify_path_decomposition(g, &doc.to_path().map_err(shape)?)?,
    }
    let mut measured = None;
    if let Some(claim) = doc.goodness {
        let r = goodness(g, &td).map_err(|e| crate::Violation::new(e.to_string()))?;
        if r.width > claim.w {
            bail!("claimed width {} but the decomposition has width {}", claim.w, r.width);
        }
        if r.subtree_pathwidth > claim.p {
            bail!(
                "claimed subtree pathwidth {} but T[{}] has pathwidth {}",
                claim.p,
                r.witness_vertex.unwrap_or(0),
                r.subtree_pathwidth
            );
        }
        measured = Some((r.width, r.subtree_pathwidth));
    }
    if let Some(layers) = &doc.layering {
        let layering = Layering::from_layers(g, layers.clone())?;
        let pd = PathDecomposition {
            bags: doc.bags.values().cloned().collect(),
        };
        let ell = layered_width(&pd, &layering).map_err(|e| crate::Violation::new(e.to_string()))?;
        measured = Some((td.width(), ell));
    }
    Ok(measured)
}

fn check_report(g: &Graph, r: &Report) -> Check {
    if (r.n, r.m) != (g.n(), g.m()) {
        bail!(
            "report describes a graph with n = {}, m = {} but the input has n = {}, m = {}",
            r.n,
            r.m,
            g.n(),
            g.m()
        );
    }
    let bound = r.w * (r.p + 1) * (r.w + 1);
    if r.bound != bound {
        bail!("report bound {} differs from w(p+1)(w+1) = {bound}", r.bound);
    }
    if !r.within_bound() {
        bail!("ell = {} exceeds the bound {}", r.ell, r.bound);
    }
    Ok(())
}
