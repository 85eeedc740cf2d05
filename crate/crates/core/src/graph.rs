//! Framed flow graphs.
//!
//! Vertices are `0..n` in a fixed topological order: every edge runs from a
//! smaller to a larger index, vertex `0` is the unique source and `n - 1` the
//! unique sink. Parallel edges are distinct [`EdgeId`]s. A framing is a linear
//! order on the incoming and on the outgoing edges of every vertex, listed
//! first to last (top to bottom in a drawing).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FramedGraph {
    vertices: usize,
    edges: Vec<(VertexId, VertexId)>,
    in_order: Vec<Vec<EdgeId>>,
    out_order: Vec<Vec<EdgeId>>,
    in_pos: Vec<usize>,
    out_pos: Vec<usize>,
}

/// One violated invariant, as reported by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewVertices,
    EdgeIdMismatch {
        index: usize,
        id: EdgeId,
    },
    EndpointOutOfRange {
        edge: EdgeId,
    },
    NotForward {
        edge: EdgeId,
    },
    SourceNotUnique {
        count: usize,
    },
    SinkNotUnique {
        count: usize,
    },
    VertexOffRoute {
        vertex: VertexId,
    },
    FramingLength {
        side: &'static str,
        found: usize,
    },
    FramingNotPermutation {
        side: &'static str,
        vertex: VertexId,
    },
    FramingForeignEdge {
        side: &'static str,
        vertex: VertexId,
        edge: EdgeId,
    },
}

impl Violation {
    /// JSON field the violation points at.
    pub fn field(&self) -> String {
        match self {
            Violation::TooFewVertices => "vertices".into(),
            Violation::EdgeIdMismatch { index, .. } => format!("edges[{index}].id"),
            Violation::EndpointOutOfRange { edge } | Violation::NotForward { edge } => {
                format!("edges[{edge}]")
            }
            Violation::SourceNotUnique { .. }
            | Violation::SinkNotUnique { .. }
            | Violation::VertexOffRoute { .. } => "edges".into(),
            Violation::FramingLength { side, .. } => format!("framing.{side}"),
            Violation::FramingNotPermutation { side, vertex }
            | Violation::FramingForeignEdge { side, vertex, .. } => {
                format!("framing.{side}[{vertex}]")
            }
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices => write!(f, "fewer than two vertices"),
            Violation::EdgeIdMismatch { index, id } => write!(
                f,
                "edge at index {index} has id {id}; ids must be 0..m in order"
            ),
            Violation::EndpointOutOfRange { edge } => {
                write!(f, "edge {edge}: endpoint out of range")
            }
            Violation::NotForward { edge } => write!(f, "edge {edge}: edge not forward-oriented"),
            Violation::SourceNotUnique { count } => {
                write!(f, "source not unique ({count} vertices of in-degree 0)")
            }
            Violation::SinkNotUnique { count } => {
                write!(f, "sink not unique ({count} vertices of out-degree 0)")
            }
            Violation::VertexOffRoute { vertex } => {
                write!(f, "vertex {vertex} lies on no source-sink path")
            }
            Violation::FramingLength { side, found } => {
                write!(
                    f,
                    "framing.{side} has {found} lists, expected one per vertex"
                )
            }
            Violation::FramingNotPermutation { side, vertex } => {
                write!(
                    f,
                    "framing.{side}[{vertex}] is not a permutation of the incident edges"
                )
            }
            Violation::FramingForeignEdge { side, vertex, edge } => {
                write!(
                    f,
                    "framing.{side}[{vertex}] lists edge {edge}, which is not incident"
                )
            }
        }
    }
}

/// Violations found by [`validate`]; empty iff the document is a valid framed graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FramingDoc {
    #[serde(rename = "in")]
    pub in_order: Vec<Vec<EdgeId>>,
    #[serde(rename = "out")]
    pub out_order: Vec<Vec<EdgeId>>,
}

/// The on-disk form of a framed graph. Field order is the canonical output order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: usize,
    pub edges: Vec<EdgeDoc>,
    pub framing: FramingDoc,
}

/// Checks every invariant of a framed graph on raw data.
pub fn validate(doc: &GraphDoc) -> ValidationReport {
    let mut violations = Vec::new();
    let n = doc.vertices;
    if n < 2 {
        violations.push(Violation::TooFewVertices);
    }
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    let mut ok_edges = vec![false; doc.edges.len()];
    for (i, e) in doc.edges.iter().enumerate() {
        let id = e.id;
        if e.tail >= n || e.head >= n {
            violations.push(Violation::EndpointOutOfRange { edge: id });
        } else if e.tail >= e.head {
            violations.push(Violation::NotForward { edge: id });
        } else {
            indeg[e.head] += 1;
            outdeg[e.tail] += 1;
            ok_edges[i] = true;
        }
    }
    let sources = (0..n).filter(|&v| indeg[v] == 0).count();
    let sinks = (0..n).filter(|&v| outdeg[v] == 0).count();
    if n >= 2 && sources != 1 {
        violations.push(Violation::SourceNotUnique { count: sources });
    }
    if n >= 2 && sinks != 1 {
        violations.push(Violation::SinkNotUnique { count: sinks });
    }
    if n >= 2 {
        let mut from_source = vec![false; n];
        from_source[0] = true;
        let mut to_sink = vec![false; n];
        to_sink[n - 1] = true;
        let mut sorted: Vec<usize> = (0..doc.edges.len()).filter(|&i| ok_edges[i]).collect();
        sorted.sort_by_key(|&i| doc.edges[i].tail);
        for &i in &sorted {
            let e = &doc.edges[i];
            if from_source[e.tail] {
                from_source[e.head] = true;
            }
        }
        sorted.sort_by_key(|&i| std::cmp::Reverse(doc.edges[i].head));
        for &i in &sorted {
            let e = &doc.edges[i];
            if to_sink[e.head] {
                to_sink[e.tail] = true;
            }
        }
        for v in 0..n {
            if !(from_source[v] && to_sink[v]) {
                violations.push(Violation::VertexOffRoute { vertex: v });
            }
        }
    }
    for (side, lists) in [
        ("in", &doc.framing.in_order),
        ("out", &doc.framing.out_order),
    ] {
        if lists.len() != n {
            violations.push(Violation::FramingLength {
                side,
                found: lists.len(),
            });
            continue;
        }
        for (v, list) in lists.iter().enumerate() {
            let mut expected: Vec<EdgeId> = doc
                .edges
                .iter()
                .filter(|e| {
                    if side == "in" {
                        e.head == v
                    } else {
                        e.tail == v
                    }
                })
                .map(|e| e.id)
                .collect();
            expected.sort_unstable();
            let mut seen = list.clone();
            seen.sort_unstable();
            if let Some(&foreign) = list.iter().find(|id| expected.binary_search(id).is_err()) {
                violations.push(Violation::FramingForeignEdge {
                    side,
                    vertex: v,
                    edge: foreign,
                });
            } else if seen != expected {
                violations.push(Violation::FramingNotPermutation { side, vertex: v });
            }
        }
    }
    for (i, e) in doc.edges.iter().enumerate() {
        if e.id != i {
            violations.push(Violation::EdgeIdMismatch { index: i, id: e.id });
        }
    }
    ValidationReport { violations }
}

impl FramedGraph {
    /// Builds a framed graph, rejecting anything [`validate`] would flag.
    pub fn new(
        vertices: usize,
        edges: Vec<(VertexId, VertexId)>,
        in_order: Vec<Vec<EdgeId>>,
        out_order: Vec<Vec<EdgeId>>,
    ) -> Result<Self> {
        let doc = GraphDoc {
            vertices,
            edges: edges
                .iter()
                .enumerate()
                .map(|(id, &(tail, head))| EdgeDoc { id, tail, head })
                .collect(),
            framing: FramingDoc {
                in_order,
                out_order,
            },
        };
        let report = validate(&doc);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidGraph(v.to_string()));
        }
        Ok(Self::from_valid_doc(doc))
    }

    fn from_valid_doc(doc: GraphDoc) -> Self {
        let edges: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e.tail, e.head)).collect();
        let mut in_pos = vec![0; edges.len()];
        let mut out_pos = vec![0; edges.len()];
        for list in &doc.framing.in_order {
            for (p, &e) in list.iter().enumerate() {
                in_pos[e] = p;
            }
        }
        for list in &doc.framing.out_order {
            for (p, &e) in list.iter().enumerate() {
                out_pos[e] = p;
            }
        }
        FramedGraph {
            vertices: doc.vertices,
            edges,
            in_order: doc.framing.in_order,
            out_order: doc.framing.out_order,
            in_pos,
            out_pos,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn source(&self) -> VertexId {
        0
    }

    pub fn sink(&self) -> VertexId {
        self.vertices - 1
    }

    pub fn is_inner(&self, v: VertexId) -> bool {
        v != self.source() && v != self.sink()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn tail(&self, e: EdgeId) -> VertexId {
        self.edges[e].0
    }

    pub fn head(&self, e: EdgeId) -> VertexId {
        self.edges[e].1
    }

    /// Incoming edges of `v`, first to last.
    pub fn in_order(&self, v: VertexId) -> &[EdgeId] {
        &self.in_order[v]
    }

    /// Outgoing edges of `v`, first to last.
    pub fn out_order(&self, v: VertexId) -> &[EdgeId] {
        &self.out_order[v]
    }

    /// Position of `e` in the incoming order at its head.
    pub fn in_pos(&self, e: EdgeId) -> usize {
        self.in_pos[e]
    }

    /// Position of `e` in the outgoing order at its tail.
    pub fn out_pos(&self, e: EdgeId) -> usize {
        self.out_pos[e]
    }

    /// `|E| - |V| + 1`, the dimension of the flow polytope.
    pub fn dimension(&self) -> usize {
        self.edges.len() + 1 - self.vertices
    }

    /// Number of routes in every maximal clique.
    pub fn facet_size(&self) -> usize {
        self.dimension() + 1
    }

    /// An edge is inner when neither endpoint is the source or the sink.
    pub fn is_inner_edge(&self, e: EdgeId) -> bool {
        self.is_inner(self.tail(e)) && self.is_inner(self.head(e))
    }

    pub fn inner_edges(&self) -> Vec<EdgeId> {
        (0..self.edge_count())
            .filter(|&e| self.is_inner_edge(e))
            .collect()
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self.vertices,
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(id, &(tail, head))| EdgeDoc { id, tail, head })
                .collect(),
            framing: FramingDoc {
                in_order: self.in_order.clone(),
                out_order: self.out_order.clone(),
            },
        }
    }

    pub fn from_doc(doc: GraphDoc) -> Result<Self> {
        let report = validate(&doc);
        if let Some(v) = report.violations.first() {
            return Err(Error::schema(v.field(), v.to_string()));
        }
        Ok(Self::from_valid_doc(doc))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("graph documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDoc =
            serde_json::from_str(text).map_err(|e| Error::schema(json_field(&e), e.to_string()))?;
        Self::from_doc(doc)
    }

    /// Same graph with edges relabelled by `(tail, position in the outgoing order)`.
    /// Two framed graphs are equal up to edge names iff their canonical forms are equal.
    pub fn canonical(&self) -> FramedGraph {
        let mut order: Vec<EdgeId> = (0..self.edge_count()).collect();
        order.sort_by_key(|&e| (self.tail(e), self.out_pos(e)));
        let mut rename = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            rename[old] = new;
        }
        self.relabel_edges(&rename)
    }

    /// Renames edge `e` to `rename[e]`; `rename` must be a permutation.
    pub fn relabel_edges(&self, rename: &[EdgeId]) -> FramedGraph {
        let mut edges = vec![(0, 0); self.edges.len()];
        for (old, &(t, h)) in self.edges.iter().enumerate() {
            edges[rename[old]] = (t, h);
        }
        let map = |lists: &Vec<Vec<EdgeId>>| -> Vec<Vec<EdgeId>> {
            lists
                .iter()
                .map(|l| l.iter().map(|&e| rename[e]).collect())
                .collect()
        };
        FramedGraph::new(
            self.vertices,
            edges,
            map(&self.in_order),
            map(&self.out_order),
        )
        .expect("relabelling preserves validity")
    }
}

fn json_field(e: &serde_json::Error) -> String {
    let msg = e.to_string();
    for key in [
        "vertices", "edges", "framing", "id", "tail", "head", "in", "out",
    ] {
        if msg.contains(&format!("`{key}`")) {
            return key.to_string();
        }
    }
    format!("line {} column {}", e.line(), e.column())
}
