//! Directed paths, routes, the comparison orders at a vertex, and coherence.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, FramedGraph, VertexId};

/// A directed path. `start` anchors the path; for an empty path it is the only vertex.
///
/// Ordering is lexicographic by edge sequence, then by anchor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub edges: Vec<EdgeId>,
    pub start: VertexId,
}

impl Path {
    pub fn empty(v: VertexId) -> Path {
        Path {
            edges: Vec::new(),
            start: v,
        }
    }

    /// Builds a path from a nonempty contiguous edge sequence.
    pub fn from_edges(g: &FramedGraph, edges: Vec<EdgeId>) -> Result<Path> {
        let first = *edges
            .first()
            .ok_or_else(|| Error::Precondition("a path needs an edge or an anchor".into()))?;
        Path::new(g, g.tail(first), edges)
    }

    pub fn new(g: &FramedGraph, start: VertexId, edges: Vec<EdgeId>) -> Result<Path> {
        if start >= g.vertex_count() {
            return Err(Error::Precondition(format!(
                "vertex {start} does not exist"
            )));
        }
        let mut at = start;
        for &e in &edges {
            if e >= g.edge_count() || g.tail(e) != at {
                return Err(Error::Precondition(format!(
                    "edges {edges:?} do not form a path from {start}"
                )));
            }
            at = g.head(e);
        }
        Ok(Path { edges, start })
    }

    /// Route through the given edges, for a graph known to contain it.
    pub fn route(edges: Vec<EdgeId>) -> Path {
        Path { edges, start: 0 }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn end(&self, g: &FramedGraph) -> VertexId {
        self.edges.last().map_or(self.start, |&e| g.head(e))
    }

    /// Vertices visited, in order; one more than the number of edges.
    pub fn vertices(&self, g: &FramedGraph) -> Vec<VertexId> {
        std::iter::once(self.start)
            .chain(self.edges.iter().map(|&e| g.head(e)))
            .collect()
    }

    /// Index of `v` in [`Path::vertices`].
    pub fn position(&self, g: &FramedGraph, v: VertexId) -> Option<usize> {
        if self.start == v {
            return Some(0);
        }
        self.edges
            .iter()
            .position(|&e| g.head(e) == v)
            .map(|i| i + 1)
    }

    pub fn is_route(&self, g: &FramedGraph) -> bool {
        self.start == g.source() && self.end(g) == g.sink()
    }

    /// `Pv`: the part of the path up to its vertex at `index`.
    pub fn up_to(&self, index: usize) -> Path {
        Path {
            edges: self.edges[..index].to_vec(),
            start: self.start,
        }
    }

    /// `vP`: the part of the path from its vertex at `index` on.
    pub fn from_index(&self, g: &FramedGraph, index: usize) -> Path {
        let start = if index == 0 {
            self.start
        } else {
            g.head(self.edges[index - 1])
        };
        Path {
            edges: self.edges[index..].to_vec(),
            start,
        }
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn concat(&self, other: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path {
            edges,
            start: self.start,
        }
    }

    /// Contains `other` as a contiguous subpath (anchors included for empty paths).
    pub fn contains_path(&self, g: &FramedGraph, other: &Path) -> bool {
        match self.position(g, other.start) {
            None => false,
            Some(i) => self.edges[i..].starts_with(&other.edges),
        }
    }

    /// `max(P) - min(P)` in vertex indices.
    pub fn span(&self, g: &FramedGraph) -> usize {
        self.end(g) - self.start
    }
}

/// Compares two paths ending at the same vertex in the incoming order.
///
/// Walks back over the common suffix; if it exhausts either path the result is
/// `Equal`, otherwise the edges entering the divergence vertex decide.
pub fn cmp_in(g: &FramedGraph, p: &[EdgeId], q: &[EdgeId]) -> Ordering {
    let k = p
        .iter()
        .rev()
        .zip(q.iter().rev())
        .take_while(|(a, b)| a == b)
        .count();
    if k == p.len() || k == q.len() {
        return Ordering::Equal;
    }
    let (a, b) = (p[p.len() - 1 - k], q[q.len() - 1 - k]);
    g.in_pos(a).cmp(&g.in_pos(b))
}

/// Compares two paths starting at the same vertex in the outgoing order.
pub fn cmp_out(g: &FramedGraph, p: &[EdgeId], q: &[EdgeId]) -> Ordering {
    let k = p.iter().zip(q.iter()).take_while(|(a, b)| a == b).count();
    if k == p.len() || k == q.len() {
        return Ordering::Equal;
    }
    g.out_pos(p[k]).cmp(&g.out_pos(q[k]))
}

/// `P <_v^cw Q`: at `v`, `P` comes in before `Q` and leaves after it.
/// Returns false when `v` is not on both paths.
pub fn cw_at(g: &FramedGraph, p: &Path, q: &Path, v: VertexId) -> bool {
    let (Some(i), Some(j)) = (p.position(g, v), q.position(g, v)) else {
        return false;
    };
    cmp_in(g, &p.edges[..i], &q.edges[..j]) == Ordering::Less
        && cmp_out(g, &q.edges[j..], &p.edges[i..]) == Ordering::Less
}

/// A maximal run of vertices shared by two paths, joined by shared edges.
/// `p_at`/`q_at` index the first shared vertex in each path; `len` counts shared edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub p_at: usize,
    pub q_at: usize,
    pub len: usize,
}

/// All maximal common segments of `p` and `q`, in the order they occur along `p`.
pub fn common_segments(g: &FramedGraph, p: &Path, q: &Path) -> Vec<Segment> {
    let q_vertices = q.vertices(g);
    let lookup = |v: VertexId| q_vertices.iter().position(|&w| w == v);
    segments_with(g, p, q, lookup)
}

/// Like [`common_segments`] with a precomputed vertex lookup for `q`.
pub(crate) fn segments_with(
    g: &FramedGraph,
    p: &Path,
    q: &Path,
    q_index: impl Fn(VertexId) -> Option<usize>,
) -> Vec<Segment> {
    let mut out = Vec::new();
    let mut i = 0;
    let mut v = p.start;
    while i <= p.len() {
        if let Some(j) = q_index(v) {
            let mut len = 0;
            while i + len < p.len() && j + len < q.len() && p.edges[i + len] == q.edges[j + len] {
                len += 1;
            }
            out.push(Segment {
                p_at: i,
                q_at: j,
                len,
            });
            i += len;
        }
        if i < p.len() {
            v = g.head(p.edges[i]);
        }
        i += 1;
    }
    out
}

/// How `p` and `q` relate along one common segment: `Less` if `p <_v^cw q` at its
/// vertices, `Greater` if `q <_v^cw p`, `None` if they are coherent there.
pub fn segment_orientation(g: &FramedGraph, p: &Path, q: &Path, s: Segment) -> Option<Ordering> {
    let (pe, qe) = (s.p_at + s.len, s.q_at + s.len);
    if s.p_at == 0 || s.q_at == 0 || pe == p.len() || qe == q.len() {
        return None;
    }
    let (p_in, q_in) = (g.in_pos(p.edges[s.p_at - 1]), g.in_pos(q.edges[s.q_at - 1]));
    let (p_out, q_out) = (g.out_pos(p.edges[pe]), g.out_pos(q.edges[qe]));
    if p_in < q_in && q_out < p_out {
        Some(Ordering::Less)
    } else if q_in < p_in && p_out < q_out {
        Some(Ordering::Greater)
    } else {
        None
    }
}

pub fn coherent(g: &FramedGraph, p: &Path, q: &Path) -> bool {
    common_segments(g, p, q)
        .into_iter()
        .all(|s| segment_orientation(g, p, q, s).is_none())
}

/// Coherence by the pointwise definition: no common vertex with a cw relation in
/// either direction. Independent of the segment machinery.
pub fn coherent_pointwise(g: &FramedGraph, p: &Path, q: &Path) -> bool {
    p.vertices(g)
        .into_iter()
        .all(|v| !cw_at(g, p, q, v) && !cw_at(g, q, p, v))
}

/// Where two paths are incoherent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Incoherence {
    Coherent,
    /// The single maximal common path on which they cross, and whether `p <_v^cw q` there.
    Locus {
        path: Path,
        p_is_cw: bool,
    },
    MultipleLoci(Vec<Path>),
}

pub fn incoherence_path(g: &FramedGraph, p: &Path, q: &Path) -> Incoherence {
    let mut loci: Vec<(Path, bool)> = common_segments(g, p, q)
        .into_iter()
        .filter_map(|s| {
            segment_orientation(g, p, q, s).map(|o| {
                let start = if s.p_at == 0 {
                    p.start
                } else {
                    g.head(p.edges[s.p_at - 1])
                };
                let path = Path {
                    edges: p.edges[s.p_at..s.p_at + s.len].to_vec(),
                    start,
                };
                (path, o == Ordering::Less)
            })
        })
        .collect();
    match loci.len() {
        0 => Incoherence::Coherent,
        1 => {
            let (path, p_is_cw) = loci.pop().unwrap();
            Incoherence::Locus { path, p_is_cw }
        }
        _ => Incoherence::MultipleLoci(loci.into_iter().map(|(p, _)| p).collect()),
    }
}

/// Whether `p <_v^cw r` at some common vertex.
pub fn is_cw_of(g: &FramedGraph, p: &Path, r: &Path) -> bool {
    common_segments(g, p, r)
        .into_iter()
        .any(|s| segment_orientation(g, p, r, s) == Some(Ordering::Less))
}

fn explosion(cap: usize) -> Error {
    Error::PathExplosion { cap }
}

/// All routes, lexicographic by edge sequence.
pub fn enumerate_routes(g: &FramedGraph, cap: usize) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn walk(
        g: &FramedGraph,
        v: VertexId,
        stack: &mut Vec<EdgeId>,
        out: &mut Vec<Path>,
        cap: usize,
    ) -> Result<()> {
        if v == g.sink() {
            if out.len() == cap {
                return Err(Error::RouteExplosion { cap });
            }
            out.push(Path::route(stack.clone()));
            return Ok(());
        }
        let mut next = g.out_order(v).to_vec();
        next.sort_unstable();
        for e in next {
            stack.push(e);
            walk(g, g.head(e), stack, out, cap)?;
            stack.pop();
        }
        Ok(())
    }
    walk(g, g.source(), &mut stack, &mut out, cap)?;
    Ok(out)
}

/// All directed paths with at least `min_edges` edges (empty paths included when
/// `min_edges == 0`), sorted canonically.
pub fn enumerate_paths(g: &FramedGraph, min_edges: usize, cap: usize) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    fn walk(
        g: &FramedGraph,
        path: &mut Path,
        v: VertexId,
        min: usize,
        out: &mut Vec<Path>,
        cap: usize,
    ) -> Result<()> {
        if path.len() >= min {
            if out.len() == cap {
                return Err(explosion(cap));
            }
            out.push(path.clone());
        }
        for &e in g.out_order(v) {
            path.edges.push(e);
            walk(g, path, g.head(e), min, out, cap)?;
            path.edges.pop();
        }
        Ok(())
    }
    for v in 0..g.vertex_count() {
        walk(g, &mut Path::empty(v), v, min_edges, &mut out, cap)?;
    }
    out.sort();
    Ok(out)
}

/// Paths from the source to `v`, sorted increasingly by [`cmp_in`].
/// At the source this is the single empty path.
pub fn incoming_paths(g: &FramedGraph, v: VertexId, cap: usize) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    fn walk(
        g: &FramedGraph,
        suffix: &mut Vec<EdgeId>,
        v: VertexId,
        out: &mut Vec<Path>,
        cap: usize,
    ) -> Result<()> {
        if v == g.source() {
            if out.len() == cap {
                return Err(explosion(cap));
            }
            out.push(Path {
                edges: suffix.iter().rev().copied().collect(),
                start: v,
            });
            return Ok(());
        }
        for &e in g.in_order(v) {
            suffix.push(e);
            walk(g, suffix, g.tail(e), out, cap)?;
            suffix.pop();
        }
        Ok(())
    }
    walk(g, &mut Vec::new(), v, &mut out, cap)?;
    out.sort_by(|a, b| cmp_in(g, &a.edges, &b.edges));
    Ok(out)
}

/// Paths from `v` to the sink, sorted increasingly by [`cmp_out`].
pub fn outgoing_paths(g: &FramedGraph, v: VertexId, cap: usize) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    fn walk(
        g: &FramedGraph,
        path: &mut Path,
        v: VertexId,
        out: &mut Vec<Path>,
        cap: usize,
    ) -> Result<()> {
        if v == g.sink() {
            if out.len() == cap {
                return Err(explosion(cap));
            }
            out.push(path.clone());
            return Ok(());
        }
        for &e in g.out_order(v) {
            path.edges.push(e);
            walk(g, path, g.head(e), out, cap)?;
            path.edges.pop();
        }
        Ok(())
    }
    walk(g, &mut Path::empty(v), v, &mut out, cap)?;
    out.sort_by(|a, b| cmp_out(g, &a.edges, &b.edges));
    Ok(out)
}

/// Routes `R` with `P <_v^cw R` at some vertex.
pub fn ccw_of(g: &FramedGraph, p: &Path, routes: &[Path]) -> Vec<Path> {
    routes
        .iter()
        .filter(|r| is_cw_of(g, p, r))
        .cloned()
        .collect()
}

/// Routes `R` with `R <_v^cw P` at some vertex.
pub fn cw_of(g: &FramedGraph, p: &Path, routes: &[Path]) -> Vec<Path> {
    routes
        .iter()
        .filter(|r| is_cw_of(g, r, p))
        .cloned()
        .collect()
}

/// Routes coherent with every route.
pub fn exceptional_routes(g: &FramedGraph, routes: &[Path]) -> Vec<Path> {
    routes
        .iter()
        .filter(|r| routes.iter().all(|q| coherent(g, r, q)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{caracol, complete_graph, oruga, CaracolVariant};

    fn route(edges: &[EdgeId]) -> Path {
        Path::route(edges.to_vec())
    }

    #[test]
    fn oruga_comparisons() {
        let g = oruga(2).unwrap();
        assert_eq!(cmp_in(&g, &[0, 2], &[1, 2]), Ordering::Less);
        assert_eq!(cmp_out(&g, &[0, 2], &[0, 3]), Ordering::Less);
        assert_eq!(cmp_in(&g, &[2], &[0, 2]), Ordering::Equal);
        assert_eq!(cmp_in(&g, &[0, 2], &[0, 2]), Ordering::Equal);
    }

    #[test]
    fn oruga_coherence() {
        let g = oruga(2).unwrap();
        assert!(cw_at(&g, &route(&[0, 3]), &route(&[1, 2]), 1));
        assert!(!cw_at(&g, &route(&[0, 3]), &route(&[0, 3]), 1));
        assert!(coherent(&g, &route(&[0, 2]), &route(&[1, 3])));
        assert!(!coherent(&g, &route(&[0, 3]), &route(&[1, 2])));
        match incoherence_path(&g, &route(&[0, 3]), &route(&[1, 2])) {
            Incoherence::Locus { path, p_is_cw } => {
                assert_eq!(path, Path::empty(1));
                assert!(p_is_cw);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn route_and_path_counts() {
        assert_eq!(enumerate_routes(&oruga(3).unwrap(), 100).unwrap().len(), 8);
        assert!(enumerate_paths(&oruga(1).unwrap(), 2, 100)
            .unwrap()
            .is_empty());
        assert_eq!(
            enumerate_paths(&oruga(2).unwrap(), 2, 100).unwrap().len(),
            4
        );
        assert!(matches!(
            enumerate_paths(&complete_graph(6).unwrap(), 0, 10),
            Err(Error::PathExplosion { cap: 10 })
        ));
    }

    #[test]
    fn routes_are_lexicographic() {
        let g = complete_graph(5).unwrap();
        let routes = enumerate_routes(&g, 1000).unwrap();
        let mut sorted = routes.clone();
        sorted.sort();
        assert_eq!(routes, sorted);
    }

    #[test]
    fn short_paths_have_empty_ccw_sets() {
        let g = complete_graph(5).unwrap();
        let routes = enumerate_routes(&g, 1000).unwrap();
        for p in enumerate_paths(&g, 0, 1000)
            .unwrap()
            .into_iter()
            .filter(|p| p.len() < 2)
        {
            assert!(ccw_of(&g, &p, &routes).is_empty());
            assert!(cw_of(&g, &p, &routes).is_empty());
        }
    }

    #[test]
    fn exceptional_counts() {
        // Only the all-top and all-bottom routes of an oruga avoid every crossing.
        let g = oruga(3).unwrap();
        let ex = exceptional_routes(&g, &enumerate_routes(&g, 100).unwrap());
        assert_eq!(ex, vec![route(&[0, 2, 4]), route(&[1, 3, 5])]);
        let g = caracol(6, CaracolVariant::Tamari).unwrap();
        // The path and the two extreme source/sink routes correspond to the polygon sides.
        let ex = exceptional_routes(&g, &enumerate_routes(&g, 100).unwrap());
        assert_eq!(ex.len(), 5);
    }

    #[test]
    fn segment_and_pointwise_coherence_agree() {
        let g = complete_graph(6).unwrap();
        let routes = enumerate_routes(&g, 1000).unwrap();
        for p in &routes {
            for q in &routes {
                assert_eq!(coherent(&g, p, q), coherent_pointwise(&g, p, q));
            }
        }
    }
}
