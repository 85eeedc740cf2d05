//! Routes of a framed graph, their coherence graph, maximal cliques, and
//! rotations between adjacent cliques.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Limits, Result};
use crate::graph::{EdgeId, FramedGraph, VertexId};
use crate::paths::{self, cmp_in, cmp_out, segment_orientation, segments_with, Path};

pub type RouteId = usize;

/// Sorted route ids of a clique.
pub type Clique = Vec<RouteId>;

const ABSENT: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// The removed route is clockwise from the added one: an upward cover.
    Ccw,
    Cw,
}

/// Witness of a rotation `C -> (C \ removed) ∪ added`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotationStep {
    pub removed: RouteId,
    pub added: RouteId,
    /// The maximal common path on which `removed` and `added` cross.
    pub locus: Path,
    pub direction: Direction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InBetween {
    Strict,
    Weak,
    No,
}

/// All routes of a framed graph with their pairwise coherence, plus lazily built
/// tables of source- and sink-anchored paths.
pub struct RouteSpace {
    graph: FramedGraph,
    limits: Limits,
    routes: Vec<Path>,
    index: HashMap<Vec<EdgeId>, RouteId>,
    positions: Vec<Vec<u32>>,
    coherence: Vec<FixedBitSet>,
    exceptional: Vec<RouteId>,
    exceptional_set: FixedBitSet,
    incoming: OnceLock<std::result::Result<Vec<Vec<Path>>, Error>>,
    outgoing: OnceLock<std::result::Result<Vec<Vec<Path>>, Error>>,
}

impl std::fmt::Debug for RouteSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RouteSpace")
            .field("routes", &self.routes.len())
            .finish()
    }
}

impl RouteSpace {
    pub fn new(graph: FramedGraph, limits: Limits) -> Result<Self> {
        let routes = paths::enumerate_routes(&graph, limits.max_routes)?;
        let n = graph.vertex_count();
        let positions: Vec<Vec<u32>> = routes
            .iter()
            .map(|r| {
                let mut pos = vec![ABSENT; n];
                for (i, v) in r.vertices(&graph).into_iter().enumerate() {
                    pos[v] = i as u32;
                }
                pos
            })
            .collect();
        let index = routes
            .iter()
            .enumerate()
            .map(|(i, r)| (r.edges.clone(), i))
            .collect();
        let m = routes.len();
        let coherence: Vec<FixedBitSet> = (0..m)
            .into_par_iter()
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(m);
                for j in 0..m {
                    if i == j || routes_coherent(&graph, &routes[i], &routes[j], &positions[j]) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        let exceptional: Vec<RouteId> = (0..m)
            .filter(|&i| coherence[i].count_ones(..) == m)
            .collect();
        let mut exceptional_set = FixedBitSet::with_capacity(m);
        exceptional.iter().for_each(|&i| exceptional_set.insert(i));
        Ok(RouteSpace {
            graph,
            limits,
            routes,
            index,
            positions,
            coherence,
            exceptional,
            exceptional_set,
            incoming: OnceLock::new(),
            outgoing: OnceLock::new(),
        })
    }

    pub fn graph(&self) -> &FramedGraph {
        &self.graph
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn routes(&self) -> &[Path] {
        &self.routes
    }

    pub fn route(&self, id: RouteId) -> &Path {
        &self.routes[id]
    }

    pub fn route_count(&self) -> usize {
        self.routes.len()
    }

    pub fn route_id(&self, edges: &[EdgeId]) -> Option<RouteId> {
        self.index.get(edges).copied()
    }

    pub fn coherent(&self, a: RouteId, b: RouteId) -> bool {
        self.coherence[a].contains(b)
    }

    pub fn coherence_row(&self, a: RouteId) -> &FixedBitSet {
        &self.coherence[a]
    }

    pub fn exceptional(&self) -> &[RouteId] {
        &self.exceptional
    }

    pub fn is_exceptional(&self, r: RouteId) -> bool {
        self.exceptional_set.contains(r)
    }

    /// Index of `v` along route `r`.
    pub fn position(&self, r: RouteId, v: VertexId) -> Option<usize> {
        let p = self.positions[r][v];
        (p != ABSENT).then_some(p as usize)
    }

    /// Coherence of an arbitrary path with a route.
    pub fn path_coherent(&self, p: &Path, r: RouteId) -> bool {
        routes_coherent(&self.graph, p, &self.routes[r], &self.positions[r])
    }

    /// Whether `p <_v^cw r` at some vertex.
    pub fn path_is_cw_of(&self, p: &Path, r: RouteId) -> bool {
        let q = &self.routes[r];
        let pos = &self.positions[r];
        segments_with(&self.graph, p, q, |v| {
            (pos[v] != ABSENT).then_some(pos[v] as usize)
        })
        .into_iter()
        .any(|s| segment_orientation(&self.graph, p, q, s) == Some(Ordering::Less))
    }

    /// Whether `r <_v^cw p` at some vertex.
    pub fn route_is_cw_of(&self, r: RouteId, p: &Path) -> bool {
        let q = &self.routes[r];
        let pos = &self.positions[r];
        segments_with(&self.graph, p, q, |v| {
            (pos[v] != ABSENT).then_some(pos[v] as usize)
        })
        .into_iter()
        .any(|s| segment_orientation(&self.graph, p, q, s) == Some(Ordering::Greater))
    }

    /// Source-to-`v` paths in increasing incoming order.
    pub fn incoming_paths(&self, v: VertexId) -> Result<&[Path]> {
        let table = self.incoming.get_or_init(|| {
            let cap = self.limits.max_paths;
            (0..self.graph.vertex_count())
                .map(|v| paths::incoming_paths(&self.graph, v, cap))
                .collect()
        });
        table
            .as_ref()
            .map(|t| t[v].as_slice())
            .map_err(Clone::clone)
    }

    /// `v`-to-sink paths in increasing outgoing order.
    pub fn outgoing_paths(&self, v: VertexId) -> Result<&[Path]> {
        let table = self.outgoing.get_or_init(|| {
            let cap = self.limits.max_paths;
            (0..self.graph.vertex_count())
                .map(|v| paths::outgoing_paths(&self.graph, v, cap))
                .collect()
        });
        table
            .as_ref()
            .map(|t| t[v].as_slice())
            .map_err(Clone::clone)
    }

    pub fn is_clique(&self, c: &[RouteId]) -> bool {
        c.iter().all(|&a| c.iter().all(|&b| self.coherent(a, b)))
    }

    /// Routes outside `c` coherent with every member of `c`.
    pub fn common_neighbors(&self, c: &[RouteId]) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.routes.len());
        acc.insert_range(..);
        for &r in c {
            acc.intersect_with(&self.coherence[r]);
        }
        for &r in c {
            acc.set(r, false);
        }
        acc
    }

    pub fn is_maximal(&self, c: &[RouteId]) -> bool {
        self.is_clique(c) && self.common_neighbors(c).is_clear()
    }

    /// All maximal cliques, each sorted, in lexicographic order.
    pub fn maximal_cliques(&self) -> Result<Vec<Clique>> {
        let free: Vec<RouteId> = (0..self.routes.len())
            .filter(|&r| !self.is_exceptional(r))
            .collect();
        let m = self.routes.len();
        let cap = self.limits.max_elements;
        let found = AtomicUsize::new(0);
        let mut adjacency: Vec<FixedBitSet> = self.coherence.clone();
        for (r, row) in adjacency.iter_mut().enumerate() {
            row.set(r, false);
            row.difference_with(&self.exceptional_set);
        }
        let mut cliques: Vec<Clique> = if free.is_empty() {
            vec![Vec::new()]
        } else {
            let per_root: Vec<Result<Vec<Clique>>> = free
                .par_iter()
                .map(|&root| {
                    let mut later = FixedBitSet::with_capacity(m);
                    let mut earlier = FixedBitSet::with_capacity(m);
                    for &r in &free {
                        if adjacency[root].contains(r) {
                            if r > root {
                                later.insert(r);
                            } else {
                                earlier.insert(r);
                            }
                        }
                    }
                    let mut out = Vec::new();
                    let mut current = vec![root];
                    bron_kerbosch(
                        &adjacency,
                        &mut current,
                        later,
                        earlier,
                        &mut out,
                        &found,
                        cap,
                    )?;
                    Ok(out)
                })
                .collect();
            let mut all = Vec::new();
            for part in per_root {
                all.extend(part?);
            }
            all
        };
        let size = self.graph.facet_size();
        for c in cliques.iter_mut() {
            c.extend_from_slice(&self.exceptional);
            c.sort_unstable();
            if c.len() != size {
                return Err(Error::Structural(format!(
                    "maximal clique with {} routes, expected {size}",
                    c.len()
                )));
            }
        }
        cliques.sort();
        Ok(cliques)
    }

    /// Extends a path coherent with `c` to a route coherent with `c`, one edge at a
    /// time, taking the first admissible edge in framing order.
    pub fn extend_path_to_route(&self, c: &[RouteId], p: &Path) -> Result<RouteId> {
        let g = &self.graph;
        let ok = |q: &Path| c.iter().all(|&r| self.path_coherent(q, r));
        if !ok(p) {
            return Err(Error::Precondition(
                "path is not coherent with the clique".into(),
            ));
        }
        let mut q = p.clone();
        while q.end(g) != g.sink() {
            let v = q.end(g);
            let next = g.out_order(v).iter().find_map(|&e| {
                let mut ext = q.clone();
                ext.edges.push(e);
                ok(&ext).then_some(ext)
            });
            q = next
                .ok_or_else(|| Error::Structural(format!("no coherent extension at vertex {v}")))?;
        }
        while q.start != g.source() {
            let v = q.start;
            let next = g.in_order(v).iter().find_map(|&e| {
                let mut edges = vec![e];
                edges.extend_from_slice(&q.edges);
                let ext = Path {
                    edges,
                    start: g.tail(e),
                };
                ok(&ext).then_some(ext)
            });
            q = next
                .ok_or_else(|| Error::Structural(format!("no coherent extension at vertex {v}")))?;
        }
        Ok(self.route_id(&q.edges).expect("extension is a route"))
    }

    /// `(R1 v R2, R2 v R1)` for `R1 <_v^cw R2`.
    pub fn top_bot(&self, r1: RouteId, r2: RouteId, v: VertexId) -> Result<(RouteId, RouteId)> {
        let g = &self.graph;
        let (a, b) = (self.route(r1), self.route(r2));
        if !paths::cw_at(g, a, b, v) {
            return Err(Error::Precondition(format!(
                "routes {r1}, {r2} are not cw at {v}"
            )));
        }
        let (i, j) = (self.position(r1, v).unwrap(), self.position(r2, v).unwrap());
        let splice = |x: &Path, i: usize, y: &Path, j: usize| {
            let mut e = x.edges[..i].to_vec();
            e.extend_from_slice(&y.edges[j..]);
            self.route_id(&e).expect("splice of routes is a route")
        };
        Ok((splice(a, i, b, j), splice(b, j, a, i)))
    }

    /// Classifies `r` against `R1 <_v^cw R2` at `v`.
    pub fn in_between(
        &self,
        r: RouteId,
        r1: RouteId,
        r2: RouteId,
        v: VertexId,
    ) -> Result<InBetween> {
        let g = &self.graph;
        let (a, b) = (self.route(r1), self.route(r2));
        if !paths::cw_at(g, a, b, v) {
            return Err(Error::Precondition(format!(
                "routes {r1}, {r2} are not cw at {v}"
            )));
        }
        let Some(k) = self.position(r, v) else {
            return Ok(InBetween::No);
        };
        let (i, j) = (self.position(r1, v).unwrap(), self.position(r2, v).unwrap());
        let x = self.route(r);
        let c1 = cmp_in(g, &a.edges[..i], &x.edges[..k]);
        let c2 = cmp_in(g, &x.edges[..k], &b.edges[..j]);
        let c3 = cmp_out(g, &b.edges[j..], &x.edges[k..]);
        let c4 = cmp_out(g, &x.edges[k..], &a.edges[i..]);
        let weak = [c1, c2, c3, c4].iter().all(|&c| c != Ordering::Greater);
        let strict_in = c1 == Ordering::Less && c2 == Ordering::Less;
        let strict_out = c3 == Ordering::Less && c4 == Ordering::Less;
        Ok(if weak && (strict_in || strict_out) {
            InBetween::Strict
        } else if weak {
            InBetween::Weak
        } else {
            InBetween::No
        })
    }

    /// All rotations out of a maximal clique, found with the Top-Bottom and
    /// In-Between tests. Sorted by (direction, removed).
    pub fn rotation_neighbors(&self, c: &[RouteId]) -> Vec<(Clique, RotationStep)> {
        let g = &self.graph;
        let mut out = Vec::new();
        let mut members = FixedBitSet::with_capacity(self.routes.len());
        c.iter().for_each(|&r| members.insert(r));
        for &r1 in c {
            if self.is_exceptional(r1) {
                continue;
            }
            let mut incoherent = self.coherence[r1].clone();
            incoherent.toggle_range(..);
            for r2 in incoherent.ones() {
                let paths::Incoherence::Locus { path, p_is_cw } =
                    paths::incoherence_path(g, self.route(r1), self.route(r2))
                else {
                    continue;
                };
                let v = path.start;
                let (lo, hi) = if p_is_cw { (r1, r2) } else { (r2, r1) };
                let (top, bot) = self
                    .top_bot(lo, hi, v)
                    .expect("locus routes are cw at its start");
                let in_c_minus = |r: RouteId| r != r1 && members.contains(r);
                if !in_c_minus(top) || !in_c_minus(bot) {
                    continue;
                }
                let blocked = c
                    .iter()
                    .any(|&r| self.in_between(r, lo, hi, v).unwrap() == InBetween::Strict);
                if blocked {
                    continue;
                }
                let mut next: Clique = c.iter().copied().filter(|&r| r != r1).collect();
                next.push(r2);
                next.sort_unstable();
                let direction = if p_is_cw {
                    Direction::Ccw
                } else {
                    Direction::Cw
                };
                out.push((
                    next,
                    RotationStep {
                        removed: r1,
                        added: r2,
                        locus: path,
                        direction,
                    },
                ));
            }
        }
        out.sort_by_key(|a| (a.1.direction, a.1.removed));
        out
    }

    /// Rotations by definition: swap one route for another keeping a clique.
    /// Returns `(neighbor, removed, added)`.
    pub fn rotation_neighbors_brute(&self, c: &[RouteId]) -> Vec<(Clique, RouteId, RouteId)> {
        let mut out = Vec::new();
        for &r1 in c {
            let rest: Vec<RouteId> = c.iter().copied().filter(|&r| r != r1).collect();
            let mut cand = self.common_neighbors(&rest);
            cand.set(r1, false);
            for r2 in cand.ones() {
                let mut next = rest.clone();
                next.push(r2);
                next.sort_unstable();
                out.push((next, r1, r2));
            }
        }
        out.sort_by_key(|x| (x.1, x.2));
        out
    }

    pub fn clique_routes(&self, c: &[RouteId]) -> Vec<Path> {
        c.iter().map(|&r| self.routes[r].clone()).collect()
    }
}

fn routes_coherent(g: &FramedGraph, p: &Path, q: &Path, q_pos: &[u32]) -> bool {
    segments_with(g, p, q, |v| {
        (q_pos[v] != ABSENT).then_some(q_pos[v] as usize)
    })
    .into_iter()
    .all(|s| segment_orientation(g, p, q, s).is_none())
}

fn bron_kerbosch(
    adj: &[FixedBitSet],
    current: &mut Vec<RouteId>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Clique>,
    found: &AtomicUsize,
    cap: usize,
) -> Result<()> {
    if p.is_clear() {
        if x.is_clear() {
            if found.fetch_add(1, AtomicOrdering::Relaxed) >= cap {
                return Err(Error::ElementExplosion { cap });
            }
            out.push(current.clone());
        }
        return Ok(());
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| p.intersection(&adj[u]).count())
        .expect("p is nonempty");
    let mut candidates = p.clone();
    candidates.difference_with(&adj[pivot]);
    for v in candidates.ones() {
        let mut np = p.clone();
        np.intersect_with(&adj[v]);
        let mut nx = x.clone();
        nx.intersect_with(&adj[v]);
        current.push(v);
        bron_kerbosch(adj, current, np, nx, out, found, cap)?;
        current.pop();
        p.set(v, false);
        x.insert(v);
    }
    Ok(())
}
