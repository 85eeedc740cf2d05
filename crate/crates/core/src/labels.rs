//! Path and extended-path labels of covers, the join and meet irreducibles
//! they index, and the core label order.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::cliques::RouteId;
use crate::error::{Error, Result};
use crate::graph::FramedGraph;
use crate::lattice::{Cover, FramingLattice};
use crate::order::Poset;
use crate::paths::{self, Path};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtKind {
    Cw,
    Ccw,
}

/// A path of at least two edges whose first edge `e1` (into `w1`) and last edge
/// `e2` (out of `w2`) can be moved one step in the framing orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedPath {
    pub path: Path,
    pub kind: ExtKind,
}

impl ExtendedPath {
    pub fn new(g: &FramedGraph, path: Path, kind: ExtKind) -> Result<Self> {
        if !is_extended(g, &path, kind) {
            return Err(Error::Precondition(format!(
                "{:?} is not a {kind:?}-extended path",
                path.edges
            )));
        }
        Ok(ExtendedPath { path, kind })
    }

    /// The inner path between `w1` and `w2`.
    pub fn core(&self, g: &FramedGraph) -> Path {
        let e = &self.path.edges;
        Path {
            edges: e[1..e.len() - 1].to_vec(),
            start: g.head(e[0]),
        }
    }
}

pub fn is_extended(g: &FramedGraph, p: &Path, kind: ExtKind) -> bool {
    if p.len() < 2 {
        return false;
    }
    let (e1, e2) = (p.edges[0], p.edges[p.len() - 1]);
    let last_in = g.in_order(g.head(e1)).len() - 1;
    let last_out = g.out_order(g.tail(e2)).len() - 1;
    match kind {
        ExtKind::Cw => g.in_pos(e1) < last_in && g.out_pos(e2) > 0,
        ExtKind::Ccw => g.in_pos(e1) > 0 && g.out_pos(e2) < last_out,
    }
}

/// All extended paths of the given kind, sorted.
pub fn enumerate_extended_paths(
    g: &FramedGraph,
    kind: ExtKind,
    cap: usize,
) -> Result<Vec<ExtendedPath>> {
    let mut out: Vec<ExtendedPath> = paths::enumerate_paths(g, 2, cap)?
        .into_iter()
        .filter(|p| is_extended(g, p, kind))
        .map(|path| ExtendedPath { path, kind })
        .collect();
    out.sort();
    Ok(out)
}

fn shift(g: &FramedGraph, p: &ExtendedPath, step: isize, to: ExtKind) -> Result<ExtendedPath> {
    let mut edges = p.path.edges.clone();
    let n = edges.len();
    let w1 = g.head(edges[0]);
    let w2 = g.tail(edges[n - 1]);
    let at = |pos: usize, d: isize| pos.checked_add_signed(d);
    let first = at(g.in_pos(edges[0]), step).and_then(|k| g.in_order(w1).get(k).copied());
    let last = at(g.out_pos(edges[n - 1]), -step).and_then(|k| g.out_order(w2).get(k).copied());
    match (first, last) {
        (Some(a), Some(b)) if p.path.len() >= 2 => {
            edges[0] = a;
            edges[n - 1] = b;
            ExtendedPath::new(
                g,
                Path {
                    start: g.tail(a),
                    edges,
                },
                to,
            )
        }
        _ => Err(Error::Precondition(format!(
            "{:?} cannot be shifted",
            p.path.edges
        ))),
    }
}

/// Successor of `e1` in `In(w1)`, predecessor of `e2` in `Out(w2)`.
pub fn phi_ccw(g: &FramedGraph, p: &ExtendedPath) -> Result<ExtendedPath> {
    if p.kind != ExtKind::Cw {
        return Err(Error::Precondition(
            "phi_ccw expects a cw-extended path".into(),
        ));
    }
    shift(g, p, 1, ExtKind::Ccw)
}

/// Predecessor of `e1` in `In(w1)`, successor of `e2` in `Out(w2)`.
pub fn phi_cw(g: &FramedGraph, p: &ExtendedPath) -> Result<ExtendedPath> {
    if p.kind != ExtKind::Ccw {
        return Err(Error::Precondition(
            "phi_cw expects a ccw-extended path".into(),
        ));
    }
    shift(g, p, -1, ExtKind::Cw)
}

/// The three labels of a cover: the locus `P`, and `P` extended along the
/// removed route (cw) and along the added route (ccw).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabels {
    pub path: Path,
    pub cw: ExtendedPath,
    pub ccw: ExtendedPath,
}

fn extend_along(g: &FramedGraph, route: &Path, locus: &Path) -> Path {
    let i = route
        .position(g, locus.start)
        .expect("locus lies on the route");
    let j = i + locus.len();
    Path {
        edges: route.edges[i - 1..=j].to_vec(),
        start: g.tail(route.edges[i - 1]),
    }
}

pub fn edge_labels(l: &FramingLattice, cover: &Cover) -> EdgeLabels {
    let g = l.graph();
    let s = &cover.step;
    let p1 = extend_along(g, l.space().route(s.removed), &s.locus);
    let p2 = extend_along(g, l.space().route(s.added), &s.locus);
    EdgeLabels {
        path: s.locus.clone(),
        cw: ExtendedPath {
            path: p1,
            kind: ExtKind::Cw,
        },
        ccw: ExtendedPath {
            path: p2,
            kind: ExtKind::Ccw,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Cw,
    Ccw,
}

/// The cw-most (or ccw-most) route through `p`, built by greedy extension.
pub fn extremal_route(g: &FramedGraph, p: &Path, side: Side) -> Path {
    let mut front = Vec::new();
    let mut v = p.start;
    while v != g.source() {
        let ins = g.in_order(v);
        let e = if side == Side::Cw {
            ins[0]
        } else {
            ins[ins.len() - 1]
        };
        front.push(e);
        v = g.tail(e);
    }
    front.reverse();
    front.extend_from_slice(&p.edges);
    let mut v = p.end(g);
    while v != g.sink() {
        let outs = g.out_order(v);
        let e = if side == Side::Cw {
            outs[outs.len() - 1]
        } else {
            outs[0]
        };
        front.push(e);
        v = g.head(e);
    }
    Path::route(front)
}

/// Reference version of [`extremal_route`]: among all routes through `p`, the
/// one whose prefix is least in the incoming order and whose suffix is greatest
/// in the outgoing order (reversed for `Ccw`).
pub fn extremal_route_brute(
    g: &FramedGraph,
    routes: &[Path],
    p: &Path,
    side: Side,
) -> Option<Path> {
    let split = |r: &Path| -> Option<(Vec<usize>, Vec<usize>)> {
        let i = r.position(g, p.start)?;
        (r.edges.get(i..i + p.len())? == p.edges.as_slice())
            .then(|| (r.edges[..i].to_vec(), r.edges[i + p.len()..].to_vec()))
    };
    let through: Vec<(&Path, Vec<usize>, Vec<usize>)> = routes
        .iter()
        .filter_map(|r| split(r).map(|(a, b)| (r, a, b)))
        .collect();
    through
        .iter()
        .find(|(_, a, b)| {
            through.iter().all(|(_, a2, b2)| {
                let (pre, suf) = (paths::cmp_in(g, a, a2), paths::cmp_out(g, b2, b));
                match side {
                    Side::Cw => pre.is_le() && suf.is_le(),
                    Side::Ccw => pre.is_ge() && suf.is_ge(),
                }
            })
        })
        .map(|(r, _, _)| (*r).clone())
}

/// Join irreducibles as `(P̃2, c_min(P̃2))`, one per ccw-extended path.
pub fn join_irreducibles(l: &FramingLattice) -> Result<Vec<(ExtendedPath, usize)>> {
    let g = l.graph();
    enumerate_extended_paths(g, ExtKind::Ccw, l.space().limits().max_paths)?
        .into_par_iter()
        .map(|p| l.c_min(std::slice::from_ref(&p.path)).map(|x| (p, x)))
        .collect()
}

/// Meet irreducibles as `(P̃1, c_max(P̃1))`, one per cw-extended path.
pub fn meet_irreducibles(l: &FramingLattice) -> Result<Vec<(ExtendedPath, usize)>> {
    let g = l.graph();
    enumerate_extended_paths(g, ExtKind::Cw, l.space().limits().max_paths)?
        .into_par_iter()
        .map(|p| l.c_max(std::slice::from_ref(&p.path)).map(|x| (p, x)))
        .collect()
}

/// `j -> c_max(ℓ̃1(j_*, j))` on join irreducibles.
pub fn irreducible_bijection(l: &FramingLattice) -> Result<BTreeMap<usize, usize>> {
    let p = l.poset();
    (0..l.size())
        .filter(|&j| p.lower_covers(j).len() == 1)
        .map(|j| {
            let cover = l.cover(p.lower_covers(j)[0], j).expect("lower cover");
            let labels = edge_labels(l, cover);
            Ok((j, l.c_max(std::slice::from_ref(&labels.cw.path))?))
        })
        .collect()
}

/// `m -> c_min(ℓ̃2(m, m^*))` on meet irreducibles.
pub fn irreducible_bijection_inverse(l: &FramingLattice) -> Result<BTreeMap<usize, usize>> {
    let p = l.poset();
    (0..l.size())
        .filter(|&m| p.upper_covers(m).len() == 1)
        .map(|m| {
            let cover = l.cover(m, p.upper_covers(m)[0]).expect("upper cover");
            let labels = edge_labels(l, cover);
            Ok((m, l.c_min(std::slice::from_ref(&labels.ccw.path))?))
        })
        .collect()
}

/// `x↓`, the meet of the elements covered by `x` (`x` itself at the bottom).
pub fn core_bottom(l: &FramingLattice, x: usize) -> Result<usize> {
    let t = l.tables()?;
    Ok(l.poset()
        .lower_covers(x)
        .iter()
        .copied()
        .reduce(|a, b| t.meet(a, b))
        .unwrap_or(x))
}

/// The ccw-extended labels of all covers inside `[x↓, x]`.
pub fn core_label_set(l: &FramingLattice, x: usize) -> Result<BTreeSet<Path>> {
    let lo = core_bottom(l, x)?;
    let p = l.poset();
    Ok(l.covers()
        .iter()
        .filter(|c| p.leq(lo, c.lo) && p.leq(c.hi, x))
        .map(|c| edge_labels(l, c).ccw.path)
        .collect())
}

/// Elements ordered by inclusion of their core label sets.
#[derive(Clone, Debug)]
pub struct CoreLabelOrder {
    pub sets: Vec<BTreeSet<Path>>,
    pub poset: Poset,
}

pub fn core_label_order(l: &FramingLattice) -> Result<CoreLabelOrder> {
    let sets = (0..l.size())
        .into_par_iter()
        .map(|x| core_label_set(l, x))
        .collect::<Result<Vec<_>>>()?;
    let poset = Poset::from_leq(sets.len(), |a, b| sets[a].is_subset(&sets[b]))?;
    Ok(CoreLabelOrder { sets, poset })
}

/// The join irreducible `j` with `j ∨ u = v` and `j ∧ u = j_*`, found by
/// scanning all join irreducibles. `None` if there is not exactly one.
pub fn join_label_by_scan(l: &FramingLattice, u: usize, v: usize) -> Result<Option<usize>> {
    let t = l.tables()?;
    let p = l.poset();
    let hits: Vec<usize> = (0..l.size())
        .filter(|&j| p.lower_covers(j).len() == 1)
        .filter(|&j| t.join(j, u) == v && t.meet(j, u) == p.lower_covers(j)[0])
        .collect();
    Ok((hits.len() == 1).then(|| hits[0]))
}

/// Routes of `x` as edge lists, for display.
pub fn describe(l: &FramingLattice, routes: &[RouteId]) -> Vec<Vec<usize>> {
    l.clique_json(routes)
}
