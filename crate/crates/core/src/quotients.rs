//! M-moves and the lattice quotients they induce.
//!
//! Cutting an inner edge `e = (i, j)` into `(s, j)` and `(i, t)` sends every
//! maximal clique to a maximal clique of the new graph. The fibers of that map
//! are intervals forming a lattice congruence whose quotient is the framing
//! lattice of the cut graph.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cliques::{Clique, RouteId};
use crate::error::{Error, Limits, Result};
use crate::graph::{EdgeId, FramedGraph};
use crate::labels::edge_labels;
use crate::lattice::{Cover, FramingLattice};
use crate::oracle::{self, binomial};
use crate::order::Poset;
use crate::paths::{self, Path};

/// Where an edge of the original graph went.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeImage {
    Kept(EdgeId),
    /// `source_edge = (s, head)`, `sink_edge = (tail, t)`.
    Split {
        source_edge: EdgeId,
        sink_edge: EdgeId,
    },
}

#[derive(Clone, Debug)]
pub struct MMove {
    pub graph: FramedGraph,
    pub edge_map: Vec<EdgeImage>,
}

impl MMove {
    fn image(&self, e: EdgeId) -> EdgeId {
        match self.edge_map[e] {
            EdgeImage::Kept(x) => x,
            EdgeImage::Split { .. } => panic!("edge {e} was split"),
        }
    }
}

/// `M(G, e)`. Surviving edges keep their relative order of ids; `(s, j)` and
/// `(i, t)` are appended in that order. Each new edge takes the place of `e` at
/// its inner endpoint and goes last at the source or sink.
pub fn m_move(g: &FramedGraph, e: EdgeId) -> Result<MMove> {
    if e >= g.edge_count() {
        return Err(Error::Precondition(format!("edge {e} does not exist")));
    }
    if !g.is_inner_edge(e) {
        return Err(Error::Precondition(format!(
            "edge {e} is not an inner edge"
        )));
    }
    let (i, j) = g.edges()[e];
    let (s, t) = (g.source(), g.sink());
    let m = g.edge_count();
    let kept = |x: EdgeId| if x > e { x - 1 } else { x };
    let (es, et) = (m - 1, m);
    let mut edges: Vec<_> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(x, _)| x != e)
        .map(|(_, &p)| p)
        .collect();
    edges.push((s, j));
    edges.push((i, t));
    let n = g.vertex_count();
    let mut ins: Vec<Vec<EdgeId>> = (0..n)
        .map(|v| {
            g.in_order(v)
                .iter()
                .map(|&x| if x == e { es } else { kept(x) })
                .collect()
        })
        .collect();
    let mut outs: Vec<Vec<EdgeId>> = (0..n)
        .map(|v| {
            g.out_order(v)
                .iter()
                .map(|&x| if x == e { et } else { kept(x) })
                .collect()
        })
        .collect();
    outs[s].push(es);
    ins[t].push(et);
    let mut edge_map: Vec<EdgeImage> = (0..m).map(|x| EdgeImage::Kept(kept(x))).collect();
    edge_map[e] = EdgeImage::Split {
        source_edge: es,
        sink_edge: et,
    };
    Ok(MMove {
        graph: FramedGraph::new(n, edges, ins, outs)?,
        edge_map,
    })
}

/// Applies M-moves to a set of inner edges of `g`, returning the final graph and
/// the composite edge map.
pub fn m_move_set(g: &FramedGraph, set: &[EdgeId]) -> Result<MMove> {
    let mut cur = MMove {
        graph: g.clone(),
        edge_map: (0..g.edge_count()).map(EdgeImage::Kept).collect(),
    };
    for &e in set {
        let EdgeImage::Kept(now) = *cur
            .edge_map
            .get(e)
            .ok_or_else(|| Error::Precondition(format!("edge {e} does not exist")))?
        else {
            return Err(Error::Precondition(format!("edge {e} listed twice")));
        };
        let step = m_move(&cur.graph, now)?;
        let follow = |x: EdgeId| step.image(x);
        cur.edge_map = cur
            .edge_map
            .iter()
            .map(|&img| match img {
                EdgeImage::Kept(x) if x == now => step.edge_map[x],
                EdgeImage::Kept(x) => EdgeImage::Kept(follow(x)),
                EdgeImage::Split {
                    source_edge,
                    sink_edge,
                } => EdgeImage::Split {
                    source_edge: follow(source_edge),
                    sink_edge: follow(sink_edge),
                },
            })
            .collect();
        cur.graph = step.graph;
    }
    Ok(cur)
}

/// `M(G)`: every inner edge cut.
pub fn exhaust(g: &FramedGraph) -> Result<MMove> {
    m_move_set(g, &g.inner_edges())
}

/// Image of one route under the move: itself, or the pair through the two new edges.
pub fn split_route(mv: &MMove, route: &Path) -> Vec<Path> {
    let mut cut: Option<(usize, EdgeImage)> = None;
    let mut mapped = Vec::with_capacity(route.len());
    for (k, &x) in route.edges.iter().enumerate() {
        match mv.edge_map[x] {
            EdgeImage::Kept(y) => mapped.push(y),
            img @ EdgeImage::Split { .. } => {
                cut = Some((k, img));
                mapped.push(usize::MAX);
            }
        }
    }
    match cut {
        None => vec![Path::route(mapped)],
        Some((
            k,
            EdgeImage::Split {
                source_edge,
                sink_edge,
            },
        )) => {
            let mut a = vec![source_edge];
            a.extend_from_slice(&mapped[k + 1..]);
            let mut b = mapped[..k].to_vec();
            b.push(sink_edge);
            vec![Path::route(a), Path::route(b)]
        }
        Some(_) => unreachable!(),
    }
}

/// `Φ_e` as a map from elements of `l` to elements of `target`.
pub fn split_map(
    l: &FramingLattice,
    mv: &MMove,
    target: &FramingLattice,
    x: usize,
) -> Result<usize> {
    let mut image: Clique = l
        .element(x)
        .iter()
        .flat_map(|&r| split_route(mv, l.space().route(r)))
        .map(|p| {
            target
                .space()
                .route_id(&p.edges)
                .ok_or_else(|| Error::Structural(format!("{:?} is not a route", p.edges)))
        })
        .collect::<Result<_>>()?;
    image.sort_unstable();
    image.dedup();
    target.element_of(&image)
}

/// The congruence `α(e)`: fibers of the split map, each an interval.
#[derive(Clone, Debug)]
pub struct Classes {
    pub class_of: Vec<usize>,
    /// `(bottom, top)` per class, in the order of the target's elements.
    pub intervals: Vec<(usize, usize)>,
}

/// Fibers of `Φ_e`, one per element `D` of the target, each computed as
/// `[c_min(S), c_max(S)]` for the paths `S` read off `D`.
pub fn fibers(
    l: &FramingLattice,
    e: EdgeId,
    mv: &MMove,
    target: &FramingLattice,
) -> Result<Classes> {
    let g = l.graph();
    let i = g.tail(e);
    let EdgeImage::Split {
        source_edge,
        sink_edge,
    } = mv.edge_map[e]
    else {
        return Err(Error::Precondition(format!("edge {e} was not split")));
    };
    let back: BTreeMap<EdgeId, EdgeId> = mv
        .edge_map
        .iter()
        .enumerate()
        .filter_map(|(x, img)| match img {
            EdgeImage::Kept(y) => Some((*y, x)),
            _ => None,
        })
        .collect();
    let intervals: Vec<(usize, usize)> = (0..target.size())
        .into_par_iter()
        .map(|d| {
            let s: Vec<Path> = target
                .element(d)
                .iter()
                .map(|&r| {
                    let r = target.space().route(r);
                    if r.edges[0] == source_edge {
                        let mut edges = vec![e];
                        edges.extend(r.edges[1..].iter().map(|y| back[y]));
                        Path { edges, start: i }
                    } else if r.edges[r.len() - 1] == sink_edge {
                        let mut edges: Vec<EdgeId> =
                            r.edges[..r.len() - 1].iter().map(|y| back[y]).collect();
                        edges.push(e);
                        Path {
                            edges,
                            start: g.source(),
                        }
                    } else {
                        Path::route(r.edges.iter().map(|y| back[y]).collect())
                    }
                })
                .collect();
            l.interval_of(&s)
        })
        .collect::<Result<_>>()?;
    let mut class_of = vec![usize::MAX; l.size()];
    for (d, &(lo, hi)) in intervals.iter().enumerate() {
        for x in l.poset().interval(lo, hi) {
            if class_of[x] != usize::MAX {
                return Err(Error::Structural(format!("element {x} lies in two fibers")));
            }
            class_of[x] = d;
        }
    }
    if class_of.contains(&usize::MAX) {
        return Err(Error::Structural("fibers do not cover the lattice".into()));
    }
    Ok(Classes {
        class_of,
        intervals,
    })
}

/// The routes of `x` through `e`, split at `i` into prefixes ending with `e` and
/// suffixes starting with `e`.
fn through_e(l: &FramingLattice, x: usize, e: EdgeId) -> Vec<(Vec<EdgeId>, Vec<EdgeId>)> {
    l.element(x)
        .iter()
        .filter_map(|&r| {
            let r = &l.space().route(r).edges;
            let k = r.iter().position(|&y| y == e)?;
            Some((r[..=k].to_vec(), r[k..].to_vec()))
        })
        .collect()
}

fn project(l: &FramingLattice, x: usize, e: EdgeId, down: bool) -> Result<usize> {
    let g = l.graph();
    let through = through_e(l, x, e);
    if through.is_empty() {
        return Ok(x);
    }
    let pick_pre = through
        .iter()
        .map(|(a, _)| a)
        .min_by(|a, b| {
            if down {
                paths::cmp_in(g, a, b)
            } else {
                paths::cmp_in(g, b, a)
            }
        })
        .unwrap();
    let pick_suf = through
        .iter()
        .map(|(_, b)| b)
        .max_by(|a, b| {
            if down {
                paths::cmp_out(g, a, b)
            } else {
                paths::cmp_out(g, b, a)
            }
        })
        .unwrap();
    let join = |pre: &[EdgeId], suf: &[EdgeId]| -> Result<RouteId> {
        let mut edges = pre.to_vec();
        edges.extend_from_slice(&suf[1..]);
        l.space()
            .route_id(&edges)
            .ok_or_else(|| Error::Structural(format!("{edges:?} is not a route")))
    };
    let mut clique: Clique = l
        .element(x)
        .iter()
        .copied()
        .filter(|&r| !l.space().route(r).edges.contains(&e))
        .collect();
    for (pre, suf) in &through {
        clique.push(join(pick_pre, suf)?);
        clique.push(join(pre, pick_suf)?);
    }
    clique.sort_unstable();
    clique.dedup();
    l.element_of(&clique)
}

/// Bottom of `x`'s class, from the extremal route through `e`.
pub fn project_down(l: &FramingLattice, e: EdgeId, x: usize) -> Result<usize> {
    project(l, x, e, true)
}

/// Top of `x`'s class.
pub fn project_up(l: &FramingLattice, e: EdgeId, x: usize) -> Result<usize> {
    project(l, x, e, false)
}

/// The lattice of `M(G, e)` together with the split map restricted to class
/// minima, checked to be an order isomorphism.
#[derive(Debug)]
pub struct Quotient {
    pub mv: MMove,
    pub target: FramingLattice,
    pub classes: Classes,
    /// `witness[d]` is the class minimum of `l` mapping to `d`.
    pub witness: Vec<usize>,
}

pub fn quotient_lattice(l: &FramingLattice, e: EdgeId) -> Result<Quotient> {
    let mv = m_move(l.graph(), e)?;
    let target = FramingLattice::build(&mv.graph, l.space().limits())?;
    let classes = fibers(l, e, &mv, &target)?;
    let witness: Vec<usize> = classes.intervals.iter().map(|&(lo, _)| lo).collect();
    for (d, &c) in witness.iter().enumerate() {
        if split_map(l, &mv, &target, c)? != d {
            return Err(Error::Structural(format!(
                "class minimum {c} does not map to {d}"
            )));
        }
    }
    let bad = (0..witness.len()).into_par_iter().find_any(|&a| {
        (0..witness.len()).any(|b| l.leq(witness[a], witness[b]) != target.leq(a, b))
    });
    if let Some(a) = bad {
        return Err(Error::Structural(format!(
            "restriction to class minima disagrees with the quotient at {a}"
        )));
    }
    Ok(Quotient {
        mv,
        target,
        classes,
        witness,
    })
}

/// What the congruence checks found for one edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CongruenceReport {
    pub classes: usize,
    /// Elements where the projection formula differs from the fiber interval.
    pub projection_mismatches: Vec<usize>,
    pub non_monotone_down: Vec<(usize, usize)>,
    pub non_monotone_up: Vec<(usize, usize)>,
    /// `x ≡ y` but `x ∨ z` and `y ∨ z` (or the meets) in different classes.
    pub incompatible: Vec<(usize, usize, usize)>,
}

impl CongruenceReport {
    pub fn holds(&self) -> bool {
        self.projection_mismatches.is_empty()
            && self.non_monotone_down.is_empty()
            && self.non_monotone_up.is_empty()
            && self.incompatible.is_empty()
    }
}

pub fn check_congruence(l: &FramingLattice, e: EdgeId, q: &Quotient) -> Result<CongruenceReport> {
    let n = l.size();
    let mut report = CongruenceReport {
        classes: q.classes.intervals.len(),
        ..Default::default()
    };
    let down: Vec<usize> = (0..n)
        .map(|x| project_down(l, e, x))
        .collect::<Result<_>>()?;
    let up: Vec<usize> = (0..n).map(|x| project_up(l, e, x)).collect::<Result<_>>()?;
    for x in 0..n {
        if (down[x], up[x]) != q.classes.intervals[q.classes.class_of[x]] {
            report.projection_mismatches.push(x);
        }
    }
    for &(a, b) in l.poset().covers() {
        if !l.leq(down[a], down[b]) {
            report.non_monotone_down.push((a, b));
        }
        if !l.leq(up[a], up[b]) {
            report.non_monotone_up.push((a, b));
        }
    }
    let t = l.tables()?;
    let class = &q.classes.class_of;
    report.incompatible = (0..n)
        .into_par_iter()
        .flat_map_iter(|x| {
            (0..n)
                .filter(move |&y| y > x && class[x] == class[y])
                .flat_map(move |y| {
                    (0..n)
                        .filter(move |&z| {
                            class[t.join(x, z)] != class[t.join(y, z)]
                                || class[t.meet(x, z)] != class[t.meet(y, z)]
                        })
                        .map(move |z| (x, y, z))
                })
        })
        .collect();
    Ok(report)
}

/// `∏_v binom(a_v + b_v, a_v)` over inner vertices, with `a_v + 1` incoming and
/// `b_v + 1` outgoing edges.
pub fn distributive_size(g: &FramedGraph) -> usize {
    (1..g.vertex_count() - 1)
        .map(|v| {
            let (a, b) = (g.in_order(v).len() - 1, g.out_order(v).len() - 1);
            binomial(a + b, a)
        })
        .product()
}

/// Product of the multipermutation lattices `1^{a_v} 2^{b_v}` over inner vertices.
pub fn distributive_model(g: &FramedGraph, cap: usize) -> Result<Poset> {
    let mut size = 1usize;
    let mut covers: Vec<(usize, usize)> = Vec::new();
    for v in 1..g.vertex_count() - 1 {
        let (a, b) = (g.in_order(v).len() - 1, g.out_order(v).len() - 1);
        let factor = if a == 0 || b == 0 {
            Poset::from_covers(1, [])?
        } else {
            oracle::weak_order(&[a, b], cap)?.poset
        };
        let m = factor.size();
        if size.saturating_mul(m) > cap {
            return Err(Error::ElementExplosion { cap });
        }
        // (x, y) -> x * m + y
        let mut next = Vec::new();
        for &(x1, x2) in &covers {
            for y in 0..m {
                next.push((x1 * m + y, x2 * m + y));
            }
        }
        for x in 0..size {
            for &(y1, y2) in factor.covers() {
                next.push((x * m + y1, x * m + y2));
            }
        }
        covers = next;
        size *= m;
    }
    Poset::from_covers(size, covers)
}

/// The lattice of `M(G)`.
pub fn distributive_quotient(g: &FramedGraph, limits: Limits) -> Result<FramingLattice> {
    FramingLattice::build(&exhaust(g)?.graph, limits)
}

/// Side of the stability test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZSide {
    Join,
    Meet,
}

/// Whether `c_lo ∨ c* = c_hi ∨ c*` (or the meets agree), decided from the cover's
/// extended paths: some route of `c*` is cw from `P̃1` (resp. ccw from `P̃2`)
/// somewhere on the locus.
pub fn z_test(l: &FramingLattice, cover: &Cover, cstar: usize, side: ZSide) -> bool {
    let g = l.graph();
    let labels = edge_labels(l, cover);
    let verts = labels.path.vertices(g);
    l.element(cstar).iter().any(|&r| {
        let r = l.space().route(r);
        verts.iter().any(|&v| match side {
            ZSide::Join => paths::cw_at(g, &labels.cw.path, r, v),
            ZSide::Meet => paths::cw_at(g, r, &labels.ccw.path, v),
        })
    })
}

/// One node of the Boolean diagram of M-move subsets.
#[derive(Clone, Debug, Serialize)]
pub struct MoveSubset {
    pub edges: Vec<EdgeId>,
    pub size: usize,
}

/// Framing lattice sizes for every subset of the inner edges. Subsets are listed
/// by bitmask; `A` lies below `B` in the diagram when `B ⊆ A`.
pub fn move_diagram(g: &FramedGraph, limits: Limits) -> Result<Vec<MoveSubset>> {
    let inner = g.inner_edges();
    if inner.len() > 16 {
        return Err(Error::ElementExplosion { cap: 1 << 16 });
    }
    (0..1usize << inner.len())
        .into_par_iter()
        .map(|mask| {
            let edges: Vec<EdgeId> = inner
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let mv = m_move_set(g, &edges)?;
            let size = FramingLattice::build(&mv.graph, limits)?.size();
            Ok(MoveSubset { edges, size })
        })
        .collect()
}
