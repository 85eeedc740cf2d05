//! The framing lattice of a framed graph: maximal cliques ordered by
//! counterclockwise rotation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::cliques::{Clique, Direction, RotationStep, RouteId, RouteSpace};
use crate::error::{Error, Limits, Result};
use crate::graph::FramedGraph;
use crate::order::{self, LatticeTables, Polygon, Poset};
use crate::paths::{self, segment_orientation, Path};

/// An upward cover `lo ⋖ hi`; `step.removed` lies in `lo`, `step.added` in `hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub lo: usize,
    pub hi: usize,
    pub step: RotationStep,
}

/// For each path with at least two edges, the routes ccw and cw from it.
#[derive(Debug)]
pub struct RemTables {
    pub paths: Vec<Path>,
    pub ccw: Vec<FixedBitSet>,
    pub cw: Vec<FixedBitSet>,
}

pub struct FramingLattice {
    space: RouteSpace,
    elements: Vec<Clique>,
    index: HashMap<Clique, usize>,
    covers: Vec<Cover>,
    cover_index: HashMap<(usize, usize), usize>,
    poset: Poset,
    tables: OnceLock<std::result::Result<LatticeTables, Error>>,
    rem: OnceLock<std::result::Result<RemTables, Error>>,
}

impl std::fmt::Debug for FramingLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FramingLattice")
            .field("elements", &self.elements.len())
            .field("covers", &self.covers.len())
            .finish()
    }
}

impl FramingLattice {
    pub fn build(g: &FramedGraph, limits: Limits) -> Result<Self> {
        Self::from_space(RouteSpace::new(g.clone(), limits)?)
    }

    pub fn from_space(space: RouteSpace) -> Result<Self> {
        let elements = space.maximal_cliques()?;
        let index: HashMap<Clique, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        let per_element: Vec<Vec<Cover>> = elements
            .par_iter()
            .enumerate()
            .map(|(lo, c)| {
                space
                    .rotation_neighbors(c)
                    .into_iter()
                    .filter(|(_, s)| s.direction == Direction::Ccw)
                    .map(|(n, step)| Cover {
                        lo,
                        hi: index[&n],
                        step,
                    })
                    .collect()
            })
            .collect();
        let mut covers: Vec<Cover> = per_element.into_iter().flatten().collect();
        covers.sort_by_key(|c| (c.lo, c.hi));
        let cover_index = covers
            .iter()
            .enumerate()
            .map(|(i, c)| ((c.lo, c.hi), i))
            .collect();
        let poset = Poset::from_covers(elements.len(), covers.iter().map(|c| (c.lo, c.hi)))?;
        Ok(FramingLattice {
            space,
            elements,
            index,
            covers,
            cover_index,
            poset,
            tables: OnceLock::new(),
            rem: OnceLock::new(),
        })
    }

    pub fn space(&self) -> &RouteSpace {
        &self.space
    }

    pub fn graph(&self) -> &FramedGraph {
        self.space.graph()
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Clique] {
        &self.elements
    }

    pub fn element(&self, x: usize) -> &Clique {
        &self.elements[x]
    }

    pub fn index_of(&self, c: &[RouteId]) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    pub fn cover(&self, lo: usize, hi: usize) -> Option<&Cover> {
        self.cover_index.get(&(lo, hi)).map(|&i| &self.covers[i])
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn bottom(&self) -> Option<usize> {
        self.poset.bottom()
    }

    pub fn top(&self) -> Option<usize> {
        self.poset.top()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    /// `x <= y` decided from the cliques alone: no route of `y` is clockwise
    /// from a route of `x` at any vertex.
    pub fn leq_by_routes(&self, x: usize, y: usize) -> bool {
        let g = self.graph();
        self.elements[x].iter().all(|&a| {
            self.elements[y].iter().all(|&b| {
                self.space.coherent(a, b) || {
                    let (ra, rb) = (self.space.route(a), self.space.route(b));
                    paths::common_segments(g, ra, rb)
                        .into_iter()
                        .all(|s| segment_orientation(g, ra, rb, s) != Some(Ordering::Greater))
                }
            })
        })
    }

    /// Brute-force join and meet tables over the order.
    pub fn tables(&self) -> Result<&LatticeTables> {
        self.tables
            .get_or_init(|| self.poset.lattice_tables())
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn element_of(&self, c: &[RouteId]) -> Result<usize> {
        self.index_of(c)
            .ok_or_else(|| Error::Structural(format!("clique {c:?} is not an element")))
    }

    fn check_coherent_set(&self, s: &[Path]) -> Result<()> {
        let g = self.graph();
        for (i, p) in s.iter().enumerate() {
            for q in &s[i + 1..] {
                if !paths::coherent(g, p, q) {
                    return Err(Error::Precondition(
                        "path set is not pairwise coherent".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The sweep shared by the four clique constructions. `ascending` selects the
    /// `C_min` reading order; `skip` excludes routes from consideration.
    fn sweep(
        &self,
        mut clique: Vec<RouteId>,
        s: &[Path],
        ascending: bool,
        skip: Option<&FixedBitSet>,
    ) -> Result<Clique> {
        let g = self.graph();
        let mut members = FixedBitSet::with_capacity(self.space.route_count());
        clique.iter().for_each(|&r| members.insert(r));
        for v in 0..g.vertex_count() {
            let incoming = self.space.incoming_paths(v)?;
            let outgoing = self.space.outgoing_paths(v)?;
            let ins: Box<dyn Iterator<Item = &Path>> = if ascending {
                Box::new(incoming.iter())
            } else {
                Box::new(incoming.iter().rev())
            };
            for pv in ins {
                let outs: Box<dyn Iterator<Item = &Path>> = if ascending {
                    Box::new(outgoing.iter().rev())
                } else {
                    Box::new(outgoing.iter())
                };
                for vq in outs {
                    let r = self
                        .space
                        .route_id(&pv.concat(vq).edges)
                        .expect("prefix and suffix form a route");
                    if skip.is_some_and(|k| k.contains(r)) {
                        continue;
                    }
                    let row = self.space.coherence_row(r);
                    if members.is_subset(row) && s.iter().all(|p| self.space.path_coherent(p, r)) {
                        if !members.contains(r) {
                            members.insert(r);
                            clique.push(r);
                        }
                        break;
                    }
                }
            }
        }
        clique.sort_unstable();
        Ok(clique)
    }

    /// The ccw-most maximal clique coherent with the paths `s`.
    pub fn c_max(&self, s: &[Path]) -> Result<usize> {
        self.check_coherent_set(s)?;
        let c = self.sweep(Vec::new(), s, false, None)?;
        self.element_of(&c)
    }

    /// The cw-most maximal clique coherent with the paths `s`.
    pub fn c_min(&self, s: &[Path]) -> Result<usize> {
        self.check_coherent_set(s)?;
        let c = self.sweep(Vec::new(), s, true, None)?;
        self.element_of(&c)
    }

    /// `(c_min(s), c_max(s))`: the interval of elements coherent with `s`.
    pub fn interval_of(&self, s: &[Path]) -> Result<(usize, usize)> {
        Ok((self.c_min(s)?, self.c_max(s)?))
    }

    /// Elements all of whose routes are coherent with every path of `s`.
    pub fn coherent_elements(&self, s: &[Path]) -> Vec<usize> {
        (0..self.size())
            .filter(|&x| {
                self.elements[x]
                    .iter()
                    .all(|&r| s.iter().all(|p| self.space.path_coherent(p, r)))
            })
            .collect()
    }

    pub fn rem_tables(&self) -> Result<&RemTables> {
        self.rem
            .get_or_init(|| {
                let g = self.graph();
                let paths = paths::enumerate_paths(g, 2, self.space.limits().max_paths)?;
                let m = self.space.route_count();
                let (ccw, cw): (Vec<FixedBitSet>, Vec<FixedBitSet>) = paths
                    .par_iter()
                    .map(|p| {
                        let mut a = FixedBitSet::with_capacity(m);
                        let mut b = FixedBitSet::with_capacity(m);
                        for r in 0..m {
                            if self.space.path_is_cw_of(p, r) {
                                a.insert(r);
                            }
                            if self.space.route_is_cw_of(r, p) {
                                b.insert(r);
                            }
                        }
                        (a, b)
                    })
                    .unzip();
                Ok(RemTables { paths, ccw, cw })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn rem(
        &self,
        x: usize,
        y: usize,
        sets: impl Fn(&RemTables) -> &Vec<FixedBitSet>,
    ) -> Result<FixedBitSet> {
        let t = self.rem_tables()?;
        let mut both = FixedBitSet::with_capacity(self.space.route_count());
        self.elements[x]
            .iter()
            .chain(&self.elements[y])
            .for_each(|&r| both.insert(r));
        let mut acc = FixedBitSet::with_capacity(self.space.route_count());
        for set in sets(t) {
            if set.is_clear() || !set.is_disjoint(&both) {
                continue;
            }
            acc.union_with(set);
        }
        Ok(acc)
    }

    /// Union of `ccw(P)` over all paths `P` with `ccw(P)` disjoint from both cliques.
    pub fn rem_ccw(&self, x: usize, y: usize) -> Result<FixedBitSet> {
        self.rem(x, y, |t| &t.ccw)
    }

    pub fn rem_cw(&self, x: usize, y: usize) -> Result<FixedBitSet> {
        self.rem(x, y, |t| &t.cw)
    }

    fn common(&self, x: usize, y: usize) -> Vec<RouteId> {
        self.elements[x]
            .iter()
            .copied()
            .filter(|r| self.elements[y].binary_search(r).is_ok())
            .collect()
    }

    /// Join computed by the removed-set sweep from `x ∩ y`.
    pub fn join(&self, x: usize, y: usize) -> Result<usize> {
        let skip = self.rem_ccw(x, y)?;
        let c = self.sweep(self.common(x, y), &[], false, Some(&skip))?;
        self.element_of(&c)
    }

    /// Meet computed by the removed-set sweep from `x ∩ y`.
    pub fn meet(&self, x: usize, y: usize) -> Result<usize> {
        let skip = self.rem_cw(x, y)?;
        let c = self.sweep(self.common(x, y), &[], true, Some(&skip))?;
        self.element_of(&c)
    }

    /// Routes of `x ∩ y` as paths, for feeding back into `c_max`/`c_min`.
    pub fn common_paths(&self, x: usize, y: usize) -> Vec<Path> {
        self.common(x, y)
            .into_iter()
            .map(|r| self.space.route(r).clone())
            .collect()
    }

    pub fn polygons(&self) -> Result<Vec<Polygon>> {
        order::all_polygons(&self.poset, self.tables()?)
    }

    /// Checks the two polygon conditions with the path labeling and the rank
    /// `max(P) - min(P)`.
    pub fn check_hh(&self) -> Result<HhReport> {
        let g = self.graph();
        let mut report = HhReport::default();
        let label = |a: usize, b: usize| -> &Path {
            &self.cover(a, b).expect("chain steps are covers").step.locus
        };
        for poly in self.polygons()? {
            report.polygons += 1;
            let (l, r) = (&poly.left, &poly.right);
            let (x1, y1) = (l[1], l[l.len() - 2]);
            let (x2, y2) = (r[1], r[r.len() - 2]);
            if label(poly.bottom, x1) != label(y2, poly.top)
                || label(poly.bottom, x2) != label(y1, poly.top)
            {
                report.label_violations.push(poly.clone());
                continue;
            }
            for chain in [l, r] {
                if chain.len() == 4 {
                    let ranks: Vec<usize> = chain
                        .windows(2)
                        .map(|w| label(w[0], w[1]).span(g))
                        .collect();
                    if !(ranks[0] < ranks[1] && ranks[2] < ranks[1]) {
                        report.rank_violations.push(poly.clone());
                    }
                }
            }
        }
        Ok(report)
    }

    pub fn count_linear_intervals(&self) -> BTreeMap<usize, usize> {
        order::count_linear_intervals(&self.poset)
    }

    /// Undirected adjacency of facets sharing all but one route, computed from
    /// the clique definition rather than from the covers.
    pub fn rotation_graph(&self) -> Vec<Vec<usize>> {
        self.elements
            .par_iter()
            .map(|c| {
                let mut v: Vec<usize> = self
                    .space
                    .rotation_neighbors_brute(c)
                    .into_iter()
                    .map(|(n, _, _)| self.index[&n])
                    .collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    pub fn is_triangle_free(&self) -> bool {
        !order::has_triangle(&self.rotation_graph())
    }

    pub fn route_json(&self, r: RouteId) -> Vec<usize> {
        let mut e = self.space.route(r).edges.clone();
        e.sort_unstable();
        e
    }

    pub fn clique_json(&self, c: &[RouteId]) -> Vec<Vec<usize>> {
        c.iter().map(|&r| self.route_json(r)).collect()
    }

    pub fn to_document(&self) -> LatticeDoc {
        LatticeDoc {
            elements: self.elements.iter().map(|c| self.clique_json(c)).collect(),
            covers: self
                .covers
                .iter()
                .map(|c| CoverDoc {
                    lo: c.lo,
                    hi: c.hi,
                    removed: self.route_json(c.step.removed),
                    added: self.route_json(c.step.added),
                    locus: PathDoc {
                        start: c.step.locus.start,
                        edges: c.step.locus.edges.clone(),
                    },
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("lattice documents always serialize")
    }

    /// Graphviz rendering drawn bottom-up, ranked by longest chain from the bottom.
    /// `edge_label` supplies an optional label per cover.
    pub fn to_dot(&self, edge_label: impl Fn(&Cover) -> Option<String>) -> String {
        poset_dot(
            &self.poset,
            |x| x.to_string(),
            |lo, hi| self.cover(lo, hi).and_then(&edge_label),
        )
    }
}

/// DOT for any poset, bottom-up with one rank group per longest-chain level.
pub fn poset_dot(
    p: &Poset,
    node_label: impl Fn(usize) -> String,
    edge_label: impl Fn(usize, usize) -> Option<String>,
) -> String {
    let ranks = p.ranks();
    let mut levels: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &r) in ranks.iter().enumerate() {
        levels.entry(r).or_default().push(x);
    }
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=circle];\n");
    for x in 0..p.size() {
        out.push_str(&format!("  n{x} [label=\"{}\"];\n", node_label(x)));
    }
    for level in levels.values() {
        let names: Vec<String> = level.iter().map(|x| format!("n{x}")).collect();
        out.push_str(&format!("  {{ rank=same; {}; }}\n", names.join("; ")));
    }
    for &(lo, hi) in p.covers() {
        match edge_label(lo, hi) {
            Some(l) => out.push_str(&format!("  n{lo} -> n{hi} [label=\"{l}\"];\n")),
            None => out.push_str(&format!("  n{lo} -> n{hi};\n")),
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HhReport {
    pub polygons: usize,
    pub label_violations: Vec<Polygon>,
    pub rank_violations: Vec<Polygon>,
}

impl HhReport {
    pub fn holds(&self) -> bool {
        self.label_violations.is_empty() && self.rank_violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct PathDoc {
    pub start: usize,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CoverDoc {
    pub lo: usize,
    pub hi: usize,
    pub removed: Vec<usize>,
    pub added: Vec<usize>,
    pub locus: PathDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct LatticeDoc {
    pub elements: Vec<Vec<Vec<usize>>>,
    pub covers: Vec<CoverDoc>,
}
