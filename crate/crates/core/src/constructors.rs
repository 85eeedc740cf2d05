//! Named framed graphs and the graph operations that act on framing lattices
//! by isomorphism or duality.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, FramedGraph, VertexId};

/// Assembles a framed graph from an edge list and a per-vertex sort key.
/// Incoming and outgoing edges are ordered by `key(edge)` with ties broken by id.
fn framed_by_key<K: Ord>(
    vertices: usize,
    edges: Vec<(VertexId, VertexId)>,
    key: impl Fn(EdgeId) -> K,
) -> FramedGraph {
    let mut in_order = vec![Vec::new(); vertices];
    let mut out_order = vec![Vec::new(); vertices];
    for (e, &(t, h)) in edges.iter().enumerate() {
        out_order[t].push(e);
        in_order[h].push(e);
    }
    for list in in_order.iter_mut().chain(out_order.iter_mut()) {
        list.sort_by(|&a, &b| key(a).cmp(&key(b)).then(a.cmp(&b)));
    }
    FramedGraph::new(vertices, edges, in_order, out_order)
        .expect("constructor produced an invalid graph")
}

/// Orders incoming and outgoing edges by increasing length `head - tail`, ties by id.
pub fn length_framed(vertices: usize, edges: Vec<(VertexId, VertexId)>) -> FramedGraph {
    let lengths: Vec<usize> = edges.iter().map(|&(t, h)| h - t).collect();
    framed_by_key(vertices, edges, |e| lengths[e])
}

/// Path on `n + 1` vertices with two parallel edges per step; edge `2i` lies above `2i + 1`.
pub fn oruga(n: usize) -> Result<FramedGraph> {
    if n == 0 {
        return Err(Error::Precondition("oruga needs n >= 1".into()));
    }
    multioruga(&vec![1; n])
}

/// Path on `s.len() + 1` vertices with `s[i] + 1` parallel edges from `i` to `i + 1`,
/// framed in id order.
pub fn multioruga(s: &[usize]) -> Result<FramedGraph> {
    if s.is_empty() {
        return Err(Error::Precondition(
            "multioruga needs a nonempty composition".into(),
        ));
    }
    if s.contains(&0) {
        return Err(Error::Precondition(
            "multioruga parts must be positive".into(),
        ));
    }
    let mut edges = Vec::new();
    for (i, &k) in s.iter().enumerate() {
        for _ in 0..=k {
            edges.push((i, i + 1));
        }
    }
    Ok(framed_by_key(s.len() + 1, edges, |_| 0))
}

/// `oruga(3)` plus an edge from the source to vertex 2, listed first at both ends.
pub fn oruga_chord() -> FramedGraph {
    let edges = vec![(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (2, 3), (0, 2)];
    let ins = vec![vec![], vec![0, 1], vec![6, 2, 3], vec![4, 5]];
    let outs = vec![vec![6, 0, 1], vec![2, 3], vec![4, 5], vec![]];
    FramedGraph::new(4, edges, ins, outs).expect("valid framed graph")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaracolVariant {
    Tamari,
    Dyck,
}

/// The caracol graph on `n` vertices: the path `0 -> 1 -> ... -> n-1` plus the edges
/// `(0, h)` for `2 <= h <= n-2` and `(t, n-1)` for `1 <= t <= n-3`.
///
/// `Tamari` uses the length framing; `Dyck` additionally reverses the incoming
/// order at every inner vertex.
pub fn caracol(n: usize, variant: CaracolVariant) -> Result<FramedGraph> {
    if n < 4 {
        return Err(Error::Precondition("caracol needs n >= 4".into()));
    }
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.extend((2..=n - 2).map(|h| (0, h)));
    edges.extend((1..=n - 3).map(|t| (t, n - 1)));
    let g = length_framed(n, edges);
    Ok(match variant {
        CaracolVariant::Tamari => g,
        CaracolVariant::Dyck => {
            let mut doc = g.to_doc();
            for v in 1..n - 1 {
                doc.framing.in_order[v].reverse();
            }
            FramedGraph::from_doc(doc).expect("reversal keeps the framing valid")
        }
    })
}

/// The Cambrian caracol graph for a sign vector `eps` (`true` = `+`, drawn above).
///
/// Vertex `0` is the source, the polygon-side vertices `0..=n` sit at `1..=n+1`,
/// and `n + 2` is the sink. Edge ids: horizontal edges `0..=n+1`, then for each
/// `a = 1..=n` the pair `(s, a)`, `(a-1, t)`.
pub fn cambrian_caracol(eps: &[bool]) -> Result<FramedGraph> {
    let n = eps.len();
    if n == 0 {
        return Err(Error::Precondition(
            "cambrian caracol needs at least one sign".into(),
        ));
    }
    let s = 0;
    let t = n + 2;
    let vx = |a: usize| a + 1;
    let mut edges: Vec<(usize, usize)> = (0..=n + 1).map(|i| (i, i + 1)).collect();
    let mut from_s = vec![0; n + 1];
    let mut to_t = vec![0; n + 1];
    for a in 1..=n {
        from_s[a] = edges.len();
        edges.push((s, vx(a)));
        to_t[a] = edges.len();
        edges.push((vx(a - 1), t));
    }
    let horizontal_into = |a: usize| a; // edge (a-1, a) in polygon labels has id a
    let horizontal_out_of = |a: usize| a + 1;
    let vertices = n + 3;
    let mut in_order = vec![Vec::new(); vertices];
    let mut out_order = vec![Vec::new(); vertices];
    out_order[s] = {
        let mut list: Vec<EdgeId> = (1..=n)
            .rev()
            .filter(|&a| eps[a - 1])
            .map(|a| from_s[a])
            .collect();
        list.push(0);
        list.extend((1..=n).filter(|&a| !eps[a - 1]).map(|a| from_s[a]));
        list
    };
    in_order[t] = {
        let mut list: Vec<EdgeId> = (1..=n).filter(|&a| eps[a - 1]).map(|a| to_t[a]).collect();
        list.push(n + 1);
        list.extend((1..=n).rev().filter(|&a| !eps[a - 1]).map(|a| to_t[a]));
        list
    };
    in_order[vx(0)] = vec![horizontal_into(0)];
    out_order[vx(n)] = vec![horizontal_out_of(n)];
    for a in 1..=n {
        let h = horizontal_into(a);
        in_order[vx(a)] = if eps[a - 1] {
            vec![from_s[a], h]
        } else {
            vec![h, from_s[a]]
        };
        let h = horizontal_out_of(a - 1);
        out_order[vx(a - 1)] = if eps[a - 1] {
            vec![to_t[a], h]
        } else {
            vec![h, to_t[a]]
        };
    }
    FramedGraph::new(vertices, edges, in_order, out_order)
}

/// Parses a sign string such as `"-+-"`.
pub fn parse_signs(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .map(|c| match c {
            '+' => Ok(true),
            '-' => Ok(false),
            other => Err(Error::Precondition(format!(
                "unexpected sign character {other:?}"
            ))),
        })
        .collect()
}

/// The graph `G_n` whose framing lattice is the Boolean lattice: two parallel edges
/// `s -> i` and two parallel edges `i -> t` for each `i` in `1..=n`.
///
/// For each `i` the ids are `4(i-1) + {0: (s,i), 1: (s,i)', 2: (i,t), 3: (i,t)'}`.
pub fn boolean_graph(n: usize) -> Result<FramedGraph> {
    if n == 0 {
        return Err(Error::Precondition("boolean graph needs n >= 1".into()));
    }
    let t = n + 1;
    let mut edges = Vec::new();
    for i in 1..=n {
        edges.extend([(0, i), (0, i), (i, t), (i, t)]);
    }
    let id = |i: usize, k: usize| 4 * (i - 1) + k;
    let mut in_order = vec![Vec::new(); n + 2];
    let mut out_order = vec![Vec::new(); n + 2];
    for i in 1..=n {
        in_order[i] = vec![id(i, 0), id(i, 1)];
        out_order[i] = vec![id(i, 2), id(i, 3)];
    }
    out_order[0] = (1..=n)
        .rev()
        .map(|i| id(i, 0))
        .chain((1..=n).map(|i| id(i, 1)))
        .collect();
    in_order[t] = (1..=n)
        .map(|i| id(i, 2))
        .chain((1..=n).rev().map(|i| id(i, 3)))
        .collect();
    FramedGraph::new(n + 2, edges, in_order, out_order)
}

/// The transitive tournament on `n` vertices with the length framing.
pub fn complete_graph(n: usize) -> Result<FramedGraph> {
    if n < 2 {
        return Err(Error::Precondition("complete graph needs n >= 2".into()));
    }
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Ok(length_framed(n, edges))
}

/// Reverses every edge and renumbers vertex `v` as `n - 1 - v`. Edge ids are kept;
/// the old outgoing order at `v` becomes the incoming order at the image of `v`.
pub fn reverse_graph(g: &FramedGraph) -> FramedGraph {
    let n = g.vertex_count();
    let flip = |v: usize| n - 1 - v;
    let edges = g.edges().iter().map(|&(t, h)| (flip(h), flip(t))).collect();
    let in_order = (0..n).map(|v| g.out_order(flip(v)).to_vec()).collect();
    let out_order = (0..n).map(|v| g.in_order(flip(v)).to_vec()).collect();
    FramedGraph::new(n, edges, in_order, out_order).expect("reversal keeps the graph valid")
}

/// Reverses every incoming and outgoing order.
pub fn reverse_framing(g: &FramedGraph) -> FramedGraph {
    let mut doc = g.to_doc();
    for list in doc
        .framing
        .in_order
        .iter_mut()
        .chain(doc.framing.out_order.iter_mut())
    {
        list.reverse();
    }
    FramedGraph::from_doc(doc).expect("reversal keeps the framing valid")
}

/// An edge is idle when its tail has out-degree one or its head has in-degree one.
pub fn is_idle(g: &FramedGraph, e: EdgeId) -> bool {
    let (a, b) = g.edges()[e];
    g.out_order(a).len() == 1 || g.in_order(b).len() == 1
}

/// Contracts an idle edge `e = (a, b)`. The merged vertex keeps the orders of the
/// side with more than one edge, with `e` replaced by the other side's list.
/// Edges above `e` shift down by one id.
pub fn contract_idle_edge(g: &FramedGraph, e: EdgeId) -> Result<FramedGraph> {
    if e >= g.edge_count() {
        return Err(Error::Precondition(format!("edge {e} does not exist")));
    }
    if !is_idle(g, e) {
        return Err(Error::Precondition(format!("edge {e} is not idle")));
    }
    let (a, b) = g.edges()[e];
    if g.vertex_count() == 2 {
        return Err(Error::Precondition(
            "contracting the only edge leaves a single vertex".into(),
        ));
    }
    let n = g.vertex_count();
    let splice = |list: &[EdgeId], inner: &[EdgeId]| -> Vec<EdgeId> {
        list.iter()
            .flat_map(|&x| if x == e { inner.to_vec() } else { vec![x] })
            .collect()
    };
    // `gone` is the vertex that disappears; the merged vertex keeps index `kept`.
    let (gone, kept, merged_in, merged_out) = if g.out_order(a).len() == 1 {
        (
            a,
            b,
            splice(g.in_order(b), g.in_order(a)),
            g.out_order(b).to_vec(),
        )
    } else {
        (
            b,
            a,
            g.in_order(a).to_vec(),
            splice(g.out_order(a), g.out_order(b)),
        )
    };
    let vmap = |v: usize| {
        let v = if v == gone { kept } else { v };
        if v > gone {
            v - 1
        } else {
            v
        }
    };
    let emap = |x: EdgeId| if x > e { x - 1 } else { x };
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(x, _)| x != e)
        .map(|(_, &(t, h))| (vmap(t), vmap(h)))
        .collect();
    let mut in_order = Vec::with_capacity(n - 1);
    let mut out_order = Vec::with_capacity(n - 1);
    for v in (0..n).filter(|&v| v != gone) {
        let (i, o) = if v == kept {
            (merged_in.clone(), merged_out.clone())
        } else {
            (g.in_order(v).to_vec(), g.out_order(v).to_vec())
        };
        in_order.push(i.into_iter().map(emap).collect());
        out_order.push(o.into_iter().map(emap).collect());
    }
    FramedGraph::new(n - 1, edges, in_order, out_order)
}

/// Swaps two edges that are consecutive in one framing order, provided both are
/// parallel edges from the source into a common vertex, or from a common vertex
/// into the sink.
pub fn swap_parallel(g: &FramedGraph, e: EdgeId, f: EdgeId) -> Result<FramedGraph> {
    if e >= g.edge_count() || f >= g.edge_count() || e == f {
        return Err(Error::Precondition(
            "swap needs two distinct existing edges".into(),
        ));
    }
    if g.edges()[e] != g.edges()[f] {
        return Err(Error::Precondition("swap needs parallel edges".into()));
    }
    let (a, b) = g.edges()[e];
    let mut doc = g.to_doc();
    let list = if a == g.source() {
        &mut doc.framing.in_order[b]
    } else if b == g.sink() {
        &mut doc.framing.out_order[a]
    } else {
        return Err(Error::Precondition(
            "swapped edges must leave the source or enter the sink".into(),
        ));
    };
    let i = list.iter().position(|&x| x == e).unwrap();
    let j = list.iter().position(|&x| x == f).unwrap();
    if i.abs_diff(j) != 1 {
        return Err(Error::Precondition(
            "swapped edges must be consecutive".into(),
        ));
    }
    list.swap(i, j);
    FramedGraph::from_doc(doc)
}

/// Replaces the outgoing order at the source and the incoming order at the sink.
pub fn with_terminal_orders(
    g: &FramedGraph,
    source_out: Vec<EdgeId>,
    sink_in: Vec<EdgeId>,
) -> Result<FramedGraph> {
    let mut doc = g.to_doc();
    doc.framing.out_order[0] = source_out;
    let t = g.sink();
    doc.framing.in_order[t] = sink_in;
    FramedGraph::from_doc(doc)
}

/// Graph presets as accepted on the command line, e.g. `oruga:3` or `cambrian:-+-`.
pub fn preset(spec: &str) -> Result<FramedGraph> {
    let bad = || Error::Precondition(format!("unknown preset {spec:?}"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let mut parts = spec.split(':');
    let name = parts.next().ok_or_else(bad)?;
    let arg = parts.next().ok_or_else(bad)?;
    let extra = parts.next();
    if parts.next().is_some() {
        return Err(bad());
    }
    match (name, extra) {
        ("oruga", None) => oruga(num(arg)?),
        ("multioruga", None) => {
            let s = arg.split(',').map(num).collect::<Result<Vec<_>>>()?;
            multioruga(&s)
        }
        ("caracol", Some(v)) => {
            let variant = match v {
                "tamari" => CaracolVariant::Tamari,
                "dyck" => CaracolVariant::Dyck,
                _ => return Err(bad()),
            };
            caracol(num(arg)?, variant)
        }
        ("cambrian", None) => cambrian_caracol(&parse_signs(arg)?),
        ("boolean", None) => boolean_graph(num(arg)?),
        ("complete", None) => complete_graph(num(arg)?),
        _ => Err(bad()),
    }
}
