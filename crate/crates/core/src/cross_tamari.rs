//! Cross-shaped grids, their maximal fillings ordered by increasing rotations,
//! and the translation of a grid into a framed graph with the same lattice.
//!
//! Points are kept in raw `(x, y)` coordinates. A [`ProperLabeling`] is a view
//! on top of them: columns get labels `1..=a`, rows get `1..=b` (printed with a
//! bar in the literature), both starting from a longest line and growing by
//! adjacent lines of non-increasing length.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, FramedGraph};
use crate::oracle::dense_maximal_cliques;
use crate::order::Poset;

pub type Point = (i32, i32);

/// Serialized grid: `{"points": [[x, y], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GridDoc {
    pub points: Vec<[i32; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridViolation {
    Empty,
    RowGap { y: i32 },
    ColumnGap { x: i32 },
    RowsNotNested { y1: i32, y2: i32 },
    ColumnsNotNested { x1: i32, x2: i32 },
}

impl fmt::Display for GridViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridViolation::Empty => write!(f, "grid is empty"),
            GridViolation::RowGap { y } => write!(f, "row y={y} is not horizontally connected"),
            GridViolation::ColumnGap { x } => write!(f, "column x={x} is not vertically connected"),
            GridViolation::RowsNotNested { y1, y2 } => {
                write!(f, "rows y={y1} and y={y2} are not nested")
            }
            GridViolation::ColumnsNotNested { x1, x2 } => {
                write!(f, "columns x={x1} and x={x2} are not nested")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridReport {
    pub violations: Vec<GridViolation>,
}

impl GridReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn lines(
    points: &BTreeSet<Point>,
    key: impl Fn(Point) -> (i32, i32),
) -> BTreeMap<i32, BTreeSet<i32>> {
    let mut out: BTreeMap<i32, BTreeSet<i32>> = BTreeMap::new();
    for &p in points {
        let (line, coord) = key(p);
        out.entry(line).or_default().insert(coord);
    }
    out
}

fn gaps(lines: &BTreeMap<i32, BTreeSet<i32>>) -> Vec<i32> {
    lines
        .iter()
        .filter(|(_, set)| {
            let (lo, hi) = (*set.first().unwrap(), *set.last().unwrap());
            (hi - lo + 1) as usize != set.len()
        })
        .map(|(&k, _)| k)
        .collect()
}

fn unnested(lines: &BTreeMap<i32, BTreeSet<i32>>) -> Vec<(i32, i32)> {
    let keys: Vec<i32> = lines.keys().copied().collect();
    let mut out = Vec::new();
    for (i, &u) in keys.iter().enumerate() {
        for &v in &keys[i + 1..] {
            let (a, b) = (&lines[&u], &lines[&v]);
            let ok = if a.len() <= b.len() {
                a.is_subset(b)
            } else {
                b.is_subset(a)
            };
            if !ok {
                out.push((u, v));
            }
        }
    }
    out
}

/// Checks horizontal/vertical connectivity and nesting.
pub fn validate_grid(points: &[Point]) -> GridReport {
    let set: BTreeSet<Point> = points.iter().copied().collect();
    let mut violations = Vec::new();
    if set.is_empty() {
        violations.push(GridViolation::Empty);
        return GridReport { violations };
    }
    let rows = lines(&set, |(x, y)| (y, x));
    let cols = lines(&set, |(x, y)| (x, y));
    violations.extend(gaps(&rows).into_iter().map(|y| GridViolation::RowGap { y }));
    violations.extend(
        gaps(&cols)
            .into_iter()
            .map(|x| GridViolation::ColumnGap { x }),
    );
    violations.extend(
        unnested(&rows)
            .into_iter()
            .map(|(y1, y2)| GridViolation::RowsNotNested { y1, y2 }),
    );
    violations.extend(
        unnested(&cols)
            .into_iter()
            .map(|(x1, x2)| GridViolation::ColumnsNotNested { x1, x2 }),
    );
    GridReport { violations }
}

/// A validated cross-shaped grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossGrid {
    points: BTreeSet<Point>,
    columns: BTreeMap<i32, BTreeSet<i32>>,
    rows: BTreeMap<i32, BTreeSet<i32>>,
}

impl CrossGrid {
    pub fn new(points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let points: BTreeSet<Point> = points.into_iter().collect();
        let list: Vec<Point> = points.iter().copied().collect();
        if let Some(v) = validate_grid(&list).violations.first() {
            return Err(Error::Precondition(format!("not a cross-shaped grid: {v}")));
        }
        let columns = lines(&points, |(x, y)| (x, y));
        let rows = lines(&points, |(x, y)| (y, x));
        Ok(CrossGrid {
            points,
            columns,
            rows,
        })
    }

    pub fn from_doc(doc: &GridDoc) -> Result<Self> {
        Self::new(doc.points.iter().map(|&[x, y]| (x, y)))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GridDoc =
            serde_json::from_str(text).map_err(|e| Error::schema("points", e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn to_doc(&self) -> GridDoc {
        GridDoc {
            points: self.points.iter().map(|&(x, y)| [x, y]).collect(),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.points.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.contains(&p)
    }

    /// Column x-coordinates, left to right.
    pub fn column_xs(&self) -> Vec<i32> {
        self.columns.keys().copied().collect()
    }

    /// Row y-coordinates, bottom to top.
    pub fn row_ys(&self) -> Vec<i32> {
        self.rows.keys().copied().collect()
    }

    pub fn column_len(&self, x: i32) -> usize {
        self.columns.get(&x).map_or(0, BTreeSet::len)
    }

    pub fn row_len(&self, y: i32) -> usize {
        self.rows.get(&y).map_or(0, BTreeSet::len)
    }

    /// `(a, b)`: number of columns and rows.
    pub fn shape(&self) -> (usize, usize) {
        (self.columns.len(), self.rows.len())
    }

    /// Translates so the bounding box starts at the origin.
    pub fn normalized(&self) -> CrossGrid {
        let x0 = *self.columns.keys().next().unwrap();
        let y0 = *self.rows.keys().next().unwrap();
        CrossGrid::new(self.points().map(|(x, y)| (x - x0, y - y0)))
            .expect("translation keeps the grid cross-shaped")
    }
}

/// Whether `q` is strictly north-east of `p`.
pub fn strictly_ne(p: Point, q: Point) -> bool {
    q.0 > p.0 && q.1 > p.1
}

/// False iff one point is strictly NE of the other and their spanning
/// rectangle lies inside the grid.
pub fn compatible(d: &CrossGrid, p: Point, q: Point) -> bool {
    let (lo, hi) = if strictly_ne(p, q) {
        (p, q)
    } else if strictly_ne(q, p) {
        (q, p)
    } else {
        return true;
    };
    !(lo.0..=hi.0).all(|x| (lo.1..=hi.1).all(|y| d.contains((x, y))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperLabeling {
    /// Column x-coordinate to its label in `1..=a`.
    pub columns: BTreeMap<i32, usize>,
    /// Row y-coordinate to its label in `1..=b`.
    pub rows: BTreeMap<i32, usize>,
}

impl ProperLabeling {
    pub fn column_at(&self, label: usize) -> i32 {
        *self
            .columns
            .iter()
            .find(|(_, &l)| l == label)
            .expect("label in range")
            .0
    }

    pub fn row_at(&self, label: usize) -> i32 {
        *self
            .rows
            .iter()
            .find(|(_, &l)| l == label)
            .expect("label in range")
            .0
    }
}

/// Labels along a line of positions: a bijection onto `1..=n`, every prefix
/// `{1..=k}` occupies consecutive positions, and longer lines get smaller labels.
fn line_labels_proper(labels: &[usize], lens: &[usize]) -> bool {
    let n = labels.len();
    let mut pos = vec![usize::MAX; n + 1];
    for (i, &l) in labels.iter().enumerate() {
        if l == 0 || l > n || pos[l] != usize::MAX {
            return false;
        }
        pos[l] = i;
    }
    let (mut lo, mut hi) = (pos[1], pos[1]);
    for &p in &pos[2..] {
        if p + 1 == lo {
            lo = p;
        } else if p == hi + 1 {
            hi = p;
        } else {
            return false;
        }
    }
    (0..n).all(|i| (0..n).all(|j| lens[i] <= lens[j] || labels[i] < labels[j]))
}

fn all_line_labels(lens: &[usize]) -> Vec<Vec<usize>> {
    let n = lens.len();
    let mut out = Vec::new();
    for start in 0..n {
        // Each of the n-1 growth steps goes left (0) or right (1).
        for mask in 0u32..1 << (n - 1) {
            let mut labels = vec![0; n];
            labels[start] = 1;
            let (mut lo, mut hi) = (start, start);
            let mut ok = true;
            for k in 0..n - 1 {
                if mask >> k & 1 == 0 {
                    if lo == 0 {
                        ok = false;
                        break;
                    }
                    lo -= 1;
                    labels[lo] = k + 2;
                } else {
                    if hi + 1 == n {
                        ok = false;
                        break;
                    }
                    hi += 1;
                    labels[hi] = k + 2;
                }
            }
            if ok && line_labels_proper(&labels, lens) {
                out.push(labels);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn greedy_line_labels(lens: &[usize]) -> Vec<usize> {
    let n = lens.len();
    let longest = *lens.iter().max().unwrap();
    let start = lens.iter().position(|&l| l == longest).unwrap();
    let mut labels = vec![0; n];
    labels[start] = 1;
    let (mut lo, mut hi) = (start, start);
    for k in 2..=n {
        let left = lo.checked_sub(1).map(|i| lens[i]);
        let right = (hi + 1 < n).then(|| lens[hi + 1]);
        let go_left = match (left, right) {
            (Some(l), Some(r)) => l >= r,
            (Some(_), None) => true,
            _ => false,
        };
        if go_left {
            lo -= 1;
            labels[lo] = k;
        } else {
            hi += 1;
            labels[hi] = k;
        }
    }
    labels
}

fn zip_labels(keys: &[i32], labels: &[usize]) -> BTreeMap<i32, usize> {
    keys.iter().copied().zip(labels.iter().copied()).collect()
}

/// Deterministic proper labeling; ties go to the leftmost column and the
/// bottommost row.
pub fn proper_labeling(d: &CrossGrid) -> ProperLabeling {
    let xs = d.column_xs();
    let ys = d.row_ys();
    let col_lens: Vec<usize> = xs.iter().map(|&x| d.column_len(x)).collect();
    let row_lens: Vec<usize> = ys.iter().map(|&y| d.row_len(y)).collect();
    ProperLabeling {
        columns: zip_labels(&xs, &greedy_line_labels(&col_lens)),
        rows: zip_labels(&ys, &greedy_line_labels(&row_lens)),
    }
}

/// Every proper labeling of `d`.
pub fn all_proper_labelings(d: &CrossGrid) -> Vec<ProperLabeling> {
    let xs = d.column_xs();
    let ys = d.row_ys();
    let col_lens: Vec<usize> = xs.iter().map(|&x| d.column_len(x)).collect();
    let row_lens: Vec<usize> = ys.iter().map(|&y| d.row_len(y)).collect();
    let cols = all_line_labels(&col_lens);
    let rows = all_line_labels(&row_lens);
    cols.iter()
        .flat_map(|c| {
            rows.iter().map(|r| ProperLabeling {
                columns: zip_labels(&xs, c),
                rows: zip_labels(&ys, r),
            })
        })
        .collect()
}

pub fn is_proper(d: &CrossGrid, l: &ProperLabeling) -> bool {
    let xs = d.column_xs();
    let ys = d.row_ys();
    if l.columns.keys().copied().collect::<Vec<_>>() != xs
        || l.rows.keys().copied().collect::<Vec<_>>() != ys
    {
        return false;
    }
    let col_labels: Vec<usize> = xs.iter().map(|x| l.columns[x]).collect();
    let row_labels: Vec<usize> = ys.iter().map(|y| l.rows[y]).collect();
    let col_lens: Vec<usize> = xs.iter().map(|&x| d.column_len(x)).collect();
    let row_lens: Vec<usize> = ys.iter().map(|&y| d.row_len(y)).collect();
    line_labels_proper(&col_labels, &col_lens) && line_labels_proper(&row_labels, &row_lens)
}

/// A maximal filling, as a sorted point list.
pub type Filling = Vec<Point>;

fn compatibility_matrix(d: &CrossGrid) -> (Vec<Point>, Vec<Vec<bool>>) {
    let pts: Vec<Point> = d.points().collect();
    let adj = pts
        .iter()
        .map(|&p| pts.iter().map(|&q| p != q && compatible(d, p, q)).collect())
        .collect();
    (pts, adj)
}

/// All maximal sets of pairwise compatible points, sorted.
pub fn maximal_fillings(d: &CrossGrid, cap: usize) -> Result<Vec<Filling>> {
    let (pts, adj) = compatibility_matrix(d);
    let cliques = dense_maximal_cliques(&adj);
    if cliques.len() > cap {
        return Err(Error::ElementExplosion { cap });
    }
    let mut out: Vec<Filling> = cliques
        .into_iter()
        .map(|c| c.into_iter().map(|i| pts[i]).collect())
        .collect();
    for f in &mut out {
        f.sort_unstable();
    }
    out.sort();
    Ok(out)
}

/// Every filling reachable from `t` by exchanging one point; the flag says
/// whether the new point is strictly NE of the removed one.
pub fn flips(d: &CrossGrid, t: &[Point]) -> Vec<(Filling, Point, Point, bool)> {
    let mut out = Vec::new();
    for &p in t {
        let rest: Vec<Point> = t.iter().copied().filter(|&q| q != p).collect();
        for q in d.points() {
            if q == p || t.contains(&q) || !rest.iter().all(|&r| compatible(d, q, r)) {
                continue;
            }
            let mut next = rest.clone();
            next.push(q);
            next.sort_unstable();
            out.push((next, p, q, strictly_ne(p, q)));
        }
    }
    out
}

/// Fillings obtained from `t` by one increasing rotation.
pub fn increasing_rotations(d: &CrossGrid, t: &[Point]) -> Vec<Filling> {
    flips(d, t)
        .into_iter()
        .filter(|f| f.3)
        .map(|f| f.0)
        .collect()
}

#[derive(Clone, Debug)]
pub struct CrossTamari {
    pub fillings: Vec<Filling>,
    pub poset: Poset,
}

/// The cross-Tamari order: fillings under the closure of increasing rotations.
pub fn cross_tamari_lattice(d: &CrossGrid, cap: usize) -> Result<CrossTamari> {
    let fillings = maximal_fillings(d, cap)?;
    let index: BTreeMap<&Filling, usize> =
        fillings.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let pairs: Vec<(usize, usize)> = fillings
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, f)| increasing_rotations(d, f).into_iter().map(move |g| (i, g)))
        .map(|(i, g)| (i, index[&g]))
        .collect();
    let poset = Poset::from_relation(fillings.len(), pairs)?;
    Ok(CrossTamari { fillings, poset })
}

/// `G_{D,L}` together with the names of its vertices and the route of every point.
#[derive(Clone, Debug)]
pub struct GridGraph {
    pub graph: FramedGraph,
    /// `s`, `t`, column labels as `"3"`, row labels as `"3'"`.
    pub names: Vec<String>,
    pub routes: BTreeMap<Point, Vec<EdgeId>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    Col(usize),
    Row(usize),
}

/// The framed graph of a properly labeled grid. Vertices follow the linear
/// order (source first, sink last); horizontal edges come first, then the
/// source edges `(s, i)` for `i = 2..=a`, then the sink edges for rows `2..=b`.
pub fn grid_graph(d: &CrossGrid, l: &ProperLabeling) -> Result<GridGraph> {
    if !is_proper(d, l) {
        return Err(Error::Precondition(
            "labeling is not proper for this grid".into(),
        ));
    }
    let (a, b) = d.shape();
    let in_d = |i: usize, j: usize| d.contains((l.column_at(i), l.row_at(j)));
    // Merge columns 1..a with rows b..1.
    let mut line = Vec::with_capacity(a + b);
    let (mut i, mut j) = (1, b);
    while i <= a || j >= 1 {
        if i <= a && (j == 0 || in_d(i, j)) {
            line.push(Node::Col(i));
            i += 1;
        } else {
            line.push(Node::Row(j));
            j -= 1;
        }
    }
    let place: BTreeMap<(bool, usize), usize> = line
        .iter()
        .enumerate()
        .map(|(k, n)| match *n {
            Node::Col(i) => ((false, i), k + 1),
            Node::Row(j) => ((true, j), k + 1),
        })
        .collect();
    for ci in 1..=a {
        for rj in 1..=b {
            if (place[&(false, ci)] < place[&(true, rj)]) != in_d(ci, rj) {
                return Err(Error::Structural(format!(
                    "vertex order inconsistent at column {ci}, row {rj}"
                )));
            }
        }
    }
    let n = a + b + 2;
    let (s, t) = (0, n - 1);
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|k| (k, k + 1)).collect();
    let col_above = |i: usize| l.column_at(i) < l.column_at(1);
    let row_above = |j: usize| l.row_at(j) > l.row_at(1);
    let mut from_s = BTreeMap::new();
    for i in 2..=a {
        from_s.insert(i, edges.len());
        edges.push((s, place[&(false, i)]));
    }
    let mut to_t = BTreeMap::new();
    for j in 2..=b {
        to_t.insert(j, edges.len());
        edges.push((place[&(true, j)], t));
    }
    let mut in_order = vec![Vec::new(); n];
    let mut out_order = vec![Vec::new(); n];
    for v in 1..n - 1 {
        in_order[v] = vec![v - 1];
        out_order[v] = vec![v];
    }
    for (&i, &e) in &from_s {
        let v = place[&(false, i)];
        in_order[v] = if col_above(i) {
            vec![e, v - 1]
        } else {
            vec![v - 1, e]
        };
    }
    for (&j, &e) in &to_t {
        let v = place[&(true, j)];
        out_order[v] = if row_above(j) { vec![e, v] } else { vec![v, e] };
    }
    let head = |e: EdgeId| edges[e].1;
    let tail = |e: EdgeId| edges[e].0;
    let mut above: Vec<EdgeId> = from_s
        .iter()
        .filter(|(&i, _)| col_above(i))
        .map(|(_, &e)| e)
        .collect();
    let mut below: Vec<EdgeId> = from_s
        .iter()
        .filter(|(&i, _)| !col_above(i))
        .map(|(_, &e)| e)
        .collect();
    above.sort_by_key(|&e| std::cmp::Reverse(head(e)));
    below.sort_by_key(|&e| head(e));
    out_order[s] = above.into_iter().chain([0]).chain(below).collect();
    let mut above: Vec<EdgeId> = to_t
        .iter()
        .filter(|(&j, _)| row_above(j))
        .map(|(_, &e)| e)
        .collect();
    let mut below: Vec<EdgeId> = to_t
        .iter()
        .filter(|(&j, _)| !row_above(j))
        .map(|(_, &e)| e)
        .collect();
    above.sort_by_key(|&e| tail(e));
    below.sort_by_key(|&e| std::cmp::Reverse(tail(e)));
    in_order[t] = above.into_iter().chain([n - 2]).chain(below).collect();

    let mut routes = BTreeMap::new();
    for p in d.points() {
        let (ci, rj) = (l.columns[&p.0], l.rows[&p.1]);
        let (u, w) = (place[&(false, ci)], place[&(true, rj)]);
        let mut route = vec![if ci == 1 { 0 } else { from_s[&ci] }];
        route.extend(u..w);
        route.push(if rj == 1 { n - 2 } else { to_t[&rj] });
        routes.insert(p, route);
    }
    let mut names = vec!["s".to_string()];
    names.extend(line.iter().map(|n| match n {
        Node::Col(i) => i.to_string(),
        Node::Row(j) => format!("{j}'"),
    }));
    names.push("t".into());
    let graph = FramedGraph::new(n, edges, in_order, out_order)?;
    Ok(GridGraph {
        graph,
        names,
        routes,
    })
}

/// Lattice points weakly above a lattice path `nu` of `N`/`E` steps from the origin.
pub fn grid_from_path(nu: &str) -> Result<CrossGrid> {
    let (mut x, mut y) = (0i32, 0i32);
    let mut floor: BTreeMap<i32, i32> = BTreeMap::from([(0, 0)]);
    for c in nu.chars() {
        match c {
            'N' | 'n' => y += 1,
            'E' | 'e' => {
                x += 1;
                floor.insert(x, y);
            }
            other => {
                return Err(Error::Precondition(format!(
                    "unexpected path step {other:?}"
                )))
            }
        }
    }
    let top = y;
    CrossGrid::new(
        floor
            .into_iter()
            .flat_map(|(x, lo)| (lo..=top).map(move |y| (x, y))),
    )
}

/// Moves the column at index `k` (left to right) to index `perm[k]`.
/// Fails if the result is not cross-shaped.
pub fn permute_columns(d: &CrossGrid, perm: &[usize]) -> Result<CrossGrid> {
    let xs = d.column_xs();
    check_permutation(perm, xs.len())?;
    let x0 = xs[0];
    CrossGrid::new(d.points().map(|(x, y)| {
        let k = xs.iter().position(|&c| c == x).unwrap();
        (x0 + perm[k] as i32, y)
    }))
}

/// Moves the row at index `k` (bottom to top) to index `perm[k]`.
pub fn permute_rows(d: &CrossGrid, perm: &[usize]) -> Result<CrossGrid> {
    let ys = d.row_ys();
    check_permutation(perm, ys.len())?;
    let y0 = ys[0];
    CrossGrid::new(d.points().map(|(x, y)| {
        let k = ys.iter().position(|&c| c == y).unwrap();
        (x, y0 + perm[k] as i32)
    }))
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n
        || perm
            .iter()
            .any(|&k| k >= n || std::mem::replace(&mut seen[k], true))
    {
        return Err(Error::Precondition(format!("not a permutation of 0..{n}")));
    }
    Ok(())
}

/// The grid whose graph is the Cambrian caracol graph of `eps` with every
/// inner vertex split in two. Columns and rows are indexed `0..=n`, point
/// `(c, r)` is present iff `c <= r`; column `c >= 1` sits left of column 0 when
/// `eps[c-1]` is `+`, row `r < n` sits above row `n` when `eps[r]` is `+`.
///
/// The longest row is row `n`, so in the usual convention row labels run
/// opposite to the polygon order.
pub fn cambrian_grid(eps: &[bool]) -> Result<CrossGrid> {
    let n = eps.len();
    if n == 0 {
        return Err(Error::Precondition(
            "cambrian grid needs at least one sign".into(),
        ));
    }
    let mut col_x = vec![0i32; n + 1];
    let (mut left, mut right) = (0i32, 0i32);
    for c in 1..=n {
        if eps[c - 1] {
            left -= 1;
            col_x[c] = left;
        } else {
            right += 1;
            col_x[c] = right;
        }
    }
    let mut row_y = vec![0i32; n + 1];
    let (mut low, mut high) = (0i32, 0i32);
    for r in (0..n).rev() {
        if eps[r] {
            high += 1;
            row_y[r] = high;
        } else {
            low -= 1;
            row_y[r] = low;
        }
    }
    let pts = (0..=n).flat_map(|c| (c..=n).map(move |r| (c, r)));
    Ok(CrossGrid::new(pts.map(|(c, r)| (col_x[c], row_y[r])).collect::<Vec<_>>())?.normalized())
}

/// All cross-shaped grids inside the `w x h` box that touch both axes, in a
/// fixed order (by size, then points).
pub fn grids_in_box(w: usize, h: usize) -> Vec<CrossGrid> {
    let cells: Vec<Point> = (0..w as i32)
        .flat_map(|x| (0..h as i32).map(move |y| (x, y)))
        .collect();
    assert!(cells.len() < 32, "box too large to enumerate");
    let mut out: Vec<CrossGrid> = (1u32..1 << cells.len())
        .into_par_iter()
        .filter_map(|mask| {
            let pts: Vec<Point> = cells
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let touches = pts.iter().any(|p| p.0 == 0) && pts.iter().any(|p| p.1 == 0);
            (touches && validate_grid(&pts).is_valid()).then(|| CrossGrid::new(pts).unwrap())
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.points.cmp(&b.points)));
    out
}
