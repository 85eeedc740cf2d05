//! Finite posets given by their cover relations, with brute-force lattice
//! operations and the structural checks used on framing lattices.

use std::collections::{BTreeMap, VecDeque};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Poset {
    size: usize,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    /// A linear extension: `topo[k]` is the `k`-th element.
    topo: Vec<usize>,
    pos: Vec<usize>,
    /// `above[x]` holds `pos[y]` for every `y >= x`.
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.covers == other.covers
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from cover pairs `(lo, hi)`. Fails on cycles or on pairs
    /// that are implied by transitivity.
    pub fn from_covers(
        size: usize,
        covers: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Poset> {
        let p = Self::from_relation_unchecked(size, covers)?;
        for &(lo, hi) in &p.covers {
            if p.up[lo].iter().any(|&m| m != hi && p.leq(m, hi)) {
                return Err(Error::Structural(format!(
                    "pair ({lo}, {hi}) is not a cover"
                )));
            }
        }
        Ok(p)
    }

    /// Transitive reduction of an arbitrary acyclic relation.
    pub fn from_relation(
        size: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Poset> {
        let p = Self::from_relation_unchecked(size, pairs)?;
        let reduced: Vec<(usize, usize)> = (0..size)
            .flat_map(|x| {
                let p = &p;
                p.up[x]
                    .iter()
                    .copied()
                    .filter(move |&y| !p.up[x].iter().any(|&m| m != y && p.leq(m, y)))
                    .map(move |y| (x, y))
            })
            .collect();
        Self::from_relation_unchecked(size, reduced)
    }

    /// Poset from a `leq` predicate evaluated on all pairs.
    pub fn from_leq(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let pairs: Vec<(usize, usize)> = (0..size)
            .flat_map(|x| (0..size).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && leq(x, y))
            .collect();
        Self::from_relation(size, pairs)
    }

    fn from_relation_unchecked(
        size: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Poset> {
        let mut covers: Vec<(usize, usize)> = pairs.into_iter().collect();
        covers.sort_unstable();
        covers.dedup();
        let mut up = vec![Vec::new(); size];
        let mut down = vec![Vec::new(); size];
        for &(lo, hi) in &covers {
            if lo >= size || hi >= size || lo == hi {
                return Err(Error::Structural(format!("bad cover pair ({lo}, {hi})")));
            }
            up[lo].push(hi);
            down[hi].push(lo);
        }
        let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..size).filter(|&x| indeg[x] == 0).collect();
        let mut topo = Vec::with_capacity(size);
        while let Some(x) = queue.pop_front() {
            topo.push(x);
            for &y in &up[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if topo.len() != size {
            return Err(Error::Structural("cover relation has a cycle".into()));
        }
        let mut pos = vec![0; size];
        for (k, &x) in topo.iter().enumerate() {
            pos[x] = k;
        }
        let mut above = vec![FixedBitSet::with_capacity(size); size];
        for &x in topo.iter().rev() {
            let mut set = FixedBitSet::with_capacity(size);
            set.insert(pos[x]);
            for &y in &up[x] {
                set.union_with(&above[y]);
            }
            above[x] = set;
        }
        let mut below = vec![FixedBitSet::with_capacity(size); size];
        for &x in &topo {
            let mut set = FixedBitSet::with_capacity(size);
            set.insert(pos[x]);
            for &y in &down[x] {
                set.union_with(&below[y]);
            }
            below[x] = set;
        }
        Ok(Poset {
            size,
            covers,
            up,
            down,
            topo,
            pos,
            above,
            below,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Cover pairs `(lo, hi)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(self.pos[y])
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| self.down[x].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.up[x].is_empty()).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    /// Elements `z` with `x <= z <= y`.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        let mut set = self.above[x].clone();
        set.intersect_with(&self.below[y]);
        let mut v: Vec<usize> = set.ones().map(|k| self.topo[k]).collect();
        v.sort_unstable();
        v
    }

    pub fn up_set(&self, x: usize) -> Vec<usize> {
        self.above[x].ones().map(|k| self.topo[k]).collect()
    }

    pub fn down_set(&self, x: usize) -> Vec<usize> {
        self.below[x].ones().map(|k| self.topo[k]).collect()
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let mut set = self.above[x].clone();
        set.intersect_with(&self.above[y]);
        let least = set.ones().next()?;
        let u = self.topo[least];
        set.is_subset(&self.above[u]).then_some(u)
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let mut set = self.below[x].clone();
        set.intersect_with(&self.below[y]);
        let greatest = last_one(&set)?;
        let u = self.topo[greatest];
        set.is_subset(&self.below[u]).then_some(u)
    }

    /// Longest chain length from a minimal element.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.size];
        for &x in &self.topo {
            for &y in &self.up[x] {
                rank[y] = rank[y].max(rank[x] + 1);
            }
        }
        rank
    }

    pub fn dual(&self) -> Poset {
        Poset::from_relation_unchecked(self.size, self.covers.iter().map(|&(a, b)| (b, a)))
            .expect("dual of a poset is a poset")
    }

    /// Relabels element `x` as `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        Poset::from_relation_unchecked(
            self.size,
            self.covers.iter().map(|&(a, b)| (perm[a], perm[b])),
        )
        .expect("relabelling keeps a poset")
    }

    /// Join and meet tables; fails if some pair lacks a join or a meet.
    pub fn lattice_tables(&self) -> Result<LatticeTables> {
        let n = self.size;
        if n == 0 {
            return Err(Error::Structural("empty poset is not a lattice".into()));
        }
        let rows: Vec<Result<(Vec<u32>, Vec<u32>)>> = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut j = Vec::with_capacity(n);
                let mut m = Vec::with_capacity(n);
                for y in 0..n {
                    let jj = self.join(x, y).ok_or_else(|| {
                        Error::Structural(format!("elements {x}, {y} have no join"))
                    })?;
                    let mm = self.meet(x, y).ok_or_else(|| {
                        Error::Structural(format!("elements {x}, {y} have no meet"))
                    })?;
                    j.push(jj as u32);
                    m.push(mm as u32);
                }
                Ok((j, m))
            })
            .collect();
        let mut join = Vec::with_capacity(n);
        let mut meet = Vec::with_capacity(n);
        for r in rows {
            let (j, m) = r?;
            join.push(j);
            meet.push(m);
        }
        Ok(LatticeTables { join, meet })
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice_tables().is_ok()
    }

    /// Whether the undirected Hasse diagram is connected.
    pub fn is_connected(&self) -> bool {
        if self.size == 0 {
            return true;
        }
        let mut seen = vec![false; self.size];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in self.up[x].iter().chain(&self.down[x]) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }
}

fn last_one(set: &FixedBitSet) -> Option<usize> {
    let blocks = set.as_slice();
    let bits = usize::BITS as usize;
    blocks
        .iter()
        .enumerate()
        .rev()
        .find(|(_, &b)| b != 0)
        .map(|(i, &b)| i * bits + (bits - 1 - b.leading_zeros() as usize))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTables {
    pub join: Vec<Vec<u32>>,
    pub meet: Vec<Vec<u32>>,
}

impl LatticeTables {
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x][y] as usize
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y] as usize
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SemidistributivityReport {
    /// Triples `(x, y, z)` with `x∨y = x∨z` but `x∨(y∧z) ≠ x∨y`.
    pub join_violations: Vec<(usize, usize, usize)>,
    /// Triples `(x, y, z)` with `x∧y = x∧z` but `x∧(y∨z) ≠ x∧y`.
    pub meet_violations: Vec<(usize, usize, usize)>,
}

impl SemidistributivityReport {
    pub fn holds(&self) -> bool {
        self.join_violations.is_empty() && self.meet_violations.is_empty()
    }
}

/// Checks both semidistributive laws on every triple.
///
/// For fixed `x`, the elements `y` with a common value `x∨y = a` must have their
/// meet `m` satisfy `x∨m = a`; that single test per class covers all pairs.
pub fn check_semidistributive(t: &LatticeTables) -> SemidistributivityReport {
    let n = t.join.len();
    let scan = |op: &(dyn Fn(usize, usize) -> usize + Sync),
                dual: &(dyn Fn(usize, usize) -> usize + Sync)|
     -> Vec<(usize, usize, usize)> {
        (0..n)
            .into_par_iter()
            .flat_map_iter(|x| {
                let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for y in 0..n {
                    classes.entry(op(x, y)).or_default().push(y);
                }
                let mut bad = Vec::new();
                for (a, members) in classes {
                    let m = members.iter().copied().reduce(&dual).unwrap();
                    if op(x, m) != a {
                        let witness = members
                            .iter()
                            .flat_map(|&y| members.iter().map(move |&z| (y, z)))
                            .find(|&(y, z)| op(x, dual(y, z)) != a)
                            .expect("a failing class has a failing pair");
                        bad.push((x, witness.0, witness.1));
                    }
                }
                bad
            })
            .collect()
    };
    SemidistributivityReport {
        join_violations: scan(&|a, b| t.join(a, b), &|a, b| t.meet(a, b)),
        meet_violations: scan(&|a, b| t.meet(a, b), &|a, b| t.join(a, b)),
    }
}

/// First triple violating `x∧(y∨z) = (x∧y)∨(x∧z)`, if any.
pub fn distributivity_violation(t: &LatticeTables) -> Option<(usize, usize, usize)> {
    let n = t.join.len();
    (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in 0..n {
                if t.meet(x, t.join(y, z)) != t.join(t.meet(x, y), t.meet(x, z)) {
                    return Some((x, y, z));
                }
            }
        }
        None
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolygonShape {
    Square,
    Pentagon,
    Hexagon,
}

/// An interval that is the union of two maximal chains meeting only at its ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub bottom: usize,
    pub top: usize,
    /// Chains listed from bottom to top, endpoints included.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub shape: PolygonShape,
}

/// The polygon spanned by two upper covers `y1`, `y2` of `x` (`left` runs through `y1`).
pub fn polygon_of(p: &Poset, t: &LatticeTables, x: usize, y1: usize, y2: usize) -> Result<Polygon> {
    if y1 == y2 || !p.upper_covers(x).contains(&y1) || !p.upper_covers(x).contains(&y2) {
        return Err(Error::Precondition(format!(
            "{y1} and {y2} must be distinct upper covers of {x}"
        )));
    }
    let top = t.join(y1, y2);
    let interval = p.interval(x, top);
    let inside = |z: usize| interval.binary_search(&z).is_ok();
    let walk = |start: usize| -> Result<Vec<usize>> {
        let mut chain = vec![x, start];
        let mut cur = start;
        while cur != top {
            let ups: Vec<usize> = p
                .upper_covers(cur)
                .iter()
                .copied()
                .filter(|&z| inside(z))
                .collect();
            if ups.len() != 1 {
                return Err(Error::Structural(format!(
                    "interval [{x}, {top}] is not a polygon at {cur}"
                )));
            }
            cur = ups[0];
            chain.push(cur);
        }
        Ok(chain)
    };
    let left = walk(y1)?;
    let right = walk(y2)?;
    if left.len() + right.len() - 2 != interval.len() {
        return Err(Error::Structural(format!(
            "interval [{x}, {top}] has elements off its two chains"
        )));
    }
    let shape =
        match (left.len() - 1).min(right.len() - 1) * 10 + (left.len() - 1).max(right.len() - 1) {
            22 => PolygonShape::Square,
            23 => PolygonShape::Pentagon,
            33 => PolygonShape::Hexagon,
            _ => {
                return Err(Error::Structural(format!(
                    "interval [{x}, {top}] has chains of lengths {} and {}",
                    left.len() - 1,
                    right.len() - 1
                )))
            }
        };
    Ok(Polygon {
        bottom: x,
        top,
        left,
        right,
        shape,
    })
}

/// Every up-fork polygon followed by every down-fork polygon (the latter computed
/// in the dual and reported there with bottom and top swapped back).
pub fn all_polygons(p: &Poset, t: &LatticeTables) -> Result<Vec<Polygon>> {
    let mut out = Vec::new();
    for x in 0..p.size() {
        let ups = p.upper_covers(x);
        for (i, &a) in ups.iter().enumerate() {
            for &b in &ups[i + 1..] {
                out.push(polygon_of(p, t, x, a, b)?);
            }
        }
    }
    let d = p.dual();
    let dt = LatticeTables {
        join: t.meet.clone(),
        meet: t.join.clone(),
    };
    for x in 0..p.size() {
        let ups = d.upper_covers(x);
        for (i, &a) in ups.iter().enumerate() {
            for &b in &ups[i + 1..] {
                let poly = polygon_of(&d, &dt, x, a, b)?;
                out.push(Polygon {
                    bottom: poly.top,
                    top: poly.bottom,
                    left: poly.left.into_iter().rev().collect(),
                    right: poly.right.into_iter().rev().collect(),
                    shape: poly.shape,
                });
            }
        }
    }
    Ok(out)
}

/// Number of intervals `[x, y]` that are chains, keyed by chain length.
pub fn count_linear_intervals(p: &Poset) -> BTreeMap<usize, usize> {
    let per_x: Vec<BTreeMap<usize, usize>> = (0..p.size())
        .into_par_iter()
        .map(|x| {
            // chain_len[y] = Some(k) when [x, y] is a chain of length k.
            let mut chain_len: Vec<Option<usize>> = vec![None; p.size()];
            chain_len[x] = Some(0);
            let mut counts = BTreeMap::new();
            *counts.entry(0).or_insert(0) += 1;
            for &y in p.linear_extension() {
                if y == x || !p.leq(x, y) {
                    continue;
                }
                let lower: Vec<usize> = p
                    .lower_covers(y)
                    .iter()
                    .copied()
                    .filter(|&z| p.leq(x, z))
                    .collect();
                if let [z] = lower[..] {
                    if let Some(k) = chain_len[z] {
                        chain_len[y] = Some(k + 1);
                        *counts.entry(k + 1).or_insert(0) += 1;
                    }
                }
            }
            counts
        })
        .collect();
    let mut total = BTreeMap::new();
    for m in per_x {
        for (k, c) in m {
            *total.entry(k).or_insert(0) += c;
        }
    }
    total
}

/// Formats linear-interval counts as `"0:5 1:5 2:2"`.
pub fn format_counts(counts: &BTreeMap<usize, usize>) -> String {
    counts
        .iter()
        .map(|(k, c)| format!("{k}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Whether an undirected graph given by adjacency lists contains a triangle.
pub fn has_triangle(adjacency: &[Vec<usize>]) -> bool {
    let n = adjacency.len();
    let mut sets = vec![FixedBitSet::with_capacity(n); n];
    for (a, list) in adjacency.iter().enumerate() {
        for &b in list {
            sets[a].insert(b);
        }
    }
    adjacency.iter().enumerate().any(|(a, list)| {
        list.iter()
            .any(|&b| b > a && sets[a].intersection(&sets[b]).next().is_some())
    })
}

/// The pentagon lattice: `0 < a < b < 1` and `0 < c < 1`.
pub fn pentagon_n5() -> Poset {
    Poset::from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap()
}

/// The diamond lattice with three atoms.
pub fn diamond_m3() -> Poset {
    Poset::from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
}
