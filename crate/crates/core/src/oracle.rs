//! Direct models of classical lattices and an exact poset isomorphism test.
//! These never look at framed graphs; they are the ground truth the framing
//! lattices are compared against.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::order::Poset;

/// Default element cap for isomorphism searches.
pub const ISO_CAP: usize = 5_000;

/// A poset together with a printable name for each element.
#[derive(Clone, Debug)]
pub struct Model<T> {
    pub poset: Poset,
    pub elements: Vec<T>,
}

/// All maximal cliques of a small dense graph (plain Bron–Kerbosch).
pub(crate) fn dense_maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn rec(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = *p
            .iter()
            .chain(&x)
            .max_by_key(|&&u| p.iter().filter(|&&w| adj[u][w]).count())
            .unwrap();
        let mut p = p;
        let mut x = x;
        for v in p.clone().into_iter().filter(|&v| !adj[pivot][v]) {
            r.push(v);
            let np = p.iter().copied().filter(|&w| adj[v][w]).collect();
            let nx = x.iter().copied().filter(|&w| adj[v][w]).collect();
            rec(adj, r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    rec(
        adj,
        &mut Vec::new(),
        (0..adj.len()).collect(),
        Vec::new(),
        &mut out,
    );
    out.sort();
    out
}

/// Multipermutations of `1^{s_1} 2^{s_2} ...`, covered by swapping an adjacent
/// increasing pair.
pub fn weak_order(s: &[usize], cap: usize) -> Result<Model<Vec<usize>>> {
    if s.is_empty() {
        return Err(Error::Precondition(
            "weak order needs a nonempty composition".into(),
        ));
    }
    let mut word: Vec<usize> = s
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(i + 1, k))
        .collect();
    let mut elements = vec![word.clone()];
    while next_permutation(&mut word) {
        if elements.len() == cap {
            return Err(Error::ElementExplosion { cap });
        }
        elements.push(word.clone());
    }
    let index: HashMap<Vec<usize>, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let mut covers = Vec::new();
    for (i, w) in elements.iter().enumerate() {
        for k in 0..w.len().saturating_sub(1) {
            if w[k] < w[k + 1] {
                let mut u = w.clone();
                u.swap(k, k + 1);
                covers.push((i, index[&u]));
            }
        }
    }
    Ok(Model {
        poset: Poset::from_covers(elements.len(), covers)?,
        elements,
    })
}

fn next_permutation(w: &mut [usize]) -> bool {
    let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) else {
        return false;
    };
    let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).unwrap();
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// Subsets of `{1..n}` (as bitmasks) ordered by inclusion.
pub fn boolean(n: usize) -> Result<Model<u64>> {
    if n > 20 {
        return Err(Error::ElementExplosion { cap: 1 << 20 });
    }
    let size = 1usize << n;
    let covers = (0..size).flat_map(|x| {
        (0..n)
            .filter(move |&i| x & (1 << i) == 0)
            .map(move |i| (x, x | (1 << i)))
    });
    Ok(Model {
        poset: Poset::from_covers(size, covers)?,
        elements: (0..size as u64).collect(),
    })
}

/// Dyck paths of semilength `n` as nondecreasing sequences `i <= a_i <= n`,
/// covered by adding one box (raising one entry by one).
pub fn dyck(n: usize, cap: usize) -> Result<Model<Vec<usize>>> {
    let mut elements = Vec::new();
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) -> Result<()> {
        let i = cur.len() + 1;
        if i > n {
            if out.len() == cap {
                return Err(Error::ElementExplosion { cap });
            }
            out.push(cur.clone());
            return Ok(());
        }
        let lo = cur.last().copied().unwrap_or(0).max(i);
        for a in lo..=n {
            cur.push(a);
            rec(n, cur, out, cap)?;
            cur.pop();
        }
        Ok(())
    }
    rec(n, &mut Vec::new(), &mut elements, cap)?;
    let index: HashMap<Vec<usize>, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let mut covers = Vec::new();
    for (x, a) in elements.iter().enumerate() {
        for k in 0..a.len() {
            let mut b = a.clone();
            b[k] += 1;
            if let Some(&y) = index.get(&b) {
                covers.push((x, y));
            }
        }
    }
    Ok(Model {
        poset: Poset::from_covers(elements.len(), covers)?,
        elements,
    })
}

/// Triangulations of the `(n+2)`-gon with vertex `i` at `(i, ±i(n+1-i))`,
/// above the axis when `eps[i-1]` is `+`. Covers are flips to a diagonal of
/// larger slope. Elements are sorted diagonal lists.
pub fn cambrian(eps: &[bool], cap: usize) -> Result<Model<Vec<(usize, usize)>>> {
    let n = eps.len();
    let m = n + 2;
    let y = |i: usize| -> i64 {
        if i == 0 || i == n + 1 {
            0
        } else {
            let h = (i * (n + 1 - i)) as i64;
            if eps[i - 1] {
                h
            } else {
                -h
            }
        }
    };
    // Cyclic order: 0, upper vertices left to right, n+1, lower vertices right to left.
    let mut cyclic: Vec<usize> = vec![0];
    cyclic.extend((1..=n).filter(|&i| eps[i - 1]));
    cyclic.push(n + 1);
    cyclic.extend((1..=n).rev().filter(|&i| !eps[i - 1]));
    let mut place = vec![0; m];
    for (k, &v) in cyclic.iter().enumerate() {
        place[v] = k;
    }
    let is_side = |a: usize, b: usize| {
        let d = place[a].abs_diff(place[b]);
        d == 1 || d == m - 1
    };
    let diagonals: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .filter(|&(a, b)| !is_side(a, b))
        .collect();
    let crosses = |d: (usize, usize), e: (usize, usize)| {
        let (a, b) = (place[d.0].min(place[d.1]), place[d.0].max(place[d.1]));
        let inside = |v: usize| a < place[v] && place[v] < b;
        let outside = |v: usize| place[v] < a || place[v] > b;
        (inside(e.0) && outside(e.1)) || (inside(e.1) && outside(e.0))
    };
    let k = diagonals.len();
    let adj: Vec<Vec<bool>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| i != j && !crosses(diagonals[i], diagonals[j]))
                .collect()
        })
        .collect();
    let cliques = dense_maximal_cliques(&adj);
    if cliques.len() > cap {
        return Err(Error::ElementExplosion { cap });
    }
    let index: HashMap<Vec<usize>, usize> = cliques
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    // slope(d) < slope(e), diagonals oriented left to right.
    let slope_less = |d: (usize, usize), e: (usize, usize)| {
        let (dx1, dy1) = ((d.1 - d.0) as i64, y(d.1) - y(d.0));
        let (dx2, dy2) = ((e.1 - e.0) as i64, y(e.1) - y(e.0));
        dy1 * dx2 < dy2 * dx1
    };
    let mut covers = Vec::new();
    for (x, c) in cliques.iter().enumerate() {
        for &d in c {
            let rest: Vec<usize> = c.iter().copied().filter(|&e| e != d).collect();
            let other =
                (0..k).find(|&e| e != d && !c.contains(&e) && rest.iter().all(|&f| adj[e][f]));
            if let Some(e) = other {
                if slope_less(diagonals[d], diagonals[e]) {
                    let mut next = rest.clone();
                    next.push(e);
                    next.sort_unstable();
                    covers.push((x, index[&next]));
                }
            }
        }
    }
    let elements = cliques
        .iter()
        .map(|c| c.iter().map(|&i| diagonals[i]).collect())
        .collect();
    Ok(Model {
        poset: Poset::from_covers(cliques.len(), covers)?,
        elements,
    })
}

/// The Tamari lattice: the Cambrian lattice with every vertex below the axis.
pub fn tamari(n: usize, cap: usize) -> Result<Model<Vec<(usize, usize)>>> {
    cambrian(&vec![false; n], cap)
}

pub fn dual_poset(p: &Poset) -> Poset {
    p.dual()
}

/// An order isomorphism `p -> q` as `map[x]`, or `None` if there is none.
pub fn poset_isomorphic(p: &Poset, q: &Poset, cap: usize) -> Result<Option<Vec<usize>>> {
    let n = p.size();
    if n.max(q.size()) > cap {
        return Err(Error::SizeCap {
            size: n.max(q.size()),
            cap,
        });
    }
    if n != q.size() || p.covers().len() != q.covers().len() {
        return Ok(None);
    }
    let sig = |x: &Poset| -> Vec<(usize, usize, usize)> {
        let r = x.ranks();
        (0..x.size())
            .map(|v| (x.upper_covers(v).len(), x.lower_covers(v).len(), r[v]))
            .collect()
    };
    let (sp, sq) = (sig(p), sig(q));
    let histogram = |s: &[(usize, usize, usize)]| {
        let mut h: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        s.iter().for_each(|&k| *h.entry(k).or_insert(0) += 1);
        h
    };
    if histogram(&sp) != histogram(&sq) {
        return Ok(None);
    }
    // Visit p in breadth-first order over the undirected Hasse diagram.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in p.linear_extension().iter().copied() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in p.upper_covers(x).iter().chain(p.lower_covers(x)) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn consistent(p: &Poset, q: &Poset, map: &[usize], x: usize, y: usize) -> bool {
        let mapped_up = p.upper_covers(x).iter().filter(|&&u| map[u] != usize::MAX);
        let mapped_down = p.lower_covers(x).iter().filter(|&&u| map[u] != usize::MAX);
        let mut count = 0;
        for &u in mapped_up {
            if !q.upper_covers(y).contains(&map[u]) {
                return false;
            }
            count += 1;
        }
        for &u in mapped_down {
            if !q.lower_covers(y).contains(&map[u]) {
                return false;
            }
            count += 1;
        }
        let image_count = q
            .upper_covers(y)
            .iter()
            .chain(q.lower_covers(y))
            .filter(|&&v| map.contains(&v))
            .count();
        count == image_count
    }
    #[allow(clippy::too_many_arguments)]
    fn search(
        k: usize,
        order: &[usize],
        p: &Poset,
        q: &Poset,
        sp: &[(usize, usize, usize)],
        sq: &[(usize, usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        let anchor = p
            .upper_covers(x)
            .iter()
            .chain(p.lower_covers(x))
            .find(|&&u| map[u] != usize::MAX)
            .copied();
        let candidates: Vec<usize> = match anchor {
            Some(u) => q
                .upper_covers(map[u])
                .iter()
                .chain(q.lower_covers(map[u]))
                .copied()
                .collect(),
            None => (0..q.size()).collect(),
        };
        for y in candidates {
            if used[y] || sp[x] != sq[y] || !consistent(p, q, map, x, y) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if search(k + 1, order, p, q, sp, sq, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }
    Ok(search(0, &order, p, q, &sp, &sq, &mut map, &mut used).then_some(map))
}

/// Convenience wrapper with the default cap.
pub fn isomorphic(p: &Poset, q: &Poset) -> bool {
    matches!(poset_isomorphic(p, q, ISO_CAP), Ok(Some(_)))
}

/// Catalan number `C_n`.
pub fn catalan(n: usize) -> usize {
    (0..n).fold(1usize, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{check_semidistributive, distributivity_violation};

    #[test]
    fn model_sizes() {
        let w = weak_order(&[1, 1, 1], 1000).unwrap();
        assert_eq!((w.poset.size(), w.poset.covers().len()), (6, 6));
        assert_eq!(weak_order(&[2, 2, 1], 1000).unwrap().poset.size(), 30);
        assert_eq!(tamari(3, 1000).unwrap().poset.size(), 5);
        assert_eq!(tamari(4, 1000).unwrap().poset.size(), 14);
        assert_eq!(dyck(3, 1000).unwrap().poset.size(), 5);
        assert_eq!(dyck(4, 1000).unwrap().poset.size(), 14);
        assert_eq!(boolean(3).unwrap().poset.covers().len(), 12);
        assert_eq!((catalan(3), catalan(4)), (5, 14));
    }

    #[test]
    fn models_are_lattices() {
        for p in [
            weak_order(&[2, 1, 1], 1000).unwrap().poset,
            tamari(4, 1000).unwrap().poset,
            dyck(4, 1000).unwrap().poset,
            cambrian(&[false, true, false, true], 1000).unwrap().poset,
            boolean(3).unwrap().poset,
        ] {
            let t = p.lattice_tables().unwrap();
            assert!(check_semidistributive(&t).holds());
        }
        let t = dyck(4, 1000).unwrap().poset.lattice_tables().unwrap();
        assert!(distributivity_violation(&t).is_none());
    }

    #[test]
    fn weak_order_extremes() {
        let w = weak_order(&[1, 1, 1], 1000).unwrap();
        let idx = |v: &[usize]| w.elements.iter().position(|e| e == v).unwrap();
        let t = w.poset.lattice_tables().unwrap();
        assert_eq!(t.join(idx(&[2, 1, 3]), idx(&[1, 3, 2])), idx(&[3, 2, 1]));
        assert_eq!(t.meet(idx(&[2, 3, 1]), idx(&[3, 1, 2])), idx(&[1, 2, 3]));
        assert!(!w.poset.leq(idx(&[1, 3, 2]), idx(&[2, 3, 1])));
    }

    #[test]
    fn isomorphism_basics() {
        let b3 = boolean(3).unwrap().poset;
        assert!(isomorphic(&b3, &b3));
        assert!(isomorphic(&b3, &b3.dual()));
        let chain = Poset::from_covers(3, [(0, 1), (1, 2)]).unwrap();
        let anti = Poset::from_covers(3, []).unwrap();
        assert!(!isomorphic(&chain, &anti));
        assert!(
            isomorphic(
                &tamari(3, 100).unwrap().poset,
                &dyck(3, 100).unwrap().poset.dual()
            ) == isomorphic(&tamari(3, 100).unwrap().poset, &dyck(3, 100).unwrap().poset)
        );
        assert!(!isomorphic(
            &tamari(4, 100).unwrap().poset,
            &dyck(4, 100).unwrap().poset
        ));
        assert!(matches!(
            poset_isomorphic(&b3, &b3, 4),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn dual_of_dual() {
        let p = cambrian(&[true, false, true], 100).unwrap().poset;
        let mut a = dual_poset(&dual_poset(&p)).covers().to_vec();
        let mut b = p.covers().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
