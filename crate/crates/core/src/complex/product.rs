use std::sync::Arc;

use super::{Simplex, SimplicialComplex, Vertex};
use crate::rational::Rat;

/// Staircase triangulation of `a × b` together with its pair encoding.
///
/// The vertex `(u, w)` has identifier `u * nb + w` where `nb` is the identifier space of
/// `b`, so identifier order is the lexicographic order on pairs.
#[derive(Clone, Debug)]
pub struct ProductComplex {
    pub complex: SimplicialComplex,
    pub nb: u32,
}

impl ProductComplex {
    pub fn pair(&self, v: Vertex) -> (Vertex, Vertex) {
        (v / self.nb, v % self.nb)
    }

    pub fn vertex(&self, u: Vertex, w: Vertex) -> Vertex {
        u * self.nb + w
    }
}

pub(crate) fn product_labels(a: &SimplicialComplex, b: &SimplicialComplex) -> Arc<[String]> {
    let mut out = Vec::with_capacity(a.id_space() * b.id_space());
    for la in a.labels().iter() {
        for lb in b.labels().iter() {
            out.push(format!("({la},{lb})"));
        }
    }
    out.into()
}

pub(crate) fn product_coords(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<Arc<[Vec<Rat>]>> {
    let (ca, cb) = (a.coords()?, b.coords()?);
    let mut out = Vec::with_capacity(ca.len() * cb.len());
    for x in ca.iter() {
        for y in cb.iter() {
            out.push(x.iter().chain(y.iter()).cloned().collect::<Vec<_>>());
        }
    }
    Some(out.into())
}

/// Monotone lattice paths from `(0,0)` to `(p,q)`, each listed as its sequence of points.
pub(crate) fn staircase_paths(p: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut cur = vec![(0, 0)];
    fn rec(p: usize, q: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let (i, j) = *cur.last().unwrap();
        if i == p && j == q {
            out.push(cur.clone());
            return;
        }
        if i < p {
            cur.push((i + 1, j));
            rec(p, q, cur, out);
            cur.pop();
        }
        if j < q {
            cur.push((i, j + 1));
            rec(p, q, cur, out);
            cur.pop();
        }
    }
    rec(p, q, &mut cur, &mut out);
    out
}

/// Calls `f` on every maximal simplex of the staircase triangulation of `a × b`.
/// Maximal simplices are the full staircases of pairs of facets.
pub fn for_each_product_facet(a: &SimplicialComplex, b: &SimplicialComplex, mut f: impl FnMut(Simplex)) {
    let nb = b.id_space() as u32;
    let fa = a.facets();
    let fb = b.facets();
    let mut cache: rustc_hash::FxHashMap<(usize, usize), Vec<Vec<(usize, usize)>>> = Default::default();
    for s in &fa {
        for t in &fb {
            let (p, q) = (s.dim(), t.dim());
            let paths = cache.entry((p, q)).or_insert_with(|| staircase_paths(p, q));
            for path in paths.iter() {
                let v = path.iter().map(|&(i, j)| s.vertices()[i] * nb + t.vertices()[j]).collect();
                f(Simplex::from_sorted(v));
            }
        }
    }
}

/// Whether a set of product identifiers spans a simplex of the staircase triangulation:
/// the pairs form a chain in the product order and both projections are simplices.
pub fn is_product_simplex(a: &SimplicialComplex, b: &SimplicialComplex, s: &Simplex) -> bool {
    let nb = b.id_space() as u32;
    let mut prev_w = 0;
    for (k, &v) in s.vertices().iter().enumerate() {
        let w = v % nb;
        if k > 0 && w < prev_w {
            return false;
        }
        prev_w = w;
    }
    let pa = Simplex::spanned_by(s.vertices().iter().map(|&v| v / nb));
    let pb = Simplex::spanned_by(s.vertices().iter().map(|&v| v % nb));
    a.contains(&pa) && b.contains(&pb)
}

/// The full subcomplex of the staircase triangulation of `a × b` on the identifiers
/// accepted by `keep`, up to dimension `max_dim`. Simplices are enumerated directly as
/// chains in the product order, so the cost tracks the output rather than the facets.
pub fn product_full_subcomplex(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    keep: impl Fn(Vertex) -> bool,
    max_dim: Option<usize>,
) -> SimplicialComplex {
    let nb = b.id_space() as u32;
    let top = max_dim.unwrap_or(usize::MAX).min(a.dim().unwrap_or(0) + b.dim().unwrap_or(0));
    let up = |c: &SimplicialComplex| -> Vec<Vec<Vertex>> {
        c.adjacency()
            .into_iter()
            .enumerate()
            .map(|(v, ns)| std::iter::once(v as Vertex).chain(ns.into_iter().filter(|&w| w > v as Vertex)).collect())
            .collect()
    };
    let (up_a, up_b) = (up(a), up(b));
    let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); top + 1];
    struct Walk<'a> {
        a: &'a SimplicialComplex,
        b: &'a SimplicialComplex,
        up_a: &'a [Vec<Vertex>],
        up_b: &'a [Vec<Vertex>],
        nb: u32,
        top: usize,
    }
    fn extend(
        cx: &Walk,
        keep: &dyn Fn(Vertex) -> bool,
        chain: &mut Vec<Vertex>,
        us: &mut Vec<Vertex>,
        ws: &mut Vec<Vertex>,
        out: &mut [Vec<Simplex>],
    ) {
        out[chain.len() - 1].push(Simplex::from_sorted(chain.clone()));
        if chain.len() > cx.top {
            return;
        }
        let last = *chain.last().unwrap();
        let (u, w) = (last / cx.nb, last % cx.nb);
        for &u2 in &cx.up_a[u as usize] {
            if u2 != u {
                us.push(u2);
                let ok = cx.a.contains_vertices(us);
                us.pop();
                if !ok {
                    continue;
                }
            }
            for &w2 in &cx.up_b[w as usize] {
                if u2 == u && w2 == w {
                    continue;
                }
                let p = u2 * cx.nb + w2;
                if !keep(p) {
                    continue;
                }
                if w2 != w {
                    ws.push(w2);
                    let ok = cx.b.contains_vertices(ws);
                    ws.pop();
                    if !ok {
                        continue;
                    }
                }
                chain.push(p);
                let (nu, nw) = (u2 != u, w2 != w);
                if nu {
                    us.push(u2);
                }
                if nw {
                    ws.push(w2);
                }
                extend(cx, keep, chain, us, ws, out);
                if nu {
                    us.pop();
                }
                if nw {
                    ws.pop();
                }
                chain.pop();
            }
        }
    }
    let cx = Walk { a, b, up_a: &up_a, up_b: &up_b, nb, top };
    for u in a.vertices() {
        for w in b.vertices() {
            let p = u * nb + w;
            if keep(p) {
                extend(&cx, &keep, &mut vec![p], &mut vec![u], &mut vec![w], &mut by_dim);
            }
        }
    }
    for v in &mut by_dim {
        v.sort_unstable();
    }
    SimplicialComplex::from_closed_lists(product_labels(a, b), product_coords(a, b), by_dim)
}

/// Staircase triangulation of `|a| × |b|` under the identifier orders of both factors.
pub fn product_triangulation(a: &SimplicialComplex, b: &SimplicialComplex) -> ProductComplex {
    let mut gens = Vec::new();
    for_each_product_facet(a, b, |s| gens.push(s));
    let complex = SimplicialComplex::from_generators(product_labels(a, b), product_coords(a, b), gens, None);
    ProductComplex { complex, nb: b.id_space() as u32 }
}
