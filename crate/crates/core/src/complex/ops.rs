use std::hash::{Hash, Hasher};

use rustc_hash::FxHasher;

use super::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::rational::{int, Rat};

/// `N_r(sub)`: `r` applications of the closed star. Each round keeps every simplex of
/// `c` that meets the current vertex set, together with its faces.
pub fn iterated_star_neighborhood(c: &SimplicialComplex, sub: &SimplicialComplex, r: usize) -> Result<SimplicialComplex> {
    if r == 0 {
        return Err(Error::Precondition("radius must be positive".into()));
    }
    if !sub.shares_labels_with(c) || !sub.is_subcomplex_of(c) {
        return Err(Error::NotSubcomplex("argument is not a subcomplex of the ambient complex".into()));
    }
    let mut inside = vec![false; c.id_space()];
    for v in sub.vertices() {
        inside[v as usize] = true;
    }
    let mut gens: Vec<Simplex> = sub.facets();
    for _ in 0..r {
        gens = c.all_simplices().filter(|s| s.vertices().iter().any(|&v| inside[v as usize])).cloned().collect();
        for s in &gens {
            for &v in s.vertices() {
                inside[v as usize] = true;
            }
        }
    }
    gens.extend(sub.facets());
    Ok(SimplicialComplex::from_generators(c.labels().clone(), c.coords().cloned(), gens, None))
}

/// The vertex-disjoint join with the embeddings of both factors.
#[derive(Clone, Debug)]
pub struct JoinedComplex {
    pub complex: SimplicialComplex,
    /// Identifier of each left-factor identifier in the join.
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
}

/// Simplicial join `a * b`: every union of a simplex of `a` (or nothing) with a simplex
/// of `b` (or nothing). Left identifiers come first. Labels are prefixed `0:`/`1:` only
/// when the two label sets collide.
pub fn join_complexes(a: &SimplicialComplex, b: &SimplicialComplex) -> JoinedComplex {
    let na = a.id_space() as u32;
    let collide = {
        let la: rustc_hash::FxHashSet<&str> = a.vertices().map(|v| a.label(v)).collect();
        b.vertices().any(|v| la.contains(b.label(v)))
    };
    let mut labels: Vec<String> = Vec::with_capacity(a.id_space() + b.id_space());
    for l in a.labels().iter() {
        labels.push(if collide { format!("0:{l}") } else { l.clone() });
    }
    for l in b.labels().iter() {
        labels.push(if collide { format!("1:{l}") } else { l.clone() });
    }
    let coords = match (a.coords(), b.coords()) {
        (Some(ca), Some(cb)) => {
            let ka = ca.first().map_or(0, |c| c.len());
            let kb = cb.first().map_or(0, |c| c.len());
            let mut out: Vec<Vec<Rat>> = Vec::with_capacity(labels.len());
            for x in ca.iter() {
                let mut p = x.clone();
                p.extend(std::iter::repeat_with(|| int(0)).take(kb + 1));
                out.push(p);
            }
            for y in cb.iter() {
                let mut p: Vec<Rat> = std::iter::repeat_with(|| int(0)).take(ka).collect();
                p.extend(y.iter().cloned());
                p.push(int(1));
                out.push(p);
            }
            Some(out.into())
        }
        _ => None,
    };
    let fa = a.facets();
    let fb = b.facets();
    let mut gens = Vec::new();
    let shift = |s: &Simplex| s.vertices().iter().map(|&v| v + na).collect::<Vec<_>>();
    if fa.is_empty() {
        gens.extend(fb.iter().map(|t| Simplex::from_sorted(shift(t))));
    } else if fb.is_empty() {
        gens.extend(fa.iter().cloned());
    } else {
        for s in &fa {
            for t in &fb {
                let mut v = s.vertices().to_vec();
                v.extend(shift(t));
                gens.push(Simplex::from_sorted(v));
            }
        }
    }
    let complex = SimplicialComplex::from_generators(labels.into(), coords, gens, None);
    JoinedComplex { complex, left: (0..na).collect(), right: (na..na + b.id_space() as u32).collect() }
}

/// Cone over `c`: the join with one new apex vertex appended to the identifier table.
/// The apex label is derived from a hash of the base so repeated runs agree.
pub fn cone(c: &SimplicialComplex) -> (SimplicialComplex, Vertex) {
    let mut h = FxHasher::default();
    for s in c.all_simplices() {
        for &v in s.vertices() {
            c.label(v).hash(&mut h);
        }
        0xffu8.hash(&mut h);
    }
    let mut apex_label = format!("apex-{:016x}", h.finish());
    while c.labels().contains(&apex_label) {
        apex_label.push('\'');
    }
    let apex = c.id_space() as Vertex;
    let mut labels: Vec<String> = c.labels().to_vec();
    labels.push(apex_label);
    let coords = c.coords().map(|cs| {
        let k = cs.first().map_or(0, |x| x.len());
        let mut out: Vec<Vec<Rat>> = cs.iter().map(|x| x.iter().cloned().chain(std::iter::once(int(0))).collect()).collect();
        out.push(std::iter::repeat_with(|| int(0)).take(k).chain(std::iter::once(int(1))).collect());
        out.into()
    });
    let facets = c.facets();
    let gens: Vec<Simplex> = if facets.is_empty() {
        vec![Simplex::vertex(apex)]
    } else {
        facets
            .into_iter()
            .map(|f| {
                let mut v = f.into_vertices();
                v.push(apex);
                Simplex::from_sorted(v)
            })
            .collect()
    };
    (SimplicialComplex::from_generators(labels.into(), coords, gens, None), apex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures;

    #[test]
    fn star_of_path_endpoint() {
        let p = fixtures::path(5);
        let sub = p.subcomplex([Simplex::vertex(0)]).unwrap();
        let n1 = iterated_star_neighborhood(&p, &sub, 1).unwrap();
        assert_eq!(n1.f_vector(), vec![2, 1]);
        let n2 = iterated_star_neighborhood(&p, &sub, 2).unwrap();
        assert_eq!(n2.f_vector(), vec![3, 2]);
        let full = iterated_star_neighborhood(&p, &p, 3).unwrap();
        assert_eq!(full, p);
    }

    #[test]
    fn star_rejects_foreign_subcomplex() {
        let p = fixtures::path(3);
        let q = fixtures::simplex(2);
        assert!(iterated_star_neighborhood(&p, &q, 1).is_err());
    }

    #[test]
    fn joins_and_cones() {
        let s0 = SimplicialComplex::from_facets(2, &[&[0], &[1]]).unwrap();
        let sq = join_complexes(&s0, &s0).complex;
        assert_eq!(sq.f_vector(), vec![4, 4]);
        let oct = join_complexes(&s0, &sq).complex;
        assert_eq!(oct.f_vector(), vec![6, 12, 8]);
        let (c, apex) = cone(&fixtures::cycle(3));
        assert_eq!(c.f_vector(), vec![4, 6, 3]);
        assert_eq!(apex, 3);
        let empty = fixtures::cycle(3).empty_like();
        assert_eq!(cone(&empty).0.f_vector(), vec![1]);
        assert_eq!(cone(&fixtures::cycle(3)).0.label(3), c.label(3));
    }
}
