use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::rational::int;

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// The staircase (Kuhn) triangulation of `[-h, h]^k` on the integer lattice, with exact
/// coordinates. Vertex identifiers follow the lexicographic order of coordinates, and
/// labels are the coordinates joined by `_`.
pub fn grid_window(k: usize, halfwidth: usize) -> Result<SimplicialComplex> {
    if !(2..=3).contains(&k) {
        return Err(Error::Precondition(format!("grid dimension must be 2 or 3, got {k}")));
    }
    if halfwidth == 0 {
        return Err(Error::Precondition("halfwidth must be at least 1".into()));
    }
    let side = 2 * halfwidth + 1;
    let n = side.pow(k as u32);
    let point = |id: usize| -> Vec<i64> {
        let mut p = vec![0i64; k];
        let mut r = id;
        for i in (0..k).rev() {
            p[i] = (r % side) as i64 - halfwidth as i64;
            r /= side;
        }
        p
    };
    let id_of = |p: &[i64]| -> Vertex {
        p.iter().fold(0usize, |acc, &x| acc * side + (x + halfwidth as i64) as usize) as Vertex
    };
    let labels: Vec<String> =
        (0..n).map(|i| point(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join("_")).collect();
    let coords = (0..n).map(|i| point(i).into_iter().map(int).collect()).collect();
    let perms = permutations(k);
    let mut facets = Vec::new();
    for id in 0..n {
        let c = point(id);
        if c.contains(&(halfwidth as i64)) {
            continue;
        }
        for p in &perms {
            let mut cur = c.clone();
            let mut verts = vec![id_of(&cur)];
            for &axis in p {
                cur[axis] += 1;
                verts.push(id_of(&cur));
            }
            facets.push(Simplex::from_sorted(verts));
        }
    }
    SimplicialComplex::from_generators(labels.into(), None, facets, None).with_coords(coords)
}
