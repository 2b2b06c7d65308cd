use super::chain::ChainZ2;
use super::reduce::{sym_diff, Reduction};
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Whether the cycle `z` bounds in `c`.
pub fn is_boundary(c: &SimplicialComplex, z: &ChainZ2) -> Result<bool> {
    Ok(solve_bounding_chain(c, z)?.is_some())
}

/// Finds `G` with `∂G = z` in `c`, or `None` when `z` is not a boundary.
///
/// The search runs over growing neighborhoods of `supp z`: each round adds every
/// `(j+1)`-simplex touching the current vertex set. The first neighborhood that admits
/// a solution is used, and within it the answer is canonical: it avoids the top column
/// of every kernel vector, which makes it the least solution when supports are compared
/// from their largest simplex down.
pub fn solve_bounding_chain(c: &SimplicialComplex, z: &ChainZ2) -> Result<Option<ChainZ2>> {
    let rows = z.indices_in(c)?;
    if !z.is_cycle() {
        return Err(Error::NotACycle(z.boundary().len()));
    }
    let j = z.dim();
    if z.is_zero() {
        return Ok(Some(ChainZ2::zero(j + 1)));
    }
    let mut inside = vec![false; c.id_space()];
    for v in z.vertex_set() {
        inside[v as usize] = true;
    }
    let mut taken = vec![false; c.num_simplices(j + 1)];
    // solvability is tested on one growing untracked reduction; the tracked solve that
    // fixes the canonical answer only runs once a solution is known to exist
    let mut probe = Reduction::new(c.num_simplices(j), Vec::new(), false);
    loop {
        let mut added = false;
        for (i, s) in c.simplices(j + 1).iter().enumerate() {
            if !taken[i] && s.vertices().iter().any(|&v| inside[v as usize]) {
                taken[i] = true;
                added = true;
                probe.push(face_rows(c, s));
            }
        }
        if !added {
            return Ok(None);
        }
        for (i, s) in c.simplices(j + 1).iter().enumerate() {
            if taken[i] {
                for &v in s.vertices() {
                    inside[v as usize] = true;
                }
            }
        }
        if probe.reduce_vector(rows.clone()).0.is_empty() {
            let cols: Vec<usize> = (0..taken.len()).filter(|&i| taken[i]).collect();
            return Ok(Some(solve_on_columns(c, j, &cols, &rows).expect("solvable on these columns")));
        }
    }
}

fn face_rows(c: &SimplicialComplex, s: &Simplex) -> Vec<u32> {
    let mut col: Vec<u32> = s.faces().map(|f| c.index_of(&f).expect("closed complex") as u32).collect();
    col.sort_unstable();
    col
}

fn solve_on_columns(c: &SimplicialComplex, j: usize, cols: &[usize], rhs: &[u32]) -> Option<ChainZ2> {
    let top = c.simplices(j + 1);
    let columns: Vec<Vec<u32>> = cols
        .iter()
        .map(|&i| face_rows(c, &top[i]))
        .collect();
    let red = Reduction::new(c.num_simplices(j), columns, true);
    let (residual, mut x) = red.reduce_vector(rhs.to_vec());
    if !residual.is_empty() {
        return None;
    }
    let combos = red.combos.as_ref().expect("tracked");
    let zeros: Vec<usize> = red.zero_columns().collect();
    for &k in zeros.iter().rev() {
        if x.binary_search(&(k as u32)).is_ok() {
            x = sym_diff(&x, &combos[k]);
        }
    }
    let support: Vec<Simplex> = x.iter().map(|&k| top[cols[k as usize]].clone()).collect();
    Some(ChainZ2::from_sorted(j + 1, support))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn triangle_boundary() {
        let z = ChainZ2::new(1, [s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]).unwrap();
        assert!(!is_boundary(&fixtures::simplex_boundary(2), &z).unwrap());
        let g = solve_bounding_chain(&fixtures::simplex(2), &z).unwrap().unwrap();
        assert_eq!(g.support(), &[s(&[0, 1, 2])]);
        let e = ChainZ2::new(1, [s(&[0, 1])]).unwrap();
        assert!(matches!(solve_bounding_chain(&fixtures::simplex(2), &e), Err(Error::NotACycle(2))));
    }

    #[test]
    fn octahedron_equator_picks_upper_cap() {
        let oct = fixtures::cross_polytope(2);
        let eq = ChainZ2::new(1, [s(&[0, 2]), s(&[0, 3]), s(&[1, 2]), s(&[1, 3])]).unwrap();
        let g = solve_bounding_chain(&oct, &eq).unwrap().unwrap();
        assert_eq!(g.len(), 4);
        assert!(g.support().iter().all(|t| t.contains(4)));
        assert_eq!(g.boundary(), eq);
    }

    #[test]
    fn torus_generators_do_not_bound() {
        let t = fixtures::torus7();
        for z in crate::gf2::homology_basis(&t, 1).reps {
            assert_eq!(solve_bounding_chain(&t, &z).unwrap(), None);
        }
    }
}
