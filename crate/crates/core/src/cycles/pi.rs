use rustc_hash::FxHashMap;

use crate::complex::{DeltaComplex, DeltaIsomorphism, DeltaMap, Simplex, Vertex};
use crate::error::{Error, Result};
use crate::gf2::ChainZ2;

type Glue = ((usize, usize), (usize, usize));

/// A Δ-complex with one top cell per entry of a chain in list form, and the simplex each
/// cell is sent to.
#[derive(Clone, Debug)]
pub struct PiComplex {
    pub delta: DeltaComplex,
    /// The list: top cell `i` maps onto `cells[i]`, vertex positions in sorted order.
    pub cells: Vec<Simplex>,
    /// Per top cell and nonempty vertex-position mask, the cell of `delta` it becomes.
    pub table: Vec<Vec<u32>>,
    /// Per dimension and cell, its image simplex.
    pub images: Vec<Vec<Simplex>>,
}

impl PiComplex {
    pub fn dim(&self) -> Option<usize> {
        self.delta.dim()
    }
}

fn uniform_dim(cells: &[Simplex]) -> Result<usize> {
    let m = cells.first().ok_or_else(|| Error::Precondition("empty chain".into()))?.dim();
    if let Some(s) = cells.iter().find(|s| s.dim() != m) {
        return Err(Error::DimensionMismatch { expected: m, found: s.dim() });
    }
    Ok(m)
}

fn face_classes(cells: &[Simplex]) -> Vec<(Simplex, Vec<(usize, usize)>)> {
    let mut by_face: FxHashMap<Simplex, Vec<(usize, usize)>> = FxHashMap::default();
    for (i, s) in cells.iter().enumerate() {
        if s.dim() == 0 {
            continue;
        }
        for p in 0..=s.dim() {
            by_face.entry(s.face(p)).or_default().push((i, p));
        }
    }
    let mut classes: Vec<_> = by_face.into_iter().collect();
    classes.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    classes
}

/// Pairs equal faces in occurrence order. With `allow_odd` the last occurrence of an odd
/// class stays free; otherwise odd classes are an error.
fn pair_faces(cells: &[Simplex], allow_odd: bool) -> Result<Vec<Glue>> {
    let classes = face_classes(cells);
    let odd = classes.iter().filter(|(_, occ)| occ.len() % 2 == 1).count();
    if odd > 0 && !allow_odd {
        return Err(Error::NotACycle(odd));
    }
    Ok(classes.iter().flat_map(|(_, occ)| occ.chunks_exact(2).map(|w| (w[0], w[1]))).collect())
}

/// Pairs equal faces compatibly with a free involution of the list: `partner[i]` is the
/// entry equal to `swap(cells[i])`. Pairs chosen at a face are transported to its image.
fn pair_faces_equivariant(cells: &[Simplex], partner: &[usize], swap: &dyn Fn(Vertex) -> Vertex) -> Result<Vec<Glue>> {
    let image = |s: &Simplex| Simplex::spanned_by(s.vertices().iter().map(|&v| swap(v)));
    for (i, &j) in partner.iter().enumerate() {
        if j == i || partner[j] != i || cells[j] != image(&cells[i]) {
            return Err(Error::Precondition(format!("entry {i} has no valid partner")));
        }
    }
    let classes = face_classes(cells);
    let odd = classes.iter().filter(|(_, occ)| occ.len() % 2 == 1).count();
    if odd > 0 {
        return Err(Error::NotACycle(odd));
    }
    let mut glue = Vec::new();
    for (face, occ) in &classes {
        let img = image(face);
        if img == *face {
            return Err(Error::Construction(format!("face {:?} is fixed by the involution", face.vertices())));
        }
        if img < *face {
            continue;
        }
        let moved = |(i, p): (usize, usize)| {
            let j = partner[i];
            let v = swap(cells[i].vertices()[p]);
            (j, cells[j].position(v).expect("partner contains the swapped vertex"))
        };
        for w in occ.chunks_exact(2) {
            glue.push((w[0], w[1]));
            glue.push((moved(w[0]), moved(w[1])));
        }
    }
    Ok(glue)
}

fn assemble(cells: Vec<Simplex>, m: usize, glue: &[Glue]) -> Result<PiComplex> {
    let (delta, table) = DeltaComplex::from_gluing(m, cells.len(), glue)?;
    let mut images: Vec<Vec<Option<Simplex>>> = (0..=m).map(|d| vec![None; delta.num_cells(d)]).collect();
    for (a, row) in table.iter().enumerate() {
        for (mask, &cell) in row.iter().enumerate().skip(1) {
            let vs: Vec<Vertex> =
                cells[a].vertices().iter().enumerate().filter(|(p, _)| mask >> p & 1 == 1).map(|(_, &v)| v).collect();
            let d = vs.len() - 1;
            images[d][cell as usize].get_or_insert_with(|| Simplex::from_sorted(vs));
        }
    }
    let images = images.into_iter().map(|v| v.into_iter().map(|s| s.expect("every cell is a face")).collect()).collect();
    Ok(PiComplex { delta, cells, table, images })
}

/// `Π`: one top cell per entry of a cycle in list form, codimension-one faces glued in
/// pairs among entries with equal restrictions (pairs taken in occurrence order).
pub fn delta_from_chain(cells: &[Simplex]) -> Result<PiComplex> {
    let m = uniform_dim(cells)?;
    let glue = pair_faces(cells, false)?;
    assemble(cells.to_vec(), m, &glue)
}

/// `Π` for a list closed under a free involution, together with the involution as a
/// cellwise map. The list must be `[G, s G]` in the sense of `partner`.
pub fn delta_from_chain_equivariant(
    cells: &[Simplex],
    partner: &[usize],
    swap: &dyn Fn(Vertex) -> Vertex,
) -> Result<(PiComplex, DeltaMap)> {
    let m = uniform_dim(cells)?;
    let glue = pair_faces_equivariant(cells, partner, swap)?;
    let pi = assemble(cells.to_vec(), m, &glue)?;
    let width = pi.table.first().map_or(0, |r| r.len());
    let mut cell: Vec<Vec<u32>> = (0..=m).map(|d| vec![u32::MAX; pi.delta.num_cells(d)]).collect();
    let mut perm: Vec<Vec<Vec<u8>>> = (0..=m).map(|d| vec![Vec::new(); pi.delta.num_cells(d)]).collect();
    for a in 0..cells.len() {
        let b = partner[a];
        for mask in 1..width {
            let src = pi.table[a][mask];
            let d = (mask as u32).count_ones() as usize - 1;
            if cell[d][src as usize] != u32::MAX {
                continue;
            }
            let here = &pi.images[d][src as usize];
            let mut img_mask = 0usize;
            for &v in here.vertices() {
                img_mask |= 1 << cells[b].position(swap(v)).expect("partner contains the swapped vertex");
            }
            let dst = pi.table[b][img_mask];
            let there = &pi.images[d][dst as usize];
            cell[d][src as usize] = dst;
            perm[d][src as usize] =
                here.vertices().iter().map(|&v| there.position(swap(v)).expect("image cell") as u8).collect();
        }
    }
    Ok((pi, DeltaMap { cell, perm }))
}

/// `Ω` for a chain `G` in list form with `∂G = g`, its odd-incidence boundary, `Π` of
/// the reduced `g`, and an image-respecting isomorphism between the two when one exists.
#[derive(Clone, Debug)]
pub struct OmegaComplex {
    pub omega: PiComplex,
    pub boundary: DeltaComplex,
    /// Per dimension, the `Ω` cell behind each boundary cell.
    pub boundary_cells: Vec<Vec<u32>>,
    pub pi: PiComplex,
    pub isomorphism: Option<DeltaIsomorphism>,
}

/// Builds `Ω` from `G`. The isomorphism `∂Ω ≅ Π` is searched with top cells matched by
/// image; it exists whenever `g` is manifold-like (every face has a connected link).
pub fn omega_from_bounding_chain(big_g: &[Simplex], g: &[Simplex]) -> Result<OmegaComplex> {
    let m1 = uniform_dim(big_g)?;
    if m1 == 0 {
        return Err(Error::Precondition("a bounding chain has dimension at least 1".into()));
    }
    let reduced_g = ChainZ2::new(m1 - 1, g.iter().cloned())?;
    let listed_bd = ChainZ2::new(m1 - 1, big_g.iter().flat_map(|s| s.faces().collect::<Vec<_>>()))?;
    if listed_bd != reduced_g {
        return Err(Error::BoundaryMismatch(format!(
            "boundary has {} simplices, reference cycle {}",
            listed_bd.len(),
            reduced_g.len()
        )));
    }
    let glue = pair_faces(big_g, true)?;
    let omega = assemble(big_g.to_vec(), m1, &glue)?;
    let (boundary, boundary_cells) = omega.delta.boundary(m1 - 1);
    let pi = delta_from_chain(reduced_g.support())?;
    let m = m1 - 1;
    let isomorphism = boundary.isomorphism_to(&pi.delta, |b, p| {
        omega.images[m][boundary_cells[m][b as usize] as usize] == pi.images[m][p as usize]
    });
    Ok(OmegaComplex { omega, boundary, boundary_cells, pi, isomorphism })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn triangle_boundary_gives_three_cycle() {
        let pi = delta_from_chain(&[s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]).unwrap();
        assert_eq!(pi.delta.f_vector(), vec![3, 3]);
        assert!(pi.delta.is_mod2_cycle());
        assert!(delta_from_chain(&[s(&[0, 1]), s(&[1, 2])]).is_err());
    }

    #[test]
    fn octahedron_rebuilt() {
        let o = fixtures::cross_polytope(2);
        let pi = delta_from_chain(o.simplices(2)).unwrap();
        let direct = DeltaComplex::from_simplicial(&o);
        assert_eq!(pi.delta.f_vector(), vec![6, 12, 8]);
        assert!(pi.delta.isomorphism_to(&direct, |_, _| true).is_some());
    }

    #[test]
    fn doubled_loop_splits_or_merges_consistently() {
        let tri = [s(&[0, 1]), s(&[1, 2]), s(&[0, 2])];
        let twice: Vec<Simplex> = tri.iter().chain(tri.iter()).cloned().collect();
        let pi = delta_from_chain(&twice).unwrap();
        assert!(pi.delta.is_mod2_cycle());
        assert_eq!(pi.delta.num_cells(1), 6);
    }

    #[test]
    fn omega_of_single_triangle() {
        let om = omega_from_bounding_chain(&[s(&[0, 1, 2])], &[s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]).unwrap();
        assert_eq!(om.boundary.f_vector(), vec![3, 3]);
        assert!(om.isomorphism.is_some());
        assert!(matches!(omega_from_bounding_chain(&[s(&[0, 1, 2])], &[s(&[0, 1])]), Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn omega_of_upper_octahedron() {
        let o = fixtures::cross_polytope(2);
        // triangles containing vertex 4 (+e_2); their boundary is the equator
        let upper: Vec<Simplex> = o.simplices(2).iter().filter(|t| t.contains(4)).cloned().collect();
        let equator: Vec<Simplex> = o.simplices(1).iter().filter(|e| !e.contains(4) && !e.contains(5)).cloned().collect();
        let om = omega_from_bounding_chain(&upper, &equator).unwrap();
        assert_eq!(om.boundary.f_vector(), vec![4, 4]);
        assert!(om.isomorphism.is_some());
    }

    #[test]
    fn equivariant_pairing_on_the_square() {
        // antipodal square 0-2-1-3-0 under v -> v^1
        let cells = vec![s(&[0, 2]), s(&[1, 2]), s(&[1, 3]), s(&[0, 3])];
        let partner = vec![2, 3, 0, 1];
        let (pi, map) = delta_from_chain_equivariant(&cells, &partner, &|v| v ^ 1).unwrap();
        assert_eq!(pi.delta.f_vector(), vec![4, 4]);
        for d in 0..2 {
            for c in 0..pi.delta.num_cells(d) {
                let a = map.cell[d][c];
                assert_ne!(a as usize, c);
                assert_eq!(map.cell[d][a as usize] as usize, c);
            }
        }
    }
}
