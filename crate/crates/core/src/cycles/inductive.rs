use std::collections::VecDeque;

use super::{equivariant_certificate, swap_id};
use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::deleted::{complement_from, diagonal_distances, diagonal_filtration};
use crate::equivariant::EssentialCycleCertificate;
use crate::error::{Error, Result};
use crate::gf2::{solve_bounding_chain, ChainZ2};

/// Output of the inductive builder.
#[derive(Clone, Debug)]
pub struct InductiveCycle {
    pub certificate: EssentialCycleCertificate,
    /// The symmetric chain `C_j` (mod 2) built at each stage, starting with the point pair.
    pub stages: Vec<ChainZ2>,
    /// The radius hosting each stage.
    pub stage_radii: Vec<usize>,
}

/// Breadth-first shortest path between `from` and `to` in the 1-skeleton of `c`, as its
/// list of edges. Ties go to the smallest identifier.
pub fn shortest_swap_path(c: &SimplicialComplex, from: Vertex, to: Vertex) -> Option<Vec<Simplex>> {
    let adj = c.adjacency();
    let mut prev = vec![u32::MAX; c.id_space()];
    prev[from as usize] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &adj[v as usize] {
            if prev[w as usize] == u32::MAX {
                prev[w as usize] = v;
                queue.push_back(w);
            }
        }
    }
    if prev[to as usize] == u32::MAX {
        return None;
    }
    let mut edges = Vec::new();
    let mut v = to;
    while v != from {
        let p = prev[v as usize];
        edges.push(Simplex::spanned_by([p, v]));
        v = p;
    }
    edges.reverse();
    Some(edges)
}

/// Builds an essential `(k-1)`-cycle in `X_{r_1}` for a window with `k`-dimensional
/// coordinates, using the first `k` radii. Stage 0 is a point and its swap in the
/// deepest level; each later stage fills the previous symmetric cycle by a chain one
/// level up and adds the swapped copy.
pub fn inductive_essential_cycle(window: &SimplicialComplex, radii: &[usize]) -> Result<InductiveCycle> {
    let coords = window.coords().ok_or_else(|| Error::Precondition("window has no coordinates".into()))?;
    let k = coords.iter().find(|c| !c.is_empty()).map(Vec::len).unwrap_or(0);
    if k == 0 {
        return Err(Error::Precondition("window coordinates are empty".into()));
    }
    if radii.len() < k {
        return Err(Error::Precondition(format!("{k} radii are needed for a {k}-dimensional window, got {}", radii.len())));
    }
    let radii = &radii[..k];
    diagonal_filtration(window, radii, Some(0))?;
    let dist = diagonal_distances(window);
    let n = window.id_space() as u32;
    let swap = swap_id(n);
    // stage j only needs the j-skeleton of its level
    let level = |j: usize| complement_from(window, &dist, radii[k - 1 - j], Some(j));
    let a = level(0)
        .vertices()
        .next()
        .ok_or_else(|| Error::Construction(format!("X_{} is empty; enlarge the window", radii[k - 1])))?;
    let mut half = vec![Simplex::vertex(a)];
    let mut stages = vec![ChainZ2::new(0, [Simplex::vertex(a), Simplex::vertex(swap(a))])?];
    let mut stage_radii = vec![radii[k - 1]];
    for j in 1..k {
        let radius = radii[k - 1 - j];
        let complex = level(j);
        half = if j == 1 {
            shortest_swap_path(&complex, a, swap(a)).ok_or_else(|| {
                Error::Construction(format!("no path joins the point pair in X_{}; enlarge the window", radius))
            })?
        } else {
            let prev = stages.last().expect("stage 0 exists");
            solve_bounding_chain(&complex, prev)?
                .ok_or_else(|| {
                    Error::Construction(format!("the stage {} cycle does not bound in X_{}; enlarge the window", j - 1, radius))
                })?
                .support()
                .to_vec()
        };
        let full = half.iter().cloned().chain(half.iter().map(|s| Simplex::spanned_by(s.vertices().iter().map(|&v| swap(v)))));
        let chain = ChainZ2::new(j, full)?;
        if chain.is_zero() {
            return Err(Error::Construction(format!("the stage {j} cycle cancels with its swap")));
        }
        stages.push(chain);
        stage_radii.push(radius);
    }
    let mut cells = half.clone();
    cells.extend(half.iter().map(|s| Simplex::spanned_by(s.vertices().iter().map(|&v| swap(v)))));
    let note = format!("inductive construction over radii {radii:?}");
    let certificate = equivariant_certificate(window, radii[0], cells, note)?;
    Ok(InductiveCycle { certificate, stages, stage_radii })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deleted::grid_window;
    use crate::equivariant::verify_essential_cycle;

    #[test]
    fn planar_window_gives_an_essential_loop() {
        let y = grid_window(2, 3).unwrap();
        let out = inductive_essential_cycle(&y, &[1, 2]).unwrap();
        let report = verify_essential_cycle(&out.certificate);
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(report.m, Some(1));
        assert_eq!(report.deg2, Some(1));
        assert_eq!(out.stage_radii, vec![2, 1]);
        assert!(out.stages.iter().all(|c| c.is_cycle()));
    }

    #[test]
    #[ignore = "about half a minute in release builds"]
    fn spatial_window_gives_an_essential_sphere() {
        let y = grid_window(3, 2).unwrap();
        let out = inductive_essential_cycle(&y, &[1, 2, 3]).unwrap();
        let report = verify_essential_cycle(&out.certificate);
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(report.m, Some(2));
    }

    #[test]
    fn too_few_radii() {
        let y = grid_window(2, 2).unwrap();
        assert!(matches!(inductive_essential_cycle(&y, &[1]), Err(Error::Precondition(_))));
    }

    #[test]
    fn path_is_shortest() {
        let c = crate::complex::fixtures::cycle(6);
        let p = shortest_swap_path(&c, 0, 2).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(shortest_swap_path(&c, 3, 3).unwrap().len(), 0);
    }
}

