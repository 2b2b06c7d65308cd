//! Constructions of essential cycles: Π/Ω complexes from chains, the inductive builder
//! over a diagonal filtration, the union-a-ray step, joins, linking numbers with the
//! diagonal and the obstructor-dimension summary.

mod inductive;
mod join;
mod linking;
mod pi;
mod ray;
mod report;

pub use inductive::{inductive_essential_cycle, shortest_swap_path, InductiveCycle};
pub use join::{cross_polytope_certificate, join_certificates, join_essential_cycles};
pub use linking::{diagonal_dual_cocycle, linking_number_mod2, DiagonalDual};
pub use pi::{delta_from_chain, delta_from_chain_equivariant, omega_from_bounding_chain, OmegaComplex, PiComplex};
pub use report::{pobdim_report, CertificateLine, Composition, PobdimReport};
pub use ray::{union_ray_cycle, wedge_with_ray, RayBranch, UnionRayResult, WedgeComplex};

use crate::complex::{barycentric_subdivide_delta, Simplex, SimplicialComplex, Vertex};
use crate::equivariant::{EssentialCycleCertificate, SphereMap, TargetMap};
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Swap on the identifiers of `Y²` for a window with identifier space `n`.
pub(crate) fn swap_id(n: u32) -> impl Fn(Vertex) -> Vertex {
    move |p| (p % n) * n + p / n
}

/// The chain in list form as a certificate: `cells` lives in `Y²` and satisfies
/// `cells[i + N] = s cells[i]` for `N = cells.len() / 2`. `Π` of the list is subdivided
/// with its involution; each new vertex goes to a vertex of the simplex carrying it,
/// chosen on one cell per orbit and transported to the other, so the map stays
/// simplicial and equivariant. The sphere map is the difference of window coordinates.
pub(crate) fn equivariant_certificate(
    window: &SimplicialComplex,
    radius: usize,
    cells: Vec<Simplex>,
    note: String,
) -> Result<EssentialCycleCertificate> {
    let coords = window.coords().ok_or_else(|| Error::Precondition("window has no coordinates".into()))?.clone();
    let n = window.id_space() as u32;
    let half = cells.len() / 2;
    if half == 0 || cells.len() % 2 == 1 {
        return Err(Error::Construction("the cycle cancels to nothing".into()));
    }
    let partner: Vec<usize> = (0..cells.len()).map(|i| if i < half { i + half } else { i - half }).collect();
    let swap = swap_id(n);
    let (pi, inv) = delta_from_chain_equivariant(&cells, &partner, &swap)?;
    let (sd, lifted) = barycentric_subdivide_delta(&pi.delta, Some(&inv))?;
    let lifted = lifted.expect("map was given");
    let c = sd.complex;
    let mut target = vec![(u32::MAX, u32::MAX); c.id_space()];
    for v in c.vertices() {
        let (d, cell) = sd.carrier[v as usize];
        let other = inv.cell[d][cell as usize];
        let p = if cell < other {
            pi.images[d][cell as usize].vertices()[0]
        } else {
            swap(pi.images[d][other as usize].vertices()[0])
        };
        target[v as usize] = (p / n, p % n);
    }
    let vectors: Vec<Vec<Rat>> = (0..c.id_space())
        .map(|v| {
            let (a, b) = target[v];
            if a == u32::MAX {
                return Vec::new();
            }
            coords[a as usize].iter().zip(&coords[b as usize]).map(|(x, y)| x - y).collect()
        })
        .collect();
    let mut involution: Vec<Vertex> = (0..c.id_space() as u32).collect();
    for v in c.vertices() {
        involution[v as usize] = lifted[v as usize];
    }
    Ok(EssentialCycleCertificate {
        complex: c,
        involution,
        sphere: SphereMap::Vectors(vectors),
        target: Some(TargetMap { window: window.clone(), radius, map: target }),
        note,
    })
}

/// The nondegenerate images of the top simplices of a certificate in `Y²`.
pub(crate) fn pushforward(cert: &EssentialCycleCertificate, n: u32) -> Result<Vec<Simplex>> {
    let t = cert.target.as_ref().ok_or_else(|| Error::Precondition("certificate has no target map".into()))?;
    let m = cert.complex.dim().ok_or_else(|| Error::Precondition("empty certificate".into()))?;
    Ok(cert
        .complex
        .simplices(m)
        .iter()
        .map(|s| {
            Simplex::spanned_by(s.vertices().iter().map(|&v| {
                let (a, b) = t.map[v as usize];
                a * n + b
            }))
        })
        .filter(|s| s.dim() == m)
        .collect())
}
