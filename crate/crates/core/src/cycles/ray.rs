use super::{equivariant_certificate, pushforward, swap_id, DiagonalDual};
use crate::complex::{iterated_star_neighborhood, Simplex, SimplicialComplex, Vertex};
use crate::cycles::diagonal_dual_cocycle;
use crate::deleted::{complement_from, diagonal_distances};
use crate::equivariant::{verify_essential_cycle, EssentialCycleCertificate};
use crate::error::{Error, Result};
use crate::gf2::{solve_bounding_chain, ChainZ2};
use crate::rational::int;

/// A window with a straight ray `α_0 … α_L` attached at `α_0`.
///
/// Ray vertices `α_1 … α_L` take the identifiers after the window's, labelled
/// `ray1 … rayL`. Coordinates gain one axis: window points sit at height 0 and `α_i`
/// sits at height `i` above the attachment point.
#[derive(Clone, Debug)]
pub struct WedgeComplex {
    pub base: SimplicialComplex,
    pub complex: SimplicialComplex,
    /// `α_0, …, α_L` as identifiers of `complex`; `α_0` is the attachment vertex.
    pub ray: Vec<Vertex>,
}

impl WedgeComplex {
    pub fn attach(&self) -> Vertex {
        self.ray[0]
    }

    pub fn length(&self) -> usize {
        self.ray.len() - 1
    }

    /// Window identifiers coincide in both complexes; product identifiers do not.
    fn lift_pair(&self, p: Vertex) -> Vertex {
        let (nx, nw) = (self.base.id_space() as u32, self.complex.id_space() as u32);
        (p / nx) * nw + p % nx
    }
}

pub fn wedge_with_ray(base: &SimplicialComplex, attach: Vertex, length: usize) -> Result<WedgeComplex> {
    let coords = base.coords().ok_or_else(|| Error::Precondition("window has no coordinates".into()))?;
    if !base.contains(&Simplex::vertex(attach)) {
        return Err(Error::UnknownVertex(attach.to_string()));
    }
    if length == 0 {
        return Err(Error::Precondition("ray length must be positive".into()));
    }
    let n = base.id_space();
    let mut labels: Vec<String> = base.labels().to_vec();
    let lookup = base.label_lookup();
    for i in 1..=length {
        let l = format!("ray{i}");
        if lookup.contains_key(l.as_str()) {
            return Err(Error::Precondition(format!("window already has a vertex labelled {l}")));
        }
        labels.push(l);
    }
    let mut all: Vec<Vec<_>> = coords.iter().map(|c| c.iter().cloned().chain([int(0)]).collect()).collect();
    for i in 1..=length {
        let mut c = coords[attach as usize].clone();
        c.push(int(i as i64));
        all.push(c);
    }
    let ray: Vec<Vertex> = std::iter::once(attach).chain((0..length).map(|i| (n + i) as Vertex)).collect();
    let gens = base.facets().into_iter().chain(ray.windows(2).map(|w| Simplex::spanned_by([w[0], w[1]])));
    let complex = SimplicialComplex::from_generators(labels.into(), Some(all.into()), gens, None);
    Ok(WedgeComplex { base: base.clone(), complex, ray })
}

/// Which way the union-a-ray step went.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RayBranch {
    /// The input cycle already bounds in the lower level; the doubled filling is returned.
    BoundsInLevel,
    /// The input cycle was joined to `{α_0} × h`, where `h` bounds the star neighborhood
    /// of `α_0` of the given radius, a cycle linking the diagonal once.
    LinkingSlice { search_radius: usize, linking: u8 },
}

#[derive(Clone, Debug)]
pub struct UnionRayResult {
    pub certificate: EssentialCycleCertificate,
    pub branch: RayBranch,
    /// Number of ray steps the cone over the linking cycle travels.
    pub ray_steps: usize,
}

/// The slice cycle `{α_0} × h` for the first star radius whose boundary sphere stays at
/// distance `≥ far` from the diagonal and links it once.
fn linking_slice(
    x: &SimplicialComplex,
    attach: Vertex,
    far: usize,
    dual: &DiagonalDual,
) -> Result<(usize, ChainZ2, Vec<Simplex>)> {
    let n = x.id_space() as u32;
    let d = dual.cocycle.dim();
    let dist = diagonal_distances(x);
    let point = x.subcomplex([Simplex::vertex(attach)])?;
    let mut last = 0;
    for rho in 1.. {
        let nbhd = iterated_star_neighborhood(x, &point, rho)?;
        if nbhd.total_simplices() == last {
            break;
        }
        last = nbhd.total_simplices();
        let disk = nbhd.simplices(d).to_vec();
        let h = ChainZ2::new(d, disk.iter().cloned())?.boundary();
        if h.is_zero() {
            continue;
        }
        let g = h.map_vertices(|w| attach * n + w);
        if g.vertex_set().iter().any(|&p| (dist[p as usize] as usize) < far) {
            continue;
        }
        let filling = ChainZ2::new(d, disk.iter().cloned())?.map_vertices(|w| attach * n + w);
        if dual.linking_of_boundary(&filling)? == 1 {
            return Ok((rho, h, disk));
        }
    }
    Err(Error::Construction("no cycle around the attachment point links the diagonal; enlarge the window".into()))
}

/// From an essential cycle at radius `big_r` on the window, an essential cycle one
/// dimension higher at radius `r` on the window with a ray attached.
pub fn union_ray_cycle(
    wedge: &WedgeComplex,
    r: usize,
    big_r: usize,
    cert: &EssentialCycleCertificate,
) -> Result<UnionRayResult> {
    if r == 0 || r >= big_r {
        return Err(Error::Precondition(format!("radii must satisfy 0 < r < R, got r = {r}, R = {big_r}")));
    }
    if wedge.length() < 2 * r {
        return Err(Error::Precondition(format!("ray length {} is shorter than 2r = {}", wedge.length(), 2 * r)));
    }
    let report = verify_essential_cycle(cert);
    if !report.passed() {
        return Err(Error::Precondition("the input certificate does not verify".into()));
    }
    let x = &wedge.base;
    let target = cert.target.as_ref().ok_or_else(|| Error::Precondition("the input certificate has no target map".into()))?;
    if target.window.labels() != x.labels() {
        return Err(Error::Precondition("the certificate targets a different window".into()));
    }
    if target.radius < big_r {
        return Err(Error::Precondition(format!("the certificate reaches radius {}, below R = {big_r}", target.radius)));
    }
    let n = x.id_space() as u32;
    let f = ChainZ2::new(cert.dim().unwrap_or(0), pushforward(cert, n)?)?;
    let d = f.dim() + 1;
    let dist = diagonal_distances(x);
    let level = complement_from(x, &dist, r, Some(d));
    let double = |half: Vec<Simplex>, swap: &dyn Fn(Vertex) -> Vertex| {
        let mut cells = half.clone();
        cells.extend(half.iter().map(|s| Simplex::spanned_by(s.vertices().iter().map(|&v| swap(v)))));
        cells
    };
    let lift = |s: &Simplex| Simplex::from_sorted(s.vertices().iter().map(|&p| wedge.lift_pair(p)).collect());
    let swap_w = swap_id(wedge.complex.id_space() as u32);

    if let Some(big_g) = solve_bounding_chain(&level, &f)? {
        let half: Vec<Simplex> = big_g.support().iter().map(lift).collect();
        let note = format!("union with a ray at r = {r}: the cycle bounds in the level");
        let certificate = equivariant_certificate(&wedge.complex, r, double(half, &swap_w), note)?;
        return Ok(UnionRayResult { certificate, branch: RayBranch::BoundsInLevel, ray_steps: 0 });
    }

    let dual = diagonal_dual_cocycle(x, d)?;
    let attach = wedge.attach();
    let (rho, h, disk) = linking_slice(x, attach, big_r, &dual)?;
    let g = h.map_vertices(|w| attach * n + w);
    let rhs = f.add(&g)?;
    let big_g = solve_bounding_chain(&level, &rhs)?.ok_or_else(|| {
        Error::Construction(format!("the cycle plus the linking slice does not bound in X_{r}; enlarge the window"))
    })?;
    let nw = wedge.complex.id_space() as u32;
    let ray = &wedge.ray;
    let mut half: Vec<Simplex> = big_g.support().iter().map(lift).collect();
    // prism α[0..r] × h: the staircase of each ray edge with each simplex of h
    for i in 0..r {
        let (lo, hi) = (ray[i], ray[i + 1]);
        for tau in h.support() {
            let t = tau.vertices();
            for j in 0..t.len() {
                let verts = t[..=j].iter().map(|&w| lo * nw + w).chain(t[j..].iter().map(|&w| hi * nw + w));
                half.push(Simplex::from_sorted(verts.collect()));
            }
        }
    }
    // cap α_r × disk closes the prism off at the far end of the ray
    let top = ray[r];
    half.extend(disk.iter().map(|s| Simplex::from_sorted(s.vertices().iter().map(|&w| top * nw + w).collect())));
    let note = format!(
        "union with a ray at r = {r} from R = {big_r}: linking slice at star radius {rho}, cone along {r} ray steps"
    );
    let certificate = equivariant_certificate(&wedge.complex, r, double(half, &swap_w), note)?;
    Ok(UnionRayResult { certificate, branch: RayBranch::LinkingSlice { search_radius: rho, linking: 1 }, ray_steps: r })
}
