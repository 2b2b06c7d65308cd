use crate::complex::{fixtures, join_complexes, Vertex};
use crate::equivariant::{verify_essential_cycle, EssentialCycleCertificate, SphereMap};
use crate::error::{Error, Result};
use crate::rational::{int, Rat};

/// The identity certificate on the boundary of the `(d+1)`-cross-polytope.
pub fn cross_polytope_certificate(d: usize) -> EssentialCycleCertificate {
    let complex = fixtures::cross_polytope(d);
    let n = complex.id_space() as Vertex;
    EssentialCycleCertificate {
        involution: fixtures::cross_polytope_antipode(d),
        sphere: SphereMap::CrossPolytope { dim: d, map: (0..n).collect() },
        complex,
        target: None,
        note: format!("antipodal {d}-sphere"),
    }
}

fn as_vectors(sphere: &SphereMap, ids: usize) -> Vec<Vec<Rat>> {
    match sphere {
        SphereMap::Vectors(v) => v.clone(),
        SphereMap::CrossPolytope { dim, map } => (0..ids)
            .map(|v| {
                let mut x = vec![int(0); dim + 1];
                let t = map[v] as usize;
                x[t / 2] = int(if t.is_multiple_of(2) { 1 } else { -1 });
                x
            })
            .collect(),
    }
}

/// Join of two certificates without checking them: the joined complex, the joined
/// involution and the joined sphere map. Target maps are not carried over.
pub fn join_certificates(a: &EssentialCycleCertificate, b: &EssentialCycleCertificate) -> Result<EssentialCycleCertificate> {
    let (da, db) = match (a.sphere.sphere_dim(), b.sphere.sphere_dim()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::Precondition("a sphere map has no dimension".into())),
    };
    let joined = join_complexes(&a.complex, &b.complex);
    let (na, nb) = (a.complex.id_space(), b.complex.id_space());
    let mut involution = vec![0; na + nb];
    for v in 0..na {
        involution[joined.left[v] as usize] = joined.left[a.involution[v] as usize];
    }
    for w in 0..nb {
        involution[joined.right[w] as usize] = joined.right[b.involution[w] as usize];
    }
    let sphere = match (&a.sphere, &b.sphere) {
        (SphereMap::CrossPolytope { map: ma, .. }, SphereMap::CrossPolytope { map: mb, .. }) => {
            let shift = 2 * (da as Vertex + 1);
            let mut map = vec![0; na + nb];
            for v in 0..na {
                map[joined.left[v] as usize] = ma[v];
            }
            for w in 0..nb {
                map[joined.right[w] as usize] = mb[w] + shift;
            }
            SphereMap::CrossPolytope { dim: da + db + 1, map }
        }
        _ => {
            let (va, vb) = (as_vectors(&a.sphere, na), as_vectors(&b.sphere, nb));
            let mut out = vec![Vec::new(); na + nb];
            for v in 0..na {
                if !va[v].is_empty() {
                    out[joined.left[v] as usize] = va[v].iter().cloned().chain((0..=db).map(|_| int(0))).collect();
                }
            }
            for w in 0..nb {
                if !vb[w].is_empty() {
                    out[joined.right[w] as usize] = (0..=da).map(|_| int(0)).chain(vb[w].iter().cloned()).collect();
                }
            }
            SphereMap::Vectors(out)
        }
    };
    Ok(EssentialCycleCertificate {
        complex: joined.complex,
        involution,
        sphere,
        target: None,
        note: format!("join of [{}] and [{}]", a.note, b.note),
    })
}

/// Join of two verified certificates, an essential cycle of dimension `m₁ + m₂ + 1`.
pub fn join_essential_cycles(a: &EssentialCycleCertificate, b: &EssentialCycleCertificate) -> Result<EssentialCycleCertificate> {
    for (name, c) in [("first", a), ("second", b)] {
        let report = verify_essential_cycle(c);
        if !report.passed() {
            let failed: Vec<&str> = report.failures().map(|c| c.name).collect();
            return Err(Error::Precondition(format!("the {name} certificate fails {}", failed.join(", "))));
        }
    }
    join_certificates(a, b)
}
