//! Helpers shared by integration tests: a dense homology oracle, the corpus and random
//! equivariant sphere maps.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use obstructor::complex::{fixtures, parse_complex_file, SimplicialComplex, Vertex};
use obstructor::equivariant::{EssentialCycleCertificate, SphereMap};
use rand::seq::SliceRandom;
use rand::Rng;

/// Dense Gaussian elimination on byte rows; deliberately shares nothing with the library.
pub fn dense_rank(mut rows: Vec<Vec<u8>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] == 1) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i][c] == 1 {
                for k in 0..ncols {
                    rows[i][k] ^= rows[rank][k];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Boundary matrix rebuilt from vertex lists by subset tests.
pub fn dense_boundary(c: &SimplicialComplex, j: usize) -> Vec<Vec<u8>> {
    let lower = c.simplices(j - 1);
    let upper = c.simplices(j);
    lower
        .iter()
        .map(|f| upper.iter().map(|s| f.vertices().iter().all(|v| s.vertices().contains(v)) as u8).collect())
        .collect()
}

pub fn oracle_betti(c: &SimplicialComplex) -> Vec<usize> {
    let top = c.dim().unwrap();
    let rank = |j: usize| if j == 0 || j > top { 0 } else { dense_rank(dense_boundary(c, j)) };
    (0..=top).map(|j| c.num_simplices(j) - rank(j) - rank(j + 1)).collect()
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

/// Every corpus complex by file stem, in name order.
pub fn corpus() -> BTreeMap<String, SimplicialComplex> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(corpus_dir()).expect("corpus directory") {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "cplx") {
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            out.insert(name, parse_complex_file(&path).expect("corpus file parses"));
        }
    }
    out
}

/// Replaces every facet containing `sigma` by the cone from `c` over its boundary part.
fn stellar(facets: &[Vec<Vertex>], sigma: &[Vertex], c: Vertex) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for f in facets {
        if sigma.iter().all(|v| f.contains(v)) {
            for x in sigma {
                let mut g: Vec<Vertex> = f.iter().copied().filter(|v| v != x).collect();
                g.push(c);
                g.sort_unstable();
                out.push(g);
            }
        } else {
            out.push(f.clone());
        }
    }
    out
}

/// The antipodal `d`-sphere after `steps` random stellar subdivisions of antipodal
/// simplex pairs, mapped to the cross-polytope by sending each new vertex where a random
/// vertex of its carrier goes, then composed with a random signed permutation of axes.
/// Every step keeps the map simplicial and equivariant.
pub fn random_sphere_certificate(rng: &mut impl Rng, d: usize, steps: usize) -> EssentialCycleCertificate {
    let base = fixtures::cross_polytope(d);
    let mut labels: Vec<String> = base.labels().to_vec();
    let mut facets: Vec<Vec<Vertex>> = base.facets().iter().map(|f| f.vertices().to_vec()).collect();
    let mut inv = fixtures::cross_polytope_antipode(d);
    let mut map: Vec<Vertex> = (0..inv.len() as Vertex).collect();
    let mut done = 0;
    while done < steps {
        let f = facets.choose(rng).unwrap().clone();
        let size = rng.gen_range(2..=f.len());
        let sigma: Vec<Vertex> = {
            let mut s: Vec<Vertex> = f.choose_multiple(rng, size).copied().collect();
            s.sort_unstable();
            s
        };
        let partner: Vec<Vertex> = sigma.iter().map(|&v| inv[v as usize]).collect();
        if sigma.iter().any(|v| partner.contains(v)) {
            continue;
        }
        // sigma and its partner must not share a facet, or the second cone would undo the first
        if facets.iter().any(|f| sigma.iter().chain(&partner).all(|v| f.contains(v))) {
            continue;
        }
        let n = labels.len() as Vertex;
        facets = stellar(&facets, &sigma, n);
        facets = stellar(&facets, &partner, n + 1);
        labels.push(format!("c{n}"));
        labels.push(format!("c{}", n + 1));
        inv.extend([n + 1, n]);
        let x = *sigma.choose(rng).unwrap();
        map.push(map[x as usize]);
        map.push(map[inv[x as usize] as usize]);
        done += 1;
    }
    let mut axes: Vec<Vertex> = (0..=d as Vertex).collect();
    axes.shuffle(rng);
    let flips: Vec<Vertex> = (0..=d).map(|_| rng.gen_range(0..2)).collect();
    let map = map.iter().map(|&t| 2 * axes[(t / 2) as usize] + ((t % 2) ^ flips[(t / 2) as usize])).collect();
    EssentialCycleCertificate {
        complex: SimplicialComplex::new(labels, facets).expect("stellar subdivision stays a complex"),
        involution: inv,
        sphere: SphereMap::CrossPolytope { dim: d, map },
        target: None,
        note: format!("antipodal {d}-sphere after {steps} stellar pairs"),
    }
}

/// Two disjoint copies of a certificate with the same sphere map: still a free,
/// equivariant mod-2 cycle, but of even degree.
pub fn doubled(cert: &EssentialCycleCertificate) -> EssentialCycleCertificate {
    let c = &cert.complex;
    let n = c.id_space() as Vertex;
    let labels: Vec<String> = c.labels().iter().map(|l| format!("a{l}")).chain(c.labels().iter().map(|l| format!("b{l}"))).collect();
    let facets: Vec<Vec<Vertex>> = c
        .facets()
        .iter()
        .flat_map(|f| [f.vertices().to_vec(), f.vertices().iter().map(|v| v + n).collect()])
        .collect();
    let involution = cert.involution.iter().copied().chain(cert.involution.iter().map(|v| v + n)).collect();
    let sphere = match &cert.sphere {
        SphereMap::CrossPolytope { dim, map } => {
            SphereMap::CrossPolytope { dim: *dim, map: map.iter().chain(map.iter()).copied().collect() }
        }
        SphereMap::Vectors(x) => SphereMap::Vectors(x.iter().chain(x.iter()).cloned().collect()),
    };
    EssentialCycleCertificate {
        complex: SimplicialComplex::new(labels, facets).unwrap(),
        involution,
        sphere,
        target: None,
        note: format!("two copies of [{}]", cert.note),
    }
}

/// Degree by counting, for every top cell of the cross-polytope, the source facets
/// landing on it; all counts must agree mod 2.
pub fn counted_degree(cert: &EssentialCycleCertificate) -> Option<u8> {
    let SphereMap::CrossPolytope { dim, map } = &cert.sphere else { return None };
    let mut hits: BTreeMap<Vec<Vertex>, u32> = BTreeMap::new();
    for f in cert.complex.facets() {
        let mut img: Vec<Vertex> = f.vertices().iter().map(|&v| map[v as usize]).collect();
        img.sort_unstable();
        img.dedup();
        if img.len() == dim + 1 {
            *hits.entry(img).or_default() += 1;
        }
    }
    let target = fixtures::cross_polytope(*dim);
    let parities: Vec<u8> =
        target.facets().iter().map(|t| (hits.get(t.vertices()).copied().unwrap_or(0) % 2) as u8).collect();
    parities.iter().all(|&p| p == parities[0]).then_some(parities[0])
}
