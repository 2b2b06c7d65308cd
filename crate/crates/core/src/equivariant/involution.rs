use rustc_hash::FxHashMap;

use crate::complex::{barycentric_subdivide, Simplex, SimplicialComplex, SimplicialMap, Vertex};
use crate::error::{Error, Result};
use crate::gf2::CochainZ2;

/// A simplicial involution without setwise-fixed simplices.
#[derive(Clone, Debug, PartialEq)]
pub struct Involution {
    complex: SimplicialComplex,
    perm: Vec<Vertex>,
}

impl Involution {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// The vertex permutation over the identifier space (non-vertices map to themselves).
    pub fn perm(&self) -> &[Vertex] {
        &self.perm
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.perm[v as usize]
    }

    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::spanned_by(s.vertices().iter().map(|&v| self.perm[v as usize]))
    }

    /// Orbit pairs `(v, a v)` with `v < a v`.
    pub fn orbits(&self) -> Vec<(Vertex, Vertex)> {
        self.complex.vertices().filter(|&v| v < self.perm[v as usize]).map(|v| (v, self.perm[v as usize])).collect()
    }

    /// Text form: one `p <v> <w>` line per orbit, labels from the complex.
    pub fn to_text(&self) -> String {
        self.orbits().iter().map(|&(v, w)| format!("p {} {}\n", self.complex.label(v), self.complex.label(w))).collect()
    }
}

fn extend_perm(c: &SimplicialComplex, perm: &[Vertex]) -> Result<Vec<Vertex>> {
    let n = c.id_space();
    if perm.len() != n {
        return Err(Error::NotAnInvolution(format!("permutation has {} entries, expected {}", perm.len(), n)));
    }
    let mut out: Vec<Vertex> = (0..n as u32).collect();
    for v in c.vertices() {
        let w = perm[v as usize];
        if w as usize >= n || !c.contains(&Simplex::vertex(w)) {
            return Err(Error::NotAnInvolution(format!("{} is sent outside the vertex set", c.label(v))));
        }
        if perm[w as usize] != v {
            return Err(Error::NotAnInvolution(format!("{} does not return to itself", c.label(v))));
        }
        out[v as usize] = w;
    }
    Ok(out)
}

/// Simplices mapped onto themselves (as sets) by `perm`.
pub fn fixed_simplices(c: &SimplicialComplex, perm: &[Vertex]) -> Vec<Simplex> {
    c.all_simplices()
        .filter(|s| Simplex::spanned_by(s.vertices().iter().map(|&v| perm[v as usize])) == **s)
        .cloned()
        .collect()
}

/// Validates an order-two vertex permutation as a free simplicial involution.
pub fn check_involution(c: &SimplicialComplex, perm: &[Vertex]) -> Result<Involution> {
    let perm = extend_perm(c, perm)?;
    for s in c.all_simplices() {
        let img = Simplex::spanned_by(s.vertices().iter().map(|&v| perm[v as usize]));
        if !c.contains(&img) {
            return Err(Error::NotSimplicial(format!("{} is sent to a non-simplex", c.format_simplex(s))));
        }
    }
    if let Some(s) = fixed_simplices(c, &perm).first() {
        return Err(Error::NotFree(format!("{} is fixed", c.format_simplex(s))));
    }
    Ok(Involution { complex: c.clone(), perm })
}

/// Parses `p <v> <w>` lines into a permutation over the identifier space of `c`.
pub fn parse_involution(c: &SimplicialComplex, text: &str) -> Result<Vec<Vertex>> {
    let lookup = c.label_lookup();
    let mut perm: Vec<Vertex> = (0..c.id_space() as u32).collect();
    let mut seen = vec![false; c.id_space()];
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "p" {
            return Err(Error::Parse { line: i + 1, msg: "expected `p <v> <w>`".into() });
        }
        let get = |t: &str| lookup.get(t).copied().ok_or_else(|| Error::UnknownVertex(t.to_string()));
        let (v, w) = (get(toks[1])?, get(toks[2])?);
        if seen[v as usize] || seen[w as usize] || v == w {
            return Err(Error::Parse { line: i + 1, msg: "vertex appears in more than one pair".into() });
        }
        seen[v as usize] = true;
        seen[w as usize] = true;
        perm[v as usize] = w;
        perm[w as usize] = v;
    }
    Ok(perm)
}

/// `Σ = Σ̃ / Z₂` with its covering projection.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    /// The cover actually used, after any automatic subdivision.
    pub cover: SimplicialComplex,
    pub involution: Vec<Vertex>,
    pub quotient: SimplicialComplex,
    /// Cover identifier to quotient identifier (`u32::MAX` off the vertex set).
    pub projection: Vec<Vertex>,
    /// Quotient identifier to its lowest cover vertex.
    pub section: Vec<Vertex>,
    pub subdivisions: usize,
}

impl QuotientPresentation {
    pub fn projection_map(&self) -> Result<SimplicialMap> {
        let vm = self.projection.iter().map(|&v| if v == u32::MAX { 0 } else { v }).collect();
        SimplicialMap::new(self.cover.clone(), self.quotient.clone(), vm)
    }

    /// The sum of all top quotient simplices.
    pub fn fundamental_chain(&self) -> crate::gf2::ChainZ2 {
        let d = self.quotient.dim().unwrap_or(0);
        crate::gf2::ChainZ2::new(d, self.quotient.simplices(d).iter().cloned()).expect("uniform dimension")
    }
}

/// The first failure of quotient regularity: a simplex containing an orbit pair, or two
/// simplices outside one orbit with the same orbit set.
fn irregularity(c: &SimplicialComplex, perm: &[Vertex]) -> Option<String> {
    let orbit = |v: Vertex| v.min(perm[v as usize]);
    let mut seen: FxHashMap<Vec<Vertex>, &Simplex> = FxHashMap::default();
    for s in c.all_simplices() {
        let mut key: Vec<Vertex> = s.vertices().iter().map(|&v| orbit(v)).collect();
        key.sort_unstable();
        if key.windows(2).any(|w| w[0] == w[1]) {
            return Some(format!("{} contains an orbit pair", c.format_simplex(s)));
        }
        match seen.get(&key) {
            Some(t) => {
                let img = Simplex::spanned_by(t.vertices().iter().map(|&v| perm[v as usize]));
                if img != *s {
                    return Some(format!("{} and {} have the same image", c.format_simplex(t), c.format_simplex(s)));
                }
            }
            None => {
                seen.insert(key, s);
            }
        }
    }
    None
}

/// Builds the simplicial quotient, subdividing barycentrically (at most twice) until the
/// quotient is regular.
pub fn quotient_complex(inv: &Involution) -> Result<QuotientPresentation> {
    let mut cover = inv.complex.clone();
    let mut perm = inv.perm.clone();
    let mut rounds = 0;
    while let Some(_why) = irregularity(&cover, &perm) {
        if rounds == 2 {
            return Err(Error::QuotientIrregular(rounds));
        }
        let sd = barycentric_subdivide(&cover);
        let lifted = sd.lift_vertex_map(&cover, |v| perm[v as usize])?;
        let mut full: Vec<Vertex> = (0..sd.complex.id_space() as u32).collect();
        for v in sd.complex.vertices() {
            full[v as usize] = lifted[v as usize];
        }
        cover = sd.complex;
        perm = full;
        rounds += 1;
    }
    let mut section: Vec<Vertex> = cover.vertices().filter(|&v| v < perm[v as usize]).collect();
    section.sort_unstable();
    let mut projection = vec![u32::MAX; cover.id_space()];
    for (q, &v) in section.iter().enumerate() {
        projection[v as usize] = q as u32;
        projection[perm[v as usize] as usize] = q as u32;
    }
    let labels: Vec<String> = section.iter().map(|&v| cover.label(v).to_string()).collect();
    let gens: Vec<Simplex> = cover
        .facets()
        .iter()
        .map(|s| Simplex::spanned_by(s.vertices().iter().map(|&v| projection[v as usize])))
        .collect();
    let quotient = SimplicialComplex::from_generators(labels.into(), None, gens, None);
    Ok(QuotientPresentation { cover, involution: perm, quotient, projection, section, subdivisions: rounds })
}

/// `w¹`: a quotient edge gets 1 when its lift from the section vertex of its lower end
/// lands outside the section.
pub fn double_cover_class(qp: &QuotientPresentation) -> CochainZ2 {
    let support: Vec<Simplex> = qp
        .quotient
        .simplices(1)
        .iter()
        .filter(|e| {
            let (x, y) = (e.vertices()[0], e.vertices()[1]);
            let sx = qp.section[x as usize];
            let sy = qp.section[y as usize];
            !qp.cover.contains(&Simplex::spanned_by([sx, sy]))
        })
        .cloned()
        .collect();
    CochainZ2::new(1, support).expect("edges")
}

/// The double cover classified by a 1-cocycle: vertex `(x, sheet)` has identifier
/// `2x + sheet`, and the involution swaps sheets.
pub fn cover_from_class(quotient: &SimplicialComplex, w: &CochainZ2) -> Result<(SimplicialComplex, Vec<Vertex>)> {
    let n = quotient.id_space();
    let labels: Vec<String> = (0..2 * n).map(|i| format!("{}#{}", quotient.labels()[i / 2], i % 2)).collect();
    let mut gens = Vec::new();
    for f in quotient.facets() {
        let v = f.vertices();
        for sheet in 0..2u32 {
            let lift: Vec<Vertex> = v
                .iter()
                .map(|&x| {
                    let flip = x != v[0] && w.contains(&Simplex::spanned_by([v[0], x]));
                    2 * x + (sheet ^ flip as u32)
                })
                .collect();
            gens.push(Simplex::spanned_by(lift));
        }
    }
    for f in quotient.facets() {
        for e in f.all_faces().filter(|e| e.dim() == 2) {
            let [a, b, c] = [e.vertices()[0], e.vertices()[1], e.vertices()[2]];
            let val = |x, y| w.contains(&Simplex::spanned_by([x, y])) as u8;
            if val(a, b) ^ val(b, c) ^ val(a, c) != 0 {
                return Err(Error::Precondition("class is not a cocycle".into()));
            }
        }
    }
    let c = SimplicialComplex::from_generators(labels.into(), None, gens, None);
    let perm = (0..2 * n as u32).map(|i| i ^ 1).collect();
    Ok((c, perm))
}
