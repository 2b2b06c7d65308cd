use rustc_hash::{FxHashMap, FxHashSet};

use super::delta::DeltaMap;
use super::{DeltaComplex, Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::rational::{int, Rat};

/// A simplicial subdivision together with the input cell carrying each new vertex.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// Per vertex identifier: the input cell `(dimension, index)` whose interior contains
    /// the vertex.
    pub carrier: Vec<(usize, u32)>,
    /// Number of barycentric rounds applied (1 or 2).
    pub rounds: usize,
    offsets: Vec<u32>,
}

impl Subdivision {
    /// The vertex at the barycenter of input cell `(d, c)` (single-round subdivisions).
    pub fn barycenter(&self, d: usize, c: u32) -> Vertex {
        debug_assert_eq!(self.rounds, 1);
        self.offsets[d] + c
    }

    /// For subdivisions of simplicial complexes: the lowest vertex of the carrier, a
    /// simplicial approximation of the identity back to the input.
    pub fn to_input_vertex(&self, input: &SimplicialComplex, v: Vertex) -> Vertex {
        let (d, c) = self.carrier[v as usize];
        input.simplices(d)[c as usize].vertices()[0]
    }

    /// Lifts a simplicial map of the input that is injective on every simplex (such as an
    /// involution) to the subdivision: the barycenter of `σ` goes to that of `f(σ)`.
    pub fn lift_vertex_map(&self, input: &SimplicialComplex, f: impl Fn(Vertex) -> Vertex) -> Result<Vec<Vertex>> {
        let mut out = vec![u32::MAX; self.complex.id_space()];
        for v in self.complex.vertices() {
            let (d, c) = self.carrier[v as usize];
            let img = Simplex::spanned_by(input.simplices(d)[c as usize].vertices().iter().map(|&x| f(x)));
            if img.dim() != d {
                return Err(Error::NotSimplicial("map collapses a simplex".into()));
            }
            let idx = input.index_of(&img).ok_or_else(|| Error::NotSimplicial("image is not a simplex".into()))?;
            out[v as usize] = self.barycenter(d, idx as u32);
        }
        Ok(out)
    }
}

type CellKey = (usize, u32, Vec<u32>);

/// One barycentric round on a Δ-complex. A cell of the result is a flag of faces of an
/// input cell `(e, c)`, recorded as a chain of vertex-position masks ending at the full
/// mask. The barycenter of input cell `(e, c)` is 0-cell `offsets[e] + c`.
struct SdRound {
    delta: DeltaComplex,
    keys: Vec<Vec<CellKey>>,
    index: Vec<FxHashMap<CellKey, u32>>,
    vertex_sets: Vec<Vec<Vec<u32>>>,
}

fn chains_ending_at(mask: u32, out: &mut Vec<Vec<u32>>, suffix: &mut Vec<u32>) {
    suffix.push(mask);
    out.push(suffix.iter().rev().copied().collect());
    let mut s = (mask - 1) & mask;
    while s != 0 {
        chains_ending_at(s, out, suffix);
        s = (s - 1) & mask;
    }
    suffix.pop();
}

/// Re-indexes the bits of `mask` that lie in `within` to consecutive positions.
fn compress(mask: u32, within: u32) -> u32 {
    let mut out = 0;
    let mut k = 0;
    for p in 0..32 {
        if within >> p & 1 == 1 {
            if mask >> p & 1 == 1 {
                out |= 1 << k;
            }
            k += 1;
        }
    }
    out
}

fn permute_mask(mask: u32, perm: &[u8]) -> u32 {
    (0..perm.len()).filter(|&p| mask >> p & 1 == 1).fold(0, |acc, p| acc | 1 << perm[p])
}

fn sd_round(d: &DeltaComplex) -> SdRound {
    let top = d.dim().unwrap_or(0);
    let mut keys: Vec<Vec<CellKey>> = vec![Vec::new(); top + 1];
    for e in 0..=top {
        let full = (1u32 << (e + 1)) - 1;
        let mut chains = Vec::new();
        chains_ending_at(full, &mut chains, &mut Vec::new());
        for c in 0..d.num_cells(e) as u32 {
            for ch in &chains {
                keys[ch.len() - 1].push((e, c, ch.clone()));
            }
        }
    }
    for k in keys.iter_mut() {
        k.sort();
    }
    let index: Vec<FxHashMap<CellKey, u32>> =
        keys.iter().map(|ks| ks.iter().cloned().enumerate().map(|(i, key)| (key, i as u32)).collect()).collect();
    let mut offsets = Vec::with_capacity(top + 1);
    let mut acc = 0u32;
    for e in 0..=top {
        offsets.push(acc);
        acc += d.num_cells(e) as u32;
    }
    let mut faces: Vec<Vec<Vec<u32>>> = vec![Vec::new(); top + 1];
    let mut vertex_sets: Vec<Vec<Vec<u32>>> = vec![Vec::new(); top + 1];
    for k in 0..=top {
        for (e, c, ch) in &keys[k] {
            let mut vs: Vec<u32> =
                ch.iter().map(|&m| offsets[m.count_ones() as usize - 1] + d.face(*e, *c, m)).collect();
            vs.sort_unstable();
            vertex_sets[k].push(vs);
            if k == 0 {
                faces[0].push(Vec::new());
                continue;
            }
            let mut f = Vec::with_capacity(k + 1);
            for i in 0..k {
                let mut sub = ch.clone();
                sub.remove(i);
                f.push(index[k - 1][&(*e, *c, sub)]);
            }
            let below = ch[k - 1];
            let e2 = below.count_ones() as usize - 1;
            let c2 = d.face(*e, *c, below);
            let sub: Vec<u32> = ch[..k].iter().map(|&m| compress(m, below)).collect();
            f.push(index[k - 1][&(e2, c2, sub)]);
            faces[k].push(f);
        }
    }
    let delta = DeltaComplex::from_faces(faces).expect("subdivision satisfies face identities");
    SdRound { delta, keys, index, vertex_sets }
}

impl SdRound {
    /// Distinct cells have distinct vertex sets, so the round is a simplicial complex.
    fn is_simplicial(&self) -> bool {
        self.vertex_sets.iter().all(|vs| {
            let mut seen = FxHashSet::default();
            vs.iter().all(|v| seen.insert(v.as_slice()))
        })
    }

    fn lift(&self, f: &DeltaMap) -> DeltaMap {
        let mut cell = Vec::new();
        let mut perm = Vec::new();
        for (k, ks) in self.keys.iter().enumerate() {
            let mut cs = Vec::with_capacity(ks.len());
            for (e, c, ch) in ks {
                let p = &f.perm[*e][*c as usize];
                let img: Vec<u32> = ch.iter().map(|&m| permute_mask(m, p)).collect();
                cs.push(self.index[k][&(*e, f.cell[*e][*c as usize], img)]);
            }
            perm.push(vec![(0..=k as u8).collect(); cs.len()]);
            cell.push(cs);
        }
        DeltaMap { cell, perm }
    }

    fn simplices(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.vertex_sets.iter().flatten().map(|v| Simplex::from_sorted(v.clone()))
    }
}

/// Barycentric subdivision of a simplicial complex. New vertices are labelled by the
/// simplices they subdivide, e.g. `[a,b]`, and sit at exact barycenters when the input
/// carries coordinates.
pub fn barycentric_subdivide(c: &SimplicialComplex) -> Subdivision {
    let delta = DeltaComplex::from_simplicial(c);
    let round = sd_round(&delta);
    let mut labels = Vec::new();
    let mut carrier = Vec::new();
    let mut coords: Option<Vec<Vec<Rat>>> = c.coords().map(|_| Vec::new());
    for d in 0..=c.dim().unwrap_or(0) {
        for (i, s) in c.simplices(d).iter().enumerate() {
            labels.push(format!("[{}]", s.vertices().iter().map(|&v| c.label(v)).collect::<Vec<_>>().join(",")));
            carrier.push((d, i as u32));
            if let Some(cs) = coords.as_mut() {
                let k = c.coord(s.vertices()[0]).unwrap().len();
                let n = int(s.vertices().len() as i64);
                let p = (0..k)
                    .map(|j| s.vertices().iter().map(|&v| c.coord(v).unwrap()[j].clone()).sum::<Rat>() / &n)
                    .collect();
                cs.push(p);
            }
        }
    }
    let offsets = offsets_of(&delta);
    let complex = SimplicialComplex::from_generators(labels.into(), coords.map(|v| v.into()), round.simplices(), None);
    Subdivision { complex, carrier, rounds: 1, offsets }
}

fn offsets_of(d: &DeltaComplex) -> Vec<u32> {
    let mut acc = 0;
    (0..=d.dim().unwrap_or(0))
        .map(|e| {
            let o = acc;
            acc += d.num_cells(e) as u32;
            o
        })
        .collect()
}

/// Subdivides a Δ-complex into a simplicial complex: once, or twice when distinct cells
/// of the first round share a vertex set. When `map` is given (a cellwise self-map such
/// as an involution) its lift to the result is returned as a vertex map.
pub fn barycentric_subdivide_delta(d: &DeltaComplex, map: Option<&DeltaMap>) -> Result<(Subdivision, Option<Vec<Vertex>>)> {
    let r1 = sd_round(d);
    let m1 = map.map(|f| r1.lift(f));
    if r1.is_simplicial() {
        let carrier: Vec<(usize, u32)> = r1.keys[0].iter().map(|(e, c, _)| (*e, *c)).collect();
        let labels: Vec<String> = carrier.iter().map(|(e, c)| format!("{e}:{c}")).collect();
        let vm = m1.map(|f| f.cell[0].clone());
        let complex = SimplicialComplex::from_generators(labels.into(), None, r1.simplices(), None);
        return Ok((Subdivision { complex, carrier, rounds: 1, offsets: offsets_of(d) }, vm));
    }
    let r2 = sd_round(&r1.delta);
    if !r2.is_simplicial() {
        return Err(Error::Construction("second barycentric subdivision is not simplicial".into()));
    }
    let m2 = m1.map(|f| r2.lift(&f));
    let carrier: Vec<(usize, u32)> = r2.keys[0]
        .iter()
        .map(|(k, idx, _)| {
            let (e, c, _) = &r1.keys[*k][*idx as usize];
            (*e, *c)
        })
        .collect();
    let labels: Vec<String> = r2.keys[0].iter().map(|(k, idx, _)| format!("{k}:{idx}'")).collect();
    let vm = m2.map(|f| f.cell[0].clone());
    let complex = SimplicialComplex::from_generators(labels.into(), None, r2.simplices(), None);
    Ok((Subdivision { complex, carrier, rounds: 2, offsets: Vec::new() }, vm))
}
