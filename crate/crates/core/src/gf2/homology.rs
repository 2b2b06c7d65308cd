use rustc_hash::FxHashMap;

use super::bitmatrix::BitMatrix;
use super::chain::{boundary_columns, ChainZ2, CochainZ2};
use super::reduce::{sym_diff, Reduction};
use crate::complex::{Simplex, SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};

/// Unreduced mod-2 homology with explicit bases in every dimension.
#[derive(Clone, Debug)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    /// Cycle representatives of a homology basis, sorted by support.
    pub cycles: Vec<Vec<ChainZ2>>,
    /// A basis of the boundary space `B_j`.
    pub boundaries: Vec<Vec<ChainZ2>>,
}

pub fn homology(c: &SimplicialComplex) -> HomologySummary {
    let top = c.dim().map_or(0, |d| d + 1);
    let mut out = HomologySummary { betti: Vec::new(), cycles: Vec::new(), boundaries: Vec::new() };
    for j in 0..top {
        let basis = generic_basis(c, j);
        out.betti.push(basis.reps.len());
        out.boundaries.push(
            basis
                .boundary
                .reduced
                .iter()
                .filter(|col| !col.is_empty())
                .map(|col| ChainZ2::from_indices(c, j, col))
                .collect(),
        );
        out.cycles.push(basis.reps);
    }
    out
}

/// Unreduced Betti numbers from ranks alone.
pub fn betti_numbers(c: &SimplicialComplex) -> Vec<usize> {
    let top = match c.dim() {
        Some(d) => d,
        None => return Vec::new(),
    };
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|j| {
            if j == 0 || j > top {
                0
            } else {
                Reduction::new(c.num_simplices(j - 1), boundary_columns(c, j), false).rank()
            }
        })
        .collect();
    (0..=top).map(|j| c.num_simplices(j) - ranks[j] - ranks[j + 1]).collect()
}

/// Number of connected components.
pub fn component_count(c: &SimplicialComplex) -> usize {
    c.components().0
}

/// A homology basis in one dimension that can express any cycle in it.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub dim: usize,
    /// Representatives sorted by support.
    pub reps: Vec<ChainZ2>,
    /// Cocycles dual to `reps` when they were computed (dimensions 0 and 1).
    pub dual_cocycles: Option<Vec<CochainZ2>>,
    coords: Coordinates,
}

#[derive(Clone, Debug)]
enum Coordinates {
    Components { comp: Vec<u32>, rep_of_comp: Vec<u32> },
    Dual { weights: Vec<FxHashMap<Simplex, ()>> },
    Generic(Box<GenericBasis>),
}

#[derive(Clone, Debug)]
struct GenericBasis {
    index: FxHashMap<Simplex, u32>,
    boundary: Reduction,
    rep_pivot: FxHashMap<u32, usize>,
    rep_reduced: Vec<Vec<u32>>,
    rep_combo: Vec<Vec<u32>>,
    reps: Vec<ChainZ2>,
}

impl HomologyBasis {
    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of `z` in this basis. `z` must be a cycle of the complex.
    pub fn coordinates(&self, z: &ChainZ2) -> Result<Vec<bool>> {
        if z.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: z.dim() });
        }
        if !z.is_cycle() {
            return Err(Error::NotACycle(z.boundary().len()));
        }
        match &self.coords {
            Coordinates::Components { comp, rep_of_comp } => {
                let mut out = vec![false; rep_of_comp.len()];
                for s in z.support() {
                    let k = comp.get(s.vertices()[0] as usize).copied().unwrap_or(u32::MAX);
                    if k == u32::MAX {
                        return Err(Error::InvalidSimplex(format!("vertex {} is not in the complex", s.vertices()[0])));
                    }
                    out[k as usize] ^= true;
                }
                Ok(out)
            }
            Coordinates::Dual { weights } => {
                Ok(weights.iter().map(|w| z.support().iter().filter(|s| w.contains_key(*s)).count() % 2 == 1).collect())
            }
            Coordinates::Generic(g) => g.coordinates(z),
        }
    }
}

impl GenericBasis {
    fn indices(&self, z: &ChainZ2) -> Result<Vec<u32>> {
        let mut idx = Vec::with_capacity(z.len());
        for s in z.support() {
            match self.index.get(s) {
                Some(&i) => idx.push(i),
                None => return Err(Error::InvalidSimplex("chain leaves the complex".into())),
            }
        }
        idx.sort_unstable();
        Ok(idx)
    }

    fn coordinates(&self, z: &ChainZ2) -> Result<Vec<bool>> {
        let (mut v, _) = self.boundary.reduce_vector(self.indices(z)?);
        let mut combo: Vec<u32> = Vec::new();
        while let Some(&p) = v.first() {
            if let Some(k) = self.boundary.pivot_column(p) {
                v = sym_diff(&v, &self.boundary.reduced[k]);
            } else if let Some(&k) = self.rep_pivot.get(&p) {
                v = sym_diff(&v, &self.rep_reduced[k]);
                combo = sym_diff(&combo, &self.rep_combo[k]);
            } else {
                return Err(Error::Construction("cycle not expressible in the homology basis".into()));
            }
        }
        let mut out = vec![false; self.reps.len()];
        for k in combo {
            out[k as usize] = true;
        }
        Ok(out)
    }
}

fn generic_basis(c: &SimplicialComplex, j: usize) -> GenericBasis {
    let n = c.num_simplices(j);
    let index: FxHashMap<Simplex, u32> = c.simplices(j).iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
    let kernel: Vec<Vec<u32>> = if j == 0 {
        (0..n as u32).map(|i| vec![i]).collect()
    } else {
        let z = Reduction::new(c.num_simplices(j - 1), boundary_columns(c, j), true);
        let combos = z.combos.as_ref().expect("tracked");
        z.zero_columns().map(|k| combos[k].clone()).collect()
    };
    let boundary = Reduction::new(n, boundary_columns(c, j + 1), false);
    // Pick kernel vectors independent modulo boundaries, then order them by support.
    let mut picked: Vec<Vec<u32>> = Vec::new();
    {
        let mut piv: FxHashMap<u32, Vec<u32>> = FxHashMap::default();
        for k in kernel {
            let (mut v, _) = boundary.reduce_vector(k.clone());
            while let Some(&p) = v.first() {
                if let Some(col) = boundary.pivot_column(p) {
                    v = sym_diff(&v, &boundary.reduced[col]);
                } else if let Some(r) = piv.get(&p) {
                    v = sym_diff(&v, r);
                } else {
                    break;
                }
            }
            if let Some(&p) = v.first() {
                piv.insert(p, v);
                picked.push(k);
            }
        }
    }
    let mut reps: Vec<ChainZ2> = picked.iter().map(|k| ChainZ2::from_indices(c, j, k)).collect();
    reps.sort_by(|a, b| a.support().cmp(b.support()));
    let mut g = GenericBasis {
        index,
        boundary,
        rep_pivot: FxHashMap::default(),
        rep_reduced: Vec::new(),
        rep_combo: Vec::new(),
        reps: Vec::new(),
    };
    for (k, rep) in reps.iter().enumerate() {
        let (mut v, _) = g.boundary.reduce_vector(g.indices(rep).expect("rep lies in complex"));
        let mut combo = vec![k as u32];
        while let Some(&p) = v.first() {
            if let Some(col) = g.boundary.pivot_column(p) {
                v = sym_diff(&v, &g.boundary.reduced[col]);
            } else if let Some(&r) = g.rep_pivot.get(&p) {
                v = sym_diff(&v, &g.rep_reduced[r]);
                combo = sym_diff(&combo, &g.rep_combo[r]);
            } else {
                break;
            }
        }
        let p = *v.first().expect("representatives are independent");
        g.rep_pivot.insert(p, k);
        g.rep_reduced.push(v);
        g.rep_combo.push(combo);
    }
    g.reps = reps;
    g
}

/// Spanning-forest basis of `H_1`: representatives are fundamental cycles of the
/// non-tree edges that survive the reduction of triangle boundaries, and the dual
/// cocycles are solved from the reduced columns directly.
fn tree_basis(c: &SimplicialComplex) -> HomologyBasis {
    let edges = c.simplices(1);
    let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); c.id_space()];
    for (i, e) in edges.iter().enumerate() {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj[a as usize].push((b, i as u32));
        adj[b as usize].push((a, i as u32));
    }
    const NONE: u32 = u32::MAX;
    let mut parent_edge = vec![NONE; c.id_space()];
    let mut parent = vec![NONE; c.id_space()];
    let mut seen = vec![false; c.id_space()];
    let mut in_tree = vec![false; edges.len()];
    for root in c.vertices() {
        if seen[root as usize] {
            continue;
        }
        seen[root as usize] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &adj[u as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    parent[w as usize] = u;
                    parent_edge[w as usize] = e;
                    in_tree[e as usize] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut row_of = vec![NONE; edges.len()];
    let mut non_tree = Vec::new();
    for (i, &t) in in_tree.iter().enumerate() {
        if !t {
            row_of[i] = non_tree.len() as u32;
            non_tree.push(i as u32);
        }
    }
    let edge_index = |s: &Simplex| c.index_of(s).expect("closed complex") as u32;
    let cols: Vec<Vec<u32>> = c
        .simplices(2)
        .iter()
        .map(|t| {
            let mut col: Vec<u32> = t.faces().map(|f| row_of[edge_index(&f) as usize]).filter(|&r| r != NONE).collect();
            col.sort_unstable();
            col
        })
        .collect();
    let m = non_tree.len();
    let red = Reduction::new(m, cols, false);
    let free_rows: Vec<u32> = (0..m as u32).filter(|&r| !red.is_pivot(r)).collect();
    let pivot_rows: Vec<u32> = (0..m as u32).filter(|&r| red.is_pivot(r)).collect();

    let path_to_root = |mut v: u32| {
        let mut out = Vec::new();
        while parent[v as usize] != NONE {
            out.push(parent_edge[v as usize]);
            v = parent[v as usize];
        }
        out
    };
    let mut pairs: Vec<(ChainZ2, CochainZ2)> = Vec::with_capacity(free_rows.len());
    for &r0 in &free_rows {
        let e = non_tree[r0 as usize];
        let ev = edges[e as usize].vertices();
        let mut idx = path_to_root(ev[0]);
        idx.extend(path_to_root(ev[1]));
        idx.push(e);
        let rep = ChainZ2::new(1, idx.iter().map(|&i| edges[i as usize].clone())).expect("edges");
        let mut y = vec![false; m];
        y[r0 as usize] = true;
        for &p in pivot_rows.iter().rev() {
            let col = &red.reduced[red.pivot_column(p).expect("pivot")];
            y[p as usize] = col[1..].iter().fold(false, |acc, &q| acc ^ y[q as usize]);
        }
        let support: Vec<Simplex> = (0..m).filter(|&r| y[r]).map(|r| edges[non_tree[r] as usize].clone()).collect();
        pairs.push((rep, CochainZ2::new(1, support).expect("edges")));
    }
    pairs.sort_by(|a, b| a.0.support().cmp(b.0.support()));
    let weights = pairs.iter().map(|(_, y)| y.support().iter().map(|s| (s.clone(), ())).collect()).collect();
    let (reps, duals): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    HomologyBasis { dim: 1, reps, dual_cocycles: Some(duals), coords: Coordinates::Dual { weights } }
}

/// A basis of `H_j(c)` with a coordinate function. Dimension 0 uses components and
/// dimension 1 a spanning forest, so both scale to large complexes.
pub fn homology_basis(c: &SimplicialComplex, j: usize) -> HomologyBasis {
    match j {
        0 => {
            let (count, comp) = c.components();
            let mut rep_of_comp = vec![u32::MAX; count];
            for v in c.vertices() {
                let k = comp[v as usize] as usize;
                if rep_of_comp[k] == u32::MAX {
                    rep_of_comp[k] = v;
                }
            }
            let reps = rep_of_comp.iter().map(|&v| ChainZ2::from_sorted(0, vec![Simplex::vertex(v)])).collect();
            let duals = (0..count)
                .map(|k| {
                    CochainZ2::from_sorted(
                        0,
                        c.vertices().filter(|&v| comp[v as usize] as usize == k).map(Simplex::vertex).collect(),
                    )
                })
                .collect();
            HomologyBasis { dim: 0, reps, dual_cocycles: Some(duals), coords: Coordinates::Components { comp, rep_of_comp } }
        }
        1 => tree_basis(c),
        _ => {
            let g = generic_basis(c, j);
            HomologyBasis { dim: j, reps: g.reps.clone(), dual_cocycles: None, coords: Coordinates::Generic(Box::new(g)) }
        }
    }
}

/// Matrix of a map on `H_j` in the chosen bases: column `l` holds the coordinates of the
/// image of source representative `l`.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub matrix: BitMatrix,
    pub source: HomologyBasis,
    pub target: HomologyBasis,
    pub rank: usize,
}

/// `i_*` on `H_j` for an injective simplicial map.
pub fn induced_map_on_homology(inclusion: &SimplicialMap, j: usize) -> Result<InducedMap> {
    if !inclusion.is_injective() {
        return Err(Error::NotAnInclusion("vertex map is not injective".into()));
    }
    let source = homology_basis(inclusion.source(), j);
    let target = homology_basis(inclusion.target(), j);
    induced_between(&source, &target, |z| z.map_vertices(|v| inclusion.apply(v)))
}

/// Induced map between two precomputed bases, pushing cycles forward through `push`.
pub fn induced_between(
    source: &HomologyBasis,
    target: &HomologyBasis,
    push: impl Fn(&ChainZ2) -> ChainZ2,
) -> Result<InducedMap> {
    let mut matrix = BitMatrix::zeros(target.rank(), source.rank());
    for (l, z) in source.reps.iter().enumerate() {
        let coords = target.coordinates(&push(z))?;
        for (r, b) in coords.into_iter().enumerate() {
            matrix.set(r, l, b);
        }
    }
    let rank = matrix.rank();
    Ok(InducedMap { matrix, source: source.clone(), target: target.clone(), rank })
}
