use rustc_hash::FxHashMap;

use super::SimplicialComplex;
use crate::error::{Error, Result};

/// A Δ-complex: cells glued along order-preserving face maps.
///
/// `faces[d][c][i]` is the `(d-1)`-cell opposite vertex `i` of the `d`-cell `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex {
    faces: Vec<Vec<Vec<u32>>>,
}

/// Cellwise map between Δ-complexes. `perm[d][c][i]` is the position, in the image
/// cell, of the image of vertex `i` of `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMap {
    pub cell: Vec<Vec<u32>>,
    pub perm: Vec<Vec<Vec<u8>>>,
}

/// A dimension-preserving bijection of cells commuting with every face map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaIsomorphism {
    pub cells: Vec<Vec<u32>>,
}

impl DeltaComplex {
    /// Builds from explicit face lists, checking the face identities
    /// `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn from_faces(faces: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        let d = DeltaComplex { faces };
        for (dim, cells) in d.faces.iter().enumerate() {
            for (c, f) in cells.iter().enumerate() {
                let want = if dim == 0 { 0 } else { dim + 1 };
                if f.len() != want {
                    return Err(Error::InvalidSimplex(format!("cell {dim}.{c} has {} faces", f.len())));
                }
                if dim > 0 && f.iter().any(|&x| x as usize >= d.faces[dim - 1].len()) {
                    return Err(Error::InvalidSimplex(format!("cell {dim}.{c} has an unknown face")));
                }
            }
        }
        let bad = d.identity_violations();
        if let Some(v) = bad.first() {
            return Err(Error::InvalidSimplex(v.clone()));
        }
        Ok(d)
    }

    fn identity_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for dim in 2..self.faces.len() {
            for c in 0..self.faces[dim].len() {
                for j in 0..=dim {
                    for i in 0..j {
                        let a = self.faces[dim - 1][self.faces[dim][c][j] as usize][i];
                        let b = self.faces[dim - 1][self.faces[dim][c][i] as usize][j - 1];
                        if a != b {
                            out.push(format!("cell {dim}.{c}: face identity fails for ({i},{j})"));
                        }
                    }
                }
            }
        }
        out
    }

    /// One cell per simplex, in the complex's per-dimension order.
    pub fn from_simplicial(c: &SimplicialComplex) -> Self {
        let mut faces = Vec::new();
        for d in 0..=c.dim().unwrap_or(0) {
            let cells = c
                .simplices(d)
                .iter()
                .map(|s| if d == 0 { Vec::new() } else { s.faces().map(|f| c.index_of(&f).unwrap() as u32).collect() })
                .collect();
            faces.push(cells);
        }
        if c.is_empty() {
            faces.clear();
        }
        DeltaComplex { faces }
    }

    /// Glues `n_top` copies of Δ^m. Each entry `((a, i), (b, j))` identifies face `i` of
    /// cell `a` with face `j` of cell `b` by the order-preserving map. Returns the complex
    /// and, for every top cell and nonempty vertex-position mask, the cell it becomes.
    pub fn from_gluing(m: usize, n_top: usize, glue: &[((usize, usize), (usize, usize))]) -> Result<(Self, Vec<Vec<u32>>)> {
        if m > 8 {
            return Err(Error::Precondition("cells of dimension above 8 are not supported".into()));
        }
        let width = 1usize << (m + 1);
        let mut uf = UnionFind::new(n_top * width);
        for &((a, i), (b, j)) in glue {
            if a >= n_top || b >= n_top || i > m || j > m {
                return Err(Error::Precondition(format!("gluing ({a},{i})~({b},{j}) out of range")));
            }
            let pa: Vec<usize> = (0..=m).filter(|&p| p != i).collect();
            let pb: Vec<usize> = (0..=m).filter(|&p| p != j).collect();
            for sub in 1u32..(1 << m) {
                let mut ma = 0usize;
                let mut mb = 0usize;
                for k in 0..m {
                    if sub >> k & 1 == 1 {
                        ma |= 1 << pa[k];
                        mb |= 1 << pb[k];
                    }
                }
                uf.union(a * width + ma, b * width + mb);
            }
        }
        let mut class_cell: FxHashMap<usize, u32> = FxHashMap::default();
        let mut reps: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m + 1];
        let mut table = vec![vec![u32::MAX; width]; n_top];
        // deterministic numbering: by dimension, then by first (top, mask) occurrence
        for dim in 0..=m {
            for a in 0..n_top {
                for mask in 1..width {
                    if (mask as u32).count_ones() as usize != dim + 1 {
                        continue;
                    }
                    let root = uf.find(a * width + mask);
                    let id = *class_cell.entry(root).or_insert_with(|| {
                        reps[dim].push((a, mask));
                        (reps[dim].len() - 1) as u32
                    });
                    table[a][mask] = id;
                }
            }
        }
        let mut faces: Vec<Vec<Vec<u32>>> = vec![Vec::new(); m + 1];
        for dim in 0..=m {
            for &(a, mask) in &reps[dim] {
                if dim == 0 {
                    faces[0].push(Vec::new());
                    continue;
                }
                let pos: Vec<usize> = (0..=m).filter(|&p| mask >> p & 1 == 1).collect();
                faces[dim].push(pos.iter().map(|&p| table[a][mask & !(1 << p)]).collect());
            }
        }
        if n_top == 0 {
            faces.clear();
        }
        Ok((DeltaComplex { faces }, table))
    }

    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn num_cells(&self, d: usize) -> usize {
        self.faces.get(d).map_or(0, |v| v.len())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|v| v.len()).collect()
    }

    pub fn faces_of(&self, d: usize, c: u32) -> &[u32] {
        &self.faces[d][c as usize]
    }

    /// The face of `(d, c)` spanned by the vertex positions in `mask`.
    pub fn face(&self, d: usize, c: u32, mask: u32) -> u32 {
        debug_assert!(mask != 0);
        let mut cur = c;
        let mut dim = d;
        for p in (0..=d).rev() {
            if mask >> p & 1 == 0 {
                cur = self.faces[dim][cur as usize][p];
                dim -= 1;
            }
        }
        cur
    }

    /// Ordered vertex tuple (0-cell indices).
    pub fn vertices(&self, d: usize, c: u32) -> Vec<u32> {
        (0..=d).map(|p| self.face(d, c, 1 << p)).collect()
    }

    /// Number of `(d+1)`-cells incident to each `d`-cell, counted with multiplicity.
    pub fn incidence_counts(&self, d: usize) -> Vec<usize> {
        let mut counts = vec![0; self.num_cells(d)];
        if let Some(up) = self.faces.get(d + 1) {
            for f in up {
                for &x in f {
                    counts[x as usize] += 1;
                }
            }
        }
        counts
    }

    /// Whether every `(top-1)`-cell has even incidence.
    pub fn is_mod2_cycle(&self) -> bool {
        match self.dim() {
            Some(m) if m > 0 => self.incidence_counts(m - 1).iter().all(|c| c % 2 == 0),
            _ => true,
        }
    }

    /// The subcomplex spanned by the `m`-cells incident to an odd number of `(m+1)`-cells.
    /// Returns it with, per dimension, the original index of each kept cell.
    pub fn boundary(&self, m: usize) -> (DeltaComplex, Vec<Vec<u32>>) {
        let counts = self.incidence_counts(m);
        let mut keep: Vec<Vec<bool>> = (0..=m).map(|d| vec![false; self.num_cells(d)]).collect();
        for (c, n) in counts.iter().enumerate() {
            if n % 2 == 1 {
                keep[m][c] = true;
            }
        }
        for d in (1..=m).rev() {
            for c in 0..self.num_cells(d) {
                if keep[d][c] {
                    for &f in &self.faces[d][c] {
                        keep[d - 1][f as usize] = true;
                    }
                }
            }
        }
        let origin: Vec<Vec<u32>> = keep.iter().map(|k| (0..k.len() as u32).filter(|&c| k[c as usize]).collect()).collect();
        let mut new_index: Vec<FxHashMap<u32, u32>> = Vec::new();
        for o in &origin {
            new_index.push(o.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect());
        }
        let mut faces = Vec::new();
        for d in 0..=m {
            faces.push(
                origin[d]
                    .iter()
                    .map(|&c| if d == 0 { Vec::new() } else { self.faces[d][c as usize].iter().map(|f| new_index[d - 1][f]).collect() })
                    .collect(),
            );
        }
        let mut out = DeltaComplex { faces };
        let mut origin = origin;
        while out.faces.last().is_some_and(|v| v.is_empty()) {
            out.faces.pop();
            origin.pop();
        }
        (out, origin)
    }

    /// Cells that are faces of no higher cell must all be top-dimensional for the
    /// isomorphism search, which propagates from top cells.
    fn is_pure(&self) -> bool {
        let Some(m) = self.dim() else { return true };
        (0..m).all(|d| self.incidence_counts(d).iter().all(|&c| c > 0))
    }

    /// Searches for an isomorphism whose top-cell assignment satisfies `compat`.
    /// Only pure complexes are supported; `None` when no isomorphism exists.
    pub fn isomorphism_to(&self, other: &DeltaComplex, compat: impl Fn(u32, u32) -> bool) -> Option<DeltaIsomorphism> {
        if self.f_vector() != other.f_vector() || !self.is_pure() || !other.is_pure() {
            return None;
        }
        let Some(m) = self.dim() else { return Some(DeltaIsomorphism { cells: Vec::new() }) };
        let n = self.num_cells(m);
        let mut state = IsoState {
            fwd: (0..=m).map(|d| vec![u32::MAX; self.num_cells(d)]).collect(),
            back: (0..=m).map(|d| vec![u32::MAX; other.num_cells(d)]).collect(),
            trail: Vec::new(),
        };
        let order = self.top_order(m);
        // cofaces of (m-1)-cells in `other`, by face position
        let mut other_cofaces: FxHashMap<(u32, usize), Vec<u32>> = FxHashMap::default();
        if m > 0 {
            for (c, f) in other.faces[m].iter().enumerate() {
                for (i, &x) in f.iter().enumerate() {
                    other_cofaces.entry((x, i)).or_default().push(c as u32);
                }
            }
        }
        if search(self, other, &compat, &order, 0, m, n, &mut state, &other_cofaces) {
            Some(DeltaIsomorphism { cells: state.fwd })
        } else {
            None
        }
    }

    fn top_order(&self, m: usize) -> Vec<u32> {
        let n = self.num_cells(m);
        if m == 0 {
            return (0..n as u32).collect();
        }
        let mut cofaces: Vec<Vec<u32>> = vec![Vec::new(); self.num_cells(m - 1)];
        for (c, f) in self.faces[m].iter().enumerate() {
            for &x in f {
                cofaces[x as usize].push(c as u32);
            }
        }
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start as u32]);
            while let Some(c) = queue.pop_front() {
                order.push(c);
                for &x in &self.faces[m][c as usize] {
                    for &y in &cofaces[x as usize] {
                        if !seen[y as usize] {
                            seen[y as usize] = true;
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        order
    }
}

struct IsoState {
    fwd: Vec<Vec<u32>>,
    back: Vec<Vec<u32>>,
    trail: Vec<(usize, u32)>,
}

impl IsoState {
    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (d, a) = self.trail.pop().unwrap();
            let b = self.fwd[d][a as usize];
            self.fwd[d][a as usize] = u32::MAX;
            self.back[d][b as usize] = u32::MAX;
        }
    }

    /// Assigns `a -> b` in dimension `d` together with every face; false on conflict.
    fn assign(&mut self, x: &DeltaComplex, y: &DeltaComplex, d: usize, a: u32, b: u32) -> bool {
        let (fa, fb) = (self.fwd[d][a as usize], self.back[d][b as usize]);
        if fa != u32::MAX || fb != u32::MAX {
            return fa == b && fb == a;
        }
        self.fwd[d][a as usize] = b;
        self.back[d][b as usize] = a;
        self.trail.push((d, a));
        if d == 0 {
            return true;
        }
        for i in 0..=d {
            if !self.assign(x, y, d - 1, x.faces[d][a as usize][i], y.faces[d][b as usize][i]) {
                return false;
            }
        }
        true
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    x: &DeltaComplex,
    y: &DeltaComplex,
    compat: &impl Fn(u32, u32) -> bool,
    order: &[u32],
    k: usize,
    m: usize,
    n: usize,
    st: &mut IsoState,
    cofaces: &FxHashMap<(u32, usize), Vec<u32>>,
) -> bool {
    if k == n {
        return true;
    }
    let a = order[k];
    let candidates: Vec<u32> = if m > 0 {
        let anchored = x.faces[m][a as usize].iter().enumerate().find_map(|(i, &f)| {
            let g = st.fwd[m - 1][f as usize];
            (g != u32::MAX).then(|| cofaces.get(&(g, i)).cloned().unwrap_or_default())
        });
        anchored.unwrap_or_else(|| (0..n as u32).collect())
    } else {
        (0..n as u32).collect()
    };
    for b in candidates {
        if st.back[m][b as usize] != u32::MAX || !compat(a, b) {
            continue;
        }
        let mark = st.trail.len();
        if st.assign(x, y, m, a, b) && search(x, y, compat, order, k + 1, m, n, st, cofaces) {
            return true;
        }
        st.undo_to(mark);
    }
    false
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures;

    #[test]
    fn two_edges_make_a_circle() {
        let (d, table) = DeltaComplex::from_gluing(1, 2, &[((0, 0), (1, 0)), ((0, 1), (1, 1))]).unwrap();
        assert_eq!(d.f_vector(), vec![2, 2]);
        assert_eq!(table[0][0b11], 0);
        assert!(d.is_mod2_cycle());
    }

    #[test]
    fn one_vertex_circle() {
        let (d, _) = DeltaComplex::from_gluing(1, 1, &[((0, 0), (0, 1))]).unwrap();
        assert_eq!(d.f_vector(), vec![1, 1]);
        assert_eq!(d.vertices(1, 0), vec![0, 0]);
    }

    #[test]
    fn boundary_of_triangles() {
        let t = DeltaComplex::from_simplicial(&fixtures::simplex(2));
        let (b, origin) = t.boundary(1);
        assert_eq!(b.f_vector(), vec![3, 3]);
        assert_eq!(origin[1].len(), 3);
        let sq = SimplicialComplex::from_facets(4, &[&[0, 1, 2], &[1, 2, 3]]).unwrap();
        let (b2, _) = DeltaComplex::from_simplicial(&sq).boundary(1);
        assert_eq!(b2.f_vector(), vec![4, 4]);
    }

    #[test]
    fn face_identities_checked() {
        let good = DeltaComplex::from_simplicial(&fixtures::simplex(3));
        assert!(DeltaComplex::from_faces(good.faces.clone()).is_ok());
        let mut bad = good.faces.clone();
        bad[2][0].swap(0, 1);
        assert!(DeltaComplex::from_faces(bad).is_err());
    }

    #[test]
    fn isomorphism_found_and_rejected() {
        let a = DeltaComplex::from_simplicial(&fixtures::cycle(4));
        // same orientation pattern as the sorted 4-cycle, cells listed in reverse
        let (b, _) = DeltaComplex::from_gluing(
            1,
            4,
            &[((3, 0), (2, 1)), ((2, 0), (1, 1)), ((1, 0), (0, 0)), ((0, 1), (3, 1))],
        )
        .unwrap();
        assert!(a.isomorphism_to(&b, |_, _| true).is_some());
        let two = DeltaComplex::from_gluing(1, 4, &[((0, 0), (1, 0)), ((0, 1), (1, 1)), ((2, 0), (3, 0)), ((2, 1), (3, 1))]).unwrap().0;
        assert!(a.isomorphism_to(&two, |_, _| true).is_none());
        let oct = DeltaComplex::from_simplicial(&fixtures::cross_polytope(2));
        assert!(oct.isomorphism_to(&oct, |_, _| true).is_some());
    }
}
