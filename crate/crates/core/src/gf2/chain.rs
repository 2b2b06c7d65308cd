use super::bitmatrix::BitMatrix;
use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

fn mod2_support(mut simplices: Vec<Simplex>) -> Vec<Simplex> {
    simplices.sort_unstable();
    let mut out = Vec::with_capacity(simplices.len());
    let mut it = simplices.into_iter().peekable();
    while let Some(s) = it.next() {
        let mut odd = true;
        while it.peek() == Some(&s) {
            it.next();
            odd = !odd;
        }
        if odd {
            out.push(s);
        }
    }
    out
}

fn sorted_sym_diff(a: &[Simplex], b: &[Simplex]) -> Vec<Simplex> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

macro_rules! support_type {
    ($name:ident, $tag:literal) => {
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name {
            dim: usize,
            support: Vec<Simplex>,
        }

        impl $name {
            /// Builds from simplices counted mod 2. Every simplex must have dimension `dim`.
            pub fn new(dim: usize, simplices: impl IntoIterator<Item = Simplex>) -> Result<Self> {
                let simplices: Vec<Simplex> = simplices.into_iter().collect();
                if let Some(s) = simplices.iter().find(|s| s.dim() != dim) {
                    return Err(Error::DimensionMismatch { expected: dim, found: s.dim() });
                }
                Ok(Self { dim, support: mod2_support(simplices) })
            }

            pub(crate) fn from_sorted(dim: usize, support: Vec<Simplex>) -> Self {
                debug_assert!(support.windows(2).all(|w| w[0] < w[1]));
                Self { dim, support }
            }

            pub fn zero(dim: usize) -> Self {
                Self { dim, support: Vec::new() }
            }

            pub fn dim(&self) -> usize {
                self.dim
            }

            /// Support in increasing simplex order.
            pub fn support(&self) -> &[Simplex] {
                &self.support
            }

            pub fn len(&self) -> usize {
                self.support.len()
            }

            pub fn is_zero(&self) -> bool {
                self.support.is_empty()
            }

            /// Same as [`Self::is_zero`]; the support is empty.
            pub fn is_empty(&self) -> bool {
                self.is_zero()
            }

            pub fn contains(&self, s: &Simplex) -> bool {
                self.support.binary_search(s).is_ok()
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                if self.dim != other.dim {
                    return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
                }
                Ok(Self { dim: self.dim, support: sorted_sym_diff(&self.support, &other.support) })
            }

            /// Checks that every support simplex lies in `c`.
            pub fn check_in(&self, c: &SimplicialComplex) -> Result<()> {
                match self.support.iter().find(|s| !c.contains(s)) {
                    Some(s) => Err(Error::InvalidSimplex(format!("{:?} is not in the complex", s.vertices()))),
                    None => Ok(()),
                }
            }

            /// Indicator vector over the `dim`-simplices of `c`.
            pub fn indices_in(&self, c: &SimplicialComplex) -> Result<Vec<u32>> {
                let mut out = Vec::with_capacity(self.support.len());
                for s in &self.support {
                    match c.index_of(s) {
                        Some(i) => out.push(i as u32),
                        None => return Err(Error::InvalidSimplex(format!("{:?} is not in the complex", s.vertices()))),
                    }
                }
                out.sort_unstable();
                Ok(out)
            }

            pub fn from_indices(c: &SimplicialComplex, dim: usize, idx: &[u32]) -> Self {
                let mut support: Vec<Simplex> = idx.iter().map(|&i| c.simplices(dim)[i as usize].clone()).collect();
                support.sort_unstable();
                Self { dim, support }
            }

            /// Applies a vertex relabeling; the result is counted mod 2, degenerate images are dropped.
            pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> Self {
                let imgs = self
                    .support
                    .iter()
                    .map(|s| Simplex::spanned_by(s.vertices().iter().map(|&v| f(v))))
                    .filter(|s| s.dim() == self.dim)
                    .collect();
                Self { dim: self.dim, support: mod2_support(imgs) }
            }

            /// Text form `<tag> <dim> ; <simplex> ; ...` with labels from `c`.
            pub fn to_text(&self, c: &SimplicialComplex) -> String {
                let mut out = format!("{} {}", $tag, self.dim);
                for s in &self.support {
                    out.push_str(" ;");
                    for &v in s.vertices() {
                        out.push(' ');
                        out.push_str(c.label(v));
                    }
                }
                out
            }

            /// Parses the text form. Simplices must exist in `c`.
            pub fn parse(c: &SimplicialComplex, text: &str) -> Result<Self> {
                let lookup = c.label_lookup();
                let mut parts = text.trim().split(';');
                let head = parts.next().unwrap_or("");
                let mut hw = head.split_whitespace();
                match hw.next() {
                    Some(t) if t == $tag || t == "c" => {}
                    other => {
                        return Err(Error::Parse { line: 1, msg: format!("expected `{}`, found {:?}", $tag, other) })
                    }
                }
                let dim: usize = hw
                    .next()
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| Error::Parse { line: 1, msg: "missing dimension".into() })?;
                if hw.next().is_some() {
                    return Err(Error::Parse { line: 1, msg: "unexpected token after dimension".into() });
                }
                let mut simplices = Vec::new();
                for p in parts {
                    if p.trim().is_empty() {
                        continue;
                    }
                    let s = c.parse_simplex(&lookup, p)?;
                    if !c.contains(&s) {
                        return Err(Error::InvalidSimplex(format!("{} is not in the complex", p.trim())));
                    }
                    simplices.push(s);
                }
                Self::new(dim, simplices)
            }
        }
    };
}

support_type!(ChainZ2, "c");
support_type!(CochainZ2, "k");

impl ChainZ2 {
    pub fn boundary(&self) -> ChainZ2 {
        if self.dim == 0 {
            return ChainZ2::zero(0);
        }
        let faces = self.support.iter().flat_map(|s| s.faces().collect::<Vec<_>>()).collect();
        ChainZ2 { dim: self.dim - 1, support: mod2_support(faces) }
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_zero()
    }

    /// Vertices touched by the support, sorted.
    pub fn vertex_set(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.support.iter().flat_map(|s| s.vertices().iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// `∂_j`: rows are the `(j-1)`-simplices, columns the `j`-simplices, both in complex order.
pub fn boundary_matrix(c: &SimplicialComplex, j: usize) -> Result<BitMatrix> {
    if j == 0 {
        return Err(Error::Precondition("boundary matrix needs j >= 1".into()));
    }
    Ok(BitMatrix::from_columns(c.num_simplices(j - 1), &boundary_columns(c, j)))
}

/// Columns of `∂_j` as sorted row-index lists.
pub fn boundary_columns(c: &SimplicialComplex, j: usize) -> Vec<Vec<u32>> {
    if j == 0 {
        return vec![Vec::new(); c.num_simplices(0)];
    }
    c.simplices(j)
        .iter()
        .map(|s| {
            let mut col: Vec<u32> = s.faces().map(|f| c.index_of(&f).expect("closed complex") as u32).collect();
            col.sort_unstable();
            col
        })
        .collect()
}

/// Columns of `δ_j`: for each `j`-simplex the sorted indices of its `(j+1)`-cofaces.
pub fn coboundary_columns(c: &SimplicialComplex, j: usize) -> Vec<Vec<u32>> {
    let mut cols = vec![Vec::new(); c.num_simplices(j)];
    for (t, s) in c.simplices(j + 1).iter().enumerate() {
        for f in s.faces() {
            cols[c.index_of(&f).expect("closed complex")].push(t as u32);
        }
    }
    cols
}

pub fn coboundary(c: &SimplicialComplex, a: &CochainZ2) -> Result<CochainZ2> {
    a.check_in(c)?;
    let mut hits: Vec<Simplex> = Vec::new();
    let mut in_a = rustc_hash::FxHashSet::default();
    for s in &a.support {
        in_a.insert(s.clone());
    }
    for t in c.simplices(a.dim + 1) {
        if t.faces().filter(|f| in_a.contains(f)).count() % 2 == 1 {
            hits.push(t.clone());
        }
    }
    Ok(CochainZ2::from_sorted(a.dim + 1, hits))
}

/// `⟨c, z⟩`: parity of the common support.
pub fn pair(c: &CochainZ2, z: &ChainZ2) -> Result<u8> {
    if c.dim != z.dim {
        return Err(Error::DimensionMismatch { expected: c.dim, found: z.dim });
    }
    let (mut i, mut j, mut n) = (0, 0, 0u8);
    while i < c.support.len() && j < z.support.len() {
        match c.support[i].cmp(&z.support[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n ^= 1;
                i += 1;
                j += 1;
            }
        }
    }
    Ok(n)
}

/// Alexander–Whitney cup product under the vertex-identifier order of `c`.
///
/// `(a ⌣ b)(σ) = a(σ[0..=p]) · b(σ[p..=p+q])`.
pub fn cup_product(c: &SimplicialComplex, a: &CochainZ2, b: &CochainZ2) -> Result<CochainZ2> {
    a.check_in(c).map_err(|_| Error::ComplexMismatch)?;
    b.check_in(c).map_err(|_| Error::ComplexMismatch)?;
    let (p, q) = (a.dim, b.dim);
    if a.is_zero() || b.is_zero() {
        return Ok(CochainZ2::zero(p + q));
    }
    let mut out = Vec::new();
    for s in c.simplices(p + q) {
        let v = s.vertices();
        let front = Simplex::from_sorted(v[..=p].to_vec());
        if !a.contains(&front) {
            continue;
        }
        let back = Simplex::from_sorted(v[p..].to_vec());
        if b.contains(&back) {
            out.push(s.clone());
        }
    }
    Ok(CochainZ2::from_sorted(p + q, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_boundary_matrices() {
        let m = boundary_matrix(&fixtures::cycle(3), 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 3));
        for c in 0..3 {
            assert_eq!(m.column(c).iter().filter(|&&b| b).count(), 2);
        }
        let t = boundary_matrix(&fixtures::simplex(2), 2).unwrap();
        assert_eq!(t.column(0), vec![true, true, true]);
        assert!(boundary_matrix(&fixtures::simplex(2), 0).is_err());
    }

    #[test]
    fn chain_arithmetic_and_text() {
        let c = fixtures::simplex_boundary(2);
        let z = ChainZ2::new(1, [s(&[0, 1]), s(&[1, 2]), s(&[0, 2]), s(&[0, 1]), s(&[0, 1])]).unwrap();
        assert_eq!(z.len(), 3);
        assert!(z.is_cycle());
        assert!(!ChainZ2::new(1, [s(&[0, 1])]).unwrap().is_cycle());
        let text = z.to_text(&c);
        assert_eq!(text, "c 1 ; 0 1 ; 0 2 ; 1 2");
        assert_eq!(ChainZ2::parse(&c, &text).unwrap(), z);
        assert!(ChainZ2::parse(&c, "c 2 ; 0 1 2").is_err());
        assert!(ChainZ2::new(1, [s(&[0])]).is_err());
    }

    #[test]
    fn pairing_basics() {
        let a = CochainZ2::new(1, [s(&[0, 1])]).unwrap();
        let z = ChainZ2::new(1, [s(&[0, 1])]).unwrap();
        assert_eq!(pair(&a, &z).unwrap(), 1);
        let w = ChainZ2::new(1, [s(&[1, 2])]).unwrap();
        assert_eq!(pair(&a, &w).unwrap(), 0);
        assert!(pair(&a, &ChainZ2::zero(2)).is_err());
    }

    #[test]
    fn cup_with_zero_and_mismatch() {
        let c = fixtures::simplex(2);
        let a = CochainZ2::new(1, [s(&[0, 1])]).unwrap();
        assert!(cup_product(&c, &a, &CochainZ2::zero(1)).unwrap().is_zero());
        let b = CochainZ2::new(1, [s(&[1, 2])]).unwrap();
        assert_eq!(cup_product(&c, &a, &b).unwrap().support(), &[s(&[0, 1, 2])]);
        let foreign = CochainZ2::new(1, [s(&[5, 6])]).unwrap();
        assert_eq!(cup_product(&c, &a, &foreign), Err(Error::ComplexMismatch));
    }

    #[test]
    fn coboundary_of_vertex() {
        let c = fixtures::cycle(4);
        let a = CochainZ2::new(0, [s(&[0])]).unwrap();
        let d = coboundary(&c, &a).unwrap();
        assert_eq!(d.support(), &[s(&[0, 1]), s(&[0, 3])]);
    }
}
