use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// A finite truncation `V_0 ← V_1 ← … ← V_{n-1}` of an inverse system of GF(2) spaces.
///
/// `map(i, j)` for `i ≤ j` is the structure map `V_j → V_i` as a `dim_i × dim_j` matrix.
/// All pairs are stored so that the composition law can be checked rather than assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSystemGF2 {
    dims: Vec<usize>,
    /// Display name per index, such as the radius of a filtration level.
    pub labels: Vec<String>,
    /// `maps[i][j - i - 1]` is the map `V_j → V_i` for `j > i`.
    maps: Vec<Vec<BitMatrix>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    /// Finite data cannot settle the question either way.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

impl InverseSystemGF2 {
    /// From the consecutive maps `V_{i+1} → V_i`; longer maps are their composites.
    pub fn from_steps(dims: Vec<usize>, steps: Vec<BitMatrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Precondition("an inverse system needs at least one index".into()));
        }
        if steps.len() + 1 != dims.len() {
            return Err(Error::Precondition(format!("{} spaces need {} maps, got {}", dims.len(), dims.len() - 1, steps.len())));
        }
        for (i, m) in steps.iter().enumerate() {
            check_shape(m, dims[i], dims[i + 1], i, i + 1)?;
        }
        let n = dims.len();
        let mut maps: Vec<Vec<BitMatrix>> = vec![Vec::new(); n];
        for i in (0..n).rev() {
            for j in i + 1..n {
                let m = if j == i + 1 { steps[i].clone() } else { steps[i].mul(&maps[i + 1][j - i - 2]) };
                maps[i].push(m);
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(InverseSystemGF2 { dims, labels, maps })
    }

    /// From an explicit table; `table(i, j)` gives `V_j → V_i` for `i < j`.
    pub fn from_table(dims: Vec<usize>, mut table: impl FnMut(usize, usize) -> BitMatrix) -> Result<Self> {
        let n = dims.len();
        if n == 0 {
            return Err(Error::Precondition("an inverse system needs at least one index".into()));
        }
        let mut maps = vec![Vec::new(); n];
        for (i, row) in maps.iter_mut().enumerate() {
            for j in i + 1..n {
                let m = table(i, j);
                check_shape(&m, dims[i], dims[j], i, j)?;
                row.push(m);
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(InverseSystemGF2 { dims, labels, maps })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dims.len() {
            return Err(Error::Precondition(format!("{} labels for {} indices", labels.len(), self.dims.len())));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The structure map `V_j → V_i`; the identity when `i == j`.
    pub fn map(&self, i: usize, j: usize) -> BitMatrix {
        assert!(i <= j && j < self.len(), "structure maps go from a later index to an earlier one");
        if i == j {
            BitMatrix::identity(self.dims[i])
        } else {
            self.maps[i][j - i - 1].clone()
        }
    }
}

fn check_shape(m: &BitMatrix, rows: usize, cols: usize, i: usize, j: usize) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::Precondition(format!(
            "map {j} -> {i} is {} x {}, expected {rows} x {cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Triples `(i, j, l)` with `p^j_i ∘ p^l_j ≠ p^l_i`.
pub fn validate_system(s: &InverseSystemGF2) -> Vec<(usize, usize, usize)> {
    let n = s.len();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                if s.map(i, j).mul(&s.map(j, l)) != s.map(i, l) {
                    bad.push((i, j, l));
                }
            }
        }
    }
    bad
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProTriviality {
    pub verdict: Verdict,
    /// Least `j ≥ i` with `p^j_i = 0`, per index `i`.
    pub witnesses: Vec<Option<usize>>,
    pub depth: usize,
}

/// Pro-triviality at finite depth: YES when every index has a later index whose map to
/// it vanishes.
pub fn is_pro_trivial(s: &InverseSystemGF2) -> ProTriviality {
    let witnesses: Vec<Option<usize>> = (0..s.len()).map(|i| (i..s.len()).find(|&j| s.map(i, j).is_zero())).collect();
    let verdict = if witnesses.iter().all(Option::is_some) { Verdict::Yes } else { Verdict::Inconclusive };
    ProTriviality { verdict, witnesses, depth: s.len() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableImage {
    pub index: usize,
    /// Basis of the final image, as coordinate columns in `V_index`.
    pub basis: Vec<Vec<bool>>,
    /// Least `j` from which the image of `p^j_index` no longer shrinks within the data.
    pub stabilized_at: usize,
    pub depth: usize,
}

impl StableImage {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The decreasing images of `p^j_i` for `j = i, i+1, …` and where they stop shrinking.
pub fn stable_image(s: &InverseSystemGF2, i: usize) -> Result<StableImage> {
    if i >= s.len() {
        return Err(Error::Precondition(format!("index {i} is beyond the truncation depth {}", s.len())));
    }
    let last = s.len() - 1;
    let ranks: Vec<usize> = (i..=last).map(|j| s.map(i, j).rank()).collect();
    let final_rank = ranks[ranks.len() - 1];
    let stabilized_at = i + ranks.iter().position(|&r| r == final_rank).expect("final rank occurs");
    Ok(StableImage { index: i, basis: s.map(i, last).column_space(), stabilized_at, depth: s.len() })
}

/// A map of systems `(X, p) → (Y, q)`: an index function `μ ↦ f(μ)` and components
/// `f_μ : X_{f(μ)} → Y_μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemMap {
    pub index: Vec<usize>,
    pub components: Vec<BitMatrix>,
}

fn check_map(source: &InverseSystemGF2, target: &InverseSystemGF2, f: &SystemMap) -> Result<()> {
    if f.index.len() != target.len() || f.components.len() != target.len() {
        return Err(Error::Precondition("a system map needs one component per target index".into()));
    }
    for (mu, (&lam, m)) in f.index.iter().zip(&f.components).enumerate() {
        if lam >= source.len() {
            return Err(Error::Precondition(format!("index {mu} maps to {lam}, beyond the source depth")));
        }
        if m.rows() != target.dims()[mu] || m.cols() != source.dims()[lam] {
            return Err(Error::Precondition(format!("component {mu} has the wrong shape")));
        }
    }
    Ok(())
}

/// Pairs `μ < μ'` for which no `λ` in the truncation makes the square commute, that is
/// `q^{μ'}_μ f_{μ'} p^λ_{f(μ')} = f_μ p^λ_{f(μ)}`.
pub fn system_map_violations(source: &InverseSystemGF2, target: &InverseSystemGF2, f: &SystemMap) -> Result<Vec<(usize, usize)>> {
    check_map(source, target, f)?;
    let mut bad = Vec::new();
    for mu in 0..target.len() {
        for mu2 in mu + 1..target.len() {
            let start = f.index[mu].max(f.index[mu2]);
            let ok = (start..source.len()).any(|lam| {
                let left = target.map(mu, mu2).mul(&f.components[mu2]).mul(&source.map(f.index[mu2], lam));
                let right = f.components[mu].mul(&source.map(f.index[mu], lam));
                left == right
            });
            if !ok {
                bad.push((mu, mu2));
            }
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapEquivalence {
    pub verdict: Verdict,
    /// Least `λ` with `f_μ p^λ_{f(μ)} = g_μ p^λ_{g(μ)}`, per target index `μ`.
    pub witnesses: Vec<Option<usize>>,
    pub depth: usize,
}

/// Equivalence of two maps between the same systems, searched within the truncation.
pub fn maps_equivalent(source: &InverseSystemGF2, target: &InverseSystemGF2, f: &SystemMap, g: &SystemMap) -> Result<MapEquivalence> {
    check_map(source, target, f)?;
    check_map(source, target, g)?;
    let witnesses: Vec<Option<usize>> = (0..target.len())
        .map(|mu| {
            let start = f.index[mu].max(g.index[mu]);
            (start..source.len()).find(|&lam| {
                f.components[mu].mul(&source.map(f.index[mu], lam)) == g.components[mu].mul(&source.map(g.index[mu], lam))
            })
        })
        .collect();
    let verdict = if witnesses.iter().all(Option::is_some) { Verdict::Yes } else { Verdict::Inconclusive };
    Ok(MapEquivalence { verdict, witnesses, depth: source.len() })
}

#[derive(Serialize, Deserialize)]
struct MapEntry {
    from: usize,
    to: usize,
    rows: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SystemFile {
    spaces: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    maps: Vec<MapEntry>,
}

fn parse_error(msg: String) -> Error {
    Error::Parse { line: 0, msg }
}

fn parse_rows(rows: &[String], nrows: usize, ncols: usize) -> Result<BitMatrix> {
    if rows.len() != nrows {
        return Err(parse_error(format!("expected {nrows} rows, got {}", rows.len())));
    }
    let bits: Vec<Vec<bool>> = rows
        .iter()
        .map(|r| {
            if r.len() != ncols {
                return Err(parse_error(format!("row {r:?} should have {ncols} bits")));
            }
            r.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(parse_error(format!("row {r:?} has a non-bit character"))),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut m = BitMatrix::zeros(nrows, ncols);
    for (r, row) in bits.iter().enumerate() {
        for (c, &b) in row.iter().enumerate() {
            m.set(r, c, b);
        }
    }
    Ok(m)
}

impl InverseSystemGF2 {
    /// Reads `{"spaces": [..], "maps": [{"from": j, "to": i, "rows": ["01", ..]}]}`.
    /// Maps between consecutive indices are required; longer ones default to composites.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SystemFile = serde_json::from_str(text)?;
        let n = file.spaces.len();
        let mut given: rustc_hash::FxHashMap<(usize, usize), BitMatrix> = Default::default();
        for e in &file.maps {
            if e.to >= e.from || e.from >= n {
                return Err(parse_error(format!("map {} -> {} must go from a later index to an earlier one", e.from, e.to)));
            }
            let m = parse_rows(&e.rows, file.spaces[e.to], file.spaces[e.from])?;
            if given.insert((e.to, e.from), m).is_some() {
                return Err(parse_error(format!("map {} -> {} is given twice", e.from, e.to)));
            }
        }
        let steps = (0..n.saturating_sub(1))
            .map(|i| given.get(&(i, i + 1)).cloned().ok_or_else(|| parse_error(format!("map {} -> {i} is missing", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        let composed = InverseSystemGF2::from_steps(file.spaces.clone(), steps)?;
        let s = InverseSystemGF2::from_table(file.spaces, |i, j| given.get(&(i, j)).cloned().unwrap_or_else(|| composed.map(i, j)))?;
        match file.labels {
            Some(l) => s.with_labels(l),
            None => Ok(s),
        }
    }

    /// Writes every structure map, so a reader sees exactly what was checked.
    pub fn to_json(&self) -> String {
        let mut maps = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                maps.push(MapEntry { from: j, to: i, rows: self.map(i, j).to_row_strings() });
            }
        }
        let file = SystemFile { spaces: self.dims.clone(), labels: Some(self.labels.clone()), maps };
        serde_json::to_string_pretty(&file).expect("plain data") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(b: bool) -> BitMatrix {
        BitMatrix::from_rows(&[vec![b]])
    }

    #[test]
    fn constant_and_zero_systems() {
        let constant = InverseSystemGF2::from_steps(vec![1, 1, 1], vec![one(true), one(true)]).unwrap();
        assert!(validate_system(&constant).is_empty());
        let t = is_pro_trivial(&constant);
        assert_eq!(t.verdict, Verdict::Inconclusive);
        assert_eq!(t.witnesses, vec![None, None, None]);
        assert_eq!(stable_image(&constant, 0).unwrap().dim(), 1);

        let zero = InverseSystemGF2::from_steps(vec![1, 1, 1], vec![one(false), one(false)]).unwrap();
        let t = is_pro_trivial(&zero);
        assert_eq!(t.verdict, Verdict::Inconclusive);
        assert_eq!(t.witnesses, vec![Some(1), Some(2), None]);
        let s = stable_image(&zero, 0).unwrap();
        assert_eq!((s.dim(), s.stabilized_at), (0, 1));
    }

    #[test]
    fn vanishing_tail_is_trivial() {
        let s = InverseSystemGF2::from_steps(vec![1, 1, 0], vec![one(false), BitMatrix::zeros(1, 0)]).unwrap();
        let t = is_pro_trivial(&s);
        assert_eq!(t.verdict, Verdict::Yes);
        assert_eq!(t.witnesses, vec![Some(1), Some(2), Some(2)]);
    }

    #[test]
    fn wrong_composite_is_reported() {
        let good = InverseSystemGF2::from_steps(vec![1, 1, 1], vec![one(true), one(true)]).unwrap();
        let bad = InverseSystemGF2::from_table(vec![1, 1, 1], |i, j| if (i, j) == (0, 2) { one(false) } else { good.map(i, j) }).unwrap();
        assert_eq!(validate_system(&bad), vec![(0, 1, 2)]);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"spaces": [2, 1], "maps": [{"from": 1, "to": 0, "rows": ["1", "0"]}]}"#;
        let s = InverseSystemGF2::from_json(text).unwrap();
        assert_eq!(s.dims(), &[2, 1]);
        assert_eq!(InverseSystemGF2::from_json(&s.to_json()).unwrap(), s);
        assert!(InverseSystemGF2::from_json(r#"{"spaces": [1, 1], "maps": []}"#).is_err());
        assert!(InverseSystemGF2::from_json(r#"{"spaces": [1, 1], "maps": [{"from": 1, "to": 0, "rows": ["2"]}]}"#).is_err());
    }

    #[test]
    fn map_equivalence() {
        let x = InverseSystemGF2::from_steps(vec![1, 1], vec![one(false)]).unwrap();
        let y = InverseSystemGF2::from_steps(vec![1], vec![]).unwrap();
        let f = SystemMap { index: vec![0], components: vec![one(true)] };
        let g = SystemMap { index: vec![0], components: vec![one(false)] };
        let same = maps_equivalent(&x, &y, &f, &f).unwrap();
        assert_eq!((same.verdict, same.witnesses.clone()), (Verdict::Yes, vec![Some(0)]));
        // f and g differ on V_0, but the zero map V_1 → V_0 kills the difference
        let e = maps_equivalent(&x, &y, &f, &g).unwrap();
        assert_eq!((e.verdict, e.witnesses), (Verdict::Yes, vec![Some(1)]));
        let c = InverseSystemGF2::from_steps(vec![1, 1], vec![one(true)]).unwrap();
        assert_eq!(maps_equivalent(&c, &y, &f, &g).unwrap().verdict, Verdict::Inconclusive);
        assert!(system_map_violations(&x, &y, &f).unwrap().is_empty());
    }
}
