//! Sparse column reduction over GF(2).
//!
//! Columns are sorted row lists. The pivot of a column is its lowest row, so adding an
//! earlier column with the same pivot removes that row and only touches larger rows.

const NONE: u32 = u32::MAX;

/// Symmetric difference of two sorted lists.
pub(crate) fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
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

/// Result of reducing a list of columns in order.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Reduced columns; empty when the column fell into the span of earlier ones.
    pub reduced: Vec<Vec<u32>>,
    /// Column combination producing each reduced column (only when tracked).
    pub combos: Option<Vec<Vec<u32>>>,
    pivot_col: Vec<u32>,
}

impl Reduction {
    /// Reduces `columns` in order. Each column must be sorted without repeats.
    pub fn new(nrows: usize, columns: Vec<Vec<u32>>, track: bool) -> Self {
        let mut red = Reduction {
            reduced: Vec::with_capacity(columns.len()),
            combos: track.then(|| Vec::with_capacity(columns.len())),
            pivot_col: vec![NONE; nrows],
        };
        for col in columns {
            red.push(col);
        }
        red
    }

    /// Appends one more column and reduces it against the earlier ones.
    pub fn push(&mut self, mut col: Vec<u32>) -> usize {
        let j = self.reduced.len();
        let mut combo = vec![j as u32];
        while let Some(&p) = col.first() {
            let k = self.pivot_col[p as usize];
            if k == NONE {
                self.pivot_col[p as usize] = j as u32;
                break;
            }
            col = sym_diff(&col, &self.reduced[k as usize]);
            if let Some(cs) = &self.combos {
                combo = sym_diff(&combo, &cs[k as usize]);
            }
        }
        self.reduced.push(col);
        if let Some(cs) = &mut self.combos {
            cs.push(combo);
        }
        j
    }

    pub fn rank(&self) -> usize {
        self.reduced.iter().filter(|c| !c.is_empty()).count()
    }

    pub fn is_pivot(&self, row: u32) -> bool {
        self.pivot_col[row as usize] != NONE
    }

    pub fn pivot_column(&self, row: u32) -> Option<usize> {
        let k = self.pivot_col[row as usize];
        (k != NONE).then_some(k as usize)
    }

    /// Columns whose reduction vanished; with tracking, their combos span the kernel.
    pub fn zero_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.reduced.iter().enumerate().filter(|(_, c)| c.is_empty()).map(|(j, _)| j)
    }

    /// Reduces `v` against the pivots. Returns the residual and, when tracked, the column
    /// combination that was added.
    pub fn reduce_vector(&self, mut v: Vec<u32>) -> (Vec<u32>, Vec<u32>) {
        let mut combo = Vec::new();
        let mut start = 0;
        while start < v.len() {
            let p = v[start];
            match self.pivot_column(p) {
                Some(k) => {
                    let rest = sym_diff(&v[start..], &self.reduced[k]);
                    v.truncate(start);
                    v.extend(rest);
                    if let Some(cs) = &self.combos {
                        combo = sym_diff(&combo, &cs[k]);
                    }
                }
                None => start += 1,
            }
        }
        (v, combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_diff_of_sorted_lists() {
        assert_eq!(sym_diff(&[1, 3, 5], &[2, 3, 6]), vec![1, 2, 5, 6]);
    }

    #[test]
    fn triangle_boundary_rank() {
        // edges 01, 02, 12 as columns over vertices
        let r = Reduction::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]], true);
        assert_eq!(r.rank(), 2);
        let zeros: Vec<_> = r.zero_columns().collect();
        assert_eq!(zeros, vec![2]);
        assert_eq!(r.combos.as_ref().unwrap()[2], vec![0, 1, 2]);
        let (res, combo) = r.reduce_vector(vec![1, 2]);
        assert!(res.is_empty());
        assert_eq!(combo, vec![0, 1]);
        let (res, _) = r.reduce_vector(vec![2]);
        assert_eq!(res, vec![2]);
    }
}
