use std::fmt::Write as _;

/// Dense GF(2) matrix stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from columns given as lists of row indices.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for &r in col {
                m.flip(r as usize, c);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * w);
            (&lo[src * w..(src + 1) * w], &mut hi[..w])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * w);
            (&hi[..w], &mut lo[dst * w..(dst + 1) * w])
        };
        for (x, y) in b.iter_mut().zip(a) {
            *x ^= y;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn column(&self, c: usize) -> Vec<bool> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let src = other.row(k).to_vec();
                    let dst = &mut out.data[r * out.words..(r + 1) * out.words];
                    for (d, s) in dst.iter_mut().zip(&src) {
                        *d ^= s;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[bool]) -> Vec<bool> {
        (0..self.rows).map(|r| (0..self.cols).filter(|&c| v[c] && self.get(r, c)).count() % 2 == 1).collect()
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else { continue };
            if p != r {
                for k in 0..self.words {
                    self.data.swap(p * self.words + k, r * self.words + k);
                }
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = BitMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, true);
        }
        let piv = aug.echelon();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = BitMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Some(inv)
    }

    /// Solves `self * x = b`; `None` when inconsistent.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let piv = aug.echelon();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![false; self.cols];
        for (r, &c) in piv.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }

    /// Basis of the column space, as a list of columns.
    pub fn column_space(&self) -> Vec<Vec<bool>> {
        let mut t = self.transpose();
        let piv = t.echelon();
        (0..piv.len()).map(|r| (0..self.rows).map(|c| t.get(r, c)).collect()).collect()
    }

    /// Rows as hexadecimal strings, least significant column first within each nibble,
    /// preceded by a `rows x cols` header line.
    pub fn to_hex(&self) -> String {
        let mut out = format!("{} x {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let mut line = String::new();
            for chunk in 0..self.cols.div_ceil(4) {
                let mut nib = 0u8;
                for b in 0..4 {
                    let c = chunk * 4 + b;
                    if c < self.cols && self.get(r, c) {
                        nib |= 1 << b;
                    }
                }
                let _ = write!(line, "{nib:x}");
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_inverse_solve() {
        let m = BitMatrix::from_rows(&[vec![true, true, false], vec![false, true, true], vec![true, false, true]]);
        assert_eq!(m.rank(), 2);
        assert!(m.inverse().is_none());
        let id = BitMatrix::identity(3);
        assert_eq!(id.inverse().unwrap(), id);
        let a = BitMatrix::from_rows(&[vec![true, true], vec![false, true]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), BitMatrix::identity(2));
        let x = m.solve(&[true, true, false]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![true, true, false]);
        assert!(m.solve(&[true, false, false]).is_none());
    }

    #[test]
    fn hex_rows() {
        let m = BitMatrix::from_rows(&[vec![true, false, false, false, true], vec![false; 5]]);
        assert_eq!(m.to_hex(), "2 x 5\n11\n00\n");
    }

    #[test]
    fn wide_rows_cross_word_boundary() {
        let mut m = BitMatrix::zeros(2, 130);
        m.set(0, 129, true);
        m.set(1, 129, true);
        m.set(1, 3, true);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }
}
