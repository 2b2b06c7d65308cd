//! Exact rational coordinates and the small dense linear algebra the geometric
//! predicates need.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `7`, `-3/4` or a finite decimal such as `0.125` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse { line: 0, msg: format!("bad coordinate `{s}`") };
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let ip_val: BigInt = if ip_abs.is_empty() { BigInt::zero() } else { ip_abs.parse().map_err(|_| bad())? };
        let fp_val: BigInt = fp.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mut v = Rat::new(ip_val * &scale + fp_val, scale);
        if neg {
            v = -v;
        }
        return Ok(v);
    }
    let n: BigInt = s.trim().parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Solves `cols * x = rhs` for a square or tall system by Gaussian elimination.
///
/// `cols` holds the column vectors. Returns `None` when the columns are linearly
/// dependent; otherwise the unique solution when `rhs` lies in their span, or
/// `Some(Err(()))` when it does not.
pub fn solve_columns(cols: &[Vec<Rat>], rhs: &[Rat]) -> Option<std::result::Result<Vec<Rat>, ()>> {
    let n = cols.len();
    let m = rhs.len();
    // augmented row-major matrix m x (n+1)
    let mut a: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut row = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        let p = (row..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(row, p);
        let inv = a[row][col].recip();
        for c in col..=n {
            a[row][c] = &a[row][c] * &inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let t = &a[row][c] * &f;
                    a[r][c] -= t;
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    if (row..m).any(|r| !a[r][n].is_zero()) {
        return Some(Err(()));
    }
    Some(Ok((0..n).map(|c| a[pivots[c]][n].clone()).collect()))
}

/// Rank of a set of vectors.
pub fn rank(vectors: &[Vec<Rat>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<Rat>> = vectors.to_vec();
    let width = a[0].len();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &pivot;
                for c in col..width {
                    let t = &a[rank][c] * &f;
                    a[r][c] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Null space basis of the linear map whose columns are `vectors`
/// (coefficient vectors λ with Σ λ_i v_i = 0).
pub fn null_space(vectors: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = vectors.len();
    if n == 0 {
        return Vec::new();
    }
    let m = vectors[0].len();
    let mut a: Vec<Vec<Rat>> = (0..m).map(|i| vectors.iter().map(|v| v[i].clone()).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for c in col..n {
            a[row][c] = &a[row][c] * &inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    let t = &a[row][c] * &f;
                    a[r][c] -= t;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Whether the origin lies in the convex hull of `points`.
pub fn hull_contains_origin(points: &[Vec<Rat>]) -> bool {
    if points.iter().any(|p| p.iter().all(|x| x.is_zero())) {
        return true;
    }
    // A minimal representation of 0 uses a subset whose kernel is one-dimensional and
    // spanned by a strictly positive vector.
    let n = points.len();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let sub: Vec<Vec<Rat>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| points[i].clone()).collect();
        let ker = null_space(&sub);
        if ker.len() != 1 {
            continue;
        }
        let v = &ker[0];
        if v.iter().all(|x| x.is_positive()) || v.iter().all(|x| x.is_negative()) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rat("7").unwrap(), int(7));
        assert_eq!(parse_rat("-3/4").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rat("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse_rat("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(format_rat(&ratio(6, 4)), "3/2");
    }

    #[test]
    fn solves_and_detects_dependence() {
        let cols = vec![vec![int(1), int(0)], vec![int(1), int(1)]];
        let x = solve_columns(&cols, &[int(3), int(2)]).unwrap().unwrap();
        assert_eq!(x, vec![int(1), int(2)]);
        let dep = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve_columns(&dep, &[int(1), int(0)]).is_none());
        assert_eq!(rank(&dep), 1);
    }

    #[test]
    fn origin_in_hull() {
        assert!(hull_contains_origin(&[vec![int(1), int(0)], vec![int(-2), int(0)]]));
        assert!(!hull_contains_origin(&[vec![int(1), int(0)], vec![int(0), int(1)]]));
        assert!(hull_contains_origin(&[vec![int(1), int(0)], vec![int(-1), int(1)], vec![int(-1), int(-1)]]));
        assert!(!hull_contains_origin(&[vec![int(1), int(0)], vec![int(1), int(1)], vec![int(2), int(-1)]]));
    }
}
