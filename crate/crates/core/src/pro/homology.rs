use super::system::InverseSystemGF2;
use crate::deleted::DiagonalFiltration;
use crate::error::Result;
use crate::gf2::{homology_basis, induced_between, BitMatrix, HomologyBasis};

/// The reduced homology system of a diagonal filtration in one dimension.
#[derive(Clone, Debug)]
pub struct ProHomology {
    pub dim: usize,
    pub system: InverseSystemGF2,
    /// Basis per level used for the matrices (unreduced; in dimension 0 class `l ≥ 1`
    /// of the reduced basis is component `l` minus component 0).
    pub bases: Vec<HomologyBasis>,
    pub warnings: Vec<String>,
}

/// Passes from `H_0` coordinates to reduced ones: column `l` of the result is the image of
/// `c_l − c_0`, written in the basis `c_k − c_0` of the target.
fn reduce_zero(m: &BitMatrix) -> BitMatrix {
    let (rows, cols) = (m.rows().saturating_sub(1), m.cols().saturating_sub(1));
    let mut out = BitMatrix::zeros(rows, cols);
    for l in 0..cols {
        for r in 0..rows {
            out.set(r, l, m.get(r + 1, l + 1) ^ m.get(r + 1, 0));
        }
    }
    out
}

/// Largest absolute coordinate of the window, the halfwidth for grid windows.
fn halfwidth(filt: &DiagonalFiltration) -> Option<usize> {
    let coords = filt.base.coords()?;
    filt.base
        .vertices()
        .flat_map(|v| coords[v as usize].iter())
        .map(|x| x.numer().magnitude().clone() / x.denom().magnitude())
        .max()
        .and_then(|x| x.try_into().ok())
}

/// `H̃_j(X_{r_1}) ← H̃_j(X_{r_2}) ← …` with the maps induced by the inclusions. Levels need
/// simplices up to dimension `j + 1`.
pub fn pro_homology_of_filtration(filt: &DiagonalFiltration, j: usize) -> Result<ProHomology> {
    let mut warnings = filt.warnings.clone();
    if let Some(d) = filt.max_dim {
        if d < j + 1 {
            warnings.push(format!("levels stop at dimension {d}, so H_{j} is not fully reduced by boundaries"));
        }
    }
    if let (Some(h), Some(&r_max)) = (halfwidth(filt), filt.radii().last()) {
        if r_max + 2 > h {
            warnings.push(format!("largest radius {r_max} leaves a margin below 2 in a window of halfwidth {h}"));
        }
    }
    let bases: Vec<HomologyBasis> = filt.levels.iter().map(|l| homology_basis(&l.complex, j)).collect();
    let mut steps = Vec::new();
    for i in 0..bases.len().saturating_sub(1) {
        let m = induced_between(&bases[i + 1], &bases[i], |z| z.clone())?.matrix;
        steps.push(if j == 0 { reduce_zero(&m) } else { m });
    }
    let dims = bases.iter().map(|b| if j == 0 { b.rank().saturating_sub(1) } else { b.rank() }).collect();
    let labels = filt.radii().iter().map(|r| format!("r={r}")).collect();
    let system = InverseSystemGF2::from_steps(dims, steps)?.with_labels(labels)?;
    Ok(ProHomology { dim: j, system, bases, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deleted::{diagonal_filtration, grid_window};
    use crate::pro::{is_pro_trivial, stable_image, validate_system, Verdict};

    #[test]
    fn planar_grid_pattern() {
        let x = grid_window(2, 3).unwrap();
        let f = diagonal_filtration(&x, &[1, 2], Some(2)).unwrap();
        let h1 = pro_homology_of_filtration(&f, 1).unwrap();
        assert!(validate_system(&h1.system).is_empty());
        assert_eq!(stable_image(&h1.system, 0).unwrap().dim(), 1);
        let h0 = pro_homology_of_filtration(&f, 0).unwrap();
        assert_eq!(is_pro_trivial(&h0.system).verdict, Verdict::Yes);
        // radius 2 in a halfwidth-3 window leaves a margin of 1
        assert!(h1.warnings.iter().any(|w| w.contains("margin")));
    }

    #[test]
    fn reduced_zero_on_two_components() {
        // two points merging into one: H̃_0 goes 0 ← 1
        let m = BitMatrix::from_rows(&[vec![true, true]]);
        let r = reduce_zero(&m);
        assert_eq!((r.rows(), r.cols()), (0, 1));
        // three components mapped identically keep their differences
        let r = reduce_zero(&BitMatrix::identity(3));
        assert_eq!(r, BitMatrix::identity(2));
    }

    #[test]
    fn dropping_a_radius_composes() {
        let x = grid_window(2, 3).unwrap();
        let full = pro_homology_of_filtration(&diagonal_filtration(&x, &[1, 2, 3], Some(2)).unwrap(), 1).unwrap();
        let thin = pro_homology_of_filtration(&diagonal_filtration(&x, &[1, 3], Some(2)).unwrap(), 1).unwrap();
        assert_eq!(full.system.map(0, 2), thin.system.map(0, 1));
    }
}
