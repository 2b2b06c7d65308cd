use super::{deleted_product, DeletedProduct};
use crate::complex::SimplicialComplex;
use crate::equivariant::{double_cover_class, quotient_complex, QuotientPresentation};
use crate::error::{Error, Result};
use crate::gf2::{coboundary, coboundary_columns, cup_product, homology_basis, pair, ChainZ2, CochainZ2, Reduction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VanKampenWitness {
    /// An `m`-cycle of the quotient on which `(w¹)^m` evaluates to 1.
    Cycle(ChainZ2),
    /// A cochain `c` with `δc = (w¹)^m`.
    Cochain(CochainZ2),
}

#[derive(Clone, Debug)]
pub struct VanKampenResult {
    pub m: usize,
    pub obstruction: u8,
    pub deleted: DeletedProduct,
    pub quotient: QuotientPresentation,
    /// The cup power `(w¹)^m` on the quotient.
    pub class: CochainZ2,
    pub witness: VanKampenWitness,
}

/// Decides whether `(w¹)^m` vanishes in the cohomology of the quotient of the deleted
/// product. A nonzero class obstructs embedding `|k|` in `R^m`.
pub fn vankampen_obstruction(k: &SimplicialComplex, m: usize) -> Result<VanKampenResult> {
    if m == 0 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    let deleted = deleted_product(k);
    let quotient = quotient_complex(&deleted.swap)?;
    let q = &quotient.quotient;
    let w = double_cover_class(&quotient);
    let mut class = w.clone();
    for _ in 1..m {
        class = cup_product(q, &class, &w)?;
    }
    let witness = if class.is_zero() {
        Some(CochainZ2::zero(m - 1))
    } else {
        let red = Reduction::new(q.num_simplices(m), coboundary_columns(q, m - 1), true);
        let (residual, combo) = red.reduce_vector(class.indices_in(q)?);
        residual.is_empty().then(|| CochainZ2::from_indices(q, m - 1, &combo))
    };
    let (obstruction, witness) = match witness {
        Some(c) => {
            debug_assert_eq!(coboundary(q, &c)?, class);
            (0, VanKampenWitness::Cochain(c))
        }
        None => {
            let basis = homology_basis(q, m);
            let mut found = None;
            for z in basis.reps {
                if pair(&class, &z)? == 1 {
                    found = Some(z);
                    break;
                }
            }
            let z = found.ok_or_else(|| Error::Construction("nonzero class pairs trivially with every cycle".into()))?;
            (1, VanKampenWitness::Cycle(z))
        }
    };
    Ok(VanKampenResult { m, obstruction, deleted, quotient, class, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures;

    #[test]
    fn planar_and_nonplanar_graphs() {
        assert_eq!(vankampen_obstruction(&fixtures::complete_graph(5), 2).unwrap().obstruction, 1);
        assert_eq!(vankampen_obstruction(&fixtures::complete_bipartite(3, 3), 2).unwrap().obstruction, 1);
        assert_eq!(vankampen_obstruction(&fixtures::complete_graph(4), 2).unwrap().obstruction, 0);
        assert_eq!(vankampen_obstruction(&fixtures::cycle(3), 2).unwrap().obstruction, 0);
        assert!(vankampen_obstruction(&fixtures::cycle(3), 0).is_err());
    }

    #[test]
    fn witnesses_check_out() {
        let r = vankampen_obstruction(&fixtures::complete_graph(5), 2).unwrap();
        let VanKampenWitness::Cycle(z) = &r.witness else { panic!("expected a cycle") };
        assert!(z.is_cycle());
        assert_eq!(pair(&r.class, z).unwrap(), 1);
        let r = vankampen_obstruction(&fixtures::complete_graph(4), 2).unwrap();
        let VanKampenWitness::Cochain(c) = &r.witness else { panic!("expected a cochain") };
        assert_eq!(coboundary(&r.quotient.quotient, c).unwrap(), r.class);
    }
}
