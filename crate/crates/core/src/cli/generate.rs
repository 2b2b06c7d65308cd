use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{fixtures, Simplex, SimplicialComplex};
use crate::deleted::grid_window;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// `grid k h`: the cube window `[-h, h]^k` with integer coordinates.
    Grid,
    /// `cross_polytope d`: boundary of the `d`-dimensional cross-polytope.
    #[value(name = "cross_polytope")]
    CrossPolytope,
    /// `torus`: the seven-vertex torus.
    Torus,
    /// `k_n n`: the complete graph on `n` vertices.
    #[value(name = "k_n")]
    KN,
    /// `random n t`: `t` distinct triangles on `n` vertices, drawn from the seed.
    Random,
}

fn arity(kind: GenKind, params: &[usize], want: usize, usage: &str) -> Result<()> {
    if params.len() != want {
        return Err(Error::Precondition(format!("{kind:?} takes {want} parameter(s): {usage}")));
    }
    Ok(())
}

fn range(what: &str, x: usize, lo: usize, hi: usize) -> Result<()> {
    if x < lo || x > hi {
        return Err(Error::Precondition(format!("{what} must lie in {lo}..={hi}, got {x}")));
    }
    Ok(())
}

pub fn generate(kind: GenKind, params: &[usize], seed: u64) -> Result<SimplicialComplex> {
    match kind {
        GenKind::Grid => {
            arity(kind, params, 2, "grid <k> <halfwidth>")?;
            range("k", params[0], 1, 4)?;
            range("halfwidth", params[1], 1, 12)?;
            grid_window(params[0], params[1])
        }
        GenKind::CrossPolytope => {
            arity(kind, params, 1, "cross_polytope <d>")?;
            range("d", params[0], 1, 8)?;
            Ok(fixtures::cross_polytope(params[0] - 1))
        }
        GenKind::Torus => {
            arity(kind, params, 0, "torus")?;
            Ok(fixtures::torus7())
        }
        GenKind::KN => {
            arity(kind, params, 1, "k_n <n>")?;
            range("n", params[0], 1, 64)?;
            Ok(fixtures::complete_graph(params[0]))
        }
        GenKind::Random => {
            arity(kind, params, 2, "random <vertices> <triangles>")?;
            let n = params[0];
            range("vertices", n, 3, 40)?;
            let mut all = Vec::new();
            for a in 0..n as u32 {
                for b in a + 1..n as u32 {
                    for c in b + 1..n as u32 {
                        all.push([a, b, c]);
                    }
                }
            }
            range("triangles", params[1], 1, all.len())?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            all.shuffle(&mut rng);
            all.truncate(params[1]);
            all.sort_unstable();
            let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            Ok(SimplicialComplex::from_generators(labels.into(), None, all.iter().map(|t| Simplex::spanned_by(*t)), None))
        }
    }
}
