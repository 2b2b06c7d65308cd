mod common;

use common::{dense_boundary, dense_rank, oracle_betti};
use obstructor::complex::{fixtures, SimplicialComplex};
use obstructor::gf2::{
    betti_numbers, boundary_matrix, coboundary, cup_product, homology, homology_basis, pair, solve_bounding_chain,
    ChainZ2, CochainZ2,
};
use proptest::prelude::*;

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..7, 1..=4), 1..7).prop_filter_map("size cap", |facets| {
        let f: Vec<Vec<u32>> = facets.into_iter().map(|s| s.into_iter().collect()).collect();
        let c = SimplicialComplex::new((0..7).map(|i| i.to_string()).collect(), f).ok()?;
        (c.total_simplices() <= 60).then_some(c)
    })
}

fn rp2() -> SimplicialComplex {
    // six-vertex projective plane
    SimplicialComplex::from_facets(
        6,
        &[
            &[0, 1, 2],
            &[0, 2, 3],
            &[0, 3, 4],
            &[0, 4, 5],
            &[0, 1, 5],
            &[1, 2, 4],
            &[2, 3, 5],
            &[1, 3, 4],
            &[1, 3, 5],
            &[2, 4, 5],
        ],
    )
    .unwrap()
}

#[test]
fn octahedron_boundary_rank() {
    let oct = fixtures::cross_polytope(2);
    let m = boundary_matrix(&oct, 2).unwrap();
    assert_eq!((m.rows(), m.cols()), (12, 8));
    assert_eq!(m.rank(), dense_rank(dense_boundary(&oct, 2)));
    assert_eq!(m.rank(), 7);
}

#[test]
fn corpus_matches_dense_oracle() {
    let corpus = [
        fixtures::cross_polytope(2),
        fixtures::torus7(),
        rp2(),
        fixtures::cycle(5),
        fixtures::complete_graph(5),
        fixtures::simplex_boundary(3),
    ];
    for c in &corpus {
        assert_eq!(homology(c).betti, oracle_betti(c));
        assert_eq!(betti_numbers(c), oracle_betti(c));
    }
    assert_eq!(oracle_betti(&rp2()), vec![1, 1, 1]);
}

#[test]
fn w1_squared_on_projective_plane() {
    // The nonzero class of H^1(RP^2) squares to the top class.
    let p = rp2();
    let b = homology_basis(&p, 1);
    let w = &b.dual_cocycles.as_ref().unwrap()[0];
    let sq = cup_product(&p, w, w).unwrap();
    let top = &homology(&p).cycles[2][0];
    assert_eq!(pair(&sq, top).unwrap(), 1);
    assert_eq!(pair(w, &b.reps[0]).unwrap(), 1);
}

fn random_cochain(c: &SimplicialComplex, d: usize, bits: &[bool]) -> CochainZ2 {
    CochainZ2::new(d, c.simplices(d).iter().zip(bits.iter().cycle()).filter(|(_, &b)| b).map(|(s, _)| s.clone()))
        .unwrap()
}

fn cone_complex() -> SimplicialComplex {
    // cone over a 7-vertex torus: 50+ simplices with material in dimensions up to 3
    obstructor::complex::cone(&fixtures::torus7()).0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn betti_agrees_with_oracle(c in random_complex()) {
        prop_assert_eq!(homology(&c).betti, oracle_betti(&c));
    }

    #[test]
    fn boundary_squares_to_zero(c in random_complex()) {
        for j in 2..=c.dim().unwrap_or(0) {
            let a = boundary_matrix(&c, j - 1).unwrap();
            let b = boundary_matrix(&c, j).unwrap();
            prop_assert!(a.mul(&b).is_zero());
        }
    }

    #[test]
    fn representatives_are_cycles(c in random_complex()) {
        let h = homology(&c);
        for (j, reps) in h.cycles.iter().enumerate() {
            prop_assert_eq!(reps.len(), h.betti[j]);
            for z in reps {
                prop_assert!(z.is_cycle());
                prop_assert_eq!(solve_bounding_chain(&c, z).unwrap(), None);
            }
        }
    }

    #[test]
    fn bounding_chains_are_exact(c in random_complex(), bits in prop::collection::vec(any::<bool>(), 1..40)) {
        let Some(top) = c.dim() else { return Ok(()) };
        if top == 0 { return Ok(()) }
        let g = ChainZ2::new(top, c.simplices(top).iter().zip(bits.iter().cycle()).filter(|(_, &b)| b).map(|(s, _)| s.clone())).unwrap();
        let z = g.boundary();
        let sol = solve_bounding_chain(&c, &z).unwrap().expect("a boundary must be solvable");
        prop_assert_eq!(sol.boundary(), z);
    }

    #[test]
    fn unsolvable_means_rank_increase(c in random_complex(), bits in prop::collection::vec(any::<bool>(), 1..40)) {
        // Sum cycle representatives with random coefficients plus a boundary.
        let h = homology(&c);
        for j in 1..h.betti.len() {
            let mut z = ChainZ2::zero(j);
            for (k, rep) in h.cycles[j].iter().enumerate() {
                if bits[k % bits.len()] { z = z.add(rep).unwrap(); }
            }
            let answer = solve_bounding_chain(&c, &z).unwrap();
            if j + 1 > c.dim().unwrap() {
                prop_assert_eq!(answer.is_none(), !z.is_zero());
                continue;
            }
            let mut m = dense_boundary(&c, j + 1);
            let before = dense_rank(m.clone());
            for (r, s) in c.simplices(j).iter().enumerate() {
                m[r].push(z.contains(s) as u8);
            }
            let after = dense_rank(m);
            prop_assert_eq!(answer.is_none(), after > before);
        }
    }

    #[test]
    fn coboundary_is_adjoint(bits_c in prop::collection::vec(any::<bool>(), 1..30), bits_z in prop::collection::vec(any::<bool>(), 1..30), d in 0usize..3) {
        let c = cone_complex();
        let a = random_cochain(&c, d, &bits_c);
        let z = ChainZ2::new(d + 1, c.simplices(d + 1).iter().zip(bits_z.iter().cycle()).filter(|(_, &b)| b).map(|(s, _)| s.clone())).unwrap();
        let lhs = pair(&coboundary(&c, &a).unwrap(), &z).unwrap();
        let rhs = pair(&a, &z.boundary()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cup_satisfies_leibniz(bits_a in prop::collection::vec(any::<bool>(), 1..30), bits_b in prop::collection::vec(any::<bool>(), 1..30), p in 0usize..2, q in 0usize..2) {
        let c = cone_complex();
        prop_assert!(c.total_simplices() >= 50);
        let a = random_cochain(&c, p, &bits_a);
        let b = random_cochain(&c, q, &bits_b);
        let lhs = coboundary(&c, &cup_product(&c, &a, &b).unwrap()).unwrap();
        let rhs = cup_product(&c, &coboundary(&c, &a).unwrap(), &b).unwrap()
            .add(&cup_product(&c, &a, &coboundary(&c, &b).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn cup_is_graded_commutative_on_torus_classes() {
    let t = fixtures::torus7();
    let b = homology_basis(&t, 1);
    let duals = b.dual_cocycles.unwrap();
    let top = &homology(&t).cycles[2][0];
    for x in &duals {
        for y in &duals {
            let xy = pair(&cup_product(&t, x, y).unwrap(), top).unwrap();
            let yx = pair(&cup_product(&t, y, x).unwrap(), top).unwrap();
            assert_eq!(xy, yx);
        }
    }
    let prod = pair(&cup_product(&t, &duals[0], &duals[1]).unwrap(), top).unwrap();
    assert_eq!(prod, 1);
}

#[test]
fn cup_is_associative_on_cochains() {
    let c = cone_complex();
    let pick = |d: usize, k: usize| {
        CochainZ2::new(d, c.simplices(d).iter().enumerate().filter(|(i, _)| i % k == 0).map(|(_, s)| s.clone())).unwrap()
    };
    let (a, b, e) = (pick(1, 2), pick(0, 3), pick(1, 5));
    let left = cup_product(&c, &cup_product(&c, &a, &b).unwrap(), &e).unwrap();
    let right = cup_product(&c, &a, &cup_product(&c, &b, &e).unwrap()).unwrap();
    assert_eq!(left, right);
}
