use num_bigint::BigInt;
use proptest::prelude::*;

use homcat::chain::{smith_normal_form, solve_boundary, ChainComplex, Coefficients, IntMatrix, Solve};
use homcat::convexity::{cone_chain_homotopy, first_vertex_cone, verify_cone};
use homcat::cosimplicial::finset_standard;
use homcat::fincat::{Category, FinSet, Function};
use homcat::homotopy::{constant_homotopy, homotopy_classes, is_homotopy};
use homcat::simplex::{epi_mono_factorize, MonotoneMap};
use homcat::simplicial::TruncSimplicialSet;

fn small_sset(kind: u8, level: usize) -> TruncSimplicialSet {
    match kind % 6 {
        0 => TruncSimplicialSet::point(level),
        1 => TruncSimplicialSet::standard(1, level),
        2 => TruncSimplicialSet::standard(2, level),
        3 => TruncSimplicialSet::boundary(2, level),
        4 => TruncSimplicialSet::boundary(3, level),
        _ => TruncSimplicialSet::empty(level),
    }
}

fn monotone() -> impl Strategy<Value = MonotoneMap> {
    (0usize..5, 0usize..5).prop_flat_map(|(m, n)| {
        prop::collection::vec(0..=n, m + 1).prop_map(move |mut image| {
            image.sort_unstable();
            MonotoneMap::new(m, n, image).unwrap()
        })
    })
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..5, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_squares_to_zero_on_products(a in 0u8..6, b in 0u8..6, reduced: bool, modulus in 0u64..4) {
        let level = 2;
        let x = TruncSimplicialSet::product(&small_sset(a, level), &small_sset(b, level)).unwrap();
        let coeff = if modulus < 2 { Coefficients::Integers } else { Coefficients::Mod(modulus) };
        let c = ChainComplex::from_sset(&x, coeff, reduced).unwrap();
        for n in 1..=level {
            prop_assert!(c.boundary(n - 1).mul(c.boundary(n)).unwrap().is_zero());
        }
    }

    #[test]
    fn product_cones_give_chain_contractions(a in 0usize..3, b in 0usize..3) {
        let level = 2;
        let x = TruncSimplicialSet::product(
            &TruncSimplicialSet::standard(a, level),
            &TruncSimplicialSet::standard(b, level),
        ).unwrap();
        let cone = first_vertex_cone(&x).unwrap();
        prop_assert!(verify_cone(&x, &cone).unwrap().passed);
        prop_assert!(cone_chain_homotopy(&x, &cone).unwrap().passed);
    }

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(rows in matrix()) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let f = smith_normal_form(&m);
        prop_assert_eq!(f.u.mul(&m).unwrap().mul(&f.v).unwrap(), f.s.clone());
        prop_assert_eq!(f.u.mul(&f.u_inv).unwrap(), IntMatrix::identity(m.rows()));
        prop_assert_eq!(f.v.mul(&f.v_inv).unwrap(), IntMatrix::identity(m.cols()));
        for k in 0..f.diagonal.len() {
            prop_assert!(f.diagonal[k] > BigInt::from(0));
            if k + 1 < f.diagonal.len() {
                prop_assert!((&f.diagonal[k + 1] % &f.diagonal[k]) == BigInt::from(0));
            }
        }
    }

    #[test]
    fn solvable_right_hand_sides_are_solved(rows in matrix(), seed in prop::collection::vec(-3i64..4, 4)) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let x: Vec<BigInt> = (0..m.cols()).map(|j| BigInt::from(seed[j % seed.len()])).collect();
        let b = m.mul_vec(&x).unwrap();
        match solve_boundary(&m, &b).unwrap() {
            Solve::Solution(y) => prop_assert_eq!(m.mul_vec(&y).unwrap(), b),
            Solve::Unsolvable(why) => prop_assert!(false, "unsolvable: {}", why),
        }
    }

    #[test]
    fn epi_mono_factorization_recomposes(f in monotone()) {
        let fact = epi_mono_factorize(&f);
        prop_assert_eq!(fact.recompose(), f);
        prop_assert!(fact.degeneracies.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(fact.faces.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn constant_homotopies_are_homotopies(x in 0usize..4, y in 1usize..4, seed in prop::collection::vec(0usize..4, 4)) {
        let c = FinSet::new(4);
        let f = finset_standard(2);
        let m = Function::new(x, y, (0..x).map(|k| seed[k] % y).collect()).unwrap();
        let h = constant_homotopy(&c, &f, &m).unwrap();
        prop_assert!(is_homotopy(&c, &f, &h.h, &m, &m).unwrap());
    }

    #[test]
    fn finset_relation_is_symmetric(x in 0usize..3, y in 0usize..3) {
        let c = FinSet::new(3);
        let f = finset_standard(2);
        let cl = homotopy_classes(&c, &f, &x, &y).unwrap();
        prop_assert!(cl.raw_symmetric());
        prop_assert!(cl.raw_reflexive());
        let total: usize = cl.sizes().iter().sum();
        prop_assert_eq!(total, c.hom(&x, &y).unwrap().len());
    }
}

#[test]
fn product_of_simplices_is_acyclic() {
    let x = TruncSimplicialSet::product(&TruncSimplicialSet::standard(1, 2), &TruncSimplicialSet::standard(1, 2)).unwrap();
    let c = ChainComplex::from_sset(&x, Coefficients::Integers, true).unwrap();
    for n in 0..2 {
        assert!(homcat::chain::homology(&c, n).unwrap().is_zero());
    }
}
