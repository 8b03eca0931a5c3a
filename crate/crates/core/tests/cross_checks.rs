//! Cross-module consistency: the exterior-square route to the Schur
//! multiplier against the bar-complex homology route, presentation-built
//! groups against permutation models, and the coprime product law.

mod common;

use common::*;

use wedgedeg_core::degrees::{
    commutativity_degree_n, exterior_degree_n, verify_coprime_multiplicativity,
};
use wedgedeg_core::group::FiniteGroup;
use wedgedeg_core::homology::{bar_h1, bar_h2, bar_h2_with_cap};
use wedgedeg_core::wedge::{exterior_square, PairConfig, TensorStructure};

fn ext(g: &FiniteGroup) -> TensorStructure {
    exterior_square(g, &PairConfig::default()).unwrap()
}

/// Multiplier order and invariants from the pair-group kernel must match
/// second bar homology, and the exterior square factors as |M| * |G'|.
fn assert_multiplier_consistent(g: &FiniteGroup) {
    let s = ext(g);
    let data = s.schur_multiplier().unwrap();
    let h2 = bar_h2_with_cap(g, 24).unwrap();
    assert_eq!(
        data.abelian_invariants, h2,
        "multiplier invariants disagree with homology for {g:?}"
    );
    let product: u64 = h2.iter().product();
    assert_eq!(data.multiplier_order as u64, product.max(1), "{g:?}");
    assert_eq!(
        s.pairing_subgroup().order(),
        data.multiplier_order * g.derived_subgroup().order(),
        "{g:?}"
    );
}

#[test]
fn multiplier_cross_check_abelian_groups() {
    for m in 1..=8 {
        assert_multiplier_consistent(&cyclic(m));
    }
    assert_multiplier_consistent(&cyclic(2).direct_product(&cyclic(2)));
    assert_multiplier_consistent(&cyclic(3).direct_product(&cyclic(3)));
    assert_multiplier_consistent(&cyclic(2).direct_product(&cyclic(4)));
}

#[test]
fn multiplier_cross_check_small_nonabelian_groups() {
    assert_multiplier_consistent(&sym3());
    assert_multiplier_consistent(&dihedral_perm(8));
    assert_multiplier_consistent(&quaternion_presented(8));
    assert_multiplier_consistent(&quaternion_presented(12));
    assert_multiplier_consistent(&alt4());
}

#[test]
fn multiplier_cross_check_order_sixteen() {
    assert_multiplier_consistent(&dihedral_perm(16));
    assert_multiplier_consistent(&quaternion_presented(16));
}

#[test]
fn bar_h2_handles_sym4() {
    assert_eq!(bar_h2(&sym4()).unwrap(), vec![2]);
    assert_eq!(bar_h1(&sym4()).unwrap(), vec![2]);
}

#[test]
fn dihedral_models_agree() {
    for order in [4usize, 6, 8, 10, 12] {
        let presented = dihedral_presented(order);
        let perm = dihedral_perm(order);
        for n in 1..=2 {
            assert_eq!(
                commutativity_degree_n(&presented, n),
                commutativity_degree_n(&perm, n),
                "d_{n} differs between dihedral models of order {order}"
            );
        }
        let sp = ext(&presented);
        let sq = ext(&perm);
        for n in 1..=2 {
            assert_eq!(
                exterior_degree_n(&presented, &sp, n).unwrap(),
                exterior_degree_n(&perm, &sq, n).unwrap(),
                "exterior degree differs between dihedral models of order {order}"
            );
        }
    }
}

#[test]
fn sym3_times_z5_multiplies() {
    let s3 = sym3();
    let z5 = cyclic(5);
    let check = verify_coprime_multiplicativity(&s3, &z5, 1, &PairConfig::default()).unwrap();
    assert!(check.holds);
    // M(S3) is trivial, so the exterior degree equals the commutativity
    // degree 1/2, and the cyclic factor contributes nothing.
    assert_eq!(
        check.product_value,
        commutativity_degree_n(&s3, 1),
        "product exterior degree should be d(S3) = 1/2"
    );
}

#[test]
fn quaternion_groups_are_multiple_unidegree() {
    for order in [8usize, 12, 16] {
        let q = quaternion_presented(order);
        let s = ext(&q);
        assert_eq!(s.schur_multiplier().unwrap().multiplier_order, 1, "Q{order}");
        for n in 1..=3 {
            assert_eq!(
                commutativity_degree_n(&q, n),
                exterior_degree_n(&q, &s, n).unwrap(),
                "Q{order} n={n}"
            );
        }
    }
}
