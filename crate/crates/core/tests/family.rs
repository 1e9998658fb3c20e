use galois_span::family::{
    exp_join, exp_meet, family_kappa, kappa_polynomial, lemma_matrix_check, nonexistence_certificate, FamilySpec,
    RelationCandidate,
};
use galois_span::lfunction::verify_prop_formula;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn join_and_meet(a in prop::collection::vec(0u32..5, 3), b in prop::collection::vec(0u32..5, 3)) {
        let j = exp_join(&a, &b).unwrap();
        let m = exp_meet(&a, &b).unwrap();
        for i in 0..3 {
            prop_assert_eq!(j[i] + m[i], a[i] + b[i]);
        }
    }

    #[test]
    fn lemma_matrix_magnitude(p in prop::sample::select(vec![2u64, 3, 5]), s in 1u32..=4) {
        let c = lemma_matrix_check(&[p], &[s]).unwrap();
        prop_assert!(c.nonzero && c.magnitude_matches && c.sign_matches_corrected);
    }
}

#[test]
fn family_matches_product_route() {
    for (p, s, b) in [(vec![2], vec![2], vec![1]), (vec![3], vec![1], vec![0]), (vec![2, 3], vec![1, 1], vec![0, 1])] {
        let f = FamilySpec::new(p, s, b).unwrap();
        // t = 0 is the cycle, where the product formula degenerates.
        for t in 1..=6 {
            let c = f.cover(t).unwrap();
            let r = verify_prop_formula(&c).unwrap();
            assert!(r.passed);
            let n = BigInt::from(f.order().unwrap());
            assert_eq!(r.left, (n * family_kappa(&f, t).unwrap()).to_string());
        }
    }
}

#[test]
fn kappa_polynomials_have_positive_leading_terms() {
    let f = FamilySpec::new(vec![2], vec![3], vec![1]).unwrap();
    for a in [[1u32], [2], [3]] {
        let poly = kappa_polynomial(&f, &a).unwrap();
        let lead = poly.coeffs().last().unwrap().clone();
        assert!(lead.is_positive());
        for t in 0..10i64 {
            let v = poly.eval(&BigRational::from_integer(t.into()));
            assert!(v.is_integer() && !v.is_negative() && !v.is_zero());
        }
    }
}

#[test]
fn certificate_for_thirty() {
    let c = nonexistence_certificate(30).unwrap();
    assert_eq!((c.rank, c.indices.len()), (7, 7));
    assert!(c.interpolated && c.passed());
}

#[test]
fn no_relation_survives_the_family() {
    // q·κ(X_{Z/2})·κ(X_{Z/4})^-1 = 1 fails somewhere in the family.
    let r = RelationCandidate {
        m: vec![0, 1, -1],
        q: BigRational::from_integer(2.into()),
    };
    let holds_everywhere = (0..4).all(|t| (0..=2).all(|b| r.holds_on(4, &[b], t).unwrap()));
    assert!(!holds_everywhere);
}
