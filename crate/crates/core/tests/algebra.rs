use galois_span::family::{cauchy_binet_all, k_prime_holds, m_bar_decomposition_holds};
use galois_span::{Cyclotomic, IntMatrix, IntPolynomial, Matrix, Polynomial, RationalMatrix, Ring};
use num_bigint::BigInt;
use proptest::prelude::*;

fn int_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
        let rows: Vec<Vec<i64>> = v.chunks(n).map(<[i64]>::to_vec).collect();
        IntMatrix::from_i64(&rows)
    })
}

fn cyclotomic(order: usize) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-4i64..=4, order).prop_map(move |c| {
        let c: Vec<BigInt> = c.into_iter().map(BigInt::from).collect();
        Cyclotomic::from_coeffs(order, &c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinants_agree(m in (1usize..=5).prop_flat_map(int_matrix)) {
        let bareiss = m.det_bareiss().unwrap();
        prop_assert_eq!(m.det_berkowitz().unwrap(), bareiss.clone());
        prop_assert_eq!(m.det_cofactor().unwrap(), bareiss.clone());
        let q = RationalMatrix::from_int(&m);
        prop_assert_eq!(q.det_exact().unwrap(), num_rational::BigRational::from_integer(bareiss));
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..=4).prop_flat_map(|n| (int_matrix(n), int_matrix(n)))) {
        let ab = a.mul(&b).det_bareiss().unwrap();
        prop_assert_eq!(ab, a.det_bareiss().unwrap() * b.det_bareiss().unwrap());
    }

    #[test]
    fn kronecker_determinant(a in int_matrix(2), b in int_matrix(3)) {
        // det(A ⊗ B) = det(A)^3 det(B)^2
        let lhs = a.kronecker(&b).det_bareiss().unwrap();
        let rhs = Ring::pow(&a.det_bareiss().unwrap(), 3) * Ring::pow(&b.det_bareiss().unwrap(), 2);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cauchy_binet((a, b) in (3usize..=4).prop_flat_map(|n| (int_matrix(n), int_matrix(n)))) {
        prop_assert!(cauchy_binet_all(&a, &b).unwrap());
    }

    #[test]
    fn cyclotomic_ring_laws(a in cyclotomic(6), b in cyclotomic(6), c in cyclotomic(4)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }

    #[test]
    fn norm_like_products_are_real(a in cyclotomic(5)) {
        // a·ā is fixed by conjugation.
        let n = a.mul(&a.conj());
        prop_assert_eq!(n.conj(), n);
    }

    #[test]
    fn interpolation_round_trip(coeffs in prop::collection::vec(-20i64..=20, 1..7)) {
        let p = Polynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        let pts: Vec<(BigInt, BigInt)> = (0..=coeffs.len() as i64)
            .map(|x| (BigInt::from(x), p.eval(&BigInt::from(x))))
            .collect();
        prop_assert_eq!(IntPolynomial::interpolate(&pts).unwrap(), p);
    }

    #[test]
    fn kronecker_structure_of_m(p in prop::sample::select(vec![2u64, 3, 5, 7]), s in 1u32..=4) {
        prop_assert!(k_prime_holds(p, s));
        prop_assert!(m_bar_decomposition_holds(&[p], &[s]).unwrap());
    }
}

#[test]
fn roots_of_unity_multiply() {
    let z = Cyclotomic::root_of_unity(12, 5);
    let w = Cyclotomic::root_of_unity(12, 7);
    assert_eq!(z.mul(&w), Cyclotomic::one());
    let sum = (0..12).fold(Cyclotomic::zero(), |acc, k| acc.add(&Cyclotomic::root_of_unity(12, k)));
    assert!(sum.is_zero());
}

#[test]
fn identity_kronecker() {
    let i2: Matrix<BigInt> = Matrix::identity(2);
    assert_eq!(i2.kronecker(&i2), Matrix::identity(4));
}
