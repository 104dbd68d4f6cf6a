use inav_symbolic::{Rational, RVec3, ScalarPoly, VecPoly};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn rvec() -> impl Strategy<Value = RVec3> {
    [rational(), rational(), rational()].prop_map(RVec3)
}

fn vpoly() -> impl Strategy<Value = VecPoly> {
    prop::collection::vec(rvec(), 0..5).prop_map(VecPoly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_and_division_are_exact(a in rational(), b in nonzero_rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
    }

    #[test]
    fn normalized_after_arithmetic(a in rational(), b in rational()) {
        let p = &a * &b;
        prop_assert!(p.denom() > &0.into());
        let g = num_gcd(p.numer(), p.denom());
        prop_assert!(g == 1.into());
    }

    #[test]
    fn cross_is_bilinear(p in vpoly(), q in vpoly(), r in vpoly(), c in rational()) {
        let lhs = p.linear(&q, &c).cross(&r, None);
        let rhs = p.cross(&r, None).linear(&q.cross(&r, None), &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cross_is_antisymmetric(p in vpoly(), q in vpoly()) {
        prop_assert_eq!(p.cross(&q, None), q.cross(&p, None).scale(&Rational::from_integer(-1)));
        prop_assert!(p.cross(&p, None).is_zero());
    }

    #[test]
    fn cross_degree_bound(p in vpoly(), q in vpoly()) {
        if let (Some(dp), Some(dq), Some(d)) = (p.degree(), q.degree(), p.cross(&q, None).degree()) {
            prop_assert!(d <= dp + dq);
        }
    }

    #[test]
    fn derivative_inverts_integral(p in vpoly()) {
        prop_assert_eq!(p.integrate().derivative(), p.clone());
        if let Some(d) = p.degree() {
            prop_assert_eq!(p.integrate().degree(), Some(d + 1));
        }
    }

    #[test]
    fn jacobi_identity(a in rvec(), b in rvec(), c in rvec()) {
        let s = a.cross(&b.cross(&c)).add(&b.cross(&c.cross(&a))).add(&c.cross(&a.cross(&b)));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn components_roundtrip(p in vpoly()) {
        let (x, y, z) = (p.component(0), p.component(1), p.component(2));
        prop_assert_eq!(VecPoly::from_components([&x, &y, &z]), p);
    }

    #[test]
    fn scalar_series_division_roundtrip(
        num in prop::collection::vec(rational(), 1..5),
        den_tail in prop::collection::vec(rational(), 0..4),
        c0 in nonzero_rational(),
    ) {
        let mut den = vec![c0];
        den.extend(den_tail);
        let (n, d) = (ScalarPoly::new(num), ScalarPoly::new(den));
        let q = n.div_series(&d, 6).unwrap();
        prop_assert_eq!(q.mul(&d, Some(6)), n.truncate(6));
    }

    #[test]
    fn display_parse_roundtrip(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }
}

fn num_gcd(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> num_bigint::BigInt {
    use num_traits::{Signed, Zero};
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}
