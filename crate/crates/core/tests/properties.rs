//! Property-based checks on the coefficient ring and the coalgebra
//! structure, with proptest-generated inputs.

use bichar_core::coeff::{rat, BivariateSeries, LaurentPoly};
use bichar_core::hopf::{AlgebraSignature, HopfElement, Monomial};
use proptest::prelude::*;

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i32..=4, -9i64..=9, 1i64..=5), 0..=8).prop_map(|terms| {
        let mut out = LaurentPoly::zero();
        for (e, n, d) in terms {
            out = out.add(&LaurentPoly::monomial(e, rat(n, d)));
        }
        out
    })
}

fn arb_unit_series(order: u32) -> impl Strategy<Value = BivariateSeries> {
    let keys: Vec<(u32, u32)> = (0..=order)
        .flat_map(|m| (0..=(order - m)).map(move |n| (m, n)))
        .filter(|&(m, n)| m + n > 0)
        .collect();
    prop::collection::vec(-4i64..=4, keys.len()).prop_map(move |vals| {
        let mut s = BivariateSeries::one(order);
        for (&(m, n), &v) in keys.iter().zip(&vals) {
            s.set_coeff(m, n, LaurentPoly::monomial(-1, rat(v, 2)));
        }
        s
    })
}

fn arb_element() -> impl Strategy<Value = HopfElement> {
    let sig = AlgebraSignature::plain(2, 3);
    prop::collection::vec(
        (
            prop::collection::vec(-2i64..=2, 2),
            prop::collection::vec(0u32..=2, 3),
            -5i64..=5,
        ),
        1..=3,
    )
    .prop_map(move |terms| {
        let mut out = HopfElement::zero(sig.clone());
        for (group, prims, c) in terms {
            let prim = prims
                .iter()
                .enumerate()
                .filter(|&(_, &k)| k > 0)
                .map(|(p, &k)| (p, k))
                .collect();
            let c = if c == 0 { 1 } else { c };
            out.add_term(Monomial::new(group, prim), LaurentPoly::from_int(c));
        }
        out
    })
}

proptest! {
    #[test]
    fn laurent_ring_laws(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn series_sqrt_squares_back(s in arb_unit_series(5)) {
        let t = s.sqrt().unwrap();
        prop_assert_eq!(t.mul(&t), s);
    }

    #[test]
    fn series_log_is_additive(s in arb_unit_series(4), t in arb_unit_series(4)) {
        let lhs = s.mul(&t).log().unwrap();
        let rhs = s.log().unwrap().add(&t.log().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_is_coassociative_and_cocommutative(a in arb_element()) {
        let d = a.coproduct();
        prop_assert_eq!(d.coproduct_left(), d.coproduct_right());
        prop_assert_eq!(d.swap(), a.coproduct());
        prop_assert_eq!(d.counit_left(), a.clone());
        prop_assert_eq!(a.operator_coproduct(), a.coproduct());
    }

    #[test]
    fn antipode_is_a_convolution_inverse(a in arb_element()) {
        let eta = HopfElement::scalar(a.signature().clone(), a.counit());
        prop_assert_eq!(a.coproduct().contract_antipode_left(), eta.clone());
        prop_assert_eq!(a.coproduct().contract_antipode_right(), eta);
    }
}
