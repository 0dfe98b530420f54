use proptest::prelude::*;
use wronskian_cas::wronskian::{determinant_bareiss, determinant_cofactor};
use wronskian_cas::{
    apply_operator, minimal_annihilator, parse, ratio, wronskian, CasError, Polynomial, Rational, RationalFunction,
    SymbolicElement,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn center() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![ratio(0, 1), ratio(1, 1), ratio(-2, 1), ratio(1, 2)])
}

fn coefficient() -> impl Strategy<Value = RationalFunction> {
    (prop::collection::vec(rational(), 1..=3), prop::option::of(center())).prop_map(|(cs, pole)| {
        let r = RationalFunction::polynomial(Polynomial::new(cs));
        match pole {
            Some(c) => &r * &RationalFunction::linear_power(&c, -1),
            None => r,
        }
    })
}

fn radical() -> impl Strategy<Value = SymbolicElement> {
    (
        center(),
        prop::sample::select(vec![ratio(1, 2), ratio(1, 3), ratio(2, 3), ratio(-1, 2)]),
    )
        .prop_map(|(c, a)| SymbolicElement::radical(&c, &a))
}

fn log_power() -> impl Strategy<Value = SymbolicElement> {
    (center(), 1u32..=2).prop_map(|(c, k)| SymbolicElement::log(&c, k))
}

fn term() -> impl Strategy<Value = SymbolicElement> {
    (
        coefficient(),
        prop::option::of(radical()),
        prop::option::of(log_power()),
    )
        .prop_map(|(r, rad, log)| {
            let mut e = SymbolicElement::rational(r);
            if let Some(x) = rad {
                e = &e * &x;
            }
            if let Some(x) = log {
                e = &e * &x;
            }
            e
        })
}

fn element() -> impl Strategy<Value = SymbolicElement> {
    prop::collection::vec(term(), 1..=3).prop_map(|ts| ts.iter().fold(SymbolicElement::zero(), |a, b| &a + b))
}

/// Entries with rational coefficients and log layers only.
fn log_element() -> impl Strategy<Value = SymbolicElement> {
    prop::collection::vec((coefficient(), prop::option::of(log_power())), 1..=2).prop_map(|ts| {
        ts.into_iter().fold(SymbolicElement::zero(), |acc, (r, log)| {
            let e = SymbolicElement::rational(r);
            &acc + &log.map_or(e.clone(), |l| &e * &l)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_rule(a in element(), b in element()) {
        let lhs = (&a * &b).derive();
        let rhs = &(&a.derive() * &b) + &(&a * &b.derive());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derive_is_linear(a in element(), b in element(), c in coefficient()) {
        let c = SymbolicElement::rational(RationalFunction::constant(c.numerator().coeff(0)));
        let lhs = (&(&c * &a) + &b).derive();
        let rhs = &(&c * &a.derive()) + &b.derive();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn render_parse_round_trip(e in element()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn exact_division_recovers_factor(a in element(), b in term()) {
        prop_assume!(!b.is_zero());
        let product = &a * &b;
        prop_assert_eq!(product.div_exact(&b), Some(a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wronskian_column_operation(y1 in term(), y2 in term(), y3 in term()) {
        let shifted = wronskian(&[&y1 + &y2, y2.clone(), y3.clone()]);
        prop_assert_eq!(shifted, wronskian(&[y1, y2, y3]));
    }

    #[test]
    fn wronskian_alternates(y1 in term(), y2 in term()) {
        prop_assert_eq!(wronskian(&[y1.clone(), y2.clone()]), -wronskian(&[y2.clone(), y1.clone()]));
        prop_assert!(wronskian(&[y1.clone(), y1]).is_zero());
    }

    #[test]
    fn determinant_routes_agree(entries in prop::collection::vec(log_element(), 9), rad in prop::option::of(radical())) {
        let m: Vec<Vec<SymbolicElement>> = entries
            .chunks(3)
            .map(|row| row.iter().map(|e| rad.as_ref().map_or(e.clone(), |r| e * r)).collect())
            .collect();
        prop_assert_eq!(determinant_bareiss(&m), Some(determinant_cofactor(&m)));
    }

    #[test]
    fn constructed_operators_annihilate(basis in prop::collection::vec(term(), 1..=2)) {
        match minimal_annihilator(&basis) {
            Ok(op) => {
                prop_assert_eq!(op.order(), basis.len());
                for b in &basis {
                    prop_assert!(apply_operator(&op, b).is_zero(), "{} on {}", op, b);
                }
                let combo = basis.iter().fold(SymbolicElement::zero(), |a, b| &a + b);
                prop_assert!(apply_operator(&op, &combo).is_zero());
            }
            Err(e) => {
                prop_assert_eq!(e, CasError::DependentBasis);
                prop_assert!(wronskian(&basis).is_zero());
            }
        }
    }

    #[test]
    fn connected_orbits_have_rational_coefficients(c in center(), a in prop::sample::select(vec![ratio(1, 2), ratio(1, 3), ratio(3, 4)])) {
        let op = minimal_annihilator(&[SymbolicElement::radical(&c, &a)]).unwrap();
        prop_assert!(op.all_rational());
        let op = minimal_annihilator(&[SymbolicElement::log(&c, 1), SymbolicElement::one()]).unwrap();
        prop_assert!(op.all_rational());
    }
}
