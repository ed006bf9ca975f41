use graphknot::expr::rewrite::random_isotopy_step;
use graphknot::expr::{equal_normalized, kit_of, normalize, parse_expr, KnotExpr};
use graphknot::invariants::{alexander, genus, LaurentPoly};
use graphknot::rhd::{build, build_sum, extract, validate};
use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn class() -> impl Strategy<Value = (i64, i64)> {
    (0i64..=5, -5i64..=5).prop_filter("primitive", |(p, q)| p.gcd(q) == 1)
}

fn expr() -> impl Strategy<Value = KnotExpr> {
    let leaf = prop_oneof![
        Just(KnotExpr::Unknot),
        class().prop_map(|(p, q)| KnotExpr::torus(p, q)),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            (class(), inner.clone()).prop_map(|((p, q), c)| KnotExpr::cable(p, q, c)),
            prop::collection::vec(inner, 2..=3).prop_map(KnotExpr::Sum),
        ]
    })
}

fn mirror(e: &KnotExpr) -> KnotExpr {
    match e {
        KnotExpr::Unknot => KnotExpr::Unknot,
        KnotExpr::Cable { p, q, companion } => KnotExpr::cable(*p, -q, mirror(companion)),
        KnotExpr::Sum(xs) => KnotExpr::Sum(xs.iter().map(mirror).collect()),
    }
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (-4i64..=4, prop::collection::vec(-9i128..=9, 0..6)).prop_map(|(o, c)| LaurentPoly::new(o, c))
}

proptest! {
    #[test]
    fn normalize_is_idempotent(e in expr()) {
        let n = normalize(&e).unwrap();
        prop_assert_eq!(normalize(&n).unwrap(), n);
    }

    #[test]
    fn text_round_trip(e in expr()) {
        prop_assert_eq!(parse_expr(&e.serialize()).unwrap(), e.clone());
        let n = normalize(&e).unwrap();
        prop_assert_eq!(parse_expr(&n.to_string()).unwrap(), n);
    }

    #[test]
    fn isotopy_steps_preserve_everything(e in expr(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_isotopy_step(&e, &mut rng);
        prop_assert!(equal_normalized(&e, &f).unwrap());
        prop_assert_eq!(alexander(&e).unwrap(), alexander(&f).unwrap());
        prop_assert_eq!(genus(&e).unwrap(), genus(&f).unwrap());
    }

    #[test]
    fn mirrors_share_invariants(e in expr()) {
        prop_assert_eq!(alexander(&e).unwrap(), alexander(&mirror(&e)).unwrap());
        prop_assert_eq!(genus(&e).unwrap(), genus(&mirror(&e)).unwrap());
    }

    #[test]
    fn genus_is_additive(a in expr(), b in expr()) {
        let s = KnotExpr::sum([a.clone(), b.clone()]);
        prop_assert_eq!(genus(&s).unwrap(), genus(&a).unwrap() + genus(&b).unwrap());
    }

    #[test]
    fn alexander_is_symmetric_and_normalized(e in expr()) {
        let a = alexander(&e).unwrap();
        let c = a.coeffs();
        prop_assert!(c.iter().eq(c.iter().rev()));
        prop_assert_eq!(c.iter().sum::<i128>(), 1);
    }

    #[test]
    fn kits_are_coherent(e in expr()) {
        let kit = kit_of(&e).unwrap();
        prop_assert!(kit.check(&normalize(&e).unwrap()).is_ok());
    }

    #[test]
    fn build_extract_round_trip(e in expr()) {
        let r = build(&e).unwrap();
        prop_assert!(validate(&r).is_ok());
        let got = extract(&r, r.distinguished_source().unwrap()).unwrap().expr;
        prop_assert_eq!(got, normalize(&e).unwrap());
    }

    #[test]
    fn sums_of_builds_validate(a in expr(), b in expr()) {
        let (ra, rb) = (build(&a).unwrap(), build(&b).unwrap());
        let r = build_sum(&ra, &rb, ra.distinguished_source().unwrap(), rb.distinguished_source().unwrap()).unwrap();
        prop_assert!(validate(&r).is_ok());
        let got = extract(&r, r.distinguished_source().unwrap()).unwrap().expr;
        prop_assert!(equal_normalized(&got, &KnotExpr::sum([a, b])).unwrap());
    }

    #[test]
    fn laurent_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
        let left = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
        let right = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn exact_division_recovers_factor(
        a in poly(),
        o in -3i64..=3,
        mut c in prop::collection::vec(-9i128..=9, 0..5),
        lead in prop::sample::select(vec![-1i128, 1]),
    ) {
        c.push(lead);
        let b = LaurentPoly::new(o, c);
        let prod = a.checked_mul(&b).unwrap();
        let (q, r) = prod.div_rem(&b).unwrap();
        prop_assert!(r.is_zero());
        prop_assert_eq!(q, a);
    }
}
