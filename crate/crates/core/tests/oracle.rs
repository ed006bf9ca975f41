use graphknot::expr::KnotExpr;
use graphknot::invariants::alexander;
use graphknot::oracle::{enumerate_rhds, poly_div_torus, EnumerationBudget};
use graphknot::rhd::{check_witnesses, extract, validate};

fn is_torus(e: &KnotExpr) -> bool {
    matches!(e, KnotExpr::Cable { companion, .. } if **companion == KnotExpr::Unknot)
}

#[test]
fn one_saddle_members_extract_to_small_knots() {
    let b = EnumerationBudget {
        max_saddles: 1,
        coeff_bound: 2,
        ..Default::default()
    };
    let mut valid = 0;
    for r in enumerate_rhds(b).filter(|r| validate(r).is_ok()) {
        valid += 1;
        let ids: Vec<String> = r.events.iter().map(|e| e.id().to_string()).collect();
        for k in ids {
            let res = extract(&r, &k).unwrap();
            check_witnesses(&res).unwrap();
            let ok = match &res.expr {
                KnotExpr::Unknot => true,
                KnotExpr::Sum(xs) => xs.len() == 2,
                e => is_torus(e),
            };
            assert!(ok, "{k} extracts to {}\n{r}", res.expr);
        }
    }
    assert!(valid > 0);
}

#[test]
fn enumerated_torus_knots_match_the_division_oracle() {
    let b = EnumerationBudget {
        max_saddles: 1,
        coeff_bound: 3,
        ..Default::default()
    };
    let mut seen = 0;
    for r in enumerate_rhds(b).filter(|r| validate(r).is_ok()) {
        for k in r.saddles().map(|s| s.id.clone()) {
            if let KnotExpr::Cable { p, q, .. } = extract(&r, &k).unwrap().expr {
                if p >= 2 && q.abs() >= 2 {
                    let (a, b) = (p.min(q.abs()) as u32, p.max(q.abs()) as u32);
                    let want = poly_div_torus(a, b).unwrap();
                    let got = alexander(&KnotExpr::torus(p, q)).unwrap();
                    assert_eq!(got.coeffs(), want.coeffs());
                    seen += 1;
                }
            }
        }
    }
    assert!(seen > 0);
}
