use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use prtoolkit::decide::{decide, DecideOptions, Status};
use prtoolkit::model::{classify, parse_equation_text, Equation, EquationSystem, Expr};
use prtoolkit::ramsey::{enumerate_solutions, DEFAULT_ENUM_BUDGET};

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..20).prop_map(|n| Expr::Num {
            value: BigRational::from_integer(BigInt::from(n))
        }),
        (0usize..4).prop_map(|i| Expr::Var { name: NAMES[i].into() }),
        (0usize..4, 2u32..5).prop_map(|(i, exp)| Expr::Pow {
            var: NAMES[i].into(),
            exp
        }),
        (2i64..7, 0usize..4).prop_map(|(b, i)| Expr::Exp {
            base: BigInt::from(b),
            var: NAMES[i].into()
        }),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg { arg: Box::new(a) }),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Add {
                lhs: Box::new(l),
                rhs: Box::new(r)
            }),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Sub {
                lhs: Box::new(l),
                rhs: Box::new(r)
            }),
            (inner.clone(), inner).prop_map(|(l, r)| Expr::Mul {
                lhs: Box::new(l),
                rhs: Box::new(r)
            }),
        ]
    })
}

fn system() -> impl Strategy<Value = EquationSystem> {
    prop::collection::vec((expr(), expr()), 1..3).prop_map(|eqs| EquationSystem {
        equations: eqs.into_iter().map(|(lhs, rhs)| Equation { lhs, rhs }).collect(),
    })
}

fn linear_text(coeffs: &[i64], rhs: i64) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .zip(NAMES)
        .map(|(c, v)| format!("({c})*{v}"))
        .collect();
    format!("{} = {rhs}", terms.join(" + "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(sys in system()) {
        let text = sys.to_string();
        let back = parse_equation_text(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, sys, "{}", text);
    }

    #[test]
    fn classification_survives_renaming(
        coeffs in prop::collection::vec(-6i64..=6, 2..=4),
        rhs in -5i64..=5,
        square in any::<bool>(),
    ) {
        prop_assume!(coeffs.iter().any(|&c| c != 0));
        let mut text = linear_text(&coeffs, rhs);
        if square {
            text = text.replacen("*x", "*x^2", 1);
        }
        let sys = parse_equation_text(&text).unwrap();
        let renamed = sys.rename(&|v: &str| format!("{v}_r"));
        let a = classify(&sys).unwrap().class;
        let b = classify(&renamed).unwrap().class;
        prop_assert_eq!(a.name(), b.name());
        let va: BTreeSet<String> = a.vars().iter().map(|v| format!("{v}_r")).collect();
        let vb: BTreeSet<String> = b.vars().into_iter().collect();
        prop_assert_eq!(va, vb);
        let opts = DecideOptions::default();
        let (ra, rb) = (decide(&a, &opts, None), decide(&b, &opts, None));
        match (ra, rb) {
            (Ok(ra), Ok(rb)) => {
                prop_assert_eq!(ra.status, rb.status);
                prop_assert_eq!(ra.witness(), rb.witness());
            }
            (Err(ea), Err(eb)) => prop_assert_eq!(ea.to_string(), eb.to_string()),
            (ra, rb) => prop_assert!(false, "{:?} vs {:?}", ra.is_ok(), rb.is_ok()),
        }
    }

    #[test]
    fn constant_witness_is_monochromatic_everywhere(
        coeffs in prop::collection::vec(-6i64..=6, 2..=3),
        a in 1i64..=12,
    ) {
        prop_assume!(coeffs.iter().any(|&c| c != 0));
        let rhs: i64 = coeffs.iter().sum::<i64>() * a;
        let class = classify(&parse_equation_text(&linear_text(&coeffs, rhs)).unwrap()).unwrap().class;
        let report = decide(&class, &DecideOptions::default(), None).unwrap();
        prop_assert!(matches!(report.status, Status::PrConstant | Status::Pr));
        if report.status == Status::PrConstant {
            let w = report.witness().unwrap();
            let wv: u64 = w.to_string().parse().unwrap();
            let n = wv.max(12);
            let sols = enumerate_solutions(&class, n, DEFAULT_ENUM_BUDGET).unwrap();
            let k = sols.vars.len();
            // Every coloring colors (w, ..., w) with a single color.
            prop_assert!(sols.tuples.contains(&vec![wv; k]));
        }
    }
}
