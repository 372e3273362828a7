use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;

use bchlab::analysis::{bch_bound, macwilliams_transform, min_distance, weight_enumerator_exhaustive, Certificate};
use bchlab::codes::{defining_set_for, CodeSpec, DefiningSet, Family, LinearCodeModel, Parity};
use bchlab::cyclotomic::{coset_leader, LeaderTable};
use bchlab::formulas as f;
use bchlab::ExtensionField;

const FIELDS: [(u64, u32); 6] = [(3, 2), (3, 3), (5, 2), (7, 2), (9, 2), (3, 4)];

fn model_strategy() -> impl Strategy<Value = (u64, u32, Family, u64, u64)> {
    (0..FIELDS.len(), any::<bool>(), 2u64..40, 0u64..4).prop_map(|(i, cyc, delta, b)| {
        let (q, m) = FIELDS[i];
        let n = (q.pow(m) - 1) / 2;
        let family = if cyc { Family::Cyclic } else { Family::Negacyclic };
        (q, m, family, 2 + delta % (n - 1), b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn defining_sets_are_closed((q, m, family, delta, b) in model_strategy()) {
        let n = (q.pow(m) - 1) / 2;
        let t = defining_set_for(&CodeSpec::new(n, family, delta, b).unwrap(), q);
        for &e in &t.exponents {
            prop_assert!(t.contains(e * q % t.modulus));
            if t.parity == Parity::Odd {
                prop_assert_eq!(e % 2, 1);
            }
        }
        prop_assert_eq!(t.dual().dual(), t);
    }

    #[test]
    fn distance_respects_bch_bound((q, m, family, delta, b) in model_strategy()) {
        let field = Arc::new(ExtensionField::from_q(q, m).unwrap());
        let n = field.alpha_order() / 2;
        let model = LinearCodeModel::bch(field, CodeSpec::new(n, family, delta, b).unwrap()).unwrap();
        let r = min_distance(&model, 1 << 12).unwrap();
        let bound = bch_bound(model.defining_set()).min(n + 1);
        if r.certificate == Certificate::LowerBoundOnly {
            prop_assert_eq!(r.d, bound);
        } else {
            prop_assert!(r.d >= bound);
        }
    }

    #[test]
    fn macwilliams_is_an_involution((q, m, family, delta, b) in model_strategy()) {
        let field = Arc::new(ExtensionField::from_q(q, m).unwrap());
        let n = field.alpha_order() / 2;
        let model = LinearCodeModel::bch(field, CodeSpec::new(n, family, delta, b).unwrap()).unwrap();
        prop_assume!(q.checked_pow(model.k() as u32).is_some_and(|v| v <= 1 << 12));
        let w = weight_enumerator_exhaustive(&model, 1 << 12).unwrap();
        prop_assert_eq!(w.total(), BigUint::from(q).pow(model.k() as u32));
        let dual = macwilliams_transform(&w).unwrap();
        prop_assert_eq!(dual.total(), BigUint::from(q).pow((n - model.k()) as u32));
        prop_assert_eq!(macwilliams_transform(&dual).unwrap(), w);
    }

    #[test]
    fn leader_tables_partition(q in prop::sample::select(vec![3u64, 5, 7, 9]), modulus in 1u64..400) {
        prop_assume!(gcd(modulus, q) == 1);
        let t = LeaderTable::compute(modulus, q, 1 << 20).unwrap();
        prop_assert_eq!(t.sizes.iter().map(|&s| s as u64).sum::<u64>(), modulus);
        for x in 0..modulus {
            prop_assert!(t.is_leader(coset_leader(modulus, q, x).unwrap()));
        }
    }

    #[test]
    fn field_inverses(q in prop::sample::select(vec![3u64, 5, 9, 25]), m in 1u32..3, k in 0i128..1000) {
        let field = ExtensionField::from_q(q, m).unwrap();
        let x = field.alpha_pow(k);
        prop_assert_eq!(field.mul(x, field.inv(x).unwrap()).unwrap(), field.one());
        let y = field.alpha_pow(k * 7 + 3);
        let lhs = field.mul(x, field.add(y, field.one()).unwrap()).unwrap();
        let rhs = field.add(field.mul(x, y).unwrap(), x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn uniform_digit_formula_matches_oracle(q in prop::sample::select(vec![5u64, 7, 9, 11, 13]), m in 3u32..7, a in 1u64..6) {
        prop_assume!(2 * a < q - 1);
        let claim = f::dim_uniform_digit(q, m, a).unwrap();
        prop_assert_eq!(claim.k, f::digit_oracle_uniform(q, m, a).unwrap());
    }

    #[test]
    fn alternating_formula_matches_oracle(q in prop::sample::select(vec![5u64, 7, 9, 11]), half in 2u32..4, a in 0u64..8, b in 1u64..8) {
        let m = 2 * half;
        prop_assume!(f::FormulaParams::new(q, m, a, b).check_alternating().is_ok());
        let claim = f::dim_alternating_digit(q, m, a, b).unwrap();
        prop_assert_eq!(claim.k, f::digit_oracle_alternating(q, m, a, b).unwrap());
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn universe_dual_is_empty() {
    let u = DefiningSet::universe(26, 3, Parity::Odd);
    assert!(u.dual().is_empty());
}
