mod common;

use std::collections::BTreeSet;

use common::Surd;
use cyclotomic::ring::{Automorphism, RingElement, RingId};
use proptest::prelude::*;

/// Doubled numerators indexed by radical mask, with the order's parity rule.
fn element(bound: i64) -> impl Strategy<Value = RingElement> {
    (
        prop::array::uniform4(-bound..=bound),
        prop::array::uniform4(-bound..=bound),
    )
        .prop_map(|(low, high)| {
            let mut num = [0i64; 8];
            for m in 0..4 {
                num[m] = low[m];
                // Same parity as the partner coordinate without √5.
                num[m | 4] = 2 * high[m] + low[m].rem_euclid(2);
            }
            RingElement::from_doubled(RingId::Compositum, num).unwrap()
        })
}

/// Elements `p − q√d` built from good rational approximations, so that the
/// floating-point sign is unreliable and the exact path is exercised.
fn near_zero() -> impl Strategy<Value = RingElement> {
    let convergents: Vec<(i64, i64, &str)> = vec![
        (1_393_689, 985_502, "r2"),
        (3_650_401, 2_107_560, "r3"),
        (9_901, 4_042, "6"),
        (5_374_978_561, 2_403_763_488, "5"),
    ];
    (0..convergents.len(), any::<bool>(), -1i64..=1).prop_map(move |(i, flip, nudge)| {
        let (p, q, d) = convergents[i];
        let root = match d {
            "r2" => RingElement::sqrt2(),
            "r3" => RingElement::sqrt3(),
            "6" => RingElement::sqrt2() * RingElement::sqrt3(),
            _ => RingElement::phi().scale(2) - RingElement::one(),
        };
        let x = RingElement::from_int(p + nudge) - root.scale(q);
        if flip {
            -x
        } else {
            x
        }
    })
}

proptest! {
    #![proptest_config(common::config(512))]

    #[test]
    fn arithmetic_matches_rational_oracle(a in element(20), b in element(20)) {
        let (sa, sb) = (Surd::of(&a), Surd::of(&b));
        prop_assert_eq!(Surd::of(&(a + b)), sa.add(&sb));
        prop_assert_eq!(Surd::of(&(a - b)), sa.add(&sb.neg()));
        prop_assert_eq!(Surd::of(&(a * b)), sa.mul(&sb));
        prop_assert_eq!(Surd::of(&-a), sa.neg());
    }

    #[test]
    fn ring_axioms(a in element(12), b in element(12), c in element(12)) {
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a + RingElement::zero(), a);
        prop_assert_eq!(a * RingElement::one(), a);
        prop_assert!((a - a).is_zero());
    }

    #[test]
    fn conjugation_is_a_ring_automorphism(a in element(12), b in element(12), s in 0u8..8) {
        let sigma = Automorphism(s);
        prop_assert_eq!((a * b).conjugate(sigma), a.conjugate(sigma) * b.conjugate(sigma));
        prop_assert_eq!((a + b).conjugate(sigma), a.conjugate(sigma) + b.conjugate(sigma));
        prop_assert_eq!(Surd::of(&a.conjugate(sigma)), Surd::of(&a).conjugate(s));
    }

    #[test]
    fn sign_matches_high_precision_oracle(a in element(1000)) {
        prop_assert_eq!(a.sign(), Surd::of(&a).sign());
    }

    #[test]
    fn sign_near_cancellation(x in near_zero(), y in element(3)) {
        prop_assert_eq!(x.sign(), Surd::of(&x).sign());
        let z = x * y;
        prop_assert_eq!(z.sign(), Surd::of(&z).sign());
    }

    #[test]
    fn json_round_trip(a in element(50)) {
        let text = serde_json::to_string(&a).unwrap();
        let back: RingElement = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }
}

/// If every conjugate of `x` lies in `[−2, 2]`, then each coordinate is an
/// average of conjugates: `|num[m]/2|·√d_m ≤ 2`, i.e. `|num[m]| ≤ 4/√d_m`.
/// Enumerating that box therefore finds every such element of the order.
#[test]
fn admissible_entries_are_exactly_the_bounded_elements() {
    let radicand = [1.0f64, 2.0, 3.0, 6.0, 5.0, 10.0, 15.0, 30.0];
    let bounds: Vec<i64> = radicand.iter().map(|d| (4.0 / d.sqrt()).floor() as i64).collect();
    let four = Surd::of(&RingElement::from_int(4));
    let mut found: BTreeSet<String> = BTreeSet::new();
    let mut num = [0i64; 8];
    fn walk(
        m: usize,
        num: &mut [i64; 8],
        bounds: &[i64],
        four: &Surd,
        found: &mut BTreeSet<String>,
    ) {
        if m == 8 {
            let Ok(x) = RingElement::from_doubled(RingId::Compositum, *num) else {
                return;
            };
            if x.is_zero() {
                return;
            }
            let sq = Surd::of(&x).mul(&Surd::of(&x));
            if (0..8u8).all(|s| four.add(&sq.conjugate(s).neg()).sign() >= 0) {
                found.insert(format!("{:?}", x.to_external()));
            }
            return;
        }
        for c in -bounds[m]..=bounds[m] {
            num[m] = c;
            walk(m + 1, num, bounds, four, found);
        }
        num[m] = 0;
    }
    walk(0, &mut num, &bounds, &four, &mut found);

    let expected: BTreeSet<String> = RingId::Compositum
        .admissible_entries()
        .iter()
        .map(|x| format!("{:?}", x.to_external()))
        .collect();
    assert_eq!(found.len(), 12);
    assert_eq!(found, expected);
}

#[test]
fn subring_admissible_sets() {
    let sizes: Vec<usize> = [RingId::Z, RingId::Zsqrt2, RingId::Zsqrt3, RingId::Zphi]
        .iter()
        .map(|r| r.admissible_entries().len())
        .collect();
    assert_eq!(sizes, vec![4, 6, 6, 8]);
}
