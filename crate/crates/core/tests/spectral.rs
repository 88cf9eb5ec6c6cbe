mod common;

use common::{random_matrix, rng, GroupElement, RootsTally, RINGS};
use cyclotomic::ring::{RingElement, RingId};
use cyclotomic::spectral::{
    char_poly, degree_bound_ok, in_s, in_sprime, interlaces, membership, CharPoly, SymMatrix,
};
use proptest::prelude::*;
use rand::Rng;

fn sample(seed: u64, max_n: usize) -> SymMatrix {
    let mut r = rng(seed);
    let ring = RINGS[r.gen_range(0..RINGS.len())];
    let n = r.gen_range(1..=max_n);
    let bias = r.gen_range(0..12);
    random_matrix(&mut r, ring, n, bias)
}

proptest! {
    #![proptest_config(common::config(256))]

    #[test]
    fn cayley_hamilton(seed in any::<u64>()) {
        common::prop_cayley_hamilton(&sample(seed, 5))?;
    }

    #[test]
    fn containment_matches_eigensolver(seed in any::<u64>()) {
        let mut tally = RootsTally::default();
        common::prop_roots_vs_numeric(&sample(seed, 6), &mut tally)?;
    }

    #[test]
    fn char_poly_covariance(seed in any::<u64>()) {
        let m = sample(seed, 5);
        let e = GroupElement::random(&mut rng(seed ^ 0x5eed), m.n(), m.ring());
        common::prop_char_poly_covariance(&m, &e)?;
    }

    #[test]
    fn vertex_deletion_interlaces(seed in any::<u64>()) {
        let m = sample(seed, 6);
        prop_assume!(m.n() >= 2);
        let v = (seed as usize) % m.n();
        prop_assert!(interlaces(&char_poly(&m), &char_poly(&m.delete(v))).unwrap());
    }

    #[test]
    fn downward_closure_of_sprime(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ring = RINGS[r.gen_range(0..RINGS.len())];
        let n = r.gen_range(2..=5);
        let m = random_matrix(&mut r, ring, n, 60);
        prop_assume!(in_sprime(&m));
        for v in 0..m.n() {
            prop_assert!(in_sprime(&m.delete(v)));
        }
    }

    #[test]
    fn sprime_members_respect_the_degree_bound(seed in any::<u64>()) {
        let m = sample(seed, 6);
        prop_assume!(in_sprime(&m));
        prop_assert!(degree_bound_ok(&m));
    }
}

fn el(s: &str) -> RingElement {
    s.parse().unwrap()
}

fn poly(roots_times_two: &[i64]) -> CharPoly {
    // Π (x − r/2) with rational roots; scaled to stay in Z[x] by using even r.
    let mut coeffs = vec![RingElement::one()];
    for &r in roots_times_two {
        assert!(r % 2 == 0);
        let root = RingElement::from_int(r / 2);
        let mut next = vec![RingElement::zero(); coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= root * c;
        }
        coeffs = next;
    }
    CharPoly::from_ascending(coeffs)
}

#[test]
fn interlacing_examples() {
    let p = poly(&[-4, 0, 4]);
    assert!(interlaces(&p, &poly(&[-2, 2])).unwrap());
    assert!(interlaces(&p, &poly(&[0, 0])).unwrap());
    assert!(!interlaces(&p, &poly(&[2, 2])).unwrap());
    assert!(interlaces(&p, &poly(&[-4, 0, 4])).is_err());
}

#[test]
fn introduction_example() {
    let a = SymMatrix::new(RingId::Zsqrt2, vec![vec![el("r2"), el("1")], vec![el("1"), el("0")]])
        .unwrap();
    let m = membership(&a);
    assert!(m.in_sprime);
    assert!(!m.integral);
    assert!(!in_s(&a));
}

/// 2cos(2π/5) = φ − 1 and 2cos(4π/5) = −φ: the uncharged 5-cycle has them as
/// double eigenvalues, all inside [−2, 2].
#[test]
fn five_cycle_spectrum() {
    let mut m = SymMatrix::zeros(RingId::Z, 5);
    for v in 0..5 {
        m.set(v, (v + 1) % 5, RingElement::one());
    }
    let p = char_poly(&m);
    assert!(p.eval(el("2")).is_zero());
    let e1 = RingElement::phi() - RingElement::one();
    assert!(p.eval(e1).is_zero());
    assert!(p.eval(-RingElement::phi()).is_zero());
    assert!(in_s(&m));
}
