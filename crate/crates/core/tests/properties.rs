//! Property tests across the public API. Polynomials come from shrinkable
//! coefficient vectors; larger objects (derivations, algebra elements) from
//! the seeded generators in `ahder::random`, driven by a proptest seed.

use ahder::derivations::{self, decompose_ah_char0, decompose_ah_charp, is_inner, Derivation};
use ahder::hochschild::{bracket_char0, canonical_class_char0, split_center_commutator, witt_map};
use ahder::{random, AhContext, FieldSpec, Poly, WeylElement};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(c: u64) -> FieldSpec {
    FieldSpec::new(c).unwrap()
}

fn poly_from(f: FieldSpec, c: &[i64]) -> Poly {
    Poly::from_ints(f, c)
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 0..=max_len)
}

/// Monic `h` of degree at most 3: nonzero in every characteristic.
fn h_coeffs() -> impl Strategy<Value = Vec<i64>> {
    coeffs(3).prop_map(|mut c| {
        c.push(1);
        c
    })
}

fn characteristic() -> impl Strategy<Value = u64> {
    prop_oneof![Just(0u64), Just(2), Just(3), Just(5)]
}

fn ctx_of(c: u64, hc: &[i64]) -> AhContext {
    AhContext::new(poly_from(field(c), hc)).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(24)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn poly_print_parse_roundtrip(c in characteristic(), a in coeffs(8)) {
        let f = field(c);
        let p = poly_from(f, &a);
        prop_assert_eq!(Poly::parse(&p.to_string(), f).unwrap(), p);
    }

    #[test]
    fn poly_division_identity(c in characteristic(), a in coeffs(8), b in coeffs(5)) {
        let f = field(c);
        let (a, b) = (poly_from(f, &a), poly_from(f, &b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        let g = a.gcd_monic(&b).unwrap();
        prop_assert!(a.is_divisible_by(&g) && b.is_divisible_by(&g));
    }

    #[test]
    fn poly_ring_laws(c in characteristic(), a in coeffs(5), b in coeffs(5), d in coeffs(5)) {
        let f = field(c);
        let (a, b, d) = (poly_from(f, &a), poly_from(f, &b), poly_from(f, &d));
        prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
    }

    #[test]
    fn weyl_print_parse_and_associativity(c in characteristic(), seed in any::<u64>()) {
        let f = field(c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::weyl(&mut rng, f, 3, 3);
        let b = random::weyl(&mut rng, f, 3, 3);
        let d = random::weyl(&mut rng, f, 3, 3);
        prop_assert_eq!(WeylElement::parse(&a.to_string(), f).unwrap(), a.clone());
        prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
    }

    #[test]
    fn weyl_commutator_with_polynomial_is_derivative(c in characteristic(), a in coeffs(6)) {
        let f = field(c);
        let p = poly_from(f, &a);
        let y = WeylElement::y(f);
        prop_assert_eq!(y.commutator(&WeylElement::from_poly(p.clone())), WeylElement::from_poly(p.derivative()));
    }

    #[test]
    fn pi_and_varrho_invariants(c in characteristic(), hc in h_coeffs()) {
        let ctx = ctx_of(c, &hc);
        let h = ctx.h();
        prop_assert!(h.is_divisible_by(ctx.pi_h()));
        prop_assert!((ctx.pi_h() * &h.derivative()).is_divisible_by(h));
        prop_assert!(h.is_divisible_by(ctx.varrho_h()));
        prop_assert!(ctx.varrho_h().in_frobenius_subring());
        prop_assert!(ctx.varrho_h().is_monic());
    }

    #[test]
    fn yhat_basis_roundtrip(c in characteristic(), hc in h_coeffs(), seed in any::<u64>()) {
        let ctx = ctx_of(c, &hc);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::ah_element(&mut rng, &ctx, 3, 3);
        prop_assert!(ctx.ah_membership(&a));
        let coeffs = ctx.yhat_collect(&a).unwrap();
        prop_assert_eq!(ctx.yhat_expand(&coeffs), a);
    }

    #[test]
    fn zeta_is_central(p in prop_oneof![Just(2u64), Just(3), Just(5)], hc in h_coeffs(), seed in any::<u64>()) {
        let ctx = ctx_of(p, &hc);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::ah_element(&mut rng, &ctx, 3, 3);
        prop_assert!(ctx.zeta_element().unwrap().commutator(&a).is_zero());
    }

    #[test]
    fn derivations_satisfy_leibniz(c in characteristic(), hc in h_coeffs(), seed in any::<u64>()) {
        let ctx = ctx_of(c, &hc);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random::derivation(&mut rng, &ctx, 2, 2).unwrap();
        let a = random::ah_element(&mut rng, &ctx, 2, 2);
        let b = random::ah_element(&mut rng, &ctx, 2, 2);
        let lhs = d.apply(&ctx, &(&a * &b)).unwrap();
        let rhs = &(&d.apply(&ctx, &a).unwrap() * &b) + &(&a * &d.apply(&ctx, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_satisfies_jacobi(c in characteristic(), hc in h_coeffs(), seed in any::<u64>()) {
        let ctx = ctx_of(c, &hc);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds: Vec<Derivation> = (0..3).map(|_| random::derivation(&mut rng, &ctx, 1, 2).unwrap()).collect();
        let br = |a: &Derivation, b: &Derivation| a.bracket(&ctx, b).unwrap();
        let j = &(&br(&ds[0], &br(&ds[1], &ds[2])) + &br(&ds[1], &br(&ds[2], &ds[0]))) + &br(&ds[2], &br(&ds[0], &ds[1]));
        prop_assert!(j.is_zero());
        prop_assert!(br(&ds[0], &ds[1]) == -&br(&ds[1], &ds[0]));
    }

    #[test]
    fn decomposition_reassembles(c in characteristic(), hc in h_coeffs(), seed in any::<u64>()) {
        let ctx = ctx_of(c, &hc);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random::derivation(&mut rng, &ctx, 2, 3).unwrap();
        let back = if c == 0 {
            decompose_ah_char0(&ctx, &d).unwrap().reassemble(&ctx).unwrap()
        } else {
            decompose_ah_charp(&ctx, &d).unwrap().reassemble(&ctx).unwrap()
        };
        prop_assert_eq!(back, d);
    }

    #[test]
    fn ad_of_ah_elements_is_inner(c in characteristic(), hc in h_coeffs(), seed in any::<u64>()) {
        let ctx = ctx_of(c, &hc);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::ah_element(&mut rng, &ctx, 2, 3);
        let d = derivations::ad(&ctx, &a).unwrap();
        let w = is_inner(&ctx, &d).unwrap().expect("ad_a is inner");
        prop_assert_eq!(derivations::ad(&ctx, &w).unwrap(), d);
    }

    #[test]
    fn restriction_to_center_is_a_lie_map(p in prop_oneof![Just(2u64), Just(3), Just(5)], hc in h_coeffs(), seed in any::<u64>()) {
        let ctx = ctx_of(p, &hc);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random::derivation(&mut rng, &ctx, 1, 2).unwrap();
        let e = random::derivation(&mut rng, &ctx, 1, 2).unwrap();
        let res = |x: &Derivation| derivations::restrict_to_center(&ctx, x).unwrap();
        prop_assert_eq!(res(&d.bracket(&ctx, &e).unwrap()), res(&d).bracket(&res(&e)));
    }

    #[test]
    fn exp_aut_is_multiplicative(c in characteristic(), hc in h_coeffs(), g in coeffs(4), seed in any::<u64>()) {
        let ctx = ctx_of(c, &hc);
        let g = poly_from(ctx.field(), &g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::ah_element(&mut rng, &ctx, 2, 2);
        let b = random::ah_element(&mut rng, &ctx, 2, 2);
        let phi = derivations::aut_exp(&ctx, &g);
        prop_assert_eq!(
            phi.apply(&ctx, &(&a * &b)).unwrap(),
            &phi.apply(&ctx, &a).unwrap() * &phi.apply(&ctx, &b).unwrap()
        );
        if c == 0 {
            prop_assert_eq!(derivations::exp_series(&ctx, &g, &a).unwrap(), phi.apply(&ctx, &a).unwrap());
        }
    }

    #[test]
    fn class_bracket_matches_operator_bracket(hc in h_coeffs(), seed in any::<u64>()) {
        let ctx = ctx_of(0, &hc);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random::derivation(&mut rng, &ctx, 2, 2).unwrap();
        let e = random::derivation(&mut rng, &ctx, 2, 2).unwrap();
        let cd = canonical_class_char0(&ctx, &d).unwrap();
        let ce = canonical_class_char0(&ctx, &e).unwrap();
        let op = canonical_class_char0(&ctx, &d.bracket(&ctx, &e).unwrap()).unwrap();
        prop_assert_eq!(bracket_char0(&ctx, &cd, &ce), op);
    }

    #[test]
    fn witt_map_is_a_lie_map_on_commutators(hc in h_coeffs(), seed in any::<u64>()) {
        let ctx = ctx_of(0, &hc);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut comm = || {
            let d = random::derivation(&mut rng, &ctx, 2, 2).unwrap();
            let c = canonical_class_char0(&ctx, &d).unwrap();
            let s = split_center_commutator(&ctx, &c).unwrap();
            c.sub(&ahder::hochschild::HH1ClassChar0::d(&ctx, &s.center), &ctx)
        };
        let (a, b) = (comm(), comm());
        let lhs = witt_map(&ctx, &bracket_char0(&ctx, &a, &b)).unwrap();
        let rhs = witt_map(&ctx, &a).unwrap().bracket(&ctx, &witt_map(&ctx, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
