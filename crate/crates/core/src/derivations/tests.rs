use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::random;
use crate::weylcore::varpi_element;

fn fp(p: u64) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}
fn q() -> FieldSpec {
    FieldSpec::rational()
}
fn poly(s: &str, f: FieldSpec) -> Poly {
    Poly::parse(s, f).unwrap()
}
fn ctx(s: &str, f: FieldSpec) -> AhContext {
    AhContext::new(poly(s, f)).unwrap()
}

#[test]
fn criterion_rejects_bad_images() {
    let c = ctx("x^2", q());
    let x = WeylElement::x(q());
    assert!(Derivation::new(&c, WeylElement::zero(q()), x.clone()).is_ok());
    let err = Derivation::new(&c, x.clone(), WeylElement::zero(q())).unwrap_err();
    assert!(matches!(err, DerivationError::Criterion { .. }));
    let err = Derivation::new(&c, WeylElement::y(q()), WeylElement::zero(q())).unwrap_err();
    assert_eq!(err, DerivationError::NotInAh { which: "x", degree: 1 });
}

#[test]
fn d_of_delta_is_minus_ad() {
    for f in [q(), fp(3)] {
        let c = ctx("x^2 + x", f);
        let g = poly("x^3 - 2*x + 1", f);
        let lhs = d_g(&c, &c.delta(&g));
        assert_eq!(lhs, -&ad(&c, &WeylElement::from_poly(g)).unwrap());
        assert_eq!(d_g(&c, c.h()), -&ad(&c, &WeylElement::x(f)).unwrap());
    }
}

#[test]
fn bracket_of_d_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in [q(), fp(5)] {
        let c = ctx("x^2 - 1", f);
        for _ in 0..5 {
            let e = random::poly(&mut rng, f, 3);
            let g = random::poly(&mut rng, f, 3);
            let (de, dg) = (d_g(&c, &e), d_g(&c, &g));
            let br = de.bracket(&c, &dg).unwrap();
            let ce = &de.apply(&c, &WeylElement::from_poly(g.clone())).unwrap()
                - &dg.apply(&c, &WeylElement::from_poly(e.clone())).unwrap();
            assert_eq!(br, Derivation::new(&c, WeylElement::zero(f), ce).unwrap());
        }
    }
}

#[test]
fn apply_is_a_derivation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for f in [q(), fp(3)] {
        let c = ctx("x^2 + 2*x", f);
        for _ in 0..4 {
            let d = random::derivation(&mut rng, &c, 2, 2).unwrap();
            let a = random::ah_element(&mut rng, &c, 2, 2);
            let b = random::ah_element(&mut rng, &c, 2, 1);
            let lhs = d.apply(&c, &(&a * &b)).unwrap();
            let rhs = &(&d.apply(&c, &a).unwrap() * &b) + &(&a * &d.apply(&c, &b).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn e_x_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [2u64, 3, 5, 7] {
        let f = fp(p);
        let ex = e_x(f).unwrap();
        let ey = e_y(f).unwrap();
        for _ in 0..6 {
            let g = random::poly(&mut rng, f, 3 * p as usize);
            let direct = ex.apply(&WeylElement::from_poly(g.clone()));
            assert_eq!(direct, e_x_poly_closed_form(&g).unwrap(), "p={p} g={g}");
            // E_y(g(y)) = φ(E_x(g(x)))
            let gy = WeylElement::from_poly(g.clone()).apply_phi();
            assert_eq!(ey.apply(&gy), direct.apply_phi());
            let h = random::poly(&mut rng, f, 4);
            if h.is_zero() {
                continue;
            }
            let yhat = WeylElement::y(f).mul_poly_right(&h);
            assert_eq!(ex.apply(&yhat), e_x_yhat_closed_form(&h).unwrap());
        }
        // on F[x^p] it is −d/d(x^p)
        let g = random::poly(&mut rng, f, 3);
        let gp = g.pow(p as usize);
        assert_eq!(
            ex.apply(&WeylElement::from_poly(gp)),
            WeylElement::from_poly(-&g.derivative().pow(p as usize))
        );
    }
}

#[test]
fn e_x_e_y_bracket_is_ad_varpi() {
    for p in [2u64, 3, 5, 7] {
        let f = fp(p);
        let br = e_x(f).unwrap().bracket(&e_y(f).unwrap());
        assert_eq!(br, WeylDerivation::ad(&varpi_element(f).unwrap()));
    }
}

#[test]
fn bhat_f_closed_form_agrees() {
    for p in [2u64, 3, 5] {
        let f = fp(p);
        for hs in ["1", "x", "x^2", "x^2 + 1", "x^3 + x", "x^4"] {
            let c = ctx(hs, f);
            let bf = bhat_f(&c).unwrap();
            assert_eq!(bf.dyhat(), &bhat_f_yhat_closed_form(&c).unwrap(), "p={p} h={hs}");
            let xp = WeylElement::monomial(-&c.charp().unwrap().hp_over_varrho, p as usize - 1);
            assert_eq!(bf.dx(), &xp);
        }
    }
    // h = 1: b̂f = −E_x and D_q̆ = −E_y
    let f = fp(5);
    let c = ctx("1", f);
    let ex = e_x(f).unwrap();
    let ey = e_y(f).unwrap();
    let bf = bhat_f(&c).unwrap();
    assert_eq!((bf.dx(), bf.dyhat()), (&-&ex.dx, &-&ex.dy));
    let dq = d_qbreve(&c).unwrap();
    assert_eq!((dq.dx(), dq.dyhat()), (&-&ey.dx, &-&ey.dy));
}

#[test]
fn restriction_examples() {
    for p in [2u64, 3, 5] {
        let f = fp(p);
        let c = ctx("1", f);
        let ex = Derivation::new(&c, e_x(f).unwrap().dx, WeylElement::zero(f)).unwrap();
        let r = restrict_to_center(&c, &ex).unwrap();
        assert_eq!(r, CenterDerivation::new(-&BiPoly::one(f), BiPoly::zero(f)));
        for hs in ["1", "x", "x^2 + 1", "x^3"] {
            let c = ctx(hs, f);
            let d = c.charp().unwrap();
            let rq = restrict_to_center(&c, &d_qbreve(&c).unwrap()).unwrap();
            assert_eq!(
                rq,
                CenterDerivation::new(BiPoly::zero(f), BiPoly::from_t1(d.hbar.clone()))
            );
            let rb = restrict_to_center(&c, &bhat_f(&c).unwrap()).unwrap();
            let hv = BiPoly::from_t1(d.hp_over_varrho.to_u().unwrap());
            assert_eq!(rb, CenterDerivation::new(hv, BiPoly::zero(f)));
            // Res(b̂_x) = −(1/ϱ)(h^p d/dt₁ + (h′)^p ζ d/dζ)
            let rx = restrict_to_center(&c, &bhat_x(&c).unwrap()).unwrap();
            let hp = c.hprime().pow(p as usize).exact_div(c.varrho_h()).unwrap();
            let want2 = &BiPoly::t2(f) * &BiPoly::from_t1(hp.to_u().unwrap());
            let want1 = BiPoly::from_t1(d.hp_over_varrho.to_u().unwrap());
            assert_eq!(rx, CenterDerivation::new(-&want1, -&want2));
        }
    }
}

#[test]
fn extension_of_d_g() {
    let c = ctx("x^2", q());
    let d = d_g(&c, &poly("x^3 + x^2", q()));
    let Extension::Extended(e) = extend_to_a1(&c, &d).unwrap() else {
        panic!("extends")
    };
    assert_eq!(e.dy, WeylElement::from_poly(poly("x + 1", q())));
    assert_eq!(
        extend_to_a1(&c, &d_g(&c, &Poly::x(q()))).unwrap(),
        Extension::NotExtendable(0)
    );
}

#[test]
fn a1_decompositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let d = random::a1_derivation(&mut rng, q(), 3, 3);
        let dec = decompose_a1_char0(&d).unwrap();
        assert_eq!(WeylDerivation::ad(&dec.element()), d);
    }
    // ad_{y²}(x) = 2y
    let y = WeylElement::y(q());
    assert_eq!(WeylDerivation::ad(&y.pow(2)).dx, y.scale(&q().from_i64(2)));
    for p in [2u64, 3, 5] {
        let f = fp(p);
        let y = WeylElement::y(f);
        let dec = decompose_a1_charp(&WeylDerivation::ad(&y)).unwrap();
        assert_eq!(dec.b, y);
        for _ in 0..6 {
            let w = random::weyl(&mut rng, f, 2, 2);
            let a = random::weyl(&mut rng, f, 3, 3);
            let z1 = WeylElement::monomial(random::frobenius_poly(&mut rng, f, 1), p as usize);
            let z2 = WeylElement::from_poly(random::frobenius_poly(&mut rng, f, 1));
            let d = &(&WeylDerivation::ad(&w) + &e_x(f).unwrap().scale_by_central(&z1))
                + &e_y(f).unwrap().scale_by_central(&z2);
            let d = &d + &WeylDerivation::ad(&a);
            let dec = decompose_a1_charp(&d).unwrap();
            assert_eq!(dec.reassemble().unwrap(), d);
        }
    }
}

#[test]
fn char0_decomposition_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for hs in ["1", "x", "x^2", "x^3", "x^2*(x-1)", "(x-1)*(x+1)", "x^2*(x+1)^2"] {
        let c = ctx(hs, q());
        for _ in 0..4 {
            let d = random::derivation(&mut rng, &c, 3, 3).unwrap();
            let dec = decompose_ah_char0(&c, &d).unwrap();
            assert_eq!(dec.reassemble(&c).unwrap(), d, "h = {hs}");
            assert!(dec.g.degree().is_none_or(|k| k < c.deg_h()));
            for (_, r) in &dec.normalizer_terms {
                assert!(r.degree().unwrap() < c.h_over_pi().degree().unwrap());
            }
            // an inner derivation decomposes with zero outer part
            let a = random::ah_element(&mut rng, &c, 3, 3);
            let w = is_inner(&c, &ad(&c, &a).unwrap()).unwrap().expect("inner");
            assert_eq!(ad(&c, &w).unwrap(), ad(&c, &a).unwrap());
        }
    }
    // D₁ is outer for h = x
    let c = ctx("x", q());
    assert!(is_inner(&c, &d_g(&c, &Poly::one(q()))).unwrap().is_none());
}

#[test]
fn charp_decomposition_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for p in [2u64, 3, 5] {
        let f = fp(p);
        for hs in ["1", "x", "x^2", "x^3", "x^2 + 1", "x^2*(x+1)"] {
            let c = ctx(hs, f);
            for _ in 0..3 {
                let d = random::derivation(&mut rng, &c, 2, p as usize + 1).unwrap();
                let dec = decompose_ah_charp(&c, &d).unwrap();
                assert_eq!(dec.reassemble(&c).unwrap(), d, "p={p} h={hs}");
                assert!(c.normalizer_test(&dec.normalizer_part).in_normalizer);
                let a = random::ah_element(&mut rng, &c, 2, 2);
                let inner = ad(&c, &a).unwrap();
                let w = is_inner(&c, &inner).unwrap().expect("inner");
                assert_eq!(ad(&c, &w).unwrap(), inner);
            }
            assert!(is_inner(&c, &d_qbreve(&c).unwrap()).unwrap().is_none());
            assert!(is_inner(&c, &bhat_f(&c).unwrap()).unwrap().is_none());
        }
    }
}

#[test]
fn automorphism_is_exponential() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let c = ctx("x^2 + 1", q());
    for _ in 0..4 {
        let g = random::poly(&mut rng, q(), 3);
        let a = random::ah_element(&mut rng, &c, 2, 3);
        let phi = aut_exp(&c, &g);
        assert_eq!(phi.apply(&c, &a).unwrap(), exp_series(&c, &g, &a).unwrap());
        // φ_g preserves the relation [ŷ, x] = h
        let img = phi.image_of_yhat(&c);
        assert_eq!(
            img.commutator(&WeylElement::x(q())),
            WeylElement::from_poly(c.h().clone())
        );
    }
}

#[test]
fn text_roundtrip() {
    let c = ctx("x^2", q());
    let d = &d_g(&c, &poly("x + 1/2", q())) + &ad(&c, &WeylElement::parse("x^3*y^2", q()).unwrap()).unwrap();
    let t = d.to_text();
    assert_eq!(Derivation::from_text(&c, &t).unwrap(), d);
}
