use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::derivations::is_inner;
use crate::random;

fn fp(p: u64) -> FieldSpec {
    FieldSpec::new(p).unwrap()
}
fn q() -> FieldSpec {
    FieldSpec::rational()
}
fn ctx(s: &str, f: FieldSpec) -> AhContext {
    AhContext::new(Poly::parse(s, f).unwrap()).unwrap()
}

#[test]
fn char0_bracket_matches_operator() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for hs in ["x^2", "x^3", "x^2*(x-1)", "x^3*(x+1)^2", "x^2 + 1"] {
        let c = ctx(hs, q());
        let dq = c.h_over_pi().degree().unwrap();
        for _ in 0..6 {
            let mk = |rng: &mut ChaCha8Rng| {
                let mut cl = HH1ClassChar0::d(&c, &random::poly(rng, q(), c.deg_h()));
                for n in 1..=2 {
                    if dq > 0 {
                        cl = cl.add(&HH1ClassChar0::ad_r_a(&c, &random::poly(rng, q(), dq - 1), n), &c);
                    }
                }
                cl
            };
            let (a, b) = (mk(&mut rng), mk(&mut rng));
            let op = a
                .to_derivation(&c)
                .unwrap()
                .bracket(&c, &b.to_derivation(&c).unwrap())
                .unwrap();
            assert_eq!(
                canonical_class_char0(&c, &op).unwrap(),
                bracket_char0(&c, &a, &b),
                "h = {hs}"
            );
        }
    }
}

#[test]
fn x_power_example() {
    for m in 2..5usize {
        let c = AhContext::new(Poly::x(q()).pow(m)).unwrap();
        let d1 = HH1ClassChar0::d(&c, &Poly::one(q()));
        let a1 = HH1ClassChar0::ad_r_a(&c, &Poly::one(q()), 1);
        let want = d1.scale(&q().from_i64(m as i64 - 1));
        assert_eq!(bracket_char0(&c, &d1, &a1), want);
    }
}

#[test]
fn center_and_split() {
    let c = ctx("x^3*(x-1)", q());
    assert_eq!(center_hh1_char0(&c).len(), 2);
    for z in center_hh1_char0(&c) {
        let s = split_center_commutator(&c, &z).unwrap();
        assert_eq!(s.center, z.g);
        assert!(s.commutator.is_empty());
    }
    let e = e_class(&c, &Poly::x(q()), -1);
    let s = split_center_commutator(&c, &e).unwrap();
    assert!(s.center.is_zero());
    assert_eq!(s.commutator[&0], -&Poly::x(q()));
}

#[test]
fn witt_roundtrip_and_nilpotent() {
    let c = ctx("x^3*(x-1)^2", q());
    assert_eq!(nilpotency_index_bound(&c), 2);
    let w = WittClassElement::single(&c, &Poly::parse("x + 2", q()).unwrap(), 2);
    let cl = witt_inverse(&c, &w).unwrap();
    assert_eq!(witt_map(&c, &cl).unwrap(), w);
    let n = HH1ClassChar0::ad_r_a(&c, &pi_of_h_over_pi(&c), 1);
    assert!(!n.is_zero());
    assert!(in_nilpotent(&c, &n).unwrap());
    assert!(witt_map(&c, &n).unwrap().is_zero());
    assert!(!in_nilpotent_level(&c, &n, 2).unwrap());
    assert!(witt_map(&c, &HH1ClassChar0::d(&c, c.h_over_pi())).is_err());
}

#[test]
fn report_char0() {
    let c = ctx("x^3*(x-1)^2", q())
        .with_factors(vec![(Poly::x(q()), 3), (Poly::parse("x-1", q()).unwrap(), 2)])
        .unwrap();
    let r = structure_report_char0(&c).unwrap();
    assert_eq!(r.dim_center, 2);
    assert_eq!(r.witt_summand_count, Some(2));
    assert_eq!(r.nilpotency_index_bound, 2);
    assert!(!r.nilpotent_trivial);
}

fn random_gen(rng: &mut ChaCha8Rng, c: &AhContext, p: usize) -> CharPGen {
    let f = c.field();
    let dq = c.h_over_pi().degree().unwrap_or(0);
    match rng.gen_range(0..3) {
        0 => CharPGen::D(random::poly(rng, f, c.deg_h() + 2)),
        1 => CharPGen::AdRA {
            r: random::poly(rng, f, dq.max(1)),
            n: rng.gen_range(0..=p + 2),
        },
        _ => CharPGen::BhatX,
    }
}

#[test]
fn charp_brackets_match_operator() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in [2u64, 3, 5] {
        let f = fp(p);
        for hs in ["1", "x", "x^2", "x^3", "x^2 + 1", "x^2*(x+1)", "x^(2*3)"] {
            let hs = hs.replace("(2*3)", &format!("{}", 2 * p));
            let c = ctx(&hs, f);
            for _ in 0..4 {
                let a = random_gen(&mut rng, &c, p as usize);
                let b = random_gen(&mut rng, &c, p as usize);
                let sym = bracket_charp(&c, &a, &b).unwrap();
                let lhs = terms_to_derivation(&c, &sym.terms).unwrap();
                let op = gen_to_derivation(&c, &a)
                    .unwrap()
                    .bracket(&c, &gen_to_derivation(&c, &b).unwrap())
                    .unwrap();
                let diff = &op - &lhs;
                if sym.exact {
                    assert!(diff.is_zero(), "p={p} h={hs} {a:?} {b:?}");
                } else {
                    assert!(is_inner(&c, &diff).unwrap().is_some(), "p={p} h={hs} {a:?} {b:?}");
                }
            }
        }
    }
}
