use std::sync::Arc;

use super::*;
use crate::downgrade::{
    downgraded_sequence, k_ideal, maximal_ideal, minors_generators, rees_ideal, symmetric_ideal, GeneratorSet, Label,
};
use crate::jonq::validate_map;
use crate::poly::{parse_poly, Field, Mode, Polynomial, Ring, RingSpec};

fn ring(mode: Mode, n: usize) -> Arc<Ring> {
    Ring::new(RingSpec::new(mode, n, Field::Rationals).unwrap())
}

fn p(s: &str, r: &Arc<Ring>) -> Polynomial {
    parse_poly(s, r).unwrap()
}

fn ideal(r: &Arc<Ring>, gens: &[&str]) -> IdealHandle {
    IdealHandle::new(GeneratorSet::with_ring(Label::Custom("test".into()), gens.iter().map(|s| p(s, r)).collect(), r))
}

fn sec4() -> DeJonquieresMap {
    let r = ring(Mode::Standard, 3);
    validate_map(&r, p("x1^2", &r), p("x2^3", &r)).unwrap()
}

fn sec6() -> DeJonquieresMap {
    let r = ring(Mode::Generalized, 3);
    validate_map(&r, p("x1^2*x4", &r), p("x1^2*x2^2 + x3^3*x4", &r)).unwrap()
}

#[test]
fn single_binomial_is_its_own_basis() {
    let r = ring(Mode::Standard, 2);
    let gb = Oracle::default().buchberger(&minors_generators(&r), TermOrder::Grevlex).unwrap();
    // lead term under grevlex is x2*y1, so the monic form flips the sign
    assert_eq!(gb.basis(), &[p("x2*y1 - x1*y2", &r)]);
    assert_eq!(gb.basis()[0].to_string(), "x2*y1 - x1*y2");
}

#[test]
fn minors_form_a_basis_for_n3() {
    let r = ring(Mode::Standard, 3);
    let minors = minors_generators(&r);
    let gb = Oracle::default().buchberger(&minors, TermOrder::Grevlex).unwrap();
    assert!(gb.is_groebner());
    assert_eq!(gb.basis().len(), 3);
    for m in &minors.gens {
        assert!(gb.basis().contains(&m.monic()) || gb.basis().contains(&m.neg().monic()));
    }
    // raw minors already pass the S-pair test
    assert!(groebner::is_groebner(&minors.gens, &r));
}

#[test]
fn unit_ideal() {
    let r = ring(Mode::Standard, 2);
    let gb = Oracle::default().buchberger(&ideal(&r, &["x1", "x1 + 1"]).gens, TermOrder::Grevlex).unwrap();
    assert_eq!(gb.basis(), &[Polynomial::one(&r)]);
    assert!(matches!(Oracle::default().krull_dimension(&ideal(&r, &["x1", "x1 + 1"])), Err(OracleError::ImproperIdeal)));
}

#[test]
fn normal_forms() {
    let r = ring(Mode::Standard, 3);
    let oracle = Oracle::default();
    let minors = IdealHandle::new(minors_generators(&r));
    let gb = oracle.basis(&minors, TermOrder::Grevlex).unwrap();
    assert!(oracle.normal_form(&p("x1*y2 - x2*y1", &r), gb).is_zero());
    assert_eq!(oracle.normal_form(&Polynomial::one(&r), gb), Polynomial::one(&r));

    let m = sec4();
    let seq = downgraded_sequence(&m).unwrap();
    let gb = oracle.basis(&minors, TermOrder::Grevlex).unwrap();
    for i in 2..=3 {
        for j in 1..=3 {
            let e = &(&Polynomial::x(&r, j) * seq.h(i)) - &(&Polynomial::y(&r, j) * seq.h(i - 1));
            assert!(oracle.normal_form(&e, gb).is_zero(), "i={i} j={j}");
        }
    }
}

#[test]
fn equality_examples() {
    let oracle = Oracle::default();
    let m = sec4();
    let l = IdealHandle::new(symmetric_ideal(&m));
    let j = IdealHandle::new(rees_ideal(&m).unwrap());
    assert!(oracle.ideal_equality(&l, &l.clone()).unwrap());
    assert!(!oracle.ideal_equality(&l, &j).unwrap());
    let seq = downgraded_sequence(&m).unwrap();
    assert!(!oracle.contains(&l, seq.h(2)).unwrap());
}

#[test]
fn colon_examples() {
    let r = ring(Mode::Standard, 3);
    let oracle = Oracle::default();
    let f = ideal(&r, &["x1^2"]);
    let g = ideal(&r, &["x2^3 + x1*x3^2"]);
    assert!(oracle.ideal_equality(&oracle.colon_ideal(&f, &g).unwrap(), &f).unwrap());
    let x1 = ideal(&r, &["x1"]);
    let c = oracle.colon_ideal(&x1, &x1).unwrap();
    assert_eq!(c.gens(), &[Polynomial::one(&r)]);
    assert!(matches!(
        oracle.colon_ideal(&x1, &ideal(&r, &["0"])),
        Err(OracleError::Precondition(_))
    ));
    // (x1*x2, x1*x3) : (x2, x3) = (x1)
    let a = ideal(&r, &["x1*x2", "x1*x3"]);
    let b = ideal(&r, &["x2", "x3"]);
    assert!(oracle.ideal_equality(&oracle.colon_ideal(&a, &b).unwrap(), &x1).unwrap());
}

#[test]
fn linkage_at_first_power() {
    let oracle = Oracle::default();
    for n in [2, 3] {
        let r = ring(Mode::Standard, n);
        let minors = minors_generators(&r);
        let xn = IdealHandle::new(minors.extended(Label::Custom("xn".into()), [Polynomial::x(&r, n)]));
        let k = IdealHandle::new(k_ideal(&r));
        let mm = IdealHandle::new(minors.extended(Label::Custom("m".into()), maximal_ideal(&r).gens));
        assert!(oracle.ideal_equality(&oracle.colon_ideal(&xn, &k).unwrap(), &mm).unwrap(), "n={n}");
        assert!(oracle.ideal_equality(&oracle.colon_ideal(&xn, &mm).unwrap(), &k).unwrap(), "n={n}");
    }
}

#[test]
fn intersection_of_monomial_ideals() {
    let r = ring(Mode::Standard, 2);
    let oracle = Oracle::default();
    let a = ideal(&r, &["x1^2", "x2"]);
    let b = ideal(&r, &["x1"]);
    let expect = ideal(&r, &["x1^2", "x1*x2"]);
    assert!(oracle.ideal_equality(&oracle.intersect(&a, &b).unwrap(), &expect).unwrap());
}

#[test]
fn saturation_matches_rees_ideal() {
    let oracle = Oracle::default();
    let m = sec4();
    let l = IdealHandle::new(symmetric_ideal(&m));
    let mm = IdealHandle::new(maximal_ideal(m.ring()));
    let sat = oracle.saturate(&l, &mm).unwrap();
    let j = IdealHandle::new(rees_ideal(&m).unwrap());
    assert!(oracle.ideal_equality(&sat.ideal, &j).unwrap());
    assert!(sat.steps <= 2, "steps = {}", sat.steps);

    let unit = IdealHandle::new(GeneratorSet::with_ring(Label::Custom("1".into()), vec![Polynomial::one(m.ring())], m.ring()));
    let same = oracle.saturate(&l, &unit).unwrap();
    assert_eq!(same.steps, 0);
    assert!(oracle.ideal_equality(&same.ideal, &l).unwrap());
}

#[test]
fn saturation_generalized_example() {
    let oracle = Oracle::default();
    let m = sec6();
    let l = IdealHandle::new(symmetric_ideal(&m));
    let mm = IdealHandle::new(maximal_ideal(m.ring()));
    let sat = oracle.saturate(&l, &mm).unwrap();
    let j = IdealHandle::new(rees_ideal(&m).unwrap());
    assert!(oracle.ideal_equality(&sat.ideal, &j).unwrap());
    assert!(sat.steps <= 2, "steps = {}", sat.steps);
}

#[test]
fn elimination_examples() {
    let oracle = Oracle::default();
    let m = sec4();
    let j = IdealHandle::new(rees_ideal(&m).unwrap());
    let e = oracle.eliminate_x(&j).unwrap();
    assert_eq!(e.gens(), &[p("y2^3 - y1^2*y4", m.ring())]);
    let g = sec6();
    let e = oracle.eliminate_x(&IdealHandle::new(rees_ideal(&g).unwrap())).unwrap();
    assert!(e.gens().is_empty());
    let r = ring(Mode::Standard, 2);
    let y1 = ideal(&r, &["y1"]);
    assert_eq!(oracle.eliminate_x(&y1).unwrap().gens(), &[p("y1", &r)]);
}

#[test]
fn implicitization_by_elimination() {
    let oracle = Oracle::default();
    assert_eq!(oracle.implicitize_elimination(&sec4()).unwrap(), p("y2^3 - y1^2*y4", sec4().ring()));
    let r = ring(Mode::Standard, 2);
    let m = validate_map(&r, p("x1", &r), p("x1^2 + x2^2", &r)).unwrap();
    let eq = oracle.implicitize_elimination(&m).unwrap();
    assert_eq!(eq, p("y1^2 + y2^2 - y1*y3", &r));
    let m = validate_map(&r, p("x1", &r), p("x2^2", &r)).unwrap();
    let eq = oracle.implicitize_elimination(&m).unwrap();
    let down = crate::downgrade::implicit_equation(&m).unwrap();
    assert_eq!(down, crate::downgrade::ImplicitEquation::Hypersurface(eq.clone()));
    assert!(matches!(oracle.implicitize_elimination(&sec6()), Err(OracleError::Precondition(_))));
}

#[test]
fn dimensions() {
    let oracle = Oracle::default();
    let m = sec4();
    assert_eq!(oracle.krull_dimension(&IdealHandle::new(symmetric_ideal(&m))).unwrap(), 4);
    assert_eq!(oracle.krull_dimension(&IdealHandle::new(minors_generators(m.ring()))).unwrap(), 5);
    let r = ring(Mode::Standard, 2);
    assert_eq!(oracle.krull_dimension(&ideal(&r, &["0"])).unwrap(), 5);
}

#[test]
fn budget_exhaustion_is_reported() {
    let m = sec4();
    let tiny = Oracle::new(Budget { max_pairs: 1, max_monomial_ops: 10 });
    let j = rees_ideal(&m).unwrap();
    assert!(matches!(tiny.buchberger(&j, TermOrder::Lex), Err(OracleError::ResourceLimit(_))));
}

#[test]
fn bases_are_deterministic_and_order_independent_for_membership() {
    let oracle = Oracle::default();
    let m = sec6();
    let j = rees_ideal(&m).unwrap();
    let a = oracle.buchberger(&j, TermOrder::Grevlex).unwrap();
    let b = oracle.buchberger(&j, TermOrder::Grevlex).unwrap();
    assert_eq!(a, b);
    for order in TermOrder::ALL {
        let gb = oracle.buchberger(&j, order).unwrap();
        assert!(gb.is_groebner(), "{order:?}");
        for g in &j.gens {
            assert!(oracle.normal_form(g, &gb).is_zero());
        }
        let probe = &Polynomial::x(m.ring(), 1) * &Polynomial::y(m.ring(), 4);
        assert!(!oracle.normal_form(&probe, &gb).is_zero());
    }
}
