use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::downgrade::{downgraded_sequence, symmetric_ideal};
use crate::jonq::validate_map;
use crate::oracle::{IdealHandle, Oracle};
use crate::poly::{parse_poly, Field, Polynomial, Ring, RingSpec, TermOrder};

fn p(s: &str, r: &Arc<Ring>) -> Polynomial {
    parse_poly(s, r).unwrap()
}

fn map(mode: Mode, n: usize, f: &str, g: &str) -> DeJonquieresMap {
    let r = Ring::new(RingSpec::new(mode, n, Field::Rationals).unwrap());
    validate_map(&r, p(f, &r), p(g, &r)).unwrap()
}

#[test]
fn betti_n2_d3() {
    let t = betti_table(2, 3);
    assert_eq!(t.ranks(), vec![1, 2, 1]);
    assert_eq!(t.to_string(), "F0 = B\nF1 = B(-2,-1) + B(-1,-1)\nF2 = B(-3,-2)\n");
}

#[test]
fn collapsed_table_matches_for_n2_only() {
    for d in 2..6 {
        assert_eq!(hilbert_from_betti(&betti_table_collapsed(2, d)), hilbert_from_betti(&betti_table(2, d)));
        assert_eq!(betti_table_collapsed(3, d).ranks(), betti_table(3, d).ranks());
    }
    assert_ne!(hilbert_from_betti(&betti_table_collapsed(3, 3)), hilbert_from_betti(&betti_table(3, 3)));
}

#[test]
fn n3_numerator_is_minors_times_regular_cubic() {
    // (1 - 3z^2 + 2z^3)(1 - z^3)
    assert_eq!(hilbert_from_betti(&betti_table(3, 3)).coeffs, vec![1, 0, -3, 1, 0, 3, -2]);
}

#[test]
fn betti_ranks_n3() {
    for d in 2..6 {
        assert_eq!(betti_table(3, d).ranks(), vec![1, 4, 5, 2]);
    }
    assert_eq!(betti_table(2, 2).alternating_sum(), 0);
}

#[test]
fn betti_alternating_sum_vanishes() {
    for n in 2..=12 {
        for d in 2..=12 {
            assert_eq!(betti_table(n, d).alternating_sum(), 0, "n={n} d={d}");
        }
    }
}

#[test]
fn hilbert_from_betti_n2_d3() {
    let k = hilbert_from_betti(&betti_table(2, 3));
    assert_eq!(k.coeffs, vec![1, 0, -1, -1, 0, 1]);
    assert_eq!(k.to_string(), "1 - z^2 - z^3 + z^5");
    assert_eq!(k.eval_at_one(), 0);
}

#[test]
fn betti_numerator_vanishes_to_order_n() {
    for n in 2..=6 {
        for d in 2..=6 {
            assert_eq!(hilbert_from_betti(&betti_table(n, d)).vanishing_order_at_one(), n, "n={n} d={d}");
        }
    }
}

#[test]
fn monomial_numerators() {
    assert_eq!(hilbert_of_monomials(&[Monomial::var(0)], 1).to_string(), "1 - z");
    assert_eq!(hilbert_of_monomials(&[], 3).to_string(), "1");
    // (x^2, xy) = x (x, y): 1 - 2z^2 + z^3
    let xy = Monomial::from_exponents(&[1, 1]);
    let x2 = Monomial::from_exponents(&[2, 0]);
    assert_eq!(hilbert_of_monomials(&[x2, xy], 2).coeffs, vec![1, 0, -2, 1]);
}

#[test]
fn hilbert_two_ways_on_examples() {
    let oracle = Oracle::default();
    for (m, n, d) in [
        (map(Mode::Standard, 3, "x1^2", "x2^3"), 3, 3),
        (map(Mode::Standard, 2, "x1", "x1^2 + x2^2"), 2, 2),
    ] {
        let l = IdealHandle::new(symmetric_ideal(&m));
        let gb = oracle.basis(&l, TermOrder::Grevlex).unwrap();
        assert_eq!(hilbert_from_initial(gb), hilbert_from_betti(&betti_table(n, d)));
    }
}

#[test]
fn cm_examples() {
    let r = cm_formula(Mode::Standard, 3, 3);
    assert_eq!((r.dim_rees, r.depth_rees, r.is_cm), (4, 4, true));
    assert_eq!(r.to_string().lines().next().unwrap(), "dim=4 depth=4 CM=yes (d=3 ≤ n=3)");
    let r = cm_formula(Mode::Standard, 2, 3);
    assert_eq!((r.dim_rees, r.depth_rees, r.is_cm, r.is_almost_cm), (3, 2, false, true));
    let r = cm_formula(Mode::Generalized, 3, 4);
    assert_eq!((r.dim_rees, r.depth_rees, r.is_cm), (5, 5, true));
    let r = cm_formula(Mode::Generalized, 2, 4);
    assert_eq!((r.depth_rees, r.is_cm), (3, false));
    assert_eq!(r.to_string().lines().next().unwrap(), "dim=4 depth=3 CM=no (d=4 > n+1=3)");
    for mode in [Mode::Standard, Mode::Generalized] {
        for n in 2..8 {
            for d in 2..10 {
                let r = cm_formula(mode, n, d);
                assert!(r.is_almost_cm && r.dim_rees - r.depth_rees <= 1);
                assert_eq!(r.is_cm, r.dim_rees == r.depth_rees);
            }
        }
    }
}

#[test]
fn random_maps_are_valid_and_deterministic() {
    for mode in [Mode::Standard, Mode::Generalized] {
        for d in 2..=4 {
            let spec = RandomSpec { mode, n: 3, d, prime: 32003 };
            let a = random_map(spec, &mut ChaCha8Rng::seed_from_u64(11));
            let b = random_map(spec, &mut ChaCha8Rng::seed_from_u64(11));
            assert_eq!(a.f(), b.f());
            assert_eq!(a.g(), b.g());
            assert_eq!(a.d(), d);
            assert!((3..=6).contains(&a.g().len()));
        }
    }
}

#[test]
fn suite_passes_on_section4_example() {
    let m = map(Mode::Standard, 3, "x1^2", "x2^3");
    let report = verify_suite(&m, 0, &Oracle::default(), VerifyOptions::default()).unwrap();
    assert!(report.all_passed(), "{}", report.to_text());
    assert_eq!(report.check(5).witness, "steps=2 bound=2");
}

#[test]
fn corrupted_sequence_is_caught() {
    let m = map(Mode::Standard, 3, "x1^2", "x2^3");
    let seq = corrupt_sequence(&downgraded_sequence(&m).unwrap());
    assert_eq!(seq.h(2).to_string(), "x2*y2^2");
    let opts = VerifyOptions { trials: 2, ..VerifyOptions::default() };
    let report = verify_sequence(&m, &seq, 0, &Oracle::default(), opts);
    for id in [1, 3, 5] {
        assert_eq!(report.check(id).status, CheckStatus::Fail, "{}", report.to_text());
    }
}

#[test]
fn report_json_is_deterministic_without_timing() {
    let m = map(Mode::Standard, 2, "x1", "x1^2 + x2^2");
    let a = verify_suite(&m, 5, &Oracle::default(), VerifyOptions::default()).unwrap().to_json();
    let b = verify_suite(&m, 5, &Oracle::default(), VerifyOptions::default()).unwrap().to_json();
    assert_eq!(a, b);
    assert!(a.contains("\"timing_ms\": null"));
}
