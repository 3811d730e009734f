mod common;

use common::{actual, expected_d2_system, Terms};
use gfmub::gf::build_field;
use gfmub::polysys::*;
use gfmub::search::{search_full, SearchOptions};
use std::collections::BTreeMap;
use std::sync::Arc;

#[test]
fn dimension_two_system_has_the_expected_shape() {
    let sys = generate_system(2, 2, -1).unwrap();
    assert_eq!(sys.polys.len(), 16);
    assert_eq!((sys.count(PolyType::I), sys.count(PolyType::II), sys.count(PolyType::III)), (8, 4, 4));
    let names: Vec<String> = sys.vars.iter().map(|v| v.name()).collect();
    assert_eq!(names.len(), 16);
    assert_eq!(names[0], "b1c1r1re");
    assert_eq!(names[15], "b2c2r2im");

    let got: Vec<Terms> = sys.polys.iter().map(|p| actual(&sys, &p.poly)).collect();
    assert_eq!(got, expected_d2_system());
}

#[test]
fn polynomial_counts_scale_with_dimension() {
    for (d, n) in [(2usize, 1usize), (3, 2), (4, 3), (6, 3)] {
        let sys = generate_system(d, n, -1).unwrap();
        assert_eq!(sys.vars.len(), 2 * n * d * d);
        assert_eq!(sys.count(PolyType::I), n * d * d);
        assert_eq!(sys.count(PolyType::II), n * d * (d - 1));
        assert_eq!(sys.count(PolyType::III), n * (n - 1) / 2 * d * d);
    }
}

#[test]
fn search_witnesses_are_zeros_of_the_system() {
    for (d, q) in [(2usize, 3u64), (2, 7), (3, 5), (4, 3), (6, 7)] {
        for w in search_full(d, q, &SearchOptions::default()).unwrap().witnesses {
            let n = w.bases.len();
            let c = canonical_nonresidue(&w.ctx).unwrap();
            let ci = nonresidue_integer(&w.ctx, c).unwrap();
            let sys = generate_system(d, n, ci).unwrap();
            let a = mubset_assignment(&w, c, n).unwrap();
            assert!(a.values().all(|&x| w.ctx.in_base(x)));
            let res = evaluate_system(&sys, w.ctx.as_ref(), &a).unwrap();
            assert!(all_zero(w.ctx.as_ref(), &res), "d={d} q={q}");
        }
    }
}

#[test]
fn missing_variables_are_reported() {
    let ctx = Arc::new(build_field(3, 1).unwrap());
    let sys = generate_system(2, 1, 2).unwrap();
    let err = evaluate_system(&sys, ctx.as_ref(), &BTreeMap::new()).unwrap_err();
    assert!(err.to_string().contains("b1c1r1re"), "{err}");
}

#[test]
fn brute_force_agrees_with_the_verifier_at_q3() {
    let ctx = Arc::new(build_field(3, 1).unwrap());
    let r = brute_force_d2(&ctx).unwrap();
    assert!(r.agree);
    assert_eq!(r.system_bases, r.verifier_bases);
    assert_eq!(r.system_pairs, r.verifier_pairs);
    assert!(r.system_pairs > 0);
}

#[test]
fn export_round_trips_term_counts() {
    let sys = generate_system(2, 2, -1).unwrap();
    let json = sys.to_json();
    assert_eq!(json.polys.len(), 16);
    let text = sys.to_text();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).count(), 16);
    let parsed: SystemJson = serde_json::from_str(&serde_json::to_string(&json).unwrap()).unwrap();
    assert_eq!(parsed, json);
}
