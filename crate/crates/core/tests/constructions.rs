use gfmub::constructions::*;
use gfmub::gf::{FieldCtx, Ff2};
use gfmub::hermitian::{herm_inner, is_hadamard, verify_mub_set, UVec};
use gfmub::search::{search_full, SearchOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn ctx(q: u64) -> Arc<FieldCtx> {
    let (p, r) = gfmub::arith::prime_power(q).unwrap();
    Arc::new(FieldCtx::new(p, r, 8192).unwrap())
}

#[test]
fn wf_sets_are_complete() {
    for (l, k, q) in [(2u64, 1u32, 3u64), (2, 1, 7), (2, 2, 3), (2, 2, 11), (3, 1, 5), (3, 1, 17), (5, 1, 19), (7, 1, 13), (3, 2, 17)] {
        let c = ctx(q);
        let set = wf_mubs(&c, WfParams { l, k }).unwrap();
        let r = verify_mub_set(&set);
        assert!(r.pass, "l={l} k={k} q={q}: {:?}", r.violations);
        assert_eq!(r.num_bases, set.d + 1);
    }
}

#[test]
fn wf_rejects_inadmissible_fields() {
    assert!(wf_mubs(&ctx(5), WfParams { l: 2, k: 1 }).is_err());
    assert!(wf_mubs(&ctx(7), WfParams { l: 3, k: 1 }).is_err());
    assert!(wf_mubs(&ctx(9), WfParams { l: 3, k: 1 }).is_err());
    assert!(wf_mubs(&ctx(7), WfParams { l: 2, k: 3 }).is_err());
}

#[test]
fn wf_matches_search_where_both_run() {
    for (l, k, q) in [(2u64, 1u32, 3u64), (3, 1, 5), (2, 2, 3), (2, 2, 7), (5, 1, 19)] {
        let d = l.pow(k) as usize;
        let r = search_full(d, q, &SearchOptions::default()).unwrap();
        assert_eq!(r.m, d + 1, "d={d} q={q}");
    }
}

#[test]
fn norm_minus_one_element() {
    for q in [3u64, 5, 7, 9, 11, 17, 19] {
        let c = ctx(q);
        let v = find_norm_minus_one(&c);
        assert_eq!(c.add(c.norm(v), Ff2::ONE), Ff2::ZERO);
        assert_eq!(v.log(), Some((q as u32 - 1) / 2));
    }
}

#[test]
fn tensor_inner_products_factor() {
    let c = ctx(11);
    let a = wf_mubs(&c, WfParams { l: 2, k: 1 }).unwrap();
    let b = wf_mubs(&c, WfParams { l: 3, k: 1 }).unwrap();
    let t = tensor_mubs(&a, &b).unwrap();
    assert_eq!(t.d, 6);
    assert_eq!(t.bases.len(), 2);
    let r = verify_mub_set(&t);
    assert!(r.pass, "{:?}", r.violations);
    assert_eq!(r.num_bases, 3);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pick = |rng: &mut ChaCha8Rng, s: &gfmub::hermitian::MubSet| {
        let b = rng.gen_range(0..s.bases.len());
        let j = rng.gen_range(0..s.d);
        (b, j, s.bases[b].columns[j].clone())
    };
    for _ in 0..500 {
        let (ba, ja, x) = pick(&mut rng, &a);
        let (ba2, ja2, x2) = pick(&mut rng, &a);
        let (bb, jb, y) = pick(&mut rng, &b);
        let (bb2, jb2, y2) = pick(&mut rng, &b);
        let f: &FieldCtx = &c;
        let kron = |u: &UVec, v: &UVec| UVec(u.0.iter().flat_map(|&p| v.0.iter().map(move |&q| f.mul(p, q))).collect());
        let lhs = herm_inner(&c, &kron(&x, &y), &kron(&x2, &y2)).unwrap();
        let rhs = c.mul(herm_inner(&c, &x, &x2).unwrap(), herm_inner(&c, &y, &y2).unwrap());
        assert_eq!(lhs, rhs, "{ba}/{ja} {ba2}/{ja2} {bb}/{jb} {bb2}/{jb2}");
    }
}

#[test]
fn admissible_orders_for_dimension_six() {
    let list = admissible_q(6, 60);
    let qs: Vec<u64> = list.iter().map(|a| a.q).collect();
    for &q in &qs {
        assert_eq!(q % 4, 3);
        assert_eq!(q % 3, 2);
    }
    assert_eq!(qs, vec![11, 23, 47, 59]);
    assert!(admissible_q(8, 1000).is_empty());
}

#[test]
fn fixture_report_is_deterministic_and_rechecked() {
    let fx = fixture_dardo71().unwrap();
    assert_eq!(fx.candidates.len(), 24);
    let report = fx.report().unwrap();
    assert_eq!(report, fx.report().unwrap());
    let c = &fx.ctx;
    let delta = c.delta(6).unwrap();
    let target = c.inv_dim(6).unwrap();
    for cand in &report {
        let w = c.u_pow(cand.k as i64);
        let h1 = fx.h1.basis(c, delta, w);
        let d0 = fx.d0.basis(c, delta, w);
        assert_eq!(is_hadamard(c, 6, &h1), cand.h1_hadamard);
        assert_eq!(is_hadamard(c, 6, &d0), cand.d0_hadamard);
        let pairs = h1
            .columns
            .iter()
            .flat_map(|x| d0.columns.iter().map(move |y| (x, y)))
            .filter(|(x, y)| c.norm(herm_inner(c, x, y).unwrap()) == target)
            .count();
        assert_eq!(pairs, cand.mu_pairs);
        assert_eq!(cand.mutually_unbiased, pairs == 36);
    }
    assert!(report.iter().any(|r| r.h1_hadamard));
    assert!(report.iter().any(|r| r.d0_hadamard));
}
