//! Independent brute-force checks of the search engine.

use gfmub::gf::{build_field, FieldCtx, Ff2};
use gfmub::hermitian::{herm_inner, UVec};
use gfmub::search::{build_ratio_table, search_full, SearchOptions, MAX_SEARCH_DIM};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn field(p: u64, r: u32) -> Arc<FieldCtx> {
    Arc::new(build_field(p, r).unwrap())
}

/// M in dimension 2 by enumerating every orthonormal basis of vectors whose
/// entries all have norm 1/2, then the largest pairwise unbiased family.
fn naive_m_d2(ctx: &FieldCtx) -> usize {
    let half = ctx.inv_dim(2).unwrap();
    let entries: Vec<Ff2> = ctx.elements().filter(|&x| ctx.norm(x) == half).collect();
    let mut vectors = Vec::new();
    for &a in &entries {
        for &b in &entries {
            vectors.push(UVec(vec![a, b]));
        }
    }
    let inner = |x: &UVec, y: &UVec| herm_inner(ctx, x, y).unwrap();
    // a basis is a pair of orthogonal vectors; keep each unordered pair once
    let mut bases: Vec<(usize, usize)> = Vec::new();
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            if inner(&vectors[i], &vectors[j]).is_zero() {
                bases.push((i, j));
            }
        }
    }
    // rephased copies of one basis are never unbiased to each other
    let mu = |x: usize, y: usize| ctx.norm(inner(&vectors[x], &vectors[y])) == half;
    let unbiased = |s: (usize, usize), t: (usize, usize)| mu(s.0, t.0) && mu(s.0, t.1) && mu(s.1, t.0) && mu(s.1, t.1);
    let n = bases.len();
    let mut best = 0;
    for a in 0..n {
        best = best.max(1);
        for b in a + 1..n {
            if !unbiased(bases[a], bases[b]) {
                continue;
            }
            best = best.max(2);
            for c in b + 1..n {
                if unbiased(bases[a], bases[c]) && unbiased(bases[b], bases[c]) {
                    best = best.max(3);
                    for e in c + 1..n {
                        if unbiased(bases[a], bases[e]) && unbiased(bases[b], bases[e]) && unbiased(bases[c], bases[e]) {
                            best = best.max(4);
                        }
                    }
                }
            }
        }
    }
    best + 1
}

#[test]
fn naive_oracle_matches_search_in_dimension_two() {
    for (p, expected) in [(3u64, 3usize), (5, 2)] {
        let ctx = field(p, 1);
        let naive = naive_m_d2(&ctx);
        assert_eq!(naive, expected, "naive M at q = {p}");
        let report = search_full(2, p, &SearchOptions::default()).unwrap();
        assert_eq!(report.m, naive, "search M at q = {p}");
    }
}

#[test]
fn hermitian_form_is_conjugate_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, r) in [(3u64, 1u32), (5, 1), (2, 3), (7, 2)] {
        let ctx = field(p, r);
        let all: Vec<Ff2> = ctx.elements().collect();
        for _ in 0..200 {
            let d = rng.gen_range(1..=6);
            let x = UVec((0..d).map(|_| all[rng.gen_range(0..all.len())]).collect());
            let y = UVec((0..d).map(|_| all[rng.gen_range(0..all.len())]).collect());
            let xy = herm_inner(&ctx, &x, &y).unwrap();
            let yx = herm_inner(&ctx, &y, &x).unwrap();
            assert_eq!(xy, ctx.frobenius(yx));
            assert!(ctx.in_base(herm_inner(&ctx, &x, &x).unwrap()));
        }
    }
}

#[test]
fn ratio_table_agrees_with_direct_inner_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (d, p, r) in [(3usize, 5u64, 1u32), (4, 7, 1), (5, 2, 2), (6, 5, 1), (7, 2, 1)] {
        let ctx = field(p, r);
        let table = build_ratio_table(&ctx, d).unwrap();
        let delta = ctx.delta(d).unwrap();
        let target = ctx.inv_dim(d).unwrap();
        let m = table.space.m;
        for _ in 0..2000 {
            let mut a = [0u8; MAX_SEARCH_DIM];
            let mut b = [0u8; MAX_SEARCH_DIM];
            for j in 0..d - 1 {
                a[j] = rng.gen_range(0..m) as u8;
                b[j] = rng.gen_range(0..m) as u8;
            }
            let ea: Vec<u32> = a[..d - 1].iter().map(|&c| c as u32).collect();
            let eb: Vec<u32> = b[..d - 1].iter().map(|&c| c as u32).collect();
            let x = UVec::from_exponents(&ctx, delta, &ea);
            let y = UVec::from_exponents(&ctx, delta, &eb);
            let ip = herm_inner(&ctx, &x, &y).unwrap();
            assert_eq!(table.orth(&a, &b), ip.is_zero(), "d={d} q={} {ea:?} {eb:?}", ctx.q());
            assert_eq!(table.mu(&a, &b), ctx.norm(ip) == target, "d={d} q={} {ea:?} {eb:?}", ctx.q());
            assert_eq!(table.orth(&a, &b), table.orth(&b, &a));
            assert_eq!(table.mu(&a, &b), table.mu(&b, &a));
        }
    }
}
