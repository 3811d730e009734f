//! Randomised invariants of the MU relations under the symmetry group.

use gfmub::gf::Ff2;
use gfmub::hermitian::{verify_mub_set, MubSet};
use gfmub::search::{canonical_form, canonical_form_with, search_full, SearchOptions};
use proptest::prelude::*;
use std::sync::OnceLock;

fn witnesses() -> &'static [MubSet] {
    static W: OnceLock<Vec<MubSet>> = OnceLock::new();
    W.get_or_init(|| {
        [(2usize, 3u64), (3, 5), (4, 3), (5, 4), (6, 7), (7, 5)]
            .iter()
            .flat_map(|&(d, q)| search_full(d, q, &SearchOptions::default()).unwrap().witnesses)
            .filter(|w| !w.bases.is_empty())
            .collect()
    })
}

#[derive(Debug, Clone)]
struct Transform {
    witness: usize,
    row_perm: Vec<usize>,
    row_phase: Vec<u32>,
    col_perms: Vec<Vec<usize>>,
    col_phases: Vec<Vec<u32>>,
    basis_order: Vec<usize>,
    frobenius: u32,
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn transform() -> impl Strategy<Value = Transform> {
    (0..witnesses().len()).prop_flat_map(|witness| {
        let w = &witnesses()[witness];
        let d = w.d;
        let nb = w.bases.len();
        let m = w.ctx.q() as u32 + 1;
        let e = w.ctx.r() * 2;
        (
            perm(d),
            prop::collection::vec(0..m, d),
            prop::collection::vec(perm(d), nb),
            prop::collection::vec(prop::collection::vec(0..m, d), nb),
            perm(nb),
            0..e,
        )
            .prop_map(move |(row_perm, row_phase, col_perms, col_phases, basis_order, frobenius)| Transform {
                witness,
                row_perm,
                row_phase,
                col_perms,
                col_phases,
                basis_order,
                frobenius,
            })
    })
}

fn apply(t: &Transform, frobenius: bool) -> MubSet {
    let w = &witnesses()[t.witness];
    let ctx = &w.ctx;
    let phases = |v: &[u32]| v.iter().map(|&c| ctx.u_pow(c as i64)).collect::<Vec<Ff2>>();
    let mut s = w.permute_rows(&t.row_perm).scale_rows(&phases(&t.row_phase));
    for b in 0..s.bases.len() {
        s = s.permute_columns(b, &t.col_perms[b]).scale_columns(b, &phases(&t.col_phases[b]));
    }
    s.bases = t.basis_order.iter().map(|&b| s.bases[b].clone()).collect();
    if frobenius {
        s = s.frobenius_power(t.frobenius);
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symmetries_preserve_mutual_unbiasedness(t in transform()) {
        let s = apply(&t, true);
        let r = verify_mub_set(&s);
        prop_assert!(r.pass, "{:?}", r.violations);
        prop_assert_eq!(r.num_bases, witnesses()[t.witness].num_bases());
    }

    #[test]
    fn canonical_form_is_invariant_and_idempotent(t in transform()) {
        let w = &witnesses()[t.witness];
        let c = canonical_form(w).unwrap();
        prop_assert_eq!(&canonical_form(&apply(&t, false)).unwrap(), &c);
        prop_assert_eq!(&canonical_form(&c).unwrap(), &c);
        prop_assert!(verify_mub_set(&c).pass);
        let g = canonical_form_with(w, true).unwrap();
        prop_assert_eq!(&canonical_form_with(&apply(&t, true), true).unwrap(), &g);
        prop_assert_eq!(&canonical_form_with(&g, true).unwrap(), &g);
    }
}
