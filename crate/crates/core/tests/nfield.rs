use gfmub::gf::FieldCtx;
use gfmub::hermitian::{verify_mub_set, Check};
use gfmub::nfield::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use std::sync::Arc;

fn elem() -> impl Strategy<Value = NfElem> {
    prop::array::uniform8((-20i64..=20, 1i64..=4)).prop_map(|c| {
        // denominators coprime to every tested characteristic
        let r = c.map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)));
        NfElem::from_coords(r)
    })
}

fn ctx(q: u64) -> Arc<FieldCtx> {
    let (p, r) = gfmub::arith::prime_power(q).unwrap();
    Arc::new(FieldCtx::new(p, r, 8192).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sigma_is_an_involutive_automorphism(x in elem(), y in elem()) {
        prop_assert_eq!(x.sigma().sigma(), x.clone());
        prop_assert_eq!((&x * &y).sigma(), &x.sigma() * &y.sigma());
        prop_assert_eq!((&x + &y).sigma(), &x.sigma() + &y.sigma());
        let n = &x * &x.sigma();
        prop_assert!(n.b.is_zero());
        prop_assert_eq!(n.sigma(), n);
    }

    #[test]
    fn inverse_is_exact(x in elem()) {
        match x.inv() {
            None => prop_assert!(x.is_zero()),
            Some(y) => prop_assert_eq!(&x * &y, NfElem::from_int(1)),
        }
    }

    #[test]
    fn reduction_is_a_ring_map(x in elem(), y in elem(), q in prop::sample::select(vec![5u64, 17, 29, 41, 53])) {
        let ctx = ctx(q);
        let red = reduction(&ctx).unwrap();
        let rx = red.apply(&ctx, &x).unwrap();
        let ry = red.apply(&ctx, &y).unwrap();
        prop_assert_eq!(red.apply(&ctx, &(&x * &y)).unwrap(), ctx.mul(rx, ry));
        prop_assert_eq!(red.apply(&ctx, &(&x + &y)).unwrap(), ctx.add(rx, ry));
        prop_assert_eq!(red.apply(&ctx, &(-&x)).unwrap(), ctx.neg(rx));
        if !red.twist {
            prop_assert_eq!(red.apply(&ctx, &x.sigma()).unwrap(), ctx.frobenius(rx));
        }
    }
}

#[test]
fn generators_satisfy_their_relations() {
    let one = NfElem::from_int(1);
    let i = NfElem::i();
    assert_eq!(&i * &i, -&one);
    assert_eq!(&NfElem::sqrt6() * &NfElem::sqrt6(), NfElem::from_int(6));
    assert_eq!(&NfElem::sqrt3() * &NfElem::sqrt3(), NfElem::from_int(3));
    assert_eq!(NfElem::sqrt3().sigma(), -&NfElem::sqrt3());
    assert_eq!(NfElem::sqrt6().sigma(), NfElem::sqrt6());
    assert_eq!(i.sigma(), i);
    let w = NfElem::omega();
    assert_eq!(&(&w * &w) * &w, one);
    assert_eq!(&(&w * &w) + &(&w + &one), NfElem::zero());
}

#[test]
fn quiver_configuration_is_exact_in_characteristic_zero() {
    let r = verify_quiver_char0();
    assert!(r.pass, "{:?}", r.violations);
    assert_eq!((r.num_bases, r.num_extras), (3, 4));
    assert_eq!(r.count(Check::EntryNorm), 72);
    assert_eq!(r.count(Check::Orthogonal), 30);
    assert_eq!(r.count(Check::EntryNorm) + r.count(Check::Unbiased), 108);
    assert_eq!(r.count(Check::ExtraOrthogonal), 6);
    assert_eq!(r.count(Check::ExtraUnbiased), 72);
}

#[test]
fn reductions_pass_the_finite_field_verifier() {
    for q in [5u64, 17, 29, 41, 53] {
        let set = reduce_mod(q).unwrap();
        let r = verify_mub_set(&set);
        assert!(r.pass, "q = {q}: {:?}", r.violations);
        assert_eq!((r.num_bases, r.num_extras), (3, 4));
    }
    assert!(reduce_mod(7).is_err());
    assert!(reduce_mod(13).is_err());
}

#[test]
fn elements_serialise_as_rational_strings() {
    let x = &NfElem::omega() + &NfElem::from_rat(-3, 7);
    let s = serde_json::to_string(&x).unwrap();
    assert_eq!(serde_json::from_str::<NfElem>(&s).unwrap(), x);
    let set = quiver_set();
    let back: QuiverSet = serde_json::from_str(&serde_json::to_string(&set).unwrap()).unwrap();
    assert_eq!(back, set);
}
