//! Exact arithmetic in L = K(√3), K = Q(i, √6), with the involution
//! σ: √3 ↦ -√3 fixing K, and the three-basis configuration in dimension 6
//! together with its reductions to F_{q^2}.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Ff2};
use crate::hermitian::{verify_columns, HermitianField, MubSet, UVec, UnitaryBasis, VerificationReport};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Element `x0 + x1 i + x2 √6 + x3 i√6` of K.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KElem(pub [BigRational; 4]);

impl KElem {
    pub fn zero() -> Self {
        KElem(std::array::from_fn(|_| BigRational::zero()))
    }
    pub fn from_rat(r: BigRational) -> Self {
        let mut k = Self::zero();
        k.0[0] = r;
        k
    }
    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat(n, 1))
    }
    pub fn i() -> Self {
        let mut k = Self::zero();
        k.0[1] = BigRational::one();
        k
    }
    pub fn sqrt6() -> Self {
        let mut k = Self::zero();
        k.0[2] = BigRational::one();
        k
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
    pub fn is_rational(&self) -> bool {
        self.0[1..].iter().all(Zero::is_zero)
    }
    fn scale(&self, r: &BigRational) -> Self {
        KElem(std::array::from_fn(|j| &self.0[j] * r))
    }
    /// `√6 ↦ -√6`.
    fn conj6(&self) -> Self {
        let [a, b, c, d] = &self.0;
        KElem([a.clone(), b.clone(), -c, -d])
    }
    /// `i ↦ -i`.
    fn conj_i(&self) -> Self {
        let [a, b, c, d] = &self.0;
        KElem([a.clone(), -b, c.clone(), -d])
    }
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x·conj6(x) lies in Q(i); times its i-conjugate is rational
        let t = self * &self.conj6();
        let n = &t * &t.conj_i();
        debug_assert!(n.is_rational());
        let r = n.0[0].recip();
        Some((&self.conj6() * &t.conj_i()).scale(&r))
    }
}

impl Add for &KElem {
    type Output = KElem;
    fn add(self, o: &KElem) -> KElem {
        KElem(std::array::from_fn(|j| &self.0[j] + &o.0[j]))
    }
}

impl Sub for &KElem {
    type Output = KElem;
    fn sub(self, o: &KElem) -> KElem {
        KElem(std::array::from_fn(|j| &self.0[j] - &o.0[j]))
    }
}

impl Neg for &KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        KElem(std::array::from_fn(|j| -&self.0[j]))
    }
}

impl Mul for &KElem {
    type Output = KElem;
    fn mul(self, o: &KElem) -> KElem {
        let [a0, a1, a2, a3] = &self.0;
        let [b0, b1, b2, b3] = &o.0;
        let six = rat(6, 1);
        KElem([
            a0 * b0 - a1 * b1 + &six * (a2 * b2 - a3 * b3),
            a0 * b1 + a1 * b0 + &six * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 - a1 * b3 - a3 * b1,
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ])
    }
}

/// Element `a + b√3` of L.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NfElem {
    pub a: KElem,
    pub b: KElem,
}

impl NfElem {
    pub fn zero() -> Self {
        NfElem {
            a: KElem::zero(),
            b: KElem::zero(),
        }
    }
    pub fn from_k(a: KElem) -> Self {
        NfElem { a, b: KElem::zero() }
    }
    pub fn from_int(n: i64) -> Self {
        Self::from_k(KElem::from_int(n))
    }
    pub fn from_rat(n: i64, d: i64) -> Self {
        Self::from_k(KElem::from_rat(rat(n, d)))
    }
    pub fn i() -> Self {
        Self::from_k(KElem::i())
    }
    pub fn sqrt6() -> Self {
        Self::from_k(KElem::sqrt6())
    }
    pub fn sqrt3() -> Self {
        NfElem {
            a: KElem::zero(),
            b: KElem::from_int(1),
        }
    }
    /// `(-1 + i√3)/2`.
    pub fn omega() -> Self {
        NfElem {
            a: KElem::from_rat(rat(-1, 2)),
            b: KElem::i().scale(&rat(1, 2)),
        }
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    pub fn sigma(&self) -> Self {
        NfElem {
            a: self.a.clone(),
            b: -&self.b,
        }
    }
    pub fn inv(&self) -> Option<Self> {
        let n = nf_norm(self).inv()?;
        let s = self.sigma();
        Some(NfElem {
            a: &s.a * &n,
            b: &s.b * &n,
        })
    }
    /// Coordinates over `{1, i, √6, i√6} ⊗ {1, √3}`.
    pub fn coords(&self) -> [BigRational; 8] {
        std::array::from_fn(|j| if j < 4 { self.a.0[j].clone() } else { self.b.0[j - 4].clone() })
    }
    pub fn from_coords(c: [BigRational; 8]) -> Self {
        let [a0, a1, a2, a3, b0, b1, b2, b3] = c;
        NfElem {
            a: KElem([a0, a1, a2, a3]),
            b: KElem([b0, b1, b2, b3]),
        }
    }
}

impl Add for &NfElem {
    type Output = NfElem;
    fn add(self, o: &NfElem) -> NfElem {
        NfElem {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Sub for &NfElem {
    type Output = NfElem;
    fn sub(self, o: &NfElem) -> NfElem {
        NfElem {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl Neg for &NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Mul for &NfElem {
    type Output = NfElem;
    fn mul(self, o: &NfElem) -> NfElem {
        let three = KElem::from_int(3);
        NfElem {
            a: &(&self.a * &o.a) + &(&three * &(&self.b * &o.b)),
            b: &(&self.a * &o.b) + &(&self.b * &o.a),
        }
    }
}

/// `x σ(x)`, the norm down to K.
pub fn nf_norm(x: &NfElem) -> KElem {
    let n = x * &x.sigma();
    debug_assert!(n.b.is_zero());
    n.a
}

fn render_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Serialize for NfElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c: Vec<String> = self.coords().iter().map(|r| format!("{}/{}", r.numer(), r.denom())).collect();
        c.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NfElem {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v: Vec<String> = Vec::deserialize(de)?;
        if v.len() != 8 {
            return Err(D::Error::custom(format!("expected 8 coordinates, got {}", v.len())));
        }
        let parse = |s: &String| -> std::result::Result<BigRational, D::Error> {
            let (n, d) = s.split_once('/').unwrap_or((s, "1"));
            let n: BigInt = n.trim().parse().map_err(D::Error::custom)?;
            let d: BigInt = d.trim().parse().map_err(D::Error::custom)?;
            if d.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        };
        let c: Vec<BigRational> = v.iter().map(parse).collect::<std::result::Result<_, _>>()?;
        let c: [BigRational; 8] = c.try_into().expect("length checked");
        Ok(NfElem::from_coords(c))
    }
}

/// The field L with σ as its Hermitian involution.
#[derive(Debug, Clone, Copy, Default)]
pub struct NumberField;

impl HermitianField for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem::zero()
    }
    fn from_int(&self, n: i64) -> NfElem {
        NfElem::from_int(n)
    }
    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        a + b
    }
    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        a * b
    }
    fn conj(&self, a: &NfElem) -> NfElem {
        a.sigma()
    }
    fn inv(&self, a: &NfElem) -> Option<NfElem> {
        a.inv()
    }
    fn render(&self, a: &NfElem) -> String {
        let names = ["", "i", "√6", "i√6", "√3", "i√3", "√6√3", "i√6√3"];
        let terms: Vec<String> = a
            .coords()
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| match (n, c.is_one(), (-c).is_one()) {
                ("", _, _) => render_rat(c),
                (_, true, _) => n.to_string(),
                (_, _, true) => format!("-{n}"),
                _ if c.is_negative() => format!("({}){n}", render_rat(c)),
                _ => format!("{}{n}", render_rat(c)),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Matrix stored by rows.
pub type NfMatrix = Vec<Vec<NfElem>>;

/// The two 6×6 bases and the 6×4 orthonormal set, by rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSet {
    pub b1: NfMatrix,
    pub b2: NfMatrix,
    pub v: NfMatrix,
}

/// `a + b√3` with small integer `a`, `b`.
fn ab(a: i64, b: i64) -> NfElem {
    NfElem {
        a: KElem::from_int(a),
        b: KElem::from_int(b),
    }
}

fn columns(m: &NfMatrix) -> Vec<Vec<NfElem>> {
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

impl QuiverSet {
    pub fn basis_columns(&self) -> Vec<Vec<Vec<NfElem>>> {
        vec![columns(&self.b1), columns(&self.b2)]
    }
    pub fn extra_columns(&self) -> Vec<Vec<NfElem>> {
        columns(&self.v)
    }
}

pub fn quiver_set() -> QuiverSet {
    let s = 1;
    let scale = &NfElem::sqrt6() * &NfElem::from_rat(1, 6);
    let mat = |rows: Vec<Vec<NfElem>>| -> NfMatrix {
        rows.into_iter()
            .map(|r| r.iter().map(|x| x * &scale).collect())
            .collect()
    };
    let (one, m1) = (ab(1, 0), ab(-1, 0));
    let (p2m, p2p) = (ab(2, -s), ab(2, s));
    let (m2p, m2m) = (ab(-2, s), ab(-2, -s));
    let b1 = mat(vec![
        vec![one.clone(); 6],
        vec![one.clone(), m2p.clone(), m1.clone(), p2m.clone(), m2p.clone(), p2m.clone()],
        vec![one.clone(), one.clone(), m2m.clone(), one.clone(), one.clone(), m2p.clone()],
        vec![one.clone(), m2m.clone(), p2p.clone(), m1.clone(), one.clone(), m1.clone()],
        vec![one.clone(), one.clone(), m2m.clone(), m2p.clone(), one.clone(), one.clone()],
        vec![one.clone(), one.clone(), p2p.clone(), m1.clone(), m2m.clone(), m1.clone()],
    ]);
    let b2 = mat(vec![
        vec![one.clone(); 6],
        vec![one.clone(), one.clone(), m1.clone(), m2p.clone(), m1.clone(), p2m.clone()],
        vec![one.clone(), one.clone(), one.clone(), one.clone(), m2m.clone(), m2p.clone()],
        vec![one.clone(), m2m.clone(), p2p.clone(), m2m.clone(), p2p.clone(), m1.clone()],
        vec![one.clone(), one.clone(), m2m.clone(), one.clone(), one.clone(), m2p.clone()],
        vec![m2m.clone(), one.clone(), p2p.clone(), m2m.clone(), p2p.clone(), m1.clone()],
    ]);
    let w = NfElem::omega();
    let w2 = &w * &w;
    let w2t = &w2 * &p2m;
    let wt = &w * &p2m;
    let v = mat(vec![
        vec![one.clone(); 4],
        vec![w2t.clone(), -&w2t, -&wt, wt.clone()],
        vec![w.clone(), w.clone(), w2.clone(), w2.clone()],
        vec![-&w, w.clone(), w2.clone(), -&w2],
        vec![w2.clone(), w2.clone(), w.clone(), w.clone()],
        vec![m1.clone(), one.clone(), one.clone(), m1.clone()],
    ]);
    QuiverSet { b1, b2, v }
}

/// Exact verification of the configuration over L.
pub fn verify_quiver_char0() -> VerificationReport {
    let set = quiver_set();
    verify_columns(&NumberField, 6, &set.basis_columns(), &set.extra_columns())
}

/// Images of the generators `i`, `√6`, `√3` in F_{q^2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reduction {
    pub i: Ff2,
    pub sqrt6: Ff2,
    pub sqrt3: Ff2,
    /// Whether `√6` falls outside F_q, so vectors need an extra factor `i`.
    pub twist: bool,
}

/// Chooses the smallest-rank root for each generator. Requires `q ≡ 5 mod 12`.
pub fn reduction(ctx: &FieldCtx) -> Result<Reduction> {
    let q = ctx.q();
    if q % 12 != 5 {
        return Err(Error::Inadmissible(format!("q = {q} is not 5 mod 12")));
    }
    let root = |n: i64| {
        ctx.sqrts_by_rank(ctx.from_int(n))
            .map(|r| r[0])
            .ok_or_else(|| Error::Unsupported(format!("no square root of {n} in F_q^2")))
    };
    let i = root(-1)?;
    let sqrt6 = root(6)?;
    let sqrt3 = root(3)?;
    if !ctx.in_base(i) || ctx.in_base(sqrt3) {
        return Err(Error::Unsupported("unexpected residue pattern".into()));
    }
    Ok(Reduction {
        i,
        sqrt6,
        sqrt3,
        twist: !ctx.in_base(sqrt6),
    })
}

impl Reduction {
    fn rational(&self, ctx: &FieldCtx, r: &BigRational) -> Result<Ff2> {
        let p = BigInt::from(ctx.p());
        let red = |n: &BigInt| -> i64 {
            let m = ((n % &p) + &p) % &p;
            i64::try_from(m).expect("residue fits")
        };
        let num = ctx.from_int(red(r.numer()));
        let den = ctx.from_int(red(r.denom()));
        ctx.div(num, den)
            .ok_or_else(|| Error::Unsupported(format!("{} is not integral at p = {}", render_rat(r), ctx.p())))
    }

    pub fn apply_k(&self, ctx: &FieldCtx, x: &KElem) -> Result<Ff2> {
        let basis = [Ff2::ONE, self.i, self.sqrt6, ctx.mul(self.i, self.sqrt6)];
        let mut acc = Ff2::ZERO;
        for (c, &b) in x.0.iter().zip(&basis) {
            acc = ctx.add(acc, ctx.mul(self.rational(ctx, c)?, b));
        }
        Ok(acc)
    }

    /// The ring map L → F_{q^2} on p-integral elements.
    pub fn apply(&self, ctx: &FieldCtx, x: &NfElem) -> Result<Ff2> {
        let a = self.apply_k(ctx, &x.a)?;
        let b = self.apply_k(ctx, &x.b)?;
        Ok(ctx.add(a, ctx.mul(b, self.sqrt3)))
    }
}

/// Reduces the configuration to F_{q^2}, multiplying each vector by `i` when
/// `√6 ∉ F_q`.
pub fn reduce_mod(q: u64) -> Result<MubSet> {
    let (p, r) = crate::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q % 12 != 5 {
        return Err(Error::Inadmissible(format!("q = {q} is not 5 mod 12")));
    }
    let ctx = Arc::new(FieldCtx::new(p, r, crate::gf::DEFAULT_MAX_Q)?);
    reduce_in(&ctx)
}

pub fn reduce_in(ctx: &Arc<FieldCtx>) -> Result<MubSet> {
    let red = reduction(ctx)?;
    let factor = if red.twist { red.i } else { Ff2::ONE };
    let vec_of = |col: &Vec<NfElem>| -> Result<UVec> {
        col.iter()
            .map(|x| red.apply(ctx, x).map(|y| ctx.mul(y, factor)))
            .collect::<Result<Vec<_>>>()
            .map(UVec)
    };
    let set = quiver_set();
    let bases = set
        .basis_columns()
        .iter()
        .map(|b| {
            b.iter()
                .map(vec_of)
                .collect::<Result<Vec<_>>>()
                .map(|columns| UnitaryBasis { columns })
        })
        .collect::<Result<Vec<_>>>()?;
    let extras = set.extra_columns().iter().map(vec_of).collect::<Result<Vec<_>>>()?;
    Ok(MubSet {
        d: 6,
        ctx: ctx.clone(),
        bases,
        extras,
    })
}
