//! Polynomial systems whose common zeros are sets of `n` bases unbiased to
//! the computational basis and to each other, in coordinates
//! `z = x + i y` with `i^2 = c`.
//!
//! Denominators are cleared: type I is `d (x^2 - c y^2) - 1`, type III is
//! `d^2 (A^2 - c B^2) - d`.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Ff2, PrimeExtField};
use crate::hermitian::{verify_mub_set, MubSet, UVec, UnitaryBasis};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Part {
    Re,
    Im,
}

/// One coordinate of one entry. Bases, columns and rows count from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var {
    pub basis: usize,
    pub col: usize,
    pub row: usize,
    pub part: Part,
}

impl Var {
    pub fn name(&self) -> String {
        let p = match self.part {
            Part::Re => "re",
            Part::Im => "im",
        };
        format!("b{}c{}r{}{p}", self.basis, self.col, self.row)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PolyType {
    I,
    II,
    III,
}

/// Sorted `(variable index, exponent)` pairs.
pub type Monomial = Vec<(usize, u32)>;

/// Integer polynomial in the system's variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, i64>,
}

impl Poly {
    pub fn constant(c: i64) -> Self {
        let mut p = Poly::default();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(v: usize) -> Self {
        let mut p = Poly::default();
        p.add_term(vec![(v, 1)], 1);
        p
    }

    fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            let zero: Vec<_> = self.terms.iter().filter(|(_, &v)| v == 0).map(|(k, _)| k.clone()).collect();
            for k in zero {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Poly {
        let mut out = Poly::default();
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(-1))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::default();
        for (a, &x) in &self.terms {
            for (b, &y) in &o.terms {
                let mut m: BTreeMap<usize, u32> = a.iter().copied().collect();
                for &(v, e) in b {
                    *m.entry(v).or_insert(0) += e;
                }
                out.add_term(m.into_iter().collect(), x * y);
            }
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|&(_, e)| e).sum()).max().unwrap_or(0)
    }

    /// Monomials with nonzero coefficient, the constant included.
    pub fn support(&self) -> BTreeSet<Monomial> {
        self.terms.keys().cloned().collect()
    }

    pub fn eval<R: EvalRing>(&self, ring: &R, values: &[R::Elem]) -> R::Elem {
        let mut acc = ring.zero();
        for (m, &c) in &self.terms {
            let mut t = ring.from_i64(c);
            for &(v, e) in m {
                for _ in 0..e {
                    t = ring.mul(&t, &values[v]);
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedPoly {
    pub kind: PolyType,
    pub poly: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    pub d: usize,
    pub n: usize,
    pub c: i64,
    pub vars: Vec<Var>,
    pub polys: Vec<TaggedPoly>,
}

impl PolySystem {
    pub fn count(&self, kind: PolyType) -> usize {
        self.polys.iter().filter(|p| p.kind == kind).count()
    }

    pub fn var_index(&self, v: &Var) -> Option<usize> {
        self.vars.binary_search(v).ok()
    }
}

/// Builds the system for `n` bases besides the computational one.
pub fn generate_system(d: usize, n: usize, c: i64) -> Result<PolySystem> {
    if d < 2 || n < 1 {
        return Err(Error::Unsupported(format!("need d >= 2 and n >= 1, got d = {d}, n = {n}")));
    }
    let mut vars = Vec::with_capacity(2 * n * d * d);
    for basis in 1..=n {
        for col in 1..=d {
            for row in 1..=d {
                for part in [Part::Re, Part::Im] {
                    vars.push(Var { basis, col, row, part });
                }
            }
        }
    }
    let idx = |b: usize, col: usize, row: usize, im: bool| 2 * (((b - 1) * d + col - 1) * d + row - 1) + im as usize;
    let x = |b, col, row| Poly::var(idx(b, col, row, false));
    let y = |b, col, row| Poly::var(idx(b, col, row, true));
    let di = d as i64;
    // Hermitian product of two columns: real part Σ x x' - c y y', and the
    // imaginary part with the sign Σ y x' - x y'
    let inner = |b1: usize, c1: usize, b2: usize, c2: usize| {
        let mut re = Poly::default();
        let mut im = Poly::default();
        for row in 1..=d {
            let (a, ay) = (x(b1, c1, row), y(b1, c1, row));
            let (b, by) = (x(b2, c2, row), y(b2, c2, row));
            re = re.add(&a.mul(&b)).sub(&ay.mul(&by).scale(c));
            im = im.add(&ay.mul(&b)).sub(&a.mul(&by));
        }
        (re, im)
    };
    let mut polys = Vec::new();
    for b in 1..=n {
        for col in 1..=d {
            for row in 1..=d {
                let (u, v) = (x(b, col, row), y(b, col, row));
                let norm = u.mul(&u).sub(&v.mul(&v).scale(c));
                polys.push(TaggedPoly {
                    kind: PolyType::I,
                    poly: norm.scale(di).sub(&Poly::constant(1)),
                });
            }
        }
    }
    for b in 1..=n {
        for j in 1..=d {
            for k in j + 1..=d {
                let (re, im) = inner(b, j, b, k);
                polys.push(TaggedPoly { kind: PolyType::II, poly: re });
                polys.push(TaggedPoly { kind: PolyType::II, poly: im });
            }
        }
    }
    for b1 in 1..=n {
        for b2 in b1 + 1..=n {
            for j in 1..=d {
                for k in 1..=d {
                    let (re, im) = inner(b1, j, b2, k);
                    let norm = re.mul(&re).sub(&im.mul(&im).scale(c));
                    polys.push(TaggedPoly {
                        kind: PolyType::III,
                        poly: norm.scale(di * di).sub(&Poly::constant(di)),
                    });
                }
            }
        }
    }
    Ok(PolySystem { d, n, c, vars, polys })
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// A commutative ring to evaluate integer polynomials in.
pub trait EvalRing {
    type Elem: Clone + PartialEq;
    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

impl EvalRing for PrimeExtField {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn from_i64(&self, n: i64) -> u32 {
        PrimeExtField::from_int(self, n)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        PrimeExtField::add(self, *a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        PrimeExtField::mul(self, *a, *b)
    }
}

/// The rationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl EvalRing for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
}

/// Residual of every polynomial, in system order.
pub fn evaluate_system<R: EvalRing>(sys: &PolySystem, ring: &R, assignment: &BTreeMap<Var, R::Elem>) -> Result<Vec<R::Elem>> {
    let values = sys
        .vars
        .iter()
        .map(|v| assignment.get(v).cloned().ok_or_else(|| Error::MissingVariable(v.name())))
        .collect::<Result<Vec<_>>>()?;
    Ok(sys.polys.iter().map(|p| p.poly.eval(ring, &values)).collect())
}

pub fn all_zero<R: EvalRing>(ring: &R, residuals: &[R::Elem]) -> bool {
    let z = ring.zero();
    residuals.iter().all(|r| r == &z)
}

impl EvalRing for FieldCtx {
    type Elem = Ff2;
    fn zero(&self) -> Ff2 {
        Ff2::ZERO
    }
    fn from_i64(&self, n: i64) -> Ff2 {
        self.from_int(n)
    }
    fn add(&self, a: &Ff2, b: &Ff2) -> Ff2 {
        FieldCtx::add(self, *a, *b)
    }
    fn mul(&self, a: &Ff2, b: &Ff2) -> Ff2 {
        FieldCtx::mul(self, *a, *b)
    }
}

// ---------------------------------------------------------------------------
// Coordinates over F_q
// ---------------------------------------------------------------------------

/// The non-square of smallest rank in F_q (odd q), with the integer it
/// reduces from when it lies in the prime field.
pub fn canonical_nonresidue(ctx: &FieldCtx) -> Result<Ff2> {
    if ctx.p() == 2 {
        return Err(Error::Unsupported("no non-residue form in characteristic 2".into()));
    }
    let base = ctx.base();
    (1..base.q())
        .map(|r| ctx.from_base(r))
        .find(|&x| !base.is_square(ctx.to_base(x).expect("base element")))
        .ok_or_else(|| Error::Unsupported("no non-residue".into()))
}

/// Splits entries `z = x + y i` with `i` the smallest-rank root of `c`.
pub struct Coordinates<'a> {
    ctx: &'a FieldCtx,
    i: Ff2,
    inv_2: Ff2,
    inv_2i: Ff2,
}

impl<'a> Coordinates<'a> {
    pub fn new(ctx: &'a FieldCtx, c: Ff2) -> Result<Self> {
        if ctx.p() == 2 || !ctx.in_base(c) {
            return Err(Error::Unsupported("coordinates need odd q and c in F_q".into()));
        }
        let i = ctx
            .sqrts_by_rank(c)
            .map(|r| r[0])
            .filter(|&i| !ctx.in_base(i))
            .ok_or_else(|| Error::Unsupported("c must be a non-residue".into()))?;
        let two = ctx.from_int(2);
        Ok(Coordinates {
            ctx,
            i,
            inv_2: ctx.inv(two).expect("odd characteristic"),
            inv_2i: ctx.inv(ctx.mul(two, i)).expect("nonzero"),
        })
    }

    pub fn i(&self) -> Ff2 {
        self.i
    }

    pub fn split(&self, z: Ff2) -> (Ff2, Ff2) {
        let f = self.ctx.frobenius(z);
        let x = self.ctx.mul(self.ctx.add(z, f), self.inv_2);
        let y = self.ctx.mul(self.ctx.sub(z, f), self.inv_2i);
        (x, y)
    }

    pub fn join(&self, x: Ff2, y: Ff2) -> Ff2 {
        self.ctx.add(x, self.ctx.mul(y, self.i))
    }
}

/// Assignment over F_q (as elements of F_{q^2} lying in F_q) encoding the
/// first `n` non-computational bases of `set`.
pub fn mubset_assignment(set: &MubSet, c: Ff2, n: usize) -> Result<BTreeMap<Var, Ff2>> {
    if set.bases.len() < n {
        return Err(Error::Unsupported(format!("set has {} bases, need {n}", set.bases.len())));
    }
    let coords = Coordinates::new(&set.ctx, c)?;
    let mut out = BTreeMap::new();
    for (b, basis) in set.bases.iter().take(n).enumerate() {
        for (col, v) in basis.columns.iter().enumerate() {
            for (row, &z) in v.0.iter().enumerate() {
                let (x, y) = coords.split(z);
                let at = |part| Var {
                    basis: b + 1,
                    col: col + 1,
                    row: row + 1,
                    part,
                };
                out.insert(at(Part::Re), x);
                out.insert(at(Part::Im), y);
            }
        }
    }
    Ok(out)
}

/// The integer `c` naming a prime-field non-residue, for system generation.
pub fn nonresidue_integer(ctx: &FieldCtx, c: Ff2) -> Option<i64> {
    (0..ctx.p() as i64).find(|&k| ctx.from_int(k) == c)
}

// ---------------------------------------------------------------------------
// Brute force at tiny size
// ---------------------------------------------------------------------------

/// Agreement between the system and the verifier over all assignments in
/// dimension 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteForceReport {
    pub q: u64,
    pub c: i64,
    /// Single bases: zeros of types I and II.
    pub system_bases: usize,
    /// Single bases accepted by the verifier among all 2×2 matrices.
    pub verifier_bases: usize,
    /// Ordered pairs of bases that zero the full `n = 2` system.
    pub system_pairs: usize,
    pub verifier_pairs: usize,
    /// Whether the accepted configurations coincide exactly.
    pub agree: bool,
}

/// Enumerates every coordinate assignment for one and two bases in
/// dimension 2 over a prime `q` whose smallest non-residue is an integer.
pub fn brute_force_d2(ctx: &Arc<FieldCtx>) -> Result<BruteForceReport> {
    let d = 2;
    let c_el = canonical_nonresidue(ctx)?;
    let c = nonresidue_integer(ctx, c_el).ok_or_else(|| Error::Unsupported("non-residue outside the prime field".into()))?;
    let coords = Coordinates::new(ctx, c_el)?;
    let q = ctx.q();
    let base: Vec<Ff2> = (0..ctx.base().q()).map(|r| ctx.from_base(r)).collect();
    let one_sys = generate_system(d, 1, c)?;
    let two_sys = generate_system(d, 2, c)?;

    // every 2x2 matrix as 8 coordinates in system variable order
    let total = (q as usize).pow(8);
    let decode = |mut k: usize| -> Vec<Ff2> {
        let mut v = vec![Ff2::ZERO; 8];
        for slot in v.iter_mut().rev() {
            *slot = base[k % q as usize];
            k /= q as usize;
        }
        v
    };
    let to_basis = |vals: &[Ff2]| -> UnitaryBasis {
        // order (col, row, part)
        let cols = (0..d)
            .map(|col| UVec((0..d).map(|row| coords.join(vals[4 * col + 2 * row], vals[4 * col + 2 * row + 1])).collect()))
            .collect();
        UnitaryBasis { columns: cols }
    };
    let one_set = |b: &UnitaryBasis| MubSet {
        d,
        ctx: ctx.clone(),
        bases: vec![b.clone()],
        extras: Vec::new(),
    };
    let mut by_system = Vec::new();
    let mut by_verifier = Vec::new();
    for k in 0..total {
        let vals = decode(k);
        let res: Vec<Ff2> = one_sys.polys.iter().map(|p| p.poly.eval(ctx.as_ref(), &vals)).collect();
        let b = to_basis(&vals);
        if all_zero(ctx.as_ref(), &res) {
            by_system.push(k);
        }
        if verify_mub_set(&one_set(&b)).pass {
            by_verifier.push(k);
        }
    }
    let mut agree = by_system == by_verifier;
    let mut system_pairs = 0;
    let mut verifier_pairs = 0;
    for &k1 in &by_system {
        for &k2 in &by_system {
            let mut vals = decode(k1);
            vals.extend(decode(k2));
            let res: Vec<Ff2> = two_sys.polys.iter().map(|p| p.poly.eval(ctx.as_ref(), &vals)).collect();
            let sys_ok = all_zero(ctx.as_ref(), &res);
            let set = MubSet {
                d,
                ctx: ctx.clone(),
                bases: vec![to_basis(&vals[..8]), to_basis(&vals[8..])],
                extras: Vec::new(),
            };
            let ver_ok = verify_mub_set(&set).pass;
            system_pairs += sys_ok as usize;
            verifier_pairs += ver_ok as usize;
            agree &= sys_ok == ver_ok;
        }
    }
    Ok(BruteForceReport {
        q,
        c,
        system_bases: by_system.len(),
        verifier_bases: by_verifier.len(),
        system_pairs,
        verifier_pairs,
        agree,
    })
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    pub d: usize,
    pub n: usize,
    pub c: i64,
    pub normalization: String,
    pub vars: Vec<String>,
    pub polys: Vec<PolyJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    #[serde(rename = "type")]
    pub kind: PolyType,
    /// Each term is `[coef, [var, exp], ...]`.
    pub terms: Vec<serde_json::Value>,
}

const NORMALIZATION: &str = "type I: d(x^2 - c y^2) - 1; type II: Hermitian product parts; type III: d^2 (A^2 - c B^2) - d";

impl PolySystem {
    pub fn to_json(&self) -> SystemJson {
        let names: Vec<String> = self.vars.iter().map(Var::name).collect();
        SystemJson {
            d: self.d,
            n: self.n,
            c: self.c,
            normalization: NORMALIZATION.into(),
            vars: names.clone(),
            polys: self
                .polys
                .iter()
                .map(|p| PolyJson {
                    kind: p.kind,
                    terms: p
                        .poly
                        .terms
                        .iter()
                        .map(|(m, &c)| {
                            let mut t = vec![serde_json::json!(c)];
                            t.extend(m.iter().map(|&(v, e)| serde_json::json!([names[v], e])));
                            serde_json::Value::Array(t)
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// One polynomial per line, prefixed by a comment header.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# d = {}, n = {}, c = {}", self.d, self.n, self.c);
        let _ = writeln!(out, "# {NORMALIZATION}");
        for p in &self.polys {
            out.push_str(&self.render(&p.poly));
            out.push('\n');
        }
        out
    }

    pub fn render(&self, p: &Poly) -> String {
        // highest degree first, then variable order
        let mut terms: Vec<(&Monomial, i64)> = p.terms.iter().map(|(m, &c)| (m, c)).collect();
        terms.sort_by_key(|(m, _)| std::cmp::Reverse(m.iter().map(|&(_, e)| e).sum::<u32>()));
        let mut s = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .map(|&(v, e)| {
                    let n = self.vars[v].name();
                    if e == 1 {
                        n
                    } else {
                        format!("{n}^{e}")
                    }
                })
                .collect();
            let mag = c.unsigned_abs();
            let body = match (mono.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => mono.join("*"),
                (false, _) => format!("{mag}*{}", mono.join("*")),
            };
            match (k, c < 0) {
                (0, true) => s.push_str(&format!("-{body}")),
                (0, false) => s.push_str(&body),
                (_, true) => s.push_str(&format!(" - {body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Exact residuals of a rational assignment.
pub fn evaluate_rational(sys: &PolySystem, assignment: &BTreeMap<Var, BigRational>) -> Result<Vec<BigRational>> {
    evaluate_system(sys, &Rationals, assignment)
}
