//! Unitary spaces over F_{q^2}: the Hermitian form, unit / orthogonality /
//! unbiasedness predicates, Hadamard checks and full MUB-set verification.
//!
//! The verifier is generic over [`HermitianField`] so the number-field
//! configuration and the finite-field searches are graded by the same code.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldSpec, Ff2};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A field with an involution, as needed by the Hermitian form.
pub trait HermitianField {
    type Elem: Clone + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn conj(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    fn norm(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.conj(a))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.from_int(-1))
    }
}

impl HermitianField for FieldCtx {
    type Elem = Ff2;

    fn zero(&self) -> Ff2 {
        Ff2::ZERO
    }
    fn from_int(&self, n: i64) -> Ff2 {
        FieldCtx::from_int(self, n)
    }
    fn add(&self, a: &Ff2, b: &Ff2) -> Ff2 {
        FieldCtx::add(self, *a, *b)
    }
    fn mul(&self, a: &Ff2, b: &Ff2) -> Ff2 {
        FieldCtx::mul(self, *a, *b)
    }
    fn conj(&self, a: &Ff2) -> Ff2 {
        self.frobenius(*a)
    }
    fn inv(&self, a: &Ff2) -> Option<Ff2> {
        FieldCtx::inv(self, *a)
    }
    fn render(&self, a: &Ff2) -> String {
        match a.log() {
            None => "0".into(),
            Some(k) => format!("gamma^{k}"),
        }
    }
    fn norm(&self, a: &Ff2) -> Ff2 {
        FieldCtx::norm(self, *a)
    }
}

/// `Σ_j conj(x_j) y_j`.
pub fn inner<F: HermitianField>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
    x.iter()
        .zip(y)
        .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(&f.conj(a), b)))
}

/// A vector of the unitary space F_{q^2}^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UVec(pub Vec<Ff2>);

impl UVec {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// The standard basis vector `e_j` (zero-based).
    pub fn unit(d: usize, j: usize) -> Self {
        let mut v = vec![Ff2::ZERO; d];
        v[j] = Ff2::ONE;
        UVec(v)
    }

    /// Expands the compact form `(c_2, .., c_d)` to `(δ, δu^{c_2}, .., δu^{c_d})`.
    pub fn from_exponents(ctx: &FieldCtx, delta: Ff2, exps: &[u32]) -> Self {
        let mut v = Vec::with_capacity(exps.len() + 1);
        v.push(delta);
        v.extend(exps.iter().map(|&c| ctx.mul(delta, ctx.u_pow(c as i64))));
        UVec(v)
    }

    /// Recovers the compact form when the first entry is `δ` and every entry lies in `δU`.
    pub fn exponents(&self, ctx: &FieldCtx, delta: Ff2) -> Option<Vec<u32>> {
        if self.0.first() != Some(&delta) {
            return None;
        }
        self.0[1..]
            .iter()
            .map(|&x| ctx.div(x, delta).and_then(|r| ctx.u_log(r)))
            .collect()
    }
}

/// Hermitian inner product; errors on a dimension mismatch.
pub fn herm_inner(ctx: &FieldCtx, x: &UVec, y: &UVec) -> Result<Ff2> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    Ok(inner(ctx, &x.0, &y.0))
}

pub fn is_unit(ctx: &FieldCtx, x: &UVec) -> bool {
    inner(ctx, &x.0, &x.0) == Ff2::ONE
}

/// Whether two unit vectors are mutually unbiased, i.e. `N(<x,y>) = 1/d`.
pub fn is_mu(ctx: &FieldCtx, d: usize, x: &UVec, y: &UVec) -> Result<bool> {
    if x.dim() != d || y.dim() != d {
        return Err(Error::DimensionMismatch(x.dim().min(y.dim()), d));
    }
    if !is_unit(ctx, x) || !is_unit(ctx, y) {
        return Err(Error::NonUnitVector);
    }
    let target = ctx.inv_dim(d)?;
    Ok(ctx.norm(herm_inner(ctx, x, y)?) == target)
}

/// An orthonormal basis, stored by columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitaryBasis {
    pub columns: Vec<UVec>,
}

impl UnitaryBasis {
    pub fn identity(d: usize) -> Self {
        UnitaryBasis {
            columns: (0..d).map(|j| UVec::unit(d, j)).collect(),
        }
    }

    /// Builds a basis from a row-major matrix.
    pub fn from_rows(rows: &[Vec<Ff2>]) -> Self {
        let d = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        UnitaryBasis {
            columns: (0..n)
                .map(|j| UVec((0..d).map(|i| rows[i][j]).collect()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.columns.first().map_or(0, UVec::dim)
    }

    fn as_cols(&self) -> Vec<Vec<Ff2>> {
        self.columns.iter().map(|c| c.0.clone()).collect()
    }

    pub fn is_unitary(&self, ctx: &FieldCtx) -> bool {
        let cols = self.as_cols();
        cols.iter().enumerate().all(|(i, x)| {
            cols.iter().enumerate().all(|(j, y)| {
                inner(ctx, x, y) == if i == j { Ff2::ONE } else { Ff2::ZERO }
            })
        })
    }
}

/// True iff `b` is unitary with every entry of norm `1/d`.
pub fn is_hadamard(ctx: &FieldCtx, d: usize, b: &UnitaryBasis) -> bool {
    let Ok(target) = ctx.inv_dim(d) else {
        return false;
    };
    b.columns.len() == d
        && b.columns.iter().all(|c| c.dim() == d)
        && b.columns
            .iter()
            .all(|c| c.0.iter().all(|&x| ctx.norm(x) == target))
        && b.is_unitary(ctx)
}

/// A set of pairwise unbiased bases; the computational basis is implicit.
#[derive(Debug, Clone)]
pub struct MubSet {
    pub d: usize,
    pub ctx: Arc<FieldCtx>,
    pub bases: Vec<UnitaryBasis>,
    pub extras: Vec<UVec>,
}

impl PartialEq for MubSet {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
            && (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.spec() == other.ctx.spec())
            && self.bases == other.bases
            && self.extras == other.extras
    }
}

impl MubSet {
    pub fn new(ctx: Arc<FieldCtx>, d: usize) -> Self {
        MubSet {
            d,
            ctx,
            bases: Vec::new(),
            extras: Vec::new(),
        }
    }

    /// Number of bases including the computational basis.
    pub fn num_bases(&self) -> usize {
        self.bases.len() + 1
    }

    /// Applies a row permutation (`new[i] = old[perm[i]]`) to every vector.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let map = |v: &UVec| UVec(perm.iter().map(|&i| v.0[i]).collect());
        self.map_vectors(map)
    }

    /// Left-multiplies every vector by the same diagonal matrix.
    pub fn scale_rows(&self, diag: &[Ff2]) -> Self {
        let ctx = self.ctx.clone();
        self.map_vectors(|v| UVec(v.0.iter().zip(diag).map(|(&x, &s)| ctx.mul(x, s)).collect()))
    }

    /// Right-multiplies one basis by a permutation (`new col j = old col perm[j]`).
    pub fn permute_columns(&self, basis: usize, perm: &[usize]) -> Self {
        let mut out = self.clone();
        out.bases[basis].columns = perm.iter().map(|&j| self.bases[basis].columns[j].clone()).collect();
        out
    }

    /// Right-multiplies one basis by a diagonal matrix.
    pub fn scale_columns(&self, basis: usize, diag: &[Ff2]) -> Self {
        let mut out = self.clone();
        for (col, &s) in out.bases[basis].columns.iter_mut().zip(diag) {
            col.0.iter_mut().for_each(|x| *x = self.ctx.mul(*x, s));
        }
        out
    }

    /// Applies a field automorphism `x -> x^(p^i)` entrywise.
    pub fn frobenius_power(&self, i: u32) -> Self {
        let e = (self.ctx.p()).pow(i) as i64;
        let ctx = self.ctx.clone();
        self.map_vectors(|v| UVec(v.0.iter().map(|&x| ctx.pow(x, e)).collect()))
    }

    fn map_vectors<M: Fn(&UVec) -> UVec>(&self, m: M) -> Self {
        MubSet {
            d: self.d,
            ctx: self.ctx.clone(),
            bases: self
                .bases
                .iter()
                .map(|b| UnitaryBasis {
                    columns: b.columns.iter().map(&m).collect(),
                })
                .collect(),
            extras: self.extras.iter().map(&m).collect(),
        }
    }

    pub fn to_certificate(&self) -> Result<Certificate> {
        let delta = self.ctx.delta(self.d)?;
        let enc = |v: &UVec| v.0.iter().map(|x| x.log()).collect::<Vec<_>>();
        Ok(Certificate {
            field: self.ctx.spec(),
            d: self.d,
            delta_dlog: delta.log().expect("delta is a unit"),
            bases: self
                .bases
                .iter()
                .map(|b| b.columns.iter().map(enc).collect())
                .collect(),
            extras: self.extras.iter().map(enc).collect(),
        })
    }

    pub fn from_certificate(cert: &Certificate) -> Result<Self> {
        let ctx = Arc::new(FieldCtx::from_spec(&cert.field)?);
        Self::from_certificate_in(ctx, cert)
    }

    /// Decodes a certificate against an already-built field.
    pub fn from_certificate_in(ctx: Arc<FieldCtx>, cert: &Certificate) -> Result<Self> {
        if ctx.spec() != cert.field {
            return Err(Error::FieldMismatch);
        }
        let delta = ctx.delta(cert.d)?;
        if delta.log() != Some(cert.delta_dlog) {
            return Err(Error::Certificate(format!(
                "delta_dlog {} is not the canonical scale element",
                cert.delta_dlog
            )));
        }
        let order = ctx.order();
        let dec = |v: &Vec<Option<u32>>| -> Result<UVec> {
            if v.len() != cert.d {
                return Err(Error::DimensionMismatch(v.len(), cert.d));
            }
            v.iter()
                .map(|e| match e {
                    None => Ok(Ff2::ZERO),
                    Some(k) if *k < order => Ok(ctx.gamma_pow(*k as i64)),
                    Some(k) => Err(Error::Certificate(format!("discrete log {k} out of range"))),
                })
                .collect::<Result<Vec<_>>>()
                .map(UVec)
        };
        let bases = cert
            .bases
            .iter()
            .map(|b| {
                b.iter()
                    .map(&dec)
                    .collect::<Result<Vec<_>>>()
                    .map(|columns| UnitaryBasis { columns })
            })
            .collect::<Result<Vec<_>>>()?;
        let extras = cert.extras.iter().map(&dec).collect::<Result<Vec<_>>>()?;
        Ok(MubSet {
            d: cert.d,
            ctx,
            bases,
            extras,
        })
    }
}

/// JSON form of a [`MubSet`]. Each basis is a list of columns; entries are
/// discrete logs to the field generator, `null` for zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub field: FieldSpec,
    pub d: usize,
    pub delta_dlog: u32,
    pub bases: Vec<Vec<Vec<Option<u32>>>>,
    pub extras: Vec<Vec<Option<u32>>>,
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Dimension,
    Unit,
    Orthogonal,
    EntryNorm,
    Unbiased,
    ExtraUnit,
    ExtraOrthogonal,
    ExtraUnbiased,
}

/// Position of a vector: basis 0 is the computational basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Loc {
    Basis { basis: usize, column: usize },
    Extra { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: Check,
    pub left: Loc,
    pub right: Loc,
    /// The offending inner product (or entry).
    pub value: String,
    /// Its norm, where the check is about norms.
    pub norm: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub d: usize,
    /// Bases verified, the computational basis included.
    pub num_bases: usize,
    pub num_extras: usize,
    pub checks: BTreeMap<Check, usize>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn count(&self, check: Check) -> usize {
        self.checks.get(&check).copied().unwrap_or(0)
    }

    pub fn failures(&self, check: Check) -> usize {
        self.violations.iter().filter(|v| v.check == check).count()
    }
}

struct Recorder<'a, F: HermitianField> {
    f: &'a F,
    checks: BTreeMap<Check, usize>,
    violations: Vec<Violation>,
}

impl<F: HermitianField> Recorder<'_, F> {
    fn check(&mut self, check: Check, left: Loc, right: Loc, value: &F::Elem, expect: &F::Elem, by_norm: bool) {
        *self.checks.entry(check).or_default() += 1;
        let observed = if by_norm { self.f.norm(value) } else { value.clone() };
        if &observed != expect {
            self.violations.push(Violation {
                check,
                left,
                right,
                value: self.f.render(value),
                norm: by_norm.then(|| self.f.render(&observed)),
            });
        }
    }
}

/// Verifies bases (given by columns) and extra vectors over any Hermitian field.
///
/// The computational basis is implicit: unbiasedness against it is the
/// entry-norm condition.
pub fn verify_columns<F: HermitianField>(
    f: &F,
    d: usize,
    bases: &[Vec<Vec<F::Elem>>],
    extras: &[Vec<F::Elem>],
) -> VerificationReport {
    let mut rec = Recorder {
        f,
        checks: BTreeMap::new(),
        violations: Vec::new(),
    };
    let one = f.from_int(1);
    let zero = f.zero();
    let basis_loc = |basis: usize, column: usize| Loc::Basis { basis, column };
    let Some(target) = f.inv(&f.from_int(d as i64)) else {
        rec.checks.insert(Check::Dimension, 1);
        rec.violations.push(Violation {
            check: Check::Dimension,
            left: basis_loc(0, 0),
            right: basis_loc(0, 0),
            value: format!("d = {d} is not invertible"),
            norm: None,
        });
        return finish(rec, d, bases.len() + 1, extras.len());
    };

    let shape_ok = bases.iter().all(|b| b.len() == d && b.iter().all(|c| c.len() == d))
        && extras.iter().all(|v| v.len() == d);
    *rec.checks.entry(Check::Dimension).or_default() += 1;
    if !shape_ok {
        rec.violations.push(Violation {
            check: Check::Dimension,
            left: basis_loc(0, 0),
            right: basis_loc(0, 0),
            value: "bases must be d columns of length d".into(),
            norm: None,
        });
        return finish(rec, d, bases.len() + 1, extras.len());
    }

    for (k, b) in bases.iter().enumerate() {
        let k = k + 1;
        for (i, x) in b.iter().enumerate() {
            for (row, entry) in x.iter().enumerate() {
                rec.check(Check::EntryNorm, basis_loc(0, row), basis_loc(k, i), entry, &target, true);
            }
            rec.check(Check::Unit, basis_loc(k, i), basis_loc(k, i), &inner(f, x, x), &one, false);
            for (j, y) in b.iter().enumerate().skip(i + 1) {
                rec.check(Check::Orthogonal, basis_loc(k, i), basis_loc(k, j), &inner(f, x, y), &zero, false);
            }
        }
    }
    for (ka, a) in bases.iter().enumerate() {
        for (kb, b) in bases.iter().enumerate().skip(ka + 1) {
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    let ip = inner(f, x, y);
                    rec.check(Check::Unbiased, basis_loc(ka + 1, i), basis_loc(kb + 1, j), &ip, &target, true);
                }
            }
        }
    }
    for (e, v) in extras.iter().enumerate() {
        let here = Loc::Extra { index: e };
        rec.check(Check::ExtraUnit, here, here, &inner(f, v, v), &one, false);
        for (e2, w) in extras.iter().enumerate().skip(e + 1) {
            rec.check(Check::ExtraOrthogonal, here, Loc::Extra { index: e2 }, &inner(f, v, w), &zero, false);
        }
        for (row, entry) in v.iter().enumerate() {
            rec.check(Check::ExtraUnbiased, basis_loc(0, row), here, entry, &target, true);
        }
        for (k, b) in bases.iter().enumerate() {
            for (i, x) in b.iter().enumerate() {
                rec.check(Check::ExtraUnbiased, basis_loc(k + 1, i), here, &inner(f, x, v), &target, true);
            }
        }
    }
    finish(rec, d, bases.len() + 1, extras.len())
}

fn finish<F: HermitianField>(rec: Recorder<'_, F>, d: usize, num_bases: usize, num_extras: usize) -> VerificationReport {
    VerificationReport {
        pass: rec.violations.is_empty(),
        d,
        num_bases,
        num_extras,
        checks: rec.checks,
        violations: rec.violations,
    }
}

/// Checks every condition of a MUB set, reporting each violated pair.
pub fn verify_mub_set(set: &MubSet) -> VerificationReport {
    let bases: Vec<Vec<Vec<Ff2>>> = set.bases.iter().map(UnitaryBasis::as_cols).collect();
    let extras: Vec<Vec<Ff2>> = set.extras.iter().map(|v| v.0.clone()).collect();
    verify_columns(set.ctx.as_ref(), set.d, &bases, &extras)
}

// ---------------------------------------------------------------------------
// Trace-form pairing of shifted projectors
// ---------------------------------------------------------------------------

/// `Tr((π_b - I/d)^† (π_c - I/d))` with `π_v = v v^†`, evaluated from the
/// d×d matrices directly.
pub fn shifted_projector_pairing(ctx: &FieldCtx, d: usize, b: &UVec, c: &UVec) -> Result<Ff2> {
    let inv_d = ctx.inv_dim(d)?;
    let shifted = |v: &UVec| -> Vec<Vec<Ff2>> {
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let e = ctx.mul(v.0[i], ctx.frobenius(v.0[j]));
                        if i == j {
                            ctx.sub(e, inv_d)
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let a = shifted(b);
    let m = shifted(c);
    let mut tr = Ff2::ZERO;
    for i in 0..d {
        for j in 0..d {
            // (A^†)_{ji} M_{ij} summed over both indices
            tr = ctx.add(tr, ctx.mul(ctx.frobenius(a[i][j]), m[i][j]));
        }
    }
    Ok(tr)
}

/// True iff every cross pairing between `b` and `c` vanishes and the
/// pairings inside each basis between distinct projectors equal `-1/d`.
pub fn trace_pairing_check(ctx: &FieldCtx, d: usize, b: &UnitaryBasis, c: &UnitaryBasis) -> bool {
    let Ok(inv_d) = ctx.inv_dim(d) else {
        return false;
    };
    let minus = ctx.neg(inv_d);
    let pair = |x: &UVec, y: &UVec| shifted_projector_pairing(ctx, d, x, y).ok();
    let within = |basis: &UnitaryBasis| {
        basis.columns.iter().enumerate().all(|(i, x)| {
            basis.columns.iter().enumerate().all(|(j, y)| i == j || pair(x, y) == Some(minus))
        })
    };
    let cross = b
        .columns
        .iter()
        .all(|x| c.columns.iter().all(|y| pair(x, y) == Some(Ff2::ZERO)));
    cross && within(b) && within(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    fn all_delta(ctx: &FieldCtx, d: usize) -> UVec {
        UVec(vec![ctx.delta(d).unwrap(); d])
    }

    #[test]
    fn inner_product_examples() {
        let ctx = build_field(7, 1).unwrap();
        let e1 = UVec::unit(6, 0);
        let e2 = UVec::unit(6, 1);
        assert_eq!(herm_inner(&ctx, &e1, &e1).unwrap(), Ff2::ONE);
        assert_eq!(herm_inner(&ctx, &e1, &e2).unwrap(), Ff2::ZERO);
        // six diagonal terms, each N(δ) = 1/6
        let x = all_delta(&ctx, 6);
        assert_eq!(herm_inner(&ctx, &x, &x).unwrap(), Ff2::ONE);
        assert!(herm_inner(&ctx, &e1, &UVec::unit(5, 0)).is_err());
    }

    #[test]
    fn unbiasedness_examples() {
        let ctx = build_field(7, 1).unwrap();
        let e1 = UVec::unit(6, 0);
        assert!(is_mu(&ctx, 6, &e1, &all_delta(&ctx, 6)).unwrap());
        assert!(!is_mu(&ctx, 6, &e1, &e1).unwrap());
        // 6 = 1 in F_5, so every unit vector is unbiased to itself
        let f5 = build_field(5, 1).unwrap();
        assert!(is_mu(&f5, 6, &e1, &e1).unwrap());
        let not_unit = UVec(vec![Ff2::ONE; 6]);
        assert!(matches!(is_mu(&ctx, 6, &e1, &not_unit), Err(Error::NonUnitVector)));
    }

    #[test]
    fn identity_is_not_hadamard() {
        let ctx = build_field(7, 1).unwrap();
        for d in 2..6 {
            assert!(!is_hadamard(&ctx, d, &UnitaryBasis::identity(d)));
        }
    }

    #[test]
    fn computational_basis_only() {
        let ctx = Arc::new(build_field(5, 1).unwrap());
        let r = verify_mub_set(&MubSet::new(ctx, 3));
        assert!(r.pass);
        assert_eq!(r.num_bases, 1);
    }

    #[test]
    fn compact_form_round_trip() {
        let ctx = build_field(11, 1).unwrap();
        let delta = ctx.delta(4).unwrap();
        let v = UVec::from_exponents(&ctx, delta, &[3, 0, 11]);
        assert!(is_unit(&ctx, &v));
        assert_eq!(v.exponents(&ctx, delta), Some(vec![3, 0, 11]));
        assert_eq!(UVec::unit(4, 0).exponents(&ctx, delta), None);
    }

    #[test]
    fn identity_pairings() {
        let ctx = build_field(7, 1).unwrap();
        let d = 3;
        let minus = ctx.neg(ctx.inv_dim(d).unwrap());
        let p = shifted_projector_pairing(&ctx, d, &UVec::unit(d, 0), &UVec::unit(d, 2)).unwrap();
        assert_eq!(p, minus);
        let id = UnitaryBasis::identity(d);
        assert!(!trace_pairing_check(&ctx, d, &id, &id));
    }

    #[test]
    fn certificate_rejects_wrong_delta() {
        let ctx = Arc::new(build_field(7, 1).unwrap());
        let mut cert = MubSet::new(ctx, 3).to_certificate().unwrap();
        cert.delta_dlog += 1;
        assert!(MubSet::from_certificate(&cert).is_err());
    }
}
