//! Known MUB constructions over F_{q^2}: Wootters–Fields sets for prime
//! power dimensions, tensor products, admissible fields for composite
//! dimensions, and a pair of fixture matrices at q = 71.

use crate::arith::{factorize, gcd, prime_power};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Ff2, PrimeExtField};
use crate::hermitian::{herm_inner, is_hadamard, MubSet, UVec, UnitaryBasis};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Parameters of a Wootters–Fields set in dimension `l^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WfParams {
    pub l: u64,
    pub k: u32,
}

impl WfParams {
    pub fn dim(&self) -> usize {
        self.l.pow(self.k) as usize
    }

    /// Checks the congruence on `q` that makes the construction reduce.
    pub fn check(&self, ctx: &FieldCtx) -> Result<()> {
        let (l, k, q) = (self.l, self.k, ctx.q());
        if !crate::arith::is_prime(l) || k == 0 {
            return Err(Error::Inadmissible(format!("l = {l}, k = {k} is not a prime power")));
        }
        if l == 2 && k >= 3 {
            return Err(Error::Unsupported(format!("dimension 2^{k} is out of scope")));
        }
        if ctx.p() == l {
            return Err(Error::CharacteristicDividesDimension { d: self.dim(), p: l });
        }
        let ok = if l == 2 {
            q % 4 == 3
        } else {
            (q + 1) % l.pow(k) == 0
        };
        if ok {
            Ok(())
        } else if l == 2 {
            Err(Error::Inadmissible(format!("q = {q} is not 3 mod 4")))
        } else {
            Err(Error::Inadmissible(format!("q = {q} is not -1 mod {}", l.pow(k))))
        }
    }
}

/// The element of minimal discrete log with norm `-1`. In characteristic 2
/// `-1 = 1` and the result is 1.
pub fn find_norm_minus_one(ctx: &FieldCtx) -> Ff2 {
    let target = ctx.minus_one();
    (0..ctx.order() as i64)
        .map(|k| ctx.gamma_pow(k))
        .find(|&x| ctx.norm(x) == target)
        .expect("the norm is onto F_q^*")
}

/// Scale factor `1/√d`, twisted by [`find_norm_minus_one`] when `√d ∉ F_q`.
/// Returns the factor and whether the twist was applied.
pub fn wf_scale(ctx: &FieldCtx, d: usize) -> Result<(Ff2, bool)> {
    let root = ctx
        .sqrt(ctx.from_int(d as i64))
        .ok_or_else(|| Error::Inadmissible(format!("no square root of {d}")))?;
    let inv = ctx.inv(root).ok_or(Error::CharacteristicDividesDimension { d, p: ctx.p() })?;
    if ctx.in_base(root) {
        Ok((inv, false))
    } else {
        Ok((ctx.mul(inv, find_norm_minus_one(ctx)), true))
    }
}

/// Row-major exponents of `i` for the four non-computational bases in dimension 4.
const D4_EXPONENTS: [[[u8; 4]; 4]; 4] = [
    [[0, 0, 0, 0], [0, 0, 2, 2], [0, 2, 0, 2], [0, 2, 2, 0]],
    [[0, 0, 0, 0], [0, 0, 2, 2], [1, 3, 1, 3], [3, 1, 1, 3]],
    [[0, 0, 0, 0], [1, 1, 3, 3], [0, 2, 0, 2], [3, 1, 1, 3]],
    [[0, 0, 0, 0], [1, 1, 3, 3], [1, 3, 1, 3], [2, 0, 0, 2]],
];

/// The complete set of `d + 1` bases in dimension `d = l^k`.
pub fn wf_mubs(ctx: &Arc<FieldCtx>, params: WfParams) -> Result<MubSet> {
    params.check(ctx)?;
    let d = params.dim();
    let (scale, _) = wf_scale(ctx, d)?;
    let mut set = MubSet::new(ctx.clone(), d);
    if params.l == 2 {
        // i = u^((q+1)/4) has order 4 and lies outside F_q
        let i = ctx.u_pow((ctx.q() as i64 + 1) / 4);
        let rows_of = |exps: &[[u8; 4]]| -> Vec<Vec<Ff2>> {
            exps.iter()
                .map(|r| r.iter().map(|&e| ctx.mul(scale, ctx.pow(i, e as i64))).collect())
                .collect()
        };
        if d == 2 {
            // eigenbases of X and XZ
            for e in [[[0, 0], [0, 2]], [[0, 0], [1, 3]]] {
                let rows: Vec<[u8; 4]> = e.iter().map(|r| [r[0], r[1], 0, 0]).collect();
                let rows: Vec<Vec<Ff2>> = rows_of(&rows).into_iter().map(|r| r[..2].to_vec()).collect();
                set.bases.push(UnitaryBasis::from_rows(&rows));
            }
        } else {
            for b in &D4_EXPONENTS {
                set.bases.push(UnitaryBasis::from_rows(&rows_of(b)));
            }
        }
        return Ok(set);
    }
    let small = PrimeExtField::new(params.l, params.k, u64::MAX)?;
    let zeta = ctx.u_pow(((ctx.q() + 1) / params.l) as i64);
    let elems: Vec<u32> = (0..d as u32).collect();
    for &m in &elems {
        let columns = elems
            .iter()
            .map(|&t| {
                UVec(
                    elems
                        .iter()
                        .map(|&j| {
                            let arg = small.add(small.mul(m, small.mul(j, j)), small.mul(t, j));
                            ctx.mul(scale, ctx.pow(zeta, small.trace(arg) as i64))
                        })
                        .collect(),
                )
            })
            .collect();
        set.bases.push(UnitaryBasis { columns });
    }
    Ok(set)
}

fn kron(ctx: &FieldCtx, a: &UVec, b: &UVec) -> UVec {
    UVec(a.0.iter().flat_map(|&x| b.0.iter().map(move |&y| ctx.mul(x, y))).collect())
}

/// Pairs the i-th bases of `a` and `b` by Kronecker product, keeping as many
/// bases as the smaller set has.
pub fn tensor_mubs(a: &MubSet, b: &MubSet) -> Result<MubSet> {
    if !Arc::ptr_eq(&a.ctx, &b.ctx) && a.ctx.spec() != b.ctx.spec() {
        return Err(Error::FieldMismatch);
    }
    let ctx = &a.ctx;
    let mut out = MubSet::new(ctx.clone(), a.d * b.d);
    for (x, y) in a.bases.iter().zip(&b.bases) {
        let columns = x
            .columns
            .iter()
            .flat_map(|c| y.columns.iter().map(move |e| kron(ctx, c, e)))
            .collect();
        out.bases.push(UnitaryBasis { columns });
    }
    Ok(out)
}

/// A field order meeting the congruence for every prime-power factor of `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleQ {
    pub p: u64,
    pub r: u32,
    pub q: u64,
    /// `(modulus, residue)` pairs satisfied by `q`.
    pub congruences: Vec<(u64, u64)>,
}

/// The congruences `q ≡ -1 mod l^k` (`q ≡ 3 mod 4` for the 2-part) for the
/// prime-power factors of `d`, or `None` when a 2-part exceeds 4.
pub fn admissible_congruences(d: u64) -> Option<Vec<(u64, u64)>> {
    factorize(d)
        .into_iter()
        .map(|(l, k)| match (l, k) {
            (2, 1 | 2) => Some((4, 3)),
            (2, _) => None,
            _ => {
                let n = l.pow(k);
                Some((n, n - 1))
            }
        })
        .collect()
}

/// Prime powers `q <= bound` for which every factor of `d` has a reduced
/// complete set; ascending.
pub fn admissible_q(d: u64, bound: u64) -> Vec<AdmissibleQ> {
    let Some(congruences) = admissible_congruences(d) else {
        return Vec::new();
    };
    (2..=bound)
        .filter(|&q| congruences.iter().all(|&(n, a)| q % n == a) && gcd(q, d) == 1)
        .filter_map(|q| {
            prime_power(q).map(|(p, r)| AdmissibleQ {
                p,
                r,
                q,
                congruences: congruences.clone(),
            })
        })
        .collect()
}

/// Field order for the q = 71 fixtures.
pub const FIXTURE_Q: u64 = 71;

/// H₁, rows of exponents of `u` (scaled by `δ`).
pub const H1_EXPONENTS: [[u32; 6]; 6] = [
    [0, 0, 0, 0, 0, 0],
    [54, 54, 6, 30, 30, 6],
    [71, 35, 27, 63, 27, 63],
    [54, 54, 30, 6, 6, 30],
    [35, 71, 39, 51, 15, 3],
    [35, 71, 15, 3, 39, 51],
];

/// D(0), rows of exponents of `u` (scaled by `δ`).
pub const D0_EXPONENTS: [[u32; 6]; 6] = [
    [0, 0, 0, 0, 0, 0],
    [0, 36, 18, 54, 54, 18],
    [0, 18, 36, 18, 54, 54],
    [0, 54, 18, 36, 18, 54],
    [0, 54, 54, 18, 36, 18],
    [0, 18, 54, 54, 18, 36],
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub exponents: Vec<Vec<u32>>,
}

impl Fixture {
    /// The matrix `δ (w^{e_ij})` for a chosen generator `w` of U.
    pub fn basis(&self, ctx: &FieldCtx, delta: Ff2, w: Ff2) -> UnitaryBasis {
        let rows: Vec<Vec<Ff2>> = self
            .exponents
            .iter()
            .map(|r| r.iter().map(|&e| ctx.mul(delta, ctx.pow(w, e as i64))).collect())
            .collect();
        UnitaryBasis::from_rows(&rows)
    }
}

/// Findings for one choice of the norm-one generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCandidate {
    /// The generator is `u^k` for the canonical `u`.
    pub k: u32,
    pub h1_hadamard: bool,
    pub d0_hadamard: bool,
    /// Column pairs `(H₁ col, D(0) col)` whose inner product has norm `1/6`.
    pub mu_pairs: usize,
    pub mutually_unbiased: bool,
}

#[derive(Debug, Clone)]
pub struct FixtureSet {
    pub ctx: Arc<FieldCtx>,
    pub h1: Fixture,
    pub d0: Fixture,
    /// Exponents `k` with `u^k` a generator of U, ascending.
    pub candidates: Vec<u32>,
}

pub fn fixture_dardo71() -> Result<FixtureSet> {
    let ctx = Arc::new(crate::gf::build_field(FIXTURE_Q, 1)?);
    let m = FIXTURE_Q as u32 + 1;
    let fixture = |name: &str, e: &[[u32; 6]; 6]| Fixture {
        name: name.into(),
        exponents: e.iter().map(|r| r.iter().map(|&x| x % m).collect()).collect(),
    };
    Ok(FixtureSet {
        ctx,
        h1: fixture("H1", &H1_EXPONENTS),
        d0: fixture("D0", &D0_EXPONENTS),
        candidates: (1..m).filter(|&k| gcd(k as u64, m as u64) == 1).collect(),
    })
}

impl FixtureSet {
    pub fn evaluate(&self, k: u32) -> Result<FixtureCandidate> {
        let ctx = &self.ctx;
        let d = 6;
        let delta = ctx.delta(d)?;
        let w = ctx.u_pow(k as i64);
        let h1 = self.h1.basis(ctx, delta, w);
        let d0 = self.d0.basis(ctx, delta, w);
        let target = ctx.inv_dim(d)?;
        let mut mu_pairs = 0;
        for x in &h1.columns {
            for y in &d0.columns {
                if ctx.norm(herm_inner(ctx, x, y)?) == target {
                    mu_pairs += 1;
                }
            }
        }
        Ok(FixtureCandidate {
            k,
            h1_hadamard: is_hadamard(ctx, d, &h1),
            d0_hadamard: is_hadamard(ctx, d, &d0),
            mu_pairs,
            mutually_unbiased: mu_pairs == d * d,
        })
    }

    /// Findings for all candidates, in ascending order of `k`.
    pub fn report(&self) -> Result<Vec<FixtureCandidate>> {
        self.candidates.iter().map(|&k| self.evaluate(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;
    use crate::hermitian::verify_mub_set;

    fn field(q: u64) -> Arc<FieldCtx> {
        let (p, r) = prime_power(q).unwrap();
        Arc::new(build_field(p, r).unwrap())
    }

    #[test]
    fn norm_minus_one() {
        for q in [3u64, 5, 7, 9, 11, 25] {
            let ctx = field(q);
            let nu = find_norm_minus_one(&ctx);
            assert_eq!(ctx.norm(nu), ctx.minus_one());
            assert_eq!(nu.log(), Some((q as u32 - 1) / 2));
        }
        assert_eq!(find_norm_minus_one(&field(4)), Ff2::ONE);
    }

    #[test]
    fn wf_small_sets_verify() {
        for (l, k, q) in [(2, 1, 3), (2, 1, 7), (2, 2, 3), (2, 2, 7), (3, 1, 5), (3, 1, 11), (5, 1, 19)] {
            let set = wf_mubs(&field(q), WfParams { l, k }).unwrap();
            assert_eq!(set.num_bases(), l.pow(k) as usize + 1);
            assert!(verify_mub_set(&set).pass, "l={l} k={k} q={q}");
        }
    }

    #[test]
    fn wf_rejects_inadmissible() {
        assert!(wf_mubs(&field(7), WfParams { l: 3, k: 1 }).is_err());
        assert!(wf_mubs(&field(5), WfParams { l: 2, k: 1 }).is_err());
        assert!(matches!(
            wf_mubs(&field(7), WfParams { l: 2, k: 3 }),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn admissible_examples() {
        let six = admissible_q(6, 100);
        assert!(six.iter().any(|a| a.q == 11));
        assert!(six.iter().all(|a| a.q % 12 == 11));
        assert!(admissible_q(6, 10).is_empty());
        assert!(admissible_q(15, 100).iter().all(|a| a.q % 15 == 14));
        assert!(admissible_q(8, 100).is_empty());
    }

    #[test]
    fn fixtures_have_entries_in_delta_u() {
        let fx = fixture_dardo71().unwrap();
        assert_eq!(fx.candidates.len(), 24);
        let ctx = &fx.ctx;
        let delta = ctx.delta(6).unwrap();
        let b = fx.h1.basis(ctx, delta, ctx.u());
        let sixth = ctx.inv_dim(6).unwrap();
        assert!(b.columns.iter().flat_map(|c| &c.0).all(|&x| ctx.norm(x) == sixth));
    }
}
