//! Finite fields F_q = F_{p^r} and their quadratic extensions F_{q^2}.
//!
//! Both levels use the lexicographically smallest monic irreducible modulus
//! (coefficients compared lowest degree first) and the generator of smallest
//! rank, so every table built here is reproducible from `(p, r)` alone.
//!
//! Elements of F_q are represented by their *rank*: the coefficient tuple
//! `(a_0, .., a_{r-1})` read as a base-`p` numeral with `a_0` most
//! significant. Comparing ranks is therefore comparing coefficient tuples
//! lowest degree first. An element `e_0 + e_1 a` of F_{q^2} has rank
//! `rank(e_0) * q + rank(e_1)`. All arithmetic in F_{q^2} goes through
//! discrete logarithms to the canonical generator and a Zech table.

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default upper bound on `q` for in-memory log tables.
pub const DEFAULT_MAX_Q: u64 = 1 << 13;

const NONE: u32 = u32::MAX;

// ---------------------------------------------------------------------------
// Polynomials over F_p (little-endian coefficient vectors)
// ---------------------------------------------------------------------------

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mod(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    poly_trim(&mut a);
    let dm = m.len() - 1;
    let lead_inv = crate::arith::inv_mod(m[dm] as i64, p as i64).expect("nonzero lead") as u64;
    while a.len() > dm {
        let top = a.len() - 1;
        let f = (a[top] as u64 * lead_inv % p as u64) as u32;
        if f != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = top - dm + i;
                a[idx] = ((a[idx] as u64 + (p - f) as u64 * mc as u64) % p as u64) as u32;
            }
        }
        poly_trim(&mut a);
    }
    a
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
    poly_mod(&out, m, p)
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0);
            let y = *b.get(i).unwrap_or(&0);
            (x + p - y) % p
        })
        .collect();
    poly_trim(&mut out);
    out
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_mod(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility over F_p: no common factor with `x^(p^i) - x` for `i <= deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=deg / 2 {
        // xp <- xp^p mod f
        let mut acc = vec![1];
        for _ in 0..p {
            acc = poly_mulmod(&acc, &xp, f, p);
        }
        xp = acc;
        let g = poly_gcd(f, &poly_sub(&xp, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn is_generator<T, M>(g: T, one: T, order: u64, mul: M) -> bool
where
    T: Copy + PartialEq,
    M: Fn(T, T) -> T,
{
    let pow = |mut b: T, mut e: u64| {
        let mut r = one;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    factorize(order)
        .iter()
        .all(|&(l, _)| pow(g, order / l) != one)
}

// ---------------------------------------------------------------------------
// F_q
// ---------------------------------------------------------------------------

/// The field F_{p^r}, elements addressed by rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeExtField {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PrimeExtField {
    pub fn new(p: u64, r: u32, max_q: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p.checked_pow(r).filter(|&q| q <= max_q).ok_or(Error::TableCap {
            q: p.saturating_pow(r),
            cap: max_q,
        })?;
        let (p, q) = (p as u32, q as u32);
        let modulus = smallest_irreducible(p, r);
        let mut field = PrimeExtField {
            p,
            r,
            q,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let one = field.one();
        let generator = (1..q)
            .find(|&g| is_generator(g, one, (q - 1) as u64, |a, b| field.mul_slow(a, b)))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![NONE; q as usize];
        let mut x = one;
        for k in 0..q - 1 {
            exp.push(x);
            log[x as usize] = k;
            x = field.mul_slow(x, generator);
        }
        field.generator = generator;
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Monic modulus, little-endian.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn zero(&self) -> u32 {
        0
    }
    pub fn one(&self) -> u32 {
        self.p.pow(self.r - 1)
    }

    /// Little-endian coefficients of an element.
    pub fn coeffs(&self, x: u32) -> Vec<u32> {
        let mut c = vec![0; self.r as usize];
        let mut v = x;
        for i in (0..self.r as usize).rev() {
            c[i] = v % self.p;
            v /= self.p;
        }
        c
    }

    pub fn from_coeffs(&self, c: &[u32]) -> u32 {
        (0..self.r as usize).fold(0, |acc, i| acc * self.p + c.get(i).copied().unwrap_or(0) % self.p)
    }

    pub fn from_int(&self, n: i64) -> u32 {
        let c = n.rem_euclid(self.p as i64) as u32;
        c * self.one()
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let prod = poly_mulmod(&self.coeffs(a), &self.coeffs(b), &self.modulus, self.p);
        self.from_coeffs(&prod)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.r == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.r {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.r == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.r {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let k = (self.log[a as usize] + self.log[b as usize]) % n;
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| {
            let n = self.q - 1;
            self.exp[((n - self.log[a as usize]) % n) as usize]
        })
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return self.one();
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn exp(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize] % 2 == 0
    }

    /// Absolute trace to F_p, as an integer in `0..p`.
    pub fn trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.r {
            acc = self.add(acc, x);
            x = self.pow(x, self.p as u64);
        }
        // the trace lies in the prime field: a constant polynomial
        acc / self.one()
    }
}

fn smallest_irreducible(p: u32, r: u32) -> Vec<u32> {
    let count = (p as u64).pow(r);
    for rank in 0..count {
        // digits of rank with the constant term most significant
        let mut c = vec![0u32; r as usize + 1];
        let mut v = rank;
        for i in (0..r as usize).rev() {
            c[i] = (v % p as u64) as u32;
            v /= p as u64;
        }
        c[r as usize] = 1;
        if is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

// ---------------------------------------------------------------------------
// F_{q^2}
// ---------------------------------------------------------------------------

/// An element of F_{q^2}, stored as a discrete log to the canonical generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Ff2(u32);

impl Ff2 {
    pub const ZERO: Ff2 = Ff2(NONE);
    pub const ONE: Ff2 = Ff2(0);

    pub fn is_zero(self) -> bool {
        self.0 == NONE
    }

    pub fn log(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }
}

/// Serializable description of a field tower, all coefficients little-endian.
///
/// `ext_modulus` lists the three F_q coefficients of the monic quadratic,
/// each as `r` prime-field digits; `gamma` lists the two F_q coordinates of
/// the generator the same way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub r: u32,
    pub base_modulus: Vec<u32>,
    pub ext_modulus: Vec<u32>,
    pub gamma: Vec<u32>,
}

/// The tower F_p ⊂ F_q ⊂ F_{q^2} with log/Zech tables for the top field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    base: PrimeExtField,
    /// `x^2 + c1 x + c0`, stored as `[c0, c1]`.
    ext: [u32; 2],
    order: u32,
    gamma: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

/// Builds F_{q^2} for `q = p^r` with the default table cap.
pub fn build_field(p: u64, r: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, r, DEFAULT_MAX_Q)
}

impl FieldCtx {
    pub fn new(p: u64, r: u32, max_q: u64) -> Result<Self> {
        let base = PrimeExtField::new(p, r, max_q)?;
        let q = base.q();
        let ext = smallest_irreducible_quadratic(&base);
        let order = q * q - 1;
        let mut ctx = FieldCtx {
            base,
            ext,
            order,
            gamma: 0,
            exp: Vec::new(),
            log: Vec::new(),
            zech: Vec::new(),
        };
        let one = ctx.pair_to_rank(ctx.base.one(), 0);
        let gamma = (1..q * q)
            .find(|&g| is_generator(g, one, order as u64, |a, b| ctx.mul_pairs(a, b)))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NONE; (q * q) as usize];
        let mut x = one;
        for k in 0..order {
            exp.push(x);
            log[x as usize] = k;
            x = ctx.mul_pairs(x, gamma);
        }
        let zech = (0..order)
            .map(|k| {
                let (e0, e1) = ctx.rank_to_pair(exp[k as usize]);
                let s = ctx.pair_to_rank(ctx.base.add(e0, ctx.base.one()), e1);
                log[s as usize]
            })
            .collect();
        ctx.gamma = gamma;
        ctx.exp = exp;
        ctx.log = log;
        ctx.zech = zech;
        Ok(ctx)
    }

    /// Rebuilds the canonical field for `spec.p, spec.r` and checks that it
    /// matches the serialized moduli and generator.
    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        let max_q = spec.p.saturating_pow(spec.r).max(DEFAULT_MAX_Q);
        let ctx = FieldCtx::new(spec.p, spec.r, max_q)?;
        if &ctx.spec() != spec {
            return Err(Error::Certificate(
                "field description does not match the canonical tower".into(),
            ));
        }
        Ok(ctx)
    }

    pub fn spec(&self) -> FieldSpec {
        let b = &self.base;
        let mut ext_modulus = b.coeffs(self.ext[0]);
        ext_modulus.extend(b.coeffs(self.ext[1]));
        ext_modulus.extend(b.coeffs(b.one()));
        FieldSpec {
            p: b.p() as u64,
            r: b.r(),
            base_modulus: b.modulus().to_vec(),
            ext_modulus,
            gamma: self.coeffs(self.gamma()),
        }
    }

    fn rank_to_pair(&self, x: u32) -> (u32, u32) {
        (x / self.base.q(), x % self.base.q())
    }

    fn pair_to_rank(&self, e0: u32, e1: u32) -> u32 {
        e0 * self.base.q() + e1
    }

    fn mul_pairs(&self, a: u32, b: u32) -> u32 {
        let f = &self.base;
        let (a0, a1) = self.rank_to_pair(a);
        let (b0, b1) = self.rank_to_pair(b);
        let hi = f.mul(a1, b1);
        let c0 = f.sub(f.mul(a0, b0), f.mul(self.ext[0], hi));
        let c1 = f.sub(f.add(f.mul(a0, b1), f.mul(a1, b0)), f.mul(self.ext[1], hi));
        self.pair_to_rank(c0, c1)
    }

    pub fn base(&self) -> &PrimeExtField {
        &self.base
    }
    pub fn p(&self) -> u64 {
        self.base.p() as u64
    }
    pub fn r(&self) -> u32 {
        self.base.r()
    }
    pub fn q(&self) -> u64 {
        self.base.q() as u64
    }
    /// `q^2 - 1`, the order of the multiplicative group.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn gamma(&self) -> Ff2 {
        Ff2(1 % self.order)
    }

    /// Generator `gamma^(q-1)` of the norm-one subgroup U.
    pub fn u(&self) -> Ff2 {
        Ff2((self.base.q() - 1) % self.order)
    }

    /// `u^c` for any integer exponent.
    pub fn u_pow(&self, c: i64) -> Ff2 {
        self.gamma_pow(c * (self.q() as i64 - 1))
    }

    pub fn gamma_pow(&self, k: i64) -> Ff2 {
        Ff2(k.rem_euclid(self.order as i64) as u32)
    }

    /// Elements of U in the order `u^0, u^1, .., u^q`.
    pub fn norm_one_subgroup(&self) -> impl Iterator<Item = Ff2> + '_ {
        (0..=self.q() as i64).map(move |c| self.u_pow(c))
    }

    pub fn rank(&self, x: Ff2) -> u32 {
        if x.is_zero() {
            0
        } else {
            self.exp[x.0 as usize]
        }
    }

    pub fn from_rank(&self, rank: u32) -> Ff2 {
        if rank == 0 {
            Ff2::ZERO
        } else {
            Ff2(self.log[rank as usize])
        }
    }

    /// All field elements in increasing rank.
    pub fn elements(&self) -> impl Iterator<Item = Ff2> + '_ {
        (0..self.order + 1).map(move |rank| self.from_rank(rank))
    }

    /// Little-endian prime-field coordinates: `r` digits of `e_0` then `r` of `e_1`.
    pub fn coeffs(&self, x: Ff2) -> Vec<u32> {
        let (e0, e1) = self.rank_to_pair(self.rank(x));
        let mut c = self.base.coeffs(e0);
        c.extend(self.base.coeffs(e1));
        c
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Ff2 {
        let r = self.base.r() as usize;
        let e0 = self.base.from_coeffs(&c[..r.min(c.len())]);
        let e1 = self.base.from_coeffs(c.get(r..).unwrap_or(&[]));
        self.from_rank(self.pair_to_rank(e0, e1))
    }

    /// Embeds an F_q element (given by rank).
    pub fn from_base(&self, a: u32) -> Ff2 {
        self.from_rank(self.pair_to_rank(a, 0))
    }

    /// Rank of `x` in F_q, or `None` if `x` is not in the base field.
    pub fn to_base(&self, x: Ff2) -> Option<u32> {
        let (e0, e1) = self.rank_to_pair(self.rank(x));
        (e1 == 0).then_some(e0)
    }

    pub fn in_base(&self, x: Ff2) -> bool {
        self.to_base(x).is_some()
    }

    pub fn from_int(&self, n: i64) -> Ff2 {
        self.from_base(self.base.from_int(n))
    }

    pub fn mul(&self, a: Ff2, b: Ff2) -> Ff2 {
        if a.is_zero() || b.is_zero() {
            return Ff2::ZERO;
        }
        let s = a.0 + b.0;
        Ff2(if s >= self.order { s - self.order } else { s })
    }

    pub fn inv(&self, a: Ff2) -> Option<Ff2> {
        a.log().map(|k| Ff2((self.order - k) % self.order))
    }

    pub fn div(&self, a: Ff2, b: Ff2) -> Option<Ff2> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Ff2, e: i64) -> Ff2 {
        if e == 0 {
            return Ff2::ONE;
        }
        match a.log() {
            None => Ff2::ZERO,
            Some(k) => {
                let n = self.order as i64;
                Ff2(((k as i64 * e.rem_euclid(n)) % n) as u32)
            }
        }
    }

    pub fn minus_one(&self) -> Ff2 {
        if self.p() == 2 {
            Ff2::ONE
        } else {
            Ff2(self.order / 2)
        }
    }

    pub fn neg(&self, a: Ff2) -> Ff2 {
        self.mul(a, self.minus_one())
    }

    pub fn add(&self, a: Ff2, b: Ff2) -> Ff2 {
        match (a.log(), b.log()) {
            (None, _) => b,
            (_, None) => a,
            (Some(x), Some(y)) => {
                let diff = if y >= x { y - x } else { y + self.order - x };
                let z = self.zech[diff as usize];
                if z == NONE {
                    Ff2::ZERO
                } else {
                    let s = x + z;
                    Ff2(if s >= self.order { s - self.order } else { s })
                }
            }
        }
    }

    pub fn sub(&self, a: Ff2, b: Ff2) -> Ff2 {
        self.add(a, self.neg(b))
    }

    pub fn sum<I: IntoIterator<Item = Ff2>>(&self, it: I) -> Ff2 {
        it.into_iter().fold(Ff2::ZERO, |acc, x| self.add(acc, x))
    }

    /// The Frobenius involution `x -> x^q`.
    pub fn frobenius(&self, x: Ff2) -> Ff2 {
        match x.log() {
            None => x,
            Some(k) => Ff2(((k as u64 * self.q()) % self.order as u64) as u32),
        }
    }

    /// Relative norm `x^(q+1)`, an element of F_q.
    pub fn norm(&self, x: Ff2) -> Ff2 {
        match x.log() {
            None => x,
            Some(k) => Ff2(((k as u64 * (self.q() + 1)) % self.order as u64) as u32),
        }
    }

    /// The element of smallest discrete log with norm `t`.
    pub fn solve_norm(&self, t: Ff2) -> Option<Ff2> {
        let k = t.log()?;
        let qp1 = self.base.q() + 1;
        (k % qp1 == 0).then(|| Ff2(k / qp1))
    }

    /// Square root of smallest discrete log, if one exists.
    pub fn sqrt(&self, x: Ff2) -> Option<Ff2> {
        match x.log() {
            None => Some(x),
            Some(k) if self.p() == 2 => {
                // squaring is a bijection; invert it on the exponent
                let half = crate::arith::inv_mod(2, self.order as i64).expect("odd order");
                Some(Ff2(((k as i64 * half) % self.order as i64) as u32))
            }
            Some(k) => (k % 2 == 0).then_some(Ff2(k / 2)),
        }
    }

    /// Both square roots of `x` ordered by rank (equal when `x = 0` or `p = 2`).
    pub fn sqrts_by_rank(&self, x: Ff2) -> Option<[Ff2; 2]> {
        let s = self.sqrt(x)?;
        let t = self.neg(s);
        Some(if self.rank(s) <= self.rank(t) { [s, t] } else { [t, s] })
    }

    /// `1/d` as an element of F_q, rejecting `p | d`.
    pub fn inv_dim(&self, d: usize) -> Result<Ff2> {
        self.inv(self.from_int(d as i64))
            .ok_or(Error::CharacteristicDividesDimension { d, p: self.p() })
    }

    /// The scale element: smallest discrete log with norm `1/d`.
    pub fn delta(&self, d: usize) -> Result<Ff2> {
        let t = self.inv_dim(d)?;
        Ok(self.solve_norm(t).expect("norm is surjective"))
    }

    /// Discrete log of `x` to the base `u`, for `x` in U.
    pub fn u_log(&self, x: Ff2) -> Option<u32> {
        let k = x.log()?;
        let qm1 = self.base.q() - 1;
        (k % qm1 == 0).then(|| k / qm1)
    }

    /// Validates a dimension against the characteristic, warning on the
    /// degenerate regimes that are still searchable.
    pub fn check_dimension(&self, d: usize) -> Result<()> {
        let p = self.p();
        if d < 1 {
            return Err(Error::DimensionMismatch(d, 1));
        }
        if d as u64 % p == 0 {
            return Err(Error::CharacteristicDividesDimension { d, p });
        }
        if p == 2 {
            log::warn!("characteristic 2: unbiasedness read literally as N(<x,y>) = 1/d");
        }
        if d as u64 >= p {
            log::warn!("d = {d} is not below the characteristic {p}");
        }
        Ok(())
    }
}

fn smallest_irreducible_quadratic(base: &PrimeExtField) -> [u32; 2] {
    let q = base.q();
    for c0 in 0..q {
        for c1 in 0..q {
            let has_root = (0..q).any(|x| {
                let v = base.add(base.add(base.mul(x, x), base.mul(c1, x)), c0);
                v == 0
            });
            if !has_root {
                return [c0, c1];
            }
        }
    }
    unreachable!("irreducible quadratics exist over every finite field")
}
