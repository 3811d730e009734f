//! Exhaustive computation of `M_d(F_{q^2})` and `ν_d(F_{q^2})`.
//!
//! Every basis other than the computational one has all entries in the
//! coset `δU`, so after fixing the first entry of each vector to `δ` a
//! candidate vector is an exponent tuple `(c_2, .., c_d)` over the cyclic
//! group U of order `m = q + 1`. For two candidates `x`, `y`
//!
//! ```text
//!     <x, y> = N(δ) · S(y - x),    S(t) = 1 + Σ_j u^{t_j}
//! ```
//!
//! so orthogonality and unbiasedness depend only on the difference tuple.
//! [`RatioClassTable`] stores the class of every tuple and turns each
//! pairwise test into one lookup.
//!
//! The search quotients by the row permutations and the simultaneous
//! norm-one row scalings, which together act on tuples as `S_d` and
//! translations. The first non-computational basis always contains the
//! all-`δ` vector (the zero tuple); only one representative of each orbit
//! of such bases is explored.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, Ff2};
use crate::hermitian::{MubSet, UVec, UnitaryBasis};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};
use std::time::Instant;

/// Largest dimension the search engine handles.
pub const MAX_SEARCH_DIM: usize = 9;
/// Default memory budget for a packed ratio table.
pub const DEFAULT_TABLE_CAP_BYTES: u64 = 2 << 30;

/// Exponent tuple, full form: entry `i` is the exponent of row `i`.
/// Compact tuples keep rows `1..d` only and are stored in `0..d-1`.
pub type Tuple = [u8; MAX_SEARCH_DIM];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Class {
    Orth,
    Mu,
    Other,
}

impl Class {
    fn from_bits(b: u8) -> Class {
        match b {
            0 => Class::Orth,
            1 => Class::Mu,
            _ => Class::Other,
        }
    }
    fn bits(self) -> u8 {
        match self {
            Class::Orth => 0,
            Class::Mu => 1,
            Class::Other => 2,
        }
    }
}

/// The group `(Z/m)^(d-1)` of compact tuples, indexed with the first
/// coordinate most significant so that index order is lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleSpace {
    pub d: usize,
    pub m: u32,
    pub len: usize,
}

impl TupleSpace {
    pub fn new(d: usize, m: u32) -> Self {
        let len = (m as usize).pow(d as u32 - 1);
        TupleSpace { d, m, len }
    }

    fn k(&self) -> usize {
        self.d - 1
    }

    pub fn index(&self, t: &Tuple) -> usize {
        t[..self.k()].iter().fold(0, |acc, &c| acc * self.m as usize + c as usize)
    }

    pub fn tuple(&self, mut idx: usize) -> Tuple {
        let mut t = [0u8; MAX_SEARCH_DIM];
        for j in (0..self.k()).rev() {
            t[j] = (idx % self.m as usize) as u8;
            idx /= self.m as usize;
        }
        t
    }

    /// Index of `b - a`.
    #[inline]
    pub fn diff_index(&self, a: &Tuple, b: &Tuple) -> usize {
        let m = self.m as usize;
        let mut idx = 0;
        for j in 0..self.k() {
            let x = b[j] as usize + m - a[j] as usize;
            idx = idx * m + if x >= m { x - m } else { x };
        }
        idx
    }
}

enum Storage {
    Packed(Vec<u8>),
    Direct { ctx: Arc<FieldCtx>, upow: Vec<Ff2>, target: Ff2 },
}

/// Class (orthogonal / unbiased / other) of every difference tuple.
pub struct RatioClassTable {
    pub space: TupleSpace,
    pub q: u64,
    storage: Storage,
}

impl std::fmt::Debug for RatioClassTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RatioClassTable")
            .field("d", &self.space.d)
            .field("q", &self.q)
            .field("packed", &self.is_packed())
            .finish()
    }
}

fn check_search_params(ctx: &FieldCtx, d: usize) -> Result<()> {
    ctx.check_dimension(d)?;
    if !(2..=MAX_SEARCH_DIM).contains(&d) {
        return Err(Error::Unsupported(format!("search dimension {d} outside 2..={MAX_SEARCH_DIM}")));
    }
    if ctx.q() + 1 > 256 {
        return Err(Error::Unsupported(format!("q = {} too large for byte exponents", ctx.q())));
    }
    Ok(())
}

/// Packed bytes needed for the table of `(d, q)`.
pub fn table_bytes(d: usize, q: u64) -> u64 {
    (q + 1).saturating_pow(d as u32 - 1).div_ceil(4)
}

/// Builds the packed table with the default memory cap.
pub fn build_ratio_table(ctx: &Arc<FieldCtx>, d: usize) -> Result<RatioClassTable> {
    build_ratio_table_with_cap(ctx, d, DEFAULT_TABLE_CAP_BYTES)
}

pub fn build_ratio_table_with_cap(ctx: &Arc<FieldCtx>, d: usize, cap_bytes: u64) -> Result<RatioClassTable> {
    check_search_params(ctx, d)?;
    let bytes = table_bytes(d, ctx.q());
    if bytes > cap_bytes {
        return Err(Error::MemoryCap {
            d,
            q: ctx.q(),
            bytes,
            cap: cap_bytes,
        });
    }
    let space = TupleSpace::new(d, ctx.q() as u32 + 1);
    let upow: Vec<Ff2> = ctx.norm_one_subgroup().collect();
    let target = ctx.from_int(d as i64);
    let mut packed = vec![0u8; space.len.div_ceil(4)];
    // depth-first over digits with running partial sums, emitting indices in order
    let k = space.k();
    let mut partial = vec![Ff2::ONE; k + 1];
    let mut digits = vec![0u32; k];
    let mut idx = 0usize;
    let mut changed = 0;
    loop {
        for j in changed..k {
            partial[j + 1] = ctx.add(partial[j], upow[digits[j] as usize]);
        }
        let class = classify(ctx, partial[k], target);
        packed[idx / 4] |= class.bits() << (2 * (idx % 4));
        idx += 1;
        // odometer increment, least significant digit last
        let mut j = k;
        loop {
            if j == 0 {
                return Ok(RatioClassTable {
                    space,
                    q: ctx.q(),
                    storage: Storage::Packed(packed),
                });
            }
            j -= 1;
            digits[j] += 1;
            if digits[j] < space.m {
                changed = j;
                break;
            }
            digits[j] = 0;
        }
    }
}

fn classify(ctx: &FieldCtx, s: Ff2, target: Ff2) -> Class {
    if s.is_zero() {
        Class::Orth
    } else if ctx.norm(s) == target {
        Class::Mu
    } else {
        Class::Other
    }
}

impl RatioClassTable {
    /// Classifier that evaluates `S` on demand from precomputed powers of `u`.
    pub fn direct(ctx: &Arc<FieldCtx>, d: usize) -> Result<Self> {
        check_search_params(ctx, d)?;
        Ok(RatioClassTable {
            space: TupleSpace::new(d, ctx.q() as u32 + 1),
            q: ctx.q(),
            storage: Storage::Direct {
                ctx: ctx.clone(),
                upow: ctx.norm_one_subgroup().collect(),
                target: ctx.from_int(d as i64),
            },
        })
    }

    pub fn is_packed(&self) -> bool {
        matches!(self.storage, Storage::Packed(_))
    }

    #[inline]
    pub fn class(&self, idx: usize) -> Class {
        match &self.storage {
            Storage::Packed(v) => Class::from_bits((v[idx / 4] >> (2 * (idx % 4))) & 3),
            Storage::Direct { ctx, upow, target } => {
                let t = self.space.tuple(idx);
                let s = t[..self.space.k()]
                    .iter()
                    .fold(Ff2::ONE, |acc, &c| ctx.add(acc, upow[c as usize]));
                classify(ctx, s, *target)
            }
        }
    }

    #[inline]
    pub fn relation(&self, a: &Tuple, b: &Tuple) -> Class {
        self.class(self.space.diff_index(a, b))
    }

    pub fn orth(&self, a: &Tuple, b: &Tuple) -> bool {
        self.relation(a, b) == Class::Orth
    }

    pub fn mu(&self, a: &Tuple, b: &Tuple) -> bool {
        self.relation(a, b) == Class::Mu
    }

    pub fn count(&self, class: Class) -> usize {
        (0..self.space.len).filter(|&i| self.class(i) == class).count()
    }

    /// All tuples of the given class, in lexicographic order.
    pub fn members(&self, class: Class) -> Vec<Tuple> {
        (0..self.space.len)
            .filter(|&i| self.class(i) == class)
            .map(|i| self.space.tuple(i))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Cliques
// ---------------------------------------------------------------------------

/// Calls `f` on every `size`-clique of `verts` (indices increasing) whose
/// first vertex is at position `>= start`. Stops early when `f` returns false.
fn for_each_clique<A, F>(n: usize, size: usize, start: usize, adj: &A, f: &mut F) -> bool
where
    A: Fn(usize, usize) -> bool,
    F: FnMut(&[usize]) -> bool,
{
    fn rec<A, F>(cands: &[usize], chosen: &mut Vec<usize>, size: usize, adj: &A, f: &mut F) -> bool
    where
        A: Fn(usize, usize) -> bool,
        F: FnMut(&[usize]) -> bool,
    {
        if chosen.len() == size {
            return f(chosen);
        }
        let need = size - chosen.len();
        for (pos, &v) in cands.iter().enumerate() {
            if cands.len() - pos < need {
                break;
            }
            let next: Vec<usize> = cands[pos + 1..].iter().copied().filter(|&w| adj(v, w)).collect();
            if next.len() + 1 < need {
                continue;
            }
            chosen.push(v);
            let go_on = rec(&next, chosen, size, adj, f);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    let all: Vec<usize> = (start..n).collect();
    rec(&all, &mut Vec::with_capacity(size), size, adj, f)
}

/// Size and (lexicographically first) members of a maximum clique.
fn max_clique<A: Fn(usize, usize) -> bool>(n: usize, adj: &A, cap: usize) -> Vec<usize> {
    fn rec<A: Fn(usize, usize) -> bool>(cands: &[usize], chosen: &mut Vec<usize>, best: &mut Vec<usize>, adj: &A, cap: usize) {
        if chosen.len() > best.len() {
            *best = chosen.clone();
        }
        if best.len() >= cap {
            return;
        }
        for (pos, &v) in cands.iter().enumerate() {
            if chosen.len() + cands.len() - pos <= best.len() {
                return;
            }
            let next: Vec<usize> = cands[pos + 1..].iter().copied().filter(|&w| adj(v, w)).collect();
            chosen.push(v);
            rec(&next, chosen, best, adj, cap);
            chosen.pop();
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let mut best = Vec::new();
    rec(&all, &mut Vec::new(), &mut best, adj, cap);
    best
}

// ---------------------------------------------------------------------------
// Symmetry group and canonical forms
// ---------------------------------------------------------------------------

/// Row permutations and optional field automorphisms acting on exponent tuples.
#[derive(Debug, Clone)]
pub struct Symmetries {
    d: usize,
    m: u32,
    perms: Vec<[u8; MAX_SEARCH_DIM]>,
    mults: Vec<u32>,
    /// `sub[a * m + b] = a - b mod m`
    sub: Vec<u8>,
    /// `mul[a * m + b] = a * b mod m`
    mul: Vec<u8>,
}

impl Symmetries {
    /// `galois` adds `x -> x^(p^i)`, which multiplies exponents by `p^i`.
    pub fn new(ctx: &FieldCtx, d: usize, galois: bool) -> Self {
        let m = ctx.q() as u32 + 1;
        let mut mults = vec![1u32];
        if galois {
            let mut e = 1u64;
            for _ in 1..2 * ctx.r() {
                e = e * ctx.p() % m as u64;
                if !mults.contains(&(e as u32)) {
                    mults.push(e as u32);
                }
            }
        }
        let mut perms = Vec::new();
        let mut cur: Vec<u8> = (0..d as u8).collect();
        permutations(&mut cur, 0, &mut perms);
        perms.sort();
        let mu = m as usize;
        let sub = (0..mu * mu).map(|i| ((i / mu + mu - i % mu) % mu) as u8).collect();
        let mul = (0..mu * mu).map(|i| ((i / mu) * (i % mu) % mu) as u8).collect();
        Symmetries {
            d,
            m,
            perms,
            mults,
            sub,
            mul,
        }
    }

    /// Maps a full tuple `f` under: translate by `-origin`, permute rows,
    /// multiply exponents, renormalise the first row to zero. Returns the
    /// compact tuple.
    #[inline]
    fn apply(&self, f: &Tuple, origin: &Tuple, perm: &[u8; MAX_SEARCH_DIM], mult: u32) -> Tuple {
        let m = self.m as usize;
        let mrow = mult as usize;
        let mut x = [0u8; MAX_SEARCH_DIM];
        for i in 0..self.d {
            let r = perm[i] as usize;
            let diff = self.sub[f[r] as usize * m + origin[r] as usize] as usize;
            x[i] = self.mul[diff * m + mrow];
        }
        let mut out = [0u8; MAX_SEARCH_DIM];
        let x0 = x[0] as usize;
        for j in 1..self.d {
            out[j - 1] = self.sub[x[j] as usize * m + x0];
        }
        out
    }

    /// Image of a compact tuple set, normalised.
    fn image_set(&self, set: &TupleSet, origin: &Tuple, perm: &[u8; MAX_SEARCH_DIM], mult: u32) -> TupleSet {
        let d = self.d;
        let map = |t: &Tuple| self.apply(&full(t, d), origin, perm, mult);
        TupleSet {
            bases: set.bases.iter().map(|b| b.iter().map(map).collect()).collect(),
            extras: set.extras.iter().map(map).collect(),
        }
        .normalise()
    }
}

fn permutations(cur: &mut Vec<u8>, k: usize, out: &mut Vec<[u8; MAX_SEARCH_DIM]>) {
    if k == cur.len() {
        let mut a = [0u8; MAX_SEARCH_DIM];
        a[..cur.len()].copy_from_slice(cur);
        out.push(a);
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

fn full(t: &Tuple, d: usize) -> Tuple {
    let mut f = [0u8; MAX_SEARCH_DIM];
    f[1..d].copy_from_slice(&t[..d - 1]);
    f
}

/// A set of bases in compact tuple form; sorted within bases, bases sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TupleSet {
    pub bases: Vec<Vec<Tuple>>,
    pub extras: Vec<Tuple>,
}

impl TupleSet {
    fn normalise(mut self) -> Self {
        for b in &mut self.bases {
            b.sort_unstable();
        }
        self.bases.sort_unstable();
        self.extras.sort_unstable();
        self
    }
}

/// Least image of one basis over its origins and the group, with every
/// transform attaining it.
struct BasisCanon {
    /// Packed, sorted; only the first `d` slots are used.
    form: [u64; MAX_SEARCH_DIM],
    transforms: Vec<(Tuple, u16, u32)>,
}

/// Canonical forms with a per-basis memo, shareable across threads.
pub struct Canonicalizer<'a> {
    sym: &'a Symmetries,
    cache: Mutex<HashMap<Vec<Tuple>, Arc<BasisCanon>>>,
}

impl<'a> Canonicalizer<'a> {
    pub fn new(sym: &'a Symmetries) -> Self {
        Canonicalizer {
            sym,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn basis(&self, fulls: &[Tuple]) -> Arc<BasisCanon> {
        let mut key = fulls.to_vec();
        key.sort_unstable();
        if let Some(c) = self.cache.lock().expect("cache lock").get(&key) {
            return c.clone();
        }
        let sym = self.sym;
        let d = sym.d;
        let mut form = [u64::MAX; MAX_SEARCH_DIM];
        let mut transforms = Vec::new();
        let mut img = [0u64; MAX_SEARCH_DIM];
        for origin in &key {
            for (pi, perm) in sym.perms.iter().enumerate() {
                for &mult in &sym.mults {
                    for (slot, f) in img.iter_mut().zip(&key) {
                        *slot = pack(&sym.apply(f, origin, perm, mult));
                    }
                    img[..d].sort_unstable();
                    let t = (*origin, pi as u16, mult);
                    match img[..d].cmp(&form[..d]) {
                        std::cmp::Ordering::Equal => transforms.push(t),
                        std::cmp::Ordering::Greater => {}
                        std::cmp::Ordering::Less => {
                            form[..d].copy_from_slice(&img[..d]);
                            transforms.clear();
                            transforms.push(t);
                        }
                    }
                }
            }
        }
        let c = Arc::new(BasisCanon { form, transforms });
        self.cache.lock().expect("cache lock").insert(key, c.clone());
        c
    }

    /// Lexicographically least image of `set` under the symmetry group.
    ///
    /// Orders are: vectors within a basis, then bases, then extras. Every
    /// image considered places some basis vector at the all-`δ` position,
    /// so the basis holding it sorts first.
    pub fn canonical(&self, set: &TupleSet) -> TupleSet {
        let sym = self.sym;
        let d = sym.d;
        let fulls: Vec<Vec<Tuple>> = set.bases.iter().map(|b| b.iter().map(|t| full(t, d)).collect()).collect();
        let extra_full: Vec<Tuple> = set.extras.iter().map(|t| full(t, d)).collect();
        let mut transforms: Vec<(Tuple, u16, u32)> = Vec::new();
        if fulls.is_empty() {
            for origin in &extra_full {
                for pi in 0..sym.perms.len() {
                    transforms.extend(sym.mults.iter().map(|&m| (*origin, pi as u16, m)));
                }
            }
        } else {
            let canons: Vec<Arc<BasisCanon>> = fulls.iter().map(|b| self.basis(b)).collect();
            let least = canons.iter().map(|c| &c.form).min().expect("nonempty");
            for c in canons.iter().filter(|c| &c.form == least) {
                transforms.extend_from_slice(&c.transforms);
            }
        }
        if transforms.is_empty() {
            return set.clone();
        }
        // images as packed keys; equal-length bases make flat comparison lexicographic
        let nb = fulls.len();
        let mut bases = vec![[0u64; MAX_SEARCH_DIM]; nb];
        let mut extras = vec![0u64; extra_full.len()];
        let mut best: Option<(Vec<[u64; MAX_SEARCH_DIM]>, Vec<u64>)> = None;
        for &(origin, pi, mult) in &transforms {
            let perm = &sym.perms[pi as usize];
            for (img, b) in bases.iter_mut().zip(&fulls) {
                for (slot, f) in img.iter_mut().zip(b) {
                    *slot = pack(&sym.apply(f, &origin, perm, mult));
                }
                img[..d].sort_unstable();
            }
            bases.sort_unstable();
            for (slot, f) in extras.iter_mut().zip(&extra_full) {
                *slot = pack(&sym.apply(f, &origin, perm, mult));
            }
            extras.sort_unstable();
            let better = match &best {
                None => true,
                Some((bb, be)) => (bases.as_slice(), extras.as_slice()) < (bb.as_slice(), be.as_slice()),
            };
            if better {
                best = Some((bases.clone(), extras.clone()));
            }
        }
        let (bb, be) = best.expect("nonempty");
        TupleSet {
            bases: bb.iter().map(|b| b[..d].iter().map(|&k| unpack(k)).collect()).collect(),
            extras: be.iter().map(|&k| unpack(k)).collect(),
        }
    }
}

/// Big-endian packing, so integer order is tuple order.
#[inline]
fn pack(t: &Tuple) -> u64 {
    t[..8].iter().fold(0u64, |acc, &c| (acc << 8) | c as u64)
}

fn unpack(k: u64) -> Tuple {
    let mut t = [0u8; MAX_SEARCH_DIM];
    for (j, slot) in t[..8].iter_mut().enumerate() {
        *slot = (k >> (8 * (7 - j))) as u8;
    }
    t
}

/// Lexicographically least image of `set` under the symmetry group.
pub fn canonical_tuples(sym: &Symmetries, set: &TupleSet) -> TupleSet {
    Canonicalizer::new(sym).canonical(set)
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Also quotient by the Galois group of F_{q^2}/F_p.
    pub galois_quotient: bool,
    pub table_cap_bytes: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: None,
            galois_quotient: false,
            table_cap_bytes: DEFAULT_TABLE_CAP_BYTES,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Bases through the all-δ vector.
    pub first_bases: u64,
    /// Orbit representatives among them.
    pub representatives: u64,
    /// Search-tree nodes (partial sets of bases).
    pub nodes: u64,
    /// Nodes whose candidate pool was too small for another basis.
    pub prunes: u64,
    pub seconds: f64,
}

/// Maximal sets found by [`compute_m`], as canonical tuple sets.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxSets {
    /// Number of bases including the computational one.
    pub m: usize,
    pub sets: Vec<TupleSet>,
    pub stats: SearchStats,
}

/// All bases through the zero tuple, as sorted lists of their other d-1 vectors.
fn bases_through_origin(table: &RatioClassTable) -> Vec<Vec<Tuple>> {
    let d = table.space.d;
    let orth = table.members(Class::Orth);
    let mut out = Vec::new();
    let adj = |i: usize, j: usize| table.orth(&orth[i], &orth[j]);
    for_each_clique(orth.len(), d - 1, 0, &adj, &mut |c| {
        out.push(c.iter().map(|&i| orth[i]).collect());
        true
    });
    out
}

/// One representative (the lexicographically least) per orbit of bases
/// through the origin.
fn first_basis_representatives(table: &RatioClassTable, sym: &Symmetries) -> (u64, Vec<Vec<Tuple>>) {
    let d = table.space.d;
    let all = bases_through_origin(table);
    let total = all.len() as u64;
    let mut seen: HashSet<Vec<Tuple>> = HashSet::new();
    let mut reps = Vec::new();
    for rest in all {
        if seen.contains(&rest) {
            continue;
        }
        let mut basis: Vec<Tuple> = vec![[0u8; MAX_SEARCH_DIM]];
        basis.extend(rest.iter().copied());
        let fulls: Vec<Tuple> = basis.iter().map(|t| full(t, d)).collect();
        for origin in &fulls {
            for perm in &sym.perms {
                for &mult in &sym.mults {
                    let mut img: Vec<Tuple> = fulls.iter().map(|f| sym.apply(f, origin, perm, mult)).collect();
                    img.sort_unstable();
                    debug_assert_eq!(img[0], [0u8; MAX_SEARCH_DIM]);
                    img.remove(0);
                    seen.insert(img);
                }
            }
        }
        reps.push(basis);
    }
    (total, reps)
}

struct Worker<'a> {
    table: &'a RatioClassTable,
    d: usize,
    best: usize,
    found: Vec<Vec<Vec<Tuple>>>,
    nodes: u64,
    prunes: u64,
}

impl Worker<'_> {
    fn record(&mut self, bases: &[Vec<Tuple>]) {
        let size = bases.len() + 1;
        if size > self.best {
            self.best = size;
            self.found.clear();
        }
        if size == self.best {
            self.found.push(bases.to_vec());
        }
    }

    fn extend(&mut self, bases: &mut Vec<Vec<Tuple>>, cand: &[Tuple]) {
        self.nodes += 1;
        let d = self.d;
        if cand.len() >= d {
            // bases after the first are ordered by their least vector
            let start = match bases.len() {
                0 | 1 => 0,
                _ => {
                    let last = bases.last().expect("nonempty")[0];
                    cand.partition_point(|t| *t <= last)
                }
            };
            let table = self.table;
            let adj = |i: usize, j: usize| table.orth(&cand[i], &cand[j]);
            let mut cliques = Vec::new();
            for_each_clique(cand.len(), d, start, &adj, &mut |c| {
                cliques.push(c.to_vec());
                true
            });
            for c in cliques {
                let basis: Vec<Tuple> = c.iter().map(|&i| cand[i]).collect();
                let next: Vec<Tuple> = cand
                    .iter()
                    .filter(|x| basis.iter().all(|b| table.mu(b, x)))
                    .copied()
                    .collect();
                bases.push(basis);
                self.extend(bases, &next);
                bases.pop();
            }
        } else {
            self.prunes += 1;
        }
        self.record(bases);
    }
}

/// Candidates unbiased to every vector of `vectors`, in lexicographic order.
fn unbiased_candidates<'a, I>(table: &RatioClassTable, vectors: I) -> Vec<Tuple>
where
    I: IntoIterator<Item = &'a Tuple> + Clone,
{
    let first = *vectors.clone().into_iter().next().expect("at least one vector");
    let sp = table.space;
    let mut out: Vec<Tuple> = (0..sp.len)
        .filter(|&i| table.class(i) == Class::Mu)
        .map(|i| {
            // x = first + t
            let t = sp.tuple(i);
            let mut x = [0u8; MAX_SEARCH_DIM];
            for j in 0..sp.d - 1 {
                x[j] = ((t[j] as u32 + first[j] as u32) % sp.m) as u8;
            }
            x
        })
        .filter(|x| vectors.clone().into_iter().all(|v| table.mu(v, x)))
        .collect();
    out.sort_unstable();
    out
}

/// Maximum number of pairwise unbiased bases (the computational basis
/// included) and every inequivalent set attaining it.
pub fn compute_m(ctx: &Arc<FieldCtx>, table: &RatioClassTable, opts: &SearchOptions) -> Result<MaxSets> {
    let start = Instant::now();
    let d = table.space.d;
    let sym = Symmetries::new(ctx, d, opts.galois_quotient);
    let (first_bases, reps) = first_basis_representatives(table, &sym);
    log::info!("d={d} q={}: {first_bases} first bases, {} representatives", ctx.q(), reps.len());

    let canonizer = Canonicalizer::new(&sym);
    let run_rep = |rep: &Vec<Tuple>| -> (usize, Vec<TupleSet>, u64, u64) {
        let mut w = Worker {
            table,
            d,
            best: 0,
            found: Vec::new(),
            nodes: 0,
            prunes: 0,
        };
        let cand = unbiased_candidates(table, rep.iter());
        let mut bases = vec![rep.clone()];
        w.extend(&mut bases, &cand);
        log::debug!("representative: {} candidates, {} nodes, {} maximal sets of size {}", cand.len(), w.nodes, w.found.len(), w.best);
        // a set is canonicalised only from the representative of its least
        // basis orbit, and once per orbit of the representative's stabiliser
        let own = canonizer.basis(&rep.iter().map(|t| full(t, d)).collect::<Vec<_>>());
        let mut seen: HashSet<TupleSet> = HashSet::new();
        let mut canon: Vec<TupleSet> = Vec::new();
        for b in &w.found {
            let set = TupleSet {
                bases: b.clone(),
                extras: Vec::new(),
            }
            .normalise();
            if seen.contains(&set) {
                continue;
            }
            for (origin, pi, mult) in &own.transforms {
                seen.insert(sym.image_set(&set, origin, &sym.perms[*pi as usize], *mult));
            }
            let least = b[1..].iter().all(|basis| {
                let f: Vec<Tuple> = basis.iter().map(|t| full(t, d)).collect();
                canonizer.basis(&f).form >= own.form
            });
            if least {
                canon.push(canonizer.canonical(&set));
            }
        }
        canon.sort_unstable();
        canon.dedup();
        (w.best, canon, w.nodes, w.prunes)
    };

    let results: Vec<(usize, Vec<TupleSet>, u64, u64)> = match opts.threads {
        Some(1) => reps.iter().map(run_rep).collect(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Unsupported(e.to_string()))?
            .install(|| reps.par_iter().map(run_rep).collect()),
        None => reps.par_iter().map(run_rep).collect(),
    };

    let mut stats = SearchStats {
        first_bases,
        representatives: reps.len() as u64,
        ..Default::default()
    };
    let m = results.iter().map(|r| r.0).max().unwrap_or(1).max(1);
    let mut sets: BTreeMap<TupleSet, ()> = BTreeMap::new();
    for (best, found, nodes, prunes) in results {
        stats.nodes += nodes;
        stats.prunes += prunes;
        if best == m {
            for s in found {
                sets.insert(s, ());
            }
        }
    }
    if m == 1 {
        sets.insert(
            TupleSet {
                bases: Vec::new(),
                extras: Vec::new(),
            },
            (),
        );
    }
    stats.seconds = start.elapsed().as_secs_f64();
    Ok(MaxSets {
        m,
        sets: sets.into_keys().collect(),
        stats,
    })
}

/// Largest orthonormal set unbiased to every basis of `set`, in the
/// coordinates of `set` (lexicographically first among the largest).
pub fn best_extras(table: &RatioClassTable, set: &TupleSet) -> Vec<Tuple> {
    let d = table.space.d;
    let vectors: Vec<&Tuple> = set.bases.iter().flatten().collect();
    if vectors.is_empty() {
        return Vec::new();
    }
    let cand = unbiased_candidates(table, vectors.iter().copied());
    let adj = |i: usize, j: usize| table.orth(&cand[i], &cand[j]);
    max_clique(cand.len(), &adj, d).into_iter().map(|i| cand[i]).collect()
}

/// `ν`: the largest orthonormal set unbiased to all bases of some maximal
/// set. Defined as 0 when no basis besides the computational one exists.
pub fn compute_nu(table: &RatioClassTable, sets: &[TupleSet]) -> (usize, Vec<TupleSet>) {
    let with: Vec<TupleSet> = sets
        .iter()
        .map(|s| TupleSet {
            bases: s.bases.clone(),
            extras: best_extras(table, s),
        })
        .collect();
    let nu = with.iter().map(|s| s.extras.len()).max().unwrap_or(0);
    (nu, with)
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub d: usize,
    pub q: u64,
    pub m: usize,
    pub nu: usize,
    pub witnesses: Vec<MubSet>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReportJson {
    pub d: usize,
    pub q: u64,
    #[serde(rename = "M")]
    pub m: usize,
    pub nu: usize,
    pub witnesses: Vec<crate::hermitian::Certificate>,
    pub stats: SearchStats,
}

impl SearchReport {
    pub fn to_json(&self) -> Result<SearchReportJson> {
        Ok(SearchReportJson {
            d: self.d,
            q: self.q,
            m: self.m,
            nu: self.nu,
            witnesses: self.witnesses.iter().map(MubSet::to_certificate).collect::<Result<_>>()?,
            stats: self.stats.clone(),
        })
    }
}

/// Converts a tuple set into field vectors.
pub fn tuples_to_mubset(ctx: &Arc<FieldCtx>, d: usize, set: &TupleSet) -> Result<MubSet> {
    let delta = ctx.delta(d)?;
    let vec_of = |t: &Tuple| {
        let exps: Vec<u32> = t[..d - 1].iter().map(|&c| c as u32).collect();
        UVec::from_exponents(ctx, delta, &exps)
    };
    Ok(MubSet {
        d,
        ctx: ctx.clone(),
        bases: set
            .bases
            .iter()
            .map(|b| UnitaryBasis {
                columns: b.iter().map(vec_of).collect(),
            })
            .collect(),
        extras: set.extras.iter().map(vec_of).collect(),
    })
}

/// Reads a set back into tuples after scaling each vector so its first
/// entry is `δ`. Fails if some entry is outside `δU`.
pub fn mubset_to_tuples(set: &MubSet) -> Result<TupleSet> {
    let ctx = &set.ctx;
    let d = set.d;
    if !(2..=MAX_SEARCH_DIM).contains(&d) || ctx.q() + 1 > 256 {
        return Err(Error::Unsupported("set outside the tuple encoding range".into()));
    }
    let delta = ctx.delta(d)?;
    let enc = |v: &UVec| -> Result<Tuple> {
        if v.dim() != d {
            return Err(Error::DimensionMismatch(v.dim(), d));
        }
        let lead = ctx
            .div(v.0[0], delta)
            .filter(|&s| ctx.u_log(s).is_some())
            .ok_or_else(|| Error::Unsupported("entry outside the coset δU".into()))?;
        let scaled = UVec(v.0.iter().map(|&x| ctx.div(x, lead).unwrap_or(Ff2::ZERO)).collect());
        let e = scaled
            .exponents(ctx, delta)
            .ok_or_else(|| Error::Unsupported("entry outside the coset δU".into()))?;
        let mut t = [0u8; MAX_SEARCH_DIM];
        for (j, c) in e.iter().enumerate() {
            t[j] = *c as u8;
        }
        Ok(t)
    };
    let bases = set
        .bases
        .iter()
        .map(|b| b.columns.iter().map(enc).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let extras = set.extras.iter().map(enc).collect::<Result<Vec<_>>>()?;
    Ok(TupleSet { bases, extras }.normalise())
}

/// Canonical representative of a MUB set under column permutations and
/// norm-one column scalings of each basis, simultaneous row permutations
/// and norm-one row scalings, and reordering of bases.
pub fn canonical_form(set: &MubSet) -> Result<MubSet> {
    canonical_form_with(set, false)
}

pub fn canonical_form_with(set: &MubSet, galois: bool) -> Result<MubSet> {
    let tuples = mubset_to_tuples(set)?;
    let sym = Symmetries::new(&set.ctx, set.d, galois);
    tuples_to_mubset(&set.ctx, set.d, &canonical_tuples(&sym, &tuples))
}

/// Builds the field and table, then computes `M`, all inequivalent maximal
/// sets and `ν`. Falls back to on-demand classification above the table cap.
pub fn search_full(d: usize, q: u64, opts: &SearchOptions) -> Result<SearchReport> {
    let (p, r) = crate::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let ctx = Arc::new(FieldCtx::new(p, r, crate::gf::DEFAULT_MAX_Q)?);
    search_in(&ctx, d, opts)
}

pub fn search_in(ctx: &Arc<FieldCtx>, d: usize, opts: &SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    let table = match build_ratio_table_with_cap(ctx, d, opts.table_cap_bytes) {
        Ok(t) => t,
        Err(Error::MemoryCap { bytes, cap, .. }) => {
            log::warn!("ratio table needs {bytes} bytes (cap {cap}); classifying on demand");
            RatioClassTable::direct(ctx, d)?
        }
        Err(e) => return Err(e),
    };
    let max = compute_m(ctx, &table, opts)?;
    let (nu, sets) = if max.m > 1 {
        compute_nu(&table, &max.sets)
    } else {
        (0, max.sets.clone())
    };
    let witnesses = sets
        .iter()
        .map(|s| tuples_to_mubset(ctx, d, s))
        .collect::<Result<Vec<_>>>()?;
    let mut stats = max.stats;
    stats.seconds = start.elapsed().as_secs_f64();
    Ok(SearchReport {
        d,
        q: ctx.q(),
        m: max.m,
        nu,
        witnesses,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;
    use crate::hermitian::{herm_inner, is_mu};

    fn field(q: u64) -> Arc<FieldCtx> {
        let (p, r) = crate::arith::prime_power(q).unwrap();
        Arc::new(build_field(p, r).unwrap())
    }

    #[test]
    fn table_sizes_and_minus_one() {
        let ctx = field(3);
        let t = build_ratio_table(&ctx, 2).unwrap();
        assert_eq!(t.space.len, 4);
        // u^2 = -1 in U of order 4
        let mut tup = [0u8; MAX_SEARCH_DIM];
        tup[0] = 2;
        assert_eq!(t.class(t.space.index(&tup)), Class::Orth);
        assert_eq!(build_ratio_table(&field(5), 6).unwrap().space.len, 7776);
    }

    #[test]
    fn zero_tuple_class_is_the_self_case() {
        // S(0) = d; unbiased to itself iff d^2 = d in F_q
        let t = build_ratio_table(&field(5), 6).unwrap();
        assert_eq!(t.class(0), Class::Mu);
        let t = build_ratio_table(&field(7), 6).unwrap();
        assert_eq!(t.class(0), Class::Other);
    }

    #[test]
    fn packed_and_direct_agree() {
        let ctx = field(7);
        let a = build_ratio_table(&ctx, 4).unwrap();
        let b = RatioClassTable::direct(&ctx, 4).unwrap();
        assert!((0..a.space.len).all(|i| a.class(i) == b.class(i)));
        assert!(matches!(
            build_ratio_table_with_cap(&ctx, 4, 10),
            Err(Error::MemoryCap { .. })
        ));
    }

    #[test]
    fn orth_count_matches_direct_evaluation() {
        let ctx = field(5);
        let d = 6;
        let t = build_ratio_table(&ctx, d).unwrap();
        let delta = ctx.delta(d).unwrap();
        let zero = UVec::from_exponents(&ctx, delta, &[0; 5]);
        let direct = (0..t.space.len)
            .filter(|&i| {
                let tup = t.space.tuple(i);
                let e: Vec<u32> = tup[..5].iter().map(|&c| c as u32).collect();
                herm_inner(&ctx, &zero, &UVec::from_exponents(&ctx, delta, &e)).unwrap().is_zero()
            })
            .count();
        assert_eq!(t.count(Class::Orth), direct);
        assert!(direct > 0);
    }

    #[test]
    fn random_pairs_agree_with_predicates() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (q, d) in [(7u64, 6usize), (5, 6), (4, 5), (13, 3)] {
            let ctx = field(q);
            let t = build_ratio_table(&ctx, d).unwrap();
            let delta = ctx.delta(d).unwrap();
            for _ in 0..2500 {
                let a: Vec<u32> = (0..d - 1).map(|_| rng.gen_range(0..=q as u32)).collect();
                let b: Vec<u32> = (0..d - 1).map(|_| rng.gen_range(0..=q as u32)).collect();
                let (x, y) = (UVec::from_exponents(&ctx, delta, &a), UVec::from_exponents(&ctx, delta, &b));
                let mut ta = [0u8; MAX_SEARCH_DIM];
                let mut tb = [0u8; MAX_SEARCH_DIM];
                for j in 0..d - 1 {
                    ta[j] = a[j] as u8;
                    tb[j] = b[j] as u8;
                }
                let ip = herm_inner(&ctx, &x, &y).unwrap();
                assert_eq!(t.orth(&ta, &tb), ip.is_zero());
                assert_eq!(t.mu(&ta, &tb), is_mu(&ctx, d, &x, &y).unwrap());
            }
        }
    }

    #[test]
    fn max_clique_small_graph() {
        // a 4-cycle plus a chord: max clique 3
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)];
        let adj = |i: usize, j: usize| edges.contains(&(i.min(j), i.max(j))) || edges.contains(&(i.max(j), i.min(j)));
        assert_eq!(max_clique(4, &adj, 4), vec![0, 1, 2]);
        let mut count = 0;
        for_each_clique(4, 2, 0, &adj, &mut |_| {
            count += 1;
            true
        });
        assert_eq!(count, 5);
    }

    #[test]
    fn small_searches() {
        let r = search_full(2, 5, &SearchOptions::default()).unwrap();
        assert_eq!((r.m, r.nu), (2, 0));
        let r = search_full(2, 3, &SearchOptions::default()).unwrap();
        assert_eq!((r.m, r.nu), (3, 0));
        let r = search_full(3, 7, &SearchOptions::default()).unwrap();
        assert_eq!(r.m, 1);
        assert_eq!(r.witnesses.len(), 1);
    }
}
