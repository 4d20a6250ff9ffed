//! Finite commutative chain rings.
//!
//! Two families are supported: Galois rings `Z_{p^t}[Y]/(g(Y))` and truncated
//! rings `F_{p^l}[u]/(u^t)`. Both are built as a *tower* over a base ring `B`
//! (`Z/p^t` or `F_p[u]/(u^t)`): every tower level adjoins a root of a monic
//! polynomial whose residue is irreducible over the residue field of the level
//! below. Extensions built by [`ChainRing::extend`] (component rings, the
//! extension rings `R(mu_1, ..., mu_{i-1})`, splitting fields) reuse the same
//! representation.
//!
//! An element is a flat coordinate vector over `B`, lowest level fastest. A
//! coordinate is an integer in `[0, p^t)`; for truncated rings its base-`p`
//! digits are the coefficients of `1, u, u^2, ...`. With this encoding the
//! generator `a` of the maximal ideal is the integer `p` in both families, the
//! valuation of a coordinate is its `p`-adic valuation, and reduction modulo
//! `a^k` is reduction of every coordinate modulo `p^k`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};

pub type Coords = SmallVec<[u64; 4]>;

/// Ring family of a [`ChainRingDesc`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Galois,
    Truncated,
}

/// JSON-facing ring descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRingDesc {
    pub kind: RingKind,
    pub p: u64,
    pub t: u32,
    #[serde(default = "one_usize")]
    pub l: usize,
    /// Ascending-degree coefficients; `None` selects the built-in default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

fn one_usize() -> usize {
    1
}

impl ChainRingDesc {
    pub fn galois(p: u64, t: u32, l: usize) -> Self {
        ChainRingDesc { kind: RingKind::Galois, p, t, l, modulus: None }
    }

    pub fn truncated(p: u64, l: usize, t: u32) -> Self {
        ChainRingDesc { kind: RingKind::Truncated, p, t, l, modulus: None }
    }

    pub fn with_modulus(mut self, modulus: Vec<u64>) -> Self {
        self.modulus = Some(modulus);
        self
    }
}

/// An element of a [`ChainRing`]; meaningful only together with its ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem(Coords);

impl RingElem {
    pub fn from_coords(coords: &[u64]) -> Self {
        RingElem(Coords::from_slice(coords))
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "[")?;
            for (i, c) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BaseRing {
    kind: RingKind,
    p: u64,
    t: u32,
    size: u64,
    pows: Vec<u64>,
}

impl BaseRing {
    fn new(kind: RingKind, p: u64, t: u32) -> Self {
        let mut pows = Vec::with_capacity(t as usize + 1);
        let mut acc = 1u64;
        for _ in 0..=t {
            pows.push(acc);
            acc = acc.saturating_mul(p);
        }
        BaseRing { kind, p, t, size: pows[t as usize], pows }
    }

    fn digits(&self, x: u64) -> [u64; 32] {
        let mut d = [0u64; 32];
        let mut v = x;
        for slot in d.iter_mut().take(self.t as usize) {
            *slot = v % self.p;
            v /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u64]) -> u64 {
        d.iter().take(self.t as usize).rev().fold(0, |acc, &c| acc * self.p + c)
    }

    #[inline]
    fn add(&self, x: u64, y: u64) -> u64 {
        match self.kind {
            RingKind::Galois => (x + y) % self.size,
            RingKind::Truncated => {
                if self.t == 1 {
                    return (x + y) % self.p;
                }
                if self.p == 2 {
                    return x ^ y;
                }
                let (mut x, mut y, mut place, mut out) = (x, y, 1, 0);
                for _ in 0..self.t {
                    out += (x % self.p + y % self.p) % self.p * place;
                    x /= self.p;
                    y /= self.p;
                    place *= self.p;
                }
                out
            }
        }
    }

    #[inline]
    fn neg(&self, x: u64) -> u64 {
        match self.kind {
            RingKind::Galois => (self.size - x) % self.size,
            RingKind::Truncated => {
                if self.p == 2 {
                    return x;
                }
                let a = self.digits(x);
                let mut s = [0u64; 32];
                for i in 0..self.t as usize {
                    s[i] = (self.p - a[i]) % self.p;
                }
                self.undigits(&s)
            }
        }
    }

    #[inline]
    fn sub(&self, x: u64, y: u64) -> u64 {
        match self.kind {
            RingKind::Galois => (x + self.size - y) % self.size,
            RingKind::Truncated => self.add(x, self.neg(y)),
        }
    }

    #[inline]
    fn mul(&self, x: u64, y: u64) -> u64 {
        match self.kind {
            RingKind::Galois => x * y % self.size,
            RingKind::Truncated => {
                if self.t == 1 {
                    return x * y % self.p;
                }
                let (a, b) = (self.digits(x), self.digits(y));
                let t = self.t as usize;
                let mut s = [0u64; 32];
                for i in 0..t {
                    if a[i] == 0 {
                        continue;
                    }
                    for j in 0..t - i {
                        s[i + j] = (s[i + j] + a[i] * b[j]) % self.p;
                    }
                }
                self.undigits(&s)
            }
        }
    }

    #[inline]
    fn val(&self, x: u64) -> u32 {
        if x == 0 {
            return self.t;
        }
        let mut v = 0;
        let mut y = x;
        while y.is_multiple_of(self.p) {
            y /= self.p;
            v += 1;
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Level {
    degree: usize,
    below: usize,
    /// Coefficients of `X^0..X^{degree-1}` of the monic modulus, as elements of
    /// the ring below this level.
    modulus: Vec<Coords>,
}

/// A finite commutative chain ring with maximal ideal generated by `a`
/// (`a = p` for Galois rings, `a = u` for truncated rings).
#[derive(Clone, Debug)]
pub struct ChainRing {
    base: BaseRing,
    levels: Vec<Level>,
    dims: usize,
}

impl PartialEq for ChainRing {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.levels == other.levels
    }
}

impl Eq for ChainRing {}

/// Finite fields are chain rings with nilpotency index 1.
pub type FiniteField = ChainRing;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl ChainRing {
    /// Builds a ring from its descriptor, validating every invariant.
    pub fn new(desc: &ChainRingDesc) -> Result<Self> {
        if !is_prime(desc.p) {
            return Err(Error::NotPrime(desc.p));
        }
        if desc.t < 1 {
            return Err(Error::BadNilpotency(desc.t));
        }
        if desc.l < 1 {
            return Err(Error::BadDegree);
        }
        let size = (desc.p as u128).checked_pow(desc.t).unwrap_or(u128::MAX);
        if size >= 1 << 31 || desc.t > 31 {
            return Err(Error::RingTooLarge(size));
        }
        let ring = ChainRing { base: BaseRing::new(desc.kind, desc.p, desc.t), levels: vec![], dims: 1 };
        if desc.l == 1 {
            if let Some(m) = &desc.modulus {
                if m.len() != 2 {
                    return Err(Error::ModulusDegree { expected: 1, found: m.len().saturating_sub(1) });
                }
                if m[1] != 1 {
                    return Err(Error::NotMonic);
                }
            }
            return Ok(ring);
        }
        let modulus = match &desc.modulus {
            Some(m) => m.clone(),
            None => default_modulus(desc.p, desc.l),
        };
        if modulus.len() != desc.l + 1 {
            return Err(Error::ModulusDegree { expected: desc.l, found: modulus.len().saturating_sub(1) });
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::NotMonic);
        }
        let bound = match desc.kind {
            RingKind::Galois => ring.base.size,
            RingKind::Truncated => desc.p,
        };
        if let Some(bad) = modulus.iter().find(|&&c| c >= bound) {
            return Err(Error::Parse(format!("modulus coefficient {bad} out of range [0, {bound})")));
        }
        let poly = Poly::new(modulus.iter().map(|&c| ring.from_encoded(c)).collect());
        ring.extend(&poly)
    }

    /// The residue field `F_p` viewed as a chain ring with `t = 1`.
    pub fn prime_field(p: u64) -> Result<Self> {
        ChainRing::new(&ChainRingDesc::galois(p, 1, 1))
    }

    /// `S = self[Z]/(modulus)`; the residue of `modulus` must be irreducible.
    pub fn extend(&self, modulus: &Poly) -> Result<ChainRing> {
        let pr = PolyRing::new(self);
        if !pr.is_monic(modulus) {
            return Err(Error::NotMonic);
        }
        let field = self.residue_field();
        let fr = PolyRing::new(&field);
        if !fr.is_irreducible(&pr.residue(modulus)) {
            return Err(Error::Reducible);
        }
        Ok(self.extend_unchecked(modulus))
    }

    /// Like [`extend`](Self::extend) without the irreducibility check.
    pub(crate) fn extend_unchecked(&self, modulus: &Poly) -> ChainRing {
        let d = modulus.degree().expect("nonzero modulus");
        let level = Level {
            degree: d,
            below: self.dims,
            modulus: (0..d).map(|i| modulus.coeff(i, self).0).collect(),
        };
        let mut levels = self.levels.clone();
        levels.push(level);
        ChainRing { base: self.base.clone(), levels, dims: self.dims * d }
    }

    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn t(&self) -> u32 {
        self.base.t
    }

    pub fn kind(&self) -> RingKind {
        self.base.kind
    }

    /// Number of base coordinates of an element.
    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level_degree(&self, level: usize) -> usize {
        self.levels[level].degree
    }

    pub fn is_field(&self) -> bool {
        self.base.t == 1
    }

    /// `p^t`, the range of a single coordinate.
    pub fn coord_size(&self) -> u64 {
        self.base.size
    }

    /// `q = |R / aR| = p^dims`.
    pub fn residue_size(&self) -> u128 {
        (self.base.p as u128).pow(self.dims as u32)
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(self.base.size).pow(self.dims as u32)
    }

    /// Number of elements if it fits in a `u64`.
    pub fn size_u64(&self) -> Option<u64> {
        (self.base.size as u128).checked_pow(self.dims as u32).and_then(|s| u64::try_from(s).ok())
    }

    /// Ring consisting of the first `k` tower levels.
    pub fn prefix(&self, k: usize) -> ChainRing {
        let levels = self.levels[..k].to_vec();
        let dims = levels.iter().map(|l| l.degree).product();
        ChainRing { base: self.base.clone(), levels, dims }
    }

    /// Whether `sub` is this ring or one of its tower prefixes.
    pub fn is_extension_of(&self, sub: &ChainRing) -> bool {
        self.base == sub.base
            && sub.levels.len() <= self.levels.len()
            && self.levels[..sub.levels.len()] == sub.levels[..]
    }

    /// Embeds an element of a tower prefix.
    pub fn embed(&self, x: &RingElem) -> RingElem {
        let mut c: Coords = smallvec![0; self.dims];
        c[..x.0.len()].copy_from_slice(&x.0);
        RingElem(c)
    }

    pub fn zero(&self) -> RingElem {
        RingElem(smallvec![0; self.dims])
    }

    pub fn one(&self) -> RingElem {
        let mut c: Coords = smallvec![0; self.dims];
        c[0] = 1 % self.base.size;
        RingElem(c)
    }

    /// Image of an integer under the unique homomorphism `Z -> R`.
    pub fn from_int(&self, n: i64) -> RingElem {
        let modulus = match self.base.kind {
            RingKind::Galois => self.base.size as i64,
            RingKind::Truncated => self.base.p as i64,
        };
        self.from_encoded(n.rem_euclid(modulus) as u64)
    }

    /// Element whose coordinate 0 is `c` (an encoded base element) and others zero.
    pub fn from_encoded(&self, c: u64) -> RingElem {
        let mut v: Coords = smallvec![0; self.dims];
        v[0] = c % self.base.size;
        v.into()
    }

    /// Validates and wraps a coordinate vector.
    pub fn from_coords(&self, coords: &[u64]) -> Result<RingElem> {
        if coords.len() != self.dims || coords.iter().any(|&c| c >= self.base.size) {
            return Err(Error::WrongRing);
        }
        Ok(RingElem::from_coords(coords))
    }

    /// The generator `a` of the maximal ideal.
    pub fn a(&self) -> RingElem {
        self.from_encoded(self.base.p % self.base.size)
    }

    pub fn a_pow(&self, k: u32) -> RingElem {
        if k >= self.base.t {
            self.zero()
        } else {
            self.from_encoded(self.base.pows[k as usize])
        }
    }

    /// The adjoined root of tower level `level`, as an element of this ring.
    pub fn generator(&self, level: usize) -> RingElem {
        let mut c: Coords = smallvec![0; self.dims];
        let below = self.levels[level].below;
        if self.levels[level].degree > 1 {
            c[below] = 1;
            RingElem(c)
        } else {
            // degree-1 level: the root is -m_0
            let m0 = RingElem(self.levels[level].modulus[0].clone());
            let sub = self.prefix(level);
            self.embed(&sub.neg(&m0))
        }
    }

    pub fn add(&self, x: &RingElem, y: &RingElem) -> RingElem {
        RingElem(x.0.iter().zip(&y.0).map(|(&a, &b)| self.base.add(a, b)).collect())
    }

    pub fn sub(&self, x: &RingElem, y: &RingElem) -> RingElem {
        RingElem(x.0.iter().zip(&y.0).map(|(&a, &b)| self.base.sub(a, b)).collect())
    }

    pub fn neg(&self, x: &RingElem) -> RingElem {
        RingElem(x.0.iter().map(|&a| self.base.neg(a)).collect())
    }

    pub fn mul(&self, x: &RingElem, y: &RingElem) -> RingElem {
        RingElem(self.mul_level(self.levels.len(), &x.0, &y.0))
    }

    /// Multiplies by an element of the tower prefix `sub` (block-wise scaling).
    pub fn scale_by_sub(&self, sub: &ChainRing, c: &RingElem, x: &RingElem) -> RingElem {
        let k = sub.levels.len();
        let s = sub.dims;
        let mut out: Coords = SmallVec::with_capacity(self.dims);
        for block in x.0.chunks(s) {
            out.extend_from_slice(&self.mul_level(k, &c.0, block));
        }
        RingElem(out)
    }

    fn add_into(&self, acc: &mut [u64], y: &[u64]) {
        for (a, &b) in acc.iter_mut().zip(y) {
            *a = self.base.add(*a, b);
        }
    }

    fn sub_into(&self, acc: &mut [u64], y: &[u64]) {
        for (a, &b) in acc.iter_mut().zip(y) {
            *a = self.base.sub(*a, b);
        }
    }

    fn mul_level(&self, k: usize, x: &[u64], y: &[u64]) -> Coords {
        if k == 0 {
            return smallvec![self.base.mul(x[0], y[0])];
        }
        let lvl = &self.levels[k - 1];
        let (d, s) = (lvl.degree, lvl.below);
        if d == 1 {
            return self.mul_level(k - 1, x, y);
        }
        let mut prod = vec![0u64; (2 * d - 1) * s];
        for i in 0..d {
            let xi = &x[i * s..(i + 1) * s];
            if xi.iter().all(|&c| c == 0) {
                continue;
            }
            for j in 0..d {
                let yj = &y[j * s..(j + 1) * s];
                if yj.iter().all(|&c| c == 0) {
                    continue;
                }
                let m = self.mul_level(k - 1, xi, yj);
                self.add_into(&mut prod[(i + j) * s..(i + j + 1) * s], &m);
            }
        }
        for j in (d..2 * d - 1).rev() {
            let c: Coords = Coords::from_slice(&prod[j * s..(j + 1) * s]);
            if c.iter().all(|&v| v == 0) {
                continue;
            }
            for i in 0..d {
                let m = self.mul_level(k - 1, &c, &lvl.modulus[i]);
                self.sub_into(&mut prod[(j - d + i) * s..(j - d + i + 1) * s], &m);
            }
        }
        prod.truncate(d * s);
        Coords::from_vec(prod)
    }

    pub fn pow(&self, x: &RingElem, mut e: u128) -> RingElem {
        let mut result = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn is_zero(&self, x: &RingElem) -> bool {
        x.is_zero()
    }

    pub fn is_one(&self, x: &RingElem) -> bool {
        *x == self.one()
    }

    /// Largest `k` with `x` in `a^k R`; the zero element has valuation `t`.
    pub fn valuation(&self, x: &RingElem) -> u32 {
        x.0.iter().map(|&c| self.base.val(c)).min().unwrap_or(self.base.t)
    }

    pub fn is_unit(&self, x: &RingElem) -> bool {
        self.valuation(x) == 0
    }

    /// Inverse of a unit: residue inverse by Fermat, then Newton iteration.
    pub fn inverse(&self, x: &RingElem) -> Result<RingElem> {
        if !self.is_unit(x) {
            return Err(Error::NotUnit);
        }
        let field = self.residue_field();
        let xb = self.residue(x);
        let q = self.residue_size();
        let yb = field.pow(&xb, q - 2);
        let mut y = self.lift_residue(&yb);
        let two = self.from_int(2);
        for _ in 0..=self.base.t {
            let xy = self.mul(x, &y);
            if self.is_one(&xy) {
                return Ok(y);
            }
            y = self.mul(&y, &self.sub(&two, &xy));
        }
        Err(Error::Internal("unit inverse did not converge".into()))
    }

    /// `y` with `a^k y = x` (canonical choice with coordinates below `p^{t-k}`).
    pub fn div_a_pow(&self, x: &RingElem, k: u32) -> Result<RingElem> {
        if k == 0 {
            return Ok(x.clone());
        }
        if k >= self.base.t {
            return if x.is_zero() { Ok(self.zero()) } else { Err(Error::NotDivisible(k)) };
        }
        let pk = self.base.pows[k as usize];
        if x.0.iter().any(|&c| c % pk != 0) {
            return Err(Error::NotDivisible(k));
        }
        Ok(RingElem(x.0.iter().map(|&c| c / pk).collect()))
    }

    /// Canonical representative of `x` modulo `a^k R`.
    pub fn rem_a_pow(&self, x: &RingElem, k: u32) -> RingElem {
        if k >= self.base.t {
            return x.clone();
        }
        let pk = self.base.pows[k as usize];
        RingElem(x.0.iter().map(|&c| c % pk).collect())
    }

    /// The residue field `R / aR` as a chain ring with `t = 1`.
    pub fn residue_field(&self) -> FiniteField {
        let p = self.base.p;
        let levels = self
            .levels
            .iter()
            .map(|l| Level {
                degree: l.degree,
                below: l.below,
                modulus: l.modulus.iter().map(|c| c.iter().map(|&v| v % p).collect()).collect(),
            })
            .collect();
        ChainRing { base: BaseRing::new(RingKind::Galois, p, 1), levels, dims: self.dims }
    }

    /// Natural projection onto the residue field.
    pub fn residue(&self, x: &RingElem) -> RingElem {
        RingElem(x.0.iter().map(|&c| c % self.base.p).collect())
    }

    /// Canonical lift of a residue-field element.
    pub fn lift_residue(&self, x: &RingElem) -> RingElem {
        x.clone()
    }

    /// Compares elements by mixed-radix rank (coordinate 0 least significant).
    pub fn cmp_rank(&self, x: &RingElem, y: &RingElem) -> Ordering {
        x.0.iter().rev().cmp(y.0.iter().rev())
    }

    /// Element with the given mixed-radix index, for small rings.
    pub fn element_at(&self, mut index: u64) -> RingElem {
        let s = self.base.size;
        let mut c: Coords = smallvec![0; self.dims];
        for slot in c.iter_mut() {
            *slot = index % s;
            index /= s;
        }
        RingElem(c)
    }

    pub fn index_of(&self, x: &RingElem) -> u64 {
        x.0.iter().rev().fold(0u64, |acc, &c| acc * self.base.size + c)
    }

    /// All elements in rank order. Panics if the ring does not fit in memory budget.
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        let n = self.size_u64().expect("ring too large to enumerate");
        (0..n).map(move |i| self.element_at(i))
    }

    /// Teichmüller representative of the residue class of `x`: iterate
    /// `x <- x^q` until fixed.
    pub fn teichmuller_lift(&self, x: &RingElem) -> RingElem {
        let q = self.residue_size();
        let mut y = x.clone();
        for _ in 0..=self.base.t + 1 {
            let z = self.pow(&y, q);
            if z == y {
                return y;
            }
            y = z;
        }
        y
    }

    /// The `q` solutions of `x^q = x`, one per residue class, in residue rank order.
    pub fn teichmuller_set(&self) -> Vec<RingElem> {
        let field = self.residue_field();
        field.elements().map(|r| self.teichmuller_lift(&self.lift_residue(&r))).collect()
    }

    /// Digits `gamma_0, ..., gamma_{t-1}` with `x = sum a^i gamma_i`, each Teichmüller.
    pub fn teichmuller_expansion(&self, x: &RingElem) -> Vec<RingElem> {
        let mut digits = Vec::with_capacity(self.base.t as usize);
        let mut cur = x.clone();
        for i in 0..self.base.t {
            let g = self.teichmuller_lift(&self.lift_residue(&self.residue(&cur)));
            let rest = self.sub(&cur, &g);
            digits.push(g);
            if i + 1 < self.base.t {
                cur = self.div_a_pow(&rest, 1).expect("difference lies in aR");
            }
        }
        digits
    }

    /// Frobenius lift over a subring with residue field size `q`: acts on
    /// Teichmüller digits by `gamma -> gamma^q`.
    pub fn frobenius(&self, x: &RingElem, q: u128) -> RingElem {
        let mut acc = self.zero();
        for (i, g) in self.teichmuller_expansion(x).iter().enumerate() {
            let term = self.mul(&self.a_pow(i as u32), &self.pow(g, q));
            acc = self.add(&acc, &term);
        }
        acc
    }

    /// Trace from this ring onto a tower prefix `sub`.
    pub fn trace_to(&self, sub: &ChainRing, x: &RingElem) -> Result<RingElem> {
        if !self.is_extension_of(sub) || x.0.len() != self.dims {
            return Err(Error::WrongRing);
        }
        let m = self.dims / sub.dims;
        let q = sub.residue_size();
        let mut sum = x.clone();
        let mut y = x.clone();
        for _ in 1..m {
            y = self.frobenius(&y, q);
            sum = self.add(&sum, &y);
        }
        if sum.0[sub.dims..].iter().any(|&c| c != 0) {
            return Err(Error::Internal("trace left the subring".into()));
        }
        Ok(RingElem::from_coords(&sum.0[..sub.dims]))
    }

    /// Evaluates a tower element of `self` (an extension of `sub`) by sending
    /// the generators of the extra levels to `roots` inside `target`, which
    /// must itself be an extension of `sub`.
    pub fn eval_tower(
        &self,
        sub: &ChainRing,
        x: &RingElem,
        target: &ChainRing,
        roots: &[RingElem],
    ) -> RingElem {
        let extra = &self.levels[sub.levels.len()..];
        debug_assert_eq!(extra.len(), roots.len());
        let degs: Vec<usize> = extra.iter().map(|l| l.degree).collect();
        let total: usize = degs.iter().product();
        let mut acc = target.zero();
        let mut digits = vec![0usize; degs.len()];
        for idx in 0..total {
            let block = &x.0[idx * sub.dims..(idx + 1) * sub.dims];
            if block.iter().any(|&c| c != 0) {
                let mut m = target.embed(&RingElem::from_coords(block));
                for (k, &e) in digits.iter().enumerate() {
                    if e > 0 {
                        m = target.mul(&m, &target.pow(&roots[k], e as u128));
                    }
                }
                acc = target.add(&acc, &m);
            }
            for (k, dgt) in digits.iter_mut().enumerate() {
                *dgt += 1;
                if *dgt < degs[k] {
                    break;
                }
                *dgt = 0;
            }
        }
        acc
    }

    /// Descriptor of a ring built with [`ChainRing::new`] (towers of depth ≤ 1).
    pub fn descriptor(&self) -> Option<ChainRingDesc> {
        match self.levels.len() {
            0 => Some(ChainRingDesc { kind: self.base.kind, p: self.base.p, t: self.base.t, l: 1, modulus: None }),
            1 if self.levels[0].modulus.iter().all(|c| c.len() == 1) => {
                let mut m: Vec<u64> = self.levels[0].modulus.iter().map(|c| c[0]).collect();
                m.push(1);
                Some(ChainRingDesc {
                    kind: self.base.kind,
                    p: self.base.p,
                    t: self.base.t,
                    l: self.levels[0].degree,
                    modulus: Some(m),
                })
            }
            _ => None,
        }
    }
}

impl From<Coords> for RingElem {
    fn from(c: Coords) -> Self {
        RingElem(c)
    }
}

/// Smallest monic irreducible polynomial of degree `l` over `F_p`, ordered by
/// the integer whose base-`p` digits are the lower coefficients.
pub fn default_modulus(p: u64, l: usize) -> Vec<u64> {
    let field = ChainRing { base: BaseRing::new(RingKind::Galois, p, 1), levels: vec![], dims: 1 };
    let pr = PolyRing::new(&field);
    let mut n: u64 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(l + 1);
        let mut v = n;
        for _ in 0..l {
            coeffs.push(v % p);
            v /= p;
        }
        coeffs.push(1);
        let f = Poly::new(coeffs.iter().map(|&c| field.from_encoded(c)).collect());
        if pr.is_irreducible(&f) {
            return coeffs;
        }
        n += 1;
    }
}
