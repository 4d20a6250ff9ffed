//! Dense univariate polynomials over a [`ChainRing`].

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::ring::{ChainRing, RingElem};

/// Ascending-degree coefficient list with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<RingElem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<RingElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, ring: &ChainRing) -> RingElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn leading(&self) -> Option<&RingElem> {
        self.coeffs.last()
    }
}

/// Polynomial arithmetic over a borrowed coefficient ring.
#[derive(Clone, Copy)]
pub struct PolyRing<'a> {
    ring: &'a ChainRing,
}

impl<'a> PolyRing<'a> {
    pub fn new(ring: &'a ChainRing) -> Self {
        PolyRing { ring }
    }

    pub fn ring(&self) -> &'a ChainRing {
        self.ring
    }

    pub fn one(&self) -> Poly {
        Poly::new(vec![self.ring.one()])
    }

    pub fn x(&self) -> Poly {
        Poly::new(vec![self.ring.zero(), self.ring.one()])
    }

    pub fn constant(&self, c: RingElem) -> Poly {
        Poly::new(vec![c])
    }

    pub fn monomial(&self, c: RingElem, k: usize) -> Poly {
        let mut v = vec![self.ring.zero(); k];
        v.push(c);
        Poly::new(v)
    }

    pub fn from_ints(&self, coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| self.ring.from_int(c)).collect())
    }

    pub fn is_monic(&self, f: &Poly) -> bool {
        f.leading().is_some_and(|c| self.ring.is_one(c))
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        let n = f.coeffs.len().max(g.coeffs.len());
        Poly::new((0..n).map(|i| self.ring.add(&f.coeff(i, self.ring), &g.coeff(i, self.ring))).collect())
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        let n = f.coeffs.len().max(g.coeffs.len());
        Poly::new((0..n).map(|i| self.ring.sub(&f.coeff(i, self.ring), &g.coeff(i, self.ring))).collect())
    }

    pub fn neg(&self, f: &Poly) -> Poly {
        Poly::new(f.coeffs.iter().map(|c| self.ring.neg(c)).collect())
    }

    pub fn scale(&self, c: &RingElem, f: &Poly) -> Poly {
        Poly::new(f.coeffs.iter().map(|x| self.ring.mul(c, x)).collect())
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![self.ring.zero(); f.coeffs.len() + g.coeffs.len() - 1];
        for (i, a) in f.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate() {
                out[i + j] = self.ring.add(&out[i + j], &self.ring.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn product<'b>(&self, fs: impl IntoIterator<Item = &'b Poly>) -> Poly {
        fs.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// Division with remainder; the divisor's leading coefficient must be a unit.
    pub fn divmod(&self, f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
        let dg = g.degree().ok_or(Error::NotMonic)?;
        let lc = g.leading().unwrap();
        let inv = if self.ring.is_one(lc) { self.ring.one() } else { self.ring.inverse(lc).map_err(|_| Error::NotMonic)? };
        let mut rem = f.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Poly::zero(), f.clone()));
        }
        let mut quo = vec![self.ring.zero(); rem.len() - dg];
        for k in (dg..rem.len()).rev() {
            let c = self.ring.mul(&rem[k], &inv);
            if c.is_zero() {
                continue;
            }
            for (i, gi) in g.coeffs.iter().enumerate() {
                rem[k - dg + i] = self.ring.sub(&rem[k - dg + i], &self.ring.mul(&c, gi));
            }
            quo[k - dg] = c;
        }
        rem.truncate(dg);
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    pub fn rem(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        Ok(self.divmod(f, g)?.1)
    }

    /// Exact quotient; fails if the division leaves a remainder.
    pub fn exact_div(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(f, g)?;
        if !r.is_zero() {
            return Err(Error::Precondition("division is not exact".into()));
        }
        Ok(q)
    }

    pub fn derivative(&self, f: &Poly) -> Poly {
        Poly::new(
            f.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.ring.mul(&self.ring.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, f: &Poly, x: &RingElem) -> RingElem {
        f.coeffs.iter().rev().fold(self.ring.zero(), |acc, c| self.ring.add(&self.ring.mul(&acc, x), c))
    }

    /// Evaluates `f` (over this ring) at `x` in an extension ring `target`.
    pub fn eval_in(&self, f: &Poly, target: &ChainRing, x: &RingElem) -> RingElem {
        f.coeffs
            .iter()
            .rev()
            .fold(target.zero(), |acc, c| target.add(&target.mul(&acc, x), &target.embed(c)))
    }

    /// Maps a polynomial over a tower prefix of this ring into this ring.
    pub fn embed(&self, f: &Poly) -> Poly {
        Poly::new(f.coeffs.iter().map(|c| self.ring.embed(c)).collect())
    }

    pub fn pow_mod(&self, f: &Poly, mut e: u128, m: &Poly) -> Result<Poly> {
        let mut result = self.rem(&self.one(), m)?;
        let mut base = self.rem(f, m)?;
        while e > 0 {
            if e & 1 == 1 {
                result = self.rem(&self.mul(&result, &base), m)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.rem(&self.mul(&base, &base), m)?;
            }
        }
        Ok(result)
    }

    /// Scales by the inverse of the leading coefficient.
    pub fn make_monic(&self, f: &Poly) -> Result<Poly> {
        match f.leading() {
            None => Ok(Poly::zero()),
            Some(lc) if self.ring.is_one(lc) => Ok(f.clone()),
            Some(lc) => Ok(self.scale(&self.ring.inverse(lc)?, f)),
        }
    }

    /// Monic gcd; the coefficient ring must be a field.
    pub fn gcd(&self, f: &Poly, g: &Poly) -> Poly {
        debug_assert!(self.ring.is_field());
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b).expect("field coefficients");
            a = b;
            b = r;
        }
        self.make_monic(&a).expect("field coefficients")
    }

    /// `(g, s, t)` with `s f + t h = g`, `g` the monic gcd; field coefficients only.
    pub fn ext_gcd(&self, f: &Poly, h: &Poly) -> (Poly, Poly, Poly) {
        debug_assert!(self.ring.is_field());
        let (mut r0, mut r1) = (f.clone(), h.clone());
        let (mut s0, mut s1) = (self.one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divmod(&r0, &r1).expect("field coefficients");
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.ring.inverse(lc).expect("field coefficients");
                (self.scale(&inv, &r0), self.scale(&inv, &s0), self.scale(&inv, &t0))
            }
        }
    }

    pub fn residue(&self, f: &Poly) -> Poly {
        Poly::new(f.coeffs.iter().map(|c| self.ring.residue(c)).collect())
    }

    /// Canonical lift of a polynomial over the residue field.
    pub fn lift(&self, f: &Poly) -> Poly {
        Poly::new(f.coeffs.iter().map(|c| self.ring.lift_residue(c)).collect())
    }

    /// `gcd(f, f') = 1` over a field.
    pub fn is_squarefree(&self, f: &Poly) -> bool {
        match f.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(f, &self.derivative(f)).degree() == Some(0),
        }
    }

    /// Rabin's irreducibility test over a finite field.
    pub fn is_irreducible(&self, f: &Poly) -> bool {
        let d = match f.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let Ok(f) = self.make_monic(f) else { return false };
        let q = self.ring.residue_size();
        let x = self.x();
        let mut powers = vec![x.clone()];
        for _ in 0..d {
            let next = self.pow_mod(powers.last().unwrap(), q, &f).expect("monic modulus");
            powers.push(next);
        }
        if self.sub(&powers[d], &self.rem(&x, &f).unwrap()).coeffs.iter().any(|c| !c.is_zero()) {
            return false;
        }
        prime_factors(d as u64).into_iter().all(|r| {
            let h = self.sub(&powers[d / r as usize], &x);
            self.gcd(&f, &h).degree() == Some(0)
        })
    }

    /// Orders by degree, then by coefficients from the top down.
    pub fn cmp_rank(&self, f: &Poly, g: &Poly) -> Ordering {
        f.coeffs.len().cmp(&g.coeffs.len()).then_with(|| {
            for (a, b) in f.coeffs.iter().rev().zip(g.coeffs.iter().rev()) {
                match self.ring.cmp_rank(a, b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Text form in variable `var`, e.g. `x^3+2*x^2+x+3`.
    pub fn to_text(&self, f: &Poly, var: &str) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, c) in f.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            terms.push(crate::text::format_term(c, self.ring, &[mono]));
        }
        terms.join("+")
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ChainRingDesc;

    fn z4() -> ChainRing {
        ChainRing::new(&ChainRingDesc::galois(2, 2, 1)).unwrap()
    }

    #[test]
    fn hensel_factors_multiply_to_x7_minus_1() {
        let r = z4();
        let pr = PolyRing::new(&r);
        let f1 = pr.from_ints(&[3, 1]);
        let f2 = pr.from_ints(&[3, 1, 2, 1]);
        let f3 = pr.from_ints(&[3, 2, 3, 1]);
        let prod = pr.product([&f1, &f2, &f3]);
        assert_eq!(prod, pr.from_ints(&[-1, 0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn divmod_examples() {
        let r = z4();
        let pr = PolyRing::new(&r);
        let f = pr.from_ints(&[-1, 0, 0, 0, 0, 0, 0, 1]);
        let (q, rem) = pr.divmod(&f, &pr.from_ints(&[-1, 1])).unwrap();
        assert_eq!(q, pr.from_ints(&[1; 7]));
        assert!(rem.is_zero());
        let (q, rem) = pr.divmod(&f, &f).unwrap();
        assert_eq!(q, pr.one());
        assert!(rem.is_zero());
        // 2x + 1 has a non-unit leading coefficient over Z4
        assert_eq!(pr.divmod(&f, &pr.from_ints(&[1, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn squarefree_and_irreducible() {
        let f2 = ChainRing::prime_field(2).unwrap();
        let pr = PolyRing::new(&f2);
        assert!(pr.is_squarefree(&pr.from_ints(&[1, 0, 0, 0, 0, 0, 0, 1])));
        assert!(!pr.is_squarefree(&pr.from_ints(&[1, 0, 1])));
        assert!(pr.is_squarefree(&pr.x()));
        assert!(pr.is_irreducible(&pr.from_ints(&[1, 1, 0, 1])));
        assert!(!pr.is_irreducible(&pr.from_ints(&[1, 0, 0, 0, 0, 0, 0, 1])));
        let f3 = ChainRing::prime_field(3).unwrap();
        let p3 = PolyRing::new(&f3);
        assert!(p3.is_irreducible(&p3.from_ints(&[1, 0, 1])));
        // x^3 - 1 = (x - 1)^3 over F_3
        assert!(!p3.is_squarefree(&p3.from_ints(&[-1, 0, 0, 1])));
    }

    #[test]
    fn ext_gcd_bezout() {
        let f2 = ChainRing::prime_field(2).unwrap();
        let pr = PolyRing::new(&f2);
        let a = pr.from_ints(&[1, 1, 0, 1]);
        let b = pr.from_ints(&[1, 0, 1, 1]);
        let (g, s, t) = pr.ext_gcd(&a, &b);
        assert_eq!(g, pr.one());
        assert_eq!(pr.add(&pr.mul(&s, &a), &pr.mul(&t, &b)), pr.one());
    }

    #[test]
    fn text_form() {
        let r = z4();
        let pr = PolyRing::new(&r);
        assert_eq!(pr.to_text(&pr.from_ints(&[3, 1, 2, 1]), "x"), "x^3+2*x^2+x+3");
        assert_eq!(pr.to_text(&Poly::zero(), "x"), "0");
    }
}
