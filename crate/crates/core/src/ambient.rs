//! The quotient `R[X_1, ..., X_r] / <t_1(X_1), ..., t_r(X_r)>` and its elements.
//!
//! Elements are dense coefficient vectors indexed by the mixed-radix rank
//! `rank(i_1, ..., i_r) = sum_k i_k * prod_{j<k} deg t_j` (`X_1` fastest). This
//! order is also the coordinate order of code words.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::ring::{ChainRing, RingElem};
use crate::text::{self, PolyJson};

/// Sparse multivariate polynomial, not reduced modulo any ideal.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawPoly {
    pub terms: BTreeMap<Vec<usize>, RingElem>,
}

impl RawPoly {
    pub fn new() -> Self {
        RawPoly::default()
    }

    /// Adds `c * X^exps` (exponent vectors shorter than needed are zero-padded by readers).
    pub fn add_term(&mut self, ring: &ChainRing, exps: Vec<usize>, c: &RingElem) {
        let mut exps = exps;
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let entry = self.terms.entry(exps).or_insert_with(|| ring.zero());
        *entry = ring.add(entry, c);
    }

    /// Univariate polynomial placed in variable `var`.
    pub fn from_univariate(ring: &ChainRing, f: &Poly, var: usize) -> Self {
        let mut out = RawPoly::new();
        for (k, c) in f.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; var + 1];
                e[var] = k;
                out.add_term(ring, e, c);
            }
        }
        out
    }

    pub fn mul(&self, ring: &ChainRing, other: &RawPoly) -> RawPoly {
        let mut out = RawPoly::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let n = ea.len().max(eb.len());
                let e: Vec<usize> =
                    (0..n).map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0)).collect();
                out.add_term(ring, e, &ring.mul(ca, cb));
            }
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn to_text(&self, ring: &ChainRing, nvars: usize) -> String {
        let mut parts = Vec::new();
        let mut terms: Vec<(&Vec<usize>, &RingElem)> = self.terms.iter().collect();
        // highest power of the last variable first
        let key = |e: &Vec<usize>| {
            let mut k = e.clone();
            k.resize(nvars.max(e.len()), 0);
            k.reverse();
            k
        };
        terms.sort_by_key(|t| std::cmp::Reverse(key(t.0)));
        for (exps, c) in terms {
            if c.is_zero() {
                continue;
            }
            let monos: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let v = text::var_name(i, nvars);
                    if e == 1 {
                        v
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            parts.push(text::format_term(c, ring, &monos));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// Element of an [`Ambient`] in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    coeffs: Vec<RingElem>,
}

impl MPoly {
    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// The quotient ring in which codes live.
#[derive(Clone, Debug)]
pub struct Ambient {
    ring: ChainRing,
    moduli: Vec<Poly>,
    degrees: Vec<usize>,
    strides: Vec<usize>,
    n: usize,
    exponents: Option<Vec<usize>>,
    semisimple: bool,
    digits: Vec<Vec<usize>>,
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.moduli == other.moduli
    }
}

impl Ambient {
    /// Builds a semisimple ambient; every `t_i` must be monic with square-free residue.
    pub fn new(ring: ChainRing, moduli: Vec<Poly>) -> Result<Self> {
        let amb = Self::new_unchecked(ring, moduli)?;
        if let Some(index) = amb.first_non_squarefree() {
            return Err(Error::NotSemisimple { index });
        }
        Ok(amb)
    }

    /// Builds an ambient without requiring semisimplicity.
    pub fn new_unchecked(ring: ChainRing, moduli: Vec<Poly>) -> Result<Self> {
        let pr = PolyRing::new(&ring);
        if moduli.is_empty() {
            return Err(Error::Precondition("at least one modulus is required".into()));
        }
        for t in &moduli {
            if !pr.is_monic(t) {
                return Err(Error::NotMonic);
            }
            if t.degree() == Some(0) {
                return Err(Error::Precondition("moduli must have positive degree".into()));
            }
        }
        let degrees: Vec<usize> = moduli.iter().map(|t| t.degree().unwrap()).collect();
        let mut strides = Vec::with_capacity(degrees.len());
        let mut acc = 1usize;
        for &d in &degrees {
            strides.push(acc);
            acc = acc.checked_mul(d).ok_or_else(|| Error::Precondition("ambient too large".into()))?;
        }
        let n = acc;
        let exponents: Option<Vec<usize>> = moduli
            .iter()
            .map(|t| {
                let d = t.degree().unwrap();
                let minus_one = ring.neg(&ring.one());
                let ok = t.coeffs()[0] == minus_one && t.coeffs()[1..d].iter().all(|c| c.is_zero());
                ok.then_some(d)
            })
            .collect();
        let digits = (0..n)
            .map(|idx| degrees.iter().zip(&strides).map(|(&d, &s)| idx / s % d).collect())
            .collect();
        let mut amb = Ambient { ring, moduli, degrees, strides, n, exponents, semisimple: true, digits };
        amb.semisimple = amb.first_non_squarefree().is_none();
        Ok(amb)
    }

    /// Parses moduli such as `x^7-1` or `x^2-1, y^2-1` (variable `i` for modulus `i`).
    pub fn parse(ring: ChainRing, moduli: &[String], checked: bool) -> Result<Self> {
        let mut polys = Vec::new();
        for (i, m) in moduli.iter().enumerate() {
            let terms = text::parse_terms(m, &ring)?;
            let mut coeffs: Vec<RingElem> = Vec::new();
            for term in terms {
                let mut deg = 0;
                for (v, e) in &term.vars {
                    if *v != i && !(moduli.len() == 1 && *v == 0) {
                        return Err(Error::Parse(format!("modulus {} must be univariate in its own variable", i + 1)));
                    }
                    deg += e;
                }
                if coeffs.len() <= deg {
                    coeffs.resize(deg + 1, ring.zero());
                }
                coeffs[deg] = ring.add(&coeffs[deg], &term.coeff);
            }
            polys.push(Poly::new(coeffs));
        }
        if checked {
            Ambient::new(ring, polys)
        } else {
            Ambient::new_unchecked(ring, polys)
        }
    }

    fn first_non_squarefree(&self) -> Option<usize> {
        let pr = PolyRing::new(&self.ring);
        let field = self.ring.residue_field();
        let fr = PolyRing::new(&field);
        self.moduli.iter().position(|t| !fr.is_squarefree(&pr.residue(t)))
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn moduli(&self) -> &[Poly] {
        &self.moduli
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Number of variables.
    pub fn r(&self) -> usize {
        self.degrees.len()
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_semisimple(&self) -> bool {
        self.semisimple
    }

    /// `Some(e)` when every modulus is `X_i^{e_i} - 1`.
    pub fn abelian_exponents(&self) -> Option<&[usize]> {
        self.exponents.as_deref()
    }

    pub fn rank(&self, exps: &[usize]) -> usize {
        exps.iter().zip(&self.strides).map(|(e, s)| e * s).sum()
    }

    pub fn exps_of(&self, rank: usize) -> &[usize] {
        &self.digits[rank]
    }

    pub fn zero(&self) -> MPoly {
        MPoly { coeffs: vec![self.ring.zero(); self.n] }
    }

    pub fn one(&self) -> MPoly {
        self.constant(self.ring.one())
    }

    pub fn constant(&self, c: RingElem) -> MPoly {
        let mut f = self.zero();
        f.coeffs[0] = c;
        f
    }

    /// `X^exps` with every exponent below the corresponding degree.
    pub fn monomial(&self, exps: &[usize]) -> MPoly {
        let mut f = self.zero();
        f.coeffs[self.rank(exps)] = self.ring.one();
        f
    }

    pub fn unit_vector(&self, rank: usize) -> MPoly {
        let mut f = self.zero();
        f.coeffs[rank] = self.ring.one();
        f
    }

    pub fn add(&self, f: &MPoly, g: &MPoly) -> MPoly {
        MPoly { coeffs: f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| self.ring.add(a, b)).collect() }
    }

    pub fn sub(&self, f: &MPoly, g: &MPoly) -> MPoly {
        MPoly { coeffs: f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| self.ring.sub(a, b)).collect() }
    }

    pub fn neg(&self, f: &MPoly) -> MPoly {
        MPoly { coeffs: f.coeffs.iter().map(|a| self.ring.neg(a)).collect() }
    }

    pub fn scale(&self, c: &RingElem, f: &MPoly) -> MPoly {
        MPoly { coeffs: f.coeffs.iter().map(|a| self.ring.mul(c, a)).collect() }
    }

    pub fn mul(&self, f: &MPoly, g: &MPoly) -> MPoly {
        let fnz: Vec<usize> = (0..self.n).filter(|&i| !f.coeffs[i].is_zero()).collect();
        let gnz: Vec<usize> = (0..self.n).filter(|&i| !g.coeffs[i].is_zero()).collect();
        if let Some(es) = &self.exponents {
            let mut out = self.zero();
            for &i in &fnz {
                let di = &self.digits[i];
                for &j in &gnz {
                    let dj = &self.digits[j];
                    let mut idx = 0;
                    for k in 0..es.len() {
                        let s = di[k] + dj[k];
                        idx += if s >= es[k] { s - es[k] } else { s } * self.strides[k];
                    }
                    let m = self.ring.mul(&f.coeffs[i], &g.coeffs[j]);
                    out.coeffs[idx] = self.ring.add(&out.coeffs[idx], &m);
                }
            }
            return out;
        }
        // general moduli: full product, then reduce each variable from the top
        let big: Vec<usize> = self.degrees.iter().map(|d| 2 * d - 1).collect();
        let mut bstrides = Vec::with_capacity(big.len());
        let mut acc = 1;
        for &b in &big {
            bstrides.push(acc);
            acc *= b;
        }
        let mut prod = vec![self.ring.zero(); acc];
        for &i in &fnz {
            for &j in &gnz {
                let idx: usize = (0..self.r()).map(|k| (self.digits[i][k] + self.digits[j][k]) * bstrides[k]).sum();
                let m = self.ring.mul(&f.coeffs[i], &g.coeffs[j]);
                prod[idx] = self.ring.add(&prod[idx], &m);
            }
        }
        for k in 0..self.r() {
            let d = self.degrees[k];
            let t = &self.moduli[k];
            for idx in (0..acc).rev() {
                let dk = idx / bstrides[k] % big[k];
                if dk < d || prod[idx].is_zero() {
                    continue;
                }
                let c = std::mem::replace(&mut prod[idx], self.ring.zero());
                // X^dk = X^{dk-d} * (X^d - t(X))
                for s in 0..d {
                    let ts = &t.coeffs()[s];
                    if ts.is_zero() {
                        continue;
                    }
                    let target = idx - (d - s) * bstrides[k];
                    prod[target] = self.ring.sub(&prod[target], &self.ring.mul(&c, ts));
                }
            }
        }
        let mut out = self.zero();
        for (r, slot) in out.coeffs.iter_mut().enumerate() {
            let idx: usize = self.digits[r].iter().zip(&bstrides).map(|(e, s)| e * s).sum();
            *slot = std::mem::replace(&mut prod[idx], self.ring.zero());
        }
        out
    }

    pub fn pow(&self, f: &MPoly, mut e: u64) -> MPoly {
        let mut result = self.one();
        let mut base = f.clone();
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

    /// Embeds a univariate polynomial in variable `var` and reduces it.
    pub fn from_univariate(&self, f: &Poly, var: usize) -> MPoly {
        let pr = PolyRing::new(&self.ring);
        let reduced = pr.rem(f, &self.moduli[var]).expect("monic modulus");
        let mut out = self.zero();
        for (k, c) in reduced.coeffs().iter().enumerate() {
            let idx = k * self.strides[var];
            out.coeffs[idx] = c.clone();
        }
        out
    }

    /// Reduces every variable's degree below `deg t_i`.
    pub fn normal_form(&self, raw: &RawPoly) -> Result<MPoly> {
        let pr = PolyRing::new(&self.ring);
        let mut out = self.zero();
        for (exps, c) in &raw.terms {
            if c.is_zero() {
                continue;
            }
            if exps.len() > self.r() && exps[self.r()..].iter().any(|&e| e > 0) {
                return Err(Error::Parse(format!("term uses variable beyond x{}", self.r())));
            }
            let mut term = self.constant(c.clone());
            for (k, &e) in exps.iter().enumerate().take(self.r()) {
                if e == 0 {
                    continue;
                }
                let xe = pr.pow_mod(&pr.x(), e as u128, &self.moduli[k])?;
                term = self.mul(&term, &self.from_univariate(&xe, k));
            }
            out = self.add(&out, &term);
        }
        Ok(out)
    }

    /// The inversion automorphism `X_i -> X_i^{e_i - 1}` of an abelian ambient.
    pub fn tau(&self, f: &MPoly) -> Result<MPoly> {
        let es = self.exponents.as_ref().ok_or(Error::NotAbelian)?;
        let mut out = self.zero();
        for (idx, c) in f.coeffs.iter().enumerate() {
            let target: usize = self.digits[idx]
                .iter()
                .zip(es)
                .zip(&self.strides)
                .map(|((&i, &e), &s)| ((e - i) % e) * s)
                .sum();
            out.coeffs[target] = c.clone();
        }
        Ok(out)
    }

    pub fn coeff_vector(&self, f: &MPoly) -> Vec<RingElem> {
        f.coeffs.clone()
    }

    pub fn from_vector(&self, v: Vec<RingElem>) -> Result<MPoly> {
        if v.len() != self.n || v.iter().any(|c| c.coords().len() != self.ring.dims()) {
            return Err(Error::WrongRing);
        }
        Ok(MPoly { coeffs: v })
    }

    /// The same moduli reduced to the residue field.
    pub fn residue_ambient(&self) -> Ambient {
        let field = self.ring.residue_field();
        let pr = PolyRing::new(&self.ring);
        let moduli = self.moduli.iter().map(|t| pr.residue(t)).collect();
        Ambient::new_unchecked(field, moduli).expect("residues of monic moduli are monic")
    }

    pub fn residue(&self, f: &MPoly) -> MPoly {
        MPoly { coeffs: f.coeffs.iter().map(|c| self.ring.residue(c)).collect() }
    }

    /// Canonical lift of an element of the residue ambient.
    pub fn lift(&self, f: &MPoly) -> MPoly {
        MPoly { coeffs: f.coeffs.iter().map(|c| self.ring.lift_residue(c)).collect() }
    }

    pub fn to_raw(&self, f: &MPoly) -> RawPoly {
        let mut raw = RawPoly::new();
        for (idx, c) in f.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw.add_term(&self.ring, self.digits[idx].clone(), c);
            }
        }
        raw
    }

    pub fn to_text(&self, f: &MPoly) -> String {
        self.to_raw(f).to_text(&self.ring, self.r())
    }

    pub fn parse_element(&self, s: &str) -> Result<MPoly> {
        let terms = text::parse_terms(s, &self.ring)?;
        let mut raw = RawPoly::new();
        for t in terms {
            let mut exps = vec![0; self.r()];
            for (v, e) in t.vars {
                if v >= self.r() {
                    return Err(Error::Parse(format!("variable x{} not in ambient", v + 1)));
                }
                exps[v] += e;
            }
            raw.add_term(&self.ring, exps, &t.coeff);
        }
        self.normal_form(&raw)
    }

    pub fn to_json(&self, f: &MPoly) -> PolyJson {
        PolyJson {
            vars: self.r(),
            coeffs: f
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(idx, c)| (self.digits[idx].clone(), text::elem_to_json(c)))
                .collect(),
        }
    }

    pub fn from_json(&self, p: &PolyJson) -> Result<MPoly> {
        if p.vars != self.r() {
            return Err(Error::Parse(format!("expected {} variables, got {}", self.r(), p.vars)));
        }
        let mut raw = RawPoly::new();
        for (exps, c) in &p.coeffs {
            if exps.len() != self.r() {
                return Err(Error::Parse("exponent tuple has the wrong length".into()));
            }
            raw.add_term(&self.ring, exps.clone(), &text::elem_from_json(c, &self.ring)?);
        }
        self.normal_form(&raw)
    }

    /// Flat coordinate array of a code word (one integer per coordinate for
    /// single-coordinate rings, otherwise the coordinates of each entry in turn).
    pub fn vector_ints(&self, f: &MPoly) -> Vec<u64> {
        f.coeffs.iter().flat_map(|c| c.coords().iter().copied()).collect()
    }

    pub fn moduli_text(&self) -> Vec<String> {
        let pr = PolyRing::new(&self.ring);
        self.moduli.iter().enumerate().map(|(i, t)| pr.to_text(t, &text::var_name(i, self.r()))).collect()
    }
}
