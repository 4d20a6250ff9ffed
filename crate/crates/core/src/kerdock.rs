//! Generalized Kerdock codes from the trace code over a Galois ring of
//! characteristic 4, and their polycyclic multivariable form.

use std::collections::HashSet;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::ambient::{Ambient, MPoly};
use crate::error::{Error, Result};
use crate::factorize::irreducible_of_degree;
use crate::poly::{prime_factors, Poly, PolyRing};
use crate::ring::{ChainRing, ChainRingDesc, RingElem};

/// Largest projected code the demo will build.
const MAX_WORDS: u128 = 1 << 16;

/// `x = gamma_0 + 2 gamma_1` with both digits Teichmüller.
pub fn teichmuller_decompose(ring: &ChainRing, x: &RingElem) -> (RingElem, RingElem) {
    let mut d = ring.teichmuller_expansion(x);
    let g1 = if d.len() > 1 { d.swap_remove(1) } else { ring.zero() };
    (d.swap_remove(0), g1)
}

/// `a (+) b = gamma_0(a + b)`, the field addition on Teichmüller elements.
pub fn oplus(ring: &ChainRing, a: &RingElem, b: &RingElem) -> RingElem {
    teichmuller_decompose(ring, &ring.add(a, b)).0
}

/// `R = GR(q^2, 4)` with `q = 2^l`, its extension `S` of odd degree `m`, and
/// the Teichmüller data used by the construction.
#[derive(Clone, Debug)]
pub struct KerdockInstance {
    pub l: usize,
    pub m: usize,
    pub r: ChainRing,
    pub s: ChainRing,
    /// Generator of the Teichmüller group of `S`.
    pub theta: RingElem,
    /// Order of `theta`, `q^m - 1`.
    pub tau: usize,
    /// `Gamma(R) = {w_0 = 0, w_1, ..., w_{q-1}}`.
    pub gamma_r: Vec<RingElem>,
    /// Generators of order 2 of `U = 1 + 2R`.
    pub eta: Vec<RingElem>,
}

impl KerdockInstance {
    pub fn new(l: usize, m: usize) -> Result<Self> {
        if l == 0 || m < 3 || m.is_multiple_of(2) {
            return Err(Error::Precondition(format!("need l >= 1 and odd m >= 3, got l = {l}, m = {m}")));
        }
        let words = 1u128.checked_shl((2 * l * (m + 1)) as u32).unwrap_or(u128::MAX);
        if words > MAX_WORDS {
            return Err(Error::BudgetExceeded { needed: words, budget: MAX_WORDS });
        }
        let r = ChainRing::new(&ChainRingDesc::galois(2, 2, l))?;
        let fq = r.residue_field();
        let lifted = PolyRing::new(&r).lift(&irreducible_of_degree(&fq, m));
        let s = r.extend(&lifted)?;
        let fs = s.residue_field();
        let tau = (fs.residue_size() - 1) as usize;
        let primes = prime_factors(tau as u64);
        let primitive = (1..tau as u64 + 1)
            .map(|i| fs.element_at(i))
            .find(|x| primes.iter().all(|&p| !fs.is_one(&fs.pow(x, (tau as u64 / p) as u128))))
            .expect("the multiplicative group is cyclic");
        let theta = s.teichmuller_lift(&s.lift_residue(&primitive));
        let gamma_r = r.teichmuller_set();
        let two = r.from_int(2);
        let eta = (0..l)
            .map(|j| {
                let mut unit = vec![0u64; l];
                unit[j] = 1;
                let b = r.teichmuller_lift(&r.lift_residue(&fq.from_coords(&unit).expect("digit vector")));
                r.add(&r.one(), &r.mul(&two, &b))
            })
            .collect();
        Ok(KerdockInstance { l, m, r, s, theta, tau, gamma_r, eta })
    }

    pub fn q(&self) -> usize {
        1 << self.l
    }

    /// `(Tr(xi), Tr(xi theta), ..., Tr(xi theta^{tau-1}))`.
    fn traces(&self, xi: &RingElem) -> Vec<RingElem> {
        let mut out = Vec::with_capacity(self.tau);
        let mut x = xi.clone();
        for _ in 0..self.tau {
            out.push(self.s.trace_to(&self.r, &x).expect("R is a prefix of S"));
            x = self.s.mul(&x, &self.theta);
        }
        out
    }

    /// `(Tr(xi) + a, Tr(xi theta) + a, ..., Tr(xi theta^{tau-1}) + a)`.
    pub fn base_word(&self, xi: &RingElem, a: &RingElem) -> Vec<RingElem> {
        self.traces(xi).iter().map(|tr| self.r.add(tr, a)).collect()
    }

    /// All words of `L`, indexed by `(xi, a)` with `a` varying fastest.
    pub fn base_linear_code(&self) -> Vec<Vec<RingElem>> {
        let xis: Vec<RingElem> = self.s.elements().collect();
        let avals: Vec<RingElem> = self.r.elements().collect();
        xis.par_iter()
            .flat_map_iter(|xi| {
                let tr = self.traces(xi);
                avals.iter().map(move |a| tr.iter().map(|t| self.r.add(t, a)).collect::<Vec<_>>())
            })
            .collect()
    }

    /// `gamma_*(a) = (gamma_1(a), gamma_1(a) (+) w_1 gamma_0(a), ...)` as indices into `gamma_r`.
    pub fn project_symbol(&self, a: &RingElem) -> Vec<u8> {
        let (g0, g1) = teichmuller_decompose(&self.r, a);
        self.gamma_r
            .iter()
            .map(|w| {
                let v = oplus(&self.r, &g1, &self.r.mul(w, &g0));
                self.gamma_index(&v)
            })
            .collect()
    }

    fn gamma_index(&self, v: &RingElem) -> u8 {
        self.gamma_r.iter().position(|w| w == v).expect("value is Teichmüller") as u8
    }

    /// The projection of a word of `L`, length `tau q`.
    pub fn project(&self, word: &[RingElem]) -> Vec<u8> {
        word.iter().flat_map(|a| self.project_symbol(a)).collect()
    }

    pub fn kerdock_project(&self, code: &[Vec<RingElem>]) -> Vec<Vec<u8>> {
        let table: Vec<Vec<u8>> = self.r.elements().map(|a| self.project_symbol(&a)).collect();
        code.par_iter()
            .map(|w| w.iter().flat_map(|a| table[self.r.index_of(a) as usize].iter().copied()).collect())
            .collect()
    }

    /// `(+)` table on `Gamma(R)` indices.
    pub fn oplus_table(&self) -> Vec<Vec<u8>> {
        self.gamma_r
            .iter()
            .map(|a| self.gamma_r.iter().map(|b| self.gamma_index(&oplus(&self.r, a, b))).collect())
            .collect()
    }

    /// The ambient `R[X_1, ..., X_r]/<X_1^tau - 1, X_2^2 - 1, ...>`, `r = l + 1`,
    /// built without the semisimplicity check.
    pub fn polycyclic_ambient(&self) -> Result<Ambient> {
        let pr = PolyRing::new(&self.r);
        let mut x_tau = vec![0i64; self.tau + 1];
        x_tau[0] = -1;
        x_tau[self.tau] = 1;
        let mut moduli: Vec<Poly> = vec![pr.from_ints(&x_tau)];
        moduli.extend((0..self.l).map(|_| pr.from_ints(&[-1, 0, 1])));
        Ambient::new_unchecked(self.r.clone(), moduli)
    }

    /// `sum (Tr(xi theta^{i_1}) + a) eta_1^{i_2} ... eta_l^{i_r} X_1^{i_1} ... X_r^{i_r}`.
    pub fn embed_word(&self, amb: &Ambient, word: &[RingElem]) -> MPoly {
        let coeffs = (0..amb.n())
            .map(|rank| {
                let exps = amb.exps_of(rank);
                exps[1..]
                    .iter()
                    .zip(&self.eta)
                    .filter(|(&i, _)| i == 1)
                    .fold(word[exps[0]].clone(), |acc, (_, eta)| self.r.mul(&acc, eta))
            })
            .collect();
        amb.from_vector(coeffs).expect("length matches the ambient")
    }

    /// The multivariable code equivalent to `L (x) U`.
    pub fn polycyclic_embed(&self, code: &[Vec<RingElem>]) -> Result<(Ambient, Vec<MPoly>)> {
        let amb = self.polycyclic_ambient()?;
        let polys = code.iter().map(|w| self.embed_word(&amb, w)).collect();
        Ok((amb, polys))
    }

    /// Both readings of `(q-1)/q (n - sqrt n) - q`: `n = tau q` and `n = q^m`.
    pub fn formula_values(&self) -> Vec<(usize, f64)> {
        let q = self.q() as f64;
        [self.tau * self.q(), self.q().pow(self.m as u32)]
            .into_iter()
            .map(|n| (n, (q - 1.0) / q * (n as f64 - (n as f64).sqrt()) - q))
            .collect()
    }
}

/// Minimum Hamming distance between distinct words.
pub fn exact_distance(code: &[Vec<u8>]) -> Option<usize> {
    (0..code.len())
        .into_par_iter()
        .filter_map(|i| {
            code[i + 1..]
                .iter()
                .map(|w| w.iter().zip(&code[i]).filter(|(a, b)| a != b).count())
                .min()
        })
        .min()
}

/// Two words whose coordinatewise `(+)`-sum is not a codeword.
pub fn nonlinearity_witness(code: &[Vec<u8>], table: &[Vec<u8>]) -> Option<(usize, usize)> {
    let set: HashSet<&[u8]> = code.iter().map(Vec::as_slice).collect();
    for i in 0..code.len() {
        for j in i + 1..code.len() {
            let sum: Vec<u8> = code[i].iter().zip(&code[j]).map(|(&a, &b)| table[a as usize][b as usize]).collect();
            if !set.contains(sum.as_slice()) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Summary of one demo run.
#[derive(Clone, Debug)]
pub struct KerdockReport {
    pub q: usize,
    pub m: usize,
    pub base_cardinality: usize,
    pub length: usize,
    pub cardinality: usize,
    pub exact_distance: usize,
    pub formula_values: Vec<(usize, f64)>,
    pub witness: Option<(usize, usize)>,
    pub embedded_cardinality: usize,
}

impl KerdockReport {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "m": self.m,
            "length": self.length,
            "cardinality": self.cardinality,
            "base_cardinality": self.base_cardinality,
            "exact_distance": self.exact_distance,
            "formula_value": self.formula_values.iter().map(|(n, v)| json!({"n": n, "value": v})).collect::<Vec<_>>(),
            "nonlinear": self.witness.is_some(),
            "witness": self.witness.map(|(i, j)| json!([i, j])),
            "embedded_cardinality": self.embedded_cardinality,
        })
    }
}

pub fn run_demo(l: usize, m: usize) -> Result<KerdockReport> {
    let inst = KerdockInstance::new(l, m)?;
    let base = inst.base_linear_code();
    let projected = inst.kerdock_project(&base);
    let distinct: HashSet<&[u8]> = projected.iter().map(Vec::as_slice).collect();
    let (_, embedded) = inst.polycyclic_embed(&base)?;
    let embedded: HashSet<&MPoly> = embedded.iter().collect();
    Ok(KerdockReport {
        q: inst.q(),
        m,
        base_cardinality: base.iter().collect::<HashSet<_>>().len(),
        length: inst.tau * inst.q(),
        cardinality: distinct.len(),
        exact_distance: exact_distance(&projected).ok_or(Error::ZeroCode)?,
        formula_values: inst.formula_values(),
        witness: nonlinearity_witness(&projected, &inst.oplus_table()),
        embedded_cardinality: embedded.len(),
    })
}
