//! Semisimple codes: ideals of a semisimple ambient described by one exponent
//! per cyclotomic class.

use std::sync::Arc;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::ambient::{Ambient, MPoly};
use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::factorize::RootLabel;

/// The ideal `sum_C a^{j_C} e_C` of a decomposed ambient.
#[derive(Clone, Debug)]
pub struct SemisimpleCode {
    dec: Arc<Decomposition>,
    j: Vec<u32>,
}

impl PartialEq for SemisimpleCode {
    fn eq(&self, other: &Self) -> bool {
        self.j == other.j && self.dec.ambient() == other.dec.ambient()
    }
}

impl Eq for SemisimpleCode {}

/// `G_0, ..., G_t` (each a sum of class idempotents) and the single generator `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalGenerators {
    pub family: Vec<MPoly>,
    pub generator: MPoly,
}

impl SemisimpleCode {
    /// Builds a code from its exponent map (one entry per class, in class order).
    pub fn from_exponents(dec: &Arc<Decomposition>, j: Vec<u32>) -> Result<Self> {
        let t = dec.ambient().ring().t();
        if j.len() != dec.num_classes() {
            return Err(Error::ClassCount { expected: dec.num_classes(), found: j.len() });
        }
        if let Some((class, &value)) = j.iter().enumerate().find(|(_, &v)| v > t) {
            return Err(Error::ExponentOutOfRange { class, value, t });
        }
        Ok(SemisimpleCode { dec: Arc::clone(dec), j })
    }

    /// The ideal generated by `gens`: on each component the smallest valuation among the images.
    pub fn from_generators(dec: &Arc<Decomposition>, gens: &[MPoly]) -> Result<Self> {
        let t = dec.ambient().ring().t();
        for g in gens {
            if g.coeffs().len() != dec.ambient().n() {
                return Err(Error::WrongRing);
            }
        }
        let j = (0..dec.num_classes())
            .map(|c| gens.iter().map(|g| dec.valuation_in(c, g)).min().unwrap_or(t))
            .collect();
        Ok(SemisimpleCode { dec: Arc::clone(dec), j })
    }

    pub fn full(dec: &Arc<Decomposition>) -> Self {
        SemisimpleCode { dec: Arc::clone(dec), j: vec![0; dec.num_classes()] }
    }

    pub fn zero(dec: &Arc<Decomposition>) -> Self {
        let t = dec.ambient().ring().t();
        SemisimpleCode { dec: Arc::clone(dec), j: vec![t; dec.num_classes()] }
    }

    /// `<a^k>`, the same exponent on every class.
    pub fn uniform(dec: &Arc<Decomposition>, k: u32) -> Result<Self> {
        Self::from_exponents(dec, vec![k; dec.num_classes()])
    }

    pub fn decomposition(&self) -> &Arc<Decomposition> {
        &self.dec
    }

    pub fn ambient(&self) -> &Ambient {
        self.dec.ambient()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.j
    }

    pub fn t(&self) -> u32 {
        self.dec.ambient().ring().t()
    }

    pub fn is_zero(&self) -> bool {
        let t = self.t();
        self.j.iter().all(|&v| v == t)
    }

    /// Canonical generator family: `G_{i+1}` sums the idempotents of classes with `j = i`,
    /// `G_0` those with `j = t`; `G = sum a^i G_{i+1}`.
    pub fn canonical_generators(&self) -> CanonicalGenerators {
        let amb = self.ambient();
        let ring = amb.ring();
        let t = self.t();
        let mut family = vec![amb.zero(); t as usize + 1];
        for (c, &v) in self.j.iter().enumerate() {
            let slot = if v == t { 0 } else { v as usize + 1 };
            family[slot] = amb.add(&family[slot], self.dec.idempotent(c));
        }
        let mut generator = amb.zero();
        for i in 0..t {
            generator = amb.add(&generator, &amb.scale(&ring.a_pow(i), &family[i as usize + 1]));
        }
        CanonicalGenerators { family, generator }
    }

    pub fn generator(&self) -> MPoly {
        self.canonical_generators().generator
    }

    /// Number of `F_q`-digits: `sum_C (t - j_C) |C|`.
    pub fn log_q_cardinality(&self) -> u64 {
        let t = self.t();
        self.j.iter().zip(self.dec.classes()).map(|(&v, c)| u64::from(t - v) * c.size() as u64).sum()
    }

    /// `|K| = q^(sum_C (t - j_C) |C|)`.
    pub fn cardinality(&self) -> BigUint {
        let q = BigUint::from(self.ambient().ring().residue_size());
        q.pow(self.log_q_cardinality() as u32)
    }

    pub fn contains(&self, f: &MPoly) -> bool {
        self.j.iter().enumerate().all(|(c, &v)| self.dec.valuation_in(c, f) >= v)
    }

    /// Every exponent is `0` or `t`, and at least one is `0`.
    pub fn is_hensel_lift(&self) -> bool {
        let t = self.t();
        self.j.iter().all(|&v| v == 0 || v == t) && self.j.contains(&0)
    }

    /// Exponentwise maximum (the intersection of ideals).
    pub fn intersect(&self, other: &Self) -> Self {
        let j = self.j.iter().zip(&other.j).map(|(&a, &b)| a.max(b)).collect();
        SemisimpleCode { dec: Arc::clone(&self.dec), j }
    }

    /// Exponentwise minimum (the sum of ideals).
    pub fn sum(&self, other: &Self) -> Self {
        let j = self.j.iter().zip(&other.j).map(|(&a, &b)| a.min(b)).collect();
        SemisimpleCode { dec: Arc::clone(&self.dec), j }
    }

    pub fn to_json(&self) -> Value {
        let sd = self.dec.splitting();
        let exps: Vec<Value> = self
            .dec
            .classes()
            .iter()
            .zip(&self.j)
            .map(|(c, &v)| {
                let repr: Vec<Value> = c.labels(sd, c.repr()).iter().map(RootLabel::to_json).collect();
                json!([repr, v])
            })
            .collect();
        json!({
            "ambient": ambient_json(self.ambient()),
            "exponents": exps,
            "cardinality": self.cardinality().to_string(),
            "generator": self.ambient().to_text(&self.generator()),
        })
    }
}

/// `{"ring": descriptor, "moduli": [...]}`.
pub fn ambient_json(amb: &Ambient) -> Value {
    json!({
        "ring": amb.ring().descriptor().map(|d| serde_json::to_value(d).unwrap()),
        "moduli": amb.moduli_text(),
    })
}

/// All `(t+1)^N` codes, class 0 varying fastest.
pub fn enumerate_codes(dec: &Arc<Decomposition>) -> impl Iterator<Item = SemisimpleCode> + '_ {
    let n = dec.num_classes();
    let base = dec.ambient().ring().t() as u64 + 1;
    let total = base.checked_pow(n as u32).expect("too many codes to enumerate");
    (0..total).map(move |mut idx| {
        let j = (0..n)
            .map(|_| {
                let v = (idx % base) as u32;
                idx /= base;
                v
            })
            .collect();
        SemisimpleCode { dec: Arc::clone(dec), j }
    })
}

/// Number of semisimple codes, `(t+1)^N`.
pub fn count_codes(dec: &Decomposition) -> BigUint {
    BigUint::from(dec.ambient().ring().t() + 1).pow(dec.num_classes() as u32)
}
