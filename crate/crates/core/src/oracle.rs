//! Brute-force reference computations on small ambients.
//!
//! Nothing here uses class data, idempotents or exponent maps: submodules of
//! `R^n` are handled either as explicit sets (when `|R|^n <= 2^16`) or through a
//! canonical echelon form over the chain ring. In the echelon form every pivot
//! equals `a^k`, entries above a pivot are reduced modulo `a^k`, and
//! `a^(t-k)` times each pivot row is folded back into the rows below, so two
//! spans are equal exactly when their forms are equal.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;

use crate::ambient::{Ambient, MPoly};
use crate::error::{Error, Result};
use crate::ring::{ChainRing, RingElem};

/// Largest `|R|^n` for which the explicit-set tier is used.
pub const SET_TIER_LIMIT: u64 = 1 << 16;

/// An `R`-submodule of `R^n` in canonical echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleSpan {
    n: usize,
    /// `(pivot column, pivot valuation, row)`, by increasing pivot column.
    rows: Vec<(usize, u32, Vec<RingElem>)>,
}

impl ModuleSpan {
    pub fn zero(n: usize) -> Self {
        ModuleSpan { n, rows: vec![] }
    }

    /// Canonical echelon form of the span of `vectors`.
    pub fn new(ring: &ChainRing, n: usize, vectors: Vec<Vec<RingElem>>) -> Self {
        let t = ring.t();
        let mut pending: Vec<Vec<RingElem>> = vectors.into_iter().filter(|v| v.iter().any(|c| !c.is_zero())).collect();
        let mut rows: Vec<(usize, u32, Vec<RingElem>)> = Vec::new();
        for col in 0..n {
            let best = pending
                .iter()
                .enumerate()
                .map(|(i, v)| (ring.valuation(&v[col]), i))
                .filter(|&(k, _)| k < t)
                .min();
            let Some((k, idx)) = best else { continue };
            let mut pivot = pending.swap_remove(idx);
            let unit = ring.div_a_pow(&pivot[col], k).expect("valuation k");
            let inv = ring.inverse(&unit).expect("unit part");
            for c in pivot.iter_mut() {
                *c = ring.mul(&inv, c);
            }
            debug_assert_eq!(pivot[col], ring.a_pow(k));
            for v in pending.iter_mut() {
                if v[col].is_zero() {
                    continue;
                }
                let s = ring.div_a_pow(&v[col], k).expect("pivot has minimal valuation");
                for (c, pc) in v.iter_mut().zip(&pivot) {
                    *c = ring.sub(c, &ring.mul(&s, pc));
                }
            }
            if k > 0 {
                let m = ring.a_pow(t - k);
                let extra: Vec<RingElem> = pivot.iter().map(|c| ring.mul(&m, c)).collect();
                pending.push(extra);
            }
            pending.retain(|v| v.iter().any(|c| !c.is_zero()));
            rows.push((col, k, pivot));
        }
        // reduce entries above each pivot modulo its pivot
        for i in 0..rows.len() {
            let (col, k, pivot) = rows[i].clone();
            for row in rows[..i].iter_mut() {
                let x = &row.2[col];
                let rem = ring.rem_a_pow(x, k);
                if &rem == x {
                    continue;
                }
                let s = ring.div_a_pow(&ring.sub(x, &rem), k).expect("difference lies in a^k R");
                for (c, pc) in row.2.iter_mut().zip(&pivot) {
                    *c = ring.sub(c, &ring.mul(&s, pc));
                }
            }
        }
        ModuleSpan { n, rows }
    }

    pub fn rank_profile(&self) -> Vec<(usize, u32)> {
        self.rows.iter().map(|(c, k, _)| (*c, *k)).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RingElem]> {
        self.rows.iter().map(|(_, _, r)| r.as_slice())
    }

    /// `prod q^(t - k)` over pivots.
    pub fn cardinality(&self, ring: &ChainRing) -> BigUint {
        let q = BigUint::from(ring.residue_size());
        let e: u32 = self.rows.iter().map(|(_, k, _)| ring.t() - k).sum();
        q.pow(e)
    }

    pub fn contains(&self, ring: &ChainRing, v: &[RingElem]) -> bool {
        let mut v = v.to_vec();
        for (col, k, row) in &self.rows {
            if v[*col].is_zero() {
                continue;
            }
            let Ok(s) = ring.div_a_pow(&v[*col], *k) else { return false };
            for (c, rc) in v.iter_mut().zip(row) {
                *c = ring.sub(c, &ring.mul(&s, rc));
            }
        }
        v.iter().all(|c| c.is_zero())
    }

    pub fn add_vector(&self, ring: &ChainRing, v: Vec<RingElem>) -> Self {
        let mut vs: Vec<Vec<RingElem>> = self.rows.iter().map(|(_, _, r)| r.clone()).collect();
        vs.push(v);
        ModuleSpan::new(ring, self.n, vs)
    }

    pub fn sum(&self, ring: &ChainRing, other: &ModuleSpan) -> Self {
        let vs = self.rows.iter().chain(&other.rows).map(|(_, _, r)| r.clone()).collect();
        ModuleSpan::new(ring, self.n, vs)
    }

    /// Visits every element once: `sum c_i row_i` with `c_i` canonical modulo `a^(t - k_i)`.
    pub fn for_each_element(&self, ring: &ChainRing, budget: u128, mut f: impl FnMut(&[RingElem])) -> Result<()> {
        let size = self.cardinality(ring);
        let needed = u128::try_from(&size).unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let t = ring.t();
        let coeff_sets: Vec<Vec<RingElem>> = self
            .rows
            .iter()
            .map(|(_, k, _)| {
                let m = t - k;
                ring.elements().filter(|x| ring.rem_a_pow(x, m) == *x).collect()
            })
            .collect();
        let mut idx = vec![0usize; self.rows.len()];
        let mut cur = vec![ring.zero(); self.n];
        loop {
            f(&cur);
            // odometer step, updating `cur` incrementally
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return Ok(());
                }
                let row = &self.rows[pos].2;
                let old = &coeff_sets[pos][idx[pos]];
                idx[pos] += 1;
                if idx[pos] < coeff_sets[pos].len() {
                    let new = &coeff_sets[pos][idx[pos]];
                    let delta = ring.sub(new, old);
                    for (c, rc) in cur.iter_mut().zip(row) {
                        *c = ring.add(c, &ring.mul(&delta, rc));
                    }
                    break;
                }
                let delta = ring.neg(old);
                for (c, rc) in cur.iter_mut().zip(row) {
                    *c = ring.add(c, &ring.mul(&delta, rc));
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
}

fn check_budget(amb: &Ambient, budget: u128) -> Result<u128> {
    let size = amb.ring().size().pow(amb.n() as u32);
    let needed = u128::try_from(&size).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed)
}

/// Every element of `R^n` as an ambient element, in rank order.
fn ambient_elements(amb: &Ambient) -> impl Iterator<Item = MPoly> + '_ {
    let ring = amb.ring();
    let s = ring.size_u64().unwrap();
    let total = s.pow(amb.n() as u32);
    (0..total).map(move |mut idx| {
        let v = (0..amb.n())
            .map(|_| {
                let e = ring.element_at(idx % s);
                idx /= s;
                e
            })
            .collect();
        amb.from_vector(v).unwrap()
    })
}

/// The smallest ideal containing `gens`: the `R`-span of all monomial multiples.
pub fn ideal_span(amb: &Ambient, gens: &[MPoly]) -> ModuleSpan {
    let mut vectors = Vec::with_capacity(gens.len() * amb.n());
    for g in gens {
        for rank in 0..amb.n() {
            vectors.push(amb.coeff_vector(&amb.mul(&amb.unit_vector(rank), g)));
        }
    }
    ModuleSpan::new(amb.ring(), amb.n(), vectors)
}

/// Explicit-set ideal span by breadth-first additive closure (small ambients only).
pub fn ideal_span_set(amb: &Ambient, gens: &[MPoly]) -> Result<HashSet<Vec<RingElem>>> {
    let total = check_budget(amb, SET_TIER_LIMIT as u128)? as usize;
    let ring = amb.ring();
    let size = ring.size_u64().unwrap();
    let key = |v: &[RingElem]| v.iter().rev().fold(0u64, |acc, c| acc * size + ring.index_of(c)) as usize;
    let mut steps: Vec<Vec<RingElem>> = Vec::new();
    let mut step_keys = vec![false; total];
    step_keys[0] = true;
    for g in gens {
        for rank in 0..amb.n() {
            let m = amb.mul(&amb.unit_vector(rank), g);
            for r in ring.elements() {
                let v = amb.coeff_vector(&amb.scale(&r, &m));
                let k = key(&v);
                if !step_keys[k] {
                    step_keys[k] = true;
                    steps.push(v);
                }
            }
        }
    }
    let zero = vec![ring.zero(); amb.n()];
    let mut seen = vec![false; total];
    seen[0] = true;
    let mut out = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(v) = queue.pop_front() {
        for s in &steps {
            let w: Vec<RingElem> = v.iter().zip(s).map(|(a, b)| ring.add(a, b)).collect();
            let k = key(&w);
            if !seen[k] {
                seen[k] = true;
                out.insert(w.clone());
                queue.push_back(w);
            }
        }
    }
    Ok(out)
}

/// `{x : x . c = 0 for all c in K}` by scanning `R^n`.
pub fn dual_bruteforce(amb: &Ambient, k: &ModuleSpan, budget: u128) -> Result<ModuleSpan> {
    check_budget(amb, budget)?;
    let ring = amb.ring();
    let rows: Vec<&[RingElem]> = k.rows().collect();
    let mut span = ModuleSpan::zero(amb.n());
    for x in ambient_elements(amb) {
        let v = x.coeffs();
        let orthogonal = rows.iter().all(|row| {
            v.iter().zip(row.iter()).fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b))).is_zero()
        });
        if orthogonal && !span.contains(ring, v) {
            span = span.add_vector(ring, v.to_vec());
        }
    }
    Ok(span)
}

/// `{g : g f = 0}` in the ambient, by scanning.
pub fn annihilator_bruteforce(amb: &Ambient, f: &MPoly, budget: u128) -> Result<ModuleSpan> {
    check_budget(amb, budget)?;
    let ring = amb.ring();
    let mut span = ModuleSpan::zero(amb.n());
    for g in ambient_elements(amb) {
        if amb.mul(&g, f).is_zero() && !span.contains(ring, g.coeffs()) {
            span = span.add_vector(ring, g.coeffs().to_vec());
        }
    }
    Ok(span)
}

/// Minimum Hamming weight of a nonzero element.
pub fn distance_bruteforce(ring: &ChainRing, k: &ModuleSpan, budget: u128) -> Result<usize> {
    if k.rows.is_empty() {
        return Err(Error::ZeroCode);
    }
    let mut best = usize::MAX;
    k.for_each_element(ring, budget, |v| {
        let w = v.iter().filter(|c| !c.is_zero()).count();
        if w > 0 && w < best {
            best = w;
        }
    })?;
    Ok(best)
}

/// Every ideal of the ambient: canonical forms of all principal ideals, closed under sums.
pub fn ideal_census(amb: &Ambient, budget: u128) -> Result<Vec<ModuleSpan>> {
    check_budget(amb, budget)?;
    let ring = amb.ring();
    let mut found: HashSet<ModuleSpan> = HashSet::new();
    for f in ambient_elements(amb) {
        found.insert(ideal_span(amb, &[f]));
    }
    let mut all: Vec<ModuleSpan> = found.iter().cloned().collect();
    let mut i = 0;
    while i < all.len() {
        for j in 0..i {
            let s = all[i].sum(ring, &all[j]);
            if found.insert(s.clone()) {
                all.push(s);
            }
        }
        i += 1;
    }
    Ok(all)
}
