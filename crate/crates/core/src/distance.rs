//! Minimum Hamming distance of semisimple codes.
//!
//! The distance of a code equals that of its socle, which is an `F_q`-linear
//! code isomorphic to the residue code `L`. Everything is enumerated over `L`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::ambient::{Ambient, MPoly};
use crate::codes::SemisimpleCode;
use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Poly, PolyRing};

pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// `j' = t - 1` where `j < t`, otherwise `t`.
pub fn socle(k: &SemisimpleCode) -> SemisimpleCode {
    let t = k.t();
    let j = k.exponents().iter().map(|&v| if v < t { t - 1 } else { t }).collect();
    SemisimpleCode::from_exponents(k.decomposition(), j).expect("socle exponents stay in range")
}

/// An `F_q`-linear code in the residue ambient, stored as an `F_p`-basis of
/// flattened coefficient vectors (`l` prime-field digits per position).
#[derive(Clone, Debug)]
pub struct ResidueCode {
    pub p: u64,
    /// Prime-field digits per position.
    pub digits: usize,
    /// Code length.
    pub n: usize,
    pub basis: Vec<Vec<u64>>,
}

impl ResidueCode {
    /// The sum of the residue components of the selected classes.
    pub fn from_classes(dec: &Decomposition, selected: &[bool]) -> Self {
        let amb = dec.ambient();
        let res = amb.residue_ambient();
        let field = res.ring().clone();
        let l = field.dims();
        let p = field.p();
        let mut rows = Vec::new();
        for (c, _) in selected.iter().enumerate().filter(|(_, &s)| s) {
            let e = amb.residue(dec.idempotent(c));
            for rank in 0..res.n() {
                let shifted = res.mul(&res.unit_vector(rank), &e);
                for d in 0..l {
                    let mut unit = vec![0u64; l];
                    unit[d] = 1;
                    let b = field.from_coords(&unit).expect("unit digit vector");
                    rows.push(flatten(&res.scale(&b, &shifted), l));
                }
            }
        }
        let basis = if rows.is_empty() { rows } else { linalg::basis(&rows, p) };
        ResidueCode { p, digits: l, n: res.n(), basis }
    }

    /// `L` for a code: the residue components of classes with `j < t`.
    pub fn of_code(k: &SemisimpleCode) -> Self {
        let t = k.t();
        let sel: Vec<bool> = k.exponents().iter().map(|&v| v < t).collect();
        Self::from_classes(k.decomposition(), &sel)
    }

    /// `K mod a`: the residue components of classes with `j = 0`.
    pub fn residue_of_code(k: &SemisimpleCode) -> Self {
        let sel: Vec<bool> = k.exponents().iter().map(|&v| v == 0).collect();
        Self::from_classes(k.decomposition(), &sel)
    }

    /// Dimension over `F_q`.
    pub fn dimension(&self) -> usize {
        self.basis.len() / self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Number of codewords, `p^(dim_p)`, saturating.
    pub fn size(&self) -> u128 {
        (self.p as u128).checked_pow(self.basis.len() as u32).unwrap_or(u128::MAX)
    }

    fn weight(&self, v: &[u64]) -> usize {
        if self.digits == 1 {
            v.iter().filter(|&&x| x != 0).count()
        } else {
            v.chunks(self.digits).filter(|c| c.iter().any(|&x| x != 0)).count()
        }
    }

    /// Minimum weight of a nonzero codeword by exhaustive enumeration.
    pub fn min_weight(&self, budget: u128) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroCode);
        }
        let needed = self.size();
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let k = self.basis.len();
        let p = self.p;
        // the top `split` digits index independent chunks
        let mut split = 0;
        while split < k && (p as u128).pow(split as u32 + 1) <= 256 {
            split += 1;
        }
        let low = k - split;
        let chunks = p.pow(split as u32);
        let best = (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut v = vec![0u64; self.n * self.digits];
                let mut c = chunk;
                for row in &self.basis[low..] {
                    let d = c % p;
                    c /= p;
                    for (x, &b) in v.iter_mut().zip(row) {
                        *x = (*x + d * b) % p;
                    }
                }
                let mut best = usize::MAX;
                let mut counter = vec![0u64; low];
                loop {
                    let w = self.weight(&v);
                    if w > 0 && w < best {
                        best = w;
                    }
                    let mut i = 0;
                    loop {
                        if i == low {
                            return best;
                        }
                        for (x, &b) in v.iter_mut().zip(&self.basis[i]) {
                            *x = (*x + b) % p;
                        }
                        counter[i] += 1;
                        if counter[i] < p {
                            break;
                        }
                        counter[i] = 0;
                        i += 1;
                    }
                }
            })
            .min()
            .unwrap();
        Ok(best)
    }
}

fn flatten(f: &MPoly, l: usize) -> Vec<u64> {
    let mut v = Vec::with_capacity(f.coeffs().len() * l);
    for c in f.coeffs() {
        v.extend_from_slice(c.coords());
        v.resize(v.len().next_multiple_of(l), 0);
    }
    v
}

/// `d(K) = d(L)`.
pub fn min_distance(k: &SemisimpleCode, budget: u128) -> Result<usize> {
    if k.is_zero() {
        return Err(Error::ZeroCode);
    }
    ResidueCode::of_code(k).min_weight(budget)
}

/// `d(K)` next to `d(K mod a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenselDistance {
    pub distance: usize,
    /// `None` when the residue code is zero.
    pub residue_distance: Option<usize>,
    pub equal: Option<bool>,
    pub note: Option<String>,
}

pub fn hensel_lift_distance_check(k: &SemisimpleCode, budget: u128) -> Result<HenselDistance> {
    let distance = min_distance(k, budget)?;
    let residue = ResidueCode::residue_of_code(k);
    if residue.is_zero() {
        return Ok(HenselDistance {
            distance,
            residue_distance: None,
            equal: None,
            note: Some("residue code is zero, comparison skipped".into()),
        });
    }
    let rd = residue.min_weight(budget)?;
    if rd < distance || (k.is_hensel_lift() && rd != distance) {
        return Err(Error::Internal(format!("d(K) = {distance} against residue distance {rd}")));
    }
    Ok(HenselDistance { distance, residue_distance: Some(rd), equal: Some(rd == distance), note: None })
}

/// Product-type lower bound `min_i d_i * delta_i` for abelian codes.
///
/// Classes of `L` are grouped by the minimal polynomial of their first root
/// coordinate, in class order. `d_i` is the distance of the univariate code
/// whose nonzeros are the roots of groups `i..`, and `delta_i` that of `L`
/// restricted to `X_1 = beta_i` for a root `beta_i` of group `i`, an ideal
/// in `r - 1` variables over `F_q(beta_i)`. For `r = 1`, `delta_i = 1`.
pub fn distance_bound(k: &SemisimpleCode, budget: u128) -> Result<usize> {
    let dec = k.decomposition();
    let amb = dec.ambient();
    if amb.abelian_exponents().is_none() {
        return Err(Error::NotAbelian);
    }
    if k.is_zero() {
        return Err(Error::ZeroCode);
    }
    let t = k.t();
    let sd = dec.splitting();
    let selected: Vec<bool> = k.exponents().iter().map(|&v| v < t).collect();
    let mut groups: Vec<usize> = Vec::new();
    for (c, class) in dec.classes().iter().enumerate() {
        if selected[c] {
            let g = sd.factor_of_root(0, class.repr()[0]);
            if !groups.contains(&g) {
                groups.push(g);
            }
        }
    }
    let field = amb.ring().residue_field();
    let fr = PolyRing::new(&field);
    let res = amb.residue_ambient();
    let t1 = res.moduli()[0].clone();
    let uni = Arc::new(Decomposition::new(Ambient::new(field.clone(), vec![t1.clone()])?, 0)?);
    let e_sel = (0..dec.num_classes())
        .filter(|&c| selected[c])
        .fold(res.zero(), |acc, c| res.add(&acc, &amb.residue(dec.idempotent(c))));
    let mut bound = usize::MAX;
    for i in 0..groups.len() {
        let tail: Vec<Poly> = groups[i..].iter().map(|&g| sd.factors[0][g].clone()).collect();
        let gen = fr.exact_div(&t1, &fr.product(&tail))?;
        let ucode = SemisimpleCode::from_generators(&uni, &[uni.ambient().from_univariate(&gen, 0)])?;
        let d = min_distance(&ucode, budget)?;
        let delta = if amb.r() == 1 { 1 } else { restricted_distance(&res, &e_sel, &sd.factors[0][groups[i]], budget)? };
        bound = bound.min(d * delta);
    }
    Ok(bound)
}

/// Distance of the ideal generated by `e(beta, X_2, ..., X_r)` over `F_q(beta)`.
fn restricted_distance(res: &Ambient, e: &MPoly, min_poly: &Poly, budget: u128) -> Result<usize> {
    let base = res.ring();
    let fi = base.extend(min_poly)?;
    let beta = fi.generator(fi.num_levels() - 1);
    let moduli: Vec<Poly> =
        res.moduli()[1..].iter().map(|m| Poly::new(m.coeffs().iter().map(|c| fi.embed(c)).collect())).collect();
    let sub = Ambient::new(fi.clone(), moduli)?;
    let mut coeffs = vec![fi.zero(); sub.n()];
    for (rank, c) in e.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let exps = res.exps_of(rank);
        let term = fi.mul(&fi.embed(c), &fi.pow(&beta, exps[0] as u128));
        let r = sub.rank(&exps[1..]);
        coeffs[r] = fi.add(&coeffs[r], &term);
    }
    let g = sub.from_vector(coeffs)?;
    let sdec = Arc::new(Decomposition::new(sub, 0)?);
    let code = SemisimpleCode::from_generators(&sdec, &[g])?;
    min_distance(&code, budget)
}
