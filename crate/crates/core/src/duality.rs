//! Duals of abelian semisimple codes and self-dual codes.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::ambient::MPoly;
use crate::codes::SemisimpleCode;
use crate::decompose::Decomposition;
use crate::error::{Error, Result};

/// `inv[c]` is the class of `mu^{-1}` for `mu` in class `c`.
pub fn class_inverses(dec: &Decomposition) -> Result<Vec<usize>> {
    let es = dec.ambient().abelian_exponents().ok_or(Error::NotAbelian)?;
    let mut owner: HashMap<&[usize], usize> = HashMap::new();
    for (c, class) in dec.classes().iter().enumerate() {
        for m in &class.members {
            owner.insert(m.as_slice(), c);
        }
    }
    dec.classes()
        .iter()
        .map(|class| {
            let neg: Vec<usize> = class.repr().iter().zip(es).map(|(&k, &e)| (e - k) % e).collect();
            owner
                .get(neg.as_slice())
                .copied()
                .ok_or_else(|| Error::Internal("inverse root tuple has no class".into()))
        })
        .collect()
}

/// `K^perp`, with exponent map `j(C^{-1}) = t - j(C)`.
pub fn dual(k: &SemisimpleCode) -> Result<SemisimpleCode> {
    let inv = class_inverses(k.decomposition())?;
    let t = k.t();
    let mut j = vec![0; inv.len()];
    for (c, &v) in k.exponents().iter().enumerate() {
        j[inv[c]] = t - v;
    }
    SemisimpleCode::from_exponents(k.decomposition(), j)
}

/// Generators `tau(G_0), a tau(G_t), ..., a^{t-1} tau(G_2)` of the dual.
pub fn dual_generators(k: &SemisimpleCode) -> Result<Vec<MPoly>> {
    let amb = k.ambient();
    let ring = amb.ring();
    let t = k.t() as usize;
    let family = k.canonical_generators().family;
    let mut gens = vec![amb.tau(&family[0])?];
    for i in 1..t {
        gens.push(amb.scale(&ring.a_pow(i as u32), &amb.tau(&family[t + 1 - i])?));
    }
    Ok(gens)
}

/// The dual rebuilt from [`dual_generators`].
pub fn dual_from_generators(k: &SemisimpleCode) -> Result<SemisimpleCode> {
    SemisimpleCode::from_generators(k.decomposition(), &dual_generators(k)?)
}

/// `|K^perp| = q^(sum_C j_C |C|)`.
pub fn dual_cardinality(k: &SemisimpleCode) -> BigUint {
    let digits: u64 = k.exponents().iter().zip(k.decomposition().classes()).map(|(&v, c)| u64::from(v) * c.size() as u64).sum();
    BigUint::from(k.ambient().ring().residue_size()).pow(digits as u32)
}

pub fn is_selfdual(k: &SemisimpleCode) -> Result<bool> {
    let inv = class_inverses(k.decomposition())?;
    let t = k.t();
    let j = k.exponents();
    Ok((0..j.len()).all(|c| j[inv[c]] == t - j[c]))
}

/// Whether some group algebra over a chain ring with residue characteristic
/// `p` and nilpotency `t` holds a self-dual code, for a group of the given order.
pub fn selfdual_group_code_exists(p: u64, t: u32, group_order: u64) -> bool {
    if p % 2 == 1 {
        t.is_multiple_of(2)
    } else {
        (u64::from(t) * group_order).is_multiple_of(2)
    }
}

/// Outcome of the non-trivial self-dual criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualCriterion {
    pub exists: bool,
    /// Smallest `i >= 1` with `q^i = -1 mod lcm(e)`, when there is one.
    pub minus_one_power: Option<u64>,
    pub note: String,
}

/// Whether the ambient holds a self-dual code other than `<a^{t/2}>`.
pub fn nontrivial_selfdual_criterion(dec: &Decomposition) -> Result<SelfDualCriterion> {
    let es = dec.ambient().abelian_exponents().ok_or(Error::NotAbelian)?;
    let t = dec.ambient().ring().t();
    let l = es.iter().fold(1u64, |acc, &e| crate::factorize::lcm(acc as usize, e) as u64);
    let q = (dec.ambient().ring().residue_size() % u128::from(l)) as u64;
    let minus_one = (l - 1) % l;
    let mut x = q % l;
    let mut minus_one_power = None;
    for i in 1..=l {
        if x == minus_one {
            minus_one_power = Some(i);
            break;
        }
        if x == 1 % l {
            break;
        }
        x = x * q % l;
    }
    let inv = class_inverses(dec)?;
    let asymmetric = inv.iter().enumerate().any(|(c, &d)| c != d);
    if asymmetric == minus_one_power.is_some() {
        return Err(Error::Internal("power test and class test disagree".into()));
    }
    if t % 2 == 1 {
        return Ok(SelfDualCriterion {
            exists: false,
            minus_one_power,
            note: format!("t = {t} is odd, so no self-dual code exists"),
        });
    }
    let note = match minus_one_power {
        Some(i) => format!("q^{i} = -1 mod {l}, every class is self-inverse"),
        None => format!("q^i never hits -1 mod {l}"),
    };
    Ok(SelfDualCriterion { exists: asymmetric, minus_one_power, note })
}

pub fn nontrivial_selfdual_exists(dec: &Decomposition) -> Result<bool> {
    Ok(nontrivial_selfdual_criterion(dec)?.exists)
}

/// Exponents `t/2 - 1` on the smallest class `C` with `C != C^{-1}`,
/// `t/2 + 1` on `C^{-1}` and `t/2` elsewhere.
pub fn build_nontrivial_selfdual(dec: &Arc<Decomposition>) -> Result<SemisimpleCode> {
    let crit = nontrivial_selfdual_criterion(dec)?;
    if !crit.exists {
        return Err(Error::Precondition(format!("no non-trivial self-dual code: {}", crit.note)));
    }
    let inv = class_inverses(dec)?;
    let half = dec.ambient().ring().t() / 2;
    let c = (0..inv.len()).find(|&c| inv[c] != c).expect("criterion found an asymmetric class");
    let mut j = vec![half; inv.len()];
    j[c] = half - 1;
    j[inv[c]] = half + 1;
    let k = SemisimpleCode::from_exponents(dec, j)?;
    debug_assert!(is_selfdual(&k)?);
    Ok(k)
}
