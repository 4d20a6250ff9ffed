//! Hensel lifting of coprime factorizations and of idempotents.

use crate::ambient::{Ambient, MPoly};
use crate::error::{Error, Result};
use crate::factorize::factor_squarefree;
use crate::poly::{Poly, PolyRing};
use crate::ring::ChainRing;

/// A monic polynomial together with the lift of a residue factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedFactorization {
    pub f: Poly,
    pub factors: Vec<Poly>,
    pub residue_factors: Vec<Poly>,
}

/// Lifts a pairwise-coprime monic factorization of `residue(f)` to `ring`.
/// Factors are returned in the order of `residue_factors`.
pub fn lift_factorization(ring: &ChainRing, f: &Poly, residue_factors: &[Poly]) -> Result<LiftedFactorization> {
    let pr = PolyRing::new(ring);
    let field = ring.residue_field();
    let fr = PolyRing::new(&field);
    if !pr.is_monic(f) || residue_factors.iter().any(|g| !fr.is_monic(g)) {
        return Err(Error::NotMonic);
    }
    if fr.product(residue_factors) != pr.residue(f) {
        return Err(Error::ResidueMismatch);
    }
    for (i, g) in residue_factors.iter().enumerate() {
        for h in &residue_factors[i + 1..] {
            if fr.gcd(g, h).degree() != Some(0) {
                return Err(Error::NotCoprime);
            }
        }
    }
    let mut factors = Vec::with_capacity(residue_factors.len());
    let mut rest = f.clone();
    for (i, g) in residue_factors.iter().enumerate() {
        if i + 1 == residue_factors.len() {
            factors.push(rest.clone());
            break;
        }
        let h = fr.product(&residue_factors[i + 1..]);
        let (gl, hl) = lift_pair(ring, &rest, g, &h);
        factors.push(gl);
        rest = hl;
    }
    if pr.product(&factors) != *f {
        return Err(Error::Internal("lifted factors do not multiply back".into()));
    }
    Ok(LiftedFactorization { f: f.clone(), factors, residue_factors: residue_factors.to_vec() })
}

/// Linear lifting of `f = g h` one power of `a` at a time.
fn lift_pair(ring: &ChainRing, f: &Poly, g: &Poly, h: &Poly) -> (Poly, Poly) {
    let pr = PolyRing::new(ring);
    let field = ring.residue_field();
    let fr = PolyRing::new(&field);
    let (_, s, t) = fr.ext_gcd(g, h);
    let mut gl = pr.lift(g);
    let mut hl = pr.lift(h);
    for k in 1..ring.t() {
        let err = pr.sub(f, &pr.mul(&gl, &hl));
        if err.is_zero() {
            break;
        }
        let e = Poly::new(
            err.coeffs().iter().map(|c| ring.div_a_pow(c, k).expect("error lies in a^k R")).collect(),
        );
        let eb = pr.residue(&e);
        let dg = fr.rem(&fr.mul(&t, &eb), g).unwrap();
        let dh = fr.rem(&fr.mul(&s, &eb), h).unwrap();
        let ak = ring.a_pow(k);
        gl = pr.add(&gl, &pr.scale(&ak, &pr.lift(&dg)));
        hl = pr.add(&hl, &pr.scale(&ak, &pr.lift(&dh)));
    }
    (gl, hl)
}

/// Factors a monic polynomial with square-free residue into monic basic
/// irreducibles over `ring`, sorted by their residues.
pub fn hensel_factor(ring: &ChainRing, f: &Poly, seed: u64) -> Result<LiftedFactorization> {
    let field = ring.residue_field();
    let pr = PolyRing::new(ring);
    let residues = factor_squarefree(&field, &pr.residue(f), seed)?;
    lift_factorization(ring, f, &residues)
}

/// The unique idempotent congruent to `e` modulo `a`.
pub fn lift_idempotent(amb: &Ambient, e: &MPoly) -> Result<MPoly> {
    let ring = amb.ring();
    let sq = amb.mul(e, e);
    if amb.sub(&sq, e).coeffs().iter().any(|c| ring.valuation(c) == 0) {
        return Err(Error::NotIdempotent);
    }
    let three = ring.from_int(3);
    let two = ring.from_int(2);
    let mut cur = e.clone();
    let mut cur_sq = sq;
    let mut steps = 0;
    while cur_sq != cur {
        let cube = amb.mul(&cur_sq, &cur);
        cur = amb.sub(&amb.scale(&three, &cur_sq), &amb.scale(&two, &cube));
        cur_sq = amb.mul(&cur, &cur);
        steps += 1;
        if steps > 64 {
            return Err(Error::Internal("idempotent lifting did not converge".into()));
        }
    }
    Ok(cur)
}

/// Lifts a complete family of orthogonal residue idempotents summing to one,
/// re-orthogonalizes, and checks the result exactly.
pub fn lift_idempotent_family(amb: &Ambient, residues: &[MPoly]) -> Result<Vec<MPoly>> {
    let lifted: Vec<MPoly> = residues.iter().map(|e| lift_idempotent(amb, e)).collect::<Result<_>>()?;
    let one = amb.one();
    let complements: Vec<MPoly> = lifted.iter().map(|e| amb.sub(&one, e)).collect();
    let mut family = Vec::with_capacity(lifted.len());
    for (i, e) in lifted.iter().enumerate() {
        let mut x = e.clone();
        for (j, c) in complements.iter().enumerate() {
            if i != j {
                x = amb.mul(&x, c);
            }
        }
        family.push(x);
    }
    let total = family.iter().fold(amb.zero(), |acc, e| amb.add(&acc, e));
    if total != one {
        // the products above are idempotent; their sum misses 1 only through nilpotents
        return Err(Error::Internal("lifted idempotents do not sum to one".into()));
    }
    for (i, e) in family.iter().enumerate() {
        if amb.mul(e, e) != *e {
            return Err(Error::Internal(format!("idempotent {i} is not idempotent")));
        }
        for f in &family[i + 1..] {
            if !amb.mul(e, f).is_zero() {
                return Err(Error::Internal("idempotents are not orthogonal".into()));
            }
        }
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ChainRingDesc;
    use proptest::prelude::*;

    fn z4() -> ChainRing {
        ChainRing::new(&ChainRingDesc::galois(2, 2, 1)).unwrap()
    }

    #[test]
    fn lifts_x7_minus_1() {
        let r = z4();
        let pr = PolyRing::new(&r);
        let f2 = r.residue_field();
        let fr = PolyRing::new(&f2);
        let f = pr.from_ints(&[-1, 0, 0, 0, 0, 0, 0, 1]);
        let residues = vec![fr.from_ints(&[1, 1]), fr.from_ints(&[1, 1, 0, 1]), fr.from_ints(&[1, 0, 1, 1])];
        let lf = lift_factorization(&r, &f, &residues).unwrap();
        assert_eq!(
            lf.factors,
            vec![pr.from_ints(&[3, 1]), pr.from_ints(&[3, 1, 2, 1]), pr.from_ints(&[3, 2, 3, 1])]
        );
        assert_eq!(hensel_factor(&r, &f, 0).unwrap().factors, lf.factors);
    }

    #[test]
    fn lifts_over_galois_extension() {
        let s = ChainRing::new(&ChainRingDesc::galois(2, 2, 2)).unwrap();
        let pr = PolyRing::new(&s);
        let fld = s.residue_field();
        let w = s.generator(0);
        let wb = fld.generator(0);
        let w2b = fld.mul(&wb, &wb);
        let f = pr.from_ints(&[1, 1, 1]);
        let lf = lift_factorization(&s, &f, &[Poly::new(vec![wb, fld.one()]), Poly::new(vec![w2b, fld.one()])]).unwrap();
        let three_w = s.mul(&s.from_int(3), &w);
        let w_plus_1 = s.add(&w, &s.one());
        assert_eq!(lf.factors, vec![Poly::new(vec![three_w, s.one()]), Poly::new(vec![w_plus_1, s.one()])]);
    }

    #[test]
    fn single_factor_and_errors() {
        let r = z4();
        let pr = PolyRing::new(&r);
        let f2 = r.residue_field();
        let fr = PolyRing::new(&f2);
        let f = pr.from_ints(&[1, 1, 1]);
        let lf = lift_factorization(&r, &f, &[fr.from_ints(&[1, 1, 1])]).unwrap();
        assert_eq!(lf.factors, vec![f.clone()]);
        assert_eq!(lift_factorization(&r, &f, &[fr.from_ints(&[1, 1])]), Err(Error::ResidueMismatch));
        let sq = pr.from_ints(&[1, 0, 1]);
        assert_eq!(
            lift_factorization(&r, &sq, &[fr.from_ints(&[1, 1]), fr.from_ints(&[1, 1])]),
            Err(Error::NotCoprime)
        );
    }

    #[test]
    fn permuted_input_gives_same_factor_set() {
        let r = ChainRing::new(&ChainRingDesc::galois(3, 3, 1)).unwrap();
        let pr = PolyRing::new(&r);
        let f = pr.from_ints(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let lf = hensel_factor(&r, &f, 3).unwrap();
        let mut rev = lf.residue_factors.clone();
        rev.reverse();
        let mut other = lift_factorization(&r, &f, &rev).unwrap().factors;
        other.reverse();
        assert_eq!(other, lf.factors);
    }

    #[test]
    fn idempotent_examples() {
        let r = z4();
        let a = Ambient::parse(r.clone(), &["x^7-1".to_string()], true).unwrap();
        assert_eq!(lift_idempotent(&a, &a.one()).unwrap(), a.one());
        assert_eq!(lift_idempotent(&a, &a.zero()).unwrap(), a.zero());
        let e = a.parse_element("x+x^2+x^4").unwrap();
        let lifted = lift_idempotent(&a, &e).unwrap();
        assert_eq!(a.mul(&lifted, &lifted), lifted);
        assert_eq!(a.residue(&lifted), a.residue(&e));
        // one step suffices for t = 2
        let three = r.from_int(3);
        let two = r.from_int(2);
        let sq = a.mul(&e, &e);
        let step = a.sub(&a.scale(&three, &sq), &a.scale(&two, &a.mul(&sq, &e)));
        assert_eq!(step, lifted);
        assert_eq!(lift_idempotent(&a, &lifted).unwrap(), lifted);
        assert_eq!(lift_idempotent(&a, &a.parse_element("x").unwrap()), Err(Error::NotIdempotent));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn lifted_factors_reduce_and_multiply_back(pick in 0usize..4, e in 2usize..16, t in 1u32..5) {
            let p = [2u64, 3, 5, 7][pick];
            prop_assume!(!(e as u64).is_multiple_of(p));
            let r = ChainRing::new(&ChainRingDesc::galois(p, t, 1)).unwrap();
            let pr = PolyRing::new(&r);
            let mut c = vec![0i64; e + 1];
            c[0] = -1;
            c[e] = 1;
            let f = pr.from_ints(&c);
            let lf = hensel_factor(&r, &f, 0).unwrap();
            prop_assert_eq!(pr.product(&lf.factors), f);
            for (g, gb) in lf.factors.iter().zip(&lf.residue_factors) {
                prop_assert_eq!(&pr.residue(g), gb);
                prop_assert!(pr.is_monic(g));
            }
        }
    }
}
