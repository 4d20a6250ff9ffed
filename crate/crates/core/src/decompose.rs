//! Per-class polynomials, component chain rings and the idempotent
//! decomposition of a semisimple ambient.
//!
//! For a class with representative `mu = (mu_1, ..., mu_r)` the component ring
//! is the tower `R_r = R[X_1]/(q_1) [X_2]/(z_2) ... [X_r]/(z_r)`, where `q_1`
//! lifts the minimal polynomial of `mu_1` and `z_i` lifts the minimal
//! polynomial of `mu_i` over `F_q(mu_1, ..., mu_{i-1})`. Tower elements are
//! rewritten as polynomials by sending the root adjoined at level `i` to `X_i`.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::ambient::{Ambient, MPoly, RawPoly};
use crate::error::{Error, Result};
use crate::factorize::{cyclotomic_classes, CyclotomicClass, SplittingData};
use crate::hensel::{hensel_factor, lift_factorization, lift_idempotent_family, LiftedFactorization};
use crate::linalg;
use crate::poly::{Poly, PolyRing};
use crate::ring::{ChainRing, FiniteField, RingElem};
use crate::text;

/// Polynomials attached to one class. Index `i` refers to variable `X_{i+1}`;
/// `w`, `pi`, `z` and `sigma` are `None` for the first variable.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub class: CyclotomicClass,
    /// Member used as representative.
    pub repr: Vec<usize>,
    /// Minimal polynomial of `mu_i` over `F_q`.
    pub p: Vec<Poly>,
    /// Minimal polynomial of `mu_i` over `F_q(mu_1, ..., mu_{i-1})`, over `fields[i]`.
    pub w: Vec<Option<Poly>>,
    /// `p_i / w_i` over `fields[i]`.
    pub pi: Vec<Option<Poly>>,
    /// Hensel lift of `p_i` within the factorization of `t_i`.
    pub q: Vec<Poly>,
    /// Lifts of `w_i` and `pi_i` over `towers[i]`.
    pub z: Vec<Option<Poly>>,
    pub sigma: Vec<Option<Poly>>,
    /// `towers[0] = R`, `towers[i+1] = towers[i][X_{i+1}]/(z_{i+1})`; the last is the component ring.
    pub towers: Vec<ChainRing>,
    /// Residue fields of `towers`.
    pub fields: Vec<FiniteField>,
    pub h: MPoly,
    /// Inverse of the image of `h` in the component ring, as an ambient element.
    pub g: MPoly,
    /// Primitive idempotent of the component.
    pub e: MPoly,
    mono_images: Vec<RingElem>,
}

impl ClassData {
    pub fn component_ring(&self) -> &ChainRing {
        self.towers.last().unwrap()
    }

    /// `|R[X]/I_C| = q^(t |C|)`.
    pub fn component_size(&self) -> BigUint {
        self.component_ring().size()
    }
}

/// The decomposition of a semisimple ambient into chain-ring components.
#[derive(Clone, Debug)]
pub struct Decomposition {
    amb: Ambient,
    sd: SplittingData,
    classes: Vec<CyclotomicClass>,
    data: Vec<ClassData>,
    lifted: Vec<LiftedFactorization>,
}

impl Decomposition {
    pub fn new(amb: Ambient, seed: u64) -> Result<Self> {
        let sd = SplittingData::new(&amb, seed)?;
        let classes = cyclotomic_classes(&sd);
        let ring = amb.ring();
        let lifted: Vec<LiftedFactorization> = amb
            .moduli()
            .iter()
            .zip(&sd.factors)
            .map(|(t, fs)| {
                let lf = lift_factorization(ring, t, fs)?;
                debug_assert_eq!(lf.factors, hensel_factor(ring, t, seed)?.factors);
                Ok(lf)
            })
            .collect::<Result<_>>()?;
        let mut dec = Decomposition { amb, sd, classes, data: vec![], lifted };
        let residues = dec.residue_idempotents();
        let lifted_e = lift_idempotent_family(&dec.amb, &residues)?;
        let data: Vec<ClassData> = dec
            .classes
            .par_iter()
            .zip(lifted_e.into_par_iter())
            .map(|(c, e)| dec.build_class(c, c.repr(), Some(e)))
            .collect::<Result<_>>()?;
        dec.data = data;
        Ok(dec)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.amb
    }

    pub fn splitting(&self) -> &SplittingData {
        &self.sd
    }

    pub fn classes(&self) -> &[CyclotomicClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_data(&self, i: usize) -> &ClassData {
        &self.data[i]
    }

    pub fn lifted_factorizations(&self) -> &[LiftedFactorization] {
        &self.lifted
    }

    pub fn idempotent(&self, i: usize) -> &MPoly {
        &self.data[i].e
    }

    /// Image of an ambient element in the component ring of class `i`.
    pub fn image(&self, i: usize, f: &MPoly) -> RingElem {
        image_with(&self.data[i], self.amb.ring(), f)
    }

    /// Valuation of `f` in the component of class `i` (`t` when the image is zero).
    pub fn valuation_in(&self, i: usize, f: &MPoly) -> u32 {
        let comp = self.data[i].component_ring();
        comp.valuation(&self.image(i, f))
    }

    /// Rewrites an element of the component ring of class `i` as an ambient element.
    pub fn component_to_ambient(&self, i: usize, x: &RingElem) -> MPoly {
        let cd = &self.data[i];
        let raw = tower_elem_to_raw(self.amb.ring(), cd.component_ring(), x, 0, None);
        self.amb.normal_form(&raw).expect("tower monomials stay inside the ambient")
    }

    /// Evaluates a residue-ambient element at the root tuple `member`.
    pub fn eval_residue(&self, f: &MPoly, member: &[usize]) -> RingElem {
        let field = &self.sd.field;
        let ramb = self.amb.residue_ambient();
        let mut acc = field.zero();
        for (rank, c) in f.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut m = field.embed(c);
            for (k, &e) in ramb.exps_of(rank).iter().enumerate() {
                if e > 0 {
                    m = field.mul(&m, &field.pow(&self.sd.roots[k][member[k]], e as u128));
                }
            }
            acc = field.add(&acc, &m);
        }
        acc
    }

    /// Recomputes the data of class `i` from another member as representative.
    pub fn class_data_from(&self, i: usize, member: usize) -> Result<ClassData> {
        let c = &self.classes[i];
        self.build_class(c, &c.members[member], Some(self.data[i].e.clone()))
    }

    /// Residue idempotents by Lagrange interpolation over the splitting field.
    fn residue_idempotents(&self) -> Vec<MPoly> {
        let field = &self.sd.field;
        let base = &self.sd.base;
        let fpr = PolyRing::new(field);
        let rpr = PolyRing::new(self.amb.ring());
        let ramb = self.amb.residue_ambient();
        // basis[i][k] = t_i / ((X - mu_k) t_i'(mu_k)), coefficients in F_{q^m}
        let basis: Vec<Vec<Vec<RingElem>>> = self
            .amb
            .moduli()
            .iter()
            .zip(&self.sd.roots)
            .map(|(t, roots)| {
                let tb = fpr.embed(&rpr.residue(t));
                let dt = fpr.derivative(&tb);
                roots
                    .iter()
                    .map(|mu| {
                        let lin = Poly::new(vec![field.neg(mu), field.one()]);
                        let quo = fpr.exact_div(&tb, &lin).expect("mu is a root");
                        let inv = field.inverse(&fpr.eval(&dt, mu)).expect("simple root");
                        let l = fpr.scale(&inv, &quo);
                        (0..tb.degree().unwrap()).map(|j| l.coeff(j, field)).collect()
                    })
                    .collect()
            })
            .collect();
        self.classes
            .par_iter()
            .map(|c| {
                let mut acc = vec![field.zero(); self.amb.n()];
                for member in &c.members {
                    for (rank, slot) in acc.iter_mut().enumerate() {
                        let mut v = field.one();
                        for (k, &e) in ramb.exps_of(rank).iter().enumerate() {
                            v = field.mul(&v, &basis[k][member[k]][e]);
                            if v.is_zero() {
                                break;
                            }
                        }
                        *slot = field.add(slot, &v);
                    }
                }
                let coeffs: Vec<RingElem> = acc
                    .iter()
                    .map(|x| {
                        debug_assert!(x.coords()[base.dims()..].iter().all(|&c| c == 0));
                        RingElem::from_coords(&x.coords()[..base.dims()])
                    })
                    .collect();
                let ebar = ramb.from_vector(coeffs).expect("residue coefficients");
                self.amb.lift(&ebar)
            })
            .collect()
    }

    fn build_class(&self, class: &CyclotomicClass, repr: &[usize], e: Option<MPoly>) -> Result<ClassData> {
        let amb = &self.amb;
        let ring = amb.ring();
        let r = amb.r();
        let sd = &self.sd;
        let bf = &sd.base;
        let big = &sd.field;
        let q = bf.residue_size();
        let mu: Vec<RingElem> = repr.iter().enumerate().map(|(i, &k)| sd.roots[i][k].clone()).collect();

        let mut p = Vec::with_capacity(r);
        let mut qs = Vec::with_capacity(r);
        for (i, &k) in repr.iter().enumerate() {
            let idx = sd.factor_of_root(i, k);
            p.push(sd.factors[i][idx].clone());
            qs.push(self.lifted[i].factors[idx].clone());
        }

        let mut towers = vec![ring.clone(), ring.extend_unchecked(&qs[0])];
        let mut fields = vec![bf.clone(), towers[1].residue_field()];
        let mut w = vec![None];
        let mut pi = vec![None];
        let mut z = vec![None];
        let mut sigma = vec![None];
        // degree of F_q(mu_1, ..., mu_i) over F_q
        let mut deg = p[0].degree().unwrap();
        for i in 1..r {
            let fi = &fields[i];
            let ti = &towers[i];
            // conjugates of mu_i over F_q(mu_1..mu_{i-1})
            let step = q.pow(deg as u32);
            let mut conj = vec![mu[i].clone()];
            loop {
                let next = big.pow(conj.last().unwrap(), step);
                if next == mu[i] {
                    break;
                }
                conj.push(next);
            }
            let bpr = PolyRing::new(big);
            let wbig = bpr.product(&conj.iter().map(|c| Poly::new(vec![big.neg(c), big.one()])).collect::<Vec<_>>());
            let wi = Poly::new(
                wbig.coeffs().iter().map(|c| pull_back(fi, bf, big, &mu[..i], c)).collect::<Result<Vec<_>>>()?,
            );
            let fpr = PolyRing::new(fi);
            let pi_i = fpr.exact_div(&fpr.embed(&p[i]), &wi)?;
            let tpr = PolyRing::new(ti);
            let qi = tpr.embed(&qs[i]);
            let (zi, si) = if pi_i.degree() == Some(0) {
                (qi, tpr.one())
            } else {
                let lf = lift_factorization(ti, &qi, &[wi.clone(), pi_i.clone()])?;
                (lf.factors[0].clone(), lf.factors[1].clone())
            };
            deg *= wi.degree().unwrap();
            let next = ti.extend_unchecked(&zi);
            fields.push(next.residue_field());
            towers.push(next);
            w.push(Some(wi));
            pi.push(Some(pi_i));
            z.push(Some(zi));
            sigma.push(Some(si));
        }
        if deg != class.size() {
            return Err(Error::Internal(format!("component degree {deg} differs from class size {}", class.size())));
        }

        // h = prod t_i / q_i * prod sigma_i
        let rpr = PolyRing::new(ring);
        let mut h = amb.one();
        for (i, qi) in qs.iter().enumerate() {
            let cof = rpr.exact_div(&amb.moduli()[i], qi)?;
            h = amb.mul(&h, &amb.from_univariate(&cof, i));
        }
        for i in 1..r {
            let s = sigma[i].as_ref().unwrap();
            let raw = tower_poly_to_raw(ring, &towers[i], s, i);
            h = amb.mul(&h, &amb.normal_form(&raw)?);
        }

        let comp = towers.last().unwrap().clone();
        let base_levels = ring.num_levels();
        let gens: Vec<RingElem> = (0..r).map(|k| comp.generator(base_levels + k)).collect();
        let powers: Vec<Vec<RingElem>> = (0..r)
            .map(|k| {
                let mut v = vec![comp.one()];
                for _ in 1..amb.degrees()[k] {
                    v.push(comp.mul(v.last().unwrap(), &gens[k]));
                }
                v
            })
            .collect();
        let mono_images: Vec<RingElem> = (0..amb.n())
            .map(|rank| {
                amb.exps_of(rank).iter().enumerate().fold(comp.one(), |acc, (k, &e)| {
                    if e == 0 {
                        acc
                    } else {
                        comp.mul(&acc, &powers[k][e])
                    }
                })
            })
            .collect();

        let mut cd = ClassData {
            class: class.clone(),
            repr: repr.to_vec(),
            p,
            w,
            pi,
            q: qs,
            z,
            sigma,
            towers,
            fields,
            h,
            g: amb.zero(),
            e: amb.zero(),
            mono_images,
        };
        let himg = image_with(&cd, ring, &cd.h);
        let ginv = comp.inverse(&himg).map_err(|_| Error::Internal("h is not a unit on its component".into()))?;
        let graw = tower_elem_to_raw(ring, &comp, &ginv, 0, None);
        cd.g = amb.normal_form(&graw)?;
        cd.e = match e {
            Some(e) => e,
            None => amb.mul(&cd.g, &cd.h),
        };
        Ok(cd)
    }

    /// Generators of `I_C`: `q_1(X_1), z_2(X_1, X_2), ..., z_r(X_1, ..., X_r)`, reduced modulo `I`.
    pub fn ideal_generators(&self, i: usize) -> Vec<MPoly> {
        let cd = &self.data[i];
        let ring = self.amb.ring();
        let mut out = vec![self.amb.from_univariate(&cd.q[0], 0)];
        for k in 1..self.amb.r() {
            let raw = tower_poly_to_raw(ring, &cd.towers[k], cd.z[k].as_ref().unwrap(), k);
            out.push(self.amb.normal_form(&raw).expect("exponents stay in range"));
        }
        out
    }

    /// Idempotent built from `h` itself: `g * h` with `g` the inverse of `h` on its component.
    pub fn idempotent_via_h(&self, i: usize) -> MPoly {
        let cd = &self.data[i];
        self.amb.mul(&cd.g, &cd.h)
    }

    /// Full JSON description of class `i`.
    pub fn class_json_full(&self, i: usize) -> Value {
        let cd = &self.data[i];
        let amb = &self.amb;
        let r = amb.r();
        let ring = amb.ring();
        let bf = &self.sd.base;
        let uni = |f: &Poly, base: &ChainRing, var: usize| {
            PolyRing::new(base).to_text(f, &text::var_name(var, r))
        };
        let tower_text = |base: &ChainRing, tower: &ChainRing, f: &Option<Poly>, var: usize| match f {
            None => Value::Null,
            Some(f) => Value::from(tower_poly_to_raw(base, tower, f, var).to_text(base, r)),
        };
        let mut j = self.classes[i].to_json(&self.sd);
        let obj = j.as_object_mut().unwrap();
        obj.insert("p".into(), json!(cd.p.iter().enumerate().map(|(k, f)| uni(f, bf, k)).collect::<Vec<_>>()));
        obj.insert("q".into(), json!(cd.q.iter().enumerate().map(|(k, f)| uni(f, ring, k)).collect::<Vec<_>>()));
        obj.insert("w".into(), json!((0..r).map(|k| tower_text(bf, &cd.fields[k], &cd.w[k], k)).collect::<Vec<_>>()));
        obj.insert("pi".into(), json!((0..r).map(|k| tower_text(bf, &cd.fields[k], &cd.pi[k], k)).collect::<Vec<_>>()));
        obj.insert("z".into(), json!((0..r).map(|k| tower_text(ring, &cd.towers[k], &cd.z[k], k)).collect::<Vec<_>>()));
        obj.insert(
            "sigma".into(),
            json!((0..r).map(|k| tower_text(ring, &cd.towers[k], &cd.sigma[k], k)).collect::<Vec<_>>()),
        );
        obj.insert("h".into(), json!(amb.to_text(&cd.h)));
        obj.insert("g".into(), json!(amb.to_text(&cd.g)));
        obj.insert("e".into(), json!(amb.to_text(&cd.e)));
        obj.insert(
            "ideal".into(),
            json!(self.ideal_generators(i).iter().map(|f| amb.to_text(f)).collect::<Vec<_>>()),
        );
        obj.insert("component_size".into(), json!(cd.component_size().to_string()));
        j
    }
}

fn image_with(cd: &ClassData, ring: &ChainRing, f: &MPoly) -> RingElem {
    let comp = cd.component_ring();
    let mut acc = comp.zero();
    for (c, img) in f.coeffs().iter().zip(&cd.mono_images) {
        if !c.is_zero() {
            acc = comp.add(&acc, &comp.scale_by_sub(ring, c, img));
        }
    }
    acc
}

/// Expresses an element `c` of `F_{q^m}` lying in `F_q(mu_1, ..., mu_k)` as an
/// element of the tower field `fi`.
fn pull_back(fi: &FiniteField, bf: &FiniteField, big: &FiniteField, mu: &[RingElem], c: &RingElem) -> Result<RingElem> {
    let p = bf.p();
    let columns: Vec<Vec<u64>> = (0..fi.dims())
        .map(|j| {
            let mut unit = vec![0u64; fi.dims()];
            unit[j] = 1;
            let x = RingElem::from_coords(&unit);
            fi.eval_tower(bf, &x, big, mu).coords().to_vec()
        })
        .collect();
    let sol = linalg::solve(&columns, c.coords(), p)
        .ok_or_else(|| Error::Internal("coefficient outside the intermediate field".into()))?;
    fi.from_coords(&sol)
}

/// Writes an element of a tower over `base` as a polynomial in the variables
/// `X_{first+1}, ...` attached to the levels above `base`. If `var` is given,
/// the result is multiplied by `X_var^power` (used for polynomial coefficients).
fn tower_elem_to_raw(base: &ChainRing, tower: &ChainRing, x: &RingElem, first: usize, var: Option<(usize, usize)>) -> RawPoly {
    let levels: Vec<usize> = (base.num_levels()..tower.num_levels()).map(|k| tower.level_degree(k)).collect();
    let bd = base.dims();
    let total: usize = levels.iter().product();
    let mut raw = RawPoly::new();
    let mut digits = vec![0usize; levels.len()];
    for idx in 0..total {
        let block = &x.coords()[idx * bd..(idx + 1) * bd];
        if block.iter().any(|&c| c != 0) {
            let nv = (first + levels.len()).max(var.map_or(0, |(v, _)| v + 1));
            let mut exps = vec![0usize; nv];
            for (k, &d) in digits.iter().enumerate() {
                exps[first + k] = d;
            }
            if let Some((v, e)) = var {
                exps[v] += e;
            }
            raw.add_term(base, exps, &RingElem::from_coords(block));
        }
        for (k, dgt) in digits.iter_mut().enumerate() {
            *dgt += 1;
            if *dgt < levels[k] {
                break;
            }
            *dgt = 0;
        }
    }
    raw
}

/// Writes a polynomial in `X_{var+1}` with coefficients in a tower as a
/// polynomial over `base`.
fn tower_poly_to_raw(base: &ChainRing, tower: &ChainRing, f: &Poly, var: usize) -> RawPoly {
    let mut raw = RawPoly::new();
    for (j, c) in f.coeffs().iter().enumerate() {
        for (exps, v) in tower_elem_to_raw(base, tower, c, 0, Some((var, j))).terms {
            raw.add_term(base, exps, &v);
        }
    }
    raw
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ChainRingDesc;

    fn amb(desc: ChainRingDesc, moduli: &[&str]) -> Ambient {
        let ring = ChainRing::new(&desc).unwrap();
        Ambient::parse(ring, &moduli.iter().map(|s| s.to_string()).collect::<Vec<_>>(), true).unwrap()
    }

    fn z4_7() -> Decomposition {
        Decomposition::new(amb(ChainRingDesc::galois(2, 2, 1), &["x^7-1"]), 0).unwrap()
    }

    fn z4_33() -> Decomposition {
        Decomposition::new(amb(ChainRingDesc::galois(2, 2, 1), &["x^3-1", "y^3-1"]), 0).unwrap()
    }

    fn z9_22() -> Decomposition {
        Decomposition::new(amb(ChainRingDesc::galois(3, 2, 1), &["x^2-1", "y^2-1"]), 0).unwrap()
    }

    fn check_family(d: &Decomposition) {
        let a = d.ambient();
        let mut total = a.zero();
        for i in 0..d.num_classes() {
            let e = d.idempotent(i);
            assert_eq!(a.mul(e, e), *e);
            for j in 0..d.num_classes() {
                if i != j {
                    assert!(a.mul(e, d.idempotent(j)).is_zero());
                }
            }
            total = a.add(&total, e);
        }
        assert_eq!(total, a.one());
    }

    #[test]
    fn class_polynomials_for_omega_pair() {
        let d = z4_33();
        let a = d.ambient();
        let cd = d.class_data(3);
        assert_eq!(cd.class.repr(), &[1, 1]);
        let bf = &d.splitting().base;
        let fpr = PolyRing::new(bf);
        assert_eq!(cd.p[0], fpr.from_ints(&[1, 1, 1]));
        assert_eq!(cd.p[1], fpr.from_ints(&[1, 1, 1]));
        let json = d.class_json_full(3);
        assert_eq!(json["w"][1], "x2+x1");
        assert_eq!(json["pi"][1], "x2+x1+1");
        assert_eq!(json["q"][0], "x1^2+x1+1");
        assert_eq!(json["z"][1], "x2+3*x1");
        assert_eq!(json["sigma"][1], "x2+x1+1");
        let h = a.mul(
            &a.mul(&a.parse_element("x1+3").unwrap(), &a.parse_element("x2+3").unwrap()),
            &a.parse_element("x2+x1+1").unwrap(),
        );
        assert_eq!(cd.h, h);
        assert_eq!(cd.component_size(), BigUint::from(16u32));
    }

    #[test]
    fn degree_one_class_polynomials() {
        let d = z4_33();
        let cd = d.class_data(0);
        let json = d.class_json_full(0);
        assert_eq!(json["p"][0], "x1+1");
        assert_eq!(json["w"][1], "x2+1");
        assert_eq!(json["pi"][1], "1");
        assert_eq!(cd.sigma[1].as_ref().unwrap().degree(), Some(0));
        let d9 = z9_22();
        let json = d9.class_json_full(0);
        assert_eq!(json["q"], json!(["x1+8", "x2+8"]));
        assert_eq!(json["z"][1], "x2+8");
        assert_eq!(json["sigma"][1], "1");
    }

    #[test]
    fn univariate_examples() {
        let d = z4_7();
        let a = d.ambient();
        assert_eq!(d.class_data(0).h, a.parse_element("x^6+x^5+x^4+x^3+x^2+x+1").unwrap());
        assert_eq!(d.class_json_full(1)["p"][0], "x^3+x+1");
        assert_eq!(d.class_json_full(0)["q"][0], "x+3");
        assert_eq!(d.class_data(1).component_size(), BigUint::from(64u32));
        assert_eq!(d.class_data(0).component_size(), BigUint::from(4u32));
        check_family(&d);
    }

    #[test]
    fn trivial_modulus() {
        let d = Decomposition::new(amb(ChainRingDesc::galois(2, 2, 1), &["x-1"]), 0).unwrap();
        let a = d.ambient();
        assert_eq!(d.num_classes(), 1);
        assert_eq!(d.class_data(0).h, a.one());
        assert_eq!(d.class_data(0).e, a.one());
        assert_eq!(d.class_data(0).g, a.one());
    }

    #[test]
    fn idempotent_families() {
        for d in [z4_7(), z4_33(), z9_22()] {
            check_family(&d);
            for i in 0..d.num_classes() {
                assert_eq!(d.idempotent_via_h(i), *d.idempotent(i));
            }
        }
        // Z9: e congruent mod 3 to (1 +- x)(1 +- y)/4
        let d = z9_22();
        let a = d.ambient();
        let inv4 = a.ring().from_int(7);
        let mut chars = Vec::new();
        for sx in ["1+x", "1+2*x"] {
            for sy in ["1+y", "1+2*y"] {
                let f = a.mul(&a.parse_element(sx).unwrap(), &a.parse_element(sy).unwrap());
                chars.push(a.residue(&a.scale(&inv4, &f)));
            }
        }
        for i in 0..4 {
            assert!(chars.contains(&a.residue(d.idempotent(i))));
        }
    }

    #[test]
    fn zero_locus_of_h() {
        for d in [z4_7(), z4_33(), z9_22()] {
            let a = d.ambient();
            for i in 0..d.num_classes() {
                let hb = a.residue(&d.class_data(i).h);
                for (j, c) in d.classes().iter().enumerate() {
                    for m in &c.members {
                        let v = d.eval_residue(&hb, m);
                        assert_eq!(v.is_zero(), i != j);
                    }
                }
            }
        }
    }

    #[test]
    fn images_vanish_off_component() {
        for d in [z4_7(), z4_33(), z9_22()] {
            for i in 0..d.num_classes() {
                for j in 0..d.num_classes() {
                    let v = d.image(j, &d.class_data(i).h);
                    let comp = d.class_data(j).component_ring();
                    assert_eq!(comp.is_unit(&v), i == j);
                    if i != j {
                        assert!(v.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn h_independent_of_representative() {
        for d in [z4_7(), z4_33()] {
            for i in 0..d.num_classes() {
                for m in 1..d.classes()[i].size() {
                    let other = d.class_data_from(i, m).unwrap();
                    assert_eq!(other.h, d.class_data(i).h);
                    assert_eq!(d.ambient().mul(&other.g, &other.h), *d.idempotent(i));
                }
            }
        }
    }

    #[test]
    fn crt_sizes_multiply() {
        for d in [z4_7(), z4_33(), z9_22()] {
            let prod: BigUint = (0..d.num_classes()).map(|i| d.class_data(i).component_size()).product();
            assert_eq!(prod, d.ambient().ring().size().pow(d.ambient().n() as u32));
        }
    }

    #[test]
    fn general_semisimple_ambient() {
        // x^2+1 irreducible over F_3, lifted to Z9; y^2 - 1 splits
        let d = Decomposition::new(amb(ChainRingDesc::galois(3, 2, 1), &["x^2+1", "y^2-1"]), 0).unwrap();
        assert_eq!(d.num_classes(), 2);
        check_family(&d);
        for i in 0..2 {
            assert_eq!(d.idempotent_via_h(i), *d.idempotent(i));
        }
    }

    #[test]
    fn galois_extension_coefficients() {
        // GR(4,2)[x]/(x^3-1): x^3-1 splits completely over F_4
        let d = Decomposition::new(amb(ChainRingDesc::galois(2, 2, 2), &["x^3-1"]), 0).unwrap();
        assert_eq!(d.num_classes(), 3);
        check_family(&d);
        let t = Decomposition::new(amb(ChainRingDesc::truncated(2, 1, 2), &["x^7-1"]), 0).unwrap();
        assert_eq!(t.num_classes(), 3);
        check_family(&t);
    }
}
