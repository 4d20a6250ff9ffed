//! Square-free factorization over finite fields, splitting fields of the
//! residue moduli, and cyclotomic classes of root tuples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::ambient::Ambient;
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::ring::{default_modulus, FiniteField, RingElem};

/// `gcd(f, f') = 1`.
pub fn is_squarefree(field: &FiniteField, f: &Poly) -> bool {
    PolyRing::new(field).is_squarefree(f)
}

/// Irreducible factors of a monic square-free polynomial, sorted by degree and
/// then by coefficients from the top down. The seed drives equal-degree splitting.
pub fn factor_squarefree(field: &FiniteField, f: &Poly, seed: u64) -> Result<Vec<Poly>> {
    let pr = PolyRing::new(field);
    if f.is_zero() {
        return Err(Error::Precondition("cannot factor the zero polynomial".into()));
    }
    if !pr.is_monic(f) {
        return Err(Error::NotMonic);
    }
    if !pr.is_squarefree(f) {
        return Err(Error::NotSquareFree);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (d, g) in distinct_degree(field, f) {
        equal_degree(field, &g, d, &mut rng, &mut out);
    }
    out.sort_by(|a, b| pr.cmp_rank(a, b));
    Ok(out)
}

fn distinct_degree(field: &FiniteField, f: &Poly) -> Vec<(usize, Poly)> {
    let pr = PolyRing::new(field);
    let q = field.residue_size();
    let x = pr.x();
    let mut rest = f.clone();
    let mut h = pr.rem(&x, &rest).unwrap();
    let mut out = Vec::new();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            out.push((deg, rest.clone()));
            break;
        }
        h = pr.pow_mod(&h, q, &rest).unwrap();
        let g = pr.gcd(&rest, &pr.sub(&h, &x));
        if g.degree() != Some(0) {
            rest = pr.exact_div(&rest, &g).unwrap();
            h = pr.rem(&h, &rest).unwrap();
            out.push((d, g));
        }
    }
    out
}

fn random_poly(field: &FiniteField, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    let p = field.p();
    let coeffs = (0..deg)
        .map(|_| {
            let c: Vec<u64> = (0..field.dims()).map(|_| rng.gen_range(0..p)).collect();
            RingElem::from_coords(&c)
        })
        .collect();
    Poly::new(coeffs)
}

fn equal_degree(field: &FiniteField, g: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let pr = PolyRing::new(field);
    let n = g.degree().unwrap();
    if n == d {
        out.push(g.clone());
        return;
    }
    let q = field.residue_size();
    let p = field.p();
    loop {
        let a = random_poly(field, n, rng);
        if a.degree().is_none_or(|k| k == 0) {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(kd-1))
            let k = field.dims();
            let mut term = pr.rem(&a, g).unwrap();
            let mut acc = term.clone();
            for _ in 1..k * d {
                term = pr.rem(&pr.mul(&term, &term), g).unwrap();
                acc = pr.add(&acc, &term);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q - 1)/2)
            let mut term = pr.rem(&a, g).unwrap();
            let mut norm = term.clone();
            for _ in 1..d {
                term = pr.pow_mod(&term, q, g).unwrap();
                norm = pr.rem(&pr.mul(&norm, &term), g).unwrap();
            }
            let half = pr.pow_mod(&norm, (q - 1) / 2, g).unwrap();
            pr.sub(&half, &pr.one())
        };
        let c = pr.gcd(g, &b);
        let dc = c.degree().unwrap_or(0);
        if dc > 0 && dc < n {
            let other = pr.exact_div(g, &c).unwrap();
            equal_degree(field, &c, d, rng, out);
            equal_degree(field, &other, d, rng, out);
            return;
        }
    }
}

/// First monic irreducible of degree `m` over `field`, in coefficient rank order.
pub fn irreducible_of_degree(field: &FiniteField, m: usize) -> Poly {
    let pr = PolyRing::new(field);
    if field.num_levels() == 0 {
        let coeffs = default_modulus(field.p(), m);
        return Poly::new(coeffs.into_iter().map(|c| field.from_encoded(c)).collect());
    }
    let q = field.residue_size() as u64;
    let mut index: u64 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut v = index;
        for _ in 0..m {
            coeffs.push(field.element_at(v % q));
            v /= q;
        }
        coeffs.push(field.one());
        let f = Poly::new(coeffs);
        if pr.is_irreducible(&f) {
            return f;
        }
        index += 1;
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Root label: an exponent `k` standing for `xi^k` with `xi` a fixed primitive
/// `e`-th root of unity, or an explicit element of the splitting field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootLabel {
    Exponent(usize),
    Field(RingElem),
}

impl RootLabel {
    pub fn to_json(&self) -> Value {
        match self {
            RootLabel::Exponent(k) => json!(k),
            RootLabel::Field(x) => json!(x.coords()),
        }
    }
}

/// The common splitting field of the residue moduli and their roots.
#[derive(Clone, Debug)]
pub struct SplittingData {
    /// Degree of the splitting field over the residue field.
    pub m: usize,
    /// Residue field `F_q` of the coefficient ring.
    pub base: FiniteField,
    /// `F_{q^m}`, a tower extension of `base`.
    pub field: FiniteField,
    /// Roots of each residue modulus, in label order.
    pub roots: Vec<Vec<RingElem>>,
    pub labels: Vec<Vec<RootLabel>>,
    /// `frob[i][k]` is the index of `roots[i][k]^q` in `roots[i]`.
    pub frob: Vec<Vec<usize>>,
    /// Irreducible residue factors of each modulus.
    pub factors: Vec<Vec<Poly>>,
}

impl SplittingData {
    pub fn new(amb: &Ambient, seed: u64) -> Result<Self> {
        if !amb.is_semisimple() {
            let index = (0..amb.r()).find(|&i| {
                let base = amb.ring().residue_field();
                let pr = PolyRing::new(amb.ring());
                !is_squarefree(&base, &pr.residue(&amb.moduli()[i]))
            });
            return Err(Error::NotSemisimple { index: index.unwrap_or(0) });
        }
        let base = amb.ring().residue_field();
        let pr = PolyRing::new(amb.ring());
        let residues: Vec<Poly> = amb.moduli().iter().map(|t| pr.residue(t)).collect();
        let mut factors = Vec::new();
        let mut m = 1;
        for t in &residues {
            let fs = factor_squarefree(&base, t, seed)?;
            for f in &fs {
                m = lcm(m, f.degree().unwrap());
            }
            factors.push(fs);
        }
        if (base.residue_size() as f64).powi(m as i32) > 2f64.powi(62) {
            return Err(Error::Precondition(format!("splitting field of degree {m} is too large")));
        }
        let field = if m == 1 { base.clone() } else { base.extend_unchecked(&irreducible_of_degree(&base, m)) };
        let fr = PolyRing::new(&field);
        let q = base.residue_size();
        let mut roots = Vec::new();
        let mut labels = Vec::new();
        let mut frob = Vec::new();
        for (i, t) in residues.iter().enumerate() {
            let lin = factor_squarefree(&field, &fr.embed(t), seed)?;
            let mut rs: Vec<RingElem> = lin.iter().map(|l| field.neg(&l.coeffs()[0])).collect();
            let ls: Vec<RootLabel> = if let Some(es) = amb.abelian_exponents() {
                let e = es[i];
                let xi = primitive_root_of_unity(&field, e);
                rs = (0..e).map(|k| field.pow(&xi, k as u128)).collect();
                (0..e).map(RootLabel::Exponent).collect()
            } else {
                rs.sort_by(|a, b| field.cmp_rank(a, b));
                rs.iter().map(|x| RootLabel::Field(x.clone())).collect()
            };
            let fi: Vec<usize> = rs
                .iter()
                .map(|x| {
                    let y = field.pow(x, q);
                    rs.iter().position(|z| *z == y).expect("roots are closed under Frobenius")
                })
                .collect();
            roots.push(rs);
            labels.push(ls);
            frob.push(fi);
        }
        Ok(SplittingData { m, base, field, roots, labels, frob, factors })
    }

    /// Index of the irreducible residue factor of `t_i` vanishing at root `k`.
    pub fn factor_of_root(&self, i: usize, k: usize) -> usize {
        let pr = PolyRing::new(&self.base);
        let root = &self.roots[i][k];
        self.factors[i]
            .iter()
            .position(|f| pr.eval_in(f, &self.field, root).is_zero())
            .expect("every root belongs to a factor")
    }

    /// Length of the Frobenius orbit of root `k` of modulus `i`.
    pub fn orbit_len(&self, i: usize, k: usize) -> usize {
        let mut j = self.frob[i][k];
        let mut len = 1;
        while j != k {
            j = self.frob[i][j];
            len += 1;
        }
        len
    }
}

fn primitive_root_of_unity(field: &FiniteField, e: usize) -> RingElem {
    let big = field.residue_size() - 1;
    assert_eq!(big % e as u128, 0, "e must divide q^m - 1");
    let primes = crate::poly::prime_factors(e as u64);
    (1u64..)
        .map(|i| field.pow(&field.element_at(i), big / e as u128))
        .find(|x| primes.iter().all(|&r| !field.is_one(&field.pow(x, (e as u64 / r) as u128))))
        .expect("the multiplicative group is cyclic")
}

/// An orbit of root tuples under the simultaneous `q`-power map. Members are
/// index tuples into [`SplittingData::roots`], sorted; the first is the
/// canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicClass {
    pub members: Vec<Vec<usize>>,
}

impl CyclotomicClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn repr(&self) -> &[usize] {
        &self.members[0]
    }

    pub fn labels(&self, sd: &SplittingData, member: &[usize]) -> Vec<RootLabel> {
        member.iter().enumerate().map(|(i, &k)| sd.labels[i][k].clone()).collect()
    }

    /// Exponent tuple of the representative (abelian ambients only).
    pub fn repr_exponents(&self) -> Vec<usize> {
        self.members[0].clone()
    }

    pub fn to_json(&self, sd: &SplittingData) -> Value {
        let lab = |m: &[usize]| Value::Array(self.labels(sd, m).iter().map(RootLabel::to_json).collect());
        json!({
            "repr": lab(self.repr()),
            "size": self.size(),
            "members": self.members.iter().map(|m| lab(m)).collect::<Vec<_>>(),
        })
    }
}

/// Partition of `H_1 x ... x H_r` into Frobenius orbits, sorted by representative.
pub fn cyclotomic_classes(sd: &SplittingData) -> Vec<CyclotomicClass> {
    let sizes: Vec<usize> = sd.roots.iter().map(|h| h.len()).collect();
    let total: usize = sizes.iter().product();
    let mut seen = vec![false; total];
    let flat = |tuple: &[usize]| tuple.iter().zip(&sizes).rev().fold(0, |acc, (&k, &s)| acc * s + k);
    let mut classes = Vec::new();
    for idx in 0..total {
        if seen[idx] {
            continue;
        }
        let mut tuple = Vec::with_capacity(sizes.len());
        let mut v = idx;
        for &s in &sizes {
            tuple.push(v % s);
            v /= s;
        }
        let mut members = Vec::new();
        let mut cur = tuple.clone();
        loop {
            seen[flat(&cur)] = true;
            members.push(cur.clone());
            cur = cur.iter().enumerate().map(|(i, &k)| sd.frob[i][k]).collect();
            if cur == tuple {
                break;
            }
        }
        members.sort();
        classes.push(CyclotomicClass { members });
    }
    classes.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    classes
}
