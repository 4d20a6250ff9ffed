//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use chaincodes::ambient::Ambient;
use chaincodes::cli::{check_census, check_duality, check_idempotents};
use chaincodes::codes::{count_codes, enumerate_codes, SemisimpleCode};
use chaincodes::decompose::Decomposition;
use chaincodes::distance::{distance_bound, hensel_lift_distance_check, min_distance, socle, DEFAULT_BUDGET};
use chaincodes::duality::{build_nontrivial_selfdual, is_selfdual, nontrivial_selfdual_exists};
use chaincodes::hensel::hensel_factor;
use chaincodes::kerdock::run_demo;
use chaincodes::oracle::{distance_bruteforce, dual_bruteforce, ideal_span, ideal_span_set};
use chaincodes::poly::PolyRing;
use chaincodes::ring::{ChainRing, ChainRingDesc};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ambient(p: u64, t: u32, moduli: &[&str]) -> Arc<Decomposition> {
    let ring = ChainRing::new(&ChainRingDesc::galois(p, t, 1)).unwrap();
    let m: Vec<String> = moduli.iter().map(|s| s.to_string()).collect();
    Arc::new(Decomposition::new(Ambient::parse(ring, &m, true).unwrap(), 0).unwrap())
}

fn z4_7() -> Arc<Decomposition> {
    ambient(2, 2, &["x^7-1"])
}

fn z4_33() -> Arc<Decomposition> {
    ambient(2, 2, &["x^3-1", "y^3-1"])
}

fn z9_22() -> Arc<Decomposition> {
    ambient(3, 2, &["x^2-1", "y^2-1"])
}

fn check(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiplicative order of `q` modulo `n`.
fn order_mod(q: usize, n: usize) -> usize {
    if n == 1 {
        return 1;
    }
    let mut x = q % n;
    let mut k = 1;
    while x != 1 {
        x = x * q % n;
        k += 1;
    }
    k
}

fn criterion_1() -> Outcome {
    let ring = ChainRing::new(&ChainRingDesc::galois(2, 2, 1)).unwrap();
    let pr = PolyRing::new(&ring);
    let f = pr.from_ints(&[-1, 0, 0, 0, 0, 0, 0, 1]);
    let lf = hensel_factor(&ring, &f, 0).map_err(|e| e.to_string())?;
    let expected: HashSet<_> =
        [pr.from_ints(&[3, 1]), pr.from_ints(&[3, 1, 2, 1]), pr.from_ints(&[3, 2, 3, 1])].into_iter().collect();
    let got: HashSet<_> = lf.factors.iter().cloned().collect();
    check(got == expected && lf.factors.len() == 3, "factor set differs")?;
    check(pr.product(&lf.factors) == f, "product does not reassemble x^7 - 1")?;
    let text: Vec<String> = lf.factors.iter().map(|g| pr.to_text(g, "x")).collect();
    Ok(text.join(", "))
}

fn criterion_2() -> Outcome {
    let cases = [(z4_7(), vec![1, 3, 3]), (z4_33(), vec![1, 2, 2, 2, 2]), (z9_22(), vec![1, 1, 1, 1])];
    let mut summary = Vec::new();
    for (dec, sizes) in &cases {
        let q = dec.ambient().ring().residue_size() as usize;
        let es = dec.ambient().abelian_exponents().unwrap();
        let mut got: Vec<usize> = dec.classes().iter().map(|c| c.size()).collect();
        for c in dec.classes() {
            // lcm of the degrees of the minimal polynomials of the coordinates
            let l = c.repr().iter().zip(es).fold(1, |acc, (&k, &e)| {
                let d = order_mod(q, e / gcd(k, e));
                acc / gcd(acc, d) * d
            });
            check(c.size() == l, "class size differs from lcm of coordinate degrees")?;
        }
        got.sort();
        check(&got == sizes, &format!("class sizes {got:?}, expected {sizes:?}"))?;
        summary.push(format!("N={}", got.len()));
    }
    Ok(summary.join(" "))
}

fn criterion_3() -> Outcome {
    let mut summary = Vec::new();
    for (dec, n) in [(z4_7(), 27u32), (z4_33(), 243), (z9_22(), 81)] {
        check(enumerate_codes(&dec).count() == n as usize, "enumeration count")?;
        check(count_codes(&dec) == n.into(), "(t+1)^N")?;
        let amb = dec.ambient();
        let size = amb.ring().size().pow(amb.n() as u32);
        if size <= (1u32 << 16).into() {
            let detail = check_census(&dec, 1 << 16).map_err(|e| e.to_string())?;
            summary.push(format!("{n} codes, census {detail}"));
        } else {
            summary.push(format!("{n} codes"));
        }
    }
    Ok(summary.join("; "))
}

fn criterion_4() -> Outcome {
    let mut summary = Vec::new();
    for dec in [z4_7(), z4_33(), z9_22()] {
        summary.push(check_idempotents(&dec, 1 << 20).map_err(|e| e.to_string())?);
    }
    Ok(summary.join(", "))
}

fn criterion_5() -> Outcome {
    let dec = z4_7();
    let amb = dec.ambient();
    for k in enumerate_codes(&dec) {
        let g = k.canonical_generators().generator;
        let back = SemisimpleCode::from_generators(&dec, std::slice::from_ref(&g)).map_err(|e| e.to_string())?;
        check(back == k, "generator round trip")?;
        let set = ideal_span_set(amb, &[g]).map_err(|e| e.to_string())?;
        check(k.cardinality() == set.len().into(), "cardinality against explicit ideal")?;
    }
    Ok("27 codes".into())
}

fn criterion_6() -> Outcome {
    let a = check_duality(&z4_7(), 1 << 20).map_err(|e| e.to_string())?;
    let b = check_duality(&z9_22(), 1 << 20).map_err(|e| e.to_string())?;
    Ok(format!("{a} + {b}"))
}

fn exhaustive_nontrivial(dec: &Arc<Decomposition>) -> bool {
    let t = dec.ambient().ring().t();
    enumerate_codes(dec)
        .any(|k| is_selfdual(&k).unwrap() && !(t.is_multiple_of(2) && k.exponents().iter().all(|&v| v == t / 2)))
}

fn criterion_7() -> Outcome {
    check(nontrivial_selfdual_exists(&z4_7()).unwrap(), "Z4, e = 7")?;
    check(!nontrivial_selfdual_exists(&z9_22()).unwrap(), "Z9, e = (2,2)")?;
    check(!nontrivial_selfdual_exists(&z4_33()).unwrap(), "Z4, e = (3,3)")?;
    let dec = z4_7();
    let k = build_nontrivial_selfdual(&dec).map_err(|e| e.to_string())?;
    check(k.cardinality() == 128u32.into(), "|K| = 128")?;
    let amb = dec.ambient();
    let span = ideal_span(amb, &[k.generator()]);
    check(dual_bruteforce(amb, &span, 1 << 20).map_err(|e| e.to_string())? == span, "K = K^perp by brute force")?;
    check(k != SemisimpleCode::uniform(&dec, 1).unwrap(), "differs from <2>")?;
    let mut swept = 0;
    for p in [2u64, 3, 5] {
        for t in 1..=4u32 {
            for e1 in 1..=9usize {
                for e2 in 1..=4usize {
                    if (e1 as u64).is_multiple_of(p) || (e2 as u64).is_multiple_of(p) {
                        continue;
                    }
                    let m1 = format!("x^{e1}-1");
                    let m2 = format!("y^{e2}-1");
                    let dec = ambient(p, t, &[&m1, &m2]);
                    if (t as usize + 1).pow(dec.num_classes() as u32) > 1 << 14 {
                        continue;
                    }
                    let crit = nontrivial_selfdual_exists(&dec).unwrap();
                    check(crit == exhaustive_nontrivial(&dec), &format!("criterion vs sweep for p={p} t={t} e=({e1},{e2})"))?;
                    swept += 1;
                }
            }
        }
    }
    Ok(format!("criterion confirmed on {swept} ambients"))
}

fn criterion_8() -> Outcome {
    let dec = z4_7();
    // <x^3+2x^2+x+3>, the lift of the cyclic Hamming code
    let hamming = SemisimpleCode::from_generators(&dec, &[dec.ambient().parse_element("x^3+2*x^2+x+3").unwrap()])
        .map_err(|e| e.to_string())?;
    check(hamming.is_hensel_lift(), "Hamming lift is a Hensel lift")?;
    let h = hensel_lift_distance_check(&hamming, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    check(h.distance == 3 && h.residue_distance == Some(3), "d(K) = d(K mod 2) = 3")?;
    let mut total = 0;
    for dec in [z4_7(), z4_33(), z9_22(), ambient(2, 3, &["x^3-1", "y-1"]), ambient(3, 1, &["x^4-1", "y^2-1"])] {
        let amb = dec.ambient();
        let small = amb.ring().size().pow(amb.n() as u32) <= (1u32 << 20).into();
        for k in enumerate_codes(&dec).filter(|k| !k.is_zero()) {
            let d = min_distance(&k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            check(d == min_distance(&socle(&k), DEFAULT_BUDGET).unwrap(), "d(K) = d(socle K)")?;
            check(distance_bound(&k, DEFAULT_BUDGET).unwrap() <= d, "bound exceeds the distance")?;
            if small {
                let bf = distance_bruteforce(amb.ring(), &ideal_span(amb, &[k.generator()]), 1 << 20).unwrap();
                check(bf == d, "distance against enumeration over R")?;
            }
            total += 1;
        }
    }
    Ok(format!("d = 3 for the Hamming lift; {total} codes checked"))
}

fn criterion_9() -> Outcome {
    let rep = run_demo(1, 3).map_err(|e| e.to_string())?;
    check(rep.base_cardinality == 256, "|L| = 256")?;
    check(rep.length == 14, "length 14")?;
    check(rep.cardinality == 256, "projected cardinality 256")?;
    check(rep.witness.is_some(), "nonlinearity witness")?;
    let formula: Vec<String> = rep.formula_values.iter().map(|(n, v)| format!("n={n}: {v:.3}")).collect();
    Ok(format!("exact distance {}, formula {}", rep.exact_distance, formula.join(", ")))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Hensel factorization", criterion_1, Duration::from_secs(1)),
        ("class census", criterion_2, Duration::from_secs(1)),
        ("code counting", criterion_3, Duration::from_secs(60)),
        ("CRT and idempotents", criterion_4, Duration::from_secs(60)),
        ("generator round trip", criterion_5, Duration::from_secs(60)),
        ("duality", criterion_6, Duration::from_secs(300)),
        ("self-duality", criterion_7, Duration::from_secs(60)),
        ("distance", criterion_8, Duration::from_secs(300)),
        ("Kerdock demo", criterion_9, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; took {elapsed:?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
