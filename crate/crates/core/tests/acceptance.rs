//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact; the only
//! tolerances are the wall-clock limits below.

mod common;

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use quiverdt::cli::auto_q;
use quiverdt::fforacle::{
    additive_side, burnside_count, multiplicity_oracle, orbit_count, verify_om, ClassTable,
    Endpoint, Fq, Which, DEFAULT_BUDGET,
};
use quiverdt::invariants::{dt_invariants, dt_via_steinberg, kac_polynomials, total_count_series};
use quiverdt::numkernel::{rational_to_string, Poly, RationalFunction, TruncatedSeries, Q};
use quiverdt::parttype::{enumerate_multipartitions, multipartitions_in_box, MultiPartition};
use quiverdt::plethys::{log_via_types, pexp, plog, FamilyTable};
use quiverdt::quivermod::{extended_quiver, parity_holds, variety_dim, Quiver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{compositions, corpus, gcd_all, random_ratfun, vectors_up_to};

const LIMIT_1: Duration = Duration::from_secs(10);
const LIMIT_2: Duration = Duration::from_secs(30);
const LIMIT_3: Duration = Duration::from_secs(120);
const LIMIT_4: Duration = Duration::from_secs(180);
const LIMIT_5: Duration = Duration::from_secs(1);
const LIMIT_6: Duration = Duration::from_secs(60);
const LIMIT_7: Duration = Duration::from_secs(60);
const LIMIT_8: Duration = Duration::from_secs(10);
const LIMIT_9: Duration = Duration::from_secs(120);
const LIMIT_10: Duration = Duration::from_secs(10);
const LIMIT_11: Duration = Duration::from_secs(60);

/// Largest field the oracles are allowed to use.
const MAX_Q: u32 = 9;

type Outcome = Result<String, String>;

struct Criterion {
    number: u32,
    name: &'static str,
    run: fn() -> Outcome,
    limit: Duration,
}

fn t_pow(k: usize) -> RationalFunction {
    RationalFunction::from_poly(Poly::monomial(Q::from_integer(1.into()), k))
}

fn int(n: i64) -> RationalFunction {
    RationalFunction::from_int(n)
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for case in 0..200 {
        let r = rng.gen_range(1..=2);
        let bound: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=4)).collect();
        let mut s = TruncatedSeries::zero(&bound);
        for w in quiverdt::numkernel::series::box_points(&bound) {
            if w.iter().any(|&x| x != 0) && rng.gen_bool(0.6) {
                s.set(&w, random_ratfun(&mut rng));
            }
        }
        let back = plog(&pexp(&s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if back != s {
            return Err(format!("case {case}: plog(pexp(s)) != s on box {bound:?}"));
        }
        let h = TruncatedSeries::one(&bound)
            .add(&s)
            .map_err(|e| e.to_string())?;
        let back = pexp(&plog(&h).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if back != h {
            return Err(format!("case {case}: pexp(plog(h)) != h on box {bound:?}"));
        }
    }
    Ok("200 series, both directions".into())
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut coefficients = 0;
    for case in 0..50 {
        let r = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=5);
        let choices = compositions(r, n);
        let bound = choices[rng.gen_range(0..choices.len())].clone();
        let values: HashMap<MultiPartition, RationalFunction> = multipartitions_in_box(&bound)
            .into_iter()
            .filter(|mu| !mu.is_zero())
            .map(|mu| (mu, random_ratfun(&mut rng)))
            .collect();
        let h = FamilyTable::from_map(r, values);
        let by_types = log_via_types(&h, &bound).map_err(|e| e.to_string())?;
        let by_log = plog(&h.series(&bound)).map_err(|e| e.to_string())?;
        for w in quiverdt::numkernel::series::box_points(&bound) {
            if w.iter().all(|&x| x == 0) {
                continue;
            }
            coefficients += 1;
            if by_types.coeff(&w) != by_log.coeff(&w) {
                return Err(format!(
                    "case {case}, w={w:?}: type sum {} != Log {}",
                    by_types.coeff(&w),
                    by_log.coeff(&w)
                ));
            }
        }
    }
    Ok(format!("50 tables, {coefficients} coefficients"))
}

fn oracle(gamma: &Quiver, v: &[usize], q: u32, which: Which) -> Result<Q, String> {
    let f = Fq::new(q).map_err(|e| e.to_string())?;
    let table = ClassTable::by_classes(v, &f, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    multiplicity_oracle(gamma, &table, which).map_err(|e| e.to_string())
}

fn eval(f: &RationalFunction, q: u32) -> Result<Q, String> {
    f.eval(&Q::from_integer(q.into()))
        .map_err(|e| e.to_string())
}

fn criterion_3() -> Outcome {
    let cases: [(&str, Quiver, Vec<usize>, RationalFunction, u32); 6] = [
        ("jordan", Quiver::jordan(), vec![1], t_pow(1), 2),
        ("jordan", Quiver::jordan(), vec![2], t_pow(1), 3),
        ("jordan", Quiver::jordan(), vec![3], t_pow(1), 7),
        ("arrowless", Quiver::arrowless(1), vec![1], int(1), 2),
        ("arrowless", Quiver::arrowless(1), vec![2], int(0), 3),
        ("a2", Quiver::a2(), vec![1, 1], int(1), 3),
    ];
    let mut notes = Vec::new();
    for (name, gamma, v, expected, q) in cases {
        let kac = kac_polynomials(&gamma, &v).map_err(|e| e.to_string())?;
        let got = &kac[&v];
        if *got != expected {
            return Err(format!("{name} A{v:?} = {got}, expected {expected}"));
        }
        let by_oracle = oracle(&gamma, &v, q, Which::Trivial)?;
        let want = eval(&expected, q)?;
        if by_oracle != want {
            return Err(format!(
                "{name} A{v:?}({q}): oracle {} != {}",
                rational_to_string(&by_oracle),
                rational_to_string(&want)
            ));
        }
        notes.push(format!("{name}{v:?}@{q}"));
    }
    Ok(notes.join(" "))
}

fn criterion_4() -> Outcome {
    let quivers = [
        ("arrowless", Quiver::arrowless(1)),
        ("jordan", Quiver::jordan()),
        ("a2", Quiver::a2()),
    ];
    let mut checked = 0;
    for (name, gamma) in quivers {
        for v in vectors_up_to(gamma.r(), 4) {
            let by_gf = dt_invariants(&gamma, &v).map_err(|e| e.to_string())?;
            let by_st = dt_via_steinberg(&gamma, &v).map_err(|e| e.to_string())?;
            if by_gf != by_st {
                return Err(format!(
                    "{name} {v:?}: generating function and Steinberg routes differ"
                ));
            }
            let q = auto_q(v.iter().sum(), MAX_Q).map_err(|e| e.to_string())?;
            let dt = &by_gf[&v];
            let by_oracle = oracle(&gamma, &v, q, Which::Steinberg)?;
            if by_oracle != eval(dt, q)? {
                return Err(format!(
                    "{name} DT{v:?}({q}) = {} but the Steinberg oracle gives {}",
                    rational_to_string(&eval(dt, q)?),
                    rational_to_string(&by_oracle)
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} dimension vectors"))
}

fn criterion_5() -> Outcome {
    let arrowless = dt_invariants(&Quiver::arrowless(1), &[1]).map_err(|e| e.to_string())?;
    let jordan = dt_invariants(&Quiver::jordan(), &[1]).map_err(|e| e.to_string())?;
    if arrowless[&vec![1]] != int(1) {
        return Err(format!("arrowless DT(1) = {}", arrowless[&vec![1]]));
    }
    if jordan[&vec![1]] != t_pow(1) {
        return Err(format!("jordan DT(1) = {}", jordan[&vec![1]]));
    }
    Ok("arrowless DT(1) = 1, jordan DT(1) = t".into())
}

fn criterion_6() -> Outcome {
    let mut types = 0;
    for (v, q, by_elements) in [
        (vec![2], 3, true),
        (vec![1, 1], 3, true),
        (vec![3], 7, false),
        (vec![1, 2], 7, false),
    ] {
        let f = Fq::new(q).map_err(|e| e.to_string())?;
        let table = if by_elements {
            ClassTable::by_elements(&v, &f, DEFAULT_BUDGET)
        } else {
            ClassTable::by_classes(&v, &f, DEFAULT_BUDGET)
        }
        .map_err(|e| e.to_string())?;
        let report = verify_om(&table).map_err(|e| e.to_string())?;
        if let Some(bad) = report.entries.iter().find(|e| !e.pass) {
            return Err(format!(
                "v={v:?} q={q} type {}: {} != {}",
                bad.omega, bad.lhs, bad.rhs
            ));
        }
        types += report.entries.len();
    }
    Ok(format!("{types} types"))
}

fn criterion_7() -> Outcome {
    let cases = [
        ("a2", Quiver::a2(), vec![1, 1], 3, Endpoint::Kac),
        ("jordan", Quiver::jordan(), vec![1], 2, Endpoint::Dt),
        ("arrowless", Quiver::arrowless(1), vec![2], 3, Endpoint::Dt),
    ];
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for (name, gamma, v, q, endpoint) in cases {
        let which = match endpoint {
            Endpoint::Kac => Which::Trivial,
            Endpoint::Dt => Which::Steinberg,
        };
        let by_oracle = oracle(&gamma, &v, q, which)?;
        let f = Fq::new(q).map_err(|e| e.to_string())?;
        match additive_side(&gamma, &v, &f, endpoint, DEFAULT_BUDGET) {
            Ok(x) if x == by_oracle => {
                notes.push(format!("{name}{v:?}@{q}={}", rational_to_string(&x)))
            }
            Ok(x) => failures.push(format!(
                "{name}{v:?}@{q}: additive {} != oracle {}",
                rational_to_string(&x),
                rational_to_string(&by_oracle)
            )),
            Err(e) => failures.push(format!(
                "{name}{v:?}@{q}: {e} (oracle {})",
                rational_to_string(&by_oracle)
            )),
        }
    }
    if failures.is_empty() {
        Ok(notes.join(" "))
    } else {
        Err(format!(
            "{}; passed: {}",
            failures.join("; "),
            notes.join(" ")
        ))
    }
}

/// `sum_k (lambda'_k)^2`, the centralizer dimension of a nilpotent of
/// Jordan type `lambda`.
fn nilpotent_centralizer_dim(parts: &[usize]) -> i64 {
    let longest = parts.iter().copied().max().unwrap_or(0);
    (1..=longest)
        .map(|k| parts.iter().filter(|&&p| p >= k).count() as i64)
        .map(|c| c * c)
        .sum()
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for (name, gamma) in corpus() {
        for v in vectors_up_to(gamma.r(), 5) {
            if !parity_holds(&gamma, &v) {
                return Err(format!("{name} {v:?}: parity fails"));
            }
            let arrows_pairing: i64 = gamma
                .arrows()
                .iter()
                .map(|&(i, j)| (v[i] * v[j]) as i64)
                .sum();
            let sq: i64 = v.iter().map(|&x| (x * x) as i64).sum();
            for mu in enumerate_multipartitions(&v) {
                let orbits: i64 = mu
                    .components()
                    .iter()
                    .zip(&v)
                    .map(|(lam, &n)| (n * n) as i64 - nilpotent_centralizer_dim(lam.parts()))
                    .sum();
                let by_orbits = 2 * arrows_pairing + orbits - 2 * (sq - 1);

                let ext = extended_quiver(&gamma, &v, &mu.dual()).map_err(|e| e.to_string())?;
                let d = &ext.dims;
                let ext_sq: i64 = d.iter().map(|&x| (x * x) as i64).sum();
                let ext_pairing: i64 = ext
                    .quiver
                    .arrows()
                    .iter()
                    .map(|&(a, b)| (d[a] * d[b]) as i64)
                    .sum();
                let by_cartan = 2 - (2 * ext_sq - 2 * ext_pairing);

                if by_orbits != by_cartan {
                    return Err(format!(
                        "{name} {v:?} mu={mu}: orbits {by_orbits} != Cartan {by_cartan}"
                    ));
                }
                let lib = variety_dim(&gamma, &v, &mu).map_err(|e| e.to_string())?;
                if lib.dimension != by_cartan {
                    return Err(format!(
                        "{name} {v:?} mu={mu}: library {} != {by_cartan}",
                        lib.dimension
                    ));
                }
                if by_cartan % 2 != 0 {
                    return Err(format!("{name} {v:?} mu={mu}: odd dimension {by_cartan}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (quiver, v, mu) triples"))
}

type CorpusValues = (
    &'static str,
    Quiver,
    BTreeMap<Vec<usize>, (RationalFunction, RationalFunction)>,
);

/// `(A_w, DT_w)` for every nonzero `w` with `sum w <= 5`, one quiver at a time.
fn corpus_values() -> Result<Vec<CorpusValues>, String> {
    let mut out = Vec::new();
    for (name, gamma) in corpus() {
        let mut values = BTreeMap::new();
        for top in compositions(gamma.r(), 5) {
            let kac = kac_polynomials(&gamma, &top).map_err(|e| e.to_string())?;
            let dt = dt_invariants(&gamma, &top).map_err(|e| e.to_string())?;
            for (w, a) in kac {
                let d = dt[&w].clone();
                values.entry(w).or_insert((a, d));
            }
        }
        out.push((name, gamma, values));
    }
    Ok(out)
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for (name, _, values) in corpus_values()? {
        for (w, (a, dt)) in &values {
            if !a.is_nonnegative_integer_polynomial() {
                return Err(format!("{name} A{w:?} = {a}"));
            }
            if !dt.is_nonnegative_integer_polynomial() {
                return Err(format!("{name} DT{w:?} = {dt}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (quiver, w) pairs"))
}

fn criterion_10() -> Outcome {
    let mut checked = 0;
    let mut non_roots = 0;
    for (name, gamma, values) in corpus_values()? {
        for (w, (a, _)) in values.iter().filter(|(w, _)| gcd_all(w) == 1) {
            if a.is_zero() {
                non_roots += 1;
                continue;
            }
            let deg = a
                .as_polynomial()
                .and_then(Poly::degree)
                .ok_or(format!("{name} A{w:?} = {a}"))? as i64;
            let dim = variety_dim(&gamma, w, &MultiPartition::columns(w))
                .map_err(|e| e.to_string())?
                .dimension;
            if 2 * deg != dim {
                return Err(format!("{name} w={w:?}: deg A = {deg}, dimension {dim}"));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} indivisible w, {non_roots} with A_w = 0 skipped"
    ))
}

fn criterion_11() -> Outcome {
    let mut notes = Vec::new();
    for (name, gamma, v, q) in [
        ("jordan", Quiver::jordan(), vec![2], 2),
        ("a2", Quiver::a2(), vec![1, 1], 3),
    ] {
        let totals = total_count_series(&gamma, &v, q).map_err(|e| e.to_string())?;
        let total = &totals[&v];
        let f = Fq::new(q).map_err(|e| e.to_string())?;
        let burnside = burnside_count(&gamma, &v, &f, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let orbits = Q::from_integer(
            orbit_count(&gamma, &v, &f, DEFAULT_BUDGET)
                .map_err(|e| e.to_string())?
                .into(),
        );
        if *total != burnside || burnside != orbits {
            return Err(format!(
                "{name}{v:?}@{q}: series {} burnside {} orbits {}",
                rational_to_string(total),
                rational_to_string(&burnside),
                rational_to_string(&orbits)
            ));
        }
        notes.push(format!("{name}{v:?}@{q}={}", rational_to_string(total)));
    }
    Ok(notes.join(" "))
}

fn main() {
    let criteria = [
        Criterion {
            number: 1,
            name: "plethystic inverse",
            run: criterion_1,
            limit: LIMIT_1,
        },
        Criterion {
            number: 2,
            name: "type sum equals Log",
            run: criterion_2,
            limit: LIMIT_2,
        },
        Criterion {
            number: 3,
            name: "Kac values",
            run: criterion_3,
            limit: LIMIT_3,
        },
        Criterion {
            number: 4,
            name: "DT routes and Steinberg oracle",
            run: criterion_4,
            limit: LIMIT_4,
        },
        Criterion {
            number: 5,
            name: "DT seeds",
            run: criterion_5,
            limit: LIMIT_5,
        },
        Criterion {
            number: 6,
            name: "class sums of the generic character",
            run: criterion_6,
            limit: LIMIT_6,
        },
        Criterion {
            number: 7,
            name: "additive endpoints",
            run: criterion_7,
            limit: LIMIT_7,
        },
        Criterion {
            number: 8,
            name: "dimension consistency",
            run: criterion_8,
            limit: LIMIT_8,
        },
        Criterion {
            number: 9,
            name: "positivity",
            run: criterion_9,
            limit: LIMIT_9,
        },
        Criterion {
            number: 10,
            name: "degree law",
            run: criterion_10,
            limit: LIMIT_10,
        },
        Criterion {
            number: 11,
            name: "total counts",
            run: criterion_11,
            limit: LIMIT_11,
        },
    ];
    let mut failed = Vec::new();
    for Criterion {
        number: n,
        name,
        run,
        limit,
    } in criteria
    {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.2?} > {limit:?}")),
            Err(d) => (false, d),
        };
        println!(
            "{} criterion {n:>2} {name} [{elapsed:.2?} / {limit:?}]: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
