//! One PASS/FAIL line per acceptance criterion, with its time budget.
//!
//! Run with `cargo test -p cluster-core --test acceptance`.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use cluster_core::cc::{caldero_chapoton, d4_three_lines, interval_module, interval_modules};
use cluster_core::exchange::{all_cluster_variables, denominator_vector, exchange_graph, ExchangeOptions};
use cluster_core::knitting::{knitting_variable_set, DynkinType};
use cluster_core::periodicity::{phi_order_check, verify_restricted_periodicity, Mode, PeriodicityOptions};
use cluster_core::quiver::{
    all_triangulations, canonical_form, classify, examples, flip, mutation_class,
    polygon_triangulation_quiver, ClassOptions, ClassSize, Classification, DEFAULT_CLASS_CAP,
};
use cluster_core::ydyn::YSeed;
use cluster_core::{IceQuiver, LaurentPolynomial, Seed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn run(name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let ok = out.ok && elapsed <= budget;
    println!(
        "{} {name}: {} [{:.2}s of {:.0}s]",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    ok
}

/// `sum c x^e / x^den` from `(exponents, coefficient)` pairs.
fn frac(n: usize, num: &[(&[i32], i64)], den: &[i32]) -> LaurentPolynomial {
    let shift: Vec<i32> = den.iter().map(|d| -d).collect();
    LaurentPolynomial::from_terms(n, num.iter().map(|(e, c)| (e.to_vec(), (*c).into()))).mul_monomial(&shift)
}

fn as_set(v: &[LaurentPolynomial]) -> BTreeSet<LaurentPolynomial> {
    v.iter().cloned().collect()
}

fn a2_enumeration() -> Outcome {
    let g = exchange_graph(&examples::linear_a(2), &ExchangeOptions::default()).unwrap();
    let expected = as_set(&[
        frac(2, &[(&[1, 0], 1)], &[0, 0]),
        frac(2, &[(&[0, 1], 1)], &[0, 0]),
        frac(2, &[(&[0, 0], 1), (&[0, 1], 1)], &[1, 0]),
        frac(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)], &[1, 1]),
        frac(2, &[(&[0, 0], 1), (&[1, 0], 1)], &[0, 1]),
    ]);
    let ok = g.complete && g.seeds.len() == 5 && g.edges.len() == 5 && g.is_regular(2) && as_set(&g.variables) == expected;
    check(ok, format!("{} seeds, {} edges, {} variables", g.seeds.len(), g.edges.len(), g.variables.len()))
}

fn a3_enumeration() -> Outcome {
    let g = exchange_graph(&examples::linear_a(3), &ExchangeOptions::default()).unwrap();
    let expected = as_set(&[
        frac(3, &[(&[1, 0, 0], 1)], &[0, 0, 0]),
        frac(3, &[(&[0, 1, 0], 1)], &[0, 0, 0]),
        frac(3, &[(&[0, 0, 1], 1)], &[0, 0, 0]),
        frac(3, &[(&[0, 0, 0], 1), (&[0, 1, 0], 1)], &[1, 0, 0]),
        frac(3, &[(&[1, 0, 0], 1), (&[0, 0, 1], 1), (&[0, 1, 1], 1)], &[1, 1, 0]),
        frac(3, &[(&[1, 0, 0], 1), (&[1, 1, 0], 1), (&[0, 0, 1], 1), (&[0, 1, 1], 1)], &[1, 1, 1]),
        frac(3, &[(&[1, 0, 0], 1), (&[0, 0, 1], 1)], &[0, 1, 0]),
        frac(3, &[(&[1, 0, 0], 1), (&[1, 1, 0], 1), (&[0, 0, 1], 1)], &[0, 1, 1]),
        frac(3, &[(&[0, 0, 0], 1), (&[0, 1, 0], 1)], &[0, 0, 1]),
    ]);
    let ok = g.complete
        && g.seeds.len() == 14
        && g.edges.len() == 21
        && g.is_regular(3)
        && as_set(&g.variables) == expected;
    check(ok, format!("{} seeds, {} edges, {} variables", g.seeds.len(), g.edges.len(), g.variables.len()))
}

fn g2_enumeration() -> Outcome {
    let vars = all_cluster_variables(&examples::g2(), &ExchangeOptions::default()).unwrap();
    let dens: BTreeSet<Vec<i32>> = vars
        .iter()
        .map(|v| denominator_vector(v).unwrap())
        .filter(|d| !d.is_initial())
        .map(|d| d.0)
        .collect();
    let roots: BTreeSet<Vec<i32>> =
        [[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]].iter().map(|r| r.to_vec()).collect();
    let ok = vars.len() == 8 && dens == roots;
    check(ok, format!("{} variables, denominators {:?}", vars.len(), dens))
}

fn quiver3_class() -> Outcome {
    let r = mutation_class(&examples::ten_vertex_triangular(), &ClassOptions::with_cap(DEFAULT_CLASS_CAP));
    let ok = r.class_size == ClassSize::Exact(5739) && r.double_arrow_count == 84 && r.high_multiplicity_count == 0;
    check(
        ok,
        format!(
            "{:?} classes, {} with a double arrow, {} with multiplicity >= 3",
            r.class_size, r.double_arrow_count, r.high_multiplicity_count
        ),
    )
}

fn triangle_strips() -> Outcome {
    let expected = ["A3", "D4", "D5", "E6", "E7", "E8"];
    let mut found = Vec::new();
    let mut ok = true;
    for (k, n) in (3..=8).enumerate() {
        let c = classify(&examples::triangle_strip(n), DEFAULT_CLASS_CAP).unwrap();
        let t = c.dynkin().map(|t| t.to_string()).unwrap_or_else(|| "?".into());
        ok &= t == expected[k];
        found.push(t);
    }
    let nine = classify(&examples::triangle_strip(9), DEFAULT_CLASS_CAP).unwrap();
    ok &= nine.is_infinite();
    let nine = match nine {
        Classification::Infinite { .. } => "infinite",
        Classification::Finite { .. } => "finite",
        Classification::Unknown { .. } => "unknown",
    };
    check(ok, format!("n=3..8 -> {}, n=9 -> {nine}", found.join(" ")))
}

/// Entries of the upper triangle drawn uniformly from `-1..=1`.
fn random_quiver(rng: &mut ChaCha8Rng, n: usize) -> IceQuiver {
    let mut b = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = rng.gen_range(-1..=1);
            b[i][j] = x;
            b[j][i] = -x;
        }
    }
    IceQuiver::new(n, b, None).unwrap()
}

fn max_entry(q: &IceQuiver) -> i32 {
    q.matrix().iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
}

/// A random walk of at most `len` steps, never repeating a vertex twice in a
/// row and only through quivers whose entries stay within `-2..=2`. Walks
/// through larger multiplicities make single variables exceed 10^8 terms.
fn random_walk(rng: &mut ChaCha8Rng, q: &IceQuiver, len: usize) -> Vec<usize> {
    let mut path: Vec<usize> = Vec::new();
    let mut cur = q.clone();
    while path.len() < len {
        let options: Vec<(usize, IceQuiver)> = (0..q.n())
            .filter(|&k| path.last() != Some(&k))
            .map(|k| (k, cur.mutate(k).unwrap()))
            .filter(|(_, next)| max_entry(next) <= 2)
            .collect();
        if options.is_empty() {
            break;
        }
        let (k, next) = options[rng.gen_range(0..options.len())].clone();
        path.push(k);
        cur = next;
    }
    path
}

fn laurent_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut failures, mut steps) = (0, 0);
    for _ in 0..500 {
        let n = rng.gen_range(2..=5);
        let q = random_quiver(&mut rng, n);
        let len = rng.gen_range(1..=8);
        let path = random_walk(&mut rng, &q, len);
        steps += path.len();
        match Seed::initial(q).mutate_sequence(&path) {
            Ok(s) if s.cluster.iter().all(|v| v.coefficients_positive()) => {}
            _ => failures += 1,
        }
    }
    check(failures == 0, format!("500 trials, {steps} mutations, {failures} failures"))
}

fn knitting_agreement() -> Outcome {
    let mut bad = Vec::new();
    for t in ["A2", "A3", "A4", "D4", "G2"] {
        let ty: DynkinType = t.parse().unwrap();
        let q = ty.linear_orientation();
        let knitted = as_set(&knitting_variable_set(&q).unwrap());
        let mutated = as_set(&all_cluster_variables(&q, &ExchangeOptions::default()).unwrap());
        if knitted != mutated {
            bad.push(t);
        }
    }
    check(bad.is_empty(), format!("A2 A3 A4 D4 G2, mismatches {bad:?}"))
}

fn variable_with_denominator(vars: &[LaurentPolynomial], d: &[usize]) -> Option<LaurentPolynomial> {
    let d: Vec<i32> = d.iter().map(|&x| x as i32).collect();
    vars.iter().find(|v| denominator_vector(v).map(|x| x.0 == d).unwrap_or(false)).cloned()
}

fn caldero_chapoton_suite() -> Outcome {
    let mut matched = 0;
    let mut total = 0;
    for n in [2, 3] {
        let q = examples::linear_a(n);
        let vars = all_cluster_variables(&q, &ExchangeOptions::default()).unwrap();
        for v in interval_modules(&q).unwrap() {
            total += 1;
            if Some(caldero_chapoton(&v).unwrap()) == variable_with_denominator(&vars, v.dims()) {
                matched += 1;
            }
        }
    }
    let d4 = caldero_chapoton(&d4_three_lines()).unwrap();
    let x4 = frac(
        4,
        &[
            (&[0, 0, 0, 0], 1),
            (&[0, 0, 0, 1], 3),
            (&[0, 0, 0, 2], 3),
            (&[0, 0, 0, 3], 1),
            (&[1, 1, 1, 0], 2),
            (&[1, 1, 1, 1], 3),
            (&[2, 2, 2, 0], 1),
        ],
        &[1, 1, 1, 2],
    );
    let a2 = examples::linear_a(2);
    let cc = |p, q| caldero_chapoton(&interval_module(&a2, p, q).unwrap()).unwrap();
    let almost_split = cc(1, 2).add(&LaurentPolynomial::one(2)) == cc(2, 2).mul(&cc(1, 1));
    let ok = matched == 9 && total == 9 && d4 == x4 && almost_split;
    check(
        ok,
        format!(
            "{matched}/{total} interval modules, D4 X4 {}, almost-split identity {}",
            if d4 == x4 { "exact" } else { "differs" },
            if almost_split { "holds" } else { "fails" }
        ),
    )
}

fn y_identity_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut nodes, mut failures) = (0, 0);
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let q = random_quiver(&mut rng, n);
        let path = random_walk(&mut rng, &q, 10);
        let mut s = YSeed::initial(q).unwrap();
        for k in path {
            match s.mutate(k) {
                Ok(next) => s = next,
                Err(_) => {
                    failures += 1;
                    break;
                }
            }
            nodes += 1;
            if !s.identity_holds() {
                failures += 1;
            }
        }
    }
    check(failures == 0, format!("{nodes} nodes on 100 paths, {failures} failures"))
}

fn periodicity_exact() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (a, b) in [("A2", "A1"), ("A2", "A2"), ("A3", "A2")] {
        let c = verify_restricted_periodicity(
            a.parse().unwrap(),
            b.parse().unwrap(),
            &PeriodicityOptions::new(Mode::Exact),
        )
        .unwrap();
        ok &= c.divides;
        parts.push(format!("({a},{b}) period {:?} | {}", c.period, c.h + c.h_prime));
    }
    for (a, b) in [("A2", "A1"), ("A1", "A1")] {
        let phi = phi_order_check(a.parse().unwrap(), b.parse().unwrap(), Mode::Exact, 0).unwrap();
        ok &= phi;
        parts.push(format!("phi^(h+h') = id on ({a},{b}): {phi}"));
    }
    check(ok, parts.join("; "))
}

fn periodicity_modular() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (a, b) in [("A3", "A3"), ("A4", "A3")] {
        let c = verify_restricted_periodicity(
            a.parse().unwrap(),
            b.parse().unwrap(),
            &PeriodicityOptions::new(Mode::Modular),
        )
        .unwrap();
        ok &= c.divides && c.primes.len() == 3;
        parts.push(format!("({a},{b}) period {:?} | {}", c.period, c.h + c.h_prime));
    }
    check(ok, parts.join("; "))
}

fn hexagon() -> Outcome {
    let ts: Vec<Vec<(usize, usize)>> = all_triangulations(3);
    let index: HashMap<Vec<(usize, usize)>, usize> = ts.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges = BTreeSet::new();
    let mut degree = vec![0; ts.len()];
    let mut mismatches = 0;
    for (i, t) in ts.iter().enumerate() {
        let tq = polygon_triangulation_quiver(3, t).unwrap();
        for k in 0..3 {
            let flipped = flip(3, t, k).unwrap();
            let fq = polygon_triangulation_quiver(3, &flipped).unwrap();
            if canonical_form(&fq.quiver) != canonical_form(&tq.quiver.mutate(k).unwrap()) {
                mismatches += 1;
            }
            let mut sorted = flipped.clone();
            sorted.sort_unstable();
            let j = index[&sorted];
            degree[i] += 1;
            edges.insert((i.min(j), i.max(j)));
        }
    }
    let ok = ts.len() == 14 && edges.len() == 21 && degree.iter().all(|&d| d == 3) && mismatches == 0;
    check(
        ok,
        format!("{} triangulations, {} flips, {mismatches} flip/mutation mismatches", ts.len(), edges.len()),
    )
}

fn main() {
    let s = Duration::from_secs;
    let results = [
        run("A2 enumeration", s(1), a2_enumeration),
        run("A3 enumeration", s(1), a3_enumeration),
        run("G2 enumeration", s(1), g2_enumeration),
        run("quiver (3) mutation class", s(300), quiver3_class),
        run("triangle-strip classification", s(120), triangle_strips),
        run("Laurent phenomenon suite", s(60), laurent_suite),
        run("knitting agrees with mutation", s(60), knitting_agreement),
        run("Caldero-Chapoton", s(30), caldero_chapoton_suite),
        run("Y-seed identity suite", s(120), y_identity_suite),
        run("periodicity, exact pairs", s(120), periodicity_exact),
        run("periodicity, modular pairs", s(300), periodicity_modular),
        run("hexagon triangulations", s(60), hexagon),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
