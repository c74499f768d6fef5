//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Run with `cargo test -p commclass --test acceptance`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use commclass::formulas::top_witnesses;
use commclass::{
    a_max, a_min, build_graph, build_word_graph, canonical_labelling, class_words,
    diameter_bounds, diameter_formula, enumerate_reduced_words, gamma, is_balanced,
    longest_diameter, top_diameters_check, unimodal_diameter, word_from_labels, GraphOptions,
    Inversion, Labelling, Permutation, Word,
};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

fn word(n: usize, letters: &[u16]) -> Word {
    Word::new(n, letters.to_vec()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("{what} took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn opts() -> GraphOptions {
    GraphOptions::default()
}

/// BFS diameter of every `w` in `S_n` against the brute 321 count.
fn bfs_sweep(n: usize) -> Result<usize, String> {
    all_perms(n).par_iter().try_for_each(|v| {
        let g = build_graph(&perm(v), opts());
        let d = g.metrics().map_err(|e| format!("{}: {e}", compact(v)))?.diameter;
        ensure(d == count_321(v), || format!("{}: BFS diameter {d}, 321 count {}", compact(v), count_321(v)))
    })?;
    Ok(all_perms(n).len())
}

fn c1_running_example() -> Outcome {
    let start = Instant::now();
    let w = perm(&[4, 5, 6, 3, 1, 2]);
    let g = build_graph(&w, opts());
    let m = g.metrics().map_err(|e| e.to_string())?;
    let t = within(start, Duration::from_secs(1), "456312")?;
    ensure((g.class_count(), m.diameter, m.radius) == (10, 6, 3), || {
        format!("got {} classes, diameter {}, radius {}", g.class_count(), m.diameter, m.radius)
    })?;
    Ok(format!("10 classes, diameter 6, radius 3 in {t:.2?}"))
}

fn c2_diameter_sweep() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 1..=5 {
        checked += bfs_sweep(n)?;
    }
    let t5 = within(start, Duration::from_secs(30), "S_1..S_5")?;
    let start = Instant::now();
    checked += bfs_sweep(6)?;
    let t6 = within(start, Duration::from_secs(15 * 60), "S_6")?;
    Ok(format!("{checked} permutations; S_1..S_5 in {t5:.2?}, S_6 in {t6:.2?}"))
}

fn c3_longest_element() -> Outcome {
    for n in 3..=5 {
        let g = build_graph(&Permutation::longest(n), opts());
        let d = g.metrics().map_err(|e| e.to_string())?.diameter;
        ensure(d == binomial(n, 3), || format!("n = {n}: BFS diameter {d}"))?;
    }
    for n in 1..=8 {
        let v: Vec<usize> = (1..=n).rev().collect();
        let f = diameter_formula(&perm(&v));
        ensure(f == binomial(n, 3) && longest_diameter(n) == binomial(n, 3), || {
            format!("n = {n}: formula {f}")
        })?;
    }
    Ok("BFS for n = 3..5, closed form for n <= 8".into())
}

/// All bijective labellings of the inversions of `v`.
fn all_labellings(v: &[usize]) -> Vec<Labelling> {
    let w = perm(v);
    let inv: Vec<Inversion> = w.inversions();
    let mut labels: Vec<usize> = (1..=inv.len()).collect();
    let mut out = Vec::new();
    loop {
        out.push(inv.iter().copied().zip(labels.iter().copied()).collect());
        if !next_permutation(&mut labels) {
            return out;
        }
    }
}

/// Balanced labellings of `v` are exactly the canonical labellings of its
/// reduced words, and inversion recovers the word.
fn bijection_for(v: &[usize], reduced: &BTreeSet<Vec<u16>>) -> Result<(), String> {
    let w = perm(v);
    let n = v.len();
    let mut realized = BTreeSet::new();
    for labels in all_labellings(v) {
        if !is_balanced(&w, &labels).map_err(|e| e.to_string())? {
            continue;
        }
        let a = word_from_labels(&w, &labels)
            .map_err(|e| format!("{}: balanced labelling not realized: {e}", compact(v)))?;
        ensure(apply_letters(n, a.letters()) == v && is_reduced(n, a.letters()), || {
            format!("{}: recovered word {a} is not a reduced word", compact(v))
        })?;
        let back = canonical_labelling(&w, &a).map_err(|e| e.to_string())?;
        ensure(back.labelling() == labels, || format!("{}: labelling of {a} differs", compact(v)))?;
        realized.insert(a.letters().to_vec());
    }
    ensure(&realized == reduced, || {
        format!("{}: {} balanced labellings, {} reduced words", compact(v), realized.len(), reduced.len())
    })
}

fn c4_bijection() -> Outcome {
    for v in all_perms(4) {
        let reduced: BTreeSet<Vec<u16>> = brute_reduced_words(&v).into_iter().collect();
        bijection_for(&v, &reduced)?;
    }
    let mut small = 0;
    for n in 1..=6 {
        let perms: Vec<Vec<usize>> = all_perms(n).into_iter().filter(|v| inversion_count(v) <= 6).collect();
        small += perms.len();
        perms.par_iter().try_for_each(|v| {
            let reduced: BTreeSet<Vec<u16>> = enumerate_reduced_words(&perm(v), None)
                .items()
                .iter()
                .map(|a| a.letters().to_vec())
                .collect();
            bijection_for(v, &reduced)
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut random = 0;
    for n in [5, 6] {
        for _ in 0..1000 {
            let (v, letters) = random_reduced_word(&mut rng, n);
            let (w, a) = (perm(&v), word(n, &letters));
            let t = canonical_labelling(&w, &a).map_err(|e| e.to_string())?;
            ensure(is_balanced(&w, &t.labelling()) == Ok(true), || format!("{a}: not balanced"))?;
            let back = word_from_labels(&w, &t.labelling()).map_err(|e| e.to_string())?;
            ensure(back == a, || format!("{}: {a} came back as {back}", compact(&v)))?;
            random += 1;
        }
    }
    Ok(format!("S_4 exhaustive, {small} permutations with length <= 6, {random} random words"))
}

fn c5_signature_laws() -> Outcome {
    let mut classes = 0;
    for n in 1..=5 {
        classes += all_perms(n)
            .par_iter()
            .map(|v| -> Result<usize, String> {
                let w = perm(v);
                let tag = compact(v);
                let g = build_graph(&w, opts());
                let total: usize = g.classes().iter().map(|c| c.size.unwrap()).sum();
                let reduced = brute_reduced_words(v).len();
                ensure(total == reduced, || format!("{tag}: classes cover {total} of {reduced} words"))?;
                for c in g.classes() {
                    for a in class_words(&c.representative, usize::MAX).unwrap() {
                        let s = gamma(&w, &a).unwrap();
                        ensure(s == c.signature, || format!("{tag}: {a} has signature {s}, class {}", c.signature))?;
                    }
                }
                for &(i, j) in g.edges() {
                    let h = g.classes()[i].signature.hamming(&g.classes()[j].signature);
                    ensure(h == 1, || format!("{tag}: edge at signature distance {h}"))?;
                }
                let missing = g.missing_unit_edges().unwrap();
                ensure(missing.is_empty(), || format!("{tag}: {} unit-distance pairs not adjacent", missing.len()))?;
                let t = count_321(v);
                let lo = g.class_of(&a_min(&w)).unwrap();
                let hi = g.class_of(&a_max(&w)).unwrap();
                let (from_lo, from_hi) = (g.bfs_distances(lo).unwrap(), g.bfs_distances(hi).unwrap());
                for k in 0..g.class_count() {
                    let r = g.classes()[k].signature.count_ones();
                    ensure(from_lo[k] == r && from_hi[k] == t - r, || {
                        format!("{tag}: class {k} rank {r} at distances {} / {}", from_lo[k], from_hi[k])
                    })?;
                }
                Ok(g.class_count())
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
    }
    Ok(format!("{classes} classes over S_1..S_5"))
}

fn c6_graded_poset() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        for v in all_perms(n) {
            let report = build_graph(&perm(&v), opts()).poset_check().map_err(|e| e.to_string())?;
            ensure(report.passed(), || format!("{}: {:?}", compact(&v), report.violations))?;
            ensure(report.max_rank == count_321(&v), || format!("{}: top rank {}", compact(&v), report.max_rank))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} permutations"))
}

fn c7_fully_commutative() -> Outcome {
    let mut fc = 0;
    for n in 1..=6 {
        let counts: Vec<bool> = all_perms(n)
            .par_iter()
            .map(|v| -> Result<bool, String> {
                let w = perm(v);
                let braid_free = enumerate_reduced_words(&w, None).items().iter().all(|a| !has_braid_factor(a.letters()));
                let avoids = count_321(v) == 0;
                let one_class = build_graph(&w, opts()).class_count() == 1;
                let lib = w.is_fully_commutative() && w.avoids(&perm(&[3, 2, 1])).unwrap_or(true);
                ensure(braid_free == avoids && avoids == one_class && lib == avoids, || {
                    format!("{}: braid-free {braid_free}, 321-avoiding {avoids}, one class {one_class}", compact(v))
                })?;
                Ok(avoids)
            })
            .collect::<Result<_, _>>()?;
        let k = counts.iter().filter(|&&b| b).count();
        let catalan = binomial(2 * n, n) / (n + 1);
        ensure(k == catalan, || format!("n = {n}: {k} fully commutative, Catalan {catalan}"))?;
        fc += k;
    }
    Ok(format!("{fc} fully commutative permutations for n <= 6"))
}

fn c8_unimodal() -> Outcome {
    for n in 1..=10 {
        let built = unimodal_perms(n);
        let distinct: BTreeSet<&Vec<usize>> = built.iter().collect();
        ensure(distinct.len() == 1 << (n - 1), || format!("n = {n}: {} unimodal built", distinct.len()))?;
        for v in &built {
            let w = perm(v);
            let d = unimodal_diameter(&w).map_err(|e| e.to_string())?;
            ensure(d == count_321(v), || format!("{}: formula {d}, 321 count {}", compact(v), count_321(v)))?;
        }
        let counted = if n <= 9 {
            all_perms(n).iter().filter(|v| is_unimodal(v)).count()
        } else {
            Permutation::all(n).filter(|w| w.unimodal_peak().is_some()).count()
        };
        ensure(counted == 1 << (n - 1), || format!("n = {n}: {counted} unimodal in S_n"))?;
    }
    Ok("closed form for every unimodal w, n <= 10; 2^(n-1) of them".into())
}

fn c9_bounds_and_top() -> Outcome {
    for n in 4..=7 {
        let all = all_perms(n);
        let mut by_k: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut diameters = BTreeSet::new();
        for v in &all {
            let (k, d) = (binomial(n, 2) - inversion_count(v), count_321(v));
            let b = diameter_bounds(n, k).map_err(|e| e.to_string())?;
            let lower = binomial(n, 3) as i64 - (k * (n - 2)) as i64;
            ensure(b.lower == lower && b.upper == lower + binomial(k, 2) as i64, || {
                format!("n = {n}, k = {k}: bounds [{}, {}]", b.lower, b.upper)
            })?;
            ensure(b.contains(d), || format!("{}: diameter {d} outside [{}, {}]", compact(v), b.lower, b.upper))?;
            let e = by_k.entry(k).or_insert((d, d));
            *e = (e.0.min(d), e.1.max(d));
            diameters.insert(d);
        }
        let top: Vec<i64> = diameters.iter().rev().take(4).map(|&d| d as i64).collect();
        let d = binomial(n, 3) as i64;
        let n_ = n as i64;
        let expected = vec![d, d - n_ + 2, d - 2 * n_ + 5, d - 2 * n_ + 4];
        ensure(top == expected, || format!("n = {n}: top diameters {top:?}"))?;
        let report = top_diameters_check(n).map_err(|e| e.to_string())?;
        ensure(report.observed == expected, || format!("n = {n}: library reports {:?}", report.observed))?;
        for (w, e) in top_witnesses(n).iter().zip(&expected) {
            let c = count_321(w.oneline()) as i64;
            ensure(c == *e, || format!("n = {n}: witness {w} has diameter {c}, expected {e}"))?;
        }
        let at_top = all.iter().filter(|v| count_321(v) as i64 == d).count();
        ensure(at_top == 1, || format!("n = {n}: {at_top} permutations attain the maximum"))?;
    }
    Ok("bounds, four largest values and witnesses for n = 4..7".into())
}

fn c10_word_graph() -> Outcome {
    const LIMIT: usize = 10_000;
    let mut checked = 0;
    for n in 1..=6 {
        checked += all_perms(n)
            .par_iter()
            .map(|v| -> Result<usize, String> {
                let w = perm(v);
                if !enumerate_reduced_words(&w, Some(LIMIT)).is_complete() {
                    return Ok(0);
                }
                let wg = build_word_graph(&w, LIMIT).map_err(|e| e.to_string())?;
                ensure(wg.is_connected(), || format!("{}: word graph disconnected", compact(v)))?;
                ensure(wg.is_bipartite(), || format!("{}: word graph not bipartite", compact(v)))?;
                let c = wg.contract_commutations();
                ensure(c.is_isomorphic_to(&build_graph(&w, opts())), || {
                    format!("{}: contraction differs from class graph", compact(v))
                })?;
                Ok(1)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
    }
    Ok(format!("{checked} permutations with at most {LIMIT} reduced words"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("456312 has 10 classes, diameter 6, radius 3", c1_running_example),
        ("BFS diameter equals 321 count on S_1..S_6", c2_diameter_sweep),
        ("longest element has diameter binom(n,3)", c3_longest_element),
        ("balanced labellings biject with reduced words", c4_bijection),
        ("signature invariance, unit edges, rank distances", c5_signature_laws),
        ("class graph is a graded poset", c6_graded_poset),
        ("fully commutative, 321-avoiding, single class agree", c7_fully_commutative),
        ("unimodal closed form and count", c8_unimodal),
        ("diameter bounds and four largest diameters", c9_bounds_and_top),
        ("contracted word graph is the class graph", c10_word_graph),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  criterion {:>2}: {name} [{detail}] ({t:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {:>2}: {name} [{detail}] ({t:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
