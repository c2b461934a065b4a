//! Acceptance criteria 1–11, one line each. Every comparison is exact
//! (rational or Laurent-polynomial equality); there are no tolerances.
//! Runs without the libtest harness so the lines always show.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use a2web::exactmath::{parse_rational, ExactMatrix, Rational};
use a2web::immanants::{immanant_table, irreducible_webs, parabolic_image, tnn_check};
use a2web::labelings::{coefficient_mismatch, kappa, kappa_combo, BoundaryLabeling, SquareRule};
use a2web::minors::{all_triples, decompose_triple, triple_product, MinorTriple};
use a2web::networks::PlanarNetwork;
use a2web::perm::all_perms;
use a2web::spider::{find_reducible_face, reduce, relation_suite, second_generator, theta3, Spider, WebCombo};
use a2web::tlbridge::{
    admissible_boundaries, all_pair_boundaries, bridge_count, bridge_report, m_count, pair_product,
    ThirdMinor, TlTable,
};
use a2web::verify::small_network;
use a2web::webcore::{RenderStyle, Web};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const SEED: u64 = 20_241_016;

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn random_word(r: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| r.gen_range(1..n)).collect()
}

// ---- independent oracles ------------------------------------------------

/// Permutations of `[n]` with no decreasing subsequence of length 4, by
/// scanning every index quadruple of every permutation (Heap's algorithm).
fn oracle_4321_avoiders(n: usize) -> usize {
    fn heap(k: usize, a: &mut Vec<usize>, count: &mut usize) {
        if k <= 1 {
            let n = a.len();
            let bad = (0..n).any(|i| {
                (i + 1..n).any(|j| {
                    a[i] > a[j] && (j + 1..n).any(|k| a[j] > a[k] && (k + 1..n).any(|l| a[k] > a[l]))
                })
            });
            *count += usize::from(!bad);
            return;
        }
        for i in 0..k {
            heap(k - 1, a, count);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut count = 0;
    heap(n, &mut a, &mut count);
    count
}

/// Kostka number: semistandard tableaux of shape `3ⁿ` (n rows of length 3)
/// with content `1ⁿ 2ⁿ` (n values used twice, n values used once), by
/// row-by-row filling.
fn oracle_kostka(n: usize) -> usize {
    fn go(cell: usize, n: usize, grid: &mut [[usize; 3]], left: &mut [usize]) -> usize {
        if cell == 3 * n {
            return 1;
        }
        let (r, c) = (cell / 3, cell % 3);
        let mut total = 0;
        for v in 0..left.len() {
            let row_ok = c == 0 || grid[r][c - 1] <= v;
            let col_ok = r == 0 || grid[r - 1][c] < v;
            if left[v] > 0 && row_ok && col_ok {
                left[v] -= 1;
                grid[r][c] = v;
                total += go(cell + 1, n, grid, left);
                left[v] += 1;
            }
        }
        total
    }
    let mut left: Vec<usize> = (0..2 * n).map(|v| if v < n { 1 } else { 2 }).collect();
    let mut grid = vec![[0usize; 3]; n];
    go(0, n, &mut grid, &mut left)
}

// ---- criteria -----------------------------------------------------------

fn c1_dimensions() -> Outcome {
    let mut found = Vec::new();
    for n in 1..=5 {
        let webs = irreducible_webs(n).map_err(e)?;
        let (avoid, kostka) = (oracle_4321_avoiders(n), oracle_kostka(n));
        ensure(webs.len() == avoid && avoid == kostka, || {
            format!("n={n}: {} webs, {avoid} avoiders, Kostka {kostka}", webs.len())
        })?;
        for w in &webs {
            ensure(find_reducible_face(w.map()).is_none(), || format!("n={n}: reducible web {}", w.code()))?;
        }
        found.push(webs.len().to_string());
    }
    Ok(format!("n=1..5 -> {} (4321 scan and Kostka agree)", found.join(", ")))
}

fn c2_relations() -> Outcome {
    let mut total = 0;
    for n in 2..=4 {
        let rep = relation_suite(n).map_err(e)?;
        if let Some(bad) = rep.checks.iter().find(|c| !c.passed) {
            return Err(format!("n={n}: {} ({})", bad.name, bad.detail));
        }
        total += rep.checks.len();
    }
    Ok(format!("{total} relation instances at n=2..4, generic q"))
}

fn c3_confluence() -> Outcome {
    let mut r = rng(3);
    let mut canonical = Spider::new();
    for s in 0..100u64 {
        let n = r.gen_range(2..=4);
        let len = r.gen_range(1..=8);
        let word = random_word(&mut r, n, len);
        let w = Web::from_word(n, &word).map_err(e)?;
        let base = canonical.reduce_web(&w).map_err(e)?;
        for k in 0..5u64 {
            let other = Spider::randomized(SEED ^ (s << 8) ^ k).reduce_web(&w).map_err(e)?;
            ensure(base.same_terms(&other), || format!("{word:?} on {n} strands, order {k}"))?;
        }
    }
    let mut words = 0;
    for _ in 0..20 {
        let n = r.gen_range(2..=4);
        let w = all_perms(n).choose(&mut r).expect("nonempty").clone();
        let all = w.all_reduced_words();
        let base = theta3(n, &all[0]).map_err(e)?;
        for word in &all[1..] {
            ensure(theta3(n, word).map_err(e)?.same_terms(&base), || {
                format!("theta3({}) differs on {word:?}", w.one_line())
            })?;
        }
        words += all.len();
    }
    Ok(format!("100 products x 5 orders; 20 permutations, {words} reduced words"))
}

fn c4_kappa() -> Outcome {
    let mut r = rng(4);
    for _ in 0..50 {
        let n = r.gen_range(2..=3);
        let (la, lb) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let (wa, wb) = (random_word(&mut r, n, la), random_word(&mut r, n, lb));
        let a = Web::from_word(n, &wa).map_err(e)?;
        let b = Web::from_word(n, &wb).map_err(e)?;
        let prod = kappa(&a).map_err(e)?.mul(&kappa(&b).map_err(e)?);
        let ab = a.concatenate(&b).map_err(e)?;
        let (red, _) = reduce(&ab).map_err(e)?;
        ensure(kappa(&ab).map_err(e)? == prod && kappa_combo(&red).map_err(e)? == prod, || format!("{wa:?} * {wb:?} on {n} strands"))?;
    }
    let mut ranks = Vec::new();
    for n in 1..=4 {
        let webs = irreducible_webs(n).map_err(e)?;
        let gs = BoundaryLabeling::all_balanced(n);
        let rows: Vec<Vec<Rational>> = webs
            .iter()
            .map(|w| {
                let k = kappa(w).map(|k| k.eval_q1())?;
                Ok(gs.iter().map(|g| k.get(g).cloned().unwrap_or_else(Rational::zero)).collect())
            })
            .collect::<a2web::Result<_>>()
            .map_err(e)?;
        let rank = ExactMatrix::rank_of_rows(&rows);
        ensure(rank == webs.len(), || format!("n={n}: rank {rank} < {}", webs.len()))?;
        ranks.push(rank.to_string());
    }
    Ok(format!("50 pairs multiplicative; q=1 ranks {} (full)", ranks.join(", ")))
}

fn c5_coefficients() -> Outcome {
    let mut r = rng(5);
    let mut tested = 0;
    let mut terms = 0;
    while tested < 30 {
        let n = r.gen_range(2..=4);
        let len = r.gen_range(2..=6);
        let word = random_word(&mut r, n, len);
        let w = Web::from_word(n, &word).map_err(e)?;
        if find_reducible_face(w.map()).is_none() {
            continue;
        }
        tested += 1;
        terms += reduce(&w).map_err(e)?.0.len();
        if let Some(msg) = coefficient_mismatch(&w, SquareRule::default()).map_err(e)? {
            return Err(format!("{word:?} on {n} strands: {msg}"));
        }
    }
    Ok(format!("30 reducible webs, {terms} irreducible components, generic q"))
}

fn c6_alpha() -> Outcome {
    let mut r = rng(6);
    let (mut maps, mut drawings) = (0, 0);
    while maps < 20 {
        let n = r.gen_range(2..=4);
        let len = r.gen_range(1..=6);
        let word = random_word(&mut r, n, len);
        let w = Web::from_word(n, &word).map_err(e)?;
        let mut distinct = vec![w.clone()];
        for style in RenderStyle::ALL {
            let d = w.redrawn(style).map_err(e)?;
            if distinct.iter().all(|x| x.diagram() != d.diagram()) {
                distinct.push(d);
            }
        }
        if distinct.len() < 2 {
            continue;
        }
        maps += 1;
        drawings += distinct.len();
        let base = kappa(&w).map_err(e)?;
        for d in &distinct[1..] {
            ensure(kappa(d).map_err(e)? == base, || format!("{word:?} on {n} strands"))?;
        }
    }
    Ok(format!("{maps} maps, {drawings} distinct drawings"))
}

fn triple_ok(t: &MinorTriple, r: &mut ChaCha8Rng) -> Result<(), String> {
    let d = decompose_triple(t).map_err(e)?;
    for _ in 0..5 {
        let x = ExactMatrix::random_small(t.n(), r);
        let (lhs, rhs) = (triple_product(t, &x).map_err(e)?, d.evaluate(&x).map_err(e)?);
        ensure(lhs == rhs, || format!("{t}: {lhs} != {rhs} on {x:?}"))?;
    }
    Ok(())
}

fn c7_triples() -> Outcome {
    let mut r = rng(7);
    let all3 = all_triples(3);
    for t in &all3 {
        triple_ok(t, &mut r)?;
    }
    let all4 = all_triples(4);
    for t in all4.choose_multiple(&mut r, 50) {
        triple_ok(t, &mut r)?;
    }
    for n in 1..=4 {
        let full: Vec<usize> = (1..=n).collect();
        let t = MinorTriple::new(n, [full.clone(), vec![], vec![]], [full, vec![], vec![]]).map_err(e)?;
        let d = decompose_triple(&t).map_err(e)?;
        for _ in 0..5 {
            let x = ExactMatrix::random_small(n, &mut r);
            ensure(d.evaluate(&x).map_err(e)? == x.det(), || format!("determinant case n={n}"))?;
        }
    }
    Ok(format!("{} triples at n=3, 50 of {} at n=4, 5 matrices each; det n=1..4", all3.len(), all4.len()))
}

fn c8_parabolic() -> Outcome {
    let n = 4;
    for i in 1..n {
        for j in i + 1..=n {
            let got = parabolic_image(n, i, j).map_err(e)?.at_q1();
            let want = match j - i {
                1 => WebCombo::from_web(&Web::generator_e1(n, i).map_err(e)?),
                2 => WebCombo::from_web(&second_generator(n, i).map_err(e)?),
                _ => WebCombo::zero(n),
            };
            ensure(got.same_terms(&want.at_q1()), || format!("[{i},{j}] gives {got}"))?;
        }
    }
    Ok("all 6 intervals of [1,4]".into())
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0usize..1 << n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect::<Vec<_>>())
        .filter(|s| s.len() == size)
        .collect()
}

fn c9_bridge() -> Outcome {
    let mut r = rng(9);
    for n in 1..=3 {
        let tl = TlTable::build(n).map_err(e)?;
        for g in all_pair_boundaries(n) {
            for _ in 0..3 {
                let x = ExactMatrix::random_small(n, &mut r);
                let mut rhs = Rational::zero();
                for (w, m) in &tl.basis {
                    if m_count(m, &g) == 1 {
                        rhs += tl.immanant(w, &x).map_err(e)?;
                    }
                }
                ensure(pair_product(&g, &x).map_err(e)? == rhs, || format!("pair identity at {g:?}"))?;
            }
        }
    }
    let n = 3;
    let table = immanant_table(n).map_err(e)?;
    let (mut cases, mut counts) = (0, 0);
    for size in 0..n {
        for rows in subsets(n, size) {
            for cols in subsets(n, size) {
                let third = ThirdMinor::new(n, rows.clone(), cols.clone()).map_err(e)?;
                for (w, m) in &TlTable::build(third.rest()).map_err(e)?.basis {
                    cases += 1;
                    let rep = bridge_report(w, &third, 5, SEED).map_err(e)?;
                    ensure(rep.verified, || format!("bridge w={} I3={rows:?} J3={cols:?}", w.one_line()))?;
                    let gs = admissible_boundaries(m, &third).map_err(e)?;
                    for d in &table.webs {
                        let c: Vec<usize> =
                            gs.iter().map(|g| bridge_count(&d.map, m, g)).collect::<a2web::Result<_>>().map_err(e)?;
                        counts += c.len();
                        ensure(!c.is_empty() && c.iter().all(|&k| k == c[0]), || {
                            format!("lift dependence {c:?} for w={} I3={rows:?} J3={cols:?}", w.one_line())
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("pair identity n=1..3; {cases} (w, I3, J3) at n=3; {counts} lifted counts agree"))
}

fn c10_networks() -> Outcome {
    let mut r = rng(10);
    for s in 0..10 {
        let n = r.gen_range(1..=3);
        let net = PlanarNetwork::random(n, &mut r).map_err(e)?;
        let rep = net.lindstrom_check().map_err(e)?;
        ensure(rep.passed, || format!("Lindstrom sample {s}: {} vs {}", rep.det, rep.family_sum))?;
    }
    let mut max_edges = 0;
    for s in 0..10 {
        let n = r.gen_range(1..=3);
        let net = small_network(n, 12, &mut r).map_err(e)?;
        max_edges = max_edges.max(net.edges().len());
        let rep = net.corollary_check().map_err(e)?;
        ensure(rep.passed, || format!("corollary sample {s}: {}", net.to_json()))?;
    }
    for s in 0..3 {
        let net = PlanarNetwork::random(3, &mut r).map_err(e)?;
        let x = net.path_matrix().map_err(e)?;
        let prime = net.network_immanants().map_err(e)?;
        for t in all_triples(3) {
            let d = decompose_triple(&t).map_err(e)?;
            let rhs: Rational = d
                .webs
                .iter()
                .zip(&d.coeffs)
                .map(|(w, &c)| prime.get(w).cloned().unwrap_or_else(Rational::zero) * Rational::from_integer((c as i64).into()))
                .sum();
            ensure(triple_product(&t, &x).map_err(e)? == rhs, || format!("network {s}: {t}"))?;
        }
    }
    Ok(format!("Lindstrom on 10; corollary on 10 (max {max_edges} edges); triples on 3 networks"))
}

fn c11_tnn() -> Outcome {
    let mut mins = Vec::new();
    for n in [3, 4] {
        let rep = tnn_check(n, 100, SEED + n as u64).map_err(e)?;
        ensure(rep.passed(), || format!("n={n}: {}", rep.violations[0]))?;
        mins.push(format!("n={n} min {}", rep.minima.iter().map(|m| parse_rational(m).unwrap_or_default()).min().unwrap_or_default()));
    }
    Ok(format!("100 matrices each; {}", mins.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("dimension identity", c1_dimensions),
        ("algebra relations", c2_relations),
        ("confluence and word independence", c3_confluence),
        ("kappa homomorphism and rank", c4_kappa),
        ("coefficients from labelings", c5_coefficients),
        ("alpha embedding independence", c6_alpha),
        ("triple-minor expansion", c7_triples),
        ("parabolic images", c8_parabolic),
        ("Temperley-Lieb bridge", c9_bridge),
        ("planar networks", c10_networks),
        ("total nonnegativity", c11_tnn),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [exact, {secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [exact, {secs:.2}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} of 11 criteria pass", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
