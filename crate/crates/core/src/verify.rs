//! Named verification suites with per-check timing, used by `a2web verify`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exactmath::{ExactMatrix, Rational};
use crate::immanants::{immanant_table, irreducible_webs, parabolic_image, tnn_check};
use crate::labelings::{coefficient_mismatch, kappa, kappa_combo, BoundaryLabeling, SquareRule};
use crate::minors::{all_triples, decompose_triple, rank_check, triple_product, MinorTriple};
use crate::networks::PlanarNetwork;
use crate::perm::all_perms;
use crate::spider::{find_reducible_face, relation_suite, second_generator, theta3, Spider, WebCombo};
use crate::tlbridge::{
    admissible_boundaries, all_pair_boundaries, bridge_count, bridge_report, m_count, pair_product,
    ThirdMinor, TlTable,
};
use crate::webcore::{RenderStyle, Web};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Relations,
    Confluence,
    Dimensions,
    Kappa,
    Ci,
    Minors,
    Bridge,
    Networks,
    Tnn,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Relations,
        Suite::Confluence,
        Suite::Dimensions,
        Suite::Kappa,
        Suite::Ci,
        Suite::Minors,
        Suite::Bridge,
        Suite::Networks,
        Suite::Tnn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Confluence => "confluence",
            Suite::Dimensions => "dimensions",
            Suite::Kappa => "kappa",
            Suite::Ci => "ci",
            Suite::Minors => "minors",
            Suite::Bridge => "bridge",
            Suite::Networks => "networks",
            Suite::Tnn => "tnn",
            Suite::All => "all",
        }
    }

    /// Largest `n` the suite accepts.
    pub fn max_n(self) -> usize {
        match self {
            Suite::Dimensions => 5,
            Suite::Networks => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    /// Threads used when running several suites.
    pub workers: usize,
}

impl SuiteConfig {
    pub fn new(suite: Suite, n: usize) -> Self {
        Self { suite, n, samples: 20, seed: 0, workers: 1 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub millis: u128,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

/// What a single check found: a summary and, on failure, a witness.
struct Outcome {
    detail: String,
    counterexample: Option<String>,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Self { detail: detail.into(), counterexample: None }
    }

    fn fail(detail: impl Into<String>, witness: impl Into<String>) -> Self {
        Self { detail: detail.into(), counterexample: Some(witness.into()) }
    }

    fn from_witness(detail: impl Into<String>, witness: Option<String>) -> Self {
        Self { detail: detail.into(), counterexample: witness }
    }
}

struct Runner {
    suite: Suite,
    checks: Vec<CheckResult>,
}

impl Runner {
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let (passed, detail, counterexample) = match f() {
            Ok(o) => (o.counterexample.is_none(), o.detail, o.counterexample),
            Err(e) => (false, format!("error: {e}"), None),
        };
        self.checks.push(CheckResult {
            suite: self.suite,
            name: name.into(),
            passed,
            millis: start.elapsed().as_millis(),
            detail,
            counterexample,
        });
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(1..n)).collect()
}

fn word_text(n: usize, word: &[usize]) -> String {
    let w: Vec<String> = word.iter().map(|i| format!("E{i}")).collect();
    format!("n={n}: {}", if w.is_empty() { "1".into() } else { w.join("*") })
}

/// Number of permutations of `S_n` avoiding 4321.
pub fn count_4321_avoiders(n: usize) -> usize {
    all_perms(n).iter().filter(|p| p.avoids(&[4, 3, 2, 1])).count()
}

/// Runs the requested suite (every suite for [`Suite::All`], each capped at
/// its own bound).
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.n == 0 {
        return domain("suites need n >= 1");
    }
    let checks = if cfg.suite == Suite::All {
        run_many(cfg, &Suite::EACH)?
    } else {
        if cfg.n > cfg.suite.max_n() {
            return domain(format!(
                "suite {} is exhaustive and refuses n = {} (at most {})",
                cfg.suite,
                cfg.n,
                cfg.suite.max_n()
            ));
        }
        run_one(cfg.suite, cfg.n, cfg.samples, cfg.seed)?
    };
    Ok(SuiteReport {
        suite: cfg.suite,
        n: cfg.n,
        samples: cfg.samples,
        seed: cfg.seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn run_many(cfg: &SuiteConfig, suites: &[Suite]) -> Result<Vec<CheckResult>> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<Vec<CheckResult>>>>> =
        Mutex::new((0..suites.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..cfg.workers.clamp(1, suites.len()) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                let Some(&s) = suites.get(k) else { break };
                let r = run_one(s, cfg.n.min(s.max_n()), cfg.samples, cfg.seed);
                results.lock().expect("results")[k] = Some(r);
            });
        }
    });
    let mut out = Vec::new();
    for r in results.into_inner().expect("results") {
        out.extend(r.expect("every suite ran")?);
    }
    Ok(out)
}

fn run_one(suite: Suite, n: usize, samples: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let mut r = Runner { suite, checks: Vec::new() };
    match suite {
        Suite::Relations => relations(&mut r, n),
        Suite::Confluence => confluence(&mut r, n, samples, seed),
        Suite::Dimensions => dimensions(&mut r, n),
        Suite::Kappa => kappa_checks(&mut r, n, samples, seed),
        Suite::Ci => coefficients(&mut r, n, samples, seed),
        Suite::Minors => minor_checks(&mut r, n, samples, seed),
        Suite::Bridge => bridge_checks(&mut r, n, samples, seed),
        Suite::Networks => network_checks(&mut r, n, samples, seed),
        Suite::Tnn => tnn(&mut r, n, samples, seed),
        Suite::All => unreachable!("expanded by run_suite"),
    }
    Ok(r.checks)
}

fn relations(r: &mut Runner, n: usize) {
    if n < 2 {
        r.check("relations", || Ok(Outcome::pass("no generators on one strand")));
        return;
    }
    for m in 2..=n {
        match relation_suite(m) {
            Ok(rep) => {
                for c in rep.checks {
                    r.check(format!("n={m}: {}", c.name), || {
                        Ok(if c.passed {
                            Outcome::pass("")
                        } else {
                            Outcome::fail("relation fails", c.detail)
                        })
                    });
                }
            }
            Err(e) => r.check(format!("n={m}: relations"), || Err(e)),
        }
    }
}

/// Reduction of `samples` random generator products under 5 random rule
/// orders, and θ₃ computed from two reduced words.
fn confluence(r: &mut Runner, n: usize, samples: usize, seed: u64) {
    if n < 2 {
        r.check("confluence", || Ok(Outcome::pass("no generators on one strand")));
        return;
    }
    r.check("random products reduce identically under 5 rule orders", || {
        let mut rng = rng_for(seed, 1);
        let mut canonical = Spider::new();
        for s in 0..samples {
            let m = rng.gen_range(2..=n);
            let len = rng.gen_range(1..=8);
            let word = random_word(&mut rng, m, len);
            let w = Web::from_word(m, &word)?;
            let base = canonical.reduce_web(&w)?;
            if base.terms().any(|(c, _)| find_reducible_face(base.map_of(c).expect("registered")).is_some()) {
                return Ok(Outcome::fail("reducible term left", word_text(m, &word)));
            }
            for k in 0..5u64 {
                let other = Spider::randomized(seed ^ ((s as u64) << 8) ^ (k + 1)).reduce_web(&w)?;
                if !base.same_terms(&other) {
                    return Ok(Outcome::fail(format!("order {k} differs"), word_text(m, &word)));
                }
            }
        }
        Ok(Outcome::pass(format!("{samples} products")))
    });
    r.check("theta3 is independent of the reduced word", || {
        let mut rng = rng_for(seed, 2);
        let perms = all_perms(n);
        for _ in 0..samples {
            let w = perms.choose(&mut rng).expect("nonempty");
            let words = w.all_reduced_words();
            let a = words.choose(&mut rng).expect("nonempty");
            let b = words.choose(&mut rng).expect("nonempty");
            if !theta3(n, a)?.same_terms(&theta3(n, b)?) {
                return Ok(Outcome::fail("words disagree", format!("{} via {a:?} and {b:?}", w.one_line())));
            }
        }
        Ok(Outcome::pass(format!("{samples} permutations of S_{n}")))
    });
}

fn dimensions(r: &mut Runner, n: usize) {
    for m in 1..=n {
        r.check(format!("n={m}: irreducible webs = 4321-avoiders"), || {
            let webs = immanant_table(m)?.web_count();
            let avoiders = count_4321_avoiders(m);
            Ok(if webs == avoiders {
                Outcome::pass(format!("{webs}"))
            } else {
                Outcome::fail("count mismatch", format!("{webs} webs, {avoiders} avoiders"))
            })
        });
    }
    if n >= 2 {
        r.check(format!("n={n}: parabolic images at q=1"), || parabolic(n));
    }
}

/// `z_{[i,i+1]} ↦ E_i`, `z_{[i,i+2]} ↦ D2_i`, and wider intervals vanish.
fn parabolic(n: usize) -> Result<Outcome> {
    for i in 1..n {
        for j in i + 1..=n {
            let got = parabolic_image(n, i, j)?;
            let want = match j - i {
                1 => WebCombo::from_web(&Web::generator_e1(n, i)?),
                2 => WebCombo::from_web(&second_generator(n, i)?),
                _ => WebCombo::zero(n),
            };
            if !got.at_q1().same_terms(&want.at_q1()) {
                return Ok(Outcome::fail("wrong image", format!("[{i},{j}] gives {got}")));
            }
        }
    }
    Ok(Outcome::pass(format!("all intervals of [1,{n}]")))
}

fn kappa_checks(r: &mut Runner, n: usize, samples: usize, seed: u64) {
    if n >= 2 {
        r.check("kappa is multiplicative", || {
            let mut rng = rng_for(seed, 3);
            for _ in 0..samples {
                let m = rng.gen_range(2..=n.min(3));
                let (la, lb) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
                let (wa, wb) = (random_word(&mut rng, m, la), random_word(&mut rng, m, lb));
                let (a, b) = (Web::from_word(m, &wa)?, Web::from_word(m, &wb)?);
                let ab = a.concatenate(&b)?;
                let prod = kappa(&a)?.mul(&kappa(&b)?);
                let (red, _) = crate::spider::reduce(&ab)?;
                if kappa(&ab)? != prod || kappa_combo(&red)? != prod {
                    return Ok(Outcome::fail("kappa(AB) != kappa(A)kappa(B)", format!("{wa:?} * {wb:?} on {m} strands")));
                }
            }
            Ok(Outcome::pass(format!("{samples} pairs")))
        });
    }
    r.check(format!("n={n}: kappa at q=1 has full rank on irreducible webs"), || {
        let webs = irreducible_webs(n)?;
        let gs = BoundaryLabeling::all_balanced(n);
        let mut rows = Vec::with_capacity(webs.len());
        for w in &webs {
            let k = kappa(w)?.eval_q1();
            rows.push(gs.iter().map(|g| k.get(g).cloned().unwrap_or_else(Rational::zero)).collect::<Vec<_>>());
        }
        let rank = ExactMatrix::rank_of_rows(&rows);
        Ok(if rank == webs.len() {
            Outcome::pass(format!("rank {rank}"))
        } else {
            Outcome::fail("rank deficient", format!("rank {rank} < {}", webs.len()))
        })
    });
    if n >= 2 {
        r.check("labeling q-sizes do not depend on the drawing", || {
            let mut rng = rng_for(seed, 4);
            let mut tested = 0;
            let mut attempts = 0;
            while tested < samples && attempts < 20 * samples.max(1) {
                attempts += 1;
                let m = rng.gen_range(2..=n);
                let len = rng.gen_range(1..=6);
                let word = random_word(&mut rng, m, len);
                let w = Web::from_word(m, &word)?;
                let drawings: Vec<Web> = RenderStyle::ALL.iter().map(|&s| w.redrawn(s)).collect::<Result<_>>()?;
                let mut distinct: Vec<&Web> = vec![&w];
                for d in &drawings {
                    if distinct.iter().all(|x| x.diagram() != d.diagram()) {
                        distinct.push(d);
                    }
                }
                if distinct.len() < 2 {
                    continue;
                }
                tested += 1;
                let base = kappa(&w)?;
                for d in &distinct[1..] {
                    if kappa(d)? != base {
                        return Ok(Outcome::fail("drawings disagree", word_text(m, &word)));
                    }
                }
            }
            Ok(if tested == samples {
                Outcome::pass(format!("{tested} webs, each with at least 2 drawings"))
            } else {
                Outcome::fail("too few webs with distinct drawings", format!("{tested} of {samples}"))
            })
        });
    }
}

fn coefficients(r: &mut Runner, n: usize, samples: usize, seed: u64) {
    if n < 2 {
        r.check("coefficients", || Ok(Outcome::pass("no generators on one strand")));
        return;
    }
    for rule in [SquareRule::TieAscendingToA, SquareRule::TieAscendingToB] {
        r.check(format!("reduction coefficients from labelings ({rule:?})"), || {
            let mut rng = rng_for(seed, 5);
            let mut tested = 0;
            while tested < samples {
                let m = rng.gen_range(2..=n);
                let len = rng.gen_range(2..=6);
                let word = random_word(&mut rng, m, len);
                let w = Web::from_word(m, &word)?;
                if find_reducible_face(w.map()).is_none() {
                    continue;
                }
                tested += 1;
                if let Some(msg) = coefficient_mismatch(&w, rule)? {
                    return Ok(Outcome::fail(msg, word_text(m, &word)));
                }
            }
            Ok(Outcome::pass(format!("{tested} reducible webs")))
        });
    }
}

fn triple_sum(t: &MinorTriple, x: &ExactMatrix) -> Result<Option<String>> {
    let d = decompose_triple(t)?;
    let (l, rr) = (triple_product(t, x)?, d.evaluate(x)?);
    Ok((l != rr).then(|| format!("{t} on {x:?}: product {l}, expansion {rr}")))
}

fn minor_checks(r: &mut Runner, n: usize, samples: usize, seed: u64) {
    let m = n.min(3);
    r.check(format!("n={m}: every minor triple expands in web immanants"), || {
        let mut rng = rng_for(seed, 6);
        for t in all_triples(m) {
            for _ in 0..5 {
                if let Some(w) = triple_sum(&t, &ExactMatrix::random_small(m, &mut rng))? {
                    return Ok(Outcome::fail("expansion differs", w));
                }
            }
        }
        Ok(Outcome::pass(format!("{} triples x 5 matrices", all_triples(m).len())))
    });
    if n >= 4 {
        r.check("n=4: sampled minor triples expand in web immanants", || {
            let mut rng = rng_for(seed, 7);
            let all = all_triples(4);
            for _ in 0..samples {
                let t = all.choose(&mut rng).expect("nonempty");
                for _ in 0..5 {
                    if let Some(w) = triple_sum(t, &ExactMatrix::random_small(4, &mut rng))? {
                        return Ok(Outcome::fail("expansion differs", w));
                    }
                }
            }
            Ok(Outcome::pass(format!("{samples} triples x 5 matrices")))
        });
    }
    r.check(format!("n={n}: determinant expands over all-1 labelings"), || {
        let mut rng = rng_for(seed, 8);
        let t = MinorTriple::new(n, [(1..=n).collect(), vec![], vec![]], [(1..=n).collect(), vec![], vec![]])?;
        let d = decompose_triple(&t)?;
        for _ in 0..5 {
            let x = ExactMatrix::random_small(n, &mut rng);
            if d.evaluate(&x)? != x.det() {
                return Ok(Outcome::fail("expansion differs from det", format!("{x:?}")));
            }
        }
        Ok(Outcome::pass("5 matrices"))
    });
    r.check(format!("n={n}: triple coefficients have full rank"), || {
        let rep = rank_check(n)?;
        Ok(if rep.passed() {
            Outcome::pass(format!(
                "rank {} over {} triples; largest coefficient {} at {}",
                rep.rank, rep.triples, rep.max_coefficient, rep.max_witness
            ))
        } else {
            Outcome::fail("rank deficient", format!("rank {} < {}", rep.rank, rep.webs))
        })
    });
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0usize..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect::<Vec<_>>())
        .filter(|s| s.len() == size)
        .collect()
}

fn bridge_checks(r: &mut Runner, n: usize, samples: usize, seed: u64) {
    r.check(format!("n={n}: pairs of minors expand in TL immanants"), || {
        let mut rng = rng_for(seed, 9);
        let t = TlTable::build(n)?;
        for g in all_pair_boundaries(n) {
            for _ in 0..3 {
                let x = ExactMatrix::random_small(n, &mut rng);
                let mut rhs = Rational::zero();
                for (w, m) in &t.basis {
                    if m_count(m, &g) == 1 {
                        rhs += t.immanant(w, &x)?;
                    }
                }
                if pair_product(&g, &x)? != rhs {
                    return Ok(Outcome::fail("expansion differs", format!("{g:?} on {x:?}")));
                }
            }
        }
        Ok(Outcome::pass(format!("{} boundaries x 3 matrices", all_pair_boundaries(n).len())))
    });
    let m = n.min(3);
    r.check(format!("n={m}: TL immanant times a minor expands in web immanants"), || {
        let mut count = 0;
        for size in 1..m {
            for rows in subsets(m, size) {
                for cols in subsets(m, size) {
                    let third = ThirdMinor::new(m, rows.clone(), cols.clone())?;
                    for (w, _) in &TlTable::build(third.rest())?.basis {
                        count += 1;
                        if !bridge_report(w, &third, 3, seed)?.verified {
                            return Ok(Outcome::fail(
                                "expansion differs",
                                format!("w={}, I3={rows:?}, J3={cols:?}", w.one_line()),
                            ));
                        }
                    }
                }
            }
        }
        Ok(Outcome::pass(format!("{count} cases")))
    });
    if n >= 3 {
        r.check("bridge counts do not depend on the lifted boundary", || {
            let mut rng = rng_for(seed, 10);
            for _ in 0..samples {
                let k = rng.gen_range(3..=n);
                let size = rng.gen_range(0..k.min(3));
                let mut pick = || {
                    let mut all: Vec<usize> = (1..=k).collect();
                    all.shuffle(&mut rng);
                    all.truncate(size);
                    all
                };
                let third = ThirdMinor::new(k, pick(), pick())?;
                let tl = TlTable::build(third.rest())?;
                let (w, mt) = &tl.basis[rng.gen_range(0..tl.basis.len())];
                let table = immanant_table(k)?;
                let d = &table.webs[rng.gen_range(0..table.web_count())];
                let counts: Vec<usize> = admissible_boundaries(mt, &third)?
                    .iter()
                    .map(|g| bridge_count(&d.map, mt, g))
                    .collect::<Result<_>>()?;
                if counts.is_empty() || counts.iter().any(|&c| c != counts[0]) {
                    return Ok(Outcome::fail(
                        format!("counts {counts:?}"),
                        format!("web {}, w={}, I3={:?}, J3={:?}", d.code, w.one_line(), third.rows, third.cols),
                    ));
                }
            }
            Ok(Outcome::pass(format!("{samples} (web, w) pairs")))
        });
    }
}

/// Random layered networks with at most `max_edges` edges.
pub fn small_network(n: usize, max_edges: usize, rng: &mut ChaCha8Rng) -> Result<PlanarNetwork> {
    loop {
        let cols = rng.gen_range(1..=3);
        let net = PlanarNetwork::random_with(n, cols, rng)?;
        if net.edges().len() <= max_edges {
            return Ok(net);
        }
    }
}

fn network_checks(r: &mut Runner, n: usize, samples: usize, seed: u64) {
    r.check("path-family sums match determinants", || {
        let mut rng = rng_for(seed, 11);
        for s in 0..samples {
            let m = rng.gen_range(1..=n);
            let net = PlanarNetwork::random(m, &mut rng)?;
            let rep = net.lindstrom_check()?;
            if !rep.passed {
                return Ok(Outcome::fail(format!("det {} vs {}", rep.det, rep.family_sum), format!("sample {s}: {}", net.to_json())));
            }
        }
        Ok(Outcome::pass(format!("{samples} networks")))
    });
    r.check("immanants agree with uncrossed path families", || {
        let mut rng = rng_for(seed, 12);
        for s in 0..samples {
            let m = rng.gen_range(1..=n);
            let net = small_network(m, 12, &mut rng)?;
            let rep = net.corollary_check()?;
            if !rep.passed {
                let bad: Vec<String> = rep.rows.iter().filter(|x| !x.equal).map(|x| x.web.clone()).collect();
                return Ok(Outcome::fail(format!("webs {bad:?}"), format!("sample {s}: {}", net.to_json())));
            }
        }
        Ok(Outcome::pass(format!("{samples} networks with at most 12 edges")))
    });
    r.check(format!("n={n}: minor triples on path matrices"), || {
        let mut rng = rng_for(seed, 13);
        let mut witness = None;
        'outer: for _ in 0..samples.min(5) {
            let net = PlanarNetwork::random(n, &mut rng)?;
            let x = net.path_matrix()?;
            let prime = net.network_immanants()?;
            for t in all_triples(n) {
                let d = decompose_triple(&t)?;
                let rhs: Rational = d
                    .webs
                    .iter()
                    .zip(&d.coeffs)
                    .map(|(w, &c)| prime.get(w).cloned().unwrap_or_else(Rational::zero) * Rational::from_integer((c as i64).into()))
                    .sum();
                if triple_product(&t, &x)? != rhs {
                    witness = Some(format!("{t} on {}", net.to_json()));
                    break 'outer;
                }
            }
        }
        Ok(Outcome::from_witness(format!("{} networks", samples.min(5)), witness))
    });
}

fn tnn(r: &mut Runner, n: usize, samples: usize, seed: u64) {
    for m in [n.min(3), n].into_iter().collect::<std::collections::BTreeSet<_>>() {
        r.check(format!("n={m}: web immanants are nonnegative on TNN matrices"), || {
            let rep = tnn_check(m, samples, seed)?;
            Ok(Outcome::from_witness(
                format!("{} samples; minima {}", rep.samples, rep.minima.join(" ")),
                rep.violations.first().cloned(),
            ))
        });
    }
}

/// Counts of each suite's checks by pass/fail, for summaries.
pub fn tally(rep: &SuiteReport) -> BTreeMap<String, (usize, usize)> {
    let mut out: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for c in &rep.checks {
        let e = out.entry(c.suite.name().to_string()).or_default();
        if c.passed {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests;
