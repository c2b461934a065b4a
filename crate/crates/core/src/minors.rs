//! Products of three complementary minors expanded in web immanants.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::SeedableRng;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exactmath::{ExactMatrix, Rational};
use crate::immanants::immanant_table;
use crate::labelings::{enumerate_labelings, BoundaryLabeling};
use crate::webcore::CanonicalCode;

/// Row sets `I₁, I₂, I₃` and column sets `J₁, J₂, J₃`, 1-based, each a
/// partition of `[n]` with `|I_k| = |J_k|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorTriple {
    n: usize,
    rows: [Vec<usize>; 3],
    cols: [Vec<usize>; 3],
}

fn check_partition(n: usize, parts: &[Vec<usize>; 3], what: &str) -> Result<()> {
    let mut seen = vec![false; n];
    for p in parts {
        for &m in p {
            if m == 0 || m > n {
                return domain(format!("{what} index {m} is outside 1..={n}"));
            }
            if std::mem::replace(&mut seen[m - 1], true) {
                return domain(format!("{what} index {m} appears twice"));
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return domain(format!("{what} sets do not cover 1..={n}"));
    }
    Ok(())
}

impl MinorTriple {
    pub fn new(n: usize, rows: [Vec<usize>; 3], cols: [Vec<usize>; 3]) -> Result<Self> {
        check_partition(n, &rows, "row")?;
        check_partition(n, &cols, "column")?;
        for k in 0..3 {
            if rows[k].len() != cols[k].len() {
                return domain(format!("|I{0}| != |J{0}|", k + 1));
            }
        }
        let sorted = |mut v: Vec<usize>| {
            v.sort_unstable();
            v
        };
        Ok(Self {
            n,
            rows: rows.map(sorted),
            cols: cols.map(sorted),
        })
    }

    /// The triple whose row `m` is in `I_k` iff source `m` is labeled `k`.
    pub fn from_boundary(g: &BoundaryLabeling) -> Result<Self> {
        let sets = |side: &[u8]| {
            [1u8, 2, 3].map(|k| {
                side.iter()
                    .enumerate()
                    .filter(|(_, &l)| l == k)
                    .map(|(m, _)| m + 1)
                    .collect::<Vec<_>>()
            })
        };
        Self::new(g.n(), sets(&g.sources), sets(&g.sinks))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self, k: usize) -> &[usize] {
        &self.rows[k]
    }

    pub fn cols(&self, k: usize) -> &[usize] {
        &self.cols[k]
    }

    /// Exchanges the roles of `(I_a, J_a)` and `(I_b, J_b)`.
    pub fn swapped(&self, a: usize, b: usize) -> Self {
        let mut t = self.clone();
        t.rows.swap(a, b);
        t.cols.swap(a, b);
        t
    }
}

impl fmt::Display for MinorTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: &[usize]| {
            let v: Vec<String> = s.iter().map(ToString::to_string).collect();
            format!("{{{}}}", v.join(","))
        };
        write!(
            f,
            "({}, {}, {}; {}, {}, {})",
            set(&self.rows[0]),
            set(&self.rows[1]),
            set(&self.rows[2]),
            set(&self.cols[0]),
            set(&self.cols[1]),
            set(&self.cols[2])
        )
    }
}

/// Source `m` gets label `k` iff `m ∈ I_k`; sink `m` gets `k′` iff `m ∈ J_k`.
pub fn boundary_from_triple(t: &MinorTriple) -> BoundaryLabeling {
    let mut sources = vec![0u8; t.n];
    let mut sinks = vec![0u8; t.n];
    for k in 0..3 {
        for &m in &t.rows[k] {
            sources[m - 1] = k as u8 + 1;
        }
        for &m in &t.cols[k] {
            sinks[m - 1] = k as u8 + 1;
        }
    }
    BoundaryLabeling::new(sources, sinks).expect("a valid triple labels every boundary vertex")
}

/// `Δ_{I,J}(X)` for 1-based index sets; the empty minor is 1.
pub fn minor(x: &ExactMatrix, rows: &[usize], cols: &[usize]) -> Result<Rational> {
    if rows.len() != cols.len() {
        return domain(format!("minor needs |I| = |J|, got {} and {}", rows.len(), cols.len()));
    }
    let zero_based = |s: &[usize]| -> Result<Vec<usize>> {
        s.iter()
            .map(|&m| {
                if m == 0 || m > x.size() {
                    domain(format!("index {m} is outside 1..={}", x.size()))
                } else {
                    Ok(m - 1)
                }
            })
            .collect()
    };
    x.minor(&zero_based(rows)?, &zero_based(cols)?)
}

/// `Δ_{I₁,J₁}(X) Δ_{I₂,J₂}(X) Δ_{I₃,J₃}(X)`.
pub fn triple_product(t: &MinorTriple, x: &ExactMatrix) -> Result<Rational> {
    let mut p = Rational::one();
    for k in 0..3 {
        p *= minor(x, &t.rows[k], &t.cols[k])?;
    }
    Ok(p)
}

/// Coefficients `|L_{D,g(T)}|` for every irreducible web, in table order.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub triple: MinorTriple,
    pub webs: Vec<CanonicalCode>,
    pub coeffs: Vec<usize>,
}

impl Decomposition {
    pub fn nonzero(&self) -> BTreeMap<&CanonicalCode, usize> {
        self.webs
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w, c))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let m: BTreeMap<String, usize> = self.nonzero().into_iter().map(|(w, c)| (w.key(), c)).collect();
        serde_json::json!({ "triple": self.triple.to_string(), "coefficients": m })
    }

    /// `Σ_D |L_{D,g}| Imm_D(X)`.
    pub fn evaluate(&self, x: &ExactMatrix) -> Result<Rational> {
        let t = immanant_table(self.triple.n)?;
        let vals = t.evaluate_all(x)?;
        let mut s = Rational::zero();
        for (code, &c) in self.webs.iter().zip(&self.coeffs) {
            if c > 0 {
                let d = t.index_of(code).expect("table web");
                s += &vals[d] * Rational::from_integer((c as i64).into());
            }
        }
        Ok(s)
    }

    /// Compares both sides of the expansion on `samples` random rational
    /// matrices.
    pub fn verify(&self, samples: usize, seed: u64) -> Result<bool> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x = ExactMatrix::random_small(self.triple.n, &mut rng);
            if triple_product(&self.triple, &x)? != self.evaluate(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn decompose_triple(t: &MinorTriple) -> Result<Decomposition> {
    let table = immanant_table(t.n)?;
    let g = boundary_from_triple(t);
    let mut coeffs = Vec::with_capacity(table.web_count());
    for w in &table.webs {
        coeffs.push(enumerate_labelings(&w.map, Some(&g))?.len());
    }
    Ok(Decomposition {
        triple: t.clone(),
        webs: table.webs.iter().map(|w| w.code.clone()).collect(),
        coeffs,
    })
}

/// Every complementary triple on `n` rows and columns.
pub fn all_triples(n: usize) -> Vec<MinorTriple> {
    BoundaryLabeling::all_balanced(n)
        .iter()
        .map(|g| MinorTriple::from_boundary(g).expect("balanced labelings give triples"))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub n: usize,
    pub triples: usize,
    pub webs: usize,
    pub rank: usize,
    /// Largest coefficient seen and a triple attaining it.
    pub max_coefficient: usize,
    pub max_witness: String,
}

impl RankReport {
    pub fn passed(&self) -> bool {
        self.rank == self.webs
    }
}

/// Rank of the triples × webs coefficient matrix.
pub fn rank_check(n: usize) -> Result<RankReport> {
    let triples = all_triples(n);
    let mut rows = Vec::with_capacity(triples.len());
    let mut best = (0usize, String::new());
    let mut webs = 0;
    for t in &triples {
        let d = decompose_triple(t)?;
        webs = d.webs.len();
        if let Some(&m) = d.coeffs.iter().max() {
            if m > best.0 {
                best = (m, t.to_string());
            }
        }
        rows.push(
            d.coeffs
                .iter()
                .map(|&c| Rational::from_integer((c as i64).into()))
                .collect::<Vec<_>>(),
        );
    }
    if rows.is_empty() {
        return Err(Error::Domain("no triples".into()));
    }
    Ok(RankReport {
        n,
        triples: triples.len(),
        webs,
        rank: ExactMatrix::rank_of_rows(&rows),
        max_coefficient: best.0,
        max_witness: best.1,
    })
}

#[cfg(test)]
mod tests;
