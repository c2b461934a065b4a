//! Web immanants at `q = 1`: the coefficient table `f_D(w)`, evaluation on
//! exact matrices, parabolic sums and total-nonnegativity sampling.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exactmath::{ExactMatrix, LaurentPoly, Rational};
use crate::perm::{all_perms, parabolic_subgroup, Perm};
use crate::spider::{Spider, WebCombo};
use crate::webcore::{CanonicalCode, PlanarMap, Web};

/// Largest `n` the table builder accepts.
pub const MAX_N: usize = 6;

#[derive(Clone, Debug)]
pub struct IrreducibleWeb {
    pub code: CanonicalCode,
    pub map: PlanarMap,
}

/// `f_D(w)` for every irreducible web `D` and permutation `w` of `S_n`.
#[derive(Clone, Debug)]
pub struct ImmanantTable {
    pub n: usize,
    /// Ordered by internal vertex count, then code; the identity web first.
    pub webs: Vec<IrreducibleWeb>,
    /// `all_perms(n)`, lexicographic.
    pub perms: Vec<Perm>,
    /// `coeffs[d][k] = f_{webs[d]}(perms[k])`.
    pub coeffs: Vec<Vec<i64>>,
}

fn gen_minus_one(n: usize, i: usize) -> Result<WebCombo> {
    WebCombo::from_web(&Web::generator_e1(n, i)?).sub(&WebCombo::identity(n)?)
}

/// `θ₃(w)` at `q = 1`, one permutation at a time, each from its own word.
fn theta_at_q1(sp: &mut Spider, n: usize, word: &[usize]) -> Result<WebCombo> {
    let mut acc = WebCombo::identity(n)?;
    for &i in word {
        acc = sp.multiply(&acc, &gen_minus_one(n, i)?)?.at_q1();
    }
    Ok(acc)
}

/// All `θ₃(w)` at `q = 1`, each extending the image of a shorter prefix.
fn all_thetas(n: usize, word_of: &dyn Fn(&Perm) -> Vec<usize>) -> Result<Vec<(Perm, WebCombo)>> {
    let mut sp = Spider::new();
    let mut perms = all_perms(n);
    perms.sort_by_key(|p| p.length());
    let mut done: HashMap<Vec<usize>, WebCombo> = HashMap::new();
    let mut out = Vec::with_capacity(perms.len());
    for w in perms {
        let word = word_of(&w);
        let theta = match word.split_last() {
            None => WebCombo::identity(n)?,
            Some((&last, prefix)) => {
                let pre = Perm::from_word(n, prefix)?;
                match done.get(pre.images()) {
                    Some(base) => sp.multiply(base, &gen_minus_one(n, last)?)?.at_q1(),
                    None => theta_at_q1(&mut sp, n, &word)?,
                }
            }
        };
        done.insert(w.images().to_vec(), theta.clone());
        out.push((w, theta));
    }
    Ok(out)
}

fn to_i64(r: &Rational) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::Violation(format!("non-integral immanant coefficient {r}")));
    }
    r.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Violation("immanant coefficient overflows i64".into()))
}

impl ImmanantTable {
    /// Builds the table using the given reduced word for each permutation.
    pub fn build_with_words(n: usize, word_of: &dyn Fn(&Perm) -> Vec<usize>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return domain(format!("immanant tables need 1 <= n <= {MAX_N}, got {n}"));
        }
        let thetas = all_thetas(n, word_of)?;
        let mut maps: BTreeMap<CanonicalCode, PlanarMap> = BTreeMap::new();
        for (_, th) in &thetas {
            for (code, _) in th.terms() {
                maps.entry(code.clone())
                    .or_insert_with(|| th.map_of(code).expect("registered").clone());
            }
        }
        let mut webs: Vec<IrreducibleWeb> = maps
            .into_iter()
            .map(|(code, map)| IrreducibleWeb { code, map })
            .collect();
        webs.sort_by(|a, b| {
            (a.map.internal_vertex_count(), &a.code).cmp(&(b.map.internal_vertex_count(), &b.code))
        });
        let index: HashMap<CanonicalCode, usize> =
            webs.iter().enumerate().map(|(i, w)| (w.code.clone(), i)).collect();
        let perms = all_perms(n);
        let pidx: HashMap<Vec<usize>, usize> =
            perms.iter().enumerate().map(|(k, p)| (p.images().to_vec(), k)).collect();
        let mut coeffs = vec![vec![0i64; perms.len()]; webs.len()];
        for (w, th) in &thetas {
            let k = pidx[w.images()];
            for (code, c) in th.terms() {
                coeffs[index[code]][k] = to_i64(&c.eval_q1())?;
            }
        }
        Ok(Self { n, webs, perms, coeffs })
    }

    pub fn web_count(&self) -> usize {
        self.webs.len()
    }

    pub fn index_of(&self, code: &CanonicalCode) -> Option<usize> {
        self.webs.iter().position(|w| &w.code == code)
    }

    pub fn coefficient(&self, code: &CanonicalCode, w: &Perm) -> Option<i64> {
        let d = self.index_of(code)?;
        let k = self.perms.iter().position(|p| p == w)?;
        Some(self.coeffs[d][k])
    }

    /// `θ₃(w)` at `q = 1` reassembled from the table.
    pub fn theta(&self, w: &Perm) -> Result<WebCombo> {
        let k = self
            .perms
            .iter()
            .position(|p| p == w)
            .ok_or_else(|| Error::Domain(format!("{} is not in S_{}", w.one_line(), self.n)))?;
        let mut c = WebCombo::zero(self.n);
        for (d, web) in self.webs.iter().enumerate() {
            c.add_term(web.code.clone(), &web.map, &LaurentPoly::from_int(self.coeffs[d][k]));
        }
        Ok(c)
    }

    /// `x_{1,w(1)} ⋯ x_{n,w(n)}` for every permutation, in table order.
    fn monomials(&self, x: &ExactMatrix) -> Result<Vec<Rational>> {
        if x.size() != self.n {
            return domain(format!("matrix is {0}x{0}, webs have {1} strands", x.size(), self.n));
        }
        Ok(self
            .perms
            .iter()
            .map(|w| {
                (0..self.n).fold(Rational::one(), |acc, m| acc * x.get(m, w.apply(m)))
            })
            .collect())
    }

    /// `Imm_D(X)` for the web at index `d`.
    pub fn evaluate(&self, d: usize, x: &ExactMatrix) -> Result<Rational> {
        let mons = self.monomials(x)?;
        let row = self
            .coeffs
            .get(d)
            .ok_or_else(|| Error::Domain(format!("no web with index {d}")))?;
        Ok(dot(row, &mons))
    }

    /// `Imm_D(X)` for every web, in table order.
    pub fn evaluate_all(&self, x: &ExactMatrix) -> Result<Vec<Rational>> {
        let mons = self.monomials(x)?;
        Ok(self.coeffs.iter().map(|row| dot(row, &mons)).collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Row<'a> {
            web: String,
            internal_vertices: usize,
            coefficients: BTreeMap<String, i64>,
            #[serde(skip_serializing_if = "Option::is_none")]
            note: Option<&'a str>,
        }
        let rows: Vec<Row> = self
            .webs
            .iter()
            .zip(&self.coeffs)
            .map(|(w, row)| Row {
                web: w.code.key(),
                internal_vertices: w.map.internal_vertex_count(),
                coefficients: self
                    .perms
                    .iter()
                    .zip(row)
                    .filter(|(_, c)| **c != 0)
                    .map(|(p, c)| (p.one_line(), *c))
                    .collect(),
                note: (w.map.internal_vertex_count() == 0).then_some("identity"),
            })
            .collect();
        serde_json::json!({ "n": self.n, "webs": rows })
    }
}

fn dot(row: &[i64], mons: &[Rational]) -> Rational {
    row.iter()
        .zip(mons)
        .filter(|(c, _)| **c != 0)
        .fold(Rational::zero(), |acc, (c, m)| acc + m * Rational::from_integer((*c).into()))
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<ImmanantTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ImmanantTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The table built from the standard reduced words, cached per `n`.
pub fn immanant_table(n: usize) -> Result<Arc<ImmanantTable>> {
    if let Some(t) = cache().lock().expect("table cache").get(&n) {
        return Ok(t.clone());
    }
    let t = Arc::new(ImmanantTable::build_with_words(n, &|w: &Perm| w.reduced_word())?);
    cache().lock().expect("table cache").insert(n, t.clone());
    Ok(t)
}

/// Every irreducible web occurring in some `θ₃(w)`, drawn.
pub fn irreducible_webs(n: usize) -> Result<Vec<Web>> {
    immanant_table(n)?
        .webs
        .iter()
        .map(|w| Web::from_map(&w.map))
        .collect()
}

/// `Imm_D(X)` for the web with the given code.
pub fn evaluate_immanant(code: &CanonicalCode, x: &ExactMatrix) -> Result<Rational> {
    let t = immanant_table(x.size())?;
    let d = t
        .index_of(code)
        .ok_or_else(|| Error::Domain(format!("{code} is not an irreducible web on {} strands", x.size())))?;
    t.evaluate(d, x)
}

/// `Σ θ₃(w)` over the parabolic subgroup generated by `s_i, …, s_{j-1}`.
pub fn parabolic_image(n: usize, i: usize, j: usize) -> Result<WebCombo> {
    let t = immanant_table(n)?;
    let mut acc = WebCombo::zero(n);
    for w in parabolic_subgroup(n, i, j)? {
        acc = acc.add(&t.theta(&w)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct TnnReport {
    pub n: usize,
    pub samples: usize,
    /// Smallest value seen for each web, in table order, as `p/q` strings.
    pub minima: Vec<String>,
    pub violations: Vec<String>,
}

impl TnnReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates every web immanant on path matrices of random positive-weight
/// planar networks.
pub fn tnn_check(n: usize, samples: usize, seed: u64) -> Result<TnnReport> {
    use rand::SeedableRng;
    let t = immanant_table(n)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut minima: Vec<Option<Rational>> = vec![None; t.web_count()];
    let mut violations = Vec::new();
    for s in 0..samples {
        let net = crate::networks::PlanarNetwork::random(n, &mut rng)?;
        let x = net.path_matrix()?;
        for (d, v) in t.evaluate_all(&x)?.into_iter().enumerate() {
            if v < Rational::zero() {
                violations.push(format!("sample {s}: web {} gives {v}", t.webs[d].code));
            }
            if minima[d].as_ref().map_or(true, |m| v < *m) {
                minima[d] = Some(v);
            }
        }
    }
    Ok(TnnReport {
        n,
        samples,
        minima: minima
            .into_iter()
            .map(|m| m.map_or_else(|| "-".into(), |v| crate::exactmath::format_rational(&v)))
            .collect(),
        violations,
    })
}

#[cfg(test)]
mod tests;
