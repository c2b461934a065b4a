//! Reduction of webs by the spider relations at generic `q`.
//!
//! Reduction works directly on [`PlanarMap`]s kept in canonical numbering;
//! results are memoized by canonical code, so a [`Spider`] instance acts as
//! a cache across many reductions.

mod combo;
mod expr;
mod rules;
mod suite;

pub use combo::WebCombo;
pub use expr::parse_expression;
pub use rules::{
    apply_rule, find_reducible_face, reducible_features, square_shape, Branch, Feature,
    LabelSource, Resolution, RuleKind, SquareShape,
};
pub use suite::{relation_suite, second_generator, theta3, theta3_perm, RelationCheck, RelationReport};

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::exactmath::LaurentPoly;
use crate::webcore::{normalize, CanonicalCode, PlanarMap, Web};

type Expansion = BTreeMap<CanonicalCode, LaurentPoly>;

/// One rewrite of the canonical run: the rule applied to the web with the
/// given code, and the resulting children with their coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub kind: RuleKind,
    pub face: Option<usize>,
    pub children: Vec<TraceChild>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceChild {
    pub branch: Option<Branch>,
    pub code: CanonicalCode,
    pub coeff: LaurentPoly,
}

/// The canonical reduction tree, stored as a DAG keyed by web code: webs
/// that recur in several branches are expanded once.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ReductionTrace {
    pub roots: Vec<CanonicalCode>,
    pub steps: BTreeMap<CanonicalCode, TraceStep>,
}

impl ReductionTrace {
    /// Expands `code` by following the recorded steps down to webs with no
    /// step (the irreducible ones).
    pub fn replay(&self, code: &CanonicalCode) -> Expansion {
        let mut memo = HashMap::new();
        self.replay_inner(code, &mut memo)
    }

    fn replay_inner(&self, code: &CanonicalCode, memo: &mut HashMap<CanonicalCode, Expansion>) -> Expansion {
        if let Some(e) = memo.get(code) {
            return e.clone();
        }
        let out = match self.steps.get(code) {
            None => BTreeMap::from([(code.clone(), LaurentPoly::one())]),
            Some(step) => {
                let mut acc = Expansion::new();
                for ch in &step.children {
                    for (k, v) in self.replay_inner(&ch.code, memo) {
                        add_into(&mut acc, k, &(&v * &ch.coeff));
                    }
                }
                acc
            }
        };
        memo.insert(code.clone(), out.clone());
        out
    }

    /// Steps reachable from `code`, depth first in application order.
    pub fn ordered_steps(&self, code: &CanonicalCode) -> Vec<(CanonicalCode, TraceStep)> {
        let mut out = Vec::new();
        let mut stack = vec![code.clone()];
        let mut seen = std::collections::HashSet::new();
        while let Some(c) = stack.pop() {
            if !seen.insert(c.clone()) {
                continue;
            }
            if let Some(s) = self.steps.get(&c) {
                for ch in s.children.iter().rev() {
                    stack.push(ch.code.clone());
                }
                out.push((c, s.clone()));
            }
        }
        out
    }
}

fn add_into(acc: &mut Expansion, k: CanonicalCode, v: &LaurentPoly) {
    let slot = acc.entry(k.clone()).or_insert_with(LaurentPoly::zero);
    *slot += v;
    if slot.is_zero() {
        acc.remove(&k);
    }
}

/// Memoizing reducer.
pub struct Spider {
    memo: HashMap<CanonicalCode, Rc<Expansion>>,
    irreducible: BTreeMap<CanonicalCode, PlanarMap>,
    steps: BTreeMap<CanonicalCode, TraceStep>,
    rng: Option<ChaCha8Rng>,
    square_b_sign: i64,
}

impl Default for Spider {
    fn default() -> Self {
        Self::new()
    }
}

impl Spider {
    /// Deterministic strategy: loop, then bigon, then square, smallest face.
    pub fn new() -> Self {
        Self {
            memo: HashMap::new(),
            irreducible: BTreeMap::new(),
            steps: BTreeMap::new(),
            rng: None,
            square_b_sign: 1,
        }
    }

    /// Picks a uniformly random reducible feature at every step. Nothing is
    /// memoized and no trace is kept.
    pub fn randomized(seed: u64) -> Self {
        Self {
            rng: Some(ChaCha8Rng::seed_from_u64(seed)),
            ..Self::new()
        }
    }

    /// A reducer whose square rule carries a wrong sign; exists so tests can
    /// check that the relation suite notices.
    #[doc(hidden)]
    pub fn corrupted() -> Self {
        Self {
            square_b_sign: -1,
            ..Self::new()
        }
    }

    fn pick(&mut self, m: &PlanarMap) -> Option<Feature> {
        match self.rng.as_mut() {
            None => find_reducible_face(m),
            Some(rng) => reducible_features(m).choose(rng).copied(),
        }
    }

    fn expand(&mut self, code: &CanonicalCode, m: &PlanarMap) -> Result<Rc<Expansion>> {
        if let Some(e) = self.memo.get(code) {
            return Ok(e.clone());
        }
        let out = match self.pick(m) {
            None => {
                self.irreducible.entry(code.clone()).or_insert_with(|| m.clone());
                BTreeMap::from([(code.clone(), LaurentPoly::one())])
            }
            Some(feature) => {
                let res = rules::apply_rule_signed(m, feature, self.square_b_sign)?;
                let mut acc = Expansion::new();
                for r in &res {
                    let sub = self.expand(&r.code, &r.map)?;
                    for (k, v) in sub.iter() {
                        add_into(&mut acc, k.clone(), &(v * &r.coeff));
                    }
                }
                if self.rng.is_none() {
                    self.steps.insert(
                        code.clone(),
                        TraceStep {
                            kind: feature.kind,
                            face: feature.face,
                            children: res
                                .into_iter()
                                .map(|r| TraceChild {
                                    branch: r.branch,
                                    code: r.code,
                                    coeff: r.coeff,
                                })
                                .collect(),
                        },
                    );
                }
                acc
            }
        };
        let out = Rc::new(out);
        if self.rng.is_none() {
            self.memo.insert(code.clone(), out.clone());
        }
        Ok(out)
    }

    fn to_combo(&self, n: usize, e: &Expansion) -> WebCombo {
        let mut c = WebCombo::zero(n);
        for (k, v) in e {
            c.add_term(k.clone(), &self.irreducible[k], v);
        }
        c
    }

    pub fn reduce_map(&mut self, m: &PlanarMap) -> Result<WebCombo> {
        let (code, map, _) = normalize(m);
        let e = self.expand(&code, &map)?;
        Ok(self.to_combo(m.n(), &e))
    }

    pub fn reduce_web(&mut self, w: &Web) -> Result<WebCombo> {
        let e = self.expand(w.code(), w.map())?;
        Ok(self.to_combo(w.n(), &e))
    }

    pub fn reduce_combo(&mut self, c: &WebCombo) -> Result<WebCombo> {
        let mut out = WebCombo::zero(c.n());
        for (code, coeff) in c.terms() {
            let m = c.map_of(code).expect("registered").clone();
            let e = self.expand(code, &m)?;
            for (k, v) in e.iter() {
                out.add_term(k.clone(), &self.irreducible[k], &(v * coeff));
            }
        }
        Ok(out)
    }

    /// Reduced product `a · b` (a drawn to the left of b).
    pub fn multiply(&mut self, a: &WebCombo, b: &WebCombo) -> Result<WebCombo> {
        let mut out = WebCombo::zero(a.n());
        if a.n() != b.n() {
            return Err(crate::Error::Domain(format!(
                "multiplying webs on {} and {} strands",
                a.n(),
                b.n()
            )));
        }
        for (ca, xa) in a.terms() {
            for (cb, xb) in b.terms() {
                let glued = a.registry()[ca].concatenate(&b.registry()[cb])?;
                let (code, map, _) = normalize(&glued);
                let e = self.expand(&code, &map)?;
                let c = xa * xb;
                for (k, v) in e.iter() {
                    out.add_term(k.clone(), &self.irreducible[k], &(v * &c));
                }
            }
        }
        Ok(out)
    }

    /// Reduced product of webs.
    pub fn product(&mut self, webs: &[&Web]) -> Result<WebCombo> {
        let Some(first) = webs.first() else {
            return Err(crate::Error::Domain("empty product".into()));
        };
        let mut m = first.map().clone();
        for w in &webs[1..] {
            m = m.concatenate(w.map())?;
        }
        self.reduce_map(&m)
    }

    /// Canonical trace rooted at `code` (empty in randomized mode).
    pub fn trace(&self, roots: &[CanonicalCode]) -> ReductionTrace {
        let mut t = ReductionTrace {
            roots: roots.to_vec(),
            steps: BTreeMap::new(),
        };
        let mut stack: Vec<CanonicalCode> = roots.to_vec();
        while let Some(c) = stack.pop() {
            if t.steps.contains_key(&c) {
                continue;
            }
            if let Some(s) = self.steps.get(&c) {
                stack.extend(s.children.iter().map(|ch| ch.code.clone()));
                t.steps.insert(c, s.clone());
            }
        }
        t
    }
}

/// Reduces a single web with the canonical strategy.
pub fn reduce(w: &Web) -> Result<(WebCombo, ReductionTrace)> {
    let mut sp = Spider::new();
    let c = sp.reduce_web(w)?;
    let t = sp.trace(&[w.code().clone()]);
    Ok((c, t))
}

/// Reduces every term of a combination with the canonical strategy.
pub fn reduce_combo(c: &WebCombo) -> Result<(WebCombo, ReductionTrace)> {
    let mut sp = Spider::new();
    let out = sp.reduce_combo(c)?;
    let roots: Vec<CanonicalCode> = c.terms().map(|(k, _)| k.clone()).collect();
    Ok((out, sp.trace(&roots)))
}

#[cfg(test)]
mod tests;
