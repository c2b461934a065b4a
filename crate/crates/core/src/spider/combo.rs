use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::LaurentPoly;
use crate::webcore::{CanonicalCode, PlanarMap, Web};

/// Formal linear combination of webs with Laurent coefficients.
///
/// Every code appearing in `terms` has its map in the registry; the registry
/// only grows, so merging two combos never loses a web.
#[derive(Clone, Debug, PartialEq)]
pub struct WebCombo {
    n: usize,
    terms: BTreeMap<CanonicalCode, LaurentPoly>,
    registry: BTreeMap<CanonicalCode, PlanarMap>,
}

impl WebCombo {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
            registry: BTreeMap::new(),
        }
    }

    /// `coeff · web`, where `map` must be in canonical numbering.
    pub fn single(code: CanonicalCode, map: PlanarMap, coeff: LaurentPoly) -> Self {
        let mut c = Self::zero(map.n());
        c.registry.insert(code.clone(), map);
        if !coeff.is_zero() {
            c.terms.insert(code, coeff);
        }
        c
    }

    pub fn from_web(w: &Web) -> Self {
        Self::single(w.code().clone(), w.map().clone(), LaurentPoly::one())
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(Self::from_web(&Web::identity(n)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalCode, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, code: &CanonicalCode) -> LaurentPoly {
        self.terms.get(code).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn map_of(&self, code: &CanonicalCode) -> Option<&PlanarMap> {
        self.registry.get(code)
    }

    /// The only term, if there is exactly one.
    pub fn single_term(&self) -> Option<(&CanonicalCode, &LaurentPoly)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, code: CanonicalCode, map: &PlanarMap, coeff: &LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        self.registry.entry(code.clone()).or_insert_with(|| map.clone());
        let slot = self.terms.entry(code.clone()).or_insert_with(LaurentPoly::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&code);
        }
    }

    fn check_n(&self, other: &WebCombo) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Domain(format!(
                "combining webs on {} and {} strands",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &WebCombo) -> Result<WebCombo> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (code, c) in &other.terms {
            out.add_term(code.clone(), &other.registry[code], c);
        }
        for (code, m) in &other.registry {
            out.registry.entry(code.clone()).or_insert_with(|| m.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WebCombo) -> Result<WebCombo> {
        self.add(&other.scale(&LaurentPoly::from_int(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> WebCombo {
        let mut out = WebCombo {
            n: self.n,
            terms: BTreeMap::new(),
            registry: self.registry.clone(),
        };
        for (code, x) in &self.terms {
            let y = x * c;
            if !y.is_zero() {
                out.terms.insert(code.clone(), y);
            }
        }
        out
    }

    /// Specializes every coefficient at `q = 1`.
    pub fn eval_q1(&self) -> BTreeMap<CanonicalCode, crate::exactmath::Rational> {
        self.terms
            .iter()
            .map(|(k, v)| (k.clone(), v.eval_q1()))
            .filter(|(_, v)| *v != num_traits::Zero::zero())
            .collect()
    }

    /// Same webs with every coefficient replaced by its value at `q = 1`.
    pub fn at_q1(&self) -> WebCombo {
        let mut out = WebCombo {
            n: self.n,
            terms: BTreeMap::new(),
            registry: self.registry.clone(),
        };
        for (code, x) in &self.terms {
            let v = x.eval_q1();
            if !num_traits::Zero::is_zero(&v) {
                out.terms.insert(code.clone(), LaurentPoly::constant(v));
            }
        }
        out
    }

    /// True when both combos have the same coefficients.
    pub fn same_terms(&self, other: &WebCombo) -> bool {
        self.n == other.n && self.terms == other.terms
    }

    pub(crate) fn registry(&self) -> &BTreeMap<CanonicalCode, PlanarMap> {
        &self.registry
    }
}

impl fmt::Display for WebCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| format!("({v})*[{k}]"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Serializes as `{code key: {exponent: coefficient}}`.
impl Serialize for WebCombo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (k, v) in &self.terms {
            m.serialize_entry(&k.key(), v)?;
        }
        m.end()
    }
}
