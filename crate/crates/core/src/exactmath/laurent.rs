//! Laurent polynomials in `t`, where `t^4 = q`.
//!
//! Every coefficient the web calculus produces (quantum integers, vertex and
//! tangency weights, reduction coefficients, q-sizes) is a Laurent polynomial
//! in a single variable once quarter powers of `q` are allowed, so `t = q^{1/4}`
//! is the base variable throughout the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, parse_rational, Rational};
use crate::error::{domain, Error, Result};

/// Exact Laurent polynomial in `t` with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        Self::monomial(0, c.into())
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    /// `coeff * t^exp`.
    pub fn monomial(exp: i32, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// `t^exp`.
    pub fn t_pow(exp: i32) -> Self {
        Self::monomial(exp, Rational::one())
    }

    /// `q^{exp/4}`, i.e. `t^exp`; kept separate for readability at call sites
    /// that think in powers of q.
    pub fn q_quarter_pow(exp: i32) -> Self {
        Self::t_pow(exp)
    }

    /// `q = t^4`.
    pub fn q() -> Self {
        Self::t_pow(4)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i32, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Image under `t -> t^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (-e, v.clone())).collect(),
        }
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.bar()
    }

    /// Value at `q = 1` (equivalently `t = 1`): the sum of the coefficients.
    pub fn eval_q1(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Exact quotient `self / divisor`; fails unless the division is exact.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return domain("division by the zero Laurent polynomial");
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let d_lo = divisor.min_exp().unwrap();
        let d_hi = divisor.max_exp().unwrap();
        let lead = divisor.coeff(d_hi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Long division from the top; the remainder's span shrinks each step.
        while let Some(r_hi) = rem.max_exp() {
            let r_lo = rem.min_exp().unwrap();
            if r_hi - r_lo < d_hi - d_lo {
                return Err(Error::Divisibility(rem.to_string()));
            }
            let k = r_hi - d_hi;
            let c = rem.coeff(r_hi) / &lead;
            for (e, v) in divisor.terms() {
                rem.add_term(e + k, &-(v * &c));
            }
            quot.add_term(k, &c);
        }
        Ok(quot)
    }

    /// True when every exponent is a multiple of 4, i.e. the value lies in
    /// `Q[q, q^{-1}]`.
    pub fn is_in_q(&self) -> bool {
        self.terms.keys().all(|e| e % 4 == 0)
    }

    /// Render in powers of q, e.g. `q^-1 + 1 + q`; falls back to t-notation
    /// when some exponent is not a multiple of 4.
    pub fn to_q_string(&self) -> String {
        if !self.is_in_q() {
            return self.to_string();
        }
        render_terms(self.terms.iter().map(|(e, c)| (e / 4, c)), "q")
    }

    /// True when all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

fn render_terms<'a>(terms: impl Iterator<Item = (i32, &'a Rational)>, var: &str) -> String {
    let mut out = String::new();
    for (i, (e, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        if mono.is_empty() {
            out.push_str(&format_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", format_rational(&mag), mono));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.terms.iter().map(|(e, c)| (*e, c)), "t"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Quantum integer `[k]_q = sum_{j=0}^{k-1} q^{j - (k-1)/2}`, written in t.
pub fn qint(k: i64) -> Result<LaurentPoly> {
    if k < 1 {
        return domain(format!("quantum integer [k]_q needs k >= 1, got {k}"));
    }
    let k = k as i32;
    let mut p = LaurentPoly::zero();
    for j in 0..k {
        p.add_term(4 * j - 2 * (k - 1), &Rational::one());
    }
    Ok(p)
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, c);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(e, c)| (e.to_string(), format_rational(c)))
            .collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in raw {
            let exp: i32 = e.parse().map_err(serde::de::Error::custom)?;
            let coeff = parse_rational(&c).map_err(serde::de::Error::custom)?;
            p.add_term(exp, &coeff);
        }
        Ok(p)
    }
}
