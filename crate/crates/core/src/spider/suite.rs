use serde::Serialize;

use super::{Spider, WebCombo};
use crate::error::{domain, Error, Result};
use crate::exactmath::{qint, LaurentPoly};
use crate::perm::Perm;
use crate::webcore::Web;

fn gen(n: usize, i: usize) -> Result<WebCombo> {
    Ok(WebCombo::from_web(&Web::generator_e1(n, i)?))
}

/// The irreducible web `D2_i`, defined by `E_i E_{i+1} E_i = E_i + D2_i`.
/// Also checks the mirrored expression `E_{i+1} E_i E_{i+1} = E_{i+1} + D2_i`.
pub fn second_generator(n: usize, i: usize) -> Result<Web> {
    second_generator_with(&mut Spider::new(), n, i)
}

pub(crate) fn second_generator_with(sp: &mut Spider, n: usize, i: usize) -> Result<Web> {
    if i == 0 || i + 2 > n {
        return domain(format!("second generator D2_{i} needs 1 <= i <= n-2 (n = {n})"));
    }
    let extract = |sp: &mut Spider, a: usize, b: usize| -> Result<WebCombo> {
        let (ea, eb) = (Web::generator_e1(n, a)?, Web::generator_e1(n, b)?);
        sp.product(&[&ea, &eb, &ea])?.sub(&WebCombo::from_web(&ea))
    };
    let first = extract(sp, i, i + 1)?;
    let second = extract(sp, i + 1, i)?;
    let (code, coeff) = first
        .single_term()
        .ok_or_else(|| Error::Violation(format!("E_i E_(i+1) E_i - E_i is not a single web: {first}")))?;
    if !coeff.is_one() || !first.same_terms(&second) {
        return Err(Error::Violation(format!(
            "second generator expressions disagree: {first} vs {second}"
        )));
    }
    Web::from_map(first.map_of(code).expect("registered"))
}

/// Image of a Hecke word: the reduced product of `q^{1/2} E_i - 1`.
pub fn theta3(n: usize, word: &[usize]) -> Result<WebCombo> {
    theta3_with(&mut Spider::new(), n, word)
}

pub(crate) fn theta3_with(sp: &mut Spider, n: usize, word: &[usize]) -> Result<WebCombo> {
    let w = Perm::from_word(n, word)?;
    if w.length() != word.len() {
        return domain(format!("word {word:?} is not reduced"));
    }
    let mut acc = WebCombo::identity(n)?;
    let half = LaurentPoly::t_pow(2);
    for &i in word {
        let prod = sp.multiply(&acc, &gen(n, i)?)?;
        acc = prod.scale(&half).sub(&acc)?;
    }
    Ok(acc)
}

/// `theta3` of a permutation through one of its reduced words.
pub fn theta3_perm(w: &Perm) -> Result<WebCombo> {
    theta3(w.n(), &w.reduced_word())
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(out: &mut Vec<RelationCheck>, name: String, lhs: &WebCombo, rhs: &WebCombo) {
    let passed = lhs.same_terms(rhs);
    let detail = if passed {
        String::new()
    } else {
        format!("lhs = {lhs}; rhs = {rhs}")
    };
    out.push(RelationCheck { name, passed, detail });
}

/// Verifies the defining relations of the algebra inside the web algebra on
/// `n` strands.
pub fn relation_suite(n: usize) -> Result<RelationReport> {
    relation_suite_with(&mut Spider::new(), n)
}

#[doc(hidden)]
pub fn relation_suite_with(sp: &mut Spider, n: usize) -> Result<RelationReport> {
    if !(2..=6).contains(&n) {
        return domain(format!("relation suite supports 2 <= n <= 6, got {n}"));
    }
    let (q2, q3) = (qint(2)?, qint(3)?);
    let mut out = Vec::new();
    let e: Vec<WebCombo> = (1..n).map(|i| gen(n, i)).collect::<Result<_>>()?;
    for i in 1..n {
        let lhs = sp.multiply(&e[i - 1], &e[i - 1])?;
        check(&mut out, format!("E{i}^2 = [2] E{i}"), &lhs, &e[i - 1].scale(&q2));
        for j in i + 2..n {
            let a = sp.multiply(&e[i - 1], &e[j - 1])?;
            let b = sp.multiply(&e[j - 1], &e[i - 1])?;
            check(&mut out, format!("E{i} E{j} = E{j} E{i}"), &a, &b);
        }
    }
    let mut d2 = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let passed;
        let detail;
        match second_generator_with(sp, n, i) {
            Ok(w) => {
                passed = true;
                detail = String::new();
                d2.push(WebCombo::from_web(&w));
            }
            Err(err) => {
                passed = false;
                detail = err.to_string();
            }
        }
        out.push(RelationCheck {
            name: format!("E{i} E{0} E{i} - E{i} = E{0} E{i} E{0} - E{0} is one web", i + 1),
            passed,
            detail,
        });
    }
    if d2.len() == n.saturating_sub(2) {
        let q23 = &q2 * &q3;
        for (k, d) in d2.iter().enumerate() {
            let i = k + 1;
            let lhs = sp.multiply(d, d)?;
            check(&mut out, format!("D2_{i}^2 = [2][3] D2_{i}"), &lhs, &d.scale(&q23));
        }
        for k in 0..d2.len().saturating_sub(1) {
            let i = k + 1;
            let ab = sp.multiply(&d2[k], &d2[k + 1])?;
            let lhs = sp.multiply(&ab, &d2[k])?;
            let rhs = d2[k].scale(&(&q2 * &q2));
            check(&mut out, format!("D2_{i} D2_{} D2_{i} = [2]^2 D2_{i}", i + 1), &lhs, &rhs);
        }
    }
    let q = LaurentPoly::q();
    let id = WebCombo::identity(n)?;
    for i in 1..n {
        let g = theta3_with(sp, n, &[i])?;
        let lhs = sp.multiply(&g, &g)?;
        let rhs = g.scale(&(&q - &LaurentPoly::one())).add(&id.scale(&q))?;
        check(&mut out, format!("theta(g{i})^2 = (q-1) theta(g{i}) + q"), &lhs, &rhs);
    }
    for i in 1..n.saturating_sub(1) {
        let a = theta3_with(sp, n, &[i, i + 1, i])?;
        let b = theta3_with(sp, n, &[i + 1, i, i + 1])?;
        check(&mut out, format!("theta braid relation at {i}"), &a, &b);
    }
    Ok(RelationReport { n, checks: out })
}
