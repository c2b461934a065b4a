//! Carrying a labeling through the canonical reduction to an irreducible web.

use std::collections::BTreeMap;

use super::{alpha, enumerate_labelings, qsize, BoundaryLabeling, Labeling};
use crate::error::{Error, Result};
use crate::exactmath::LaurentPoly;
use crate::spider::{apply_rule, find_reducible_face, square_shape, Branch, LabelSource, RuleKind};
use crate::webcore::{CanonicalCode, PlanarMap, Web};

/// How a square whose four external edges share one label `a` picks its
/// resolution. The two interior labelings alternate `b, c` around the face;
/// read from a sink corner along the face, call the first two side labels
/// `s0, s1`. When `a` is 1 or 3 the labeling with `s0 = 2` goes to branch A
/// (this is forced by α). When `a = 2` both choices preserve α and the rule
/// fixes one of them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SquareRule {
    /// With `a = 2`, `s0 < s1` goes to branch A.
    #[default]
    TieAscendingToA,
    /// With `a = 2`, `s0 < s1` goes to branch B.
    TieAscendingToB,
}

fn choose_branch(m: &PlanarMap, face: usize, f: &Labeling, rule: SquareRule) -> Result<Branch> {
    let faces = m.internal_faces();
    let sq = square_shape(m, &faces[face])?;
    let x: [u8; 4] = sq.externals.map(|e| f.edges[e]);
    let a = x[0] == x[1] && x[2] == x[3];
    let b = x[1] == x[2] && x[3] == x[0];
    match (a, b) {
        (true, false) => Ok(Branch::A),
        (false, true) => Ok(Branch::B),
        (true, true) => {
            let (s0, s1) = (f.edges[sq.sides[0]], f.edges[sq.sides[1]]);
            let to_a = if x[0] != 2 {
                s0 == 2
            } else {
                (s0 < s1) == (rule == SquareRule::TieAscendingToA)
            };
            Ok(if to_a { Branch::A } else { Branch::B })
        }
        (false, false) => Err(Error::Violation(format!(
            "square external labels {x:?} fit neither resolution"
        ))),
    }
}

/// Follows the canonical reduction of `m` (canonical numbering), keeping the
/// branch compatible with `f`. Returns the terminal irreducible web and the
/// transported labeling.
pub fn transport_map(
    m: &PlanarMap,
    f: &Labeling,
    rule: SquareRule,
) -> Result<(CanonicalCode, PlanarMap, Labeling)> {
    let mut m = m.clone();
    let mut f = f.clone();
    let mut code = crate::webcore::canonical_form(&m);
    while let Some(feature) = find_reducible_face(&m) {
        let res = apply_rule(&m, feature)?;
        let r = match feature.kind {
            RuleKind::Loop | RuleKind::Bigon => &res[0],
            RuleKind::Square => {
                let br = choose_branch(&m, feature.face.expect("square face"), &f, rule)?;
                res.iter().find(|r| r.branch == Some(br)).expect("both branches present")
            }
        };
        let edges: Vec<u8> = r.edge_from.iter().map(|&e| f.edges[e]).collect();
        let loops: Vec<u8> = r
            .loop_from
            .iter()
            .map(|s| match *s {
                LabelSource::Edge(e) => f.edges[e],
                LabelSource::Loop(k) => f.loops[k],
            })
            .collect();
        let next = Labeling { edges, loops };
        if !next.is_consistent(&r.map) {
            return Err(Error::Violation(format!(
                "transport through {:?} produced an inconsistent labeling",
                feature.kind
            )));
        }
        m = r.map.clone();
        code = r.code.clone();
        f = next;
    }
    Ok((code, m, f))
}

/// The type of `f`: the irreducible web its canonical transport ends at.
pub fn transport_and_type(w: &Web, f: &Labeling) -> Result<(CanonicalCode, PlanarMap, Labeling)> {
    transport_map(w.map(), f, SquareRule::default())
}

/// Labelings of `D` with boundary `g` grouped by type.
#[derive(Clone, Debug)]
pub struct TypeFiber {
    pub map: PlanarMap,
    pub count: usize,
    /// Σ α(f) over the labelings of this type, α taken on `D`'s drawing.
    pub qsize: LaurentPoly,
}

pub fn type_fibers(
    w: &Web,
    g: &BoundaryLabeling,
    rule: SquareRule,
) -> Result<BTreeMap<CanonicalCode, TypeFiber>> {
    let mut out: BTreeMap<CanonicalCode, TypeFiber> = BTreeMap::new();
    for f in enumerate_labelings(w.map(), Some(g))? {
        let (code, map, _) = transport_map(w.map(), &f, rule)?;
        let a = alpha(w, &f);
        let fib = out.entry(code).or_insert_with(|| TypeFiber {
            map,
            count: 0,
            qsize: LaurentPoly::zero(),
        });
        fib.count += 1;
        fib.qsize += &a;
    }
    Ok(out)
}

/// `|L_{D,D_i,g}|_q / |L_{D_i,g}|_q`, or zero when `D_i` has no labeling
/// with boundary `g`.
pub fn coefficient_via_labelings(
    w: &Web,
    target: &Web,
    g: &BoundaryLabeling,
    rule: SquareRule,
) -> Result<LaurentPoly> {
    let denom = qsize(target, g)?;
    if denom.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let fibers = type_fibers(w, g, rule)?;
    let num = fibers
        .get(target.code())
        .map(|f| f.qsize.clone())
        .unwrap_or_else(LaurentPoly::zero);
    num.exact_div(&denom)
}

/// Checks the labeling formula for reduction coefficients on `w`: for every
/// balanced boundary `g` and every web `D_i` of the reduction,
/// `|L_{D,D_i,g}|_q / |L_{D_i,g}|_q` must equal the coefficient of `D_i`,
/// every type must occur in the reduction, and the types must partition the
/// labelings. Returns a description of the first failure.
pub fn coefficient_mismatch(w: &Web, rule: SquareRule) -> Result<Option<String>> {
    let (red, _) = crate::spider::reduce(w)?;
    let mut targets = Vec::new();
    for (code, coeff) in red.terms() {
        targets.push((code, coeff, Web::from_map(red.map_of(code).expect("registered"))?));
    }
    let mut total = 0usize;
    for g in BoundaryLabeling::all_balanced(w.n()) {
        let fibers = type_fibers(w, &g, rule)?;
        total += fibers.values().map(|f| f.count).sum::<usize>();
        for (code, coeff, target) in &targets {
            let denom = qsize(target, &g)?;
            if denom.is_zero() {
                continue;
            }
            let num = fibers.get(*code).map(|f| f.qsize.clone()).unwrap_or_else(LaurentPoly::zero);
            let got = match num.exact_div(&denom) {
                Ok(v) => v,
                Err(e) => return Ok(Some(format!("{g}: {e}"))),
            };
            if &got != *coeff {
                return Ok(Some(format!("{g}: labelings give {got}, reduction gives {coeff}")));
            }
        }
        if fibers.keys().any(|code| red.coeff(code).is_zero()) {
            return Ok(Some(format!("{g}: a labeling type is outside the reduction")));
        }
    }
    if total != enumerate_labelings(w.map(), None)?.len() {
        return Ok(Some("types do not partition the labelings".into()));
    }
    Ok(None)
}
