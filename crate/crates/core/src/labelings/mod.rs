//! Consistent labelings of webs, the α statistic, q-sizes and the vector κ.
//!
//! An edge label `i` sits on the edge's source-type end; its sink-type end
//! reads `i′`. Labels at a vertex must be pairwise distinct.

mod transport;

pub use transport::{
    coefficient_mismatch, coefficient_via_labelings, transport_and_type, type_fibers, SquareRule, TypeFiber,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::LaurentPoly;
use crate::webcore::{EdgeRef, PlanarMap, Singularity, Web};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    /// Label in `1..=3` of every edge, indexed by edge id.
    pub edges: Vec<u8>,
    /// Label of every closed loop.
    pub loops: Vec<u8>,
}

impl Labeling {
    pub fn boundary(&self, m: &PlanarMap) -> BoundaryLabeling {
        let n = m.n();
        BoundaryLabeling {
            sources: (0..n).map(|i| self.edges[m.boundary_edge(i)]).collect(),
            sinks: (0..n).map(|i| self.edges[m.boundary_edge(n + i)]).collect(),
        }
    }

    /// Checks labels are in range and distinct around each internal vertex.
    pub fn is_consistent(&self, m: &PlanarMap) -> bool {
        if self.edges.len() != m.edge_count() || self.loops.len() != m.loop_count() {
            return false;
        }
        if self.edges.iter().chain(&self.loops).any(|l| !(1..=3).contains(l)) {
            return false;
        }
        (2 * m.n()..m.vertex_count()).all(|v| {
            let r = m.rotation(v);
            let (a, b, c) = (self.edges[r[0]], self.edges[r[1]], self.edges[r[2]]);
            a != b && b != c && a != c
        })
    }
}

/// Boundary word: source labels top to bottom, then sink labels (primed)
/// top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryLabeling {
    pub sources: Vec<u8>,
    pub sinks: Vec<u8>,
}

impl BoundaryLabeling {
    pub fn new(sources: Vec<u8>, sinks: Vec<u8>) -> Result<Self> {
        if sources.len() != sinks.len() {
            return Err(Error::Domain("boundary words must have equal length".into()));
        }
        if sources.iter().chain(&sinks).any(|l| !(1..=3).contains(l)) {
            return Err(Error::Domain("boundary labels must be 1, 2 or 3".into()));
        }
        Ok(Self { sources, sinks })
    }

    pub fn n(&self) -> usize {
        self.sources.len()
    }

    /// Parses `1,2,3:1,2,3` (sources, then sinks; primes optional).
    pub fn parse(s: &str) -> Result<Self> {
        let err = |m: &str| Error::Parse {
            location: format!("boundary '{s}'"),
            message: m.to_string(),
        };
        let (a, b) = s
            .split_once(|c| c == ':' || c == '|')
            .ok_or_else(|| err("expected sources:sinks"))?;
        let word = |w: &str| -> Result<Vec<u8>> {
            w.split(',')
                .map(|x| x.trim().trim_end_matches('\'').parse::<u8>().map_err(|_| err("bad label")))
                .collect()
        };
        Self::new(word(a)?, word(b)?)
    }

    /// Per-label counts agree on the two sides.
    pub fn is_balanced(&self) -> bool {
        (1..=3u8).all(|l| {
            self.sources.iter().filter(|&&x| x == l).count()
                == self.sinks.iter().filter(|&&x| x == l).count()
        })
    }

    /// All balanced boundary words on `n` strands.
    pub fn all_balanced(n: usize) -> Vec<BoundaryLabeling> {
        let words = all_words(n);
        let mut out = Vec::new();
        for a in &words {
            for b in &words {
                let g = BoundaryLabeling { sources: a.clone(), sinks: b.clone() };
                if g.is_balanced() {
                    out.push(g);
                }
            }
        }
        out
    }
}

pub(crate) fn all_words(n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=3u8).map(move |l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    out
}

impl fmt::Display for BoundaryLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.sources.iter().map(|x| x.to_string()).collect();
        let b: Vec<String> = self.sinks.iter().map(|x| format!("{x}'")).collect();
        write!(f, "({}|{})", a.join(","), b.join(","))
    }
}

impl Serialize for BoundaryLabeling {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All consistent labelings of `m`, optionally with prescribed boundary.
pub fn enumerate_labelings(m: &PlanarMap, g: Option<&BoundaryLabeling>) -> Result<Vec<Labeling>> {
    let n = m.n();
    let mut fixed = vec![0u8; m.edge_count()];
    if let Some(g) = g {
        if g.n() != n {
            return Err(Error::Domain(format!("boundary has {} strands, web has {n}", g.n())));
        }
        for i in 0..n {
            for (e, l) in [(m.boundary_edge(i), g.sources[i]), (m.boundary_edge(n + i), g.sinks[i])] {
                if fixed[e] != 0 && fixed[e] != l {
                    return Ok(Vec::new());
                }
                fixed[e] = l;
            }
        }
    }
    // assign edges in BFS order from the boundary so constraints bite early
    let order = edge_order(m);
    let mut cur = fixed.clone();
    let mut out_edges = Vec::new();
    backtrack(m, &order, 0, &mut cur, &fixed, &mut out_edges);
    let loop_words = all_words(m.loop_count());
    let mut out = Vec::with_capacity(out_edges.len() * loop_words.len());
    for e in &out_edges {
        for lw in &loop_words {
            out.push(Labeling { edges: e.clone(), loops: lw.clone() });
        }
    }
    Ok(out)
}

fn edge_order(m: &PlanarMap) -> Vec<usize> {
    let mut seen = vec![false; m.edge_count()];
    let mut vseen = vec![false; m.vertex_count()];
    let mut order = Vec::new();
    let mut queue: std::collections::VecDeque<usize> = (0..2 * m.n()).collect();
    for seen in &mut vseen[..2 * m.n()] {
        *seen = true;
    }
    let mut next_root = 0;
    loop {
        while let Some(v) = queue.pop_front() {
            for &e in m.rotation(v) {
                if !seen[e] {
                    seen[e] = true;
                    order.push(e);
                }
                let w = m.edge(e).other(v);
                if !vseen[w] {
                    vseen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        while next_root < m.vertex_count() && vseen[next_root] {
            next_root += 1;
        }
        if next_root == m.vertex_count() {
            break;
        }
        vseen[next_root] = true;
        queue.push_back(next_root);
    }
    order
}

fn vertex_ok(m: &PlanarMap, v: usize, cur: &[u8]) -> bool {
    if v < 2 * m.n() {
        return true;
    }
    let r = m.rotation(v);
    for i in 0..3 {
        for j in i + 1..3 {
            let (a, b) = (cur[r[i]], cur[r[j]]);
            if a != 0 && a == b {
                return false;
            }
        }
    }
    true
}

fn backtrack(m: &PlanarMap, order: &[usize], k: usize, cur: &mut Vec<u8>, fixed: &[u8], out: &mut Vec<Vec<u8>>) {
    if k == order.len() {
        out.push(cur.clone());
        return;
    }
    let e = order[k];
    let choices: &[u8] = if fixed[e] != 0 { &[fixed[e]][..] } else { &[1, 2, 3] };
    let choices = choices.to_vec();
    let ed = m.edge(e);
    for l in choices {
        cur[e] = l;
        if vertex_ok(m, ed.tail, cur) && vertex_ok(m, ed.head, cur) {
            backtrack(m, order, k + 1, cur, fixed, out);
        }
    }
    cur[e] = fixed[e];
}

fn label_of(f: &Labeling, e: EdgeRef) -> u8 {
    match e {
        EdgeRef::Edge(e) => f.edges[e],
        EdgeRef::Loop(k) => f.loops[k],
    }
}

/// Exponent of `t = q^{1/4}` in α(f) for the web's drawing.
pub fn alpha_exponent(w: &Web, f: &Labeling) -> i32 {
    let mut total = 0i32;
    for s in w.singularities() {
        match *s {
            Singularity::Vertex { pair, pair_on_left, sink } => {
                // primed labels are ordered 3' < 2' < 1'
                let key = |e: usize| {
                    let l = i32::from(f.edges[e]);
                    if sink {
                        -l
                    } else {
                        l
                    }
                };
                let ascending = key(pair[0]) < key(pair[1]);
                total += match (pair_on_left, ascending) {
                    (true, true) => -1,
                    (true, false) => 1,
                    (false, true) => 1,
                    (false, false) => -1,
                };
            }
            Singularity::Tangency { edge, cup, down } => {
                let i = i32::from(label_of(f, edge));
                let v = 4 - 2 * i;
                // caps pointing down and cups pointing up give 4 - 2i
                total += if cup != down { v } else { -v };
            }
        }
    }
    total
}

/// α(f) as a monomial in `t`.
pub fn alpha(w: &Web, f: &Labeling) -> LaurentPoly {
    LaurentPoly::t_pow(alpha_exponent(w, f))
}

/// `|L_{D,g}|_q`.
pub fn qsize(w: &Web, g: &BoundaryLabeling) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero();
    for f in enumerate_labelings(w.map(), Some(g))? {
        acc += &alpha(w, &f);
    }
    Ok(acc)
}

/// Sparse vector over boundary words; multiplication glues the sink word of
/// the left factor to the source word of the right factor.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct KappaVector {
    pub entries: BTreeMap<BoundaryLabeling, LaurentPoly>,
}

impl KappaVector {
    pub fn get(&self, g: &BoundaryLabeling) -> LaurentPoly {
        self.entries.get(g).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    fn add_entry(&mut self, g: BoundaryLabeling, v: &LaurentPoly) {
        let slot = self.entries.entry(g.clone()).or_insert_with(LaurentPoly::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&g);
        }
    }

    pub fn add_scaled(&mut self, other: &KappaVector, c: &LaurentPoly) {
        for (g, v) in &other.entries {
            self.add_entry(g.clone(), &(v * c));
        }
    }

    pub fn mul(&self, other: &KappaVector) -> KappaVector {
        let mut by_source: BTreeMap<&[u8], Vec<(&BoundaryLabeling, &LaurentPoly)>> = BTreeMap::new();
        for (g, v) in &other.entries {
            by_source.entry(&g.sources[..]).or_default().push((g, v));
        }
        let mut out = KappaVector::default();
        for (g1, v1) in &self.entries {
            if let Some(list) = by_source.get(&g1.sinks[..]) {
                for (g2, v2) in list {
                    let g = BoundaryLabeling {
                        sources: g1.sources.clone(),
                        sinks: g2.sinks.clone(),
                    };
                    out.add_entry(g, &(v1 * *v2));
                }
            }
        }
        out
    }

    pub fn eval_q1(&self) -> BTreeMap<BoundaryLabeling, crate::exactmath::Rational> {
        self.entries.iter().map(|(g, v)| (g.clone(), v.eval_q1())).collect()
    }
}

impl Serialize for KappaVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.entries.len()))?;
        for (g, v) in &self.entries {
            m.serialize_entry(&g.to_string(), v)?;
        }
        m.end()
    }
}

/// `κ(D) = Σ_g |L_{D,g}|_q r_g`.
pub fn kappa(w: &Web) -> Result<KappaVector> {
    let mut out = KappaVector::default();
    for f in enumerate_labelings(w.map(), None)? {
        out.add_entry(f.boundary(w.map()), &alpha(w, &f));
    }
    Ok(out)
}

/// κ extended linearly; every web of the combination is drawn afresh.
pub fn kappa_combo(c: &crate::spider::WebCombo) -> Result<KappaVector> {
    let mut out = KappaVector::default();
    for (code, coeff) in c.terms() {
        let w = Web::from_map(c.map_of(code).expect("registered"))?;
        out.add_scaled(&kappa(&w)?, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
