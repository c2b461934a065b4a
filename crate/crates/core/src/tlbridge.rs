//! The Temperley–Lieb layer: Kauffman diagrams as noncrossing matchings,
//! TL immanants, and the forgetful map from web labelings to matchings that
//! expresses `Imm^{TL}_w(X′)·Δ_{I₃,J₃}(X)` in web immanants.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::exactmath::{ExactMatrix, Rational};
use crate::immanants::immanant_table;
use crate::labelings::{enumerate_labelings, BoundaryLabeling, Labeling};
use crate::minors::minor;
use crate::perm::{all_perms, Perm};
use crate::webcore::{CanonicalCode, PlanarMap};

/// A perfect matching of `n` left points (`0..n`, top to bottom) and `n`
/// right points (`n..2n`, top to bottom).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    n: usize,
    partner: Vec<usize>,
}

impl Matching {
    pub fn new(n: usize, partner: Vec<usize>) -> Result<Self> {
        if partner.len() != 2 * n
            || partner.iter().enumerate().any(|(i, &p)| p >= 2 * n || p == i || partner[p] != i)
        {
            return domain("not a perfect matching");
        }
        let m = Self { n, partner };
        if !m.is_noncrossing() {
            return domain("matching has crossing arcs");
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|k| if k < n { k + n } else { k - n }).collect();
        Self { n, partner }
    }

    /// The generator `e_i`, 1-based: cups between points `i` and `i + 1` on
    /// both sides.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return domain(format!("e_{i} needs 1 <= i < {n}"));
        }
        let mut m = Self::identity(n);
        let (a, b) = (i - 1, i);
        m.partner[a] = b;
        m.partner[b] = a;
        m.partner[n + a] = n + b;
        m.partner[n + b] = n + a;
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner(&self, k: usize) -> usize {
        self.partner[k]
    }

    /// Position around the rectangle: left side downward, then right side
    /// upward.
    fn around(&self, k: usize) -> usize {
        if k < self.n {
            k
        } else {
            3 * self.n - 1 - k
        }
    }

    fn is_noncrossing(&self) -> bool {
        let arcs: Vec<(usize, usize)> = self
            .arcs()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (self.around(a), self.around(b));
                (x.min(y), x.max(y))
            })
            .collect();
        arcs.iter()
            .all(|&(a, b)| arcs.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
    }

    /// Arcs `(a, b)` with `a < b`.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..2 * self.n)
            .filter(|&k| k < self.partner[k])
            .map(|k| (k, self.partner[k]))
            .collect()
    }

    /// Places `other` to the right; returns the product diagram and the
    /// number of closed loops.
    pub fn compose(&self, other: &Matching) -> Result<(Matching, usize)> {
        if self.n != other.n {
            return domain("composing matchings of different sizes");
        }
        let n = self.n;
        let mut partner = vec![usize::MAX; 2 * n];
        let mut seen_mid = vec![false; n];
        // walk from an outer point; `in_left` says which diagram we are in
        let walk = |start: usize, seen_mid: &mut Vec<bool>| -> usize {
            let (mut in_left, mut k) = if start < n { (true, start) } else { (false, start) };
            loop {
                let p = if in_left { self.partner[k] } else { other.partner[k] };
                if in_left {
                    if p < n {
                        return p;
                    }
                    seen_mid[p - n] = true;
                    in_left = false;
                    k = p - n;
                } else {
                    if p >= n {
                        return p;
                    }
                    seen_mid[p] = true;
                    in_left = true;
                    k = n + p;
                }
            }
        };
        for s in 0..2 * n {
            if partner[s] == usize::MAX {
                let t = walk(s, &mut seen_mid);
                partner[s] = t;
                partner[t] = s;
            }
        }
        // what is left in the middle closes up into loops
        let mut loops = 0;
        for m in 0..n {
            if seen_mid[m] {
                continue;
            }
            loops += 1;
            let mut k = m;
            loop {
                seen_mid[k] = true;
                let a = self.partner[n + k] - n;
                seen_mid[a] = true;
                k = other.partner[a];
                if k == m {
                    break;
                }
            }
        }
        Ok((Matching { n, partner }, loops))
    }

    /// Cup-cap product of a word of generators.
    pub fn from_word(n: usize, word: &[usize]) -> Result<(Matching, usize)> {
        let mut m = Self::identity(n);
        let mut loops = 0;
        for &i in word {
            let (next, l) = m.compose(&Self::generator(n, i)?)?;
            m = next;
            loops += l;
        }
        Ok((m, loops))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |k: usize| {
            if k < self.n {
                format!("L{}", k + 1)
            } else {
                format!("R{}", k - self.n + 1)
            }
        };
        let parts: Vec<String> = self.arcs().iter().map(|&(a, b)| format!("{}-{}", name(a), name(b))).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Serialized as a list of arcs `[[a, b], ...]` over points `0..2n`.
impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.arcs().serialize(s)
    }
}

/// `e_w` for each 321-avoiding `w` and the coefficients `f_w(v)` of
/// `θ₂(v)` at `q = 1`.
#[derive(Clone, Debug)]
pub struct TlTable {
    pub n: usize,
    /// 321-avoiding permutations, lexicographic, with their diagrams.
    pub basis: Vec<(Perm, Matching)>,
    pub perms: Vec<Perm>,
    /// `coeffs[b][k] = f_{basis[b]}(perms[k])`.
    pub coeffs: Vec<Vec<i64>>,
}

type TlElement = BTreeMap<Matching, i64>;

fn times_gen_minus_one(x: &TlElement, n: usize, i: usize) -> Result<TlElement> {
    let g = Matching::generator(n, i)?;
    let mut out = TlElement::new();
    for (m, &c) in x {
        let (p, loops) = m.compose(&g)?;
        *out.entry(p).or_insert(0) += c << loops;
        *out.entry(m.clone()).or_insert(0) -= c;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

impl TlTable {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 || n > 8 {
            return domain(format!("TL tables need 1 <= n <= 8, got {n}"));
        }
        let perms = all_perms(n);
        let mut basis = Vec::new();
        for w in &perms {
            if w.avoids(&[3, 2, 1]) {
                let (m, loops) = Matching::from_word(n, &w.reduced_word())?;
                if loops != 0 {
                    return Err(Error::Violation("reduced word of a 321-avoider closed a loop".into()));
                }
                basis.push((w.clone(), m));
            }
        }
        let index: BTreeMap<&Matching, usize> = basis.iter().enumerate().map(|(b, (_, m))| (m, b)).collect();
        if index.len() != basis.len() {
            return Err(Error::Violation("two 321-avoiders share a diagram".into()));
        }
        let mut by_len: Vec<&Perm> = perms.iter().collect();
        by_len.sort_by_key(|p| p.length());
        let mut theta: BTreeMap<Vec<usize>, TlElement> = BTreeMap::new();
        for v in by_len {
            let word = v.reduced_word();
            let elt = match word.split_last() {
                None => TlElement::from([(Matching::identity(n), 1)]),
                Some((&i, prefix)) => {
                    let pre = Perm::from_word(n, prefix)?;
                    times_gen_minus_one(&theta[pre.images()], n, i)?
                }
            };
            theta.insert(v.images().to_vec(), elt);
        }
        let mut coeffs = vec![vec![0i64; perms.len()]; basis.len()];
        for (k, v) in perms.iter().enumerate() {
            for (m, &c) in &theta[v.images()] {
                let b = *index
                    .get(m)
                    .ok_or_else(|| Error::Violation(format!("θ₂ produced a non-basis diagram {m}")))?;
                coeffs[b][k] = c;
            }
        }
        Ok(Self { n, basis, perms, coeffs })
    }

    pub fn index_of(&self, w: &Perm) -> Option<usize> {
        self.basis.iter().position(|(p, _)| p == w)
    }

    pub fn matching(&self, w: &Perm) -> Option<&Matching> {
        self.basis.iter().find(|(p, _)| p == w).map(|(_, m)| m)
    }

    /// `Imm^{TL}_w(X)`.
    pub fn immanant(&self, w: &Perm, x: &ExactMatrix) -> Result<Rational> {
        let b = self
            .index_of(w)
            .ok_or_else(|| Error::Domain(format!("{} is not a 321-avoiding permutation of {}", w.one_line(), self.n)))?;
        if x.size() != self.n {
            return domain(format!("matrix is {0}x{0}, expected {1}x{1}", x.size(), self.n));
        }
        let mut s = Rational::zero();
        for (k, v) in self.perms.iter().enumerate() {
            let c = self.coeffs[b][k];
            if c != 0 {
                let mono = (0..self.n).fold(Rational::one(), |acc, m| acc * x.get(m, v.apply(m)));
                s += mono * Rational::from_integer(c.into());
            }
        }
        Ok(s)
    }
}

/// `Imm^{TL}_w(X)` for a 321-avoiding `w`.
pub fn tl_immanant(w: &Perm, x: &ExactMatrix) -> Result<Rational> {
    if !w.avoids(&[3, 2, 1]) {
        return domain(format!("{} contains the pattern 321", w.one_line()));
    }
    TlTable::build(w.n())?.immanant(w, x)
}

/// Boundary labels in `{1, 2}`, `left` on the left points and `right` on
/// the right points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct A1Boundary {
    pub left: Vec<u8>,
    pub right: Vec<u8>,
}

/// `|M_{w,g}|`: 1 when the matching carries a consistent labeling with
/// boundary `g` (through arcs keep their label, same-side arcs change it at
/// their interior vertex), else 0.
pub fn m_count(m: &Matching, g: &A1Boundary) -> usize {
    let n = m.n;
    let label = |k: usize| if k < n { g.left[k] } else { g.right[k - n] };
    let ok = m.arcs().into_iter().all(|(a, b)| {
        let through = (a < n) != (b < n);
        (label(a) == label(b)) == through
    });
    usize::from(ok)
}

/// Every boundary in `{1, 2}` with equal label counts on the two sides.
pub fn all_pair_boundaries(n: usize) -> Vec<A1Boundary> {
    let words: Vec<Vec<u8>> = (0..1usize << n)
        .map(|bits| (0..n).map(|k| if bits >> k & 1 == 1 { 2 } else { 1 }).collect())
        .collect();
    let mut out = Vec::new();
    for a in &words {
        for b in &words {
            if a.iter().filter(|&&x| x == 1).count() == b.iter().filter(|&&x| x == 1).count() {
                out.push(A1Boundary { left: a.clone(), right: b.clone() });
            }
        }
    }
    out
}

/// `Δ_{I₁,J₁}(X)Δ_{I₂,J₂}(X)` for the sets read off `g`.
pub fn pair_product(g: &A1Boundary, x: &ExactMatrix) -> Result<Rational> {
    let set = |side: &[u8], k: u8| -> Vec<usize> {
        side.iter().enumerate().filter(|(_, &l)| l == k).map(|(m, _)| m + 1).collect()
    };
    Ok(minor(x, &set(&g.left, 1), &set(&g.right, 1))? * minor(x, &set(&g.left, 2), &set(&g.right, 2))?)
}

/// The image of a labeled web under the forgetful map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A1Image {
    pub matching: Matching,
    pub boundary: A1Boundary,
    /// Closed 1/2-loops that were discarded.
    pub loops: usize,
}

/// Deletes the edges labeled 3 and follows the rest through the now
/// bivalent vertices. Boundary points labeled 3 disappear; the others keep
/// their order on each side.
pub fn forgetful(m: &PlanarMap, f: &Labeling) -> Result<A1Image> {
    if !f.is_consistent(m) {
        return domain("labeling is not consistent");
    }
    let n = m.n();
    let left: Vec<usize> = (0..n).filter(|&i| f.edges[m.boundary_edge(m.source(i))] != 3).collect();
    let right: Vec<usize> = (0..n).filter(|&j| f.edges[m.boundary_edge(m.sink(j))] != 3).collect();
    if left.len() != right.len() {
        return Err(Error::Violation("forgetful image has unequal sides".into()));
    }
    let k = left.len();
    // point index of a boundary vertex in the A₁ picture
    let point = |v: usize| -> Option<usize> {
        if v < n {
            left.iter().position(|&i| i == v)
        } else if v < 2 * n {
            right.iter().position(|&j| j == v - n).map(|p| p + k)
        } else {
            None
        }
    };
    let mut partner = vec![usize::MAX; 2 * k];
    let mut used = vec![false; m.edge_count()];
    let starts: Vec<usize> = left.iter().map(|&i| m.source(i)).chain(right.iter().map(|&j| m.sink(j))).collect();
    for start in starts {
        let from = point(start).expect("kept boundary point");
        if partner[from] != usize::MAX {
            continue;
        }
        let mut v = start;
        let mut e = m.boundary_edge(v);
        loop {
            used[e] = true;
            v = m.edge(e).other(v);
            if let Some(p) = point(v) {
                partner[from] = p;
                partner[p] = from;
                break;
            }
            e = *m
                .rotation(v)
                .iter()
                .find(|&&x| x != e && f.edges[x] != 3)
                .ok_or_else(|| Error::Violation("dead end in the forgetful map".into()))?;
        }
    }
    // count the leftover 1/2 cycles
    let mut loops = f.loops.iter().filter(|&&l| l != 3).count();
    for e0 in 0..m.edge_count() {
        if used[e0] || f.edges[e0] == 3 {
            continue;
        }
        loops += 1;
        let (mut v, mut e) = (m.edge(e0).head, e0);
        loop {
            used[e] = true;
            let next = *m.rotation(v).iter().find(|&&x| x != e && f.edges[x] != 3).expect("bivalent");
            if next == e0 {
                break;
            }
            v = m.edge(next).other(v);
            e = next;
        }
    }
    let boundary = A1Boundary {
        left: left.iter().map(|&i| f.edges[m.boundary_edge(m.source(i))]).collect(),
        right: right.iter().map(|&j| f.edges[m.boundary_edge(m.sink(j))]).collect(),
    };
    Ok(A1Image { matching: Matching::new(k, partner)?, boundary, loops })
}

/// Row set `I₃` and column set `J₃` (1-based) of the third minor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThirdMinor {
    pub n: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl ThirdMinor {
    pub fn new(n: usize, mut rows: Vec<usize>, mut cols: Vec<usize>) -> Result<Self> {
        rows.sort_unstable();
        cols.sort_unstable();
        rows.dedup();
        cols.dedup();
        if rows.len() != cols.len() || rows.len() > n {
            return domain("|I₃| must equal |J₃|");
        }
        if rows.iter().chain(&cols).any(|&m| m == 0 || m > n) {
            return domain(format!("indices must lie in 1..={n}"));
        }
        Ok(Self { n, rows, cols })
    }

    /// Size of the complementary submatrix `X′`.
    pub fn rest(&self) -> usize {
        self.n - self.rows.len()
    }

    fn complement(&self, s: &[usize]) -> Vec<usize> {
        (1..=self.n).filter(|m| !s.contains(m)).collect()
    }

    pub fn sub_matrix(&self, x: &ExactMatrix) -> Result<ExactMatrix> {
        let r: Vec<usize> = self.complement(&self.rows).iter().map(|m| m - 1).collect();
        let c: Vec<usize> = self.complement(&self.cols).iter().map(|m| m - 1).collect();
        x.submatrix(&r, &c)
    }

    /// Combines an A₁ boundary on the complementary positions with 3s at
    /// `I₃`, `J₃`.
    pub fn lift(&self, g: &A1Boundary) -> Result<BoundaryLabeling> {
        let fill = |set: &[usize], labels: &[u8]| {
            let mut it = labels.iter();
            (1..=self.n)
                .map(|m| if set.contains(&m) { 3 } else { *it.next().expect("label per free position") })
                .collect::<Vec<u8>>()
        };
        BoundaryLabeling::new(fill(&self.rows, &g.left), fill(&self.cols, &g.right))
    }
}

/// Boundaries `g̃` admissible for `w`: 3s at `(I₃, J₃)`, and `M_{w,g}`
/// nonempty on the remaining positions.
pub fn admissible_boundaries(w: &Matching, third: &ThirdMinor) -> Result<Vec<BoundaryLabeling>> {
    if w.n() != third.rest() {
        return domain("matching size does not fit the complement of the third minor");
    }
    all_pair_boundaries(w.n())
        .into_iter()
        .filter(|g| m_count(w, g) == 1)
        .map(|g| third.lift(&g))
        .collect()
}

/// `|L_{D,g̃,w}|`: labelings of `D` with boundary `g̃` whose forgetful image
/// is the diagram `w`.
pub fn bridge_count(d: &PlanarMap, w: &Matching, g: &BoundaryLabeling) -> Result<usize> {
    let mut count = 0;
    for f in enumerate_labelings(d, Some(g))? {
        if forgetful(d, &f)?.matching == *w {
            count += 1;
        }
    }
    Ok(count)
}

/// `a^D_{w,I₃,J₃}` computed with the first admissible boundary; 0 when none
/// exists.
pub fn bridge_coefficient(d: &PlanarMap, w: &Matching, third: &ThirdMinor) -> Result<usize> {
    match admissible_boundaries(w, third)?.first() {
        Some(g) => bridge_count(d, w, g),
        None => Ok(0),
    }
}

/// `a^D_{w,I₃,J₃}` for every irreducible web on `n` strands, in table order.
pub fn bridge_expansion(w: &Perm, third: &ThirdMinor) -> Result<Vec<(CanonicalCode, usize)>> {
    let tl = TlTable::build(third.rest().max(1))?;
    let m = if third.rest() == 0 {
        None
    } else {
        Some(
            tl.matching(w)
                .ok_or_else(|| Error::Domain(format!("{} is not 321-avoiding", w.one_line())))?
                .clone(),
        )
    };
    let table = immanant_table(third.n)?;
    let mut out = Vec::with_capacity(table.web_count());
    for web in &table.webs {
        let c = match &m {
            Some(m) => bridge_coefficient(&web.map, m, third)?,
            // X′ is empty: the product is Δ_{[n],[n]} = det X
            None => {
                let g = BoundaryLabeling::new(vec![3; third.n], vec![3; third.n])?;
                enumerate_labelings(&web.map, Some(&g))?.len()
            }
        };
        out.push((web.code.clone(), c));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    pub w: String,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub coefficients: BTreeMap<String, usize>,
    pub verified: bool,
}

/// Expands `Imm^{TL}_w(X′)·Δ_{I₃,J₃}(X)` and checks it on `samples` random
/// matrices.
pub fn bridge_report(w: &Perm, third: &ThirdMinor, samples: usize, seed: u64) -> Result<BridgeReport> {
    use rand::SeedableRng;
    let exp = bridge_expansion(w, third)?;
    let table = immanant_table(third.n)?;
    let tl = TlTable::build(third.rest().max(1))?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut verified = true;
    for _ in 0..samples {
        let x = ExactMatrix::random_small(third.n, &mut rng);
        let left = if third.rest() == 0 {
            Rational::one()
        } else {
            tl.immanant(w, &third.sub_matrix(&x)?)?
        } * minor(&x, &third.rows, &third.cols)?;
        let vals = table.evaluate_all(&x)?;
        let right: Rational = exp
            .iter()
            .map(|(code, c)| &vals[table.index_of(code).expect("table web")] * Rational::from_integer((*c as i64).into()))
            .sum();
        verified &= left == right;
    }
    Ok(BridgeReport {
        w: w.one_line(),
        rows: third.rows.clone(),
        cols: third.cols.clone(),
        coefficients: exp.into_iter().filter(|(_, c)| *c > 0).map(|(k, c)| (k.key(), c)).collect(),
        verified,
    })
}
