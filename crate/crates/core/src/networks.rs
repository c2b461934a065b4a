//! Weighted planar acyclic networks drawn left to right: path matrices,
//! path families, vertical uncrossing into webs, and the network immanant.
//!
//! Coordinates use `y` pointing up. Sources sit on the left edge of the
//! drawing and sinks on the right, both listed top to bottom; every edge runs
//! strictly rightward, which makes the network acyclic and keeps the incoming
//! edges of each vertex on its left.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::exactmath::{format_rational, parse_rational, ExactMatrix, Rational};
use crate::perm::all_perms;
use crate::spider::Spider;
use crate::webcore::{CanonicalCode, Edge, PlanarMap, Role, Web};

/// Largest `n` for which path families are enumerated.
pub const MAX_FAMILY_N: usize = 4;
const MAX_PATHS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexKey {
    Num(i64),
    Name(String),
}

impl std::fmt::Display for VertexKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VertexKey::Num(k) => write!(f, "{k}"),
            VertexKey::Name(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct VertexJson {
    id: VertexKey,
    x: f64,
    y: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum WeightJson {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct EdgeJson {
    from: VertexKey,
    to: VertexKey,
    weight: WeightJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct NetworkJson {
    n: usize,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    sources: Vec<VertexKey>,
    sinks: Vec<VertexKey>,
}

#[derive(Clone, Debug)]
pub struct NetVertex {
    pub key: VertexKey,
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug)]
pub struct NetEdge {
    pub from: usize,
    pub to: usize,
    pub weight: Rational,
}

#[derive(Clone, Debug)]
pub struct PlanarNetwork {
    n: usize,
    vertices: Vec<NetVertex>,
    edges: Vec<NetEdge>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    topo: Vec<usize>,
}

/// Edge multiplicities of the union of a path family.
pub type Marking = Vec<u8>;

/// One path per source; `sigma[i]` is the sink reached from source `i`.
#[derive(Clone, Debug)]
pub struct PathFamily {
    pub sigma: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Edges run strictly rightward, so an x-range test suffices.
fn on_open_segment(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> bool {
    cross(a, b, p) == 0.0 && p.0 > a.0.min(b.0) && p.0 < a.0.max(b.0)
}

impl PlanarNetwork {
    pub fn new(
        n: usize,
        vertices: Vec<NetVertex>,
        edges: Vec<NetEdge>,
        sources: Vec<usize>,
        sinks: Vec<usize>,
    ) -> Result<Self> {
        let nv = vertices.len();
        if n == 0 || sources.len() != n || sinks.len() != n {
            return domain(format!(
                "network with n = {n} needs n sources and n sinks, got {} and {}",
                sources.len(),
                sinks.len()
            ));
        }
        let mut out_edges = vec![Vec::new(); nv];
        let mut in_edges = vec![Vec::new(); nv];
        for (e, ed) in edges.iter().enumerate() {
            if ed.from >= nv || ed.to >= nv || ed.from == ed.to {
                return domain(format!("edge {e} has bad endpoints"));
            }
            out_edges[ed.from].push(e);
            in_edges[ed.to].push(e);
        }
        // Kahn's algorithm
        let mut indeg: Vec<usize> = in_edges.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(nv);
        while let Some(v) = stack.pop() {
            topo.push(v);
            for &e in &out_edges[v] {
                let h = edges[e].to;
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    stack.push(h);
                }
            }
        }
        if topo.len() != nv {
            return domain("network has a directed cycle");
        }
        let mut seen = vec![false; nv];
        for &v in sources.iter().chain(&sinks) {
            if v >= nv || std::mem::replace(&mut seen[v], true) {
                return domain("sources and sinks must be distinct vertices");
            }
        }
        for &s in &sources {
            if !in_edges[s].is_empty() {
                return domain(format!("source {} has incoming edges", vertices[s].key));
            }
        }
        for &s in &sinks {
            if !out_edges[s].is_empty() {
                return domain(format!("sink {} has outgoing edges", vertices[s].key));
            }
        }
        let net = Self { n, vertices, edges, sources, sinks, out_edges, in_edges, topo };
        net.check_embedding()?;
        Ok(net)
    }

    fn pos(&self, v: usize) -> (f64, f64) {
        (self.vertices[v].x, self.vertices[v].y)
    }

    fn check_embedding(&self) -> Result<()> {
        let xs = self.vertices.iter().map(|v| v.x);
        let (lo, hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
        if self.vertices.iter().any(|v| !v.x.is_finite() || !v.y.is_finite()) {
            return domain("vertex coordinates must be finite");
        }
        for (v, vx) in self.vertices.iter().enumerate() {
            let expect = if self.sources.contains(&v) {
                Some(lo)
            } else if self.sinks.contains(&v) {
                Some(hi)
            } else {
                None
            };
            match expect {
                Some(x) if vx.x != x => {
                    return domain(format!("boundary vertex {} is not on the outer edge", vx.key));
                }
                None if !(vx.x > lo && vx.x < hi) => {
                    return domain(format!("inner vertex {} is not strictly inside", vx.key));
                }
                _ => {}
            }
        }
        for side in [&self.sources, &self.sinks] {
            if side.windows(2).any(|w| self.vertices[w[0]].y <= self.vertices[w[1]].y) {
                return domain("sources and sinks must be listed top to bottom");
            }
        }
        for (e, ed) in self.edges.iter().enumerate() {
            if self.vertices[ed.to].x <= self.vertices[ed.from].x {
                return domain(format!("edge {e} does not run rightward"));
            }
        }
        for a in 0..self.vertices.len() {
            for b in a + 1..self.vertices.len() {
                if self.pos(a) == self.pos(b) {
                    return domain("two vertices share a position");
                }
            }
        }
        for (e, ed) in self.edges.iter().enumerate() {
            let (p, q) = (self.pos(ed.from), self.pos(ed.to));
            for v in 0..self.vertices.len() {
                if on_open_segment(self.pos(v), p, q) {
                    return domain(format!("vertex {} lies on edge {e}", self.vertices[v].key));
                }
            }
            for f in e + 1..self.edges.len() {
                let fd = &self.edges[f];
                let shared = [fd.from, fd.to].iter().any(|x| *x == ed.from || *x == ed.to);
                if shared {
                    continue;
                }
                let (r, s) = (self.pos(fd.from), self.pos(fd.to));
                let d1 = cross(p, q, r);
                let d2 = cross(p, q, s);
                let d3 = cross(r, s, p);
                let d4 = cross(r, s, q);
                if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
                    return domain(format!("edges {e} and {f} cross"));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[NetEdge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[NetVertex] {
        &self.vertices
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: NetworkJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let index: HashMap<VertexKey, usize> = raw
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.clone(), i))
            .collect();
        if index.len() != raw.vertices.len() {
            return domain("duplicate vertex id");
        }
        let look = |k: &VertexKey| {
            index
                .get(k)
                .copied()
                .ok_or_else(|| Error::Domain(format!("unknown vertex {k}")))
        };
        let mut edges = Vec::new();
        for e in &raw.edges {
            let weight = match &e.weight {
                WeightJson::Int(k) => Rational::from_integer((*k).into()),
                WeightJson::Text(s) => parse_rational(s)?,
            };
            edges.push(NetEdge { from: look(&e.from)?, to: look(&e.to)?, weight });
        }
        let sources = raw.sources.iter().map(look).collect::<Result<Vec<_>>>()?;
        let sinks = raw.sinks.iter().map(look).collect::<Result<Vec<_>>>()?;
        let vertices = raw
            .vertices
            .into_iter()
            .map(|v| NetVertex { key: v.id, x: v.x, y: v.y })
            .collect();
        Self::new(raw.n, vertices, edges, sources, sinks)
    }

    pub fn to_json(&self) -> String {
        let raw = NetworkJson {
            n: self.n,
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson { id: v.key.clone(), x: v.x, y: v.y })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    from: self.vertices[e.from].key.clone(),
                    to: self.vertices[e.to].key.clone(),
                    weight: WeightJson::Text(format_rational(&e.weight)),
                })
                .collect(),
            sources: self.sources.iter().map(|&v| self.vertices[v].key.clone()).collect(),
            sinks: self.sinks.iter().map(|&v| self.vertices[v].key.clone()).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("network serializes")
    }

    /// `n` horizontal strands with unit weights.
    pub fn identity(n: usize) -> Result<Self> {
        Self::layered(n, 1, &[], &mut |_| Rational::one())
    }

    /// A network on `n` horizontal lines. Each chip `(column, band, down)`
    /// is a diagonal edge between lines `band` and `band + 1` spanning
    /// `x ∈ [column, column + 1]`; columns run `1..=columns`.
    pub fn layered(
        n: usize,
        columns: usize,
        chips: &[(usize, usize, bool)],
        weight: &mut dyn FnMut(usize) -> Rational,
    ) -> Result<Self> {
        let right = columns + 2;
        let mut pts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut vertices = Vec::new();
        let mut vid = |line: usize, x: usize, vertices: &mut Vec<NetVertex>| {
            *pts.entry((line, x)).or_insert_with(|| {
                vertices.push(NetVertex {
                    key: VertexKey::Num(vertices.len() as i64),
                    x: x as f64,
                    y: (n - 1 - line) as f64,
                });
                vertices.len() - 1
            })
        };
        let sources: Vec<usize> = (0..n).map(|r| vid(r, 0, &mut vertices)).collect();
        let sinks: Vec<usize> = (0..n).map(|r| vid(r, right, &mut vertices)).collect();
        let mut diag = Vec::new();
        for &(c, band, down) in chips {
            if c == 0 || c > columns || band + 1 >= n {
                return domain(format!("chip ({c}, {band}) is out of range"));
            }
            let (a, b) = if down { (band, band + 1) } else { (band + 1, band) };
            let t = vid(a, c, &mut vertices);
            let h = vid(b, c + 1, &mut vertices);
            diag.push((t, h));
        }
        let mut edges = Vec::new();
        let mut k = 0usize;
        for line in 0..n {
            let on_line: Vec<usize> = pts
                .iter()
                .filter(|((l, _), _)| *l == line)
                .map(|(_, &v)| v)
                .collect();
            for w in on_line.windows(2) {
                edges.push(NetEdge { from: w[0], to: w[1], weight: weight(k) });
                k += 1;
            }
        }
        for (t, h) in diag {
            edges.push(NetEdge { from: t, to: h, weight: weight(k) });
            k += 1;
        }
        Self::new(n, vertices, edges, sources, sinks)
    }

    /// A random layered network with positive weights `p/q`, `1 <= p <= 5`,
    /// `1 <= q <= 3`.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Result<Self> {
        let columns = rng.gen_range(2..=4);
        Self::random_with(n, columns, rng)
    }

    pub fn random_with<R: Rng>(n: usize, columns: usize, rng: &mut R) -> Result<Self> {
        let mut chips = Vec::new();
        for c in 1..=columns {
            for band in 0..n.saturating_sub(1) {
                if rng.gen_bool(0.5) {
                    chips.push((c, band, rng.gen_bool(0.5)));
                }
            }
        }
        let weights: Vec<Rational> = (0..4 * n * (columns + 2) + chips.len() + 4)
            .map(|_| Rational::new(rng.gen_range(1..=5i64).into(), rng.gen_range(1..=3i64).into()))
            .collect();
        Self::layered(n, columns, &chips, &mut |k| weights[k].clone())
    }

    /// `x_{i,j}` = total weight of paths from source `i` to sink `j`.
    pub fn path_matrix(&self) -> Result<ExactMatrix> {
        let mut rows = Vec::with_capacity(self.n);
        for &s in &self.sources {
            let mut val = vec![Rational::zero(); self.vertices.len()];
            val[s] = Rational::one();
            for &v in &self.topo {
                if val[v].is_zero() {
                    continue;
                }
                for &e in &self.out_edges[v] {
                    let add = &val[v] * &self.edges[e].weight;
                    val[self.edges[e].to] += add;
                }
            }
            rows.push(self.sinks.iter().map(|&t| val[t].clone()).collect());
        }
        ExactMatrix::new(rows)
    }

    /// All paths from `from` to the sink `to`, as edge lists.
    fn paths_between(&self, from: usize, to: usize) -> Result<Vec<Vec<usize>>> {
        fn go(
            net: &PlanarNetwork,
            v: usize,
            to: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) -> Result<()> {
            if v == to {
                out.push(cur.clone());
                if out.len() > MAX_PATHS {
                    return domain("too many paths to enumerate");
                }
                return Ok(());
            }
            for &e in &net.out_edges[v] {
                cur.push(e);
                go(net, net.edges[e].to, to, cur, out)?;
                cur.pop();
            }
            Ok(())
        }
        let mut out = Vec::new();
        go(self, from, to, &mut Vec::new(), &mut out)?;
        Ok(out)
    }

    fn path_vertices(&self, path: &[usize], start: usize) -> Vec<usize> {
        std::iter::once(start).chain(path.iter().map(|&e| self.edges[e].to)).collect()
    }

    pub fn path_weight(&self, path: &[usize]) -> Rational {
        path.iter().fold(Rational::one(), |acc, &e| acc * &self.edges[e].weight)
    }

    /// Calls `f` on every family of `n` paths using each source and each
    /// sink once, in which no vertex carries four or more paths.
    pub fn for_each_family(&self, mut f: impl FnMut(&PathFamily)) -> Result<()> {
        if self.n > MAX_FAMILY_N {
            return domain(format!("path families are enumerated for n <= {MAX_FAMILY_N}"));
        }
        let mut paths = vec![vec![Vec::new(); self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                paths[i][j] = self
                    .paths_between(self.sources[i], self.sinks[j])?
                    .into_iter()
                    .map(|p| {
                        let vs = self.path_vertices(&p, self.sources[i]);
                        (p, vs)
                    })
                    .collect::<Vec<_>>();
            }
        }
        let mut load = vec![0u8; self.vertices.len()];
        for sigma in all_perms(self.n) {
            let sigma: Vec<usize> = sigma.images().to_vec();
            let mut chosen: Vec<usize> = Vec::with_capacity(self.n);
            rec(self, &paths, &sigma, &mut chosen, &mut load, &mut f);
        }
        fn rec(
            net: &PlanarNetwork,
            paths: &[Vec<Vec<(Vec<usize>, Vec<usize>)>>],
            sigma: &[usize],
            chosen: &mut Vec<usize>,
            load: &mut [u8],
            f: &mut impl FnMut(&PathFamily),
        ) {
            let i = chosen.len();
            if i == net.n {
                let fam = PathFamily {
                    sigma: sigma.to_vec(),
                    paths: (0..net.n).map(|k| paths[k][sigma[k]][chosen[k]].0.clone()).collect(),
                };
                f(&fam);
                return;
            }
            for (k, (_, vs)) in paths[i][sigma[i]].iter().enumerate() {
                if vs.iter().any(|&v| load[v] >= 3) {
                    continue;
                }
                vs.iter().for_each(|&v| load[v] += 1);
                chosen.push(k);
                rec(net, paths, sigma, chosen, load, f);
                chosen.pop();
                vs.iter().for_each(|&v| load[v] -= 1);
            }
        }
        Ok(())
    }

    pub fn marking(&self, fam: &PathFamily) -> Marking {
        let mut m = vec![0u8; self.edges.len()];
        for p in &fam.paths {
            for &e in p {
                m[e] += 1;
            }
        }
        m
    }

    /// `ω(Ñ) = Π ω(e)^{mult(e)}`.
    pub fn marking_weight(&self, marking: &Marking) -> Rational {
        let mut w = Rational::one();
        for (e, &k) in marking.iter().enumerate() {
            for _ in 0..k {
                w *= &self.edges[e].weight;
            }
        }
        w
    }

    /// Path families grouped by marked subnetwork, with the number of
    /// families in each group.
    pub fn marked_subnetworks(&self) -> Result<BTreeMap<Marking, usize>> {
        let mut out = BTreeMap::new();
        self.for_each_family(|fam| *out.entry(self.marking(fam)).or_insert(0) += 1)?;
        Ok(out)
    }

    fn angle_key(&self, v: usize, other: usize) -> f64 {
        let (x0, y0) = self.pos(v);
        let (x1, y1) = self.pos(other);
        clockwise_key((y1 - y0).atan2(x1 - x0))
    }

    /// The web of a marked subnetwork: vertices shared by two paths become a
    /// sink/source pair joined by a reversed edge, vertices shared by three
    /// become a sink absorbing all three and a source re-emitting them, a
    /// doubled segment is a single reversed edge and a tripled segment
    /// carries nothing.
    pub fn uncross_map(&self, marking: &Marking) -> Result<PlanarMap> {
        if marking.len() != self.edges.len() {
            return domain("marking does not match the network");
        }
        if let Some(&k) = marking.iter().find(|&&k| k > 3) {
            return domain(format!("an edge is used {k} times"));
        }
        let n = self.n;
        let mut b = MapBuilder::new(n, self.edges.len());
        let used = |e: &usize| marking[*e] > 0;
        for (i, &s) in self.sources.iter().enumerate() {
            let outs: Vec<usize> = self.out_edges[s].iter().copied().filter(used).collect();
            if outs.len() != 1 || marking[outs[0]] != 1 {
                return domain(format!("source {i} does not start exactly one path"));
            }
            let p = b.slot(i);
            b.link(p, tail_port(outs[0]));
        }
        for (j, &t) in self.sinks.iter().enumerate() {
            let ins: Vec<usize> = self.in_edges[t].iter().copied().filter(used).collect();
            if ins.len() != 1 || marking[ins[0]] != 1 {
                return domain(format!("sink {j} does not end exactly one path"));
            }
            let p = b.slot(n + j);
            b.link(p, head_port(ins[0]));
        }
        for v in 0..self.vertices.len() {
            if self.sources.contains(&v) || self.sinks.contains(&v) {
                continue;
            }
            let ins: Vec<usize> = self.in_edges[v].iter().copied().filter(used).collect();
            let outs: Vec<usize> = self.out_edges[v].iter().copied().filter(used).collect();
            let k_in: u8 = ins.iter().map(|&e| marking[e]).sum();
            let k_out: u8 = outs.iter().map(|&e| marking[e]).sum();
            if k_in != k_out {
                return domain(format!("marking is not a union of paths at vertex {}", self.vertices[v].key));
            }
            if k_in > 3 {
                return domain(format!("{k_in} paths meet at vertex {}", self.vertices[v].key));
            }
            if k_in == 0 {
                continue;
            }
            let left = self.side(&mut b, v, &ins, marking, true);
            let right = self.side(&mut b, v, &outs, marking, false);
            match (left, right) {
                (Some(a), Some(c)) => b.link(a, c),
                (None, None) => {}
                _ => unreachable!("both sides carry the same number of paths"),
            }
        }
        b.finish()
    }

    /// Builds the gadget for the incoming (`incoming = true`) or outgoing
    /// edges at `v`; returns the port left to be joined across `v`.
    fn side(
        &self,
        b: &mut MapBuilder,
        v: usize,
        es: &[usize],
        marking: &Marking,
        incoming: bool,
    ) -> Option<usize> {
        let port = |e: usize| if incoming { head_port(e) } else { tail_port(e) };
        let far = |e: usize| if incoming { self.edges[e].from } else { self.edges[e].to };
        let singles: Vec<usize> = es.iter().copied().filter(|&e| marking[e] == 1).collect();
        let doubles: Vec<usize> = es.iter().copied().filter(|&e| marking[e] == 2).collect();
        let k: u8 = es.iter().map(|&e| marking[e]).sum();
        let role = if incoming { Role::InternalSink } else { Role::InternalSource };
        // the connector leaves the sink rightward, the source leftward
        let connector = clockwise_key(if incoming { 0.0 } else { PI });
        match (k, singles.len(), doubles.len()) {
            (1, 1, 0) => Some(port(singles[0])),
            (2, 0, 1) => Some(port(doubles[0])),
            (2, 2, 0) | (3, 3, 0) => {
                let mut items: Vec<(f64, Option<usize>)> =
                    singles.iter().map(|&e| (self.angle_key(v, far(e)), Some(e))).collect();
                if k == 2 {
                    items.push((connector, None));
                }
                items.sort_by(|a, c| a.0.total_cmp(&c.0));
                let w = b.vertex(role);
                let mut open = None;
                for (_, e) in items {
                    let p = b.slot(w);
                    match e {
                        Some(e) => b.link(p, port(e)),
                        None => open = Some(p),
                    }
                }
                open
            }
            (3, 1, 1) => {
                b.link(port(singles[0]), port(doubles[0]));
                None
            }
            _ => None,
        }
    }

    /// The uncrossed web, drawn.
    pub fn uncross(&self, marking: &Marking) -> Result<Web> {
        Web::from_map(&self.uncross_map(marking)?)
    }

    /// `Imm′_D(N)` for every irreducible web `D` on `n` strands.
    pub fn network_immanants(&self) -> Result<BTreeMap<CanonicalCode, Rational>> {
        let table = crate::immanants::immanant_table(self.n)?;
        let mut out: BTreeMap<CanonicalCode, Rational> =
            table.webs.iter().map(|w| (w.code.clone(), Rational::zero())).collect();
        let mut sp = Spider::new();
        for marking in self.marked_subnetworks()?.keys() {
            let red = sp.reduce_map(&self.uncross_map(marking)?)?;
            let weight = self.marking_weight(marking);
            for (code, c) in red.eval_q1() {
                let slot = out.get_mut(&code).ok_or_else(|| {
                    Error::Violation(format!("uncrossing produced web {code} outside the immanant table"))
                })?;
                *slot += c * &weight;
            }
        }
        Ok(out)
    }

    /// `det X(N)` against the sum over vertex-disjoint families.
    pub fn lindstrom_check(&self) -> Result<LindstromReport> {
        let det = self.path_matrix()?.det();
        let mut sum = Rational::zero();
        let mut families = 0usize;
        self.for_each_family(|fam| {
            if fam.sigma.iter().enumerate().all(|(i, &j)| i == j) && self.disjoint(&fam.paths, None) {
                families += 1;
                sum += fam.paths.iter().fold(Rational::one(), |acc, p| acc * self.path_weight(p));
            }
        })?;
        Ok(LindstromReport {
            passed: det == sum,
            det: format_rational(&det),
            family_sum: format_rational(&sum),
            families,
        })
    }

    /// True when the paths whose index satisfies `group` share no vertex.
    fn disjoint(&self, paths: &[Vec<usize>], group: Option<(&[u8], u8)>) -> bool {
        let mut seen = vec![false; self.vertices.len()];
        for (i, p) in paths.iter().enumerate() {
            if let Some((labels, k)) = group {
                if labels[i] != k {
                    continue;
                }
            }
            for v in self.path_vertices(p, self.sources[i]) {
                if std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
        }
        true
    }

    /// `|P_{I,J}(N)|`: triples of vertex-disjoint families, the `k`-th
    /// joining the sources labeled `k` to the sinks labeled `k`.
    pub fn count_labeled_families(&self, g: &crate::labelings::BoundaryLabeling) -> Result<usize> {
        if g.n() != self.n {
            return domain("boundary labeling has the wrong size");
        }
        let mut count = 0usize;
        self.for_each_family(|fam| {
            let ok = fam.sigma.iter().enumerate().all(|(i, &j)| g.sources[i] == g.sinks[j])
                && (1..=3).all(|k| self.disjoint(&fam.paths, Some((&g.sources, k))));
            if ok {
                count += 1;
            }
        })?;
        Ok(count)
    }

    /// `Imm_D(X(N))` next to `Imm′_D(N)` for every web.
    pub fn corollary_check(&self) -> Result<CorollaryReport> {
        let table = crate::immanants::immanant_table(self.n)?;
        let x = self.path_matrix()?;
        let imm = table.evaluate_all(&x)?;
        let prime = self.network_immanants()?;
        let rows: Vec<CorollaryRow> = table
            .webs
            .iter()
            .zip(imm)
            .map(|(w, a)| {
                let b = prime[&w.code].clone();
                CorollaryRow {
                    web: w.code.key(),
                    matrix: format_rational(&a),
                    network: format_rational(&b),
                    equal: a == b,
                }
            })
            .collect();
        Ok(CorollaryReport { passed: rows.iter().all(|r| r.equal), rows })
    }
}

/// Sort key for clockwise order starting from straight up, `y` pointing up.
fn clockwise_key(angle: f64) -> f64 {
    (PI / 2.0 - angle).rem_euclid(2.0 * PI)
}

fn tail_port(e: usize) -> usize {
    2 * e
}

fn head_port(e: usize) -> usize {
    2 * e + 1
}

/// Collects web vertices with their clockwise slots and the links between
/// slots and network edge ends, then traces the chains into web edges.
struct MapBuilder {
    n: usize,
    segments: usize,
    roles: Vec<Role>,
    /// For each vertex slot port: (vertex, position).
    slots: Vec<(usize, usize)>,
    degree: Vec<usize>,
    link: HashMap<usize, usize>,
}

impl MapBuilder {
    fn new(n: usize, segments: usize) -> Self {
        let mut roles = vec![Role::BoundarySource; n];
        roles.extend(vec![Role::BoundarySink; n]);
        Self {
            n,
            segments,
            degree: vec![0; 2 * n],
            roles,
            slots: Vec::new(),
            link: HashMap::new(),
        }
    }

    fn vertex(&mut self, role: Role) -> usize {
        self.roles.push(role);
        self.degree.push(0);
        self.roles.len() - 1
    }

    fn slot(&mut self, v: usize) -> usize {
        self.slots.push((v, self.degree[v]));
        self.degree[v] += 1;
        2 * self.segments + self.slots.len() - 1
    }

    fn link(&mut self, a: usize, b: usize) {
        self.link.insert(a, b);
        self.link.insert(b, a);
    }

    fn finish(self) -> Result<PlanarMap> {
        let seg_ports = 2 * self.segments;
        let mut rotation: Vec<Vec<usize>> = self.degree.iter().map(|&d| vec![usize::MAX; d]).collect();
        let mut edges = Vec::new();
        let mut visited = vec![false; seg_ports];
        let mut done_slot = vec![false; self.slots.len()];
        for s in 0..self.slots.len() {
            if done_slot[s] {
                continue;
            }
            let start = seg_ports + s;
            let mut p = self.link.get(&start).copied().ok_or_else(|| dangling(start))?;
            while p < seg_ports {
                visited[p] = true;
                visited[p ^ 1] = true;
                p = self.link.get(&(p ^ 1)).copied().ok_or_else(|| dangling(p ^ 1))?;
            }
            let end = p - seg_ports;
            done_slot[s] = true;
            done_slot[end] = true;
            let (va, pa) = self.slots[s];
            let (vb, pb) = self.slots[end];
            let e = edges.len();
            let edge = match (self.roles[va].is_source_type(), self.roles[vb].is_source_type()) {
                (true, false) => Edge { tail: va, head: vb },
                (false, true) => Edge { tail: vb, head: va },
                _ => {
                    return Err(Error::Violation(
                        "uncrossing joined two vertices of the same type".into(),
                    ))
                }
            };
            edges.push(edge);
            rotation[va][pa] = e;
            rotation[vb][pb] = e;
        }
        // remaining linked segments close up into loops
        let mut loops = 0;
        for p in 0..seg_ports {
            if visited[p] || !self.link.contains_key(&p) {
                continue;
            }
            let mut q = p;
            loop {
                visited[q] = true;
                visited[q ^ 1] = true;
                q = self.link[&(q ^ 1)];
                if q == p {
                    break;
                }
            }
            loops += 1;
        }
        PlanarMap::new(self.n, self.roles, rotation, edges, loops)
    }
}

fn dangling(p: usize) -> Error {
    Error::Violation(format!("uncrossing left port {p} unconnected"))
}

#[derive(Clone, Debug, Serialize)]
pub struct LindstromReport {
    pub passed: bool,
    pub det: String,
    pub family_sum: String,
    pub families: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryRow {
    pub web: String,
    pub matrix: String,
    pub network: String,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryReport {
    pub passed: bool,
    pub rows: Vec<CorollaryRow>,
}

/// Path matrix of a random layered network with positive weights.
pub fn random_tnn_matrix(n: usize, seed: u64) -> Result<ExactMatrix> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    PlanarNetwork::random(n, &mut rng)?.path_matrix()
}
