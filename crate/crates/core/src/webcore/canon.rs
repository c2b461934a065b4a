use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::map::{EdgeId, PlanarMap, VertexId};

/// Integer sequence identifying a web up to boundary-preserving isotopy.
/// Serialized as its [`key`](CanonicalCode::key) string, so codes can key
/// JSON objects.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<i64>);

impl CanonicalCode {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Compact text form, e.g. `2.0.4.0.0.2.0...`, usable as a JSON key.
    pub fn key(&self) -> String {
        self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }

    pub fn from_key(s: &str) -> Option<Self> {
        s.split('.')
            .map(|x| x.trim().parse::<i64>().ok())
            .collect::<Option<Vec<_>>>()
            .map(CanonicalCode)
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.key())
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Self::from_key(&text).ok_or_else(|| serde::de::Error::custom(format!("bad web code {text:?}")))
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code[{}]", self.key())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Old-to-new renumbering produced alongside a canonical code.
#[derive(Clone, Debug)]
pub struct Relabel {
    pub vertex: Vec<VertexId>,
    pub edge: Vec<EdgeId>,
    /// New start slot of each old vertex's rotation.
    start: Vec<usize>,
}

struct Traversal {
    code: Vec<i64>,
    order: Vec<VertexId>,
    start: Vec<usize>,
    edge_order: Vec<EdgeId>,
}

fn traverse(m: &PlanarMap, roots: &[(VertexId, usize)]) -> Traversal {
    let nv = m.vertex_count();
    let mut num = vec![usize::MAX; nv];
    let mut start = vec![0usize; nv];
    let mut order = Vec::new();
    let mut q = VecDeque::new();
    for &(v, s) in roots {
        num[v] = order.len();
        start[v] = s;
        order.push(v);
        q.push_back(v);
    }
    let mut edge_seen = vec![false; m.edge_count()];
    let mut edge_order = Vec::new();
    let mut code = Vec::new();
    while let Some(u) = q.pop_front() {
        code.push(m.role(u).code());
        let rot = m.rotation(u);
        for k in 0..rot.len() {
            let e = rot[(start[u] + k) % rot.len()];
            let w = m.edge(e).other(u);
            if num[w] == usize::MAX {
                num[w] = order.len();
                start[w] = m.rotation(w).iter().position(|&x| x == e).unwrap();
                order.push(w);
                q.push_back(w);
            }
            let wrot = m.rotation(w);
            let at = wrot.iter().position(|&x| x == e).unwrap();
            let rel = (at + wrot.len() - start[w]) % wrot.len();
            code.push(num[w] as i64);
            code.push(rel as i64);
            if !edge_seen[e] {
                edge_seen[e] = true;
                edge_order.push(e);
            }
        }
    }
    Traversal {
        code,
        order,
        start,
        edge_order,
    }
}

/// Canonical code plus the renumbering that puts `m` in canonical order.
pub fn canonical_form_with_relabel(m: &PlanarMap) -> (CanonicalCode, Relabel) {
    let n = m.n();
    let roots: Vec<(VertexId, usize)> = (0..2 * n).map(|v| (v, 0)).collect();
    let main = traverse(m, &roots);
    let mut code = vec![n as i64, m.loop_count() as i64, main.order.len() as i64];
    code.extend_from_slice(&main.code);

    let mut start = main.start.clone();
    let mut order = main.order.clone();
    let mut edge_order = main.edge_order.clone();

    let mut floating: Vec<Traversal> = Vec::new();
    for comp in m.floating_components() {
        let mut best: Option<Traversal> = None;
        for &v in &comp {
            for s in 0..m.rotation(v).len() {
                let t = traverse(m, &[(v, s)]);
                if best.as_ref().map_or(true, |b| t.code < b.code) {
                    best = Some(t);
                }
            }
        }
        floating.push(best.expect("nonempty component"));
    }
    floating.sort_by(|a, b| a.code.cmp(&b.code));
    code.push(floating.len() as i64);
    for t in &floating {
        code.push(t.order.len() as i64);
        code.extend_from_slice(&t.code);
        for &v in &t.order {
            start[v] = t.start[v];
        }
        order.extend_from_slice(&t.order);
        edge_order.extend_from_slice(&t.edge_order);
    }

    let mut vertex = vec![0; m.vertex_count()];
    for (new, &old) in order.iter().enumerate() {
        vertex[old] = new;
    }
    let mut edge = vec![0; m.edge_count()];
    for (new, &old) in edge_order.iter().enumerate() {
        edge[old] = new;
    }
    (CanonicalCode(code), Relabel { vertex, edge, start })
}

pub fn canonical_form(m: &PlanarMap) -> CanonicalCode {
    canonical_form_with_relabel(m).0
}

impl Relabel {
    pub fn apply(&self, m: &PlanarMap) -> PlanarMap {
        let nv = m.vertex_count();
        let mut roles = vec![m.role(0); nv];
        let mut rotation = vec![Vec::new(); nv];
        for old in 0..nv {
            let new = self.vertex[old];
            roles[new] = m.role(old);
            let rot = m.rotation(old);
            rotation[new] = (0..rot.len())
                .map(|k| self.edge[rot[(self.start[old] + k) % rot.len()]])
                .collect();
        }
        let mut edges = vec![m.edge(0); m.edge_count()];
        for (old, e) in m.edges().iter().enumerate() {
            edges[self.edge[old]] = super::map::Edge {
                tail: self.vertex[e.tail],
                head: self.vertex[e.head],
            };
        }
        PlanarMap {
            n: m.n(),
            roles,
            rotation,
            edges,
            loops: m.loop_count(),
        }
    }
}

/// Puts `m` into canonical numbering; returns the code, the renumbered map,
/// and the edge renumbering.
pub fn normalize(m: &PlanarMap) -> (CanonicalCode, PlanarMap, Vec<EdgeId>) {
    let (code, relabel) = canonical_form_with_relabel(m);
    let mapped = relabel.apply(m);
    (code, mapped, relabel.edge)
}
