//! Embedding-free combinatorial maps of webs.
//!
//! Vertices `0..n` are the boundary sources (top to bottom), `n..2n` the
//! boundary sinks (top to bottom), and every vertex from `2n` on is an
//! internal trivalent vertex. Each edge runs from a source-type vertex (its
//! tail, the positive side) to a sink-type vertex (its head). Rotations list
//! incident edges in clockwise order.
//!
//! Faces are traced with the boundary disk closed off by a virtual frame
//! cycle through the boundary vertices, so faces touching the boundary are
//! distinguishable from internal ones.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Role {
    BoundarySource,
    BoundarySink,
    InternalSource,
    InternalSink,
}

impl Role {
    /// Source-type vertices are tails of all their edges.
    pub fn is_source_type(self) -> bool {
        matches!(self, Role::BoundarySource | Role::InternalSource)
    }

    pub fn is_internal(self) -> bool {
        matches!(self, Role::InternalSource | Role::InternalSink)
    }

    pub(crate) fn code(self) -> i64 {
        match self {
            Role::BoundarySource => 0,
            Role::BoundarySink => 1,
            Role::InternalSource => 2,
            Role::InternalSink => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// One end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Tail,
    Head,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Port {
    pub edge: EdgeId,
    pub end: End,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarMap {
    pub(crate) n: usize,
    pub(crate) roles: Vec<Role>,
    pub(crate) rotation: Vec<Vec<EdgeId>>,
    pub(crate) edges: Vec<Edge>,
    pub(crate) loops: usize,
}

/// A face orbit: the darts in traversal order. Dart `2e` runs tail to head
/// along edge `e`, dart `2e + 1` head to tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<usize>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.darts.iter().map(|d| d / 2)
    }
}

/// Result of removing vertices and reconnecting their dangling edges.
#[derive(Clone, Debug)]
pub struct Splice {
    pub map: PlanarMap,
    /// For each edge of the new map, the chain of old edges it is made of.
    pub origin: Vec<Vec<EdgeId>>,
    /// Chains of old edges that closed up into new loop components; these
    /// loops are appended after the old map's loops.
    pub new_loops: Vec<Vec<EdgeId>>,
}

impl PlanarMap {
    /// Builds and validates a map.
    pub fn new(
        n: usize,
        roles: Vec<Role>,
        rotation: Vec<Vec<EdgeId>>,
        edges: Vec<Edge>,
        loops: usize,
    ) -> Result<Self> {
        let m = Self {
            n,
            roles,
            rotation,
            edges,
            loops,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.roles.len()
    }

    pub fn internal_vertex_count(&self) -> usize {
        self.roles.len() - 2 * self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn loop_count(&self) -> usize {
        self.loops
    }

    pub fn role(&self, v: VertexId) -> Role {
        self.roles[v]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotation[v]
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self, i: usize) -> VertexId {
        i
    }

    pub fn sink(&self, i: usize) -> VertexId {
        self.n + i
    }

    /// The edge at boundary vertex `v`.
    pub fn boundary_edge(&self, v: VertexId) -> EdgeId {
        self.rotation[v][0]
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidWeb(m));
        let nv = self.roles.len();
        if nv < 2 * self.n || self.rotation.len() != nv {
            return bad("vertex tables inconsistent".into());
        }
        for v in 0..nv {
            let expect = if v < self.n {
                Role::BoundarySource
            } else if v < 2 * self.n {
                Role::BoundarySink
            } else {
                self.roles[v]
            };
            if self.roles[v] != expect || (v >= 2 * self.n && !self.roles[v].is_internal()) {
                return bad(format!("vertex {v} has role {:?}", self.roles[v]));
            }
            let deg = if self.roles[v].is_internal() { 3 } else { 1 };
            if self.rotation[v].len() != deg {
                return bad(format!("vertex {v} has degree {}", self.rotation[v].len()));
            }
        }
        let mut incidences = vec![0usize; self.edges.len()];
        for (v, rot) in self.rotation.iter().enumerate() {
            for &e in rot {
                let Some(edge) = self.edges.get(e) else {
                    return bad(format!("vertex {v} references missing edge {e}"));
                };
                if edge.tail != v && edge.head != v {
                    return bad(format!("edge {e} listed at vertex {v} it does not touch"));
                }
                incidences[e] += 1;
            }
        }
        for (e, edge) in self.edges.iter().enumerate() {
            if !self.roles[edge.tail].is_source_type() || self.roles[edge.head].is_source_type() {
                return bad(format!("edge {e} is not oriented source -> sink"));
            }
            if incidences[e] != 2 {
                return bad(format!("edge {e} has {} rotation slots", incidences[e]));
            }
        }
        self.check_planar()
    }

    fn rotation_with_frame(&self, v: VertexId) -> Vec<usize> {
        // Edge ids >= edges.len() are frame edges: frame k joins boundary
        // positions k and k+1 around the disk, going clockwise from the top
        // of the sink side: sinks top to bottom, then sources bottom to top.
        let ne = self.edges.len();
        let n = self.n;
        let cyc = |pos: usize| ne + pos % (2 * n);
        if v < n {
            // source i sits at cyclic position 2n - 1 - i
            let pos = 2 * n - 1 - v;
            // north neighbor is the next position, south the previous
            vec![cyc(pos), self.rotation[v][0], cyc(pos + 2 * n - 1)]
        } else if v < 2 * n {
            let pos = v - n;
            vec![cyc(pos + 2 * n - 1), cyc(pos), self.rotation[v][0]]
        } else {
            self.rotation[v].clone()
        }
    }

    fn frame_endpoints(&self, f: usize) -> (VertexId, VertexId) {
        let n = self.n;
        let at = |pos: usize| {
            let pos = pos % (2 * n);
            if pos < n {
                n + pos
            } else {
                2 * n - 1 - pos
            }
        };
        (at(f), at(f + 1))
    }

    /// Traces all faces, including the virtual frame. Returns the faces and,
    /// for each, whether it touches the frame.
    pub(crate) fn trace_faces(&self) -> Vec<(Face, bool)> {
        let ne = self.edges.len();
        let total = if self.n > 0 { ne + 2 * self.n } else { ne };
        let ends = |e: usize| -> (VertexId, VertexId) {
            if e < ne {
                (self.edges[e].tail, self.edges[e].head)
            } else {
                self.frame_endpoints(e - ne)
            }
        };
        let rots: Vec<Vec<usize>> = (0..self.roles.len()).map(|v| self.rotation_with_frame(v)).collect();
        let mut seen = vec![false; 2 * total];
        let mut faces = Vec::new();
        for start in 0..2 * total {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut touches_frame = false;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                let e = d / 2;
                if e >= ne {
                    touches_frame = true;
                } else {
                    darts.push(d);
                }
                let (a, b) = ends(e);
                let to = if d % 2 == 0 { b } else { a };
                let rot = &rots[to];
                let k = rot.iter().position(|&x| x == e).expect("dart edge at vertex");
                let next = rot[(k + 1) % rot.len()];
                let (na, _) = ends(next);
                d = 2 * next + usize::from(na != to);
            }
            faces.push((Face { darts }, touches_frame));
        }
        faces
    }

    /// Faces that do not touch the boundary disk, sorted by smallest dart.
    pub fn internal_faces(&self) -> Vec<Face> {
        let mut fs: Vec<Face> = self
            .trace_faces()
            .into_iter()
            .filter(|(f, frame)| !frame && !f.is_empty())
            .map(|(f, _)| f)
            .collect();
        fs.sort_by_key(|f| f.darts.iter().copied().min());
        fs
    }

    /// Vertex sets of connected components; the first contains the boundary
    /// when `n > 0`.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let nv = self.roles.len();
        let mut comp = vec![usize::MAX; nv];
        let mut out: Vec<Vec<VertexId>> = Vec::new();
        let mut seeds: Vec<VertexId> = Vec::new();
        if self.n > 0 {
            seeds.push(0);
        }
        seeds.extend(0..nv);
        for s in seeds {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut verts = Vec::new();
            let mut q = VecDeque::from([s]);
            comp[s] = id;
            while let Some(v) = q.pop_front() {
                verts.push(v);
                let mut nbrs: Vec<VertexId> = self.rotation[v].iter().map(|&e| self.edges[e].other(v)).collect();
                if v < 2 * self.n {
                    // the frame ties every boundary vertex together
                    nbrs.extend(0..2 * self.n);
                }
                for w in nbrs {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        q.push_back(w);
                    }
                }
            }
            out.push(verts);
        }
        out
    }

    /// Components not connected to the boundary.
    pub fn floating_components(&self) -> Vec<Vec<VertexId>> {
        let mut comps = self.components();
        if self.n > 0 && !comps.is_empty() {
            comps.remove(0);
        }
        comps
    }

    fn check_planar(&self) -> Result<()> {
        // Euler's formula per component, with the frame attached to the
        // boundary component: V - E + F = 2 for each.
        let comps = self.components();
        let mut comp_of = vec![0usize; self.roles.len()];
        for (c, vs) in comps.iter().enumerate() {
            for &v in vs {
                comp_of[v] = c;
            }
        }
        let mut v_count = vec![0i64; comps.len()];
        let mut e_count = vec![0i64; comps.len()];
        let mut f_count = vec![0i64; comps.len()];
        for (c, vs) in comps.iter().enumerate() {
            v_count[c] = vs.len() as i64;
        }
        for e in &self.edges {
            e_count[comp_of[e.tail]] += 1;
        }
        if self.n > 0 {
            e_count[0] += 2 * self.n as i64;
        }
        for (face, frame) in self.trace_faces() {
            let c = if frame {
                0
            } else {
                comp_of[self.edges[face.darts[0] / 2].tail]
            };
            f_count[c] += 1;
        }
        for c in 0..comps.len() {
            if v_count[c] - e_count[c] + f_count[c] != 2 {
                return Err(Error::InvalidWeb(format!(
                    "component {c} fails Euler's formula (V={}, E={}, F={})",
                    v_count[c], e_count[c], f_count[c]
                )));
            }
        }
        Ok(())
    }

    /// Removes `removed` vertices together with `deleted` edges, and joins the
    /// remaining dangling edges along `pairs`. Each pair is `(head port,
    /// tail port)`: a strand arriving at a removed vertex continues along the
    /// paired edge.
    pub fn splice(
        &self,
        removed: &[VertexId],
        deleted: &[EdgeId],
        pairs: &[(Port, Port)],
    ) -> Result<Splice> {
        let nv = self.roles.len();
        let mut is_removed = vec![false; nv];
        for &v in removed {
            if v < 2 * self.n {
                return Err(Error::InvalidWeb("cannot remove boundary vertex".into()));
            }
            is_removed[v] = true;
        }
        let mut is_deleted = vec![false; self.edges.len()];
        for &e in deleted {
            is_deleted[e] = true;
        }
        let mut next: HashMap<Port, Port> = HashMap::new();
        for &(h, t) in pairs {
            if h.end != End::Head || t.end != End::Tail {
                return Err(Error::InvalidWeb("splice pairs must join a head to a tail".into()));
            }
            next.insert(h, t);
        }
        // new vertex numbering
        let mut vmap = vec![usize::MAX; nv];
        let mut roles = Vec::new();
        for v in 0..nv {
            if !is_removed[v] {
                vmap[v] = roles.len();
                roles.push(self.roles[v]);
            }
        }
        let mut used = vec![false; self.edges.len()];
        let mut new_edges = Vec::new();
        let mut origin = Vec::new();
        // replacement of (old vertex, old edge) slot by new edge id
        let mut slot: HashMap<(VertexId, EdgeId), EdgeId> = HashMap::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if used[e] || is_deleted[e] || is_removed[edge.tail] {
                continue;
            }
            // chain starts at a kept tail
            let mut chain = vec![e];
            used[e] = true;
            let mut cur = e;
            loop {
                let h = self.edges[cur].head;
                if !is_removed[h] {
                    break;
                }
                let port = Port { edge: cur, end: End::Head };
                let Some(t) = next.get(&port) else {
                    return Err(Error::InvalidWeb(format!("dangling head of edge {cur}")));
                };
                cur = t.edge;
                if used[cur] {
                    return Err(Error::InvalidWeb("splice chain revisits an edge".into()));
                }
                used[cur] = true;
                chain.push(cur);
            }
            let id = new_edges.len();
            new_edges.push(Edge {
                tail: vmap[edge.tail],
                head: vmap[self.edges[cur].head],
            });
            slot.insert((edge.tail, e), id);
            slot.insert((self.edges[cur].head, cur), id);
            origin.push(chain);
        }
        // remaining non-deleted edges form closed chains through removed vertices
        let mut new_loops = Vec::new();
        for e in 0..self.edges.len() {
            if used[e] || is_deleted[e] {
                continue;
            }
            let mut chain = Vec::new();
            let mut cur = e;
            while !used[cur] {
                used[cur] = true;
                chain.push(cur);
                let port = Port { edge: cur, end: End::Head };
                let Some(t) = next.get(&port) else {
                    return Err(Error::InvalidWeb(format!("dangling head of edge {cur}")));
                };
                cur = t.edge;
            }
            if cur != e {
                return Err(Error::InvalidWeb("splice produced a non-closed chain".into()));
            }
            new_loops.push(chain);
        }
        let mut rotation = Vec::with_capacity(roles.len());
        for v in 0..nv {
            if is_removed[v] {
                continue;
            }
            let mut rot = Vec::with_capacity(3);
            for &e in &self.rotation[v] {
                let Some(&id) = slot.get(&(v, e)) else {
                    return Err(Error::InvalidWeb(format!("kept vertex {v} lost edge {e}")));
                };
                rot.push(id);
            }
            rotation.push(rot);
        }
        let map = PlanarMap {
            n: self.n,
            roles,
            rotation,
            edges: new_edges,
            loops: self.loops + new_loops.len(),
        };
        debug_assert!(map.validate().is_ok(), "splice broke the map: {:?}", map.validate());
        Ok(Splice {
            map,
            origin,
            new_loops,
        })
    }

    /// Copy with one closed loop removed.
    pub fn without_loop(&self) -> PlanarMap {
        let mut m = self.clone();
        m.loops = m.loops.saturating_sub(1);
        m
    }

    /// Glues the sinks of `self` to the sources of `other`.
    pub fn concatenate(&self, other: &PlanarMap) -> Result<PlanarMap> {
        if self.n != other.n {
            return Err(Error::Domain(format!(
                "cannot concatenate webs on {} and {} strands",
                self.n, other.n
            )));
        }
        let n = self.n;
        let a_int = self.roles.len() - 2 * n;
        // new vertex ids: A sources, B sinks, A internals, B internals
        let map_a = |v: VertexId| if v < n { v } else { 2 * n + (v - 2 * n) };
        let map_b = |v: VertexId| {
            if v >= n && v < 2 * n {
                v
            } else {
                2 * n + a_int + (v - 2 * n)
            }
        };
        let mut roles = vec![Role::BoundarySource; n];
        roles.extend(std::iter::repeat(Role::BoundarySink).take(n));
        roles.extend_from_slice(&self.roles[2 * n..]);
        roles.extend_from_slice(&other.roles[2 * n..]);
        let total = roles.len();
        let mut edges: Vec<Edge> = Vec::new();
        // edge ids: A edges not into A sinks, B edges not out of B sources,
        // then one glued edge per strand
        let mut a_id = vec![usize::MAX; self.edges.len()];
        let mut b_id = vec![usize::MAX; other.edges.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.head >= n && edge.head < 2 * n {
                continue;
            }
            a_id[e] = edges.len();
            edges.push(Edge { tail: map_a(edge.tail), head: map_a(edge.head) });
        }
        for (e, edge) in other.edges.iter().enumerate() {
            if edge.tail < n {
                continue;
            }
            b_id[e] = edges.len();
            edges.push(Edge { tail: map_b(edge.tail), head: map_b(edge.head) });
        }
        let loops = self.loops + other.loops;
        for i in 0..n {
            let ea = self.rotation[n + i][0];
            let eb = other.rotation[i][0];
            let tail = self.edges[ea].tail;
            let head = other.edges[eb].head;
            let id = edges.len();
            edges.push(Edge { tail: map_a(tail), head: map_b(head) });
            a_id[ea] = id;
            b_id[eb] = id;
        }
        let mut rotation = vec![Vec::new(); total];
        for v in 0..self.roles.len() {
            if v >= n && v < 2 * n {
                continue;
            }
            rotation[map_a(v)] = self.rotation[v].iter().map(|&e| a_id[e]).collect();
        }
        for v in 0..other.roles.len() {
            if v < n {
                continue;
            }
            rotation[map_b(v)] = other.rotation[v].iter().map(|&e| b_id[e]).collect();
        }
        let m = PlanarMap { n, roles, rotation, edges, loops };
        m.validate()?;
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(n: usize) -> PlanarMap {
        let mut roles = vec![Role::BoundarySource; n];
        roles.extend(vec![Role::BoundarySink; n]);
        let mut rotation = vec![Vec::new(); 2 * n];
        let mut edges = Vec::new();
        for i in 0..n {
            edges.push(Edge { tail: i, head: n + i });
            rotation[i].push(i);
            rotation[n + i].push(i);
        }
        PlanarMap::new(n, roles, rotation, edges, 0).unwrap()
    }

    #[test]
    fn identity_faces() {
        let m = identity(3);
        assert!(m.internal_faces().is_empty());
        // exterior face plus 4 boundary regions
        assert_eq!(m.trace_faces().len(), 5);
        assert!(m.floating_components().is_empty());
    }

    #[test]
    fn rejects_bad_orientation() {
        let roles = vec![Role::BoundarySource, Role::BoundarySink];
        let edges = vec![Edge { tail: 1, head: 0 }];
        assert!(PlanarMap::new(1, roles, vec![vec![0], vec![0]], edges, 0).is_err());
    }

    #[test]
    fn concatenate_identity() {
        let m = identity(2);
        let c = m.concatenate(&m).unwrap();
        assert_eq!(c.edge_count(), 2);
        assert_eq!(c.internal_vertex_count(), 0);
        assert!(identity(2).concatenate(&identity(3)).is_err());
    }
}
