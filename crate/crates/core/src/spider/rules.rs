//! Locating reducible features and applying the three spider rules on maps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{qint, LaurentPoly};
use crate::webcore::{
    canonical_form_with_relabel, CanonicalCode, EdgeId, End, Face, PlanarMap, Port, VertexId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    Loop,
    Bigon,
    Square,
}

/// Which planar reconnection of a square's four external edges.
/// With the square's corners `c0..c3` read along the face starting at a
/// sink, `A` joins `x0–x1` and `x2–x3`; `B` joins `x1–x2` and `x3–x0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    A,
    B,
}

/// A reducible feature: a closed loop, or an internal face of length 2 or 4
/// identified by its index in [`PlanarMap::internal_faces`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Feature {
    pub kind: RuleKind,
    pub face: Option<usize>,
}

/// Where a label of the resolved map comes from in the parent map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelSource {
    Edge(EdgeId),
    Loop(usize),
}

/// One term produced by a rule, already in canonical numbering.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub branch: Option<Branch>,
    pub coeff: LaurentPoly,
    pub code: CanonicalCode,
    pub map: PlanarMap,
    /// For each edge of `map`, a parent edge carrying the same label.
    pub edge_from: Vec<EdgeId>,
    /// For each loop of `map`, where its label comes from.
    pub loop_from: Vec<LabelSource>,
}

/// Corners and external edges of a square, rotated so `corners[0]` is a sink.
#[derive(Clone, Debug)]
pub struct SquareShape {
    pub corners: [VertexId; 4],
    /// `sides[k]` joins `corners[k]` and `corners[k+1]`.
    pub sides: [EdgeId; 4],
    pub externals: [EdgeId; 4],
}

fn dart_start(m: &PlanarMap, d: usize) -> VertexId {
    let e = m.edge(d / 2);
    if d % 2 == 0 {
        e.tail
    } else {
        e.head
    }
}

fn third_edge(m: &PlanarMap, v: VertexId, a: EdgeId, b: EdgeId) -> Option<EdgeId> {
    let rot = m.rotation(v);
    let mut rest = rot.iter().copied().filter(|&e| e != a && e != b);
    let x = rest.next()?;
    rest.next().is_none().then_some(x)
}

fn simple_face(m: &PlanarMap, f: &Face) -> bool {
    let mut vs: Vec<VertexId> = f.darts.iter().map(|&d| dart_start(m, d)).collect();
    let mut es: Vec<EdgeId> = f.edges().collect();
    vs.sort_unstable();
    vs.dedup();
    es.sort_unstable();
    es.dedup();
    vs.len() == f.len() && es.len() == f.len()
}

/// All reducible features, loops first, then faces in index order.
pub fn reducible_features(m: &PlanarMap) -> Vec<Feature> {
    let mut out = Vec::new();
    if m.loop_count() > 0 {
        out.push(Feature { kind: RuleKind::Loop, face: None });
    }
    for (i, f) in m.internal_faces().iter().enumerate() {
        if !simple_face(m, f) {
            continue;
        }
        match f.len() {
            2 => out.push(Feature { kind: RuleKind::Bigon, face: Some(i) }),
            4 => out.push(Feature { kind: RuleKind::Square, face: Some(i) }),
            _ => {}
        }
    }
    out
}

/// Highest-priority feature: loop, then bigon, then square; smallest face
/// index within a kind. `None` iff the web is irreducible.
pub fn find_reducible_face(m: &PlanarMap) -> Option<Feature> {
    reducible_features(m).into_iter().min_by_key(|f| (f.kind, f.face))
}

pub fn square_shape(m: &PlanarMap, face: &Face) -> Result<SquareShape> {
    if face.len() != 4 {
        return Err(Error::Violation("square rule on a face of length != 4".into()));
    }
    let starts: Vec<VertexId> = face.darts.iter().map(|&d| dart_start(m, d)).collect();
    let r = (0..4)
        .find(|&k| !m.role(starts[k]).is_source_type())
        .ok_or_else(|| Error::Violation("square without a sink corner".into()))?;
    let corners: [VertexId; 4] = std::array::from_fn(|k| starts[(r + k) % 4]);
    let sides: [EdgeId; 4] = std::array::from_fn(|k| face.darts[(r + k) % 4] / 2);
    let mut externals = [0; 4];
    for k in 0..4 {
        externals[k] = third_edge(m, corners[k], sides[(k + 3) % 4], sides[k])
            .ok_or_else(|| Error::Violation("square corner is not trivalent".into()))?;
    }
    Ok(SquareShape {
        corners,
        sides,
        externals,
    })
}

fn finish(
    m: &PlanarMap,
    removed: &[VertexId],
    deleted: &[EdgeId],
    pairs: &[(Port, Port)],
    coeff: LaurentPoly,
    branch: Option<Branch>,
) -> Result<Resolution> {
    let sp = m.splice(removed, deleted, pairs)?;
    let (code, relabel) = canonical_form_with_relabel(&sp.map);
    let map = relabel.apply(&sp.map);
    let mut edge_from = vec![0; map.edge_count()];
    for (old_new, chain) in sp.origin.iter().enumerate() {
        edge_from[relabel.edge[old_new]] = chain[0];
    }
    let mut loop_from: Vec<LabelSource> = (0..m.loop_count()).map(LabelSource::Loop).collect();
    loop_from.extend(sp.new_loops.iter().map(|c| LabelSource::Edge(c[0])));
    Ok(Resolution {
        branch,
        coeff,
        code,
        map,
        edge_from,
        loop_from,
    })
}

/// Applies `feature` to a map in canonical numbering. `square_b_sign` is `1`
/// for the positive rules; other values exist only to corrupt the rule in
/// tests.
pub(crate) fn apply_rule_signed(
    m: &PlanarMap,
    feature: Feature,
    square_b_sign: i64,
) -> Result<Vec<Resolution>> {
    match feature.kind {
        RuleKind::Loop => {
            if m.loop_count() == 0 {
                return Err(Error::Violation("loop rule on a web without loops".into()));
            }
            let map = m.without_loop();
            let (code, relabel) = canonical_form_with_relabel(&map);
            let map = relabel.apply(&map);
            let mut edge_from = vec![0; map.edge_count()];
            for (old, &new) in relabel.edge.iter().enumerate() {
                edge_from[new] = old;
            }
            Ok(vec![Resolution {
                branch: None,
                coeff: qint(3)?,
                code,
                map,
                edge_from,
                loop_from: (0..m.loop_count() - 1).map(LabelSource::Loop).collect(),
            }])
        }
        RuleKind::Bigon => {
            let faces = m.internal_faces();
            let face = feature
                .face
                .and_then(|i| faces.get(i))
                .filter(|f| f.len() == 2 && simple_face(m, f))
                .ok_or_else(|| Error::Violation("bigon rule: no such bigon".into()))?;
            let (a, b) = (face.darts[0] / 2, face.darts[1] / 2);
            let (s, k) = (m.edge(a).tail, m.edge(a).head);
            let es = third_edge(m, s, a, b).ok_or_else(|| Error::Violation("bad bigon".into()))?;
            let ek = third_edge(m, k, a, b).ok_or_else(|| Error::Violation("bad bigon".into()))?;
            let pairs = [(
                Port { edge: ek, end: End::Head },
                Port { edge: es, end: End::Tail },
            )];
            Ok(vec![finish(m, &[s, k], &[a, b], &pairs, qint(2)?, None)?])
        }
        RuleKind::Square => {
            let faces = m.internal_faces();
            let face = feature
                .face
                .and_then(|i| faces.get(i))
                .filter(|f| f.len() == 4 && simple_face(m, f))
                .ok_or_else(|| Error::Violation("square rule: no such square".into()))?;
            let sq = square_shape(m, face)?;
            let x = sq.externals;
            let head = |e| Port { edge: e, end: End::Head };
            let tail = |e| Port { edge: e, end: End::Tail };
            let a_pairs = [(head(x[0]), tail(x[1])), (head(x[2]), tail(x[3]))];
            let b_pairs = [(head(x[2]), tail(x[1])), (head(x[0]), tail(x[3]))];
            Ok(vec![
                finish(m, &sq.corners, &sq.sides, &a_pairs, LaurentPoly::one(), Some(Branch::A))?,
                finish(
                    m,
                    &sq.corners,
                    &sq.sides,
                    &b_pairs,
                    LaurentPoly::from_int(square_b_sign),
                    Some(Branch::B),
                )?,
            ])
        }
    }
}

/// Applies one spider rule; the resolutions come back in canonical numbering.
pub fn apply_rule(m: &PlanarMap, feature: Feature) -> Result<Vec<Resolution>> {
    apply_rule_signed(m, feature, 1)
}
