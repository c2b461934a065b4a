//! Drawing a combinatorial map as a slice diagram by sweeping a vertical
//! frontier from the sources to the sinks.

use super::canon::{canonical_form, CanonicalCode};
use super::map::{EdgeId, PlanarMap, VertexId};
use super::slice::{Dir, SliceDiagram, Tile};
use crate::error::{Error, Result};

/// Knobs selecting among the many valid drawings of one map.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RenderStyle {
    /// Place the lowest placeable vertex first instead of the highest.
    pub from_bottom: bool,
    /// For a vertex whose three edges are all already drawn, merge the lower
    /// two rather than the upper two before closing with a cap.
    pub triple_low: bool,
    /// Draw one-input vertices as a cup followed by a merge, curling the
    /// lower outgoing edge back around the vertex.
    pub curl: bool,
}

impl RenderStyle {
    pub const ALL: [RenderStyle; 8] = {
        let mut out = [RenderStyle { from_bottom: false, triple_low: false, curl: false }; 8];
        let mut k = 0;
        while k < 8 {
            out[k] = RenderStyle {
                from_bottom: k & 1 != 0,
                triple_low: k & 2 != 0,
                curl: k & 4 != 0,
            };
            k += 1;
        }
        out
    };
}

pub fn render(m: &PlanarMap) -> Result<SliceDiagram> {
    render_with(m, RenderStyle::default())
}

pub fn render_with(m: &PlanarMap, style: RenderStyle) -> Result<SliceDiagram> {
    if m.loop_count() > 0 {
        return Err(Error::Domain("cannot draw a web with closed loops; reduce it first".into()));
    }
    let n = m.n();
    let target = canonical_form(m);
    let state = Sweep {
        diagram: SliceDiagram::identity(n)?,
        frontier: (0..n)
            .map(|i| {
                let e = m.boundary_edge(i);
                (e, m.edge(e).head)
            })
            .collect(),
        placed: vec![false; m.vertex_count()],
        remaining: m.internal_vertex_count(),
    };
    let mut budget = 10_000usize;
    search(m, style, state, &target, &mut budget).ok_or_else(|| {
        Error::InvalidWeb(
            "no drawing found: map is not planar or not a valid web".into(),
        )
    })
}

#[derive(Clone)]
struct Sweep {
    diagram: SliceDiagram,
    // frontier item: (edge, endpoint not yet drawn)
    frontier: Vec<(EdgeId, VertexId)>,
    placed: Vec<bool>,
    remaining: usize,
}

/// Places forced vertices greedily; when only vertices without drawn edges
/// remain, tries every gap and orientation for one of them. A finished
/// sweep is accepted only if it reproduces the map.
fn search(
    m: &PlanarMap,
    style: RenderStyle,
    mut st: Sweep,
    target: &CanonicalCode,
    budget: &mut usize,
) -> Option<SliceDiagram> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    let n = m.n();
    while st.remaining > 0 {
        let Some((v, p, k, idx)) = find_placeable(m, &st.frontier, &st.placed, style.from_bottom)
        else {
            break;
        };
        place(m, style, &mut st, v, p, k, idx).ok()?;
    }
    if st.remaining == 0 {
        let sinks_in_order = st.frontier.len() == n
            && st.frontier.iter().enumerate().all(|(i, &(_, pending))| pending == n + i);
        if !sinks_in_order {
            return None;
        }
        let drawn = st.diagram.to_map().ok()?;
        return (canonical_form(&drawn) == *target).then_some(st.diagram);
    }
    // vertices none of whose edges are drawn yet
    let fresh: Vec<VertexId> = (2 * n..m.vertex_count())
        .filter(|&v| !st.placed[v] && !st.frontier.iter().any(|it| it.1 == v))
        .collect();
    for &v in &fresh {
        for gap in 0..=st.frontier.len() {
            for idx in 0..3 {
                let mut next = st.clone();
                if place_fresh(m, &mut next, v, gap, idx).is_err() {
                    continue;
                }
                if let Some(d) = search(m, style, next, target, budget) {
                    return Some(d);
                }
            }
        }
    }
    None
}

fn item(m: &PlanarMap, e: EdgeId, v: VertexId) -> (EdgeId, VertexId) {
    (e, m.edge(e).other(v))
}

fn place(
    m: &PlanarMap,
    style: RenderStyle,
    st: &mut Sweep,
    v: VertexId,
    p: usize,
    k: usize,
    idx: usize,
) -> Result<()> {
    let rot = m.rotation(v);
    let after = |j: usize| rot[(idx + j) % 3];
    let d = &mut st.diagram;
    let frontier = &mut st.frontier;
    match k {
        1 if style.curl => {
            let (x, y) = (after(1), after(2));
            let dir = if m.edge(frontier[p].0).head == v { Dir::Right } else { Dir::Left };
            d.push(p + 1, Tile::Cup, Some((dir, dir.flip())))?;
            d.push(p, Tile::Merge, None)?;
            frontier.splice(p..p + 1, [item(m, x, v), item(m, y, v)]);
        }
        1 => {
            d.push(p, Tile::Split, None)?;
            frontier.splice(p..p + 1, [item(m, after(1), v), item(m, after(2), v)]);
        }
        2 => {
            d.push(p, Tile::Merge, None)?;
            frontier.splice(p..p + 2, [item(m, after(1), v)]);
        }
        3 => {
            if style.triple_low {
                d.push(p + 1, Tile::Merge, None)?;
            } else {
                d.push(p, Tile::Merge, None)?;
            }
            d.push(p, Tile::Cap, None)?;
            frontier.drain(p..p + 3);
        }
        _ => unreachable!(),
    }
    st.placed[v] = true;
    st.remaining -= 1;
    Ok(())
}

/// Draws a vertex with no drawn edges at frontier gap `gap` as a cup whose
/// upper wire splits; the three new wires carry `rot[idx..]` top to bottom.
fn place_fresh(m: &PlanarMap, st: &mut Sweep, v: VertexId, gap: usize, idx: usize) -> Result<()> {
    let rot = m.rotation(v);
    // the cup's top wire runs into v for a sink, out of v for a source
    let into = if m.role(v).is_source_type() { Dir::Left } else { Dir::Right };
    st.diagram.push(gap, Tile::Cup, Some((into, into.flip())))?;
    st.diagram.push(gap, Tile::Split, None)?;
    let items: Vec<_> = (0..3).map(|j| item(m, rot[(idx + j) % 3], v)).collect();
    st.frontier.splice(gap..gap, items);
    st.placed[v] = true;
    st.remaining -= 1;
    Ok(())
}

/// Finds a vertex whose drawn edges occupy a contiguous frontier block in the
/// order its rotation demands. Returns (vertex, block start, block length,
/// rotation index of the block's top edge).
fn find_placeable(
    m: &PlanarMap,
    frontier: &[(EdgeId, VertexId)],
    placed: &[bool],
    from_bottom: bool,
) -> Option<(VertexId, usize, usize, usize)> {
    let n = m.n();
    let mut starts: Vec<usize> = (0..frontier.len()).collect();
    if from_bottom {
        starts.reverse();
    }
    for p0 in starts {
        let v = frontier[p0].1;
        if v < 2 * n || placed[v] {
            continue;
        }
        // block must start at p0: skip if the item above belongs to v too
        if p0 > 0 && frontier[p0 - 1].1 == v {
            continue;
        }
        let total = frontier.iter().filter(|it| it.1 == v).count();
        let k = frontier[p0..].iter().take_while(|it| it.1 == v).count();
        if k != total {
            continue;
        }
        let rot = m.rotation(v);
        let idx = rot.iter().position(|&e| e == frontier[p0].0)?;
        // left wires read bottom to top must continue clockwise into the block top
        let ok = (0..k).all(|j| rot[(idx + 3 - j) % 3] == frontier[p0 + j].0);
        if ok {
            return Some((v, p0, k, idx));
        }
    }
    None
}
