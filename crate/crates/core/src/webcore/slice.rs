//! Concrete drawings of webs as a left-to-right sequence of tiles.
//!
//! Between columns the drawing is a stack of horizontal wires, position 0 at
//! the top. Each wire carries the x-direction of its web edge (the edge runs
//! from its positive to its negative side). A column places exactly one tile:
//!
//! * `cup`   — two new wire ends appear at `pos`, `pos + 1` (left tangency);
//! * `cap`   — wires `pos`, `pos + 1` join and end (right tangency);
//! * `merge` — wires `pos`, `pos + 1` meet at a trivalent vertex that emits one
//!   wire to the right;
//! * `split` — wire `pos` ends at a trivalent vertex emitting two wires.

use serde::{Deserialize, Serialize};

use super::map::{Edge, EdgeId, PlanarMap, Role, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tile {
    Cup,
    Cap,
    Merge,
    Split,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    #[serde(rename = "r")]
    Right,
    #[serde(rename = "l")]
    Left,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Right => Dir::Left,
            Dir::Left => Dir::Right,
        }
    }
}

/// One column. `dirs` lists the wire directions immediately to its right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Column {
    pub pos: usize,
    pub tile: Tile,
    pub dirs: Vec<Dir>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SliceDiagram {
    pub n: usize,
    pub columns: Vec<Column>,
}

/// Edge reference used by drawing annotations: a real edge or a closed loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeRef {
    Edge(EdgeId),
    Loop(usize),
}

/// What a column contributes to the drawing's singularities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Singularity {
    /// A trivalent vertex; the two-wire side lists top then bottom.
    Vertex {
        pair: [EdgeId; 2],
        pair_on_left: bool,
        sink: bool,
    },
    /// A point where an edge is tangent to a vertical line. `cup` tangencies
    /// touch the line from the right, caps from the left. `down` is whether
    /// the edge, followed along its orientation, moves downward there.
    Tangency { edge: EdgeRef, cup: bool, down: bool },
}

impl Singularity {
    /// Renames real edges through `edge[old] = new`.
    pub fn remap_edges(self, edge: &[EdgeId]) -> Singularity {
        match self {
            Singularity::Vertex { pair, pair_on_left, sink } => Singularity::Vertex {
                pair: [edge[pair[0]], edge[pair[1]]],
                pair_on_left,
                sink,
            },
            Singularity::Tangency { edge: EdgeRef::Edge(e), cup, down } => Singularity::Tangency {
                edge: EdgeRef::Edge(edge[e]),
                cup,
                down,
            },
            other => other,
        }
    }
}

impl SliceDiagram {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a web needs at least one strand".into()));
        }
        Ok(Self { n, columns: Vec::new() })
    }

    /// Appends a column computing `dirs` from the current wire state.
    /// `cup_dirs` gives (top, bottom) directions for cups.
    pub fn push(&mut self, pos: usize, tile: Tile, cup_dirs: Option<(Dir, Dir)>) -> Result<()> {
        let mut wires = self.final_dirs()?;
        apply_tile(&mut wires, pos, tile, cup_dirs)?;
        self.columns.push(Column { pos, tile, dirs: wires });
        Ok(())
    }

    fn final_dirs(&self) -> Result<Vec<Dir>> {
        Ok(self
            .columns
            .last()
            .map(|c| c.dirs.clone())
            .unwrap_or_else(|| vec![Dir::Right; self.n]))
    }

    pub fn vertex_count(&self) -> usize {
        self.columns
            .iter()
            .filter(|c| matches!(c.tile, Tile::Merge | Tile::Split))
            .count()
    }

    /// Checks wire-count and orientation consistency of every column and of
    /// both boundaries.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidWeb("zero strands".into()));
        }
        let mut wires = vec![Dir::Right; self.n];
        for (k, col) in self.columns.iter().enumerate() {
            let cup = if col.tile == Tile::Cup {
                let (t, b) = (col.dirs.get(col.pos), col.dirs.get(col.pos + 1));
                match (t, b) {
                    (Some(&t), Some(&b)) => Some((t, b)),
                    _ => return Err(Error::InvalidWeb(format!("column {k}: cup outside wires"))),
                }
            } else {
                None
            };
            apply_tile(&mut wires, col.pos, col.tile, cup)
                .map_err(|e| Error::InvalidWeb(format!("column {k}: {e}")))?;
            if wires != col.dirs {
                return Err(Error::InvalidWeb(format!("column {k}: stored directions disagree")));
            }
        }
        if wires != vec![Dir::Right; self.n] {
            return Err(Error::InvalidWeb("right boundary must be n rightward wires".into()));
        }
        Ok(())
    }

    pub fn concatenate(&self, other: &SliceDiagram) -> Result<SliceDiagram> {
        if self.n != other.n {
            return Err(Error::Domain(format!(
                "cannot concatenate webs on {} and {} strands",
                self.n, other.n
            )));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(SliceDiagram { n: self.n, columns })
    }

    /// Builds the combinatorial map together with the drawing's singularity
    /// list (edges indexed as in the returned map).
    pub fn to_map_annotated(&self) -> Result<(PlanarMap, Vec<Singularity>)> {
        self.validate()?;
        Tracer::new(self.n).run(self)
    }

    pub fn to_map(&self) -> Result<PlanarMap> {
        Ok(self.to_map_annotated()?.0)
    }
}

fn apply_tile(wires: &mut Vec<Dir>, pos: usize, tile: Tile, cup: Option<(Dir, Dir)>) -> Result<()> {
    let err = |m: &str| Err(Error::InvalidWeb(m.to_string()));
    match tile {
        Tile::Cup => {
            let Some((t, b)) = cup else {
                return err("cup needs directions");
            };
            if t == b {
                return err("cup wires must have opposite directions");
            }
            if pos > wires.len() {
                return err("cup position out of range");
            }
            wires.insert(pos, b);
            wires.insert(pos, t);
        }
        Tile::Cap => {
            if pos + 1 >= wires.len() {
                return err("cap position out of range");
            }
            if wires[pos] == wires[pos + 1] {
                return err("cap wires must have opposite directions");
            }
            wires.drain(pos..pos + 2);
        }
        Tile::Merge => {
            if pos + 1 >= wires.len() {
                return err("merge position out of range");
            }
            if wires[pos] != wires[pos + 1] {
                return err("merge inputs must agree in direction");
            }
            let d = wires[pos].flip();
            wires.drain(pos..pos + 2);
            wires.insert(pos, d);
        }
        Tile::Split => {
            if pos >= wires.len() {
                return err("split position out of range");
            }
            let d = wires[pos].flip();
            wires[pos] = d;
            wires.insert(pos, d);
        }
    }
    Ok(())
}

/// Node at the end of a wire segment.
#[derive(Clone, Copy, Debug)]
enum Node {
    Vertex(VertexId),
    Bend(usize),
}

struct Segment {
    left: Node,
    right: Option<Node>,
    dir: Dir,
}

struct Tracer {
    n: usize,
    roles: Vec<Role>,
    // per vertex: (left segments top->bottom, right segments top->bottom)
    sides: Vec<(Vec<usize>, Vec<usize>)>,
    segments: Vec<Segment>,
    // per bend: its two segments
    bends: Vec<[usize; 2]>,
}

impl Tracer {
    fn new(n: usize) -> Self {
        let mut roles = vec![Role::BoundarySource; n];
        roles.extend(std::iter::repeat(Role::BoundarySink).take(n));
        Self {
            n,
            roles,
            sides: vec![(Vec::new(), Vec::new()); 2 * n],
            segments: Vec::new(),
            bends: Vec::new(),
        }
    }

    fn new_segment(&mut self, left: Node, dir: Dir) -> usize {
        self.segments.push(Segment { left, right: None, dir });
        self.segments.len() - 1
    }

    fn run(mut self, d: &SliceDiagram) -> Result<(PlanarMap, Vec<Singularity>)> {
        let n = self.n;
        let mut wires: Vec<usize> = Vec::with_capacity(n);
        for i in 0..n {
            let s = self.new_segment(Node::Vertex(i), Dir::Right);
            self.sides[i].1.push(s);
            wires.push(s);
        }
        // pending singularities expressed over segments
        enum Pending {
            Vertex { pair: [usize; 2], pair_on_left: bool, sink: bool },
            Tangency { seg: usize, cup: bool, down: bool },
        }
        let mut pending = Vec::new();
        for col in &d.columns {
            let p = col.pos;
            match col.tile {
                Tile::Cup => {
                    let b = self.bends.len();
                    let top = self.new_segment(Node::Bend(b), col.dirs[p]);
                    let bot = self.new_segment(Node::Bend(b), col.dirs[p + 1]);
                    self.bends.push([top, bot]);
                    wires.insert(p, bot);
                    wires.insert(p, top);
                    pending.push(Pending::Tangency {
                        seg: top,
                        cup: true,
                        down: col.dirs[p] == Dir::Left,
                    });
                }
                Tile::Cap => {
                    let b = self.bends.len();
                    let top = wires[p];
                    let bot = wires[p + 1];
                    self.segments[top].right = Some(Node::Bend(b));
                    self.segments[bot].right = Some(Node::Bend(b));
                    self.bends.push([top, bot]);
                    pending.push(Pending::Tangency {
                        seg: top,
                        cup: false,
                        down: self.segments[top].dir == Dir::Right,
                    });
                    wires.drain(p..p + 2);
                }
                Tile::Merge => {
                    let v = self.roles.len();
                    let sink = self.segments[wires[p]].dir == Dir::Right;
                    self.roles.push(if sink { Role::InternalSink } else { Role::InternalSource });
                    let top = wires[p];
                    let bot = wires[p + 1];
                    self.segments[top].right = Some(Node::Vertex(v));
                    self.segments[bot].right = Some(Node::Vertex(v));
                    let out = self.new_segment(Node::Vertex(v), col.dirs[p]);
                    self.sides.push((vec![top, bot], vec![out]));
                    wires.drain(p..p + 2);
                    wires.insert(p, out);
                    pending.push(Pending::Vertex { pair: [top, bot], pair_on_left: true, sink });
                }
                Tile::Split => {
                    let v = self.roles.len();
                    let input = wires[p];
                    let sink = self.segments[input].dir == Dir::Right;
                    self.roles.push(if sink { Role::InternalSink } else { Role::InternalSource });
                    self.segments[input].right = Some(Node::Vertex(v));
                    let top = self.new_segment(Node::Vertex(v), col.dirs[p]);
                    let bot = self.new_segment(Node::Vertex(v), col.dirs[p + 1]);
                    self.sides.push((vec![input], vec![top, bot]));
                    wires[p] = bot;
                    wires.insert(p, top);
                    pending.push(Pending::Vertex { pair: [top, bot], pair_on_left: false, sink });
                }
            }
        }
        for (i, &s) in wires.iter().enumerate() {
            self.segments[s].right = Some(Node::Vertex(n + i));
            self.sides[n + i].0.push(s);
        }

        // Group segments into edges: chains through bends.
        let nseg = self.segments.len();
        let mut seg_edge: Vec<Option<EdgeRef>> = vec![None; nseg];
        let mut edges: Vec<Edge> = Vec::new();
        let mut loops = 0usize;
        let other_at_bend = |bends: &Vec<[usize; 2]>, b: usize, s: usize| {
            let [x, y] = bends[b];
            if x == s {
                y
            } else {
                x
            }
        };
        // walk from a segment end attached to a vertex
        let ends_of = |seg: &Segment| [seg.left, seg.right.expect("closed segment")];
        for s0 in 0..nseg {
            if seg_edge[s0].is_some() {
                continue;
            }
            let seg = &self.segments[s0];
            let start_node = ends_of(seg).into_iter().find(|nd| matches!(nd, Node::Vertex(_)));
            let Some(Node::Vertex(v0)) = start_node else {
                continue;
            };
            // traverse away from v0
            let id = edges.len();
            let mut cur = s0;
            let mut from = Node::Vertex(v0);
            let v_end;
            loop {
                seg_edge[cur] = Some(EdgeRef::Edge(id));
                let [a, b] = ends_of(&self.segments[cur]);
                let far = if same_node(a, from) { b } else { a };
                match far {
                    Node::Vertex(v) => {
                        v_end = v;
                        break;
                    }
                    Node::Bend(bd) => {
                        cur = other_at_bend(&self.bends, bd, cur);
                        from = Node::Bend(bd);
                    }
                }
            }
            let (tail, head) = if self.roles[v0].is_source_type() { (v0, v_end) } else { (v_end, v0) };
            edges.push(Edge { tail, head });
        }
        for s0 in 0..nseg {
            if seg_edge[s0].is_some() {
                continue;
            }
            // closed loop of bends only
            let id = loops;
            loops += 1;
            let mut cur = s0;
            let mut from = self.segments[s0].left;
            while seg_edge[cur].is_none() {
                seg_edge[cur] = Some(EdgeRef::Loop(id));
                let [a, b] = ends_of(&self.segments[cur]);
                let far = if same_node(a, from) { b } else { a };
                let Node::Bend(bd) = far else { unreachable!("loop reached a vertex") };
                cur = other_at_bend(&self.bends, bd, cur);
                from = Node::Bend(bd);
            }
        }
        let edge_of = |s: usize| match seg_edge[s] {
            Some(EdgeRef::Edge(e)) => e,
            _ => unreachable!("vertex segment belongs to an edge"),
        };
        // Clockwise rotation: left side bottom to top, then right side top to bottom.
        let rotation: Vec<Vec<EdgeId>> = self
            .sides
            .iter()
            .map(|(l, r)| l.iter().rev().chain(r.iter()).map(|&s| edge_of(s)).collect())
            .collect();
        let map = PlanarMap::new(n, self.roles.clone(), rotation, edges, loops)?;
        let sings = pending
            .into_iter()
            .map(|p| match p {
                Pending::Vertex { pair, pair_on_left, sink } => Singularity::Vertex {
                    pair: [edge_of(pair[0]), edge_of(pair[1])],
                    pair_on_left,
                    sink,
                },
                Pending::Tangency { seg, cup, down } => Singularity::Tangency {
                    edge: seg_edge[seg].unwrap(),
                    cup,
                    down,
                },
            })
            .collect();
        Ok((map, sings))
    }
}

fn same_node(a: Node, b: Node) -> bool {
    match (a, b) {
        (Node::Vertex(x), Node::Vertex(y)) => x == y,
        (Node::Bend(x), Node::Bend(y)) => x == y,
        _ => false,
    }
}
