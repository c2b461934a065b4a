//! A2-webs with `n` sources on the left and `n` sinks on the right.
//!
//! A [`Web`] bundles a drawing ([`SliceDiagram`]), its combinatorial map in
//! canonical numbering, the drawing's singularities, and the canonical code.
//! Equality and hashing go through the code; the drawing is kept because the
//! labeling statistic is read off an embedding.

mod canon;
mod map;
mod render;
mod slice;

pub use canon::{canonical_form, canonical_form_with_relabel, normalize, CanonicalCode, Relabel};
pub use map::{Edge, EdgeId, End, Face, PlanarMap, Port, Role, Splice, VertexId};
pub use render::{render, render_with, RenderStyle};
pub use slice::{Column, Dir, EdgeRef, Singularity, SliceDiagram, Tile};

use std::hash::{Hash, Hasher};

use crate::error::{domain, Result};

#[derive(Clone, Debug)]
pub struct Web {
    diagram: SliceDiagram,
    map: PlanarMap,
    singularities: Vec<Singularity>,
    code: CanonicalCode,
}

impl PartialEq for Web {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for Web {}

impl Hash for Web {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state)
    }
}

impl Web {
    pub fn from_diagram(diagram: SliceDiagram) -> Result<Self> {
        let (raw, sings) = diagram.to_map_annotated()?;
        let (code, relabel) = canonical_form_with_relabel(&raw);
        let map = relabel.apply(&raw);
        let singularities = sings
            .into_iter()
            .map(|s| s.remap_edges(&relabel.edge))
            .collect();
        Ok(Self {
            diagram,
            map,
            singularities,
            code,
        })
    }

    /// Draws `m` with the default style.
    pub fn from_map(m: &PlanarMap) -> Result<Self> {
        Self::from_diagram(render(m)?)
    }

    pub fn from_map_styled(m: &PlanarMap, style: RenderStyle) -> Result<Self> {
        Self::from_diagram(render_with(m, style)?)
    }

    /// `n` parallel strands.
    pub fn identity(n: usize) -> Result<Self> {
        Self::from_diagram(SliceDiagram::identity(n)?)
    }

    /// The web of the first-kind generator on strands `i, i+1` (1-based):
    /// both strands run into a sink vertex, a single edge runs back from a
    /// source vertex, which re-emits both strands.
    pub fn generator_e1(n: usize, i: usize) -> Result<Self> {
        if n < 2 || i == 0 || i >= n {
            return domain(format!("generator E_{i} needs 1 <= i <= n-1 (n = {n})"));
        }
        let mut d = SliceDiagram::identity(n)?;
        d.push(i - 1, Tile::Merge, None)?;
        d.push(i - 1, Tile::Split, None)?;
        Self::from_diagram(d)
    }

    /// `E_{i₁} E_{i₂} ⋯` stacked left to right.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n)?;
        for &i in word {
            w = w.concatenate(&Self::generator_e1(n, i)?)?;
        }
        Ok(w)
    }

    pub fn concatenate(&self, other: &Web) -> Result<Web> {
        Self::from_diagram(self.diagram.concatenate(&other.diagram)?)
    }

    /// Same web, freshly drawn in the given style.
    pub fn redrawn(&self, style: RenderStyle) -> Result<Web> {
        Self::from_map_styled(&self.map, style)
    }

    pub fn n(&self) -> usize {
        self.map.n()
    }

    pub fn diagram(&self) -> &SliceDiagram {
        &self.diagram
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn code(&self) -> &CanonicalCode {
        &self.code
    }

    pub fn singularities(&self) -> &[Singularity] {
        &self.singularities
    }

    pub fn internal_vertex_count(&self) -> usize {
        self.map.internal_vertex_count()
    }
}
