//! Quiver gauge theories: G = Π GL(v_i) acting on
//! N = ⊕_edges Hom(V_out, V_in) ⊕ ⊕_i Hom(W_i, V_i).
//!
//! The translation to a [`NonabelianTheory`] is purely combinatorial: each
//! edge contributes the weights e^{(in)}_a − e^{(out)}_b over basis pairs,
//! each framed vertex contributes w_i copies of the fundamental weights
//! of its GL factor. Zero-dimensional vertices are dropped from the gauge
//! group and contribute no matter.

use crate::monopole::{GroupFactor, NonabelianTheory};
use crate::{Error, Result};

/// A framed quiver: directed edges on `vertices` nodes, gauge dimensions
/// `v`, framing dimensions `w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuiverData {
    pub vertices: usize,
    /// Directed edges (out, in); self-loops allowed.
    pub edges: Vec<(usize, usize)>,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
}

impl QuiverData {
    pub fn validate(&self) -> Result<()> {
        if self.v.len() != self.vertices || self.w.len() != self.vertices {
            return Err(Error::Shape(format!(
                "dimension vectors have lengths {} and {}, expected {} vertices",
                self.v.len(),
                self.w.len(),
                self.vertices
            )));
        }
        for &(out, inn) in &self.edges {
            if out >= self.vertices || inn >= self.vertices {
                return Err(Error::Shape(format!(
                    "edge ({out}, {inn}) leaves the vertex set 0..{}",
                    self.vertices
                )));
            }
        }
        Ok(())
    }
}

/// Build the gauge theory of a framed quiver.
pub fn quiver_to_theory(q: &QuiverData) -> Result<NonabelianTheory> {
    q.validate()?;
    // coweight offsets; vertices with v_i = 0 occupy no block
    let mut offset = Vec::with_capacity(q.vertices);
    let mut rank = 0usize;
    let mut factors = Vec::new();
    for &vi in &q.v {
        offset.push(rank);
        if vi > 0 {
            factors.push(GroupFactor::GL(vi));
            rank += vi;
        }
    }

    let mut weights = Vec::new();
    for &(out, inn) in &q.edges {
        for a in 0..q.v[inn] {
            for b in 0..q.v[out] {
                let mut wt = vec![0i64; rank];
                wt[offset[inn] + a] += 1;
                wt[offset[out] + b] -= 1;
                weights.push(wt);
            }
        }
    }
    for i in 0..q.vertices {
        for _ in 0..q.w[i] {
            for a in 0..q.v[i] {
                let mut wt = vec![0i64; rank];
                wt[offset[i] + a] = 1;
                weights.push(wt);
            }
        }
    }
    NonabelianTheory::new(factors, weights)
}
