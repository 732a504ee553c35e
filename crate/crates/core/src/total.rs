//! Block bookkeeping for totalizations of bar and cobar double complexes.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::chain::{Complex, Components};
use crate::error::Result;
use crate::linalg::{Field, Matrix};

/// Positions of blocks inside a graded vector space. Block `b` contributes
/// its internal degree `i` to total degree `i + offset[b]`.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    offsets: Vec<i32>,
    total: BTreeMap<i32, usize>,
    start: HashMap<(usize, i32), usize>,
}

impl Layout {
    pub(crate) fn new<'a>(blocks: impl IntoIterator<Item = (&'a Complex, i32)>) -> Layout {
        let mut offsets = Vec::new();
        let mut total: BTreeMap<i32, usize> = BTreeMap::new();
        let mut start = HashMap::new();
        for (b, (cx, off)) in blocks.into_iter().enumerate() {
            for (&i, &d) in cx.dims() {
                let slot = total.entry(i + off).or_insert(0);
                start.insert((b, i + off), *slot);
                *slot += d;
            }
            offsets.push(off);
        }
        Layout { offsets, total, start }
    }

    pub(crate) fn single(c: &Complex) -> Layout {
        Self::new([(c, 0)])
    }

    pub(crate) fn total_dims(&self) -> &BTreeMap<i32, usize> {
        &self.total
    }

    fn dim(&self, t: i32) -> usize {
        self.total.get(&t).copied().unwrap_or(0)
    }

    /// Row offset of block `b`'s internal degree `i`, if that piece is nonzero.
    pub(crate) fn start(&self, b: usize, i: i32) -> Option<usize> {
        self.start.get(&(b, i + self.offsets[b])).copied()
    }

    pub(crate) fn offset(&self, b: usize) -> i32 {
        self.offsets[b]
    }
}

/// One block-to-block piece of a map between laid-out spaces; `comps` is
/// keyed by the source block's internal degree.
pub(crate) struct Piece {
    pub src: usize,
    pub tgt: usize,
    pub comps: Components,
}

impl Piece {
    pub(crate) fn new(src: usize, tgt: usize, comps: Components) -> Self {
        Piece { src, tgt, comps }
    }
}

/// Assembles pieces into a map of total degree `shift`, keyed by source total degree.
pub(crate) fn assemble(field: &Field, src: &Layout, tgt: &Layout, shift: i32, pieces: &[Piece]) -> Components {
    let mut out: BTreeMap<i32, Matrix> = BTreeMap::new();
    for piece in pieces {
        for (&i, m) in &piece.comps {
            let t = i + src.offset(piece.src);
            let j = t + shift - tgt.offset(piece.tgt);
            let (Some(c0), Some(r0)) = (src.start(piece.src, i), tgt.start(piece.tgt, j)) else {
                continue;
            };
            let slot = out
                .entry(t)
                .or_insert_with(|| Matrix::zeros(field, tgt.dim(t + shift), src.dim(t)));
            slot.add_block(r0, c0, m);
        }
    }
    out.retain(|_, m| !m.is_zero());
    out
}

/// A totalized double complex together with its block layout.
#[derive(Clone, Debug)]
pub(crate) struct Total {
    pub complex: Arc<Complex>,
    pub layout: Layout,
}

/// Total complex of `blocks` (complex, offset, level) with horizontal `faces`.
/// Each block's own differential enters with sign `(-1)^level`; faces must be
/// chain maps raising the total degree by one.
pub(crate) fn totalize(field: &Field, blocks: &[(Arc<Complex>, i32, usize)], faces: Vec<Piece>) -> Result<Total> {
    let layout = Layout::new(blocks.iter().map(|(c, off, _)| (&**c, *off)));
    let mut pieces = faces;
    for (b, (c, _, level)) in blocks.iter().enumerate() {
        let sign = if level % 2 == 0 { 1 } else { -1 };
        let comps = c.diffs().iter().map(|(&n, m)| (n, m.scale_i64(sign))).collect();
        pieces.push(Piece::new(b, b, comps));
    }
    let diffs = assemble(field, &layout, &layout, 1, &pieces);
    let complex = Complex::new(field.clone(), layout.total_dims().clone(), diffs)?;
    Ok(Total { complex: Arc::new(complex), layout })
}
