//! Seeded generators for posets, complexes, functors, natural
//! transformations and kernels. Everything is reproducible from the seed.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{Complex, Components};
use crate::funcat::{NatTrans, PFunctor};
use crate::kernel::Kernel;
use crate::linalg::{Field, Matrix};
use crate::poset::Poset;

pub struct Generator {
    rng: ChaCha8Rng,
    field: Field,
}

impl Generator {
    pub fn new(seed: u64, field: Field) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed), field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn entry(&mut self) -> i64 {
        match self.field {
            Field::Prime(p) => self.rng.gen_range(0..p.min(1 << 20) as i64),
            Field::Rational => self.rng.gen_range(-2..=2),
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(&self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = self.entry();
                m.set_i64(i, j, v);
            }
        }
        m
    }

    /// Random DAG on `n` elements in declaration order, reduced to its Hasse diagram.
    pub fn poset(&mut self, n: usize, density: f64) -> Poset {
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let mut rel = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.rng.gen_bool(density) {
                    rel.push((names[i].clone(), names[j].clone()));
                }
            }
        }
        Poset::new(&format!("rand{n}"), names, &rel).expect("a DAG is a poset")
    }

    /// Random complex with total dimension at most `max_total`, in degrees −1..=1.
    pub fn complex(&mut self, max_total: usize) -> Complex {
        let total = self.rng.gen_range(0..=max_total);
        let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
        for _ in 0..total {
            *dims.entry(self.rng.gen_range(-1..=1)).or_insert(0) += 1;
        }
        let dim = |n: i32, d: &BTreeMap<i32, usize>| d.get(&n).copied().unwrap_or(0);
        let mut diffs = BTreeMap::new();
        let mut prev: Option<Matrix> = None;
        for n in -1..=0 {
            let (rows, cols) = (dim(n + 1, &dims), dim(n, &dims));
            let d = match &prev {
                None => self.matrix(rows, cols),
                Some(p) => {
                    // Rows must annihilate the image of the previous differential.
                    let ann = p.transpose().nullspace().transpose();
                    self.matrix(rows, ann.rows()).mul(&ann)
                }
            };
            prev = Some(d.clone());
            diffs.insert(n, d);
        }
        Complex::new(self.field.clone(), dims, diffs).expect("random complex")
    }

    /// `cone(id_V)` for a random `V`: acyclic and usually nonzero.
    pub fn acyclic(&mut self, max_total: usize) -> Complex {
        let v = self.complex(max_total.max(2) / 2);
        crate::chain::ChainMap::identity(Arc::new(v)).cone()
    }

    /// Random representation concentrated in degree 0. Structure maps are random
    /// cocones out of the colimit over the strict down-set.
    pub fn representation(&mut self, base: &Arc<Poset>, max_dim: usize) -> PFunctor {
        let n = base.len();
        let mut dims = vec![0usize; n];
        let mut edges: BTreeMap<(usize, usize), Components> = BTreeMap::new();
        // Structure maps r → q for every r < q, filled as q is processed.
        let mut maps: BTreeMap<(usize, usize), Matrix> = BTreeMap::new();
        for &q in base.linear_extension() {
            dims[q] = self.rng.gen_range(0..=max_dim);
            let below: Vec<usize> = (0..n).filter(|&r| base.lt(r, q)).collect();
            let mut offsets = BTreeMap::new();
            let mut total = 0;
            for &r in &below {
                offsets.insert(r, total);
                total += dims[r];
            }
            let mut rel_cols = Vec::new();
            for &(p, r) in base.covers() {
                if !(base.lt(p, q) && base.lt(r, q)) {
                    continue;
                }
                let f = &maps[&(p, r)];
                for x in 0..dims[p] {
                    let mut col = Matrix::zeros(&self.field, total, 1);
                    for y in 0..dims[r] {
                        col.set(offsets[&r] + y, 0, f.get(y, x));
                    }
                    col.set_i64(offsets[&p] + x, 0, -1);
                    rel_cols.push(col);
                }
            }
            let ann = if rel_cols.is_empty() {
                Matrix::identity(&self.field, total)
            } else {
                let rel = rel_cols.iter().skip(1).fold(rel_cols[0].clone(), |acc, c| acc.hstack(c));
                rel.transpose().nullspace().transpose()
            };
            let cocone = self.matrix(dims[q], ann.rows()).mul(&ann);
            for &r in &below {
                let block = cocone.block(0, offsets[&r], dims[q], dims[r]);
                maps.insert((r, q), block.clone());
                if base.cover_index(r, q).is_some() {
                    edges.insert((r, q), [(0, block)].into_iter().collect());
                }
            }
        }
        let values = dims.iter().map(|&d| Arc::new(Complex::concentrated(&self.field, 0, d))).collect();
        PFunctor::new(base.clone(), &self.field, values, edges).expect("random cocones are functorial")
    }

    /// A random natural transformation `F → G`, drawn from the solution space
    /// of the chain-map and naturality equations.
    pub fn nat_trans(&mut self, f: Arc<PFunctor>, g: Arc<PFunctor>) -> NatTrans {
        let sol = nat_trans_space(&f, &g);
        let coeffs = self.matrix(sol.cols(), 1);
        let v = sol.mul(&coeffs);
        let comps = unpack(&f, &g, &v);
        NatTrans::new(f, g, comps).expect("solution of the naturality equations")
    }

    /// A random functor whose stalks have total dimension at most `max_stalk`:
    /// a sum of shifted representations, cones of random transformations
    /// between representations, and Yoneda objects with random values.
    pub fn functor(&mut self, base: &Arc<Poset>, max_stalk: usize) -> PFunctor {
        let mut f = PFunctor::zero(base.clone(), &self.field);
        let pieces = self.rng.gen_range(1..=3);
        for _ in 0..pieces {
            let piece = match self.rng.gen_range(0..3) {
                0 => {
                    let shift = self.rng.gen_range(-1..=1);
                    self.representation(base, 2).shift(shift)
                }
                1 => {
                    let a = Arc::new(self.representation(base, 1));
                    let b = Arc::new(self.representation(base, 1));
                    self.nat_trans(a, b).cone()
                }
                _ => {
                    let p = self.below(base.len());
                    let v = self.complex(3);
                    PFunctor::yoneda(base.clone(), p, &v)
                }
            };
            let sum = f.direct_sum(&piece).expect("same base");
            if sum.values().iter().all(|v| v.total_dim() <= max_stalk) {
                f = sum;
            }
        }
        f
    }

    /// `F ⊕ y(p) ⊗ A` for a random acyclic `A`; quasi-isomorphic to `F`.
    pub fn with_acyclic(&mut self, f: &PFunctor) -> PFunctor {
        let p = self.below(f.base().len());
        let a = self.acyclic(2);
        f.direct_sum(&PFunctor::yoneda(f.base().clone(), p, &a)).expect("same base")
    }

    pub fn kernel(&mut self, left: &Arc<Poset>, right: &Arc<Poset>, max_stalk: usize) -> Kernel {
        let base = Arc::new(Kernel::carrier_base(left, right));
        let carrier = self.functor(&base, max_stalk);
        Kernel::from_functor("random", left.clone(), right.clone(), carrier).expect("carrier on the product")
    }
}

/// Unknown layout for natural transformations: `(p, degree, offset)` blocks.
fn unknowns(f: &PFunctor, g: &PFunctor) -> (Vec<(usize, i32, usize)>, usize) {
    let mut out = Vec::new();
    let mut total = 0;
    for p in 0..f.base().len() {
        for n in f.value(p).degrees() {
            let size = g.value(p).dim(n) * f.value(p).dim(n);
            if size > 0 {
                out.push((p, n, total));
                total += size;
            }
        }
    }
    (out, total)
}

fn unpack(f: &PFunctor, g: &PFunctor, v: &Matrix) -> Vec<Components> {
    let (blocks, _) = unknowns(f, g);
    let mut comps = vec![Components::new(); f.base().len()];
    for (p, n, off) in blocks {
        let (r, c) = (g.value(p).dim(n), f.value(p).dim(n));
        let mut m = Matrix::zeros(f.field(), r, c);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, v.get(off + i * c + j, 0));
            }
        }
        comps[p].insert(n, m);
    }
    comps
}

/// Columns spanning all natural transformations `F → G` as vectors of unknowns.
pub fn nat_trans_space(f: &PFunctor, g: &PFunctor) -> Matrix {
    let field = f.field().clone();
    let (_, total) = unknowns(f, g);
    let mut columns: Vec<Vec<crate::linalg::Scalar>> = Vec::with_capacity(total);
    for u in 0..total {
        let mut e = Matrix::zeros(&field, total, 1);
        e.set_i64(u, 0, 1);
        let comps = unpack(f, g, &e);
        columns.push(constraint_values(f, g, &comps));
    }
    let rows = columns.first().map(Vec::len).unwrap_or(0);
    let mut c = Matrix::zeros(&field, rows, total);
    for (j, col) in columns.iter().enumerate() {
        for (i, s) in col.iter().enumerate() {
            if !s.is_zero() {
                c.set(i, j, s.clone());
            }
        }
    }
    c.nullspace()
}

fn constraint_values(f: &PFunctor, g: &PFunctor, comps: &[Components]) -> Vec<crate::linalg::Scalar> {
    let base = f.base();
    let field = f.field();
    let get = |p: usize, n: i32| {
        comps[p].get(&n).cloned().unwrap_or_else(|| Matrix::zeros(field, g.value(p).dim(n), f.value(p).dim(n)))
    };
    let mut out = Vec::new();
    let mut push = |m: &Matrix| {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.push(m.get(i, j));
            }
        }
    };
    for p in 0..base.len() {
        for n in f.value(p).degrees() {
            let lhs = g.value(p).d(n).mul(&get(p, n));
            let rhs = get(p, n + 1).mul(&f.value(p).d(n));
            push(&lhs.sub(&rhs));
        }
    }
    for &(a, b) in base.covers() {
        for n in f.value(a).degrees() {
            let ge = g.edge(a, b).get(&n).cloned().unwrap_or_else(|| Matrix::zeros(field, g.value(b).dim(n), g.value(a).dim(n)));
            let fe = f.edge(a, b).get(&n).cloned().unwrap_or_else(|| Matrix::zeros(field, f.value(b).dim(n), f.value(a).dim(n)));
            push(&ge.mul(&get(a, n)).sub(&get(b, n).mul(&fe)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_reproducible_and_valid() {
        for field in [Field::F2, Field::Rational, Field::prime(5).unwrap()] {
            let mut a = Generator::new(7, field.clone());
            let mut b = Generator::new(7, field.clone());
            let pa = Arc::new(a.poset(5, 0.4));
            let pb = Arc::new(b.poset(5, 0.4));
            assert_eq!(pa, pb);
            let fa = a.functor(&pa, 6);
            let fb = b.functor(&pb, 6);
            for p in 0..pa.len() {
                assert_eq!(fa.value(p), fb.value(p));
                assert!(fa.value(p).total_dim() <= 6);
            }
        }
    }

    #[test]
    fn random_transformations_are_natural() {
        let mut g = Generator::new(3, Field::prime(3).unwrap());
        for _ in 0..10 {
            let p = Arc::new(g.poset(4, 0.5));
            let f = Arc::new(g.functor(&p, 4));
            let h = Arc::new(g.functor(&p, 4));
            g.nat_trans(f, h);
        }
    }
}
