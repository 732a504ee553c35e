//! Convolution kernels on `P^op × Q` and the convolution functor, computed
//! as a derived coend over `P`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chain::{identity_components, same_field, Complex, Components, PairLayout};
use crate::error::{Error, Result};
use crate::funcat::{bar_map_pieces, bar_total, ChainTotal, NatTrans, PFunctor};
use crate::linalg::{Field, Matrix};
use crate::poset::{MonotoneMap, Poset};
use crate::total::{assemble, Layout, Piece};
use crate::witness::TameFunctor;

/// A kernel `K` on `P^op × Q`; element `(p, q)` has index `p·|Q| + q`.
#[derive(Clone, Debug)]
pub struct Kernel {
    name: String,
    left: Arc<Poset>,
    right: Arc<Poset>,
    carrier: TameFunctor,
}

impl Kernel {
    pub fn new(name: &str, left: Arc<Poset>, right: Arc<Poset>, carrier: TameFunctor) -> Result<Self> {
        let expected = left.opposite().product(&right);
        if **carrier.base() != expected {
            return Err(Error::BaseMismatch(format!(
                "kernel carrier lives on {}, expected {}^op x {}",
                carrier.base().name(),
                left.name(),
                right.name()
            )));
        }
        Ok(Kernel { name: name.to_string(), left, right, carrier })
    }

    pub fn from_functor(name: &str, left: Arc<Poset>, right: Arc<Poset>, carrier: PFunctor) -> Result<Self> {
        Self::new(name, left, right, TameFunctor::finite(carrier))
    }

    /// Carrier base `P^op × Q` for a pair of posets.
    pub fn carrier_base(left: &Poset, right: &Poset) -> Poset {
        left.opposite().product(right)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn left(&self) -> &Arc<Poset> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Poset> {
        &self.right
    }

    pub fn field(&self) -> &Field {
        self.carrier.field()
    }

    pub fn carrier(&self) -> &TameFunctor {
        &self.carrier
    }

    pub fn index(&self, p: usize, q: usize) -> usize {
        p * self.right.len() + q
    }

    /// The restriction `q ↦ K(p, q)`.
    pub fn column(&self, p: usize) -> Result<TameFunctor> {
        let j = self.column_embedding(p)?;
        self.carrier.map_parts(|f| f.pullback(&j))
    }

    fn column_embedding(&self, p: usize) -> Result<MonotoneMap> {
        let assignment = (0..self.right.len()).map(|q| self.index(p, q)).collect();
        MonotoneMap::new("column", self.right.clone(), self.carrier.base().clone(), assignment)
    }

    fn slice_embedding(&self, q: usize) -> Result<MonotoneMap> {
        let op = Arc::new(self.left.opposite());
        let assignment = (0..self.left.len()).map(|p| self.index(p, q)).collect();
        MonotoneMap::new("slice", op, self.carrier.base().clone(), assignment)
    }
}

/// `K(p, q) = k` exactly when `p ≤ q`.
pub fn identity_kernel(p: Arc<Poset>, field: &Field) -> Kernel {
    let base = Arc::new(Kernel::carrier_base(&p, &p));
    let n = p.len();
    let k = Arc::new(Complex::unit(field));
    let zero = Arc::new(Complex::zero(field));
    let values = (0..n * n).map(|x| if p.leq(x / n, x % n) { k.clone() } else { zero.clone() }).collect();
    let edges = base
        .covers()
        .iter()
        .filter(|&&(a, _)| p.leq(a / n, a % n))
        .map(|&c| (c, identity_components(&k)))
        .collect();
    let carrier = PFunctor::new(base, field, values, edges).expect("identity kernel");
    Kernel::from_functor(&format!("id_{}", p.name()), p.clone(), p, carrier).expect("identity kernel")
}

/// External product `F₀ ⊠ G` of a functor on `P^op` and one on `Q`.
pub fn external_product(f0: &PFunctor, g: &PFunctor, left: Arc<Poset>) -> Result<Kernel> {
    same_field(f0.field(), g.field())?;
    if **f0.base() != left.opposite() {
        return Err(Error::BaseMismatch("first factor must live on the opposite of the left poset".into()));
    }
    let right = g.base().clone();
    let base = Arc::new(Kernel::carrier_base(&left, &right));
    let m = right.len();
    let values: Vec<Arc<Complex>> = (0..base.len())
        .map(|x| f0.value(x / m).tensor(g.value(x % m)).map(Arc::new))
        .collect::<Result<_>>()?;
    let mut edges = BTreeMap::new();
    for &(a, b) in base.covers() {
        let (pa, qa, pb, qb) = (a / m, a % m, b / m, b % m);
        let comps = crate::chain::tensor_components(
            f0.value(pa),
            g.value(qa),
            f0.value(pb),
            g.value(qb),
            &f0.map(pa, pb),
            &g.map(qa, qb),
        );
        edges.insert((a, b), comps);
    }
    let carrier = PFunctor::new(base, f0.field(), values, edges)?;
    Kernel::from_functor(&format!("{}x{}", f0.base().name(), right.name()), left, right, carrier)
}

/// `q ↦ K(−, q)` as functors on `P^op`, and the maps between them along covers of `Q`.
fn slices(kernel: &Kernel, carrier: &PFunctor) -> Result<(Vec<Arc<PFunctor>>, BTreeMap<(usize, usize), NatTrans>)> {
    let right = &kernel.right;
    let mut out = Vec::with_capacity(right.len());
    for q in 0..right.len() {
        out.push(Arc::new(carrier.pullback(&kernel.slice_embedding(q)?)?));
    }
    let mut maps = BTreeMap::new();
    for &(a, b) in right.covers() {
        let comps = (0..kernel.left.len()).map(|p| carrier.map(kernel.index(p, a), kernel.index(p, b))).collect();
        maps.insert((a, b), NatTrans::new(out[a].clone(), out[b].clone(), comps)?);
    }
    Ok((out, maps))
}

/// Convolution of a finite functor against a finite carrier, with its blocks.
pub(crate) fn convolve_parts(f: &PFunctor, kernel: &Kernel, carrier: &PFunctor) -> Result<(PFunctor, Vec<ChainTotal>)> {
    if **f.base() != *kernel.left {
        return Err(Error::BaseMismatch(format!(
            "functor lives on {}, kernel expects {}",
            f.base().name(),
            kernel.left.name()
        )));
    }
    same_field(f.field(), carrier.field())?;
    let all = vec![true; kernel.left.len()];
    let (cols, maps) = slices(kernel, carrier)?;
    let totals: Vec<ChainTotal> = cols.iter().map(|g| bar_total(g, f, &all)).collect::<Result<_>>()?;
    let id = NatTrans::identity(Arc::new(f.clone()));
    let mut edges = BTreeMap::new();
    for (&(a, b), beta) in &maps {
        let pieces = bar_map_pieces(&totals[a], &totals[b], beta, &id);
        edges.insert((a, b), assemble(f.field(), &totals[a].total.layout, &totals[b].total.layout, 0, &pieces));
    }
    let values = totals.iter().map(|t| t.total.complex.clone()).collect();
    Ok((PFunctor::new(kernel.right.clone(), f.field(), values, edges)?, totals))
}

/// `F ∗ K`: at `q`, the two-sided bar construction `K(−, q) ⊗_P F`.
pub fn convolve(f: &PFunctor, kernel: &Kernel) -> Result<TameFunctor> {
    kernel.carrier.map_parts(|c| convolve_parts(f, kernel, c).map(|(g, _)| g))
}

/// `convolve` for kernels without tails.
pub fn convolve_finite(f: &PFunctor, kernel: &Kernel) -> Result<PFunctor> {
    let carrier = finite_carrier(kernel)?;
    convolve_parts(f, kernel, carrier).map(|(g, _)| g)
}

fn finite_carrier(kernel: &Kernel) -> Result<&PFunctor> {
    kernel
        .carrier
        .as_finite()
        .ok_or_else(|| Error::Unsupported(format!("kernel `{}` has tail values", kernel.name)))
}

/// The comparison `y(p) ∗ K → K(p, −)`, built from `K(r, q) → K(p, q)` for `p ≤ r`.
pub fn convolve_yoneda_comparison(kernel: &Kernel, p: usize) -> Result<NatTrans> {
    let carrier = finite_carrier(kernel)?;
    let field = carrier.field().clone();
    let y = PFunctor::yoneda(kernel.left.clone(), p, &Complex::unit(&field));
    let (conv, totals) = convolve_parts(&y, kernel, carrier)?;
    let column = kernel.column(p)?.finite_part().clone();
    let mut comps = Vec::with_capacity(kernel.right.len());
    for (q, ct) in totals.iter().enumerate() {
        let pieces: Vec<Piece> = ct
            .chains
            .iter()
            .enumerate()
            .filter(|(_, s)| s.len() == 1)
            .map(|(b, s)| Piece::new(b, 0, carrier.map(kernel.index(s[0], q), kernel.index(p, q))))
            .collect();
        comps.push(assemble(&field, &ct.total.layout, &Layout::single(column.value(q)), 0, &pieces));
    }
    NatTrans::new(Arc::new(conv), Arc::new(column), comps)
}

/// The augmentation `F ∗ K_id → F`, sending the chain `(p)` over `q` along `F(p ≤ q)`.
pub fn convolve_unit_comparison(f: &PFunctor) -> Result<NatTrans> {
    let id = identity_kernel(f.base().clone(), f.field());
    let carrier = finite_carrier(&id)?;
    let (conv, totals) = convolve_parts(f, &id, carrier)?;
    let mut comps = Vec::with_capacity(f.base().len());
    for (q, ct) in totals.iter().enumerate() {
        let pieces: Vec<Piece> = ct
            .chains
            .iter()
            .enumerate()
            .filter(|(_, s)| s.len() == 1 && f.base().leq(s[0], q))
            .map(|(b, s)| Piece::new(b, 0, f.map(s[0], q)))
            .collect();
        comps.push(assemble(f.field(), &ct.total.layout, &Layout::single(f.value(q)), 0, &pieces));
    }
    NatTrans::new(Arc::new(conv), Arc::new(f.clone()), comps)
}

/// Composite kernel on `P^op × R`: `(p, r) ↦ L(−, r) ⊗_Q K(p, −)`.
pub fn compose_kernels(k: &Kernel, l: &Kernel) -> Result<Kernel> {
    compose_parts(k, l).map(|(kl, _)| kl)
}

fn compose_parts(k: &Kernel, l: &Kernel) -> Result<(Kernel, Vec<ChainTotal>)> {
    if *k.right != *l.left {
        return Err(Error::BaseMismatch(format!(
            "kernel `{}` ends at {}, `{}` starts at {}",
            k.name,
            k.right.name(),
            l.name,
            l.left.name()
        )));
    }
    let (kc, lc) = (finite_carrier(k)?, finite_carrier(l)?);
    same_field(kc.field(), lc.field())?;
    let field = kc.field().clone();
    let (pl, rl) = (k.left.len(), l.right.len());
    let all = vec![true; k.right.len()];
    let rows: Vec<Arc<PFunctor>> =
        (0..pl).map(|p| k.column(p).map(|c| Arc::new(c.finite_part().clone()))).collect::<Result<_>>()?;
    let (lslices, lmaps) = slices(l, lc)?;
    let base = Arc::new(Kernel::carrier_base(&k.left, &l.right));
    let mut totals = Vec::with_capacity(pl * rl);
    for p in 0..pl {
        for r in 0..rl {
            totals.push(bar_total(&lslices[r], &rows[p], &all)?);
        }
    }
    let mut edges = BTreeMap::new();
    for &(a, b) in base.covers() {
        let (pa, ra, pb, rb) = (a / rl, a % rl, b / rl, b % rl);
        let (beta, alpha) = if pa == pb {
            (lmaps[&(ra, rb)].clone(), NatTrans::identity(rows[pa].clone()))
        } else {
            let comps = (0..k.right.len()).map(|q| kc.map(k.index(pa, q), k.index(pb, q))).collect();
            (NatTrans::identity(lslices[ra].clone()), NatTrans::new(rows[pa].clone(), rows[pb].clone(), comps)?)
        };
        let pieces = bar_map_pieces(&totals[a], &totals[b], &beta, &alpha);
        edges.insert((a, b), assemble(&field, &totals[a].total.layout, &totals[b].total.layout, 0, &pieces));
    }
    let values = totals.iter().map(|t| t.total.complex.clone()).collect();
    let carrier = PFunctor::new(base, &field, values, edges)?;
    let kl = Kernel::from_functor(&format!("{}.{}", k.name, l.name), k.left.clone(), l.right.clone(), carrier)?;
    Ok((kl, totals))
}

fn tensor_index(a: &Complex, b: &Complex, i: i32, j: i32, x: usize, y: usize) -> usize {
    PairLayout::tensor(a, b).offset(i + j, i).expect("nonzero tensor block") + x * b.dim(j) + y
}

/// The isomorphism `(F ∗ K) ∗ L → F ∗ (K ∘ L)`: both sides are sums of
/// `L(τ_m, r) ⊗ K(σ_n, τ_0) ⊗ F(σ_0)` over chain pairs, matched up to the
/// sign `(−1)^{n(a + m)}` with `a` the degree of the `L` factor.
pub fn associativity_comparison(f: &PFunctor, k: &Kernel, l: &Kernel) -> Result<NatTrans> {
    let kc = finite_carrier(k)?;
    let lc = finite_carrier(l)?;
    let (fk, inner) = convolve_parts(f, k, kc)?;
    let mid = Kernel::from_functor("mid", l.left.clone(), l.right.clone(), lc.clone())?;
    let (lhs, outer) = convolve_parts(&fk, &mid, lc)?;
    let (kl, composite) = compose_parts(k, l)?;
    let klc = finite_carrier(&kl)?;
    let (rhs, right_totals) = convolve_parts(f, &kl, klc)?;
    let field = f.field().clone();
    let rl = l.right.len();
    let mut comps = Vec::with_capacity(rl);
    for r in 0..rl {
        let (lt, rt) = (&outer[r], &right_totals[r]);
        let mut mats: BTreeMap<i32, Matrix> = BTreeMap::new();
        for (bt, tau) in lt.chains.iter().enumerate() {
            let m = tau.len() - 1;
            let (t0, tm) = (tau[0], tau[m]);
            let lv = lc.value(l.index(tm, r));
            let a_total = &inner[t0];
            let av = fk.value(t0);
            for (bs, sigma) in a_total.chains.iter().enumerate() {
                let n = sigma.len() - 1;
                let (s0, sn) = (sigma[0], sigma[n]);
                let kv = kc.value(k.index(sn, t0));
                let fv = f.value(s0);
                let h_total = &composite[kl.index(sn, r)];
                let hv = klc.value(kl.index(sn, r));
                let Some(bh) = h_total.block_of(tau) else { continue };
                let Some(bs2) = rt.block_of(sigma) else { continue };
                for (&a, &dl) in lv.dims() {
                    for (&b, &dk) in kv.dims() {
                        for (&c, &df) in fv.dims() {
                            let t = b + c - n as i32;
                            let h = a + b - m as i32;
                            let total = a + t - m as i32;
                            let sign = if n % 2 == 1 && (a + m as i32).rem_euclid(2) == 1 { -1 } else { 1 };
                            let a_start = a_total.total.layout.start(bs, b + c).unwrap();
                            let l_start = lt.total.layout.start(bt, a + t).unwrap();
                            let h_start = h_total.total.layout.start(bh, a + b).unwrap();
                            let r_start = rt.total.layout.start(bs2, h + c).unwrap();
                            let slot = mats.entry(total).or_insert_with(|| {
                                Matrix::zeros(&field, rhs.value(r).dim(total), lhs.value(r).dim(total))
                            });
                            for x in 0..dl {
                                for y in 0..dk {
                                    for z in 0..df {
                                        let ai = a_start + tensor_index(kv, fv, b, c, y, z);
                                        let li = l_start + tensor_index(lv, av, a, t, x, ai);
                                        let hi = h_start + tensor_index(lv, kv, a, b, x, y);
                                        let ri = r_start + tensor_index(hv, fv, h, c, hi, z);
                                        slot.set_i64(ri, li, sign);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        mats.retain(|_, m| !m.is_zero());
        comps.push(mats);
    }
    NatTrans::new(Arc::new(lhs), Arc::new(rhs), comps)
}

/// Kernel built from a carrier functor given on `P^op × Q`.
pub fn kernel_from_values(
    name: &str,
    left: Arc<Poset>,
    right: Arc<Poset>,
    field: &Field,
    values: Vec<Arc<Complex>>,
    edges: BTreeMap<(usize, usize), Components>,
) -> Result<Kernel> {
    let base = Arc::new(Kernel::carrier_base(&left, &right));
    let carrier = PFunctor::new(base, field, values, edges)?;
    Kernel::from_functor(name, left, right, carrier)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::face_poset;

    fn circle() -> Arc<Poset> {
        let facets: Vec<Vec<String>> = [["1", "2"], ["2", "3"], ["1", "3"]]
            .iter()
            .map(|f| f.iter().map(|s| s.to_string()).collect())
            .collect();
        Arc::new(face_poset("circle", &facets).unwrap())
    }

    #[test]
    fn identity_kernel_on_arrow() {
        let a = Arc::new(Poset::chain("arrow", &["a", "b"]));
        let id = identity_kernel(a.clone(), &Field::F2);
        let nonzero: Vec<usize> = (0..4).filter(|&x| !id.carrier().finite_part().value(x).is_zero()).collect();
        assert_eq!(nonzero, vec![0, 1, 3]);
    }

    #[test]
    fn unit_law_and_yoneda_columns() {
        let c = circle();
        let field = Field::F2;
        let id = identity_kernel(c.clone(), &field);
        let k = PFunctor::constant(c.clone(), &Complex::unit(&field));
        let conv = convolve_finite(&k, &id).unwrap();
        for q in 0..c.len() {
            assert_eq!(conv.value(q).homology(), k.value(q).homology());
        }
        assert!(convolve_unit_comparison(&k).unwrap().is_quasi_iso());
        for p in 0..c.len() {
            assert!(convolve_yoneda_comparison(&id, p).unwrap().is_quasi_iso());
        }
    }

    #[test]
    fn associativity_on_identity_kernels() {
        let c = circle();
        let field = Field::Rational;
        let id = identity_kernel(c.clone(), &field);
        let k = PFunctor::constant(c.clone(), &Complex::unit(&field));
        let cmp = associativity_comparison(&k, &id, &id).unwrap();
        assert!(cmp.is_quasi_iso());
    }
}
