//! Diagrams of complexes indexed by a finite poset: the functor-category
//! model of constructible sheaves.
//!
//! Derived functors are computed with normalized (strict-chain) bar and
//! cobar totalizations. Comparisons are always produced as explicit chain
//! maps or natural transformations, never by equality of values.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::chain::{
    compose_components, hom_components, identity_components, same_field, tensor_components, ChainMap, Complex,
    Components,
};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::poset::{MonotoneMap, Poset};
use crate::total::{assemble, totalize, Layout, Piece, Total};

pub(crate) fn components_eq(a: &Components, b: &Components) -> bool {
    let nz = |c: &Components| c.iter().filter(|(_, m)| !m.is_zero()).map(|(k, m)| (*k, m.clone())).collect::<Vec<_>>();
    nz(a) == nz(b)
}

fn scaled(c: &Components, sign: i64) -> Components {
    if sign == 1 {
        return c.clone();
    }
    c.iter().map(|(&n, m)| (n, m.scale_i64(sign))).collect()
}

fn alternating(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A strict functor from a finite poset to bounded complexes.
#[derive(Clone, Debug)]
pub struct PFunctor {
    base: Arc<Poset>,
    field: Field,
    values: Vec<Arc<Complex>>,
    edges: Vec<Components>,
    paths: HashMap<(usize, usize), Components>,
}

impl PFunctor {
    /// Edge maps are given per covering pair; missing covers carry the zero map.
    /// Functoriality is checked over every pair of covering paths.
    pub fn new(
        base: Arc<Poset>,
        field: &Field,
        values: Vec<Arc<Complex>>,
        edges: BTreeMap<(usize, usize), Components>,
    ) -> Result<Self> {
        if values.len() != base.len() {
            return Err(Error::Shape(format!("{} values for {} elements", values.len(), base.len())));
        }
        for v in &values {
            same_field(field, v.field())?;
        }
        let mut edge_comps = vec![Components::new(); base.covers().len()];
        for ((a, b), comps) in edges {
            let k = base.cover_index(a, b).ok_or_else(|| {
                Error::Shape(format!("`{}<{}` is not a covering pair", base.element(a), base.element(b)))
            })?;
            let m = ChainMap::new(values[a].clone(), values[b].clone(), comps).map_err(|e| match e {
                Error::NotChainMap(n) => Error::Shape(format!(
                    "map {}<{} does not commute with differentials at degree {n}",
                    base.element(a),
                    base.element(b)
                )),
                other => other,
            })?;
            edge_comps[k] = m.components().clone();
        }
        let mut f = PFunctor { base, field: field.clone(), values, edges: edge_comps, paths: HashMap::new() };
        f.build_paths()?;
        Ok(f)
    }

    fn build_paths(&mut self) -> Result<()> {
        let base = self.base.clone();
        let order = base.linear_extension().to_vec();
        for p in 0..base.len() {
            for &q in &order {
                if !base.lt(p, q) {
                    continue;
                }
                let mut found: Option<(usize, Components)> = None;
                for &r in base.down_covers(q) {
                    if !base.leq(p, r) {
                        continue;
                    }
                    let edge = &self.edges[base.cover_index(r, q).unwrap()];
                    let via = compose_components(edge, &self.map(p, r));
                    match &found {
                        None => found = Some((r, via)),
                        Some((r0, c0)) => {
                            if !components_eq(c0, &via) {
                                return Err(Error::NotFunctorial {
                                    from: base.element(p).to_string(),
                                    to: base.element(q).to_string(),
                                    via_a: base.element(*r0).to_string(),
                                    via_b: base.element(r).to_string(),
                                });
                            }
                        }
                    }
                }
                self.paths.insert((p, q), found.expect("p < q has a cover below q").1);
            }
        }
        Ok(())
    }

    pub fn constant(base: Arc<Poset>, value: &Complex) -> Self {
        let v = Arc::new(value.clone());
        let values = vec![v.clone(); base.len()];
        let edges = base.covers().iter().map(|&c| (c, identity_components(&v))).collect();
        Self::new(base, value.field(), values, edges).expect("constant functor")
    }

    pub fn zero(base: Arc<Poset>, field: &Field) -> Self {
        let values = vec![Arc::new(Complex::zero(field)); base.len()];
        Self::new(base, field, values, BTreeMap::new()).expect("zero functor")
    }

    /// `q ↦ V` for `p ≤ q`, zero elsewhere, identities between nonzero values.
    pub fn yoneda(base: Arc<Poset>, p: usize, value: &Complex) -> Self {
        let v = Arc::new(value.clone());
        let zero = Arc::new(Complex::zero(value.field()));
        let values = (0..base.len()).map(|q| if base.leq(p, q) { v.clone() } else { zero.clone() }).collect();
        let edges = base
            .covers()
            .iter()
            .filter(|&&(a, _)| base.leq(p, a))
            .map(|&c| (c, identity_components(&v)))
            .collect();
        Self::new(base, value.field(), values, edges).expect("yoneda functor")
    }

    /// `V` at `p`, zero elsewhere. Functorial for any `p` since all maps vanish.
    pub fn skyscraper(base: Arc<Poset>, p: usize, value: &Complex) -> Self {
        let zero = Arc::new(Complex::zero(value.field()));
        let mut values = vec![zero; base.len()];
        values[p] = Arc::new(value.clone());
        Self::new(base, value.field(), values, BTreeMap::new()).expect("skyscraper functor")
    }

    pub fn base(&self) -> &Arc<Poset> {
        &self.base
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self, p: usize) -> &Arc<Complex> {
        &self.values[p]
    }

    pub fn values(&self) -> &[Arc<Complex>] {
        &self.values
    }

    /// Evaluation at the element named `id`.
    pub fn stalk(&self, id: &str) -> Result<&Arc<Complex>> {
        Ok(&self.values[self.base.index_of(id)?])
    }

    /// The map along the covering pair `lower ⋖ upper`.
    pub fn edge(&self, lower: usize, upper: usize) -> &Components {
        &self.edges[self.base.cover_index(lower, upper).expect("covering pair")]
    }

    /// The structure map `F(p) → F(q)`; requires `p ≤ q`.
    pub fn map(&self, p: usize, q: usize) -> Components {
        if p == q {
            return identity_components(&self.values[p]);
        }
        self.paths.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn map_chain(&self, p: usize, q: usize) -> ChainMap {
        ChainMap::new(self.values[p].clone(), self.values[q].clone(), self.map(p, q)).expect("structure map")
    }

    pub fn total_dim(&self) -> usize {
        self.values.iter().map(|v| v.total_dim()).sum()
    }

    /// Degrees in which some value is nonzero.
    pub fn value_degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.values.iter().flat_map(|v| v.degrees().collect::<Vec<_>>()).collect();
        d.sort();
        d.dedup();
        d
    }

    pub fn with_base(&self, base: Arc<Poset>) -> Result<Self> {
        if *base != *self.base {
            return Err(Error::BaseMismatch(format!("{} vs {}", base.name(), self.base.name())));
        }
        let mut f = self.clone();
        f.base = base;
        Ok(f)
    }

    fn edge_map(&self) -> BTreeMap<(usize, usize), Components> {
        self.base.covers().iter().cloned().zip(self.edges.iter().cloned()).collect()
    }

    pub fn direct_sum(&self, other: &PFunctor) -> Result<PFunctor> {
        self.check_same_base(other)?;
        let values: Vec<Arc<Complex>> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.direct_sum(b).map(Arc::new))
            .collect::<Result<_>>()?;
        let mut edges = BTreeMap::new();
        for &(a, b) in self.base.covers() {
            let mut comps = Components::new();
            for n in values[a].degrees() {
                let mut m = Matrix::zeros(&self.field, values[b].dim(n), values[a].dim(n));
                if let Some(x) = self.edge(a, b).get(&n) {
                    m.set_block(0, 0, x);
                }
                if let Some(y) = other.edge(a, b).get(&n) {
                    m.set_block(self.values[b].dim(n), self.values[a].dim(n), y);
                }
                comps.insert(n, m);
            }
            edges.insert((a, b), comps);
        }
        PFunctor::new(self.base.clone(), &self.field, values, edges)
    }

    /// Pointwise shift `F[k]`.
    pub fn shift(&self, k: i32) -> PFunctor {
        let values = self.values.iter().map(|v| Arc::new(v.shift(k))).collect();
        let edges = self
            .edge_map()
            .into_iter()
            .map(|(c, comps)| (c, comps.into_iter().map(|(n, m)| (n - k, m)).collect()))
            .collect();
        PFunctor::new(self.base.clone(), &self.field, values, edges).expect("shift of a functor")
    }

    /// Pointwise `F(p) ⊗ V`.
    pub fn tensor_complex(&self, v: &Complex) -> Result<PFunctor> {
        same_field(&self.field, v.field())?;
        let values: Vec<Arc<Complex>> =
            self.values.iter().map(|x| x.tensor(v).map(Arc::new)).collect::<Result<_>>()?;
        let id = identity_components(v);
        let edges = self
            .base
            .covers()
            .iter()
            .map(|&(a, b)| {
                let comps = tensor_components(&self.values[a], v, &self.values[b], v, self.edge(a, b), &id);
                ((a, b), comps)
            })
            .collect();
        PFunctor::new(self.base.clone(), &self.field, values, edges)
    }

    /// Precomposition `G ∘ f` along a monotone map into this functor's base.
    pub fn pullback(&self, f: &MonotoneMap) -> Result<PFunctor> {
        if **f.target() != *self.base {
            return Err(Error::BaseMismatch(format!(
                "map lands in {}, functor lives on {}",
                f.target().name(),
                self.base.name()
            )));
        }
        let src = f.source().clone();
        let values = (0..src.len()).map(|p| self.values[f.apply(p)].clone()).collect();
        let edges = src.covers().iter().map(|&(a, b)| ((a, b), self.map(f.apply(a), f.apply(b)))).collect();
        PFunctor::new(src, &self.field, values, edges)
    }

    /// Elements whose value has nonzero cohomology.
    pub fn homology_support(&self) -> Vec<usize> {
        (0..self.base.len()).filter(|&p| !self.values[p].is_acyclic()).collect()
    }

    pub(crate) fn check_same_base(&self, other: &PFunctor) -> Result<()> {
        if *self.base != *other.base {
            return Err(Error::BaseMismatch(format!("{} vs {}", self.base.name(), other.base.name())));
        }
        same_field(&self.field, &other.field)
    }
}

/// A natural transformation between functors on the same poset.
#[derive(Clone, Debug)]
pub struct NatTrans {
    source: Arc<PFunctor>,
    target: Arc<PFunctor>,
    comps: Vec<Components>,
}

impl NatTrans {
    pub fn new(source: Arc<PFunctor>, target: Arc<PFunctor>, comps: Vec<Components>) -> Result<Self> {
        source.check_same_base(&target)?;
        let base = source.base.clone();
        if comps.len() != base.len() {
            return Err(Error::Shape(format!("{} components for {} elements", comps.len(), base.len())));
        }
        let mut kept = Vec::with_capacity(comps.len());
        for (p, c) in comps.into_iter().enumerate() {
            let m = ChainMap::new(source.values[p].clone(), target.values[p].clone(), c)?;
            kept.push(m.components().clone());
        }
        for &(a, b) in base.covers() {
            let lhs = compose_components(target.edge(a, b), &kept[a]);
            let rhs = compose_components(&kept[b], source.edge(a, b));
            if !components_eq(&lhs, &rhs) {
                return Err(Error::NotNatural(base.element(a).to_string(), base.element(b).to_string()));
            }
        }
        Ok(NatTrans { source, target, comps: kept })
    }

    pub fn identity(f: Arc<PFunctor>) -> Self {
        let comps = f.values.iter().map(|v| identity_components(v)).collect();
        NatTrans { source: f.clone(), target: f, comps }
    }

    pub fn zero(source: Arc<PFunctor>, target: Arc<PFunctor>) -> Self {
        let comps = vec![Components::new(); source.base.len()];
        NatTrans { source, target, comps }
    }

    pub fn source(&self) -> &Arc<PFunctor> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PFunctor> {
        &self.target
    }

    pub fn components(&self, p: usize) -> &Components {
        &self.comps[p]
    }

    pub fn component(&self, p: usize) -> ChainMap {
        ChainMap::new(self.source.values[p].clone(), self.target.values[p].clone(), self.comps[p].clone())
            .expect("validated component")
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &NatTrans) -> Result<NatTrans> {
        inner.target.check_same_base(&self.source)?;
        let comps = self.comps.iter().zip(&inner.comps).map(|(g, f)| compose_components(g, f)).collect();
        NatTrans::new(inner.source.clone(), self.target.clone(), comps)
    }

    pub fn is_quasi_iso(&self) -> bool {
        (0..self.comps.len()).all(|p| self.component(p).is_quasi_iso())
    }

    /// Elements where the component fails to be a quasi-isomorphism.
    pub fn failures(&self) -> Vec<usize> {
        (0..self.comps.len()).filter(|&p| !self.component(p).is_quasi_iso()).collect()
    }

    /// Pointwise mapping cone, with structure maps acting diagonally.
    pub fn cone(&self) -> PFunctor {
        let base = &self.source.base;
        let values: Vec<Arc<Complex>> = (0..base.len()).map(|p| Arc::new(self.component(p).cone())).collect();
        let mut edges = BTreeMap::new();
        for &(a, b) in base.covers() {
            let (s, t) = (&self.source, &self.target);
            let mut comps = Components::new();
            for n in values[a].degrees() {
                let mut m = Matrix::zeros(&s.field, values[b].dim(n), values[a].dim(n));
                if let Some(x) = s.edge(a, b).get(&(n + 1)) {
                    m.set_block(0, 0, x);
                }
                if let Some(y) = t.edge(a, b).get(&n) {
                    m.set_block(s.values[b].dim(n + 1), s.values[a].dim(n + 1), y);
                }
                comps.insert(n, m);
            }
            edges.insert((a, b), comps);
        }
        PFunctor::new(base.clone(), &self.source.field, values, edges).expect("cone of a natural transformation")
    }
}

/// A totalization whose blocks are indexed by strict chains.
#[derive(Clone, Debug)]
pub(crate) struct ChainTotal {
    pub total: Total,
    pub chains: Vec<Vec<usize>>,
    pub blocks: Vec<Arc<Complex>>,
    pub index: HashMap<Vec<usize>, usize>,
}

impl ChainTotal {
    pub(crate) fn block_of(&self, chain: &[usize]) -> Option<usize> {
        self.index.get(chain).copied()
    }
}

fn remove_at(chain: &[usize], i: usize) -> Vec<usize> {
    let mut c = chain.to_vec();
    c.remove(i);
    c
}

/// Cobar totalization: blocks `Hom(F(p_0), G(p_n))` in total degree internal + n.
pub(crate) fn cobar_total(f: &PFunctor, g: &PFunctor, member: &[bool]) -> Result<ChainTotal> {
    f.check_same_base(g)?;
    let field = &f.field;
    let mut chains = Vec::new();
    let mut blocks = Vec::new();
    let mut index = HashMap::new();
    for sigma in f.base.chains_in(member) {
        let h = f.values[sigma[0]].hom(&g.values[*sigma.last().unwrap()])?;
        if h.is_zero() {
            continue;
        }
        index.insert(sigma.clone(), chains.len());
        blocks.push(Arc::new(h));
        chains.push(sigma);
    }
    let mut faces = Vec::new();
    for (b, tau) in chains.iter().enumerate() {
        let n = tau.len() - 1;
        let last = tau[n];
        for i in 0..=n {
            if n == 0 {
                break;
            }
            let sigma = remove_at(tau, i);
            let Some(&s) = index.get(&sigma) else { continue };
            let comps = if i == 0 {
                hom_components(
                    &f.values[tau[1]],
                    &g.values[last],
                    &f.values[tau[0]],
                    &g.values[last],
                    &f.map(tau[0], tau[1]),
                    &identity_components(&g.values[last]),
                )
            } else if i == n {
                hom_components(
                    &f.values[tau[0]],
                    &g.values[tau[n - 1]],
                    &f.values[tau[0]],
                    &g.values[last],
                    &identity_components(&f.values[tau[0]]),
                    &g.map(tau[n - 1], last),
                )
            } else {
                identity_components(&blocks[s])
            };
            faces.push(Piece::new(s, b, scaled(&comps, alternating(i))));
        }
    }
    let layout: Vec<(Arc<Complex>, i32, usize)> =
        blocks.iter().zip(&chains).map(|(c, s)| (c.clone(), (s.len() - 1) as i32, s.len() - 1)).collect();
    let total = totalize(field, &layout, faces)?;
    Ok(ChainTotal { total, chains, blocks, index })
}

/// Bar totalization: blocks `Gop(p_n) ⊗ F(p_0)` in total degree internal − n.
pub(crate) fn bar_total(gop: &PFunctor, f: &PFunctor, member: &[bool]) -> Result<ChainTotal> {
    if *gop.base != f.base.opposite() {
        return Err(Error::BaseMismatch(format!(
            "{} is not the opposite of {}",
            gop.base.name(),
            f.base.name()
        )));
    }
    same_field(&gop.field, &f.field)?;
    let field = &f.field;
    let mut chains = Vec::new();
    let mut blocks = Vec::new();
    let mut index = HashMap::new();
    for sigma in f.base.chains_in(member) {
        let t = gop.values[*sigma.last().unwrap()].tensor(&f.values[sigma[0]])?;
        if t.is_zero() {
            continue;
        }
        index.insert(sigma.clone(), chains.len());
        blocks.push(Arc::new(t));
        chains.push(sigma);
    }
    let mut faces = Vec::new();
    for (b, sigma) in chains.iter().enumerate() {
        let n = sigma.len() - 1;
        if n == 0 {
            continue;
        }
        let last = sigma[n];
        for i in 0..=n {
            let tau = remove_at(sigma, i);
            let Some(&t) = index.get(&tau) else { continue };
            let comps = if i == 0 {
                tensor_components(
                    &gop.values[last],
                    &f.values[sigma[0]],
                    &gop.values[last],
                    &f.values[sigma[1]],
                    &identity_components(&gop.values[last]),
                    &f.map(sigma[0], sigma[1]),
                )
            } else if i == n {
                tensor_components(
                    &gop.values[last],
                    &f.values[sigma[0]],
                    &gop.values[sigma[n - 1]],
                    &f.values[sigma[0]],
                    &gop.map(last, sigma[n - 1]),
                    &identity_components(&f.values[sigma[0]]),
                )
            } else {
                identity_components(&blocks[b])
            };
            faces.push(Piece::new(b, t, scaled(&comps, alternating(i))));
        }
    }
    let layout: Vec<(Arc<Complex>, i32, usize)> =
        blocks.iter().zip(&chains).map(|(c, s)| (c.clone(), -((s.len() - 1) as i32), s.len() - 1)).collect();
    let total = totalize(field, &layout, faces)?;
    Ok(ChainTotal { total, chains, blocks, index })
}

fn everything(p: &Poset) -> Vec<bool> {
    vec![true; p.len()]
}

fn constant_unit(base: Arc<Poset>, field: &Field) -> PFunctor {
    PFunctor::constant(base, &Complex::unit(field))
}

/// Derived hom by the cobar formula.
pub fn rhom(f: &PFunctor, g: &PFunctor) -> Result<Complex> {
    Ok((*cobar_total(f, g, &everything(&f.base))?.total.complex).clone())
}

/// Two-sided bar construction `Gop ⊗_P F`.
pub fn bar_tensor(gop: &PFunctor, f: &PFunctor) -> Result<Complex> {
    Ok((*bar_total(gop, f, &everything(&f.base))?.total.complex).clone())
}

pub fn hocolim(f: &PFunctor) -> Result<Complex> {
    let k = constant_unit(Arc::new(f.base.opposite()), &f.field);
    bar_tensor(&k, f)
}

/// Global sections: `rhom(k, F)`.
pub fn holim(f: &PFunctor) -> Result<Complex> {
    let k = constant_unit(f.base.clone(), &f.field);
    rhom(&k, f)
}

/// Projection `rhom(y(p), F) → F(p)` onto the cochains on the chain `(p)`.
pub fn yoneda_evaluation(p: usize, f: &PFunctor) -> Result<ChainMap> {
    let y = PFunctor::yoneda(f.base.clone(), p, &Complex::unit(&f.field));
    let ct = cobar_total(&y, f, &everything(&f.base))?;
    let target = f.values[p].clone();
    let pieces: Vec<Piece> = ct
        .block_of(&[p])
        .map(|b| Piece::new(b, 0, identity_components(&ct.blocks[b])))
        .into_iter()
        .collect();
    let comps = assemble(&f.field, &ct.total.layout, &Layout::single(&target), 0, &pieces);
    ChainMap::new(ct.total.complex.clone(), target, comps)
}

/// Augmentation `bar(y_op(p), F) → F(p)` built from `F(q ≤ p)`.
pub fn coyoneda_augmentation(p: usize, f: &PFunctor) -> Result<ChainMap> {
    let op = Arc::new(f.base.opposite());
    let y = PFunctor::yoneda(op, p, &Complex::unit(&f.field));
    let ct = bar_total(&y, f, &everything(&f.base))?;
    let target = f.values[p].clone();
    let pieces: Vec<Piece> = ct
        .chains
        .iter()
        .enumerate()
        .filter(|(_, s)| s.len() == 1)
        .map(|(b, s)| Piece::new(b, 0, f.map(s[0], p)))
        .collect();
    let comps = assemble(&f.field, &ct.total.layout, &Layout::single(&target), 0, &pieces);
    ChainMap::new(ct.total.complex.clone(), target, comps)
}

/// Map `rhom(F, G) → rhom(F', G')` induced by `α: F' → F` and `β: G → G'`.
pub fn rhom_map(alpha: &NatTrans, beta: &NatTrans) -> Result<ChainMap> {
    let (f, f2, g, g2) = (&alpha.target, &alpha.source, &beta.source, &beta.target);
    let all = everything(&f.base);
    let src = cobar_total(f, g, &all)?;
    let tgt = cobar_total(f2, g2, &all)?;
    let mut pieces = Vec::new();
    for (b, s) in src.chains.iter().enumerate() {
        let Some(t) = tgt.block_of(s) else { continue };
        let (p0, pn) = (s[0], *s.last().unwrap());
        let comps = hom_components(
            &f.values[p0],
            &g.values[pn],
            &f2.values[p0],
            &g2.values[pn],
            &alpha.comps[p0],
            &beta.comps[pn],
        );
        pieces.push(Piece::new(b, t, comps));
    }
    let comps = assemble(&f.field, &src.total.layout, &tgt.total.layout, 0, &pieces);
    ChainMap::new(src.total.complex.clone(), tgt.total.complex.clone(), comps)
}

/// Map `Gop ⊗_P F → Gop' ⊗_P F'` induced by `β: Gop → Gop'` and `α: F → F'`.
pub fn bar_map(beta: &NatTrans, alpha: &NatTrans) -> Result<ChainMap> {
    let all = everything(&alpha.source.base);
    let src = bar_total(&beta.source, &alpha.source, &all)?;
    let tgt = bar_total(&beta.target, &alpha.target, &all)?;
    let pieces = bar_map_pieces(&src, &tgt, beta, alpha);
    let comps = assemble(&alpha.source.field, &src.total.layout, &tgt.total.layout, 0, &pieces);
    ChainMap::new(src.total.complex.clone(), tgt.total.complex.clone(), comps)
}

pub(crate) fn bar_map_pieces(src: &ChainTotal, tgt: &ChainTotal, beta: &NatTrans, alpha: &NatTrans) -> Vec<Piece> {
    let mut pieces = Vec::new();
    for (b, s) in src.chains.iter().enumerate() {
        let Some(t) = tgt.block_of(s) else { continue };
        let (p0, pn) = (s[0], *s.last().unwrap());
        let comps = tensor_components(
            &beta.source.values[pn],
            &alpha.source.values[p0],
            &beta.target.values[pn],
            &alpha.target.values[p0],
            &beta.comps[pn],
            &alpha.comps[p0],
        );
        pieces.push(Piece::new(b, t, comps));
    }
    pieces
}

fn inclusion_pieces(src: &ChainTotal, tgt: &ChainTotal) -> Vec<Piece> {
    src.chains
        .iter()
        .enumerate()
        .filter_map(|(b, s)| tgt.block_of(s).map(|t| Piece::new(b, t, identity_components(&src.blocks[b]))))
        .collect()
}

fn check_source(f: &MonotoneMap, functor: &PFunctor) -> Result<()> {
    if **f.source() != *functor.base {
        return Err(Error::BaseMismatch(format!(
            "map starts at {}, functor lives on {}",
            f.source().name(),
            functor.base.name()
        )));
    }
    Ok(())
}

fn kan_left_parts(f: &MonotoneMap, functor: &PFunctor) -> Result<(PFunctor, Vec<ChainTotal>)> {
    check_source(f, functor)?;
    let (p, q) = (f.source(), f.target());
    let k = constant_unit(Arc::new(p.opposite()), &functor.field);
    let mut totals = Vec::with_capacity(q.len());
    for x in 0..q.len() {
        let member: Vec<bool> = (0..p.len()).map(|a| q.leq(f.apply(a), x)).collect();
        totals.push(bar_total(&k, functor, &member)?);
    }
    let mut edges = BTreeMap::new();
    for &(a, b) in q.covers() {
        let pieces = inclusion_pieces(&totals[a], &totals[b]);
        let comps = assemble(&functor.field, &totals[a].total.layout, &totals[b].total.layout, 0, &pieces);
        edges.insert((a, b), comps);
    }
    let values = totals.iter().map(|t| t.total.complex.clone()).collect();
    Ok((PFunctor::new(q.clone(), &functor.field, values, edges)?, totals))
}

fn kan_right_parts(f: &MonotoneMap, functor: &PFunctor) -> Result<(PFunctor, Vec<ChainTotal>)> {
    check_source(f, functor)?;
    let (p, q) = (f.source(), f.target());
    let k = constant_unit(p.clone(), &functor.field);
    let mut totals = Vec::with_capacity(q.len());
    for x in 0..q.len() {
        let member: Vec<bool> = (0..p.len()).map(|a| q.leq(x, f.apply(a))).collect();
        totals.push(cobar_total(&k, functor, &member)?);
    }
    let mut edges = BTreeMap::new();
    for &(a, b) in q.covers() {
        // The comma category shrinks going up, so the structure map restricts cochains.
        let pieces = inclusion_pieces(&totals[b], &totals[a])
            .into_iter()
            .map(|pc| Piece::new(pc.tgt, pc.src, pc.comps))
            .collect::<Vec<_>>();
        let comps = assemble(&functor.field, &totals[a].total.layout, &totals[b].total.layout, 0, &pieces);
        edges.insert((a, b), comps);
    }
    let values = totals.iter().map(|t| t.total.complex.clone()).collect();
    Ok((PFunctor::new(q.clone(), &functor.field, values, edges)?, totals))
}

/// Left Kan extension: `q ↦ hocolim` over `{p : f(p) ≤ q}`.
pub fn kan_left(f: &MonotoneMap, functor: &PFunctor) -> Result<PFunctor> {
    kan_left_parts(f, functor).map(|(l, _)| l)
}

/// Right Kan extension: `q ↦ holim` over `{p : q ≤ f(p)}`.
pub fn kan_right(f: &MonotoneMap, functor: &PFunctor) -> Result<PFunctor> {
    kan_right_parts(f, functor).map(|(r, _)| r)
}

/// The map `Lan_f F → H` adjoint to `α: F → f*H`.
pub fn kan_left_adjunct(f: &MonotoneMap, functor: &PFunctor, h: &PFunctor, alpha: &NatTrans) -> Result<NatTrans> {
    let (lan, totals) = kan_left_parts(f, functor)?;
    if **f.target() != *h.base {
        return Err(Error::BaseMismatch("adjunct target must live on the codomain".into()));
    }
    let mut comps = Vec::with_capacity(h.base.len());
    for (x, ct) in totals.iter().enumerate() {
        let pieces: Vec<Piece> = ct
            .chains
            .iter()
            .enumerate()
            .filter(|(_, s)| s.len() == 1)
            .map(|(b, s)| Piece::new(b, 0, compose_components(&h.map(f.apply(s[0]), x), &alpha.comps[s[0]])))
            .collect();
        comps.push(assemble(&h.field, &ct.total.layout, &Layout::single(&h.values[x]), 0, &pieces));
    }
    NatTrans::new(Arc::new(lan), Arc::new(h.clone()), comps)
}

/// The map `H → Ran_f F` adjoint to `α: f*H → F`.
pub fn kan_right_adjunct(f: &MonotoneMap, h: &PFunctor, functor: &PFunctor, alpha: &NatTrans) -> Result<NatTrans> {
    let (ran, totals) = kan_right_parts(f, functor)?;
    if **f.target() != *h.base {
        return Err(Error::BaseMismatch("adjunct source must live on the codomain".into()));
    }
    let mut comps = Vec::with_capacity(h.base.len());
    for (x, ct) in totals.iter().enumerate() {
        let pieces: Vec<Piece> = ct
            .chains
            .iter()
            .enumerate()
            .filter(|(_, s)| s.len() == 1)
            .map(|(b, s)| Piece::new(0, b, compose_components(&alpha.comps[s[0]], &h.map(x, f.apply(s[0])))))
            .collect();
        comps.push(assemble(&h.field, &Layout::single(&h.values[x]), &ct.total.layout, 0, &pieces));
    }
    NatTrans::new(Arc::new(h.clone()), Arc::new(ran), comps)
}

/// Counit `Lan_f f*G → G`.
pub fn counit_left(f: &MonotoneMap, g: &PFunctor) -> Result<NatTrans> {
    let pulled = Arc::new(g.pullback(f)?);
    kan_left_adjunct(f, &pulled, g, &NatTrans::identity(pulled.clone()))
}

/// Unit `G → Ran_f f*G`.
pub fn unit_right(f: &MonotoneMap, g: &PFunctor) -> Result<NatTrans> {
    let pulled = Arc::new(g.pullback(f)?);
    kan_right_adjunct(f, g, &pulled, &NatTrans::identity(pulled.clone()))
}

/// Pointwise unit `F(p) → (Lan_f F)(f(p))`: inclusion of the chain `(p)`.
/// Natural only up to homotopy, so returned as separate chain maps.
pub fn unit_left_components(f: &MonotoneMap, functor: &PFunctor) -> Result<Vec<ChainMap>> {
    let (lan, totals) = kan_left_parts(f, functor)?;
    (0..functor.base.len())
        .map(|p| {
            let ct = &totals[f.apply(p)];
            let src = functor.values[p].clone();
            let pieces: Vec<Piece> =
                ct.block_of(&[p]).map(|b| Piece::new(0, b, identity_components(&src))).into_iter().collect();
            let comps = assemble(&functor.field, &Layout::single(&src), &ct.total.layout, 0, &pieces);
            ChainMap::new(src, lan.values[f.apply(p)].clone(), comps)
        })
        .collect()
}

/// Pointwise counit `(Ran_f F)(f(p)) → F(p)`: projection onto the chain `(p)`.
pub fn counit_right_components(f: &MonotoneMap, functor: &PFunctor) -> Result<Vec<ChainMap>> {
    let (ran, totals) = kan_right_parts(f, functor)?;
    (0..functor.base.len())
        .map(|p| {
            let ct = &totals[f.apply(p)];
            let tgt = functor.values[p].clone();
            let pieces: Vec<Piece> =
                ct.block_of(&[p]).map(|b| Piece::new(b, 0, identity_components(&tgt))).into_iter().collect();
            let comps = assemble(&functor.field, &ct.total.layout, &Layout::single(&tgt), 0, &pieces);
            ChainMap::new(ran.values[f.apply(p)].clone(), tgt, comps)
        })
        .collect()
}

/// One cell `y(element) ⊗ value`.
#[derive(Clone, Debug)]
pub struct Cell {
    pub element: usize,
    pub value: Arc<Complex>,
}

/// A finite one-sided twisted complex of Yoneda cells with a comparison map
/// to the functor it presents. Attaching maps run from later cells to earlier
/// ones and raise degree by one.
#[derive(Clone, Debug)]
pub struct CellPresentation {
    target: Arc<PFunctor>,
    cells: Vec<Cell>,
    attach: BTreeMap<(usize, usize), Components>,
    comparison: Vec<Components>,
}

impl CellPresentation {
    /// Validates the data by building the realization and comparison.
    pub fn new(
        target: Arc<PFunctor>,
        cells: Vec<Cell>,
        attach: BTreeMap<(usize, usize), Components>,
        comparison: Vec<Components>,
    ) -> Result<Self> {
        let base = target.base.clone();
        for (&(i, j), _) in attach.iter() {
            if i >= j || j >= cells.len() || !base.leq(cells[i].element, cells[j].element) {
                return Err(Error::Shape(format!("attaching map from cell {j} to cell {i} is not admissible")));
            }
        }
        if comparison.len() != cells.len() {
            return Err(Error::Shape("one comparison component per cell".into()));
        }
        let pres = CellPresentation { target, cells, attach, comparison };
        pres.comparison_map()?;
        Ok(pres)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn target(&self) -> &Arc<PFunctor> {
        &self.target
    }

    pub fn attaching(&self, i: usize, j: usize) -> Option<&Components> {
        self.attach.get(&(i, j))
    }

    fn members(&self, q: usize) -> Vec<usize> {
        let base = &self.target.base;
        (0..self.cells.len()).filter(|&i| base.leq(self.cells[i].element, q)).collect()
    }

    fn stage(&self, q: usize) -> (Layout, Vec<usize>) {
        let members = self.members(q);
        let layout = Layout::new(members.iter().map(|&i| (&*self.cells[i].value, 0)));
        (layout, members)
    }

    /// The presented functor: at `q`, the cells below `q` with the twisted differential.
    pub fn realization(&self) -> Result<PFunctor> {
        let base = self.target.base.clone();
        let field = self.target.field.clone();
        let stages: Vec<(Layout, Vec<usize>)> = (0..base.len()).map(|q| self.stage(q)).collect();
        let mut values = Vec::with_capacity(base.len());
        for (layout, members) in &stages {
            let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let mut pieces = Vec::new();
            for (k, &i) in members.iter().enumerate() {
                pieces.push(Piece::new(k, k, self.cells[i].value.diffs().clone()));
            }
            for (&(i, j), comps) in &self.attach {
                if let (Some(&a), Some(&b)) = (pos.get(&i), pos.get(&j)) {
                    pieces.push(Piece::new(b, a, comps.clone()));
                }
            }
            let diffs = assemble(&field, layout, layout, 1, &pieces);
            values.push(Arc::new(Complex::new(field.clone(), layout.total_dims().clone(), diffs)?));
        }
        let mut edges = BTreeMap::new();
        for &(a, b) in base.covers() {
            let (la, ma) = &stages[a];
            let (lb, mb) = &stages[b];
            let pieces: Vec<Piece> = ma
                .iter()
                .enumerate()
                .map(|(k, &i)| {
                    let t = mb.iter().position(|&x| x == i).expect("cells below a stay below b");
                    Piece::new(k, t, identity_components(&self.cells[i].value))
                })
                .collect();
            edges.insert((a, b), assemble(&field, la, lb, 0, &pieces));
        }
        PFunctor::new(base, &field, values, edges)
    }

    /// The comparison from the realization to the presented functor.
    pub fn comparison_map(&self) -> Result<NatTrans> {
        let real = Arc::new(self.realization()?);
        let base = &self.target.base;
        let mut comps = Vec::with_capacity(base.len());
        for q in 0..base.len() {
            let (layout, members) = self.stage(q);
            let pieces: Vec<Piece> = members
                .iter()
                .enumerate()
                .map(|(k, &i)| {
                    let to_q = self.target.map(self.cells[i].element, q);
                    Piece::new(k, 0, compose_components(&to_q, &self.comparison[i]))
                })
                .collect();
            comps.push(assemble(&self.target.field, &layout, &Layout::single(&self.target.values[q]), 0, &pieces));
        }
        NatTrans::new(real, self.target.clone(), comps)
    }

    /// True when the comparison is a pointwise quasi-isomorphism.
    pub fn is_exact(&self) -> Result<bool> {
        Ok(self.comparison_map()?.is_quasi_iso())
    }

    /// Repeatedly cancels pairs of cells at the same element joined by a
    /// graded isomorphism, keeping the presentation one-sided.
    pub fn reduce(&self) -> Result<CellPresentation> {
        let mut work = Reduction::from(self);
        let mut rejected: Vec<(usize, usize)> = Vec::new();
        loop {
            let Some((i, j)) = work.find_pair(&rejected) else { break };
            match work.cancel(i, j, &self.target) {
                Some(next) => {
                    work = next;
                    rejected.clear();
                }
                None => rejected.push((work.ids[i], work.ids[j])),
            }
        }
        work.into_presentation(self.target.clone())
    }
}

/// Working form of a presentation during cancellation: `maps[(a, b)]` is the
/// block from cell `b` to cell `a`, diagonal blocks being the cell differentials.
struct Reduction {
    elements: Vec<usize>,
    dims: Vec<BTreeMap<i32, usize>>,
    ids: Vec<usize>,
    maps: BTreeMap<(usize, usize), Components>,
    comparison: Vec<Components>,
    field: Field,
}

impl Reduction {
    fn from(p: &CellPresentation) -> Self {
        let mut maps = p.attach.clone();
        for (i, c) in p.cells.iter().enumerate() {
            if !c.value.diffs().is_empty() {
                maps.insert((i, i), c.value.diffs().clone());
            }
        }
        Reduction {
            elements: p.cells.iter().map(|c| c.element).collect(),
            dims: p.cells.iter().map(|c| c.value.dims().clone()).collect(),
            ids: (0..p.cells.len()).collect(),
            maps,
            comparison: p.comparison.clone(),
            field: p.target.field.clone(),
        }
    }

    fn block(&self, a: usize, b: usize) -> Option<&Components> {
        self.maps.get(&(a, b)).filter(|c| !c.is_empty())
    }

    /// The inverse of `φ: W_j → W_i` (degree +1) if it is a graded isomorphism.
    fn graded_inverse(&self, i: usize, j: usize) -> Option<Components> {
        let phi = self.block(i, j)?;
        let (wi, wj) = (&self.dims[i], &self.dims[j]);
        if wj.len() != wi.len() || wj.iter().any(|(&t, &d)| wi.get(&(t + 1)) != Some(&d)) {
            return None;
        }
        let mut inv = Components::new();
        for &t in wj.keys() {
            let m = phi.get(&t)?.inverse()?;
            inv.insert(t + 1, m);
        }
        Some(inv)
    }

    fn find_pair(&self, rejected: &[(usize, usize)]) -> Option<(usize, usize)> {
        let n = self.elements.len();
        for j in 0..n {
            for i in 0..j {
                if self.elements[i] != self.elements[j] || rejected.contains(&(self.ids[i], self.ids[j])) {
                    continue;
                }
                if self.graded_inverse(i, j).is_some() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn cancel(&self, i: usize, j: usize, target: &PFunctor) -> Option<Reduction> {
        let inv = self.graded_inverse(i, j)?;
        let n = self.elements.len();
        let keep: Vec<usize> = (0..n).filter(|&a| a != i && a != j).collect();
        let mut maps: BTreeMap<(usize, usize), Components> = BTreeMap::new();
        for &a in &keep {
            for &b in &keep {
                let mut m = self.block(a, b).cloned().unwrap_or_default();
                if let (Some(aj), Some(ib)) = (self.block(a, j), self.block(i, b)) {
                    let corr = compose_components(aj, &compose_raised(&inv, ib));
                    m = sub_components(&self.field, &m, &corr);
                }
                if !m.is_empty() {
                    maps.insert((a, b), m);
                }
            }
        }
        let mut comparison = self.comparison.clone();
        for &b in &keep {
            if let Some(ib) = self.block(i, b) {
                let through = compose_components(&self.comparison[j], &compose_raised(&inv, ib));
                let moved = compose_components(&target.map(self.elements[j], self.elements[b]), &through);
                comparison[b] = sub_components(&self.field, &comparison[b], &moved);
            }
        }
        // Attaching maps must still run from later cells to earlier ones.
        let order = toposort(&keep, &maps)?;
        let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        let remapped = maps.into_iter().map(|((a, b), m)| ((pos[&a], pos[&b]), m)).collect();
        Some(Reduction {
            elements: order.iter().map(|&a| self.elements[a]).collect(),
            dims: order.iter().map(|&a| self.dims[a].clone()).collect(),
            ids: order.iter().map(|&a| self.ids[a]).collect(),
            maps: remapped,
            comparison: order.iter().map(|&a| comparison[a].clone()).collect(),
            field: self.field.clone(),
        })
    }

    fn into_presentation(self, target: Arc<PFunctor>) -> Result<CellPresentation> {
        let mut cells = Vec::new();
        let mut attach = BTreeMap::new();
        for (a, dims) in self.dims.iter().enumerate() {
            let diffs = self.maps.get(&(a, a)).cloned().unwrap_or_default();
            let value = Complex::new(self.field.clone(), dims.clone(), diffs)?;
            cells.push(Cell { element: self.elements[a], value: Arc::new(value) });
        }
        for ((a, b), m) in self.maps {
            if a != b {
                attach.insert((a, b), m);
            }
        }
        CellPresentation::new(target, cells, attach, self.comparison)
    }
}

/// `g ∘ f` where `f` raises degree by one: `f` is keyed by `n`, `g` by `n + 1`.
fn compose_raised(g: &Components, f: &Components) -> Components {
    f.iter()
        .filter_map(|(n, fm)| g.get(&(n + 1)).map(|gm| (*n, gm.mul(fm))))
        .filter(|(_, m)| !m.is_zero())
        .collect()
}

fn sub_components(field: &Field, a: &Components, b: &Components) -> Components {
    let mut out = a.clone();
    for (n, m) in b {
        match out.get_mut(n) {
            Some(x) => *x = x.sub(m),
            None => {
                out.insert(*n, Matrix::zeros(field, m.rows(), m.cols()).sub(m));
            }
        }
    }
    out.retain(|_, m| !m.is_zero());
    out
}

/// Orders `cells` so every off-diagonal block `(a, b)` has `a` before `b`,
/// preferring the current order; `None` on a cycle.
fn toposort(cells: &[usize], maps: &BTreeMap<(usize, usize), Components>) -> Option<Vec<usize>> {
    let mut before: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut indeg: HashMap<usize, usize> = cells.iter().map(|&c| (c, 0)).collect();
    for (&(a, b), _) in maps.iter().filter(|((a, b), _)| a != b) {
        before.entry(a).or_default().push(b);
        *indeg.get_mut(&b)? += 1;
    }
    let mut ready: std::collections::BTreeSet<usize> = cells.iter().copied().filter(|c| indeg[c] == 0).collect();
    let mut out = Vec::with_capacity(cells.len());
    while let Some(c) = ready.pop_first() {
        out.push(c);
        for &b in before.get(&c).map(Vec::as_slice).unwrap_or(&[]) {
            let d = indeg.get_mut(&b).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.insert(b);
            }
        }
    }
    (out.len() == cells.len()).then_some(out)
}

/// The normalized bar resolution: one cell `y(p_n) ⊗ F(p_0)[n]` per strict
/// chain with `F(p_0) ≠ 0`, ordered by length.
pub fn bar_resolution(f: &PFunctor) -> Result<CellPresentation> {
    let base = f.base.clone();
    let mut chains = Vec::new();
    let mut index = HashMap::new();
    for sigma in base.chains() {
        if f.values[sigma[0]].is_zero() {
            continue;
        }
        index.insert(sigma.clone(), chains.len());
        chains.push(sigma);
    }
    let cells: Vec<Cell> = chains
        .iter()
        .map(|s| Cell { element: *s.last().unwrap(), value: Arc::new(f.values[s[0]].shift((s.len() - 1) as i32)) })
        .collect();
    let mut attach = BTreeMap::new();
    for (j, sigma) in chains.iter().enumerate() {
        let n = sigma.len() - 1;
        if n == 0 {
            continue;
        }
        for i in 0..=n {
            let tau = remove_at(sigma, i);
            let Some(&t) = index.get(&tau) else { continue };
            // Internal degree `d` of the cell is F-degree `d + n`.
            let inner = if i == 0 { f.map(sigma[0], sigma[1]) } else { identity_components(&f.values[sigma[0]]) };
            let comps: Components =
                inner.into_iter().map(|(deg, m)| (deg - n as i32, m.scale_i64(alternating(i)))).collect();
            attach.insert((t, j), comps);
        }
    }
    let comparison = chains
        .iter()
        .map(|s| if s.len() == 1 { identity_components(&f.values[s[0]]) } else { Components::new() })
        .collect();
    CellPresentation::new(Arc::new(f.clone()), cells, attach, comparison)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::make_complex;
    use crate::poset::face_poset;
    use crate::BettiVector;

    fn f2() -> Field {
        Field::F2
    }

    fn circle() -> Arc<Poset> {
        let facets: Vec<Vec<String>> = [["1", "2"], ["2", "3"], ["1", "3"]]
            .iter()
            .map(|f| f.iter().map(|s| s.to_string()).collect())
            .collect();
        Arc::new(face_poset("circle", &facets).unwrap())
    }

    fn betti(pairs: &[(i32, usize)]) -> BettiVector {
        pairs.iter().copied().collect()
    }

    #[test]
    fn square_that_fails_to_commute() {
        let sq = Arc::new(Poset::chain("a", &["0", "1"]).product(&Poset::chain("b", &["0", "1"])));
        let k = Arc::new(Complex::unit(&f2()));
        let one = |_: ()| -> Components { [(0, Matrix::identity(&f2(), 1))].into_iter().collect() };
        let mut edges = BTreeMap::new();
        for &(a, b) in sq.covers() {
            edges.insert((a, b), one(()));
        }
        // Kill one edge so the two routes to the top disagree.
        edges.insert(sq.covers()[0], Components::new());
        let err = PFunctor::new(sq.clone(), &f2(), vec![k; 4], edges).unwrap_err();
        assert!(matches!(err, Error::NotFunctorial { .. }));
    }

    #[test]
    fn yoneda_values() {
        let c = circle();
        let e = c.index_of("1-2").unwrap();
        let y = PFunctor::yoneda(c.clone(), e, &Complex::unit(&f2()));
        assert_eq!(y.homology_support(), vec![e]);
        let y1 = PFunctor::yoneda(c.clone(), 0, &Complex::unit(&f2()));
        assert_eq!(y1.homology_support(), vec![0, 3, 4]);
    }

    #[test]
    fn sections_of_constant_sheaf_on_circle() {
        for field in [f2(), Field::Rational, Field::prime(3).unwrap()] {
            let k = PFunctor::constant(circle(), &Complex::unit(&field));
            assert_eq!(holim(&k).unwrap().homology(), betti(&[(0, 1), (1, 1)]));
            assert_eq!(hocolim(&k).unwrap().homology(), betti(&[(-1, 1), (0, 1)]));
        }
    }

    #[test]
    fn evaluation_at_yoneda_is_quasi_iso() {
        let a = Arc::new(Poset::chain("arrow", &["a", "b"]));
        let field = f2();
        let g = PFunctor::new(
            a.clone(),
            &field,
            vec![Arc::new(Complex::unit(&field)), Arc::new(Complex::concentrated(&field, 0, 2))],
            [((0, 1), [(0, Matrix::from_i64(&field, 2, 1, &[1, 0]))].into_iter().collect())].into_iter().collect(),
        )
        .unwrap();
        let y = PFunctor::yoneda(a.clone(), 1, &Complex::unit(&field));
        assert_eq!(rhom(&y, &g).unwrap().homology(), betti(&[(0, 2)]));
        for p in 0..2 {
            assert!(yoneda_evaluation(p, &g).unwrap().is_quasi_iso());
            assert!(coyoneda_augmentation(p, &g).unwrap().is_quasi_iso());
        }
    }

    #[test]
    fn kan_extensions_along_collapse() {
        let c = circle();
        let pt = Arc::new(Poset::point("pt", "*"));
        let q = MonotoneMap::collapse(c.clone(), pt).unwrap();
        let k = PFunctor::constant(c, &Complex::unit(&f2()));
        let r = kan_right(&q, &k).unwrap();
        assert_eq!(r.value(0).homology(), betti(&[(0, 1), (1, 1)]));
        let counit = counit_left(&q, &PFunctor::constant(q.target().clone(), &Complex::unit(&f2()))).unwrap();
        assert!(!counit.is_quasi_iso());
    }

    #[test]
    fn bar_resolution_of_constant_on_arrow() {
        let a = Arc::new(Poset::chain("arrow", &["a", "b"]));
        let k = PFunctor::constant(a, &Complex::unit(&f2()));
        let res = bar_resolution(&k).unwrap();
        assert_eq!(res.len(), 3);
        assert!(res.is_exact().unwrap());
        let small = res.reduce().unwrap();
        assert_eq!(small.len(), 1);
        assert!(small.is_exact().unwrap());
    }

    #[test]
    fn yoneda_reduces_to_one_cell() {
        let c = circle();
        for p in 0..c.len() {
            let y = PFunctor::yoneda(c.clone(), p, &Complex::unit(&Field::Rational));
            let red = bar_resolution(&y).unwrap().reduce().unwrap();
            assert_eq!(red.len(), 1, "at {}", c.element(p));
            assert!(red.is_exact().unwrap());
        }
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let field = Field::Rational;
        let v = make_complex(&field, &[(0, 2), (1, 1)], vec![(0, Matrix::from_i64(&field, 1, 2, &[1, 1]))]).unwrap();
        let f = Arc::new(PFunctor::constant(circle(), &v));
        let cone = NatTrans::identity(f).cone();
        assert!(cone.homology_support().is_empty());
    }
}
