//! Two tame infinite families: eventually constant towers on `ℕ^op`, whose
//! support can be infinite, and periodic tails, whose stalks can fail to be
//! perfect.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::chain::{identity_components, same_field, BettiVector, ChainMap, Complex, Components};
use crate::error::{Error, Result};
use crate::funcat::{rhom, rhom_map, NatTrans, PFunctor};
use crate::linalg::Field;
use crate::poset::Poset;

/// `finite ⊕ ⊕_{i≥0} base` with copy `i` moved up by `anchor + i·stride`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailValue {
    finite: Complex,
    base: Complex,
    anchor: i32,
    stride: u32,
}

impl TailValue {
    pub fn new(finite: Complex, base: Complex, anchor: i32, stride: u32) -> Result<Self> {
        same_field(finite.field(), base.field())?;
        if stride == 0 {
            return Err(Error::Shape("tail stride must be at least 1".into()));
        }
        Ok(TailValue { finite, base, anchor, stride })
    }

    pub fn finite_only(c: Complex) -> Self {
        let base = Complex::zero(c.field());
        TailValue { finite: c, base, anchor: 0, stride: 1 }
    }

    pub fn finite(&self) -> &Complex {
        &self.finite
    }

    pub fn base(&self) -> &Complex {
        &self.base
    }

    pub fn anchor(&self) -> i32 {
        self.anchor
    }

    pub fn stride(&self) -> u32 {
        self.stride
    }

    /// The `i`-th tail copy as an ordinary complex.
    pub fn copy(&self, i: u32) -> Complex {
        self.base.shift(-(self.anchor + (i * self.stride) as i32))
    }

    /// The finite part plus the first `copies` tail copies.
    pub fn truncate(&self, copies: u32) -> Complex {
        let mut c = self.finite.clone();
        for i in 0..copies {
            c = c.direct_sum(&self.copy(i)).expect("same field");
        }
        c
    }

    pub fn betti(&self) -> TailBetti {
        TailBetti {
            finite: self.finite.homology(),
            family: self.base.homology(),
            anchor: self.anchor,
            stride: self.stride,
        }
    }

    /// Perfect exactly when the repeated slice is acyclic.
    pub fn is_perfect(&self) -> bool {
        self.base.is_acyclic()
    }

    pub fn tensor(&self, c: &Complex) -> Result<TailValue> {
        Ok(TailValue {
            finite: self.finite.tensor(c)?,
            base: self.base.tensor(c)?,
            anchor: self.anchor,
            stride: self.stride,
        })
    }

    pub fn sum(&self, other: &TailValue) -> Result<TailValue> {
        if self.stride != other.stride && !self.base.is_zero() && !other.base.is_zero() {
            return Err(Error::StrideMismatch(self.stride, other.stride));
        }
        let finite = self.finite.direct_sum(&other.finite)?;
        if other.base.is_zero() {
            return TailValue::new(finite, self.base.clone(), self.anchor, self.stride);
        }
        if self.base.is_zero() {
            return TailValue::new(finite, other.base.clone(), other.anchor, other.stride);
        }
        let anchor = self.anchor.min(other.anchor);
        let a = self.base.shift(anchor - self.anchor);
        let b = other.base.shift(anchor - other.anchor);
        TailValue::new(finite, a.direct_sum(&b)?, anchor, self.stride)
    }
}

/// Cohomology of a tail value as a finite vector plus an arithmetic family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailBetti {
    pub finite: BettiVector,
    pub family: BettiVector,
    pub anchor: i32,
    pub stride: u32,
}

impl TailBetti {
    pub fn get(&self, degree: i32) -> usize {
        let mut total = self.finite.get(degree);
        let Some(low) = self.family.iter().map(|(d, _)| d).min() else { return total };
        let mut shift = self.anchor;
        while degree - shift >= low {
            total += self.family.get(degree - shift);
            shift += self.stride as i32;
        }
        total
    }

    /// True when total cohomology is finite-dimensional.
    pub fn is_finite(&self) -> bool {
        self.family.is_zero()
    }

    /// Lowest degree carrying a tail class, if any.
    pub fn first_tail_degree(&self) -> Option<i32> {
        self.family.iter().map(|(d, _)| d + self.anchor).min()
    }
}

impl fmt::Display for TailBetti {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.finite)?;
        if !self.family.is_zero() {
            write!(f, " + {} shifted by {}+{}i (i>=0)", self.family, self.anchor, self.stride)?;
        }
        Ok(())
    }
}

/// The repeated part of a tame functor: a functor whose values are copied
/// along one global arithmetic progression of degrees.
#[derive(Clone, Debug)]
pub struct Tail {
    pub base: PFunctor,
    pub anchor: i32,
    pub stride: u32,
}

/// A functor on a finite poset whose values may carry periodic tails.
#[derive(Clone, Debug)]
pub struct TameFunctor {
    finite: PFunctor,
    tail: Option<Tail>,
}

impl TameFunctor {
    pub fn finite(f: PFunctor) -> Self {
        TameFunctor { finite: f, tail: None }
    }

    pub fn with_tail(finite: PFunctor, base: PFunctor, anchor: i32, stride: u32) -> Result<Self> {
        finite.check_same_base(&base)?;
        if stride == 0 {
            return Err(Error::Shape("tail stride must be at least 1".into()));
        }
        Ok(TameFunctor { finite, tail: Some(Tail { base, anchor, stride }) })
    }

    pub fn base(&self) -> &Arc<Poset> {
        self.finite.base()
    }

    pub fn field(&self) -> &Field {
        self.finite.field()
    }

    pub fn finite_part(&self) -> &PFunctor {
        &self.finite
    }

    pub fn tail(&self) -> Option<&Tail> {
        self.tail.as_ref()
    }

    /// The finite functor, when there is no tail.
    pub fn as_finite(&self) -> Option<&PFunctor> {
        self.tail.is_none().then_some(&self.finite)
    }

    pub fn stalk(&self, p: usize) -> TailValue {
        match &self.tail {
            None => TailValue::finite_only((**self.finite.value(p)).clone()),
            Some(t) => TailValue {
                finite: (**self.finite.value(p)).clone(),
                base: (**t.base.value(p)).clone(),
                anchor: t.anchor,
                stride: t.stride,
            },
        }
    }

    /// Applies an additive construction to the finite part and the tail slice.
    pub fn map_parts(&self, g: impl Fn(&PFunctor) -> Result<PFunctor>) -> Result<TameFunctor> {
        Ok(TameFunctor {
            finite: g(&self.finite)?,
            tail: match &self.tail {
                None => None,
                Some(t) => Some(Tail { base: g(&t.base)?, anchor: t.anchor, stride: t.stride }),
            },
        })
    }

    /// Elements where the stalk has nonzero cohomology.
    pub fn homology_support(&self) -> Vec<usize> {
        (0..self.base().len())
            .filter(|&p| {
                !self.finite.value(p).is_acyclic()
                    || self.tail.as_ref().is_some_and(|t| !t.base.value(p).is_acyclic())
            })
            .collect()
    }
}

/// The window `{0, …, m}` of `ℕ^op`: arrows run from `n + 1` to `n`.
pub fn nat_op_window(m: usize) -> Poset {
    let names: Vec<String> = (0..=m).map(|n| n.to_string()).collect();
    let rel: Vec<(String, String)> = (0..m).map(|n| (names[n + 1].clone(), names[n].clone())).collect();
    Poset::new(&format!("Nop{m}"), names, &rel).expect("a chain is a poset")
}

/// A functor on `ℕ^op` given on positions `0..=horizon` and constant, with
/// identity maps, beyond.
#[derive(Clone, Debug)]
pub struct TowerFunctor {
    name: String,
    field: Field,
    values: Vec<Arc<Complex>>,
    eventual: Arc<Complex>,
    /// `steps[n]`: position `n + 1` to position `n`.
    steps: Vec<Components>,
}

impl TowerFunctor {
    pub fn new(
        name: &str,
        values: Vec<Complex>,
        eventual: Complex,
        steps: Vec<Components>,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Shape("a tower needs at least position 0".into()));
        }
        if steps.len() != values.len() {
            return Err(Error::Shape(format!("{} steps for {} positions", steps.len(), values.len())));
        }
        let field = eventual.field().clone();
        let values: Vec<Arc<Complex>> = values.into_iter().map(Arc::new).collect();
        let eventual = Arc::new(eventual);
        let mut kept = Vec::with_capacity(steps.len());
        for (n, s) in steps.into_iter().enumerate() {
            same_field(&field, values[n].field())?;
            let upper = values.get(n + 1).unwrap_or(&eventual).clone();
            let m = ChainMap::new(upper, values[n].clone(), s)
                .map_err(|e| Error::Shape(format!("step {n}: {e}")))?;
            kept.push(m.components().clone());
        }
        Ok(TowerFunctor { name: name.to_string(), field, values, eventual, steps: kept })
    }

    /// The constant tower on `V`.
    pub fn constant(v: &Complex) -> Self {
        let id = identity_components(v);
        TowerFunctor::new("const", vec![v.clone()], v.clone(), vec![id]).expect("constant tower")
    }

    /// `V` on positions `0..=m`, zero beyond.
    pub fn truncation(v: &Complex, m: usize) -> Self {
        let mut values = vec![v.clone(); m + 1];
        values.push(Complex::zero(v.field()));
        let mut steps: Vec<Components> = (0..m).map(|_| identity_components(v)).collect();
        steps.push(Components::new());
        steps.push(Components::new());
        TowerFunctor::new(&format!("trunc{m}"), values, Complex::zero(v.field()), steps).expect("truncation")
    }

    /// The representable at `n`: `k` on positions `0..=n`.
    pub fn yoneda(field: &Field, n: usize) -> Self {
        let mut t = Self::truncation(&Complex::unit(field), n);
        t.name = format!("yoneda{n}");
        t
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Last explicitly presented position.
    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, n: usize) -> &Arc<Complex> {
        self.values.get(n).unwrap_or(&self.eventual)
    }

    pub fn eventual(&self) -> &Arc<Complex> {
        &self.eventual
    }

    /// The map from position `n + 1` to position `n`.
    pub fn step(&self, n: usize) -> Components {
        match self.steps.get(n) {
            Some(s) => s.clone(),
            None => identity_components(&self.eventual),
        }
    }

    pub fn steps(&self) -> &[Components] {
        &self.steps
    }

    /// Restriction to positions `0..=m`.
    pub fn window(&self, m: usize) -> PFunctor {
        let base = Arc::new(nat_op_window(m));
        let values = (0..=m).map(|n| self.value(n).clone()).collect();
        let edges = (0..m).map(|n| ((n + 1, n), self.step(n))).collect();
        PFunctor::new(base, &self.field, values, edges).expect("tower window")
    }

    pub fn support(&self) -> Support {
        let positions = (0..self.values.len()).filter(|&n| !self.values[n].is_acyclic()).collect();
        if self.eventual.is_acyclic() {
            Support::Finite(positions)
        } else {
            Support::Infinite { positions, from: self.values.len() }
        }
    }

    pub fn is_compact(&self) -> bool {
        matches!(self.support(), Support::Finite(_))
    }

    /// Every value is a bounded finite complex.
    pub fn is_proper(&self) -> bool {
        true
    }
}

/// Homology-essential support of a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Support {
    Finite(Vec<usize>),
    /// The listed positions below the horizon, plus every position from `from` on.
    Infinite { positions: Vec<usize>, from: usize },
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Support::Finite(v) => write!(f, "{{{}}}", list(v)),
            Support::Infinite { positions, from } => {
                write!(f, "infinite {{{}}} + [{from},inf)", list(positions))
            }
        }
    }
}

/// `rhom` computed on the window `0..=m`.
pub fn tower_rhom(f: &TowerFunctor, g: &TowerFunctor, m: usize) -> Result<Complex> {
    rhom(&f.window(m), &g.window(m))
}

/// The inclusion `τ_a → τ_b` (`a ≤ b`), or into the constant tower when `b` is `None`.
fn truncation_map(v: &Complex, a: usize, b: Option<usize>, m: usize) -> Result<NatTrans> {
    let src = TowerFunctor::truncation(v, a).window(m);
    let tgt = match b {
        Some(b) => TowerFunctor::truncation(v, b).window(m),
        None => TowerFunctor::constant(v).window(m),
    };
    let comps = (0..=m).map(|n| if n <= a { identity_components(v) } else { Components::new() }).collect();
    NatTrans::new(Arc::new(src), Arc::new(tgt), comps)
}

/// Outcome of comparing `colim_m rhom(F, τ_m)` with `rhom(F, colim_m τ_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimitComparison {
    pub lhs: BettiVector,
    pub rhs: BettiVector,
    pub comparison_rank: BettiVector,
    pub quasi_iso: bool,
    pub stages: usize,
    pub window: usize,
}

/// Compares `colim_m rhom(F, τ_m V)` with `rhom(F, const V)` on one window.
///
/// The colimit of the tame system stabilizes once `m` passes the horizon
/// of `F`; it is read off as the image of the last transition on cohomology.
pub fn truncation_colimit(f: &TowerFunctor, v: &Complex, stages: usize, window: usize) -> Result<ColimitComparison> {
    same_field(f.field(), v.field())?;
    if stages < 1 || window < stages + 1 {
        return Err(Error::UnsupportedSystem(format!("{stages} stages in a window of {window}")));
    }
    let fw = Arc::new(f.window(window));
    let id = NatTrans::identity(fw.clone());
    let last = rhom_map(&id, &truncation_map(v, stages - 1, Some(stages), window)?)?;
    let into = rhom_map(&id, &truncation_map(v, stages, None, window)?)?;
    let target = into.target().clone();
    let rhs = target.homology();
    let mut lhs = BettiVector::new();
    let mut comparison_rank = BettiVector::new();
    let mut degrees: Vec<i32> = last.target().degrees().chain(target.degrees()).collect();
    degrees.sort();
    degrees.dedup();
    for d in degrees {
        lhs.add(d, last.induced_rank(d));
        comparison_rank.add(d, into.induced_rank(d));
    }
    let quasi_iso = lhs == rhs && comparison_rank == rhs;
    Ok(ColimitComparison { lhs, rhs, comparison_rank, quasi_iso, stages, window })
}

/// Runs [`truncation_colimit`] with the automatic window and again one
/// position wider; `stable` records whether both agree.
pub fn truncation_colimit_auto(f: &TowerFunctor, v: &Complex) -> Result<(ColimitComparison, bool)> {
    let stages = f.horizon() + 2;
    let window = stages + 2;
    let a = truncation_colimit(f, v, stages, window)?;
    let b = truncation_colimit(f, v, stages, window + 1)?;
    let stable = (&a.lhs, &a.rhs, &a.comparison_rank, a.quasi_iso) == (&b.lhs, &b.rhs, &b.comparison_rank, b.quasi_iso);
    Ok((a, stable))
}

/// A tower given by explicit matrices, for file input.
pub fn tower_from_parts(
    name: &str,
    field: &Field,
    values: Vec<Complex>,
    eventual: Complex,
    steps: BTreeMap<usize, Components>,
) -> Result<TowerFunctor> {
    same_field(field, eventual.field())?;
    let n = values.len();
    let steps = (0..n).map(|i| steps.get(&i).cloned().unwrap_or_default()).collect();
    TowerFunctor::new(name, values, eventual, steps)
}

/// `k^dim` concentrated in degree 0, as a tail slice.
pub fn point_slice(field: &Field, dim: usize) -> Complex {
    Complex::concentrated(field, 0, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::make_complex;
    use crate::linalg::Matrix;

    fn k() -> Complex {
        Complex::unit(&Field::F2)
    }

    #[test]
    fn tail_with_point_slice_is_everywhere() {
        let t = TailValue::new(Complex::zero(&Field::F2), k(), 0, 1).unwrap();
        let b = t.betti();
        assert!(!t.is_perfect());
        assert!(!b.is_finite());
        for n in 0..10 {
            assert_eq!(b.get(n), 1);
        }
        assert_eq!(b.get(-1), 0);
    }

    #[test]
    fn acyclic_tail_is_perfect() {
        let f = Field::F2;
        let acyclic = make_complex(&f, &[(0, 1), (1, 1)], vec![(0, Matrix::identity(&f, 1))]).unwrap();
        let t = TailValue::new(k(), acyclic.clone(), 3, 2).unwrap();
        assert!(t.is_perfect());
        assert_eq!(t.betti().get(0), 1);
        let tensored = TailValue::new(Complex::zero(&f), k(), 0, 1).unwrap().tensor(&acyclic).unwrap();
        assert!(tensored.is_perfect());
    }

    #[test]
    fn truncation_matches_family_in_stable_range() {
        let t = TailValue::new(k(), k(), 1, 2).unwrap();
        let copies = 4;
        let trunc = t.truncate(copies).homology();
        for n in -3..(1 + (copies as i32 - 1) * 2) {
            assert_eq!(trunc.get(n), t.betti().get(n), "degree {n}");
        }
    }

    #[test]
    fn tail_sum_requires_equal_strides() {
        let a = TailValue::new(k(), k(), 0, 2).unwrap();
        let b = TailValue::new(k(), k(), 1, 3).unwrap();
        assert_eq!(a.sum(&b).unwrap_err(), Error::StrideMismatch(2, 3));
    }

    #[test]
    fn towers_and_support() {
        let c = TowerFunctor::constant(&k());
        assert!(!c.is_compact() && c.is_proper());
        let t = TowerFunctor::truncation(&k(), 3);
        assert_eq!(t.support(), Support::Finite(vec![0, 1, 2, 3]));
        let y = TowerFunctor::yoneda(&Field::F2, 0);
        assert_eq!(y.support(), Support::Finite(vec![0]));
    }

    #[test]
    fn colimit_demo() {
        let (c, stable) = truncation_colimit_auto(&TowerFunctor::constant(&k()), &k()).unwrap();
        assert!(stable);
        assert!(c.lhs.is_zero());
        assert_eq!(c.rhs, [(0, 1)].into_iter().collect());
        assert!(!c.quasi_iso);
        let (y, stable) = truncation_colimit_auto(&TowerFunctor::yoneda(&Field::F2, 0), &k()).unwrap();
        assert!(stable && y.quasi_iso);
    }
}
