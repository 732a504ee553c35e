//! Bounded cochain complexes of finite-dimensional vector spaces.
//!
//! Grading is cohomological: `d` raises degree by one. Signs follow the
//! Koszul rule, `d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy` and, on the hom complex,
//! `d(f) = d∘f - (-1)^|f| f∘d`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

/// Per-degree matrices of a degree-0 graded map; absent degrees are zero.
pub type Components = BTreeMap<i32, Matrix>;

/// Graded dimensions of cohomology, finitely supported.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BettiVector(BTreeMap<i32, usize>);

impl BettiVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, degree: i32) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn add(&mut self, degree: i32, count: usize) {
        if count > 0 {
            *self.0.entry(degree).or_insert(0) += count;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .map(|(&d, &c)| if d.rem_euclid(2) == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.0.iter().map(|(&d, &c)| (d, c))
    }

    /// Betti vector of `C[k]` given that of `C`.
    pub fn shifted(&self, k: i32) -> Self {
        self.iter().map(|(d, c)| (d - k, c)).collect()
    }

    pub fn sum(&self, other: &Self) -> Self {
        self.iter().chain(other.iter()).collect()
    }

    /// Künneth over a field: the Betti vector of a tensor product.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                out.add(a + b, x * y);
            }
        }
        out
    }

    /// Same data with degrees negated (homological indexing).
    pub fn homological(&self) -> Self {
        self.iter().map(|(d, c)| (-d, c)).collect()
    }
}

impl FromIterator<(i32, usize)> for BettiVector {
    fn from_iter<T: IntoIterator<Item = (i32, usize)>>(iter: T) -> Self {
        let mut out = Self::new();
        for (d, c) in iter {
            out.add(d, c);
        }
        out
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}:{c}")?;
        }
        write!(f, "}}")
    }
}

/// A bounded cochain complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    field: Field,
    dims: BTreeMap<i32, usize>,
    /// `diffs[n]`: degree `n` to `n + 1`, stored only when nonzero.
    diffs: BTreeMap<i32, Matrix>,
}

impl Complex {
    pub fn new(field: Field, dims: BTreeMap<i32, usize>, diffs: BTreeMap<i32, Matrix>) -> Result<Self> {
        let dims: BTreeMap<i32, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let dim = |n: i32| dims.get(&n).copied().unwrap_or(0);
        let mut kept = BTreeMap::new();
        for (n, m) in diffs {
            if m.field() != &field {
                return Err(Error::FieldMismatch(field, m.field().clone()));
            }
            if m.shape() != (dim(n + 1), dim(n)) {
                return Err(Error::Shape(format!(
                    "differential at degree {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dim(n + 1),
                    dim(n)
                )));
            }
            if !m.is_zero() {
                kept.insert(n, m);
            }
        }
        let c = Complex { field, dims, diffs: kept };
        for (&n, m) in &c.diffs {
            if let Some(next) = c.diffs.get(&(n + 1)) {
                if !next.mul(m).is_zero() {
                    return Err(Error::NotDifferential(n));
                }
            }
        }
        Ok(c)
    }

    pub fn zero(field: &Field) -> Self {
        Complex { field: field.clone(), dims: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// `k^dim` placed in a single degree.
    pub fn concentrated(field: &Field, degree: i32, dim: usize) -> Self {
        let mut dims = BTreeMap::new();
        if dim > 0 {
            dims.insert(degree, dim);
        }
        Complex { field: field.clone(), dims, diffs: BTreeMap::new() }
    }

    /// The ground field in degree 0.
    pub fn unit(field: &Field) -> Self {
        Self::concentrated(field, 0, 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.dims.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn diff(&self, degree: i32) -> Option<&Matrix> {
        self.diffs.get(&degree)
    }

    pub fn diffs(&self) -> &BTreeMap<i32, Matrix> {
        &self.diffs
    }

    /// The differential out of `degree`, materialized even when zero.
    pub fn d(&self, degree: i32) -> Matrix {
        match self.diffs.get(&degree) {
            Some(m) => m.clone(),
            None => Matrix::zeros(&self.field, self.dim(degree + 1), self.dim(degree)),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&n, &d)| if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn homology(&self) -> BettiVector {
        let ranks: BTreeMap<i32, usize> = self.diffs.iter().map(|(&n, m)| (n, m.rank())).collect();
        let rank = |n: i32| ranks.get(&n).copied().unwrap_or(0);
        self.dims.iter().map(|(&n, &d)| (n, d - rank(n) - rank(n - 1))).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology().is_zero()
    }

    /// `C[k]`, with `C[k]^n = C^(n+k)` and differential `(-1)^k d`.
    pub fn shift(&self, k: i32) -> Complex {
        let dims = self.dims.iter().map(|(&n, &d)| (n - k, d)).collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&n, m)| (n - k, if k.rem_euclid(2) == 1 { m.neg() } else { m.clone() }))
            .collect();
        Complex { field: self.field.clone(), dims, diffs }
    }

    pub fn direct_sum(&self, other: &Complex) -> Result<Complex> {
        same_field(&self.field, &other.field)?;
        let mut dims = self.dims.clone();
        for (&n, &d) in &other.dims {
            *dims.entry(n).or_insert(0) += d;
        }
        let dim = |n: i32| dims.get(&n).copied().unwrap_or(0);
        let mut diffs = BTreeMap::new();
        let degrees: Vec<i32> = self.diffs.keys().chain(other.diffs.keys()).copied().collect();
        for n in degrees {
            let mut m = Matrix::zeros(&self.field, dim(n + 1), dim(n));
            m.set_block(0, 0, &self.d(n));
            m.set_block(self.dim(n + 1), self.dim(n), &other.d(n));
            diffs.insert(n, m);
        }
        Complex::new(self.field.clone(), dims, diffs)
    }

    /// Tensor product. In degree `n` the basis runs over `i` ascending
    /// (degrees of `self`), block `self^i ⊗ other^(n-i)` in Kronecker order.
    pub fn tensor(&self, other: &Complex) -> Result<Complex> {
        same_field(&self.field, &other.field)?;
        let layout = PairLayout::tensor(self, other);
        let f = &self.field;
        let mut diffs = BTreeMap::new();
        for &n in layout.dims.keys() {
            let rows = layout.dim(n + 1);
            if rows == 0 {
                continue;
            }
            let mut m = Matrix::zeros(f, rows, layout.dim(n));
            for &(i, off, _) in layout.blocks(n) {
                let j = n - i;
                let (a, b) = (self.dim(i), other.dim(j));
                if let (Some(da), Some(off2)) = (self.diff(i), layout.offset(n + 1, i + 1)) {
                    m.set_block(off2, off, &da.kron(&Matrix::identity(f, b)));
                }
                if let (Some(db), Some(off2)) = (other.diff(j), layout.offset(n + 1, i)) {
                    let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
                    m.add_block(off2, off, &Matrix::identity(f, a).kron(db).scale_i64(sign));
                }
            }
            diffs.insert(n, m);
        }
        Complex::new(f.clone(), layout.dims.clone(), diffs)
    }

    /// Hom complex: degree `n` is `⊕_m Hom(self^m, other^(m+n))`, blocks by
    /// `m` ascending, each a row-major vectorized matrix.
    pub fn hom(&self, other: &Complex) -> Result<Complex> {
        same_field(&self.field, &other.field)?;
        let layout = PairLayout::hom(self, other);
        let f = &self.field;
        let mut diffs = BTreeMap::new();
        for &n in layout.dims.keys() {
            let rows = layout.dim(n + 1);
            if rows == 0 {
                continue;
            }
            let mut m = Matrix::zeros(f, rows, layout.dim(n));
            for &(src_m, off, _) in layout.blocks(n) {
                let (a, b) = (self.dim(src_m), other.dim(src_m + n));
                // d_other ∘ f stays in block m.
                if let (Some(db), Some(off2)) = (other.diff(src_m + n), layout.offset(n + 1, src_m)) {
                    m.add_block(off2, off, &db.kron(&Matrix::identity(f, a)));
                }
                // f ∘ d_self lands in block m - 1.
                if let (Some(da), Some(off2)) = (self.diff(src_m - 1), layout.offset(n + 1, src_m - 1)) {
                    let sign = if n.rem_euclid(2) == 0 { -1 } else { 1 };
                    m.add_block(off2, off, &Matrix::identity(f, b).kron(&da.transpose()).scale_i64(sign));
                }
            }
            diffs.insert(n, m);
        }
        Complex::new(f.clone(), layout.dims.clone(), diffs)
    }

    /// Re-reads the complex in another field.
    pub fn coerce(&self, field: &Field) -> Result<Complex> {
        let diffs = self
            .diffs
            .iter()
            .map(|(&n, m)| Ok((n, m.coerce(field)?)))
            .collect::<Result<_>>()?;
        Complex::new(field.clone(), self.dims.clone(), diffs)
    }
}

pub(crate) fn same_field(a: &Field, b: &Field) -> Result<()> {
    if a != b {
        return Err(Error::FieldMismatch(a.clone(), b.clone()));
    }
    Ok(())
}

/// Block bookkeeping for tensor and hom complexes: in each total degree, the
/// list of `(key, offset, size)` where `key` is the degree in the first factor.
pub(crate) struct PairLayout {
    dims: BTreeMap<i32, usize>,
    blocks: BTreeMap<i32, Vec<(i32, usize, usize)>>,
}

impl PairLayout {
    fn build(entries: impl Iterator<Item = (i32, i32, usize)>) -> Self {
        let mut blocks: BTreeMap<i32, Vec<(i32, usize, usize)>> = BTreeMap::new();
        let mut dims = BTreeMap::new();
        let mut sorted: Vec<_> = entries.filter(|e| e.2 > 0).collect();
        sorted.sort();
        for (n, key, size) in sorted {
            let off = dims.entry(n).or_insert(0usize);
            blocks.entry(n).or_default().push((key, *off, size));
            *off += size;
        }
        PairLayout { dims, blocks }
    }

    pub(crate) fn tensor(a: &Complex, b: &Complex) -> Self {
        Self::build(
            a.dims
                .iter()
                .flat_map(|(&i, &x)| b.dims.iter().map(move |(&j, &y)| (i + j, i, x * y))),
        )
    }

    pub(crate) fn hom(a: &Complex, b: &Complex) -> Self {
        Self::build(
            a.dims
                .iter()
                .flat_map(|(&m, &x)| b.dims.iter().map(move |(&k, &y)| (k - m, m, x * y))),
        )
    }

    fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    fn blocks(&self, n: i32) -> &[(i32, usize, usize)] {
        self.blocks.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub(crate) fn offset(&self, n: i32, key: i32) -> Option<usize> {
        self.blocks(n).iter().find(|b| b.0 == key).map(|b| b.1)
    }
}

/// Components of `f ⊗ g : A⊗B → A'⊗B'` (both degree 0).
pub(crate) fn tensor_components(
    a: &Complex,
    b: &Complex,
    a2: &Complex,
    b2: &Complex,
    f: &Components,
    g: &Components,
) -> Components {
    let field = a.field();
    let src = PairLayout::tensor(a, b);
    let tgt = PairLayout::tensor(a2, b2);
    let mut out = Components::new();
    for (&n, blocks) in &src.blocks {
        let rows = tgt.dim(n);
        if rows == 0 {
            continue;
        }
        let mut m = Matrix::zeros(field, rows, src.dim(n));
        let mut any = false;
        for &(i, off, _) in blocks {
            let (Some(fi), Some(gj), Some(off2)) = (f.get(&i), g.get(&(n - i)), tgt.offset(n, i)) else {
                continue;
            };
            m.set_block(off2, off, &fi.kron(gj));
            any = true;
        }
        if any {
            out.insert(n, m);
        }
    }
    out
}

/// Components of `φ ↦ b∘φ∘a : Hom(C, D) → Hom(C', D')` for `a: C' → C`, `b: D → D'`.
pub(crate) fn hom_components(
    c: &Complex,
    d: &Complex,
    c2: &Complex,
    d2: &Complex,
    a: &Components,
    b: &Components,
) -> Components {
    let field = c.field();
    let src = PairLayout::hom(c, d);
    let tgt = PairLayout::hom(c2, d2);
    let mut out = Components::new();
    for (&n, blocks) in &src.blocks {
        let rows = tgt.dim(n);
        if rows == 0 {
            continue;
        }
        let mut m = Matrix::zeros(field, rows, src.dim(n));
        let mut any = false;
        for &(k, off, _) in blocks {
            let (Some(am), Some(bm), Some(off2)) = (a.get(&k), b.get(&(k + n)), tgt.offset(n, k)) else {
                continue;
            };
            m.set_block(off2, off, &bm.kron(&am.transpose()));
            any = true;
        }
        if any {
            out.insert(n, m);
        }
    }
    out
}

pub(crate) fn identity_components(c: &Complex) -> Components {
    c.dims().iter().map(|(&n, &d)| (n, Matrix::identity(c.field(), d))).collect()
}

/// `g ∘ f` on components, given the dims of the three complexes are consistent.
pub(crate) fn compose_components(g: &Components, f: &Components) -> Components {
    f.iter()
        .filter_map(|(n, fm)| g.get(n).map(|gm| (*n, gm.mul(fm))))
        .filter(|(_, m)| !m.is_zero())
        .collect()
}

/// Degree-0 map of complexes.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: Arc<Complex>,
    target: Arc<Complex>,
    comps: Components,
}

impl ChainMap {
    pub fn new(source: Arc<Complex>, target: Arc<Complex>, comps: Components) -> Result<Self> {
        same_field(source.field(), target.field())?;
        let mut kept = Components::new();
        for (n, m) in comps {
            if m.shape() != (target.dim(n), source.dim(n)) {
                return Err(Error::Shape(format!(
                    "component at degree {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(n),
                    source.dim(n)
                )));
            }
            if !m.is_zero() {
                kept.insert(n, m);
            }
        }
        let f = ChainMap { source, target, comps: kept };
        f.check_commutes()?;
        Ok(f)
    }

    fn check_commutes(&self) -> Result<()> {
        let degrees: Vec<i32> = self.source.degrees().collect();
        for n in degrees {
            let lhs = self.target.d(n).mul(&self.component(n));
            let rhs = self.component(n + 1).mul(&self.source.d(n));
            if lhs != rhs {
                return Err(Error::NotChainMap(n));
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<Complex>) -> Self {
        let comps = identity_components(&c);
        ChainMap { source: c.clone(), target: c, comps }
    }

    pub fn zero(source: Arc<Complex>, target: Arc<Complex>) -> Self {
        ChainMap { source, target, comps: Components::new() }
    }

    pub fn source(&self) -> &Arc<Complex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Complex> {
        &self.target
    }

    pub fn components(&self) -> &Components {
        &self.comps
    }

    pub fn component(&self, degree: i32) -> Matrix {
        match self.comps.get(&degree) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.source.field(), self.target.dim(degree), self.source.dim(degree)),
        }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &ChainMap) -> Result<ChainMap> {
        if **inner.target() != *self.source {
            return Err(Error::Shape("composable maps must share the middle complex".into()));
        }
        Ok(ChainMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            comps: compose_components(&self.comps, &inner.comps),
        })
    }

    /// Mapping cone: `cone^n = source^(n+1) ⊕ target^n`,
    /// `d(c, x) = (-d c, f(c) + d x)`.
    pub fn cone(&self) -> Complex {
        let (s, t) = (&*self.source, &*self.target);
        let f = s.field();
        let dims: BTreeMap<i32, usize> = s
            .degrees()
            .map(|n| n - 1)
            .chain(t.degrees())
            .map(|n| (n, s.dim(n + 1) + t.dim(n)))
            .collect();
        let mut diffs = BTreeMap::new();
        for &n in dims.keys() {
            let rows = s.dim(n + 2) + t.dim(n + 1);
            if rows == 0 {
                continue;
            }
            let mut m = Matrix::zeros(f, rows, s.dim(n + 1) + t.dim(n));
            m.set_block(0, 0, &s.d(n + 1).neg());
            m.set_block(s.dim(n + 2), 0, &self.component(n + 1));
            m.set_block(s.dim(n + 2), s.dim(n + 1), &t.d(n));
            diffs.insert(n, m);
        }
        Complex::new(f.clone(), dims, diffs).expect("cone of a chain map is a complex")
    }

    pub fn is_quasi_iso(&self) -> bool {
        self.cone().is_acyclic()
    }

    /// Rank of the induced map on cohomology in `degree`.
    pub fn induced_rank(&self, degree: i32) -> usize {
        let cycles = self.source.d(degree).nullspace();
        let image = self.component(degree).mul(&cycles);
        let boundaries = self.target.d(degree - 1);
        image.hstack(&boundaries).rank() - boundaries.rank()
    }
}

/// Convenience for building a complex from `(degree, dim)` pairs and
/// `(degree, matrix)` differentials.
pub fn make_complex(field: &Field, dims: &[(i32, usize)], diffs: Vec<(i32, Matrix)>) -> Result<Complex> {
    Complex::new(field.clone(), dims.iter().copied().collect(), diffs.into_iter().collect())
}

pub fn direct_sum_map(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let s = Arc::new(f.source.direct_sum(&g.source)?);
    let t = Arc::new(f.target.direct_sum(&g.target)?);
    let mut comps = Components::new();
    for n in s.degrees() {
        let mut m = Matrix::zeros(s.field(), t.dim(n), s.dim(n));
        m.set_block(0, 0, &f.component(n));
        m.set_block(f.target.dim(n), f.source.dim(n), &g.component(n));
        comps.insert(n, m);
    }
    ChainMap::new(s, t, comps)
}

pub fn tensor_map(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let s = Arc::new(f.source.tensor(&g.source)?);
    let t = Arc::new(f.target.tensor(&g.target)?);
    let comps = tensor_components(&f.source, &g.source, &f.target, &g.target, &f.comps, &g.comps);
    ChainMap::new(s, t, comps)
}

/// `φ ↦ b∘φ∘a` from `Hom(C, D)` to `Hom(C', D')`, for `a: C' → C` and `b: D → D'`.
pub fn hom_map(a: &ChainMap, b: &ChainMap) -> Result<ChainMap> {
    let s = Arc::new(a.target.hom(&b.source)?);
    let t = Arc::new(a.source.hom(&b.target)?);
    let comps = hom_components(&a.target, &b.source, &a.source, &b.target, &a.comps, &b.comps);
    ChainMap::new(s, t, comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::F2
    }

    fn two_term(field: &Field) -> Complex {
        // k^2 in degree 0, k in degree 1, d = [1 0].
        make_complex(field, &[(0, 2), (1, 1)], vec![(0, Matrix::from_i64(field, 1, 2, &[1, 0]))]).unwrap()
    }

    #[test]
    fn unit_has_homology_in_degree_zero() {
        let h = Complex::unit(&f2()).homology();
        assert_eq!(h, [(0, 1)].into_iter().collect());
    }

    #[test]
    fn acyclic_two_term() {
        let f = f2();
        let c = make_complex(&f, &[(0, 1), (1, 1)], vec![(0, Matrix::identity(&f, 1))]).unwrap();
        assert!(c.homology().is_zero());
    }

    #[test]
    fn row_reduction_example() {
        for f in [f2(), Field::Rational] {
            assert_eq!(two_term(&f).homology().to_string(), "{0:1}");
        }
    }

    #[test]
    fn rejects_bad_shapes_and_non_differentials() {
        let f = Field::Rational;
        let err = make_complex(&f, &[(0, 2), (1, 1)], vec![(0, Matrix::identity(&f, 2))]).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
        let err = make_complex(
            &f,
            &[(0, 1), (1, 1), (2, 1)],
            vec![(0, Matrix::identity(&f, 1)), (1, Matrix::identity(&f, 1))],
        )
        .unwrap_err();
        assert_eq!(err, Error::NotDifferential(0));
    }

    #[test]
    fn shift_moves_homology() {
        let c = two_term(&Field::Rational);
        for k in -3..=3 {
            let h = c.shift(k).homology();
            for n in -5..=5 {
                assert_eq!(h.get(n), c.homology().get(n + k));
            }
        }
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = Arc::new(two_term(&Field::Rational));
        let id = ChainMap::identity(c);
        assert!(id.cone().is_acyclic());
        assert!(id.is_quasi_iso());
    }

    #[test]
    fn zero_map_is_not_quasi_iso() {
        let k = Arc::new(Complex::unit(&f2()));
        assert!(!ChainMap::zero(k.clone(), k).is_quasi_iso());
    }

    #[test]
    fn tensor_unit_law() {
        let f = Field::prime(5).unwrap();
        let c = two_term(&f).direct_sum(&Complex::concentrated(&f, -1, 1)).unwrap();
        let t = Complex::unit(&f).tensor(&c).unwrap();
        assert_eq!(t, c);
    }

    #[test]
    fn chain_map_rejects_non_commuting() {
        let f = f2();
        let c = Arc::new(make_complex(&f, &[(0, 1), (1, 1)], vec![(0, Matrix::identity(&f, 1))]).unwrap());
        let d = Arc::new(Complex::concentrated(&f, 0, 1));
        // c -> d: degree 0 identity. d(f(x)) = 0 but f(d(x)) = 0 too as d has no degree 1.
        // Commutes: target has no degree 1. Now map d -> c: degree-0 identity fails.
        assert!(ChainMap::new(c.clone(), d.clone(), [(0, Matrix::identity(&f, 1))].into()).is_ok());
        assert_eq!(
            ChainMap::new(d, c, [(0, Matrix::identity(&f, 1))].into()).unwrap_err(),
            Error::NotChainMap(0)
        );
    }

    #[test]
    fn hom_of_unit_is_identity() {
        let f = Field::Rational;
        let c = two_term(&f);
        assert_eq!(Complex::unit(&f).hom(&c).unwrap(), c);
    }

    #[test]
    fn induced_rank_on_cohomology() {
        let f = f2();
        let c = Arc::new(two_term(&f));
        let id = ChainMap::identity(c.clone());
        assert_eq!(id.induced_rank(0), 1);
        assert_eq!(id.induced_rank(1), 0);
    }
}
