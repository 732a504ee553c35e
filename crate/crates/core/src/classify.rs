//! Compactness and properness verdicts, cellular presentations, the kernel
//! classifier and its cross-checks against convolution.

use std::fmt;
use std::sync::Arc;

use crate::chain::BettiVector;
use crate::error::{Error, Result};
use crate::funcat::{bar_resolution, rhom, rhom_map, CellPresentation, NatTrans, PFunctor};
use crate::kernel::{convolve, convolve_yoneda_comparison, Kernel};
use crate::linalg::Field;
use crate::random::Generator;
use crate::report::{Report, Section};
use crate::witness::{truncation_colimit_auto, Support, TameFunctor, TowerFunctor};
use crate::Complex;

/// Anything the classifier accepts.
#[derive(Clone, Copy, Debug)]
pub enum Subject<'a> {
    Finite(&'a PFunctor),
    Tame(&'a TameFunctor),
    Tower(&'a TowerFunctor),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    Compact,
    Proper,
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Predicate::Compact => "compact",
            Predicate::Proper => "proper",
        })
    }
}

/// Why a predicate fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Offense {
    /// Nonzero cohomology at every position from `from` on.
    InfiniteSupport { from: usize },
    /// The stalk at `element` has cohomology in infinitely many degrees, starting at `degree`.
    ImperfectStalk { element: String, degree: i32 },
}

impl fmt::Display for Offense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Offense::InfiniteSupport { from } => write!(f, "infinite support from position {from}"),
            Offense::ImperfectStalk { element, degree } => {
                write!(f, "imperfect stalk at {element} from degree {degree}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub predicate: Predicate,
    pub value: bool,
    /// Homology-essential support, rendered.
    pub support: String,
    /// Per-element cohomology.
    pub stalks: Vec<(String, String)>,
    pub offending: Option<Offense>,
}

impl Verdict {
    pub fn section(&self, name: &str) -> Section {
        let mut s = Section::new(name).verdict(self.value);
        s.push("predicate", self.predicate);
        s.push("support", &self.support);
        for (e, b) in &self.stalks {
            s.push(format!("stalk {e}"), b);
        }
        if let Some(o) = &self.offending {
            s.push("offending", o);
        }
        s
    }
}

fn element_list(base: &crate::Poset, ids: &[usize]) -> String {
    format!("{{{}}}", ids.iter().map(|&i| base.element(i)).collect::<Vec<_>>().join(","))
}

/// Homology-essential support, rendered.
pub fn support(subject: Subject) -> String {
    match subject {
        Subject::Finite(f) => element_list(f.base(), &f.homology_support()),
        Subject::Tame(t) => element_list(t.base(), &t.homology_support()),
        Subject::Tower(t) => t.support().to_string(),
    }
}

fn stalks(subject: Subject) -> Vec<(String, String)> {
    match subject {
        Subject::Finite(f) => (0..f.base().len())
            .map(|p| (f.base().element(p).to_string(), f.value(p).homology().to_string()))
            .collect(),
        Subject::Tame(t) => (0..t.base().len())
            .map(|p| (t.base().element(p).to_string(), t.stalk(p).betti().to_string()))
            .collect(),
        Subject::Tower(t) => {
            let mut out: Vec<(String, String)> =
                (0..=t.horizon()).map(|n| (n.to_string(), t.value(n).homology().to_string())).collect();
            out.push((format!(">{}", t.horizon()), t.eventual().homology().to_string()));
            out
        }
    }
}

/// First element with an imperfect stalk, with the first degree of its tail.
fn imperfect(t: &TameFunctor) -> Option<Offense> {
    (0..t.base().len()).find_map(|p| {
        let s = t.stalk(p);
        (!s.is_perfect()).then(|| Offense::ImperfectStalk {
            element: t.base().element(p).to_string(),
            degree: s.betti().first_tail_degree().expect("imperfect stalk has a tail"),
        })
    })
}

fn verdict(predicate: Predicate, subject: Subject, offending: Option<Offense>) -> Verdict {
    Verdict { predicate, value: offending.is_none(), support: support(subject), stalks: stalks(subject), offending }
}

/// Finite support and perfect stalks.
pub fn is_compact(subject: Subject) -> Verdict {
    let offending = match subject {
        Subject::Finite(_) => None,
        Subject::Tame(t) => imperfect(t),
        Subject::Tower(t) => match t.support() {
            Support::Finite(_) => None,
            Support::Infinite { from, .. } => Some(Offense::InfiniteSupport { from }),
        },
    };
    verdict(Predicate::Compact, subject, offending)
}

/// Perfect stalks.
pub fn is_proper(subject: Subject) -> Verdict {
    let offending = match subject {
        Subject::Tame(t) => imperfect(t),
        Subject::Finite(_) | Subject::Tower(_) => None,
    };
    verdict(Predicate::Proper, subject, offending)
}

/// A finite cellular presentation of a compact object, from the bar
/// resolution after cancelling redundant cells.
pub fn cellularize(subject: Subject) -> Result<CellPresentation> {
    let v = is_compact(subject);
    if !v.value {
        return Err(Error::NotCompact(v.offending.map(|o| o.to_string()).unwrap_or_default()));
    }
    let f = match subject {
        Subject::Finite(f) => f.clone(),
        // Perfect tails are acyclic, so the finite part is a quasi-isomorphic summand.
        Subject::Tame(t) => t.finite_part().clone(),
        Subject::Tower(t) => t.window(t.horizon()),
    };
    bar_resolution(&f)?.reduce()
}

/// The upper bound `#strict chains × #nonzero stalk degrees` on cell counts.
pub fn cell_bound(f: &PFunctor) -> usize {
    f.base().chains().len() * f.value_degrees().len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnVerdict {
    pub element: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelVerdict {
    pub preserves_compacts: bool,
    pub columns: Vec<ColumnVerdict>,
    /// `(p, q, degree)` for the first failing column.
    pub offending: Option<(String, String, i32)>,
}

impl KernelVerdict {
    pub fn section(&self) -> Section {
        let mut s = Section::new("check-kernel").verdict(self.preserves_compacts);
        s.push("preserves_compacts", self.preserves_compacts);
        for c in &self.columns {
            s.push(format!("column {}", c.element), c.verdict.value);
        }
        if let Some((p, q, d)) = &self.offending {
            s.push("offending", format!("column {p} at {q} degree {d}"));
        }
        s
    }
}

/// Columnwise compactness: `K` preserves compacts iff every `K(p, −)` is compact.
pub fn check_kernel(kernel: &Kernel) -> Result<KernelVerdict> {
    let mut columns = Vec::new();
    let mut offending = None;
    for p in 0..kernel.left().len() {
        let col = kernel.column(p)?;
        let verdict = is_compact(Subject::Tame(&col));
        if offending.is_none() {
            if let Some(Offense::ImperfectStalk { element, degree }) = &verdict.offending {
                offending = Some((kernel.left().element(p).to_string(), element.clone(), *degree));
            }
        }
        columns.push(ColumnVerdict { element: kernel.left().element(p).to_string(), verdict });
    }
    let preserves_compacts = columns.iter().all(|c| c.verdict.value);
    Ok(KernelVerdict { preserves_compacts, columns, offending })
}

/// Compactness of `y(p) ∗ K` for every `p`, computed by convolution.
pub fn generator_check(kernel: &Kernel) -> Result<Vec<(String, Verdict)>> {
    let unit = Complex::unit(kernel.field());
    (0..kernel.left().len())
        .map(|p| {
            let y = PFunctor::yoneda(kernel.left().clone(), p, &unit);
            let conv = convolve(&y, kernel)?;
            Ok((kernel.left().element(p).to_string(), is_compact(Subject::Tame(&conv))))
        })
        .collect()
}

/// Checks the columnwise verdict against convolution of generators and of
/// random compact objects.
pub fn cross_validate_kernel(kernel: &Kernel, samples: usize, seed: u64) -> Result<Report> {
    let verdict = check_kernel(kernel)?;
    let mut report = Report::new("cross-validate");
    // Only agreement decides the outcome here; the kernel verdict is evidence.
    let mut kv = verdict.section();
    kv.verdict = None;
    report.push(kv);

    let generators = generator_check(kernel)?;
    let all_generators = generators.iter().all(|(_, v)| v.value);
    let mut gen = Section::new("generators");
    for (p, v) in &generators {
        gen.push(format!("compact y({p})*K"), v.value);
        if let Some(o) = &v.offending {
            gen.push(format!("offending y({p})*K"), o);
        }
    }
    if kernel.carrier().as_finite().is_some() {
        let mut identified = true;
        for p in 0..kernel.left().len() {
            let ok = convolve_yoneda_comparison(kernel, p)?.is_quasi_iso();
            gen.push(format!("y({})*K ~ column", kernel.left().element(p)), ok);
            identified &= ok;
        }
        gen.set_verdict(identified && (all_generators == verdict.preserves_compacts));
    } else {
        // Tail slices are compared stalkwise: the column and the convolution
        // must carry the same symbolic cohomology.
        let mut identified = true;
        for p in 0..kernel.left().len() {
            let y = PFunctor::yoneda(kernel.left().clone(), p, &Complex::unit(kernel.field()));
            let conv = convolve(&y, kernel)?;
            let col = kernel.column(p)?;
            let ok = (0..kernel.right().len()).all(|q| conv.stalk(q).betti() == col.stalk(q).betti());
            gen.push(format!("y({})*K ~ column", kernel.left().element(p)), ok);
            identified &= ok;
        }
        gen.set_verdict(identified && (all_generators == verdict.preserves_compacts));
    }
    report.push(gen);

    let mut rng = Generator::new(seed, kernel.field().clone());
    let mut all_samples = true;
    let mut sam = Section::new("samples");
    for i in 0..samples {
        let f = rng.functor(kernel.left(), 4);
        let c = is_compact(Subject::Tame(&convolve(&f, kernel)?));
        sam.push(format!("sample {i}"), c.value);
        all_samples &= c.value;
    }
    // A compact-preserving kernel must send every sample to a compact object.
    sam.set_verdict(!verdict.preserves_compacts || all_samples);
    report.push(sam);

    let agreement = (verdict.preserves_compacts == all_generators) && (!verdict.preserves_compacts || all_samples);
    report.push(Section::new("agreement").verdict(agreement).with("seed", seed).with("samples", samples));
    Ok(report)
}

/// Directed systems for which the operational check is available.
pub enum DirectedSystem {
    /// `G_0 → G_1 → … → G_n` with designated colimit `C` and cocone `G_n → C`.
    Chain { maps: Vec<NatTrans>, cocone: NatTrans },
    /// The truncations `τ_0 V → τ_1 V → …` with colimit the constant tower.
    Truncations(Complex),
}

/// Compares `colim_i rhom(F, G_i)` with `rhom(F, colim G_i)`.
pub fn compactness_witness(subject: Subject, system: &DirectedSystem) -> Result<Report> {
    let mut report = Report::new("compactness-witness");
    let mut sec = Section::new("comparison");
    match (subject, system) {
        (Subject::Finite(f), DirectedSystem::Chain { maps, cocone }) => {
            // Composability is checked by composing the whole system.
            if let Some(first) = maps.first() {
                let mut total = NatTrans::identity(first.source().clone());
                for m in maps {
                    total = m.after(&total).map_err(|e| Error::UnsupportedSystem(e.to_string()))?;
                }
                cocone.after(&total).map_err(|e| Error::UnsupportedSystem(e.to_string()))?;
            }
            // A finite chain has its last stage as colimit, so the colimit of
            // the mapping complexes is the last one.
            let id = NatTrans::identity(Arc::new(f.clone()));
            let cmp = rhom_map(&id, cocone)?;
            let lhs = cmp.source().homology();
            let rhs = cmp.target().homology();
            let mut rank = BettiVector::new();
            for d in cmp.target().degrees() {
                rank.add(d, cmp.induced_rank(d));
            }
            let ok = cmp.is_quasi_iso();
            sec.set_verdict(ok);
            sec.push("stages", maps.len() + 1);
            sec.push("lhs", lhs);
            sec.push("rhs", rhs);
            sec.push("comparison_rank", rank);
            sec.push("quasi_iso", ok);
        }
        (Subject::Tower(t), DirectedSystem::Truncations(v)) => {
            let (c, stable) = truncation_colimit_auto(t, v)?;
            sec.set_verdict(c.quasi_iso);
            sec.push("stages", c.stages);
            sec.push("window", c.window);
            sec.push("lhs", &c.lhs);
            sec.push("rhs", &c.rhs);
            sec.push("comparison_rank", &c.comparison_rank);
            sec.push("quasi_iso", c.quasi_iso);
            sec.push("window_stable", stable);
        }
        _ => return Err(Error::UnsupportedSystem("no operational check for this subject and system".into())),
    }
    report.push(sec);
    Ok(report)
}

/// `rhom(F, G)` cohomology for towers on a window large enough for both.
pub fn tower_rhom_betti(f: &TowerFunctor, g: &TowerFunctor) -> Result<BettiVector> {
    let m = f.horizon().max(g.horizon()) + 2;
    Ok(rhom(&f.window(m), &g.window(m))?.homology())
}

pub fn field_of<'a>(subject: Subject<'a>) -> &'a Field {
    match subject {
        Subject::Finite(f) => f.field(),
        Subject::Tame(t) => t.field(),
        Subject::Tower(t) => t.field(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::identity_kernel;
    use crate::poset::Poset;
    use crate::witness::TowerFunctor;

    #[test]
    fn tower_gap() {
        let k = Complex::unit(&Field::Rational);
        let t = TowerFunctor::constant(&k);
        assert!(is_proper(Subject::Tower(&t)).value);
        let c = is_compact(Subject::Tower(&t));
        assert!(!c.value);
        assert!(matches!(c.offending, Some(Offense::InfiniteSupport { .. })));
        let tr = TowerFunctor::truncation(&k, 3);
        assert!(is_compact(Subject::Tower(&tr)).value);
        assert_eq!(cellularize(Subject::Tower(&tr)).unwrap().len(), 1);
        assert!(cellularize(Subject::Tower(&t)).is_err());
    }

    #[test]
    fn identity_kernel_passes() {
        let p = Arc::new(Poset::chain("A", &["a", "b", "c"]));
        let k = identity_kernel(p, &Field::F2);
        assert!(check_kernel(&k).unwrap().preserves_compacts);
        let r = cross_validate_kernel(&k, 3, 1).unwrap();
        assert_eq!(r.verdict(), Some(true));
    }

    #[test]
    fn yoneda_cellularizes_to_one_cell() {
        let p = Arc::new(Poset::chain("A", &["a", "b", "c"]));
        let y = PFunctor::yoneda(p, 1, &Complex::unit(&Field::F2));
        let c = cellularize(Subject::Finite(&y)).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.is_exact().unwrap());
    }
}
