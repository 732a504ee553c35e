//! Restriction along a monotone map and its two Kan adjoints, with checks
//! that the restriction embeds `Fun(Q)` as a bi-reflective subcategory.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chain::{identity_components, BettiVector, Complex};
use crate::classify::{cellularize, is_compact, is_proper, Subject};
use crate::error::{Error, Result};
use crate::funcat::{counit_left, kan_left, kan_left_adjunct, kan_right, NatTrans, PFunctor};
use crate::linalg::Field;
use crate::poset::MonotoneMap;
use crate::random::Generator;
use crate::report::{Report, Section};
use crate::witness::TameFunctor;

/// `p ↦ G(q(p))`.
pub fn restrict(q: &MonotoneMap, g: &PFunctor) -> Result<PFunctor> {
    g.pullback(q)
}

pub fn restrict_tame(q: &MonotoneMap, g: &TameFunctor) -> Result<TameFunctor> {
    g.map_parts(|f| f.pullback(q))
}

/// Left adjoint of restriction.
pub fn loc_left(q: &MonotoneMap, f: &PFunctor) -> Result<PFunctor> {
    kan_left(q, f)
}

/// Right adjoint of restriction.
pub fn loc_right(q: &MonotoneMap, f: &PFunctor) -> Result<PFunctor> {
    kan_right(q, f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Verified,
    /// The counit fails at `witness`; `betti` is the cohomology of
    /// `loc_left(restrict(y(witness)))` there.
    Refuted { witness: String, betti: BettiVector },
}

#[derive(Clone, Debug)]
pub struct Bireflection {
    pub map: MonotoneMap,
    pub field: Field,
    pub status: Status,
}

impl Bireflection {
    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn section(&self) -> Section {
        let mut s = Section::new("bireflective").verdict(self.is_verified());
        s.push("map", self.map.name());
        s.push("source", self.map.source().name());
        s.push("target", self.map.target().name());
        if let Status::Refuted { witness, betti } = &self.status {
            s.push("witness", witness);
            s.push("counit_source_betti", betti);
            s.push("counit_source_betti_homological", betti.homological());
        }
        s
    }
}

/// Checks the counit `loc_left(restrict(y(x))) → y(x)` at every `x ∈ Q`.
pub fn check_bireflective(q: &MonotoneMap, field: &Field) -> Result<Bireflection> {
    let target = q.target().clone();
    let unit = Complex::unit(field);
    for x in 0..target.len() {
        let y = PFunctor::yoneda(target.clone(), x, &unit);
        let counit = counit_left(q, &y)?;
        if !counit.is_quasi_iso() {
            let failing = counit.failures()[0];
            return Ok(Bireflection {
                map: q.clone(),
                field: field.clone(),
                status: Status::Refuted {
                    witness: target.element(failing).to_string(),
                    betti: counit.source().value(failing).homology(),
                },
            });
        }
    }
    Ok(Bireflection { map: q.clone(), field: field.clone(), status: Status::Verified })
}

/// The comparison `loc_left(y(p)) → y(q(p))`, adjoint to the identity of `y(p)`.
pub fn yoneda_image(q: &MonotoneMap, p: usize, field: &Field) -> Result<NatTrans> {
    let unit = Complex::unit(field);
    let yp = Arc::new(PFunctor::yoneda(q.source().clone(), p, &unit));
    let yq = PFunctor::yoneda(q.target().clone(), q.apply(p), &unit);
    let pulled = Arc::new(yq.pullback(q)?);
    // y(p) sits inside the pullback: both are `k` on the up-set of `p`.
    let comps = (0..q.source().len())
        .map(|r| if q.source().leq(p, r) { identity_components(&unit) } else { Default::default() })
        .collect();
    let alpha = NatTrans::new(yp.clone(), pulled, comps)?;
    kan_left_adjunct(q, &yp, &yq, &alpha)
}

fn sample(rng: &mut Generator, q: &MonotoneMap) -> TameFunctor {
    let base = q.target().clone();
    let finite = rng.functor(&base, 5);
    if rng.chance(0.25) {
        let tail = rng.representation(&base, 1);
        let stride = 1 + rng.below(2) as u32;
        TameFunctor::with_tail(finite, tail, 0, stride).expect("same base")
    } else {
        TameFunctor::finite(finite)
    }
}

/// Compactness detection, generation by localized generators and
/// properness transfer on random objects of `Fun(Q)`.
pub fn transfer_report(b: &Bireflection, samples: usize, seed: u64) -> Result<Report> {
    if !b.is_verified() {
        return Err(Error::NotVerified(format!("map `{}` is not bi-reflective", b.map.name())));
    }
    let q = &b.map;
    let mut rng = Generator::new(seed, b.field.clone());
    let mut report = Report::new("transfer-report");
    report.push(b.section());

    let mut generators: BTreeMap<usize, bool> = BTreeMap::new();
    let mut detection = Section::new("compactness-detection");
    let mut generation = Section::new("generation");
    let mut properness = Section::new("properness-transfer");
    let (mut det_ok, mut gen_ok, mut prop_ok) = (true, true, true);
    let mut compact_samples = 0;
    for i in 0..samples {
        let g = sample(&mut rng, q);
        let r = restrict_tame(q, &g)?;
        let cg = is_compact(Subject::Tame(&g)).value;
        let cr = is_compact(Subject::Tame(&r)).value;
        detection.push(format!("sample {i}"), format!("restricted={cr} original={cg}"));
        det_ok &= !cr || cg;

        let pg = is_proper(Subject::Tame(&g)).value;
        let pr = is_proper(Subject::Tame(&r)).value;
        properness.push(format!("sample {i}"), format!("restricted={pr} original={pg}"));
        prop_ok &= pg == pr;

        if cg {
            compact_samples += 1;
            let pres = cellularize(Subject::Tame(&g))?;
            let mut ok = pres.is_exact()?;
            for cell in pres.cells() {
                let x = cell.element;
                let good = match generators.get(&x) {
                    Some(&v) => v,
                    None => {
                        let v = match (0..q.source().len()).find(|&p| q.apply(p) == x) {
                            Some(p) => yoneda_image(q, p, &b.field)?.is_quasi_iso(),
                            None => false,
                        };
                        generators.insert(x, v);
                        v
                    }
                };
                ok &= good;
            }
            generation.push(format!("sample {i}"), format!("cells={} ok={ok}", pres.len()));
            gen_ok &= ok;
        }
    }
    for (x, v) in &generators {
        generation.push(format!("generator {}", q.target().element(*x)), v);
    }
    generation.push("compact_samples", compact_samples);
    detection.set_verdict(det_ok);
    generation.set_verdict(gen_ok);
    properness.set_verdict(prop_ok);
    report.push(detection);
    report.push(generation);
    report.push(properness);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{face_poset, Poset};

    fn circle() -> Arc<Poset> {
        let f = |a: &str, b: &str| vec![a.to_string(), b.to_string()];
        Arc::new(face_poset("tri", &[f("a", "b"), f("b", "c"), f("a", "c")]).unwrap())
    }

    #[test]
    fn collapsing_a_circle_is_refuted() {
        let pt = Arc::new(Poset::point("pt", "*"));
        let q = MonotoneMap::collapse(circle(), pt).unwrap();
        let b = check_bireflective(&q, &Field::F2).unwrap();
        match &b.status {
            Status::Refuted { witness, betti } => {
                assert_eq!(witness, "*");
                assert_eq!(betti.homological().to_string(), "{0:1, 1:1}");
            }
            Status::Verified => panic!("collapse of a circle must fail"),
        }
        assert!(matches!(transfer_report(&b, 1, 0), Err(Error::NotVerified(_))));
    }

    #[test]
    fn collapsing_a_cone_is_verified() {
        let p = Arc::new(Poset::from_strs("V", &["a", "b", "top"], &[("a", "top"), ("b", "top")]).unwrap());
        let pt = Arc::new(Poset::point("pt", "*"));
        let q = MonotoneMap::collapse(p, pt).unwrap();
        let b = check_bireflective(&q, &Field::Rational).unwrap();
        assert!(b.is_verified());
        let r = transfer_report(&b, 5, 2).unwrap();
        assert_eq!(r.verdict(), Some(true));
    }

    #[test]
    fn identity_passes_everything() {
        let q = MonotoneMap::identity(circle());
        let b = check_bireflective(&q, &Field::F2).unwrap();
        assert!(b.is_verified());
        for p in 0..q.source().len() {
            assert!(yoneda_image(&q, p, &Field::F2).unwrap().is_quasi_iso());
        }
        assert_eq!(transfer_report(&b, 5, 9).unwrap().verdict(), Some(true));
    }

    #[test]
    fn hexagon_to_triangle_is_verified() {
        let f = |a: &str, b: &str| vec![a.to_string(), b.to_string()];
        let hex = Arc::new(
            face_poset(
                "hex",
                &[f("a", "m1"), f("m1", "b"), f("b", "m2"), f("m2", "c"), f("c", "m3"), f("m3", "a")],
            )
            .unwrap(),
        );
        let send = [
            ("a", "a"), ("b", "b"), ("c", "c"),
            ("m1", "a-b"), ("m2", "b-c"), ("m3", "a-c"),
            ("a-m1", "a-b"), ("m1-b", "a-b"), ("b-m2", "b-c"),
            ("m2-c", "b-c"), ("c-m3", "a-c"), ("a-m3", "a-c"),
        ];
        let pairs: Vec<(String, String)> = send.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        let q = MonotoneMap::from_pairs("coarsen", hex, circle(), &pairs).unwrap();
        let b = check_bireflective(&q, &Field::F2).unwrap();
        assert!(b.is_verified());
        let g = PFunctor::constant(circle(), &Complex::unit(&Field::F2));
        assert!(counit_left(&q, &g).unwrap().is_quasi_iso());
        assert!(crate::funcat::unit_right(&q, &g).unwrap().is_quasi_iso());
        assert_eq!(transfer_report(&b, 10, 4).unwrap().verdict(), Some(true));
    }
}
