//! Trace ideals and the Gorenstein property of Artinian local quotients.
//!
//! The trace of a module is the sum of the images of all its maps into
//! the ring. For a module presented by a matrix, the maps into the ring
//! are the kernel vectors of the transposed presentation, so the trace is
//! generated by the entries of that kernel. A ring is Gorenstein exactly
//! when its socle is one-dimensional, and also exactly when every
//! principal ideal equals its own double annihilator; the second form
//! yields finite certificates for the negative answer.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::poly::Polynomial;
use crate::quotient::{QuotientRing, RIdeal};
use crate::sample;
use crate::scalar::FieldScalar;
use crate::syzygy::{kernel_over_quotient, presentation_of_ideal, PresentedModule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GorensteinDecision {
    Gorenstein,
    NotGorenstein,
    /// Every checked principal ideal was its own double annihilator; the
    /// quantifier over all elements is not exhausted by sampling.
    ConsistentWithGorenstein,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GorensteinMethod {
    SocleDim,
    TraceWitness,
    EquivalenceSweep,
}

/// A certified counterexample: an ideal strictly below its double
/// annihilator (equivalently, below its trace).
#[derive(Debug, Clone)]
pub struct TraceWitness<F: FieldScalar> {
    pub ideal: RIdeal<F>,
    pub double_annihilator: RIdeal<F>,
}

#[derive(Debug, Clone)]
pub struct GorensteinVerdict<F: FieldScalar> {
    pub decision: GorensteinDecision,
    pub method: GorensteinMethod,
    pub witness: Option<TraceWitness<F>>,
    pub socle_dim: Option<usize>,
    pub seed: Option<u64>,
    pub checked_count: usize,
}

/// The trace ideal of a presented module: transpose the presentation,
/// take the kernel over the quotient, and let its entries generate. A
/// free module gives (1); the zero module gives (0).
pub fn trace_ideal<F: FieldScalar>(m: &PresentedModule<F>) -> RIdeal<F> {
    let q = m.ring();
    let transposed = m.presentation().transpose();
    let kernel = kernel_over_quotient(&transposed, q.defining())
        .expect("presentation lives in the ambient ring");
    let mut entries = Vec::new();
    for j in 0..kernel.ncols() {
        for i in 0..kernel.nrows() {
            entries.push(kernel.get(i, j).clone());
        }
    }
    RIdeal::new(q.clone(), entries)
}

/// The trace of an ideal viewed as a module over its own ring, through a
/// presentation on the reduced generators. The trace does not depend on
/// the presentation, so the canonical generating set is used rather than
/// the stored one; redundant dense generators would feed the syzygy
/// computation an avoidably wide presentation. The zero ideal is its own
/// trace.
pub fn trace_of_ideal<F: FieldScalar>(i: &RIdeal<F>) -> RIdeal<F> {
    if i.is_zero() {
        return RIdeal::zero(i.ring().clone());
    }
    let m = presentation_of_ideal(i.ring(), &i.print_gens())
        .expect("a nonzero ideal has a presentation");
    trace_ideal(&m)
}

/// An ideal is a trace ideal exactly when it equals its own trace.
pub fn is_trace_ideal<F: FieldScalar>(i: &RIdeal<F>) -> bool {
    trace_of_ideal(i).equals(i).expect("trace lives in the same ring")
}

/// Gorenstein decision by socle dimension: dimension one is a full
/// certificate either way. A negative verdict carries a principal
/// witness generated by a socle element, whose double annihilator is the
/// whole socle and therefore strictly larger.
pub fn gorenstein_by_socle<F: FieldScalar>(
    q: &QuotientRing<F>,
) -> Result<GorensteinVerdict<F>> {
    let (socle, dim) = q.socle()?;
    if dim == 1 {
        return Ok(GorensteinVerdict {
            decision: GorensteinDecision::Gorenstein,
            method: GorensteinMethod::SocleDim,
            witness: None,
            socle_dim: Some(dim),
            seed: None,
            checked_count: 1,
        });
    }
    let w = socle
        .print_gens()
        .first()
        .cloned()
        .expect("the socle of an Artinian local ring is nonzero");
    let ideal = RIdeal::new(q.clone(), vec![w]);
    let double_annihilator = q.double_annihilator(&ideal);
    Ok(GorensteinVerdict {
        decision: GorensteinDecision::NotGorenstein,
        method: GorensteinMethod::SocleDim,
        witness: Some(TraceWitness {
            ideal,
            double_annihilator,
        }),
        socle_dim: Some(dim),
        seed: None,
        checked_count: 1,
    })
}

/// Gorenstein testing through principal ideals: sweep every standard
/// monomial (by degree, then variable declaration order), then `samples`
/// seeded pseudorandom elements, checking (r) against its double
/// annihilator. A failure certifies NotGorenstein; exhausting the checks
/// only reports consistency. The socle dimension is computed alongside as
/// a cross-check and carried in the verdict.
pub fn gorenstein_by_trace<F: FieldScalar>(
    q: &QuotientRing<F>,
    samples: usize,
    seed: u64,
) -> Result<GorensteinVerdict<F>> {
    if !q.is_artinian_local()? {
        return Err(Error::NotArtinianLocal);
    }
    let socle_dim = q.socle()?.1;
    let mut sweep = q
        .standard_monomials()?
        .finite()
        .expect("Artinian local rings are finite-dimensional")
        .to_vec();
    sweep.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| b.exps().cmp(a.exps()))
    });
    let mut checked = 0usize;
    let mut found: Option<(RIdeal<F>, RIdeal<F>)> = None;
    for m in sweep {
        let gen = q.ambient().monomial_poly(m, F::one());
        let w = RIdeal::new(q.clone(), vec![gen]);
        checked += 1;
        let ann2 = q.double_annihilator(&w);
        if !w.equals(&ann2).expect("same ring") {
            found = Some((w, ann2));
            break;
        }
    }
    if found.is_none() {
        let mut rng = sample::seeded_rng(seed);
        for _ in 0..samples {
            let r = sample::random_element(q, &mut rng)?;
            let w = RIdeal::new(q.clone(), vec![r]);
            checked += 1;
            let ann2 = q.double_annihilator(&w);
            if !w.equals(&ann2).expect("same ring") {
                found = Some((w, ann2));
                break;
            }
        }
    }
    match found {
        Some((ideal, double_annihilator)) => {
            if socle_dim == 1 {
                return Err(Error::Internal(
                    "principal witness found although the socle is one-dimensional".into(),
                ));
            }
            Ok(GorensteinVerdict {
                decision: GorensteinDecision::NotGorenstein,
                method: GorensteinMethod::TraceWitness,
                witness: Some(TraceWitness {
                    ideal,
                    double_annihilator,
                }),
                socle_dim: Some(socle_dim),
                seed: Some(seed),
                checked_count: checked,
            })
        }
        None => Ok(GorensteinVerdict {
            decision: GorensteinDecision::ConsistentWithGorenstein,
            method: GorensteinMethod::TraceWitness,
            witness: None,
            socle_dim: Some(socle_dim),
            seed: Some(seed),
            checked_count: checked,
        }),
    }
}

/// Outcome of sweeping every monomial ideal of a monomial Artinian
/// quotient: the socle dimension must be one exactly when every ideal is
/// double-annihilator-closed and a trace ideal. `consistent = false`
/// would contradict the underlying theorem and signals a bug.
#[derive(Debug, Clone)]
pub struct EquivalenceReport<F: FieldScalar> {
    pub socle_dim: usize,
    pub ideal_count: usize,
    pub failures: Vec<RIdeal<F>>,
    pub consistent: bool,
}

const EQUIVALENCE_BASIS_CAP: usize = 12;

/// Enumerates every monomial ideal of `R` (the upward-closed subsets of
/// the standard monomials under divisibility) and checks each against its
/// trace and double annihilator. Requires a monomial defining ideal and
/// at most twelve standard monomials.
pub fn verify_equivalences<F: FieldScalar>(
    q: &QuotientRing<F>,
) -> Result<EquivalenceReport<F>> {
    if !q.is_artinian_local()? {
        return Err(Error::NotArtinianLocal);
    }
    if q.defining()
        .groebner_basis()
        .iter()
        .any(|g| g.terms().len() != 1)
    {
        return Err(Error::NonMonomialIdeal);
    }
    let basis = q
        .standard_monomials()?
        .finite()
        .expect("Artinian local rings are finite-dimensional")
        .to_vec();
    let d = basis.len();
    if d > EQUIVALENCE_BASIS_CAP {
        return Err(Error::Internal(format!(
            "monomial ideal enumeration supports at most {} standard monomials, found {}",
            EQUIVALENCE_BASIS_CAP, d
        )));
    }
    let socle_dim = q.socle()?.1;
    let mut divides = vec![Vec::new(); d];
    for i in 0..d {
        for j in 0..d {
            if i != j && basis[i].divides(&basis[j]) {
                divides[i].push(j);
            }
        }
    }
    let mut ideal_count = 0usize;
    let mut failures = Vec::new();
    'masks: for mask in 0u32..(1u32 << d) {
        for i in 0..d {
            if mask & (1 << i) != 0 {
                for &j in &divides[i] {
                    if mask & (1 << j) == 0 {
                        continue 'masks;
                    }
                }
            }
        }
        ideal_count += 1;
        let gens: Vec<Polynomial<F>> = (0..d)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| q.ambient().monomial_poly(basis[i].clone(), F::one()))
            .collect();
        let ideal = RIdeal::new(q.clone(), gens);
        let closed = ideal
            .equals(&q.double_annihilator(&ideal))
            .expect("same ring");
        if !closed || !is_trace_ideal(&ideal) {
            failures.push(ideal);
        }
    }
    let consistent = (socle_dim == 1) == failures.is_empty();
    Ok(EquivalenceReport {
        socle_dim,
        ideal_count,
        failures,
        consistent,
    })
}

/// `Ann(M)` for a presented module over an Artinian quotient, computed by
/// linear algebra: the elements whose action on every generator lands in
/// the column span of the presentation.
pub fn module_annihilator_linear<F: FieldScalar>(
    m: &PresentedModule<F>,
) -> Result<RIdeal<F>> {
    let q = m.ring().clone();
    let algebra = q.finite_algebra()?;
    let d = algebra.dim();
    let r = m.gens();
    let mut image_vectors = Vec::new();
    for j in 0..m.presentation().ncols() {
        let col = m.presentation().column(j);
        for b in 0..d {
            let mono = algebra.basis_poly(b);
            let mut vec = Vec::with_capacity(r * d);
            for entry in &col {
                vec.extend(algebra.element_coords(&(entry * &mono)));
            }
            image_vectors.push(vec);
        }
    }
    let image = Subspace::from_spanning(r * d, image_vectors);
    let mut constraint = Matrix::zero(0, d);
    for i in 0..r {
        // column jb of the block: residual of basis element jb in slot i
        let mut rows = vec![vec![F::zero(); d]; r * d];
        for jb in 0..d {
            let mut embedded = vec![F::zero(); r * d];
            embedded[i * d + jb] = F::one();
            for (row_idx, val) in image.reduce(&embedded).into_iter().enumerate() {
                rows[row_idx][jb] = val;
            }
        }
        constraint = constraint.stack(&Matrix::from_rows(d, rows));
    }
    let gens: Vec<Polynomial<F>> = Subspace::from_spanning(d, constraint.nullspace())
        .basis()
        .iter()
        .map(|v| algebra.coords_to_element(v))
        .collect();
    Ok(RIdeal::new(q, gens))
}

#[derive(Debug, Clone)]
pub enum CompareOutcome<F: FieldScalar> {
    Equal,
    StrictlyContained { witness: Polynomial<F> },
}

#[derive(Debug, Clone)]
pub struct CompareReport<F: FieldScalar> {
    pub trace: RIdeal<F>,
    pub double_ann: RIdeal<F>,
    pub outcome: CompareOutcome<F>,
}

/// Compares the trace of a presented module with the double annihilator
/// of the module. The trace is always contained in the double
/// annihilator; over a Gorenstein ring they agree, and a strict
/// containment is reported with an explicit separating element.
pub fn compare_trace_double_ann<F: FieldScalar>(
    m: &PresentedModule<F>,
) -> Result<CompareReport<F>> {
    let q = m.ring();
    if !q.is_artinian_local()? {
        return Err(Error::NotArtinianLocal);
    }
    let trace = trace_ideal(m);
    let ann = module_annihilator_linear(m)?;
    let double_ann = q.annihilator(&ann);
    if !double_ann.contains_ideal(&trace).expect("same ring") {
        return Err(Error::Internal(
            "trace escaped the double annihilator".into(),
        ));
    }
    let outcome = if trace.equals(&double_ann).expect("same ring") {
        CompareOutcome::Equal
    } else {
        let witness = double_ann
            .print_gens()
            .into_iter()
            .find(|g| !trace.contains(g))
            .ok_or_else(|| {
                Error::Internal("strict containment without a separating generator".into())
            })?;
        CompareOutcome::StrictlyContained { witness }
    };
    Ok(CompareReport {
        trace,
        double_ann,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Ideal;
    use crate::monomial::MonomialOrder;
    use crate::poly::PolyRing;
    use crate::scalar::{FieldDescriptor, Rational};
    use crate::syzygy::PolyMatrix;

    fn quotient(vars: &[&str], gens: &[&str]) -> QuotientRing<Rational> {
        let ring =
            PolyRing::new(FieldDescriptor::Rationals, vars, MonomialOrder::DegRevLex).unwrap();
        let defining = Ideal::parse(&ring, gens).unwrap();
        QuotientRing::new(ring, defining).unwrap()
    }

    fn rideal(q: &QuotientRing<Rational>, gens: &[&str]) -> RIdeal<Rational> {
        RIdeal::parse(q, gens).unwrap()
    }

    fn module(
        q: &QuotientRing<Rational>,
        rows: usize,
        cols: usize,
        entries: &[&str],
    ) -> PresentedModule<Rational> {
        let polys = entries
            .iter()
            .map(|s| q.ambient().parse(s).unwrap())
            .collect();
        let m = PolyMatrix::new(q.ambient().clone(), rows, cols, polys).unwrap();
        PresentedModule::new(q.clone(), m).unwrap()
    }

    #[test]
    fn trace_of_presented_modules() {
        // coker of the column (z, -y) presents (x*y, x*z) in k[x,y,z]
        let q = quotient(&["x", "y", "z"], &[]);
        let m = module(&q, 2, 1, &["z", "-y"]);
        assert!(trace_ideal(&m).equals(&rideal(&q, &["y", "z"])).unwrap());

        let q = quotient(&["x", "y"], &["x^2", "x*y"]);
        let m = module(&q, 1, 2, &["x", "y"]);
        assert!(trace_ideal(&m).equals(&rideal(&q, &["x"])).unwrap());

        let q = quotient(&["x", "y"], &["x^2", "x*y"]);
        let free = PresentedModule::free(q.clone(), 1);
        assert!(trace_ideal(&free).is_unit());
        let zero = PresentedModule::free(q.clone(), 0);
        assert!(trace_ideal(&zero).is_zero());
    }

    #[test]
    fn trace_of_ideals() {
        let q = quotient(&["x", "y", "z"], &[]);
        let i = rideal(&q, &["x*y", "x*z"]);
        assert!(trace_of_ideal(&i).equals(&rideal(&q, &["y", "z"])).unwrap());

        let q = quotient(&["x", "y"], &["x^2", "x*y"]);
        let y = rideal(&q, &["y"]);
        assert!(trace_of_ideal(&y).equals(&rideal(&q, &["x", "y"])).unwrap());

        let q = quotient(&["b", "c"], &["b^3", "c^3", "b*c"]);
        let b = rideal(&q, &["b"]);
        let tb = trace_of_ideal(&b);
        assert!(tb.equals(&rideal(&q, &["b", "c^2"])).unwrap());
        assert!(trace_of_ideal(&RIdeal::zero(q.clone())).is_zero());
    }

    #[test]
    fn trace_ideal_membership_tests() {
        let q = quotient(&["x", "y"], &["x^2", "x*y"]);
        assert!(is_trace_ideal(&rideal(&q, &["x"])));
        assert!(!is_trace_ideal(&rideal(&q, &["y"])));

        let q = quotient(&["x", "y", "z"], &[]);
        assert!(!is_trace_ideal(&rideal(&q, &["x*y", "x*z"])));
        assert!(is_trace_ideal(&rideal(&q, &["x", "y"])));

        let q = quotient(&["x", "y"], &[]);
        assert!(is_trace_ideal(&rideal(&q, &["x", "y"])));
    }

    #[test]
    fn trace_is_idempotent_and_sandwiched() {
        let q = quotient(&["x", "y"], &["x^2", "x*y"]);
        for gens in [&["y"][..], &["x"], &["x", "y"]] {
            let i = rideal(&q, gens);
            let t = trace_of_ideal(&i);
            assert!(trace_of_ideal(&t).equals(&t).unwrap());
            assert!(t.contains_ideal(&i).unwrap());
        }
        let q = quotient(&["b", "c"], &["b^3", "c^3", "b*c"]);
        let b = rideal(&q, &["b"]);
        let t = trace_of_ideal(&b);
        assert!(t.contains_ideal(&b).unwrap());
        assert!(q.double_annihilator(&b).contains_ideal(&t).unwrap());
        assert!(trace_of_ideal(&t).equals(&t).unwrap());
    }

    #[test]
    fn annihilators_are_trace_ideals() {
        let q = quotient(&["b", "c"], &["b^3", "c^3", "b*c"]);
        for gens in [&["b"][..], &["c"], &["b", "c"], &["b^2"], &["b + c"]] {
            let k = rideal(&q, gens);
            assert!(is_trace_ideal(&q.annihilator(&k)));
        }
    }

    #[test]
    fn socle_route_verdicts() {
        let v = gorenstein_by_socle(&quotient(&["x", "y"], &["x^2", "y^2"])).unwrap();
        assert_eq!(v.decision, GorensteinDecision::Gorenstein);
        assert_eq!(v.socle_dim, Some(1));
        assert!(v.witness.is_none());

        let q = quotient(&["b", "c"], &["b^3", "c^3", "b*c"]);
        let v = gorenstein_by_socle(&q).unwrap();
        assert_eq!(v.decision, GorensteinDecision::NotGorenstein);
        assert_eq!(v.socle_dim, Some(2));
        let w = v.witness.unwrap();
        assert!(!w.ideal.equals(&w.double_annihilator).unwrap());

        let v = gorenstein_by_socle(&quotient(&["x"], &["x^5"])).unwrap();
        assert_eq!(v.decision, GorensteinDecision::Gorenstein);

        assert!(matches!(
            gorenstein_by_socle(&quotient(&["x", "y"], &["x^2", "x*y"])),
            Err(Error::NotArtinianLocal)
        ));
    }

    #[test]
    fn trace_route_finds_monomial_witness() {
        let q = quotient(&["b", "c"], &["b^3", "c^3", "b*c"]);
        for seed in [0u64, 42] {
            let v = gorenstein_by_trace(&q, 5, seed).unwrap();
            assert_eq!(v.decision, GorensteinDecision::NotGorenstein);
            assert_eq!(v.method, GorensteinMethod::TraceWitness);
            assert_eq!(v.socle_dim, Some(2));
            assert_eq!(v.seed, Some(seed));
            let w = v.witness.unwrap();
            assert!(w.ideal.equals(&rideal(&q, &["b"])).unwrap());
            assert!(w
                .double_annihilator
                .equals(&rideal(&q, &["b", "c^2"]))
                .unwrap());
            // sweep order is 1, b, c, ...: the unit passes, b fails
            assert_eq!(v.checked_count, 2);
        }
    }

    #[test]
    fn trace_route_consistency_on_gorenstein_rings() {
        let v = gorenstein_by_trace(&quotient(&["x", "y"], &["x^2", "y^2"]), 100, 0).unwrap();
        assert_eq!(v.decision, GorensteinDecision::ConsistentWithGorenstein);
        assert_eq!(v.socle_dim, Some(1));
        assert_eq!(v.checked_count, 104);
        assert!(v.witness.is_none());

        let v = gorenstein_by_trace(&quotient(&["x"], &["x^3"]), 10, 7).unwrap();
        assert_eq!(v.decision, GorensteinDecision::ConsistentWithGorenstein);
        assert_eq!(v.checked_count, 13);
    }

    #[test]
    fn equivalence_sweeps() {
        let r = verify_equivalences(&quotient(&["x", "y"], &["x^2", "y^2"])).unwrap();
        assert_eq!(r.ideal_count, 6);
        assert_eq!(r.socle_dim, 1);
        assert!(r.failures.is_empty());
        assert!(r.consistent);

        let q = quotient(&["b", "c"], &["b^3", "c^3", "b*c"]);
        let r = verify_equivalences(&q).unwrap();
        assert_eq!(r.ideal_count, 10);
        assert_eq!(r.socle_dim, 2);
        assert!(!r.failures.is_empty());
        assert!(r.consistent);
        let b = rideal(&q, &["b"]);
        assert!(r.failures.iter().any(|i| i.equals(&b).unwrap()));

        let r = verify_equivalences(&quotient(&["x"], &["x^4"])).unwrap();
        assert_eq!(r.ideal_count, 5);
        assert!(r.consistent);

        assert!(matches!(
            verify_equivalences(&quotient(&["x", "y"], &["x^2 - y^2", "x*y"])),
            Err(Error::NonMonomialIdeal)
        ));
    }

    #[test]
    fn module_annihilator_by_linear_algebra() {
        let q = quotient(&["x"], &["x^4"]);
        let m = module(&q, 1, 1, &["x"]);
        assert!(module_annihilator_linear(&m)
            .unwrap()
            .equals(&rideal(&q, &["x"]))
            .unwrap());
        let free = PresentedModule::free(q.clone(), 1);
        assert!(module_annihilator_linear(&free).unwrap().is_zero());
        let zero = PresentedModule::free(q.clone(), 0);
        assert!(module_annihilator_linear(&zero).unwrap().is_unit());
    }

    #[test]
    fn trace_versus_double_annihilator() {
        let q = quotient(&["x"], &["x^4"]);
        let m = module(&q, 1, 1, &["x"]);
        let r = compare_trace_double_ann(&m).unwrap();
        assert!(matches!(r.outcome, CompareOutcome::Equal));
        assert!(r.trace.equals(&rideal(&q, &["x^3"])).unwrap());
        assert!(r.double_ann.equals(&rideal(&q, &["x^3"])).unwrap());

        let q = quotient(&["b", "c"], &["b^3", "c^3", "b*c"]);
        let m = module(&q, 2, 2, &["b", "0", "0", "c"]);
        let r = compare_trace_double_ann(&m).unwrap();
        assert!(r.trace.equals(&rideal(&q, &["b", "c"])).unwrap());
        assert!(r.double_ann.is_unit());
        match r.outcome {
            CompareOutcome::StrictlyContained { witness } => {
                assert!(r.double_ann.contains(&witness));
                assert!(!r.trace.contains(&witness));
            }
            CompareOutcome::Equal => panic!("expected strict containment"),
        }

        let q = quotient(&["x"], &["x^4"]);
        let free = PresentedModule::free(q.clone(), 1);
        let r = compare_trace_double_ann(&free).unwrap();
        assert!(matches!(r.outcome, CompareOutcome::Equal));
        assert!(r.trace.is_unit());

        let q = quotient(&["x", "y"], &["x^2", "x*y"]);
        let m = module(&q, 1, 1, &["x"]);
        assert!(matches!(
            compare_trace_double_ann(&m),
            Err(Error::NotArtinianLocal)
        ));
    }

    #[test]
    fn oracle_and_ideal_paths_agree_on_traces() {
        let q = quotient(&["b", "c"], &["b^3", "c^3", "b*c"]);
        let algebra = q.finite_algebra().unwrap();
        for gens in [&["b"][..], &["c"], &["b", "c"], &["b + c^2"]] {
            let i = rideal(&q, gens);
            let by_syzygy = trace_of_ideal(&i);
            let by_linear = RIdeal::new(q.clone(), algebra.trace_linear(i.gens()));
            assert!(by_syzygy.equals(&by_linear).unwrap());
        }
    }
}
