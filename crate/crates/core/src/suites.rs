//! Built-in check suites: golden cases with exact expected values, and
//! randomized identity checks over a fixed family of Artinian rings.
//! Shared by the `check` subcommand and the integration tests, so the
//! command line verifies exactly what the test suite verifies.

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::PolyRing;
use crate::quotient::{QuotientRing, RIdeal};
use crate::sample::{random_element, random_ideal, random_presented_module, seeded_rng};
use crate::scalar::{FieldDescriptor, Rational};
use crate::session::{parse_session, run_session, SessionOptions};
use crate::syzygy::{PolyMatrix, PresentedModule};
use crate::trace::{
    compare_trace_double_ann, gorenstein_by_trace, is_trace_ideal, trace_of_ideal,
    verify_equivalences, CompareOutcome, GorensteinDecision,
};

/// One named check: pass or fail, with a short detail string (counts on
/// success, the discrepancy on failure).
#[derive(Debug, Clone)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }
}

type Check = std::result::Result<String, String>;

fn case(cases: &mut Vec<CaseResult>, name: &str, body: impl FnOnce() -> Check) {
    let (passed, detail) = match body() {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    cases.push(CaseResult {
        name: name.to_string(),
        passed,
        detail,
    });
}

fn err_str(e: Error) -> String {
    e.to_string()
}

/// The fixed ring family the randomized checks quantify over: chains
/// QQ[x]/(x^n), complete intersections QQ[x,y]/(x^a, y^b), and mixed
/// monomial quotients of dimension at most eight. The chains and complete
/// intersections have one-dimensional socle, the mixed rings do not, so
/// both outcomes of every dichotomy are exercised.
pub fn family_rings() -> Result<Vec<QuotientRing<Rational>>> {
    let mut spec: Vec<(&[&str], Vec<String>)> = Vec::new();
    for n in 2..=6 {
        spec.push((&["x"], vec![format!("x^{n}")]));
    }
    for a in 2..=3 {
        for b in 2..=3 {
            spec.push((&["x", "y"], vec![format!("x^{a}"), format!("y^{b}")]));
        }
    }
    let mixed: &[&[&str]] = &[
        &["x^2", "x*y", "y^2"],
        &["x^3", "x*y", "y^2"],
        &["x^3", "x*y", "y^3"],
        &["x^3", "x^2*y", "x*y^2", "y^3"],
        &["x^4", "x*y", "y^2"],
        &["x^4", "x^2*y", "y^2"],
        &["x^2", "x*y", "y^4"],
        &["x^3", "y^3", "x*y"],
    ];
    for gens in mixed {
        spec.push((&["x", "y"], gens.iter().map(|s| s.to_string()).collect()));
    }
    let mut rings = Vec::with_capacity(spec.len());
    for (vars, gens) in spec {
        let ring = PolyRing::<Rational>::new(
            FieldDescriptor::Rationals,
            vars,
            MonomialOrder::DegRevLex,
        )?;
        let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
        let defining =
            Ideal::parse(&ring, &refs).map_err(|e| Error::Internal(e.to_string()))?;
        rings.push(QuotientRing::new(ring, defining)?);
    }
    Ok(rings)
}

fn qq_ring(vars: &[&str], gens: &[&str]) -> Result<QuotientRing<Rational>> {
    let ring =
        PolyRing::<Rational>::new(FieldDescriptor::Rationals, vars, MonomialOrder::DegRevLex)?;
    let defining = Ideal::parse(&ring, gens).map_err(|e| Error::Internal(e.to_string()))?;
    QuotientRing::new(ring, defining)
}

fn parse_rideal(
    q: &QuotientRing<Rational>,
    gens: &[&str],
) -> std::result::Result<RIdeal<Rational>, String> {
    RIdeal::parse(q, gens).map_err(|e| e.to_string())
}

/// Golden cases: fixed inputs with exactly pinned canonical outputs.
pub fn paper_suite() -> SuiteReport {
    let mut cases = Vec::new();

    case(&mut cases, "trace of (x*y, x*z) over QQ[x,y,z]", || {
        let q = qq_ring(&["x", "y", "z"], &[]).map_err(err_str)?;
        let i = parse_rideal(&q, &["x*y", "x*z"])?;
        let t = trace_of_ideal(&i);
        if t.to_string() != "(y, z)" {
            return Err(format!("trace printed {t}, expected (y, z)"));
        }
        if t.equals(&i).map_err(err_str)? {
            return Err("(x*y, x*z) compared equal to its trace".into());
        }
        Ok("trace (y, z), not a trace ideal".into())
    });

    case(&mut cases, "double annihilators over QQ[x,y]/(x^2, x*y)", || {
        let q = qq_ring(&["x", "y"], &["x^2", "x*y"]).map_err(err_str)?;
        let x = parse_rideal(&q, &["x"])?;
        let y = parse_rideal(&q, &["y"])?;
        let ax = q.double_annihilator(&x);
        let ay = q.double_annihilator(&y);
        if ax.to_string() != "(x)" {
            return Err(format!("annann (x) printed {ax}, expected (x)"));
        }
        if ay.to_string() != "(x, y)" {
            return Err(format!("annann (y) printed {ay}, expected (x, y)"));
        }
        if !is_trace_ideal(&x) {
            return Err("(x) not recognized as a trace ideal".into());
        }
        if is_trace_ideal(&y) {
            return Err("(y) wrongly recognized as a trace ideal".into());
        }
        if q.is_artinian_local().map_err(err_str)? {
            return Err("QQ[x,y]/(x^2, x*y) wrongly reported Artinian".into());
        }
        Ok("annann (x)=(x), annann (y)=(x, y), istrace true/false, not Artinian".into())
    });

    case(&mut cases, "non Gorenstein verdict over QQ[b,c]/(b^3, c^3, b*c)", || {
        let q = qq_ring(&["b", "c"], &["b^3", "c^3", "b*c"]).map_err(err_str)?;
        let v = gorenstein_by_trace(&q, 20, 0).map_err(err_str)?;
        if v.decision != GorensteinDecision::NotGorenstein {
            return Err(format!("decision {:?}, expected NotGorenstein", v.decision));
        }
        if v.socle_dim != Some(2) {
            return Err(format!("socle dim {:?}, expected 2", v.socle_dim));
        }
        let w = v.witness.ok_or("missing witness")?;
        if w.ideal.equals(&w.double_annihilator).map_err(err_str)? {
            return Err("witness equals its double annihilator".into());
        }
        let tw = trace_of_ideal(&w.ideal);
        if tw.equals(&w.ideal).map_err(err_str)? {
            return Err("witness equals its trace".into());
        }
        Ok(format!("witness {} with double annihilator {}", w.ideal, w.double_annihilator))
    });

    case(&mut cases, "trace of (b) along both routes", || {
        let q = qq_ring(&["b", "c"], &["b^3", "c^3", "b*c"]).map_err(err_str)?;
        let b = parse_rideal(&q, &["b"])?;
        let by_syzygy = trace_of_ideal(&b);
        if by_syzygy.to_string() != "(b, c^2)" {
            return Err(format!("syzygy trace printed {by_syzygy}, expected (b, c^2)"));
        }
        let algebra = q.finite_algebra().map_err(err_str)?;
        let by_linear = RIdeal::new(q.clone(), algebra.trace_linear(b.gens()));
        if !by_syzygy.equals(&by_linear).map_err(err_str)? {
            return Err(format!(
                "routes disagree: syzygy {by_syzygy}, linear {by_linear}"
            ));
        }
        Ok("both routes give (b, c^2)".into())
    });

    case(&mut cases, "homomorphism images from (b)", || {
        // A hom (b) -> R is a choice of image killing Ann(b) = (c, b^2);
        // c is not a valid image because c*c is nonzero, so the images
        // span exactly {b, b^2, c^2}
        let q = qq_ring(&["b", "c"], &["b^3", "c^3", "b*c"]).map_err(err_str)?;
        let algebra = q.finite_algebra().map_err(err_str)?;
        let b = q.ambient().var(0);
        let c = q.ambient().var(1);
        let homs = algebra.hom_module(&[b.clone()]);
        let images: Vec<_> = homs.iter().map(|h| h[0].clone()).collect();
        let span = algebra.span_of(&images);
        if span.dim() != 3 {
            return Err(format!("hom image span has dimension {}", span.dim()));
        }
        if span.contains(&algebra.element_coords(&c)) {
            return Err("b -> c extends to a homomorphism although c*c is nonzero".into());
        }
        let b2 = &b * &b;
        let c2 = &c * &c;
        for probe in [&b, &b2, &c2] {
            if !span.contains(&algebra.element_coords(probe)) {
                return Err(format!("expected image {probe} is not reachable"));
            }
        }
        Ok("images span {b, b^2, c^2}; b -> c is not a homomorphism".into())
    });

    case(&mut cases, "diagonal module splitting trace from double annihilator", || {
        let q = qq_ring(&["b", "c"], &["b^3", "c^3", "b*c"]).map_err(err_str)?;
        let b = q.ambient().var(0);
        let c = q.ambient().var(1);
        let zero = q.ambient().zero();
        let pres = PolyMatrix::new(q.ambient().clone(), 2, 2, vec![b, zero.clone(), zero, c])
            .map_err(err_str)?;
        let m = PresentedModule::new(q.clone(), pres).map_err(err_str)?;
        let r = compare_trace_double_ann(&m).map_err(err_str)?;
        if r.trace.to_string() != "(b, c)" {
            return Err(format!("trace printed {}, expected (b, c)", r.trace));
        }
        if r.double_ann.to_string() != "(1)" {
            return Err(format!("double annihilator printed {}, expected (1)", r.double_ann));
        }
        match r.outcome {
            CompareOutcome::StrictlyContained { .. } => Ok("trace (b, c) inside (1)".into()),
            CompareOutcome::Equal => Err("outcome Equal, expected strict containment".into()),
        }
    });

    SuiteReport {
        name: "paper",
        cases,
    }
}

/// Randomized identity checks over the ring family. All randomness is
/// derived from `seed`, so a report is reproducible bit for bit.
pub fn property_suite(seed: u64) -> SuiteReport {
    let mut cases = Vec::new();
    let rings = match family_rings() {
        Ok(r) => r,
        Err(e) => {
            case(&mut cases, "ring family construction", || Err(err_str(e)));
            return SuiteReport {
                name: "property",
                cases,
            };
        }
    };

    case(&mut cases, "principal traces equal double annihilators", || {
        if rings.len() < 15 {
            return Err(format!("ring family has only {} members", rings.len()));
        }
        let mut checked = 0usize;
        for (k, q) in rings.iter().enumerate() {
            let mut rng = seeded_rng(seed.wrapping_add(k as u64));
            for _ in 0..20 {
                let r = random_element(q, &mut rng).map_err(err_str)?;
                let i = RIdeal::new(q.clone(), vec![r.clone()]);
                let t = trace_of_ideal(&i);
                let a = q.double_annihilator(&i);
                if !t.equals(&a).map_err(err_str)? {
                    return Err(format!(
                        "over {q}: trace of ({r}) is {t} but the double annihilator is {a}"
                    ));
                }
                checked += 1;
            }
        }
        Ok(format!("{} principal ideals over {} rings", checked, rings.len()))
    });

    case(&mut cases, "syzygy and linear traces agree", || {
        let mut checked = 0usize;
        for (k, q) in rings.iter().enumerate() {
            let algebra = q.finite_algebra().map_err(err_str)?;
            let mut rng = seeded_rng(seed.wrapping_add(1000 + k as u64));
            let mut ideals = Vec::new();
            for _ in 0..20 {
                let r = random_element(q, &mut rng).map_err(err_str)?;
                ideals.push(RIdeal::new(q.clone(), vec![r]));
            }
            for _ in 0..6 {
                ideals.push(random_ideal(q, &mut rng).map_err(err_str)?);
            }
            for i in ideals {
                let by_syzygy = trace_of_ideal(&i);
                let by_linear = RIdeal::new(q.clone(), algebra.trace_linear(i.gens()));
                if !by_syzygy.equals(&by_linear).map_err(err_str)? {
                    return Err(format!(
                        "over {q}: syzygy route {by_syzygy}, linear route {by_linear}"
                    ));
                }
                checked += 1;
            }
        }
        let q = qq_ring(&["b", "c"], &["b^3", "c^3", "b*c"]).map_err(err_str)?;
        let b = parse_rideal(&q, &["b"])?;
        let by_linear = RIdeal::new(
            q.clone(),
            q.finite_algebra().map_err(err_str)?.trace_linear(b.gens()),
        );
        if !trace_of_ideal(&b).equals(&by_linear).map_err(err_str)? {
            return Err("routes disagree on (b) over QQ[b,c]/(b^3, c^3, b*c)".into());
        }
        checked += 1;
        Ok(format!("{checked} ideals"))
    });

    case(&mut cases, "equivalence sweeps are consistent", || {
        let mut ideals = 0usize;
        for q in &rings {
            let r = verify_equivalences(q).map_err(err_str)?;
            if !r.consistent {
                return Err(format!(
                    "over {q}: socle dim {} with {} failing ideals of {}",
                    r.socle_dim,
                    r.failures.len(),
                    r.ideal_count
                ));
            }
            ideals += r.ideal_count;
        }
        Ok(format!("{} monomial ideals over {} rings", ideals, rings.len()))
    });

    case(&mut cases, "module traces lie in double annihilators", || {
        let mut checked = 0usize;
        for (k, q) in rings.iter().enumerate() {
            let mut rng = seeded_rng(seed.wrapping_add(2000 + k as u64));
            for _ in 0..50 {
                let m = random_presented_module(q, &mut rng).map_err(err_str)?;
                // containment is enforced inside the comparison; an error
                // here is a counterexample
                compare_trace_double_ann(&m)
                    .map_err(|e| format!("over {q}: {e}"))?;
                checked += 1;
            }
        }
        Ok(format!("{} modules over {} rings", checked, rings.len()))
    });

    case(&mut cases, "annihilators are trace ideals and traces are idempotent", || {
        let mut checked = 0usize;
        for (k, q) in rings.iter().enumerate() {
            let mut rng = seeded_rng(seed.wrapping_add(3000 + k as u64));
            for _ in 0..6 {
                let i = random_ideal(q, &mut rng).map_err(err_str)?;
                let ann = q.annihilator(&i);
                if !is_trace_ideal(&ann) {
                    return Err(format!("over {q}: Ann{i} = {ann} is not a trace ideal"));
                }
                let t = trace_of_ideal(&i);
                if !trace_of_ideal(&t).equals(&t).map_err(err_str)? {
                    return Err(format!("over {q}: trace of {i} is not idempotent"));
                }
                checked += 1;
            }
        }
        Ok(format!("{checked} ideals"))
    });

    case(&mut cases, "modules over one dimensional socles compare Equal", || {
        let mut checked = 0usize;
        let mut members = 0usize;
        for (k, q) in rings.iter().enumerate() {
            let (_, socle_dim) = q.socle().map_err(err_str)?;
            if socle_dim != 1 {
                continue;
            }
            members += 1;
            let mut rng = seeded_rng(seed.wrapping_add(4000 + k as u64));
            for _ in 0..50 {
                let m = random_presented_module(q, &mut rng).map_err(err_str)?;
                let r = compare_trace_double_ann(&m).map_err(err_str)?;
                if let CompareOutcome::StrictlyContained { witness } = r.outcome {
                    return Err(format!(
                        "over {q}: trace {} strictly inside {} (witness {witness})",
                        r.trace, r.double_ann
                    ));
                }
                checked += 1;
            }
        }
        if members < 2 {
            return Err(format!("only {members} rings with one dimensional socle"));
        }
        Ok(format!("{checked} modules over {members} rings"))
    });

    case(&mut cases, "session output is reproducible", || {
        let src = "\
ring R = QQ[b,c]/(b^3, c^3, b*c);\n\
trace (b);\n\
ann (b);\n\
annann (b);\n\
socle R;\n\
gorenstein R;\n\
equiv R;\n";
        let mut outputs = Vec::new();
        for json in [false, true] {
            let opts = SessionOptions {
                json,
                ..SessionOptions::default()
            };
            let mut runs = Vec::new();
            for _ in 0..2 {
                let ast =
                    parse_session(src, MonomialOrder::DegRevLex).map_err(|e| e.to_string())?;
                let (lines, fail) = run_session(&ast, &opts);
                if let Some(f) = fail {
                    return Err(format!("session failed at {}:{}: {}", f.line, f.col, f.message));
                }
                runs.push(lines.join("\n"));
            }
            if runs[0] != runs[1] {
                return Err("repeated runs differ".into());
            }
            outputs.push(runs[0].len());
        }
        Ok(format!(
            "text and json outputs byte identical across runs ({} and {} bytes)",
            outputs[0], outputs[1]
        ))
    });

    SuiteReport {
        name: "property",
        cases,
    }
}
