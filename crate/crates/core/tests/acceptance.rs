//! The nine acceptance gates. One line per criterion is printed; the
//! test fails if any gate fails. Golden values are exact string and
//! ideal equalities; the randomized gates delegate to the built-in
//! suites at seed 0.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use tracealg::sample::seeded_rng;
use tracealg::{
    gorenstein_by_trace, is_trace_ideal, paper_suite, parse_session, property_suite, run_session,
    trace_of_ideal, FieldDescriptor, GorensteinDecision, Ideal, MonomialOrder, PolyRing,
    QuotientRing, RIdeal, Rational, SessionOptions, SuiteReport,
};

type Outcome = Result<String, String>;

struct Gate {
    n: usize,
    what: &'static str,
    outcome: Outcome,
}

fn quotient(vars: &[&str], gens: &[&str]) -> QuotientRing<Rational> {
    let ring = PolyRing::new(FieldDescriptor::Rationals, vars, MonomialOrder::DegRevLex).unwrap();
    let defining = Ideal::parse(&ring, gens).unwrap();
    QuotientRing::new(ring, defining).unwrap()
}

fn rideal(q: &QuotientRing<Rational>, gens: &[&str]) -> RIdeal<Rational> {
    RIdeal::parse(q, gens).unwrap()
}

fn expect(cond: bool, label: &str) -> Outcome {
    if cond {
        Ok(String::new())
    } else {
        Err(format!("{label} does not hold"))
    }
}

fn within(start: Instant, budget: Duration, detail: String) -> Outcome {
    let elapsed = start.elapsed();
    if elapsed <= budget {
        Ok(format!("{detail}; {elapsed:.0?}"))
    } else {
        Err(format!("{detail}; exceeded {budget:?} at {elapsed:?}"))
    }
}

/// The named case of a suite, as a gate outcome.
fn suite_case(report: &SuiteReport, name: &str) -> Outcome {
    let case = report
        .cases
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| format!("suite {} has no case named {name}", report.name))?;
    if case.passed {
        Ok(case.detail.clone())
    } else {
        Err(case.detail.clone())
    }
}

fn join(parts: Vec<Outcome>) -> Outcome {
    let mut details = Vec::new();
    for p in parts {
        details.push(p?);
    }
    details.retain(|d| !d.is_empty());
    Ok(details.join("; "))
}

fn golden_trace() -> Outcome {
    let start = Instant::now();
    let q = quotient(&["x", "y", "z"], &[]);
    let i = rideal(&q, &["x*y", "x*z"]);
    let t = trace_of_ideal(&i);
    let printed = t.to_string();
    if printed != "(y, z)" {
        return Err(format!("trace printed {printed}, expected (y, z)"));
    }
    if is_trace_ideal(&i) {
        return Err("(x*y, x*z) claimed to be a trace ideal".into());
    }
    within(start, Duration::from_secs(1), "trace (y, z), istrace false".into())
}

fn golden_double_annihilators() -> Outcome {
    let start = Instant::now();
    let q = quotient(&["x", "y"], &["x^2", "x*y"]);
    let x = rideal(&q, &["x"]);
    let y = rideal(&q, &["y"]);
    let ax = q.double_annihilator(&x).to_string();
    if ax != "(x)" {
        return Err(format!("annann (x) printed {ax}"));
    }
    let ay = q.double_annihilator(&y).to_string();
    if ay != "(x, y)" {
        return Err(format!("annann (y) printed {ay}"));
    }
    join(vec![
        expect(is_trace_ideal(&x), "istrace (x)"),
        expect(!is_trace_ideal(&y), "istrace (y) = false"),
        expect(
            !q.is_artinian_local().unwrap(),
            "the ring is not Artinian local",
        ),
        within(
            start,
            Duration::from_secs(1),
            "annann (x)=(x), annann (y)=(x, y)".into(),
        ),
    ])
}

fn golden_gorenstein_verdict() -> Outcome {
    let start = Instant::now();
    let q = quotient(&["b", "c"], &["b^3", "c^3", "b*c"]);
    let verdict = gorenstein_by_trace(&q, 20, 0).map_err(|e| e.to_string())?;
    if verdict.decision != GorensteinDecision::NotGorenstein {
        return Err(format!("decision {:?}", verdict.decision));
    }
    if verdict.socle_dim != Some(2) {
        return Err(format!("socle dim {:?}", verdict.socle_dim));
    }
    let w = verdict.witness.ok_or("missing witness")?;
    let tw = trace_of_ideal(&w.ideal);
    if tw.equals(&w.ideal).unwrap() {
        return Err("witness equals its own trace".into());
    }
    let b = rideal(&q, &["b"]);
    let by_syzygy = trace_of_ideal(&b);
    if by_syzygy.to_string() != "(b, c^2)" {
        return Err(format!("trace (b) printed {by_syzygy}"));
    }
    let algebra = q.finite_algebra().map_err(|e| e.to_string())?;
    let by_linear = RIdeal::new(q.clone(), algebra.trace_linear(b.gens()));
    if !by_syzygy.equals(&by_linear).unwrap() {
        return Err("syzygy and linear traces of (b) differ".into());
    }
    within(
        start,
        Duration::from_secs(2),
        format!("NotGorenstein, witness {}, both routes (b, c^2)", w.ideal),
    )
}

const GOLDEN_SESSION: &str = "\
# every command over several rings
ring R = QQ[x,y,z];
ideal I = (x*y, x*z);
gb I;
trace I;
istrace I;
nf x^2*y + x*z, I;
ring A = local QQ[x,y]/(x^2, x*y);
annann (x);
annann (y);
istrace (x);
artinian A;
ring B = QQ[b,c]/(b^3, c^3, b*c);
ideal J = (b);
trace J;
ann J;
annann J;
socle B;
artinian B;
gorenstein B samples=5 seed=1;
equiv B;
module M = coker [[b, 0]; [0, c]];
compare M;
ring P = GF(7)[x];
gb (x^2 - 1, x^3 - x);
ring C = QQ[x,y]/(x^2, y^2);
gorenstein C;
";

fn determinism_and_fuzz() -> Outcome {
    let ast = parse_session(GOLDEN_SESSION, MonomialOrder::DegRevLex)
        .map_err(|e| format!("golden session fails to parse: {e}"))?;
    let mut renders = Vec::new();
    for json in [false, true] {
        let opts = SessionOptions {
            json,
            ..SessionOptions::default()
        };
        let (first, fail) = run_session(&ast, &opts);
        if let Some(f) = fail {
            return Err(format!("golden session failed at {}:{}: {}", f.line, f.col, f.message));
        }
        let (second, _) = run_session(&ast, &opts);
        if first != second {
            return Err("repeated runs differ".into());
        }
        renders.push(first.join("\n"));
    }

    const CHARSET: &[u8] = b"xyabcIRMS ()[],;=+-*/^#1234qwgtn\n";
    let templates = [
        "ring R = QQ[x,y]/(x^2, x*y);\nideal I = (y);\ntrace I;\n",
        "ring B = QQ[b,c]/(b^3, c^3, b*c);\ngorenstein B samples=2 seed=1;\n",
        "ring P = GF(7)[x];\ngb (x^2 - 1);\nnf x^4, (x^2 - 1);\n",
        "ring R = QQ[x];\nmodule M = coker [[x]];\nsocle R;\n",
    ];
    let mut rng = seeded_rng(27);
    let mut parsed_ok = 0usize;
    let mut executed = 0usize;
    for round in 0..100_000 {
        let text: String = if round % 5 < 3 {
            let len = rng.gen_range(0..80);
            (0..len)
                .map(|_| *CHARSET.choose(&mut rng).unwrap() as char)
                .collect()
        } else {
            let mut bytes = templates.choose(&mut rng).unwrap().as_bytes().to_vec();
            for _ in 0..rng.gen_range(1..=5) {
                if bytes.is_empty() {
                    break;
                }
                let pos = rng.gen_range(0..bytes.len());
                match rng.gen_range(0..3) {
                    0 => bytes[pos] = *CHARSET.choose(&mut rng).unwrap(),
                    1 => {
                        bytes.remove(pos);
                    }
                    _ => bytes.insert(pos, *CHARSET.choose(&mut rng).unwrap()),
                }
            }
            match String::from_utf8(bytes) {
                Ok(s) => s,
                Err(_) => continue,
            }
        };
        if let Ok(ast) = parse_session(&text, MonomialOrder::DegRevLex) {
            parsed_ok += 1;
            if executed < 3000 {
                let (_, _) = run_session(&ast, &SessionOptions::default());
                executed += 1;
            }
        }
    }
    Ok(format!(
        "golden session byte-identical in text ({}B) and json ({}B); 100000 fuzzed inputs, {parsed_ok} parsed, {executed} executed, no crash",
        renders[0].len(),
        renders[1].len(),
    ))
}

#[test]
fn acceptance_criteria() {
    let paper = paper_suite();
    let property = property_suite(0);
    let gates = vec![
        Gate {
            n: 1,
            what: "golden trace and istrace over QQ[x,y,z]",
            outcome: golden_trace(),
        },
        Gate {
            n: 2,
            what: "golden double annihilators over QQ[x,y]/(x^2, x*y)",
            outcome: golden_double_annihilators(),
        },
        Gate {
            n: 3,
            what: "certified non-Gorenstein verdict and two-route trace over QQ[b,c]/(b^3, c^3, b*c)",
            outcome: golden_gorenstein_verdict(),
        },
        Gate {
            n: 4,
            what: "principal traces equal double annihilators across the ring family",
            outcome: suite_case(&property, "principal traces equal double annihilators"),
        },
        Gate {
            n: 5,
            what: "syzygy and linear trace routes agree",
            outcome: suite_case(&property, "syzygy and linear traces agree"),
        },
        Gate {
            n: 6,
            what: "equivalence sweeps match socle dimensions",
            outcome: suite_case(&property, "equivalence sweeps are consistent"),
        },
        Gate {
            n: 7,
            what: "trace containment, annihilator traces, idempotence",
            outcome: join(vec![
                suite_case(&property, "module traces lie in double annihilators"),
                suite_case(
                    &property,
                    "annihilators are trace ideals and traces are idempotent",
                ),
            ]),
        },
        Gate {
            n: 8,
            what: "module comparisons: Equal on Gorenstein members, strict on the diagonal module",
            outcome: join(vec![
                suite_case(&property, "modules over one dimensional socles compare Equal"),
                suite_case(&paper, "diagonal module splitting trace from double annihilator"),
            ]),
        },
        Gate {
            n: 9,
            what: "deterministic output and parser robustness",
            outcome: determinism_and_fuzz(),
        },
    ];
    let mut failed = false;
    for gate in &gates {
        match &gate.outcome {
            Ok(detail) => println!("criterion {} PASS {} ({detail})", gate.n, gate.what),
            Err(detail) => {
                failed = true;
                println!("criterion {} FAIL {} ({detail})", gate.n, gate.what);
            }
        }
    }
    assert!(!failed, "at least one acceptance criterion failed");
}
