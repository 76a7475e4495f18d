//! Exact commutative algebra for trace ideals, annihilators, socles, and
//! the Gorenstein property of Artinian local quotient rings.

pub mod error;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod sample;
pub mod scalar;
pub mod session;
pub mod suites;
pub mod syzygy;
pub mod trace;

pub use error::{Error, Result};
pub use groebner::{buchberger, normal_form, Ideal};
pub use monomial::{compare_monomials, Monomial, MonomialOrder};
pub use oracle::FiniteAlgebra;
pub use parse::ParseError;
pub use poly::{PolyRing, Polynomial};
pub use quotient::{QuotientRing, RIdeal, StandardMonomials};
pub use session::{
    parse_session, run_session, CommandFailure, IdealArg, MatrixSpec, OraclePath, PolyOne,
    PolySet, RingSpec, SessionAst, SessionOptions, Statement, StatementKind,
};
pub use suites::{family_rings, paper_suite, property_suite, CaseResult, SuiteReport};
pub use scalar::{FieldDescriptor, FieldScalar, Fp, Rational};
pub use syzygy::{kernel_over_quotient, syzygies, PolyMatrix, PresentedModule};
pub use trace::{
    compare_trace_double_ann, gorenstein_by_socle, gorenstein_by_trace, is_trace_ideal,
    trace_ideal, trace_of_ideal, verify_equivalences, CompareOutcome, CompareReport,
    EquivalenceReport, GorensteinDecision, GorensteinMethod, GorensteinVerdict, TraceWitness,
};

/// Polynomial ring over the rationals, the default scalar choice.
pub type QPolyRing = PolyRing<Rational>;
pub type QPolynomial = Polynomial<Rational>;
pub type QIdeal = Ideal<Rational>;

/// Polynomial ring over a prime field.
pub type FpPolyRing = PolyRing<Fp>;
pub type FpPolynomial = Polynomial<Fp>;
pub type FpIdeal = Ideal<Fp>;
