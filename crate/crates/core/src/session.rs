//! Session files: declarations of rings, ideals, and presented modules,
//! followed by commands over them.
//!
//! Parsing is two-phase only in appearance: declarations are resolved as
//! they are read, so identifier discipline (declared before use, no
//! duplicates) and polynomial syntax are all enforced at parse time with
//! source locations. Execution then runs the statements in order; a
//! mathematical precondition failure stops the session with the location
//! of the offending command. Parse errors and execution errors map to
//! distinct process exit codes.
//!
//! Grammar (statements end with `;`, `#` comments to end of line):
//!
//! ```text
//! ring IDENT = local? (QQ | GF(p)) [v1, v2, ...] (/ (f1, f2, ...))? ;
//! ideal IDENT = (f1, f2, ...) ;
//! module IDENT = coker [[f11, f12]; [f21, f22]] ;
//! gb ARG;  nf f, ARG;  trace ARG;  ann ARG;  annann ARG;  istrace ARG;
//! socle RING?;  artinian RING?;  equiv RING?;
//! gorenstein RING? (samples=N)? (seed=N)?;  compare MODULE;
//! ```
//!
//! `ARG` is an ideal name or an inline `(f1, ...)` over the current ring;
//! ring arguments default to the most recent ring declaration. The
//! `local` keyword is accepted and ignored: colon ideals and ideal
//! equality localize, so the affine quotient answers for the local ring,
//! and outputs carry a note saying so.

use std::collections::BTreeMap;

use serde_json::json;

use crate::error::Error;
use crate::groebner::Ideal;
use crate::monomial::MonomialOrder;
use crate::parse::{lex, ParseError, PolyParser, Token, TokenKind};
use crate::poly::{PolyRing, Polynomial};
use crate::quotient::{QuotientRing, RIdeal};
use crate::scalar::{FieldDescriptor, FieldScalar, Fp, Rational};
use crate::syzygy::{PolyMatrix, PresentedModule};
use crate::trace::{
    compare_trace_double_ann, gorenstein_by_trace, trace_of_ideal, verify_equivalences,
    CompareOutcome, GorensteinDecision,
};

const DEFAULT_SAMPLES: usize = 20;

const LOCAL_NOTE: &str =
    "local: computed in the affine quotient; colon ideals and ideal equality localize";

#[derive(Debug, Clone)]
pub struct SessionAst {
    pub statements: Vec<Statement>,
}

#[derive(Debug, Clone)]
pub struct Statement {
    pub line: usize,
    pub col: usize,
    pub kind: StatementKind,
}

#[derive(Debug, Clone)]
pub enum StatementKind {
    RingDecl {
        name: String,
        spec: RingSpec,
        local: bool,
    },
    IdealDecl {
        name: String,
        ring: String,
        gens: PolySet,
    },
    ModuleDecl {
        name: String,
        ring: String,
        rows: MatrixSpec,
    },
    Gb(IdealArg),
    Nf(PolyOne, IdealArg),
    Trace(IdealArg),
    Ann(IdealArg),
    AnnAnn(IdealArg),
    IsTrace(IdealArg),
    Socle(String),
    Artinian(String),
    Gorenstein {
        ring: String,
        samples: usize,
        seed: Option<u64>,
    },
    Equiv(String),
    Compare(String),
}

/// A declared ring: the ambient polynomial ring and the generators of the
/// defining ideal, per scalar field.
#[derive(Debug, Clone)]
pub enum RingSpec {
    Q(PolyRing<Rational>, Vec<Polynomial<Rational>>),
    P(PolyRing<Fp>, Vec<Polynomial<Fp>>),
}

#[derive(Debug, Clone)]
pub enum PolySet {
    Q(Vec<Polynomial<Rational>>),
    P(Vec<Polynomial<Fp>>),
}

#[derive(Debug, Clone)]
pub enum PolyOne {
    Q(Polynomial<Rational>),
    P(Polynomial<Fp>),
}

#[derive(Debug, Clone)]
pub enum MatrixSpec {
    Q(Vec<Vec<Polynomial<Rational>>>),
    P(Vec<Vec<Polynomial<Fp>>>),
}

#[derive(Debug, Clone)]
pub enum IdealArg {
    Named(String),
    Inline { ring: String, gens: PolySet },
}

#[derive(Clone)]
enum ParsedRing {
    Q(PolyRing<Rational>),
    P(PolyRing<Fp>),
}

enum IdentKind {
    Ring,
    Ideal,
    Module,
}

struct SessionParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    order: MonomialOrder,
    rings: BTreeMap<String, ParsedRing>,
    idents: BTreeMap<String, IdentKind>,
    current: Option<String>,
}

/// Parses a session file. Declared rings use `order`; all identifier and
/// polynomial errors are reported here, with locations.
pub fn parse_session(text: &str, order: MonomialOrder) -> Result<SessionAst, ParseError> {
    let tokens = lex(text)?;
    let mut parser = SessionParser {
        tokens: &tokens,
        pos: 0,
        order,
        rings: BTreeMap::new(),
        idents: BTreeMap::new(),
        current: None,
    };
    let mut statements = Vec::new();
    while !matches!(parser.peek().kind, TokenKind::Eof) {
        statements.push(parser.parse_statement()?);
    }
    Ok(SessionAst { statements })
}

impl<'a> SessionParser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek2(&self) -> &Token {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn expect_kind(&mut self, kind: &TokenKind, what: &str) -> Result<Token, ParseError> {
        if &self.peek().kind == kind {
            Ok(self.bump())
        } else {
            let t = self.peek();
            Err(ParseError::expecting(
                t.line,
                t.col,
                format!("found {}", t.kind.describe()),
                &[what],
            ))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, usize, usize), ParseError> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Ident(name) => {
                self.bump();
                Ok((name, t.line, t.col))
            }
            other => Err(ParseError::expecting(
                t.line,
                t.col,
                format!("found {}", other.describe()),
                &[what],
            )),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<(u64, usize, usize), ParseError> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Int(digits) => {
                self.bump();
                let v: u64 = digits.parse().map_err(|_| {
                    ParseError::new(t.line, t.col, format!("number `{digits}` is out of range"))
                })?;
                Ok((v, t.line, t.col))
            }
            other => Err(ParseError::expecting(
                t.line,
                t.col,
                format!("found {}", other.describe()),
                &[what],
            )),
        }
    }

    fn declare(&mut self, name: &str, line: usize, col: usize, kind: IdentKind) -> Result<(), ParseError> {
        if self.idents.contains_key(name) {
            return Err(ParseError::new(
                line,
                col,
                format!("duplicate identifier `{name}`"),
            ));
        }
        self.idents.insert(name.to_string(), kind);
        Ok(())
    }

    fn current_ring(&self, line: usize, col: usize) -> Result<(String, ParsedRing), ParseError> {
        match &self.current {
            Some(name) => Ok((name.clone(), self.rings[name].clone())),
            None => Err(ParseError::new(
                line,
                col,
                "undefined identifier: no ring is in scope",
            )),
        }
    }

    fn parse_statement(&mut self) -> Result<Statement, ParseError> {
        let t = self.peek().clone();
        let (line, col) = (t.line, t.col);
        let head = match &t.kind {
            TokenKind::Ident(name) => name.clone(),
            other => {
                return Err(ParseError::expecting(
                    line,
                    col,
                    format!("found {}", other.describe()),
                    &["a statement (ring, ideal, module, or a command)"],
                ));
            }
        };
        self.bump();
        let kind = match head.as_str() {
            "ring" => self.parse_ring_decl(line, col)?,
            "ideal" => self.parse_ideal_decl(line, col)?,
            "module" => self.parse_module_decl(line, col)?,
            "gb" => StatementKind::Gb(self.parse_ideal_arg(line, col)?),
            "nf" => {
                let (_, ring) = self.current_ring(line, col)?;
                let poly = match &ring {
                    ParsedRing::Q(r) => PolyOne::Q(self.parse_poly(r)?),
                    ParsedRing::P(r) => PolyOne::P(self.parse_poly(r)?),
                };
                self.expect_kind(&TokenKind::Comma, "`,` between the polynomial and the ideal")?;
                StatementKind::Nf(poly, self.parse_ideal_arg(line, col)?)
            }
            "trace" => StatementKind::Trace(self.parse_ideal_arg(line, col)?),
            "ann" => StatementKind::Ann(self.parse_ideal_arg(line, col)?),
            "annann" => StatementKind::AnnAnn(self.parse_ideal_arg(line, col)?),
            "istrace" => StatementKind::IsTrace(self.parse_ideal_arg(line, col)?),
            "socle" => StatementKind::Socle(self.parse_ring_arg(line, col)?),
            "artinian" => StatementKind::Artinian(self.parse_ring_arg(line, col)?),
            "equiv" => StatementKind::Equiv(self.parse_ring_arg(line, col)?),
            "gorenstein" => self.parse_gorenstein(line, col)?,
            "compare" => {
                let (name, l, c) = self.expect_ident("a module name")?;
                match self.idents.get(&name) {
                    Some(IdentKind::Module) => {}
                    Some(_) => {
                        return Err(ParseError::new(l, c, format!("`{name}` is not a module")));
                    }
                    None => {
                        return Err(ParseError::new(
                            l,
                            c,
                            format!("undefined identifier `{name}`"),
                        ));
                    }
                }
                StatementKind::Compare(name)
            }
            other => {
                return Err(ParseError::expecting(
                    line,
                    col,
                    format!("unknown statement `{other}`"),
                    &[
                        "ring", "ideal", "module", "gb", "nf", "trace", "ann", "annann",
                        "istrace", "socle", "artinian", "gorenstein", "equiv", "compare",
                    ],
                ));
            }
        };
        self.expect_kind(&TokenKind::Semi, "`;` to end the statement")?;
        Ok(Statement { line, col, kind })
    }

    fn parse_ring_decl(&mut self, _line: usize, _col: usize) -> Result<StatementKind, ParseError> {
        let (name, nl, nc) = self.expect_ident("a ring name")?;
        self.declare(&name, nl, nc, IdentKind::Ring)?;
        self.expect_kind(&TokenKind::Eq, "`=`")?;
        let mut local = false;
        if matches!(&self.peek().kind, TokenKind::Ident(w) if w == "local") {
            self.bump();
            local = true;
        }
        let (field_name, fl, fc) = self.expect_ident("a field (`QQ` or `GF(p)`)")?;
        let field = match field_name.as_str() {
            "QQ" => FieldDescriptor::Rationals,
            "GF" => {
                self.expect_kind(&TokenKind::LParen, "`(` after GF")?;
                let (p, pl, pc) = self.expect_int("a prime modulus")?;
                self.expect_kind(&TokenKind::RParen, "`)` after the modulus")?;
                FieldDescriptor::prime_field(p)
                    .map_err(|e| ParseError::new(pl, pc, e.to_string()))?
            }
            other => {
                return Err(ParseError::expecting(
                    fl,
                    fc,
                    format!("unknown field `{other}`"),
                    &["QQ", "GF(p)"],
                ));
            }
        };
        let bracket = self.expect_kind(&TokenKind::LBracket, "`[` before the variables")?;
        let mut vars = Vec::new();
        loop {
            let (v, _, _) = self.expect_ident("a variable name")?;
            vars.push(v);
            match self.peek().kind {
                TokenKind::Comma => {
                    self.bump();
                }
                TokenKind::RBracket => {
                    self.bump();
                    break;
                }
                _ => {
                    let t = self.peek();
                    return Err(ParseError::expecting(
                        t.line,
                        t.col,
                        format!("found {}", t.kind.describe()),
                        &["`,`", "`]`"],
                    ));
                }
            }
        }
        let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let spec = match field {
            FieldDescriptor::Rationals => {
                let ring = PolyRing::<Rational>::new(field, &var_refs, self.order)
                    .map_err(|e| ParseError::new(bracket.line, bracket.col, e.to_string()))?;
                let defining = self.parse_optional_defining(&ring)?;
                self.rings.insert(name.clone(), ParsedRing::Q(ring.clone()));
                RingSpec::Q(ring, defining)
            }
            FieldDescriptor::PrimeField(_) => {
                let ring = PolyRing::<Fp>::new(field, &var_refs, self.order)
                    .map_err(|e| ParseError::new(bracket.line, bracket.col, e.to_string()))?;
                let defining = self.parse_optional_defining(&ring)?;
                self.rings.insert(name.clone(), ParsedRing::P(ring.clone()));
                RingSpec::P(ring, defining)
            }
        };
        self.current = Some(name.clone());
        Ok(StatementKind::RingDecl { name, spec, local })
    }

    fn parse_optional_defining<F: FieldScalar>(
        &mut self,
        ring: &PolyRing<F>,
    ) -> Result<Vec<Polynomial<F>>, ParseError> {
        if !matches!(self.peek().kind, TokenKind::Slash) {
            return Ok(Vec::new());
        }
        self.bump();
        self.expect_kind(&TokenKind::LParen, "`(` before the defining ideal")?;
        self.parse_poly_list(ring)
    }

    /// Comma-separated polynomials up to a closing `)` (consumed). The
    /// opening parenthesis must already be consumed. An empty list is the
    /// zero ideal.
    fn parse_poly_list<F: FieldScalar>(
        &mut self,
        ring: &PolyRing<F>,
    ) -> Result<Vec<Polynomial<F>>, ParseError> {
        let mut out = Vec::new();
        if matches!(self.peek().kind, TokenKind::RParen) {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.parse_poly(ring)?);
            match self.peek().kind {
                TokenKind::Comma => {
                    self.bump();
                }
                TokenKind::RParen => {
                    self.bump();
                    return Ok(out);
                }
                _ => {
                    let t = self.peek();
                    return Err(ParseError::expecting(
                        t.line,
                        t.col,
                        format!("found {}", t.kind.describe()),
                        &["`,`", "`)`"],
                    ));
                }
            }
        }
    }

    fn parse_poly<F: FieldScalar>(
        &mut self,
        ring: &PolyRing<F>,
    ) -> Result<Polynomial<F>, ParseError> {
        let mut pp = PolyParser::new(self.tokens, self.pos, ring);
        let p = pp.parse_expr()?;
        self.pos = pp.position();
        Ok(p)
    }

    fn parse_ideal_decl(&mut self, line: usize, col: usize) -> Result<StatementKind, ParseError> {
        let (name, nl, nc) = self.expect_ident("an ideal name")?;
        self.expect_kind(&TokenKind::Eq, "`=`")?;
        let (ring_name, ring) = self.current_ring(line, col)?;
        self.expect_kind(&TokenKind::LParen, "`(` before the generators")?;
        let gens = match &ring {
            ParsedRing::Q(r) => PolySet::Q(self.parse_poly_list(r)?),
            ParsedRing::P(r) => PolySet::P(self.parse_poly_list(r)?),
        };
        self.declare(&name, nl, nc, IdentKind::Ideal)?;
        Ok(StatementKind::IdealDecl {
            name,
            ring: ring_name,
            gens,
        })
    }

    fn parse_module_decl(&mut self, line: usize, col: usize) -> Result<StatementKind, ParseError> {
        let (name, nl, nc) = self.expect_ident("a module name")?;
        self.expect_kind(&TokenKind::Eq, "`=`")?;
        let (coker, kl, kc) = self.expect_ident("`coker`")?;
        if coker != "coker" {
            return Err(ParseError::expecting(
                kl,
                kc,
                format!("unknown module constructor `{coker}`"),
                &["coker"],
            ));
        }
        let (ring_name, ring) = self.current_ring(line, col)?;
        self.expect_kind(&TokenKind::LBracket, "`[` before the presentation rows")?;
        let rows = match &ring {
            ParsedRing::Q(r) => MatrixSpec::Q(self.parse_matrix_rows(r)?),
            ParsedRing::P(r) => MatrixSpec::P(self.parse_matrix_rows(r)?),
        };
        self.declare(&name, nl, nc, IdentKind::Module)?;
        Ok(StatementKind::ModuleDecl {
            name,
            ring: ring_name,
            rows,
        })
    }

    /// Rows of a presentation matrix: `[f, g]; [h, k]` up to the closing
    /// `]` of the outer bracket (consumed). Rows may be separated by `;`
    /// or `,` and must all have the same length.
    fn parse_matrix_rows<F: FieldScalar>(
        &mut self,
        ring: &PolyRing<F>,
    ) -> Result<Vec<Vec<Polynomial<F>>>, ParseError> {
        let mut rows: Vec<Vec<Polynomial<F>>> = Vec::new();
        if matches!(self.peek().kind, TokenKind::RBracket) {
            self.bump();
            return Ok(rows);
        }
        loop {
            let open = self.expect_kind(&TokenKind::LBracket, "`[` to start a row")?;
            let mut row = Vec::new();
            if matches!(self.peek().kind, TokenKind::RBracket) {
                self.bump();
            } else {
                loop {
                    row.push(self.parse_poly(ring)?);
                    match self.peek().kind {
                        TokenKind::Comma => {
                            self.bump();
                        }
                        TokenKind::RBracket => {
                            self.bump();
                            break;
                        }
                        _ => {
                            let t = self.peek();
                            return Err(ParseError::expecting(
                                t.line,
                                t.col,
                                format!("found {}", t.kind.describe()),
                                &["`,`", "`]`"],
                            ));
                        }
                    }
                }
            }
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(ParseError::new(
                        open.line,
                        open.col,
                        format!(
                            "matrix rows have different lengths ({} then {})",
                            first.len(),
                            row.len()
                        ),
                    ));
                }
            }
            rows.push(row);
            match self.peek().kind {
                TokenKind::Semi | TokenKind::Comma => {
                    self.bump();
                }
                TokenKind::RBracket => {
                    self.bump();
                    return Ok(rows);
                }
                _ => {
                    let t = self.peek();
                    return Err(ParseError::expecting(
                        t.line,
                        t.col,
                        format!("found {}", t.kind.describe()),
                        &["`;`", "`,`", "`]`"],
                    ));
                }
            }
        }
    }

    fn parse_ideal_arg(&mut self, line: usize, col: usize) -> Result<IdealArg, ParseError> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::LParen => {
                self.bump();
                let (ring_name, ring) = self.current_ring(line, col)?;
                let gens = match &ring {
                    ParsedRing::Q(r) => PolySet::Q(self.parse_poly_list(r)?),
                    ParsedRing::P(r) => PolySet::P(self.parse_poly_list(r)?),
                };
                Ok(IdealArg::Inline {
                    ring: ring_name,
                    gens,
                })
            }
            TokenKind::Ident(name) => {
                self.bump();
                match self.idents.get(&name) {
                    Some(IdentKind::Ideal) => Ok(IdealArg::Named(name)),
                    Some(_) => Err(ParseError::new(
                        t.line,
                        t.col,
                        format!("`{name}` is not an ideal"),
                    )),
                    None => Err(ParseError::new(
                        t.line,
                        t.col,
                        format!("undefined identifier `{name}`"),
                    )),
                }
            }
            other => Err(ParseError::expecting(
                t.line,
                t.col,
                format!("found {}", other.describe()),
                &["an ideal name", "`(`"],
            )),
        }
    }

    /// An optional ring name; defaults to the ring currently in scope.
    fn parse_ring_arg(&mut self, line: usize, col: usize) -> Result<String, ParseError> {
        if let TokenKind::Ident(name) = &self.peek().kind {
            let name = name.clone();
            // `samples`/`seed` followed by `=` belong to the gorenstein
            // options, not a ring reference
            let is_option =
                (name == "samples" || name == "seed") && matches!(self.peek2().kind, TokenKind::Eq);
            if !is_option {
                let t = self.bump();
                return match self.idents.get(&name) {
                    Some(IdentKind::Ring) => Ok(name),
                    Some(_) => Err(ParseError::new(
                        t.line,
                        t.col,
                        format!("`{name}` is not a ring"),
                    )),
                    None => Err(ParseError::new(
                        t.line,
                        t.col,
                        format!("undefined identifier `{name}`"),
                    )),
                };
            }
        }
        self.current_ring(line, col).map(|(name, _)| name)
    }

    fn parse_gorenstein(&mut self, line: usize, col: usize) -> Result<StatementKind, ParseError> {
        let ring = self.parse_ring_arg(line, col)?;
        let mut samples = None;
        let mut seed = None;
        while let TokenKind::Ident(opt) = &self.peek().kind {
            let opt = opt.clone();
            let t = self.peek().clone();
            let slot = match opt.as_str() {
                "samples" => &mut samples,
                "seed" => &mut seed,
                other => {
                    return Err(ParseError::expecting(
                        t.line,
                        t.col,
                        format!("unknown option `{other}`"),
                        &["samples=N", "seed=N"],
                    ));
                }
            };
            if slot.is_some() {
                return Err(ParseError::new(
                    t.line,
                    t.col,
                    format!("option `{opt}` given twice"),
                ));
            }
            self.bump();
            self.expect_kind(&TokenKind::Eq, "`=` after the option name")?;
            let (v, _, _) = self.expect_int("a number")?;
            *slot = Some(v);
        }
        Ok(StatementKind::Gorenstein {
            ring,
            samples: samples.map_or(DEFAULT_SAMPLES, |v| v as usize),
            seed,
        })
    }
}

/// Which route computes traces: the syzygy path, the finite-dimensional
/// linear-algebra path, or both with an agreement check (linear is
/// consulted only where the ring is Artinian local).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OraclePath {
    Groebner,
    Linear,
    Both,
}

#[derive(Debug, Clone)]
pub struct SessionOptions {
    pub json: bool,
    pub seed: u64,
    pub oracle: OraclePath,
}

impl Default for SessionOptions {
    fn default() -> Self {
        SessionOptions {
            json: false,
            seed: 0,
            oracle: OraclePath::Both,
        }
    }
}

/// An execution-time failure: a command whose mathematical preconditions
/// do not hold, located in the source.
#[derive(Debug, Clone)]
pub struct CommandFailure {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

enum RingSlot {
    Q(QuotientRing<Rational>),
    P(QuotientRing<Fp>),
}

enum IdealSlot {
    Q(RIdeal<Rational>),
    P(RIdeal<Fp>),
}

enum ModuleSlot {
    Q(PresentedModule<Rational>),
    P(PresentedModule<Fp>),
}

#[derive(Default)]
struct ExecState {
    rings: BTreeMap<String, RingSlot>,
    ideals: BTreeMap<String, (String, IdealSlot)>,
    modules: BTreeMap<String, (String, ModuleSlot)>,
    local_rings: BTreeMap<String, bool>,
}

impl ExecState {
    fn is_local(&self, ring_name: &str) -> bool {
        self.local_rings.get(ring_name).copied().unwrap_or(false)
    }

    fn arg_note(&self, arg: &IdealArg) -> bool {
        match arg {
            IdealArg::Named(name) => self.is_local(&self.ideals[name].0),
            IdealArg::Inline { ring, .. } => self.is_local(ring),
        }
    }
}

/// One command's result, already canonically printed, field-agnostic.
enum Rendered {
    Ideal(String),
    Poly(String),
    Bool(bool),
    Socle {
        ideal: String,
        dim: usize,
    },
    Gorenstein {
        decision: &'static str,
        method: &'static str,
        witness: Option<String>,
        socle_dim: Option<usize>,
        seed: Option<u64>,
        checked: usize,
    },
    Equiv {
        consistent: bool,
        socle_dim: usize,
        ideals: usize,
        failures: Vec<String>,
    },
    Compare {
        outcome: &'static str,
        witness: Option<String>,
        trace: String,
        double_ann: String,
    },
}

/// Runs one ideal command for either scalar field. A macro because the
/// body must be instantiated at two concrete field types.
macro_rules! ideal_command {
    ($state:expr, $opts:expr, $lines:expr, $cmd:expr, $arg:expr,
     |$i:ident, $oracle:ident| $body:expr) => {{
        let note = $state.arg_note($arg);
        match resolve_ideal($state, $arg)? {
            IdealSlot::Q($i) => {
                let $oracle = $opts.oracle;
                let ring = $i.ring().to_string();
                let rendered = $body?;
                emit($lines, $opts, $cmd, &ring, note, rendered);
            }
            IdealSlot::P($i) => {
                let $oracle = $opts.oracle;
                let ring = $i.ring().to_string();
                let rendered = $body?;
                emit($lines, $opts, $cmd, &ring, note, rendered);
            }
        }
        Ok(())
    }};
}

/// Runs the statements in order, returning the output lines produced and,
/// if a command failed, its location and message. Output already printed
/// by earlier statements is kept: the session streams.
pub fn run_session(
    ast: &SessionAst,
    opts: &SessionOptions,
) -> (Vec<String>, Option<CommandFailure>) {
    let mut state = ExecState::default();
    let mut lines = Vec::new();
    for stmt in &ast.statements {
        match exec_statement(stmt, &mut state, opts, &mut lines) {
            Ok(()) => {}
            Err(e) => {
                return (
                    lines,
                    Some(CommandFailure {
                        line: stmt.line,
                        col: stmt.col,
                        message: e.to_string(),
                    }),
                );
            }
        }
    }
    (lines, None)
}

fn exec_statement(
    stmt: &Statement,
    state: &mut ExecState,
    opts: &SessionOptions,
    lines: &mut Vec<String>,
) -> Result<(), Error> {
    match &stmt.kind {
        StatementKind::RingDecl { name, spec, local } => {
            let slot = match spec {
                RingSpec::Q(ring, defining) => RingSlot::Q(QuotientRing::new(
                    ring.clone(),
                    Ideal::new(ring.clone(), defining.clone()),
                )?),
                RingSpec::P(ring, defining) => RingSlot::P(QuotientRing::new(
                    ring.clone(),
                    Ideal::new(ring.clone(), defining.clone()),
                )?),
            };
            state.local_rings.insert(name.clone(), *local);
            if *local && !opts.json {
                lines.push(format!("# note: {LOCAL_NOTE}"));
            }
            state.rings.insert(name.clone(), slot);
            Ok(())
        }
        StatementKind::IdealDecl { name, ring, gens } => {
            let slot = match (&state.rings[ring], gens) {
                (RingSlot::Q(q), PolySet::Q(g)) => {
                    IdealSlot::Q(RIdeal::new(q.clone(), g.clone()))
                }
                (RingSlot::P(q), PolySet::P(g)) => {
                    IdealSlot::P(RIdeal::new(q.clone(), g.clone()))
                }
                _ => return Err(Error::RingMismatch),
            };
            state.ideals.insert(name.clone(), (ring.clone(), slot));
            Ok(())
        }
        StatementKind::ModuleDecl { name, ring, rows } => {
            let slot = match (&state.rings[ring], rows) {
                (RingSlot::Q(q), MatrixSpec::Q(r)) => {
                    ModuleSlot::Q(build_module(q, r)?)
                }
                (RingSlot::P(q), MatrixSpec::P(r)) => {
                    ModuleSlot::P(build_module(q, r)?)
                }
                _ => return Err(Error::RingMismatch),
            };
            state.modules.insert(name.clone(), (ring.clone(), slot));
            Ok(())
        }
        StatementKind::Gb(arg) => ideal_command!(state, opts, lines, "gb", arg, |i, _o| {
            Ok::<_, Error>(Rendered::Ideal(i.to_string()))
        }),
        StatementKind::Nf(poly, arg) => {
            let note = state.arg_note(arg);
            let rendered_ring;
            let rendered;
            match resolve_ideal(state, arg)? {
                IdealSlot::Q(i) => {
                    let PolyOne::Q(p) = poly else {
                        return Err(Error::RingMismatch);
                    };
                    rendered = exec_nf(p, &i)?;
                    rendered_ring = i.ring().to_string();
                }
                IdealSlot::P(i) => {
                    let PolyOne::P(p) = poly else {
                        return Err(Error::RingMismatch);
                    };
                    rendered = exec_nf(p, &i)?;
                    rendered_ring = i.ring().to_string();
                }
            }
            emit(lines, opts, "nf", &rendered_ring, note, rendered);
            Ok(())
        }
        StatementKind::Trace(arg) => {
            ideal_command!(state, opts, lines, "trace", arg, |i, o| {
                Ok::<_, Error>(Rendered::Ideal(compute_trace(&i, o)?.to_string()))
            })
        }
        StatementKind::Ann(arg) => ideal_command!(state, opts, lines, "ann", arg, |i, _o| {
            Ok::<_, Error>(Rendered::Ideal(i.ring().annihilator(&i).to_string()))
        }),
        StatementKind::AnnAnn(arg) => {
            ideal_command!(state, opts, lines, "annann", arg, |i, _o| {
                Ok::<_, Error>(Rendered::Ideal(i.ring().double_annihilator(&i).to_string()))
            })
        }
        StatementKind::IsTrace(arg) => {
            ideal_command!(state, opts, lines, "istrace", arg, |i, o| {
                let t = compute_trace(&i, o)?;
                Ok::<_, Error>(Rendered::Bool(t.equals(&i)?))
            })
        }
        StatementKind::Socle(ring) => ring_command(state, opts, lines, "socle", ring, |slot| {
            match slot {
                RingSlot::Q(q) => {
                    let (ideal, dim) = q.socle()?;
                    Ok(Rendered::Socle {
                        ideal: ideal.to_string(),
                        dim,
                    })
                }
                RingSlot::P(q) => {
                    let (ideal, dim) = q.socle()?;
                    Ok(Rendered::Socle {
                        ideal: ideal.to_string(),
                        dim,
                    })
                }
            }
        }),
        StatementKind::Artinian(ring) => {
            ring_command(state, opts, lines, "artinian", ring, |slot| match slot {
                RingSlot::Q(q) => Ok(Rendered::Bool(q.is_artinian_local()?)),
                RingSlot::P(q) => Ok(Rendered::Bool(q.is_artinian_local()?)),
            })
        }
        StatementKind::Gorenstein {
            ring,
            samples,
            seed,
        } => {
            let seed = seed.unwrap_or(opts.seed);
            let samples = *samples;
            ring_command(state, opts, lines, "gorenstein", ring, move |slot| {
                match slot {
                    RingSlot::Q(q) => exec_gorenstein(q, samples, seed),
                    RingSlot::P(q) => exec_gorenstein(q, samples, seed),
                }
            })
        }
        StatementKind::Equiv(ring) => {
            ring_command(state, opts, lines, "equiv", ring, |slot| match slot {
                RingSlot::Q(q) => exec_equiv(q),
                RingSlot::P(q) => exec_equiv(q),
            })
        }
        StatementKind::Compare(name) => {
            let (ring_name, slot) = &state.modules[name];
            let note = state.is_local(ring_name);
            let (rendered, ring_str) = match slot {
                ModuleSlot::Q(m) => (exec_compare(m)?, m.ring().to_string()),
                ModuleSlot::P(m) => (exec_compare(m)?, m.ring().to_string()),
            };
            emit(lines, opts, "compare", &ring_str, note, rendered);
            Ok(())
        }
    }
}

fn build_module<F: FieldScalar>(
    q: &QuotientRing<F>,
    rows: &[Vec<Polynomial<F>>],
) -> Result<PresentedModule<F>, Error> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut entries = Vec::with_capacity(nrows * ncols);
    for row in rows {
        entries.extend(row.iter().cloned());
    }
    let matrix = PolyMatrix::new(q.ambient().clone(), nrows, ncols, entries)?;
    PresentedModule::new(q.clone(), matrix)
}

fn resolve_ideal(state: &ExecState, arg: &IdealArg) -> Result<IdealSlot, Error> {
    match arg {
        IdealArg::Named(name) => match &state.ideals[name].1 {
            IdealSlot::Q(i) => Ok(IdealSlot::Q(i.clone())),
            IdealSlot::P(i) => Ok(IdealSlot::P(i.clone())),
        },
        IdealArg::Inline { ring, gens } => match (&state.rings[ring], gens) {
            (RingSlot::Q(q), PolySet::Q(g)) => Ok(IdealSlot::Q(RIdeal::new(q.clone(), g.clone()))),
            (RingSlot::P(q), PolySet::P(g)) => Ok(IdealSlot::P(RIdeal::new(q.clone(), g.clone()))),
            _ => Err(Error::RingMismatch),
        },
    }
}

fn ring_command<FRun>(
    state: &ExecState,
    opts: &SessionOptions,
    lines: &mut Vec<String>,
    command: &str,
    ring: &str,
    run: FRun,
) -> Result<(), Error>
where
    FRun: FnOnce(&RingSlot) -> Result<Rendered, Error>,
{
    let slot = &state.rings[ring];
    let ring_str = match slot {
        RingSlot::Q(q) => q.to_string(),
        RingSlot::P(q) => q.to_string(),
    };
    let note = state.local_rings.get(ring).copied().unwrap_or(false);
    let rendered = run(slot)?;
    emit(lines, opts, command, &ring_str, note, rendered);
    Ok(())
}

fn exec_nf<F: FieldScalar>(p: &Polynomial<F>, i: &RIdeal<F>) -> Result<Rendered, Error> {
    if p.ring() != i.ring().ambient() {
        return Err(Error::RingMismatch);
    }
    Ok(Rendered::Poly(i.lifted().normal_form(p).to_string()))
}

fn compute_trace<F: FieldScalar>(i: &RIdeal<F>, oracle: OraclePath) -> Result<RIdeal<F>, Error> {
    let q = i.ring();
    match oracle {
        OraclePath::Groebner => Ok(trace_of_ideal(i)),
        OraclePath::Linear => {
            let algebra = q.finite_algebra()?;
            Ok(RIdeal::new(q.clone(), algebra.trace_linear(i.gens())))
        }
        OraclePath::Both => {
            let by_syzygy = trace_of_ideal(i);
            if q.dimension()?.is_some() {
                let algebra = q.finite_algebra()?;
                let by_linear = RIdeal::new(q.clone(), algebra.trace_linear(i.gens()));
                if !by_syzygy.equals(&by_linear)? {
                    return Err(Error::Internal(
                        "trace oracle disagreement between the syzygy and linear routes".into(),
                    ));
                }
            }
            Ok(by_syzygy)
        }
    }
}

fn exec_gorenstein<F: FieldScalar>(
    q: &QuotientRing<F>,
    samples: usize,
    seed: u64,
) -> Result<Rendered, Error> {
    let v = gorenstein_by_trace(q, samples, seed)?;
    let decision = match v.decision {
        GorensteinDecision::Gorenstein => "Gorenstein",
        GorensteinDecision::NotGorenstein => "NotGorenstein",
        GorensteinDecision::ConsistentWithGorenstein => "ConsistentWithGorenstein",
    };
    Ok(Rendered::Gorenstein {
        decision,
        method: "TraceWitness",
        witness: v.witness.map(|w| w.ideal.to_string()),
        socle_dim: v.socle_dim,
        seed: v.seed,
        checked: v.checked_count,
    })
}

fn exec_equiv<F: FieldScalar>(q: &QuotientRing<F>) -> Result<Rendered, Error> {
    let r = verify_equivalences(q)?;
    Ok(Rendered::Equiv {
        consistent: r.consistent,
        socle_dim: r.socle_dim,
        ideals: r.ideal_count,
        failures: r.failures.iter().map(|i| i.to_string()).collect(),
    })
}

fn exec_compare<F: FieldScalar>(m: &PresentedModule<F>) -> Result<Rendered, Error> {
    let r = compare_trace_double_ann(m)?;
    let (outcome, witness) = match r.outcome {
        CompareOutcome::Equal => ("Equal", None),
        CompareOutcome::StrictlyContained { witness } => {
            ("StrictlyContained", Some(witness.to_string()))
        }
    };
    Ok(Rendered::Compare {
        outcome,
        witness,
        trace: r.trace.to_string(),
        double_ann: r.double_ann.to_string(),
    })
}

fn emit(
    lines: &mut Vec<String>,
    opts: &SessionOptions,
    command: &str,
    ring: &str,
    local_note: bool,
    rendered: Rendered,
) {
    if opts.json {
        lines.push(render_json(command, ring, local_note, &rendered));
    } else {
        lines.push(render_text(&rendered));
    }
}

fn render_text(r: &Rendered) -> String {
    match r {
        Rendered::Ideal(s) => s.clone(),
        Rendered::Poly(s) => s.clone(),
        Rendered::Bool(b) => b.to_string(),
        Rendered::Socle { ideal, dim } => format!("{ideal} socle_dim={dim}"),
        Rendered::Gorenstein {
            decision,
            witness,
            socle_dim,
            ..
        } => {
            let mut out = String::from(*decision);
            if let Some(w) = witness {
                out.push_str(&format!(" witness={w}"));
            }
            if let Some(d) = socle_dim {
                out.push_str(&format!(" socle_dim={d}"));
            }
            out
        }
        Rendered::Equiv {
            consistent,
            socle_dim,
            ideals,
            failures,
        } => format!(
            "consistent={consistent} socle_dim={socle_dim} ideals={ideals} failures={}",
            failures.len()
        ),
        Rendered::Compare {
            outcome,
            witness,
            trace,
            double_ann,
        } => {
            let mut out = String::from(*outcome);
            if let Some(w) = witness {
                out.push_str(&format!(" witness={w}"));
            }
            out.push_str(&format!(" trace={trace} annann={double_ann}"));
            out
        }
    }
}

fn render_json(command: &str, ring: &str, local_note: bool, r: &Rendered) -> String {
    let mut obj = match r {
        Rendered::Ideal(s) => json!({"command": command, "ring": ring, "ideal": s}),
        Rendered::Poly(s) => json!({"command": command, "ring": ring, "result": s}),
        Rendered::Bool(b) => json!({"command": command, "ring": ring, "result": b}),
        Rendered::Socle { ideal, dim } => {
            json!({"command": command, "ring": ring, "ideal": ideal, "socle_dim": dim})
        }
        Rendered::Gorenstein {
            decision,
            method,
            witness,
            socle_dim,
            seed,
            checked,
        } => {
            let mut o = json!({
                "command": command,
                "ring": ring,
                "method": method,
                "decision": decision,
                "checked_count": checked,
            });
            let map = o.as_object_mut().expect("object literal");
            if let Some(d) = socle_dim {
                map.insert("socle_dim".into(), json!(d));
            }
            if let Some(w) = witness {
                map.insert("witness".into(), json!(w));
            }
            if let Some(s) = seed {
                map.insert("seed".into(), json!(s));
            }
            o
        }
        Rendered::Equiv {
            consistent,
            socle_dim,
            ideals,
            failures,
        } => json!({
            "command": command,
            "ring": ring,
            "consistent": consistent,
            "socle_dim": socle_dim,
            "ideal_count": ideals,
            "failures": failures,
        }),
        Rendered::Compare {
            outcome,
            witness,
            trace,
            double_ann,
        } => {
            let mut o = json!({
                "command": command,
                "ring": ring,
                "outcome": outcome,
                "trace": trace,
                "double_annihilator": double_ann,
            });
            if let Some(w) = witness {
                o.as_object_mut()
                    .expect("object literal")
                    .insert("witness".into(), json!(w));
            }
            o
        }
    };
    if local_note {
        if let Some(map) = obj.as_object_mut() {
            map.insert("note".into(), json!(LOCAL_NOTE));
        }
    }
    obj.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(src: &str) -> SessionAst {
        parse_session(src, MonomialOrder::DegRevLex).expect("session parses")
    }

    fn run_text(src: &str) -> (Vec<String>, Option<CommandFailure>) {
        run_session(&parse(src), &SessionOptions::default())
    }

    #[test]
    fn trace_session() {
        let src = "ring R = QQ[x,y]/(x^2, x*y);\nideal I = (y);\ntrace I;\n";
        let ast = parse(src);
        assert_eq!(ast.statements.len(), 3);
        let (lines, fail) = run_session(&ast, &SessionOptions::default());
        assert!(fail.is_none());
        assert_eq!(lines, ["(x, y)"]);
    }

    #[test]
    fn gorenstein_session() {
        let (lines, fail) = run_text("ring R = QQ[b,c]/(b^3, c^3, b*c);\ngorenstein R;");
        assert!(fail.is_none());
        assert_eq!(lines, ["NotGorenstein witness=(b) socle_dim=2"]);
    }

    #[test]
    fn groebner_basis_over_prime_field() {
        let (lines, fail) = run_text("ring R = GF(7)[x];\ngb (x^2 - 1, x^3 - x);");
        assert!(fail.is_none());
        assert_eq!(lines, ["(x^2 + 6)"]);
    }

    #[test]
    fn empty_session_has_no_output() {
        for src in ["", "   \n", "# only a comment\n"] {
            let ast = parse(src);
            assert!(ast.statements.is_empty());
            let (lines, fail) = run_session(&ast, &SessionOptions::default());
            assert!(lines.is_empty());
            assert!(fail.is_none());
        }
    }

    #[test]
    fn ideal_without_ring_is_rejected_at_the_statement() {
        let err = parse_session("ideal I = (x);", MonomialOrder::DegRevLex).unwrap_err();
        assert_eq!((err.line, err.col), (1, 1));
        assert!(err.to_string().contains("no ring is in scope"));
    }

    #[test]
    fn undefined_and_duplicate_identifiers() {
        let err = parse_session(
            "ring R = QQ[x];\ntrace J;",
            MonomialOrder::DegRevLex,
        )
        .unwrap_err();
        assert_eq!((err.line, err.col), (2, 7));
        assert!(err.to_string().contains("undefined identifier `J`"));

        let err = parse_session(
            "ring R = QQ[x];\nideal R = (x);",
            MonomialOrder::DegRevLex,
        )
        .unwrap_err();
        assert_eq!((err.line, err.col), (2, 7));
        assert!(err.to_string().contains("duplicate identifier `R`"));

        let err = parse_session(
            "ring R = QQ[x];\nideal I = (x);\nsocle I;",
            MonomialOrder::DegRevLex,
        )
        .unwrap_err();
        assert!(err.to_string().contains("not a ring"));
    }

    #[test]
    fn normal_form_reduces_by_the_lifted_ideal() {
        let (lines, fail) = run_text(
            "ring R = QQ[x,y]/(x^2, x*y);\nnf x^2 + x*y + y^2 + x + 1, (0);",
        );
        assert!(fail.is_none());
        assert_eq!(lines, ["y^2 + x + 1"]);
    }

    #[test]
    fn commands_default_to_the_most_recent_ring() {
        let (lines, fail) = run_text(
            "ring R = QQ[x,y]/(x^2, x*y);\nartinian;\nring S = QQ[x]/(x^3);\nartinian;\nsocle;",
        );
        assert!(fail.is_none());
        assert_eq!(lines, ["false", "true", "(x^2) socle_dim=1"]);
    }

    #[test]
    fn istrace_and_annihilators_inline() {
        let (lines, fail) = run_text(
            "ring R = QQ[x,y]/(x^2, x*y);\nannann (x);\nannann (y);\nistrace (x);\nistrace (y);\nartinian;",
        );
        assert!(fail.is_none());
        assert_eq!(lines, ["(x)", "(x, y)", "true", "false", "false"]);
    }

    #[test]
    fn compare_session_reports_strict_containment() {
        let (lines, fail) = run_text(
            "ring R = QQ[b,c]/(b^2, c^2, b*c);\nmodule M = coker [[b, 0]; [0, c]];\ncompare M;",
        );
        assert!(fail.is_none());
        assert_eq!(lines, ["StrictlyContained witness=1 trace=(b, c) annann=(1)"]);
    }

    #[test]
    fn equiv_session_summarizes_the_sweep() {
        let (lines, fail) = run_text("ring R = QQ[x]/(x^3);\nequiv R;");
        assert!(fail.is_none());
        assert_eq!(lines, ["consistent=true socle_dim=1 ideals=4 failures=0"]);
    }

    #[test]
    fn gorenstein_options_and_seed_override() {
        let ast = parse("ring R = QQ[x,y]/(x^2, y^2);\ngorenstein R samples=3 seed=9;");
        let StatementKind::Gorenstein {
            samples, seed, ..
        } = &ast.statements[1].kind
        else {
            panic!("expected a gorenstein statement");
        };
        assert_eq!((*samples, *seed), (3, Some(9)));
        let (lines, fail) = run_session(&ast, &SessionOptions::default());
        assert!(fail.is_none());
        assert_eq!(lines, ["ConsistentWithGorenstein socle_dim=1"]);

        let ast = parse("ring R = QQ[x]/(x^2);\ngorenstein samples=2;");
        let (lines, fail) = run_session(&ast, &SessionOptions::default());
        assert!(fail.is_none());
        assert_eq!(lines, ["ConsistentWithGorenstein socle_dim=1"]);
    }

    #[test]
    fn command_failure_keeps_earlier_output() {
        let (lines, fail) = run_text("ring R = QQ[x]/(x^2);\nartinian;\nring S = QQ[x,y];\nsocle S;");
        assert_eq!(lines, ["true"]);
        let fail = fail.expect("socle of a non Artinian ring fails");
        assert_eq!((fail.line, fail.col), (4, 1));
    }

    #[test]
    fn unit_quotient_fails_at_execution() {
        let (lines, fail) = run_text("ring R = QQ[x]/(x, x - 1);");
        assert!(lines.is_empty());
        let fail = fail.expect("the unit quotient is rejected");
        assert_eq!((fail.line, fail.col), (1, 1));
    }

    #[test]
    fn local_keyword_is_noted_and_ignored() {
        let (lines, fail) = run_text("ring R = local QQ[x]/(x^2);\nsocle R;");
        assert!(fail.is_none());
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("# note: local"));
        assert_eq!(lines[1], "(x) socle_dim=1");
    }

    #[test]
    fn json_output_is_deterministic_and_sorted() {
        let src = "ring R = QQ[b,c]/(b^3, c^3, b*c);\ntrace (b);\ngorenstein R;\nequiv R;\nsocle R;";
        let opts = SessionOptions {
            json: true,
            ..SessionOptions::default()
        };
        let (first, fail) = run_session(&parse(src), &opts);
        assert!(fail.is_none());
        let (second, _) = run_session(&parse(src), &opts);
        assert_eq!(first, second);
        assert_eq!(
            first[0],
            r#"{"command":"trace","ideal":"(b, c^2)","ring":"QQ[b,c]/(b*c, b^3, c^3)"}"#
        );
        let verdict: serde_json::Value = first[1].parse().unwrap();
        assert_eq!(verdict["decision"], "NotGorenstein");
        assert_eq!(verdict["witness"], "(b)");
        assert_eq!(verdict["socle_dim"], 2);
        assert_eq!(verdict["seed"], 0);
    }

    #[test]
    fn matrix_rows_accept_either_separator_and_check_shape() {
        let ast = parse("ring R = QQ[x]/(x^2);\nmodule M = coker [[x, 0], [0, x]];\ncompare M;");
        let (lines, fail) = run_session(&ast, &SessionOptions::default());
        assert!(fail.is_none());
        assert_eq!(lines.len(), 1);

        let err = parse_session(
            "ring R = QQ[x]/(x^2);\nmodule M = coker [[x, 0]; [x]];",
            MonomialOrder::DegRevLex,
        )
        .unwrap_err();
        assert!(err.to_string().contains("different lengths"));
    }

    #[test]
    fn oracle_paths_agree_on_trace() {
        let src = "ring R = QQ[b,c]/(b^3, c^3, b*c);\ntrace (b);\nistrace (b);";
        for oracle in [OraclePath::Groebner, OraclePath::Linear, OraclePath::Both] {
            let opts = SessionOptions {
                oracle,
                ..SessionOptions::default()
            };
            let (lines, fail) = run_session(&parse(src), &opts);
            assert!(fail.is_none(), "oracle {oracle:?} failed");
            assert_eq!(lines, ["(b, c^2)", "false"]);
        }
    }
}
