//! Text formats: the presentation language and generator-map files.
//!
//! A presentation file holds one or more blocks of the form
//!
//! ```text
//! operad sLeib {
//!   gen br antisym
//!   gen di sym
//!   rel br(br(x1,x2),x3) - br(br(x1,x3),x2) - br(x1,br(x2,x3))
//!   rel di(di(x1,x2),x3)
//! }
//! ```
//!
//! Relation terms are rational multiples of tree monomials in the variables
//! `x1, x2, ...`; `#` starts a comment.  A generator-map file names a source
//! and target presentation and sends each source generator to a combination
//! of target generators, a trailing apostrophe marking the transpose:
//!
//! ```text
//! source lLeib
//! target DiAss
//! m -> vd - dv'
//! ```

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational};
use crate::presentations::{Expr, IdentityTemplate, Presentation};
use crate::trees::{FreeComponent, Generator, Symmetry};

#[derive(Clone, Debug, PartialEq)]
enum TokKind {
    Ident(String),
    Number(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Arrow,
}

#[derive(Clone, Debug)]
struct Tok {
    line: usize,
    kind: TokKind,
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '{' | '}' | '(' | ')' | ',' | '+' | '*' => {
                let kind = match c {
                    '{' => TokKind::LBrace,
                    '}' => TokKind::RBrace,
                    '(' => TokKind::LParen,
                    ')' => TokKind::RParen,
                    ',' => TokKind::Comma,
                    '+' => TokKind::Plus,
                    _ => TokKind::Star,
                };
                toks.push(Tok { line, kind });
                chars.next();
            }
            '-' => {
                chars.next();
                if chars.peek() == Some(&'>') {
                    chars.next();
                    toks.push(Tok { line, kind: TokKind::Arrow });
                } else {
                    toks.push(Tok { line, kind: TokKind::Minus });
                }
            }
            c if c.is_ascii_digit() => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        text.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if chars.peek() == Some(&'/') {
                    let mut probe = chars.clone();
                    probe.next();
                    if probe.peek().is_some_and(|c| c.is_ascii_digit()) {
                        text.push('/');
                        chars.next();
                        while let Some(&c) = chars.peek() {
                            if c.is_ascii_digit() {
                                text.push(c);
                                chars.next();
                            } else {
                                break;
                            }
                        }
                    }
                }
                toks.push(Tok { line, kind: TokKind::Number(text) });
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '!' {
                        text.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if chars.peek() == Some(&'\'') {
                    text.push('\'');
                    chars.next();
                }
                toks.push(Tok { line, kind: TokKind::Ident(text) });
            }
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unexpected character {other:?}"),
                });
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or(1, |t| t.line)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line(), msg: msg.into() }
    }

    fn peek(&self) -> Option<&TokKind> {
        self.toks.get(self.pos).map(|t| &t.kind)
    }

    fn next(&mut self) -> Option<TokKind> {
        let t = self.toks.get(self.pos).map(|t| t.kind.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, k: &TokKind) -> bool {
        if self.peek() == Some(k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, k: &TokKind, what: &str) -> Result<()> {
        if self.eat(k) {
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(TokKind::Ident(_)) => {
                let Some(TokKind::Ident(s)) = self.next() else { unreachable!() };
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<()> {
        let line = self.line();
        let got = self.expect_ident(&format!("keyword {word}"))?;
        if got != word {
            return Err(Error::Parse {
                line,
                msg: format!("expected keyword {word}, found {got}"),
            });
        }
        Ok(())
    }
}

fn is_variable(name: &str) -> Option<u8> {
    let rest = name.strip_prefix('x')?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse::<u8>().ok().filter(|&n| n >= 1)
}

#[derive(Clone, Debug)]
pub struct ParsedOperad {
    pub name: String,
    pub generators: Vec<Generator>,
    pub relations: Vec<IdentityTemplate>,
}

/// Parses a file of `operad { ... }` blocks.
pub fn parse_operads(src: &str) -> Result<Vec<ParsedOperad>> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    while p.peek().is_some() {
        p.expect_keyword("operad")?;
        let name = p.expect_ident("operad name")?;
        p.expect(&TokKind::LBrace, "{")?;
        let mut generators = Vec::new();
        let mut relations = Vec::new();
        loop {
            if p.eat(&TokKind::RBrace) {
                break;
            }
            let line = p.line();
            let word = p.expect_ident("gen, rel, or }")?;
            match word.as_str() {
                "gen" => {
                    let gname = p.expect_ident("generator name")?;
                    if is_variable(&gname).is_some() {
                        return Err(Error::Parse {
                            line,
                            msg: format!("{gname} is reserved for variables"),
                        });
                    }
                    let kind = p.expect_ident("sym, antisym, or plain")?;
                    let symmetry = match kind.as_str() {
                        "sym" => Symmetry::Sym,
                        "antisym" => Symmetry::Antisym,
                        "plain" => Symmetry::Plain,
                        other => {
                            return Err(Error::Parse {
                                line,
                                msg: format!("unknown symmetry {other}"),
                            })
                        }
                    };
                    generators.push(Generator { name: gname, symmetry });
                }
                "rel" => {
                    relations.push(IdentityTemplate { terms: parse_terms(&mut p)? });
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected gen or rel, found {other}"),
                    })
                }
            }
        }
        out.push(ParsedOperad { name, generators, relations });
    }
    Ok(out)
}

fn parse_terms(p: &mut Parser) -> Result<Vec<(Rational, Expr)>> {
    let mut out = Vec::new();
    let mut sign = if p.eat(&TokKind::Minus) { -1i64 } else { 1 };
    loop {
        let mut coeff = Rational::from_integer(sign.into());
        if let Some(TokKind::Number(_)) = p.peek() {
            let Some(TokKind::Number(text)) = p.next() else { unreachable!() };
            coeff *= parse_rational(&text)?;
            p.eat(&TokKind::Star);
        }
        out.push((coeff, parse_expr(p, 0)?));
        if p.eat(&TokKind::Plus) {
            sign = 1;
        } else if p.eat(&TokKind::Minus) {
            sign = -1;
        } else {
            break;
        }
    }
    Ok(out)
}

fn parse_expr(p: &mut Parser, depth: usize) -> Result<Expr> {
    let line = p.line();
    if depth > 64 {
        return Err(Error::Parse { line, msg: "expression nests too deeply".into() });
    }
    let name = p.expect_ident("variable or generator application")?;
    if let Some(v) = is_variable(&name) {
        return Ok(Expr::Var(v));
    }
    if name.ends_with('\'') {
        return Err(Error::Parse {
            line,
            msg: "transpose marks are not allowed in relations; swap the arguments instead".into(),
        });
    }
    p.expect(&TokKind::LParen, "( after generator name")?;
    let a = parse_expr(p, depth + 1)?;
    p.expect(&TokKind::Comma, ", between arguments")?;
    let b = parse_expr(p, depth + 1)?;
    p.expect(&TokKind::RParen, ") after arguments")?;
    Ok(Expr::App(name, Box::new(a), Box::new(b)))
}

/// One summand of a generator image: `coeff * symbol`, possibly transposed.
#[derive(Clone, Debug, PartialEq)]
pub struct GenTerm {
    pub coeff: Rational,
    pub symbol: String,
    pub transposed: bool,
}

#[derive(Clone, Debug)]
pub struct ParsedGenMap {
    pub source: String,
    pub target: String,
    pub images: Vec<(String, Vec<GenTerm>)>,
}

/// Parses a generator-map file.
pub fn parse_genmap(src: &str) -> Result<ParsedGenMap> {
    let mut p = Parser::new(src)?;
    p.expect_keyword("source")?;
    let source = p.expect_ident("source presentation name")?;
    p.expect_keyword("target")?;
    let target = p.expect_ident("target presentation name")?;
    let mut images = Vec::new();
    while p.peek().is_some() {
        let line = p.line();
        let gen = p.expect_ident("generator name")?;
        if gen.ends_with('\'') {
            return Err(Error::Parse {
                line,
                msg: "left side of -> must be a plain generator name".into(),
            });
        }
        p.expect(&TokKind::Arrow, "->")?;
        images.push((gen, parse_combo(&mut p)?));
    }
    Ok(ParsedGenMap { source, target, images })
}

fn parse_combo(p: &mut Parser) -> Result<Vec<GenTerm>> {
    let mut out = Vec::new();
    let mut sign = if p.eat(&TokKind::Minus) { -1i64 } else { 1 };
    loop {
        let line = p.line();
        let mut coeff = Rational::from_integer(sign.into());
        let mut saw_number = false;
        if let Some(TokKind::Number(_)) = p.peek() {
            let Some(TokKind::Number(text)) = p.next() else { unreachable!() };
            coeff *= parse_rational(&text)?;
            p.eat(&TokKind::Star);
            saw_number = true;
        }
        match p.peek() {
            Some(TokKind::Ident(_)) => {
                let Some(TokKind::Ident(name)) = p.next() else { unreachable!() };
                let transposed = name.ends_with('\'');
                let symbol = name.trim_end_matches('\'').to_string();
                out.push(GenTerm { coeff, symbol, transposed });
            }
            _ if saw_number && coeff.is_zero() => {}
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: "expected a generator name in the image".into(),
                })
            }
        }
        if p.eat(&TokKind::Plus) {
            sign = 1;
        } else if p.eat(&TokKind::Minus) {
            sign = -1;
        } else {
            break;
        }
    }
    Ok(out)
}

pub(crate) fn render_signed_terms(terms: &[(Rational, String)]) -> String {
    let mut out = String::new();
    for (i, (coeff, body)) in terms.iter().enumerate() {
        let mag = coeff.abs();
        if i == 0 {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !mag.is_one() {
            out.push_str(&format_rational(&mag));
            out.push(' ');
        }
        out.push_str(body);
    }
    out
}

fn render_expr(e: &Expr) -> String {
    match e {
        Expr::Var(v) => format!("x{v}"),
        Expr::App(name, a, b) => format!("{}({},{})", name, render_expr(a), render_expr(b)),
    }
}

/// Renders a coordinate row of a free component as a signed sum of monomials.
pub fn render_row(
    alph: &crate::trees::Alphabet,
    comp: &FreeComponent,
    row: &[(u32, Rational)],
) -> String {
    if row.is_empty() {
        return "0".into();
    }
    let terms: Vec<(Rational, String)> = row
        .iter()
        .map(|(i, c)| (c.clone(), alph.render_tree(comp.monomial(*i as usize))))
        .collect();
    render_signed_terms(&terms)
}

/// Pretty-prints a presentation in the operad block format.  Relations come
/// from the stored templates when present, otherwise from the canonical
/// relation basis.
pub fn print_presentation(p: &Presentation) -> String {
    let mut out = format!("operad {} {{\n", p.name);
    for g in p.alphabet.generators() {
        out.push_str(&format!("  gen {} {}\n", g.name, g.symmetry.keyword()));
    }
    if !p.templates.is_empty() {
        for t in &p.templates {
            let terms: Vec<(Rational, String)> =
                t.terms.iter().map(|(c, e)| (c.clone(), render_expr(e))).collect();
            out.push_str(&format!("  rel {}\n", render_signed_terms(&terms)));
        }
    } else if p.relations.dim() > 0 {
        let comp = FreeComponent::enumerate(&p.alphabet, 3);
        for row in p.relations.basis() {
            out.push_str(&format!("  rel {}\n", render_row(&p.alphabet, &comp, row)));
        }
    }
    out.push_str("}\n");
    out
}
