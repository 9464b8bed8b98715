//! The presentation file format and canonical text syntax.
//!
//! Presentation files are plain text, line oriented, `#` starts a comment.
//! Sections: `objects`, `arrows`, `order`, `relations`, and optionally
//! `gamma` (acting graph, `object`/`arrow` lines) and `fmap` (images of
//! acting objects and arrows). One format serves both plain category
//! presentations (no `gamma`/`fmap`) and presentations of induced actions.
//!
//! ```text
//! # three idempotent loops
//! objects B
//! arrows
//!   e1 : B -> B
//!   e2 : B -> B
//! order deglex e1 < e2
//! relations
//!   e1*e1 - e1
//!   2/9 e2 - 2/9 e1
//! gamma
//!   object A
//!   arrow q : A -> A
//! fmap
//!   A -> B
//!   q -> e2*e1
//! ```
//!
//! Terms are `*`-separated arrow names, coefficients integers or `num/den`
//! rationals, the identity path at `B` is written `1(B)`, tagged terms are
//! `A|e2*e1` and `A|1`. Polynomials print with terms in descending order
//! and rationals in lowest terms, which is the canonical form used by the
//! golden tests.
//!
//! Basis files serialize a completed (or partially completed) system with
//! provenance: the same sections plus `basis`, `status`, `input-sha256`,
//! `limits`, `rules`, and `eps-rules`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::completion::Limits;
use crate::kan::{KanPresentation, MixedSystem};
use crate::order::PathOrder;
use crate::poly::PathPolynomial;
use crate::quiver::{ObjectId, Path, Quiver};
use crate::rewrite::{RewriteSystem, SystemStatus};
use crate::scalar::Scalar;
use crate::tagged::{TagId, TaggedPolynomial, TaggedTerm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
}

impl TextError {
    fn syntax(line: usize, col: usize, message: impl Into<String>) -> TextError {
        TextError::Syntax { line, col, message: message.into() }
    }

    fn semantic(line: usize, message: impl Into<String>) -> TextError {
        TextError::Semantic { line, message: message.into() }
    }
}

/// Image data of the acting graph under `F`.
#[derive(Clone, Debug)]
pub struct GammaSection {
    pub gamma: Quiver,
    pub f_obj: Vec<ObjectId>,
    pub f_arr: Vec<PathPolynomial>,
}

#[derive(Clone, Debug)]
pub struct PresentationFile {
    pub quiver: Quiver,
    pub order: PathOrder,
    pub relations: Vec<PathPolynomial>,
    pub gamma: Option<GammaSection>,
}

impl PresentationFile {
    pub fn to_rewrite_system(&self) -> Result<RewriteSystem, crate::rewrite::RewriteError> {
        RewriteSystem::new(self.quiver.clone(), self.order.clone(), self.relations.clone())
    }

    /// Requires `gamma`/`fmap` sections.
    pub fn to_kan_presentation(&self) -> Result<KanPresentation, crate::kan::KanError> {
        let g = self.gamma.as_ref().ok_or_else(|| {
            crate::kan::KanError::InvalidPresentation(
                "file has no gamma/fmap sections".into(),
            )
        })?;
        KanPresentation::new(
            g.gamma.clone(),
            self.quiver.clone(),
            self.relations.clone(),
            g.f_obj.clone(),
            g.f_arr.clone(),
        )
    }
}

// ---------------------------------------------------------------- tokens --

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Slash,
    Pipe,
    LParen,
    RParen,
}

fn tokenize_poly(line: usize, text: &str) -> Result<Vec<(usize, Tok)>, TextError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((col, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((col, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((col, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((col, Tok::Slash));
                i += 1;
            }
            '|' => {
                out.push((col, Tok::Pipe));
                i += 1;
            }
            '(' => {
                out.push((col, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((col, Tok::RParen));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start + 1, Tok::Int(chars[start..i].iter().collect())));
            }
            c if is_name_start(c) => {
                let start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                out.push((start + 1, Tok::Name(chars[start..i].iter().collect())));
            }
            other => {
                return Err(TextError::syntax(line, col, format!("unexpected character {other:?}")))
            }
        }
    }
    Ok(out)
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

// ------------------------------------------------------ polynomial parse --

struct PolyParser<'a> {
    line: usize,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    quiver: &'a Quiver,
    order: &'a PathOrder,
}

impl<'a> PolyParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(c, _)| *c)
            .unwrap_or_else(|| self.toks.last().map(|(c, _)| c + 1).unwrap_or(1))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn err(&self, message: impl Into<String>) -> TextError {
        TextError::syntax(self.line, self.col(), message)
    }

    /// coefficient := INT [ '/' INT ]
    fn parse_coeff(&mut self) -> Result<Scalar, TextError> {
        let Some(Tok::Int(n)) = self.bump() else {
            return Err(self.err("expected an integer"));
        };
        let mut text = n;
        if self.peek() == Some(&Tok::Slash) {
            self.bump();
            let Some(Tok::Int(d)) = self.bump() else {
                return Err(self.err("expected a denominator"));
            };
            text = format!("{text}/{d}");
        }
        text.parse::<Scalar>().map_err(|e| self.err(e))
    }

    /// factor := NAME | '1' '(' NAME ')'
    /// Returns either an arrow path segment or an identity path.
    fn parse_factor(&mut self) -> Result<Path, TextError> {
        match self.bump() {
            Some(Tok::Name(name)) => {
                let id = self
                    .quiver
                    .arrow_id(&name)
                    .map_err(|_| self.err(format!("unknown arrow {name:?}")))?;
                Ok(Path::from_arrows(self.quiver, vec![id]).expect("single arrow"))
            }
            Some(Tok::Int(n)) if n == "1" => {
                if self.bump() != Some(Tok::LParen) {
                    return Err(self.err("identity path is written 1(OBJECT)"));
                }
                let Some(Tok::Name(obj)) = self.bump() else {
                    return Err(self.err("expected an object name"));
                };
                if self.bump() != Some(Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                let id = self
                    .quiver
                    .object_id(&obj)
                    .map_err(|_| self.err(format!("unknown object {obj:?}")))?;
                Ok(Path::identity(id))
            }
            _ => Err(self.err("expected an arrow name or 1(OBJECT)")),
        }
    }

    /// factors := factor { '*' factor }, composed left to right
    fn parse_path(&mut self) -> Result<Path, TextError> {
        let mut path = self.parse_factor()?;
        while self.peek() == Some(&Tok::Star) {
            // a '*' may also precede the next term's coefficient? no:
            // '*' only joins factors
            self.bump();
            let next = self.parse_factor()?;
            path = path
                .compose(&next)
                .map_err(|_| self.err("factors do not compose"))?;
        }
        Ok(path)
    }

    /// term := [coefficient ['*']] factors | coefficient? — a bare
    /// coefficient is rejected, identities must be explicit.
    fn parse_term(&mut self) -> Result<(Scalar, Path), TextError> {
        let coeff = match (self.peek(), self.peek2()) {
            (Some(Tok::Int(_)), Some(Tok::LParen)) => Scalar::one(), // identity factor
            (Some(Tok::Int(_)), _) => {
                let k = self.parse_coeff()?;
                if self.peek() == Some(&Tok::Star) {
                    self.bump();
                }
                k
            }
            _ => Scalar::one(),
        };
        match self.peek() {
            Some(Tok::Name(_)) | Some(Tok::Int(_)) => {
                let path = self.parse_path()?;
                Ok((coeff, path))
            }
            _ => Err(self.err("a scalar term needs an explicit identity path: write k 1(OBJECT)")),
        }
    }

    fn parse_polynomial(&mut self) -> Result<PathPolynomial, TextError> {
        let mut terms: Vec<(Scalar, Path)> = Vec::new();
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            negate = true;
        }
        loop {
            let (k, p) = self.parse_term()?;
            terms.push((if negate { -k } else { k }, p));
            match self.peek() {
                None => break,
                Some(Tok::Plus) => {
                    self.bump();
                    negate = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    negate = true;
                }
                _ => return Err(self.err("expected '+', '-' or end of line")),
            }
        }
        PathPolynomial::from_terms(self.order, terms).map_err(|e| {
            TextError::semantic(self.line, format!("invalid polynomial: {e}"))
        })
    }

    /// tagged term := NAME '|' (factors | '1')
    fn parse_tagged_term(
        &mut self,
        gamma: &Quiver,
        f_obj: &[ObjectId],
    ) -> Result<TaggedTerm, TextError> {
        let Some(Tok::Name(tag)) = self.bump() else {
            return Err(self.err("expected a tag name"));
        };
        let tag_id = gamma
            .object_id(&tag)
            .map_err(|_| self.err(format!("unknown tag {tag:?}")))?;
        if self.bump() != Some(Tok::Pipe) {
            return Err(self.err("expected '|' after the tag"));
        }
        let path = match (self.peek(), self.peek2()) {
            (Some(Tok::Int(n)), p2) if n == "1" && p2 != Some(&Tok::LParen) => {
                self.bump();
                Path::identity(f_obj[tag_id.0])
            }
            _ => self.parse_path()?,
        };
        if path.src() != f_obj[tag_id.0] {
            return Err(TextError::semantic(
                self.line,
                format!("path after {tag}| must start at the tag's image object"),
            ));
        }
        Ok(TaggedTerm::new(TagId(tag_id.0), path))
    }

    fn parse_tagged_polynomial(
        &mut self,
        gamma: &Quiver,
        f_obj: &[ObjectId],
    ) -> Result<TaggedPolynomial, TextError> {
        let mut terms: Vec<(Scalar, TaggedTerm)> = Vec::new();
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            negate = true;
        }
        loop {
            let coeff = match (self.peek(), self.peek2()) {
                (Some(Tok::Int(_)), p2) if p2 != Some(&Tok::Pipe) => {
                    let k = self.parse_coeff()?;
                    if self.peek() == Some(&Tok::Star) {
                        self.bump();
                    }
                    k
                }
                _ => Scalar::one(),
            };
            let term = self.parse_tagged_term(gamma, f_obj)?;
            terms.push((if negate { -coeff } else { coeff }, term));
            match self.peek() {
                None => break,
                Some(Tok::Plus) => {
                    self.bump();
                    negate = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    negate = true;
                }
                _ => return Err(self.err("expected '+', '-' or end of line")),
            }
        }
        TaggedPolynomial::from_terms(self.order, terms)
            .map_err(|e| TextError::semantic(self.line, format!("invalid tagged polynomial: {e}")))
    }
}

/// Parses one polynomial in the canonical text syntax.
pub fn parse_polynomial(
    text: &str,
    quiver: &Quiver,
    order: &PathOrder,
) -> Result<PathPolynomial, TextError> {
    parse_polynomial_at(1, text, quiver, order)
}

fn parse_polynomial_at(
    line: usize,
    text: &str,
    quiver: &Quiver,
    order: &PathOrder,
) -> Result<PathPolynomial, TextError> {
    let toks = tokenize_poly(line, text)?;
    if toks.is_empty() {
        return Err(TextError::syntax(line, 1, "empty polynomial"));
    }
    let mut p = PolyParser { line, toks, pos: 0, quiver, order };
    p.parse_polynomial()
}

fn parse_tagged_polynomial_at(
    line: usize,
    text: &str,
    quiver: &Quiver,
    order: &PathOrder,
    gamma: &Quiver,
    f_obj: &[ObjectId],
) -> Result<TaggedPolynomial, TextError> {
    let toks = tokenize_poly(line, text)?;
    if toks.is_empty() {
        return Err(TextError::syntax(line, 1, "empty polynomial"));
    }
    let mut p = PolyParser { line, toks, pos: 0, quiver, order };
    p.parse_tagged_polynomial(gamma, f_obj)
}

// -------------------------------------------------------- section splitter --

const PRESENTATION_SECTIONS: &[&str] =
    &["objects", "arrows", "order", "relations", "gamma", "fmap"];
const BASIS_SECTIONS: &[&str] = &[
    "basis", "status", "input-sha256", "limits", "objects", "arrows", "order", "rules",
    "eps-rules", "gamma", "fmap",
];

struct Section {
    name: String,
    header_line: usize,
    /// remainder of the header line, if any
    inline: Option<String>,
    /// (line number, content) of body lines
    body: Vec<(usize, String)>,
}

fn split_sections(text: &str, allowed: &[&str]) -> Result<Vec<Section>, TextError> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let first = trimmed.split_whitespace().next().unwrap();
        if allowed.contains(&first) {
            let rest = trimmed[first.len()..].trim();
            sections.push(Section {
                name: first.to_string(),
                header_line: line_no,
                inline: if rest.is_empty() { None } else { Some(rest.to_string()) },
                body: Vec::new(),
            });
        } else {
            match sections.last_mut() {
                Some(s) => s.body.push((line_no, trimmed.to_string())),
                None => {
                    return Err(TextError::syntax(
                        line_no,
                        1,
                        format!("expected a section header, found {first:?}"),
                    ))
                }
            }
        }
    }
    // duplicate sections are rejected
    for (i, s) in sections.iter().enumerate() {
        if sections[..i].iter().any(|t| t.name == s.name) {
            return Err(TextError::semantic(
                s.header_line,
                format!("duplicate section {:?}", s.name),
            ));
        }
    }
    Ok(sections)
}

fn find<'a>(sections: &'a [Section], name: &str) -> Option<&'a Section> {
    sections.iter().find(|s| s.name == name)
}

fn section_items(s: &Section) -> Vec<(usize, String)> {
    let mut items = Vec::new();
    if let Some(inline) = &s.inline {
        items.push((s.header_line, inline.clone()));
    }
    items.extend(s.body.iter().cloned());
    items
}

/// `name : src -> tgt`
fn parse_arrow_decl(line: usize, text: &str) -> Result<(String, String, String), TextError> {
    let padded = text.replace("->", " -> ").replace(':', " : ");
    let toks: Vec<&str> = padded.split_whitespace().collect();
    match toks.as_slice() {
        [name, ":", src, "->", tgt] => Ok((name.to_string(), src.to_string(), tgt.to_string())),
        _ => Err(TextError::syntax(line, 1, "expected `name : src -> tgt`")),
    }
}

/// Section keywords are reserved: a file could not declare them anyway,
/// since a line starting with one is read as a section header.
fn check_reserved(line: usize, name: &str) -> Result<(), TextError> {
    if BASIS_SECTIONS.contains(&name) || name == "object" || name == "arrow" {
        return Err(TextError::semantic(
            line,
            format!("{name:?} is a reserved word and cannot name an object or arrow"),
        ));
    }
    Ok(())
}

fn build_quiver(
    objects_sec: Option<&Section>,
    arrows_sec: Option<&Section>,
    require_objects_line: usize,
) -> Result<Quiver, TextError> {
    let objects_sec = objects_sec.ok_or_else(|| {
        TextError::semantic(require_objects_line, "missing `objects` section")
    })?;
    let mut objects: Vec<String> = Vec::new();
    for (ln, line) in section_items(objects_sec) {
        for name in line.split_whitespace() {
            check_reserved(ln, name)?;
            objects.push(name.to_string());
        }
    }
    let mut arrows = Vec::new();
    if let Some(sec) = arrows_sec {
        for (ln, line) in section_items(sec) {
            let decl = parse_arrow_decl(ln, &line)?;
            check_reserved(ln, &decl.0)?;
            arrows.push(decl);
        }
    }
    Quiver::new(objects, arrows)
        .map_err(|e| TextError::semantic(objects_sec.header_line, e.to_string()))
}

fn build_order(sec: Option<&Section>, quiver: &Quiver) -> Result<PathOrder, TextError> {
    let Some(sec) = sec else {
        return Ok(PathOrder::deglex_by_declaration(quiver));
    };
    let items = section_items(sec);
    let text = items
        .iter()
        .map(|(_, s)| s.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    let padded = text.replace('<', " < ");
    let toks: Vec<&str> = padded.split_whitespace().collect();
    let Some((kind, rest)) = toks.split_first() else {
        return Err(TextError::syntax(sec.header_line, 1, "expected `order deglex a < b < ...`"));
    };
    if *kind != "deglex" {
        return Err(TextError::semantic(
            sec.header_line,
            format!("unknown order kind {kind:?} (only deglex is supported)"),
        ));
    }
    let mut names = Vec::new();
    let mut expect_name = true;
    for t in rest {
        if expect_name {
            if *t == "<" {
                return Err(TextError::syntax(sec.header_line, 1, "expected an arrow name"));
            }
            names.push(*t);
        } else if *t != "<" {
            return Err(TextError::syntax(sec.header_line, 1, "expected '<'"));
        }
        expect_name = !expect_name;
    }
    PathOrder::deglex(quiver, &names)
        .map_err(|e| TextError::semantic(sec.header_line, e.to_string()))
}

fn build_gamma(
    gamma_sec: Option<&Section>,
    fmap_sec: Option<&Section>,
    quiver: &Quiver,
    order: &PathOrder,
) -> Result<Option<GammaSection>, TextError> {
    let gamma_sec = match (gamma_sec, fmap_sec) {
        (None, None) => return Ok(None),
        (Some(g), Some(_)) => g,
        (Some(g), None) => {
            return Err(TextError::semantic(g.header_line, "gamma section without fmap"))
        }
        (None, Some(f)) => {
            return Err(TextError::semantic(f.header_line, "fmap section without gamma"))
        }
    };
    let fmap_sec = fmap_sec.unwrap();

    let mut objects: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for (ln, line) in section_items(gamma_sec) {
        let Some(first) = line.split_whitespace().next() else { continue };
        let rest = line[first.len()..].trim();
        match first {
            "object" | "objects" => {
                for name in rest.split_whitespace() {
                    check_reserved(ln, name)?;
                    objects.push(name.to_string());
                }
            }
            "arrow" | "arrows" => {
                let decl = parse_arrow_decl(ln, rest)?;
                check_reserved(ln, &decl.0)?;
                arrows.push(decl);
            }
            _ => {
                return Err(TextError::syntax(
                    ln,
                    1,
                    "gamma lines start with `object` or `arrow`",
                ))
            }
        }
    }
    let gamma = Quiver::new(objects, arrows)
        .map_err(|e| TextError::semantic(gamma_sec.header_line, e.to_string()))?;

    let mut f_obj: Vec<Option<ObjectId>> = vec![None; gamma.object_count()];
    let mut f_arr: Vec<Option<PathPolynomial>> = vec![None; gamma.arrow_count()];
    for (ln, line) in section_items(fmap_sec) {
        let Some((lhs, rhs)) = line.split_once("->") else {
            return Err(TextError::syntax(ln, 1, "expected `name -> image`"));
        };
        let lhs = lhs.trim();
        let rhs = rhs.trim();
        if let Ok(oid) = gamma.object_id(lhs) {
            let img = quiver
                .object_id(rhs)
                .map_err(|e| TextError::semantic(ln, e.to_string()))?;
            f_obj[oid.0] = Some(img);
        } else if let Ok(aid) = gamma.arrow_id(lhs) {
            let poly = parse_polynomial_at(ln, rhs, quiver, order)?;
            f_arr[aid.0] = Some(poly);
        } else {
            return Err(TextError::semantic(
                ln,
                format!("{lhs:?} is not a gamma object or arrow"),
            ));
        }
    }
    let f_obj = f_obj
        .into_iter()
        .enumerate()
        .map(|(i, o)| {
            o.ok_or_else(|| {
                TextError::semantic(
                    fmap_sec.header_line,
                    format!("fmap misses gamma object {:?}", gamma.object_name(ObjectId(i))),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let f_arr = f_arr
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            p.ok_or_else(|| {
                TextError::semantic(
                    fmap_sec.header_line,
                    format!(
                        "fmap misses gamma arrow {:?}",
                        gamma.arrow(crate::quiver::ArrowId(i)).name
                    ),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Some(GammaSection { gamma, f_obj, f_arr }))
}

/// Parses a presentation file.
pub fn parse_presentation(text: &str) -> Result<PresentationFile, TextError> {
    let sections = split_sections(text, PRESENTATION_SECTIONS)?;
    let quiver = build_quiver(find(&sections, "objects"), find(&sections, "arrows"), 1)?;
    let order = build_order(find(&sections, "order"), &quiver)?;
    let mut relations = Vec::new();
    if let Some(sec) = find(&sections, "relations") {
        for (ln, line) in section_items(sec) {
            relations.push(parse_polynomial_at(ln, &line, &quiver, &order)?);
        }
    }
    let gamma = build_gamma(find(&sections, "gamma"), find(&sections, "fmap"), &quiver, &order)?;
    Ok(PresentationFile { quiver, order, relations, gamma })
}

// ---------------------------------------------------------------- printing --

fn write_quiver_sections(out: &mut String, quiver: &Quiver, order: &PathOrder) {
    let names: Vec<&str> = quiver.object_names().collect();
    let _ = writeln!(out, "objects {}", names.join(" "));
    if quiver.arrow_count() > 0 {
        let _ = writeln!(out, "arrows");
        for (_, a) in quiver.arrows() {
            let _ = writeln!(
                out,
                "  {} : {} -> {}",
                a.name,
                quiver.object_name(a.src),
                quiver.object_name(a.tgt)
            );
        }
        let chain: Vec<String> = order
            .arrows_ascending()
            .iter()
            .map(|id| quiver.arrow(*id).name.clone())
            .collect();
        let _ = writeln!(out, "order deglex {}", chain.join(" < "));
    }
}

fn write_gamma_sections(
    out: &mut String,
    quiver: &Quiver,
    gamma: &Quiver,
    f_obj: &[ObjectId],
    f_arr: &[PathPolynomial],
) {
    let _ = writeln!(out, "gamma");
    let names: Vec<&str> = gamma.object_names().collect();
    let _ = writeln!(out, "  object {}", names.join(" "));
    for (_, a) in gamma.arrows() {
        let _ = writeln!(
            out,
            "  arrow {} : {} -> {}",
            a.name,
            gamma.object_name(a.src),
            gamma.object_name(a.tgt)
        );
    }
    let _ = writeln!(out, "fmap");
    for (i, img) in f_obj.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {} -> {}",
            gamma.object_name(ObjectId(i)),
            quiver.object_name(*img)
        );
    }
    for (id, a) in gamma.arrows() {
        let _ = writeln!(out, "  {} -> {}", a.name, f_arr[id.0].display(quiver));
    }
}

/// Canonical text of a presentation; parsing it back yields an identical
/// presentation.
pub fn print_presentation(file: &PresentationFile) -> String {
    let mut out = String::new();
    write_quiver_sections(&mut out, &file.quiver, &file.order);
    if !file.relations.is_empty() {
        let _ = writeln!(out, "relations");
        for rel in &file.relations {
            let _ = writeln!(out, "  {}", rel.display(&file.quiver));
        }
    }
    if let Some(g) = &file.gamma {
        write_gamma_sections(&mut out, &file.quiver, &g.gamma, &g.f_obj, &g.f_arr);
    }
    out
}

// -------------------------------------------------------------- basis files --

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub input_sha256: Option<String>,
    pub limits: Limits,
}

#[derive(Clone, Debug)]
pub enum ParsedBasis {
    Plain(RewriteSystem, Provenance),
    Mixed(MixedSystem, Provenance),
}

fn status_str(s: SystemStatus) -> &'static str {
    match s {
        SystemStatus::Complete => "complete",
        SystemStatus::Candidate => "candidate",
    }
}

fn write_basis_common(
    out: &mut String,
    quiver: &Quiver,
    order: &PathOrder,
    status: SystemStatus,
    prov: &Provenance,
) {
    let _ = writeln!(out, "basis 1");
    let _ = writeln!(out, "status {}", status_str(status));
    if let Some(h) = &prov.input_sha256 {
        let _ = writeln!(out, "input-sha256 {h}");
    }
    let _ = writeln!(
        out,
        "limits max-rules={} max-degree={} max-passes={}",
        prov.limits.max_rules, prov.limits.max_degree, prov.limits.max_passes
    );
    write_quiver_sections(out, quiver, order);
}

/// Serializes a completed (or candidate) system with provenance.
pub fn serialize_basis(sys: &RewriteSystem, prov: &Provenance) -> String {
    let mut out = String::new();
    write_basis_common(&mut out, sys.quiver(), sys.order(), sys.status(), prov);
    let _ = writeln!(out, "rules");
    for rule in sys.rules() {
        let _ = writeln!(out, "  {}", rule.poly().display(sys.quiver()));
    }
    out
}

pub fn serialize_mixed_basis(sys: &MixedSystem, prov: &Provenance) -> String {
    let mut out = String::new();
    let base = sys.base();
    write_basis_common(&mut out, base.quiver(), base.order(), sys.status(), prov);
    let _ = writeln!(out, "rules");
    for rule in base.rules() {
        let _ = writeln!(out, "  {}", rule.poly().display(base.quiver()));
    }
    // the eps rules already carry the compiled images, so only the acting
    // objects and their image objects are serialized
    let _ = writeln!(out, "gamma");
    let names: Vec<&str> = sys.gamma().object_names().collect();
    let _ = writeln!(out, "  object {}", names.join(" "));
    let _ = writeln!(out, "fmap");
    for (i, img) in sys.f_obj().iter().enumerate() {
        let _ = writeln!(
            out,
            "  {} -> {}",
            sys.gamma().object_name(ObjectId(i)),
            base.quiver().object_name(*img)
        );
    }
    let _ = writeln!(out, "eps-rules");
    for rule in sys.eps_rules() {
        let _ = writeln!(out, "  {}", rule.poly().display(sys.gamma(), base.quiver()));
    }
    out
}

/// Parses a basis file back into a system; `parse(serialize(sys))`
/// reproduces the rules, status, and provenance.
pub fn parse_basis(text: &str) -> Result<ParsedBasis, TextError> {
    let sections = split_sections(text, BASIS_SECTIONS)?;
    let version = find(&sections, "basis")
        .ok_or_else(|| TextError::semantic(1, "missing `basis` header"))?;
    if version.inline.as_deref() != Some("1") {
        return Err(TextError::semantic(version.header_line, "unsupported basis version"));
    }
    let status_sec = find(&sections, "status")
        .ok_or_else(|| TextError::semantic(1, "missing `status`"))?;
    let status = match status_sec.inline.as_deref() {
        Some("complete") => SystemStatus::Complete,
        Some("candidate") => SystemStatus::Candidate,
        other => {
            return Err(TextError::semantic(
                status_sec.header_line,
                format!("unknown status {other:?}"),
            ))
        }
    };
    let input_sha256 = find(&sections, "input-sha256").and_then(|s| s.inline.clone());
    let mut limits = Limits::default();
    if let Some(sec) = find(&sections, "limits") {
        for part in sec.inline.as_deref().unwrap_or("").split_whitespace() {
            let Some((key, val)) = part.split_once('=') else {
                return Err(TextError::syntax(sec.header_line, 1, "expected key=value"));
            };
            let n: usize = val.parse().map_err(|_| {
                TextError::syntax(sec.header_line, 1, format!("bad number {val:?}"))
            })?;
            match key {
                "max-rules" => limits.max_rules = n,
                "max-degree" => limits.max_degree = n,
                "max-passes" => limits.max_passes = n,
                _ => {
                    return Err(TextError::semantic(
                        sec.header_line,
                        format!("unknown limit {key:?}"),
                    ))
                }
            }
        }
    }
    let prov = Provenance { input_sha256, limits };

    let quiver = build_quiver(find(&sections, "objects"), find(&sections, "arrows"), 1)?;
    let order = build_order(find(&sections, "order"), &quiver)?;
    let mut rules = Vec::new();
    if let Some(sec) = find(&sections, "rules") {
        for (ln, line) in section_items(sec) {
            rules.push(parse_polynomial_at(ln, &line, &quiver, &order)?);
        }
    }
    let mut base = RewriteSystem::new(quiver.clone(), order.clone(), rules)
        .map_err(|e| TextError::semantic(1, e.to_string()))?;
    base.set_status(status);

    match build_gamma(find(&sections, "gamma"), find(&sections, "fmap"), &quiver, &order)? {
        None => {
            if find(&sections, "eps-rules").is_some() {
                return Err(TextError::semantic(1, "eps-rules require gamma/fmap sections"));
            }
            Ok(ParsedBasis::Plain(base, prov))
        }
        Some(g) => {
            let mut eps = Vec::new();
            if let Some(sec) = find(&sections, "eps-rules") {
                for (ln, line) in section_items(sec) {
                    eps.push(parse_tagged_polynomial_at(
                        ln, &line, &quiver, &order, &g.gamma, &g.f_obj,
                    )?);
                }
            }
            let mixed = MixedSystem::assemble(base, eps, g.gamma, g.f_obj, status)
                .map_err(|e| TextError::semantic(1, e.to_string()))?;
            Ok(ParsedBasis::Mixed(mixed, prov))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HECKE: &str = "\
# idempotent generators with braid-type corrections
objects B
arrows
  e1 : B -> B
  e2 : B -> B
  e3 : B -> B
order deglex e1 < e2 < e3
relations
  e1*e1 - e1
  e2*e2 - e2
  e3*e3 - e3
  e3*e1 - e1*e3
  e2*e1*e2 - e1*e2*e1 + 2/9 e2 - 2/9 e1
  e3*e2*e3 - e2*e3*e2 + 2/9 e3 - 2/9 e2
";

    #[test]
    fn parses_the_idempotent_presentation() {
        let file = parse_presentation(HECKE).unwrap();
        assert_eq!(file.quiver.arrow_count(), 3);
        assert_eq!(file.relations.len(), 6);
        assert!(file.gamma.is_none());
        let rel = &file.relations[4];
        assert_eq!(
            rel.display(&file.quiver).to_string(),
            "e2*e1*e2 - e1*e2*e1 + 2/9 e2 - 2/9 e1"
        );
    }

    #[test]
    fn round_trips_through_canonical_printing() {
        let file = parse_presentation(HECKE).unwrap();
        let printed = print_presentation(&file);
        let again = parse_presentation(&printed).unwrap();
        assert_eq!(print_presentation(&again), printed);
        assert_eq!(again.relations, file.relations);
    }

    #[test]
    fn multi_object_relation_has_proper_endpoints() {
        let text = "\
objects B1 B2 B3 B4
arrows
  a : B1 -> B2
  c : B2 -> B3
  d : B1 -> B3
  h : B1 -> B4
  g : B4 -> B3
order deglex a < c < d < g < h
relations
  a*c + d - h*g
";
        let file = parse_presentation(text).unwrap();
        let rel = &file.relations[0];
        assert_eq!(rel.src(), file.quiver.object_id("B1").unwrap());
        assert_eq!(rel.tgt(), file.quiver.object_id("B3").unwrap());
    }

    #[test]
    fn rejects_endpoint_mixing() {
        let text = "\
objects B1 B2 B3
arrows
  a : B1 -> B2
  c : B2 -> B3
relations
  a + c
";
        match parse_presentation(text).unwrap_err() {
            TextError::Semantic { line, .. } => assert_eq!(line, 6),
            other => panic!("expected semantic error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_sections_and_garbage() {
        assert!(matches!(
            parse_presentation("widgets B\n"),
            Err(TextError::Syntax { line: 1, .. })
        ));
        let text = "objects B\narrows\n  x : B -> B\nrelations\n  x $ x\n";
        assert!(matches!(parse_presentation(text), Err(TextError::Syntax { line: 5, .. })));
    }

    #[test]
    fn rejects_reserved_names_and_duplicate_sections() {
        let text = "objects B\narrows\n  rules : B -> B\n";
        assert!(matches!(parse_presentation(text), Err(TextError::Semantic { line: 3, .. })));
        let text = "objects order\n";
        assert!(matches!(parse_presentation(text), Err(TextError::Semantic { line: 1, .. })));
        let text = "objects B\nobjects C\n";
        assert!(matches!(parse_presentation(text), Err(TextError::Semantic { line: 2, .. })));
    }

    #[test]
    fn parses_identity_terms_and_tagged_files() {
        let text = "\
objects B
arrows
  x : B -> B
order deglex x
relations
  x*x - 1(B)
gamma
  object A
  arrow q : A -> A
fmap
  A -> B
  q -> x
";
        let file = parse_presentation(text).unwrap();
        let rel = &file.relations[0];
        assert_eq!(rel.term_count(), 2);
        let g = file.gamma.as_ref().unwrap();
        assert_eq!(g.f_obj, vec![file.quiver.object_id("B").unwrap()]);
        let p = file.to_kan_presentation().unwrap();
        assert_eq!(p.gamma().arrow_count(), 1);
    }

    #[test]
    fn basis_round_trip_preserves_rules_and_provenance() {
        let file = parse_presentation(HECKE).unwrap();
        let sys = file.to_rewrite_system().unwrap();
        let prov = Provenance {
            input_sha256: Some("deadbeef".into()),
            limits: Limits { max_rules: 7, max_degree: 9, max_passes: 3 },
        };
        let text = serialize_basis(&sys, &prov);
        let ParsedBasis::Plain(back, prov2) = parse_basis(&text).unwrap() else {
            panic!("expected a plain basis");
        };
        assert_eq!(prov2, prov);
        assert_eq!(back.status(), sys.status());
        let a: Vec<_> = sys.rules().iter().map(|r| r.poly().clone()).collect();
        let b: Vec<_> = back.rules().iter().map(|r| r.poly().clone()).collect();
        assert_eq!(a, b);
        // byte-determinism
        assert_eq!(serialize_basis(&sys, &prov), text);
    }
}
