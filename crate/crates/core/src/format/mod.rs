//! Line-oriented text format.
//!
//! A document starts with `kind <kind> v1`, optionally followed by `name <name>`. Blank lines
//! and `#` comments are ignored. Nested objects sit between `begin <kind> <name>` and `end`.
//!
//! ```text
//! kind simplicial v1
//! cell 0 a
//! cell 0 b
//! cell 1 e : b a
//! cell 1 loop : a a
//! cell 2 t : s0.a loop e
//! ```
//!
//! Serialization is canonical: equal objects produce identical text.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::catcore::{catalog, CategoryBuilder, FiniteCategory, FunctorData, SetPresheaf};
use crate::complex::{Complex, ComplexMap, Operator, Simplex};
use crate::cubical::{CubeMorphism, CubicalSet};
use crate::descent::{CoverSpec, DiagramSpec};
use crate::error::{Error, Result};
use crate::simplicial::{Monotone, SimplicialMap, SimplicialSet};

pub const KINDS: [&str; 8] = [
    "category",
    "presheaf",
    "simplicial",
    "cubical",
    "cover",
    "diagram",
    "functor",
    "lifting-problem",
];

/// A simplicial map between two named complexes of a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMap {
    pub source: String,
    pub target: String,
    pub map: SimplicialMap,
}

/// Named complexes and maps between them; lifting commands pick the maps they need by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MapFamily {
    pub complexes: BTreeMap<String, SimplicialSet>,
    pub maps: BTreeMap<String, NamedMap>,
}

impl MapFamily {
    pub fn complex(&self, name: &str) -> Result<&SimplicialSet> {
        self.complexes
            .get(name)
            .ok_or_else(|| Error::malformed(format!("no complex named {name}")))
    }

    /// The map called `name`, with its source and target.
    pub fn map(&self, name: &str) -> Result<(&SimplicialSet, &SimplicialSet, &SimplicialMap)> {
        let m = self
            .maps
            .get(name)
            .ok_or_else(|| Error::malformed(format!("no map named {name}")))?;
        Ok((self.complex(&m.source)?, self.complex(&m.target)?, &m.map))
    }
}

#[derive(Clone, Debug)]
pub enum Document {
    Category(FiniteCategory),
    Presheaf(SetPresheaf),
    Simplicial(SimplicialSet),
    Cubical(CubicalSet),
    /// member names alongside the cover
    Cover(Vec<String>, CoverSpec),
    Diagram(DiagramSpec),
    Functor(FunctorData),
    Lifting(MapFamily),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Presheaf(_) => "presheaf",
            Document::Simplicial(_) => "simplicial",
            Document::Cubical(_) => "cubical",
            Document::Cover(..) => "cover",
            Document::Diagram(_) => "diagram",
            Document::Functor(_) => "functor",
            Document::Lifting(_) => "lifting-problem",
        }
    }
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        use Document::*;
        match (self, other) {
            (Category(a), Category(b)) => a == b,
            (Presheaf(a), Presheaf(b)) => a == b,
            (Simplicial(a), Simplicial(b)) => a == b,
            (Cubical(a), Cubical(b)) => a == b,
            (Cover(n, a), Cover(m, b)) => n == m && a.ambient == b.ambient && a.members == b.members,
            (Diagram(a), Diagram(b)) => a.shape == b.shape && a.objects == b.objects && a.maps == b.maps,
            (Functor(a), Functor(b)) => a == b,
            (Lifting(a), Lifting(b)) => a == b,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InputDocument {
    pub name: Option<String>,
    pub body: Document,
}

impl InputDocument {
    pub fn new(body: Document) -> Self {
        InputDocument { name: None, body }
    }
}

#[derive(Clone, Debug)]
struct Line<'a> {
    no: usize,
    tokens: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn keyword(&self) -> &'a str {
        self.tokens[0].1
    }

    fn error(&self, k: usize, message: impl Into<String>) -> Error {
        let column = self.tokens.get(k).or(self.tokens.last()).map_or(1, |t| t.0);
        Error::Parse {
            line: self.no,
            column,
            message: message.into(),
        }
    }

    fn end_error(&self, message: impl Into<String>) -> Error {
        let column = self.tokens.last().map_or(1, |(c, t)| c + t.chars().count());
        Error::Parse {
            line: self.no,
            column,
            message: message.into(),
        }
    }

    fn token(&self, k: usize, what: &str) -> Result<&'a str> {
        self.tokens
            .get(k)
            .map(|t| t.1)
            .ok_or_else(|| self.end_error(format!("expected {what}")))
    }

    fn number(&self, k: usize, what: &str) -> Result<usize> {
        self.token(k, what)?
            .parse()
            .map_err(|_| self.error(k, format!("expected {what}")))
    }

    fn expect(&self, k: usize, literal: &str) -> Result<()> {
        if self.token(k, &format!("'{literal}'"))? == literal {
            Ok(())
        } else {
            Err(self.error(k, format!("expected '{literal}'")))
        }
    }

    fn arity(&self, n: usize) -> Result<()> {
        if self.tokens.len() > n {
            Err(self.error(n, "unexpected token"))
        } else if self.tokens.len() < n {
            Err(self.end_error("line is too short"))
        } else {
            Ok(())
        }
    }

    /// `x = y` starting at token `k`.
    fn equation(&self, k: usize) -> Result<(&'a str, &'a str)> {
        self.arity(k + 3)?;
        self.expect(k + 1, "=")?;
        Ok((self.tokens[k].1, self.tokens[k + 2].1))
    }

    fn with_line(&self, e: Error) -> Error {
        match e {
            Error::Parse { .. } | Error::Budget { .. } => e,
            other => Error::Parse {
                line: self.no,
                column: self.tokens[0].0,
                message: other.to_string(),
            },
        }
    }
}

fn lex(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (byte, ch)) in content.char_indices().enumerate() {
            if ch.is_whitespace() {
                if let Some((c0, b0)) = start.take() {
                    tokens.push((c0 + 1, &content[b0..byte]));
                }
            } else if start.is_none() {
                start = Some((col, byte));
            }
        }
        if let Some((c0, b0)) = start {
            tokens.push((c0 + 1, &content[b0..]));
        }
        if !tokens.is_empty() {
            out.push(Line { no: i + 1, tokens });
        }
    }
    out
}

struct Block<'a> {
    kind: &'a str,
    name: &'a str,
    header: Line<'a>,
    lines: Vec<Line<'a>>,
}

/// Splits nested `begin`/`end` blocks from the surrounding lines.
fn split_blocks<'a>(lines: &[Line<'a>]) -> Result<(Vec<Line<'a>>, Vec<Block<'a>>)> {
    let mut top = Vec::new();
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let l = &lines[i];
        match l.keyword() {
            "begin" => {
                l.arity(3)?;
                let mut depth = 1;
                let mut j = i + 1;
                while j < lines.len() {
                    match lines[j].keyword() {
                        "begin" => depth += 1,
                        "end" => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    j += 1;
                }
                if j == lines.len() {
                    return Err(l.error(0, "block is never closed"));
                }
                lines[j].arity(1)?;
                blocks.push(Block {
                    kind: l.tokens[1].1,
                    name: l.tokens[2].1,
                    header: l.clone(),
                    lines: lines[i + 1..j].to_vec(),
                });
                i = j + 1;
            }
            "end" => return Err(l.error(0, "'end' without 'begin'")),
            _ => {
                top.push(l.clone());
                i += 1;
            }
        }
    }
    Ok((top, blocks))
}

fn no_blocks(blocks: &[Block<'_>], kind: &str) -> Result<()> {
    match blocks.first() {
        Some(b) => Err(b.header.error(0, format!("{kind} documents have no nested blocks"))),
        None => Ok(()),
    }
}

fn parse_complex<O: Operator>(lines: &[Line<'_>]) -> Result<Complex<O>> {
    let cubical = O::KIND == "cubical";
    let mut x = Complex::<O>::new();
    let mut i = 0;
    while i < lines.len() {
        let l = &lines[i];
        if l.keyword() != "cell" {
            return Err(l.error(0, format!("unknown keyword '{}' in a {} complex", l.keyword(), O::KIND)));
        }
        let dim = l.number(1, "a dimension")?;
        let id = l.token(2, "a cell id")?;
        let mut faces: Vec<Option<Simplex<O>>> = vec![None; O::face_count(dim)];
        i += 1;
        if cubical {
            l.arity(3)?;
            while i < lines.len() && lines[i].keyword() == "face" {
                let f = &lines[i];
                f.arity(4)?;
                let slot = O::parse_slot(dim, &[f.tokens[1].1, f.tokens[2].1])
                    .ok_or_else(|| f.error(1, format!("no face {} {} on a {dim}-cube", f.tokens[1].1, f.tokens[2].1)))?;
                if faces[slot].is_some() {
                    return Err(f.error(1, "face given twice"));
                }
                faces[slot] = Some(x.parse_reference(f.tokens[3].1).map_err(|e| f.with_line(e))?);
                i += 1;
            }
        } else if dim == 0 {
            l.arity(3)?;
        } else {
            l.arity(4 + faces.len())?;
            l.expect(3, ":")?;
            for (slot, f) in faces.iter_mut().enumerate() {
                *f = Some(x.parse_reference(l.tokens[4 + slot].1).map_err(|e| l.with_line(e))?);
            }
        }
        let faces: Vec<Simplex<O>> = faces
            .into_iter()
            .enumerate()
            .map(|(slot, f)| f.ok_or_else(|| l.error(2, format!("cell {id} is missing face {}", O::slot_label(dim, slot)))))
            .collect::<Result<_>>()?;
        x.add_cell(dim, id, faces).map_err(|e| l.with_line(e))?;
    }
    x.validate().into_result(&format!("{} complex", O::KIND))?;
    Ok(x)
}

fn catalog_category(l: &Line<'_>) -> Result<FiniteCategory> {
    let name = l.token(1, "a catalog name")?;
    let size = |k| l.number(k, "a size");
    Ok(match name {
        "terminal" => {
            l.arity(2)?;
            catalog::terminal()
        }
        "arrow" => {
            l.arity(2)?;
            catalog::arrow()
        }
        "simplex" => {
            l.arity(3)?;
            catalog::truncated::<Monotone>(size(2)?)
        }
        "cube" => {
            l.arity(3)?;
            catalog::truncated::<CubeMorphism>(size(2)?)
        }
        "cyclic" => {
            l.arity(3)?;
            let n = size(2)?;
            if n == 0 {
                return Err(l.error(2, "cyclic group of order 0"));
            }
            catalog::cyclic(n)
        }
        _ => return Err(l.error(1, format!("unknown catalog category '{name}'"))),
    })
}

/// Category lines: either one `base <catalog>` line, or `obj`/`mor`/`id`/`comp` lines.
fn parse_category(lines: &[&Line<'_>]) -> Result<FiniteCategory> {
    if let Some(b) = lines.iter().find(|l| l.keyword() == "base") {
        if let Some(other) = lines.iter().find(|l| l.keyword() != "base" || l.no != b.no) {
            return Err(other.error(0, "a 'base' line replaces the category lines"));
        }
        return catalog_category(b);
    }
    let mut builder = CategoryBuilder::new();
    for l in lines {
        match l.keyword() {
            "obj" => {
                l.arity(2)?;
                builder.object(l.tokens[1].1);
            }
            "mor" => {
                l.arity(4)?;
                builder.morphism(l.tokens[1].1, l.tokens[2].1, l.tokens[3].1);
            }
            "id" => {
                l.arity(3)?;
                builder.identity(l.tokens[1].1, l.tokens[2].1);
            }
            "comp" => {
                l.arity(5)?;
                l.expect(3, "=")?;
                builder.compose(l.tokens[1].1, l.tokens[2].1, l.tokens[4].1);
            }
            k => return Err(l.error(0, format!("unknown keyword '{k}' in a category"))),
        }
    }
    let c = builder.build()?;
    c.validate().into_result("category")?;
    Ok(c)
}

const CATEGORY_KEYWORDS: [&str; 5] = ["base", "obj", "mor", "id", "comp"];

fn parse_presheaf(lines: &[Line<'_>]) -> Result<SetPresheaf> {
    let (cat, rest): (Vec<&Line<'_>>, Vec<&Line<'_>>) = lines.iter().partition(|l| CATEGORY_KEYWORDS.contains(&l.keyword()));
    let base = Arc::new(parse_category(&cat)?);
    let mut elements = Vec::new();
    let mut action = Vec::new();
    for l in rest {
        match l.keyword() {
            "elt" => {
                l.arity(3)?;
                elements.push((l.tokens[1].1.to_string(), l.tokens[2].1.to_string()));
            }
            "act" => {
                let (y, x) = l.equation(2)?;
                action.push((l.tokens[1].1.to_string(), y.to_string(), x.to_string()));
            }
            k => return Err(l.error(0, format!("unknown keyword '{k}' in a presheaf"))),
        }
    }
    let x = SetPresheaf::from_ids(base, &elements, &action)?;
    x.validate().into_result("presheaf")?;
    Ok(x)
}

/// `<cell>=<ref>` pairs from token `k` on, one for every cell of `source`.
fn parse_map(l: &Line<'_>, k: usize, source: &SimplicialSet, target: &SimplicialSet) -> Result<SimplicialMap> {
    let mut images: Vec<Vec<Option<Simplex<Monotone>>>> =
        (0..=source.dim().unwrap_or(0)).map(|n| vec![None; source.cells(n).len()]).collect();
    for (j, (_, tok)) in l.tokens.iter().enumerate().skip(k) {
        let (cell, r) = tok
            .split_once('=')
            .ok_or_else(|| l.error(j, "expected <cell>=<ref>"))?;
        let c = source
            .find(cell)
            .ok_or_else(|| l.error(j, format!("no cell {cell} in the source")))?;
        let s = target.parse_reference(r).map_err(|e| l.error(j, e.to_string()))?;
        if s.dim() != c.dim {
            return Err(l.error(j, format!("{cell} has dimension {} but {r} has dimension {}", c.dim, s.dim())));
        }
        if images[c.dim][c.index].replace(s).is_some() {
            return Err(l.error(j, format!("{cell} is assigned twice")));
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(n, row)| {
            row.into_iter()
                .enumerate()
                .map(|(i, s)| s.ok_or_else(|| l.end_error(format!("no image for {}", source.cells(n)[i].id))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = ComplexMap::new(images);
    m.validate(source, target).into_result("map").map_err(|e| l.with_line(e))?;
    Ok(m)
}

fn named_complexes(blocks: &[Block<'_>]) -> Result<BTreeMap<String, SimplicialSet>> {
    let mut out = BTreeMap::new();
    for b in blocks {
        if b.kind != "simplicial" {
            return Err(b.header.error(1, format!("expected a simplicial block, found {}", b.kind)));
        }
        let x = parse_complex::<Monotone>(&b.lines)?;
        if out.insert(b.name.to_string(), x).is_some() {
            return Err(b.header.error(2, format!("complex {} defined twice", b.name)));
        }
    }
    Ok(out)
}

fn category_block(blocks: &[Block<'_>], name: &str) -> Result<FiniteCategory> {
    let b = blocks
        .iter()
        .find(|b| b.kind == "category" && b.name == name)
        .ok_or_else(|| Error::malformed(format!("missing 'begin category {name}' block")))?;
    parse_category(&b.lines.iter().collect::<Vec<_>>())
}

fn parse_body(kind: &str, lines: &[Line<'_>]) -> Result<Document> {
    let (top, blocks) = split_blocks(lines)?;
    Ok(match kind {
        "category" => {
            no_blocks(&blocks, kind)?;
            Document::Category(parse_category(&top.iter().collect::<Vec<_>>())?)
        }
        "presheaf" => {
            no_blocks(&blocks, kind)?;
            Document::Presheaf(parse_presheaf(&top)?)
        }
        "simplicial" => {
            no_blocks(&blocks, kind)?;
            Document::Simplicial(parse_complex(&top)?)
        }
        "cubical" => {
            no_blocks(&blocks, kind)?;
            Document::Cubical(parse_complex(&top)?)
        }
        "cover" => {
            no_blocks(&blocks, kind)?;
            let (subs, cells): (Vec<Line<'_>>, Vec<Line<'_>>) = top.into_iter().partition(|l| l.keyword() == "sub");
            let ambient = parse_complex::<Monotone>(&cells)?;
            let mut names = Vec::new();
            let mut generators = Vec::new();
            for l in &subs {
                l.token(2, "':'")?;
                l.expect(2, ":")?;
                let name = l.tokens[1].1.to_string();
                if names.contains(&name) {
                    return Err(l.error(1, format!("member {name} given twice")));
                }
                let ids: Vec<String> = l.tokens[3..].iter().map(|t| t.1.to_string()).collect();
                generators.push(crate::descent::cech::cells_by_id(&ambient, &ids).map_err(|e| l.with_line(e))?);
                names.push(name);
            }
            if names.is_empty() {
                return Err(Error::malformed("a cover needs at least one 'sub' line"));
            }
            Document::Cover(names, CoverSpec::new(ambient, &generators))
        }
        "diagram" => {
            let shape = Arc::new(category_block(&blocks, "shape")?);
            let complexes = named_complexes(&blocks.into_iter().filter(|b| b.kind != "category").collect::<Vec<_>>())?;
            let mut objects = Vec::new();
            for o in shape.objects() {
                objects.push(
                    complexes
                        .get(o)
                        .cloned()
                        .ok_or_else(|| Error::malformed(format!("no complex for object {o}")))?,
                );
            }
            if let Some(extra) = complexes.keys().find(|k| shape.object(k).is_none()) {
                return Err(Error::malformed(format!("complex {extra} is not an object of the shape")));
            }
            let mut maps = Vec::new();
            for l in &top {
                if l.keyword() != "map" {
                    return Err(l.error(0, format!("unknown keyword '{}' in a diagram", l.keyword())));
                }
                let mor = l.token(1, "a morphism id")?;
                l.expect(2, ":")?;
                let f = shape
                    .morphism(mor)
                    .ok_or_else(|| l.error(1, format!("no morphism {mor} in the shape")))?;
                let m = parse_map(l, 3, &objects[shape.source(f)], &objects[shape.target(f)])?;
                maps.push((mor.to_string(), m));
            }
            Document::Diagram(DiagramSpec::new(shape, objects, maps)?)
        }
        "functor" => {
            let source = Arc::new(category_block(&blocks, "source")?);
            let target = Arc::new(category_block(&blocks, "target")?);
            if let Some(b) = blocks.iter().find(|b| b.kind != "category" || !["source", "target"].contains(&b.name)) {
                return Err(b.header.error(1, "functor blocks are 'category source' and 'category target'"));
            }
            let mut objects = Vec::new();
            let mut morphisms = Vec::new();
            for l in &top {
                let (a, b) = l.equation(1)?;
                match l.keyword() {
                    "fobj" => objects.push((a.to_string(), b.to_string())),
                    "fmor" => morphisms.push((a.to_string(), b.to_string())),
                    k => return Err(l.error(0, format!("unknown keyword '{k}' in a functor"))),
                }
            }
            let u = FunctorData::from_ids(source, target, &objects, &morphisms)?;
            u.validate().into_result("functor")?;
            Document::Functor(u)
        }
        "lifting-problem" => {
            let complexes = named_complexes(&blocks)?;
            let mut maps = BTreeMap::new();
            for l in &top {
                if l.keyword() != "map" {
                    return Err(l.error(0, format!("unknown keyword '{}' in a lifting problem", l.keyword())));
                }
                let name = l.token(1, "a map name")?;
                let (s, t) = (l.token(2, "a source")?, l.token(3, "a target")?);
                l.expect(4, ":")?;
                let lookup = |k: usize, n: &str| complexes.get(n).ok_or_else(|| l.error(k, format!("no complex named {n}")));
                let m = parse_map(l, 5, lookup(2, s)?, lookup(3, t)?)?;
                let named = NamedMap {
                    source: s.to_string(),
                    target: t.to_string(),
                    map: m,
                };
                if maps.insert(name.to_string(), named).is_some() {
                    return Err(l.error(1, format!("map {name} defined twice")));
                }
            }
            Document::Lifting(MapFamily { complexes, maps })
        }
        _ => unreachable!("kind checked by the caller"),
    })
}

/// Strict parse; every reference must resolve and the object must pass its validator.
pub fn parse_input(text: &str) -> Result<InputDocument> {
    let lines = lex(text);
    let header = lines.first().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "empty document".into(),
    })?;
    if header.keyword() != "kind" {
        return Err(header.error(0, "documents start with 'kind <kind> v1'"));
    }
    header.arity(3)?;
    let kind = header.tokens[1].1;
    if !KINDS.contains(&kind) {
        return Err(header.error(1, format!("unknown kind '{kind}'")));
    }
    if header.tokens[2].1 != "v1" {
        return Err(header.error(2, "only version v1 is supported"));
    }
    let mut rest = &lines[1..];
    let mut name = None;
    if let Some(l) = rest.first().filter(|l| l.keyword() == "name") {
        l.arity(2)?;
        name = Some(l.tokens[1].1.to_string());
        rest = &rest[1..];
    }
    Ok(InputDocument {
        name,
        body: parse_body(kind, rest)?,
    })
}

/// Parses a document and checks its kind.
pub fn parse_kind(text: &str, kinds: &[&str]) -> Result<InputDocument> {
    let d = parse_input(text)?;
    if !kinds.contains(&d.body.kind()) {
        return Err(Error::invalid(format!(
            "expected a {} document, got {}",
            kinds.join(" or "),
            d.body.kind()
        )));
    }
    Ok(d)
}

fn write_complex<O: Operator>(out: &mut String, x: &Complex<O>) {
    for n in 0..=x.dim().unwrap_or(0) {
        for c in x.cells(n) {
            if n == 0 {
                let _ = writeln!(out, "cell 0 {}", c.id);
            } else if O::KIND == "cubical" {
                let _ = writeln!(out, "cell {n} {}", c.id);
                for (slot, f) in c.faces.iter().enumerate() {
                    let _ = writeln!(out, "face {} {}", O::slot_label(n, slot), x.reference(f));
                }
            } else {
                let refs: Vec<String> = c.faces.iter().map(|f| x.reference(f)).collect();
                let _ = writeln!(out, "cell {n} {} : {}", c.id, refs.join(" "));
            }
        }
    }
}

fn write_category(out: &mut String, c: &FiniteCategory) {
    for o in c.objects() {
        let _ = writeln!(out, "obj {o}");
    }
    for m in c.morphisms() {
        let _ = writeln!(out, "mor {} {} {}", m.id, c.objects()[m.source], c.objects()[m.target]);
    }
    for (a, o) in c.objects().iter().enumerate() {
        let _ = writeln!(out, "id {o} {}", c.morphisms()[c.identity(a)].id);
    }
    let mut comps: Vec<(&str, &str, &str)> = c
        .composition_table()
        .iter()
        .filter(|((g, f), _)| !c.is_identity(*g) && !c.is_identity(*f))
        .map(|(&(g, f), &h)| (c.morphisms()[g].id.as_str(), c.morphisms()[f].id.as_str(), c.morphisms()[h].id.as_str()))
        .collect();
    comps.sort();
    for (g, f, h) in comps {
        let _ = writeln!(out, "comp {g} {f} = {h}");
    }
}

fn map_pairs(source: &SimplicialSet, target: &SimplicialSet, m: &SimplicialMap) -> String {
    source
        .all_cell_ids()
        .map(|c| format!("{}={}", source.id(c), target.reference(m.image(c))))
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_block(out: &mut String, kind: &str, name: &str, body: impl FnOnce(&mut String)) {
    let _ = writeln!(out, "begin {kind} {name}");
    body(out);
    out.push_str("end\n");
}

/// Canonical text of a document.
pub fn serialize(doc: &InputDocument) -> String {
    let mut out = format!("kind {} v1\n", doc.body.kind());
    if let Some(n) = &doc.name {
        let _ = writeln!(out, "name {n}");
    }
    match &doc.body {
        Document::Category(c) => write_category(&mut out, c),
        Document::Presheaf(x) => {
            let c = &x.base;
            write_category(&mut out, c);
            for (a, o) in c.objects().iter().enumerate() {
                for e in x.elements(a) {
                    let _ = writeln!(out, "elt {o} {e}");
                }
            }
            for (f, m) in c.morphisms().iter().enumerate() {
                if c.is_identity(f) {
                    continue;
                }
                for (y, e) in x.elements(m.target).iter().enumerate() {
                    let _ = writeln!(out, "act {} {e} = {}", m.id, x.elements(m.source)[x.act(f, y)]);
                }
            }
        }
        Document::Simplicial(x) => write_complex(&mut out, x),
        Document::Cubical(x) => write_complex(&mut out, x),
        Document::Cover(names, cover) => {
            write_complex(&mut out, &cover.ambient);
            for (name, member) in names.iter().zip(&cover.members) {
                let ids: Vec<&str> = member.iter().map(|&c| cover.ambient.id(c)).collect();
                let _ = writeln!(out, "sub {name} : {}", ids.join(" "));
            }
        }
        Document::Diagram(d) => {
            write_block(&mut out, "category", "shape", |o| write_category(o, &d.shape));
            for (o, x) in d.shape.objects().iter().zip(&d.objects) {
                write_block(&mut out, "simplicial", o, |s| write_complex(s, x));
            }
            for (f, m) in d.shape.morphisms().iter().enumerate() {
                if !d.shape.is_identity(f) {
                    let pairs = map_pairs(&d.objects[m.source], &d.objects[m.target], &d.maps[f]);
                    let _ = writeln!(out, "map {} : {pairs}", m.id);
                }
            }
        }
        Document::Functor(u) => {
            write_block(&mut out, "category", "source", |o| write_category(o, &u.source));
            write_block(&mut out, "category", "target", |o| write_category(o, &u.target));
            for (a, &b) in u.objects.iter().enumerate() {
                let _ = writeln!(out, "fobj {} = {}", u.source.objects()[a], u.target.objects()[b]);
            }
            for (f, &g) in u.morphisms.iter().enumerate() {
                if !u.source.is_identity(f) {
                    let _ = writeln!(out, "fmor {} = {}", u.source.morphisms()[f].id, u.target.morphisms()[g].id);
                }
            }
        }
        Document::Lifting(fam) => {
            for (name, x) in &fam.complexes {
                write_block(&mut out, "simplicial", name, |s| write_complex(s, x));
            }
            for (name, m) in &fam.maps {
                let pairs = map_pairs(&fam.complexes[&m.source], &fam.complexes[&m.target], &m.map);
                let _ = writeln!(out, "map {name} {} {} : {pairs}", m.source, m.target);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::boundary;

    const BOUNDARY2: &str = "kind simplicial v1
name boundary2
cell 0 0
cell 0 1
cell 0 2
cell 1 01 : 1 0
cell 1 02 : 2 0
cell 1 12 : 2 1
";

    fn roundtrip(text: &str) -> InputDocument {
        let d = parse_input(text).unwrap();
        let s = serialize(&d);
        let again = parse_input(&s).unwrap();
        assert_eq!(again, d);
        assert_eq!(serialize(&again), s);
        d
    }

    #[test]
    fn boundary_fixture() {
        let d = roundtrip(BOUNDARY2);
        assert_eq!(d.name.as_deref(), Some("boundary2"));
        match d.body {
            Document::Simplicial(x) => {
                assert_eq!(x.counts(), vec![3, 3]);
                assert_eq!(x, boundary(2));
            }
            _ => panic!("wrong kind"),
        }
        assert_eq!(serialize(&parse_input(BOUNDARY2).unwrap()), BOUNDARY2);
    }

    #[test]
    fn missing_face_is_named() {
        let e = parse_input("kind simplicial v1\ncell 0 a\ncell 1 e : a b\n").unwrap_err();
        assert!(e.to_string().contains("unknown cell b"), "{e}");
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn positional_errors() {
        match parse_input("kind simplicial v1\ncell x a\n").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 6)),
            e => panic!("{e}"),
        }
        assert!(matches!(parse_input("kind widget v1\n"), Err(Error::Parse { line: 1, column: 6, .. })));
        assert!(matches!(parse_input("# nothing\n"), Err(Error::Parse { .. })));
        assert!(parse_input("kind simplicial v1\ncell 0 a\ncell 1 e : a\n").is_err());
    }

    #[test]
    fn degenerate_references() {
        let d = roundtrip("kind simplicial v1\ncell 0 a\ncell 1 l : a a\ncell 2 t : s0.a l l\n");
        let Document::Simplicial(x) = d.body else { panic!() };
        assert_eq!(x.counts(), vec![1, 1, 1]);
        // the face identities are checked
        assert!(parse_input("kind simplicial v1\ncell 0 a\ncell 0 b\ncell 1 e : b a\ncell 2 t : s0.a e e\n").is_err());
    }

    #[test]
    fn cubical_square() {
        let text = "kind cubical v1
cell 0 a
cell 1 e
face 1 0 a
face 1 1 a
cell 2 q
face 1 0 e
face 1 1 e
face 2 0 e
face 2 1 e
";
        let d = roundtrip(text);
        let Document::Cubical(x) = d.body else { panic!() };
        assert_eq!(x.counts(), vec![1, 1, 1]);
        assert!(parse_input("kind cubical v1\ncell 0 a\ncell 1 e\nface 1 0 a\n").is_err());
    }

    #[test]
    fn categories_and_presheaves() {
        let text = "kind presheaf v1
obj a
obj b
mor f a b
elt a x
elt a y
elt b z
act f z = y
";
        let d = roundtrip(text);
        let Document::Presheaf(x) = &d.body else { panic!() };
        assert_eq!(x.total_size(), 3);
        roundtrip("kind presheaf v1\nbase simplex 1\nelt [0] v\nelt [1] s0v\nact 0>1:0 s0v = v\nact 0>1:1 s0v = v\nact 1>0:00 v = s0v\nact 1>1:00 s0v = s0v\nact 1>1:11 s0v = s0v\n");
        let c = roundtrip("kind category v1\nbase cyclic 3\n");
        let Document::Category(c) = c.body else { panic!() };
        assert_eq!(c.morphism_count(), 3);
        // a missing action is rejected
        assert!(parse_input("kind presheaf v1\nobj a\nobj b\nmor f a b\nelt b z\n").is_err());
    }

    #[test]
    fn covers_diagrams_functors_and_maps() {
        roundtrip(&format!("{}sub u : 01 12\nsub v : 02\n", BOUNDARY2.replace("name boundary2\n", "").replace("simplicial", "cover")));
        let diagram = "kind diagram v1
begin category shape
obj c
obj l
mor f c l
end
begin simplicial c
cell 0 p
cell 0 q
end
begin simplicial l
cell 0 pt
end
map f : p=pt q=pt
";
        let d = roundtrip(diagram);
        let Document::Diagram(dg) = d.body else { panic!() };
        assert_eq!(dg.objects.len(), 2);
        let functor = "kind functor v1
begin category source
obj a
end
begin category target
base arrow
end
fobj a = b
";
        roundtrip(functor);
        let lifting = "kind lifting-problem v1
begin simplicial a
cell 0 x
end
begin simplicial b
cell 0 x
cell 0 y
cell 1 e : y x
end
map i a b : x=x
map p b b : x=x y=y e=e
";
        let d = roundtrip(lifting);
        let Document::Lifting(fam) = d.body else { panic!() };
        assert!(fam.map("i").is_ok() && fam.map("q").is_err());
        // dimension mismatch and unassigned cells
        assert!(parse_input(&lifting.replace("map p b b : x=x y=y e=e", "map p b b : x=x y=y e=x")).is_err());
        assert!(parse_input(&lifting.replace("map p b b : x=x y=y e=e", "map p b b : x=x y=y")).is_err());
    }
}
