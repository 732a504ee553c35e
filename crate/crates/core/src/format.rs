//! Text formats: `.poset`, `.shf`, `.ker`, `.mono` and `.tower`.
//!
//! All five share one tokenizer. `{`, `}` and `;` are tokens of their own,
//! `#` starts a comment, and every other token is a whitespace-free word.
//! Emitters produce a canonical form that parses back to the same object.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::chain::{Complex, Components};
use crate::error::{Error, Result};
use crate::funcat::PFunctor;
use crate::kernel::Kernel;
use crate::linalg::{Field, Matrix};
use crate::poset::{face_poset, MonotoneMap, Poset};
use crate::witness::{TameFunctor, TowerFunctor};

#[derive(Clone, Debug)]
struct Tok {
    text: String,
    line: usize,
}

struct Stream {
    file: String,
    toks: Vec<Tok>,
    pos: usize,
    last_line: usize,
}

fn tokenize(file: &str, text: &str) -> Stream {
    let mut toks = Vec::new();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let mut word = String::new();
        for ch in content.chars() {
            if ch.is_whitespace() || matches!(ch, '{' | '}' | ';') {
                if !word.is_empty() {
                    toks.push(Tok { text: std::mem::take(&mut word), line });
                }
                if !ch.is_whitespace() {
                    toks.push(Tok { text: ch.to_string(), line });
                }
            } else {
                word.push(ch);
            }
        }
        if !word.is_empty() {
            toks.push(Tok { text: word, line });
        }
    }
    Stream { file: file.to_string(), toks, pos: 0, last_line }
}

impl Stream {
    fn err_at(&self, tok: &Tok, message: impl Into<String>) -> Error {
        Error::Parse { file: self.file.clone(), line: tok.line, token: tok.text.clone(), message: message.into() }
    }

    fn eof(&self) -> Tok {
        Tok { text: "<eof>".into(), line: self.last_line }
    }

    fn current(&self) -> Tok {
        self.toks.get(self.pos).cloned().unwrap_or_else(|| self.eof())
    }

    fn peek(&self) -> Option<&str> {
        self.toks.get(self.pos).map(|t| t.text.as_str())
    }

    fn next(&mut self) -> Result<Tok> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| self.err_at(&self.eof(), "unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, word: &str) -> Result<Tok> {
        let t = self.next()?;
        if t.text != word {
            return Err(self.err_at(&t, format!("expected `{word}`")));
        }
        Ok(t)
    }

    fn eat(&mut self, word: &str) -> bool {
        if self.peek() == Some(word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T> {
        let t = self.next()?;
        t.text.parse().map_err(|_| self.err_at(&t, format!("expected {what}")))
    }

    /// Remaining tokens on the line of the previous token.
    fn rest_of_line(&mut self) -> Vec<Tok> {
        let line = self.toks[self.pos - 1].line;
        let mut out = Vec::new();
        while let Some(t) = self.toks.get(self.pos) {
            if t.line != line {
                break;
            }
            out.push(t.clone());
            self.pos += 1;
        }
        out
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn field(&mut self, over: Option<&Field>) -> Result<Field> {
        let t = self.next()?;
        let parsed: Field = t.text.parse().map_err(|e: Error| self.err_at(&t, e.to_string()))?;
        Ok(over.cloned().unwrap_or(parsed))
    }

    /// Wraps a semantic error with the position of `tok`.
    fn wrap(&self, tok: &Tok, e: Error) -> Error {
        match e {
            Error::Parse { .. } => e,
            other => self.err_at(tok, other.to_string()),
        }
    }
}

/// Names of posets a sheaf, kernel or map file refers to in its header.
pub fn referenced_posets(text: &str) -> Vec<String> {
    let s = tokenize("", text);
    let words: Vec<&str> = s.toks.iter().map(|t| t.text.as_str()).collect();
    let after = |key: &str| words.iter().position(|w| *w == key).and_then(|i| words.get(i + 1)).map(|w| w.to_string());
    match words.first().copied() {
        Some("sheaf") => after("over").into_iter().collect(),
        Some("kernel") => after("left").into_iter().chain(after("right")).collect(),
        Some("map") => after("from").into_iter().chain(after("to")).collect(),
        _ => Vec::new(),
    }
}

/// Which of the five formats a text is, judged by its first word.
pub fn detect_kind(text: &str) -> Option<&'static str> {
    let s = tokenize("", text);
    match s.toks.first().map(|t| t.text.as_str()) {
        Some("poset") => Some("poset"),
        Some("sheaf") => Some("sheaf"),
        Some("kernel") => Some("kernel"),
        Some("map") => Some("mono"),
        Some("tower") => Some("tower"),
        _ => None,
    }
}

pub fn parse_poset(file: &str, text: &str) -> Result<Poset> {
    let mut s = tokenize(file, text);
    let head = s.expect("poset")?;
    let name = s.next()?.text;
    let mut elems: Vec<String> = Vec::new();
    let mut rels: Vec<(String, String)> = Vec::new();
    let mut facets: Vec<Vec<String>> = Vec::new();
    while !s.done() {
        let t = s.next()?;
        match t.text.as_str() {
            "elem" => elems.extend(s.rest_of_line().into_iter().map(|t| t.text)),
            "rel" => {
                for r in s.rest_of_line() {
                    let (a, b) = r.text.split_once('<').ok_or_else(|| s.err_at(&r, "expected `a<b`"))?;
                    rels.push((a.to_string(), b.to_string()));
                }
            }
            "facet" => {
                let vs: Vec<String> = s.rest_of_line().into_iter().map(|t| t.text).collect();
                if vs.is_empty() {
                    return Err(s.err_at(&t, "empty facet"));
                }
                facets.push(vs);
            }
            _ => return Err(s.err_at(&t, "expected `elem`, `rel` or `facet`")),
        }
    }
    let p = if facets.is_empty() {
        Poset::new(&name, elems, &rels)
    } else if elems.is_empty() && rels.is_empty() {
        face_poset(&name, &facets)
    } else {
        return Err(s.err_at(&head, "`facet` lines cannot be mixed with `elem`/`rel`"));
    };
    p.map_err(|e| s.wrap(&head, e))
}

pub fn emit_poset(p: &Poset) -> String {
    let mut out = format!("poset {}\n", p.name());
    if !p.is_empty() {
        let _ = writeln!(out, "elem {}", p.elements().join(" "));
    }
    for &(a, b) in p.covers() {
        let _ = writeln!(out, "rel {}<{}", p.element(a), p.element(b));
    }
    out
}

fn parse_scalar(s: &Stream, tok: &Tok, field: &Field) -> Result<crate::linalg::Scalar> {
    let (n, d) = match tok.text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok.text.as_str(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| s.err_at(tok, "expected a number"))?;
    let d: BigInt = d.parse().map_err(|_| s.err_at(tok, "expected a number"))?;
    field.from_ratio(&n, &d).map_err(|e| s.err_at(tok, e.to_string()))
}

/// `mat r c { i j v ; … }`
fn parse_matrix(s: &mut Stream, field: &Field) -> Result<Matrix> {
    s.expect("mat")?;
    let rows: usize = s.number("a row count")?;
    let cols: usize = s.number("a column count")?;
    let mut m = Matrix::zeros(field, rows, cols);
    s.expect("{")?;
    while !s.eat("}") {
        let it = s.current();
        let i: usize = s.number("a row index")?;
        let j: usize = s.number("a column index")?;
        let v = s.next()?;
        if i >= rows || j >= cols {
            return Err(s.err_at(&it, format!("entry ({i},{j}) outside a {rows}x{cols} matrix")));
        }
        let value = parse_scalar(s, &v, field)?;
        m.set(i, j, value);
        s.expect(";")?;
    }
    Ok(m)
}

fn emit_matrix(out: &mut String, m: &Matrix) {
    let _ = write!(out, "mat {} {} {{", m.rows(), m.cols());
    for (i, j, v) in m.nonzero_entries() {
        let _ = write!(out, " {i} {j} {v} ;");
    }
    out.push_str(" }");
}

/// `deg n dim d ;` entries up to the closing brace or `tail`.
fn parse_dims(s: &mut Stream) -> Result<BTreeMap<i32, usize>> {
    let mut dims = BTreeMap::new();
    while s.peek() == Some("deg") {
        s.next()?;
        let n: i32 = s.number("a degree")?;
        s.expect("dim")?;
        let d: usize = s.number("a dimension")?;
        s.expect(";")?;
        *dims.entry(n).or_insert(0) += d;
    }
    Ok(dims)
}

fn emit_dims(out: &mut String, c: &Complex) {
    out.push('{');
    for (n, d) in c.dims() {
        let _ = write!(out, " deg {n} dim {d} ;");
    }
    out.push_str(" }");
}

#[derive(Default)]
struct Draft {
    dims: BTreeMap<i32, usize>,
    diffs: BTreeMap<i32, Matrix>,
}

impl Draft {
    fn build(self, field: &Field) -> Result<Complex> {
        Complex::new(field.clone(), self.dims, self.diffs)
    }
}

fn emit_diffs(out: &mut String, head: &str, c: &Complex) {
    for (n, m) in c.diffs() {
        if m.is_zero() {
            continue;
        }
        let _ = write!(out, "{head} deg {n} ");
        emit_matrix(out, m);
        out.push('\n');
    }
}

fn emit_components(out: &mut String, head: &str, comps: &Components) {
    for (n, m) in comps {
        if m.is_zero() {
            continue;
        }
        let _ = write!(out, "{head} deg {n} ");
        emit_matrix(out, m);
        out.push('\n');
    }
}

/// A named functor with possibly tailed values.
#[derive(Clone, Debug)]
pub struct Sheaf {
    pub name: String,
    pub functor: TameFunctor,
}

struct Body {
    finite: Vec<Draft>,
    tail: Vec<Draft>,
    tail_params: Option<(i32, u32, Tok)>,
    maps: BTreeMap<(usize, usize), Components>,
    tail_maps: BTreeMap<(usize, usize), Components>,
}

fn lookup(s: &Stream, tok: &Tok, base: &Poset) -> Result<usize> {
    base.index_of(&tok.text).map_err(|_| s.err_at(tok, "unknown element"))
}

/// Parses `val`, `constant`, `diff` and `map` lines over `base`.
fn parse_body(s: &mut Stream, base: &Poset, field: &Field) -> Result<Body> {
    let n = base.len();
    let mut body = Body {
        finite: (0..n).map(|_| Draft::default()).collect(),
        tail: (0..n).map(|_| Draft::default()).collect(),
        tail_params: None,
        maps: BTreeMap::new(),
        tail_maps: BTreeMap::new(),
    };
    while !s.done() {
        let t = s.next()?;
        match t.text.as_str() {
            "val" => {
                let e = s.next()?;
                let p = lookup(s, &e, base)?;
                s.expect("{")?;
                body.finite[p].dims = parse_dims(s)?;
                if s.eat("tail") {
                    s.expect("base")?;
                    s.expect("{")?;
                    body.tail[p].dims = parse_dims(s)?;
                    s.expect("}")?;
                    s.expect("anchor")?;
                    let anchor: i32 = s.number("an anchor")?;
                    s.expect("stride")?;
                    let st = s.current();
                    let stride: u32 = s.number("a stride")?;
                    if stride == 0 {
                        return Err(s.err_at(&st, "stride must be positive"));
                    }
                    match &body.tail_params {
                        None => body.tail_params = Some((anchor, stride, st)),
                        Some((a, b, _)) if (*a, *b) != (anchor, stride) => {
                            return Err(s.err_at(&st, "all tails must share one anchor and stride"));
                        }
                        _ => {}
                    }
                }
                s.expect("}")?;
            }
            "constant" => {
                s.expect("{")?;
                let dims = parse_dims(s)?;
                s.expect("}")?;
                let mut diffs = BTreeMap::new();
                while s.peek() == Some("diff") {
                    s.next()?;
                    s.expect("deg")?;
                    let d: i32 = s.number("a degree")?;
                    diffs.insert(d, parse_matrix(s, field)?);
                }
                let c = Complex::new(field.clone(), dims.clone(), diffs.clone()).map_err(|e| s.wrap(&t, e))?;
                for p in 0..n {
                    body.finite[p] = Draft { dims: dims.clone(), diffs: diffs.clone() };
                }
                for &(a, b) in base.covers() {
                    body.maps.insert((a, b), crate::chain::identity_components(&c));
                }
            }
            "diff" => {
                let e = s.next()?;
                let p = lookup(s, &e, base)?;
                let tail = s.eat("tail");
                s.expect("deg")?;
                let d: i32 = s.number("a degree")?;
                let m = parse_matrix(s, field)?;
                let target = if tail { &mut body.tail[p] } else { &mut body.finite[p] };
                target.diffs.insert(d, m);
            }
            "map" => {
                let e = s.next()?;
                let (a, b) = e.text.split_once('<').ok_or_else(|| s.err_at(&e, "expected `a<b`"))?;
                let a = base.index_of(a).map_err(|_| s.err_at(&e, "unknown element"))?;
                let b = base.index_of(b).map_err(|_| s.err_at(&e, "unknown element"))?;
                if base.cover_index(a, b).is_none() {
                    return Err(s.err_at(&e, "not a covering pair"));
                }
                let tail = s.eat("tail");
                s.expect("deg")?;
                let d: i32 = s.number("a degree")?;
                let m = parse_matrix(s, field)?;
                let target = if tail { &mut body.tail_maps } else { &mut body.maps };
                target.entry((a, b)).or_default().insert(d, m);
            }
            _ => return Err(s.err_at(&t, "expected `val`, `constant`, `diff` or `map`")),
        }
    }
    Ok(body)
}

fn build_functor(s: &Stream, head: &Tok, base: Arc<Poset>, field: &Field, body: Body) -> Result<TameFunctor> {
    let w = |e| s.wrap(head, e);
    let values: Vec<Arc<Complex>> =
        body.finite.into_iter().map(|d| d.build(field).map(Arc::new)).collect::<Result<_>>().map_err(w)?;
    let finite = PFunctor::new(base.clone(), field, values, body.maps).map_err(w)?;
    match body.tail_params {
        None => Ok(TameFunctor::finite(finite)),
        Some((anchor, stride, _)) => {
            let tv: Vec<Arc<Complex>> =
                body.tail.into_iter().map(|d| d.build(field).map(Arc::new)).collect::<Result<_>>().map_err(w)?;
            let tail = PFunctor::new(base, field, tv, body.tail_maps).map_err(w)?;
            TameFunctor::with_tail(finite, tail, anchor, stride).map_err(w)
        }
    }
}

fn emit_body(out: &mut String, f: &TameFunctor) {
    let base = f.base().clone();
    let fin = f.finite_part();
    let tail = f.tail();
    for p in 0..base.len() {
        let _ = write!(out, "val {} {{", base.element(p));
        for (n, d) in fin.value(p).dims() {
            let _ = write!(out, " deg {n} dim {d} ;");
        }
        if let Some(t) = tail {
            if !t.base.value(p).is_zero() {
                out.push_str(" tail base ");
                emit_dims(out, t.base.value(p));
                let _ = write!(out, " anchor {} stride {}", t.anchor, t.stride);
            }
        }
        out.push_str(" }\n");
    }
    for p in 0..base.len() {
        emit_diffs(out, &format!("diff {}", base.element(p)), fin.value(p));
    }
    for &(a, b) in base.covers() {
        emit_components(out, &format!("map {}<{}", base.element(a), base.element(b)), fin.edge(a, b));
    }
    if let Some(t) = tail {
        for p in 0..base.len() {
            emit_diffs(out, &format!("diff {} tail", base.element(p)), t.base.value(p));
        }
        for &(a, b) in base.covers() {
            emit_components(out, &format!("map {}<{} tail", base.element(a), base.element(b)), t.base.edge(a, b));
        }
    }
}

fn find_poset(s: &Stream, tok: &Tok, posets: &BTreeMap<String, Arc<Poset>>) -> Result<Arc<Poset>> {
    posets.get(&tok.text).cloned().ok_or_else(|| s.err_at(tok, "no poset with this name was supplied"))
}

pub fn parse_sheaf(
    file: &str,
    text: &str,
    posets: &BTreeMap<String, Arc<Poset>>,
    field: Option<&Field>,
) -> Result<Sheaf> {
    let mut s = tokenize(file, text);
    let head = s.expect("sheaf")?;
    let name = s.next()?.text;
    s.expect("over")?;
    let pt = s.next()?;
    let base = find_poset(&s, &pt, posets)?;
    s.expect("field")?;
    let field = s.field(field)?;
    let body = parse_body(&mut s, &base, &field)?;
    let functor = build_functor(&s, &head, base, &field, body)?;
    Ok(Sheaf { name, functor })
}

pub fn emit_sheaf(sheaf: &Sheaf) -> String {
    let f = &sheaf.functor;
    let mut out = format!("sheaf {} over {} field {}\n", sheaf.name, f.base().name(), f.field());
    emit_body(&mut out, f);
    out
}

pub fn parse_kernel(
    file: &str,
    text: &str,
    posets: &BTreeMap<String, Arc<Poset>>,
    field: Option<&Field>,
) -> Result<Kernel> {
    let mut s = tokenize(file, text);
    let head = s.expect("kernel")?;
    let name = s.next()?.text;
    s.expect("left")?;
    let lt = s.next()?;
    let left = find_poset(&s, &lt, posets)?;
    s.expect("right")?;
    let rt = s.next()?;
    let right = find_poset(&s, &rt, posets)?;
    s.expect("field")?;
    let field = s.field(field)?;
    let base = Arc::new(Kernel::carrier_base(&left, &right));
    let body = parse_body(&mut s, &base, &field)?;
    let carrier = build_functor(&s, &head, base, &field, body)?;
    Kernel::new(&name, left, right, carrier).map_err(|e| s.wrap(&head, e))
}

pub fn emit_kernel(k: &Kernel) -> String {
    let mut out = format!(
        "kernel {} left {} right {} field {}\n",
        k.name(),
        k.left().name(),
        k.right().name(),
        k.field()
    );
    emit_body(&mut out, k.carrier());
    out
}

pub fn parse_mono(file: &str, text: &str, posets: &BTreeMap<String, Arc<Poset>>) -> Result<MonotoneMap> {
    let mut s = tokenize(file, text);
    let head = s.expect("map")?;
    let name = s.next()?.text;
    s.expect("from")?;
    let st = s.next()?;
    let src = find_poset(&s, &st, posets)?;
    s.expect("to")?;
    let tt = s.next()?;
    let tgt = find_poset(&s, &tt, posets)?;
    let mut pairs = Vec::new();
    while !s.done() {
        s.expect("send")?;
        let a = s.next()?;
        lookup(&s, &a, &src)?;
        s.expect("->")?;
        let b = s.next()?;
        lookup(&s, &b, &tgt)?;
        pairs.push((a.text, b.text));
    }
    MonotoneMap::from_pairs(&name, src, tgt, &pairs).map_err(|e| s.wrap(&head, e))
}

pub fn emit_mono(m: &MonotoneMap) -> String {
    let mut out = format!("map {} from {} to {}\n", m.name(), m.source().name(), m.target().name());
    for p in 0..m.source().len() {
        let _ = writeln!(out, "send {} -> {}", m.source().element(p), m.target().element(m.apply(p)));
    }
    out
}

pub fn parse_tower(file: &str, text: &str, field: Option<&Field>) -> Result<TowerFunctor> {
    let mut s = tokenize(file, text);
    let head = s.expect("tower")?;
    let name = s.next()?.text;
    s.expect("horizon")?;
    let horizon: usize = s.number("a horizon")?;
    s.expect("field")?;
    let field = s.field(field)?;
    let mut values: Vec<Draft> = (0..=horizon).map(|_| Draft::default()).collect();
    let mut eventual = Draft::default();
    let mut steps: BTreeMap<usize, Components> = BTreeMap::new();
    let position = |s: &mut Stream| -> Result<Option<usize>> {
        let t = s.next()?;
        if t.text == "eventual" {
            return Ok(None);
        }
        let n: usize = t.text.parse().map_err(|_| s.err_at(&t, "expected a position or `eventual`"))?;
        if n > horizon {
            return Err(s.err_at(&t, "position beyond the horizon"));
        }
        Ok(Some(n))
    };
    while !s.done() {
        let t = s.next()?;
        match t.text.as_str() {
            "val" => {
                let n = position(&mut s)?.ok_or_else(|| s.err_at(&t, "use `eventual { … }`"))?;
                s.expect("{")?;
                values[n].dims = parse_dims(&mut s)?;
                s.expect("}")?;
            }
            "eventual" => {
                s.expect("{")?;
                eventual.dims = parse_dims(&mut s)?;
                s.expect("}")?;
            }
            "diff" => {
                let n = position(&mut s)?;
                s.expect("deg")?;
                let d: i32 = s.number("a degree")?;
                let m = parse_matrix(&mut s, &field)?;
                match n {
                    Some(n) => values[n].diffs.insert(d, m),
                    None => eventual.diffs.insert(d, m),
                };
            }
            "step" => {
                let n = position(&mut s)?.ok_or_else(|| s.err_at(&t, "steps are numbered by position"))?;
                s.expect("deg")?;
                let d: i32 = s.number("a degree")?;
                let m = parse_matrix(&mut s, &field)?;
                steps.entry(n).or_default().insert(d, m);
            }
            _ => return Err(s.err_at(&t, "expected `val`, `eventual`, `diff` or `step`")),
        }
    }
    let w = |e| s.wrap(&head, e);
    let values: Vec<Complex> = values.into_iter().map(|d| d.build(&field)).collect::<Result<_>>().map_err(w)?;
    let eventual = eventual.build(&field).map_err(w)?;
    crate::witness::tower_from_parts(&name, &field, values, eventual, steps).map_err(w)
}

pub fn emit_tower(t: &TowerFunctor) -> String {
    let mut out = format!("tower {} horizon {} field {}\n", t.name(), t.horizon(), t.field());
    for n in 0..=t.horizon() {
        let _ = write!(out, "val {n} ");
        emit_dims(&mut out, t.value(n));
        out.push('\n');
    }
    out.push_str("eventual ");
    emit_dims(&mut out, t.eventual());
    out.push('\n');
    for n in 0..=t.horizon() {
        emit_diffs(&mut out, &format!("diff {n}"), t.value(n));
    }
    emit_diffs(&mut out, "diff eventual", t.eventual());
    for (n, comps) in t.steps().iter().enumerate() {
        emit_components(&mut out, &format!("step {n}"), comps);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CIRCLE: &str = "poset circle\nfacet a b\nfacet b c\nfacet a c\n";

    fn posets(list: &[&Poset]) -> BTreeMap<String, Arc<Poset>> {
        list.iter().map(|p| (p.name().to_string(), Arc::new((*p).clone()))).collect()
    }

    #[test]
    fn poset_round_trip() {
        let p = parse_poset("c.poset", CIRCLE).unwrap();
        assert_eq!(p.len(), 6);
        let e = emit_poset(&p);
        let q = parse_poset("c.poset", &e).unwrap();
        assert_eq!(p, q);
        assert_eq!(emit_poset(&q), e);
    }

    #[test]
    fn sheaf_round_trip_with_tail() {
        let p = parse_poset("c.poset", CIRCLE).unwrap();
        let text = "sheaf s over circle field Q\nconstant { deg 0 dim 1 ; }\n\
                    val a { deg 0 dim 1 ; tail base { deg 0 dim 1 ; } anchor 0 stride 2 }\n";
        let sh = parse_sheaf("s.shf", text, &posets(&[&p]), None).unwrap();
        assert!(sh.functor.tail().is_some());
        let e = emit_sheaf(&sh);
        let again = parse_sheaf("s.shf", &e, &posets(&[&p]), None).unwrap();
        assert_eq!(emit_sheaf(&again), e);
    }

    #[test]
    fn errors_name_file_line_and_token() {
        let p = parse_poset("c.poset", CIRCLE).unwrap();
        let text = "sheaf s over circle field F2\nval zz { deg 0 dim 1 ; }\n";
        match parse_sheaf("bad.shf", text, &posets(&[&p]), None) {
            Err(Error::Parse { file, line, token, .. }) => {
                assert_eq!((file.as_str(), line, token.as_str()), ("bad.shf", 2, "zz"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let text = "sheaf s over circle field F2\nval a { deg 0 dim 1 ; }\nmap a<a-b deg 0 mat 1 1 { 0 0 1 ; }\n";
        assert!(matches!(parse_sheaf("bad.shf", text, &posets(&[&p]), None), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn tower_and_mono_round_trip() {
        let t = TowerFunctor::truncation(&Complex::unit(&Field::F2), 2);
        let e = emit_tower(&t);
        let t2 = parse_tower("t.tower", &e, None).unwrap();
        assert_eq!(emit_tower(&t2), e);
        let p = parse_poset("c.poset", CIRCLE).unwrap();
        let pt = Poset::point("pt", "*");
        let m = MonotoneMap::collapse(Arc::new(p.clone()), Arc::new(pt.clone())).unwrap();
        let e = emit_mono(&m);
        let m2 = parse_mono("m.mono", &e, &posets(&[&p, &pt])).unwrap();
        assert_eq!(emit_mono(&m2), e);
    }
}
