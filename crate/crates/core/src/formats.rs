//! Line-oriented text formats.
//!
//! Every file starts with a header keyword naming its kind. Each following
//! line is a record of whitespace-separated tokens; `#` starts a comment and
//! blank lines are ignored. Arrows are named by label, so labels must be
//! nonempty and free of whitespace and `#`. Emitters produce canonical text:
//! records in a fixed order and sorted by arrow index, so equal objects
//! print byte-identically. See `FORMATS.md` for the grammar.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraContext, AlgebraElement};
use crate::cocycle::{Coboundary, Grading, GradingGroup, TwoCocycle};
use crate::coefficients::{Ring, RingElement};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{Bisection, FiniteGroupoid};
use crate::structure::Ideal;
use crate::twist::{DiscreteTwist, GlobalSection, TwistMorphism};

#[derive(Clone, Debug)]
struct Record<'a> {
    line: usize,
    tokens: Vec<&'a str>,
}

impl Record<'_> {
    fn err(&self, msg: impl std::fmt::Display) -> Error {
        Error::Parse(format!("line {}: {msg}", self.line))
    }

    fn key(&self) -> &str {
        self.tokens[0]
    }

    fn args(&self, n: usize) -> Result<&[&str]> {
        if self.tokens.len() != n + 1 {
            return Err(self.err(format!("`{}` takes {n} argument(s)", self.key())));
        }
        Ok(&self.tokens[1..])
    }

    fn number<T: std::str::FromStr>(&self, s: &str) -> Result<T> {
        s.parse().map_err(|_| self.err(format!("bad number `{s}`")))
    }
}

fn records(text: &str) -> Vec<Record<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = l.split_whitespace().collect();
            (!tokens.is_empty()).then_some(Record { line: i + 1, tokens })
        })
        .collect()
}

fn with_header<'a>(text: &'a str, header: &str) -> Result<Vec<Record<'a>>> {
    let rs = records(text);
    match rs.first() {
        Some(r) if r.tokens == [header] => Ok(rs[1..].to_vec()),
        Some(r) => Err(r.err(format!("expected header `{header}`"))),
        None => Err(Error::Parse(format!("empty input, expected header `{header}`"))),
    }
}

/// The header keyword of a file, if any.
pub fn header(text: &str) -> Option<String> {
    records(text).first().map(|r| r.tokens.join(" "))
}

fn arrow_of(g: &FiniteGroupoid, r: &Record, label: &str) -> Result<usize> {
    g.index_of(label).ok_or_else(|| r.err(format!("unknown arrow `{label}`")))
}

fn valid_label(l: &str) -> bool {
    !l.is_empty() && !l.contains('#') && !l.chars().any(char::is_whitespace)
}

// ---------------------------------------------------------------- groupoid

fn groupoid_body(g: &FiniteGroupoid, out: &mut String) {
    let units: Vec<&str> = g.units().into_iter().map(|u| g.label(u)).collect();
    out.push_str(&format!("units {}\n", units.join(" ")));
    for a in g.arrows() {
        out.push_str(&format!("arrow {} src {} rng {}\n", g.label(a), g.label(g.src(a)), g.label(g.rng(a))));
    }
    for a in g.arrows().filter(|&a| !g.is_unit(a)) {
        out.push_str(&format!("inverse {} {}\n", g.label(a), g.label(g.inv(a))));
    }
    for (a, b, ab) in g.composable_pairs() {
        if !g.is_unit(a) && !g.is_unit(b) {
            out.push_str(&format!("compose {} {} {}\n", g.label(a), g.label(b), g.label(ab)));
        }
    }
}

pub fn emit_groupoid(g: &FiniteGroupoid) -> String {
    let mut out = String::from("groupoid\n");
    groupoid_body(g, &mut out);
    out
}

fn parse_groupoid_records(rs: &[Record]) -> Result<FiniteGroupoid> {
    let mut unit_labels: Option<Vec<&str>> = None;
    let mut arrows: Vec<(&str, &str, &str)> = Vec::new();
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    let mut inverses: Vec<(&Record, &str, &str)> = Vec::new();
    let mut compositions: Vec<(&Record, &str, &str, &str)> = Vec::new();
    for r in rs {
        match r.key() {
            "units" => {
                if unit_labels.is_some() {
                    return Err(r.err("repeated `units`"));
                }
                unit_labels = Some(r.tokens[1..].to_vec());
            }
            "arrow" => {
                let a = r.args(5)?;
                if a[1] != "src" || a[3] != "rng" {
                    return Err(r.err("expected `arrow L src U rng U`"));
                }
                if !valid_label(a[0]) {
                    return Err(r.err("bad label"));
                }
                if index.insert(a[0], arrows.len()).is_some() {
                    return Err(r.err(format!("duplicate arrow `{}`", a[0])));
                }
                arrows.push((a[0], a[2], a[4]));
            }
            "inverse" => {
                let a = r.args(2)?;
                inverses.push((r, a[0], a[1]));
            }
            "compose" => {
                let a = r.args(3)?;
                compositions.push((r, a[0], a[1], a[2]));
            }
            k => return Err(r.err(format!("unknown record `{k}`"))),
        }
    }
    let unit_labels = unit_labels.ok_or_else(|| Error::Parse("missing `units` record".into()))?;
    let look = |l: &str| index.get(l).copied().ok_or_else(|| Error::Parse(format!("unknown arrow `{l}`")));
    let units = unit_labels.iter().map(|l| look(l)).collect::<Result<Vec<_>>>()?;
    let mut src = Vec::with_capacity(arrows.len());
    let mut rng = Vec::with_capacity(arrows.len());
    for &(_, s, t) in &arrows {
        src.push(look(s)?);
        rng.push(look(t)?);
    }
    let mut inv: Vec<Option<usize>> = vec![None; arrows.len()];
    for &u in &units {
        inv[u] = Some(u);
    }
    for (r, a, b) in inverses {
        let (a, b) = (look(a).map_err(|e| r.err(e))?, look(b).map_err(|e| r.err(e))?);
        if inv[a].is_some_and(|x| x != b) {
            return Err(r.err("conflicting inverse"));
        }
        inv[a] = Some(b);
    }
    let inv = inv
        .into_iter()
        .enumerate()
        .map(|(a, x)| x.ok_or_else(|| Error::Parse(format!("no inverse for `{}`", arrows[a].0))))
        .collect::<Result<Vec<_>>>()?;
    let mut comps = Vec::with_capacity(compositions.len());
    for (r, a, b, c) in compositions {
        let t = [a, b, c].map(|l| look(l).map_err(|e| r.err(e)));
        let [a, b, c] = t;
        comps.push((a?, b?, c?));
    }
    let labels = arrows.iter().map(|&(l, _, _)| l.to_string()).collect();
    FiniteGroupoid::from_parts(labels, &units, src, rng, inv, &comps)
}

/// Parses without checking the axioms; call `validate` on the result.
pub fn parse_groupoid(text: &str) -> Result<FiniteGroupoid> {
    parse_groupoid_records(&with_header(text, "groupoid")?)
}

// ---------------------------------------------------------------- cocycle

pub fn emit_cocycle(g: &FiniteGroupoid, sigma: &TwoCocycle) -> String {
    let mut out = format!("cocycle\norder {}\n", sigma.order());
    for (a, b, k) in sigma.entries() {
        out.push_str(&format!("value {} {} {k}\n", g.label(a), g.label(b)));
    }
    out
}

/// Parses without checking the cocycle identity.
pub fn parse_cocycle(text: &str, g: &FiniteGroupoid) -> Result<TwoCocycle> {
    let rs = with_header(text, "cocycle")?;
    let mut order = None;
    let mut entries = Vec::new();
    for r in &rs {
        match r.key() {
            "order" => order = Some(r.number::<u32>(r.args(1)?[0])?),
            "value" => {
                let a = r.args(3)?;
                entries.push((arrow_of(g, r, a[0])?, arrow_of(g, r, a[1])?, r.number::<u32>(a[2])?));
            }
            k => return Err(r.err(format!("unknown record `{k}`"))),
        }
    }
    let order = order.ok_or_else(|| Error::Parse("missing `order` record".into()))?;
    if entries.iter().any(|&(_, _, k)| k >= order) {
        return Err(Error::Parse(format!("exponents must lie in 0..{order}")));
    }
    TwoCocycle::from_entries(g, order, entries)
}

pub fn emit_coboundary(g: &FiniteGroupoid, b: &Coboundary) -> String {
    let mut out = format!("coboundary\norder {}\n", b.order());
    for a in g.arrows() {
        if b.get(a) != 0 {
            out.push_str(&format!("value {} {}\n", g.label(a), b.get(a)));
        }
    }
    out
}

pub fn parse_coboundary(text: &str, g: &FiniteGroupoid) -> Result<Coboundary> {
    let rs = with_header(text, "coboundary")?;
    let mut order = None;
    let mut values = vec![0; g.len()];
    for r in &rs {
        match r.key() {
            "order" => order = Some(r.number::<u32>(r.args(1)?[0])?),
            "value" => {
                let a = r.args(2)?;
                values[arrow_of(g, r, a[0])?] = r.number(a[1])?;
            }
            k => return Err(r.err(format!("unknown record `{k}`"))),
        }
    }
    let order = order.ok_or_else(|| Error::Parse("missing `order` record".into()))?;
    if values.iter().any(|&k| k >= order) {
        return Err(Error::Parse(format!("values must lie in 0..{order}")));
    }
    Coboundary::new(g, order, values)
}

// ---------------------------------------------------------------- grading

pub fn emit_grading(g: &FiniteGroupoid, c: &Grading) -> String {
    let mut out = String::from("grading\n");
    match c.group() {
        GradingGroup::Integers => out.push_str("group Z\n"),
        GradingGroup::Finite(t) if *t == FiniteGroup::cyclic(t.order()) => {
            out.push_str(&format!("group Z/{}\n", t.order()));
        }
        GradingGroup::Finite(t) => {
            out.push_str(&format!("group table {}\n", t.order()));
            for row in t.table() {
                let row: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("row {}\n", row.join(" ")));
            }
        }
    }
    for a in g.arrows() {
        out.push_str(&format!("degree {} {}\n", g.label(a), c.degree(a)));
    }
    out
}

/// Parses without checking the homomorphism property. Arrows without a
/// `degree` record get the identity.
pub fn parse_grading(text: &str, g: &FiniteGroupoid) -> Result<Grading> {
    let rs = with_header(text, "grading")?;
    let mut group: Option<GradingGroup> = None;
    let mut table_size = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut degrees = vec![0i64; g.len()];
    for r in &rs {
        match r.key() {
            "group" => {
                if group.is_some() || table_size.is_some() {
                    return Err(r.err("repeated `group`"));
                }
                match &r.tokens[1..] {
                    ["Z"] => group = Some(GradingGroup::Integers),
                    ["table", m] => table_size = Some(r.number::<usize>(m)?),
                    [z] if z.starts_with("Z/") => {
                        let m: usize = r.number(&z[2..])?;
                        if m == 0 {
                            return Err(r.err("Z/0 is not finite; use `group Z`"));
                        }
                        group = Some(GradingGroup::Finite(FiniteGroup::cyclic(m)));
                    }
                    _ => return Err(r.err("expected `group Z`, `group Z/m` or `group table m`")),
                }
            }
            "row" => rows.push(r.tokens[1..].iter().map(|t| r.number(t)).collect::<Result<_>>()?),
            "degree" => {
                let a = r.args(2)?;
                degrees[arrow_of(g, r, a[0])?] = r.number(a[1])?;
            }
            k => return Err(r.err(format!("unknown record `{k}`"))),
        }
    }
    let group = match (group, table_size) {
        (Some(gr), None) if rows.is_empty() => gr,
        (None, Some(m)) if rows.len() == m => GradingGroup::Finite(FiniteGroup::from_table(rows)?),
        (None, Some(m)) => return Err(Error::Parse(format!("expected {m} `row` records, got {}", rows.len()))),
        (None, None) => return Err(Error::Parse("missing `group` record".into())),
        _ => return Err(Error::Parse("`row` records need `group table m`".into())),
    };
    if let Some(a) = g.arrows().find(|&a| !group.contains(degrees[a])) {
        return Err(Error::Parse(format!("degree of `{}` is not a group element", g.label(a))));
    }
    Ok(Grading::from_degrees(group, degrees))
}

// ---------------------------------------------------------------- element

pub fn emit_element(g: &FiniteGroupoid, ring: &Ring, f: &AlgebraElement) -> String {
    let mut out = format!("element\nring {ring}\n");
    for (&a, v) in f.coeffs() {
        out.push_str(&format!("coeff {} {}\n", g.label(a), ring.format(v)));
    }
    out
}

fn parse_coeffs(rs: &[Record], g: &FiniteGroupoid, ring: &Ring) -> Result<AlgebraElement> {
    let mut coeffs: BTreeMap<usize, _> = BTreeMap::new();
    for r in rs {
        let a = r.args(2)?;
        if r.key() != "coeff" {
            return Err(r.err(format!("unknown record `{}`", r.key())));
        }
        let x = arrow_of(g, r, a[0])?;
        let v = ring.parse_element(a[1]).map_err(|e| r.err(e))?;
        if coeffs.insert(x, v).is_some() {
            return Err(r.err(format!("repeated coefficient for `{}`", a[0])));
        }
    }
    Ok(AlgebraElement::from_map(ring, coeffs))
}

fn check_ring_record(r: &Record, ring: &Ring) -> Result<()> {
    let declared = Ring::parse(r.args(1)?[0]).map_err(|e| r.err(e))?;
    if declared != *ring {
        return Err(r.err(format!("file is over {declared}, expected {ring}")));
    }
    Ok(())
}

/// The optional `ring` record must agree with `ring`.
pub fn parse_element(text: &str, g: &FiniteGroupoid, ring: &Ring) -> Result<AlgebraElement> {
    let rs = with_header(text, "element")?;
    let body = match rs.first() {
        Some(r) if r.key() == "ring" => {
            check_ring_record(r, ring)?;
            &rs[1..]
        }
        _ => &rs[..],
    };
    parse_coeffs(body, g, ring)
}

/// The ring named by an element file's `ring` record, if present.
pub fn element_ring(text: &str) -> Result<Option<Ring>> {
    let rs = with_header(text, "element")?;
    match rs.first() {
        Some(r) if r.key() == "ring" => Ok(Some(Ring::parse(r.args(1)?[0]).map_err(|e| r.err(e))?)),
        _ => Ok(None),
    }
}

// ---------------------------------------------------------------- decomposition

pub fn emit_decomposition(g: &FiniteGroupoid, ring: &Ring, terms: &[(RingElement, Bisection)]) -> String {
    let mut out = format!("decomposition\nring {ring}\n");
    for (c, b) in terms {
        let labels: Vec<&str> = b.arrows().iter().map(|&a| g.label(a)).collect();
        out.push_str(&format!("term {} {}\n", ring.format(c), labels.join(" ")));
    }
    out
}

pub fn parse_decomposition(text: &str, g: &FiniteGroupoid, ring: &Ring) -> Result<Vec<(RingElement, Bisection)>> {
    let rs = with_header(text, "decomposition")?;
    let mut terms = Vec::new();
    for r in &rs {
        match r.key() {
            "ring" => check_ring_record(r, ring)?,
            "term" if r.tokens.len() >= 3 => {
                let c = ring.parse_element(r.tokens[1]).map_err(|e| r.err(e))?;
                let arrows = r.tokens[2..].iter().map(|l| arrow_of(g, r, l)).collect::<Result<Vec<_>>>()?;
                terms.push((c, Bisection::new(g, arrows).map_err(|e| r.err(e))?));
            }
            "term" => return Err(r.err("`term` takes a coefficient and at least one arrow")),
            k => return Err(r.err(format!("unknown record `{k}`"))),
        }
    }
    Ok(terms)
}

// ---------------------------------------------------------------- components

pub fn emit_components(g: &FiniteGroupoid, ring: &Ring, parts: &BTreeMap<i64, AlgebraElement>) -> String {
    let mut out = format!("components\nring {ring}\n");
    for (d, f) in parts {
        out.push_str(&format!("component {d}\n"));
        for (&a, v) in f.coeffs() {
            out.push_str(&format!("coeff {} {}\n", g.label(a), ring.format(v)));
        }
    }
    out
}

pub fn parse_components(text: &str, g: &FiniteGroupoid, ring: &Ring) -> Result<BTreeMap<i64, AlgebraElement>> {
    let rs = with_header(text, "components")?;
    let mut blocks: Vec<(i64, Vec<Record>)> = Vec::new();
    for r in &rs {
        match r.key() {
            "ring" => check_ring_record(r, ring)?,
            "component" => blocks.push((r.number(r.args(1)?[0])?, Vec::new())),
            "coeff" => blocks
                .last_mut()
                .ok_or_else(|| r.err("`coeff` before any `component`"))?
                .1
                .push(r.clone()),
            k => return Err(r.err(format!("unknown record `{k}`"))),
        }
    }
    let mut out = BTreeMap::new();
    for (d, block) in blocks {
        if out.insert(d, parse_coeffs(&block, g, ring)?).is_some() {
            return Err(Error::Parse(format!("repeated component {d}")));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- ideal

pub fn emit_ideal(ctx: &AlgebraContext, ideal: &Ideal) -> String {
    let g = ctx.groupoid();
    let mut out = format!("ideal\nring {}\ndim {}\n", ctx.ring(), ideal.dim());
    for v in ideal.basis(ctx) {
        out.push_str("vector\n");
        for (&a, x) in v.coeffs() {
            out.push_str(&format!("coeff {} {}\n", g.label(a), ctx.ring().format(x)));
        }
    }
    out
}

/// The span of the listed vectors; `dim` must match its dimension.
pub fn parse_ideal(text: &str, ctx: &AlgebraContext) -> Result<Ideal> {
    let rs = with_header(text, "ideal")?;
    let mut dim = None;
    let mut vectors: Vec<Vec<Record>> = Vec::new();
    for r in &rs {
        match r.key() {
            "ring" => check_ring_record(r, ctx.ring())?,
            "dim" => dim = Some(r.number::<usize>(r.args(1)?[0])?),
            "vector" => {
                r.args(0)?;
                vectors.push(Vec::new());
            }
            "coeff" => vectors
                .last_mut()
                .ok_or_else(|| r.err("`coeff` before any `vector`"))?
                .push(r.clone()),
            k => return Err(r.err(format!("unknown record `{k}`"))),
        }
    }
    let fs = vectors
        .iter()
        .map(|v| parse_coeffs(v, ctx.groupoid(), ctx.ring()))
        .collect::<Result<Vec<_>>>()?;
    let ideal = Ideal::span(ctx, &fs)?;
    if let Some(d) = dim {
        if d != ideal.dim() {
            return Err(Error::Parse(format!("declared dim {d}, vectors span {}", ideal.dim())));
        }
    }
    Ok(ideal)
}

// ---------------------------------------------------------------- twist

pub fn emit_twist(t: &DiscreteTwist) -> String {
    let (base, total) = (t.base(), t.total());
    let mut out = format!("twist\norder {}\nbase\n", t.order());
    groupoid_body(base, &mut out);
    out.push_str("end\ntotal\n");
    groupoid_body(total, &mut out);
    out.push_str("end\n");
    for (&(x, k), &e) in t.inclusion() {
        out.push_str(&format!("include {} {k} {}\n", base.label(x), total.label(e)));
    }
    for e in total.arrows() {
        out.push_str(&format!("project {} {}\n", total.label(e), base.label(t.project(e))));
    }
    out
}

/// Parses both groupoids (validated) and the maps; the twist axioms are
/// left to `validate`.
pub fn parse_twist(text: &str) -> Result<DiscreteTwist> {
    let rs = with_header(text, "twist")?;
    let mut order = None;
    let mut blocks: BTreeMap<&str, &[Record]> = BTreeMap::new();
    let mut rest = Vec::new();
    let mut i = 0;
    while i < rs.len() {
        let r = &rs[i];
        match r.key() {
            "base" | "total" => {
                r.args(0)?;
                let end = rs[i..]
                    .iter()
                    .position(|x| x.tokens == ["end"])
                    .ok_or_else(|| r.err("block without `end`"))?;
                if blocks.insert(r.key(), &rs[i + 1..i + end]).is_some() {
                    return Err(r.err("repeated block"));
                }
                i += end + 1;
                continue;
            }
            "order" => order = Some(r.number::<u32>(r.args(1)?[0])?),
            _ => rest.push(r),
        }
        i += 1;
    }
    let order = order.ok_or_else(|| Error::Parse("missing `order` record".into()))?;
    if order == 0 {
        return Err(Error::Parse("order must be positive".into()));
    }
    let block = |k: &str| blocks.get(k).copied().ok_or_else(|| Error::Parse(format!("missing `{k}` block")));
    let base = parse_groupoid_records(block("base")?)?;
    let total = parse_groupoid_records(block("total")?)?;
    base.ensure_valid()?;
    total.ensure_valid()?;
    let mut incl = BTreeMap::new();
    let mut proj: Vec<Option<usize>> = vec![None; total.len()];
    for r in rest {
        match r.key() {
            "include" => {
                let a = r.args(3)?;
                let x = arrow_of(&base, r, a[0])?;
                let k: u32 = r.number(a[1])?;
                if k >= order {
                    return Err(r.err(format!("exponent must lie in 0..{order}")));
                }
                if incl.insert((x, k), arrow_of(&total, r, a[2])?).is_some() {
                    return Err(r.err("repeated `include`"));
                }
            }
            "project" => {
                let a = r.args(2)?;
                let e = arrow_of(&total, r, a[0])?;
                if proj[e].replace(arrow_of(&base, r, a[1])?).is_some() {
                    return Err(r.err("repeated `project`"));
                }
            }
            k => return Err(r.err(format!("unknown record `{k}`"))),
        }
    }
    let proj = proj
        .into_iter()
        .enumerate()
        .map(|(e, x)| x.ok_or_else(|| Error::Parse(format!("no projection for `{}`", total.label(e)))))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiscreteTwist::from_parts(base, total, order, incl, proj))
}

// ---------------------------------------------------------------- maps

pub fn emit_section(t: &DiscreteTwist, p: &GlobalSection) -> String {
    let mut out = String::from("section\n");
    for a in t.base().arrows() {
        out.push_str(&format!("map {} {}\n", t.base().label(a), t.total().label(p.at(a))));
    }
    out
}

fn parse_map(text: &str, header: &str, from: &FiniteGroupoid, to: &FiniteGroupoid) -> Result<Vec<usize>> {
    let rs = with_header(text, header)?;
    let mut map: Vec<Option<usize>> = vec![None; from.len()];
    for r in &rs {
        if r.key() != "map" {
            return Err(r.err(format!("unknown record `{}`", r.key())));
        }
        let a = r.args(2)?;
        if map[arrow_of(from, r, a[0])?].replace(arrow_of(to, r, a[1])?).is_some() {
            return Err(r.err(format!("repeated `map` for `{}`", a[0])));
        }
    }
    map.into_iter()
        .enumerate()
        .map(|(a, x)| x.ok_or_else(|| Error::Parse(format!("`{}` is not mapped", from.label(a)))))
        .collect()
}

/// Parses a section; the section axioms are left to `check_section`.
pub fn parse_section(text: &str, t: &DiscreteTwist) -> Result<GlobalSection> {
    parse_map(text, "section", t.base(), t.total()).map(GlobalSection)
}

pub fn emit_morphism(from: &DiscreteTwist, to: &DiscreteTwist, psi: &TwistMorphism) -> String {
    let mut out = String::from("morphism\n");
    for e in from.total().arrows() {
        out.push_str(&format!("map {} {}\n", from.total().label(e), to.total().label(psi.at(e))));
    }
    out
}

pub fn parse_morphism(text: &str, from: &DiscreteTwist, to: &DiscreteTwist) -> Result<TwistMorphism> {
    parse_map(text, "morphism", from.total(), to.total()).map(TwistMorphism)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::structure::ideal_generated;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn groupoid_round_trips() {
        for e in catalog::entries() {
            let text = emit_groupoid(&e.groupoid);
            let back = parse_groupoid(&text).unwrap();
            assert_eq!(back, e.groupoid, "{}", e.name);
            assert_eq!(emit_groupoid(&back), text);
        }
    }

    #[test]
    fn groupoid_text_example() {
        let r2 = catalog::pair_groupoid(2).unwrap();
        let expected = "groupoid\nunits (1,1) (2,2)\n\
            arrow (1,1) src (1,1) rng (1,1)\narrow (1,2) src (2,2) rng (1,1)\n\
            arrow (2,1) src (1,1) rng (2,2)\narrow (2,2) src (2,2) rng (2,2)\n\
            inverse (1,2) (2,1)\ninverse (2,1) (1,2)\n\
            compose (1,2) (2,1) (1,1)\ncompose (2,1) (1,2) (2,2)\n";
        assert_eq!(emit_groupoid(&r2), expected);
        let rest = expected.split_once("\n").unwrap().1.split_once("\n").unwrap().1;
        let messy = "# R2\n\ngroupoid\n  units (1,1) (2,2) # both\n".to_string() + rest;
        assert_eq!(parse_groupoid(&messy).unwrap(), r2);
    }

    #[test]
    fn groupoid_parse_errors() {
        assert!(parse_groupoid("").is_err());
        assert!(parse_groupoid("cocycle\n").is_err());
        assert!(parse_groupoid("groupoid\nunits u\narrow u src u rng u\narrow u src u rng u\n").is_err());
        assert!(parse_groupoid("groupoid\nunits u\narrow u src v rng u\n").is_err());
        assert!(parse_groupoid("groupoid\nunits u\narrow u src u rng u\narrow a src u rng u\n").is_err());
        let err = parse_groupoid("groupoid\nunits u\narrow u src u rng u\nfrob u\n").unwrap_err();
        assert_eq!(err.to_string(), "parse error: line 4: unknown record `frob`");
        // Parsing does not validate: the composition a·a is missing.
        let g = parse_groupoid("groupoid\nunits u\narrow u src u rng u\narrow a src u rng u\ninverse a a\n").unwrap();
        assert!(!g.validate().is_empty());
    }

    #[test]
    fn cocycle_and_coboundary_round_trip() {
        for name in catalog::COCYCLE_NAMES {
            let (base, sigma) = catalog::named_cocycle(name).unwrap();
            let g = catalog::entry(base).unwrap().groupoid;
            let text = emit_cocycle(&g, &sigma);
            assert_eq!(parse_cocycle(&text, &g).unwrap(), sigma);
        }
        let z2 = catalog::entry("Z2").unwrap().groupoid;
        assert_eq!(emit_cocycle(&z2, &catalog::named_cocycle("z2_neg").unwrap().1), "cocycle\norder 2\nvalue g g 1\n");
        assert!(parse_cocycle("cocycle\norder 2\nvalue g g 2\n", &z2).is_err());
        assert!(parse_cocycle("cocycle\nvalue g g 1\n", &z2).is_err());

        let r3 = catalog::pair_groupoid(3).unwrap();
        let b = Coboundary::new(&r3, 3, (0..9).map(|a| if a % 4 == 0 { 0 } else { (a % 3) as u32 }).collect()).unwrap();
        assert_eq!(parse_coboundary(&emit_coboundary(&r3, &b), &r3).unwrap(), b);
        assert!(parse_coboundary("coboundary\norder 2\nvalue (1,1) 1\n", &r3).is_err());
    }

    #[test]
    fn grading_round_trips() {
        for name in catalog::GRADING_NAMES {
            let (base, c) = catalog::named_grading(name).unwrap();
            let g = catalog::entry(base).unwrap().groupoid;
            assert_eq!(parse_grading(&emit_grading(&g, &c), &g).unwrap(), c, "{name}");
        }
        let k4 = catalog::entry("K4").unwrap().groupoid;
        let c = Grading::new(&k4, GradingGroup::Finite(catalog::klein_four()), vec![0, 1, 2, 3]).unwrap();
        let text = emit_grading(&k4, &c);
        assert!(text.contains("group table 4\n"));
        assert_eq!(parse_grading(&text, &k4).unwrap(), c);
        assert!(parse_grading("grading\ngroup Z/2\ndegree g 2\n", &catalog::entry("Z2").unwrap().groupoid).is_err());
    }

    #[test]
    fn element_round_trips() {
        let mut rng = StdRng::seed_from_u64(3);
        for (ring, _, _) in catalog::ring_contexts() {
            let g = catalog::entry("R2+Z2").unwrap().groupoid;
            let ctx = AlgebraContext::untwisted(g.clone(), ring.clone(), None).unwrap();
            for _ in 0..20 {
                let f = ctx.random_element(&mut rng);
                let text = emit_element(&g, &ring, &f);
                assert_eq!(parse_element(&text, &g, &ring).unwrap(), f);
                assert_eq!(element_ring(&text).unwrap(), Some(ring.clone()));
            }
        }
        let z2 = catalog::entry("Z2").unwrap().groupoid;
        let gf3 = Ring::prime_field(3).unwrap();
        let f = parse_element("element\ncoeff g 1\n", &z2, &gf3).unwrap();
        assert_eq!(f.coeffs().len(), 1);
        assert!(parse_element("element\nring GF(5)\ncoeff g 1\n", &z2, &gf3).is_err());
        assert!(parse_element("element\ncoeff g 1\ncoeff g 2\n", &z2, &gf3).is_err());
        assert!(parse_element("element\ncoeff h 1\n", &z2, &gf3).is_err());
    }

    #[test]
    fn decomposition_and_components_round_trip() {
        let mut rng = StdRng::seed_from_u64(5);
        let (base, c) = catalog::named_grading("r3_diff").unwrap();
        let g = catalog::entry(base).unwrap().groupoid;
        let ring = Ring::cyclotomic(4).unwrap();
        let ctx = AlgebraContext::untwisted(g.clone(), ring.clone(), None).unwrap();
        for _ in 0..10 {
            let f = ctx.random_element(&mut rng);
            if !f.is_zero() {
                let terms = ctx.disjoint_decomposition(&f).unwrap();
                let text = emit_decomposition(&g, &ring, &terms);
                assert_eq!(parse_decomposition(&text, &g, &ring).unwrap(), terms);
            }
            let parts = ctx.graded_components(&f, &c).unwrap();
            let text = emit_components(&g, &ring, &parts);
            assert_eq!(parse_components(&text, &g, &ring).unwrap(), parts);
        }
        assert!(parse_decomposition("decomposition\nterm 1 (1,2) (1,3)\n", &g, &ring).is_err());
    }

    #[test]
    fn ideal_round_trips() {
        let mut rng = StdRng::seed_from_u64(4);
        let g = catalog::entry("Z2fix3").unwrap().groupoid;
        let ctx = AlgebraContext::untwisted(g, Ring::prime_field(3).unwrap(), None).unwrap();
        for _ in 0..10 {
            let i = ideal_generated(&ctx, &[ctx.random_element(&mut rng)]).unwrap();
            let text = emit_ideal(&ctx, &i);
            assert_eq!(parse_ideal(&text, &ctx).unwrap(), i);
        }
    }

    #[test]
    fn twist_and_maps_round_trip() {
        for name in ["z2_neg", "z4_carry", "r2_cob", "swap_cob"] {
            let (base, sigma) = catalog::named_cocycle(name).unwrap();
            let g = catalog::entry(base).unwrap().groupoid;
            let t = DiscreteTwist::build(&g, &sigma).unwrap();
            let text = emit_twist(&t);
            let back = parse_twist(&text).unwrap();
            assert_eq!(emit_twist(&back), text);
            assert!(back.validate().is_empty());

            let p = t.find_section();
            assert_eq!(parse_section(&emit_section(&t, &p), &t).unwrap(), p);
            let (model, phi) = t.section_iso(&p).unwrap();
            assert_eq!(parse_morphism(&emit_morphism(&t, &model, &phi), &t, &model).unwrap(), phi);
        }
        let t = DiscreteTwist::build(&catalog::entry("Z2").unwrap().groupoid, &catalog::named_cocycle("z2_neg").unwrap().1).unwrap();
        assert!(parse_section("section\nmap e (e,0)\n", &t).is_err());
        let text = emit_twist(&t).replace("end\ntotal", "total");
        assert!(parse_twist(&text).is_err());
    }
}
