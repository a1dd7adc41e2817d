//! The `crossed_module v1` text format.
//!
//! ```text
//! crossed_module v1
//! group base cyclic 2
//! group principal cyclic 3
//! boundary 0 0 0
//! action 0 1 2
//!        0 2 1
//! ```
//!
//! A group spec is `cyclic <n>`, `product <spec> <spec>`, or `table <order>`
//! followed by `order²` row-major entries. `boundary` lists the image in the
//! base group of each principal element; `action` is the row-major
//! `G.order × E.order` table of `g ▷ e`. Numbers may continue over any number
//! of lines; `#` starts a comment.

use super::{FiniteCrossedModule, FiniteGroup, GroupHom};
use crate::scan::{parse_usize, scan_lines, ParseError, Tok};

struct Stream<'a> {
    toks: Vec<Tok<'a>>,
    pos: usize,
}

impl<'a> Stream<'a> {
    fn next(&mut self, what: &str) -> Result<Tok<'a>, ParseError> {
        let t = self.toks.get(self.pos).copied().ok_or_else(|| {
            let last = self.toks.last();
            ParseError::new(
                last.map_or(1, |t| t.line),
                last.map_or(1, |t| t.col + t.text.len()),
                format!("unexpected end of file, expected {what}"),
            )
        })?;
        self.pos += 1;
        Ok(t)
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let t = self.next(&format!("`{kw}`"))?;
        if t.text == kw {
            Ok(())
        } else {
            Err(t.err(format!("expected `{kw}`, found `{}`", t.text)))
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, ParseError> {
        let t = self.next(what)?;
        parse_usize(&t, what)
    }
}

fn parse_group(s: &mut Stream) -> Result<FiniteGroup, ParseError> {
    let t = s.next("`cyclic`, `product`, or `table`")?;
    match t.text {
        "cyclic" => {
            let n = s.number("cyclic order")?;
            FiniteGroup::cyclic(n).map_err(|e| t.err(e.to_string()))
        }
        "product" => {
            let a = parse_group(s)?;
            let b = parse_group(s)?;
            FiniteGroup::direct_product(&a, &b).map_err(|e| t.err(e.to_string()))
        }
        "table" => {
            let order = s.number("table order")?;
            let mut table = Vec::with_capacity(order * order);
            for _ in 0..order * order {
                table.push(s.number("table entry")?);
            }
            FiniteGroup::from_table(order, table, None).map_err(|e| t.err(e.to_string()))
        }
        other => Err(t.err(format!("expected `cyclic`, `product`, or `table`, found `{other}`"))),
    }
}

/// Parses a `crossed_module v1` file and validates all axioms.
pub fn parse_crossed_module(input: &str) -> Result<FiniteCrossedModule, ParseError> {
    let toks: Vec<Tok> = scan_lines(input, &[]).into_iter().flat_map(|l| l.toks).collect();
    if toks.is_empty() {
        return Err(ParseError::new(1, 1, "empty file, expected `crossed_module v1` header"));
    }
    let mut s = Stream { toks, pos: 0 };
    s.keyword("crossed_module")?;
    s.keyword("v1")?;
    s.keyword("group")?;
    s.keyword("base")?;
    let base = parse_group(&mut s)?;
    s.keyword("group")?;
    s.keyword("principal")?;
    let principal = parse_group(&mut s)?;
    let bnd_kw = s.next("`boundary`")?;
    if bnd_kw.text != "boundary" {
        return Err(bnd_kw.err(format!("expected `boundary`, found `{}`", bnd_kw.text)));
    }
    let mut image = Vec::with_capacity(principal.order());
    for _ in 0..principal.order() {
        image.push(s.number("boundary image entry")?);
    }
    let act_kw = s.next("`action`")?;
    if act_kw.text != "action" {
        return Err(act_kw.err(format!("expected `action`, found `{}`", act_kw.text)));
    }
    let mut action = Vec::with_capacity(base.order() * principal.order());
    for _ in 0..base.order() * principal.order() {
        action.push(s.number("action table entry")?);
    }
    if let Some(t) = s.toks.get(s.pos) {
        return Err(t.err(format!("unexpected trailing token `{}`", t.text)));
    }
    FiniteCrossedModule::from_parts(base, principal, GroupHom { image }, action)
        .map_err(|e| bnd_kw.err(e.to_string()))
}

/// Canonical serialization, always in `table` form.
pub fn serialize_crossed_module(cm: &FiniteCrossedModule) -> String {
    let mut out = String::from("crossed_module v1\n");
    let emit_group = |out: &mut String, which: &str, g: &FiniteGroup| {
        out.push_str(&format!("group {which} table {}\n", g.order()));
        for row in 0..g.order() {
            let cells: Vec<String> =
                (0..g.order()).map(|col| g.mul(row, col).to_string()).collect();
            out.push_str(&format!("  {}\n", cells.join(" ")));
        }
    };
    emit_group(&mut out, "base", cm.base());
    emit_group(&mut out, "principal", cm.principal());
    let bnd: Vec<String> = cm.boundary_hom().image.iter().map(|v| v.to_string()).collect();
    out.push_str(&format!("boundary {}\n", bnd.join(" ")));
    out.push_str("action\n");
    let ne = cm.principal().order();
    for g in 0..cm.base().order() {
        let cells: Vec<String> = (0..ne).map(|e| cm.act(g, e).to_string()).collect();
        out.push_str(&format!("  {}\n", cells.join(" ")));
    }
    out
}
