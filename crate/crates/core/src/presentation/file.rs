//! The `presentation v1` text format.
//!
//! ```text
//! presentation v1
//! base X Y
//! b1 2
//! pgen e boundary X Y X Y^-1 X^-1 Y^-1
//! pgen f boundary 1
//! rel2 ( X^-1 ) f ^ +1 ; ( Y^-1 X^-1 ) f ^ -1 ; ( X^-1 Y^-1 X^-1 ) f ^ +1
//! ```
//!
//! Words are whitespace-separated letters `X` / `X^-1`; the literal `1` is
//! the empty word. Optional `rel <word>` lines add base relators. Each
//! `;`-separated term of a `rel2` line is a parenthesized conjugator word,
//! a principal generator, `^`, and an exponent `+1` or `-1`. Serialization
//! is canonical: single spaces, declared order.

use super::{CrossedModulePresentation, PrincipalTerm, TwoRelation};
use crate::algebra::GroupWord;
use crate::scan::{check_name, parse_usize, scan_lines, Line, ParseError, Tok};

fn display_word(w: &GroupWord, names: &[String]) -> String {
    if w.0.is_empty() {
        return "1".to_string();
    }
    w.0.iter()
        .map(|&(g, e)| if e < 0 { format!("{}^-1", names[g]) } else { names[g].clone() })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical text form; `parse_presentation` inverts it exactly.
pub fn serialize_presentation(pres: &CrossedModulePresentation) -> String {
    let mut out = String::from("presentation v1\n");
    if pres.base_names.is_empty() {
        out.push_str("base\n");
    } else {
        out.push_str(&format!("base {}\n", pres.base_names.join(" ")));
    }
    out.push_str(&format!("b1 {}\n", pres.rank_b1));
    for w in &pres.base_relations {
        out.push_str(&format!("rel {}\n", display_word(w, &pres.base_names)));
    }
    for (name, bnd) in pres.principal_names.iter().zip(&pres.boundaries) {
        out.push_str(&format!("pgen {name} boundary {}\n", display_word(bnd, &pres.base_names)));
    }
    for r in &pres.two_relations {
        if r.terms.is_empty() {
            out.push_str("rel2\n");
            continue;
        }
        let terms: Vec<String> = r
            .terms
            .iter()
            .map(|t| {
                format!(
                    "( {} ) {} ^ {}",
                    display_word(&t.conjugator, &pres.base_names),
                    pres.principal_names[t.generator],
                    if t.exponent < 0 { "-1" } else { "+1" }
                )
            })
            .collect();
        out.push_str(&format!("rel2 {}\n", terms.join(" ; ")));
    }
    out
}

fn parse_letter(t: &Tok, names: &[String], what: &str) -> Result<(usize, i8), ParseError> {
    let (name, exp) = match t.text.split_once('^') {
        Some((n, e)) => {
            let exp = match e {
                "-1" => -1,
                "1" | "+1" => 1,
                _ => return Err(t.err(format!("bad exponent `{e}` in `{}`", t.text))),
            };
            (n, exp)
        }
        None => (t.text, 1),
    };
    match names.iter().position(|n| n == name) {
        Some(i) => Ok((i, exp)),
        None => Err(t.err(format!("unknown {what} generator `{name}`"))),
    }
}

fn parse_word(toks: &[Tok], names: &[String], what: &str) -> Result<GroupWord, ParseError> {
    if toks.len() == 1 && toks[0].text == "1" {
        return Ok(GroupWord::empty());
    }
    let mut letters = Vec::with_capacity(toks.len());
    for t in toks {
        if t.text == "1" {
            return Err(t.err("`1` denotes the empty word and must stand alone"));
        }
        letters.push(parse_letter(t, names, what)?);
    }
    Ok(GroupWord(letters))
}

fn parse_rel2(line: &Line, pres: &CrossedModulePresentation) -> Result<TwoRelation, ParseError> {
    let mut terms = Vec::new();
    let toks = &line.toks[1..];
    if toks.is_empty() {
        return Ok(TwoRelation { terms });
    }
    let mut i = 0;
    loop {
        // conjugator: `( word )` or bare `1`
        let t = line.tok(i + 1, "a `(`-delimited conjugator or `1`")?;
        let conjugator = if t.text == "1" {
            i += 1;
            GroupWord::empty()
        } else if t.text == "(" {
            let start = i + 1;
            let mut end = start;
            while end < toks.len() && toks[end].text != ")" {
                end += 1;
            }
            if end == toks.len() {
                return Err(t.err("unclosed `(` in 2-relation term"));
            }
            let w = parse_word(&toks[start..end], &pres.base_names, "base")?;
            i = end + 1;
            w
        } else {
            return Err(t.err(format!("expected `(` or `1`, found `{}`", t.text)));
        };
        let gt = line.tok(i + 1, "a principal generator name")?;
        let generator = pres
            .principal_names
            .iter()
            .position(|n| n == gt.text)
            .ok_or_else(|| gt.err(format!("unknown principal generator `{}`", gt.text)))?;
        let caret = line.tok(i + 2, "`^`")?;
        if caret.text != "^" {
            return Err(caret.err(format!("expected `^`, found `{}`", caret.text)));
        }
        let et = line.tok(i + 3, "an exponent `+1` or `-1`")?;
        let exponent = match et.text {
            "+1" | "1" => 1,
            "-1" => -1,
            other => return Err(et.err(format!("expected `+1` or `-1`, found `{other}`"))),
        };
        terms.push(PrincipalTerm { conjugator, generator, exponent });
        i += 3;
        match toks.get(i) {
            None => break,
            Some(t) if t.text == ";" => i += 1,
            Some(t) => return Err(t.err(format!("expected `;` between terms, found `{}`", t.text))),
        }
    }
    Ok(TwoRelation { terms })
}

/// Parses the `presentation v1` format; errors carry line and column.
pub fn parse_presentation(input: &str) -> Result<CrossedModulePresentation, ParseError> {
    let lines = scan_lines(input, &['(', ')', ';']);
    if lines.is_empty() {
        return Err(ParseError::new(1, 1, "empty file, expected `presentation v1` header"));
    }
    let header = &lines[0];
    if header.toks.len() != 2 || header.toks[0].text != "presentation" || header.toks[1].text != "v1" {
        return Err(header.toks[0].err("expected `presentation v1` header"));
    }
    let mut pres = CrossedModulePresentation::default();
    let mut seen_base = false;
    let mut seen_b1 = false;
    // 2-relations are resolved after all pgen lines so that forward
    // references inside a file are never needed but order stays free.
    let mut rel2_lines: Vec<&Line> = Vec::new();
    for line in &lines[1..] {
        let kw = line.toks[0];
        match kw.text {
            "base" => {
                if seen_base {
                    return Err(kw.err("duplicate `base` line"));
                }
                seen_base = true;
                for t in &line.toks[1..] {
                    let name = check_name(t)?;
                    if pres.base_names.contains(&name) {
                        return Err(t.err(format!("duplicate base generator `{name}`")));
                    }
                    pres.base_names.push(name);
                }
            }
            "b1" => {
                if seen_b1 {
                    return Err(kw.err("duplicate `b1` line"));
                }
                seen_b1 = true;
                pres.rank_b1 = parse_usize(&line.tok(1, "the declared rank")?, "the declared rank")?;
            }
            "rel" => {
                if !seen_base {
                    return Err(kw.err("`rel` before `base`"));
                }
                pres.base_relations.push(parse_word(&line.toks[1..], &pres.base_names, "base")?);
            }
            "pgen" => {
                if !seen_base {
                    return Err(kw.err("`pgen` before `base`"));
                }
                let name = check_name(&line.tok(1, "a principal generator name")?)?;
                if pres.principal_names.contains(&name) {
                    return Err(line.toks[1].err(format!("duplicate principal generator `{name}`")));
                }
                let bkw = line.tok(2, "`boundary`")?;
                if bkw.text != "boundary" {
                    return Err(bkw.err(format!("expected `boundary`, found `{}`", bkw.text)));
                }
                let word = parse_word(&line.toks[3..], &pres.base_names, "base")?;
                pres.principal_names.push(name);
                pres.boundaries.push(word);
            }
            "rel2" => rel2_lines.push(line),
            other => return Err(kw.err(format!("unknown directive `{other}`"))),
        }
    }
    if !seen_base {
        return Err(lines[0].err("missing `base` line"));
    }
    if !seen_b1 {
        return Err(lines[0].err("missing `b1` line"));
    }
    for line in rel2_lines {
        let r = parse_rel2(line, &pres)?;
        pres.two_relations.push(r);
    }
    pres.validate().map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    Ok(pres)
}
