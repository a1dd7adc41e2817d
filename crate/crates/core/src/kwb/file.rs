//! The `kwb v1` text format.
//!
//! ```text
//! kwb v1
//! circles 2
//! arc X circle 0
//! arc Y circle 1
//! crossing over=X under_in=Y under_out=Y2 sign=-
//! band e arcs 2
//! end e first case=2 x=X y=Y
//! end e last  case=2 x=X y=Y
//! under_thin band=e step=1 over=X sign=-
//! under_band band=e step=1 over=f.2 sign=+
//! maximal m e.2:+1 e.1:-1
//! ```
//!
//! Names must be declared before they are referenced; both ends of every
//! band are required. `#` starts a comment. Sign conventions (normative):
//! thin crossing `out = over^s · in · over^{-s}`, under-thin event
//! `out = over^s ▷ in`, under-band event `out = f^s · in · f^{-s}` with `f`
//! the color of the arc passed under.

use super::{
    Band, BandEnd, BandEvent, DiagramError, EventOver, KwbDiagram, MaximalCircle, MaximalTerm,
    ThinArc, ThinCrossing,
};
use crate::scan::{check_name, parse_usize, scan_lines, Line, ParseError, Tok};
use std::collections::HashMap;

fn key_value<'a>(t: &Tok<'a>, key: &str) -> Result<Tok<'a>, ParseError> {
    match t.text.split_once('=') {
        Some((k, v)) if k == key => {
            Ok(Tok { text: v, line: t.line, col: t.col + key.len() + 1 })
        }
        _ => Err(t.err(format!("expected `{key}=...`, found `{}`", t.text))),
    }
}

fn parse_sign(t: &Tok) -> Result<i8, ParseError> {
    match t.text {
        "+" => Ok(1),
        "-" => Ok(-1),
        other => Err(t.err(format!("expected `+` or `-`, found `{other}`"))),
    }
}

struct Builder {
    d: KwbDiagram,
    arc_by_name: HashMap<String, usize>,
    band_by_name: HashMap<String, usize>,
    band_line: Vec<usize>,
    maximal_names: Vec<String>,
    seen_circles: bool,
    ends_seen: Vec<(bool, bool)>,
}

impl Builder {
    fn arc_ref(&self, t: &Tok) -> Result<usize, ParseError> {
        self.arc_by_name
            .get(t.text)
            .copied()
            .ok_or_else(|| t.err(format!("undefined arc `{}`", t.text)))
    }

    fn band_ref(&self, t: &Tok) -> Result<usize, ParseError> {
        self.band_by_name
            .get(t.text)
            .copied()
            .ok_or_else(|| t.err(format!("undefined band `{}`", t.text)))
    }

    /// `<band>.<arc>` reference.
    fn band_arc_ref(&self, t: &Tok) -> Result<(usize, usize), ParseError> {
        let (b, a) = t
            .text
            .split_once('.')
            .ok_or_else(|| t.err(format!("expected `<band>.<arc>`, found `{}`", t.text)))?;
        let band = self
            .band_by_name
            .get(b)
            .copied()
            .ok_or_else(|| t.err(format!("undefined band `{b}`")))?;
        let arc: usize = a.parse().map_err(|_| t.err(format!("bad band arc index `{a}`")))?;
        Ok((band, arc))
    }
}

/// Parses and validates a `kwb v1` diagram file.
pub fn parse_diagram(input: &str) -> Result<KwbDiagram, ParseError> {
    let lines = scan_lines(input, &[]);
    if lines.is_empty() {
        return Err(ParseError::new(1, 1, "empty file, expected `kwb v1` header"));
    }
    let header = &lines[0];
    if header.toks.len() != 2 || header.toks[0].text != "kwb" || header.toks[1].text != "v1" {
        return Err(header.toks[0].err("expected `kwb v1` header"));
    }
    let mut b = Builder {
        d: KwbDiagram {
            circles: 0,
            arcs: Vec::new(),
            crossings: Vec::new(),
            bands: Vec::new(),
            maximal_circles: Vec::new(),
        },
        arc_by_name: HashMap::new(),
        band_by_name: HashMap::new(),
        band_line: Vec::new(),
        maximal_names: Vec::new(),
        seen_circles: false,
        ends_seen: Vec::new(),
    };
    for line in &lines[1..] {
        parse_line(&mut b, line)?;
    }
    if !b.seen_circles {
        return Err(lines[0].err("missing `circles` line"));
    }
    for (bi, (first, last)) in b.ends_seen.iter().enumerate() {
        if !first || !last {
            let which = if !first { "first" } else { "last" };
            return Err(ParseError::new(
                b.band_line[bi],
                1,
                format!("band `{}` is missing its `{which}` end", b.d.bands[bi].name),
            ));
        }
    }
    b.d.validate().map_err(|e| structural_error(&b, e))?;
    Ok(b.d)
}

/// Positions a post-hoc structural error at the declaration that caused it
/// where that is identifiable, else at the top of the file.
fn structural_error(b: &Builder, e: DiagramError) -> ParseError {
    let line = match &e {
        DiagramError::EventChainGap { band, .. }
        | DiagramError::BadEndCase { band, .. }
        | DiagramError::EventOverArcOutOfRange { band, .. } => b
            .band_by_name
            .get(band)
            .map(|&bi| b.band_line[bi])
            .unwrap_or(1),
        _ => 1,
    };
    ParseError::new(line, 1, e.to_string())
}

fn parse_line(b: &mut Builder, line: &Line) -> Result<(), ParseError> {
    let kw = line.toks[0];
    match kw.text {
        "circles" => {
            if b.seen_circles {
                return Err(kw.err("duplicate `circles` line"));
            }
            b.seen_circles = true;
            b.d.circles = parse_usize(&line.tok(1, "circle count")?, "circle count")?;
        }
        "arc" => {
            if !b.seen_circles {
                return Err(kw.err("`arc` before `circles`"));
            }
            let name = check_name(&line.tok(1, "an arc name")?)?;
            if b.arc_by_name.contains_key(&name) {
                return Err(line.toks[1].err(format!(
                    "arc `{name}` declared twice; an arc belongs to exactly one circle"
                )));
            }
            let ckw = line.tok(2, "`circle`")?;
            if ckw.text != "circle" {
                return Err(ckw.err(format!("expected `circle`, found `{}`", ckw.text)));
            }
            let circle = parse_usize(&line.tok(3, "a circle index")?, "a circle index")?;
            if circle >= b.d.circles {
                return Err(line.toks[3].err(format!(
                    "circle index {circle} out of range; `circles` declared {}",
                    b.d.circles
                )));
            }
            b.arc_by_name.insert(name.clone(), b.d.arcs.len());
            b.d.arcs.push(ThinArc { name, circle });
        }
        "crossing" => {
            let over = b.arc_ref(&key_value(&line.tok(1, "`over=`")?, "over")?)?;
            let under_in = b.arc_ref(&key_value(&line.tok(2, "`under_in=`")?, "under_in")?)?;
            let under_out = b.arc_ref(&key_value(&line.tok(3, "`under_out=`")?, "under_out")?)?;
            let sign = parse_sign(&key_value(&line.tok(4, "`sign=`")?, "sign")?)?;
            b.d.crossings.push(ThinCrossing { over, under_in, under_out, sign });
        }
        "band" => {
            let name = check_name(&line.tok(1, "a band name")?)?;
            if b.band_by_name.contains_key(&name) {
                return Err(line.toks[1].err(format!("band `{name}` declared twice")));
            }
            let akw = line.tok(2, "`arcs`")?;
            if akw.text != "arcs" {
                return Err(akw.err(format!("expected `arcs`, found `{}`", akw.text)));
            }
            let arc_count = parse_usize(&line.tok(3, "an arc count")?, "an arc count")?;
            if arc_count == 0 {
                return Err(line.toks[3].err("a band must have at least one arc"));
            }
            b.band_by_name.insert(name.clone(), b.d.bands.len());
            b.band_line.push(kw.line);
            b.ends_seen.push((false, false));
            // End data is filled in by the `end` lines.
            let dummy = BandEnd { case: 1, x: 0, y: 0 };
            b.d.bands.push(Band { name, arc_count, first_end: dummy, last_end: dummy, events: Vec::new() });
        }
        "end" => {
            let band = b.band_ref(&line.tok(1, "a band name")?)?;
            let which = line.tok(2, "`first` or `last`")?;
            let case_tok = key_value(&line.tok(3, "`case=`")?, "case")?;
            let case = parse_usize(&case_tok, "a case in 1..=4")?;
            if !(1..=4).contains(&case) {
                return Err(case_tok.err(format!("case {case} is not in 1..=4")));
            }
            let case = case as u8;
            let x = b.arc_ref(&key_value(&line.tok(4, "`x=`")?, "x")?)?;
            let y = b.arc_ref(&key_value(&line.tok(5, "`y=`")?, "y")?)?;
            let end = BandEnd { case, x, y };
            match which.text {
                "first" => {
                    if b.ends_seen[band].0 {
                        return Err(which.err("duplicate `first` end"));
                    }
                    b.ends_seen[band].0 = true;
                    b.d.bands[band].first_end = end;
                }
                "last" => {
                    if b.ends_seen[band].1 {
                        return Err(which.err("duplicate `last` end"));
                    }
                    b.ends_seen[band].1 = true;
                    b.d.bands[band].last_end = end;
                }
                other => return Err(which.err(format!("expected `first` or `last`, found `{other}`"))),
            }
        }
        "under_thin" | "under_band" => {
            let band = b.band_ref(&key_value(&line.tok(1, "`band=`")?, "band")?)?;
            let step_tok = key_value(&line.tok(2, "`step=`")?, "step")?;
            let step = parse_usize(&step_tok, "a step index")?;
            if step == 0 || step >= b.d.bands[band].arc_count {
                return Err(step_tok.err(format!(
                    "step {step} out of range; band `{}` has {} arcs",
                    b.d.bands[band].name, b.d.bands[band].arc_count
                )));
            }
            let over_tok = key_value(&line.tok(3, "`over=`")?, "over")?;
            let over = if kw.text == "under_thin" {
                EventOver::Thin(b.arc_ref(&over_tok)?)
            } else {
                let (ob, oa) = b.band_arc_ref(&over_tok)?;
                EventOver::Band { band: ob, arc: oa }
            };
            let sign = parse_sign(&key_value(&line.tok(4, "`sign=`")?, "sign")?)?;
            b.d.bands[band].events.push(BandEvent { step, over, sign });
        }
        "maximal" => {
            let name = check_name(&line.tok(1, "a maximal circle name")?)?;
            if b.maximal_names.contains(&name) {
                return Err(line.toks[1].err(format!("maximal circle `{name}` declared twice")));
            }
            b.maximal_names.push(name.clone());
            let mut terms = Vec::new();
            for t in &line.toks[2..] {
                let (who, theta_text) = t
                    .text
                    .rsplit_once(':')
                    .ok_or_else(|| t.err(format!("expected `<band>.<arc>:<+1|-1>`, found `{}`", t.text)))?;
                let theta = match theta_text {
                    "+1" => 1,
                    "-1" => -1,
                    other => return Err(t.err(format!("expected theta `+1` or `-1`, found `{other}`"))),
                };
                let who_tok = Tok { text: who, line: t.line, col: t.col };
                let (band, arc) = b.band_arc_ref(&who_tok)?;
                terms.push(MaximalTerm { band, arc, theta });
            }
            b.d.maximal_circles.push(MaximalCircle { name, terms });
        }
        other => return Err(kw.err(format!("unknown directive `{other}`"))),
    }
    Ok(())
}
