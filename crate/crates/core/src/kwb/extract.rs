//! Extraction of a crossed-module presentation from a diagram.
//!
//! Base generators are the thin arcs, with one conjugation relator per
//! crossing; the declared rank is the circle count. Each band contributes
//! one principal generator (its arc 1) whose boundary word is the first-end
//! pattern. Every band arc carries a symbolic value `w ▷ e`: under-thin
//! events prepend `over^s` to the conjugator, and under-band events turn
//! conjugation into an action through the boundary of the arc passed under,
//! prepending `w_f · ∂₀(e_f)^{s} · w_f⁻¹`. Each maximal circle becomes one
//! 2-relation over these symbols. The last-end pattern is not imposed as a
//! relation; [`super::check_consistency`] verifies it instead.

use super::{BandEnd, EventOver, KwbDiagram};
use crate::algebra::GroupWord;
use crate::presentation::{CrossedModulePresentation, PrincipalTerm, TwoRelation};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error(
        "band `{band}` arc {arc}: its symbolic value depends cyclically on other band arcs \
         through under-band events"
    )]
    CyclicBandDependency { band: String, arc: usize },
}

fn pattern_word(end: &BandEnd) -> GroupWord {
    let (x, y) = (end.x, end.y);
    GroupWord(match end.case {
        1 => vec![(y, -1), (x, 1)],
        2 => vec![(x, -1), (y, 1)],
        3 => vec![(y, 1), (x, -1)],
        _ => vec![(x, 1), (y, -1)],
    })
}

/// Symbolic value of a band arc: `conjugator ▷ e^exponent` over the band's
/// own generator. The event model never inverts, so `exponent` is always
/// `+1`; it is carried anyway so the term shape stays general.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSymbol {
    pub conjugator: GroupWord,
    pub exponent: i8,
}

/// The symbolic value of every band arc: arc `i+1` of band `b` is
/// `symbols[b][i].conjugator ▷ e_b^{symbols[b][i].exponent}`.
pub fn band_symbols(d: &KwbDiagram) -> Result<Vec<Vec<ArcSymbol>>, ExtractError> {
    let boundaries: Vec<GroupWord> =
        d.bands.iter().map(|b| pattern_word(&b.first_end)).collect();
    let mut symbols: Vec<Vec<Option<ArcSymbol>>> =
        d.bands.iter().map(|b| {
            let mut v = vec![None; b.arc_count];
            v[0] = Some(ArcSymbol { conjugator: GroupWord::empty(), exponent: 1 });
            v
        }).collect();
    loop {
        let mut progressed = false;
        for bi in 0..d.bands.len() {
            for ei in 0..d.bands[bi].events.len() {
                let ev = d.bands[bi].events[ei];
                if symbols[bi][ev.step].is_some() {
                    continue;
                }
                let Some(sym_in) = symbols[bi][ev.step - 1].clone() else { continue };
                let conjugator = match ev.over {
                    EventOver::Thin(a) => {
                        GroupWord(vec![(a, ev.sign)]).concat(&sym_in.conjugator)
                    }
                    EventOver::Band { band, arc } => {
                        let Some(sym_f) = symbols[band][arc - 1].clone() else { continue };
                        let mid = if ev.sign * sym_f.exponent > 0 {
                            boundaries[band].clone()
                        } else {
                            boundaries[band].inverse()
                        };
                        sym_f
                            .conjugator
                            .concat(&mid)
                            .concat(&sym_f.conjugator.inverse())
                            .concat(&sym_in.conjugator)
                    }
                };
                symbols[bi][ev.step] = Some(ArcSymbol { conjugator, exponent: sym_in.exponent });
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    let mut out = Vec::with_capacity(symbols.len());
    for (bi, arcs) in symbols.into_iter().enumerate() {
        let mut row = Vec::with_capacity(arcs.len());
        for (pos, s) in arcs.into_iter().enumerate() {
            match s {
                Some(s) => row.push(s),
                None => {
                    return Err(ExtractError::CyclicBandDependency {
                        band: d.bands[bi].name.clone(),
                        arc: pos + 1,
                    })
                }
            }
        }
        out.push(row);
    }
    Ok(out)
}

/// Extracts the presentation counted by the morphism path. On a consistent
/// diagram, `count_homs` of the result equals `count_colorings` of `d`.
pub fn extract_presentation(d: &KwbDiagram) -> Result<CrossedModulePresentation, ExtractError> {
    let symbols = band_symbols(d)?;
    let base_relations = d
        .crossings
        .iter()
        .map(|c| {
            GroupWord(vec![
                (c.over, c.sign),
                (c.under_in, 1),
                (c.over, -c.sign),
                (c.under_out, -1),
            ])
        })
        .collect();
    let two_relations = d
        .maximal_circles
        .iter()
        .map(|m| TwoRelation {
            terms: m
                .terms
                .iter()
                .map(|t| {
                    let sym = &symbols[t.band][t.arc - 1];
                    PrincipalTerm {
                        conjugator: sym.conjugator.clone(),
                        generator: t.band,
                        exponent: sym.exponent * t.theta,
                    }
                })
                .collect(),
        })
        .collect();
    Ok(CrossedModulePresentation {
        base_names: d.arcs.iter().map(|a| a.name.clone()).collect(),
        base_relations,
        rank_b1: d.circles,
        principal_names: d.bands.iter().map(|b| b.name.clone()).collect(),
        boundaries: d.bands.iter().map(|b| pattern_word(&b.first_end)).collect(),
        two_relations,
    })
}

/// The last-end boundary pattern of every band, in the extracted generator
/// numbering. Emitted as annotations alongside an extracted presentation;
/// these are checks, not relations.
pub fn last_end_words(d: &KwbDiagram) -> Vec<(String, GroupWord)> {
    d.bands
        .iter()
        .map(|b| (b.name.clone(), pattern_word(&b.last_end)))
        .collect()
}
