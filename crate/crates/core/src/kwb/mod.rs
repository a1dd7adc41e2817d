//! Knot-with-bands diagrams: data model, text format, direct coloring
//! counts, and extraction of a crossed-module presentation.
//!
//! A diagram records the combinatorics of a projected knot with bands whose
//! pre-knot is an unlink: thin arcs grouped into circles, crossings among
//! thin strands, bands subdivided into arcs by the strands they pass under,
//! the attachment data at both ends of every band, and the maximal circles
//! (post-knot components), each listing the band arcs its attaching sphere
//! encircles, with direction signs.
//!
//! The format encodes what the encoder read off a picture; this module
//! validates internal consistency (reference resolution, strand chains,
//! event coverage) but does not attempt to reconstruct planarity.

mod count;
mod extract;
mod file;

pub use count::{
    check_consistency, count_colorings, count_colorings_jobs, enumerate_colorings,
    invariant_from_diagram, invariant_from_diagram_jobs, Coloring, ConsistencyReport,
    ConsistencyViolation,
};
pub use extract::{band_symbols, extract_presentation, last_end_words, ArcSymbol, ExtractError};
pub use file::parse_diagram;

use thiserror::Error;

/// A thin arc: a maximal overpass segment of the pre-knot projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinArc {
    pub name: String,
    /// Index of the pre-knot component the arc belongs to.
    pub circle: usize,
}

/// A crossing between thin strands. With `s` the sign, the coloring rule is
/// `under_out = over^s · under_in · over^{-s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThinCrossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

/// Attachment data at one end of a band: the adjacent thin arcs `x`, `y`
/// and one of four orientation cases fixing the boundary pattern
///
/// ```text
/// case 1: Y⁻¹X      case 2: X⁻¹Y      case 3: YX⁻¹      case 4: XY⁻¹
/// ```
///
/// where `X`, `Y` are the colors of `x`, `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandEnd {
    pub case: u8,
    pub x: usize,
    pub y: usize,
}

/// What a band passes under at one of its subdivision points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventOver {
    /// A thin arc; rule `out = over^s ▷ in`.
    Thin(usize),
    /// Arc `arc` (1-based) of another band; rule `out = f^s · in · f^{-s}`.
    Band { band: usize, arc: usize },
}

/// The transition from band arc `step` to band arc `step + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandEvent {
    pub step: usize,
    pub over: EventOver,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    pub name: String,
    /// Number of band arcs, `k ≥ 1`, indexed 1..=k along the oriented core.
    pub arc_count: usize,
    pub first_end: BandEnd,
    pub last_end: BandEnd,
    /// Exactly the transitions `1→2, …, (k−1)→k`, in order.
    pub events: Vec<BandEvent>,
}

/// One signed pass of a maximal circle's attaching sphere around a band arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaximalTerm {
    pub band: usize,
    /// 1-based band arc index.
    pub arc: usize,
    pub theta: i8,
}

/// A post-knot component; its term product must color to the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalCircle {
    pub name: String,
    pub terms: Vec<MaximalTerm>,
}

/// A validated knot-with-bands diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KwbDiagram {
    /// Number of pre-knot components.
    pub circles: usize,
    pub arcs: Vec<ThinArc>,
    pub crossings: Vec<ThinCrossing>,
    pub bands: Vec<Band>,
    pub maximal_circles: Vec<MaximalCircle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("arc `{arc}` is assigned to circle {circle}, but there are only {circles} circles")]
    CircleOutOfRange { arc: String, circle: usize, circles: usize },
    #[error("circle {0} has no arcs")]
    EmptyCircle(usize),
    #[error("crossing {index}: under_in `{under_in}` and under_out `{under_out}` are on different circles")]
    CrossingChangesCircle { index: usize, under_in: String, under_out: String },
    #[error("arc `{arc}` is {role} of more than one crossing")]
    ArcReused { arc: String, role: &'static str },
    #[error("circle {circle} has {arcs} arcs but {crossings} undercrossings")]
    ArcCrossingMismatch { circle: usize, arcs: usize, crossings: usize },
    #[error("circle {circle}: crossings do not chain its arcs into a single strand (arc `{arc}` unreached)")]
    BrokenStrand { circle: usize, arc: String },
    #[error("band `{band}`: end case {case} is not in 1..=4")]
    BadEndCase { band: String, case: u8 },
    #[error("band `{band}` has {count} arcs but events for steps {found:?}; expected 1..={expected}")]
    EventChainGap { band: String, count: usize, found: Vec<usize>, expected: usize },
    #[error("band `{band}` event at step {step} passes over arc {arc} of band `{over}`, which has only {count} arcs")]
    EventOverArcOutOfRange { band: String, step: usize, over: String, arc: usize, count: usize },
    #[error("maximal circle `{name}` references arc {arc} of band `{band}`, which has only {count} arcs")]
    MaximalArcOutOfRange { name: String, band: String, arc: usize, count: usize },
    #[error("{place} has sign {sign}; only +1 and -1 are allowed")]
    BadSign { place: String, sign: i8 },
    #[error("{place} references arc index {index}, but there are only {count} arcs")]
    ArcIndexOutOfRange { place: String, index: usize, count: usize },
    #[error("{place} references band index {index}, but there are only {count} bands")]
    BandIndexOutOfRange { place: String, index: usize, count: usize },
}

impl KwbDiagram {
    pub fn arc_index(&self, name: &str) -> Option<usize> {
        self.arcs.iter().position(|a| a.name == name)
    }

    pub fn band_index(&self, name: &str) -> Option<usize> {
        self.bands.iter().position(|b| b.name == name)
    }

    /// Structural validation: reference ranges, one strand chain per circle,
    /// full event coverage of every band.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let na = self.arcs.len();
        let arc_ok = |place: &dyn Fn() -> String, i: usize| {
            if i < na {
                Ok(())
            } else {
                Err(DiagramError::ArcIndexOutOfRange { place: place(), index: i, count: na })
            }
        };
        for (i, a) in self.arcs.iter().enumerate() {
            if a.circle >= self.circles {
                return Err(DiagramError::CircleOutOfRange {
                    arc: self.arcs[i].name.clone(),
                    circle: a.circle,
                    circles: self.circles,
                });
            }
        }
        for c in 0..self.circles {
            if !self.arcs.iter().any(|a| a.circle == c) {
                return Err(DiagramError::EmptyCircle(c));
            }
        }

        let mut succ: Vec<Option<usize>> = vec![None; na];
        let mut pred: Vec<Option<usize>> = vec![None; na];
        for (i, c) in self.crossings.iter().enumerate() {
            let place = || format!("crossing {i}");
            arc_ok(&place, c.over)?;
            arc_ok(&place, c.under_in)?;
            arc_ok(&place, c.under_out)?;
            if c.sign != 1 && c.sign != -1 {
                return Err(DiagramError::BadSign { place: place(), sign: c.sign });
            }
            if self.arcs[c.under_in].circle != self.arcs[c.under_out].circle {
                return Err(DiagramError::CrossingChangesCircle {
                    index: i,
                    under_in: self.arcs[c.under_in].name.clone(),
                    under_out: self.arcs[c.under_out].name.clone(),
                });
            }
            if succ[c.under_in].replace(c.under_out).is_some() {
                return Err(DiagramError::ArcReused {
                    arc: self.arcs[c.under_in].name.clone(),
                    role: "under_in",
                });
            }
            if pred[c.under_out].replace(c.under_in).is_some() {
                return Err(DiagramError::ArcReused {
                    arc: self.arcs[c.under_out].name.clone(),
                    role: "under_out",
                });
            }
        }
        for circle in 0..self.circles {
            let members: Vec<usize> =
                (0..na).filter(|&i| self.arcs[i].circle == circle).collect();
            let n_cross = members.iter().filter(|&&i| succ[i].is_some()).count();
            if n_cross == 0 {
                if members.len() != 1 {
                    return Err(DiagramError::ArcCrossingMismatch {
                        circle,
                        arcs: members.len(),
                        crossings: 0,
                    });
                }
                continue;
            }
            if n_cross != members.len() {
                return Err(DiagramError::ArcCrossingMismatch {
                    circle,
                    arcs: members.len(),
                    crossings: n_cross,
                });
            }
            // Walk the cycle from one arc; it must reach every member.
            let mut reached = vec![false; members.len()];
            let mut at = members[0];
            for _ in 0..members.len() {
                let pos = members.iter().position(|&m| m == at).unwrap();
                if reached[pos] {
                    break;
                }
                reached[pos] = true;
                at = succ[at].unwrap();
            }
            if let Some(pos) = reached.iter().position(|&r| !r) {
                return Err(DiagramError::BrokenStrand {
                    circle,
                    arc: self.arcs[members[pos]].name.clone(),
                });
            }
        }

        for (bi, b) in self.bands.iter().enumerate() {
            for end in [&b.first_end, &b.last_end] {
                if !(1..=4).contains(&end.case) {
                    return Err(DiagramError::BadEndCase { band: b.name.clone(), case: end.case });
                }
                let place = || format!("end of band `{}`", b.name);
                arc_ok(&place, end.x)?;
                arc_ok(&place, end.y)?;
            }
            let mut steps: Vec<usize> = b.events.iter().map(|e| e.step).collect();
            steps.sort_unstable();
            let expected: Vec<usize> = (1..b.arc_count).collect();
            if steps != expected {
                return Err(DiagramError::EventChainGap {
                    band: b.name.clone(),
                    count: b.arc_count,
                    found: steps,
                    expected: b.arc_count.saturating_sub(1),
                });
            }
            for e in &b.events {
                let place = || format!("event at step {} of band `{}`", e.step, b.name);
                if e.sign != 1 && e.sign != -1 {
                    return Err(DiagramError::BadSign { place: place(), sign: e.sign });
                }
                match e.over {
                    EventOver::Thin(a) => arc_ok(&place, a)?,
                    EventOver::Band { band, arc } => {
                        if band >= self.bands.len() {
                            return Err(DiagramError::BandIndexOutOfRange {
                                place: place(),
                                index: band,
                                count: self.bands.len(),
                            });
                        }
                        let count = self.bands[band].arc_count;
                        if arc == 0 || arc > count {
                            return Err(DiagramError::EventOverArcOutOfRange {
                                band: b.name.clone(),
                                step: e.step,
                                over: self.bands[band].name.clone(),
                                arc,
                                count,
                            });
                        }
                    }
                }
            }
            let _ = bi;
        }

        for m in &self.maximal_circles {
            for t in &m.terms {
                if t.band >= self.bands.len() {
                    return Err(DiagramError::BandIndexOutOfRange {
                        place: format!("maximal circle `{}`", m.name),
                        index: t.band,
                        count: self.bands.len(),
                    });
                }
                let count = self.bands[t.band].arc_count;
                if t.arc == 0 || t.arc > count {
                    return Err(DiagramError::MaximalArcOutOfRange {
                        name: m.name.clone(),
                        band: self.bands[t.band].name.clone(),
                        arc: t.arc,
                        count,
                    });
                }
                if t.theta != 1 && t.theta != -1 {
                    return Err(DiagramError::BadSign {
                        place: format!("maximal circle `{}`", m.name),
                        sign: t.theta,
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
