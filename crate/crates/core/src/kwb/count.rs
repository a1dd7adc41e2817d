//! Direct coloring counts on a diagram.
//!
//! A coloring assigns an element of `G` to every thin arc and an element of
//! `E` to every band arc such that
//!
//! (a) at each thin crossing, `out = over^s · in · over^{-s}`;
//! (b) at both ends of each band, `∂(adjacent band arc color)` equals the
//!     end's boundary pattern (arc 1 at the first end, arc k at the last);
//! (c) at each under-thin event, `out = over^s ▷ in`;
//! (d) at each under-band event, `out = f^s · in · f^{-s}`;
//! (e) each maximal circle's signed product of band arc colors is trivial.
//!
//! The search assigns one base arc per circle and propagates crossing rules
//! to a fixpoint, so thin colorings cost `#G^{circles}` on any unlink
//! diagram; band arc 1 ranges over the precomputed boundary fiber and the
//! remaining band arcs propagate through the events. Free choices appear
//! only for arcs a stalled propagation cannot reach, after which every
//! constraint is re-verified, so exotic reference cycles still count
//! correctly.

use super::{BandEnd, EventOver, KwbDiagram};
use crate::algebra::{FiniteCrossedModule, FiniteGroup};
use crate::rational::ExactRational;
use num_bigint::BigUint;
use num_traits::Zero;

/// A full assignment: `thin[arc]` in `G`, `band[b][i]` in `E` for band arc
/// `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub thin: Vec<usize>,
    pub band: Vec<Vec<usize>>,
}

pub(crate) fn pattern_value(g: &FiniteGroup, end: &BandEnd, thin: &[usize]) -> usize {
    let x = thin[end.x];
    let y = thin[end.y];
    match end.case {
        1 => g.mul(g.inv(y), x),
        2 => g.mul(g.inv(x), y),
        3 => g.mul(y, g.inv(x)),
        _ => g.mul(x, g.inv(y)),
    }
}

/// Callback over complete assignments: `(thin colors, band colors)`.
type Visit<'v> = dyn FnMut(&[usize], &[Vec<usize>]) + 'v;

struct Search<'a> {
    d: &'a KwbDiagram,
    cm: &'a FiniteCrossedModule,
    fibers: Vec<Vec<usize>>,
    /// First declared arc of each circle.
    base_arcs: Vec<usize>,
    enforce_last_end: bool,
    enforce_maximal: bool,
}

impl<'a> Search<'a> {
    fn new(d: &'a KwbDiagram, cm: &'a FiniteCrossedModule, enforce_last_end: bool, enforce_maximal: bool) -> Search<'a> {
        let base_arcs = (0..d.circles)
            .map(|c| d.arcs.iter().position(|a| a.circle == c).expect("validated: no empty circles"))
            .collect();
        Search { d, cm, fibers: cm.fibers(), base_arcs, enforce_last_end, enforce_maximal }
    }

    /// Enumerates colorings whose circle-0 base arc color lies in `range`
    /// (the full range when there are no circles).
    fn run(&self, range: std::ops::Range<usize>, visit: &mut Visit) {
        let mut thin = vec![None; self.d.arcs.len()];
        self.assign_circles(0, range, &mut thin, visit);
    }

    fn assign_circles(
        &self,
        circle: usize,
        range0: std::ops::Range<usize>,
        thin: &mut Vec<Option<usize>>,
        visit: &mut Visit,
    ) {
        if circle == self.d.circles {
            return self.thin_fixpoint(thin.clone(), visit);
        }
        let range = if circle == 0 { range0.clone() } else { 0..self.cm.base().order() };
        for v in range {
            thin[self.base_arcs[circle]] = Some(v);
            self.assign_circles(circle + 1, range0.clone(), thin, visit);
        }
        thin[self.base_arcs[circle]] = None;
    }

    fn thin_fixpoint(&self, mut thin: Vec<Option<usize>>, visit: &mut Visit) {
        let g = self.cm.base();
        loop {
            let mut progressed = false;
            for c in &self.d.crossings {
                if let Some(o) = thin[c.over] {
                    let (os, osi) = if c.sign > 0 { (o, g.inv(o)) } else { (g.inv(o), o) };
                    match (thin[c.under_in], thin[c.under_out]) {
                        (Some(i), None) => {
                            thin[c.under_out] = Some(g.mul(g.mul(os, i), osi));
                            progressed = true;
                        }
                        (None, Some(u)) => {
                            thin[c.under_in] = Some(g.mul(g.mul(osi, u), os));
                            progressed = true;
                        }
                        _ => {}
                    }
                }
            }
            if !progressed {
                break;
            }
        }
        if let Some(stalled) = thin.iter().position(|v| v.is_none()) {
            // Unreachable on unlink diagrams colored from base arcs, but a
            // crossing whose over strand is only determined later can stall;
            // such arcs become genuine branch points.
            for v in 0..g.order() {
                let mut t = thin.clone();
                t[stalled] = Some(v);
                self.thin_fixpoint(t, visit);
            }
            return;
        }
        let thin: Vec<usize> = thin.into_iter().map(Option::unwrap).collect();
        for c in &self.d.crossings {
            let o = thin[c.over];
            let (os, osi) = if c.sign > 0 { (o, g.inv(o)) } else { (g.inv(o), o) };
            if g.mul(g.mul(os, thin[c.under_in]), osi) != thin[c.under_out] {
                return;
            }
        }
        self.assign_bands(&thin, 0, &mut Vec::new(), visit);
    }

    fn assign_bands(
        &self,
        thin: &[usize],
        band: usize,
        firsts: &mut Vec<usize>,
        visit: &mut Visit,
    ) {
        if band == self.d.bands.len() {
            return self.band_fixpoint(thin, firsts, visit);
        }
        let target = pattern_value(self.cm.base(), &self.d.bands[band].first_end, thin);
        for &e in &self.fibers[target] {
            firsts.push(e);
            self.assign_bands(thin, band + 1, firsts, visit);
            firsts.pop();
        }
    }

    fn band_fixpoint(&self, thin: &[usize], firsts: &[usize], visit: &mut Visit) {
        let mut vals: Vec<Vec<Option<usize>>> = self
            .d
            .bands
            .iter()
            .enumerate()
            .map(|(bi, b)| {
                let mut v = vec![None; b.arc_count];
                v[0] = Some(firsts[bi]);
                v
            })
            .collect();
        self.band_propagate(thin, &mut vals, visit);
    }

    fn band_propagate(
        &self,
        thin: &[usize],
        vals: &mut [Vec<Option<usize>>],
        visit: &mut Visit,
    ) {
        let e = self.cm.principal();
        loop {
            let mut progressed = false;
            for (bi, b) in self.d.bands.iter().enumerate() {
                for ev in &b.events {
                    if vals[bi][ev.step].is_some() {
                        continue;
                    }
                    let Some(input) = vals[bi][ev.step - 1] else { continue };
                    let out = match ev.over {
                        EventOver::Thin(a) => {
                            let o = if ev.sign > 0 { thin[a] } else { self.cm.base().inv(thin[a]) };
                            Some(self.cm.act(o, input))
                        }
                        EventOver::Band { band, arc } => vals[band][arc - 1].map(|f| {
                            let f = if ev.sign > 0 { f } else { e.inv(f) };
                            e.mul(e.mul(f, input), e.inv(f))
                        }),
                    };
                    if let Some(out) = out {
                        vals[bi][ev.step] = Some(out);
                        progressed = true;
                    }
                }
            }
            if !progressed {
                break;
            }
        }
        for bi in 0..vals.len() {
            if let Some(pos) = vals[bi].iter().position(|v| v.is_none()) {
                // Stalled under-band reference cycle: branch on the arc.
                for v in 0..e.order() {
                    let mut next = vals.to_vec();
                    next[bi][pos] = Some(v);
                    self.band_propagate(thin, &mut next, visit);
                }
                return;
            }
        }
        let band: Vec<Vec<usize>> =
            vals.iter().map(|v| v.iter().map(|x| x.unwrap()).collect()).collect();
        if self.check_full(thin, &band) {
            visit(thin, &band);
        }
    }

    /// Re-verifies every constraint on a complete assignment.
    fn check_full(&self, thin: &[usize], band: &[Vec<usize>]) -> bool {
        let g = self.cm.base();
        let e = self.cm.principal();
        for (bi, b) in self.d.bands.iter().enumerate() {
            for ev in &b.events {
                let input = band[bi][ev.step - 1];
                let expect = band[bi][ev.step];
                let out = match ev.over {
                    EventOver::Thin(a) => {
                        let o = if ev.sign > 0 { thin[a] } else { g.inv(thin[a]) };
                        self.cm.act(o, input)
                    }
                    EventOver::Band { band: ob, arc } => {
                        let f = band[ob][arc - 1];
                        let f = if ev.sign > 0 { f } else { e.inv(f) };
                        e.mul(e.mul(f, input), e.inv(f))
                    }
                };
                if out != expect {
                    return false;
                }
            }
            if self.cm.boundary(band[bi][0]) != pattern_value(g, &b.first_end, thin) {
                return false;
            }
            if self.enforce_last_end
                && self.cm.boundary(band[bi][b.arc_count - 1]) != pattern_value(g, &b.last_end, thin)
            {
                return false;
            }
        }
        if self.enforce_maximal {
            for m in &self.d.maximal_circles {
                let mut acc = e.identity();
                for t in &m.terms {
                    let v = band[t.band][t.arc - 1];
                    let v = if t.theta < 0 { e.inv(v) } else { v };
                    acc = e.mul(acc, v);
                }
                if acc != e.identity() {
                    return false;
                }
            }
        }
        true
    }
}

/// Number of colorings of `d` in `cm`.
pub fn count_colorings(d: &KwbDiagram, cm: &FiniteCrossedModule) -> BigUint {
    count_colorings_jobs(d, cm, 1)
}

/// `count_colorings` partitioned over `jobs` worker threads by the color of
/// the first circle's base arc; the total is identical for every job count.
pub fn count_colorings_jobs(d: &KwbDiagram, cm: &FiniteCrossedModule, jobs: usize) -> BigUint {
    let g_ord = cm.base().order();
    if jobs <= 1 || d.circles == 0 || g_ord == 1 {
        let search = Search::new(d, cm, true, true);
        let mut n = BigUint::zero();
        search.run(0..g_ord, &mut |_, _| n += 1u32);
        return n;
    }
    let jobs = jobs.min(g_ord);
    let mut total = BigUint::zero();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for j in 0..jobs {
            let lo = j * g_ord / jobs;
            let hi = (j + 1) * g_ord / jobs;
            handles.push(scope.spawn(move || {
                let search = Search::new(d, cm, true, true);
                let mut n = BigUint::zero();
                search.run(lo..hi, &mut |_, _| n += 1u32);
                n
            }));
        }
        for h in handles {
            total += h.join().expect("coloring worker panicked");
        }
    });
    total
}

/// All colorings, materialized. Intended for small inputs and tests.
pub fn enumerate_colorings(d: &KwbDiagram, cm: &FiniteCrossedModule) -> Vec<Coloring> {
    let search = Search::new(d, cm, true, true);
    let mut out = Vec::new();
    search.run(0..cm.base().order(), &mut |thin, band| {
        out.push(Coloring { thin: thin.to_vec(), band: band.to_vec() })
    });
    out
}

/// `count_colorings(d, cm) / (#E)^{circles}`, exactly reduced.
pub fn invariant_from_diagram(d: &KwbDiagram, cm: &FiniteCrossedModule) -> ExactRational {
    invariant_from_diagram_jobs(d, cm, 1)
}

pub fn invariant_from_diagram_jobs(d: &KwbDiagram, cm: &FiniteCrossedModule, jobs: usize) -> ExactRational {
    let count = count_colorings_jobs(d, cm, jobs);
    ExactRational::normalized(&count, cm.principal().order(), d.circles)
}

/// One reported defect from [`check_consistency`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyViolation {
    pub place: String,
    pub expected: String,
    pub found: String,
    pub witness: String,
}

/// Outcome of sweeping all colorings that satisfy every constraint except
/// the last-end boundary and the maximal-circle relations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConsistencyReport {
    pub colorings_examined: u64,
    /// Colorings violating a band's last-end boundary pattern.
    pub last_end_total: u64,
    pub last_end_witnesses: Vec<ConsistencyViolation>,
    /// Colorings for which some maximal circle's product has nontrivial
    /// boundary, i.e. the induced 2-relation would be inconsistent.
    pub maximal_boundary_total: u64,
    pub maximal_boundary_witnesses: Vec<ConsistencyViolation>,
}

impl ConsistencyReport {
    pub fn is_clean(&self) -> bool {
        self.last_end_total == 0 && self.maximal_boundary_total == 0
    }
}

impl std::fmt::Display for ConsistencyReport {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_clean() {
            return write!(w, "clean ({} colorings examined)", self.colorings_examined);
        }
        writeln!(
            w,
            "{} last-end violations, {} maximal-boundary violations ({} colorings examined)",
            self.last_end_total, self.maximal_boundary_total, self.colorings_examined
        )?;
        for v in self.last_end_witnesses.iter().chain(&self.maximal_boundary_witnesses) {
            writeln!(w, "  {}: expected {}, found {} under {}", v.place, v.expected, v.found, v.witness)?;
        }
        Ok(())
    }
}

const WITNESS_CAP: usize = 8;

/// Searches for colorings that satisfy the crossing, event, and first-end
/// constraints but break a last-end pattern, and for maximal circles whose
/// products would have nontrivial boundary. A malformed diagram shows up
/// here; a diagram faithful to a real knot with bands comes back clean.
pub fn check_consistency(d: &KwbDiagram, cm: &FiniteCrossedModule) -> ConsistencyReport {
    let search = Search::new(d, cm, false, false);
    let mut report = ConsistencyReport::default();
    let g = cm.base();
    search.run(0..g.order(), &mut |thin, band| {
        report.colorings_examined += 1;
        let witness = || {
            let parts: Vec<String> = d
                .arcs
                .iter()
                .zip(thin)
                .map(|(a, &v)| format!("{}={}", a.name, g.name(v)))
                .chain(
                    d.bands
                        .iter()
                        .zip(band)
                        .map(|(b, v)| format!("{}={}", b.name, cm.principal().name(v[0]))),
                )
                .collect();
            format!("{{{}}}", parts.join(", "))
        };
        for (bi, b) in d.bands.iter().enumerate() {
            let expected = pattern_value(g, &b.last_end, thin);
            let found = cm.boundary(band[bi][b.arc_count - 1]);
            if found != expected {
                report.last_end_total += 1;
                if report.last_end_witnesses.len() < WITNESS_CAP {
                    report.last_end_witnesses.push(ConsistencyViolation {
                        place: format!("last end of band `{}`", b.name),
                        expected: g.name(expected).to_string(),
                        found: g.name(found).to_string(),
                        witness: witness(),
                    });
                }
            }
        }
        for m in &d.maximal_circles {
            let mut acc = g.identity();
            for t in &m.terms {
                let v = cm.boundary(band[t.band][t.arc - 1]);
                let v = if t.theta < 0 { g.inv(v) } else { v };
                acc = g.mul(acc, v);
            }
            if acc != g.identity() {
                report.maximal_boundary_total += 1;
                if report.maximal_boundary_witnesses.len() < WITNESS_CAP {
                    report.maximal_boundary_witnesses.push(ConsistencyViolation {
                        place: format!("maximal circle `{}`", m.name),
                        expected: g.name(g.identity()).to_string(),
                        found: g.name(acc).to_string(),
                        witness: witness(),
                    });
                }
            }
        }
    });
    report
}
