//! Crossed-module presentations and morphism counting.
//!
//! A presentation consists of a presented base group (generators plus
//! relator words), principal generators each carrying a boundary word, and
//! 2-relations: products of terms `(X, m)^θ` meaning "the conjugator word
//! `X` acting on principal generator `m`, to the power `θ = ±1`".
//!
//! Counting morphisms into a finite crossed module `(G, E, ∂, ▷)` follows
//! the universal property of the presented crossed module: a morphism is a
//! pair `(φ₀, ψ₀)` where `φ₀` maps base generators into `G` satisfying every
//! base relator, `ψ₀` maps each principal generator `m` into the fiber
//! `∂⁻¹(φ(∂₀(m)))`, and every 2-relation evaluates to the identity of `E`,
//! the product `∏ᵢ (φ(Xᵢ) ▷ ψ₀(mᵢ))^{θᵢ}` being taken left to right.

mod file;

pub use file::{parse_presentation, serialize_presentation};

pub use crate::algebra::{GroupWord, Letter};

use crate::algebra::FiniteCrossedModule;
use crate::rational::ExactRational;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// One factor `(X, m)^θ` of a 2-relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrincipalTerm {
    /// Acting word in the base generators.
    pub conjugator: GroupWord,
    /// Index of the principal generator.
    pub generator: usize,
    /// `+1` or `-1`; `-1` inverts the acted element.
    pub exponent: i8,
}

/// A relation in the principal group: the product of its terms must map to
/// the identity under any counted morphism.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct TwoRelation {
    pub terms: Vec<PrincipalTerm>,
}

impl TwoRelation {
    /// Rotation by `k`: the same relation up to conjugacy, so counting is
    /// unaffected.
    pub fn rotated(&self, k: usize) -> TwoRelation {
        if self.terms.is_empty() {
            return self.clone();
        }
        let k = k % self.terms.len();
        let mut terms = self.terms[k..].to_vec();
        terms.extend_from_slice(&self.terms[..k]);
        TwoRelation { terms }
    }
}

/// A finite crossed-module presentation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrossedModulePresentation {
    pub base_names: Vec<String>,
    /// Relator words; each must evaluate to the identity.
    pub base_relations: Vec<GroupWord>,
    /// Declared rank of the free part used for normalization.
    pub rank_b1: usize,
    pub principal_names: Vec<String>,
    /// Boundary word `∂₀(m)` per principal generator.
    pub boundaries: Vec<GroupWord>,
    pub two_relations: Vec<TwoRelation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("b1 = {b1} exceeds the number of base generators ({count})")]
    RankTooLarge { b1: usize, count: usize },
    #[error("{place} references base generator {index}, but there are only {count}")]
    BaseIndexOutOfRange { place: String, index: usize, count: usize },
    #[error("2-relation {relation} references principal generator {index}, but there are only {count}")]
    PrincipalIndexOutOfRange { relation: usize, index: usize, count: usize },
    #[error("{place} has exponent {exp}; only +1 and -1 are allowed")]
    BadExponent { place: String, exp: i8 },
    #[error("principal generator count {names} does not match boundary word count {boundaries}")]
    BoundaryCountMismatch { names: usize, boundaries: usize },
    #[error("duplicate {kind} generator name `{name}`")]
    DuplicateName { kind: &'static str, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("invalid presentation: {0}")]
    Invalid(#[from] PresentationError),
    #[error(
        "inconsistent presentation: 2-relation {relation} has nontrivial boundary under \
         base assignment {witness}"
    )]
    Inconsistent { relation: usize, witness: String },
}

impl CrossedModulePresentation {
    pub fn validate(&self) -> Result<(), PresentationError> {
        let ng = self.base_names.len();
        let np = self.principal_names.len();
        if self.rank_b1 > ng {
            return Err(PresentationError::RankTooLarge { b1: self.rank_b1, count: ng });
        }
        if self.boundaries.len() != np {
            return Err(PresentationError::BoundaryCountMismatch {
                names: np,
                boundaries: self.boundaries.len(),
            });
        }
        let check_word = |place: &dyn Fn() -> String, w: &GroupWord| {
            for &(g, e) in &w.0 {
                if g >= ng {
                    return Err(PresentationError::BaseIndexOutOfRange { place: place(), index: g, count: ng });
                }
                if e != 1 && e != -1 {
                    return Err(PresentationError::BadExponent { place: place(), exp: e });
                }
            }
            Ok(())
        };
        for (i, w) in self.base_relations.iter().enumerate() {
            check_word(&|| format!("base relation {i}"), w)?;
        }
        for (i, w) in self.boundaries.iter().enumerate() {
            check_word(&|| format!("boundary word of principal generator {i}"), w)?;
        }
        for (ri, r) in self.two_relations.iter().enumerate() {
            for (ti, t) in r.terms.iter().enumerate() {
                check_word(&|| format!("conjugator of term {ti} in 2-relation {ri}"), &t.conjugator)?;
                if t.generator >= np {
                    return Err(PresentationError::PrincipalIndexOutOfRange {
                        relation: ri,
                        index: t.generator,
                        count: np,
                    });
                }
                if t.exponent != 1 && t.exponent != -1 {
                    return Err(PresentationError::BadExponent {
                        place: format!("term {ti} in 2-relation {ri}"),
                        exp: t.exponent,
                    });
                }
            }
        }
        for (kind, names) in [("base", &self.base_names), ("principal", &self.principal_names)] {
            for (i, n) in names.iter().enumerate() {
                if names[..i].contains(n) {
                    return Err(PresentationError::DuplicateName { kind, name: n.clone() });
                }
            }
        }
        Ok(())
    }

    fn base_index(&self, name: &str) -> Option<usize> {
        self.base_names.iter().position(|n| n == name)
    }

    fn fresh_pair(&self) -> (String, String) {
        for k in 1.. {
            let c = format!("c{k}");
            let d = format!("d{k}");
            if self.base_index(&c).is_none() && !self.principal_names.contains(&d) {
                return (c, d);
            }
        }
        unreachable!()
    }
}

/// Adds one fresh base generator `c` and one fresh principal generator `d`
/// with boundary `c`, and bumps the declared rank. This multiplies the
/// morphism count by `#E` and the normalization by `#E`, leaving the
/// invariant unchanged.
pub fn stabilize(pres: &CrossedModulePresentation) -> CrossedModulePresentation {
    let mut out = pres.clone();
    let (c, d) = pres.fresh_pair();
    out.base_names.push(c);
    out.principal_names.push(d);
    out.boundaries.push(GroupWord::gen(pres.base_names.len()));
    out.rank_b1 += 1;
    out
}

/// Disjoint union of two presentations with the second reindexed; ranks add.
pub fn free_product(
    p1: &CrossedModulePresentation,
    p2: &CrossedModulePresentation,
) -> CrossedModulePresentation {
    let base_off = p1.base_names.len();
    let princ_off = p1.principal_names.len();
    let mut out = p1.clone();
    let uniquify = |taken: &[String], name: &str| {
        let mut n = name.to_string();
        while taken.contains(&n) {
            n.push('\'');
        }
        n
    };
    for n in &p2.base_names {
        let n = uniquify(&out.base_names, n);
        out.base_names.push(n);
    }
    for n in &p2.principal_names {
        let n = uniquify(&out.principal_names, n);
        out.principal_names.push(n);
    }
    let shift = |w: &GroupWord| GroupWord(w.0.iter().map(|&(g, e)| (g + base_off, e)).collect());
    out.base_relations.extend(p2.base_relations.iter().map(&shift));
    out.boundaries.extend(p2.boundaries.iter().map(&shift));
    out.two_relations.extend(p2.two_relations.iter().map(|r| TwoRelation {
        terms: r
            .terms
            .iter()
            .map(|t| PrincipalTerm {
                conjugator: shift(&t.conjugator),
                generator: t.generator + princ_off,
                exponent: t.exponent,
            })
            .collect(),
    }));
    out.rank_b1 += p2.rank_b1;
    out
}

/// Number of crossed-module morphisms from the presented crossed module
/// into `cm`.
pub fn count_homs(pres: &CrossedModulePresentation, cm: &FiniteCrossedModule) -> Result<BigUint, CountError> {
    count_homs_jobs(pres, cm, 1)
}

/// `count_homs` with the base-assignment space partitioned across `jobs`
/// worker threads; the summed count is identical for every job count.
pub fn count_homs_jobs(
    pres: &CrossedModulePresentation,
    cm: &FiniteCrossedModule,
    jobs: usize,
) -> Result<BigUint, CountError> {
    pres.validate()?;
    let plan = Plan::new(pres, cm);
    let ng = pres.base_names.len();
    let g_ord = cm.base().order();
    if jobs <= 1 || ng == 0 {
        return plan.count_range(if ng == 0 { 0..1 } else { 0..g_ord });
    }
    let jobs = jobs.min(g_ord);
    let mut results: Vec<Result<BigUint, CountError>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for j in 0..jobs {
            let lo = j * g_ord / jobs;
            let hi = (j + 1) * g_ord / jobs;
            let plan = &plan;
            handles.push(scope.spawn(move || plan.count_range(lo..hi)));
        }
        for h in handles {
            results.push(h.join().expect("counting worker panicked"));
        }
    });
    let mut total = BigUint::zero();
    for r in results {
        total += r?;
    }
    Ok(total)
}

/// The invariant `count_homs(pres, cm) / (#E)^{b₁}`, exactly reduced.
pub fn invariant(pres: &CrossedModulePresentation, cm: &FiniteCrossedModule) -> Result<ExactRational, CountError> {
    invariant_jobs(pres, cm, 1)
}

pub fn invariant_jobs(
    pres: &CrossedModulePresentation,
    cm: &FiniteCrossedModule,
    jobs: usize,
) -> Result<ExactRational, CountError> {
    let count = count_homs_jobs(pres, cm, jobs)?;
    Ok(ExactRational::normalized(&count, cm.principal().order(), pres.rank_b1))
}

/// Precomputed enumeration schedule shared by all workers.
struct Plan<'a> {
    pres: &'a CrossedModulePresentation,
    cm: &'a FiniteCrossedModule,
    /// Base relators indexed by the largest generator they mention.
    base_rel_at: Vec<Vec<&'a GroupWord>>,
    /// `∂⁻¹(t)` for each `t ∈ G`.
    fibers: Vec<Vec<usize>>,
    /// 2-relations (those with at least one term) indexed by the largest
    /// principal generator they mention, as indices into `two_relations`.
    two_rel_at: Vec<Vec<usize>>,
    /// Largest principal generator mentioned by any 2-relation.
    last_constrained: Option<usize>,
}

impl<'a> Plan<'a> {
    fn new(pres: &'a CrossedModulePresentation, cm: &'a FiniteCrossedModule) -> Plan<'a> {
        let ng = pres.base_names.len();
        let np = pres.principal_names.len();
        let mut base_rel_at = vec![Vec::new(); ng];
        for w in &pres.base_relations {
            if let Some(m) = w.max_generator() {
                base_rel_at[m].push(w);
            }
        }
        let mut two_rel_at = vec![Vec::new(); np];
        let mut last_constrained = None;
        for (ri, r) in pres.two_relations.iter().enumerate() {
            if let Some(m) = r.terms.iter().map(|t| t.generator).max() {
                two_rel_at[m].push(ri);
                last_constrained = Some(last_constrained.map_or(m, |l: usize| l.max(m)));
            }
        }
        Plan { pres, cm, base_rel_at, fibers: cm.fibers(), two_rel_at, last_constrained }
    }

    fn count_range(&self, range: std::ops::Range<usize>) -> Result<BigUint, CountError> {
        let ng = self.pres.base_names.len();
        let mut total = BigUint::zero();
        if ng == 0 {
            if !range.is_empty() {
                total += self.count_principal(&[])?;
            }
            return Ok(total);
        }
        let mut phi = vec![0usize; ng];
        for g0 in range {
            phi[0] = g0;
            if self.base_ok(&phi, 0) {
                self.descend_base(&mut phi, 1, &mut total)?;
            }
        }
        Ok(total)
    }

    fn base_ok(&self, phi: &[usize], depth: usize) -> bool {
        self.base_rel_at[depth]
            .iter()
            .all(|w| w.eval_unchecked(self.cm.base(), phi) == self.cm.base().identity())
    }

    fn descend_base(&self, phi: &mut Vec<usize>, depth: usize, total: &mut BigUint) -> Result<(), CountError> {
        if depth == phi.len() {
            *total += self.count_principal(phi)?;
            return Ok(());
        }
        for g in 0..self.cm.base().order() {
            phi[depth] = g;
            if self.base_ok(phi, depth) {
                self.descend_base(phi, depth + 1, total)?;
            }
        }
        Ok(())
    }

    /// Number of principal assignments compatible with a fixed `φ`.
    fn count_principal(&self, phi: &[usize]) -> Result<BigUint, CountError> {
        let g = self.cm.base();
        let np = self.pres.principal_names.len();

        // Boundary targets per principal generator.
        let targets: Vec<usize> =
            self.pres.boundaries.iter().map(|w| w.eval_unchecked(g, phi)).collect();

        // Acting elements per 2-relation term; these depend only on φ. At the
        // same time, verify that ∂ of each relation is trivial under φ.
        let mut acts: Vec<Vec<usize>> = Vec::with_capacity(self.pres.two_relations.len());
        for (ri, r) in self.pres.two_relations.iter().enumerate() {
            let a: Vec<usize> =
                r.terms.iter().map(|t| t.conjugator.eval_unchecked(g, phi)).collect();
            let mut bnd = g.identity();
            for (t, &ai) in r.terms.iter().zip(&a) {
                let v = g.mul(g.mul(ai, targets[t.generator]), g.inv(ai));
                let v = if t.exponent < 0 { g.inv(v) } else { v };
                bnd = g.mul(bnd, v);
            }
            if bnd != g.identity() {
                return Err(CountError::Inconsistent { relation: ri, witness: self.render_phi(phi) });
            }
            acts.push(a);
        }

        // Generators past the last constrained one contribute a plain product
        // of fiber sizes.
        let cands: Vec<&[usize]> = targets.iter().map(|&t| self.fibers[t].as_slice()).collect();
        let bound = self.last_constrained.map_or(0, |l| l + 1);
        let mut tail = BigUint::one();
        for c in &cands[bound..np] {
            tail *= BigUint::from(c.len());
        }
        if tail.is_zero() {
            return Ok(tail);
        }

        let mut psi = vec![0usize; bound];
        let mut prefixes = BigUint::zero();
        self.descend_principal(&cands, &acts, &mut psi, 0, &mut prefixes);
        Ok(prefixes * tail)
    }

    fn descend_principal(
        &self,
        cands: &[&[usize]],
        acts: &[Vec<usize>],
        psi: &mut Vec<usize>,
        depth: usize,
        accepted: &mut BigUint,
    ) {
        if depth == psi.len() {
            *accepted += BigUint::one();
            return;
        }
        let e = self.cm.principal();
        'cand: for &v in cands[depth] {
            psi[depth] = v;
            for &ri in &self.two_rel_at[depth] {
                let r = &self.pres.two_relations[ri];
                let mut acc = e.identity();
                for (t, &a) in r.terms.iter().zip(&acts[ri]) {
                    let w = self.cm.act(a, psi[t.generator]);
                    let w = if t.exponent < 0 { e.inv(w) } else { w };
                    acc = e.mul(acc, w);
                }
                if acc != e.identity() {
                    continue 'cand;
                }
            }
            self.descend_principal(cands, acts, psi, depth + 1, accepted);
        }
    }

    fn render_phi(&self, phi: &[usize]) -> String {
        let parts: Vec<String> = self
            .pres
            .base_names
            .iter()
            .zip(phi)
            .map(|(n, &v)| format!("{n}={}", self.cm.base().name(v)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}
