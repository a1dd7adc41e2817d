//! Finite groups by multiplication table, group words, and finite crossed
//! modules `(G, E, ∂, ▷)` with exhaustive axiom validation.
//!
//! Elements are identified by index into the tables; names are cosmetic.
//! Everything here is immutable after construction and safe to share across
//! worker threads.

mod file;

pub use file::{parse_crossed_module, serialize_crossed_module};

use thiserror::Error;

/// Hard cap on group order for table-backed groups.
pub const MAX_GROUP_ORDER: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("group order must be at least 1")]
    EmptyGroup,
    #[error("group order {0} exceeds the maximum {MAX_GROUP_ORDER}")]
    OrderTooLarge(usize),
    #[error("product table has {found} entries, expected {expected}")]
    BadTableSize { expected: usize, found: usize },
    #[error("table entry {value} at ({a},{b}) is out of range for order {order}")]
    EntryOutOfRange { a: usize, b: usize, value: usize, order: usize },
    #[error("product table is not associative: witness ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("product table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("map is not a homomorphism: image({a}·{b}) ≠ image({a})·image({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("homomorphism image list has {found} entries, expected {expected}")]
    BadHomSize { expected: usize, found: usize },
    #[error("homomorphism image {value} out of range for target order {order}")]
    HomImageOutOfRange { value: usize, order: usize },
    #[error("principal group must be abelian for a trivial boundary: witness {e}·{f} ≠ {f}·{e}")]
    PrincipalNotAbelian { e: usize, f: usize },
    #[error("action table has {found} entries, expected {expected}")]
    BadActionSize { expected: usize, found: usize },
    #[error("action entry {value} at ({g},{e}) out of range for order {order}")]
    ActionOutOfRange { g: usize, e: usize, value: usize, order: usize },
    #[error("invalid crossed module: {0}")]
    InvalidCrossedModule(ValidationReport),
    #[error("generator index {index} out of range ({count} generators)")]
    GeneratorOutOfRange { index: usize, count: usize },
}

/// A finite group presented by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    product: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// The group ℤ_n with addition; element `i` is named `"i"`.
    pub fn cyclic(n: usize) -> Result<FiniteGroup, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::EmptyGroup);
        }
        if n > MAX_GROUP_ORDER {
            return Err(AlgebraError::OrderTooLarge(n));
        }
        let mut product = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                product[a * n + b] = (a + b) % n;
            }
        }
        let inverse = (0..n).map(|a| (n - a) % n).collect();
        let names = (0..n).map(|i| i.to_string()).collect();
        Ok(FiniteGroup { order: n, product, identity: 0, inverse, names })
    }

    /// Componentwise direct product `a × b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, AlgebraError> {
        let n = a
            .order
            .checked_mul(b.order)
            .filter(|&n| n <= MAX_GROUP_ORDER)
            .ok_or(AlgebraError::OrderTooLarge(a.order.saturating_mul(b.order)))?;
        // element (x, y) ↦ index x*b.order + y
        let pair = |x: usize, y: usize| x * b.order + y;
        let mut product = vec![0; n * n];
        for x1 in 0..a.order {
            for y1 in 0..b.order {
                for x2 in 0..a.order {
                    for y2 in 0..b.order {
                        product[pair(x1, y1) * n + pair(x2, y2)] = pair(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        let mut names = vec![String::new(); n];
        for x in 0..a.order {
            for y in 0..b.order {
                inverse[pair(x, y)] = pair(a.inv(x), b.inv(y));
                names[pair(x, y)] = format!("({},{})", a.names[x], b.names[y]);
            }
        }
        Ok(FiniteGroup { order: n, product, identity: pair(a.identity, b.identity), inverse, names })
    }

    /// Builds a group from an `order × order` row-major product table,
    /// deriving the identity and inverse tables. Fails with a witness if the
    /// table is not a group.
    pub fn from_table(order: usize, table: Vec<usize>, names: Option<Vec<String>>) -> Result<FiniteGroup, AlgebraError> {
        if order == 0 {
            return Err(AlgebraError::EmptyGroup);
        }
        if order > MAX_GROUP_ORDER {
            return Err(AlgebraError::OrderTooLarge(order));
        }
        if table.len() != order * order {
            return Err(AlgebraError::BadTableSize { expected: order * order, found: table.len() });
        }
        for a in 0..order {
            for b in 0..order {
                let v = table[a * order + b];
                if v >= order {
                    return Err(AlgebraError::EntryOutOfRange { a, b, value: v, order });
                }
            }
        }
        let names = match names {
            Some(ns) if ns.len() == order => ns,
            _ => (0..order).map(|i| format!("g{i}")).collect(),
        };
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or(AlgebraError::NoIdentity)?;
        let mut inverse = vec![0; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| table[a * order + b] == identity && table[b * order + a] == identity)
                .ok_or(AlgebraError::NoInverse(a))?;
        }
        let g = FiniteGroup { order, product: table, identity, inverse, names };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(AlgebraError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustive associativity/identity/inverse re-check.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        self.check_associative()?;
        for x in 0..self.order {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(AlgebraError::NoIdentity);
            }
            let ix = self.inv(x);
            if self.mul(x, ix) != self.identity || self.mul(ix, x) != self.identity {
                return Err(AlgebraError::NoInverse(x));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let (base, reps) = if k < 0 { (self.inv(a), (-k) as u64) } else { (a, k as u64) };
        let mut acc = self.identity;
        for _ in 0..reps {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn product_table(&self) -> &[usize] {
        &self.product
    }
}

/// One letter of a word in a free group: a generator index with exponent ±1.
pub type Letter = (usize, i8);

/// A word in the free group on indexed generators.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn empty() -> GroupWord {
        GroupWord(Vec::new())
    }

    pub fn gen(index: usize) -> GroupWord {
        GroupWord(vec![(index, 1)])
    }

    /// The inverse word: letters reversed, exponents flipped.
    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|&(g, _)| g).max()
    }

    /// Folds the word left to right under `assignment: generator → element`.
    pub fn evaluate(&self, group: &FiniteGroup, assignment: &[usize]) -> Result<usize, AlgebraError> {
        let mut acc = group.identity();
        for &(g, e) in &self.0 {
            let v = *assignment
                .get(g)
                .ok_or(AlgebraError::GeneratorOutOfRange { index: g, count: assignment.len() })?;
            let v = if e < 0 { group.inv(v) } else { v };
            acc = group.mul(acc, v);
        }
        Ok(acc)
    }

    /// `evaluate` for words already checked against the assignment length.
    #[inline]
    pub(crate) fn eval_unchecked(&self, group: &FiniteGroup, assignment: &[usize]) -> usize {
        let mut acc = group.identity();
        for &(g, e) in &self.0 {
            let v = assignment[g];
            let v = if e < 0 { group.inv(v) } else { v };
            acc = group.mul(acc, v);
        }
        acc
    }
}

/// Folds a word left to right under an assignment of generators to elements.
pub fn evaluate_group_word(group: &FiniteGroup, assignment: &[usize], word: &GroupWord) -> Result<usize, AlgebraError> {
    word.evaluate(group, assignment)
}

/// A group homomorphism between table-backed groups, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub image: Vec<usize>,
}

impl GroupHom {
    pub fn validate(&self, source: &FiniteGroup, target: &FiniteGroup) -> Result<(), AlgebraError> {
        if self.image.len() != source.order() {
            return Err(AlgebraError::BadHomSize { expected: source.order(), found: self.image.len() });
        }
        for &v in &self.image {
            if v >= target.order() {
                return Err(AlgebraError::HomImageOutOfRange { value: v, order: target.order() });
            }
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if self.image[source.mul(a, b)] != target.mul(self.image[a], self.image[b]) {
                    return Err(AlgebraError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }
}

/// A single crossed-module axiom violation, with witness elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CmViolation {
    /// `g ▷ -` is not injective on E.
    ActionNotPermutation { g: usize, e1: usize, e2: usize },
    /// `g ▷ (e·f) ≠ (g▷e)·(g▷f)`.
    ActionNotAutomorphism { g: usize, e: usize, f: usize },
    /// `identity ▷ e ≠ e`.
    ActionIdentity { e: usize },
    /// `(g·h) ▷ e ≠ g ▷ (h ▷ e)`.
    ActionNotCompatible { g: usize, h: usize, e: usize },
    /// `∂(e·f) ≠ ∂(e)·∂(f)`.
    BoundaryNotHom { e: usize, f: usize },
    /// First axiom: `∂(g ▷ e) ≠ g·∂(e)·g⁻¹`.
    Equivariance { g: usize, e: usize },
    /// Second (Peiffer) axiom: `∂(e) ▷ f ≠ e·f·e⁻¹`.
    Peiffer { e: usize, f: usize },
}

impl std::fmt::Display for CmViolation {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            CmViolation::ActionNotPermutation { g, e1, e2 } => {
                write!(w, "action of g={g} is not a permutation: e1={e1} and e2={e2} collide")
            }
            CmViolation::ActionNotAutomorphism { g, e, f } => {
                write!(w, "action of g={g} is not an automorphism: witness e={e}, f={f}")
            }
            CmViolation::ActionIdentity { e } => write!(w, "identity does not act trivially on e={e}"),
            CmViolation::ActionNotCompatible { g, h, e } => {
                write!(w, "(g·h)▷e ≠ g▷(h▷e) for g={g}, h={h}, e={e}")
            }
            CmViolation::BoundaryNotHom { e, f } => {
                write!(w, "boundary is not a homomorphism: witness e={e}, f={f}")
            }
            CmViolation::Equivariance { g, e } => {
                write!(w, "∂(g▷e) ≠ g·∂(e)·g⁻¹ for g={g}, e={e}")
            }
            CmViolation::Peiffer { e, f } => write!(w, "∂(e)▷f ≠ e·f·e⁻¹ for e={e}, f={f}"),
        }
    }
}

/// Result of exhaustively checking the crossed-module axioms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<CmViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.violations.is_empty() {
            return write!(w, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(w, "; ")?;
            }
            write!(w, "{v}")?;
        }
        Ok(())
    }
}

/// A finite crossed module `(G, E, ∂, ▷)`: base group `G`, principal group
/// `E`, boundary homomorphism `∂: E → G`, and a left action of `G` on `E` by
/// automorphisms satisfying
///
/// 1. `∂(g ▷ e) = g·∂(e)·g⁻¹`
/// 2. `∂(e) ▷ f = e·f·e⁻¹`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCrossedModule {
    base: FiniteGroup,
    principal: FiniteGroup,
    boundary: GroupHom,
    /// Row-major `G.order × E.order` table; entry `(g, e)` is `g ▷ e`.
    action: Vec<usize>,
}

impl FiniteCrossedModule {
    /// Builds and fully validates a crossed module from raw tables.
    pub fn from_parts(
        base: FiniteGroup,
        principal: FiniteGroup,
        boundary: GroupHom,
        action: Vec<usize>,
    ) -> Result<FiniteCrossedModule, AlgebraError> {
        base.validate()?;
        principal.validate()?;
        if boundary.image.len() != principal.order() {
            return Err(AlgebraError::BadHomSize { expected: principal.order(), found: boundary.image.len() });
        }
        for &v in &boundary.image {
            if v >= base.order() {
                return Err(AlgebraError::HomImageOutOfRange { value: v, order: base.order() });
            }
        }
        if action.len() != base.order() * principal.order() {
            return Err(AlgebraError::BadActionSize {
                expected: base.order() * principal.order(),
                found: action.len(),
            });
        }
        for g in 0..base.order() {
            for e in 0..principal.order() {
                let v = action[g * principal.order() + e];
                if v >= principal.order() {
                    return Err(AlgebraError::ActionOutOfRange { g, e, value: v, order: principal.order() });
                }
            }
        }
        let cm = FiniteCrossedModule { base, principal, boundary, action };
        let report = cm.validate();
        if report.is_valid() {
            Ok(cm)
        } else {
            Err(AlgebraError::InvalidCrossedModule(report))
        }
    }

    /// `(G, G, id, conjugation)` for any group `G`.
    pub fn conjugation(group: FiniteGroup) -> FiniteCrossedModule {
        let n = group.order();
        let mut action = vec![0; n * n];
        for g in 0..n {
            for e in 0..n {
                action[g * n + e] = group.mul(group.mul(g, e), group.inv(g));
            }
        }
        let boundary = GroupHom { image: (0..n).collect() };
        FiniteCrossedModule { base: group.clone(), principal: group, boundary, action }
    }

    /// Crossed module with `∂(e) = identity` for all `e`. The second axiom
    /// then forces `E` to be abelian, which is checked, as is the action.
    pub fn trivial_boundary(
        base: FiniteGroup,
        principal: FiniteGroup,
        action: Vec<usize>,
    ) -> Result<FiniteCrossedModule, AlgebraError> {
        for e in 0..principal.order() {
            for f in 0..principal.order() {
                if principal.mul(e, f) != principal.mul(f, e) {
                    return Err(AlgebraError::PrincipalNotAbelian { e, f });
                }
            }
        }
        let boundary = GroupHom { image: vec![base.identity(); principal.order()] };
        FiniteCrossedModule::from_parts(base, principal, boundary, action)
    }

    #[inline]
    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    #[inline]
    pub fn principal(&self) -> &FiniteGroup {
        &self.principal
    }

    /// `g ▷ e`, a table lookup.
    #[inline]
    pub fn act(&self, g: usize, e: usize) -> usize {
        self.action[g * self.principal.order() + e]
    }

    /// `∂(e)`, a table lookup.
    #[inline]
    pub fn boundary(&self, e: usize) -> usize {
        self.boundary.image[e]
    }

    pub fn boundary_hom(&self) -> &GroupHom {
        &self.boundary
    }

    pub fn action_table(&self) -> &[usize] {
        &self.action
    }

    /// Number of elements of `E` with trivial boundary.
    pub fn kernel_size(&self) -> usize {
        let id = self.base.identity();
        self.boundary.image.iter().filter(|&&g| g == id).count()
    }

    /// `∂⁻¹(t)` for every `t ∈ G`, tabulated once per crossed module.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.base.order()];
        for e in 0..self.principal.order() {
            fibers[self.boundary.image[e]].push(e);
        }
        fibers
    }

    /// Exhaustively checks all axioms, reporting every violation found.
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        let ng = self.base.order();
        let ne = self.principal.order();
        for g in 0..ng {
            let mut seen = vec![usize::MAX; ne];
            for e in 0..ne {
                let v = self.act(g, e);
                if seen[v] != usize::MAX {
                    out.push(CmViolation::ActionNotPermutation { g, e1: seen[v], e2: e });
                } else {
                    seen[v] = e;
                }
            }
            for e in 0..ne {
                for f in 0..ne {
                    if self.act(g, self.principal.mul(e, f)) != self.principal.mul(self.act(g, e), self.act(g, f)) {
                        out.push(CmViolation::ActionNotAutomorphism { g, e, f });
                    }
                }
            }
        }
        for e in 0..ne {
            if self.act(self.base.identity(), e) != e {
                out.push(CmViolation::ActionIdentity { e });
            }
        }
        for g in 0..ng {
            for h in 0..ng {
                let gh = self.base.mul(g, h);
                for e in 0..ne {
                    if self.act(gh, e) != self.act(g, self.act(h, e)) {
                        out.push(CmViolation::ActionNotCompatible { g, h, e });
                    }
                }
            }
        }
        for e in 0..ne {
            for f in 0..ne {
                if self.boundary(self.principal.mul(e, f)) != self.base.mul(self.boundary(e), self.boundary(f)) {
                    out.push(CmViolation::BoundaryNotHom { e, f });
                }
            }
        }
        for g in 0..ng {
            for e in 0..ne {
                let lhs = self.boundary(self.act(g, e));
                let rhs = self.base.mul(self.base.mul(g, self.boundary(e)), self.base.inv(g));
                if lhs != rhs {
                    out.push(CmViolation::Equivariance { g, e });
                }
            }
        }
        for e in 0..ne {
            let de = self.boundary(e);
            for f in 0..ne {
                let lhs = self.act(de, f);
                let rhs = self.principal.mul(self.principal.mul(e, f), self.principal.inv(e));
                if lhs != rhs {
                    out.push(CmViolation::Peiffer { e, f });
                }
            }
        }
        ValidationReport { violations: out }
    }
}

/// Exhaustively checks the crossed-module axioms of `cm`.
pub fn validate_crossed_module(cm: &FiniteCrossedModule) -> ValidationReport {
    cm.validate()
}
