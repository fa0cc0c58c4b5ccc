//! The twisted convolution algebra `A_R(G, σ)` and the equivariant model
//! `A_R(G; Σ)` of a discrete twist.
//!
//! Elements are sparse maps from arrows to coefficients. At finite scale every
//! function on `G` is locally constant with compact support, so as an
//! `R`-module the algebra is free on the point masses `δ_γ` and has rank `|G|`.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::cocycle::{Coboundary, Grading, TwoCocycle};
use crate::coefficients::{check_t_inverse_involution, Involution, Ring, RingElement, UnitSubgroup};
use crate::error::{Error, Result};
use crate::groupoid::{Bisection, FiniteGroupoid};
use crate::twist::{DiscreteTwist, GlobalSection};

/// A function `G → R` with finite support; absent arrows are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    coeffs: BTreeMap<usize, RingElement>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Drops zero coefficients.
    pub fn from_map(ring: &Ring, coeffs: impl IntoIterator<Item = (usize, RingElement)>) -> Self {
        Self {
            coeffs: coeffs.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect(),
        }
    }

    pub fn get(&self, a: usize) -> Option<&RingElement> {
        self.coeffs.get(&a)
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, RingElement> {
        &self.coeffs
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&a, _)| keep(a))
                .map(|(&a, v)| (a, v.clone()))
                .collect(),
        }
    }
}

/// `(G, R, T, σ)` with an optional `T`-inverse involution.
#[derive(Clone, Debug)]
pub struct AlgebraContext {
    groupoid: FiniteGroupoid,
    ring: Ring,
    t: UnitSubgroup,
    cocycle: TwoCocycle,
    involution: Option<Involution>,
}

impl AlgebraContext {
    pub fn new(
        groupoid: FiniteGroupoid,
        ring: Ring,
        t: UnitSubgroup,
        cocycle: TwoCocycle,
        involution: Option<Involution>,
    ) -> Result<Self> {
        groupoid.ensure_valid()?;
        cocycle.ensure_valid(&groupoid)?;
        if cocycle.order() != t.order() {
            return Err(Error::ContextMismatch(format!(
                "cocycle takes values in a group of order {}, T has order {}",
                cocycle.order(),
                t.order()
            )));
        }
        if let Some(inv) = involution {
            inv.ensure_defined_on(&ring)?;
            if !check_t_inverse_involution(&ring, inv, &t) {
                return Err(Error::NotTInverse(inv.name().into()));
            }
        }
        Ok(Self {
            groupoid,
            ring,
            t,
            cocycle,
            involution,
        })
    }

    /// Uses the standard unit subgroup of the cocycle's order.
    pub fn standard(
        groupoid: FiniteGroupoid,
        ring: Ring,
        cocycle: TwoCocycle,
        involution: Option<Involution>,
    ) -> Result<Self> {
        let t = UnitSubgroup::standard(&ring, cocycle.order())?;
        Self::new(groupoid, ring, t, cocycle, involution)
    }

    /// The untwisted Steinberg algebra.
    pub fn untwisted(groupoid: FiniteGroupoid, ring: Ring, involution: Option<Involution>) -> Result<Self> {
        let cocycle = TwoCocycle::trivial(&groupoid, 1);
        Self::standard(groupoid, ring, cocycle, involution)
    }

    /// Same `G`, `R`, `T` and involution with another cocycle.
    pub fn with_cocycle(&self, cocycle: TwoCocycle) -> Result<Self> {
        Self::new(
            self.groupoid.clone(),
            self.ring.clone(),
            self.t.clone(),
            cocycle,
            self.involution,
        )
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn unit_subgroup(&self) -> &UnitSubgroup {
        &self.t
    }

    pub fn cocycle(&self) -> &TwoCocycle {
        &self.cocycle
    }

    pub fn involution(&self) -> Option<Involution> {
        self.involution
    }

    /// Rank of the algebra as a free `R`-module.
    pub fn dimension(&self) -> usize {
        self.groupoid.len()
    }

    /// `σ(a, b)` as a ring element.
    pub fn sigma(&self, a: usize, b: usize) -> &RingElement {
        self.t.embed(self.cocycle.get(a, b) as i64)
    }

    pub fn coeff(&self, f: &AlgebraElement, a: usize) -> RingElement {
        f.get(a).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn delta(&self, a: usize) -> AlgebraElement {
        AlgebraElement::from_map(&self.ring, [(a, self.ring.one())])
    }

    pub fn char_fn(&self, b: &Bisection) -> AlgebraElement {
        AlgebraElement::from_map(&self.ring, b.arrows().iter().map(|&a| (a, self.ring.one())))
    }

    /// `1_B` for an arbitrary arrow set, rejecting non-bisections.
    pub fn char_fn_of(&self, arrows: impl IntoIterator<Item = usize>) -> Result<AlgebraElement> {
        Ok(self.char_fn(&Bisection::new(&self.groupoid, arrows)?))
    }

    /// `1_{G⁰}`, the identity.
    pub fn one(&self) -> AlgebraElement {
        self.char_fn(&Bisection::units(&self.groupoid))
    }

    pub fn add(&self, f: &AlgebraElement, g: &AlgebraElement) -> AlgebraElement {
        let mut out = f.coeffs.clone();
        for (&a, v) in &g.coeffs {
            let sum = match out.get(&a) {
                Some(u) => self.ring.add(u, v),
                None => v.clone(),
            };
            if self.ring.is_zero(&sum) {
                out.remove(&a);
            } else {
                out.insert(a, sum);
            }
        }
        AlgebraElement { coeffs: out }
    }

    pub fn neg(&self, f: &AlgebraElement) -> AlgebraElement {
        self.scale(&self.ring.from_i64(-1), f)
    }

    pub fn sub(&self, f: &AlgebraElement, g: &AlgebraElement) -> AlgebraElement {
        self.add(f, &self.neg(g))
    }

    pub fn scale(&self, c: &RingElement, f: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::from_map(&self.ring, f.coeffs.iter().map(|(&a, v)| (a, self.ring.mul(c, v))))
    }

    /// `(f * g)(γ) = Σ_{αβ = γ} σ(α,β) f(α) g(β)`.
    pub fn convolve(&self, f: &AlgebraElement, g: &AlgebraElement) -> AlgebraElement {
        let r = &self.ring;
        let mut acc: BTreeMap<usize, RingElement> = BTreeMap::new();
        for (&a, fa) in &f.coeffs {
            for (&b, gb) in &g.coeffs {
                let Some(c) = self.groupoid.compose(a, b) else { continue };
                let mut term = r.mul(fa, gb);
                if self.cocycle.get(a, b) != 0 {
                    term = r.mul(self.sigma(a, b), &term);
                }
                match acc.get_mut(&c) {
                    Some(v) => *v = r.add(v, &term),
                    None => {
                        acc.insert(c, term);
                    }
                }
            }
        }
        AlgebraElement::from_map(r, acc)
    }

    /// `f*(γ) = σ(γ,γ⁻¹)⁻¹ conj(f(γ⁻¹))`.
    pub fn involute(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        let conj = self
            .involution
            .ok_or_else(|| Error::Precondition("the context carries no involution".into()))?;
        let g = &self.groupoid;
        Ok(AlgebraElement::from_map(
            &self.ring,
            f.coeffs.iter().map(|(&a, v)| {
                let target = g.inv(a);
                let s = self.t.embed(-(self.cocycle.get(target, a) as i64));
                (target, self.ring.mul(s, &conj.apply(&self.ring, v)))
            }),
        ))
    }

    /// `1_E` for `E = r(supp) ∪ s(supp)` over the family.
    pub fn local_unit(&self, fs: &[AlgebraElement]) -> AlgebraElement {
        let g = &self.groupoid;
        let units: BTreeSet<usize> = fs
            .iter()
            .flat_map(|f| f.coeffs.keys().flat_map(|&a| [g.rng(a), g.src(a)]))
            .collect();
        AlgebraElement::from_map(&self.ring, units.into_iter().map(|u| (u, self.ring.one())))
    }

    /// Dense coordinates in the `δ` basis.
    pub fn coordinates(&self, f: &AlgebraElement) -> Vec<RingElement> {
        self.groupoid.arrows().map(|a| self.coeff(f, a)).collect()
    }

    pub fn from_coordinates(&self, v: &[RingElement]) -> AlgebraElement {
        AlgebraElement::from_map(&self.ring, v.iter().cloned().enumerate())
    }

    /// A random element whose support has each arrow with probability 1/2.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement {
        AlgebraElement::from_map(
            &self.ring,
            self.groupoid.arrows().map(|a| (a, self.ring.random_sparse(rng))),
        )
    }

    /// Canonical decomposition `f = Σ λᵢ 1_{Bᵢ}` into disjoint bisections.
    /// Arrows are grouped by coefficient (groups ordered by their least
    /// arrow) and each group is split greedily in ascending arrow order.
    pub fn disjoint_decomposition(&self, f: &AlgebraElement) -> Result<Vec<(RingElement, Bisection)>> {
        if f.is_zero() {
            return Err(Error::Precondition("cannot decompose the zero element".into()));
        }
        let g = &self.groupoid;
        let mut groups: Vec<(RingElement, Vec<usize>)> = Vec::new();
        for (&a, v) in &f.coeffs {
            match groups.iter_mut().find(|(w, _)| w == v) {
                Some((_, arrows)) => arrows.push(a),
                None => groups.push((v.clone(), vec![a])),
            }
        }
        let mut out = Vec::new();
        for (value, arrows) in groups {
            let mut parts: Vec<(BTreeSet<usize>, BTreeSet<usize>, Vec<usize>)> = Vec::new();
            for a in arrows {
                let (r, s) = (g.rng(a), g.src(a));
                match parts.iter_mut().find(|(rs, ss, _)| !rs.contains(&r) && !ss.contains(&s)) {
                    Some((rs, ss, members)) => {
                        rs.insert(r);
                        ss.insert(s);
                        members.push(a);
                    }
                    None => parts.push(([r].into(), [s].into(), vec![a])),
                }
            }
            for (_, _, members) in parts {
                out.push((value.clone(), Bisection::new(g, members)?));
            }
        }
        Ok(out)
    }

    pub fn recompose(&self, terms: &[(RingElement, Bisection)]) -> AlgebraElement {
        terms.iter().fold(AlgebraElement::zero(), |acc, (c, b)| {
            self.add(&acc, &self.scale(c, &self.char_fn(b)))
        })
    }

    fn ensure_grading(&self, c: &Grading) -> Result<()> {
        let v = c.validate(&self.groupoid);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::invalid("grading", v))
        }
    }

    /// `f` restricted to `c⁻¹(degree)`.
    pub fn graded_component(&self, f: &AlgebraElement, c: &Grading, degree: i64) -> Result<AlgebraElement> {
        self.ensure_grading(c)?;
        Ok(f.restrict(|a| c.degree(a) == degree))
    }

    /// Nonzero homogeneous components by degree.
    pub fn graded_components(&self, f: &AlgebraElement, c: &Grading) -> Result<BTreeMap<i64, AlgebraElement>> {
        self.ensure_grading(c)?;
        let mut out: BTreeMap<i64, AlgebraElement> = BTreeMap::new();
        for (&a, v) in &f.coeffs {
            out.entry(c.degree(a)).or_default().coeffs.insert(a, v.clone());
        }
        Ok(out)
    }

    fn same_base(&self, other: &Self) -> Result<()> {
        if self.groupoid != other.groupoid || self.ring != other.ring || self.t != other.t {
            return Err(Error::ContextMismatch("algebras over different (G, R, T)".into()));
        }
        Ok(())
    }
}

/// `θ(f) = b f`, an isomorphism `A(G, σ) → A(G, τ)` when `σ = τ · ∂b`.
pub fn coboundary_iso(
    from: &AlgebraContext,
    to: &AlgebraContext,
    b: &Coboundary,
    f: &AlgebraElement,
) -> Result<AlgebraElement> {
    from.same_base(to)?;
    if to.cocycle.apply_coboundary(&to.groupoid, b)? != from.cocycle {
        return Err(Error::Precondition("σ ≠ τ · ∂b for the given coboundary".into()));
    }
    let r = &from.ring;
    Ok(AlgebraElement::from_map(
        r,
        f.coeffs
            .iter()
            .map(|(&a, v)| (a, r.mul(from.t.embed(b.get(a) as i64), v))),
    ))
}

/// `f: Σ → R` with `f(z · ε) = z f(ε)`, stored as `h = f ∘ P` for the
/// section of its model.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquivariantElement {
    h: AlgebraElement,
}

impl EquivariantElement {
    pub fn encoding(&self) -> &AlgebraElement {
        &self.h
    }
}

/// `A_R(G; Σ)` for a twist with a chosen global section.
#[derive(Clone, Debug)]
pub struct EquivariantModel {
    twist: DiscreteTwist,
    section: GlobalSection,
    cocycle: TwoCocycle,
    ring: Ring,
    t: UnitSubgroup,
    involution: Option<Involution>,
}

impl EquivariantModel {
    pub fn new(
        twist: DiscreteTwist,
        section: GlobalSection,
        ring: Ring,
        involution: Option<Involution>,
    ) -> Result<Self> {
        twist.ensure_valid()?;
        let cocycle = twist.induced_cocycle(&section)?;
        let t = UnitSubgroup::standard(&ring, twist.order())?;
        if let Some(inv) = involution {
            inv.ensure_defined_on(&ring)?;
            if !check_t_inverse_involution(&ring, inv, &t) {
                return Err(Error::NotTInverse(inv.name().into()));
            }
        }
        Ok(Self {
            twist,
            section,
            cocycle,
            ring,
            t,
            involution,
        })
    }

    pub fn with_section(&self, section: GlobalSection) -> Result<Self> {
        Self::new(self.twist.clone(), section, self.ring.clone(), self.involution)
    }

    pub fn twist(&self) -> &DiscreteTwist {
        &self.twist
    }

    pub fn section(&self) -> &GlobalSection {
        &self.section
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The cocycle `σ` induced by the section.
    pub fn cocycle(&self) -> &TwoCocycle {
        &self.cocycle
    }

    /// `A_R(G, σ⁻¹)`, the codomain of [`psi`](Self::psi).
    pub fn target_context(&self) -> Result<AlgebraContext> {
        AlgebraContext::new(
            self.twist.base().clone(),
            self.ring.clone(),
            self.t.clone(),
            self.cocycle.invert(),
            self.involution,
        )
    }

    /// `f(ε) = z h(α)` where `ε = z · P(α)`.
    pub fn evaluate(&self, f: &EquivariantElement, eps: usize) -> RingElement {
        let a = self.twist.project(eps);
        let k = self
            .twist
            .unique_scalar(self.section.at(a), eps)
            .expect("ε and P(q(ε)) share a fibre");
        match f.h.get(a) {
            Some(v) => self.ring.mul(self.t.embed(k as i64), v),
            None => self.ring.zero(),
        }
    }

    /// Values on every arrow of `Σ`.
    pub fn to_function(&self, f: &EquivariantElement) -> Vec<RingElement> {
        self.twist.total().arrows().map(|e| self.evaluate(f, e)).collect()
    }

    /// Rejects functions that are not `T`-equivariant.
    pub fn from_function(&self, values: &[RingElement]) -> Result<EquivariantElement> {
        let s = self.twist.total();
        if values.len() != s.len() {
            return Err(Error::ContextMismatch(format!(
                "{} values for {} arrows of Σ",
                values.len(),
                s.len()
            )));
        }
        for e in s.arrows() {
            for k in 0..self.twist.order() {
                let moved = self.twist.act(k, e);
                let expected = self.ring.mul(self.t.embed(k as i64), &values[e]);
                if values[moved] != expected {
                    return Err(Error::Precondition(format!(
                        "not T-equivariant at {}",
                        s.label(e)
                    )));
                }
            }
        }
        Ok(EquivariantElement {
            h: AlgebraElement::from_map(
                &self.ring,
                self.twist
                    .base()
                    .arrows()
                    .map(|a| (a, values[self.section.at(a)].clone())),
            ),
        })
    }

    /// `(f *_Σ g)(ε) = Σ_{γ ∈ G^{s(q(ε))}} f(ε S(γ)) g(S(γ)⁻¹)` for any
    /// section `S`.
    pub fn convolve_at(
        &self,
        f: &EquivariantElement,
        g: &EquivariantElement,
        eps: usize,
        section: &GlobalSection,
    ) -> RingElement {
        let s = self.twist.total();
        let base = self.twist.base();
        let x = base.src(self.twist.project(eps));
        let mut acc = self.ring.zero();
        for c in base.range_fiber(x) {
            let pc = section.at(c);
            let left = s.compose(eps, pc).expect("composable by choice of γ");
            let term = self.ring.mul(&self.evaluate(f, left), &self.evaluate(g, s.inv(pc)));
            acc = self.ring.add(&acc, &term);
        }
        acc
    }

    pub fn convolve(&self, f: &EquivariantElement, g: &EquivariantElement) -> EquivariantElement {
        EquivariantElement {
            h: AlgebraElement::from_map(
                &self.ring,
                self.twist
                    .base()
                    .arrows()
                    .map(|a| (a, self.convolve_at(f, g, self.section.at(a), &self.section))),
            ),
        }
    }

    /// `f*(ε) = conj(f(ε⁻¹))`.
    pub fn involute(&self, f: &EquivariantElement) -> Result<EquivariantElement> {
        let conj = self
            .involution
            .ok_or_else(|| Error::Precondition("the model carries no involution".into()))?;
        let s = self.twist.total();
        Ok(EquivariantElement {
            h: AlgebraElement::from_map(
                &self.ring,
                self.twist.base().arrows().map(|a| {
                    let v = self.evaluate(f, s.inv(self.section.at(a)));
                    (a, conj.apply(&self.ring, &v))
                }),
            ),
        })
    }

    pub fn add(&self, f: &EquivariantElement, g: &EquivariantElement) -> EquivariantElement {
        let mut coeffs = f.h.coeffs.clone();
        for (&a, v) in &g.h.coeffs {
            let sum = match coeffs.get(&a) {
                Some(u) => self.ring.add(u, v),
                None => v.clone(),
            };
            coeffs.insert(a, sum);
        }
        EquivariantElement {
            h: AlgebraElement::from_map(&self.ring, coeffs),
        }
    }

    /// The same function on `Σ`, encoded against `other`'s section.
    pub fn transfer(&self, f: &EquivariantElement, other: &Self) -> Result<EquivariantElement> {
        if self.twist != other.twist || self.ring != other.ring {
            return Err(Error::ContextMismatch("models over different twists".into()));
        }
        other.from_function(&self.to_function(f))
    }

    /// `Ψ(f) = f ∘ P` in `A_R(G, σ⁻¹)`.
    pub fn psi(&self, f: &EquivariantElement) -> AlgebraElement {
        f.h.clone()
    }

    /// `f(z · P(α)) = z h(α)`.
    pub fn psi_inverse(&self, h: &AlgebraElement) -> Result<EquivariantElement> {
        if h.coeffs.keys().any(|&a| a >= self.twist.base().len()) {
            return Err(Error::ContextMismatch("element names an arrow outside G".into()));
        }
        Ok(EquivariantElement { h: h.clone() })
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> EquivariantElement {
        EquivariantElement {
            h: AlgebraElement::from_map(
                &self.ring,
                self.twist.base().arrows().map(|a| (a, self.ring.random_sparse(rng))),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::cocycle::GradingGroup;
    use crate::group::FiniteGroup;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn ctx(gname: &str, ring: &str, cocycle: Option<&str>, inv: Option<Involution>) -> AlgebraContext {
        let g = catalog::entry(gname).unwrap().groupoid;
        let sigma = match cocycle {
            Some(c) => catalog::named_cocycle(c).unwrap().1,
            None => TwoCocycle::trivial(&g, 2),
        };
        AlgebraContext::standard(g, Ring::parse(ring).unwrap(), sigma, inv).unwrap()
    }

    fn idx(c: &AlgebraContext, l: &str) -> usize {
        c.groupoid().index_of(l).unwrap()
    }

    #[test]
    fn characteristic_functions() {
        let c = ctx("R2", "Q", None, None);
        assert_eq!(c.char_fn(&Bisection::units(c.groupoid())), c.one());
        assert!(c.char_fn_of([]).unwrap().is_zero());
        let a = idx(&c, "(1,2)");
        assert_eq!(c.char_fn_of([a]).unwrap(), c.delta(a));
        assert!(c.char_fn_of([a, idx(&c, "(1,1)")]).is_err());
    }

    #[test]
    fn convolution_examples() {
        let c = ctx("Z2", "GF(3)", Some("z2_neg"), None);
        let g = c.groupoid().index_of("g").unwrap();
        let e = c.groupoid().index_of("e").unwrap();
        let two_e = c.scale(&c.ring().from_i64(2), &c.delta(e));
        assert_eq!(c.convolve(&c.delta(g), &c.delta(g)), two_e);

        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..20 {
            let f = c.random_element(&mut rng);
            assert_eq!(c.convolve(&c.one(), &f), f);
            assert_eq!(c.convolve(&f, &c.one()), f);
        }
    }

    #[test]
    fn support_of_products() {
        let c = ctx("R3", "Q", Some("r3_cob"), None);
        let g = c.groupoid();
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..50 {
            let f = c.random_element(&mut rng);
            let h = c.random_element(&mut rng);
            let mut prod = BTreeSet::new();
            for &a in &f.support() {
                for &b in &h.support() {
                    if let Some(x) = g.compose(a, b) {
                        prod.insert(x);
                    }
                }
            }
            assert!(c.convolve(&f, &h).support().is_subset(&prod));
        }
    }

    #[test]
    fn involution_examples() {
        let c = ctx("R2", "Q", None, Some(Involution::Identity));
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let f = c.random_element(&mut rng);
            let star = c.involute(&f).unwrap();
            for a in c.groupoid().arrows() {
                assert_eq!(c.coeff(&star, a), c.coeff(&f, c.groupoid().inv(a)));
            }
        }
        let c = ctx("Z4", "Q(zeta_4)", Some("z4_carry"), Some(Involution::Conjugation));
        for _ in 0..20 {
            let f = c.random_element(&mut rng);
            assert_eq!(c.involute(&c.involute(&f).unwrap()).unwrap(), f);
        }
        assert!(ctx("R2", "Q", None, None).involute(&AlgebraElement::zero()).is_err());
    }

    #[test]
    fn context_rejects_bad_involutions() {
        let g = catalog::entry("Z4").unwrap().groupoid;
        let sigma = catalog::named_cocycle("z4_carry").unwrap().1;
        let ring = Ring::cyclotomic(4).unwrap();
        assert!(matches!(
            AlgebraContext::standard(g.clone(), ring.clone(), sigma.clone(), Some(Involution::Identity)),
            Err(Error::NotTInverse(_))
        ));
        assert!(matches!(
            AlgebraContext::standard(g, ring, sigma, Some(Involution::Frobenius)),
            Err(Error::IncompatibleInvolution { .. })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let c = ctx("R2", "Q", None, None);
        let a = idx(&c, "(1,2)");
        let b = idx(&c, "(2,1)");
        let three = c.ring().from_i64(3);
        let bis = Bisection::new(c.groupoid(), [a, b]).unwrap();
        let f = c.scale(&three, &c.char_fn(&bis));
        assert_eq!(c.disjoint_decomposition(&f).unwrap(), vec![(three, bis.clone())]);

        let f = c.add(&c.delta(a), &c.delta(b));
        let d = c.disjoint_decomposition(&f).unwrap();
        assert_eq!(d, vec![(c.ring().one(), bis)]);
        assert_eq!(c.recompose(&d), f);

        // (1,2) and (2,2) share the source 2.
        let f = c.add(&c.delta(a), &c.delta(idx(&c, "(2,2)")));
        let d = c.disjoint_decomposition(&f).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(c.recompose(&d), f);
        assert!(c.disjoint_decomposition(&AlgebraElement::zero()).is_err());
    }

    #[test]
    fn decomposition_recomposes_randomly() {
        let mut rng = StdRng::seed_from_u64(4);
        for name in ["R3", "Z2fix3", "R2+Z2", "S3"] {
            let g = catalog::entry(name).unwrap().groupoid;
            let c = AlgebraContext::untwisted(g, Ring::prime_field(3).unwrap(), None).unwrap();
            for _ in 0..30 {
                let f = c.random_element(&mut rng);
                if f.is_zero() {
                    continue;
                }
                let d = c.disjoint_decomposition(&f).unwrap();
                let mut seen = BTreeSet::new();
                for (lambda, b) in &d {
                    assert!(!c.ring().is_zero(lambda));
                    for &a in b.arrows() {
                        assert!(seen.insert(a));
                    }
                }
                assert_eq!(c.recompose(&d), f);
            }
        }
    }

    #[test]
    fn local_unit_examples() {
        let c = ctx("R3", "Q", None, None);
        assert_eq!(c.local_unit(&[c.one()]), c.one());
        let a = idx(&c, "(1,2)");
        let e = c.local_unit(&[c.delta(a)]);
        assert_eq!(e, c.char_fn_of([idx(&c, "(1,1)"), idx(&c, "(2,2)")]).unwrap());
        assert!(c.local_unit(&[]).is_zero());
    }

    #[test]
    fn coboundary_iso_examples() {
        let g = catalog::entry("Z4").unwrap().groupoid;
        let ring = Ring::cyclotomic(4).unwrap();
        let tau = catalog::named_cocycle("z4_carry").unwrap().1;
        let b = Coboundary::new(&g, 4, vec![0, 1, 3, 2]).unwrap();
        let sigma = tau.apply_coboundary(&g, &b).unwrap();
        let inv = Some(Involution::Conjugation);
        let cs = AlgebraContext::standard(g.clone(), ring.clone(), sigma, inv).unwrap();
        let ct = AlgebraContext::standard(g.clone(), ring, tau, inv).unwrap();
        let theta = |f: &AlgebraElement| coboundary_iso(&cs, &ct, &b, f).unwrap();

        let zero = Coboundary::zero(&g, 4);
        let f = cs.delta(1);
        assert_eq!(coboundary_iso(&ct, &ct, &zero, &f).unwrap(), f);
        assert!(coboundary_iso(&ct, &cs, &b, &f).is_err());

        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let f = cs.random_element(&mut rng);
            let h = cs.random_element(&mut rng);
            assert_eq!(theta(&cs.convolve(&f, &h)), ct.convolve(&theta(&f), &theta(&h)));
            assert_eq!(theta(&cs.involute(&f).unwrap()), ct.involute(&theta(&f)).unwrap());
        }
    }

    #[test]
    fn grading_examples() {
        let c = ctx("Z4", "Q", None, None);
        let g = c.groupoid();
        let id = Grading::new(g, GradingGroup::Finite(FiniteGroup::cyclic(4)), vec![0, 1, 2, 3]).unwrap();
        let sq = c.delta(g.index_of("g^2").unwrap());
        let comps = c.graded_components(&sq, &id).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[&2], sq);

        let triv = Grading::trivial(g);
        let mut rng = StdRng::seed_from_u64(6);
        let f = c.random_element(&mut rng);
        assert_eq!(c.graded_component(&f, &triv, 0).unwrap(), f);
    }

    #[test]
    fn trivial_cocycle_gives_untwisted_operations() {
        let g = catalog::entry("S3").unwrap().groupoid;
        let c = AlgebraContext::untwisted(g.clone(), Ring::rationals(), Some(Involution::Identity)).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let f = c.random_element(&mut rng);
            let h = c.random_element(&mut rng);
            let prod = c.convolve(&f, &h);
            for x in g.arrows() {
                let mut acc = c.ring().zero();
                for (a, b, ab) in g.composable_pairs() {
                    if ab == x {
                        acc = c.ring().add(&acc, &c.ring().mul(&c.coeff(&f, a), &c.coeff(&h, b)));
                    }
                }
                assert_eq!(c.coeff(&prod, x), acc);
            }
        }
    }

    fn z2_model() -> EquivariantModel {
        let g = catalog::entry("Z2").unwrap().groupoid;
        let t = DiscreteTwist::build(&g, &catalog::named_cocycle("z2_neg").unwrap().1).unwrap();
        let p = t.find_section();
        EquivariantModel::new(t, p, Ring::rationals(), Some(Involution::Identity)).unwrap()
    }

    #[test]
    fn equivariant_identity() {
        let m = z2_model();
        let target = m.target_context().unwrap();
        let one = m.psi_inverse(&target.one()).unwrap();
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..20 {
            let f = m.random_element(&mut rng);
            assert_eq!(m.convolve(&one, &f), f);
            assert_eq!(m.convolve(&f, &one), f);
        }
    }

    #[test]
    fn psi_examples() {
        let m = z2_model();
        let target = m.target_context().unwrap();
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..50 {
            let f = m.random_element(&mut rng);
            let h = m.random_element(&mut rng);
            assert_eq!(
                m.psi(&m.convolve(&f, &h)),
                target.convolve(&m.psi(&f), &m.psi(&h))
            );
            assert_eq!(m.psi(&m.involute(&f).unwrap()), target.involute(&m.psi(&f)).unwrap());
            let back = m.from_function(&m.to_function(&f)).unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn non_equivariant_functions_are_rejected() {
        let m = z2_model();
        let mut values = vec![Ring::rationals().zero(); 4];
        values[0] = Ring::rationals().one();
        assert!(m.from_function(&values).is_err());
    }
}
