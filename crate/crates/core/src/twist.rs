//! Discrete twists `G⁰ × T ↪ Σ ↠ G` over finite groupoids.
//!
//! At finite scale local triviality reduces to two facts: every fibre of `q`
//! has exactly `n = |T|` arrows, and a global section exists. Both are
//! checked or constructed here.

use std::collections::{BTreeMap, BTreeSet};

use crate::cocycle::{Coboundary, TwoCocycle};
use crate::error::{Error, Result, Violation};
use crate::groupoid::FiniteGroupoid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteTwist {
    base: FiniteGroupoid,
    total: FiniteGroupoid,
    order: u32,
    /// `i(x, k)` for units `x` of the base.
    incl: BTreeMap<(usize, u32), usize>,
    /// `q`, indexed by arrows of `Σ`.
    proj: Vec<usize>,
}

/// `P: G → Σ`, indexed by arrows of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSection(pub Vec<usize>);

impl GlobalSection {
    pub fn at(&self, a: usize) -> usize {
        self.0[a]
    }
}

/// A map of carriers `Σ₁ → Σ₂`, indexed by arrows of `Σ₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistMorphism(pub Vec<usize>);

impl TwistMorphism {
    pub fn at(&self, e: usize) -> usize {
        self.0[e]
    }
}

impl DiscreteTwist {
    /// Assembles a twist without checking the axioms.
    pub fn from_parts(
        base: FiniteGroupoid,
        total: FiniteGroupoid,
        order: u32,
        incl: BTreeMap<(usize, u32), usize>,
        proj: Vec<usize>,
    ) -> Self {
        Self {
            base,
            total,
            order,
            incl,
            proj,
        }
    }

    /// `G ×_σ T`: arrow `(α, k)` has index `α n + k` and label `(α,k)`.
    /// Multiplication is `(α,z)(β,w) = (αβ, σ(α,β) z w)` and inversion is
    /// `(α,z)⁻¹ = (α⁻¹, σ(α,α⁻¹)⁻¹ z⁻¹)`.
    pub fn build(g: &FiniteGroupoid, sigma: &TwoCocycle) -> Result<Self> {
        sigma.ensure_valid(g)?;
        let n = sigma.order() as usize;
        let at = |a: usize, k: usize| a * n + k % n;
        let mut labels = Vec::with_capacity(g.len() * n);
        let (mut src, mut rng, mut inv) = (Vec::new(), Vec::new(), Vec::new());
        let mut units = Vec::new();
        for a in g.arrows() {
            for k in 0..n {
                labels.push(format!("({},{k})", g.label(a)));
                src.push(at(g.src(a), 0));
                rng.push(at(g.rng(a), 0));
                let s = sigma.get(a, g.inv(a)) as usize;
                inv.push(at(g.inv(a), 2 * n - s - k));
                if g.is_unit(a) && k == 0 {
                    units.push(at(a, 0));
                }
            }
        }
        let mut comps = Vec::new();
        for (a, b, ab) in g.composable_pairs() {
            let s = sigma.get(a, b) as usize;
            for z in 0..n {
                for w in 0..n {
                    comps.push((at(a, z), at(b, w), at(ab, s + z + w)));
                }
            }
        }
        let total = FiniteGroupoid::from_parts(labels, &units, src, rng, inv, &comps)?;
        let incl = g
            .units()
            .into_iter()
            .flat_map(|x| (0..n as u32).map(move |k| ((x, k), at(x, k as usize))))
            .collect();
        let proj = total.arrows().map(|e| e / n).collect();
        Ok(Self {
            base: g.clone(),
            total,
            order: sigma.order(),
            incl,
            proj,
        })
    }

    pub fn base(&self) -> &FiniteGroupoid {
        &self.base
    }

    pub fn total(&self) -> &FiniteGroupoid {
        &self.total
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn inclusion(&self) -> &BTreeMap<(usize, u32), usize> {
        &self.incl
    }

    pub fn projection(&self) -> &[usize] {
        &self.proj
    }

    pub fn include(&self, x: usize, k: u32) -> usize {
        self.incl[&(x, k % self.order)]
    }

    pub fn project(&self, e: usize) -> usize {
        self.proj[e]
    }

    /// `q⁻¹(α)` in index order.
    pub fn fiber(&self, a: usize) -> Vec<usize> {
        self.total.arrows().filter(|&e| self.proj[e] == a).collect()
    }

    /// `z · ε = i(r(ε), z) ε`, translated to a unit of the base through `q`.
    pub fn act(&self, k: u32, e: usize) -> usize {
        let x = self.proj[self.total.rng(e)];
        self.total
            .compose(self.include(x, k), e)
            .expect("valid twist: central elements compose")
    }

    /// Mutable access for building malformed fixtures.
    pub fn inclusion_mut(&mut self) -> &mut BTreeMap<(usize, u32), usize> {
        &mut self.incl
    }

    /// Removes an arrow of `Σ` and repairs indices, leaving the twist broken.
    pub fn remove_total_arrow(&mut self, e: usize) {
        let map = self.total.remove_arrow(e);
        self.proj = self
            .proj
            .iter()
            .enumerate()
            .filter(|&(x, _)| x != e)
            .map(|(_, &a)| a)
            .collect();
        self.incl = self
            .incl
            .iter()
            .filter_map(|(&key, &v)| map[v].map(|v| (key, v)))
            .collect();
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::invalid("twist", v))
        }
    }

    /// Every failed twist axiom.
    pub fn validate(&self) -> Vec<Violation> {
        let g = &self.base;
        let s = &self.total;
        let n = self.order;
        let mut out: Vec<Violation> = g
            .validate()
            .into_iter()
            .map(|v| Violation::new("base", v.to_string()))
            .collect();
        out.extend(s.validate().into_iter().map(|v| Violation::new("carrier", v.to_string())));
        if self.proj.len() != s.len() || self.proj.iter().any(|&a| a >= g.len()) {
            out.push(Violation::new("projection", "q must send every arrow of Σ into G"));
            return out;
        }
        if self.incl.values().any(|&e| e >= s.len())
            || self.incl.keys().any(|&(x, k)| x >= g.len() || !g.is_unit(x) || k >= n)
        {
            out.push(Violation::new("inclusion", "i must be defined on G⁰ × T with values in Σ"));
            return out;
        }
        let (ls, lg) = (|e: usize| s.label(e), |a: usize| g.label(a));

        let images: BTreeSet<usize> = self.incl.values().copied().collect();
        if images.len() != self.incl.len() {
            out.push(Violation::new("inclusion", "i is not injective"));
        }
        for x in g.units() {
            for a in 0..n {
                let (Some(&ea), Some(&e0)) = (self.incl.get(&(x, a)), self.incl.get(&(x, 0))) else {
                    continue;
                };
                if a == 0 && !s.is_unit(e0) {
                    out.push(Violation::new("inclusion", format!("i({}, 1) is not a unit", lg(x))));
                }
                for b in 0..n {
                    let Some(&eb) = self.incl.get(&(x, b)) else { continue };
                    let Some(&eab) = self.incl.get(&(x, (a + b) % n)) else { continue };
                    if s.compose(ea, eb) != Some(eab) {
                        out.push(Violation::new(
                            "inclusion",
                            format!("i is not a homomorphism at ({}, {a}) ({}, {b})", lg(x), lg(x)),
                        ));
                    }
                }
            }
        }

        for (e, f, ef) in s.composable_pairs() {
            if g.compose(self.proj[e], self.proj[f]) != Some(self.proj[ef]) {
                out.push(Violation::new(
                    "projection",
                    format!("q is not a homomorphism at ({}, {})", ls(e), ls(f)),
                ));
            }
        }
        let unit_images: BTreeSet<usize> = s.units().into_iter().map(|e| self.proj[e]).collect();
        if s.units().len() != g.units().len() || unit_images != g.units().into_iter().collect() {
            out.push(Violation::new("projection", "q does not restrict to a bijection of unit spaces"));
        }
        for a in g.arrows() {
            let size = self.fiber(a).len();
            if size != n as usize {
                out.push(Violation::new(
                    "fibre",
                    format!("q⁻¹({}) has {size} arrows, expected {n}", lg(a)),
                ));
            }
        }
        if s.len() != g.len() * n as usize {
            out.push(Violation::new(
                "fibre",
                format!("|Σ| = {} but |G| |T| = {}", s.len(), g.len() * n as usize),
            ));
        }

        for x in g.units() {
            let kernel: BTreeSet<usize> = self.fiber(x).into_iter().collect();
            let image: BTreeSet<usize> = (0..n).filter_map(|k| self.incl.get(&(x, k)).copied()).collect();
            if image != kernel || image.len() != n as usize {
                out.push(Violation::new(
                    "exactness",
                    format!("i({{{}}} × T) ≠ q⁻¹({})", lg(x), lg(x)),
                ));
            }
        }

        for e in s.arrows() {
            let (rx, sx) = (self.proj[s.rng(e)], self.proj[s.src(e)]);
            for k in 1..n {
                let (Some(&zl), Some(&zr)) = (self.incl.get(&(rx, k)), self.incl.get(&(sx, k))) else {
                    continue;
                };
                let left = s.compose(zl, e);
                let right = s.compose(e, zr);
                if left.is_none() || left != right {
                    out.push(Violation::new(
                        "centrality",
                        format!("i(r(ε), z) ε ≠ ε i(s(ε), z) at ε = {}, z = g^{k}", ls(e)),
                    ));
                }
            }
        }
        out
    }

    /// The unique `k` with `ε = g^k · δ`.
    pub fn unique_scalar(&self, delta: usize, eps: usize) -> Result<u32> {
        if self.proj[delta] != self.proj[eps] {
            return Err(Error::Precondition(format!(
                "q({}) ≠ q({})",
                self.total.label(delta),
                self.total.label(eps)
            )));
        }
        let s = &self.total;
        let z = s
            .compose(eps, s.inv(delta))
            .ok_or_else(|| Error::Precondition("fibre elements do not share a source".into()))?;
        let x = self.proj[s.rng(eps)];
        (0..self.order)
            .find(|&k| self.incl.get(&(x, k)) == Some(&z))
            .ok_or_else(|| Error::Precondition("εδ⁻¹ is not in the image of i".into()))
    }

    /// Least-index fibre element for each arrow; units go to the unique unit
    /// of their fibre.
    pub fn find_section(&self) -> GlobalSection {
        GlobalSection(
            self.base
                .arrows()
                .map(|a| {
                    let fiber = self.fiber(a);
                    if self.base.is_unit(a) {
                        *fiber
                            .iter()
                            .find(|&&e| self.total.is_unit(e))
                            .expect("valid twist: unit fibres contain a unit")
                    } else {
                        fiber[0]
                    }
                })
                .collect(),
        )
    }

    pub fn check_section(&self, p: &GlobalSection) -> Vec<Violation> {
        let mut out = Vec::new();
        if p.0.len() != self.base.len() || p.0.iter().any(|&e| e >= self.total.len()) {
            out.push(Violation::new("section", "P must send every arrow of G into Σ"));
            return out;
        }
        for a in self.base.arrows() {
            if self.proj[p.at(a)] != a {
                out.push(Violation::new("section", format!("q(P({})) ≠ {}", self.base.label(a), self.base.label(a))));
            }
            if self.base.is_unit(a) && !self.total.is_unit(p.at(a)) {
                out.push(Violation::new("section", format!("P({}) is not a unit", self.base.label(a))));
            }
        }
        out
    }

    fn ensure_section(&self, p: &GlobalSection) -> Result<()> {
        let v = self.check_section(p);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::invalid("section", v))
        }
    }

    /// `P(α) P(β) = σ(α,β) · P(αβ)`.
    pub fn induced_cocycle(&self, p: &GlobalSection) -> Result<TwoCocycle> {
        self.ensure_section(p)?;
        let g = &self.base;
        let mut entries = Vec::new();
        for (a, b, ab) in g.composable_pairs() {
            let prod = self
                .total
                .compose(p.at(a), p.at(b))
                .ok_or_else(|| Error::Precondition("section values do not compose".into()))?;
            let k = self.unique_scalar(p.at(ab), prod)?;
            if k != 0 {
                entries.push((a, b, k));
            }
        }
        TwoCocycle::new(g, self.order, entries)
    }

    /// `φ_P(α, z) = z · P(α)` from `G ×_σ T` onto `self`, where `σ` is the
    /// cocycle induced by `P`.
    pub fn section_iso(&self, p: &GlobalSection) -> Result<(DiscreteTwist, TwistMorphism)> {
        let sigma = self.induced_cocycle(p)?;
        let model = DiscreteTwist::build(&self.base, &sigma)?;
        let n = self.order as usize;
        let map = model
            .total
            .arrows()
            .map(|e| self.act((e % n) as u32, p.at(e / n)))
            .collect();
        let phi = TwistMorphism(map);
        let v = check_twist_morphism(&model, self, &phi);
        if !v.is_empty() {
            return Err(Error::invalid("section isomorphism", v));
        }
        Ok((model, phi))
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.base != other.base || self.order != other.order {
            return Err(Error::ContextMismatch("twists over different (G, T)".into()));
        }
        Ok(())
    }
}

/// Violations of: bijection, homomorphism, `ψ ∘ i₁ = i₂`, `q₂ ∘ ψ = q₁`,
/// and `ψ(z·ε) = z·ψ(ε)`.
pub fn check_twist_morphism(from: &DiscreteTwist, to: &DiscreteTwist, psi: &TwistMorphism) -> Vec<Violation> {
    let mut out = Vec::new();
    let (s1, s2) = (&from.total, &to.total);
    if psi.0.len() != s1.len() || psi.0.iter().any(|&e| e >= s2.len()) {
        out.push(Violation::new("map", "ψ must send every arrow of Σ₁ into Σ₂"));
        return out;
    }
    let image: BTreeSet<usize> = psi.0.iter().copied().collect();
    if image.len() != s1.len() || s1.len() != s2.len() {
        out.push(Violation::new("bijection", "ψ is not a bijection"));
    }
    for (e, f, ef) in s1.composable_pairs() {
        if s2.compose(psi.at(e), psi.at(f)) != Some(psi.at(ef)) {
            out.push(Violation::new(
                "homomorphism",
                format!("ψ({} {}) ≠ ψ({}) ψ({})", s1.label(e), s1.label(f), s1.label(e), s1.label(f)),
            ));
        }
    }
    for (&key, &e) in &from.incl {
        if to.incl.get(&key) != Some(&psi.at(e)) {
            out.push(Violation::new("diagram", format!("ψ ∘ i₁ ≠ i₂ at {}", s1.label(e))));
        }
    }
    for e in s1.arrows() {
        if to.proj[psi.at(e)] != from.proj[e] {
            out.push(Violation::new("diagram", format!("q₂ ∘ ψ ≠ q₁ at {}", s1.label(e))));
        }
    }
    if out.is_empty() {
        for e in s1.arrows() {
            for k in 0..from.order {
                if psi.at(from.act(k, e)) != to.act(k, psi.at(e)) {
                    out.push(Violation::new(
                        "T-action",
                        format!("ψ(z · {}) ≠ z · ψ({}) for z = g^{k}", s1.label(e), s1.label(e)),
                    ));
                }
            }
        }
    }
    out
}

/// `ψ(α, z) = (α, b(α) z)` from `G ×_σ T` to `G ×_τ T` when
/// `σ = τ · ∂b`.
pub fn coboundary_twist_iso(
    from: &DiscreteTwist,
    to: &DiscreteTwist,
    b: &Coboundary,
) -> TwistMorphism {
    let n = from.order as usize;
    TwistMorphism(
        from.total
            .arrows()
            .map(|e| {
                let a = e / n;
                to.act((e % n) as u32 + b.get(a), a * n)
            })
            .collect(),
    )
}

/// An isomorphism `Σ₁ → Σ₂` if the induced cocycles are cohomologous.
pub fn twists_isomorphic(s1: &DiscreteTwist, s2: &DiscreteTwist) -> Result<Option<TwistMorphism>> {
    s1.same_context(s2)?;
    let (p1, p2) = (s1.find_section(), s2.find_section());
    let sigma = s1.induced_cocycle(&p1)?;
    let tau = s2.induced_cocycle(&p2)?;
    let Some(b) = sigma.cohomologous_witness(&s1.base, &tau)? else {
        return Ok(None);
    };
    let (m1, phi1) = s1.section_iso(&p1)?;
    let (m2, phi2) = s2.section_iso(&p2)?;
    let psi_b = coboundary_twist_iso(&m1, &m2, &b);
    let mut phi1_inv = vec![0; s1.total.len()];
    for (e, &f) in phi1.0.iter().enumerate() {
        phi1_inv[f] = e;
    }
    let psi = TwistMorphism(
        s1.total
            .arrows()
            .map(|e| phi2.at(psi_b.at(phi1_inv[e])))
            .collect(),
    );
    let v = check_twist_morphism(s1, s2, &psi);
    if !v.is_empty() {
        return Err(Error::invalid("twist isomorphism", v));
    }
    Ok(Some(psi))
}
