//! Finite discrete groupoids stored as explicit composition tables.
//!
//! Arrows are dense indices `0..m`. Units are arrows too. The composition
//! table is independent data and [`FiniteGroupoid::validate`] checks that it
//! is coherent with `src`, `rng` and `inv`.
//!
//! With the discrete topology the interior of the isotropy is the isotropy,
//! so [`FiniteGroupoid::is_effective`] tests principality.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    labels: Vec<String>,
    is_unit: Vec<bool>,
    src: Vec<usize>,
    rng: Vec<usize>,
    inv: Vec<usize>,
    comp: Vec<Option<usize>>,
}

impl FiniteGroupoid {
    /// Assembles a groupoid from raw tables without checking the axioms.
    ///
    /// `compositions` lists triples `(a, b, ab)`. Missing entries of the form
    /// `(r(a), a)` and `(a, s(a))` are filled in. Only index bounds are
    /// checked here; call [`validate`](Self::validate) for the axioms.
    pub fn from_parts(
        labels: Vec<String>,
        units: &[usize],
        src: Vec<usize>,
        rng: Vec<usize>,
        inv: Vec<usize>,
        compositions: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let m = labels.len();
        if src.len() != m || rng.len() != m || inv.len() != m {
            return Err(Error::Parse("src/rng/inv tables must cover every arrow".into()));
        }
        let out_of_range = |v: usize| v >= m;
        if units.iter().copied().any(out_of_range)
            || src.iter().copied().any(out_of_range)
            || rng.iter().copied().any(out_of_range)
            || inv.iter().copied().any(out_of_range)
            || compositions
                .iter()
                .any(|&(a, b, c)| out_of_range(a) || out_of_range(b) || out_of_range(c))
        {
            return Err(Error::Parse("arrow index out of range".into()));
        }
        let mut distinct = BTreeSet::new();
        for l in &labels {
            if !distinct.insert(l) {
                return Err(Error::Parse(format!("duplicate arrow label {l}")));
            }
        }
        let mut is_unit = vec![false; m];
        for &u in units {
            is_unit[u] = true;
        }
        let mut g = Self {
            labels,
            is_unit,
            src,
            rng,
            inv,
            comp: vec![None; m * m],
        };
        for &(a, b, c) in compositions {
            g.comp[a * m + b] = Some(c);
        }
        for a in 0..m {
            let (r, s) = (g.rng[a], g.src[a]);
            if g.is_unit[r] && g.comp[r * m + a].is_none() {
                g.comp[r * m + a] = Some(a);
            }
            if g.is_unit[s] && g.comp[a * m + s].is_none() {
                g.comp[a * m + s] = Some(a);
            }
        }
        Ok(g)
    }

    /// [`from_parts`](Self::from_parts) followed by validation.
    pub fn new(
        labels: Vec<String>,
        units: &[usize],
        src: Vec<usize>,
        rng: Vec<usize>,
        inv: Vec<usize>,
        compositions: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let g = Self::from_parts(labels, units, src, rng, inv, compositions)?;
        g.ensure_valid()?;
        Ok(g)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::invalid("groupoid", v))
        }
    }

    pub fn empty() -> Self {
        Self::from_parts(vec![], &[], vec![], vec![], vec![], &[]).expect("empty groupoid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn arrows(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.is_unit[a]
    }

    pub fn units(&self) -> Vec<usize> {
        self.arrows().filter(|&a| self.is_unit[a]).collect()
    }

    pub fn src(&self, a: usize) -> usize {
        self.src[a]
    }

    pub fn rng(&self, a: usize) -> usize {
        self.rng[a]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.comp[a * self.len() + b]
    }

    /// Overwrites one entry of the composition table. Intended for building
    /// malformed fixtures; the result is not revalidated.
    pub fn set_compose(&mut self, a: usize, b: usize, ab: Option<usize>) {
        let m = self.len();
        self.comp[a * m + b] = ab;
    }

    /// Removes arrow `a` and every composition touching it. Returns the map
    /// from old to new indices. Used to build malformed fixtures.
    pub fn remove_arrow(&mut self, a: usize) -> Vec<Option<usize>> {
        let m = self.len();
        let map: Vec<Option<usize>> = (0..m)
            .map(|x| match x.cmp(&a) {
                std::cmp::Ordering::Less => Some(x),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(x - 1),
            })
            .collect();
        let keep: Vec<usize> = (0..m).filter(|&x| x != a).collect();
        // Dangling references are pointed at the arrow itself so that the
        // tables stay in range; validation reports the damage.
        let remap = |x: usize, own: usize| map[x].unwrap_or(own);
        let mut comp = vec![None; (m - 1) * (m - 1)];
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                if let Some(z) = self.compose(x, y) {
                    comp[i * (m - 1) + j] = map[z];
                }
            }
        }
        self.labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        self.is_unit = keep.iter().map(|&x| self.is_unit[x]).collect();
        self.src = keep.iter().enumerate().map(|(i, &x)| remap(self.src[x], i)).collect();
        self.rng = keep.iter().enumerate().map(|(i, &x)| remap(self.rng[x], i)).collect();
        self.inv = keep.iter().enumerate().map(|(i, &x)| remap(self.inv[x], i)).collect();
        self.comp = comp;
        map
    }

    pub fn is_composable(&self, a: usize, b: usize) -> bool {
        self.src[a] == self.rng[b]
    }

    /// All composable pairs `(a, b, ab)` in lexicographic order.
    pub fn composable_pairs(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in self.arrows() {
            for b in self.arrows() {
                if let Some(c) = self.compose(a, b) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    /// `G^x`: arrows with range `x`.
    pub fn range_fiber(&self, x: usize) -> Vec<usize> {
        self.arrows().filter(|&a| self.rng[a] == x).collect()
    }

    /// `G_x`: arrows with source `x`.
    pub fn source_fiber(&self, x: usize) -> Vec<usize> {
        self.arrows().filter(|&a| self.src[a] == x).collect()
    }

    /// Every failed axiom, each naming its witnessing arrows.
    pub fn validate(&self) -> Vec<Violation> {
        let m = self.len();
        let l = |a: usize| self.labels[a].as_str();
        let mut out = Vec::new();
        for a in self.arrows() {
            if !self.is_unit[self.src[a]] {
                out.push(Violation::new("units", format!("src({}) = {} is not a unit", l(a), l(self.src[a]))));
            }
            if !self.is_unit[self.rng[a]] {
                out.push(Violation::new("units", format!("rng({}) = {} is not a unit", l(a), l(self.rng[a]))));
            }
            if self.is_unit[a] && (self.src[a] != a || self.rng[a] != a || self.inv[a] != a) {
                out.push(Violation::new("units", format!("unit {} must be its own source, range and inverse", l(a))));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in self.arrows() {
            for b in self.arrows() {
                let composable = self.is_composable(a, b);
                match (composable, self.compose(a, b)) {
                    (true, None) => out.push(Violation::new(
                        "composable",
                        format!("{} {} is composable but undefined", l(a), l(b)),
                    )),
                    (false, Some(_)) => out.push(Violation::new(
                        "composable",
                        format!("{} {} is defined but not composable", l(a), l(b)),
                    )),
                    (true, Some(c)) => {
                        if self.rng[c] != self.rng[a] || self.src[c] != self.src[b] {
                            out.push(Violation::new(
                                "endpoints",
                                format!("{} {} = {} has the wrong source or range", l(a), l(b), l(c)),
                            ));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for a in self.arrows() {
            if self.compose(self.rng[a], a) != Some(a) || self.compose(a, self.src[a]) != Some(a) {
                out.push(Violation::new("identity", format!("units do not fix {}", l(a))));
            }
            let i = self.inv[a];
            if self.inv[i] != a {
                out.push(Violation::new("inverse", format!("inv(inv({})) != {}", l(a), l(a))));
            }
            if self.src[i] != self.rng[a] || self.rng[i] != self.src[a] {
                out.push(Violation::new("inverse", format!("inv({}) does not swap source and range", l(a))));
            }
            if self.compose(a, i) != Some(self.rng[a]) {
                out.push(Violation::new("range", format!("rng(γ) = γγ⁻¹ fails at {}", l(a))));
            }
            if self.compose(i, a) != Some(self.src[a]) {
                out.push(Violation::new("source", format!("src(γ) = γ⁻¹γ fails at {}", l(a))));
            }
        }
        for a in 0..m {
            for b in 0..m {
                let Some(ab) = self.compose(a, b) else { continue };
                for c in 0..m {
                    let Some(bc) = self.compose(b, c) else { continue };
                    let left = self.compose(ab, c);
                    let right = self.compose(a, bc);
                    if left != right || left.is_none() {
                        out.push(Violation::new(
                            "associativity",
                            format!("({} {}) {} != {} ({} {})", l(a), l(b), l(c), l(a), l(b), l(c)),
                        ));
                    }
                }
            }
        }
        out
    }

    /// `Iso(G) = {γ : r(γ) = s(γ)}`.
    pub fn isotropy(&self) -> Vec<usize> {
        self.arrows().filter(|&a| self.src[a] == self.rng[a]).collect()
    }

    /// Effective, which at finite discrete scale means principal.
    pub fn is_effective(&self) -> bool {
        self.isotropy().into_iter().all(|a| self.is_unit[a])
    }

    /// Orbits `s(r⁻¹(x))`, each sorted, ordered by least unit.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in self.units() {
            if seen[x] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.range_fiber(x).into_iter().map(|a| self.src[a]).collect();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    /// Exactly one orbit. Closures are trivial in the discrete topology.
    pub fn is_minimal(&self) -> bool {
        self.orbits().len() == 1
    }

    /// The first arrow in `s⁻¹(U)` whose range leaves `U`, if any.
    pub fn crossing_arrow(&self, units: &BTreeSet<usize>) -> Option<usize> {
        self.arrows()
            .find(|&a| units.contains(&self.src[a]) && !units.contains(&self.rng[a]))
    }

    /// Arrows of `G_U = s⁻¹(U)` in index order.
    pub fn restriction_arrows(&self, units: &BTreeSet<usize>) -> Result<Vec<usize>> {
        if let Some(&u) = units.iter().find(|&&u| u >= self.len() || !self.is_unit[u]) {
            return Err(Error::Precondition(format!("arrow index {u} is not a unit")));
        }
        if let Some(a) = self.crossing_arrow(units) {
            return Err(Error::NotInvariant(self.labels[a].clone()));
        }
        Ok(self.arrows().filter(|&a| units.contains(&self.src[a])).collect())
    }

    /// `G_U` for an invariant set of units `U`.
    pub fn restrict(&self, units: &BTreeSet<usize>) -> Result<Self> {
        let arrows = self.restriction_arrows(units)?;
        Ok(self.subgroupoid(&arrows))
    }

    /// The subgroupoid on `arrows`, assumed closed under the structure maps.
    pub fn subgroupoid(&self, arrows: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let at = |a: usize| pos[&a];
        let mut comps = Vec::new();
        for &a in arrows {
            for &b in arrows {
                if let Some(c) = self.compose(a, b) {
                    comps.push((at(a), at(b), at(c)));
                }
            }
        }
        let units: Vec<usize> = arrows.iter().filter(|&&a| self.is_unit[a]).map(|&a| at(a)).collect();
        Self::from_parts(
            arrows.iter().map(|&a| self.labels[a].clone()).collect(),
            &units,
            arrows.iter().map(|&a| at(self.src[a])).collect(),
            arrows.iter().map(|&a| at(self.rng[a])).collect(),
            arrows.iter().map(|&a| at(self.inv[a])).collect(),
            &comps,
        )
        .expect("closed subgroupoid")
    }

    /// Arrow-disjoint union, `self` first. Labels are prefixed with `0:` and
    /// `1:` only when the two label sets overlap.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let clash = self.labels.iter().any(|l| other.labels.contains(l));
        let tag = |side: usize, l: &str| if clash { format!("{side}:{l}") } else { l.to_string() };
        let k = self.len();
        let mut labels: Vec<String> = self.labels.iter().map(|l| tag(0, l)).collect();
        labels.extend(other.labels.iter().map(|l| tag(1, l)));
        let shift = |v: &[usize]| v.iter().map(|&x| x + k).collect::<Vec<_>>();
        let mut src = self.src.clone();
        src.extend(shift(&other.src));
        let mut rng = self.rng.clone();
        rng.extend(shift(&other.rng));
        let mut inv = self.inv.clone();
        inv.extend(shift(&other.inv));
        let mut units = self.units();
        units.extend(other.units().into_iter().map(|u| u + k));
        let mut comps: Vec<(usize, usize, usize)> = self.composable_pairs();
        comps.extend(other.composable_pairs().into_iter().map(|(a, b, c)| (a + k, b + k, c + k)));
        Self::from_parts(labels, &units, src, rng, inv, &comps).expect("disjoint union")
    }

    /// All bisections, ordered by the backtracking search over ascending
    /// arrow indices. Fails once more than `cap` have been found.
    pub fn bisections(&self, cap: usize) -> Result<Vec<Bisection>> {
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        let mut used_r = BTreeSet::new();
        let mut used_s = BTreeSet::new();
        self.extend_bisections(0, &mut chosen, &mut used_r, &mut used_s, &mut out, cap)?;
        Ok(out)
    }

    fn extend_bisections(
        &self,
        from: usize,
        chosen: &mut Vec<usize>,
        used_r: &mut BTreeSet<usize>,
        used_s: &mut BTreeSet<usize>,
        out: &mut Vec<Bisection>,
        cap: usize,
    ) -> Result<()> {
        if out.len() >= cap {
            return Err(Error::CapExceeded {
                needed: out.len() as u128 + 1,
                cap: cap as u128,
            });
        }
        out.push(Bisection(chosen.iter().copied().collect()));
        for a in from..self.len() {
            let (r, s) = (self.rng[a], self.src[a]);
            if used_r.contains(&r) || used_s.contains(&s) {
                continue;
            }
            chosen.push(a);
            used_r.insert(r);
            used_s.insert(s);
            self.extend_bisections(a + 1, chosen, used_r, used_s, out, cap)?;
            chosen.pop();
            used_r.remove(&r);
            used_s.remove(&s);
        }
        Ok(())
    }
}

/// A set of arrows on which `r` and `s` are both injective.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bisection(BTreeSet<usize>);

impl Bisection {
    pub fn new(g: &FiniteGroupoid, arrows: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = arrows.into_iter().collect();
        let describe = |set: &BTreeSet<usize>| {
            let names: Vec<&str> = set
                .iter()
                .map(|&a| if a < g.len() { g.label(a) } else { "?" })
                .collect();
            format!("{{{}}}", names.join(","))
        };
        if set.iter().any(|&a| a >= g.len()) {
            return Err(Error::NotBisection(describe(&set)));
        }
        let ranges: BTreeSet<usize> = set.iter().map(|&a| g.rng(a)).collect();
        let sources: BTreeSet<usize> = set.iter().map(|&a| g.src(a)).collect();
        if ranges.len() != set.len() || sources.len() != set.len() {
            return Err(Error::NotBisection(describe(&set)));
        }
        Ok(Self(set))
    }

    pub fn units(g: &FiniteGroupoid) -> Self {
        Self(g.units().into_iter().collect())
    }

    pub fn arrows(&self) -> &BTreeSet<usize> {
        &self.0
    }

    pub fn contains(&self, a: usize) -> bool {
        self.0.contains(&a)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn product(&self, g: &FiniteGroupoid, other: &Self) -> Self {
        let mut out = BTreeSet::new();
        for &a in &self.0 {
            for &b in &other.0 {
                if let Some(c) = g.compose(a, b) {
                    out.insert(c);
                }
            }
        }
        Self(out)
    }

    pub fn inverse(&self, g: &FiniteGroupoid) -> Self {
        Self(self.0.iter().map(|&a| g.inv(a)).collect())
    }

    /// `r(B)` as a set of units.
    pub fn range(&self, g: &FiniteGroupoid) -> Self {
        Self(self.0.iter().map(|&a| g.rng(a)).collect())
    }

    /// `s(B)` as a set of units.
    pub fn source(&self, g: &FiniteGroupoid) -> Self {
        Self(self.0.iter().map(|&a| g.src(a)).collect())
    }

    pub fn is_subset_of_units(&self, g: &FiniteGroupoid) -> bool {
        self.0.iter().all(|&a| g.is_unit(a))
    }
}
