//! `T`-valued 2-cocycles, coboundaries, cohomology, and gradings.
//!
//! A cocycle with values in the cyclic group `T` of order `n` is stored as a
//! table of exponents in `Z/n`; the value at `(a, b)` is `g^table(a, b)` for
//! the generator `g` of `T`. The coboundary equation is then linear over `Z/n`.

use std::collections::BTreeMap;

use crate::error::{Error, Result, Violation};
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycle {
    order: u32,
    arrows: usize,
    table: Vec<u32>,
}

impl TwoCocycle {
    pub fn trivial(g: &FiniteGroupoid, order: u32) -> Self {
        assert!(order >= 1, "T must be nontrivial as a set");
        Self {
            order,
            arrows: g.len(),
            table: vec![0; g.len() * g.len()],
        }
    }

    /// Builds a table from `(a, b, exponent)` entries; other pairs are `0`.
    /// Entries on non-composable pairs are rejected. The cocycle identity is
    /// not checked here.
    pub fn from_entries(
        g: &FiniteGroupoid,
        order: u32,
        entries: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::Precondition("cocycle order must be positive".into()));
        }
        let mut c = Self::trivial(g, order);
        for (a, b, k) in entries {
            if a >= g.len() || b >= g.len() {
                return Err(Error::Parse("cocycle entry names an unknown arrow".into()));
            }
            if g.compose(a, b).is_none() {
                return Err(Error::Parse(format!(
                    "cocycle entry on non-composable pair ({}, {})",
                    g.label(a),
                    g.label(b)
                )));
            }
            c.table[a * c.arrows + b] = k % order;
        }
        Ok(c)
    }

    /// [`from_entries`](Self::from_entries) followed by validation.
    pub fn new(
        g: &FiniteGroupoid,
        order: u32,
        entries: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Self> {
        let c = Self::from_entries(g, order, entries)?;
        c.ensure_valid(g)?;
        Ok(c)
    }

    pub fn ensure_valid(&self, g: &FiniteGroupoid) -> Result<()> {
        let v = self.validate(g);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::invalid("cocycle", v))
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.table[a * self.arrows + b]
    }

    /// Sets one exponent without revalidating.
    pub fn set(&mut self, a: usize, b: usize, k: u32) {
        self.table[a * self.arrows + b] = k % self.order;
    }

    /// Nonzero entries in lexicographic pair order.
    pub fn entries(&self) -> Vec<(usize, usize, u32)> {
        let m = self.arrows;
        (0..m * m)
            .filter(|&i| self.table[i] != 0)
            .map(|i| (i / m, i % m, self.table[i]))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|&k| k == 0)
    }

    fn check_context(&self, g: &FiniteGroupoid) -> Result<()> {
        if self.arrows != g.len() {
            return Err(Error::ContextMismatch(format!(
                "cocycle has {} arrows, groupoid has {}",
                self.arrows,
                g.len()
            )));
        }
        Ok(())
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.order != other.order || self.arrows != other.arrows {
            return Err(Error::ContextMismatch(format!(
                "cocycles over (|G| = {}, |T| = {}) and (|G| = {}, |T| = {})",
                self.arrows, self.order, other.arrows, other.order
            )));
        }
        Ok(())
    }

    /// Cocycle identity on `G⁽³⁾` and normalisation.
    pub fn validate(&self, g: &FiniteGroupoid) -> Vec<Violation> {
        if let Err(e) = self.check_context(g) {
            return vec![Violation::new("context", e.to_string())];
        }
        let n = self.order;
        let l = |a: usize| g.label(a);
        let mut out = Vec::new();
        for a in g.arrows() {
            for b in g.arrows() {
                if g.compose(a, b).is_none() && self.get(a, b) != 0 {
                    out.push(Violation::new(
                        "support",
                        format!("value on non-composable pair ({}, {})", l(a), l(b)),
                    ));
                }
            }
            if self.get(g.rng(a), a) != 0 {
                out.push(Violation::new("normalised", format!("σ(r(γ), γ) ≠ 1 at {}", l(a))));
            }
            if self.get(a, g.src(a)) != 0 {
                out.push(Violation::new("normalised", format!("σ(γ, s(γ)) ≠ 1 at {}", l(a))));
            }
        }
        for (a, b, ab) in g.composable_pairs() {
            for c in g.arrows() {
                let Some(bc) = g.compose(b, c) else { continue };
                let left = (self.get(a, b) + self.get(ab, c)) % n;
                let right = (self.get(a, bc) + self.get(b, c)) % n;
                if left != right {
                    out.push(Violation::new(
                        "cocycle identity",
                        format!("fails at ({}, {}, {})", l(a), l(b), l(c)),
                    ));
                }
            }
        }
        out
    }

    pub fn invert(&self) -> Self {
        let n = self.order;
        Self {
            table: self.table.iter().map(|&k| (n - k) % n).collect(),
            ..self.clone()
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let n = self.order;
        Ok(Self {
            table: self.table.iter().zip(&other.table).map(|(a, b)| (a + b) % n).collect(),
            ..self.clone()
        })
    }

    /// `σ(α,β) b(α) b(β) b(αβ)⁻¹`.
    pub fn apply_coboundary(&self, g: &FiniteGroupoid, b: &Coboundary) -> Result<Self> {
        self.check_context(g)?;
        b.check(g, self.order)?;
        let n = self.order as u64;
        let mut out = self.clone();
        for (x, y, xy) in g.composable_pairs() {
            let v = self.get(x, y) as u64 + b.get(x) as u64 + b.get(y) as u64 + n - b.get(xy) as u64;
            out.set(x, y, (v % n) as u32);
        }
        Ok(out)
    }

    /// Some `b` with `apply_coboundary(other, b) = self`, found by solving
    /// `b(α) + b(β) − b(αβ) ≡ σ(α,β) − τ(α,β) (mod n)` over `Z/n`.
    pub fn cohomologous_witness(&self, g: &FiniteGroupoid, other: &Self) -> Result<Option<Coboundary>> {
        self.same_context(other)?;
        self.check_context(g)?;
        let n = self.order as u64;
        let vars: Vec<usize> = g.arrows().filter(|&a| !g.is_unit(a)).collect();
        let col: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (a, b, ab) in g.composable_pairs() {
            let mut row = vec![0u64; vars.len()];
            for (arrow, sign) in [(a, 1), (b, 1), (ab, n - 1)] {
                if let Some(&j) = col.get(&arrow) {
                    row[j] = (row[j] + sign) % n;
                }
            }
            rows.push(row);
            rhs.push((self.get(a, b) as u64 + n - other.get(a, b) as u64) % n);
        }
        let Some(x) = solve_mod(rows, rhs, vars.len(), n) else {
            return Ok(None);
        };
        let mut values = vec![0u32; g.len()];
        for (j, &a) in vars.iter().enumerate() {
            values[a] = x[j] as u32;
        }
        let b = Coboundary {
            order: self.order,
            values,
        };
        if other.apply_coboundary(g, &b)? != *self {
            return Err(Error::Precondition(
                "modular solver produced an unverified coboundary".into(),
            ));
        }
        Ok(Some(b))
    }

    /// Lexicographically least `b` (first non-unit arrow most significant)
    /// with `apply_coboundary(other, b) = self`, by exhaustive search over
    /// at most `cap` candidates.
    pub fn brute_force_witness(
        &self,
        g: &FiniteGroupoid,
        other: &Self,
        cap: u128,
    ) -> Result<Option<Coboundary>> {
        self.same_context(other)?;
        self.check_context(g)?;
        let vars: Vec<usize> = g.arrows().filter(|&a| !g.is_unit(a)).collect();
        let n = self.order;
        let needed = (n as u128).checked_pow(vars.len() as u32).unwrap_or(u128::MAX);
        if needed > cap {
            return Err(Error::CapExceeded { needed, cap });
        }
        let mut digits = vec![0u32; vars.len()];
        loop {
            let mut values = vec![0u32; g.len()];
            for (j, &a) in vars.iter().enumerate() {
                values[a] = digits[j];
            }
            let b = Coboundary { order: n, values };
            if other.apply_coboundary(g, &b)? == *self {
                return Ok(Some(b));
            }
            let mut j = vars.len();
            loop {
                if j == 0 {
                    return Ok(None);
                }
                j -= 1;
                digits[j] += 1;
                if digits[j] < n {
                    break;
                }
                digits[j] = 0;
            }
        }
    }
}

/// Solves `A x ≡ c (mod n)` by diagonalising `A` with unimodular row and
/// column operations. Free coordinates are set to zero.
fn solve_mod(mut a: Vec<Vec<u64>>, mut c: Vec<u64>, cols: usize, n: u64) -> Option<Vec<u64>> {
    let rows = a.len();
    // Column operations are mirrored on v so that x = v y.
    let mut v: Vec<Vec<u64>> = (0..cols)
        .map(|i| (0..cols).map(|j| u64::from(i == j)).collect())
        .collect();
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % n as u128) as u64;
    let comb = |x: u64, p: i128, y: u64, q: i128| -> u64 {
        (((x as i128 * p + y as i128 * q) % n as i128 + n as i128) % n as i128) as u64
    };
    let mut rank = 0;
    while rank < rows.min(cols) {
        let Some((pr, pc)) = (rank..rows)
            .flat_map(|i| (rank..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j])
        else {
            break;
        };
        a.swap(rank, pr);
        c.swap(rank, pr);
        for row in a.iter_mut() {
            row.swap(rank, pc);
        }
        for row in v.iter_mut() {
            row.swap(rank, pc);
        }
        let k = rank;
        loop {
            let mut changed = false;
            for i in k + 1..rows {
                if a[i][k] == 0 {
                    continue;
                }
                let (g, p, q) = bezout(a[k][k] as i128, a[i][k] as i128);
                let (s, t) = (a[k][k] as i128 / g, a[i][k] as i128 / g);
                for j in 0..cols {
                    let (x, y) = (a[k][j], a[i][j]);
                    a[k][j] = comb(x, p, y, q);
                    a[i][j] = comb(x, -t, y, s);
                }
                let (x, y) = (c[k], c[i]);
                c[k] = comb(x, p, y, q);
                c[i] = comb(x, -t, y, s);
                changed = true;
            }
            for j in k + 1..cols {
                if a[k][j] == 0 {
                    continue;
                }
                let (g, p, q) = bezout(a[k][k] as i128, a[k][j] as i128);
                let (s, t) = (a[k][k] as i128 / g, a[k][j] as i128 / g);
                for row in a.iter_mut().chain(v.iter_mut()) {
                    let (x, y) = (row[k], row[j]);
                    row[k] = comb(x, p, y, q);
                    row[j] = comb(x, -t, y, s);
                }
                changed = true;
            }
            if !changed {
                break;
            }
        }
        debug_assert!(a[k][k] != 0);
        rank += 1;
    }
    let mut y = vec![0u64; cols];
    for i in 0..rows {
        let d = if i < cols { a[i][i] } else { 0 };
        if d == 0 {
            if c[i] != 0 {
                return None;
            }
            continue;
        }
        let g = gcd(d, n);
        if !c[i].is_multiple_of(g) {
            return None;
        }
        let m = n / g;
        let inv = mod_inverse((d / g) % m, m);
        y[i] = mulm((c[i] / g) % m, inv) % m;
    }
    Some(
        (0..cols)
            .map(|i| (0..cols).fold(0, |acc, j| (acc + mulm(v[i][j], y[j])) % n))
            .collect(),
    )
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// [`ext_gcd`], except `(a, 1, 0)` whenever `a` divides `b`.
fn bezout(a: i128, b: i128) -> (i128, i128, i128) {
    if b % a == 0 {
        (a, 1, 0)
    } else {
        ext_gcd(a, b)
    }
}

/// `(g, p, q)` with `p a + q b = g = gcd(a, b)`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, p, q) = ext_gcd(b, a % b);
        (g, q, p - (a / b) * q)
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (_, p, _) = ext_gcd(a as i128, m as i128);
    p.rem_euclid(m as i128) as u64
}

/// `b: G → T` as exponents, vanishing on units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coboundary {
    order: u32,
    values: Vec<u32>,
}

impl Coboundary {
    pub fn zero(g: &FiniteGroupoid, order: u32) -> Self {
        Self {
            order,
            values: vec![0; g.len()],
        }
    }

    pub fn new(g: &FiniteGroupoid, order: u32, values: Vec<u32>) -> Result<Self> {
        let b = Self {
            order,
            values: values.into_iter().map(|k| k % order.max(1)).collect(),
        };
        b.check(g, order)?;
        Ok(b)
    }

    fn check(&self, g: &FiniteGroupoid, order: u32) -> Result<()> {
        if self.order != order || self.values.len() != g.len() {
            return Err(Error::ContextMismatch("coboundary context".into()));
        }
        if let Some(u) = g.units().into_iter().find(|&u| self.values[u] != 0) {
            return Err(Error::Precondition(format!(
                "b must vanish on units, b({}) ≠ 1",
                g.label(u)
            )));
        }
        Ok(())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, a: usize) -> u32 {
        self.values[a]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&k| k == 0)
    }
}

/// The target of a grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingGroup {
    Integers,
    Finite(FiniteGroup),
}

impl GradingGroup {
    pub fn identity(&self) -> i64 {
        0
    }

    pub fn op(&self, a: i64, b: i64) -> i64 {
        match self {
            GradingGroup::Integers => a + b,
            GradingGroup::Finite(t) => t.mul(a as usize, b as usize) as i64,
        }
    }

    pub fn contains(&self, a: i64) -> bool {
        match self {
            GradingGroup::Integers => true,
            GradingGroup::Finite(t) => a >= 0 && (a as usize) < t.order(),
        }
    }
}

/// A groupoid homomorphism `c: G → Γ`, by degrees of arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    group: GradingGroup,
    degrees: Vec<i64>,
}

impl Grading {
    pub fn from_degrees(group: GradingGroup, degrees: Vec<i64>) -> Self {
        Self { group, degrees }
    }

    pub fn new(g: &FiniteGroupoid, group: GradingGroup, degrees: Vec<i64>) -> Result<Self> {
        let c = Self::from_degrees(group, degrees);
        let v = c.validate(g);
        if v.is_empty() {
            Ok(c)
        } else {
            Err(Error::invalid("grading", v))
        }
    }

    pub fn trivial(g: &FiniteGroupoid) -> Self {
        Self::from_degrees(GradingGroup::Finite(FiniteGroup::cyclic(1)), vec![0; g.len()])
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn degree(&self, a: usize) -> i64 {
        self.degrees[a]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// `c⁻¹(e)`, in index order.
    pub fn kernel_arrows(&self, g: &FiniteGroupoid) -> Vec<usize> {
        g.arrows().filter(|&a| self.degrees[a] == self.group.identity()).collect()
    }

    /// Homomorphism law on `G⁽²⁾`; unit degrees follow from it.
    pub fn validate(&self, g: &FiniteGroupoid) -> Vec<Violation> {
        if self.degrees.len() != g.len() {
            return vec![Violation::new(
                "context",
                format!("{} degrees for {} arrows", self.degrees.len(), g.len()),
            )];
        }
        let mut out: Vec<Violation> = g
            .arrows()
            .filter(|&a| !self.group.contains(self.degrees[a]))
            .map(|a| Violation::new("range", format!("degree of {} is not in Γ", g.label(a))))
            .collect();
        if !out.is_empty() {
            return out;
        }
        for (a, b, ab) in g.composable_pairs() {
            let expected = self.group.op(self.degrees[a], self.degrees[b]);
            if self.degrees[ab] != expected {
                out.push(Violation::new(
                    "homomorphism",
                    format!(
                        "c({} {}) = c({}) = {} ≠ {}",
                        g.label(a),
                        g.label(b),
                        g.label(ab),
                        self.degrees[ab],
                        expected
                    ),
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    fn idx(g: &FiniteGroupoid, l: &str) -> usize {
        g.index_of(l).unwrap()
    }

    fn z2() -> FiniteGroupoid {
        catalog::entry("Z2").unwrap().groupoid
    }

    fn z2_neg() -> TwoCocycle {
        TwoCocycle::new(&z2(), 2, [(1, 1, 1)]).unwrap()
    }

    #[test]
    fn trivial_cocycles_validate() {
        for e in catalog::entries() {
            for n in [1, 2, 4] {
                assert!(TwoCocycle::trivial(&e.groupoid, n).validate(&e.groupoid).is_empty());
            }
        }
        assert!(z2_neg().validate(&z2()).is_empty());
    }

    #[test]
    fn asymmetric_cocycle_on_r2_fails() {
        let r2 = catalog::pair_groupoid(2).unwrap();
        let c = TwoCocycle::from_entries(&r2, 2, [(idx(&r2, "(1,2)"), idx(&r2, "(2,1)"), 1)]).unwrap();
        let v = c.validate(&r2);
        assert!(v.iter().any(|v| v.rule == "cocycle identity"), "{v:?}");
    }

    #[test]
    fn inversion_and_products() {
        let g = z2();
        let t = TwoCocycle::trivial(&g, 2);
        assert_eq!(t.invert(), t);
        let s = z2_neg();
        assert_eq!(s.invert().invert(), s);
        assert_eq!(s.multiply(&s.invert()).unwrap(), t);
        assert!(s.multiply(&TwoCocycle::trivial(&g, 4)).is_err());
    }

    #[test]
    fn coboundary_examples() {
        let g = z2();
        let s = TwoCocycle::trivial(&g, 2);
        assert_eq!(s.apply_coboundary(&g, &Coboundary::zero(&g, 2)).unwrap(), s);
        let b = Coboundary::new(&g, 2, vec![0, 1]).unwrap();
        assert_eq!(s.apply_coboundary(&g, &b).unwrap(), s);

        let z4 = catalog::entry("Z4").unwrap().groupoid;
        let b = Coboundary::new(&z4, 4, vec![0, 1, 0, 0]).unwrap();
        let tau = TwoCocycle::trivial(&z4, 4).apply_coboundary(&z4, &b).unwrap();
        // τ(g,g) = b(g) b(g) b(g²)⁻¹ = ζ², τ(g,g³) = b(g) b(g³) b(e)⁻¹ = ζ.
        assert_eq!(tau.get(1, 1), 2);
        assert_eq!(tau.get(1, 3), 1);
        assert_eq!(tau.get(2, 2), 0);
        assert!(tau.validate(&z4).is_empty());
        assert!(Coboundary::new(&z4, 4, vec![1, 0, 0, 0]).is_err());
    }

    #[test]
    fn cohomology_examples() {
        let g = z2();
        let s = z2_neg();
        assert!(s.cohomologous_witness(&g, &s).unwrap().unwrap().is_zero());
        let t = TwoCocycle::trivial(&g, 2);
        assert_eq!(s.cohomologous_witness(&g, &t).unwrap(), None);
        assert_eq!(s.brute_force_witness(&g, &t, 16).unwrap(), None);

        let r2 = catalog::pair_groupoid(2).unwrap();
        let all = catalog::enumerate_cocycles(&r2, 2, 1 << 16).unwrap();
        let triv = TwoCocycle::trivial(&r2, 2);
        assert!(all.len() > 1);
        for c in &all {
            assert!(c.cohomologous_witness(&r2, &triv).unwrap().is_some());
            assert!(c.brute_force_witness(&r2, &triv, 1 << 10).unwrap().is_some());
        }
    }

    #[test]
    fn brute_force_respects_cap() {
        let r3 = catalog::pair_groupoid(3).unwrap();
        let t = TwoCocycle::trivial(&r3, 4);
        assert!(matches!(
            t.brute_force_witness(&r3, &t, 100),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn carry_cocycle_is_not_a_coboundary() {
        let z4 = catalog::entry("Z4").unwrap().groupoid;
        let carry = catalog::named_cocycle("z4_carry").unwrap().1;
        let t = TwoCocycle::trivial(&z4, 4);
        assert_eq!(carry.cohomologous_witness(&z4, &t).unwrap(), None);
        assert_eq!(carry.brute_force_witness(&z4, &t, 1 << 8).unwrap(), None);
        // Its square is not a coboundary either, but the fourth power is.
        let sq = carry.multiply(&carry).unwrap();
        assert_eq!(sq.cohomologous_witness(&z4, &t).unwrap(), None);
    }

    #[test]
    fn grading_examples() {
        let g = z2();
        assert!(Grading::trivial(&g).validate(&g).is_empty());
        let z4 = catalog::entry("Z4").unwrap().groupoid;
        let id = Grading::from_degrees(GradingGroup::Finite(FiniteGroup::cyclic(4)), vec![0, 1, 2, 3]);
        assert!(id.validate(&z4).is_empty());

        let r2 = catalog::pair_groupoid(2).unwrap();
        let mut degrees = vec![0; 4];
        degrees[idx(&r2, "(1,2)")] = 1;
        degrees[idx(&r2, "(2,1)")] = 1;
        let bad = Grading::from_degrees(GradingGroup::Integers, degrees);
        let v = bad.validate(&r2);
        assert!(
            v.iter().any(|v| v.message == "c((1,2) (2,1)) = c((1,1)) = 0 ≠ 2"),
            "{v:?}"
        );
    }

    #[test]
    fn solver_handles_composite_moduli() {
        // 4x ≡ 4 is solvable mod 12, 4x ≡ 6 is not, 6x + 4y ≡ 2 is.
        let x = solve_mod(vec![vec![4]], vec![4], 1, 12).unwrap();
        assert_eq!(4 * x[0] % 12, 4);
        assert!(solve_mod(vec![vec![4]], vec![6], 1, 12).is_none());
        let x = solve_mod(vec![vec![6, 4]], vec![2], 2, 12).unwrap();
        assert_eq!((6 * x[0] + 4 * x[1]) % 12, 2);
        assert!(solve_mod(vec![vec![0, 0]], vec![1], 2, 12).is_none());
    }

    fn family() -> Vec<(FiniteGroupoid, Vec<TwoCocycle>)> {
        ["Z2", "Z4", "K4", "R2", "Z2swap"]
            .iter()
            .map(|n| {
                let g = catalog::entry(n).unwrap().groupoid;
                let cs = catalog::enumerate_cocycles(&g, 2, 1 << 16)
                    .unwrap_or_else(|_| vec![TwoCocycle::trivial(&g, 2)]);
                (g, cs)
            })
            .collect()
    }

    #[test]
    fn cocycle_inverse_pairs_agree() {
        for (g, cs) in family() {
            for c in cs {
                for a in g.arrows() {
                    assert_eq!(c.get(a, g.inv(a)), c.get(g.inv(a), a));
                }
            }
        }
    }

    #[test]
    fn cohomology_is_an_equivalence_relation() {
        for (g, cs) in family() {
            let rel = |x: &TwoCocycle, y: &TwoCocycle| x.cohomologous_witness(&g, y).unwrap().is_some();
            for x in &cs {
                assert!(rel(x, x));
                for y in &cs {
                    assert_eq!(rel(x, y), rel(y, x));
                    assert_eq!(rel(x, y), x.brute_force_witness(&g, y, 1 << 16).unwrap().is_some());
                    for z in &cs {
                        if rel(x, y) && rel(y, z) {
                            assert!(rel(x, z));
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn coboundaries_are_recovered(
            name in proptest::sample::select(vec!["Z4", "R3", "S3", "Z2swap", "Z2fix3", "R2+Z2"]),
            order in 2u32..6,
            seed in proptest::collection::vec(0u32..1000, 64),
        ) {
            let g = catalog::entry(name).unwrap().groupoid;
            let values: Vec<u32> = g.arrows().map(|a| if g.is_unit(a) { 0 } else { seed[a % 64] % order }).collect();
            let b = Coboundary::new(&g, order, values).unwrap();
            let base = catalog::enumerate_cocycles(&g, order, 1 << 12)
                .ok()
                .and_then(|cs| cs.last().cloned())
                .unwrap_or_else(|| TwoCocycle::trivial(&g, order));
            let tau = base.apply_coboundary(&g, &b).unwrap();
            prop_assert!(tau.validate(&g).is_empty());
            let w = tau.cohomologous_witness(&g, &base).unwrap().expect("cohomologous");
            prop_assert_eq!(base.apply_coboundary(&g, &w).unwrap(), tau);
        }

        #[test]
        fn cocycles_form_an_abelian_group(
            name in proptest::sample::select(vec!["Z2", "Z3", "Z4", "K4", "R2"]),
            i in any::<proptest::sample::Index>(),
            j in any::<proptest::sample::Index>(),
            k in any::<proptest::sample::Index>(),
        ) {
            let g = catalog::entry(name).unwrap().groupoid;
            let cs = catalog::enumerate_cocycles(&g, 3, 1 << 16).unwrap();
            let [x, y, z] = [i, j, k].map(|p| cs[p.index(cs.len())].clone());
            let xy = x.multiply(&y).unwrap();
            prop_assert!(xy.validate(&g).is_empty());
            prop_assert!(x.invert().validate(&g).is_empty());
            prop_assert_eq!(&xy, &y.multiply(&x).unwrap());
            prop_assert_eq!(xy.multiply(&z).unwrap(), x.multiply(&y.multiply(&z).unwrap()).unwrap());
            prop_assert!(x.multiply(&x.invert()).unwrap().is_trivial());
        }
    }
}
