//! Deterministic fixtures: groupoids, cocycles, gradings and rings.
//!
//! Index layouts are fixed so that emitted files are stable. Pair groupoids
//! put `(i,j)` at `(i-1)·n + (j-1)`; action groupoids put `(g,x)` at
//! `g·|X| + x`, so the units `(e,x)` come first.

use crate::cocycle::{Coboundary, Grading, GradingGroup, TwoCocycle};
use crate::coefficients::{Involution, Ring};
use crate::error::{Error, Result, Violation};
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub groupoid: FiniteGroupoid,
    pub effective: bool,
    pub minimal: bool,
    pub orbits: usize,
    pub dimension: usize,
}

impl CatalogEntry {
    fn new(
        name: &'static str,
        description: &'static str,
        groupoid: FiniteGroupoid,
        (effective, minimal, orbits): (bool, bool, usize),
    ) -> Self {
        let e = Self {
            name,
            description,
            dimension: groupoid.len(),
            groupoid,
            effective,
            minimal,
            orbits,
        };
        e.check();
        e
    }

    fn check(&self) {
        let g = &self.groupoid;
        assert!(g.validate().is_empty(), "{} fails validation", self.name);
        assert_eq!(g.is_effective(), self.effective, "{} effective", self.name);
        assert_eq!(g.is_minimal(), self.minimal, "{} minimal", self.name);
        assert_eq!(g.orbits().len(), self.orbits, "{} orbits", self.name);
    }
}

pub fn pair_groupoid(n: usize) -> Result<FiniteGroupoid> {
    if n == 0 {
        return Err(Error::Precondition("a pair groupoid needs at least one unit".into()));
    }
    let at = |i: usize, j: usize| i * n + j;
    let mut labels = Vec::with_capacity(n * n);
    let (mut src, mut rng, mut inv) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..n {
        for j in 0..n {
            labels.push(format!("({},{})", i + 1, j + 1));
            src.push(at(j, j));
            rng.push(at(i, i));
            inv.push(at(j, i));
        }
    }
    let units: Vec<usize> = (0..n).map(|i| at(i, i)).collect();
    let mut comps = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                comps.push((at(i, j), at(j, k), at(i, k)));
            }
        }
    }
    FiniteGroupoid::new(labels, &units, src, rng, inv, &comps)
}

fn cyclic_generator_labels(group: &FiniteGroup) -> Option<Vec<String>> {
    let n = group.order();
    if n < 2 || group.element_order(1) != n {
        return None;
    }
    let mut x = 0;
    for k in 0..n {
        if x != k {
            return None;
        }
        x = group.mul(x, 1);
    }
    Some(
        (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect(),
    )
}

/// The default element labels: `e, g, g^2, …` when element `k` is the
/// `k`-th power of element `1`, otherwise `e, x1, x2, …`.
pub fn default_group_labels(group: &FiniteGroup) -> Vec<String> {
    cyclic_generator_labels(group).unwrap_or_else(|| {
        (0..group.order())
            .map(|k| if k == 0 { "e".to_string() } else { format!("x{k}") })
            .collect()
    })
}

pub fn group_groupoid(group: &FiniteGroup) -> FiniteGroupoid {
    group_groupoid_labelled(group, default_group_labels(group)).expect("default labels")
}

pub fn group_groupoid_labelled(group: &FiniteGroup, labels: Vec<String>) -> Result<FiniteGroupoid> {
    let n = group.order();
    if labels.len() != n {
        return Err(Error::Precondition(format!("{} labels for a group of order {n}", labels.len())));
    }
    let mut comps = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            comps.push((a, b, group.mul(a, b)));
        }
    }
    FiniteGroupoid::new(labels, &[0], vec![0; n], vec![0; n], (0..n).map(|a| group.inv(a)).collect(), &comps)
}

pub fn group_groupoid_from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroupoid> {
    Ok(group_groupoid(&FiniteGroup::from_table(table)?))
}

/// The transformation groupoid of `group` acting on `0..k` through
/// `action[g]`, a permutation with `action[g][x] = g·x`.
pub fn action_groupoid(group: &FiniteGroup, glabels: &[String], action: &[Vec<usize>]) -> Result<FiniteGroupoid> {
    let n = group.order();
    if action.len() != n || glabels.len() != n {
        return Err(Error::Precondition("one permutation and one label per group element".into()));
    }
    let k = action[0].len();
    let mut violations = Vec::new();
    for (g, p) in action.iter().enumerate() {
        let mut seen = vec![false; k];
        if p.len() != k || p.iter().any(|&x| x >= k || std::mem::replace(&mut seen[x], true)) {
            violations.push(Violation::new("permutation", format!("element {} does not permute the set", glabels[g])));
        }
    }
    if violations.is_empty() {
        if action[0].iter().enumerate().any(|(x, &y)| x != y) {
            violations.push(Violation::new("identity", "the identity moves a point"));
        }
        for g in 0..n {
            for h in 0..n {
                if (0..k).any(|x| action[g][action[h][x]] != action[group.mul(g, h)][x]) {
                    violations.push(Violation::new(
                        "homomorphism",
                        format!("{}·({}·x) ≠ ({}{})·x", glabels[g], glabels[h], glabels[g], glabels[h]),
                    ));
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(Error::invalid("action", violations));
    }
    let at = |g: usize, x: usize| g * k + x;
    let mut labels = Vec::with_capacity(n * k);
    let (mut src, mut rng, mut inv) = (Vec::new(), Vec::new(), Vec::new());
    for g in 0..n {
        for x in 0..k {
            labels.push(format!("({},{})", glabels[g], x + 1));
            src.push(at(0, x));
            rng.push(at(0, action[g][x]));
            inv.push(at(group.inv(g), action[g][x]));
        }
    }
    let mut comps = Vec::new();
    for g in 0..n {
        for h in 0..n {
            for x in 0..k {
                comps.push((at(g, action[h][x]), at(h, x), at(group.mul(g, h), x)));
            }
        }
    }
    let units: Vec<usize> = (0..k).collect();
    FiniteGroupoid::new(labels, &units, src, rng, inv, &comps)
}

pub fn disjoint_union(a: &FiniteGroupoid, b: &FiniteGroupoid) -> FiniteGroupoid {
    a.disjoint_union(b)
}

/// Every normalised table with values in `Z/n` passing the cocycle identity,
/// in lexicographic order of the free entries (first free pair most
/// significant). Free pairs are composable pairs of non-units.
pub fn enumerate_cocycles(g: &FiniteGroupoid, order: u32, cap: u128) -> Result<Vec<TwoCocycle>> {
    if order == 0 {
        return Err(Error::Precondition("cocycle order must be positive".into()));
    }
    let free: Vec<(usize, usize)> = g
        .composable_pairs()
        .into_iter()
        .filter(|&(a, b, _)| !g.is_unit(a) && !g.is_unit(b))
        .map(|(a, b, _)| (a, b))
        .collect();
    let needed = (order as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    // Triples whose identity becomes checkable once the free pair at a given
    // position is assigned.
    let position: std::collections::BTreeMap<(usize, usize), usize> =
        free.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let pos = |a: usize, b: usize| position.get(&(a, b)).copied();
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); free.len()];
    for &(a, b, ab) in &g.composable_pairs() {
        for c in g.arrows() {
            let Some(bc) = g.compose(b, c) else { continue };
            let ps = [pos(a, b), pos(ab, c), pos(b, c), pos(a, bc)];
            if let Some(last) = ps.iter().flatten().max() {
                checks[*last].push((a, b, c));
            }
        }
    }
    let mut out = Vec::new();
    let mut current = TwoCocycle::trivial(g, order);
    search(g, &free, &checks, 0, &mut current, &mut out);
    Ok(out)
}

fn search(
    g: &FiniteGroupoid,
    free: &[(usize, usize)],
    checks: &[Vec<(usize, usize, usize)>],
    i: usize,
    current: &mut TwoCocycle,
    out: &mut Vec<TwoCocycle>,
) {
    if i == free.len() {
        debug_assert!(current.validate(g).is_empty());
        out.push(current.clone());
        return;
    }
    let n = current.order();
    let (a, b) = free[i];
    for k in 0..n {
        current.set(a, b, k);
        let ok = checks[i].iter().all(|&(x, y, z)| {
            let xy = g.compose(x, y).expect("composable");
            let yz = g.compose(y, z).expect("composable");
            (current.get(x, y) + current.get(xy, z)) % n == (current.get(y, z) + current.get(x, yz)) % n
        });
        if ok {
            search(g, free, checks, i + 1, current, out);
        }
    }
    current.set(a, b, 0);
}

fn labels(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| s.to_string()).collect()
}

fn z2_labels() -> Vec<String> {
    labels(&["e", "g"])
}

pub fn klein_four() -> FiniteGroup {
    FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2))
}

pub fn symmetric3() -> FiniteGroup {
    FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]])
}

pub fn dihedral4() -> FiniteGroup {
    FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]])
}

fn build(name: &str) -> Option<CatalogEntry> {
    let z2 = FiniteGroup::cyclic(2);
    let e = match name {
        "R1" | "R2" | "R3" | "R4" => {
            let n = name[1..].parse().expect("digit");
            let (label, desc) = match n {
                1 => ("R1", "trivial groupoid"),
                2 => ("R2", "pair groupoid on 2 units"),
                3 => ("R3", "pair groupoid on 3 units"),
                _ => ("R4", "pair groupoid on 4 units"),
            };
            CatalogEntry::new(label, desc, pair_groupoid(n).expect("n ≥ 1"), (true, true, 1))
        }
        "Z2" => CatalogEntry::new("Z2", "cyclic group of order 2", group_groupoid(&z2), (false, true, 1)),
        "Z3" => CatalogEntry::new("Z3", "cyclic group of order 3", group_groupoid(&FiniteGroup::cyclic(3)), (false, true, 1)),
        "Z4" => CatalogEntry::new("Z4", "cyclic group of order 4", group_groupoid(&FiniteGroup::cyclic(4)), (false, true, 1)),
        "K4" => CatalogEntry::new(
            "K4",
            "Klein four-group",
            group_groupoid_labelled(&klein_four(), labels(&["e", "a", "b", "c"])).expect("labels"),
            (false, true, 1),
        ),
        "S3" => CatalogEntry::new("S3", "symmetric group on 3 letters", group_groupoid(&symmetric3()), (false, true, 1)),
        "D4" => CatalogEntry::new("D4", "dihedral group of order 8", group_groupoid(&dihedral4()), (false, true, 1)),
        "Q8" => CatalogEntry::new(
            "Q8",
            "quaternion group",
            group_groupoid_labelled(&FiniteGroup::quaternion(), labels(&["1", "i", "j", "k", "-1", "-i", "-j", "-k"]))
                .expect("labels"),
            (false, true, 1),
        ),
        "Z2swap" => CatalogEntry::new(
            "Z2swap",
            "Z/2 swapping two points",
            action_groupoid(&z2, &z2_labels(), &[vec![0, 1], vec![1, 0]]).expect("action"),
            (true, true, 1),
        ),
        "Z2fix3" => CatalogEntry::new(
            "Z2fix3",
            "Z/2 swapping two of three points",
            action_groupoid(&z2, &z2_labels(), &[vec![0, 1, 2], vec![1, 0, 2]]).expect("action"),
            (false, false, 2),
        ),
        "R2+R2" => {
            let r2 = pair_groupoid(2).expect("n ≥ 1");
            CatalogEntry::new("R2+R2", "two copies of R2", r2.disjoint_union(&r2), (true, false, 2))
        }
        "R2+Z2" => CatalogEntry::new(
            "R2+Z2",
            "R2 beside the group Z/2",
            pair_groupoid(2).expect("n ≥ 1").disjoint_union(&group_groupoid(&z2)),
            (false, false, 2),
        ),
        _ => return None,
    };
    Some(e)
}

pub const NAMES: [&str; 15] = [
    "R1", "R2", "R3", "R4", "Z2", "Z3", "Z4", "K4", "S3", "D4", "Q8", "Z2swap", "Z2fix3", "R2+R2", "R2+Z2",
];

pub fn entries() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| build(n).expect("listed")).collect()
}

pub fn entry(name: &str) -> Option<CatalogEntry> {
    build(name)
}

fn arrow(g: &FiniteGroupoid, label: &str) -> usize {
    g.index_of(label).expect("catalog label")
}

fn coboundary_of(g: &FiniteGroupoid, order: u32, values: &[(&str, u32)]) -> TwoCocycle {
    let mut v = vec![0; g.len()];
    for &(l, k) in values {
        v[arrow(g, l)] = k;
    }
    let b = Coboundary::new(g, order, v).expect("vanishes on units");
    TwoCocycle::trivial(g, order).apply_coboundary(g, &b).expect("same context")
}

pub const COCYCLE_NAMES: [&str; 6] = ["z2_neg", "z4_carry", "k4_bilinear", "r2_cob", "r3_cob", "swap_cob"];

/// A named cocycle and the catalog entry it lives on.
pub fn named_cocycle(name: &str) -> Option<(&'static str, TwoCocycle)> {
    let (base, sigma) = match name {
        "z2_neg" => {
            let g = entry("Z2")?.groupoid;
            ("Z2", TwoCocycle::new(&g, 2, [(1, 1, 1)]).expect("valid"))
        }
        "z4_carry" => {
            let g = entry("Z4")?.groupoid;
            let entries = (1..4).flat_map(|a| (1..4).map(move |b| (a, b, u32::from(a + b >= 4))));
            ("Z4", TwoCocycle::new(&g, 4, entries).expect("valid"))
        }
        "k4_bilinear" => {
            let g = entry("K4")?.groupoid;
            let entries = (0..4).flat_map(|a| (0..4).map(move |b| (a, b, ((a / 2) * (b % 2)) as u32)));
            ("K4", TwoCocycle::new(&g, 2, entries).expect("valid"))
        }
        "r2_cob" => ("R2", coboundary_of(&entry("R2")?.groupoid, 2, &[("(1,2)", 1)])),
        "r3_cob" => ("R3", coboundary_of(&entry("R3")?.groupoid, 2, &[("(1,2)", 1)])),
        "swap_cob" => ("Z2swap", coboundary_of(&entry("Z2swap")?.groupoid, 2, &[("(g,1)", 1)])),
        _ => return None,
    };
    Some((base, sigma))
}

pub const GRADING_NAMES: [&str; 5] = ["z2_id", "z4_id", "r2_diff", "r3_diff", "swap_z2"];

fn difference_grading(n: usize) -> Grading {
    let g = pair_groupoid(n).expect("n ≥ 1");
    let degrees = (0..n * n).map(|a| (a / n) as i64 - (a % n) as i64).collect();
    Grading::new(&g, GradingGroup::Integers, degrees).expect("valid")
}

/// A named grading and the catalog entry it lives on.
pub fn named_grading(name: &str) -> Option<(&'static str, Grading)> {
    let cyclic = |n: usize| GradingGroup::Finite(FiniteGroup::cyclic(n));
    let out = match name {
        "z2_id" => ("Z2", Grading::new(&entry("Z2")?.groupoid, cyclic(2), vec![0, 1]).expect("valid")),
        "z4_id" => ("Z4", Grading::new(&entry("Z4")?.groupoid, cyclic(4), vec![0, 1, 2, 3]).expect("valid")),
        "r2_diff" => ("R2", difference_grading(2)),
        "r3_diff" => ("R3", difference_grading(3)),
        "swap_z2" => ("Z2swap", Grading::new(&entry("Z2swap")?.groupoid, cyclic(2), vec![0, 0, 1, 1]).expect("valid")),
        _ => return None,
    };
    Some(out)
}

/// Coefficient rings paired with an involution under which the standard
/// unit subgroup of the given order is closed under inversion.
pub fn ring_contexts() -> Vec<(Ring, Involution, u32)> {
    vec![
        (Ring::integers(), Involution::Identity, 2),
        (Ring::rationals(), Involution::Identity, 2),
        (Ring::cyclotomic(4).expect("n = 4"), Involution::Conjugation, 4),
        (Ring::prime_field(5).expect("prime"), Involution::Identity, 2),
        (Ring::quadratic_field(3).expect("prime"), Involution::Frobenius, 4),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{check_t_inverse_involution, UnitSubgroup};

    #[test]
    fn pair_groupoid_examples() {
        assert!(pair_groupoid(0).is_err());
        let r1 = pair_groupoid(1).unwrap();
        assert_eq!(r1.len(), 1);
        let r2 = pair_groupoid(2).unwrap();
        assert_eq!((r2.len(), r2.units().len()), (4, 2));
        let r3 = pair_groupoid(3).unwrap();
        assert!(r3.is_effective() && r3.is_minimal());
        assert_eq!(r3.compose(arrow(&r3, "(1,2)"), arrow(&r3, "(2,3)")), Some(arrow(&r3, "(1,3)")));
    }

    #[test]
    fn group_groupoid_examples() {
        let z2 = entry("Z2").unwrap().groupoid;
        assert_eq!(z2.len(), 2);
        assert!(!z2.is_effective());
        assert_eq!(entry("Z4").unwrap().groupoid.labels(), ["e", "g", "g^2", "g^3"]);
        assert!(group_groupoid_from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        let k4 = entry("K4").unwrap().groupoid;
        assert!(k4.validate().is_empty());
        assert!(k4.arrows().all(|a| k4.compose(a, a) == Some(0)));
        let z4 = entry("Z4").unwrap().groupoid;
        assert!(z4.arrows().any(|a| z4.compose(a, a) != Some(0)));
        assert_eq!(group_groupoid(&symmetric3()).len(), 6);
        assert!(!symmetric3().is_abelian());
        assert_eq!(dihedral4().order(), 8);
    }

    #[test]
    fn action_groupoid_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let swap = entry("Z2swap").unwrap().groupoid;
        assert_eq!(swap.len(), 4);
        assert!(swap.is_effective() && swap.is_minimal());

        let trivial = action_groupoid(&z2, &z2_labels(), &[vec![0], vec![0]]).unwrap();
        let z2g = group_groupoid(&z2);
        assert_eq!(trivial.len(), 2);
        for a in trivial.arrows() {
            for b in trivial.arrows() {
                assert_eq!(trivial.compose(a, b), z2g.compose(a, b));
            }
        }

        let fix = entry("Z2fix3").unwrap().groupoid;
        assert!(!fix.is_effective() && !fix.is_minimal());
        assert_eq!(fix.isotropy(), vec![0, 1, 2, 5]);

        let bad = action_groupoid(&FiniteGroup::cyclic(3), &labels(&["e", "g", "h"]), &[vec![0, 1], vec![1, 0], vec![1, 0]]);
        assert!(bad.is_err());
        assert!(action_groupoid(&z2, &z2_labels(), &[vec![0, 0], vec![1, 0]]).is_err());
    }

    #[test]
    fn disjoint_union_examples() {
        assert_eq!(entry("R2+R2").unwrap().groupoid.orbits().len(), 2);
        let r3 = pair_groupoid(3).unwrap();
        assert_eq!(disjoint_union(&r3, &FiniteGroupoid::empty()), r3);
        assert!(!entry("R2+Z2").unwrap().groupoid.is_effective());
    }

    #[test]
    fn enumerate_cocycles_examples() {
        let z2 = entry("Z2").unwrap().groupoid;
        let cs = enumerate_cocycles(&z2, 2, 1 << 10).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[1], named_cocycle("z2_neg").unwrap().1);
        for n in 1..5 {
            assert_eq!(enumerate_cocycles(&pair_groupoid(1).unwrap(), n, 1).unwrap().len(), 1);
        }
        let r2 = pair_groupoid(2).unwrap();
        let triv = TwoCocycle::trivial(&r2, 2);
        for c in enumerate_cocycles(&r2, 2, 1 << 10).unwrap() {
            assert!(c.cohomologous_witness(&r2, &triv).unwrap().is_some());
        }
        assert!(matches!(enumerate_cocycles(&entry("Z4").unwrap().groupoid, 2, 8), Err(Error::CapExceeded { .. })));
    }

    /// Oracle: filter every table by the validator.
    fn brute_cocycles(g: &FiniteGroupoid, n: u32) -> Vec<TwoCocycle> {
        let free: Vec<(usize, usize)> = g
            .composable_pairs()
            .into_iter()
            .filter(|&(a, b, _)| !g.is_unit(a) && !g.is_unit(b))
            .map(|(a, b, _)| (a, b))
            .collect();
        let total = (n as usize).pow(free.len() as u32);
        (0..total)
            .filter_map(|mut code| {
                let mut vals = vec![0; free.len()];
                for v in vals.iter_mut().rev() {
                    *v = (code % n as usize) as u32;
                    code /= n as usize;
                }
                let c = TwoCocycle::from_entries(g, n, free.iter().zip(vals).map(|(&(a, b), k)| (a, b, k))).unwrap();
                c.validate(g).is_empty().then_some(c)
            })
            .collect()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (name, n) in [("Z2", 3), ("Z3", 3), ("Z4", 2), ("R2", 3), ("Z2swap", 2), ("K4", 2)] {
            let g = entry(name).unwrap().groupoid;
            assert_eq!(enumerate_cocycles(&g, n, 1 << 20).unwrap(), brute_cocycles(&g, n), "{name}");
        }
    }

    #[test]
    fn enumeration_is_closed_under_group_operations() {
        for (name, n) in [("Z2", 2), ("Z4", 2), ("K4", 2), ("R2", 3)] {
            let g = entry(name).unwrap().groupoid;
            let cs = enumerate_cocycles(&g, n, 1 << 20).unwrap();
            for x in &cs {
                assert!(cs.contains(&x.invert()));
                for y in &cs {
                    assert!(cs.contains(&x.multiply(y).unwrap()));
                }
            }
        }
    }

    #[test]
    fn entries_recompute_their_facts() {
        for e in entries() {
            e.check();
            assert!(e.groupoid.units().len() <= 6);
            assert!(e.dimension <= 64);
            assert_eq!(entry(e.name).unwrap().groupoid, e.groupoid);
        }
        assert!(entry("nope").is_none());
    }

    #[test]
    fn named_objects_validate() {
        for name in COCYCLE_NAMES {
            let (base, sigma) = named_cocycle(name).unwrap();
            assert!(sigma.validate(&entry(base).unwrap().groupoid).is_empty(), "{name}");
        }
        for name in GRADING_NAMES {
            let (base, c) = named_grading(name).unwrap();
            assert!(c.validate(&entry(base).unwrap().groupoid).is_empty(), "{name}");
        }
        let k4 = entry("K4").unwrap().groupoid;
        let bil = named_cocycle("k4_bilinear").unwrap().1;
        assert!(bil.cohomologous_witness(&k4, &TwoCocycle::trivial(&k4, 2)).unwrap().is_none());
    }

    #[test]
    fn ring_contexts_are_t_inverse() {
        for (ring, conj, n) in ring_contexts() {
            let t = UnitSubgroup::standard(&ring, n).unwrap();
            assert!(check_t_inverse_involution(&ring, conj, &t), "{ring}");
        }
    }
}
