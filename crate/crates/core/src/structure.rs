//! Two-sided ideals over a field, uniqueness witnesses, and simplicity.
//!
//! Uniqueness statements about injectivity of homomorphisms are handled
//! through kernels: a homomorphism fails to be injective exactly when its
//! kernel is a nonzero ideal, so the witnesses below take an ideal and
//! produce a set of units whose characteristic function lies in it.
//!
//! Effective means principal at finite scale, so a one-point set of units
//! always suffices: for nonzero `g` with `g(x) ≠ 0` at a unit `x`, the
//! product `1_{x} g 1_{x}` only sees arrows in the isotropy at `x`, which is
//! just `x`, and equals `g(x) 1_{x}`.

use std::collections::BTreeSet;

use crate::algebra::{AlgebraContext, AlgebraElement};
use crate::cocycle::Grading;
use crate::coefficients::RingElement;
use crate::error::{Error, Result};

/// A subspace of `A_F(G, σ)` in reduced row echelon form over the `δ` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    rows: Vec<Vec<RingElement>>,
    pivots: Vec<usize>,
    ambient: usize,
}

impl Ideal {
    pub fn zero(ctx: &AlgebraContext) -> Self {
        Self {
            rows: Vec::new(),
            pivots: Vec::new(),
            ambient: ctx.dimension(),
        }
    }

    pub fn whole(ctx: &AlgebraContext) -> Self {
        let mut i = Self::zero(ctx);
        for a in ctx.groupoid().arrows() {
            i.insert(ctx, &ctx.coordinates(&ctx.delta(a)));
        }
        i
    }

    /// The span of `fs`, not closed under multiplication.
    pub fn span(ctx: &AlgebraContext, fs: &[AlgebraElement]) -> Result<Self> {
        require_field(ctx)?;
        let mut i = Self::zero(ctx);
        for f in fs {
            i.insert(ctx, &ctx.coordinates(f));
        }
        Ok(i)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self, ctx: &AlgebraContext) -> Vec<AlgebraElement> {
        self.rows.iter().map(|r| ctx.from_coordinates(r)).collect()
    }

    fn reduce(&self, ctx: &AlgebraContext, v: &mut [RingElement]) {
        let r = ctx.ring();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !r.is_zero(y) {
                    *x = r.sub(x, &r.mul(&c, y));
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    fn insert(&mut self, ctx: &AlgebraContext, v: &[RingElement]) -> bool {
        let r = ctx.ring();
        let mut v = v.to_vec();
        self.reduce(ctx, &mut v);
        let Some(p) = v.iter().position(|x| !r.is_zero(x)) else {
            return false;
        };
        let inv = r.inv(&v[p]).expect("field coefficients");
        for x in v.iter_mut() {
            *x = r.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if r.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !r.is_zero(y) {
                    *x = r.sub(x, &r.mul(&c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, ctx: &AlgebraContext, f: &AlgebraElement) -> bool {
        let mut v = ctx.coordinates(f);
        self.reduce(ctx, &mut v);
        v.iter().all(|x| ctx.ring().is_zero(x))
    }

    /// Whether every `δ_γ v` and `v δ_γ` lies in the span.
    pub fn is_closed(&self, ctx: &AlgebraContext) -> bool {
        self.basis(ctx).iter().all(|v| {
            ctx.groupoid().arrows().all(|a| {
                let d = ctx.delta(a);
                self.contains(ctx, &ctx.convolve(&d, v)) && self.contains(ctx, &ctx.convolve(v, &d))
            })
        })
    }
}

fn require_field(ctx: &AlgebraContext) -> Result<()> {
    if ctx.ring().is_field() {
        Ok(())
    } else {
        Err(Error::UnsupportedRing(format!(
            "ideal computations need a field, got {}",
            ctx.ring()
        )))
    }
}

/// The smallest two-sided ideal containing `fs`: the span of `δ_α f δ_β`.
pub fn ideal_generated(ctx: &AlgebraContext, fs: &[AlgebraElement]) -> Result<Ideal> {
    require_field(ctx)?;
    Ok(close(ctx, Ideal::zero(ctx), fs))
}

fn close(ctx: &AlgebraContext, mut ideal: Ideal, fs: &[AlgebraElement]) -> Ideal {
    let mut work: Vec<AlgebraElement> = Vec::new();
    for f in fs {
        if ideal.insert(ctx, &ctx.coordinates(f)) {
            work.push(f.clone());
        }
    }
    let deltas: Vec<AlgebraElement> = ctx.groupoid().arrows().map(|a| ctx.delta(a)).collect();
    while let Some(v) = work.pop() {
        if ideal.is_whole() {
            break;
        }
        for d in &deltas {
            for w in [ctx.convolve(d, &v), ctx.convolve(&v, d)] {
                if ideal.insert(ctx, &ctx.coordinates(&w)) {
                    work.push(w);
                }
            }
        }
    }
    ideal
}

fn unit_set_element(ctx: &AlgebraContext, units: &BTreeSet<usize>) -> AlgebraElement {
    AlgebraElement::from_map(ctx.ring(), units.iter().map(|&u| (u, ctx.ring().one())))
}

/// A nonempty set of units `V` with `1_V ∈ I`, for effective `G`.
pub fn ck_witness(ctx: &AlgebraContext, ideal: &Ideal) -> Result<BTreeSet<usize>> {
    require_field(ctx)?;
    let g = ctx.groupoid();
    if !g.is_effective() {
        return Err(Error::Precondition("the groupoid is not effective".into()));
    }
    let f = ideal
        .basis(ctx)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Precondition("the ideal is zero".into()))?;
    let gamma = *f.coeffs().keys().next().expect("basis vectors are nonzero");
    let h = ctx.convolve(&ctx.delta(g.inv(gamma)), &f);
    let v: BTreeSet<usize> = [g.src(gamma)].into();
    let one_v = unit_set_element(ctx, &v);
    debug_assert!(!ctx.ring().is_zero(&ctx.coeff(&h, g.src(gamma))));
    debug_assert_eq!(
        ctx.convolve(&ctx.convolve(&one_v, &h), &one_v),
        ctx.scale(&ctx.coeff(&h, g.src(gamma)), &one_v)
    );
    if !ideal.contains(ctx, &one_v) {
        return Err(Error::Precondition("witness failed membership; the input is not an ideal".into()));
    }
    Ok(v)
}

/// Whether every graded component of every basis vector lies in `I`.
pub fn is_graded_ideal(ctx: &AlgebraContext, ideal: &Ideal, c: &Grading) -> Result<bool> {
    for v in ideal.basis(ctx) {
        for comp in ctx.graded_components(&v, c)?.values() {
            if !ideal.contains(ctx, comp) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A nonempty set of units `K` with `1_K ∈ I`, for a graded ideal when the
/// degree-`e` subgroupoid `c⁻¹(e)` is effective.
pub fn graded_ck_witness(ctx: &AlgebraContext, c: &Grading, ideal: &Ideal) -> Result<BTreeSet<usize>> {
    require_field(ctx)?;
    let g = ctx.groupoid();
    let kernel = c.kernel_arrows(g);
    if kernel.iter().any(|&a| !g.is_unit(a) && g.src(a) == g.rng(a)) {
        return Err(Error::Precondition("the degree-e subgroupoid is not effective".into()));
    }
    if ideal.is_zero() {
        return Err(Error::Precondition("the ideal is zero".into()));
    }
    if !is_graded_ideal(ctx, ideal, c)? {
        return Err(Error::Precondition("the ideal is not graded".into()));
    }
    let v = ideal.basis(ctx).into_iter().next().expect("nonzero ideal");
    let (_, comp) = ctx
        .graded_components(&v, c)?
        .into_iter()
        .next()
        .expect("nonzero vector has a component");
    let alpha = *comp.coeffs().keys().next().expect("nonzero component");
    let f = ctx.convolve(&ctx.delta(g.inv(alpha)), &comp);
    debug_assert!(f.coeffs().keys().all(|&a| c.degree(a) == c.group().identity()));
    let x = g.src(alpha);
    debug_assert!(!ctx.ring().is_zero(&ctx.coeff(&f, x)));
    let k: BTreeSet<usize> = [x].into();
    if !ideal.contains(ctx, &unit_set_element(ctx, &k)) {
        return Err(Error::Precondition("witness failed membership; the input is not an ideal".into()));
    }
    Ok(k)
}

/// `A(G_U) = span{δ_γ : s(γ) ∈ U}` for invariant `U`.
pub fn restriction_ideal(ctx: &AlgebraContext, units: &BTreeSet<usize>) -> Result<Ideal> {
    let arrows = ctx.groupoid().restriction_arrows(units)?;
    let fs: Vec<AlgebraElement> = arrows.into_iter().map(|a| ctx.delta(a)).collect();
    Ideal::span(ctx, &fs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplicityMode {
    /// Scan every nonzero element up to scalars; `cap` bounds `|F|^|G|`.
    Exhaustive { cap: u128 },
    /// Decide through minimality; only for effective groupoids.
    Structural,
}

pub const DEFAULT_CAP: u128 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonSimplicity {
    /// The first element, in scan order, generating a proper ideal.
    Element { element: AlgebraElement, ideal: Ideal },
    /// A nontrivial invariant set `U` with the proper ideal `A(G_U)`.
    Invariant { units: BTreeSet<usize>, ideal: Ideal },
}

impl NonSimplicity {
    pub fn ideal(&self) -> &Ideal {
        match self {
            NonSimplicity::Element { ideal, .. } | NonSimplicity::Invariant { ideal, .. } => ideal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicityVerdict {
    Simple,
    NotSimple(Box<NonSimplicity>),
    Unknown(String),
}

impl SimplicityVerdict {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            SimplicityVerdict::Simple => Some(true),
            SimplicityVerdict::NotSimple(_) => Some(false),
            SimplicityVerdict::Unknown(_) => None,
        }
    }
}

pub fn is_simple(ctx: &AlgebraContext, mode: SimplicityMode) -> Result<SimplicityVerdict> {
    require_field(ctx)?;
    match mode {
        SimplicityMode::Exhaustive { cap } => exhaustive(ctx, cap),
        SimplicityMode::Structural => structural(ctx),
    }
}

fn structural(ctx: &AlgebraContext) -> Result<SimplicityVerdict> {
    let g = ctx.groupoid();
    if !g.is_effective() {
        return Ok(SimplicityVerdict::Unknown(
            "the groupoid is not effective, so minimality does not decide simplicity".into(),
        ));
    }
    if g.is_minimal() {
        return Ok(SimplicityVerdict::Simple);
    }
    let units: BTreeSet<usize> = g.orbits()[0].iter().copied().collect();
    let ideal = restriction_ideal(ctx, &units)?;
    debug_assert!(ideal.is_closed(ctx) && !ideal.is_zero() && !ideal.is_whole());
    Ok(SimplicityVerdict::NotSimple(Box::new(NonSimplicity::Invariant { units, ideal })))
}

/// Elements are scanned up to scalars: the first nonzero coordinate is `1`.
/// Order: the leading position runs from the last arrow to the first, and
/// the trailing coordinates count lexicographically in field order.
fn exhaustive(ctx: &AlgebraContext, cap: u128) -> Result<SimplicityVerdict> {
    let r = ctx.ring();
    let field = r.elements().ok_or_else(|| {
        Error::UnsupportedRing(format!("exhaustive mode needs a finite field, got {r}"))
    })?;
    let m = ctx.dimension();
    let q = field.len() as u128;
    let needed = q.checked_pow(m as u32).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    if m == 0 {
        return Ok(SimplicityVerdict::Unknown("the zero algebra".into()));
    }
    for lead in (0..m).rev() {
        let tail = m - lead - 1;
        let mut digits = vec![0usize; tail];
        loop {
            let mut v = vec![r.zero(); m];
            v[lead] = r.one();
            for (j, &d) in digits.iter().enumerate() {
                v[lead + 1 + j] = field[d].clone();
            }
            let f = ctx.from_coordinates(&v);
            let ideal = ideal_generated(ctx, std::slice::from_ref(&f))?;
            if !ideal.is_whole() {
                return Ok(SimplicityVerdict::NotSimple(Box::new(NonSimplicity::Element {
                    element: f,
                    ideal,
                })));
            }
            let mut j = tail;
            loop {
                if j == 0 {
                    break;
                }
                j -= 1;
                digits[j] += 1;
                if digits[j] < field.len() {
                    break;
                }
                digits[j] = 0;
                if j == 0 {
                    j = usize::MAX;
                    break;
                }
            }
            if j == usize::MAX || tail == 0 || digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok(SimplicityVerdict::Simple)
}
