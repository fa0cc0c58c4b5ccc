//! Exact coefficient rings.
//!
//! Five kinds of commutative unital ring are supported, each with a canonical
//! normal form so that equality is structural:
//!
//! * `Z` and `Q` (arbitrary precision),
//! * `GF(p)` as residues in `0..p`,
//! * `GF(p^2)` as `a + b*t` with `t` a fixed root of a monic irreducible quadratic,
//! * `Q(zeta_n)` as coordinates in the power basis `1, zeta, .., zeta^(phi(n)-1)`,
//!   reduced by the `n`-th cyclotomic polynomial.
//!
//! A [`UnitSubgroup`] is a finite cyclic subgroup of the units, addressed by
//! exponents of a fixed generator. An [`Involution`] is a ring automorphism of
//! order at most two; it is *T-inverse* for a subgroup when it maps every
//! element of the subgroup to its inverse.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Rationals,
    PrimeField(u64),
    QuadraticGaloisField(u64),
    CyclotomicField(u32),
}

/// An element of one of the supported rings, always in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingElement {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    /// `a + b*t` in `GF(p^2)`.
    Quad(u64, u64),
    /// Power-basis coordinates in `Q(zeta_n)`, length `phi(n)`.
    Cyc(Vec<BigRational>),
}

#[derive(Debug)]
struct Cyclotomic {
    n: u32,
    /// Monic cyclotomic polynomial, low degree first.
    modulus: Vec<BigInt>,
}

impl Cyclotomic {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct Ring {
    kind: RingKind,
    cyclotomic: Option<Arc<Cyclotomic>>,
    /// `t^2 = c0 + c1*t` for `GF(p^2)`.
    quad: (u64, u64),
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Ring {}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn residue(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// The `n`-th cyclotomic polynomial, low degree first.
fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_div_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (dd..num.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dd] = c.clone();
        for (i, di) in den.iter().enumerate() {
            rem[k - dd + i] -= &c * di;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

impl Ring {
    pub fn integers() -> Self {
        Self::from_kind(RingKind::Integers).expect("Z")
    }

    pub fn rationals() -> Self {
        Self::from_kind(RingKind::Rationals).expect("Q")
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        Self::from_kind(RingKind::PrimeField(p))
    }

    pub fn quadratic_field(p: u64) -> Result<Self> {
        Self::from_kind(RingKind::QuadraticGaloisField(p))
    }

    pub fn cyclotomic(n: u32) -> Result<Self> {
        Self::from_kind(RingKind::CyclotomicField(n))
    }

    pub fn from_kind(kind: RingKind) -> Result<Self> {
        let mut ring = Ring {
            kind,
            cyclotomic: None,
            quad: (0, 0),
        };
        match kind {
            RingKind::Integers | RingKind::Rationals => {}
            RingKind::PrimeField(p) => {
                // u32 bound keeps products inside u64 before reduction.
                if !is_prime(p) || p > u32::MAX as u64 {
                    return Err(Error::UnsupportedRing(format!(
                        "GF({p}): modulus must be a prime below 2^32"
                    )));
                }
            }
            RingKind::QuadraticGaloisField(p) => {
                if !is_prime(p) || p > u16::MAX as u64 {
                    return Err(Error::UnsupportedRing(format!(
                        "GF({p}^2): p must be a prime below 2^16"
                    )));
                }
                ring.quad = if p == 2 {
                    (1, 1)
                } else {
                    let d = (2..p)
                        .find(|&d| pow_mod(d, (p - 1) / 2, p) == p - 1)
                        .expect("odd primes have non-residues");
                    (d, 0)
                };
            }
            RingKind::CyclotomicField(n) => {
                if n == 0 || n > 256 {
                    return Err(Error::UnsupportedRing(format!(
                        "Q(zeta_{n}): order must be in 1..=256"
                    )));
                }
                ring.cyclotomic = Some(Arc::new(Cyclotomic {
                    n,
                    modulus: cyclotomic_polynomial(n),
                }));
            }
        }
        Ok(ring)
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    /// Parses `Z`, `Q`, `GF(p)`, `GF(p^2)` or `Q(zeta_n)`. `Z/p` is read as
    /// `GF(p)` and rejected unless `p` is prime.
    pub fn parse(spec: &str) -> Result<Self> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("unknown ring `{spec}`"));
        let kind = match s.as_str() {
            "Z" => RingKind::Integers,
            "Q" => RingKind::Rationals,
            _ => {
                if let Some(inner) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
                    if let Some(p) = inner.strip_suffix("^2") {
                        RingKind::QuadraticGaloisField(p.parse().map_err(|_| bad())?)
                    } else {
                        RingKind::PrimeField(inner.parse().map_err(|_| bad())?)
                    }
                } else if let Some(m) = s.strip_prefix("Z/") {
                    RingKind::PrimeField(m.parse().map_err(|_| bad())?)
                } else if let Some(inner) =
                    s.strip_prefix("Q(zeta_").and_then(|r| r.strip_suffix(')'))
                {
                    RingKind::CyclotomicField(inner.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        };
        Self::from_kind(kind)
    }

    pub fn is_field(&self) -> bool {
        !matches!(self.kind, RingKind::Integers)
    }

    /// Number of elements for finite rings.
    pub fn size(&self) -> Option<u64> {
        match self.kind {
            RingKind::PrimeField(p) => Some(p),
            RingKind::QuadraticGaloisField(p) => Some(p * p),
            _ => None,
        }
    }

    /// All elements of a finite ring, zero first, in the canonical order used
    /// by exhaustive searches.
    pub fn elements(&self) -> Option<Vec<RingElement>> {
        match self.kind {
            RingKind::PrimeField(p) => Some((0..p).map(RingElement::Mod).collect()),
            RingKind::QuadraticGaloisField(p) => Some(
                (0..p)
                    .flat_map(|b| (0..p).map(move |a| RingElement::Quad(a, b)))
                    .collect(),
            ),
            _ => None,
        }
    }

    fn cyc(&self) -> &Cyclotomic {
        self.cyclotomic.as_deref().expect("cyclotomic ring")
    }

    pub fn zero(&self) -> RingElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> RingElement {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> RingElement {
        match self.kind {
            RingKind::Integers => RingElement::Int(v.clone()),
            RingKind::Rationals => RingElement::Rat(BigRational::from_integer(v.clone())),
            RingKind::PrimeField(p) => RingElement::Mod(residue(v, p)),
            RingKind::QuadraticGaloisField(p) => RingElement::Quad(residue(v, p), 0),
            RingKind::CyclotomicField(_) => {
                let mut c = vec![BigRational::zero(); self.cyc().degree()];
                c[0] = BigRational::from_integer(v.clone());
                RingElement::Cyc(c)
            }
        }
    }

    /// Embeds a rational number; fails in `Z` for non-integers and in finite
    /// fields when the denominator vanishes.
    pub fn from_rational(&self, v: &BigRational) -> Result<RingElement> {
        match self.kind {
            RingKind::Integers => {
                if v.is_integer() {
                    Ok(RingElement::Int(v.to_integer()))
                } else {
                    Err(Error::Parse(format!("{v} is not an integer")))
                }
            }
            RingKind::Rationals => Ok(RingElement::Rat(v.clone())),
            RingKind::CyclotomicField(_) => {
                let mut c = vec![BigRational::zero(); self.cyc().degree()];
                c[0] = v.clone();
                Ok(RingElement::Cyc(c))
            }
            RingKind::PrimeField(_) | RingKind::QuadraticGaloisField(_) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                Ok(self.mul(&num, &self.inv(&den)?))
            }
        }
    }

    /// `zeta_n^k` in `Q(zeta_n)`.
    pub fn zeta_power(&self, k: i64) -> Result<RingElement> {
        match self.kind {
            RingKind::CyclotomicField(n) => {
                let e = k.rem_euclid(n as i64) as usize;
                let mut poly = vec![BigRational::zero(); e + 1];
                poly[e] = BigRational::one();
                Ok(RingElement::Cyc(self.reduce_poly(poly)))
            }
            _ => Err(Error::UnsupportedRing(format!(
                "{self} has no distinguished root of unity `zeta`"
            ))),
        }
    }

    /// The generator `t` of `GF(p^2)` over `GF(p)`.
    pub fn quad_generator(&self) -> Result<RingElement> {
        match self.kind {
            RingKind::QuadraticGaloisField(_) => Ok(RingElement::Quad(0, 1)),
            _ => Err(Error::UnsupportedRing(format!("{self} has no generator `t`"))),
        }
    }

    fn reduce_poly(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let cyc = self.cyc();
        let d = cyc.degree();
        for k in (d..poly.len()).rev() {
            let c = std::mem::take(&mut poly[k]);
            if c.is_zero() {
                continue;
            }
            for (i, mi) in cyc.modulus.iter().enumerate().take(d) {
                let m = BigRational::from_integer(mi.clone());
                poly[k - d + i] -= &c * m;
            }
        }
        poly.resize(d, BigRational::zero());
        poly
    }

    pub fn is_zero(&self, x: &RingElement) -> bool {
        match x {
            RingElement::Int(v) => v.is_zero(),
            RingElement::Rat(v) => v.is_zero(),
            RingElement::Mod(v) => *v == 0,
            RingElement::Quad(a, b) => *a == 0 && *b == 0,
            RingElement::Cyc(c) => c.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self, x: &RingElement) -> bool {
        *x == self.one()
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> RingElement {
        use RingElement::*;
        match (x, y) {
            (Int(a), Int(b)) => Int(a + b),
            (Rat(a), Rat(b)) => Rat(a + b),
            (Mod(a), Mod(b)) => {
                let p = self.modulus();
                Mod((a + b) % p)
            }
            (Quad(a, b), Quad(c, d)) => {
                let p = self.modulus();
                Quad((a + c) % p, (b + d) % p)
            }
            (Cyc(a), Cyc(b)) => Cyc(a.iter().zip(b).map(|(u, v)| u + v).collect()),
            _ => panic!("mixed ring elements {x:?} and {y:?}"),
        }
    }

    pub fn neg(&self, x: &RingElement) -> RingElement {
        use RingElement::*;
        match x {
            Int(a) => Int(-a),
            Rat(a) => Rat(-a),
            Mod(a) => {
                let p = self.modulus();
                Mod((p - a) % p)
            }
            Quad(a, b) => {
                let p = self.modulus();
                Quad((p - a) % p, (p - b) % p)
            }
            Cyc(a) => Cyc(a.iter().map(|u| -u).collect()),
        }
    }

    pub fn sub(&self, x: &RingElement, y: &RingElement) -> RingElement {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        use RingElement::*;
        match (x, y) {
            (Int(a), Int(b)) => Int(a * b),
            (Rat(a), Rat(b)) => Rat(a * b),
            (Mod(a), Mod(b)) => Mod(mul_mod(*a, *b, self.modulus())),
            (Quad(a, b), Quad(c, d)) => {
                let p = self.modulus();
                let (c0, c1) = self.quad;
                let bd = mul_mod(*b, *d, p);
                let re = (mul_mod(*a, *c, p) + mul_mod(bd, c0, p)) % p;
                let im = (mul_mod(*a, *d, p) + mul_mod(*b, *c, p) + mul_mod(bd, c1, p)) % p;
                Quad(re, im)
            }
            (Cyc(a), Cyc(b)) => {
                let mut poly = vec![BigRational::zero(); a.len() + b.len() - 1];
                for (i, u) in a.iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    for (j, v) in b.iter().enumerate() {
                        if !v.is_zero() {
                            poly[i + j] += u * v;
                        }
                    }
                }
                Cyc(self.reduce_poly(poly))
            }
            _ => panic!("mixed ring elements {x:?} and {y:?}"),
        }
    }

    pub fn pow(&self, x: &RingElement, mut e: u64) -> RingElement {
        let mut acc = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn modulus(&self) -> u64 {
        match self.kind {
            RingKind::PrimeField(p) | RingKind::QuadraticGaloisField(p) => p,
            _ => unreachable!("modulus of characteristic-zero ring"),
        }
    }

    pub fn is_unit(&self, x: &RingElement) -> bool {
        self.inv(x).is_ok()
    }

    pub fn inv(&self, x: &RingElement) -> Result<RingElement> {
        let fail = || Error::NotInvertible(format!("{} in {self}", self.format(x)));
        if self.is_zero(x) {
            return Err(fail());
        }
        match x {
            RingElement::Int(a) => {
                if a.is_one() || (-a).is_one() {
                    Ok(x.clone())
                } else {
                    Err(fail())
                }
            }
            RingElement::Rat(a) => Ok(RingElement::Rat(a.recip())),
            RingElement::Mod(a) => {
                let p = self.modulus();
                Ok(RingElement::Mod(pow_mod(*a, p - 2, p)))
            }
            RingElement::Quad(..) => {
                let p = self.modulus();
                Ok(self.pow(x, p * p - 2))
            }
            RingElement::Cyc(a) => self.cyc_inverse(a).map(RingElement::Cyc).ok_or_else(fail),
        }
    }

    /// Solves `a * y = 1` as a linear system over `Q` in the power basis.
    fn cyc_inverse(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        let d = a.len();
        // Column j of the multiplication matrix is a * zeta^j.
        let cols: Vec<Vec<BigRational>> = (0..d)
            .map(|j| {
                let mut poly = vec![BigRational::zero(); d + j];
                poly[j..j + d].clone_from_slice(a);
                self.reduce_poly(poly)
            })
            .collect();
        let mut m: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..d).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for c in 0..d {
            let piv = (c..d).find(|&r| !m[r][c].is_zero())?;
            m.swap(c, piv);
            let inv = m[c][c].recip();
            for v in m[c].iter_mut() {
                *v *= &inv;
            }
            for r in 0..d {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=d {
                        let t = &f * &m[c][k];
                        m[r][k] -= t;
                    }
                }
            }
        }
        Some(m.into_iter().map(|row| row[d].clone()).collect())
    }

    /// Canonical text form, free of whitespace.
    pub fn format(&self, x: &RingElement) -> String {
        match x {
            RingElement::Int(a) => a.to_string(),
            RingElement::Rat(a) => a.to_string(),
            RingElement::Mod(a) => a.to_string(),
            RingElement::Quad(a, b) => {
                let terms = [(BigRational::from_integer((*a).into()), 0), (BigRational::from_integer((*b).into()), 1)];
                format_terms(terms.iter().map(|(c, k)| (c, *k)), "t")
            }
            RingElement::Cyc(c) => format_terms(c.iter().zip(0..), "zeta"),
        }
    }

    /// Parses a ring literal: integers, `a/b`, and sums of `c*zeta^k`
    /// (cyclotomic) or `c*t` (quadratic) terms.
    pub fn parse_element(&self, text: &str) -> Result<RingElement> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty ring literal".into()));
        }
        let mut acc = self.zero();
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut i = 0;
        // Split on top-level + and - (not the leading sign, not after '^').
        let mut pieces = Vec::new();
        while i < bytes.len() {
            let c = bytes[i];
            if (c == b'+' || c == b'-') && i > start && bytes[i - 1] != b'^' {
                pieces.push(&s[start..i]);
                start = i;
            }
            i += 1;
        }
        pieces.push(&s[start..]);
        for piece in pieces {
            acc = self.add(&acc, &self.parse_term(piece)?);
        }
        Ok(acc)
    }

    fn parse_term(&self, term: &str) -> Result<RingElement> {
        let bad = || Error::Parse(format!("bad term `{term}` for ring {self}"));
        let (negative, body) = match term.as_bytes().first() {
            Some(b'+') => (false, &term[1..]),
            Some(b'-') => (true, &term[1..]),
            _ => (false, term),
        };
        if body.is_empty() {
            return Err(bad());
        }
        let (coef_text, gen_text) = match body.find(|c: char| c.is_ascii_alphabetic()) {
            None => (body, None),
            Some(pos) => {
                let coef = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                if pos > 0 && !body[..pos].ends_with('*') {
                    return Err(bad());
                }
                (coef, Some(&body[pos..]))
            }
        };
        let coef = if coef_text.is_empty() {
            BigRational::one()
        } else {
            parse_rational(coef_text).ok_or_else(bad)?
        };
        let mut value = self.from_rational(&coef)?;
        if let Some(gen) = gen_text {
            let (name, exp) = match gen.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| bad())?),
                None => (gen, 1),
            };
            let g = match (name, self.kind) {
                ("zeta", RingKind::CyclotomicField(_)) => self.zeta_power(exp)?,
                ("t", RingKind::QuadraticGaloisField(_)) if exp >= 0 => {
                    self.pow(&self.quad_generator()?, exp as u64)
                }
                _ => return Err(bad()),
            };
            value = self.mul(&value, &g);
        }
        Ok(if negative { self.neg(&value) } else { value })
    }

    /// A small random element, used by property suites.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        match self.kind {
            RingKind::Integers => self.from_i64(rng.gen_range(-4..=4)),
            RingKind::Rationals => {
                let num = BigInt::from(rng.gen_range(-5..=5));
                let den = BigInt::from(rng.gen_range(1..=3));
                RingElement::Rat(BigRational::new(num, den))
            }
            RingKind::PrimeField(p) => RingElement::Mod(rng.gen_range(0..p)),
            RingKind::QuadraticGaloisField(p) => {
                RingElement::Quad(rng.gen_range(0..p), rng.gen_range(0..p))
            }
            RingKind::CyclotomicField(_) => RingElement::Cyc(
                (0..self.cyc().degree())
                    .map(|_| BigRational::new(rng.gen_range(-2..=2).into(), rng.gen_range(1..=2).into()))
                    .collect(),
            ),
        }
    }

    /// A random element that is zero with probability about one half, so that
    /// sampled algebra elements have varied supports.
    pub fn random_sparse<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        if rng.gen_bool(0.5) {
            self.zero()
        } else {
            self.random_element(rng)
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn format_terms<'a>(terms: impl Iterator<Item = (&'a BigRational, usize)>, gen: &str) -> String {
    let mut out = String::new();
    for (c, k) in terms {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push(if negative { '-' } else { '+' });
        }
        let power = match k {
            0 => String::new(),
            1 => gen.to_string(),
            _ => format!("{gen}^{k}"),
        };
        if k == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&format!("{mag}*{power}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::PrimeField(p) => write!(f, "GF({p})"),
            RingKind::QuadraticGaloisField(p) => write!(f, "GF({p}^2)"),
            RingKind::CyclotomicField(n) => write!(f, "Q(zeta_{n})"),
        }
    }
}

/// Finite cyclic subgroup `T` of the units, elements addressed by exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSubgroup {
    order: u32,
    powers: Vec<RingElement>,
}

impl UnitSubgroup {
    /// Checks that `generator` has multiplicative order exactly `order`.
    pub fn new(ring: &Ring, generator: RingElement, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::Precondition("unit subgroup order must be positive".into()));
        }
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = ring.one();
        for k in 0..order {
            if k > 0 && ring.is_one(&cur) {
                return Err(Error::NoUnitSubgroup {
                    ring: format!("{ring} generated by {}", ring.format(&generator)),
                    order,
                });
            }
            powers.push(cur.clone());
            cur = ring.mul(&cur, &generator);
        }
        if !ring.is_one(&cur) {
            return Err(Error::NoUnitSubgroup {
                ring: format!("{ring} generated by {}", ring.format(&generator)),
                order,
            });
        }
        Ok(Self { order, powers })
    }

    /// The subgroup of order `order` with a canonical generator: `-1` in `Z`
    /// and `Q`, the first element of exact order in the enumeration of a
    /// finite field, and the first of `zeta^k`, `-zeta^k` in `Q(zeta_n)`.
    pub fn standard(ring: &Ring, order: u32) -> Result<Self> {
        let none = || Error::NoUnitSubgroup {
            ring: ring.to_string(),
            order,
        };
        if order == 0 {
            return Err(none());
        }
        if order == 1 {
            return Self::new(ring, ring.one(), 1);
        }
        let candidates: Vec<RingElement> = match ring.kind() {
            RingKind::Integers | RingKind::Rationals => vec![ring.from_i64(-1)],
            RingKind::PrimeField(_) | RingKind::QuadraticGaloisField(_) => {
                let size = ring.size().expect("finite");
                if !(size - 1).is_multiple_of(order as u64) {
                    return Err(none());
                }
                ring.elements().expect("finite").into_iter().skip(1).collect()
            }
            RingKind::CyclotomicField(n) => {
                let zetas: Vec<RingElement> =
                    (0..n as i64).map(|k| ring.zeta_power(k).expect("cyclotomic")).collect();
                let negs: Vec<RingElement> = zetas.iter().map(|z| ring.neg(z)).collect();
                zetas.into_iter().chain(negs).collect()
            }
        };
        candidates
            .into_iter()
            .find_map(|g| Self::new(ring, g, order).ok())
            .ok_or_else(none)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn generator(&self) -> &RingElement {
        &self.powers[1 % self.order as usize]
    }

    /// `g^k`, exponent reduced mod the order.
    pub fn embed(&self, k: i64) -> &RingElement {
        &self.powers[k.rem_euclid(self.order as i64) as usize]
    }

    pub fn exponent_of(&self, x: &RingElement) -> Option<u32> {
        self.powers.iter().position(|p| p == x).map(|k| k as u32)
    }

    pub fn elements(&self) -> &[RingElement] {
        &self.powers
    }
}

/// Ring involutions available on the supported rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Involution {
    Identity,
    /// `zeta -> zeta^-1` on `Q(zeta_n)`.
    Conjugation,
    /// `x -> x^p` on `GF(p^2)`.
    Frobenius,
}

impl Involution {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "id" => Ok(Involution::Identity),
            "conj" => Ok(Involution::Conjugation),
            "frobenius" => Ok(Involution::Frobenius),
            other => Err(Error::Parse(format!("unknown involution `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Involution::Identity => "id",
            Involution::Conjugation => "conj",
            Involution::Frobenius => "frobenius",
        }
    }

    pub fn is_defined_on(&self, ring: &Ring) -> bool {
        match self {
            Involution::Identity => true,
            Involution::Conjugation => matches!(ring.kind(), RingKind::CyclotomicField(_)),
            Involution::Frobenius => matches!(ring.kind(), RingKind::QuadraticGaloisField(_)),
        }
    }

    pub fn ensure_defined_on(&self, ring: &Ring) -> Result<()> {
        if self.is_defined_on(ring) {
            Ok(())
        } else {
            Err(Error::IncompatibleInvolution {
                involution: self.name().into(),
                ring: ring.to_string(),
            })
        }
    }

    /// Panics when the involution is not defined on `ring`; callers validate
    /// with [`Involution::ensure_defined_on`] first.
    pub fn apply(&self, ring: &Ring, x: &RingElement) -> RingElement {
        match (self, x) {
            (Involution::Identity, _) => x.clone(),
            (Involution::Conjugation, RingElement::Cyc(c)) => {
                let n = ring.cyc().n as usize;
                let mut poly = vec![BigRational::zero(); n.max(1)];
                for (k, v) in c.iter().enumerate() {
                    poly[(n - k) % n] += v;
                }
                RingElement::Cyc(ring.reduce_poly(poly))
            }
            (Involution::Frobenius, RingElement::Quad(..)) => ring.pow(x, ring.modulus()),
            _ => panic!("involution {} undefined on {ring}", self.name()),
        }
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// True iff `conj(z) * z = 1` for every `z` in `t`.
pub fn check_t_inverse_involution(ring: &Ring, conj: Involution, t: &UnitSubgroup) -> bool {
    conj.is_defined_on(ring)
        && t
            .elements()
            .iter()
            .all(|z| ring.is_one(&ring.mul(&conj.apply(ring, z), z)))
}
