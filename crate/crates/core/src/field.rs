//! Finite fields `F_{p^r}` in discrete-log form.
//!
//! Every nonzero element is stored as its exponent with respect to a fixed
//! primitive element `ξ`, so multiplication is addition of exponents. Addition
//! goes through a Zech logarithm table, `log(1 + ξ^e)`, built once together
//! with the polynomial-basis tables. The polynomial basis is the one of
//! `F_p[x]/(f)` for the modulus `f` chosen at construction, and each element
//! also has a "packed" integer form `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`.
//!
//! The automorphisms of `F_{p^r}` are exactly the Frobenius powers
//! `x ↦ x^{p^s}`, represented by [`FrobPower`]. They pairwise commute.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 20;

const ZERO_MARK: u32 = u32::MAX;

/// A field element: zero, or `ξ^e` with `0 <= e < q - 1`.
///
/// Elements carry no field handle; arithmetic goes through [`FieldCtx`].
/// Serializes as the exponent, or `null` for zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(ZERO_MARK);
    pub const ONE: Elem = Elem(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == ZERO_MARK
    }

    /// Discrete logarithm to base `ξ`; `None` for zero.
    #[inline]
    pub fn log(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }

    #[inline]
    fn raw(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => f.write_str("0"),
            Some(e) => write!(f, "ξ^{e}"),
        }
    }
}

impl Serialize for Elem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.log().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Elem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(match Option::<u32>::deserialize(deserializer)? {
            None => Elem::ZERO,
            Some(e) => Elem(e),
        })
    }
}

/// The automorphism `x ↦ x^{p^s}` of `F_{p^r}`, with `0 <= s < r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FrobPower {
    s: u32,
    r: u32,
}

impl FrobPower {
    pub fn new(s: u32, r: u32) -> Self {
        assert!(r >= 1, "extension degree must be positive");
        FrobPower { s: s % r, r }
    }

    pub fn identity(r: u32) -> Self {
        FrobPower::new(0, r)
    }

    /// All `r` automorphisms of `F_{p^r}`, identity first.
    pub fn all(r: u32) -> impl Iterator<Item = FrobPower> {
        (0..r).map(move |s| FrobPower::new(s, r))
    }

    pub fn exponent(self) -> u32 {
        self.s
    }

    pub fn degree(self) -> u32 {
        self.r
    }

    pub fn is_identity(self) -> bool {
        self.s == 0
    }

    pub fn compose(self, other: FrobPower) -> FrobPower {
        debug_assert_eq!(self.r, other.r);
        FrobPower::new((self.s + other.s) % self.r, self.r)
    }

    pub fn pow(self, j: u64) -> FrobPower {
        FrobPower::new(((self.s as u64 * j) % self.r as u64) as u32, self.r)
    }

    pub fn inverse(self) -> FrobPower {
        FrobPower::new((self.r - self.s) % self.r, self.r)
    }

    /// Order in `Aut(F_{p^r})`: `r / gcd(r, s)`.
    pub fn order(self) -> u32 {
        self.r / gcd(self.r as u64, self.s as u64) as u32
    }
}

/// A concrete finite field `F_{p^r}` with a designated primitive element `ξ`.
///
/// Immutable after construction; share it behind an `Arc`.
pub struct FieldCtx {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `ξ = x^generator_power` where `x` is the class of the variable.
    generator_power: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    /// `p^s mod (q - 1)` for `s < r`.
    frob: Vec<u64>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .field("generator_power", &self.generator_power)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.r == other.r
            && self.modulus == other.modulus
            && self.generator_power == other.generator_power
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds `F_{p^r}`.
    ///
    /// The modulus is the first monic polynomial of degree `r`, in increasing
    /// order of the packed value of its lower coefficients, whose root
    /// generates the multiplicative group; that root is `ξ`.
    pub fn new(p: u32, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge { p, r })?;

        for tail in 0..q {
            let mut modulus = digits(tail, p, r as usize);
            modulus.push(1);
            if let Some(exp) = root_powers(p, &modulus, q) {
                return Ok(Self::from_tables(p, r, modulus, 1, exp));
            }
        }
        unreachable!("a primitive polynomial of every degree exists over every prime field")
    }

    /// Parses `"p^r"` (or a bare prime `"p"`) and builds the field.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let bad = || Error::BadFieldSpec(spec.to_string());
        let (p, r) = match spec.trim().split_once('^') {
            Some((p, r)) => (
                p.trim().parse().map_err(|_| bad())?,
                r.trim().parse().map_err(|_| bad())?,
            ),
            None => (spec.trim().parse().map_err(|_| bad())?, 1),
        };
        Self::new(p, r)
    }

    /// The same field and modulus with `ξ' = ξ^g` as primitive element.
    pub fn with_generator_power(&self, g: u32) -> Result<Self> {
        let order = self.order();
        if gcd(g as u64, order as u64) != 1 {
            return Err(Error::Precondition(format!(
                "ξ^{g} is not a generator of a group of order {order}"
            )));
        }
        let exp = (0..order)
            .map(|e| self.exp[((e as u64 * g as u64) % order as u64) as usize])
            .collect();
        let generator_power = ((self.generator_power as u64 * g as u64) % order as u64) as u32;
        Ok(Self::from_tables(
            self.p,
            self.r,
            self.modulus.clone(),
            generator_power,
            exp,
        ))
    }

    fn from_tables(p: u32, r: u32, modulus: Vec<u32>, generator_power: u32, exp: Vec<u32>) -> Self {
        let q = p.pow(r);
        let order = q - 1;
        let mut log = vec![ZERO_MARK; q as usize];
        for (e, &v) in exp.iter().enumerate() {
            log[v as usize] = e as u32;
        }
        let zech = exp
            .iter()
            .map(|&v| {
                let low = v % p;
                let bumped = v - low + (low + 1) % p;
                log[bumped as usize]
            })
            .collect();
        let frob = (0..r)
            .map(|s| pow_mod(p as u64, s as u64, order as u64))
            .collect();
        FieldCtx {
            p,
            r,
            q,
            modulus,
            generator_power,
            exp,
            log,
            zech,
            frob,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    /// Number of elements `q = p^r`.
    pub fn size(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn order(&self) -> u32 {
        self.q - 1
    }

    /// Coefficients of the modulus polynomial, low degree first (monic).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `ξ` as a power of the root of the modulus.
    pub fn generator_power(&self) -> u32 {
        self.generator_power
    }

    pub fn spec(&self) -> String {
        format!("{}^{}", self.p, self.r)
    }

    /// `ξ^e` for any integer exponent.
    #[inline]
    pub fn xi_pow(&self, e: i64) -> Elem {
        let order = self.order() as i64;
        Elem(e.rem_euclid(order) as u32)
    }

    pub fn xi(&self) -> Elem {
        self.xi_pow(1)
    }

    /// Nonzero elements in increasing exponent order.
    pub fn units(&self) -> impl Iterator<Item = Elem> {
        (0..self.order()).map(Elem)
    }

    /// All elements: zero first, then the units in exponent order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        std::iter::once(Elem::ZERO).chain(self.units())
    }

    /// The element with the given packed polynomial-basis value.
    pub fn from_packed(&self, v: u32) -> Result<Elem> {
        if v >= self.q {
            return Err(Error::BadElement(format!("v{v}")));
        }
        Ok(Elem(self.log[v as usize]))
    }

    pub fn to_packed(&self, x: Elem) -> u32 {
        match x.log() {
            None => 0,
            Some(e) => self.exp[e as usize],
        }
    }

    /// Coordinates in the polynomial basis `1, x, ..., x^{r-1}`.
    pub fn coords(&self, x: Elem) -> Vec<u32> {
        digits(self.to_packed(x), self.p, self.r as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Elem> {
        let mut v: u64 = 0;
        for &c in coords.iter().rev() {
            if c >= self.p {
                return Err(Error::BadElement(format!("{coords:?}")));
            }
            v = v * self.p as u64 + c as u64;
        }
        self.from_packed(u32::try_from(v).map_err(|_| Error::BadElement(format!("{coords:?}")))?)
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(self.log[n.rem_euclid(self.p as i64) as usize])
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if x.is_zero() {
            return y;
        }
        if y.is_zero() {
            return x;
        }
        let order = self.order();
        let d = if y.raw() >= x.raw() {
            y.raw() - x.raw()
        } else {
            y.raw() + order - x.raw()
        };
        let z = self.zech[d as usize];
        if z == ZERO_MARK {
            Elem::ZERO
        } else {
            Elem(((x.raw() as u64 + z as u64) % order as u64) as u32)
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        if x.is_zero() || self.p == 2 {
            x
        } else {
            let order = self.order();
            Elem((x.raw() + order / 2) % order)
        }
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.is_zero() || y.is_zero() {
            Elem::ZERO
        } else {
            Elem(((x.raw() as u64 + y.raw() as u64) % self.order() as u64) as u32)
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: Elem) -> Option<Elem> {
        x.log().map(|e| Elem((self.order() - e) % self.order()))
    }

    /// `x / y`, `None` when `y` is zero.
    pub fn div(&self, x: Elem, y: Elem) -> Option<Elem> {
        Some(self.mul(x, self.inv(y)?))
    }

    /// `x^n`, with `0^0 = 1`.
    pub fn pow(&self, x: Elem, n: u64) -> Elem {
        match x.log() {
            _ if n == 0 => Elem::ONE,
            None => Elem::ZERO,
            Some(e) => Elem(((e as u128 * n as u128) % self.order() as u128) as u32),
        }
    }

    /// `x^n` for a possibly negative exponent; `None` for `0^n`, `n < 0`.
    pub fn pow_signed(&self, x: Elem, n: i64) -> Option<Elem> {
        if n >= 0 {
            Some(self.pow(x, n as u64))
        } else {
            Some(self.pow(self.inv(x)?, n.unsigned_abs()))
        }
    }

    /// Applies the automorphism `x ↦ x^{p^s}`.
    #[inline]
    pub fn apply(&self, aut: FrobPower, x: Elem) -> Elem {
        debug_assert_eq!(aut.r, self.r);
        match x.log() {
            None => x,
            Some(e) => Elem(((e as u64 * self.frob[aut.s as usize]) % self.order() as u64) as u32),
        }
    }

    /// Applies `aut^j`.
    #[inline]
    pub fn apply_pow(&self, aut: FrobPower, j: u64, x: Elem) -> Elem {
        self.apply(aut.pow(j), x)
    }

    /// Multiplicative order of `x` (1 for the identity); `None` for zero.
    pub fn element_order(&self, x: Elem) -> Option<u32> {
        let e = x.log()?;
        Some(self.order() / gcd(e as u64, self.order() as u64) as u32)
    }

    /// Sums a sequence of elements.
    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    /// Multiplies a sequence of elements.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ONE, |acc, x| self.mul(acc, x))
    }
}

/// The iterated norm `N_i^τ(β) = β · τ(β) ··· τ^{i-1}(β)`, computed as a
/// literal product. `N_0` is `1`.
pub fn iter_norm(ctx: &FieldCtx, aut: FrobPower, i: u64, beta: Elem) -> Elem {
    let mut acc = Elem::ONE;
    let mut cur = beta;
    for _ in 0..i {
        acc = ctx.mul(acc, cur);
        cur = ctx.apply(aut, cur);
    }
    acc
}

/// Checks `N_{i+j}^τ(β) = N_i^τ(β) · τ^i(N_j^τ(β))`.
pub fn norm_relation_check(ctx: &FieldCtx, aut: FrobPower, i: u64, j: u64, beta: Elem) -> bool {
    norm_relation_with_shift(ctx, aut, aut, i, j, beta)
}

/// Checks `N_{i+j}^τ(β) = N_i^τ(β) · shift^i(N_j^τ(β))` for an arbitrary
/// outer automorphism. With `shift = τ` this is [`norm_relation_check`]; with
/// `shift ≠ τ` it generally fails.
pub fn norm_relation_with_shift(
    ctx: &FieldCtx,
    aut: FrobPower,
    shift: FrobPower,
    i: u64,
    j: u64,
    beta: Elem,
) -> bool {
    let whole = iter_norm(ctx, aut, i + j, beta);
    let head = iter_norm(ctx, aut, i, beta);
    let tail = ctx.apply_pow(shift, i, iter_norm(ctx, aut, j, beta));
    whole == ctx.mul(head, tail)
}

/// Whether `x` is fixed by `aut`. Zero is fixed.
pub fn in_fixed_field(ctx: &FieldCtx, aut: FrobPower, x: Elem) -> bool {
    ctx.apply(aut, x) == x
}

/// `[m]_s = p^{s(m-1)} + ... + p^s + 1`, so that `N_m^σ(x) = x^{[m]_s}` for
/// `σ(x) = x^{p^s}`. For `s = 0` the sum degenerates to `m`.
pub fn bracket_m_s(p: u32, s: u32, m: u32) -> Result<u128> {
    if m == 0 {
        return Err(Error::Precondition("[m]_s needs m >= 1".into()));
    }
    let step = (p as u128)
        .checked_pow(s)
        .ok_or(Error::Overflow("[m]_s"))?;
    let mut term: u128 = 1;
    let mut total: u128 = 0;
    for j in 0..m {
        total = total.checked_add(term).ok_or(Error::Overflow("[m]_s"))?;
        if j + 1 < m {
            term = term.checked_mul(step).ok_or(Error::Overflow("[m]_s"))?;
        }
    }
    Ok(total)
}

/// `[m]_s mod modulus`, never overflowing.
pub fn bracket_m_s_mod(p: u32, s: u32, m: u32, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let step = pow_mod(p as u64, s as u64, modulus);
    let mut term = 1 % modulus;
    let mut total = 0u64;
    for _ in 0..m {
        total = (total + term) % modulus;
        term = ((term as u128 * step as u128) % modulus as u128) as u64;
    }
    total
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(base: u64, mut e: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    let m = modulus as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

fn digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

fn pack(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Successive powers `x^0, x^1, ..., x^{q-2}` of the class of `x` modulo the
/// monic `modulus`, packed; `None` unless `x` has order exactly `q - 1`.
fn root_powers(p: u32, modulus: &[u32], q: u32) -> Option<Vec<u32>> {
    let r = modulus.len() - 1;
    let order = (q - 1) as usize;
    let mut cur = vec![0u32; r];
    cur[0] = 1;
    let mut out = Vec::with_capacity(order);
    out.push(1);
    for e in 1..=order {
        let top = cur[r - 1];
        for i in (1..r).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for (c, &f) in cur.iter_mut().zip(modulus) {
                *c = (*c + (p - top) * f % p) % p;
            }
        }
        let v = pack(&cur, p);
        if e == order {
            return (v == 1).then_some(out);
        }
        if v == 0 || v == 1 {
            return None;
        }
        out.push(v);
    }
    None
}
