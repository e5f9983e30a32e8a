//! The skew polynomial ring `K[t;σ]` with `t·c = σ(c)·t`.
//!
//! [`SkewPoly`] values carry their ring, and mixed-ring arithmetic is an error
//! ([`Error::ContextMismatch`]) through the `try_*` methods or a panic through
//! the operator impls. The slice-level kernels in [`raw`] skip the handle and
//! are what the algebra and search code call in hot loops.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, FrobPower};

/// `K[t;σ]` for a concrete field `K` and Frobenius power `σ`.
#[derive(Clone)]
pub struct SkewRing {
    ctx: Arc<FieldCtx>,
    sigma: FrobPower,
}

impl fmt::Debug for SkewRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[t; x^(p^{})]", self.ctx.spec(), self.sigma.exponent())
    }
}

impl PartialEq for SkewRing {
    fn eq(&self, other: &Self) -> bool {
        self.sigma == other.sigma && (Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx)
    }
}

impl Eq for SkewRing {}

impl SkewRing {
    /// `σ(x) = x^{p^s}` with `0 <= s <= r` (`s = r` is the identity).
    pub fn new(ctx: Arc<FieldCtx>, s: u32) -> Result<Self> {
        let r = ctx.degree();
        if s > r {
            return Err(Error::BadFrobeniusExponent { s, r });
        }
        Ok(SkewRing {
            sigma: FrobPower::new(s, r),
            ctx,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn sigma(&self) -> FrobPower {
        self.sigma
    }

    /// Order `n` of `σ`.
    pub fn n(&self) -> u32 {
        self.sigma.order()
    }

    /// Whether `x` lies in the fixed field `K_0` of `σ`.
    pub fn in_fixed_field(&self, x: Elem) -> bool {
        self.ctx.apply(self.sigma, x) == x
    }

    pub fn poly(&self, coeffs: Vec<Elem>) -> SkewPoly {
        SkewPoly::new(self.clone(), coeffs)
    }

    pub fn zero(&self) -> SkewPoly {
        self.poly(Vec::new())
    }

    pub fn one(&self) -> SkewPoly {
        self.constant(Elem::ONE)
    }

    pub fn constant(&self, c: Elem) -> SkewPoly {
        self.poly(vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(&self, c: Elem, k: usize) -> SkewPoly {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        self.poly(coeffs)
    }

    pub fn t(&self) -> SkewPoly {
        self.monomial(Elem::ONE, 1)
    }

    /// `t^m - a`.
    pub fn constacyclic_modulus(&self, m: usize, a: Elem) -> SkewPoly {
        let mut coeffs = vec![Elem::ZERO; m + 1];
        coeffs[0] = self.ctx.neg(a);
        coeffs[m] = Elem::ONE;
        self.poly(coeffs)
    }
}

/// An element of `K[t;σ]`, coefficients low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    ring: SkewRing,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c:?}")?,
                1 => write!(f, "{c:?}·t")?,
                _ => write!(f, "{c:?}·t^{i}")?,
            }
        }
        Ok(())
    }
}

impl SkewPoly {
    pub fn new(ring: SkewRing, mut coeffs: Vec<Elem>) -> Self {
        raw::trim(&mut coeffs);
        SkewPoly { ring, coeffs }
    }

    pub fn ring(&self) -> &SkewRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    /// Coefficient of `t^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    pub fn leading_coeff(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    /// Number of nonzero coefficients.
    pub fn hamming_weight(&self) -> usize {
        raw::weight(&self.coeffs)
    }

    fn same_ring(&self, other: &SkewPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.same_ring(other)?;
        Ok(self.ring.poly(raw::add(self.ring.ctx(), &self.coeffs, &other.coeffs)))
    }

    pub fn try_sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.same_ring(other)?;
        Ok(self.ring.poly(raw::sub(self.ring.ctx(), &self.coeffs, &other.coeffs)))
    }

    pub fn try_mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.same_ring(other)?;
        Ok(self.ring.poly(raw::mul(
            self.ring.ctx(),
            self.ring.sigma,
            &self.coeffs,
            &other.coeffs,
        )))
    }

    /// `c·g`, scaling from the left.
    pub fn scale_left(&self, c: Elem) -> SkewPoly {
        let ctx = self.ring.ctx();
        self.ring.poly(self.coeffs.iter().map(|&x| ctx.mul(c, x)).collect())
    }

    /// Applies `σ^j` to every coefficient.
    pub fn twisted(&self, j: u64) -> SkewPoly {
        let ctx = self.ring.ctx();
        let aut = self.ring.sigma.pow(j);
        self.ring.poly(self.coeffs.iter().map(|&x| ctx.apply(aut, x)).collect())
    }

    /// Applies an arbitrary field automorphism to every coefficient.
    pub fn map_coeffs(&self, aut: FrobPower) -> SkewPoly {
        let ctx = self.ring.ctx();
        self.ring.poly(self.coeffs.iter().map(|&x| ctx.apply(aut, x)).collect())
    }

    /// The unique `(q, rem)` with `self = q·f + rem` and `deg rem < deg f`.
    pub fn right_divmod(&self, f: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.same_ring(f)?;
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let (q, rem) = raw::right_divmod(self.ring.ctx(), self.ring.sigma, &self.coeffs, &f.coeffs);
        Ok((self.ring.poly(q), self.ring.poly(rem)))
    }

    /// `self mod_r f`.
    pub fn right_rem(&self, f: &SkewPoly) -> Result<SkewPoly> {
        Ok(self.right_divmod(f)?.1)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&SkewPoly> for &SkewPoly {
            type Output = SkewPoly;

            /// Panics if the operands belong to different rings.
            fn $method(self, rhs: &SkewPoly) -> SkewPoly {
                self.$try(rhs).expect("skew polynomials from different rings")
            }
        }

        impl $tr<SkewPoly> for SkewPoly {
            type Output = SkewPoly;

            fn $method(self, rhs: SkewPoly) -> SkewPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &SkewPoly {
    type Output = SkewPoly;

    fn neg(self) -> SkewPoly {
        let ctx = self.ring.ctx();
        self.ring.poly(self.coeffs.iter().map(|&x| ctx.neg(x)).collect())
    }
}

impl Neg for SkewPoly {
    type Output = SkewPoly;

    fn neg(self) -> SkewPoly {
        -&self
    }
}

/// Coefficient-slice kernels. Inputs need not be trimmed; outputs are
/// trimmed unless stated otherwise.
pub mod raw {
    use crate::field::{Elem, FieldCtx, FrobPower};

    pub fn trim(v: &mut Vec<Elem>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn weight(v: &[Elem]) -> usize {
        v.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(ctx: &FieldCtx, g: &[Elem], h: &[Elem]) -> Vec<Elem> {
        let mut out = vec![Elem::ZERO; g.len().max(h.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = g.get(i).copied().unwrap_or(Elem::ZERO);
            let y = h.get(i).copied().unwrap_or(Elem::ZERO);
            *o = ctx.add(x, y);
        }
        trim(&mut out);
        out
    }

    pub fn sub(ctx: &FieldCtx, g: &[Elem], h: &[Elem]) -> Vec<Elem> {
        let neg: Vec<Elem> = h.iter().map(|&y| ctx.neg(y)).collect();
        add(ctx, g, &neg)
    }

    /// Untrimmed product of length `g.len() + h.len() - 1`:
    /// `(g_i t^i)(h_j t^j) = g_i σ^i(h_j) t^{i+j}`.
    pub fn mul_untrimmed(ctx: &FieldCtx, sigma: FrobPower, g: &[Elem], h: &[Elem]) -> Vec<Elem> {
        if g.is_empty() || h.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Elem::ZERO; g.len() + h.len() - 1];
        for (i, &gi) in g.iter().enumerate() {
            if gi.is_zero() {
                continue;
            }
            let aut = sigma.pow(i as u64);
            for (j, &hj) in h.iter().enumerate() {
                if hj.is_zero() {
                    continue;
                }
                let term = ctx.mul(gi, ctx.apply(aut, hj));
                out[i + j] = ctx.add(out[i + j], term);
            }
        }
        out
    }

    pub fn mul(ctx: &FieldCtx, sigma: FrobPower, g: &[Elem], h: &[Elem]) -> Vec<Elem> {
        let mut out = mul_untrimmed(ctx, sigma, g, h);
        trim(&mut out);
        out
    }

    /// Right division by a monic `f`: the leading term `c·t^d` of the running
    /// remainder is cleared by subtracting `c·t^{d-m}·f`.
    pub fn right_divmod(
        ctx: &FieldCtx,
        sigma: FrobPower,
        g: &[Elem],
        f: &[Elem],
    ) -> (Vec<Elem>, Vec<Elem>) {
        let mut f = f.to_vec();
        trim(&mut f);
        let m = f.len() - 1;
        debug_assert_eq!(f[m], Elem::ONE);
        let mut rem = g.to_vec();
        trim(&mut rem);
        if rem.len() <= m {
            return (Vec::new(), rem);
        }
        let mut q = vec![Elem::ZERO; rem.len() - m];
        for d in (m..rem.len()).rev() {
            let c = rem[d];
            if c.is_zero() {
                continue;
            }
            let shift = d - m;
            q[shift] = c;
            let aut = sigma.pow(shift as u64);
            for (i, &fi) in f.iter().enumerate() {
                if !fi.is_zero() {
                    let term = ctx.mul(c, ctx.apply(aut, fi));
                    rem[shift + i] = ctx.sub(rem[shift + i], term);
                }
            }
        }
        rem.truncate(m);
        trim(&mut rem);
        trim(&mut q);
        (q, rem)
    }
}
