//! Text encoding of field elements and coefficient vectors.
//!
//! A nonzero element is written as its exponent `e` (meaning `ξ^e`); zero is
//! written `-`. On input `—` is also accepted for zero, and `v<N>` gives an
//! element by its packed polynomial-basis value `N = Σ c_i p^i` (so `v4` is
//! the integer 4 whenever `p > 4`). Vectors are comma-separated, low degree
//! first.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};

pub const ZERO_TOKEN: &str = "-";

pub fn format_elem(x: Elem) -> String {
    match x.log() {
        Some(e) => e.to_string(),
        None => ZERO_TOKEN.to_string(),
    }
}

pub fn parse_elem(ctx: &FieldCtx, s: &str) -> Result<Elem> {
    let s = s.trim();
    let bad = || Error::BadElement(s.to_string());
    match s {
        "-" | "—" => Ok(Elem::ZERO),
        _ if s.starts_with('v') => {
            let v: u32 = s[1..].parse().map_err(|_| bad())?;
            ctx.from_packed(v).map_err(|_| bad())
        }
        _ => {
            let e: u64 = s.parse().map_err(|_| bad())?;
            if e >= ctx.order() as u64 {
                return Err(bad());
            }
            Ok(ctx.xi_pow(e as i64))
        }
    }
}

/// Like [`parse_elem`] but rejects zero.
pub fn parse_unit(ctx: &FieldCtx, s: &str) -> Result<Elem> {
    let x = parse_elem(ctx, s)?;
    if x.is_zero() {
        return Err(Error::ZeroConstant);
    }
    Ok(x)
}

pub fn format_vec(xs: &[Elem]) -> String {
    xs.iter().map(|&x| format_elem(x)).collect::<Vec<_>>().join(",")
}

pub fn parse_vec(ctx: &FieldCtx, s: &str) -> Result<Vec<Elem>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|tok| parse_elem(ctx, tok)).collect()
}
