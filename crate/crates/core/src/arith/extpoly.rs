//! Univariate polynomial algorithms over a context, with zero-divisor splits.

use super::ext::{Ext, ExtResult};
use super::poly::{Ring, UniPoly};

pub type EPoly = UniPoly<Ext>;

/// Strip leading coefficients that vanish; a zero-divisor leading coefficient splits.
pub fn normalize_degree(f: &EPoly) -> ExtResult<EPoly> {
    let mut c = f.coeffs().to_vec();
    while let Some(l) = c.last() {
        if l.zero_test()? {
            c.pop();
        } else {
            break;
        }
    }
    Ok(UniPoly::new(c))
}

pub fn monic(f: &EPoly) -> ExtResult<EPoly> {
    let f = normalize_degree(f)?;
    if f.is_zero() {
        return Ok(f);
    }
    let inv = f.lc().try_inv()?;
    Ok(f.scale(&inv))
}

/// Division by `b` made monic; the quotient is relative to `monic(b)`.
pub fn div_rem(a: &EPoly, b: &EPoly) -> ExtResult<(EPoly, EPoly)> {
    let b = monic(b)?;
    assert!(!b.is_zero(), "division by zero polynomial");
    let db = b.degree().unwrap();
    let mut r = a.clone();
    let mut q = vec![Ext::zero(); (a.deg() - db as i64 + 1).max(0) as usize];
    while r.deg() >= db as i64 {
        let dr = r.degree().unwrap();
        let c = r.lc();
        r = r.sub(&b.scale(&c).shift(dr - db));
        q[dr - db] = c;
    }
    Ok((UniPoly::new(q), r))
}

/// Monic gcd.
pub fn gcd(a: &EPoly, b: &EPoly) -> ExtResult<EPoly> {
    let mut a = monic(a)?;
    let mut b = monic(b)?;
    while !b.is_zero() {
        let (_, r) = div_rem(&a, &b)?;
        a = b;
        b = monic(&r)?;
    }
    Ok(a)
}

/// Exact quotient by a monic divisor.
pub fn div_monic(a: &EPoly, b: &EPoly) -> EPoly {
    let db = b.degree().expect("division by zero polynomial");
    let mut r = a.clone();
    let mut q = vec![Ext::zero(); (a.deg() - db as i64 + 1).max(0) as usize];
    while r.deg() >= db as i64 {
        let dr = r.degree().unwrap();
        let c = r.lc();
        r = r.sub(&b.scale(&c).shift(dr - db));
        q[dr - db] = c;
    }
    debug_assert!(r.is_zero(), "inexact division");
    UniPoly::new(q)
}

/// Yun's squarefree decomposition of a nonconstant polynomial:
/// pairs `(k, a_k)` with `a_k` monic, squarefree, pairwise coprime.
pub fn squarefree_decomposition(f: &EPoly) -> ExtResult<Vec<(usize, EPoly)>> {
    let f = monic(f)?;
    let mut out = Vec::new();
    if f.deg() <= 0 {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = gcd(&f, &df)?;
    let mut b = div_monic(&f, &a0);
    let c = div_exact_any(&df, &a0)?;
    let mut d = c.sub(&b.derivative());
    let mut k = 1;
    while b.deg() > 0 {
        let a = gcd(&b, &d)?;
        if a.deg() > 0 {
            out.push((k, a.clone()));
        }
        b = div_monic(&b, &a);
        let c = div_exact_any(&d, &a)?;
        d = c.sub(&b.derivative());
        k += 1;
    }
    Ok(out)
}

fn div_exact_any(a: &EPoly, b: &EPoly) -> ExtResult<EPoly> {
    let bm = monic(b)?;
    let q = div_monic(a, &bm);
    let inv = normalize_degree(b)?.lc().try_inv()?;
    Ok(q.scale(&inv))
}

/// Multiplicity of `y = 0` as a root (order at zero, with semantic zero tests).
pub fn order_at_zero(f: &EPoly) -> ExtResult<Option<usize>> {
    for (k, c) in f.coeffs().iter().enumerate() {
        if !c.zero_test()? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
