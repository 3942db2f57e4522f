//! Truncated power series over a context, as polynomials cut at a precision.

use crate::arith::{BiPoly, Ext, ExtResult, Ring, UniPoly};

pub type Series = UniPoly<Ext>;

pub fn mul_trunc(a: &Series, b: &Series, n: usize) -> Series {
    let (ac, bc) = (a.coeffs(), b.coeffs());
    let mut v = vec![Ext::zero(); n.min(ac.len() + bc.len())];
    for (i, x) in ac.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in bc.iter().enumerate().take(n - i) {
            if y.is_zero() {
                continue;
            }
            v[i + j] = v[i + j].add(&x.mul(y));
        }
    }
    UniPoly::new(v)
}

/// Inverse of a series with invertible constant term, to precision `n`.
pub fn inv_trunc(a: &Series, n: usize) -> ExtResult<Series> {
    let c0 = a.coeff(0).try_inv()?;
    let mut inv = vec![c0.clone()];
    for k in 1..n {
        let mut s = Ext::zero();
        for j in 1..=k.min(a.deg().max(0) as usize) {
            s = s.add(&a.coeff(j).mul(&inv[k - j]));
        }
        inv.push(s.mul(&c0).neg());
    }
    Ok(UniPoly::new(inv))
}

/// `g(x(t), y(t))` modulo `t^n` where `x(t) = lambda t^e`.
pub fn eval_bi(g: &BiPoly<Ext>, lambda: &Ext, e: usize, y: &Series, n: usize) -> Series {
    let mut acc = Series::zero();
    for gj in g.coeffs().iter().rev() {
        acc = mul_trunc(&acc, y, n);
        // g_j(lambda t^e)
        let mut v = vec![Ext::zero(); n];
        let mut lp = Ext::one();
        for (i, c) in gj.coeffs().iter().enumerate() {
            if i * e >= n {
                break;
            }
            if !c.is_zero() {
                v[i * e] = c.mul(&lp);
            }
            lp = lp.mul(lambda);
        }
        acc = acc.add(&UniPoly::new(v));
    }
    acc
}

/// Root `phi` with `phi(0) = 0` of `f(x, y)` where `f(0, 0) = 0` and
/// `f_y(0, 0)` is invertible, to precision `n`, by Newton iteration.
pub fn implicit_root(f: &BiPoly<Ext>, n: usize) -> ExtResult<Series> {
    let fy = f.derivative();
    let mut phi = Series::zero();
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        let val = eval_bi(f, &Ext::one(), 1, &phi, prec);
        let der = eval_bi(&fy, &Ext::one(), 1, &phi, prec);
        let step = mul_trunc(&val, &inv_trunc(&der, prec)?, prec);
        phi = phi.sub(&step);
    }
    Ok(phi.truncate(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> BiPoly<Ext> {
        UniPoly::new(
            rows.iter()
                .map(|r| UniPoly::new(r.iter().map(|&v| Ext::from_int(v)).collect()))
                .collect(),
        )
    }

    #[test]
    fn geometric_root() {
        // y - x - x y = 0  =>  y = x / (1 - x) = x + x^2 + ...
        let f = bi(&[&[0, -1], &[1, -1]]);
        let phi = implicit_root(&f, 6).unwrap();
        assert_eq!(phi, UniPoly::new(vec![Ext::zero(), Ext::one(), Ext::one(), Ext::one(), Ext::one(), Ext::one()]));
        let res = eval_bi(&f, &Ext::one(), 1, &phi, 6);
        assert!(res.is_zero());
    }
}
