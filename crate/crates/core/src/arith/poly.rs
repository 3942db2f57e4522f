//! Dense univariate polynomials over a generic coefficient ring.

use std::fmt;

/// Commutative ring with unit. Zero and one are context-free.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    /// Exact structural zero.
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(n: i64) -> Self;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Self;
}

/// Integral domain with exact division (caller guarantees divisibility).
pub trait Domain: Ring {
    fn div_exact(&self, o: &Self) -> Self;
}

pub trait GcdDomain: Domain {
    fn gcd(&self, o: &Self) -> Self;
    /// A unit `u` with `self / u` in canonical (normalized) form; one for zero.
    fn unit_part(&self) -> Self;
}

/// Polynomial `c[0] + c[1] X + ...`, trailing exact zeros stripped.
#[derive(Clone, PartialEq)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c X^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    /// Lowest index with a structurally nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(match (self.coeffs.get(k), o.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(R::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Horner evaluation at an element of another ring through a coefficient map.
    pub fn eval_with<S: Ring>(&self, x: &S, embed: impl Fn(&R) -> S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&embed(c));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&R::from_i64(k as i64)))
                .collect(),
        )
    }

    /// Truncate to terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// `p(X) -> p(a X + b)`.
    pub fn compose_linear(&self, a: &R, b: &R) -> Self {
        let lin = UniPoly::new(vec![b.clone(), a.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }
}

impl<R: Ring> UniPoly<R> {
    /// Remainder modulo a monic polynomial; needs no inversion.
    pub fn rem_monic(&self, m: &Self) -> Self {
        let dm = m.degree().expect("reduction modulo zero");
        debug_assert!(m.lc() == R::one(), "modulus not monic");
        if self.deg() < dm as i64 {
            return self.clone();
        }
        let mut v = self.coeffs.clone();
        for k in (dm..v.len()).rev() {
            let c = std::mem::replace(&mut v[k], R::zero());
            if c.is_zero() {
                continue;
            }
            for j in 0..dm {
                v[k - dm + j] = v[k - dm + j].sub(&c.mul(&m.coeffs[j]));
            }
        }
        v.truncate(dm);
        Self::new(v)
    }
}

impl<R: Domain> UniPoly<R> {
    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-remainder by zero");
        let mut r = self.clone();
        let lb = b.lc();
        let mut steps = (self.deg() - db as i64 + 1).max(0);
        while r.deg() >= db as i64 {
            let dr = r.degree().unwrap();
            let lr = r.lc();
            r = r.scale(&lb).sub(&b.scale(&lr).shift(dr - db));
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&lb.pow(steps as u32));
        }
        r
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact_poly(&self, b: &Self) -> Self {
        let db = b.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let mut r = self.clone();
        let lb = b.lc();
        let mut q = vec![R::zero(); (self.deg() - db as i64 + 1).max(1) as usize];
        while r.deg() >= db as i64 {
            let dr = r.degree().unwrap();
            let c = r.lc().div_exact(&lb);
            q[dr - db] = c.clone();
            r = r.sub(&b.scale(&c).shift(dr - db));
        }
        assert!(r.is_zero(), "inexact polynomial division");
        Self::new(q)
    }

    pub fn div_exact_scalar(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.div_exact(c)).collect())
    }
}

impl<R: Field> UniPoly<R> {
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = b.lc().inv();
        let mut r = self.clone();
        if r.deg() < db as i64 {
            return (Self::zero(), r);
        }
        let mut q = vec![R::zero(); r.degree().unwrap() - db + 1];
        while r.deg() >= db as i64 {
            let dr = r.degree().unwrap();
            let c = r.lc().mul(&inv);
            r = r.sub(&b.scale(&c).shift(dr - db));
            q[dr - db] = c;
        }
        (Self::new(q), r)
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.div_rem(b).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().inv())
    }

    /// Monic gcd by Euclid.
    pub fn gcd_monic(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::constant(R::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(R::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `f / gcd(f, f')`.
    pub fn squarefree_part(&self) -> Self {
        if self.deg() <= 0 {
            return self.monic();
        }
        let g = self.gcd_monic(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Yun's algorithm: `f = lc * prod a_k^k` with pairwise coprime squarefree `a_k`.
    /// Returns `(k, a_k)` for nonconstant factors.
    pub fn squarefree_decomposition(&self) -> Vec<(usize, Self)> {
        let mut out = Vec::new();
        if self.deg() <= 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd_monic(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        while b.deg() > 0 {
            let a = b.gcd_monic(&d);
            if a.deg() > 0 {
                out.push((k, a.clone()));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            k += 1;
        }
        out
    }
}

impl<R: Ring> Ring for UniPoly<R> {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        UniPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        UniPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        UniPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        UniPoly::neg(self)
    }
    fn from_i64(n: i64) -> Self {
        UniPoly::constant(R::from_i64(n))
    }
}

impl<R: Domain> Domain for UniPoly<R> {
    fn div_exact(&self, o: &Self) -> Self {
        self.div_exact_poly(o)
    }
}

impl<R: GcdDomain> UniPoly<R> {
    pub fn content(&self) -> R {
        let mut g = R::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return g;
        }
        g.div_exact(&g.unit_part())
    }

    /// Primitive part with normalized leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let p = self.div_exact_scalar(&self.content());
        let u = p.lc().unit_part();
        p.div_exact_scalar(&u)
    }
}

impl<R: GcdDomain> GcdDomain for UniPoly<R> {
    fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive_part().scale(&o.content());
        }
        if o.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    fn unit_part(&self) -> Self {
        if self.is_zero() {
            return Self::one();
        }
        UniPoly::constant(self.lc().unit_part())
    }
}

/// Resultant by the subresultant pseudo-remainder sequence.
pub fn resultant<R: Domain>(a: &UniPoly<R>, b: &UniPoly<R>) -> R {
    if a.is_zero() || b.is_zero() {
        return R::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = false;
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = !sign;
        }
    }
    if b.deg() == 0 {
        let r = b.lc().pow(a.deg() as u32);
        return if sign { r.neg() } else { r };
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let delta = (a.deg() - b.deg()) as u32;
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            sign = !sign;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = g.mul(&h.pow(delta));
        b = r.div_exact_scalar(&divisor);
        g = a.lc();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1))
        };
        if b.is_zero() {
            return R::zero();
        }
        if b.deg() == 0 {
            let da = a.deg() as u32;
            let num = b.lc().pow(da);
            let r = if da == 0 {
                num
            } else {
                num.div_exact(&h.pow(da - 1))
            };
            return if sign { r.neg() } else { r };
        }
    }
}

impl<R: Ring + fmt::Display> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*X", c)?,
                _ => write!(f, "{}*X^{}", c, k)?,
            }
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GaussianRational as Gq;

    fn p(c: &[i64]) -> UniPoly<Gq> {
        UniPoly::new(c.iter().map(|&v| Gq::from_int(v)).collect())
    }

    #[test]
    fn resultant_of_distinct_linears() {
        // Res(y - 1, y + 1) = 1 - (-1) ... = -2 up to sign
        let r = resultant(&p(&[-1, 1]), &p(&[1, 1]));
        assert_eq!(r, Gq::from_int(2));
    }

    #[test]
    fn resultant_against_constant_and_bivariate() {
        // Res_y(y^2 - x^3, y) = x^3 (up to sign)
        type P = UniPoly<Gq>;
        let x3 = P::monomial(Gq::one(), 3);
        let f = UniPoly::new(vec![x3.neg(), P::zero(), P::one()]);
        let g = UniPoly::new(vec![P::zero(), P::one()]);
        let r = resultant(&f, &g);
        assert_eq!(r, x3.neg());
    }

    #[test]
    fn cusp_line_resultant_valuation() {
        // Res_y(y^2 - x^3, y - x) = x^2 - x^3, valuation 2
        type P = UniPoly<Gq>;
        let f = UniPoly::new(vec![P::monomial(Gq::from_int(-1), 3), P::zero(), P::one()]);
        let g = UniPoly::new(vec![P::monomial(Gq::from_int(-1), 1), P::one()]);
        let r = resultant(&f, &g);
        assert_eq!(r.order(), Some(2));
        assert_eq!(r, p(&[0, 0, 1, -1]));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).squarefree_part(), p(&[0, 1]));
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        assert_eq!(p(&[2, -3, 0, 1]).squarefree_part(), p(&[-2, 1, 1]));
        let dec = p(&[2, -3, 0, 1]).squarefree_decomposition();
        assert_eq!(dec, vec![(1, p(&[2, 1])), (2, p(&[-1, 1]))]);
    }

    #[test]
    fn bivariate_gcd() {
        type P = UniPoly<Gq>;
        // (y - x)(y + 1) and (y - x)(y - 2)
        let lin = UniPoly::new(vec![p(&[0, -1]), P::one()]);
        let a = lin.mul(&UniPoly::new(vec![P::one(), P::one()]));
        let b = lin.mul(&UniPoly::new(vec![p(&[-2]), P::one()]));
        assert_eq!(a.gcd(&b), lin);
    }
}
