//! Dynamic evaluation over `Q(i)[t]/(p(t))` with `p` monic and squarefree.
//!
//! A context need not be a field. Zero-divisors are detected by a gcd with
//! the modulus and reported as a [`Split`]; the factorization is remembered
//! (per thread) so that contexts created afterwards are born already split.

use std::cell::RefCell;
use std::fmt;
use std::sync::Arc;

use super::gaussian::GaussianRational as Gq;
use super::linalg;
use super::poly::{Field, Ring, UniPoly};

pub struct ExtensionContext {
    modulus: UniPoly<Gq>,
}

pub type Ctx = Arc<ExtensionContext>;

impl ExtensionContext {
    pub fn modulus(&self) -> &UniPoly<Gq> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// Contexts for a monic squarefree modulus, refined by every factorization
    /// discovered so far on this thread. The product of the returned moduli is `p`.
    pub fn create(p: &UniPoly<Gq>) -> Vec<Ctx> {
        assert!(p.deg() >= 1, "modulus must be nonconstant");
        let p = p.monic();
        debug_assert!(p.gcd_monic(&p.derivative()).deg() == 0, "modulus not squarefree");
        let pieces = KNOWN.with(|k| refine(&p, &k.borrow()));
        pieces
            .into_iter()
            .map(|m| Arc::new(ExtensionContext { modulus: m }))
            .collect()
    }

    /// Single context without consulting the split registry.
    pub fn raw(p: &UniPoly<Gq>) -> Ctx {
        Arc::new(ExtensionContext { modulus: p.monic() })
    }

    /// The generator `t`.
    pub fn gen(self: &Arc<Self>) -> Ext {
        Ext::from_rep(Some(self.clone()), UniPoly::x())
    }
}

impl fmt::Debug for ExtensionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(i)[t]/({})", render_t(&self.modulus))
    }
}

thread_local! {
    static KNOWN: RefCell<Vec<UniPoly<Gq>>> = const { RefCell::new(Vec::new()) };
}

/// Forget all recorded factorizations on this thread.
pub fn clear_split_registry() {
    KNOWN.with(|k| k.borrow_mut().clear());
}

/// Recorded factors (monic) on this thread.
pub fn split_log() -> Vec<UniPoly<Gq>> {
    KNOWN.with(|k| k.borrow().clone())
}

fn record(f: &UniPoly<Gq>) {
    KNOWN.with(|k| {
        let mut k = k.borrow_mut();
        if !k.contains(f) {
            k.push(f.clone());
        }
    });
}

fn refine(p: &UniPoly<Gq>, known: &[UniPoly<Gq>]) -> Vec<UniPoly<Gq>> {
    let mut pieces = vec![p.clone()];
    for f in known {
        let mut next = Vec::new();
        for q in pieces {
            let g = q.gcd_monic(f);
            if g.deg() >= 1 && g.deg() < q.deg() {
                next.push(q.div_rem(&g).0.monic());
                next.push(g);
            } else {
                next.push(q);
            }
        }
        pieces = next;
    }
    pieces
}

/// A zero-divisor was met: `modulus = factor * cofactor`, both nonconstant.
#[derive(Clone, Debug)]
pub struct Split {
    pub modulus: UniPoly<Gq>,
    pub factor: UniPoly<Gq>,
    pub cofactor: UniPoly<Gq>,
}

impl Split {
    fn new(modulus: &UniPoly<Gq>, g: UniPoly<Gq>) -> Split {
        let cofactor = modulus.div_rem(&g).0.monic();
        record(&g);
        record(&cofactor);
        Split {
            modulus: modulus.clone(),
            factor: g,
            cofactor,
        }
    }

    /// Whether this split concerns `ctx`.
    pub fn concerns(&self, ctx: &Option<Ctx>) -> bool {
        ctx.as_ref().map_or(false, |c| c.modulus == self.modulus)
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "modulus {} splits as ({}) * ({})",
            render_t(&self.modulus),
            render_t(&self.factor),
            render_t(&self.cofactor)
        )
    }
}

pub type ExtResult<T> = Result<T, Split>;

#[derive(Clone, Debug)]
pub enum InvError {
    Zero,
    Split(Split),
}

/// Element of a context; `ctx == None` means a constant of `Q(i)`, valid everywhere.
#[derive(Clone)]
pub struct Ext {
    ctx: Option<Ctx>,
    rep: UniPoly<Gq>,
}

impl Ext {
    pub fn from_gq(c: Gq) -> Ext {
        Ext {
            ctx: None,
            rep: UniPoly::constant(c),
        }
    }

    pub fn from_int(n: i64) -> Ext {
        Ext::from_gq(Gq::from_int(n))
    }

    pub fn i() -> Ext {
        Ext::from_gq(Gq::i())
    }

    /// Element with representative `rep(t)`, reduced modulo the context.
    pub fn from_rep(ctx: Option<Ctx>, rep: UniPoly<Gq>) -> Ext {
        match ctx {
            None => {
                assert!(rep.deg() <= 0, "non-constant element without context");
                Ext { ctx: None, rep }
            }
            Some(c) => {
                let rep = rep.rem_monic(&c.modulus);
                if rep.deg() <= 0 {
                    Ext { ctx: None, rep }
                } else {
                    Ext { ctx: Some(c), rep }
                }
            }
        }
    }

    pub fn ctx(&self) -> &Option<Ctx> {
        &self.ctx
    }

    pub fn rep(&self) -> &UniPoly<Gq> {
        &self.rep
    }

    /// The value as a `Q(i)` constant, if it is one.
    pub fn as_gq(&self) -> Option<Gq> {
        if self.rep.deg() <= 0 {
            Some(self.rep.coeff(0))
        } else {
            None
        }
    }

    fn join(a: &Option<Ctx>, b: &Option<Ctx>) -> Option<Ctx> {
        match (a, b) {
            (None, None) => None,
            (Some(c), None) | (None, Some(c)) => Some(c.clone()),
            (Some(c), Some(d)) => {
                debug_assert!(
                    Arc::ptr_eq(c, d) || c.modulus == d.modulus,
                    "mixing elements of different contexts"
                );
                Some(c.clone())
            }
        }
    }

    /// `Ok(true)` iff zero at every root, `Ok(false)` iff invertible.
    pub fn zero_test(&self) -> ExtResult<bool> {
        if self.rep.is_zero() {
            return Ok(true);
        }
        let Some(c) = &self.ctx else {
            return Ok(false);
        };
        let g = self.rep.gcd_monic(&c.modulus);
        if g.deg() == 0 {
            Ok(false)
        } else {
            Err(Split::new(&c.modulus, g))
        }
    }

    pub fn is_nonzero(&self) -> ExtResult<bool> {
        self.zero_test().map(|z| !z)
    }

    pub fn invert_or_split(&self) -> Result<Ext, InvError> {
        if self.rep.is_zero() {
            return Err(InvError::Zero);
        }
        let Some(c) = &self.ctx else {
            return Ok(Ext::from_gq(Field::inv(&self.rep.coeff(0))));
        };
        let (g, s, _) = self.rep.ext_gcd(&c.modulus);
        if g.deg() == 0 {
            Ok(Ext::from_rep(self.ctx.clone(), s))
        } else {
            Err(InvError::Split(Split::new(&c.modulus, g)))
        }
    }

    /// Inverse; zero is a caller bug.
    pub fn try_inv(&self) -> ExtResult<Ext> {
        match self.invert_or_split() {
            Ok(v) => Ok(v),
            Err(InvError::Split(s)) => Err(s),
            Err(InvError::Zero) => panic!("inverse of zero"),
        }
    }

    pub fn try_div(&self, o: &Ext) -> ExtResult<Ext> {
        Ok(self.mul(&o.try_inv()?))
    }

    /// Image under `t -> t_image` into another context.
    pub fn embed(&self, t_image: &Ext) -> Ext {
        if self.rep.deg() <= 0 {
            return Ext::from_gq(self.rep.coeff(0));
        }
        self.rep.eval_with(t_image, |c| Ext::from_gq(c.clone()))
    }
}

impl PartialEq for Ext {
    fn eq(&self, o: &Ext) -> bool {
        self.rep == o.rep
    }
}

impl Ring for Ext {
    fn zero() -> Self {
        Ext::from_gq(Gq::zero())
    }
    fn one() -> Self {
        Ext::from_gq(Gq::one())
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Ext::from_rep(Ext::join(&self.ctx, &o.ctx), self.rep.add(&o.rep))
    }
    fn sub(&self, o: &Self) -> Self {
        Ext::from_rep(Ext::join(&self.ctx, &o.ctx), self.rep.sub(&o.rep))
    }
    fn mul(&self, o: &Self) -> Self {
        if self.ctx.is_none() && o.ctx.is_none() {
            return Ext::from_gq(self.rep.coeff(0).mul(&o.rep.coeff(0)));
        }
        Ext::from_rep(Ext::join(&self.ctx, &o.ctx), self.rep.mul(&o.rep))
    }
    fn neg(&self) -> Self {
        Ext {
            ctx: self.ctx.clone(),
            rep: self.rep.neg(),
        }
    }
    fn from_i64(n: i64) -> Self {
        Ext::from_int(n)
    }
}

/// Render a polynomial over `Q(i)` in the variable `t`.
pub fn render_t(p: &UniPoly<Gq>) -> String {
    render_var(p, "t")
}

pub fn render_var(p: &UniPoly<Gq>, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = c.to_string();
        let (neg, body) = match cs.strip_prefix('-') {
            Some(rest) if !cs.starts_with("-(") => (true, rest.to_string()),
            _ => (false, cs.clone()),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{}^{}", var, k),
        };
        if k == 0 {
            out.push_str(&body);
        } else if body == "1" {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", body, mono));
        }
    }
    out
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rep.deg() <= 0 {
            write!(f, "{}", self.rep.coeff(0))
        } else {
            write!(f, "({})", render_t(&self.rep))
        }
    }
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Result of adjoining a root of a polynomial to a context.
#[derive(Clone, Debug)]
pub struct Adjoined {
    pub ctx: Option<Ctx>,
    /// Image of the old generator `t` (zero when the old context was `Q(i)`).
    pub t_image: Ext,
    /// The adjoined root.
    pub root: Ext,
}

impl Adjoined {
    pub fn embed(&self, e: &Ext) -> Ext {
        e.embed(&self.t_image)
    }

    pub fn degree(&self) -> usize {
        self.ctx.as_ref().map_or(1, |c| c.degree())
    }
}

/// Context degree over `Q(i)`.
pub fn ctx_degree(ctx: &Option<Ctx>) -> usize {
    ctx.as_ref().map_or(1, |c| c.degree())
}

fn c_poly_mul_mod(a: &UniPoly<Ext>, b: &UniPoly<Ext>, psi: &UniPoly<Ext>) -> UniPoly<Ext> {
    a.mul(b).rem_monic(psi)
}

/// Adjoin a root `c` of a monic `psi` over `ctx`, returning one entry per
/// piece of `ctx[c]/(psi)` as a primitive-element context.
pub fn adjoin_root(ctx: &Option<Ctx>, psi: &UniPoly<Ext>) -> Vec<Adjoined> {
    let k = psi.degree().expect("adjoining a root of zero");
    assert!(k >= 1 && psi.lc() == Ext::one(), "adjoin_root needs a monic nonconstant polynomial");
    let gen = ctx
        .as_ref()
        .map(|c| c.gen())
        .unwrap_or_else(Ext::zero);
    if k == 1 {
        return vec![Adjoined {
            ctx: ctx.clone(),
            t_image: gen,
            root: psi.coeff(0).neg(),
        }];
    }
    let Some(base) = ctx else {
        let q: UniPoly<Gq> = psi.map(|c| c.as_gq().unwrap());
        return ExtensionContext::create(&q)
            .into_iter()
            .map(|c| Adjoined {
                root: c.gen(),
                ctx: Some(c),
                t_image: Ext::zero(),
            })
            .collect();
    };
    let n = base.degree();
    let dim = n * k;
    let coords = |a: &UniPoly<Ext>| -> Vec<Gq> {
        let mut v = vec![Gq::zero(); dim];
        for b in 0..k {
            let cb = a.coeff(b);
            for t in 0..n {
                v[b * n + t] = cb.rep().coeff(t);
            }
        }
        v
    };
    let c_elem = UniPoly::x();
    let t_elem = UniPoly::constant(base.gen());
    for attempt in 0..64i64 {
        let lambda = if attempt % 2 == 0 { attempt / 2 } else { -(attempt + 1) / 2 };
        let sigma = c_elem.add(&t_elem.scale(&Ext::from_int(lambda)));
        let mut powers = vec![UniPoly::constant(Ext::one())];
        for _ in 0..dim {
            let next = c_poly_mul_mod(powers.last().unwrap(), &sigma, psi);
            powers.push(next);
        }
        let cols: Vec<Vec<Gq>> = powers.iter().map(coords).collect();
        let a: Vec<Vec<Gq>> = (0..dim)
            .map(|i| (0..dim).map(|j| cols[j][i].clone()).collect())
            .collect();
        let rhs = vec![cols[dim].clone(), coords(&t_elem), coords(&c_elem)];
        let Some(sol) = linalg::solve(&a, &rhs) else {
            continue;
        };
        let mut q = sol[0].iter().map(|c| c.neg()).collect::<Vec<_>>();
        q.push(Gq::one());
        let q = UniPoly::new(q);
        let t_of_s = UniPoly::new(sol[1].clone());
        let c_of_s = UniPoly::new(sol[2].clone());
        return ExtensionContext::create(&q)
            .into_iter()
            .map(|c| Adjoined {
                t_image: Ext::from_rep(Some(c.clone()), t_of_s.clone()),
                root: Ext::from_rep(Some(c.clone()), c_of_s.clone()),
                ctx: Some(c),
            })
            .collect();
    }
    panic!("no primitive element found");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gq(v: &[i64]) -> UniPoly<Gq> {
        UniPoly::new(v.iter().map(|&x| Gq::from_int(x)).collect())
    }

    #[test]
    fn inverse_of_t_mod_cubic() {
        let ctx = ExtensionContext::raw(&gq(&[-20, 0, 0, 1]));
        let t = ctx.gen();
        let inv = t.try_inv().unwrap();
        assert_eq!(inv.rep(), &UniPoly::new(vec![Gq::zero(), Gq::zero(), Gq::from_ratio(1, 20)]));
        let tm1 = t.sub(&Ext::one());
        assert!(tm1.try_inv().is_ok());
    }

    #[test]
    fn zero_divisor_splits() {
        let ctx = ExtensionContext::raw(&gq(&[0, -1, 1]));
        match ctx.gen().invert_or_split() {
            Err(InvError::Split(s)) => {
                assert_eq!(s.factor.mul(&s.cofactor), gq(&[0, -1, 1]));
            }
            other => panic!("expected split, got {:?}", other),
        }
        let pieces = ExtensionContext::create(&gq(&[0, -1, 1]));
        assert_eq!(pieces.len(), 2);
        clear_split_registry();
    }

    #[test]
    fn adjoin_sqrt2_over_i() {
        // Q(i)(sqrt 2): root c with c^2 = 2
        let psi = UniPoly::new(vec![Ext::from_int(-2), Ext::zero(), Ext::one()]);
        let adj = adjoin_root(&None, &psi);
        assert_eq!(adj.len(), 1);
        let r = &adj[0].root;
        assert_eq!(r.mul(r), Ext::from_int(2));
        // now adjoin cube root of 20 on top
        let psi2 = UniPoly::new(vec![Ext::from_int(-20), Ext::zero(), Ext::zero(), Ext::one()]);
        let adj2 = adjoin_root(&adj[0].ctx, &psi2);
        assert_eq!(adj2.len(), 1);
        assert_eq!(adj2[0].degree(), 6);
        let c = &adj2[0].root;
        assert_eq!(c.mul(c).mul(c), Ext::from_int(20));
        let s2 = adj2[0].embed(r);
        assert_eq!(s2.mul(&s2), Ext::from_int(2));
    }
}
