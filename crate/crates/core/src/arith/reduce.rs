//! Moving data into factor contexts after a split, and the retry driver.

use super::ext::{Ctx, Ext, ExtensionContext};
use super::poly::{Ring, UniPoly};
use crate::error::{CausticError, Fail, Res};

/// Reduce every element modulo the modulus of a factor context.
pub trait Reduce: Sized {
    fn reduce(&self, ctx: &Option<Ctx>) -> Self;
}

impl Reduce for Ext {
    fn reduce(&self, ctx: &Option<Ctx>) -> Self {
        match self.as_gq() {
            Some(c) => Ext::from_gq(c),
            None => Ext::from_rep(ctx.clone(), self.rep().clone()),
        }
    }
}

impl<T: Reduce + Ring> Reduce for UniPoly<T> {
    fn reduce(&self, ctx: &Option<Ctx>) -> Self {
        UniPoly::new(self.coeffs().iter().map(|c| c.reduce(ctx)).collect())
    }
}

impl<T: Reduce + Ring> Reduce for super::TriPoly<T> {
    fn reduce(&self, ctx: &Option<Ctx>) -> Self {
        super::TriPoly::from_terms(self.terms().map(|(e, c)| (*e, c.reduce(ctx))))
    }
}

impl<T: Reduce> Reduce for Vec<T> {
    fn reduce(&self, ctx: &Option<Ctx>) -> Self {
        self.iter().map(|c| c.reduce(ctx)).collect()
    }
}

impl<T: Reduce, const N: usize> Reduce for [T; N] {
    fn reduce(&self, ctx: &Option<Ctx>) -> Self {
        std::array::from_fn(|k| self[k].reduce(ctx))
    }
}

impl<A: Reduce, B: Reduce, C: Reduce> Reduce for (A, B, C) {
    fn reduce(&self, ctx: &Option<Ctx>) -> Self {
        (self.0.reduce(ctx), self.1.reduce(ctx), self.2.reduce(ctx))
    }
}

impl<A: Reduce, B: Reduce> Reduce for (A, B) {
    fn reduce(&self, ctx: &Option<Ctx>) -> Self {
        (self.0.reduce(ctx), self.1.reduce(ctx))
    }
}

impl Reduce for () {
    fn reduce(&self, _: &Option<Ctx>) -> Self {}
}

const MAX_RETRIES: usize = 400;

/// Run `f` on `data` living over `ctx`. A split of `ctx` itself re-runs `f`
/// on each factor context; a split of any other (derived) context is already
/// recorded, so `f` is simply retried. Results are returned per piece.
pub fn drive<D: Reduce, T>(
    ctx: &Option<Ctx>,
    data: D,
    mut f: impl FnMut(&Option<Ctx>, &D) -> Res<T>,
) -> Result<Vec<(Option<Ctx>, T)>, CausticError> {
    let mut queue = vec![(ctx.clone(), data)];
    let mut out = Vec::new();
    let mut retries = 0;
    while let Some((c, d)) = queue.pop() {
        match f(&c, &d) {
            Ok(v) => out.push((c, v)),
            Err(Fail::Err(e)) => return Err(e),
            Err(Fail::Split(s)) => {
                retries += 1;
                if retries > MAX_RETRIES {
                    return Err(CausticError::Internal("too many context splits".into()));
                }
                if s.concerns(&c) {
                    let modulus = c.as_ref().unwrap().modulus().clone();
                    let pieces = ExtensionContext::create(&modulus);
                    for p in pieces.into_iter().rev() {
                        let p = Some(p);
                        let dd = d.reduce(&p);
                        queue.push((p, dd));
                    }
                } else {
                    queue.push((c, d));
                }
            }
        }
    }
    out.reverse();
    Ok(out)
}

/// Like [`drive`] but nested inside a computation that may itself be split:
/// splits of contexts other than `ctx` propagate to the caller.
pub fn drive_inner<D: Reduce, T>(
    ctx: &Option<Ctx>,
    data: D,
    mut f: impl FnMut(&Option<Ctx>, &D) -> Res<T>,
) -> Res<Vec<(Option<Ctx>, T)>> {
    let mut queue = vec![(ctx.clone(), data)];
    let mut out = Vec::new();
    while let Some((c, d)) = queue.pop() {
        match f(&c, &d) {
            Ok(v) => out.push((c, v)),
            Err(Fail::Split(s)) if s.concerns(&c) => {
                let modulus = c.as_ref().unwrap().modulus().clone();
                for p in ExtensionContext::create(&modulus).into_iter().rev() {
                    let p = Some(p);
                    let dd = d.reduce(&p);
                    queue.push((p, dd));
                }
            }
            Err(e) => return Err(e),
        }
    }
    out.reverse();
    Ok(out)
}

/// Like [`drive_inner`] for data over a context built directly on `outer`:
/// splits of `ctx` re-run on the pieces, splits of `outer` propagate, and any
/// other split (of a context derived inside `f`) is retried.
pub fn drive_within<D: Reduce, T>(
    ctx: &Option<Ctx>,
    outer: &Option<Ctx>,
    data: D,
    mut f: impl FnMut(&Option<Ctx>, &D) -> Res<T>,
) -> Res<Vec<(Option<Ctx>, T)>> {
    let mut queue = vec![(ctx.clone(), data)];
    let mut out = Vec::new();
    let mut retries = 0;
    while let Some((c, d)) = queue.pop() {
        match f(&c, &d) {
            Ok(v) => out.push((c, v)),
            Err(Fail::Split(s)) if s.concerns(&c) => {
                let modulus = c.as_ref().unwrap().modulus().clone();
                for p in ExtensionContext::create(&modulus).into_iter().rev() {
                    let p = Some(p);
                    let dd = d.reduce(&p);
                    queue.push((p, dd));
                }
            }
            Err(Fail::Split(s)) if !s.concerns(outer) => {
                retries += 1;
                if retries > MAX_RETRIES {
                    return Err(CausticError::Internal("too many context splits".into()).into());
                }
                queue.push((c, d));
            }
            Err(e) => return Err(e),
        }
    }
    out.reverse();
    Ok(out)
}
