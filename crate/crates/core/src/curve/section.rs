//! Intersections of a curve with lines.

use super::point::{self, embed_point, Line, Point};
use super::{restriction, PlaneCurve};
use crate::arith::extpoly::{normalize_degree, order_at_zero, squarefree_decomposition};
use crate::arith::{adjoin_root, Ctx, Ext, ExtResult, Ring, UniPoly};
use crate::error::{CausticError, Res};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tag {
    /// The first parametrizing point `P`.
    P,
    /// The second parametrizing point `Q`.
    Q,
    Other,
}

/// A bundle of intersection points with their intersection number.
#[derive(Clone, Debug)]
pub struct SectionPoint {
    pub ctx: Option<Ctx>,
    pub point: Point,
    /// `i_m(C, line)`, the same for every point of the bundle.
    pub mult: usize,
    pub tag: Tag,
    /// Image of the generator of the line's context in `ctx`.
    pub t_image: Ext,
}

impl SectionPoint {
    pub fn size(&self) -> usize {
        crate::arith::ctx_degree(&self.ctx)
    }
}

/// `C` intersected with the line through distinct points `p`, `q` (same context),
/// parametrized as `lambda p + q` plus `p` itself.
pub fn section(curve: &PlaneCurve, ctx: &Option<Ctx>, p: &Point, q: &Point) -> Res<Vec<SectionPoint>> {
    let d = curve.degree() as usize;
    let u = normalize_degree(&restriction(curve.f_ext(), p, q))?;
    if u.is_zero() {
        return Err(CausticError::LineComponent.into());
    }
    let gen = ctx.as_ref().map_or_else(Ext::zero, |c| c.gen());
    let mut out = Vec::new();
    let at_p = d - u.degree().unwrap();
    if at_p > 0 {
        out.push(SectionPoint {
            ctx: ctx.clone(),
            point: p.clone(),
            mult: at_p,
            tag: Tag::P,
            t_image: gen.clone(),
        });
    }
    let ord = order_at_zero(&u)?.unwrap();
    if ord > 0 {
        out.push(SectionPoint {
            ctx: ctx.clone(),
            point: q.clone(),
            mult: ord,
            tag: Tag::Q,
            t_image: gen.clone(),
        });
    }
    let rest = UniPoly::new(u.coeffs()[ord..].to_vec());
    if rest.deg() >= 1 {
        for (k, psi) in squarefree_decomposition(&rest)? {
            for adj in adjoin_root(ctx, &psi) {
                let pp = embed_point(p, &adj.t_image);
                let qq = embed_point(q, &adj.t_image);
                out.push(SectionPoint {
                    point: point::add(&point::scale(&pp, &adj.root), &qq),
                    ctx: adj.ctx.clone(),
                    mult: k,
                    tag: Tag::Other,
                    t_image: if ctx.is_some() { adj.t_image.clone() } else { Ext::zero() },
                });
            }
        }
    }
    Ok(out)
}

/// Intersection of `C` with a line given by its equation.
pub fn intersect_with_line(curve: &PlaneCurve, ctx: &Option<Ctx>, line: &Line) -> Res<Vec<SectionPoint>> {
    let p = line.some_point()?;
    let q = line.other_point(&p)?;
    section(curve, ctx, &p, &q)
}

/// `i_m(C, line)` for a point `m` of the line.
pub fn line_point_order(curve: &PlaneCurve, line: &Line, m: &Point) -> Res<usize> {
    let q = line.other_point(m)?;
    let u = normalize_degree(&restriction(curve.f_ext(), m, &q))?;
    if u.is_zero() {
        return Err(CausticError::LineComponent.into());
    }
    Ok(curve.degree() as usize - u.degree().unwrap())
}

/// Contact number `Omega_m(C, line) = i_m(C, line) - mu_m(C)` (zero off the curve).
pub fn contact_number(curve: &PlaneCurve, line: &Line, m: &Point) -> Res<usize> {
    if !line.contains(m)? {
        return Ok(0);
    }
    let i = line_point_order(curve, line, m)?;
    let mu = curve.multiplicity(m)?;
    Ok(i - mu)
}

/// Whether the binary restriction of `F` to the line through `p`, `q` has a repeated root.
pub fn restriction_has_double_root(curve: &PlaneCurve, p: &Point, q: &Point) -> ExtResult<bool> {
    let u = normalize_degree(&restriction(curve.f_ext(), p, q))?;
    let d = curve.degree() as usize;
    if u.is_zero() {
        return Ok(true);
    }
    if d - u.degree().unwrap() >= 2 {
        return Ok(true);
    }
    Ok(squarefree_decomposition(&u)?.iter().any(|(k, _)| *k >= 2))
}
