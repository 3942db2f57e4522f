//! Caustics by reflection: the reflected map, its base points and the
//! computation of the class of the caustic.

pub mod delta;
pub mod hvalue;
pub mod report;
pub mod terms;
pub mod verify;

use serde::Serialize;

use crate::arith::{adjoin_root, ctx_degree, drive, Ctx, Ext, Reduce, Ring, TriPoly, UniPoly};
use crate::curve::point::{self, cyclic_i, cyclic_j, embed_point, Line, Point};
use crate::curve::section::{section, Tag};
use crate::curve::PlaneCurve;
use crate::error::{CausticError, Res};

/// A light source, possibly with coordinates in an extension of `Q(i)`.
/// With an extension the source stands for all its conjugates at once and
/// every reported number is per conjugate.
#[derive(Clone, Debug)]
pub struct Source {
    pub ctx: Option<Ctx>,
    pub coords: Point,
}

impl Source {
    pub fn rational(coords: Point) -> Self {
        Source { ctx: None, coords }
    }

    pub fn degree(&self) -> usize {
        ctx_degree(&self.ctx)
    }
}

impl Reduce for Source {
    fn reduce(&self, ctx: &Option<Ctx>) -> Self {
        Source { ctx: ctx.clone(), coords: self.coords.reduce(ctx) }
    }
}

/// The reflected map `R = (u, v, w)`: each component a form of degree `2d - 1`.
#[derive(Clone, Debug)]
pub struct ReflectedMap {
    pub comps: [TriPoly<Ext>; 3],
}

impl ReflectedMap {
    /// `a0 u + a1 v + a2 w`.
    pub fn combine(&self, a: &Point) -> TriPoly<Ext> {
        self.comps[0]
            .scale(&a[0])
            .add(&self.comps[1].scale(&a[1]))
            .add(&self.comps[2].scale(&a[2]))
    }

    pub fn eval(&self, m: &Point) -> Point {
        std::array::from_fn(|k| self.comps[k].eval(m))
    }

    /// Coefficients moved along an embedding of contexts.
    pub fn embed(&self, t_image: &Ext) -> ReflectedMap {
        ReflectedMap { comps: std::array::from_fn(|k| self.comps[k].map(|c| c.embed(t_image))) }
    }

    /// `R o M` componentwise.
    pub fn compose(&self, m: &crate::curve::Mat3) -> ReflectedMap {
        ReflectedMap { comps: std::array::from_fn(|k| self.comps[k].substitute_linear(m)) }
    }
}

fn linear_form(a: &Point) -> TriPoly<Ext> {
    TriPoly::from_terms((0..3).map(|k| {
        let mut e = [0; 3];
        e[k] = 1;
        (e, a[k].clone())
    }))
}

/// `(grad F . I)(grad F . J) (m ^ S) - Delta_S F (m ^ ((grad F . J) I + (grad F . I) J))`
/// for an arbitrary pair `I, J` in place of the cyclic points.
pub fn reflected_map_general(f: &TriPoly<Ext>, s: &Point, i: &Point, j: &Point) -> ReflectedMap {
    let grad = f.gradient();
    let pair = |p: &Point| grad[0].scale(&p[0]).add(&grad[1].scale(&p[1])).add(&grad[2].scale(&p[2]));
    let (gi, gj) = (pair(i), pair(j));
    let q = gi.mul(&gj);
    let ds = pair(s);
    let n: [TriPoly<Ext>; 3] = std::array::from_fn(|k| gj.scale(&i[k]).add(&gi.scale(&j[k])));
    let m = [TriPoly::var(0), TriPoly::var(1), TriPoly::var(2)];
    let sc: [TriPoly<Ext>; 3] = std::array::from_fn(|k| TriPoly::constant(s[k].clone()));
    let wedge = |a: &[TriPoly<Ext>; 3], b: &[TriPoly<Ext>; 3]| -> [TriPoly<Ext>; 3] {
        [
            a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
            a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
            a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
        ]
    };
    let ms = wedge(&m, &sc);
    let mn = wedge(&m, &n);
    ReflectedMap { comps: std::array::from_fn(|k| q.mul(&ms[k]).sub(&ds.mul(&mn[k]))) }
}

/// The reflected map of `C` from `S`.
pub fn reflected_map(curve: &PlaneCurve, s: &Point) -> ReflectedMap {
    reflected_map_general(curve.f_ext(), s, &cyclic_i(), &cyclic_j())
}

/// `V(a . R)`, the reflected polar of `C` from `S` at `a`.
pub fn reflected_polar(r: &ReflectedMap, a: &Point) -> Result<TriPoly<Ext>, CausticError> {
    let p = r.combine(a);
    if p.is_zero() {
        return Err(CausticError::Internal("reflected polar vanishes identically".into()));
    }
    Ok(p)
}

/// Outcome of the nondegeneracy test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Ok,
    SourceIsCyclic,
    Line,
    Focus,
}

impl Verdict {
    pub fn reason(&self) -> &'static str {
        match self {
            Verdict::Ok => "nondegenerate",
            Verdict::SourceIsCyclic => "the source is a cyclic point",
            Verdict::Line => "the mirror is a line",
            Verdict::Focus => "the mirror is a conic and the source is one of its foci",
        }
    }

    pub fn into_result(self) -> Result<(), CausticError> {
        match self {
            Verdict::Ok => Ok(()),
            v => Err(CausticError::Degenerate(v.reason().into())),
        }
    }
}

/// Reject `S` in `{I, J}`, lines, and foci of conics (both isotropic lines
/// through `S` tangent to `C`).
pub fn degeneracy_check(curve: &PlaneCurve, src: &Source) -> Result<Verdict, CausticError> {
    let out = drive(&src.ctx, src.coords.clone(), |_, s| {
        if point::same_point(s, &cyclic_i())? || point::same_point(s, &cyclic_j())? {
            return Ok(Verdict::SourceIsCyclic);
        }
        if curve.degree() == 1 {
            return Ok(Verdict::Line);
        }
        if curve.degree() == 2 {
            let t_i = crate::curve::section::restriction_has_double_root(curve, &cyclic_i(), s)?;
            let t_j = crate::curve::section::restriction_has_double_root(curve, &cyclic_j(), s)?;
            if t_i && t_j {
                return Ok(Verdict::Focus);
            }
        }
        Ok(Verdict::Ok)
    })?;
    Ok(out.into_iter().map(|(_, v)| v).find(|v| *v != Verdict::Ok).unwrap_or(Verdict::Ok))
}

/// A bundle of conjugate points in a context extending the source's
/// context; `s_image` is the image of the source context's generator.
#[derive(Clone, Debug)]
pub struct Site {
    pub ctx: Option<Ctx>,
    pub s_image: Ext,
    pub point: Point,
}

impl Site {
    pub fn weight(&self) -> usize {
        ctx_degree(&self.ctx)
    }

    pub fn source(&self, s: &Point) -> Point {
        embed_point(s, &self.s_image)
    }
}

impl Reduce for Site {
    fn reduce(&self, ctx: &Option<Ctx>) -> Self {
        Site { ctx: ctx.clone(), s_image: self.s_image.reduce(ctx), point: self.point.reduce(ctx) }
    }
}

fn gen_of(ctx: &Option<Ctx>) -> Ext {
    ctx.as_ref().map_or_else(Ext::zero, |c| c.gen())
}

/// Bring a bundle over `Q(i)`-context `pctx` into extensions of the source context.
pub fn lift(sctx: &Option<Ctx>, pctx: &Option<Ctx>, p: &Point) -> Vec<Site> {
    match (sctx, pctx) {
        (_, None) => vec![Site { ctx: sctx.clone(), s_image: gen_of(sctx), point: p.clone() }],
        (None, Some(_)) => vec![Site { ctx: pctx.clone(), s_image: Ext::zero(), point: p.clone() }],
        (Some(_), Some(pc)) => {
            let psi: UniPoly<Ext> = pc.modulus().map(|c| Ext::from_gq(c.clone()));
            adjoin_root(sctx, &psi)
                .into_iter()
                .map(|adj| Site {
                    point: std::array::from_fn(|k| p[k].embed(&adj.root)),
                    s_image: adj.t_image.clone(),
                    ctx: adj.ctx,
                })
                .collect()
        }
    }
}

/// Base points of `T_{C,S}`: `{I, J, S} n C`, the singular points, and the
/// points where `C` is tangent to a side of the triangle `(IJS)`.
pub fn base_points(curve: &PlaneCurve, src: &Source) -> Result<Vec<Site>, CausticError> {
    let sing = curve.singular_points()?;
    let pieces = drive(&src.ctx, src.coords.clone(), |sctx, s| base_points_in(curve, sctx, s, &sing))?;
    Ok(pieces.into_iter().flat_map(|(_, v)| v).collect())
}

pub(crate) fn base_points_in(
    curve: &PlaneCurve,
    sctx: &Option<Ctx>,
    s: &Point,
    sing: &[crate::curve::PointCluster],
) -> Res<Vec<Site>> {
    let mut out = Vec::new();
    let here = |p: Point| Site { ctx: sctx.clone(), s_image: gen_of(sctx), point: p };
    for p in [cyclic_i(), cyclic_j(), s.clone()] {
        if curve.multiplicity(&p)? == 1 {
            out.push(here(p));
        }
    }
    for c in sing {
        out.extend(lift(sctx, &c.ctx, &c.coords));
    }
    let at_inf = s[2].zero_test()?;
    let mut lines = vec![(cyclic_i(), cyclic_j())];
    if !at_inf {
        lines.push((cyclic_i(), s.clone()));
        lines.push((cyclic_j(), s.clone()));
    }
    for (p, q) in lines {
        for sp in section(curve, sctx, &p, &q)? {
            if sp.tag != Tag::Other || sp.mult < 2 {
                continue;
            }
            if curve.multiplicity(&sp.point)? != 1 {
                continue;
            }
            let s_here = embed_point(s, &sp.t_image);
            if point::same_point(&sp.point, &s_here)? {
                continue;
            }
            out.push(Site {
                s_image: if sctx.is_some() { sp.t_image.clone() } else { Ext::zero() },
                ctx: sp.ctx,
                point: sp.point,
            });
        }
    }
    Ok(out)
}

pub(crate) fn line_form(l: &Line) -> TriPoly<Ext> {
    linear_form(&l.coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mat;
    use crate::curve::point::pt;

    #[test]
    fn wedge_identity() {
        let c = PlaneCurve::parse("y^2*z^3 - x^5").unwrap();
        let r = reflected_map(&c, &pt(2, -3, 7));
        let x = TriPoly::var(0).mul(&r.comps[0]);
        let y = TriPoly::var(1).mul(&r.comps[1]);
        let z = TriPoly::var(2).mul(&r.comps[2]);
        assert!(x.add(&y).add(&z).is_zero());
        assert!(r.comps.iter().all(|p| p.degree() == Some(9)));
    }

    #[test]
    fn equivariance_under_a_linear_change() {
        let c = PlaneCurve::parse("(x^2+y^2)^2 - 2*(x^2-y^2)*z^2").unwrap();
        let s = pt(1, 2, 3);
        let mq = [[2, 1, 0], [0, 1, -1], [1, 0, 1]].map(|r| r.map(|v| crate::arith::GaussianRational::from_int(v)));
        let m = mat::map(&mq, |c| Ext::from_gq(c.clone()));
        let inv = mat::map(&mat::inverse(&mq).unwrap(), |c| Ext::from_gq(c.clone()));
        let lhs = reflected_map(&c, &s).compose(&m);
        let fm = c.f_ext().substitute_linear(&m);
        let rm = reflected_map_general(&fm, &mat::apply(&inv, &s), &mat::apply(&inv, &cyclic_i()), &mat::apply(&inv, &cyclic_j()));
        let com = mat::comatrix(&m);
        for k in 0..3 {
            let rhs = rm.comps[0]
                .scale(&com[k][0])
                .add(&rm.comps[1].scale(&com[k][1]))
                .add(&rm.comps[2].scale(&com[k][2]));
            assert_eq!(lhs.comps[k], rhs);
        }
    }

    #[test]
    fn focus_of_circle_is_degenerate() {
        let c = PlaneCurve::parse("x^2 + y^2 - z^2").unwrap();
        let v = degeneracy_check(&c, &Source::rational(pt(0, 0, 1))).unwrap();
        assert_eq!(v, Verdict::Focus);
        let v = degeneracy_check(&c, &Source::rational(pt(1, 0, 3))).unwrap();
        assert_eq!(v, Verdict::Ok);
        let v = degeneracy_check(&c, &Source::rational(cyclic_i())).unwrap();
        assert_eq!(v, Verdict::SourceIsCyclic);
    }

    #[test]
    fn lemniscate_base_points() {
        let c = PlaneCurve::parse("(x^2+y^2)^2 - 2*(x^2-y^2)*z^2").unwrap();
        let src = Source::rational(pt(3, 1, 7));
        let sites = base_points(&c, &src).unwrap();
        let total: usize = sites.iter().map(|s| s.weight()).sum();
        assert_eq!(total, 3);
        let r = reflected_map(&c, &src.coords);
        for s in &sites {
            assert!(point::is_zero_vec(&r.eval(&s.point)).unwrap());
        }
    }

    #[test]
    fn conic_generic_source_has_no_base_points() {
        let c = PlaneCurve::parse("x^2 + 2*y^2 - z^2").unwrap();
        let src = Source::rational(pt(3, 1, 7));
        assert!(base_points(&c, &src).unwrap().is_empty());
        let r = report::mclass(&c, &src, &report::ReportOptions::default()).unwrap();
        assert_eq!(r.class, Some(6));
    }
}
