//! Local contributions `h_{m,B}` of branches to the class of the caustic.

use num_rational::Rational64;
use serde::Serialize;

use super::{ReflectedMap, Site};
use crate::arith::{BiPoly, Ctx, Ext};
use crate::curve::point::{cyclic_i, cyclic_j, render_point, same_point, Line, Point};
use crate::curve::section::line_point_order;
use crate::curve::{Mat3, PlaneCurve};
use crate::error::{CausticError, Res};
use crate::puiseux::local::{branches_with, LocalBranches};
use crate::puiseux::Branch;

/// What the case analysis needs to know about a branch.
#[derive(Clone, Debug)]
pub struct HInputs {
    pub e: usize,
    /// `i(B, T_B)`.
    pub i: usize,
    pub beta1: Option<Rational64>,
    /// Whether `I`, `J`, `S` lie on the tangent `T_B`.
    pub tangent_has: [bool; 3],
    /// Whether the centre is `I`, `J`, `S`.
    pub centre_is: [bool; 3],
}

/// The case (numbered 1 to 11) and the value `h`.
pub fn h_value_dispatch(inp: &HInputs) -> Result<(u8, usize), CausticError> {
    let [ti, _, ts] = inp.tangent_has;
    let [mi, mj, ms] = inp.centre_is;
    let (e, i) = (inp.e as i64, inp.i as i64);
    let k = inp.tangent_has.iter().filter(|b| **b).count();
    let (case, h) = match k {
        0 => (1, 0),
        1 if !(mi || mj || ms) => (2, 0),
        1 => (3, e),
        2 if ts => {
            let on_pair = if ti { mi } else { mj };
            if on_pair || ms {
                (5, i)
            } else {
                (4, i + (i - 2 * e).min(0))
            }
        }
        2 if mi || mj => (7, i),
        2 => (6, i - e),
        3 if !(mi || mj || ms) => (8, 2 * i - 2 * e),
        3 if mi || mj => (9, 2 * i - e),
        3 if i != 2 * e => (10, 2 * i - e),
        3 => {
            let three = Rational64::from_integer(3);
            let b = inp.beta1.map_or(three, |b| b.min(three));
            let v = Rational64::from_integer(e) * (Rational64::from_integer(1) + b);
            if !v.is_integer() {
                return Err(CausticError::Internal("non-integral h value".into()));
            }
            (11, v.to_integer())
        }
        _ => unreachable!(),
    };
    if h < 0 {
        return Err(CausticError::Internal(format!("negative h value in case {case}")));
    }
    Ok((case, h as usize))
}

/// One branch at a base point, with both evaluations of `h`.
#[derive(Clone, Debug, Serialize)]
pub struct HCaseRecord {
    pub point: String,
    /// Number of branches this record stands for, over all conjugates.
    pub weight: usize,
    pub case: u8,
    pub e: usize,
    pub i_tangent: usize,
    pub beta1: Option<String>,
    pub h: usize,
    pub h_direct: usize,
}

/// Per-branch data gathered at a base point.
#[derive(Clone, Debug)]
pub struct BranchData {
    pub record: HCaseRecord,
    pub inputs: HInputs,
    /// `i(B, l_inf)`.
    pub i_inf: usize,
    /// `min_j val R_j` along the branch.
    pub min_r: usize,
    /// `val f_y` along the branch.
    pub val_fy: usize,
    /// Valuation of the reflected polars.
    pub polar: Vec<usize>,
}

/// Everything computed at one bundle of base points.
#[derive(Clone, Debug)]
pub struct SiteData {
    pub weight: usize,
    pub mu: usize,
    pub centre_is: [bool; 3],
    /// `Omega_m(C, (IS))`, `Omega_m(C, (JS))`, `Omega_m(C, l_inf)`.
    pub omega_is: usize,
    pub omega_js: usize,
    pub omega_inf: usize,
    pub branches: Vec<BranchData>,
}

fn omega(curve: &PlaneCurve, l: &Line, m: &Point, mu: usize) -> Res<usize> {
    if !l.contains(m)? {
        return Ok(0);
    }
    Ok(line_point_order(curve, l, m)? - mu)
}

fn embed_point_b(b: &Branch, p: &Point) -> Point {
    std::array::from_fn(|k| b.embed(&p[k]))
}

/// Analyse one bundle of base points in the chart `mat`.
pub fn analyze_site(
    curve: &PlaneCurve,
    r: &ReflectedMap,
    s: &Point,
    ctx: &Option<Ctx>,
    site: &Site,
    mat: Option<Mat3>,
    polars: &[Point],
) -> Res<SiteData> {
    let m = &site.point;
    let s_here = site.source(s);
    let r_here = r.embed(&site.s_image);
    let (i_pt, j_pt) = (cyclic_i(), cyclic_j());
    let centre_is = [same_point(m, &i_pt)?, same_point(m, &j_pt)?, same_point(m, &s_here)?];
    let mu = curve.multiplicity(m)?;
    let l_is = Line::through(&i_pt, &s_here);
    let l_js = Line::through(&j_pt, &s_here);
    let omega_is = omega(curve, &l_is, m, mu)?;
    let omega_js = omega(curve, &l_js, m, mu)?;
    let omega_inf = omega(curve, &Line::infinity(), m, mu)?;
    let mat = match mat {
        Some(mm) => mm,
        None => curve.normalization_matrix(m)?,
    };
    let lb = branches_with(curve, ctx, m, mat, curve.max_trunc())?;
    let r_loc: Vec<BiPoly<Ext>> = r_here.comps.iter().map(|c| lb.localize(c)).collect();
    let polar_loc: Vec<BiPoly<Ext>> = polars.iter().map(|a| lb.localize(&r_here.combine(a))).collect();
    let fy = lb.f.derivative();
    let z_loc = lb.localize(&super::line_form(&Line::infinity()));
    let mut branches = Vec::new();
    for b in &lb.branches {
        branches.push(branch_data(&lb, b, &s_here, centre_is, &r_loc, &polar_loc, &fy, &z_loc)?);
    }
    Ok(SiteData { weight: site.weight(), mu, centre_is, omega_is, omega_js, omega_inf, branches })
}

#[allow(clippy::too_many_arguments)]
fn branch_data(
    lb: &LocalBranches,
    b: &Branch,
    s_here: &Point,
    centre_is: [bool; 3],
    r_loc: &[BiPoly<Ext>],
    polar_loc: &[BiPoly<Ext>],
    fy: &BiPoly<Ext>,
    z_loc: &BiPoly<Ext>,
) -> Res<BranchData> {
    let t = lb.tangent(b)?;
    let s_b = embed_point_b(b, s_here);
    let tangent_has = [t.contains(&cyclic_i())?, t.contains(&cyclic_j())?, t.contains(&s_b)?];
    let i = lb.tangent_contact(b)?;
    let beta1 = b.first_char_exponent()?;
    let inputs = HInputs { e: b.e, i, beta1, tangent_has, centre_is };
    let (case, h) = h_value_dispatch(&inputs)?;
    let r_b: Vec<BiPoly<Ext>> = r_loc.iter().map(|g| b.embed_bi(g)).collect();
    let min_r = b.min_valuation(&r_b)?;
    let val_fy = b.valuation_of(fy)?;
    if min_r < 2 * val_fy {
        return crate::error::internal("reflected map vanishes to lower order than expected");
    }
    let h_direct = min_r - 2 * val_fy;
    let mut polar = Vec::new();
    for p in polar_loc {
        polar.push(b.valuation_of(p)?);
    }
    let i_inf = b.valuation_of(z_loc)?;
    let record = HCaseRecord {
        point: render_point(&lb.point),
        weight: b.weight(),
        case,
        e: b.e,
        i_tangent: i,
        beta1: beta1.map(|r| r.to_string()),
        h,
        h_direct,
    };
    Ok(BranchData { record, inputs, i_inf, min_r, val_fy, polar })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inp(e: usize, i: usize, t: [bool; 3], m: [bool; 3], beta1: Option<Rational64>) -> HInputs {
        HInputs { e, i, beta1, tangent_has: t, centre_is: m }
    }

    #[test]
    fn all_eleven_cases() {
        let f = false;
        let tt = true;
        let cases = [
            (inp(1, 2, [f, f, f], [f, f, f], None), (1, 0)),
            (inp(2, 3, [tt, f, f], [f, f, f], None), (2, 0)),
            (inp(2, 3, [tt, f, f], [tt, f, f], None), (3, 2)),
            (inp(1, 3, [tt, f, tt], [f, f, f], None), (4, 3)),
            (inp(2, 3, [f, tt, tt], [f, f, f], None), (4, 2)),
            (inp(1, 2, [tt, f, tt], [f, f, tt], None), (5, 2)),
            (inp(1, 2, [tt, tt, f], [f, f, f], None), (6, 1)),
            (inp(2, 4, [tt, tt, f], [tt, f, f], None), (7, 4)),
            (inp(1, 2, [tt, tt, tt], [f, f, f], None), (8, 2)),
            (inp(1, 2, [tt, tt, tt], [f, tt, f], None), (9, 3)),
            (inp(3, 5, [tt, tt, tt], [f, f, tt], None), (10, 7)),
            (inp(2, 4, [tt, tt, tt], [f, f, tt], Some(Rational64::new(5, 2))), (11, 7)),
            (inp(1, 2, [tt, tt, tt], [f, f, tt], None), (11, 4)),
        ];
        for (x, want) in cases {
            assert_eq!(h_value_dispatch(&x).unwrap(), want, "{x:?}");
        }
    }
}
