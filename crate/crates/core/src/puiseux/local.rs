//! Branches at a projective point of a curve and the quantities built on them.

use num_rational::Rational64;

use super::{newton_puiseux, Branch};
use crate::arith::{resultant, BiPoly, Ctx, Ext, GaussianRational as Gq, Ring, TriPoly, UniPoly};
use crate::curve::point::{self, Line, Point};
use crate::curve::{Mat3, PlaneCurve};
use crate::error::{CausticError, Res};

/// Default series precision bound, in powers of `x`.
pub fn default_cap(degree: u32) -> usize {
    64 * degree as usize
}

/// All branches of `C` at a bundle of conjugate points.
#[derive(Clone, Debug)]
pub struct LocalBranches {
    pub ctx: Option<Ctx>,
    pub point: Point,
    /// `M = [E1 E2 m]`; local coordinates are `x E1 + y E2 + m`.
    pub mat: Mat3,
    pub f: BiPoly<Ext>,
    pub mu: usize,
    pub branches: Vec<Branch>,
}

pub fn branches_at(curve: &PlaneCurve, ctx: &Option<Ctx>, m: &Point, cap_x: usize) -> Res<LocalBranches> {
    let mat = curve.normalization_matrix(m)?;
    branches_with(curve, ctx, m, mat, cap_x)
}

/// Branches in the chart given by an explicit admissible matrix.
pub fn branches_with(curve: &PlaneCurve, ctx: &Option<Ctx>, m: &Point, mat: Mat3, cap_x: usize) -> Res<LocalBranches> {
    let mu = curve.multiplicity(m)?;
    if mu == 0 {
        return Err(CausticError::NotOnCurve.into());
    }
    let f = curve.local(&mat);
    let branches = newton_puiseux(&f, ctx, cap_x)?;
    Ok(LocalBranches { ctx: ctx.clone(), point: m.clone(), mat, f, mu, branches })
}

impl LocalBranches {
    /// Number of points in the bundle.
    pub fn size(&self) -> usize {
        crate::arith::ctx_degree(&self.ctx)
    }

    /// `G(x E1 + y E2 + m)`.
    pub fn localize(&self, g: &TriPoly<Ext>) -> BiPoly<Ext> {
        g.local(&self.mat)
    }

    /// `sum_B e_B` over the branches at one point.
    pub fn branch_multiplicity(&self) -> usize {
        self.branches.iter().map(|b| b.weight() * b.e).sum::<usize>() / self.size()
    }

    /// Sum over all branches at all points of the bundle of `weight * value`,
    /// divided by the bundle size.
    pub fn per_point(&self, mut value: impl FnMut(&Branch) -> Res<usize>) -> Res<usize> {
        let mut total = 0;
        for b in &self.branches {
            total += b.weight() * value(b)?;
        }
        if total % self.size() != 0 {
            return crate::error::internal("branch totals not uniform over a bundle of points");
        }
        Ok(total / self.size())
    }

    /// Tangent line of a branch, over the branch context.
    pub fn tangent(&self, b: &Branch) -> Res<Line> {
        let s = b.tangent_slope()?;
        let col = |k: usize| -> Point { std::array::from_fn(|r| b.embed(&self.mat[r][k])) };
        let dir = point::add(&col(0), &point::scale(&col(1), &s));
        Ok(Line::through(&col(2), &dir))
    }

    /// `i(B, T_B)` in local coordinates: the valuation of `y - s x`.
    pub fn tangent_contact(&self, b: &Branch) -> Res<usize> {
        let s = b.tangent_slope()?;
        let g = UniPoly::new(vec![
            UniPoly::new(vec![Ext::zero(), s.neg()]),
            UniPoly::constant(Ext::one()),
        ]);
        b.valuation(&g)
    }
}

/// `i(B, V(G))`: valuation of `G o M` along the branch (0 when the centre is off `V(G)`).
pub fn branch_curve_intersection(lb: &LocalBranches, b: &Branch, g: &TriPoly<Ext>) -> Res<usize> {
    b.valuation_of(&lb.localize(g))
}

/// `i_m(C, V(G))` at each point of the bundle.
pub fn intersection_number(curve: &PlaneCurve, g: &TriPoly<Ext>, ctx: &Option<Ctx>, m: &Point, cap_x: usize) -> Res<usize> {
    if curve.multiplicity(m)? == 0 || !g.eval(m).zero_test()? {
        return Ok(0);
    }
    let lb = branches_at(curve, ctx, m, cap_x)?;
    let gl = lb.localize(g);
    lb.per_point(|b| b.valuation_of(&gl))
}

/// Valuations of probranch differences at one point.
#[derive(Clone, Debug)]
pub struct ValuationLedger {
    pub entries: Vec<LedgerEntry>,
    /// `V_m`, per point of the bundle.
    pub v: usize,
}

#[derive(Clone, Debug)]
pub struct LedgerEntry {
    pub e: usize,
    /// Number of branches the entry stands for over the whole bundle.
    pub weight: usize,
    /// `val_x (g_0 - g_j)` for the conjugates `j = 1..e-1` of the same branch.
    pub within: Vec<Rational64>,
    /// `sum over probranches i of val_x D_i`, in `t` units (equals `e` times a
    /// single probranch's value): differences with other branches.
    pub across: usize,
    /// `val_t f_y` along the branch: within plus across.
    pub total: usize,
}

pub fn v_ledger(curve: &PlaneCurve, ctx: &Option<Ctx>, m: &Point, cap_x: usize) -> Res<ValuationLedger> {
    let lb = branches_at(curve, ctx, m, cap_x)?;
    ledger_of(&lb)
}

pub fn ledger_of(lb: &LocalBranches) -> Res<ValuationLedger> {
    let fy = lb.f.derivative();
    let mut entries = Vec::new();
    for b in &lb.branches {
        let total = b.valuation_of(&fy)?;
        let orders = b.conjugate_difference_orders()?;
        let within_sum: usize = orders.iter().sum();
        if within_sum > total {
            return crate::error::internal("probranch ledger is inconsistent");
        }
        entries.push(LedgerEntry {
            e: b.e,
            weight: b.weight(),
            within: orders.iter().map(|&k| Rational64::new(k as i64, b.e as i64)).collect(),
            across: total - within_sum,
            total,
        });
    }
    let v = lb.per_point(|b| {
        let k = lb.branches.iter().position(|c| std::ptr::eq(c, b)).unwrap();
        Ok(entries[k].total)
    })?;
    Ok(ValuationLedger { entries, v })
}

/// `val_x Res_y(f, g)` for local equations over `Q(i)` meeting only at the
/// origin on `x = 0`: requires `gcd(f(0,y), g(0,y)) = y^k` and constant
/// leading coefficients in `y`. `None` when the precondition fails.
pub fn resultant_valuation(f: &BiPoly<Gq>, g: &BiPoly<Gq>) -> Option<usize> {
    let lc_const = |p: &BiPoly<Gq>| p.degree().is_some() && p.lc().deg() == 0;
    if !lc_const(f) || !lc_const(g) {
        return None;
    }
    let at0 = |p: &BiPoly<Gq>| UniPoly::new(p.coeffs().iter().map(|c| c.coeff(0)).collect::<Vec<_>>());
    let common = at0(f).gcd_monic(&at0(g));
    let k = common.deg().max(0) as usize;
    if common != UniPoly::monomial(Gq::one(), k) {
        return None;
    }
    let r = resultant(f, g);
    r.order()
}

/// `i_0(V(f), V(g))` for local equations over `Q(i)`, by branches of `f`
/// after a shear making `V(x)` transversal to `f`.
pub fn local_intersection(f: &BiPoly<Gq>, g: &BiPoly<Gq>, cap_x: usize) -> Result<usize, CausticError> {
    let to_ext = |p: &BiPoly<Gq>| -> BiPoly<Ext> { p.map(|c| c.map(|a| Ext::from_gq(a.clone()))) };
    let (f0, g0) = (to_ext(f), to_ext(g));
    let (mut f, mut g) = (f0.clone(), g0.clone());
    let ord = |p: &BiPoly<Ext>| -> usize {
        // multiplicity at the origin
        let mut best = usize::MAX;
        for (j, c) in p.coeffs().iter().enumerate() {
            if let Some(i) = c.coeffs().iter().position(|a| !a.is_zero()) {
                best = best.min(i + j);
            }
        }
        best
    };
    let mu = ord(&f);
    if mu == 0 || ord(&g) == 0 {
        return Ok(0);
    }
    let y_order = |p: &BiPoly<Ext>| p.coeffs().iter().position(|c| !c.coeff(0).is_zero());
    let mut c = 0i64;
    while y_order(&f) != Some(mu) {
        c += 1;
        f = shear(&f0, c);
        g = shear(&g0, c);
        if c > 64 {
            return Err(CausticError::Internal("no transversal direction".into()));
        }
    }
    let out = crate::arith::drive(&None, (), |ctx, _| {
        let bs = newton_puiseux(&f, ctx, cap_x)?;
        let mut total = 0;
        for b in &bs {
            total += b.weight() * b.valuation_of(&g)?;
        }
        Ok(total)
    })?;
    Ok(out[0].1)
}

/// `p(x + c y, y)`.
fn shear(p: &BiPoly<Ext>, c: i64) -> BiPoly<Ext> {
    let xs: BiPoly<Ext> = UniPoly::new(vec![
        UniPoly::new(vec![Ext::zero(), Ext::one()]),
        UniPoly::constant(Ext::from_int(c)),
    ]);
    let y: BiPoly<Ext> = UniPoly::new(vec![UniPoly::zero(), UniPoly::constant(Ext::one())]);
    let mut acc = BiPoly::<Ext>::zero();
    for (j, col) in p.coeffs().iter().enumerate() {
        let mut term = BiPoly::<Ext>::zero();
        for a in col.coeffs().iter().rev() {
            term = term.mul(&xs).add(&UniPoly::constant(UniPoly::constant(a.clone())));
        }
        acc = acc.add(&term.mul(&y.pow(j as u32)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::point::{cyclic_i, pt};

    fn bi(terms: &[((usize, usize), i64)]) -> BiPoly<Gq> {
        let mut rows: Vec<Vec<Gq>> = vec![];
        for &((i, j), c) in terms {
            if rows.len() <= j {
                rows.resize(j + 1, vec![]);
            }
            if rows[j].len() <= i {
                rows[j].resize(i + 1, Gq::zero());
            }
            rows[j][i] = rows[j][i].add(&Gq::from_int(c));
        }
        UniPoly::new(rows.into_iter().map(UniPoly::new).collect())
    }

    #[test]
    fn lemniscate_ledger_and_tangent_contact() {
        let c = PlaneCurve::parse("(x^2+y^2)^2 - 2*(x^2-y^2)*z^2").unwrap();
        let cap = default_cap(4);
        let o = v_ledger(&c, &None, &pt(0, 0, 1), cap).unwrap();
        assert_eq!(o.v, 2);
        let i = v_ledger(&c, &None, &cyclic_i(), cap).unwrap();
        assert_eq!(i.v, 2);
        let lb = branches_at(&c, &None, &cyclic_i(), cap).unwrap();
        for b in &lb.branches {
            let t = lb.tangent(b).unwrap();
            let g = TriPoly::from_terms((0..3).map(|k| {
                let mut e = [0; 3];
                e[k] = 1;
                (e, t.coeffs[k].clone())
            }));
            let at = point::embed_point(&lb.point, &b.t_image);
            let per = crate::arith::drive(&b.ctx, (at, g), |k, (at, g)| intersection_number(&c, g, k, at, cap)).unwrap();
            assert!(per.iter().all(|(_, n)| *n == 4));
        }
    }

    #[test]
    fn quintic_at_infinity_meets_line_five_times() {
        let c = PlaneCurve::parse("y^2*z^3 - x^5").unwrap();
        let linf = TriPoly::var(2);
        let n = intersection_number(&c, &linf, &None, &pt(0, 1, 0), default_cap(5)).unwrap();
        assert_eq!(n, 5);
        let chord = intersection_number(&c, &TriPoly::var(0).sub(&TriPoly::var(2)), &None, &pt(0, 1, 0), 64);
        assert_eq!(chord.unwrap(), 3);
        let off = intersection_number(&c, &TriPoly::var(1).sub(&TriPoly::var(2)), &None, &pt(0, 1, 0), 64);
        assert_eq!(off.unwrap(), 0);
    }

    #[test]
    fn resultant_oracle_on_cusp() {
        let cusp = bi(&[((0, 2), 1), ((3, 0), -1)]);
        let y = bi(&[((0, 1), 1)]);
        assert_eq!(resultant_valuation(&cusp, &y), Some(3));
        assert_eq!(local_intersection(&cusp, &y, 64).unwrap(), 3);
        let x = bi(&[((1, 0), 1)]);
        assert_eq!(local_intersection(&cusp, &x, 64).unwrap(), 2);
        // y - x^2 against the x axis after a shear of a tangent-to-x-axis curve
        let f = bi(&[((1, 0), 1), ((0, 2), 1)]);
        assert_eq!(local_intersection(&f, &x, 64).unwrap(), 2);
    }
}
