//! Degree of the dual curve, by polars and by the probranch ledger.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::point::{self, Point};
use super::PlaneCurve;
use crate::arith::{drive, Ext, Ring, TriPoly};
use crate::error::{CausticError, Res};
use crate::puiseux::local::{branches_at, ledger_of};

const SEED: u64 = 0x5eed_0002;

/// The dual degree computed along two independent routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualDegree {
    /// `d(d-1) - sum_m i_m(C, polar of a)`.
    pub polar: usize,
    /// `d(d-1) - sum_m V_m`.
    pub ledger: usize,
}

struct PointTotals {
    polar: [usize; 2],
    v: usize,
    /// Whether one of the polar centres lies on a tangent at this point.
    special: bool,
}

impl PlaneCurve {
    /// Class `d^v` of the curve; both routes must agree.
    pub fn dual_degree(&self) -> Result<usize, CausticError> {
        let dd = self.dual_degree_paths()?;
        Ok(dd.polar)
    }

    pub fn dual_degree_paths(&self) -> Result<DualDegree, CausticError> {
        if let Some(d) = self.dual.get() {
            return Ok(*d);
        }
        let d = self.compute_dual()?;
        let _ = self.dual.set(d);
        Ok(d)
    }

    fn compute_dual(&self) -> Result<DualDegree, CausticError> {
        let d = self.degree() as usize;
        if d < 2 {
            return Err(CausticError::DegreeTooSmall(2));
        }
        let base = d * (d - 1);
        let sing = self.singular_points()?;
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..8 {
            let mut draw = || -> Point { std::array::from_fn(|_| Ext::from_int(rng.gen_range(-50..=50))) };
            let centres = [draw(), draw()];
            if centres.iter().any(|a| point::is_zero_vec(a).unwrap_or(true) || self.eval(a).is_zero()) {
                continue;
            }
            let polars: Vec<TriPoly<Ext>> = centres.iter().map(|a| self.f_ext().polar(a)).collect();
            let mut sums = [0usize; 2];
            let mut v = 0;
            let mut special = false;
            for c in &sing {
                let per = drive(&c.ctx, c.coords.clone(), |k, p| self.totals_at(k, p, &centres, &polars))?;
                for (_, t) in per {
                    sums[0] += t.polar[0];
                    sums[1] += t.polar[1];
                    v += t.v;
                    special |= t.special;
                }
            }
            if special {
                continue;
            }
            if sums[0] != sums[1] || sums[0] != v || v > base {
                return Err(CausticError::Inconsistent(format!(
                    "dual degree: polar routes give {} and {}, ledger gives {}",
                    base as i64 - sums[0] as i64,
                    base as i64 - sums[1] as i64,
                    base as i64 - v as i64
                )));
            }
            return Ok(DualDegree { polar: base - sums[0], ledger: base - v });
        }
        Err(CausticError::Internal("no generic polar centre found".into()))
    }

    fn totals_at(&self, ctx: &Option<crate::arith::Ctx>, m: &Point, centres: &[Point; 2], polars: &[TriPoly<Ext>]) -> Res<PointTotals> {
        let lb = branches_at(self, ctx, m, self.max_trunc())?;
        let mut special = false;
        let mut polar = [0usize; 2];
        for b in &lb.branches {
            let t = lb.tangent(b)?;
            for (k, a) in centres.iter().enumerate() {
                let a_b: Point = std::array::from_fn(|r| b.embed(&a[r]));
                if t.contains(&a_b)? {
                    special = true;
                }
                polar[k] += b.weight() * b.valuation_of(&lb.localize(&polars[k]))?;
            }
        }
        let ledger = ledger_of(&lb)?;
        Ok(PointTotals { polar, v: ledger.v * lb.size(), special })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_degrees_of_reference_curves() {
        for (f, dv) in [
            ("(x^2+y^2)^2 - 2*(x^2-y^2)*z^2", 6),
            ("y^2*z^3 - x^5", 5),
            ("x^3 + y^3 + z^3", 6),
            ("y^2*z - x^3 - x^2*z", 4),
            ("y^2*z - x^3", 3),
            ("x^2 + y^2 - z^2", 2),
        ] {
            let c = PlaneCurve::parse(f).unwrap();
            let p = c.dual_degree_paths().unwrap();
            assert_eq!(p.polar, dv, "{f}");
            assert_eq!(p.ledger, dv, "{f}");
        }
    }
}
