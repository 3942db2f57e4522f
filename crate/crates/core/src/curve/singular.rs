//! Singular locus by elimination in generic coordinates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::point::{self, PointCluster};
use super::PlaneCurve;
use crate::arith::extpoly::{gcd, squarefree_decomposition};
use crate::arith::{
    drive, mat, resultant, BiPoly, Ext, ExtensionContext, GaussianRational as Gq, Ring, TriPoly, UniPoly,
};
use crate::error::CausticError;

const SEED: u64 = 0x5eed_0001;

enum Found {
    None,
    Point(point::Point),
    NotGeneric,
}

fn random_matrix(rng: &mut ChaCha8Rng) -> mat::Mat3<Gq> {
    loop {
        let m: mat::Mat3<Gq> =
            std::array::from_fn(|_| std::array::from_fn(|_| Gq::from_int(rng.gen_range(-6..=6))));
        if !mat::det(&m).is_zero() {
            return m;
        }
    }
}

/// Evaluate the inner variable of a bivariate polynomial at `x0`.
fn at_x(p: &BiPoly<Gq>, x0: &Ext) -> UniPoly<Ext> {
    UniPoly::new(
        p.coeffs()
            .iter()
            .map(|c| c.eval_with(x0, |a| Ext::from_gq(a.clone())))
            .collect(),
    )
}

impl PlaneCurve {
    /// All singular points, grouped in conjugate bundles.
    pub fn singular_points(&self) -> Result<Vec<PointCluster>, CausticError> {
        if let Some(s) = self.singular.get() {
            return Ok(s.clone());
        }
        let s = self.compute_singular_points()?;
        let _ = self.singular.set(s.clone());
        Ok(s)
    }

    fn compute_singular_points(&self) -> Result<Vec<PointCluster>, CausticError> {
        if self.degree() == 1 {
            return Ok(Vec::new());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        'attempt: for _ in 0..50 {
            let m = random_matrix(&mut rng);
            let g = self.f().substitute_linear(&m);
            let grad = g.gradient();
            // no singular point on z = 0 in the new coordinates
            let at_inf: Vec<UniPoly<Gq>> = grad
                .iter()
                .map(|p| {
                    let q: TriPoly<Gq> = p.clone();
                    let lin = [UniPoly::x(), UniPoly::constant(Gq::one()), UniPoly::zero()];
                    q.eval_in([&lin[0], &lin[1], &lin[2]], |c| UniPoly::constant(c.clone()))
                })
                .collect();
            let common = at_inf[0].gcd_monic(&at_inf[1]).gcd_monic(&at_inf[2]);
            if common.deg() != 0 || grad.iter().all(|p| p.coeff(&[p.degree().unwrap_or(0), 0, 0]).is_zero()) {
                continue;
            }
            let aff: Vec<BiPoly<Gq>> = grad.iter().map(|p| p.local(&mat::identity())).collect();
            let mut c = || Gq::from_int(rng.gen_range(1..=9));
            let combo = |k: usize, a: Gq, b: Gq| {
                aff[k]
                    .add(&aff[(k + 1) % 3].scale(&UniPoly::constant(a)))
                    .add(&aff[(k + 2) % 3].scale(&UniPoly::constant(b)))
            };
            let p1 = combo(0, c(), c());
            let p2 = combo(1, c(), c());
            let p3 = combo(2, c(), c());
            let r1 = resultant(&p1, &p2);
            let r2 = resultant(&p1, &p3);
            if r1.is_zero() || r2.is_zero() {
                continue;
            }
            let h = r1.gcd_monic(&r2).squarefree_part();
            if h.deg() <= 0 {
                return Ok(Vec::new());
            }
            let mut out = Vec::new();
            for ctx in ExtensionContext::create(&h) {
                let ctx = Some(ctx);
                let found = drive(&ctx, (), |c, _| {
                    let x0 = c.as_ref().unwrap().gen();
                    let q1 = at_x(&p1, &x0);
                    let gg = gcd(&gcd(&q1, &at_x(&p2, &x0))?, &at_x(&p3, &x0))?;
                    if gg.deg() <= 0 {
                        return Ok(Found::None);
                    }
                    let roots = squarefree_decomposition(&gg)?;
                    match (roots.len(), roots[0].1.deg()) {
                        (1, 1) => {
                            let y0 = roots[0].1.coeff(0).neg();
                            let mm = mat::map(&m, |v| Ext::from_gq(v.clone()));
                            let p = mat::apply(&mm, &[x0.clone(), y0, Ext::one()]);
                            Ok(Found::Point(point::normalize(&p)?))
                        }
                        _ => Ok(Found::NotGeneric),
                    }
                })?;
                for (c, f) in found {
                    match f {
                        Found::None => {}
                        Found::Point(p) => out.push(PointCluster { ctx: c, coords: p }),
                        Found::NotGeneric => continue 'attempt,
                    }
                }
            }
            for p in &out {
                for g in self.grad_ext() {
                    if !g.eval(&p.coords).is_zero() {
                        return Err(CausticError::Internal("spurious singular point".into()));
                    }
                }
            }
            return Ok(out);
        }
        Err(CausticError::Internal("no generic coordinates for the singular locus".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::super::point::{cyclic_i, cyclic_j, pt, same_point};
    use super::*;

    fn has(points: &[PointCluster], p: &point::Point) -> bool {
        points
            .iter()
            .any(|c| c.ctx.is_none() && same_point(&c.coords, p).unwrap())
    }

    #[test]
    fn lemniscate_singular_points() {
        let l = PlaneCurve::parse("(x^2+y^2)^2 - 2*(x^2-y^2)*z^2").unwrap();
        let s = l.singular_points().unwrap();
        let total: usize = s.iter().map(|c| c.size()).sum();
        assert_eq!(total, 3);
        // a bundle of size one is a Q(i) point; the points may also come as one bundle
        if s.iter().all(|c| c.size() == 1) {
            assert!(has(&s, &cyclic_i()) && has(&s, &cyclic_j()) && has(&s, &pt(0, 0, 1)));
        }
        for c in &s {
            assert_eq!(l.multiplicity(&c.coords).unwrap(), 2);
        }
    }

    #[test]
    fn quintic_and_conic() {
        let q = PlaneCurve::parse("y^2*z^3 - x^5").unwrap();
        let s = q.singular_points().unwrap();
        assert_eq!(s.iter().map(|c| c.size()).sum::<usize>(), 2);
        let conic = PlaneCurve::parse("x^2+y^2-z^2").unwrap();
        assert!(conic.singular_points().unwrap().is_empty());
    }
}
