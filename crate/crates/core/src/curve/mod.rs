//! Plane projective curves `V(F)` with `F` a reduced form over `Q(i)`.

pub mod dual;
pub mod point;
pub mod section;
pub mod singular;

use std::sync::OnceLock;

use crate::arith::{mat, resultant, BiPoly, Ext, ExtResult, GaussianRational as Gq, Ring, TriPoly, UniPoly};
use crate::error::{CausticError, Res};
pub use point::{cyclic_i, cyclic_j, Line, Point, PointCluster};

pub type Mat3 = mat::Mat3<Ext>;

pub struct PlaneCurve {
    f: TriPoly<Gq>,
    f_ext: TriPoly<Ext>,
    degree: u32,
    grad: [TriPoly<Gq>; 3],
    /// Hasse-free partial derivatives by order: `partials[k]` lists all of order `k`.
    partials: OnceLock<Vec<Vec<TriPoly<Ext>>>>,
    pub(crate) dual: OnceLock<dual::DualDegree>,
    /// Series precision bound for branch expansions, in powers of `x`.
    cap: usize,
    pub(crate) singular: OnceLock<Vec<PointCluster>>,
}

impl Clone for PlaneCurve {
    fn clone(&self) -> Self {
        PlaneCurve::new_unchecked(self.f.clone()).with_max_trunc(self.cap)
    }
}

impl std::fmt::Debug for PlaneCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "V({})", self.f)
    }
}

/// Deterministic small vectors used as generic directions.
pub(crate) fn candidate_vectors() -> Vec<[i64; 3]> {
    vec![
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [1, 2, 3],
        [2, -1, 1],
        [3, 1, -2],
        [1, -3, 2],
        [5, 2, 7],
        [-4, 3, 6],
        [7, -5, 3],
        [2, 9, -4],
    ]
}

impl PlaneCurve {
    /// Curve of a nonzero homogeneous reduced form.
    pub fn new(f: TriPoly<Gq>) -> Result<Self, CausticError> {
        if f.is_zero() {
            return Err(CausticError::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            let d0 = f.terms().map(|(e, _)| e.iter().sum::<u32>()).min().unwrap();
            let d1 = f.degree().unwrap();
            return Err(crate::parse::ParseError::NotHomogeneous(d0, d1).into());
        }
        if f.degree() == Some(0) {
            return Err(CausticError::DegreeTooSmall(1));
        }
        let c = PlaneCurve::new_unchecked(f);
        if !c.is_reduced() {
            return Err(CausticError::NotReduced);
        }
        Ok(c)
    }

    fn new_unchecked(f: TriPoly<Gq>) -> Self {
        let degree = f.degree().unwrap();
        let grad = f.gradient();
        PlaneCurve {
            f_ext: f.map(|c| Ext::from_gq(c.clone())),
            f,
            degree,
            grad,
            partials: OnceLock::new(),
            dual: OnceLock::new(),
            cap: 64 * degree as usize,
            singular: OnceLock::new(),
        }
    }

    /// Override the branch-expansion precision bound (in powers of `x`).
    pub fn with_max_trunc(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn max_trunc(&self) -> usize {
        self.cap
    }

    pub fn parse(text: &str) -> Result<Self, CausticError> {
        PlaneCurve::new(crate::parse::parse_curve_polynomial(text)?)
    }

    pub fn f(&self) -> &TriPoly<Gq> {
        &self.f
    }

    pub fn f_ext(&self) -> &TriPoly<Ext> {
        &self.f_ext
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn grad(&self) -> &[TriPoly<Gq>; 3] {
        &self.grad
    }

    pub fn grad_ext(&self) -> [TriPoly<Ext>; 3] {
        std::array::from_fn(|k| self.grad[k].map(|c| Ext::from_gq(c.clone())))
    }

    /// `F` squarefree: in generic coordinates with `y^d` present,
    /// the discriminant in `y` of the affine equation is nonzero.
    fn is_reduced(&self) -> bool {
        if self.degree == 1 {
            return true;
        }
        for v in candidate_vectors().iter().skip(1) {
            let col = v.map(Gq::from_int);
            if self.f.eval(&col).is_zero() {
                continue;
            }
            // basis with second column `col`
            for w in candidate_vectors() {
                for u in candidate_vectors() {
                    let m: mat::Mat3<Gq> = std::array::from_fn(|r| {
                        [Gq::from_int(u[r]), col[r].clone(), Gq::from_int(w[r])]
                    });
                    if mat::det(&m).is_zero() {
                        continue;
                    }
                    let g: BiPoly<Gq> = self.f.local(&m);
                    let gy = g.derivative();
                    return !resultant(&g, &gy).is_zero();
                }
            }
        }
        unreachable!("no generic coordinates found")
    }

    pub fn eval(&self, p: &Point) -> Ext {
        self.f_ext.eval(p)
    }

    pub fn contains(&self, p: &Point) -> ExtResult<bool> {
        self.eval(p).zero_test()
    }

    fn partials(&self) -> &Vec<Vec<TriPoly<Ext>>> {
        self.partials.get_or_init(|| {
            let mut levels = vec![vec![self.f_ext.clone()]];
            for _ in 0..self.degree {
                let mut next: Vec<TriPoly<Ext>> = Vec::new();
                for p in levels.last().unwrap() {
                    for k in 0..3 {
                        let q = p.partial(k);
                        if !q.is_zero() && !next.contains(&q) {
                            next.push(q);
                        }
                    }
                }
                levels.push(next);
            }
            levels
        })
    }

    /// Multiplicity of the curve at `m`: least order of a partial derivative
    /// not vanishing at `m` (zero when `m` is off the curve).
    pub fn multiplicity(&self, m: &Point) -> ExtResult<usize> {
        for (k, level) in self.partials().iter().enumerate() {
            for p in level {
                if !p.eval(m).zero_test()? {
                    return Ok(k);
                }
            }
        }
        unreachable!("some partial derivative of order d is a nonzero constant")
    }

    /// Local equation `F(x E1 + y E2 + m)` for `M = [E1 E2 m]`.
    pub fn local(&self, m: &Mat3) -> BiPoly<Ext> {
        self.f_ext.local(m)
    }

    /// Lowest homogeneous part of `F` in the affine chart centred at `m`
    /// (chart `z = 1` when `m` is finite, else `y = 1` or `x = 1`), as a
    /// bivariate polynomial in the two chart coordinates.
    pub fn tangent_cone(&self, m: &Point) -> ExtResult<BiPoly<Ext>> {
        let m = point::normalize(m)?;
        let e = point::pt(1, 0, 0);
        let f = point::pt(0, 1, 0);
        let g = point::pt(0, 0, 1);
        let (c1, c2) = if !m[2].zero_test()? {
            (e, f)
        } else if !m[1].zero_test()? {
            (e, g)
        } else {
            (f, g)
        };
        let mm: Mat3 = std::array::from_fn(|r| [c1[r].clone(), c2[r].clone(), m[r].clone()]);
        let loc = self.local(&mm);
        let mu = self.multiplicity(&m)?;
        let mut out = Vec::new();
        for j in 0..=mu {
            out.push(UniPoly::monomial(loc.coeff(j).coeff(mu - j), mu - j));
        }
        Ok(UniPoly::new(out))
    }

    /// A matrix `M = [E1 E2 m]` with `E1, E2` over `Q(i)`, `det M` invertible
    /// and the tangent cone of `F o M` at `[0:0:1]` not containing `V(x)`.
    pub fn normalization_matrix(&self, m: &Point) -> Res<Mat3> {
        let mu = self.multiplicity(m)?;
        if mu == 0 {
            return Err(CausticError::NotOnCurve.into());
        }
        let cands = candidate_vectors();
        let mut second = cands.clone();
        second.swap(0, 1);
        for v2 in &second {
            for v1 in &cands {
                let e1 = v1.map(Ext::from_int);
                let e2 = v2.map(Ext::from_int);
                let mm: Mat3 = std::array::from_fn(|r| [e1[r].clone(), e2[r].clone(), m[r].clone()]);
                if mat::det(&mm).zero_test()? {
                    continue;
                }
                // F(y E2 + m) has order mu in y with invertible leading coefficient
                let c = restriction_coeff(&self.f_ext, &e2, m, mu);
                if c.zero_test()? {
                    break;
                }
                return Ok(mm);
            }
        }
        crate::error::internal("no normalization matrix found")
    }
}

/// Coefficient of `s^k` in `F(s v + m)`.
pub(crate) fn restriction_coeff(f: &TriPoly<Ext>, v: &Point, m: &Point, k: usize) -> Ext {
    restriction(f, v, m).coeff(k)
}

/// `F(s v + m)` as a polynomial in `s`.
pub fn restriction(f: &TriPoly<Ext>, v: &Point, m: &Point) -> UniPoly<Ext> {
    let lin: Vec<UniPoly<Ext>> = (0..3)
        .map(|k| UniPoly::new(vec![m[k].clone(), v[k].clone()]))
        .collect();
    f.eval_in([&lin[0], &lin[1], &lin[2]], |c| UniPoly::constant(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::point::pt;
    use super::*;

    pub(crate) fn lemniscate() -> PlaneCurve {
        PlaneCurve::parse("(x^2+y^2)^2 - 2*(x^2-y^2)*z^2").unwrap()
    }

    pub(crate) fn quintic() -> PlaneCurve {
        PlaneCurve::parse("y^2*z^3 - x^5").unwrap()
    }

    #[test]
    fn multiplicities() {
        assert_eq!(lemniscate().multiplicity(&pt(0, 0, 1)).unwrap(), 2);
        assert_eq!(quintic().multiplicity(&pt(0, 1, 0)).unwrap(), 3);
        assert_eq!(quintic().multiplicity(&pt(0, 0, 1)).unwrap(), 2);
        let conic = PlaneCurve::parse("x^2+y^2-z^2").unwrap();
        assert_eq!(conic.multiplicity(&pt(1, 0, 1)).unwrap(), 1);
        assert_eq!(conic.multiplicity(&pt(1, 1, 1)).unwrap(), 0);
    }

    #[test]
    fn reducedness() {
        assert!(matches!(PlaneCurve::parse("x^2*y"), Err(CausticError::NotReduced)));
        assert!(matches!(PlaneCurve::parse("(x^2+y^2-z^2)^2"), Err(CausticError::NotReduced)));
        assert!(PlaneCurve::parse("x*y*z").is_ok());
        assert!(PlaneCurve::parse("z*(x^2+y^2-z^2)").is_ok());
    }

    #[test]
    fn tangent_cones() {
        let tc = lemniscate().tangent_cone(&pt(0, 0, 1)).unwrap();
        // -2 x^2 + 2 y^2
        assert_eq!(tc.coeff(0).coeff(2), Ext::from_int(-2));
        assert_eq!(tc.coeff(2).coeff(0), Ext::from_int(2));
        let tc = quintic().tangent_cone(&pt(0, 0, 1)).unwrap();
        assert_eq!(tc.coeff(2).coeff(0), Ext::one());
        assert_eq!(tc.coeff(0), UniPoly::zero());
    }

    #[test]
    fn normalization_keeps_identity_when_possible() {
        let m = lemniscate().normalization_matrix(&pt(0, 0, 1)).unwrap();
        assert_eq!(m, mat::identity());
        let q = quintic();
        let m = q.normalization_matrix(&pt(0, 1, 0)).unwrap();
        let loc = q.local(&m);
        // order 3 in y along x = 0
        assert!(loc.coeff(3).coeff(0).is_nonzero().unwrap());
        assert!(loc.coeff(0).is_zero() || loc.coeff(0).order().unwrap() >= 1);
    }
}
