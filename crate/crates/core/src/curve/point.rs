//! Projective points and lines with coordinates in a context.

use std::fmt;

use crate::arith::{Ctx, Ext, ExtResult, Reduce, Ring};

pub type Point = [Ext; 3];

pub fn pt(x: i64, y: i64, z: i64) -> Point {
    [Ext::from_int(x), Ext::from_int(y), Ext::from_int(z)]
}

/// The cyclic point `I = [1 : i : 0]`.
pub fn cyclic_i() -> Point {
    [Ext::one(), Ext::i(), Ext::zero()]
}

/// The cyclic point `J = [1 : -i : 0]`.
pub fn cyclic_j() -> Point {
    [Ext::one(), Ext::i().neg(), Ext::zero()]
}

pub fn cross(a: &Point, b: &Point) -> Point {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

pub fn dot(a: &Point, b: &Point) -> Ext {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

pub fn scale(a: &Point, c: &Ext) -> Point {
    [a[0].mul(c), a[1].mul(c), a[2].mul(c)]
}

pub fn add(a: &Point, b: &Point) -> Point {
    [a[0].add(&b[0]), a[1].add(&b[1]), a[2].add(&b[2])]
}

/// Zero vector at every root of the context.
pub fn is_zero_vec(a: &Point) -> ExtResult<bool> {
    for c in a {
        if !c.zero_test()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Projective equality.
pub fn same_point(a: &Point, b: &Point) -> ExtResult<bool> {
    is_zero_vec(&cross(a, b))
}

/// Scale so that the last nonzero coordinate is one.
pub fn normalize(a: &Point) -> ExtResult<Point> {
    for k in (0..3).rev() {
        if !a[k].zero_test()? {
            let inv = a[k].try_inv()?;
            return Ok(scale(a, &inv));
        }
    }
    panic!("zero vector is not a projective point");
}

pub fn embed_point(a: &Point, t_image: &Ext) -> Point {
    [a[0].embed(t_image), a[1].embed(t_image), a[2].embed(t_image)]
}

pub fn render_point(a: &Point) -> String {
    format!("[{}:{}:{}]", a[0], a[1], a[2])
}

/// A bundle of conjugate points: one point per root of the context modulus.
#[derive(Clone)]
pub struct PointCluster {
    pub ctx: Option<Ctx>,
    pub coords: Point,
}

impl PointCluster {
    pub fn rational(coords: Point) -> Self {
        PointCluster { ctx: None, coords }
    }

    /// Number of points in the bundle.
    pub fn size(&self) -> usize {
        crate::arith::ctx_degree(&self.ctx)
    }
}

impl Reduce for PointCluster {
    fn reduce(&self, ctx: &Option<Ctx>) -> Self {
        PointCluster {
            ctx: ctx.clone(),
            coords: self.coords.reduce(ctx),
        }
    }
}

impl fmt::Debug for PointCluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.ctx {
            None => write!(f, "{}", render_point(&self.coords)),
            Some(c) => write!(f, "{} over {:?}", render_point(&self.coords), c),
        }
    }
}

/// The line `V(a x + b y + c z)`.
#[derive(Clone, Debug)]
pub struct Line {
    pub coeffs: Point,
}

impl Line {
    pub fn new(coeffs: Point) -> Self {
        Line { coeffs }
    }

    pub fn infinity() -> Self {
        Line::new(pt(0, 0, 1))
    }

    /// Line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Self {
        Line::new(cross(p, q))
    }

    pub fn contains(&self, p: &Point) -> ExtResult<bool> {
        dot(&self.coeffs, p).zero_test()
    }

    /// Canonical scaling (last nonzero coefficient one).
    pub fn canonical(&self) -> ExtResult<Line> {
        Ok(Line::new(normalize(&self.coeffs)?))
    }

    /// Some point of the line.
    pub fn some_point(&self) -> ExtResult<Point> {
        for v in [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)] {
            let q = cross(&self.coeffs, &v);
            if !is_zero_vec(&q)? {
                return Ok(q);
            }
        }
        panic!("zero line");
    }

    /// A point of the line different from `m` (which lies on it).
    pub fn other_point(&self, m: &Point) -> ExtResult<Point> {
        let candidates = [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1), pt(1, 2, 3)];
        for v in candidates.iter() {
            let q = cross(&self.coeffs, v);
            if is_zero_vec(&q)? {
                continue;
            }
            if !same_point(&q, m)? {
                return Ok(q);
            }
        }
        panic!("no second point found on a line");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_points_on_infinity() {
        let l = Line::infinity();
        assert!(l.contains(&cyclic_i()).unwrap());
        assert!(l.contains(&cyclic_j()).unwrap());
        assert!(!same_point(&cyclic_i(), &cyclic_j()).unwrap());
        let n = normalize(&pt(2, 4, 0)).unwrap();
        assert_eq!(n, [Ext::from_gq(crate::arith::GaussianRational::from_ratio(1, 2)), Ext::one(), Ext::zero()]);
    }
}
