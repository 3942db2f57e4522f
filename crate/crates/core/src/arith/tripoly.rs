//! Sparse polynomials in `x, y, z`; curves use homogeneous ones.

use std::collections::BTreeMap;
use std::fmt;

use super::poly::{Ring, UniPoly};

/// Exponent triple `(a, b, c)` of `x^a y^b z^c`.
pub type Exps = [u32; 3];

#[derive(Clone, PartialEq)]
pub struct TriPoly<R> {
    terms: BTreeMap<Exps, R>,
}

/// Bivariate polynomial: outer variable `y`, inner `x`.
pub type BiPoly<R> = UniPoly<UniPoly<R>>;

impl<R: Ring> TriPoly<R> {
    pub fn zero() -> Self {
        TriPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exps, R)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn monomial(e: Exps, c: R) -> Self {
        Self::from_terms([(e, c)])
    }

    pub fn var(k: usize) -> Self {
        let mut e = [0; 3];
        e[k] = 1;
        Self::monomial(e, R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn add_term(&mut self, e: Exps, c: R) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&e) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exps) -> R {
        self.terms.get(e).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0] + e[1] + e[2]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e[0] + e[1] + e[2]);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|k| k == d),
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TriPoly<S> {
        TriPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map(|c| c.mul(s))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                p.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], c.mul(d));
            }
        }
        p
    }

    /// Partial derivative with respect to variable `k` (0 = x, 1 = y, 2 = z).
    pub fn partial(&self, k: usize) -> Self {
        let mut p = Self::zero();
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut f = *e;
            f[k] -= 1;
            p.add_term(f, c.mul(&R::from_i64(e[k] as i64)));
        }
        p
    }

    pub fn gradient(&self) -> [Self; 3] {
        [self.partial(0), self.partial(1), self.partial(2)]
    }

    /// Polar `p0 F_x + p1 F_y + p2 F_z`.
    pub fn polar(&self, p: &[R; 3]) -> Self {
        let g = self.gradient();
        g[0].scale(&p[0]).add(&g[1].scale(&p[1])).add(&g[2].scale(&p[2]))
    }

    /// Evaluate at values in another ring, mapping coefficients with `embed`.
    pub fn eval_in<S: Ring>(&self, v: [&S; 3], embed: impl Fn(&R) -> S) -> S {
        let d = self.degree().unwrap_or(0) as usize;
        let pows: Vec<Vec<S>> = v
            .iter()
            .map(|x| {
                let mut p = vec![S::one()];
                for k in 0..d {
                    let next = p[k].mul(x);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let m = pows[0][e[0] as usize]
                .mul(&pows[1][e[1] as usize])
                .mul(&pows[2][e[2] as usize]);
            acc = acc.add(&m.mul(&embed(c)));
        }
        acc
    }

    pub fn eval(&self, p: &[R; 3]) -> R {
        self.eval_in([&p[0], &p[1], &p[2]], |c| c.clone())
    }

    /// `F o M`, i.e. `F(M (x, y, z)^T)`.
    pub fn substitute_linear(&self, m: &[[R; 3]; 3]) -> Self {
        let lin: Vec<TriPoly<R>> = (0..3)
            .map(|k| {
                TriPoly::from_terms((0..3).map(|j| {
                    let mut e = [0; 3];
                    e[j] = 1;
                    (e, m[k][j].clone())
                }))
            })
            .collect();
        self.eval_in([&lin[0], &lin[1], &lin[2]], |c| TriPoly::constant(c.clone()))
    }

    /// `F(x E1 + y E2 + E3)` as a bivariate polynomial, `E_k` the columns of `m`.
    pub fn local(&self, m: &[[R; 3]; 3]) -> BiPoly<R> {
        let lin: Vec<BiPoly<R>> = (0..3)
            .map(|k| {
                UniPoly::new(vec![
                    UniPoly::new(vec![m[k][2].clone(), m[k][0].clone()]),
                    UniPoly::constant(m[k][1].clone()),
                ])
            })
            .collect();
        self.eval_in([&lin[0], &lin[1], &lin[2]], |c| {
            UniPoly::constant(UniPoly::constant(c.clone()))
        })
    }
}

impl<R: Ring> Ring for TriPoly<R> {
    fn zero() -> Self {
        TriPoly::zero()
    }
    fn one() -> Self {
        TriPoly::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        TriPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        TriPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        TriPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        TriPoly::neg(self)
    }
    fn from_i64(n: i64) -> Self {
        TriPoly::constant(R::from_i64(n))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for TriPoly<R> {
    /// Renders in the input grammar, highest monomials first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !cs.starts_with("-(") => (true, rest.to_string()),
                _ => (false, cs),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors = Vec::new();
            for (k, name) in ["x", "y", "z"].iter().enumerate() {
                match e[k] {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    n => factors.push(format!("{}^{}", name, n)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", body)?;
            } else if body == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", body, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for TriPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// 3x3 matrix helpers over a ring.
pub mod mat {
    use super::super::poly::{Field, Ring};

    pub type Mat3<R> = [[R; 3]; 3];

    pub fn identity<R: Ring>() -> Mat3<R> {
        std::array::from_fn(|i| std::array::from_fn(|j| if i == j { R::one() } else { R::zero() }))
    }

    pub fn mul<R: Ring>(a: &Mat3<R>, b: &Mat3<R>) -> Mat3<R> {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(R::zero(), |acc, k| acc.add(&a[i][k].mul(&b[k][j])))
            })
        })
    }

    pub fn apply<R: Ring>(a: &Mat3<R>, v: &[R; 3]) -> [R; 3] {
        std::array::from_fn(|i| (0..3).fold(R::zero(), |acc, k| acc.add(&a[i][k].mul(&v[k]))))
    }

    /// Row vector times matrix.
    pub fn apply_left<R: Ring>(v: &[R; 3], a: &Mat3<R>) -> [R; 3] {
        std::array::from_fn(|j| (0..3).fold(R::zero(), |acc, k| acc.add(&v[k].mul(&a[k][j]))))
    }

    pub fn det<R: Ring>(a: &Mat3<R>) -> R {
        let t = |i: usize, j: usize, k: usize| a[0][i].mul(&a[1][j]).mul(&a[2][k]);
        t(0, 1, 2)
            .add(&t(1, 2, 0))
            .add(&t(2, 0, 1))
            .sub(&t(2, 1, 0))
            .sub(&t(0, 2, 1))
            .sub(&t(1, 0, 2))
    }

    /// Adjugate; `a * adj(a) = det(a) I`.
    pub fn adjugate<R: Ring>(a: &Mat3<R>) -> Mat3<R> {
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            a[r0][c0].mul(&a[r1][c1]).sub(&a[r0][c1].mul(&a[r1][c0]))
        };
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                // cofactor of entry (j, i)
                let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
                let m = minor(rows[0], rows[1], cols[0], cols[1]);
                if (i + j) % 2 == 0 {
                    m
                } else {
                    m.neg()
                }
            })
        })
    }

    /// Comatrix `det(M) (M^T)^-1`, the transpose of the adjugate.
    pub fn comatrix<R: Ring>(a: &Mat3<R>) -> Mat3<R> {
        let adj = adjugate(a);
        std::array::from_fn(|i| std::array::from_fn(|j| adj[j][i].clone()))
    }

    pub fn inverse<R: Field>(a: &Mat3<R>) -> Option<Mat3<R>> {
        let d = det(a);
        if d.is_zero() {
            return None;
        }
        let inv = d.inv();
        let adj = adjugate(a);
        Some(std::array::from_fn(|i| std::array::from_fn(|j| adj[i][j].mul(&inv))))
    }

    pub fn map<R, S>(a: &Mat3<R>, f: impl Fn(&R) -> S) -> Mat3<S> {
        std::array::from_fn(|i| std::array::from_fn(|j| f(&a[i][j])))
    }
}
