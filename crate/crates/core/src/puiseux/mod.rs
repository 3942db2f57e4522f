//! Newton–Puiseux expansions of plane curve branches.
//!
//! Branches are computed with rational (Duval-style) substitutions
//! `x = xi^v x1^q`, `y = x1^m (xi^u + y1)`, so every branch appears exactly
//! once and no roots of unity are needed. A branch is stored as a
//! parametrization `x = lambda t^e`, `y = Y(t)`; its `e` probranches are
//! `t -> zeta^j t` for the `e`-th roots of unity `zeta^j`.

pub mod local;
pub mod series;

use std::cell::RefCell;

use num_rational::Rational64;

use crate::arith::extpoly::{order_at_zero, squarefree_decomposition};
use crate::arith::{adjoin_root, ctx_degree, drive_inner, BiPoly, Ctx, Ext, Reduce, Ring, UniPoly};
use crate::error::{CausticError, Fail, Res};
use series::{eval_bi, implicit_root, Series};

/// One analytic branch at the origin of a local equation.
#[derive(Debug)]
pub struct Branch {
    pub ctx: Option<Ctx>,
    /// Ramification index `e_B`.
    pub e: usize,
    pub lambda: Ext,
    prefix: Series,
    kappa: Ext,
    a: usize,
    /// Equation of the remaining simple root; `None` when the branch is `y = prefix` exactly.
    leaf: Option<BiPoly<Ext>>,
    /// Image of the generator of the point's context.
    pub t_image: Ext,
    /// Truncation cap in powers of `t`.
    cap: usize,
    cache: RefCell<Option<(usize, Series)>>,
}

impl Clone for Branch {
    fn clone(&self) -> Self {
        Branch {
            ctx: self.ctx.clone(),
            e: self.e,
            lambda: self.lambda.clone(),
            prefix: self.prefix.clone(),
            kappa: self.kappa.clone(),
            a: self.a,
            leaf: self.leaf.clone(),
            t_image: self.t_image.clone(),
            cap: self.cap,
            cache: RefCell::new(self.cache.borrow().clone()),
        }
    }
}

impl Branch {
    /// Number of branches this object stands for (over all roots of `Q(i)`).
    pub fn weight(&self) -> usize {
        ctx_degree(&self.ctx)
    }

    /// `Y(t)` modulo `t^n`.
    pub fn y_series(&self, n: usize) -> Res<Series> {
        if let Some((prec, c)) = self.cache.borrow().as_ref() {
            if *prec >= n {
                return Ok(c.truncate(n));
            }
        }
        let y = match &self.leaf {
            None => self.prefix.clone(),
            Some(f) => {
                let phi = if n > self.a { implicit_root(f, n - self.a)? } else { Series::zero() };
                self.prefix
                    .truncate(n)
                    .add(&phi.shift(self.a).scale(&self.kappa))
                    .truncate(n)
            }
        };
        let prec = if self.leaf.is_none() { usize::MAX } else { n };
        *self.cache.borrow_mut() = Some((prec, y.clone()));
        Ok(y.truncate(n))
    }

    /// Whether `f(lambda t^e, Y(t))` vanishes modulo `t^n`, for `f` over the point's context.
    pub fn residual_vanishes(&self, f: &BiPoly<Ext>, n: usize) -> Res<bool> {
        let y = self.y_series(n)?;
        let r = series::eval_bi(&self.embed_bi(f), &self.lambda, self.e, &y, n);
        for c in r.coeffs() {
            if !c.zero_test()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_exact(&self) -> bool {
        self.leaf.is_none()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Embed an element of the point's context into the branch context.
    pub fn embed(&self, x: &Ext) -> Ext {
        x.embed(&self.t_image)
    }

    pub fn embed_bi(&self, g: &BiPoly<Ext>) -> BiPoly<Ext> {
        UniPoly::new(
            g.coeffs()
                .iter()
                .map(|c| UniPoly::new(c.coeffs().iter().map(|a| self.embed(a)).collect()))
                .collect(),
        )
    }

    /// `val_t g(lambda t^e, Y(t))` for `g` over the branch context.
    pub fn valuation(&self, g: &BiPoly<Ext>) -> Res<usize> {
        if self.leaf.is_none() {
            let dx = g.coeffs().iter().map(|c| c.deg().max(0) as usize).max().unwrap_or(0);
            let dy = g.deg().max(0) as usize;
            let n = dx * self.e + dy * (self.prefix.deg().max(0) as usize) + self.e + 1;
            let s = eval_bi(g, &self.lambda, self.e, &self.y_series(n)?, n);
            return order_at_zero(&s)?.ok_or(Fail::Err(CausticError::CommonComponent));
        }
        let mut n = (4 * self.e + self.a + 4).min(self.cap.max(1));
        loop {
            let s = eval_bi(g, &self.lambda, self.e, &self.y_series(n)?, n);
            if let Some(k) = order_at_zero(&s)? {
                return Ok(k);
            }
            if n >= self.cap {
                return Err(CausticError::TruncationCap(self.cap / self.e).into());
            }
            n = (2 * n).min(self.cap);
        }
    }

    /// `min_j val_t g_j` for polynomials over the branch context, some of
    /// which may vanish identically along the branch.
    pub fn min_valuation(&self, gs: &[BiPoly<Ext>]) -> Res<usize> {
        let mut n = (4 * self.e + self.a + 4).min(self.cap.max(1));
        loop {
            let y = self.y_series(n)?;
            let mut best: Option<usize> = None;
            for g in gs {
                if let Some(k) = order_at_zero(&eval_bi(g, &self.lambda, self.e, &y, n))? {
                    best = Some(best.map_or(k, |b| b.min(k)));
                }
            }
            if let Some(k) = best {
                return Ok(k);
            }
            if n >= self.cap {
                return Err(if self.leaf.is_none() {
                    CausticError::CommonComponent
                } else {
                    CausticError::TruncationCap(self.cap / self.e)
                }
                .into());
            }
            n = (2 * n).min(self.cap);
        }
    }

    /// `val_t` of `g` over the point's context.
    pub fn valuation_of(&self, g: &BiPoly<Ext>) -> Res<usize> {
        self.valuation(&self.embed_bi(g))
    }

    /// Slope `s` of the tangent `y = s x` in local coordinates.
    pub fn tangent_slope(&self) -> Res<Ext> {
        let y = self.y_series(self.e + 1)?;
        Ok(y.coeff(self.e).try_div(&self.lambda)?)
    }

    /// First exponent `k / e` (in powers of `x`) of `Y` with `e` not dividing `k`,
    /// searched below `t^limit`; `None` for an unramified branch.
    pub fn first_char_exponent_below(&self, limit: usize) -> Res<Option<Rational64>> {
        if self.e == 1 {
            return Ok(None);
        }
        let y = self.y_series(limit)?;
        for k in 0..limit {
            if k % self.e != 0 && !y.coeff(k).zero_test()? {
                return Ok(Some(Rational64::new(k as i64, self.e as i64)));
            }
        }
        Ok(None)
    }

    /// First characteristic exponent (x-units); `None` iff `e = 1`.
    pub fn first_char_exponent(&self) -> Res<Option<Rational64>> {
        if self.e == 1 {
            return Ok(None);
        }
        let mut n = 4 * self.e;
        loop {
            if let Some(b) = self.first_char_exponent_below(n.min(self.cap))? {
                return Ok(Some(b));
            }
            if n >= self.cap {
                return Err(CausticError::TruncationCap(self.cap / self.e).into());
            }
            n *= 2;
        }
    }

    /// Valuations (in `t`) of `Y(zeta^j t) - Y(t)` for `j = 1..e-1`, read off
    /// the exponents: the least `k` with `Y_k != 0` and `e` not dividing `j k`.
    pub fn conjugate_difference_orders(&self) -> Res<Vec<usize>> {
        let mut out = Vec::new();
        for j in 1..self.e {
            let mut n = 4 * self.e;
            let k = loop {
                let y = self.y_series(n.min(self.cap))?;
                let mut found = None;
                for k in 0..n.min(self.cap) {
                    if (j * k) % self.e != 0 && !y.coeff(k).zero_test()? {
                        found = Some(k);
                        break;
                    }
                }
                if let Some(k) = found {
                    break k;
                }
                if n >= self.cap {
                    return Err(CausticError::TruncationCap(self.cap / self.e).into());
                }
                n *= 2;
            };
            out.push(k);
        }
        Ok(out)
    }
}

#[derive(Clone)]
struct Node {
    f: BiPoly<Ext>,
    lambda: Ext,
    s: usize,
    prefix: Series,
    kappa: Ext,
    a: usize,
    t_image: Ext,
}

impl Reduce for Node {
    fn reduce(&self, ctx: &Option<Ctx>) -> Self {
        Node {
            f: self.f.reduce(ctx),
            lambda: self.lambda.reduce(ctx),
            s: self.s,
            prefix: self.prefix.reduce(ctx),
            kappa: self.kappa.reduce(ctx),
            a: self.a,
            t_image: self.t_image.reduce(ctx),
        }
    }
}

fn embed_bi(g: &BiPoly<Ext>, t: &Ext) -> BiPoly<Ext> {
    UniPoly::new(
        g.coeffs()
            .iter()
            .map(|c| UniPoly::new(c.coeffs().iter().map(|a| a.embed(t)).collect()))
            .collect(),
    )
}

fn embed_series(p: &Series, t: &Ext) -> Series {
    UniPoly::new(p.coeffs().iter().map(|a| a.embed(t)).collect())
}

/// All branches at the origin of `f`, which must satisfy `f(0, 0) = 0` and have
/// a tangent cone not containing `V(x)`. `cap_x` bounds series precision in
/// powers of `x`.
pub fn newton_puiseux(f: &BiPoly<Ext>, ctx: &Option<Ctx>, cap_x: usize) -> Res<Vec<Branch>> {
    let gen = ctx.as_ref().map_or_else(Ext::zero, |c| c.gen());
    let root = Node {
        f: f.clone(),
        lambda: Ext::one(),
        s: 1,
        prefix: Series::zero(),
        kappa: Ext::one(),
        a: 0,
        t_image: gen,
    };
    process(ctx, &root, cap_x)
}

fn coeff(f: &BiPoly<Ext>, i: usize, j: usize) -> Ext {
    f.coeff(j).coeff(i)
}

fn make_branch(ctx: &Option<Ctx>, n: &Node, leaf: Option<BiPoly<Ext>>, cap_x: usize) -> Branch {
    Branch {
        ctx: ctx.clone(),
        e: n.s,
        lambda: n.lambda.clone(),
        prefix: n.prefix.clone(),
        kappa: n.kappa.clone(),
        a: n.a,
        leaf,
        t_image: n.t_image.clone(),
        cap: cap_x * n.s + n.a + 1,
        cache: RefCell::new(None),
    }
}

fn process(ctx: &Option<Ctx>, n: &Node, cap_x: usize) -> Res<Vec<Branch>> {
    let f = &n.f;
    // order r of f(0, y)
    let mut r = None;
    for j in 0..=f.deg().max(0) as usize {
        if !coeff(f, 0, j).zero_test()? {
            r = Some(j);
            break;
        }
    }
    let r = match r {
        Some(0) => return crate::error::internal("Newton-Puiseux at a point off the curve"),
        Some(r) => r,
        None => return crate::error::internal("local equation divisible by x"),
    };
    if r == 1 {
        return Ok(vec![make_branch(ctx, n, Some(f.clone()), cap_x)]);
    }
    // lowest x-exponent for each y-exponent j <= r
    let mut pts: Vec<(usize, usize)> = Vec::new();
    for j in 0..=r {
        let col = f.coeff(j);
        for i in 0..=col.deg().max(0) as usize {
            if !col.coeff(i).zero_test()? {
                pts.push((i, j));
                break;
            }
        }
    }
    let jlow = pts.iter().map(|p| p.1).min().unwrap();
    let mut out = Vec::new();
    if jlow >= 2 {
        return Err(CausticError::NotReduced.into());
    }
    if jlow == 1 {
        out.push(make_branch(ctx, n, None, cap_x));
    }
    // lower convex hull from (0, r) down to the point at jlow
    let mut cur = (0usize, r);
    while cur.1 > jlow {
        let mut best: Option<(usize, usize)> = None;
        for &p in pts.iter().filter(|p| p.1 < cur.1) {
            best = match best {
                None => Some(p),
                Some(b) => {
                    // compare (p.i - cur.i)/(cur.j - p.j) with (b.i - cur.i)/(cur.j - b.j)
                    let lhs = (p.0 as i64 - cur.0 as i64) * (cur.1 as i64 - b.1 as i64);
                    let rhs = (b.0 as i64 - cur.0 as i64) * (cur.1 as i64 - p.1 as i64);
                    if lhs < rhs || (lhs == rhs && p.1 < b.1) {
                        Some(p)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let next = best.unwrap();
        let di = (next.0 - cur.0) as i64;
        let dj = (cur.1 - next.1) as i64;
        let g = num_integer::gcd(di, dj);
        let (m, q) = ((di / g) as usize, (dj / g) as usize);
        let len = (dj as usize) / q;
        let phi = UniPoly::new((0..=len).map(|l| coeff(f, next.0 - l * m, next.1 + l * q)).collect());
        for (k, psi) in squarefree_decomposition(&phi)? {
            for adj in adjoin_root(ctx, &psi) {
                let t = &adj.t_image;
                let emb = Node {
                    f: embed_bi(&n.f, t),
                    lambda: n.lambda.embed(t),
                    s: n.s,
                    prefix: embed_series(&n.prefix, t),
                    kappa: n.kappa.embed(t),
                    a: n.a,
                    t_image: n.t_image.embed(t),
                };
                let child = descend(&emb, &adj.root, m, q, next, k)?;
                let sub = drive_inner(&adj.ctx, child, |c, node| process(c, node, cap_x))?;
                for (_, bs) in sub {
                    out.extend(bs);
                }
            }
        }
        cur = next;
    }
    Ok(out)
}

/// Substitute `x = xi^v x1^q`, `y = x1^m (xi^u + y1)` with `u q - v m = 1` and
/// divide by the power of `x1` fixed by the edge through `low`.
fn descend(n: &Node, xi: &Ext, m: usize, q: usize, low: (usize, usize), _k: usize) -> Res<Node> {
    // u in [1, m] with u q = 1 mod m (u = 1 when m = 1)
    let u = if m == 1 { 1 } else { (1..=m).find(|u| (u * q) % m == 1).unwrap() };
    let v = (u * q - 1) / m;
    let big_n = q * low.0 + m * low.1;
    let f = &n.f;
    let dy = f.deg().max(0) as usize;
    let dx = f.coeffs().iter().map(|c| c.deg().max(0) as usize).max().unwrap_or(0);
    let maxpow = v * dx.max(n.prefix.deg().max(0) as usize) + u * dy + v * n.a + u + 1;
    let mut xp = vec![Ext::one()];
    for k in 0..maxpow {
        let nxt = xp[k].mul(xi);
        xp.push(nxt);
    }
    let mut rows: Vec<Vec<Ext>> = vec![Vec::new(); dy + 1];
    for j in 0..=dy {
        let col = f.coeff(j);
        for (i, a) in col.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ex = q * i + m * j;
            if ex < big_n {
                return crate::error::internal("Newton polygon edge is not a lower supporting line");
            }
            let ex = ex - big_n;
            let base = a.mul(&xp[v * i]);
            let mut binom: u64 = 1;
            for b in 0..=j {
                let c = base
                    .mul(&xp[u * (j - b)])
                    .mul(&Ext::from_int(binom as i64));
                let row = &mut rows[b];
                if row.len() <= ex {
                    row.resize(ex + 1, Ext::zero());
                }
                row[ex] = row[ex].add(&c);
                binom = binom * (j - b) as u64 / (b + 1) as u64;
            }
        }
    }
    let f1 = UniPoly::new(rows.into_iter().map(UniPoly::new).collect());
    let prefix_sub = UniPoly::new({
        let mut v2 = Vec::new();
        for (k, c) in n.prefix.coeffs().iter().enumerate() {
            let idx = q * k;
            if v2.len() <= idx {
                v2.resize(idx + 1, Ext::zero());
            }
            v2[idx] = c.mul(&xp[v * k]);
        }
        v2
    });
    let new_a = q * n.a + m;
    let kv = n.kappa.mul(&xp[v * n.a]);
    let prefix = prefix_sub.add(&UniPoly::monomial(kv.mul(&xp[u]), new_a));
    Ok(Node {
        f: f1,
        lambda: n.lambda.mul(&xi.pow((v * n.s) as u32)),
        s: n.s * q,
        prefix,
        kappa: kv,
        a: new_a,
        t_image: n.t_image.clone(),
    })
}
