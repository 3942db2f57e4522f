//! Prime fields `F_p` with `p = 1 mod 4`, used for probabilistic checks
//! after reducing `Q(i)` data modulo `p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

use super::ext::Ext;
use super::gaussian::GaussianRational as Gq;
use super::poly::{Field, Ring, UniPoly};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn pow_u64(&self, mut e: u64) -> Self {
        let (mut base, mut acc) = (*self, Fp(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn random(rng: &mut impl Rng) -> Self {
        Fp(rng.gen_range(0..P))
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = (n % BigInt::from(P)).to_i64().expect("residue fits");
        Fp::new(r)
    }

    /// `None` when the denominator vanishes modulo `p`.
    pub fn from_rational(r: &BigRational) -> Option<Self> {
        let d = Self::from_bigint(r.denom());
        if d.is_zero() {
            return None;
        }
        Some(Self::from_bigint(r.numer()).mul(&d.inv()))
    }

    /// A square root of `-1`.
    pub fn sqrt_minus_one() -> Self {
        let minus_one = Fp(P - 1);
        (2..)
            .map(|g| Fp::<P>(g).pow_u64((P - 1) / 4))
            .find(|c| c.mul(c) == minus_one)
            .expect("p = 1 mod 4")
    }
}

impl<const P: u64> Ring for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in F_p");
        self.pow_u64(P - 2)
    }
}

/// Reduction of `Q(i)`, and of one extension of it, modulo `p`.
#[derive(Clone, Copy, Debug)]
pub struct Reduction<const P: u64> {
    pub i: Fp<P>,
    /// Image of the extension generator `t`.
    pub t: Fp<P>,
}

impl<const P: u64> Reduction<P> {
    pub fn gq(&self, c: &Gq) -> Option<Fp<P>> {
        let (re, im) = (Fp::from_rational(&c.re)?, Fp::from_rational(&c.im)?);
        Some(re.add(&self.i.mul(&im)))
    }

    pub fn ext(&self, c: &Ext) -> Option<Fp<P>> {
        let mut acc = Fp::zero();
        for k in c.rep().coeffs().iter().rev() {
            acc = acc.mul(&self.t).add(&self.gq(k)?);
        }
        Some(acc)
    }
}

fn pow_mod<const P: u64>(base: &UniPoly<Fp<P>>, mut e: u64, m: &UniPoly<Fp<P>>) -> UniPoly<Fp<P>> {
    let mut acc = UniPoly::constant(Fp(1)).rem(m);
    let mut b = base.rem(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b).rem(m);
        }
        b = b.mul(&b).rem(m);
        e >>= 1;
    }
    acc
}

/// The distinct roots in `F_p` of a nonzero polynomial (Cantor-Zassenhaus).
pub fn roots<const P: u64>(f: &UniPoly<Fp<P>>, rng: &mut impl Rng) -> Vec<Fp<P>> {
    if f.deg() < 1 {
        return Vec::new();
    }
    let f = f.monic();
    let xp = pow_mod(&UniPoly::x(), P, &f);
    let g = f.gcd_monic(&xp.sub(&UniPoly::x()));
    let mut out = Vec::new();
    split(&g, rng, &mut out);
    out.sort_by_key(|r| r.0);
    out
}

fn split<const P: u64>(g: &UniPoly<Fp<P>>, rng: &mut impl Rng, out: &mut Vec<Fp<P>>) {
    match g.deg() {
        d if d < 1 => {}
        1 => out.push(g.coeff(0).neg().mul(&g.coeff(1).inv())),
        _ => loop {
            let shift = UniPoly::new(vec![Fp::random(rng), Fp(1)]);
            let h = pow_mod(&shift, (P - 1) / 2, g).sub(&UniPoly::constant(Fp(1)));
            let k = g.gcd_monic(&h);
            if k.deg() >= 1 && k.deg() < g.deg() {
                let (q, _) = g.div_rem(&k);
                split(&k, rng, out);
                split(&q, rng, out);
                return;
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const P: u64 = 2147483629;

    #[test]
    fn field_axioms_and_roots() {
        let i = Fp::<P>::sqrt_minus_one();
        assert_eq!(i.mul(&i), Fp::new(-1));
        let a = Fp::<P>::new(12345);
        assert_eq!(a.mul(&a.inv()), Fp(1));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // (x - 2)(x + 5)(x^2 + 1)
        let lin = |c: i64| UniPoly::new(vec![Fp::<P>::new(-c), Fp(1)]);
        let f = lin(2).mul(&lin(-5)).mul(&UniPoly::new(vec![Fp(1), Fp(0), Fp(1)]));
        let r = roots(&f, &mut rng);
        let mut want = vec![Fp::new(2), Fp::new(-5), i, i.neg()];
        want.sort_by_key(|r| r.0);
        assert_eq!(r, want);
    }
}
