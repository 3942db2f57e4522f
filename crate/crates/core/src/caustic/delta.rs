//! Degree of the reflection map onto the caustic.
//!
//! The reflected line at `m'` passes through `m'`, so the preimages of the
//! line `a = R(m)` lie on `C n a`. Along that line we count the common roots
//! of `F` and `R ^ a`, minus the base points where `R` vanishes. The count
//! is done modulo large primes, from random points `m` of `C` over `F_p`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{degeneracy_check, reflected_map, ReflectedMap, Source, Verdict};
use crate::arith::modp::{roots, Fp, Reduction};
use crate::arith::{GaussianRational as Gq, Ring, TriPoly, UniPoly};
use crate::curve::PlaneCurve;
use crate::error::CausticError;

/// Primes `p = 1 mod 4` just below `2^31`.
const PRIMES: [u64; 6] = [2147483629, 2147483549, 2147483497, 2147483489, 2147483477, 2147483353];

const DRAWS_PER_TRIAL: usize = 40;

type Pt<const P: u64> = [Fp<P>; 3];

/// Outcome of one draw: the prime is unusable, the draw was unlucky, or a fibre size.
enum Draw {
    BadPrime,
    Retry,
    Fibre(usize),
}

fn reduce_poly<const P: u64, C>(f: &TriPoly<C>, red: impl Fn(&C) -> Option<Fp<P>>) -> Option<TriPoly<Fp<P>>>
where
    C: Ring,
{
    let terms: Option<Vec<_>> = f.terms().map(|(e, c)| red(c).map(|v| (*e, v))).collect();
    Some(TriPoly::from_terms(terms?))
}

/// `g(m + lambda v)` as a polynomial in `lambda`.
fn along<const P: u64>(g: &TriPoly<Fp<P>>, m: &Pt<P>, v: &Pt<P>) -> UniPoly<Fp<P>> {
    let lin: Vec<UniPoly<Fp<P>>> = (0..3).map(|k| UniPoly::new(vec![m[k], v[k]])).collect();
    g.eval_in([&lin[0], &lin[1], &lin[2]], |c| UniPoly::constant(*c))
}

fn degree<const P: u64>(p: &UniPoly<Fp<P>>) -> usize {
    p.degree().unwrap_or(0)
}

fn random_pt<const P: u64>(rng: &mut ChaCha8Rng) -> Pt<P> {
    std::array::from_fn(|_| Fp::random(rng))
}

fn draw<const P: u64>(
    f: &TriPoly<Gq>,
    r: &ReflectedMap,
    modulus: Option<&UniPoly<Gq>>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Draw {
    let i = Fp::<P>::sqrt_minus_one();
    let t = match modulus {
        None => Fp(0),
        Some(m) => {
            let base = Reduction { i, t: Fp(0) };
            let coeffs: Option<Vec<Fp<P>>> = m.coeffs().iter().map(|c| base.gq(c)).collect();
            let Some(coeffs) = coeffs else {
                return Draw::BadPrime;
            };
            let rs = roots(&UniPoly::new(coeffs), rng);
            if rs.is_empty() {
                return Draw::BadPrime;
            }
            rs[rand::Rng::gen_range(rng, 0..rs.len())]
        }
    };
    let red = Reduction { i, t };
    let Some(fp) = reduce_poly(f, |c| red.gq(c)) else {
        return Draw::BadPrime;
    };
    let rp: Option<Vec<TriPoly<Fp<P>>>> = r.comps.iter().map(|c| reduce_poly(c, |x| red.ext(x))).collect();
    let Some(rp) = rp else {
        return Draw::BadPrime;
    };
    if degree(&along(&fp, &random_pt(rng), &random_pt(rng))) != d {
        // the reduction dropped the degree of the curve
        return Draw::BadPrime;
    }
    // a point of C over F_p on a random line
    let (p0, q0) = (random_pt::<P>(rng), random_pt::<P>(rng));
    let u = along(&fp, &q0, &p0);
    let lambdas = roots(&u, rng);
    if degree(&u) != d || lambdas.is_empty() {
        return Draw::Retry;
    }
    let l = lambdas[rand::Rng::gen_range(rng, 0..lambdas.len())];
    let m: Pt<P> = std::array::from_fn(|k| q0[k].add(&l.mul(&p0[k])));
    let eval = |g: &TriPoly<Fp<P>>, x: &Pt<P>| g.eval_in([&x[0], &x[1], &x[2]], |c| *c);
    let a: Pt<P> = std::array::from_fn(|k| eval(&rp[k], &m));
    if a.iter().all(|c| c.is_zero()) {
        return Draw::Retry;
    }
    let w0 = random_pt::<P>(rng);
    let q: Pt<P> = [
        a[1].mul(&w0[2]).sub(&a[2].mul(&w0[1])),
        a[2].mul(&w0[0]).sub(&a[0].mul(&w0[2])),
        a[0].mul(&w0[1]).sub(&a[1].mul(&w0[0])),
    ];
    let u2 = along(&fp, &m, &q);
    if degree(&u2) != d {
        return Draw::Retry;
    }
    let reduced = u2.div_rem(&u2.gcd_monic(&u2.derivative())).0;
    let rk: Vec<UniPoly<Fp<P>>> = rp.iter().map(|c| along(c, &m, &q)).collect();
    let mut parallel = reduced.clone();
    let mut base = reduced;
    for k in 0..3 {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let wedge = rk[i].scale(&a[j]).sub(&rk[j].scale(&a[i]));
        parallel = parallel.gcd_monic(&wedge);
        base = base.gcd_monic(&rk[k]);
    }
    Draw::Fibre(degree(&parallel) - degree(&base))
}

fn draw_mod(
    k: usize,
    f: &TriPoly<Gq>,
    r: &ReflectedMap,
    modulus: Option<&UniPoly<Gq>>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Draw {
    macro_rules! dispatch {
        ($($n:literal),*) => {
            match k % PRIMES.len() {
                $($n => draw::<{ PRIMES[$n] }>(f, r, modulus, d, rng),)*
                _ => unreachable!(),
            }
        };
    }
    dispatch!(0, 1, 2, 3, 4, 5)
}

/// Probable degree of `m -> R(m)` from `C` onto the caustic's dual, from
/// `trials` random points of `C`. Disagreeing counts are reported as inconclusive.
pub fn delta1_estimate(curve: &PlaneCurve, src: &Source, trials: usize, seed: u64) -> Result<usize, CausticError> {
    let v = degeneracy_check(curve, src)?;
    if v != Verdict::Ok {
        return v.into_result().map(|_| 0);
    }
    let r = reflected_map(curve, &src.coords);
    let modulus = src.ctx.as_ref().map(|c| c.modulus());
    let d = curve.degree() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0004);
    let mut prime = 0;
    let mut counts = Vec::new();
    for _ in 0..trials.max(1) {
        let mut got = None;
        for _ in 0..DRAWS_PER_TRIAL {
            match draw_mod(prime, curve.f(), &r, modulus, d, &mut rng) {
                Draw::BadPrime => prime += 1,
                Draw::Retry => {}
                Draw::Fibre(n) => {
                    got = Some(n);
                    break;
                }
            }
        }
        let n = got.ok_or_else(|| CausticError::Inconclusive("no usable point of the curve found".into()))?;
        counts.push(n);
        prime += 1;
    }
    if counts.windows(2).any(|w| w[0] != w[1]) {
        return Err(CausticError::Inconclusive(format!("fibre sizes differ across trials: {counts:?}")));
    }
    Ok(counts[0])
}
