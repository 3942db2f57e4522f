//! The terms of the closed formula for the class and the Brocard–Lemoyne comparison.

use num_rational::Rational64;
use serde::Serialize;

use super::hvalue::SiteData;
use crate::error::CausticError;

/// Terms of the closed formula, per source point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Theorem1Terms {
    pub g: usize,
    pub f: usize,
    pub f_prime: usize,
    pub g_prime: usize,
    pub q_prime: usize,
    #[serde(rename = "mu_I")]
    pub mu_i: usize,
    #[serde(rename = "mu_J")]
    pub mu_j: usize,
    #[serde(rename = "mu_S")]
    pub mu_s: usize,
    pub c_prime: usize,
    pub source_at_infinity: bool,
}

impl Theorem1Terms {
    /// The closed formula for `mclass`, given the degree and class of `C`.
    pub fn mclass(&self, d: usize, dual: usize) -> i64 {
        let base = (2 * dual + d) as i64;
        if self.source_at_infinity {
            base - 2 * self.g as i64 - (self.mu_i + self.mu_j + self.mu_s + self.c_prime) as i64
        } else {
            base - 2 * self.f_prime as i64 - (self.g + self.f + self.g_prime) as i64 + self.q_prime as i64
        }
    }
}

/// Accumulates weighted per-bundle values and divides by the source degree.
struct Acc {
    sdeg: usize,
    total: Rational64,
}

impl Acc {
    fn new(sdeg: usize) -> Self {
        Acc { sdeg, total: Rational64::from_integer(0) }
    }

    fn add(&mut self, w: usize, v: Rational64) {
        self.total += Rational64::from_integer(w as i64) * v;
    }

    fn add_int(&mut self, w: usize, v: usize) {
        self.add(w, Rational64::from_integer(v as i64));
    }

    fn value(&self, name: &str) -> Result<usize, CausticError> {
        let v = self.total / Rational64::from_integer(self.sdeg as i64);
        if !v.is_integer() || v < Rational64::from_integer(0) {
            return Err(CausticError::Internal(format!("term {name} is not a nonnegative integer: {v}")));
        }
        Ok(v.to_integer() as usize)
    }
}

fn not_special(s: &SiteData) -> bool {
    !s.centre_is.iter().any(|b| *b)
}

pub fn theorem1_terms_from(sites: &[SiteData], sdeg: usize, at_infinity: bool) -> Result<Theorem1Terms, CausticError> {
    let mut g = Acc::new(sdeg);
    let mut f = Acc::new(sdeg);
    let mut fp = Acc::new(sdeg);
    let mut gp = Acc::new(sdeg);
    let mut qp = Acc::new(sdeg);
    let mut mu = [Acc::new(sdeg), Acc::new(sdeg), Acc::new(sdeg)];
    let mut cp = Acc::new(sdeg);
    for s in sites {
        let w = s.weight;
        g.add_int(w, s.omega_inf);
        for k in 0..3 {
            if s.centre_is[k] {
                mu[k].add_int(w, s.mu);
            }
        }
        if at_infinity {
            if s.centre_is[2] {
                for b in &s.branches {
                    if b.i_inf == 2 * b.inputs.e {
                        let three = Rational64::from_integer(3);
                        let beta = b.inputs.beta1.map_or(three, |x| x.min(three));
                        let e = Rational64::from_integer(b.inputs.e as i64);
                        cp.add(b.record.weight, e * (beta - Rational64::from_integer(2)));
                    }
                }
            }
            continue;
        }
        if s.centre_is[0] {
            f.add_int(w, s.mu + s.omega_is);
        }
        if s.centre_is[1] {
            f.add_int(w, s.mu + s.omega_js);
        }
        if s.centre_is[2] {
            gp.add_int(w, s.mu + s.omega_is + s.omega_js);
        }
        if not_special(s) {
            fp.add_int(w, s.omega_is + s.omega_js);
            for b in &s.branches {
                let [ti, tj, ts] = b.inputs.tangent_has;
                let (e, i) = (b.inputs.e, b.inputs.i);
                if ts && (ti || tj) && i >= 2 * e {
                    qp.add_int(b.record.weight, i - 2 * e);
                }
            }
        }
    }
    Ok(Theorem1Terms {
        g: g.value("g")?,
        f: f.value("f")?,
        f_prime: fp.value("f'")?,
        g_prime: gp.value("g'")?,
        q_prime: qp.value("q'")?,
        mu_i: mu[0].value("mu_I")?,
        mu_j: mu[1].value("mu_J")?,
        mu_s: mu[2].value("mu_S")?,
        c_prime: cp.value("c'")?,
        source_at_infinity: at_infinity,
    })
}

/// The Brocard–Lemoyne count and the four contact corrections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrocardLemoyne {
    pub g_hat: usize,
    pub f_hat: usize,
    pub f_prime_hat: usize,
    pub g_prime_hat: usize,
    pub q_prime_hat: usize,
    /// `d + 2(d^v - f'^) - g^ - f^ - g'^ + q'^`.
    pub value: i64,
    /// `Omega_I(C,(IS))`, `Omega_J(C,(JS))`, `Omega_S(C,(IS))`, `Omega_S(C,(JS))`.
    pub corrections: [usize; 4],
}

impl BrocardLemoyne {
    pub fn corrected(&self) -> i64 {
        self.value + self.corrections.iter().sum::<usize>() as i64
    }
}

pub fn brocard_lemoyne_from(
    sites: &[SiteData],
    sdeg: usize,
    terms: &Theorem1Terms,
    d: usize,
    dual: usize,
) -> Result<BrocardLemoyne, CausticError> {
    if terms.source_at_infinity {
        return Err(CausticError::Degenerate(
            "the Brocard-Lemoyne formula only covers sources off the line at infinity".into(),
        ));
    }
    let mut fph = Acc::new(sdeg);
    let mut corr = [Acc::new(sdeg), Acc::new(sdeg), Acc::new(sdeg), Acc::new(sdeg)];
    for s in sites {
        fph.add_int(s.weight, s.omega_is + s.omega_js);
        if s.centre_is[0] {
            corr[0].add_int(s.weight, s.omega_is);
        }
        if s.centre_is[1] {
            corr[1].add_int(s.weight, s.omega_js);
        }
        if s.centre_is[2] {
            corr[2].add_int(s.weight, s.omega_is);
            corr[3].add_int(s.weight, s.omega_js);
        }
    }
    let f_prime_hat = fph.value("f'^")?;
    let g_hat = terms.g;
    let f_hat = terms.mu_i + terms.mu_j;
    let g_prime_hat = terms.mu_s;
    let q_prime_hat = terms.q_prime;
    let value = d as i64 + 2 * (dual as i64 - f_prime_hat as i64) - (g_hat + f_hat + g_prime_hat) as i64
        + q_prime_hat as i64;
    Ok(BrocardLemoyne {
        g_hat,
        f_hat,
        f_prime_hat,
        g_prime_hat,
        q_prime_hat,
        value,
        corrections: [
            corr[0].value("Omega_I")?,
            corr[1].value("Omega_J")?,
            corr[2].value("Omega_S(IS)")?,
            corr[3].value("Omega_S(JS)")?,
        ],
    })
}
