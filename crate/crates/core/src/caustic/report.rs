//! Assembling the class of the caustic from its three computations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::hvalue::{analyze_site, HCaseRecord, SiteData};
use super::terms::{brocard_lemoyne_from, theorem1_terms_from, BrocardLemoyne, Theorem1Terms};
use super::{base_points_in, degeneracy_check, reflected_map, Site, Source, Verdict};
use crate::arith::{drive, drive_within, Ctx, Ext};
use crate::curve::point::Point;
use crate::curve::PlaneCurve;
use crate::error::{CausticError, Res};

/// Which computations of `mclass` to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PathSelection {
    Theorem1,
    Ledger,
    FundamentalLemma,
    #[default]
    All,
}

impl PathSelection {
    fn theorem1(self) -> bool {
        matches!(self, PathSelection::Theorem1 | PathSelection::All)
    }
    fn ledger(self) -> bool {
        matches!(self, PathSelection::Ledger | PathSelection::All)
    }
    fn flemma(self) -> bool {
        matches!(self, PathSelection::FundamentalLemma | PathSelection::All)
    }
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub paths: PathSelection,
    /// Degree of the map onto the caustic; `1` unless given.
    pub delta1: Option<usize>,
    pub seed: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { paths: PathSelection::All, delta1: None, seed: 1 }
    }
}

/// Number of reflected polar centres drawn; they are tried in pairs.
const POLAR_DRAWS: usize = 6;

/// All local data for one source (one piece of its context).
#[derive(Clone, Debug)]
pub struct Analysis {
    pub d: usize,
    pub dual: usize,
    /// Degree of the source's context.
    pub sdeg: usize,
    pub at_infinity: bool,
    /// The piece of the source context and the source coordinates in it.
    pub sctx: Option<Ctx>,
    pub source: Point,
    pub sites: Vec<(Site, SiteData)>,
    pub polar_centres: Vec<Point>,
}

impl Analysis {
    pub fn site_data(&self) -> Vec<SiteData> {
        self.sites.iter().map(|(_, d)| d.clone()).collect()
    }

    pub fn terms(&self) -> Result<Theorem1Terms, CausticError> {
        theorem1_terms_from(&self.site_data(), self.sdeg, self.at_infinity)
    }

    pub fn brocard_lemoyne(&self) -> Result<BrocardLemoyne, CausticError> {
        let t = self.terms()?;
        brocard_lemoyne_from(&self.site_data(), self.sdeg, &t, self.d, self.dual)
    }

    /// `sum over base branches of weight * value`, per source point.
    fn branch_sum(&self, value: impl Fn(&super::hvalue::BranchData) -> usize) -> Result<usize, CausticError> {
        let mut total = 0;
        for (_, s) in &self.sites {
            for b in &s.branches {
                total += b.record.weight * value(b);
            }
        }
        if total % self.sdeg != 0 {
            return Err(CausticError::Internal("branch sum not uniform over conjugate sources".into()));
        }
        Ok(total / self.sdeg)
    }

    /// `2 d^v + d - sum h` with `h` evaluated on the reflected map itself.
    pub fn mclass_ledger(&self) -> Result<i64, CausticError> {
        let h = self.branch_sum(|b| b.record.h_direct)?;
        Ok((2 * self.dual + self.d) as i64 - h as i64)
    }

    /// `2 d^v + d - sum h` with `h` from the case analysis.
    pub fn mclass_dispatch(&self) -> Result<i64, CausticError> {
        let h = self.branch_sum(|b| b.record.h)?;
        Ok((2 * self.dual + self.d) as i64 - h as i64)
    }

    /// `d(2d - 1) - sum_m i_m(C, reflected polar)` for each polar centre.
    pub fn mclass_polars(&self) -> Result<Vec<i64>, CausticError> {
        let mut out = Vec::new();
        for k in 0..self.polar_centres.len() {
            let s = self.branch_sum(|b| b.polar[k])?;
            out.push((self.d * (2 * self.d - 1)) as i64 - s as i64);
        }
        Ok(out)
    }

    /// The fundamental-lemma value: the first pair of polar centres that agree.
    pub fn mclass_flemma(&self) -> Result<Option<i64>, CausticError> {
        let v = self.mclass_polars()?;
        Ok(v.chunks(2).find(|p| p.len() == 2 && p[0] == p[1]).map(|p| p[0]))
    }

    pub fn records(&self) -> Vec<HCaseRecord> {
        self.sites.iter().flat_map(|(_, s)| s.branches.iter().map(|b| b.record.clone())).collect()
    }
}

pub fn polar_centres(seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0003);
    (0..POLAR_DRAWS)
        .map(|_| std::array::from_fn(|_| Ext::from_int(rng.gen_range(-97..=97))))
        .collect()
}

/// Local analysis at every base point, for each piece of the source context.
pub fn analyze(curve: &PlaneCurve, src: &Source, seed: u64) -> Result<Vec<Analysis>, CausticError> {
    let d = curve.degree() as usize;
    let dual = curve.dual_degree()?;
    let sing = curve.singular_points()?;
    let centres = polar_centres(seed);
    let pieces = drive(&src.ctx, src.coords.clone(), |sctx, s| {
        analyze_in(curve, sctx, s, &sing, &centres, d, dual)
    })?;
    Ok(pieces.into_iter().map(|(_, a)| a).collect())
}

pub(crate) fn analyze_in(
    curve: &PlaneCurve,
    sctx: &Option<Ctx>,
    s: &Point,
    sing: &[crate::curve::PointCluster],
    centres: &[Point],
    d: usize,
    dual: usize,
) -> Res<Analysis> {
    let r = reflected_map(curve, s);
    let at_infinity = s[2].zero_test()?;
    let mut sites = Vec::new();
    for site in base_points_in(curve, sctx, s, sing)? {
        let per = drive_within(&site.ctx.clone(), sctx, site, |c, st| {
            let data = analyze_site(curve, &r, s, c, st, None, centres)?;
            Ok((st.clone(), data))
        })?;
        sites.extend(per.into_iter().map(|(_, v)| v));
    }
    Ok(Analysis {
        d,
        dual,
        sdeg: crate::arith::ctx_degree(sctx),
        at_infinity,
        sctx: sctx.clone(),
        source: s.clone(),
        sites,
        polar_centres: centres.to_vec(),
    })
}

/// The full report for one mirror and one source.
#[derive(Clone, Debug, Serialize)]
pub struct CausticClassReport {
    pub d: usize,
    pub dual_degree: usize,
    #[serde(flatten)]
    pub terms: Theorem1Terms,
    pub mclass_theorem1: Option<i64>,
    pub mclass_ledger: Option<i64>,
    pub mclass_flemma: Option<i64>,
    pub delta1: usize,
    pub class: Option<i64>,
    pub consistent: bool,
    pub brocard_lemoyne: Option<BrocardLemoyne>,
    pub branches: Vec<HCaseRecord>,
    pub diagnostics: Vec<String>,
}

impl CausticClassReport {
    /// The common value of the computed paths.
    pub fn mclass(&self) -> Option<i64> {
        self.mclass_theorem1.or(self.mclass_ledger).or(self.mclass_flemma)
    }
}

pub(crate) fn report_from(a: &Analysis, opts: &ReportOptions) -> Result<CausticClassReport, CausticError> {
    let terms = a.terms()?;
    let mut diagnostics = Vec::new();
    let t1 = opts.paths.theorem1().then(|| terms.mclass(a.d, a.dual));
    let ledger = if opts.paths.ledger() { Some(a.mclass_ledger()?) } else { None };
    let flemma = if opts.paths.flemma() {
        let v = a.mclass_flemma()?;
        if v.is_none() {
            diagnostics.push(format!("reflected polars disagree: {:?}", a.mclass_polars()?));
        }
        v
    } else {
        None
    };
    let mut consistent = true;
    let values: Vec<i64> = [t1, ledger, flemma].into_iter().flatten().collect();
    if values.windows(2).any(|w| w[0] != w[1]) {
        consistent = false;
        diagnostics.push(format!(
            "mclass paths disagree: theorem1={t1:?} ledger={ledger:?} fundamental-lemma={flemma:?}"
        ));
    }
    if opts.paths.flemma() && flemma.is_none() {
        consistent = false;
    }
    for r in a.records() {
        if r.h != r.h_direct {
            consistent = false;
            diagnostics.push(format!(
                "h at {} (case {}): dispatch {} but direct {}",
                r.point, r.case, r.h, r.h_direct
            ));
        }
    }
    let bl = if a.at_infinity { None } else { Some(a.brocard_lemoyne()?) };
    if let (Some(b), Some(m)) = (&bl, values.first()) {
        if b.corrected() != *m {
            consistent = false;
            diagnostics.push(format!("Brocard-Lemoyne plus corrections gives {}, not {m}", b.corrected()));
        }
    }
    let delta1 = opts.delta1.unwrap_or(1);
    let class = values.first().and_then(|m| {
        if m % delta1 as i64 == 0 {
            Some(m / delta1 as i64)
        } else {
            None
        }
    });
    if class.is_none() && !values.is_empty() {
        consistent = false;
        diagnostics.push(format!("mclass {} is not divisible by delta1 = {delta1}", values[0]));
    }
    Ok(CausticClassReport {
        d: a.d,
        dual_degree: a.dual,
        terms,
        mclass_theorem1: t1,
        mclass_ledger: ledger,
        mclass_flemma: flemma,
        delta1,
        class,
        consistent,
        brocard_lemoyne: bl,
        branches: a.records(),
        diagnostics,
    })
}

/// `mclass` of the caustic by reflection of `C` from `S`, along the selected paths.
pub fn mclass(curve: &PlaneCurve, src: &Source, opts: &ReportOptions) -> Result<CausticClassReport, CausticError> {
    let v = degeneracy_check(curve, src)?;
    if v != Verdict::Ok {
        return v.into_result().map(|_| unreachable!());
    }
    let pieces = analyze(curve, src, opts.seed)?;
    let mut reports = pieces.iter().map(|a| report_from(a, opts)).collect::<Result<Vec<_>, _>>()?;
    let mut first = reports.remove(0);
    for r in &reports {
        if r.mclass() != first.mclass() {
            first.consistent = false;
            first
                .diagnostics
                .push(format!("conjugate sources disagree: {:?} and {:?}", first.mclass(), r.mclass()));
        }
    }
    Ok(first)
}

/// The terms of the closed formula alone.
pub fn theorem1_terms(curve: &PlaneCurve, src: &Source) -> Result<Theorem1Terms, CausticError> {
    degeneracy_check(curve, src)?.into_result()?;
    let pieces = analyze(curve, src, 1)?;
    pieces[0].terms()
}

/// Brocard–Lemoyne value and corrections; the source must be finite.
pub fn brocard_lemoyne(curve: &PlaneCurve, src: &Source) -> Result<BrocardLemoyne, CausticError> {
    degeneracy_check(curve, src)?.into_result()?;
    let pieces = analyze(curve, src, 1)?;
    pieces[0].brocard_lemoyne()
}
