//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

use std::collections::BTreeSet;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use caustic_core::arith::{drive, BiPoly, GaussianRational as Gq, Ring, TriPoly, UniPoly};
use caustic_core::caustic::delta::delta1_estimate;
use caustic_core::caustic::hvalue::HCaseRecord;
use caustic_core::caustic::report::{brocard_lemoyne, mclass, CausticClassReport, ReportOptions};
use caustic_core::caustic::verify::verify;
use caustic_core::caustic::Source;
use caustic_core::curve::point::{cyclic_i, cyclic_j, Line, Point};
use caustic_core::curve::section::intersect_with_line;
use caustic_core::curve::PlaneCurve;
use caustic_core::parse::{parse_extension, parse_point, parse_polynomial};
use caustic_core::puiseux::local::{local_intersection, resultant_valuation};
use caustic_core::CausticError;

const LEMNISCATE: &str = "(x^2+y^2)^2 - 2*(x^2-y^2)*z^2";
const QUINTIC: &str = "y^2*z^3 - x^5";
const QUARTIC: &str = "2*y*z^3+2*z^2*y^2+2*z*y^3+2*y^4-2*z^3*x+2*z*y*x^2+5*y^2*x^2+3*x^4";

type Verdict = Result<String, String>;

/// Every `(instance, branch record)` met while checking the class.
#[derive(Default)]
struct Seen {
    records: Vec<(String, HCaseRecord)>,
}

fn curve(text: &str) -> PlaneCurve {
    PlaneCurve::parse(text).expect("corpus curve parses")
}

fn source(text: &str, ext: Option<&str>) -> Source {
    match ext {
        None => Source::rational(parse_point(text, None).expect("corpus point parses")),
        Some(m) => {
            let ctx = parse_extension(m).expect("corpus modulus parses");
            let coords = parse_point(text, Some(&ctx)).expect("corpus point parses");
            Source { ctx: Some(ctx), coords }
        }
    }
}

impl Seen {
    fn report(&mut self, c: &str, s: &str, ext: Option<&str>) -> Result<CausticClassReport, String> {
        let r = mclass(&curve(c), &source(s, ext), &ReportOptions::default())
            .map_err(|e| format!("{c} from {s}: {e}"))?;
        for b in &r.branches {
            self.records.push((format!("{c} from {s}"), b.clone()));
        }
        if !r.consistent {
            return Err(format!("{c} from {s}: {}", r.diagnostics.join("; ")));
        }
        Ok(r)
    }

    fn expect_class(&mut self, c: &str, s: &str, ext: Option<&str>, want: i64) -> Result<(), String> {
        let r = self.report(c, s, ext)?;
        if r.class != Some(want) {
            return Err(format!("{c} from {s}: class {:?}, expected {want}", r.class));
        }
        Ok(())
    }
}

/// A predicate on a source, evaluated in every piece of its context.
fn holds(src: &Source, f: impl Fn(&Point) -> caustic_core::Res<bool>) -> Result<bool, CausticError> {
    let v = drive(&src.ctx, src.coords.clone(), |_, p| f(p))?;
    Ok(v.iter().all(|(_, b)| *b))
}

fn lemniscate_line(a: i64, b: i64) -> Line {
    // V(y + a i z + b i x)
    let i = caustic_core::arith::Ext::i();
    Line::new([i.mul(&caustic_core::arith::Ext::from_int(b)), caustic_core::arith::Ext::one(), i.mul(&caustic_core::arith::Ext::from_int(a))])
}

fn criterion_1(seen: &mut Seen) -> Verdict {
    for s in ["1:0:0", "0:1:0", "1:2:0", "3:-7:0"] {
        seen.expect_class(LEMNISCATE, s, None, 12)?;
    }
    seen.expect_class(LEMNISCATE, "1:0:1", None, 8)?;
    let c = curve(LEMNISCATE);
    let l_i = [lemniscate_line(-1, -1), lemniscate_line(-1, 1)];
    let l_j = [lemniscate_line(1, -1), lemniscate_line(1, 1)];
    let finite: [(&str, Option<&str>); 7] = [
        ("3:5:7", None),
        ("1:0:1", None),
        ("-1:0:1", None),
        ("1:2*i:1", None),
        ("1:-2*i:1", None),
        ("0:0:1", None),
        ("t:0:1", Some("t^2-2")),
    ];
    let mut combos = BTreeSet::new();
    for (s, ext) in finite {
        let src = source(s, ext);
        let on = |ls: &[Line; 2]| holds(&src, |p| Ok(ls[0].contains(p)? || ls[1].contains(p)?));
        let ind_i = on(&l_i).map_err(|e| e.to_string())? as i64;
        let ind_j = on(&l_j).map_err(|e| e.to_string())? as i64;
        let mu = drive(&src.ctx, src.coords.clone(), |_, p| Ok(c.multiplicity(p)?)).map_err(|e| e.to_string())?[0].1
            as i64;
        combos.insert((ind_i, ind_j, mu));
        seen.expect_class(LEMNISCATE, s, ext, 12 - 2 * (ind_i + ind_j) - mu)?;
    }
    let indicator_pairs: BTreeSet<_> = combos.iter().map(|(a, b, _)| (*a, *b)).collect();
    let mus: BTreeSet<_> = combos.iter().map(|c| c.2).collect();
    if indicator_pairs.len() != 4 || mus.len() != 3 {
        return Err(format!("sample sources do not cover every case: {combos:?}"));
    }
    Ok(format!("4 sources at infinity, 7 finite sources covering {combos:?}"))
}

fn criterion_2(seen: &mut Seen) -> Verdict {
    let rows: [(&str, Option<&str>, i64); 8] = [
        ("0:1:0", None, 8),
        ("-3/25*t:0:1", Some("t^3-20"), 9),
        (
            "t:-125/324*i*t^7-235/162*i*t^4-11/60*i*t:1",
            Some("t^9+67/25*t^6+1323/625*t^3+729/15625"),
            10,
        ),
        ("1:0:0", None, 11),
        ("0:0:1", None, 11),
        ("0:3/25*i*t:1", Some("t^3-20"), 11),
        ("1:1:1", None, 12),
        ("2:3:7", None, 13),
    ];
    for (s, ext, want) in rows {
        seen.expect_class(QUINTIC, s, ext, want)?;
    }
    // the class-10 source lies on the curve and on an isotropic tangent line
    let src = source(rows[2].0, rows[2].1);
    let c = curve(QUINTIC);
    let on_curve = holds(&src, |p| Ok(c.contains(p)?)).map_err(|e| e.to_string())?;
    let g = parse_polynomial("(i*x-y)^3 - 108/3125*i*z^3", None).unwrap();
    let on_lines = holds(&src, |p| Ok(g.eval(p).zero_test()?)).map_err(|e| e.to_string())?;
    if !on_curve || !on_lines {
        return Err("the class-10 source is not on the curve and an isotropic tangent".into());
    }
    Ok("rows 8, 9, 10, 11 (three sources), 12, 13 reproduced".into())
}

fn criterion_3(seen: &mut Seen) -> Verdict {
    seen.expect_class(QUARTIC, "0:0:1", None, 23)?;
    let bl = brocard_lemoyne(&curve(QUARTIC), &source("0:0:1", None)).map_err(|e| e.to_string())?;
    let corr: usize = bl.corrections.iter().sum();
    if bl.value != 21 || corr != 2 || bl.corrected() != 23 {
        return Err(format!("Brocard-Lemoyne {} with corrections {:?}", bl.value, bl.corrections));
    }
    Ok(format!("class 23, Brocard-Lemoyne 21, corrections {:?}", bl.corrections))
}

fn criterion_4() -> Verdict {
    let mut out = Vec::new();
    for (c, want) in [(LEMNISCATE, 6), (QUINTIC, 5), (QUARTIC, 12), ("x^3 + y^3 + z^3", 6), ("y^2*z - x^3 + x*z^2", 6)] {
        let d = curve(c).dual_degree_paths().map_err(|e| format!("{c}: {e}"))?;
        if d.polar != want || d.ledger != want {
            return Err(format!("{c}: polars {} ledger {}, expected {want}", d.polar, d.ledger));
        }
        out.push(want.to_string());
    }
    Ok(format!("dual degrees {}", out.join(", ")))
}

/// Curves of degree 2 to 5 and sources: finite off the curve, at infinity, on the curve.
const CORPUS: [(&str, [&str; 3]); 14] = [
    ("x^2 + 2*y^2 - z^2", ["2:-3:11", "1:3:0", "1:0:1"]),
    ("x^2 + y^2 - z^2", ["1:2:5", "2:1:0", "3:4:5"]),
    ("x*y - z^2", ["2:-3:11", "1:3:0", "1:1:1"]),
    ("y^2*z - x^3 - x^2*z", ["2:-3:11", "1:3:0", "0:0:1"]),
    ("y^2*z - x^3", ["2:-3:11", "1:3:0", "1:1:1"]),
    ("y^2*z - x^3 + x*z^2", ["2:-3:11", "1:3:0", "1:0:1"]),
    ("x^3 + y^3 + z^3", ["2:-3:11", "1:3:0", "1:-1:0"]),
    (LEMNISCATE, ["2:-3:11", "1:3:0", "0:0:1"]),
    (QUINTIC, ["2:-3:11", "1:3:0", "1:1:1"]),
    (QUARTIC, ["2:-3:11", "1:3:0", "0:0:1"]),
    ("(x^2+y^2-x*z)^2 - (x^2+y^2)*z^2", ["2:-3:11", "1:3:0", "2:0:1"]),
    ("(x^2+y^2)^2 - x*(x^2-3*y^2)*z", ["2:-3:11", "1:3:0", "1:0:1"]),
    ("y^2*z^2 - x^4 - y^4", ["2:-3:11", "1:3:0", "0:1:1"]),
    ("x^4 + y^4 - z^4", ["2:-3:11", "1:3:0", "1:0:1"]),
];

fn criterion_5(seen: &mut Seen) -> Verdict {
    let mut instances = 0;
    let mut degrees = BTreeSet::new();
    for (c, sources) in CORPUS {
        let pc = curve(c);
        degrees.insert(pc.degree());
        let mut kinds = BTreeSet::new();
        for s in sources {
            let src = source(s, None);
            let at_inf = src.coords[2].is_zero();
            let on = pc.contains(&src.coords).map_err(|_| "split on a rational point".to_string())?;
            kinds.insert(if on { "on curve" } else if at_inf { "infinite" } else { "finite" });
            let r = seen.report(c, s, None)?;
            let paths = [r.mclass_theorem1, r.mclass_ledger, r.mclass_flemma];
            if paths.iter().any(|p| p.is_none()) || paths.iter().any(|p| *p != paths[0]) {
                return Err(format!("{c} from {s}: paths {paths:?}"));
            }
            instances += 1;
        }
        if kinds.len() != 3 {
            return Err(format!("{c}: source kinds {kinds:?}"));
        }
    }
    if degrees != (2..=5).collect() {
        return Err(format!("corpus degrees {degrees:?}"));
    }
    Ok(format!("{} curves, {instances} instances, three paths equal", CORPUS.len()))
}

fn random_form(rng: &mut ChaCha8Rng, d: u32, range: i64) -> TriPoly<Gq> {
    let mut terms = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            terms.push(([a, b, d - a - b], Gq::from_int(rng.gen_range(-range..=range))));
        }
    }
    TriPoly::from_terms(terms)
}

fn random_curve(rng: &mut ChaCha8Rng, d: u32, circular: bool) -> PlaneCurve {
    loop {
        let f = if circular {
            // (x^2 + y^2) A + z B passes through both cyclic points
            let q = TriPoly::from_terms([([2, 0, 0], Gq::one()), ([0, 2, 0], Gq::one())]);
            q.mul(&random_form(rng, d - 2, 5)).add(&TriPoly::var(2).mul(&random_form(rng, d - 1, 5)))
        } else {
            random_form(rng, d, 5)
        };
        if let Ok(c) = PlaneCurve::new(f) {
            if c.degree() == d {
                return c;
            }
        }
    }
}

/// `g = sum over C n l_inf of (i_m(C, l_inf) - mu_m)`, from the section alone.
fn contact_with_infinity(c: &PlaneCurve) -> Result<usize, CausticError> {
    let mut g = 0;
    for sp in intersect_with_line(c, &None, &Line::infinity()).map_err(fail)? {
        let per = drive(&sp.ctx, sp.point.clone(), |_, p| Ok(c.multiplicity(p)?))?;
        g += sp.size() * sp.mult - per.iter().map(|(k, m)| caustic_core::arith::ctx_degree(k) * m).sum::<usize>();
    }
    Ok(g)
}

fn fail(f: caustic_core::Fail) -> CausticError {
    match f {
        caustic_core::Fail::Err(e) => e,
        caustic_core::Fail::Split(_) => CausticError::Internal("unexpected split".into()),
    }
}

fn criterion_6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut out = Vec::new();
    for (d, circular) in [(3, false), (3, true), (4, false), (4, true), (5, true)] {
        let c = random_curve(&mut rng, d, circular);
        let s: Point = std::array::from_fn(|_| caustic_core::arith::Ext::from_int(rng.gen_range(-30..=30)));
        let mut s = s;
        s[2] = caustic_core::arith::Ext::from_int(rng.gen_range(1..=30));
        let src = Source::rational(s);
        let r = mclass(&c, &src, &ReportOptions::default()).map_err(|e| e.to_string())?;
        let dual = c.dual_degree().map_err(|e| e.to_string())? as i64;
        let g = contact_with_infinity(&c).map_err(|e| e.to_string())? as i64;
        let mu_i = c.multiplicity(&cyclic_i()).unwrap() as i64;
        let mu_j = c.multiplicity(&cyclic_j()).unwrap() as i64;
        let want = 2 * dual + d as i64 - g - mu_i - mu_j;
        let delta1 = delta1_estimate(&c, &src, 3, 6).map_err(|e| e.to_string())?;
        if !r.consistent || r.class != Some(want) || delta1 != 1 {
            return Err(format!("degree {d}: class {:?}, formula {want}, delta1 {delta1}", r.class));
        }
        out.push(want.to_string());
    }
    Ok(format!("5 random curves, classes {}", out.join(", ")))
}

fn random_local(rng: &mut ChaCha8Rng) -> BiPoly<Gq> {
    // monic in y, vanishing at the origin
    let deg_y = rng.gen_range(1..=3);
    let mut rows: Vec<UniPoly<Gq>> = (0..deg_y)
        .map(|_| UniPoly::new((0..4).map(|_| Gq::from_int(rng.gen_range(-3..=3))).collect()))
        .collect();
    let mut c0 = rows[0].coeffs().to_vec();
    if let Some(c) = c0.first_mut() {
        *c = Gq::zero();
    }
    rows[0] = UniPoly::new(c0);
    rows.push(UniPoly::constant(Gq::one()));
    UniPoly::new(rows)
}

fn x_pow(k: usize) -> BiPoly<Gq> {
    UniPoly::constant(UniPoly::monomial(Gq::one(), k))
}

fn criterion_7(seen: &Seen) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut pairs, mut tangential) = (0, 0);
    while pairs < 60 {
        let f = random_local(&mut rng);
        let g = if pairs % 2 == 0 {
            random_local(&mut rng)
        } else {
            // higher contact: g = f + x^k h
            let k = rng.gen_range(1..=4);
            f.add(&x_pow(k).mul(&random_local(&mut rng)))
        };
        let Some(want) = resultant_valuation(&f, &g) else { continue };
        let got = local_intersection(&f, &g, 256).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("local pair {pairs}: branches give {got}, resultant {want}"));
        }
        tangential += (want >= 2) as usize;
        pairs += 1;
    }
    let bad: Vec<String> = seen
        .records
        .iter()
        .filter(|(_, r)| r.h != r.h_direct)
        .map(|(w, r)| format!("{w} at {}", r.point))
        .collect();
    if !bad.is_empty() {
        return Err(format!("h mismatch: {}", bad.join("; ")));
    }
    let mut lines = 0;
    let curves: Vec<PlaneCurve> = CORPUS.iter().map(|(c, _)| curve(c)).collect();
    while lines < 120 {
        let c = &curves[lines % curves.len()];
        let l = Line::new(std::array::from_fn(|_| caustic_core::arith::Ext::from_int(rng.gen_range(-9..=9))));
        if l.coeffs.iter().all(|a| a.is_zero()) {
            continue;
        }
        let total: usize = intersect_with_line(c, &None, &l).map_err(fail).map_err(|e| e.to_string())?.iter().map(|p| p.size() * p.mult).sum();
        if total != c.degree() as usize {
            return Err(format!("line section of degree {} sums to {total}", c.degree()));
        }
        lines += 1;
    }
    Ok(format!(
        "{pairs} local pairs ({tangential} with contact >= 2), {} branch records, {lines} line sections",
        seen.records.len()
    ))
}

fn criterion_8() -> Verdict {
    let instances: [(&str, &str, Option<&str>); 9] = [
        (LEMNISCATE, "1:0:1", None),
        (LEMNISCATE, "1:2:0", None),
        (QUINTIC, "0:1:0", None),
        (QUINTIC, "-3/25*t:0:1", Some("t^3-20")),
        (QUARTIC, "0:0:1", None),
        ("(x^2+y^2-x*z)^2 - (x^2+y^2)*z^2", "2:0:1", None),
        ("y^2*z - x^3 - x^2*z", "0:0:1", None),
        ("x^2 + y^2 - z^2", "1:2:5", None),
        ("y^2*z^2 - x^4 - y^4", "2:-3:11", None),
    ];
    let mut names = BTreeSet::new();
    for (c, s, ext) in instances {
        let v = verify(&curve(c), &source(s, ext), &ReportOptions::default(), 20).map_err(|e| format!("{c} from {s}: {e}"))?;
        for k in &v.checks {
            if !k.passed {
                return Err(format!("{c} from {s}: {} {}", k.name, k.detail));
            }
            names.insert(k.name);
        }
        if !v.passed() {
            return Err(format!("{c} from {s}: {}", v.report.diagnostics.join("; ")));
        }
    }
    Ok(format!("{} instances, checks: {}", instances.len(), names.into_iter().collect::<Vec<_>>().join(", ")))
}

fn main() -> ExitCode {
    let mut seen = Seen::default();
    let mut all = true;
    let mut line = |n: usize, title: &str, v: Verdict| {
        let (mark, detail) = match v {
            Ok(d) => ("PASS", d),
            Err(d) => {
                all = false;
                ("FAIL", d)
            }
        };
        println!("criterion {n} {mark}: {title}: {detail}");
    };
    line(1, "lemniscate", criterion_1(&mut seen));
    line(2, "quintic table", criterion_2(&mut seen));
    line(3, "Brocard-Lemoyne counterexample", criterion_3(&mut seen));
    line(4, "dual degrees", criterion_4());
    line(5, "three computations agree", criterion_5(&mut seen));
    line(6, "generic sources", criterion_6());
    line(7, "oracles", criterion_7(&seen));
    line(8, "invariants", criterion_8());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
