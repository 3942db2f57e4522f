use caustic_core::caustic::report::{mclass, ReportOptions};
use caustic_core::caustic::Source;
use caustic_core::curve::point::pt;
use caustic_core::curve::PlaneCurve;

fn class_of(f: &str, s: [i64; 3]) -> caustic_core::caustic::report::CausticClassReport {
    let c = PlaneCurve::parse(f).unwrap();
    mclass(&c, &Source::rational(pt(s[0], s[1], s[2])), &ReportOptions::default()).unwrap()
}

#[test]
fn lemniscate_sources() {
    let lem = "(x^2+y^2)^2 - 2*(x^2-y^2)*z^2";
    for (s, want) in [([1, 0, 1], 8), ([1, 2, 0], 12), ([3, 1, 7], 12)] {
        let r = class_of(lem, s);
        println!("{s:?}: {:?} {:?} {:?} {:?}", r.mclass_theorem1, r.mclass_ledger, r.mclass_flemma, r.diagnostics);
        assert!(r.consistent, "{:?}", r.diagnostics);
        assert_eq!(r.class, Some(want));
    }
}

#[test]
fn quintic_and_quartic() {
    let q = "y^2*z^3 - x^5";
    for (s, want) in [([0, 1, 0], 8), ([1, 0, 0], 11), ([0, 0, 1], 11), ([1, 1, 1], 12), ([2, 3, 7], 13)] {
        let r = class_of(q, s);
        println!("{s:?}: {:?} {:?} {:?} {:?}", r.mclass_theorem1, r.mclass_ledger, r.mclass_flemma, r.diagnostics);
        assert!(r.consistent, "{:?}", r.diagnostics);
        assert_eq!(r.class, Some(want), "{s:?}");
    }
    let quartic = "2*y*z^3+2*z^2*y^2+2*z*y^3+2*y^4-2*z^3*x+2*z*y*x^2+5*y^2*x^2+3*x^4";
    let r = class_of(quartic, [0, 0, 1]);
    println!("{:?}", r.terms);
    assert_eq!(r.class, Some(23));
    let bl = r.brocard_lemoyne.unwrap();
    assert_eq!(bl.value, 21);
    assert_eq!(bl.corrections.iter().sum::<usize>(), 2);
}

#[test]
fn quintic_source_over_cubic_extension() {
    let c = PlaneCurve::parse("y^2*z^3 - x^5").unwrap();
    let ctx = caustic_core::parse::parse_extension("t^3-20").unwrap();
    let s = caustic_core::parse::parse_point("-3/25*t:0:1", Some(&ctx)).unwrap();
    let r = mclass(&c, &Source { ctx: Some(ctx), coords: s }, &ReportOptions::default()).unwrap();
    println!("{:?} {:?}", r.terms, r.diagnostics);
    assert!(r.consistent);
    assert_eq!(r.class, Some(9));
}

#[test]
fn quintic_source_on_curve_and_isotropic_tangent() {
    let c = PlaneCurve::parse("y^2*z^3 - x^5").unwrap();
    let ctx = caustic_core::parse::parse_extension("t^9 + 67/25*t^6 + 1323/625*t^3 + 729/15625").unwrap();
    let s = caustic_core::parse::parse_point("t:-125/324*i*t^7-235/162*i*t^4-11/60*i*t:1", Some(&ctx)).unwrap();
    let r = mclass(&c, &Source { ctx: Some(ctx), coords: s }, &ReportOptions::default()).unwrap();
    println!("{:?} {:?}", r.terms, r.diagnostics);
    assert!(r.consistent);
    assert_eq!(r.class, Some(10));
}
