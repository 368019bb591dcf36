use dp4_core::algebra::Field;
use dp4_core::grassmann::*;

#[test]
fn r_ideal_contains_sweep_and_table_b_line() {
    let q = Field::Rational;
    let t0 = std::time::Instant::now();
    let ir = ideal_of_r(q);
    eprintln!("R ideal in {:?}: {}", t0.elapsed(), ir);
    let p1 = make_pt(q, &ConicParam::int(q, 1));
    for row in p1.u3().rows() {
        assert!(ir.gens().iter().all(|g| g.eval(&row).is_zero()));
    }
    let b = FlagLine::parse(q, "e0", "e0,e2,e4").unwrap();
    assert!(line_in_variety(&b, &ir).unwrap());
    assert!(line_in_some_pt(&b));
    let a = FlagLine::parse(q, "e2", "e0,e2,e3").unwrap();
    assert!(!line_in_variety(&a, &ir).unwrap());
    assert!(!line_in_some_pt(&a));
}
