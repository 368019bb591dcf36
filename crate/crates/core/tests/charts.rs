use dp4_core::algebra::Field;
use dp4_core::classifier::*;

#[test]
fn x3_chart_elimination() {
    let r = verify_chart_elimination(Chart::X3).unwrap();
    println!("{}", serde_json::to_string_pretty(&r).unwrap());
    assert!(r.substitutions_pass());
    assert_eq!(r.comparison, IdealComparison::Equal);
}

#[test]
fn x4_chart_elimination() {
    let r = verify_chart_elimination(Chart::X4).unwrap();
    println!("{}", serde_json::to_string_pretty(&r).unwrap());
    assert!(r.substitutions_pass());
    assert_eq!(r.comparison, IdealComparison::Equal);
}

#[test]
fn q3_lemma() {
    let r = verify_lemma_q3().unwrap();
    println!("{}", serde_json::to_string_pretty(&r).unwrap());
    assert!(r.passed());
}

#[test]
fn generic_q3_point_has_smooth_k_conic() {
    let q = Field::Rational;
    // b^2 + 4ad = 0 with (a, b, d) = (1, 2, -1), off the singular line.
    let p = [q.from_i64(1), q.from_i64(2), q.from_i64(5), q.from_i64(-1)];
    assert_eq!(k_gram_rank(Chart::X3, &p).unwrap(), 3);
    let p = [q.from_i64(1), q.from_i64(1), q.from_i64(1), q.from_i64(1)];
    assert_eq!(k_gram_rank(Chart::X3, &p).unwrap(), 4);
}
