use bkcycles::dsl::{eval_expr, eval_formal_sum, Mode};
use bkcycles::Error;

fn ev(s: &str) -> String {
    eval_expr(s, Mode::Concrete).unwrap_or_else(|e| panic!("{s}: {e}"))
}

#[test]
fn du_prints_canonically() {
    assert_eq!(ev("(d (u 3 2))"), "(+ (pt 2) (pt 3/2) (- (pt 3)))");
    assert_eq!(ev("(u 3 1)"), "0");
}

#[test]
fn shuffle_of_points() {
    assert_eq!(ev("(shuffle (w (pt 2)) (w (pt 3)))"), "[2|3]+[3|2]");
}

#[test]
fn unterminated_input_reports_column() {
    match eval_expr("(d (u 3", Mode::Concrete) {
        Err(Error::ParseError { col, .. }) => assert_eq!(col, 7),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        eval_expr("(d (frob 3))", Mode::Concrete),
        Err(Error::ParseError { col: 3, .. })
    ));
    assert!(matches!(
        eval_expr("(pt (poly \"t+\"))", Mode::Concrete),
        Err(Error::ParseError { col: 13, .. })
    ));
}

#[test]
fn locus_forms_agree() {
    // x₁ − 3 = x₂x₃ is symmetric under the odd swap x₂ ↔ x₃.
    assert_eq!(ev("(locus (params a b) (slots a (div (sub a 3) b) b))"), "0");
    let named = ev("(locus (params a) (slots a (div (sub a 3) (sub a 2)) 2))");
    let quoted = ev("(locus \"p0\" \"(p0-3)/(p0-2)\" \"2\")");
    assert_eq!(named, quoted);
    assert_ne!(named, "0");
    assert_eq!(ev(&named), named);
}

#[test]
fn bar_polylog_is_closed_in_both_modes() {
    assert_eq!(ev("(d (polylog 2 3))"), "0");
    assert_eq!(eval_expr("(d (polylog 4 x))", Mode::Formal).unwrap(), "0");
    let l2 = eval_expr("(bar (w (rho 2 x)) (w -1 (rho 1 x) (pt x)))", Mode::Formal).unwrap();
    assert_eq!(l2, eval_expr("(polylog 2 x)", Mode::Formal).unwrap());
}

#[test]
fn formal_declarations() {
    let out = eval_expr("(d (formal D2 (j 2 3) :d (* (pt 2) (pt 3))))", Mode::Formal).unwrap();
    assert_eq!(out, "(* (pt 2) (pt 3))");
    assert!(matches!(
        eval_expr("(formal E :d (rho 2 x))", Mode::Formal),
        Err(Error::NotACocycle(_))
    ));
}

#[test]
fn formal_sums() {
    let s = eval_formal_sum("(+ (sym 5) (sym (- 1 5)))").unwrap();
    assert_eq!(s.len(), 2);
    assert_eq!(ev("(delta2 (+ (sym 5) (sym -4)))"), "0");
    assert_ne!(ev("(delta2 (sym 3))"), "0");
    assert_eq!(ev("(delta2 (five-term 2 3))"), "0");
}

#[test]
fn generator_arithmetic() {
    assert_eq!(ev("(d (rho 1 3))"), "0");
    assert_eq!(ev("(- (d (rho 2 3)) (* (rho 1 3) (pt 3)))"), "0");
    assert_eq!(ev("(let ((y (poly \"t+2\"))) (- (d (r y)) (- (pt y) (xz y))))"), "0");
}
