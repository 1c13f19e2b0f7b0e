mod common;

use common::{check_intersections, equal_up_to_column_scalars, load, vertex_names};
use pathres::fixtures::{BASIC_ORDER_ONE, BASIC_ORDER_TWO, POLYNOMIAL_XY};
use pathres::resolution::{build_resolution, verify_complex, ExactnessStatus, Label, ResolutionOptions};
use pathres::syntax::parse_element;
use pathres::{Error, Exec};

fn resolve(text: &str, steps: usize) -> (pathres::QuotientAlgebra, pathres::resolution::Resolution) {
    let (_, q, pres) = load(text);
    let opts = ResolutionOptions { steps, ..ResolutionOptions::default() };
    let res = build_resolution(&q, &pres, &opts).unwrap();
    (q, res)
}

const LINE: &str = "vertices: v1, v2, v3\narrows:\n  a: v1 -> v2\n  b: v2 -> v3\nfield: Q\n";

#[test]
fn first_order_example() {
    let (q, res) = resolve(BASIC_ORDER_ONE, 4);
    let alg = q.algebra();
    assert_eq!(res.ranks(), vec![1, 2, 2, 1]);
    assert_eq!(vertex_names(&q, &res.summands(1)), ["v2", "v3"]);
    assert_eq!(vertex_names(&q, &res.summands(2)), ["v4", "v5"]);
    assert_eq!(vertex_names(&q, &res.summands(3)), ["v5"]);
    assert!(equal_up_to_column_scalars(alg, res.differential(1), &[&["a", "c"]]));
    assert!(equal_up_to_column_scalars(alg, res.differential(2), &[&["b", "0"], &["-d", "d*e"]]));
    assert!(equal_up_to_column_scalars(alg, res.differential(3), &[&["e"], &["v5"]]));
    assert_eq!(res.terminated, Some(3));
    let last = res.stage(4).unwrap();
    assert!(last.generators.is_empty() && last.primed.is_empty());

    let labels: Vec<_> = res.stage(2).unwrap().generators.iter().map(|g| g.label.clone()).collect();
    let ab = alg.parse_path("a*b").unwrap();
    let cde = alg.parse_path("c*d*e").unwrap();
    assert_eq!(labels, [Label::Overlap { coord: 0, path: ab }, Label::Overlap { coord: 1, path: cde }]);
    let report = verify_complex(&q, &res);
    assert!(report.passed());
    assert!(matches!(report.exactness, ExactnessStatus::Checked(_)));
    check_intersections(&q, &res, 5).unwrap();
}

#[test]
fn second_order_example() {
    let (q, res) = resolve(BASIC_ORDER_TWO, 4);
    let alg = q.algebra();
    assert_eq!(res.ranks(), vec![1, 2, 1]);
    assert_eq!(vertex_names(&q, &res.summands(2)), ["v4"]);
    assert!(equal_up_to_column_scalars(alg, res.differential(1), &[&["a", "c"]]));
    assert!(equal_up_to_column_scalars(alg, res.differential(2), &[&["b"], &["-d"]]));
    assert_eq!(res.terminated, Some(2));
    // be stays behind as a translate of the relation
    assert_eq!(res.stage(2).unwrap().primed.len(), 1);
    assert!(verify_complex(&q, &res).passed());
    check_intersections(&q, &res, 5).unwrap();
}

#[test]
fn zero_matrix_presents_a_projective() {
    let (_, q, pres) = load(&format!("{LINE}relations:\n  a*b\nmodule: targets(v1) sources(v2) matrix([0])\n"));
    let res = build_resolution(&q, &pres, &ResolutionOptions::default()).unwrap();
    assert_eq!(res.ranks(), vec![1]);
    assert_eq!(res.terminated, Some(0));
    assert!(verify_complex(&q, &res).passed());
}

#[test]
fn unit_column_presents_zero() {
    let (_, q, pres) = load(&format!("{LINE}relations:\n  a*b\nmodule: targets(v1) sources(v1) matrix([v1])\n"));
    let res = build_resolution(&q, &pres, &ResolutionOptions::default()).unwrap();
    assert_eq!(res.ranks(), vec![1, 1]);
    assert_eq!(res.stage(1).unwrap().generators[0].label, Label::Column(0));
    assert_eq!(res.terminated, Some(1));
    assert!(verify_complex(&q, &res).passed());
}

#[test]
fn hereditary_simple() {
    let (_, q, pres) = load(&format!("{LINE}relations:\nmodule: targets(v1) sources(v2) matrix([a])\n"));
    let res = build_resolution(&q, &pres, &ResolutionOptions::default()).unwrap();
    assert_eq!(res.ranks(), vec![1, 1]);
    assert_eq!(res.terminated, Some(1));
    check_intersections(&q, &res, 5).unwrap();
}

#[test]
fn monomial_line() {
    let (_, q, pres) = load(&format!("{LINE}relations:\n  a*b\nmodule: targets(v1) sources(v2) matrix([a])\n"));
    let res = build_resolution(&q, &pres, &ResolutionOptions::default()).unwrap();
    assert_eq!(res.ranks(), vec![1, 1, 1]);
    assert_eq!(vertex_names(&q, &res.summands(2)), ["v3"]);
    assert!(verify_complex(&q, &res).passed());
}

#[test]
fn zero_steps() {
    let (q, res) = resolve(BASIC_ORDER_ONE, 0);
    assert_eq!(res.ranks(), vec![1]);
    assert!(res.stages.is_empty());
    assert!(verify_complex(&q, &res).passed());
}

#[test]
fn step_limit_is_respected() {
    let (_, res) = resolve(BASIC_ORDER_ONE, 2);
    assert_eq!(res.ranks(), vec![1, 2, 2]);
    assert_eq!(res.terminated, None);
}

#[test]
fn corrupted_differential_is_reported() {
    let (q, mut res) = resolve(BASIC_ORDER_ONE, 4);
    let alg = q.algebra().clone();
    res.differentials[1].set(0, 0, parse_element(&alg, "2*b").unwrap());
    let report = verify_complex(&q, &res);
    assert!(!report.passed());
    assert!(!report.products.is_empty());
}

#[test]
fn infinite_right_basis_is_refused() {
    let (_, q, pres) = load(POLYNOMIAL_XY);
    let err = build_resolution(&q, &pres, &ResolutionOptions::default()).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)), "{err}");
}

#[test]
fn execution_modes_agree_on_examples() {
    for text in [BASIC_ORDER_ONE, BASIC_ORDER_TWO] {
        let (_, q, pres) = load(text);
        let run = |exec| {
            let opts = ResolutionOptions { exec, ..ResolutionOptions::default() };
            build_resolution(&q, &pres, &opts).unwrap().differentials
        };
        assert_eq!(run(Exec::Sequential), run(Exec::Parallel));
    }
}
