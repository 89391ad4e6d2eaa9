#[path = "../examples/annihilator.rs"]
mod annihilator;
#[path = "../examples/circuit_json.rs"]
mod circuit_json;
#[path = "../examples/circuit_rewrite.rs"]
mod circuit_rewrite;
#[path = "../examples/functional_dependence.rs"]
mod functional_dependence;
#[path = "../examples/hitting_set_pit.rs"]
mod hitting_set_pit;
#[path = "../examples/nw_parameters.rs"]
mod nw_parameters;
#[path = "../examples/nw_restriction.rs"]
mod nw_restriction;
#[path = "../examples/rank_certificate.rs"]
mod rank_certificate;
#[path = "../examples/schwartz_zippel.rs"]
mod schwartz_zippel;
#[path = "../examples/separation.rs"]
mod separation;
#[path = "../examples/shifted_partials.rs"]
mod shifted_partials;

use rankpit::pit::Verdict;

#[test]
fn rank_certificate() {
    assert_eq!(rank_certificate::run_example().unwrap(), (2, vec![0, 1]));
}

#[test]
fn annihilator() {
    assert_eq!(annihilator::run_example().unwrap(), "z1^2 - 2*z2 - z3");
}

#[test]
fn functional_dependence() {
    assert!(functional_dependence::run_example().unwrap());
}

#[test]
fn circuit_rewrite() {
    assert!(circuit_rewrite::run_example().unwrap() <= 2 * 3);
}

#[test]
fn circuit_json() {
    let c = circuit_json::run_example().unwrap();
    assert_eq!(c, "x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3 + x1*x2 - x2 + 3");
}

#[test]
fn shifted_partials() {
    assert_eq!(shifted_partials::run_example().unwrap(), 5);
}

#[test]
fn nw_restriction() {
    assert!(nw_restriction::run_example().unwrap() > 10);
}

#[test]
fn nw_parameters() {
    assert_eq!(nw_parameters::run_example().unwrap(), vec![false, true, true]);
}

#[test]
fn hitting_set_pit() {
    assert_eq!(hitting_set_pit::run_example().unwrap(), (Verdict::Zero, Verdict::Nonzero));
}

#[test]
fn schwartz_zippel() {
    assert!(schwartz_zippel::run_example().unwrap());
}

#[test]
fn separation() {
    let rows = separation::run_example().unwrap();
    assert_eq!(rows[0].0, 15);
}
