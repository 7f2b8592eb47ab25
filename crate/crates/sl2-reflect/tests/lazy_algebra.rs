//! The algebra suite needs no quadrature. Kept in its own test binary so the
//! process-wide grid counter starts at zero.

use sl2_reflect::cli::{run_verify, Config, Suite};
use sl2_reflect::halfplane::grids_built;

#[test]
fn algebra_suite_builds_no_grids() {
    let report = run_verify(Suite::Algebra, &Config::default()).unwrap();
    assert!(report.passed(), "{}", report.to_text());
    assert_eq!(grids_built(), 0);
}
