use curvop::homology::{bracket_kappa_windows, dt_windows, WindowCheck};
use curvop::operad::Mode;

fn assert_all_zero(checks: &[WindowCheck]) {
    for c in checks {
        assert!(c.passed(), "{c}");
    }
}

#[test]
fn bracket_with_kappa_is_acyclic_in_positive_arity() {
    let checks = bracket_kappa_windows(Mode::Nonsymmetric, 3, 2).unwrap();
    assert_eq!(checks.len(), 9);
    assert_all_zero(&checks);
    assert!(checks.iter().any(|c| c.dimension > 50));
}

// With a fully invariant odd binary generator the cyclic sum of
// m(m(1, 2), 3) survives in arity 3, weight 0; everything else is acyclic.
#[test]
fn bracket_with_kappa_symmetric() {
    let checks = bracket_kappa_windows(Mode::Symmetric, 3, 2).unwrap();
    for c in &checks {
        let expected = usize::from(c.name.ends_with("arity 3 weight 0"));
        assert_eq!(c.value, expected, "{c}");
    }
}

#[test]
fn dt_windows_nonsymmetric() {
    let checks = dt_windows(Mode::Nonsymmetric, 3, 3).unwrap();
    assert_eq!(checks.len(), 4 * (3 + 4));
    assert_all_zero(&checks);
}

#[test]
fn dt_windows_symmetric() {
    assert_all_zero(&dt_windows(Mode::Symmetric, 3, 3).unwrap());
}
