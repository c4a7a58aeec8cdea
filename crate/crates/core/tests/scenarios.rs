use entbreak_core::channels::phase_damping;
use entbreak_core::channels::ChannelFamily;
use entbreak_core::scenarios::closed_form::lambda_1;
use entbreak_core::scenarios::states::{phi_plus, rho1_in, rho2_in, rho3_in, u_a};
use entbreak_core::scenarios::{
    certify_selective_breaking, orbit_search, pure_state_nogo_scan, qutrit_example, solve_lambda_sep, LoccChain,
    OrbitGrid, Piece, SolveOptions,
};
use entbreak_core::Subsystem;

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn nogo_report_independent_of_thread_count() {
    let parallel = pure_state_nogo_scan(200, 42).unwrap();
    let serial = single_threaded(|| pure_state_nogo_scan(200, 42).unwrap());
    assert_eq!(format!("{parallel:?}"), format!("{serial:?}"));
    assert!(parallel.counterexamples.is_empty());
    assert!(parallel.separable_outputs > 0);
}

#[test]
fn search_independent_of_thread_count() {
    let family = ChannelFamily::phase_damping();
    let grid = OrbitGrid::cube(6);
    let opts = SolveOptions::default();
    let parallel = orbit_search(&rho1_in(), &family, &grid, &opts).unwrap();
    let serial = single_threaded(|| orbit_search(&rho1_in(), &family, &grid, &opts).unwrap());
    assert_eq!(parallel.records, serial.records);
}

#[test]
fn pure_state_orbit_is_flat() {
    let out = orbit_search(
        &phi_plus(),
        &ChannelFamily::phase_damping(),
        &OrbitGrid::cube(8),
        &SolveOptions::default(),
    )
    .unwrap();
    assert!(out.max_gap().unwrap() <= 1e-9);
}

#[test]
fn rotated_state_has_lower_critical_value() {
    let opts = SolveOptions::default();
    let family = ChannelFamily::phase_damping();
    let base = solve_lambda_sep(&family, &rho1_in(), &opts).unwrap().value;
    let rotated = solve_lambda_sep(&family, &rho2_in(), &opts).unwrap().value;
    assert!((base - 1.0).abs() < 1e-9);
    assert!((rotated - lambda_1()).abs() < 1e-9);
}

#[test]
fn certificate_window_follows_the_chain_parameter() {
    let ch = phase_damping(lambda_1()).unwrap();
    for (t, ok) in [(0.1, true), (1.0 / 3.0, true), (0.6, true), (2.0 / 3.0, false)] {
        let chain = LoccChain::undo_rotation_then_replace(&u_a(), Subsystem::A, 1.0 - 1.5 * t);
        let cert = certify_selective_breaking(&ch, &rho2_in(), &rho3_in(t).unwrap(), &chain).unwrap();
        assert_eq!(cert.valid, ok, "t = {t}");
        if !ok {
            assert_eq!(cert.failed_piece, Some(Piece::StrictInputInequality));
        }
    }
}

#[test]
fn qutrit_family() {
    for q in [0.1, 0.25, 0.5, 0.9] {
        let r = qutrit_example(q).unwrap();
        assert!(r.chain_verified, "q = {q}");
        assert!((r.out2_negativity - 2.0 * (q * (1.0 - q)).sqrt()).abs() <= 1e-10);
        assert!(r.out1_negativity <= 1e-12);
    }
}
