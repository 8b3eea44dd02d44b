//! End-to-end behaviour of λ sweeps on the named presets.

use qdotto_core::{
    figure_preset, find_critical_lambdas, run_sweep, Column, Direction, Grid, Mode, SweepError,
    PRESET_NAMES,
};

#[test]
fn every_preset_row_closes_the_first_law() {
    for name in PRESET_NAMES {
        let mut spec = figure_preset(name).unwrap();
        spec.grid = Grid::new(0.0, 10.0, 0.25);
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 41);
        for r in &rows {
            assert!(
                (r.w_mev - r.q_hot_mev - r.q_cold_mev).abs() < 1e-12,
                "{name} at {}",
                r.lambda_mev
            );
            assert_eq!(r.c12.is_some(), spec.measure_entanglement);
            if let Some(eta) = r.efficiency {
                assert_eq!(r.mode, Mode::Engine);
                assert!(eta > 0.0 && eta < 1.0);
            }
            for v in [r.c12, r.c13, r.c23].into_iter().flatten() {
                assert!((0.0..=1.0).contains(&v));
            }
            if let Some(t) = r.tau3 {
                assert!(t >= 0.0);
            }
        }
    }
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let spec = figure_preset("ent_asym_2_2_4").unwrap();
    let parallel = run_sweep(&spec).unwrap();
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| run_sweep(&spec).unwrap());
    assert_eq!(format!("{parallel:?}"), format!("{serial:?}"));
}

#[test]
fn baseline_modes_appear_in_order() {
    let rows = run_sweep(&figure_preset("work_heat_baseline").unwrap()).unwrap();
    assert_eq!(rows[0].mode, Mode::Engine);
    let first = |m: Mode| rows.iter().position(|r| r.mode == m);
    let (e, h, a) = (
        first(Mode::Engine).unwrap(),
        first(Mode::Heater).unwrap(),
        first(Mode::Accelerator).unwrap(),
    );
    assert!(e < h && h < a);
    assert!(rows.iter().all(|r| r.mode != Mode::Unclassified));
}

#[test]
fn symmetric_onsets_agree_across_pairs() {
    for name in ["ent_sym_2mev", "ent_sym_4mev"] {
        let spec = figure_preset(name).unwrap();
        let rows = run_sweep(&spec).unwrap();
        let onset = |col| {
            find_critical_lambdas(&rows, col)
                .into_iter()
                .find(|c| c.direction == Direction::Rising)
                .map(|c| c.lambda_mev)
                .unwrap()
        };
        let (a, b, c) = (onset(Column::C12), onset(Column::C13), onset(Column::C23));
        assert!((a - b).abs() <= spec.grid.step_mev && (a - c).abs() <= spec.grid.step_mev);
    }
}

#[test]
fn entanglement_turns_on_later_for_larger_exciton_energy() {
    let onset = |name| {
        let rows = run_sweep(&figure_preset(name).unwrap()).unwrap();
        find_critical_lambdas(&rows, Column::C12)[0].lambda_mev
    };
    assert!(onset("ent_sym_4mev") > onset("ent_sym_2mev") + 1.0);
}

#[test]
fn errors_name_the_offending_field() {
    let mut spec = figure_preset("work_heat_baseline").unwrap();
    spec.grid.step_mev = 0.0;
    match run_sweep(&spec) {
        Err(SweepError::InvalidGrid { field, .. }) => assert_eq!(field, "step_mev"),
        other => panic!("unexpected {other:?}"),
    }
}
