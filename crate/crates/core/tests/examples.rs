//! Every example must keep running against the current API.

#[path = "../examples/commuting_states.rs"]
mod commuting_states;

#[test]
fn commuting_states_runs() {
    commuting_states::run_example().unwrap();
}

#[path = "../examples/depolarizing_figure.rs"]
mod depolarizing_figure;

#[test]
fn depolarizing_figure_runs() {
    depolarizing_figure::run_example().unwrap();
}

#[path = "../examples/distillation.rs"]
mod distillation;

#[test]
fn distillation_runs() {
    distillation::run_example().unwrap();
}

#[path = "../examples/erasure_figure.rs"]
mod erasure_figure;

#[test]
fn erasure_figure_runs() {
    erasure_figure::run_example().unwrap();
}

#[path = "../examples/extendibility_check.rs"]
mod extendibility_check;

#[test]
fn extendibility_check_runs() {
    extendibility_check::run_example().unwrap();
}

#[path = "../examples/interleaved_bound.rs"]
mod interleaved_bound;

#[test]
fn interleaved_bound_runs() {
    interleaved_bound::run_example().unwrap();
}

#[path = "../examples/local_channels.rs"]
mod local_channels;

#[test]
fn local_channels_runs() {
    local_channels::run_example().unwrap();
}

#[path = "../examples/np_divergence.rs"]
mod np_divergence;

#[test]
fn np_divergence_runs() {
    np_divergence::run_example().unwrap();
}

#[path = "../examples/threshold_scan.rs"]
mod threshold_scan;

#[test]
fn threshold_scan_runs() {
    threshold_scan::run_example().unwrap();
}
