use rsane::fields::EigenField;
use rsane::manifolds::Sphere;
use rsane::{solve, IterationRecord, SolverConfig};
use rsane_bench::generate::{eig_start, random_spd};
use rsane_bench::trace::{read_trace, write_trace, COLUMNS};

fn sample_trace() -> Vec<IterationRecord> {
    let eig = EigenField::dense(random_spd(30, 1).unwrap()).unwrap();
    let rep = solve(
        &eig,
        &Sphere::new(30),
        &eig_start(30),
        &SolverConfig::default(),
    )
    .unwrap();
    rep.trace
}

#[test]
fn trace_round_trips_exactly() {
    let trace = sample_trace();
    let mut buf = Vec::new();
    write_trace(&trace, &mut buf).unwrap();
    assert_eq!(read_trace(buf.as_slice()).unwrap(), trace);
}

#[test]
fn awkward_values_round_trip() {
    let rows = vec![
        IterationRecord {
            k: 0,
            residual_norm: 1.0 / 3.0,
            merit: f64::MIN_POSITIVE,
            c: 5e-324,
            q: 1.0,
            nfe: 1,
            feasibility_gap: 0.0,
            sigma: Some(-0.0),
            tau_start: Some(1e10),
            tau: Some(1e-10),
            backtracks: Some(60),
            rel_x: Some(f64::MAX),
            rel_f: Some(2.0f64.sqrt()),
            y_gap: None,
            fallback: true,
        },
        IterationRecord::default(),
    ];
    let mut buf = Vec::new();
    write_trace(&rows, &mut buf).unwrap();
    let back = read_trace(buf.as_slice()).unwrap();
    assert_eq!(back, rows);
    assert!(back[0].sigma.unwrap().is_sign_negative());
}

#[test]
fn header_and_empty_cells() {
    let trace = sample_trace();
    let mut buf = Vec::new();
    write_trace(&trace, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), COLUMNS.join(","));
    let last = text.lines().last().unwrap();
    // the final row has no step
    assert!(last.ends_with(",,,,,,,,0"), "{last}");
    // at least 15 significant digits
    let second = text.lines().nth(1).unwrap();
    let mantissa = second.split(',').nth(1).unwrap().split('e').next().unwrap();
    assert!(mantissa.chars().filter(char::is_ascii_digit).count() >= 15);
}

#[test]
fn malformed_traces_are_rejected() {
    assert!(read_trace("a,b\n1,2\n".as_bytes()).is_err());
    let mut buf = Vec::new();
    write_trace(&[IterationRecord::default()], &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap().replace(",0\n", ",2\n");
    assert!(read_trace(text.as_bytes()).is_err());
}
