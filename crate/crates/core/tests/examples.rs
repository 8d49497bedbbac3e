#[allow(dead_code)]
#[path = "../examples/double_oversampling.rs"]
mod double_oversampling;
#[allow(dead_code)]
#[path = "../examples/equivalence_transport.rs"]
mod equivalence_transport;
#[allow(dead_code)]
#[path = "../examples/frame_verdicts.rs"]
mod frame_verdicts;
#[allow(dead_code)]
#[path = "../examples/frft_eigen.rs"]
mod frft_eigen;
#[allow(dead_code)]
#[path = "../examples/hermite_theta.rs"]
mod hermite_theta;
#[allow(dead_code)]
#[path = "../examples/intertwining.rs"]
mod intertwining;
#[allow(dead_code)]
#[path = "../examples/lattice_cosets.rs"]
mod lattice_cosets;
#[allow(dead_code)]
#[path = "../examples/zak_surface_csv.rs"]
mod zak_surface_csv;
#[allow(dead_code)]
#[path = "../examples/zak_zeros.rs"]
mod zak_zeros;

#[test]
fn hermite_theta_runs() {
    hermite_theta::run_example().unwrap();
}

#[test]
fn frft_eigen_runs() {
    frft_eigen::run_example().unwrap();
}

#[test]
fn intertwining_runs() {
    intertwining::run_example().unwrap();
}

#[test]
fn lattice_cosets_runs() {
    lattice_cosets::run_example().unwrap();
}

#[test]
fn zak_zeros_runs() {
    zak_zeros::run_example().unwrap();
}

#[test]
fn zak_surface_csv_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    zak_surface_csv::write_surfaces(dir.path()).unwrap();
    for name in ["zak_h2", "zak_h2_dilated"] {
        let csv = std::fs::read_to_string(dir.path().join(format!("{name}.csv"))).unwrap();
        assert_eq!(csv.lines().count(), 64 * 64 + 1);
        assert!(dir.path().join(format!("{name}.json")).exists());
    }
}

#[test]
fn frame_verdicts_runs() {
    frame_verdicts::run_example().unwrap();
}

#[test]
fn double_oversampling_runs() {
    double_oversampling::run_example().unwrap();
}

#[test]
fn equivalence_transport_runs() {
    equivalence_transport::run_example().unwrap();
}
