use qcluster::special::{default_sweep, QuadratureConfig};

#[test]
fn default_sweep_passes() {
    let rows = default_sweep(&QuadratureConfig::default()).unwrap();
    let failed: Vec<String> = rows.iter().filter(|r| !r.pass).map(|r| r.csv()).collect();
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}
