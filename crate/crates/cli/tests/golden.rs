use std::path::PathBuf;

use qext_cli::{run_command, verify_all_view};
use serde_json::Value;

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/verify_all.json")
}

#[test]
fn verify_all_matches_golden() {
    let r = run_command(&["--output".into(), "json".into(), "verify-all".into()]);
    assert_eq!(r.exit_code, 0);
    let view = verify_all_view(&r.payload);
    let path = golden_path();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(&view).unwrap() + "\n").unwrap();
    }
    let pinned: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(view, pinned);
}
