use std::path::{Path, PathBuf};
use std::process::Command;

fn cdylib() -> Option<PathBuf> {
    // tests/ binary lives in target/<profile>/deps
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let so = dir.join("libjchm.so");
    so.exists().then_some(so)
}

#[test]
fn python_smoke_script() {
    let Some(so) = cdylib() else {
        eprintln!("skipping: libjchm.so not built");
        return;
    };
    if Command::new("python3").arg("--version").output().is_err() {
        eprintln!("skipping: python3 not found");
        return;
    }
    let tmp = std::env::temp_dir().join(format!("jchm-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    std::fs::copy(&so, tmp.join("jchm.so")).unwrap();
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../python/smoke.py");
    let out = Command::new("python3")
        .arg(&script)
        .env("PYTHONPATH", &tmp)
        .output()
        .unwrap();
    let _ = std::fs::remove_dir_all(&tmp);
    assert!(
        out.status.success(),
        "stdout:\n{}\nstderr:\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("jchm smoke ok"));
}
