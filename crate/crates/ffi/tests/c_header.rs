//! Compiles the bundled C example against the generated header and the
//! static library. Skipped when no C compiler is available.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_example_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/c_header-* -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libduopoly_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let out_dir = tempfile::tempdir().unwrap();
    let bin = out_dir.path().join("figure3");
    let status = Command::new(&cc)
        .arg(manifest.join("examples/figure3.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status();
    let Ok(status) = status else {
        eprintln!("skipping: no C compiler ({cc})");
        return;
    };
    assert!(status.success(), "C example failed to compile");
    let game = manifest.join("../core/data/figure3.game");
    let out = Command::new(&bin).arg(&game).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "cournot 1 1 1");
    assert_eq!(lines[1], "hotelling 1 1 0.5");
    assert!(
        lines[2].starts_with("split status 4: split is not interior"),
        "{}",
        lines[2]
    );
    assert_eq!(lines[3], "nash 1 (0,0) pd 1 100 100");
}
