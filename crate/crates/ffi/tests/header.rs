use std::path::Path;
use std::process::Command;

#[test]
fn generated_header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/simplext.h");
    assert!(header.exists(), "build script writes the header");
    let probe = tempfile_path();
    std::fs::write(
        &probe,
        "#include \"simplext.h\"\nint main(void) { SxStructure *s = 0; size_t n; return sx_structure_size(s, &n) == SX_STATUS_NULL_POINTER ? 0 : 1; }\n",
    )
    .unwrap();
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&probe)
        .status()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    std::fs::remove_file(&probe).ok();
    assert!(status.success());
}

fn tempfile_path() -> std::path::PathBuf {
    std::env::temp_dir().join(format!("simplext-header-{}.c", std::process::id()))
}
