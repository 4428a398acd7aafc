//! Compile and run a small C program against the generated header and the
//! shared library. Skipped when no C compiler is on PATH.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "mzvlab.h"

int main(void) {
    char *d = NULL;
    if (mzv_dual("1,1,2,1", &d) != MZV_STATUS_OK || strcmp(d, "3,2") != 0) return 1;
    mzv_string_free(d);

    MzvValue *v = NULL;
    if (mzv_eval("mzv", "3", NULL, NULL, NULL, NULL, NULL, 128, &v) != MZV_STATUS_OK) return 2;
    printf("%s\n", mzv_value_string(v));
    mzv_value_free(v);

    if (mzv_eval("mzv", "1", NULL, NULL, NULL, NULL, NULL, 128, &v) == MZV_STATUS_OK) return 3;
    if (strlen(mzv_last_error()) == 0) return 4;
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let libdir = exe.parent().unwrap().parent().unwrap().to_path_buf();
    if !libdir.join("libmzvlab_ffi.so").exists() {
        eprintln!("shared library not found in {}; skipping", libdir.display());
        return;
    }
    let tmp = std::env::temp_dir().join(format!("mzvlab-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("smoke.c");
    let bin = tmp.join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let st = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(&libdir)
        .arg(format!("-Wl,-rpath,{}", libdir.display()))
        .arg("-lmzvlab_ffi")
        .arg("-o")
        .arg(&bin)
        .status()
        .unwrap();
    assert!(st.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("1.20205690315959428539"), "{text}");
    let _ = std::fs::remove_dir_all(&tmp);
}
