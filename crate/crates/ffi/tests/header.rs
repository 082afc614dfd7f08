//! Compiles and runs a small C program against the generated header and
//! the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "symbreak.h"

int main(void) {
    SymbreakGraph *g = NULL;
    if (symbreak_graph_new("biinfinite_path", &g) != SYMBREAK_STATUS_OK) return 10;
    size_t n = 0;
    if (symbreak_ball_size(g, "0", 5, &n) != SYMBREAK_STATUS_OK || n != 11) return 11;
    SymbreakColoring *c = NULL;
    if (symbreak_color(g, NULL, "strategy=dsc radius=80 r_pairs=3", &c) != SYMBREAK_STATUS_OK) return 12;
    bool pass = false;
    if (symbreak_verify(c, 80, 2, &pass, NULL) != SYMBREAK_STATUS_OK || !pass) return 13;
    char *json = NULL;
    if (symbreak_coloring_to_json(c, &json) != SYMBREAK_STATUS_OK) return 14;
    if (strstr(json, "\"strategy\": \"dsc\"") == NULL) return 15;
    symbreak_string_free(json);
    if (symbreak_ball_size(g, "x", 1, &n) != SYMBREAK_STATUS_IDENTIFIER) return 16;
    if (symbreak_last_error() == NULL) return 17;
    symbreak_coloring_free(c);
    symbreak_graph_free(g);
    puts("ok");
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = ["cc", "gcc", "clang"].into_iter().find(|c| Command::new(c).arg("--version").output().is_ok())
    else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let lib = target_dir().join("libsymbreak_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile_dir();
    let src = dir.join("main.c");
    let bin = dir.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

fn tempfile_dir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("symbreak-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
