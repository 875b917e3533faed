use std::path::Path;
use std::process::Command;

const PROGRAM: &str = r#"
#include "transvect.h"

int run(void) {
    TvModel *m = NULL;
    if (tv_model_new(TV_CASE_ELLIPTIC, 2, 1.0, 1, 0, &m) != TV_STATUS_OK) return 1;
    size_t reduced = 0, ambient = 0;
    tv_model_dims(m, &reduced, &ambient);
    TvReport *r = NULL;
    tv_verify_geometry(m, 10, 0, &r);
    int ok = tv_report_verdict(r) == TV_VERDICT_PASS && tv_report_json(r) != NULL;
    tv_report_free(r);
    tv_model_free(m);
    return ok ? 0 : (int)*tv_last_error();
}
"#;

fn compiles_with(compiler: &str, lang: &str) {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(include.join("transvect.h").exists(), "header not generated");
    let dir = std::env::temp_dir().join(format!("transvect-header-{lang}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.txt");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(compiler)
        .args(["-x", lang, "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status();
    std::fs::remove_dir_all(&dir).ok();
    match status {
        Ok(s) => assert!(s.success(), "{compiler} rejected the header"),
        Err(e) => panic!("{compiler} not runnable: {e}"),
    }
}

#[test]
fn header_compiles_as_c() {
    compiles_with("cc", "c");
}

#[test]
fn header_compiles_as_cxx() {
    compiles_with("c++", "c++");
}
