//! Compiles and runs a C client against the generated header and the static
//! library.

use std::path::PathBuf;
use std::process::Command;

const CLIENT: &str = r#"
#include <stdio.h>
#include <string.h>
#include "tdual.h"

int main(void) {
    TdualSpace *s = NULL;
    if (tdual_space_new("torus:n=3", &s) != TDUAL_STATUS_OK) return 1;
    int64_t c[] = {1, 0, 0}, t[] = {0, -2, 0}, b[] = {7};
    TdualPair *p = NULL, *d = NULL;
    if (tdual_pair_new(s, c, 3, t, 3, b, 1, &p) != TDUAL_STATUS_OK) return 2;
    if (tdual_pair_dualize(p, &d) != TDUAL_STATUS_OK) return 3;
    char *json = NULL;
    if (tdual_pair_json(d, &json) != TDUAL_STATUS_OK) return 4;
    printf("%s\n", json);
    tdual_string_free(json);
    TdualSpace *bad = NULL;
    if (tdual_space_new("s9", &bad) != TDUAL_STATUS_UNKNOWN_DESCRIPTOR) return 5;
    if (strstr(tdual_last_error(), "UnknownDescriptor") == NULL) return 6;
    tdual_pair_free(d);
    tdual_pair_free(p);
    tdual_space_free(s);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests/<binary> lives in <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf()
}

#[test]
fn c_client_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libtdual_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = std::env::temp_dir().join(format!("tdual-c-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("client.c");
    let exe = dir.join("client");
    std::fs::write(&src, CLIENT).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "client exit {:?}", out.status.code());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"base\":\"torus:n=3\",\"c\":[0,2,0],\"t\":[-1,0,0],\"b\":[7]}\n");
    std::fs::remove_dir_all(&dir).ok();
}
