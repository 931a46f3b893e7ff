//! Compiles and runs a small C program against the generated header and the
//! static library, proving the ABI end to end.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "lhring.h"

int main(void) {
    LhrRingParams ring = { .e0 = 0.0, .v0 = 1.0, .big_n = 8, .two_n = 4 };
    double e, v, gap;
    if (lhr_ring_constants(&ring, &e, &v) != LHR_STATUS_OK) return 1;
    if (lhr_level_gap(&ring, &gap) != LHR_STATUS_OK) return 2;
    if (fabs(e + 2.0) > 1e-12 || fabs(gap - 2.0 * v) > 1e-15) return 3;

    double entropies[3], lambdas[6];
    if (lhr_entropy_cascade(2, entropies, lambdas) != LHR_STATUS_OK) return 4;
    if (fabs(entropies[2] - 1.0) > 1e-12) return 5;

    LhrHamiltonian *h = NULL;
    if (lhr_hamiltonian_ring_new(&ring, 1, &h) != LHR_STATUS_OK) return 6;
    if (lhr_hamiltonian_dim(h) != 4) return 7;
    double eigenvalues[4];
    size_t written = 0;
    if (lhr_hamiltonian_eigenvalues(h, eigenvalues, 4, &written) != LHR_STATUS_OK) return 8;
    lhr_hamiltonian_free(h);
    if (written != 4) return 9;

    printf("%.12f\n", entropies[0]);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary> -> target/<profile>
    let exe = std::env::current_exe().expect("test binary path");
    exe.parent()
        .and_then(|deps| deps.parent())
        .expect("target profile directory")
        .to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let target = target_dir();
    let staticlib = target.join("liblhring_ffi.a");
    assert!(
        staticlib.exists(),
        "static library missing at {}",
        staticlib.display()
    );
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");

    let work = std::env::temp_dir().join(format!("lhring-c-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let source = work.join("smoke.c");
    let binary = work.join("smoke");
    std::fs::write(&source, C_PROGRAM).unwrap();

    let compile = Command::new("cc")
        .arg(&source)
        .arg(&staticlib)
        .arg("-I")
        .arg(&include)
        .arg("-lm")
        .arg("-lpthread")
        .arg("-ldl")
        .arg("-o")
        .arg(&binary)
        .output()
        .expect("cc is available");
    assert!(
        compile.status.success(),
        "compilation failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().expect("smoke binary runs");
    assert!(
        run.status.success(),
        "smoke binary exited with {:?}",
        run.status.code()
    );
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.starts_with("0.811278124459"), "stdout: {stdout}");
}
