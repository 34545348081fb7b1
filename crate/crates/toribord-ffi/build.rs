fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(format!("{crate_dir}/include/toribord.h"));
        }
        Err(e) => {
            // Header generation failing should not break the build of the
            // library itself (e.g. during early type errors).
            println!("cargo:warning=cbindgen failed: {e}");
        }
    }
}
