//! Thin process wrapper: collects argv, environment, and the standard
//! streams, then delegates to the library `run` entry point.

use std::collections::BTreeMap;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let env: BTreeMap<String, String> = std::env::vars_os()
        .filter_map(|(k, v)| Some((k.into_string().ok()?, v.into_string().ok()?)))
        .collect();
    let mut stdin = std::io::stdin().lock();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let code = scaffold_cli::run(&argv, &mut stdin, &mut stdout, &mut stderr, &env);
    std::process::exit(code);
}
