//! Replay a builtin script or a script file without aborting on flags.
//!
//!     cargo run -p mutation-ledger --example replay -- C2
//!     cargo run -p mutation-ledger --example replay -- path/to/file.mut

use mutation_ledger::{builtin_script, parse_script, run_script, Options};

fn main() {
    let arg = std::env::args().nth(1).expect("roof label or script path");
    let script = match std::fs::read_to_string(&arg) {
        Ok(text) => parse_script(&text),
        Err(_) => builtin_script(&arg),
    }
    .unwrap_or_else(|e| panic!("{e}"));
    let (cert, err) = match run_script(&script, &Options::lenient()) {
        Ok(c) => (c, None),
        Err(f) => (f.certificate, Some(f.error)),
    };
    for (k, s) in cert.target_derivation.iter().chain(&cert.steps).enumerate() {
        let ext = s.ext.as_ref().map(|e| e.ext.to_string()).unwrap_or_default();
        let dagger = s.dagger.as_ref().map(|d| if d.holds { " †" } else { " †FAILS" }).unwrap_or("");
        println!("{:3} {:<26} {:<14}{dagger} {}", k + 1, s.step, ext, s.outcome);
        for f in &s.flags {
            println!("      ! {f}");
        }
        println!("      {}", s.state.join(" "));
    }
    println!("final: {}", cert.final_state.join(" "));
    println!("target: {}", cert.target.join(" "));
    if let Some(c) = &cert.comparison {
        for m in &c.mismatches {
            println!("mismatch {m}");
        }
    }
    for o in &cert.open_checks {
        println!("open {o}");
    }
    for f in &cert.flags {
        println!("flag {f}");
    }
    if let Some(e) = err {
        println!("error: {e}");
    }
    println!("verified: {}", cert.verified);
}
