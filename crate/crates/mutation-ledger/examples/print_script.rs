//! Print a builtin script in the DSL: `print_script AM3`.

fn main() {
    let label = std::env::args().nth(1).expect("usage: print_script <roof>");
    match mutation_ledger::builtin_script(&label) {
        Ok(s) => print!("{}", mutation_ledger::print_script(&s)),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    }
}
