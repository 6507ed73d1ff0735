// Reading and writing the ideal file format, and JSON reports.
//
// ```bash
// cargo run --example ideal_files
// ```

use cmreg::invariants::regularity_report;
use cmreg::io::{format_ideal, json_report, parse_ideal, read_ideal_file};

pub fn run_example() -> cmreg::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/twisted_cubic.ideal");
    let cubic = read_ideal_file(path.as_ref())?;
    print!("{}", format_ideal(&cubic));
    println!("{}", json_report("reg", &regularity_report(&cubic, None)?));

    let src = "# a conic in char 101\nchar 101\nvars x y z\norder deglex\ngen x^2 + 50*y*z\n";
    let conic = parse_ideal(src)?;
    assert_eq!(parse_ideal(&format_ideal(&conic))?, conic);
    println!("{conic} over F_{}", conic.ring().characteristic());

    match parse_ideal("vars x y\ngen x^2 + y\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
