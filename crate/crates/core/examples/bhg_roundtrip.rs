//! Write a hypergraph in the text format, parse it back, and show how a
//! malformed file is reported.

use berge_hamilton::constructions::{generate, Family};
use berge_hamilton::io::{parse_bhg, write_bhg};

fn main() -> berge_hamilton::Result<()> {
    let (h, _) = generate(Family::H3, 8, 3, None)?;
    let text = write_bhg(&h);
    print!("{text}");
    assert_eq!(parse_bhg(&text)?, h);

    let broken = "5 2\n0 1 2\n3 1\n";
    match parse_bhg(broken) {
        Err(e) => println!("malformed input: {e}"),
        Ok(_) => unreachable!("edges must be ascending"),
    }
    Ok(())
}
