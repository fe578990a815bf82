//! Evaluate every degree condition on a few sequences and print the reports.

use berge_hamilton::conditions::check;
use berge_hamilton::{DegreeSequence, Theorem};

fn main() -> berge_hamilton::Result<()> {
    let cases: [(&str, Vec<u64>, Option<usize>); 4] = [
        ("graph, 6 vertices", vec![2, 2, 3, 3, 4, 4], None),
        (
            "3-uniform, degrees of H2(9,3,4)",
            vec![6, 6, 6, 6, 6, 18, 18, 18, 18],
            Some(3),
        ),
        (
            "3-uniform, a gap sequence",
            vec![4, 4, 4, 6, 12, 12, 12, 12],
            Some(3),
        ),
        ("4-uniform, 10 vertices", vec![20; 10], Some(4)),
    ];
    for (label, values, r) in cases {
        let d = DegreeSequence::new(values)?;
        println!("== {label}: {d}");
        let theorems: &[Theorem] = match r {
            None => &[Theorem::Posa, Theorem::Chvatal],
            Some(_) => &[Theorem::RUniform, Theorem::Conjecture],
        };
        for &t in theorems {
            let report = check(t, &d, r, false)?;
            print!("{report}");
        }
    }
    Ok(())
}
