// Complexities of the eight benchmark presets next to the published table.
//
// Run with `cargo run --example complexity_table`.

use robust_bai::harness::{table1, Table1Options};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let mut lines = Vec::new();
    for (title, opts) in [
        ("exact gaps", Table1Options::default()),
        ("setup C gaps rounded to 3 decimals", Table1Options::rounded_gaps()),
    ] {
        lines.push(format!("# {title}"));
        lines.push(format!("{:<6}{:>10}{:>10}{:>10}   published", "setup", "H_SR", "H_BOB", "H_UNIF"));
        for row in table1(opts) {
            let [a, b, c] = row.computed;
            let [pa, pb, pc] = row.published;
            let mark = if row.all_match() { "" } else { "  <- differs" };
            lines.push(format!("{:<6}{a:>10}{b:>10}{c:>10}   {pa}/{pb}/{pc}{mark}", row.setup));
        }
    }
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
