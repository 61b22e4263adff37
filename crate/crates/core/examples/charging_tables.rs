//! Recomputes the per-triplet charging tables and prints the ratio table.

use btt::pivot::verify_charging_tables;

fn main() -> btt::Result<()> {
    let report = verify_charging_tables()?;
    print!("{:>6}", "");
    for c in &report.columns {
        print!("{c:>8}");
    }
    println!();
    for (row, cells) in report.rows.iter().zip(&report.ratio_table) {
        print!("{row:>6}");
        for cell in cells {
            print!("{:>8}", cell.as_deref().unwrap_or("-"));
        }
        println!();
    }
    println!("{}/{} cells match, max ratio {}", report.matched_cells, report.defined_cells, report.max_ratio);
    Ok(())
}
