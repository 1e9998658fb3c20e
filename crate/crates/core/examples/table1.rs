//! Prints the computed flags next to the reference table.
use galois_span::theorems::check_table1;

fn main() {
    for c in check_table1() {
        let computed = c
            .computed
            .map(|r| format!("irr={} exc={}", r.irreducibly_represented, r.exceptional))
            .unwrap_or_else(|| "-".into());
        println!(
            "{:>2} {:<10} table irr={} exc={} | computed {} | {:?}",
            c.entry.order, c.entry.name, c.entry.irreducibly_represented, c.entry.exceptional, computed, c.status
        );
    }
}
