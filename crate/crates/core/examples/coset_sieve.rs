//! Cyclotomic cosets by the marking sieve, checked against the count formula.
//!
//! `cargo run --example coset_sieve -- 358701 2`

use std::time::Instant;

use cyclotome::cosets::{coset_count_formula, cosets_full, CosetLeaders};

fn main() -> cyclotome::Result<()> {
    println!("3-cyclotomic cosets mod 16:");
    print!("{}", cosets_full(16, 3)?);

    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (modulus, p) = (
        args.first().copied().unwrap_or(358_701),
        args.get(1).copied().unwrap_or(2),
    );

    let start = Instant::now();
    let mut sieve = CosetLeaders::new(modulus, p)?;
    let mut count = 0u64;
    let mut largest = 0u64;
    for (_, size) in sieve.by_ref() {
        count += 1;
        largest = largest.max(size);
    }
    let elapsed = start.elapsed();
    let stats = sieve.stats();
    println!("N = {modulus}, p = {p}: {count} cosets, largest of size {largest}, {elapsed:?}");
    println!("reads = {}, marks = {}", stats.reads, stats.marks);
    println!("formula: {}", coset_count_formula(modulus, p)?);
    Ok(())
}
