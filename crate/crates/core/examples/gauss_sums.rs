//! The order-d character sums behind a code's weights.
//!
//! `cargo run --example gauss_sums -- 2 8 5`

use cyclotome::characters::{character_order, gauss_sum, order_d_character_sums};
use cyclotome::cyclic_poly::irreducible_cyclic_code;

fn main() -> cyclotome::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let q = args.first().copied().unwrap_or(2);
    let k = args.get(1).copied().unwrap_or(8) as u32;
    let index = args.get(2).copied().unwrap_or(5);

    let spec = irreducible_cyclic_code(q, k, index)?;
    let d = character_order(&spec);
    println!(
        "GF({q}^{k}), N = {index}: character order d = {d}, sqrt(q^k) = {}",
        (spec.size() as f64).sqrt()
    );
    for (a, g) in order_d_character_sums(&spec)?.iter().enumerate() {
        println!(
            "a = {:>2}: |G| = {:.12}  gamma = {:+.12}",
            a + 1,
            g.magnitude,
            g.gamma
        );
    }

    let trivial = gauss_sum(0, spec.field.one(), &spec.field)?;
    println!("trivial character: {} + {}i", trivial.re, trivial.im);
    Ok(())
}
