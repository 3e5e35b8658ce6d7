//! Weight spectrum by the coset formula, compared with full enumeration.
//!
//! `cargo run --example weight_spectrum -- 3 6 7`

use cyclotome::characters::order_d_character_sums;
use cyclotome::cosets::coset_leaders;
use cyclotome::cyclic_poly::irreducible_cyclic_code;
use cyclotome::weights::{coset_weights, weight_spectrum_bruteforce, weight_spectrum_mceliece};

fn main() -> cyclotome::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let q = args.first().copied().unwrap_or(3);
    let k = args.get(1).copied().unwrap_or(6) as u32;
    let index = args.get(2).copied().unwrap_or(7);

    let spec = irreducible_cyclic_code(q, k, index)?;
    let gauss = order_d_character_sums(&spec)?;
    let cosets = coset_leaders(index, q)?;
    println!(
        "[{}, {k}] code over GF({q}), {} cosets of Z_{index}",
        spec.n,
        cosets.len()
    );
    for c in coset_weights(&spec, &gauss, &cosets)? {
        println!(
            "  leader {:>3} (size {:>2}) -> weight {}",
            c.leader, c.size, c.weight
        );
    }

    let formula = weight_spectrum_mceliece(&spec)?;
    for (w, a) in &formula.counts {
        println!("A_{w} = {a}");
    }
    match weight_spectrum_bruteforce(&spec) {
        Ok(brute) => println!("enumeration agrees: {}", brute == formula),
        Err(e) => println!("enumeration skipped: {e}"),
    }
    Ok(())
}
