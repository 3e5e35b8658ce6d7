//! Recovering a spectrum from Gauss-sum phases known only to within epsilon.
//!
//! `cargo run --example icq_pipeline -- 2 4 3`

use cyclotome::icq::{icq_membership, run_trials, IcqParams, PreparedPipeline};

fn main() -> cyclotome::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let q = args.first().copied().unwrap_or(2);
    let k = args.get(1).copied().unwrap_or(4) as u32;
    let index = args.get(2).copied().unwrap_or(3);

    let pipeline = PreparedPipeline::new(q, k, index)?;
    let bound = pipeline.epsilon_bound();
    println!("theta = {}, epsilon bound = {bound}", pipeline.theta());
    println!("noiseless spectrum: {:?}", pipeline.reference().counts);

    for factor in [0.5, 1.0, 2.0, 10.0] {
        let eps = factor * bound;
        let member = icq_membership(IcqParams::from_index(q, k, index, eps)).member;
        let summary = run_trials(&pipeline, eps, 0, 100);
        println!(
            "epsilon = {eps:.6} (member: {member:>5}): {}/100 exact",
            summary.exact
        );
    }

    let report = pipeline.run(bound, 42)?;
    println!("seed 42: injected errors {:?}", report.injected_errors);
    Ok(())
}
