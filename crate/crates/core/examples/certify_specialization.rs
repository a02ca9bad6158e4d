//! Univariate specializations of a bivariate factorial ratio: the Apery numbers and an exotic sequence.
use lucascert::certifier::{certify_specialization, SubgroupSet};
use lucascert::hyperdata::validate_factorial_system;
use lucascert::rational::format_rational;
use lucascert::sequences::CoefficientStream;
use lucascert::int;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // (2n1+n2)! (n1+n2)! / (n1!^3 n2!^2)
    let apery = validate_factorial_system(
        vec![vec![2, 1], vec![1, 1]],
        vec![vec![1, 0], vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
        2,
    )?
    .to_hyper();
    // (3n1+2n2)! / ((n1+n2)! n1!^2 n2!)
    let exotic =
        validate_factorial_system(vec![vec![3, 2]], vec![vec![1, 1], vec![1, 0], vec![1, 0], vec![0, 1]], 2)?.to_hyper();

    for (name, sys, w, b) in [("apery", &apery, [1, 1], [int(1), int(1)]), ("exotic", &exotic, [3, 2], [int(2), int(3)])] {
        let c = certify_specialization(sys, &SubgroupSet::trivial(1), &w, &b)?;
        let s = CoefficientStream::hypergeometric(sys).specialize(&w, &b)?;
        let prefix: Vec<_> = s.prefix(10)?.iter().map(format_rational).collect();
        println!("{name}: {}", c.claim());
        println!("  {}", prefix.join(", "));
    }
    Ok(())
}
