//! Maximal subgroup search and one- and two-level certificates for hypergeometric series.
use lucascert::certifier::{certify_hypergeometric, maximal_subgroup, SubgroupSet};
use lucascert::hyperdata::HyperSystem;
use lucascert::rational::format_rational;
use lucascert::{int, rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = HyperSystem::univariate(&[rat(1, 2), rat(1, 2)], &[rat(2, 3), int(1)])?;
    let search = maximal_subgroup(&s)?;
    println!("(1/2,1/2; 2/3,1): A = {:?}", search.subgroup.elements);
    for e in &search.minima {
        let w: Vec<_> = e.witness.iter().map(format_rational).collect();
        println!("  a = {}: min xi = {} at {:?}", e.a, e.minimum, w);
    }

    let s = HyperSystem::univariate(&[rat(1, 5), rat(1, 5)], &[rat(2, 7), int(1)])?;
    for a in [&[1u64][..], &[1, 6]] {
        let c = certify_hypergeometric(&s, &SubgroupSet::new(35, a))?;
        println!("(1/5,1/5; 2/7,1), A = {a:?}: {}", c.claim());
    }
    Ok(())
}
