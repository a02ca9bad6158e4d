//! Certificates for factorial ratios, and the Landau witness when the criterion fails.
use lucascert::certifier::{certify_factorial, FactorialVerdict};
use lucascert::hyperdata::FactorialRatioSystem;
use lucascert::rational::format_rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let systems: [(&[u32], &[u32]); 4] = [(&[2], &[1, 1]), (&[10], &[5, 3, 1, 1]), (&[4], &[2, 2]), (&[3, 1], &[2, 2])];
    for (e, f) in systems {
        let sys = FactorialRatioSystem::univariate(e, f)?;
        match certify_factorial(&sys)? {
            FactorialVerdict::Certified { certificate } => println!("{e:?}/{f:?}: {}", certificate.claim()),
            FactorialVerdict::NoCertificate { failure } => {
                let w: Vec<_> = failure.witness.iter().map(format_rational).collect();
                println!(
                    "{e:?}/{f:?}: no certificate, minimum {} at {w:?}, Landau integral: {}",
                    failure.minimum, failure.landau_integral
                );
            }
        }
    }
    Ok(())
}
