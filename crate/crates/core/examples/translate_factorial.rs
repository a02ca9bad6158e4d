//! Factorial ratio (10n)! / ((5n)! (3n)! n! n!) as hypergeometric parameters.
use lucascert::hyperdata::{factorial_to_hypergeometric, FactorialRatioSystem};
use lucascert::rational::format_rational;
use lucascert::sequences::CoefficientStream;

fn show(v: &[lucascert::Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = FactorialRatioSystem::univariate(&[10], &[5, 3, 1, 1])?;
    let t = factorial_to_hypergeometric(&sys)?;
    println!("alpha = [{}]", show(&t.alpha));
    println!("beta  = [{}]", show(&t.beta));
    println!("C     = {}", format_rational(&t.c));
    println!("first coefficients: [{}]", show(&CoefficientStream::factorial(&sys).prefix(5)?));
    Ok(())
}
