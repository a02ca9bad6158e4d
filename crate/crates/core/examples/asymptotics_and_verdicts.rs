//! Asymptotic profiles and independence verdicts for families of factorial ratios.
use lucascert::certifier::certify_factorial;
use lucascert::hyperdata::FactorialRatioSystem;
use lucascert::independence::{
    asymptotic_profile, independence_verdict, mcintosh_profile, ProfileSubject, SearchParams, VerdictEntry,
};
use lucascert::sequences::CoefficientStream;

fn entry(id: &str, e: &[u32], f: &[u32]) -> Result<VerdictEntry, Box<dyn std::error::Error>> {
    let sys = FactorialRatioSystem::univariate(e, f)?;
    Ok(VerdictEntry {
        id: id.into(),
        certificate: certify_factorial(&sys)?.certificate().cloned(),
        profile: Some(asymptotic_profile(ProfileSubject::Factorial(&sys))?),
        stream: CoefficientStream::factorial(&sys),
        factorial: Some(sys),
    })
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sys = FactorialRatioSystem::univariate(&[10], &[5, 3, 1, 1])?;
    let p = asymptotic_profile(ProfileSubject::Factorial(&sys))?;
    println!("(10;5,3,1,1): growth {:.4}, theta {}, in W: {}", p.growth.to_f64(), p.theta, p.in_w);
    let m = mcintosh_profile(0, &[2])?;
    println!("sum C(n,k)^2: lambda {:.6}, mu {:.6}, nu {:.6}", m.lambda, m.mu, m.nu);

    let families = [
        vec![entry("cb^2", &[2, 2], &[1; 4])?, entry("cb^3", &[2, 2, 2], &[1; 6])?, entry("cb^4", &[2, 2, 2, 2], &[1; 8])?],
        vec![entry("(4;2,1,1)", &[4], &[2, 1, 1])?, entry("cb^3", &[2, 2, 2], &[1; 6])?],
        vec![entry("cb", &[2], &[1, 1])?],
    ];
    for fam in &families {
        let ids: Vec<_> = fam.iter().map(|e| e.id.as_str()).collect();
        let v = independence_verdict(fam, SearchParams::default())?;
        println!("{ids:?}: {:?}", v.outcome);
        for pr in &v.premises {
            println!("  [{:?}] {}", pr.backing, pr.statement);
        }
    }
    Ok(())
}
