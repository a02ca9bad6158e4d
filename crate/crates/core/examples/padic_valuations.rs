//! p-adic valuations of factorials, Pochhammer symbols and hypergeometric coefficients.
use lucascert::hyperdata::HyperSystem;
use lucascert::padic::{dwork_closed_form, vp_factorial, vp_pochhammer, vp_quv};
use lucascert::rational::{format_rational, vp_rational};
use lucascert::sequences::q_uv;
use lucascert::{int, rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("v_5(1000!) = {}", vp_factorial(1000, 5)?);
    println!("v_5((2/3)_2) = {}", vp_pochhammer(&rat(2, 3), 2, 5)?);
    println!("Dwork prime of 1/3 at p=5, l=2: {}", format_rational(&dwork_closed_form(&rat(1, 3), 5, 2)?));

    let s = HyperSystem::univariate(&[rat(1, 2), rat(1, 3)], &[rat(3, 4), int(1)])?;
    for p in [5, 7] {
        let row: Vec<String> = (0..16u64)
            .map(|n| {
                let v = vp_quv(&s, &[n], p).unwrap();
                assert_eq!(v, vp_rational(&q_uv(&s, &[n]), p));
                v.to_string()
            })
            .collect();
        println!("v_{p}(q(n)), n < 16: {}", row.join(" "));
    }
    Ok(())
}
