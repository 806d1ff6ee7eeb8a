use bvgc_core::graded_poly::GradedPoly;
use bvgc_core::kontsevich_map::*;
use bvgc_core::rng::SplitMix64;
use bvgc_core::sampling;
use num_traits::Zero;

fn block_poly(rng: &mut SplitMix64, data: &SymplecticData, vars: &[usize], max_exp: u32) -> GradedPoly {
    let gens: Vec<_> = vars.iter().map(|&i| data.x(i)).collect();
    loop {
        let p = sampling::random_poly(rng, &gens, 2, max_exp);
        let mut filtered = GradedPoly::zero();
        for (m, c) in p.terms() {
            if m.total_exponent() >= 2 {
                filtered = &filtered + &GradedPoly::monomial(c.clone(), m.factors());
            }
        }
        if !filtered.is_zero() { return filtered; }
    }
}

fn main() {
    // smallest interesting: l = 3 on R^2 with hand generators
    let data = SymplecticData::standard(1);
    let f1 = GradedPoly::monomial(bvgc_core::rational::q(1), &[(data.x(1), 3)]);
    let f2 = GradedPoly::monomial(bvgc_core::rational::q(1), &[(data.x(2), 2)]);
    let f3 = GradedPoly::monomial(bvgc_core::rational::q(1), &[(data.x(1), 1), (data.x(2), 2)]);
    let chain = CEChain::new(data.clone(), vec![f1, f2, f3]).unwrap();
    let check = homomorphism_check(&chain).unwrap();
    println!("hand l=3: equal={}", check.equal);
    println!("  lhs = {}", check.lhs);
    println!("  rhs = {}", check.rhs);
    if !check.equal {
        println!("  lhs+rhs = {}", &check.lhs + &check.rhs);
        println!("  lhs-rhs = {}", &check.lhs - &check.rhs);
    }

    // and an l=2 with odd-edge counts
    let g1 = GradedPoly::monomial(bvgc_core::rational::q(1), &[(data.x(1), 3)]);
    let g2 = GradedPoly::monomial(bvgc_core::rational::q(1), &[(data.x(2), 3)]);
    let chain2 = CEChain::new(data.clone(), vec![g1, g2]).unwrap();
    let check2 = homomorphism_check(&chain2).unwrap();
    println!("hand l=2: equal={} lhs={} rhs={}", check2.equal, check2.lhs, check2.rhs);

    let mut rng = SplitMix64::new(20260810);
    for case in 0..22 {
        let n = 1 + (case % 3);
        let l = 2 + (case % 3);
        let data = SymplecticData::standard(n);
        let gens: Vec<GradedPoly> = if case % 2 == 0 {
            (0..l).map(|k| {
                let vars: Vec<usize> = if k % 2 == 0 { (1..=n).collect() } else { (n + 1..=2 * n).collect() };
                block_poly(&mut rng, &data, &vars, 3 + (k as u32 % 2))
            }).collect()
        } else {
            continue;
        };
        let chain = CEChain::new(data, gens.clone()).unwrap();
        let check = homomorphism_check(&chain).unwrap();
        if !check.equal {
            println!("case {case} n={n} l={l} FAIL");
            for g in &gens { println!("  gen: {g}"); }
            println!("  lhs = {}", check.lhs);
            println!("  rhs = {}", check.rhs);
            println!("  lhs+rhs = {}", &check.lhs + &check.rhs);
            break;
        }
    }
}
