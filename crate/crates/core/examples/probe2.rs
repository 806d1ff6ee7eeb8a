use bvgc_core::graded_poly::{Generator, GradedPoly};
use bvgc_core::graph_complex;
use bvgc_core::kontsevich_map::*;
use bvgc_core::rational::q;
use bvgc_core::wick_engine::ambient_even;
use num_traits::Zero;

fn main() {
    let n2 = 2usize;
    let copies = 2usize;
    let data = SymplecticData::standard(1);
    let xi = |i: usize, mu: usize| Generator::new(format!("z{i:02}_{mu:02}"), -1);
    let xv = |i: usize, mu: usize| Generator::new(format!("y{i:02}_{mu:02}"), 0);
    let place = |f: &GradedPoly, i: usize| -> GradedPoly {
        let mut bind = std::collections::BTreeMap::new();
        for mu in 1..=n2 { bind.insert(ambient_even(mu), GradedPoly::var(&xv(i, mu))); }
        f.substitute(&bind).unwrap()
    };
    let observable = |f: &GradedPoly| -> GradedPoly {
        let mut out = GradedPoly::zero();
        for i in 1..=copies {
            out = &out + &(&GradedPoly::var(&graph_complex::vertex_var(i)) * &place(f, i));
            for mu in 1..=n2 {
                let df = place(&f.derive(&ambient_even(mu)), i);
                out = &out + &(&GradedPoly::var(&xi(i, mu)) * &df);
            }
        }
        out
    };
    let laplace = |p: &GradedPoly| -> GradedPoly {
        let mut out = GradedPoly::zero();
        for i in 1..=copies {
            for mu in 1..=n2 { for nu in 1..=n2 {
                let w = &data.pairing()[mu - 1][nu - 1];
                if w.is_zero() { continue; }
                out = &out + &p.derive(&xv(i, nu)).derive(&xi(i, mu)).scale(w);
            }}
        }
        out
    };
    let bracket = |a: &GradedPoly, b: &GradedPoly| -> GradedPoly {
        let mut out = GradedPoly::zero();
        let (ae, ao) = a.parity_split();
        for (pa, part) in [(0u64, ae), (1u64, ao)] {
            if part.is_zero() { continue; }
            let sgn = bvgc_core::rational::sign(pa);
            for i in 1..=copies {
                for mu in 1..=n2 { for nu in 1..=n2 {
                    let w = &data.pairing()[mu - 1][nu - 1];
                    if w.is_zero() { continue; }
                    let t1 = &part.derive(&xv(i, mu)) * &b.derive(&xi(i, nu));
                    let t2 = (&part.derive(&xi(i, nu)) * &b.derive(&xv(i, mu))).scale(&sgn);
                    out = &out + &(&t1 + &t2).scale(w);
                }}
            }
        }
        out
    };
    let f = GradedPoly::monomial(q(1), &[(ambient_even(1), 2), (ambient_even(2), 1)]);
    let g = GradedPoly::monomial(q(2), &[(ambient_even(1), 1), (ambient_even(2), 2)]);
    let of = observable(&f);
    let og = observable(&g);
    println!("laplace(of) = {}", laplace(&of));
    let prod = &of * &og;
    let dl = laplace(&prod);
    let br = bracket(&of, &og);
    println!("Delta(of og) + bracket = {}", &dl + &br);
    println!("Delta(of og) - bracket = {}", &dl - &br);
}
