use loewy_kl::alcove::box_representatives;
use loewy_kl::loewy::{dimension_check, layer_table, SimpleDimensions};
use loewy_kl::oracle::{self, Algebra, Oracle};
use loewy_kl::periodic::Periodic;
use loewy_kl::{RootDatum, Weight};

fn subsets(rank: usize) -> Vec<Vec<usize>> {
    (0..1usize << rank).map(|m| (0..rank).filter(|i| m >> i & 1 == 1).collect()).collect()
}

#[test]
fn a1_formula_equals_oracle() {
    let d = RootDatum::build("A1").unwrap();
    let mut per = Periodic::new(&d);
    for p in [5, 7] {
        for lambda in (-2 * p as i64..2 * p as i64).map(|x| Weight(vec![x])) {
            if !loewy_kl::alcove::is_regular(&d, &lambda, p) {
                continue;
            }
            for sub in subsets(1) {
                let f = layer_table(&mut per, &sub, &lambda, p).unwrap();
                let o = oracle::loewy_table(&d, &sub, &lambda, p).unwrap();
                assert_eq!(f, o, "p={p} λ={lambda} I={sub:?}");
            }
        }
    }
}

#[test]
fn a2_formula_equals_oracle() {
    let d = RootDatum::build("A2").unwrap();
    let p = 5;
    let mut per = Periodic::new(&d);
    let mut lambdas = box_representatives(&d, p);
    lambdas.extend([Weight(vec![1, 0]), Weight(vec![3, 1]), Weight(vec![-2, 6])]);
    for lambda in &lambdas {
        for sub in subsets(2) {
            let f = layer_table(&mut per, &sub, lambda, p).unwrap();
            let o = oracle::loewy_table(&d, &sub, lambda, p).unwrap();
            assert_eq!(f, o, "λ={lambda} I={sub:?}\n{}\n{}", f.to_text(), o.to_text());
            dimension_check(&d, &f).unwrap();
        }
    }
}

#[test]
fn simple_dimensions_match_oracle() {
    for (label, p) in [("A1", 5u64), ("A1", 7), ("A2", 5)] {
        let d = RootDatum::build(label).unwrap();
        let mut dims = SimpleDimensions::new(&d, p);
        let mut o = Oracle::new(Algebra::for_datum(&d).unwrap(), p as u32);
        let mut mu = vec![0i64; d.rank];
        loop {
            let w = Weight(mu.clone());
            if loewy_kl::alcove::is_regular(&d, &w, p) {
                let expect = o.simple_head(&w).unwrap().dim() as u128;
                assert_eq!(dims.dim(&w).unwrap(), expect, "{label} p={p} μ={w}");
            }
            let mut i = 0;
            while i < d.rank && mu[i] + 1 == p as i64 {
                mu[i] = 0;
                i += 1;
            }
            if i == d.rank {
                break;
            }
            mu[i] += 1;
        }
    }
}
