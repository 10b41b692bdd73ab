use loewy_kl::alcove::{alcove_of, box_representatives, orbit_weight, signed_distance};
use loewy_kl::loewy::{
    dimension_check, head_socle_check, head_weight, head_weight_second_form, layer_table, loewy_length, parity_check,
    verify_placements,
};
use loewy_kl::periodic::Periodic;
use loewy_kl::{RootDatum, Weight};

fn subsets(rank: usize) -> Vec<Vec<usize>> {
    (0..1usize << rank).map(|m| (0..rank).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn sweep(label: &str, p: u64) {
    let d = RootDatum::build(label).unwrap();
    let mut per = Periodic::new(&d);
    for lambda in box_representatives(&d, p) {
        for sub in subsets(d.rank) {
            let t = layer_table(&mut per, &sub, &lambda, p).unwrap();
            let ctx = format!("{label} p={p} λ={lambda} I={sub:?}");
            loewy_length(&d, &t).unwrap_or_else(|e| panic!("{ctx}: {e}"));
            let head = head_socle_check(&d, &t).unwrap_or_else(|e| panic!("{ctx}: {e}"));
            assert_eq!(head, head_weight(&d, &lambda, p, &sub).unwrap(), "{ctx}");
            assert_eq!(head, head_weight_second_form(&d, &lambda, p, &sub).unwrap(), "{ctx}");
            parity_check(&d, &t).unwrap_or_else(|e| panic!("{ctx}: {e}"));
            verify_placements(&d, &t).unwrap_or_else(|e| panic!("{ctx}: {e}"));
            dimension_check(&d, &t).unwrap_or_else(|e| panic!("{ctx}: {e}"));
        }
    }
}

#[test]
fn a1_sweep() {
    sweep("A1", 5);
    sweep("A1", 7);
}

#[test]
fn a2_sweep() {
    sweep("A2", 5);
}

#[test]
fn b2_sweep() {
    sweep("B2", 7);
}

#[test]
fn a1xa1_sweep() {
    sweep("A1xA1", 5);
}

#[test]
fn alcove_view_is_p_independent() {
    let d = RootDatum::build("A2").unwrap();
    let zero = Weight(vec![0, 0]);
    let mut per = Periodic::new(&d);
    for lambda5 in box_representatives(&d, 5) {
        let a = alcove_of(&d, &lambda5, 5).unwrap();
        let lambda7 = orbit_weight(&d, &zero, 7, &a).unwrap();
        let l5 = orbit_weight(&d, &zero, 5, &a).unwrap();
        for sub in [vec![0], vec![1]] {
            let t5 = layer_table(&mut per, &sub, &l5, 5).unwrap();
            let t7 = layer_table(&mut per, &sub, &lambda7, 7).unwrap();
            assert_eq!(t5.alcove_view(&d).unwrap(), t7.alcove_view(&d).unwrap(), "alcove {a:?} I={sub:?}");
        }
    }
}

/// Multiplier 6364136223846793005 is Knuth's MMIX LCG.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self, n: u64) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 33) % n
    }
}

#[test]
fn full_subset_gives_one_layer() {
    let mut rng = Lcg(17);
    let labels = ["A1", "A2", "B2", "A1xA1"];
    let mut done = 0;
    while done < 20 {
        let d = RootDatum::build(labels[rng.next(4) as usize]).unwrap();
        let p = [5u64, 7, 11][rng.next(3) as usize];
        let lambda = Weight((0..d.rank).map(|_| rng.next(4 * p) as i64 - 2 * p as i64).collect());
        if !loewy_kl::alcove::is_regular(&d, &lambda, p) {
            continue;
        }
        let all: Vec<usize> = (0..d.rank).collect();
        let mut per = Periodic::new(&d);
        let t = layer_table(&mut per, &all, &lambda, p).unwrap();
        assert_eq!(t.entries(), vec![(0, lambda.clone(), 1)], "{} p={p} λ={lambda}", d.label);
        done += 1;
    }
}

#[test]
fn empty_subset_reproduces_q() {
    for (label, p) in [("A2", 5u64), ("B2", 7)] {
        let d = RootDatum::build(label).unwrap();
        let mut per = Periodic::new(&d);
        for lambda in box_representatives(&d, p) {
            let t = layer_table(&mut per, &[], &lambda, p).unwrap();
            let la = alcove_of(&d, &lambda, p).unwrap();
            for mu in loewy_kl::alcove::box_window(&d, &lambda, p, None).unwrap() {
                let ma = alcove_of(&d, &mu, p).unwrap();
                let q = per.q_periodic(&ma, &la).unwrap();
                let rd = signed_distance(&ma, &la);
                let mut total = 0;
                for &(k, c) in q.terms() {
                    assert_eq!(k % 2, 0);
                    assert_eq!(t.get((rd - k) as usize, &mu), c as u64, "{label} λ={lambda} μ={mu}");
                    total += c as u64;
                }
                let in_table: u64 = t.entries().iter().filter(|e| e.1 == mu).map(|e| e.2).sum();
                assert_eq!(in_table, total, "{label} λ={lambda} μ={mu}");
            }
        }
    }
}
