//! Formula against explicit socle series computed over F_p for sl3.
use loewy_kl::loewy::layer_table;
use loewy_kl::oracle::{self, Algebra, Oracle};
use loewy_kl::periodic::Periodic;
use loewy_kl::{RootDatum, Weight};

fn main() -> loewy_kl::Result<()> {
    let d = RootDatum::build("A2")?;
    let p = 5;
    let lambda = Weight(vec![1, 0]);
    let mut per = Periodic::new(&d);
    for subset in [vec![], vec![0], vec![1]] {
        let formula = layer_table(&mut per, &subset, &lambda, p)?;
        let explicit = oracle::loewy_table(&d, &subset, &lambda, p)?;
        println!("I = {subset:?}: {}", if formula == explicit { "agree" } else { "DIFFER" });
        print!("{}", explicit.to_text());
    }

    let mut o = Oracle::new(Algebra::for_datum(&d)?, p as u32);
    let module = o.induce_parabolic(&[0], &lambda)?;
    println!("induced module for I = {{1}} has dimension {}", module.dim());
    Ok(())
}
