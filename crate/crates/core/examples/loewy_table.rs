//! Loewy layers of an induced module, in text, CSV and JSON form.
use loewy_kl::loewy::{head_weight, layer_table, predicted_loewy_length};
use loewy_kl::periodic::Periodic;
use loewy_kl::{RootDatum, Weight};

fn main() -> loewy_kl::Result<()> {
    let d = RootDatum::build("B2")?;
    let p = 7;
    let lambda = Weight(vec![1, 1]);
    let mut per = Periodic::new(&d);
    for subset in [vec![], vec![0], vec![1]] {
        let t = layer_table(&mut per, &subset, &lambda, p)?;
        println!(
            "I = {subset:?}: Loewy length {} (predicted {}), head {}",
            t.loewy_length(),
            predicted_loewy_length(&d, &subset)?,
            head_weight(&d, &lambda, p, &subset)?
        );
        println!("{}", t.to_report(&d));
    }
    let t = layer_table(&mut per, &[1], &lambda, p)?;
    println!("CSV:\n{}", t.to_csv());
    println!("JSON:\n{}", t.to_json(&d)?);
    Ok(())
}
