//! Root data, Weyl groups and parabolic data for the supported types.
use loewy_kl::{ParabolicDatum, RootDatum};

fn main() -> loewy_kl::Result<()> {
    for label in ["A1", "A2", "B2", "G2", "A3", "A1xA1"] {
        let d = RootDatum::build(label)?;
        println!(
            "{label}: rank {}, |R+| = {}, |W| = {}, h = {}, rho = {}",
            d.rank,
            d.num_positive_roots(),
            d.weyl_order(),
            d.coxeter_number,
            d.rho()
        );
    }

    let d = RootDatum::build("B2")?;
    println!("\nB2 positive roots (simple-root coordinates, height):");
    for r in &d.roots {
        println!("  {:?}  ht {}", r.coeffs, r.height);
    }
    for subset in [vec![], vec![0], vec![1], vec![0, 1]] {
        let pd = ParabolicDatum::new(&d, &subset)?;
        println!(
            "I = {subset:?}: |W^I| = {}, l(w^I) = {}, 2rho_P = {}",
            pd.min_coset_reps.len(),
            pd.upper_length(&d),
            pd.two_rho_p
        );
    }
    Ok(())
}
