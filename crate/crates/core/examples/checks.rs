//! Structural checks on computed tables: head and socle, parity, placements, dimensions.
use loewy_kl::alcove::box_representatives;
use loewy_kl::loewy::{dimension_check, head_socle_check, layer_table, loewy_length, parity_check, verify_placements};
use loewy_kl::periodic::Periodic;
use loewy_kl::RootDatum;

fn main() -> loewy_kl::Result<()> {
    let d = RootDatum::build("A2")?;
    let p = 5;
    let mut per = Periodic::new(&d);
    for lambda in box_representatives(&d, p) {
        for subset in [vec![], vec![0], vec![1], vec![0, 1]] {
            let t = layer_table(&mut per, &subset, &lambda, p)?;
            let len = loewy_length(&d, &t)?;
            let head = head_socle_check(&d, &t)?;
            parity_check(&d, &t)?;
            let placed = verify_placements(&d, &t)?;
            let dims = dimension_check(&d, &t)?;
            println!(
                "lambda {:>6} I {:<7} length {len} head {:>8} placements {} dim {} = {}",
                lambda.to_string(),
                format!("{subset:?}"),
                head.to_string(),
                placed.len(),
                dims.lhs,
                dims.rhs
            );
        }
    }
    Ok(())
}
