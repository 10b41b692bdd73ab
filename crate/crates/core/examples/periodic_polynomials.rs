//! Generic (periodic) polynomials and their inverses, with the inversion identity.
use loewy_kl::alcove::{alcove_of, box_representatives, box_window, format_word};
use loewy_kl::periodic::Periodic;
use loewy_kl::RootDatum;

fn main() -> loewy_kl::Result<()> {
    let d = RootDatum::build("A2")?;
    let p = 5;
    let mut per = Periodic::new(&d);
    let lambda = &box_representatives(&d, p)[0];
    let la = alcove_of(&d, lambda, p)?;
    println!("A2, lambda = {lambda}, alcove {}", format_word(&la.reduced_word(&d)));
    let mut window = Vec::new();
    for mu in box_window(&d, lambda, p, None)? {
        let a = alcove_of(&d, &mu, p)?;
        let (phat, q) = (per.phat(&a, &la)?, per.q_periodic(&a, &la)?);
        println!("  {:>9}  P^ = {:<8} Q = {q}", mu.to_string(), phat.to_string());
        window.push(a);
    }
    let report = per.inversion_check(&window)?;
    println!("inversion identity: {} pairs, {} deviations", report.pairs, report.deviations.len());
    println!("P^ stabilized by depth {}", per.deepest_depth());
    Ok(())
}
