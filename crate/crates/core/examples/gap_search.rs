//! Search small classes for one where a version-space learner needs one
//! example and no local learner can.

use teachdim::constructions::{find_gvs_beats_local_class, GapSearchBounds};

fn main() -> teachdim::Result<()> {
    match find_gvs_beats_local_class(GapSearchBounds::default())? {
        Some(cert) => {
            println!("rows: {}", cert.rows.join(" "));
            println!("NCTD {} RTD {}", cert.nctd, cert.rtd);
            let tds: Vec<String> = cert.gvs_td.iter().map(ToString::to_string).collect();
            println!("gvs learner TD per start: {}", tds.join(" "));
            println!("starts with a one-example local learner: {:?}", cert.local_td_one);
        }
        None => println!("nothing within bounds"),
    }
    Ok(())
}
