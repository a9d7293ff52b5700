//! Write the named classes and the Warmuth preference functions to a directory.
//!
//! ```text
//! cargo run --example write_fixtures -- fixtures
//! ```

use std::fs;
use std::path::PathBuf;

use teachdim::class::{powerset_class, warmuth_class};
use teachdim::fixtures::warmuth_reference_sigmas;
use teachdim::preference::file;
use teachdim::{hc, HypothesisClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    fs::create_dir_all(&dir)?;

    let warmuth = warmuth_class();
    let classes = [
        ("warmuth", warmuth.clone()),
        ("powerset3", powerset_class(3)?),
        ("singleton", HypothesisClass::from_strings(&["0"])?),
    ];
    for (name, class) in &classes {
        fs::write(dir.join(format!("{name}.hc")), hc::serialize(class))?;
    }
    for (name, sigma) in warmuth_reference_sigmas(&warmuth) {
        fs::write(dir.join(format!("warmuth_{name}.pref")), file::to_json(&sigma, &warmuth)?)?;
    }
    println!("wrote fixtures to {}", dir.display());
    Ok(())
}
