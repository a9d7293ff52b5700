//! VC, worst-case, recursive and no-clash teaching dimensions of a few classes.

use teachdim::class::{powerset_class, warmuth_class};
use teachdim::engines::{nctd, rtd, vcd, wc_td, NctdOptions, Witness};
use teachdim::HypothesisClass;

fn main() -> teachdim::Result<()> {
    let classes: Vec<(&str, HypothesisClass)> = vec![
        ("warmuth", warmuth_class()),
        ("powerset(3)", powerset_class(3)?),
        ("chain", HypothesisClass::from_strings(&["000", "100", "110", "111"])?),
    ];
    println!("{:<12} {:>4} {:>6} {:>4} {:>5}", "class", "VCD", "wc-TD", "RTD", "NCTD");
    for (name, class) in &classes {
        let nc = nctd(class, &NctdOptions::default())?;
        println!(
            "{name:<12} {:>4} {:>6} {:>4} {:>5}",
            vcd(class, None)?.value,
            wc_td(class).value,
            rtd(class).value,
            nc.value
        );
        if let Witness::Mapping(sets) = &nc.witness {
            for (h, set) in sets.iter().enumerate() {
                let zs: Vec<String> = set.iter().map(|z| format!("({},{})", class.instance_name(z.instance), z.label as u8)).collect();
                println!("    T({}) = {{{}}}", class.hypothesis_name(h), zs.join(" "));
            }
        }
    }
    Ok(())
}
