//! Happy path for a replacement digit table (own binary: the install is
//! process-global and set-once). A correct 100-digit table serves
//! references up to its capacity and no further.

use gammacf::analysis;
use gammacf::numkit::{gamma_digit_capacity, install_gamma_digits};

const TABLE: &str = include_str!("data/gamma_digits_ok.txt");

#[test]
fn replacement_table_serves_references_up_to_capacity() {
    install_gamma_digits(TABLE).expect("valid table");
    assert_eq!(gamma_digit_capacity(), 100);

    let g = analysis::gamma_reference(60).expect("gate passes");
    assert!(g.to_string().starts_with("0.57721566490153286"));

    let d = analysis::delta_reference(10).expect("gate passes");
    assert_eq!(d.to_string(), "0.5963473623");

    // Ten guard digits put the delta series just past a 100-digit table.
    assert!(analysis::gamma_reference(120).is_err());
    assert!(analysis::delta_reference(95).is_err());
}
