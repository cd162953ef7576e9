//! The replacement digit table is process-global and set-once, so the
//! corrupt-table story needs its own binary: after a plausible-looking
//! but wrong table is installed, every reference request must refuse.

use gammacf::analysis::{self, AnalysisError};
use gammacf::numkit::{gamma_digit_capacity, install_gamma_digits};

// The true digits with position 21 flipped; the format checks cannot
// tell, only the consistency gate can.
const CORRUPT: &str = include_str!("data/gamma_digits_corrupt.txt");

#[test]
fn corrupt_table_is_installed_then_refused() {
    install_gamma_digits(CORRUPT).expect("format looks plausible");
    assert_eq!(gamma_digit_capacity(), 100);

    assert!(matches!(analysis::gamma_reference(30), Err(AnalysisError::TableCorrupt)));
    assert!(matches!(analysis::delta_reference(10), Err(AnalysisError::TableCorrupt)));

    // A second install is refused, whatever it carries.
    assert!(install_gamma_digits(CORRUPT).is_err());
}
