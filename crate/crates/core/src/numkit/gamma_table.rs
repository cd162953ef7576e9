//! Reference digits of Euler's constant.
//!
//! A 1100-digit table ships with the crate, guarded by a checksum at first
//! use (and cross-checked against the crate's own approximant sequences by
//! `analysis::gamma_reference`). A longer table can be installed once per
//! process from an external digits file.

use std::sync::OnceLock;

use super::{Dec, Int, NumError};

const GAMMA_DIGITS: &str = concat!(
    "0.",
    "5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495",
    "1463144724980708248096050401448654283622417399764492353625350033374293733773767394279259525824709491",
    "6008735203948165670853233151776611528621199501507984793745085705740029921354786146694029604325421519",
    "0587755352673313992540129674205137541395491116851028079842348775872050384310939973613725530608893312",
    "6760017247953783675927135157722610273492913940798430103417771778088154957066107501016191663340152278",
    "9358679654972520362128792265559536696281763887927268013243101047650596370394739495763890657296792960",
    "1009015125195950922243501409349871228247949747195646976318506676129063811051824197444867836380861749",
    "4551698927923018773910729457815543160050021828440960537724342032854783670151773943987003023703395183",
    "2869000155819398804270741154222781971652301107356583396734871765049194181230004065469314299929777956",
    "9303100503086303418569803231083691640025892970890985486825777364288253954925873629596133298574739302",
    "3734388470703702844129201664178502487333790805627549984345907616431671031467107223700218107450444186"
);

const GAMMA_DIGITS_FNV1A64: u64 = 0x08e8_7af2_4950_390a;

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    h
}

/// A validated digit string for γ: "0." followed by fractional digits.
#[derive(Clone, Debug)]
pub struct GammaDigits {
    frac: String,
}

impl GammaDigits {
    /// Accepts the first line of a digits file: `0.577215664901…` with no
    /// whitespace inside the number.
    pub fn parse(text: &str) -> Result<GammaDigits, NumError> {
        let line = text.lines().next().unwrap_or("").trim();
        let frac = line
            .strip_prefix("0.")
            .ok_or_else(|| NumError::BadDigitTable("expected a leading \"0.\"".into()))?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(NumError::BadDigitTable("expected decimal digits after \"0.\"".into()));
        }
        if !frac.starts_with("5772156649") {
            return Err(NumError::BadDigitTable(
                "leading digits do not look like Euler's constant".into(),
            ));
        }
        Ok(GammaDigits { frac: frac.to_string() })
    }

    /// Number of fractional digits held.
    pub fn capacity(&self) -> usize {
        self.frac.len()
    }

    /// The constant truncated to p fractional digits.
    pub fn dec(&self, p: usize) -> Result<Dec, NumError> {
        if p > self.capacity() {
            return Err(NumError::PrecisionExceedsTable { requested: p, capacity: self.capacity() });
        }
        if p == 0 {
            return Ok(Dec::zero(0));
        }
        let m: Int = self.frac[..p].parse().expect("digit table is ascii digits");
        Ok(Dec::new(m, p))
    }
}

fn embedded() -> &'static GammaDigits {
    static EMBEDDED: OnceLock<GammaDigits> = OnceLock::new();
    EMBEDDED.get_or_init(|| {
        assert_eq!(
            fnv1a64(GAMMA_DIGITS.as_bytes()),
            GAMMA_DIGITS_FNV1A64,
            "embedded gamma digit table is corrupted"
        );
        GammaDigits::parse(GAMMA_DIGITS).expect("embedded gamma digit table is well formed")
    })
}

static OVERRIDE: OnceLock<GammaDigits> = OnceLock::new();

/// Replace the embedded table for the rest of the process (successful at
/// most once, intended for process startup).
pub fn install_gamma_digits(text: &str) -> Result<(), NumError> {
    let digits = GammaDigits::parse(text)?;
    OVERRIDE
        .set(digits)
        .map_err(|_| NumError::BadDigitTable("a digit table was already installed".into()))
}

fn active() -> &'static GammaDigits {
    OVERRIDE.get().unwrap_or_else(|| embedded())
}

/// Fractional digits available from the active table.
pub fn gamma_digit_capacity() -> usize {
    active().capacity()
}

/// Euler's constant truncated to p fractional digits.
pub fn const_gamma(p: usize) -> Result<Dec, NumError> {
    active().dec(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_and_capacity() {
        assert_eq!(const_gamma(17).unwrap().to_string(), "0.57721566490153286");
        assert!(gamma_digit_capacity() >= 1000);
        assert!(const_gamma(gamma_digit_capacity()).is_ok());
        assert!(matches!(
            const_gamma(9999),
            Err(NumError::PrecisionExceedsTable { requested: 9999, .. })
        ));
    }

    #[test]
    fn parser_rejects_malformed_tables() {
        assert!(GammaDigits::parse("0.57721566490153286").is_ok());
        assert!(GammaDigits::parse("0.57721566490153286\nsecond line ignored").is_ok());
        assert!(GammaDigits::parse(".577").is_err());
        assert!(GammaDigits::parse("0.577x").is_err());
        assert!(GammaDigits::parse("0.123456789").is_err());
        assert!(GammaDigits::parse("").is_err());
    }

    #[test]
    fn truncation_not_rounding() {
        // digit 11 of gamma is 0| 0.57721566490 | 15328...; a rounding
        // implementation would bump the final 0 to 1 only if digit 12 >= 5,
        // here digit 12 is 1 so both agree; use digits 1..=13 instead where
        // the following digit is 2 (no carry) and 1..=16 where it is 8.
        assert_eq!(const_gamma(16).unwrap().to_string(), "0.5772156649015328");
        assert_eq!(const_gamma(13).unwrap().to_string(), "0.5772156649015");
    }
}
