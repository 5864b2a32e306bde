//! Numbers with optional unit suffixes, converted to SI once at parse time.

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Time,
    /// Mass, action and counts: plain SI numbers only.
    Plain,
}

// Divisors rather than factors: `100 / 1e6` rounds exactly like the
// literal `100e-6`, `100 * 1e-6` does not.
const LENGTH: &[(&str, f64)] = &[("nm", 1e9), ("um", 1e6), ("µm", 1e6), ("mm", 1e3), ("m", 1.0)];
const TIME: &[(&str, f64)] = &[("ns", 1e9), ("us", 1e6), ("µs", 1e6), ("s", 1.0)];

/// Parse `"650nm"`, `"18 ns"`, `"1e-3"` and the like.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64> {
    let text = text.trim();
    let suffixes = match dim {
        Dimension::Length => LENGTH,
        Dimension::Time => TIME,
        Dimension::Plain => &[],
    };
    let (number, scale) = suffixes
        .iter()
        .find_map(|&(unit, scale)| text.strip_suffix(unit).map(|n| (n.trim_end(), scale)))
        .unwrap_or((text, 1.0));
    let value: f64 = number
        .parse()
        .map_err(|_| CliError::Config(format!("cannot read `{text}` as a number")))?;
    Ok(value / scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) {
        // exact, thanks to the divisors
        assert_eq!(a, b);
    }

    #[test]
    fn suffixes() {
        close(parse_quantity("650nm", Dimension::Length).unwrap(), 650e-9);
        close(parse_quantity("1 mm", Dimension::Length).unwrap(), 1e-3);
        close(parse_quantity("-1mm", Dimension::Length).unwrap(), -1e-3);
        close(parse_quantity("2.5um", Dimension::Length).unwrap(), 2.5e-6);
        close(parse_quantity("0.3m", Dimension::Length).unwrap(), 0.3);
        close(parse_quantity("18ns", Dimension::Time).unwrap(), 18e-9);
        close(parse_quantity("3us", Dimension::Time).unwrap(), 3e-6);
        close(parse_quantity("1s", Dimension::Time).unwrap(), 1.0);
        close(parse_quantity("9.11e-31", Dimension::Plain).unwrap(), 9.11e-31);
    }

    #[test]
    fn rejects_wrong_units() {
        assert!(parse_quantity("18ns", Dimension::Length).is_err());
        assert!(parse_quantity("5mm", Dimension::Time).is_err());
        assert!(parse_quantity("abc", Dimension::Plain).is_err());
    }
}
