//! Country and US-state reference tables.
//!
//! Shared by the form generator (select widgets) and the validators
//! (country/state cross-checks). The tables are compiled in from
//! tab-separated data files: one `CODE<TAB>Display Name` entry per line,
//! countries keyed by ISO 3166-1 alpha-3 code, states by USPS code plus the
//! District of Columbia.

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionEntry {
    pub code: &'static str,
    pub name: &'static str,
}

static US_STATES_RAW: &str = include_str!("../data/us_states.txt");
static COUNTRIES_RAW: &str = include_str!("../data/countries.txt");

fn parse_table(raw: &'static str) -> Vec<RegionEntry> {
    raw.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (code, name) = l
                .split_once('\t')
                .expect("region table line must be CODE<TAB>NAME");
            RegionEntry { code, name }
        })
        .collect()
}

/// The 50 states plus the District of Columbia, in data-file order.
pub fn us_states() -> &'static [RegionEntry] {
    static TABLE: OnceLock<Vec<RegionEntry>> = OnceLock::new();
    TABLE.get_or_init(|| parse_table(US_STATES_RAW))
}

/// Countries in display-name order.
pub fn countries() -> &'static [RegionEntry] {
    static TABLE: OnceLock<Vec<RegionEntry>> = OnceLock::new();
    TABLE.get_or_init(|| parse_table(COUNTRIES_RAW))
}

/// True when `code` is a US state (or DC) code, byte-exact.
pub fn is_us_state(code: &str) -> bool {
    us_states().iter().any(|e| e.code == code)
}

/// True when `code` is a known country code, byte-exact.
pub fn is_country(code: &str) -> bool {
    countries().iter().any(|e| e.code == code)
}
