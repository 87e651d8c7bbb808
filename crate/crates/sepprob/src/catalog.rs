//! Named scenarios covering every system the estimation study reports,
//! each with its default conjecture attachment and checkpoint interval
//! (five million samples for the 4x4 systems, one million above that).
//!
//! Names resolve through [`by_name`]; unknown names are errors rather than
//! free-form dimensions so the variate accounting stays auditable. The CLI
//! offers a `--custom` escape hatch that builds a [`Scenario`] directly.

use crate::rmt::{Measure, NumberField, Scenario};

/// A catalog row: scenario plus presentation defaults.
#[derive(Debug, Clone, Copy)]
pub struct NamedScenario {
    pub name: &'static str,
    pub scenario: Scenario,
    /// Registry constant the ratio column divides by, when one is attached.
    pub default_conjecture: Option<&'static str>,
    pub default_interval: u64,
}

const fn induced(n_a: usize, n_b: usize, field: NumberField, k: u32) -> Scenario {
    Scenario {
        n_a,
        n_b,
        field,
        measure: Measure::Induced { k },
    }
}

const fn bures(n_a: usize, n_b: usize, field: NumberField) -> Scenario {
    Scenario {
        n_a,
        n_b,
        field,
        measure: Measure::Osz { x: 0.5 },
    }
}

use NumberField::{Complex, Real};

pub const CATALOG: &[NamedScenario] = &[
    NamedScenario {
        name: "two-rebit-hs",
        scenario: induced(2, 2, Real, 0),
        default_conjecture: Some("hs_two_rebit"),
        default_interval: 5_000_000,
    },
    NamedScenario {
        name: "two-qubit-hs",
        scenario: induced(2, 2, Complex, 0),
        default_conjecture: Some("hs_two_qubit"),
        default_interval: 5_000_000,
    },
    NamedScenario {
        name: "two-rebit-bures",
        scenario: bures(2, 2, Real),
        default_conjecture: Some("bures_two_rebit"),
        default_interval: 5_000_000,
    },
    NamedScenario {
        name: "two-qubit-bures",
        scenario: bures(2, 2, Complex),
        default_conjecture: Some("bures_two_qubit"),
        default_interval: 5_000_000,
    },
    NamedScenario {
        name: "qubit-qutrit-hs",
        scenario: induced(2, 3, Complex, 0),
        default_conjecture: Some("hs_qubit_qutrit"),
        default_interval: 5_000_000,
    },
    NamedScenario {
        name: "rebit-retrit-hs",
        scenario: induced(2, 3, Real, 0),
        default_conjecture: Some("hs_rebit_retrit"),
        default_interval: 5_000_000,
    },
    NamedScenario {
        name: "qubit-qutrit-bures",
        scenario: bures(2, 3, Complex),
        default_conjecture: Some("bures_qubit_qutrit"),
        default_interval: 1_000_000,
    },
    NamedScenario {
        name: "rebit-retrit-bures",
        scenario: bures(2, 3, Real),
        default_conjecture: None,
        default_interval: 1_000_000,
    },
    NamedScenario {
        name: "qubit-qudit-2x4-hs",
        scenario: induced(2, 4, Complex, 0),
        default_conjecture: Some("hs_2x4"),
        default_interval: 1_000_000,
    },
    NamedScenario {
        name: "qubit-qudit-2x4-bures",
        scenario: bures(2, 4, Complex),
        default_conjecture: Some("bures_2x4"),
        default_interval: 1_000_000,
    },
    NamedScenario {
        name: "qubit-qudit-2x5-hs",
        scenario: induced(2, 5, Complex, 0),
        default_conjecture: Some("hs_2x5"),
        default_interval: 1_000_000,
    },
    NamedScenario {
        name: "rebit-redit-2x4-hs",
        scenario: induced(2, 4, Real, 0),
        default_conjecture: Some("hs_rebit_redit_2x4"),
        default_interval: 1_000_000,
    },
    NamedScenario {
        name: "rebit-redit-2x5-hs",
        scenario: induced(2, 5, Real, 0),
        default_conjecture: Some("hs_rebit_redit_2x5"),
        default_interval: 1_000_000,
    },
    NamedScenario {
        name: "two-qutrit-hs",
        scenario: induced(3, 3, Complex, 0),
        default_conjecture: Some("hs_two_qutrit_a"),
        default_interval: 1_000_000,
    },
    NamedScenario {
        name: "two-qutrit-bures",
        scenario: bures(3, 3, Complex),
        default_conjecture: Some("bures_two_qutrit"),
        default_interval: 1_000_000,
    },
];

pub fn by_name(name: &str) -> Option<&'static NamedScenario> {
    CATALOG.iter().find(|s| s.name == name)
}

pub fn names() -> Vec<&'static str> {
    CATALOG.iter().map(|s| s.name).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_and_variate_counts() {
        assert_eq!(
            by_name("two-qubit-bures").unwrap().scenario.variate_count(),
            64
        );
        assert_eq!(
            by_name("two-rebit-bures").unwrap().scenario.variate_count(),
            36
        );
        assert_eq!(
            by_name("qubit-qutrit-hs").unwrap().scenario.variate_count(),
            72
        );
        assert_eq!(
            by_name("rebit-retrit-hs").unwrap().scenario.variate_count(),
            42
        );
        assert_eq!(
            by_name("qubit-qutrit-bures")
                .unwrap()
                .scenario
                .variate_count(),
            144
        );
        assert_eq!(
            by_name("qubit-qudit-2x4-bures")
                .unwrap()
                .scenario
                .variate_count(),
            256
        );
        assert_eq!(
            by_name("two-qutrit-bures")
                .unwrap()
                .scenario
                .variate_count(),
            324
        );
        assert!(by_name("nonsense").is_none());
    }

    #[test]
    fn every_row_is_constructible_and_unique() {
        let mut seen = std::collections::HashSet::new();
        for row in CATALOG {
            assert!(seen.insert(row.name), "duplicate {}", row.name);
            let s = row.scenario;
            // Re-validate through the checked constructor.
            Scenario::new(s.n_a, s.n_b, s.field, s.measure).unwrap();
            assert!(row.default_interval > 0);
        }
    }

    #[test]
    fn conjecture_names_resolve_in_registry() {
        for row in CATALOG {
            if let Some(name) = row.default_conjecture {
                assert!(
                    crate::exact::registry::constant(name).is_some(),
                    "{} points at unknown constant {name}",
                    row.name
                );
            }
        }
    }
}
