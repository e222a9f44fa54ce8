//! Embedded fixture data and recorded reference values.
//!
//! Tensor and diagram fixtures live under `fixtures/` at the repository root
//! and are compiled in so the CLI can resolve `--fixture` names without
//! knowing the working directory. The expected-value tables below are the
//! ground truth used by the `reproduce` command and the acceptance suite.

pub const EXAMPLE3_TENSOR: &str = include_str!("../../../fixtures/example3.tensor");
pub const EXAMPLE5A_TENSOR: &str = include_str!("../../../fixtures/example5a.tensor");
pub const EXAMPLE5B_TENSOR: &str = include_str!("../../../fixtures/example5b.tensor");
pub const EXAMPLE6_TENSOR: &str = include_str!("../../../fixtures/example6.tensor");
pub const EXAMPLE10_TENSOR: &str = include_str!("../../../fixtures/example10.tensor");
pub const ORDER4_TENSOR: &str = include_str!("../../../fixtures/order4.tensor");
pub const ORDER5_TENSOR: &str = include_str!("../../../fixtures/order5.tensor");

/// Built-in tensors by fixture name (without the `.tensor` suffix).
pub const TENSORS: &[(&str, &str)] = &[
    ("example3", EXAMPLE3_TENSOR),
    ("example5a", EXAMPLE5A_TENSOR),
    ("example5b", EXAMPLE5B_TENSOR),
    ("example6", EXAMPLE6_TENSOR),
    ("example10", EXAMPLE10_TENSOR),
    ("order4", ORDER4_TENSOR),
    ("order5", ORDER5_TENSOR),
];

/// Built-in link diagrams by fixture name (without the `.pd` suffix).
pub const DIAGRAMS: &[(&str, &str)] = &[
    ("hopf", include_str!("../../../fixtures/hopf.pd")),
    ("hopf_kink", include_str!("../../../fixtures/hopf_kink.pd")),
    ("trefoil", include_str!("../../../fixtures/trefoil.pd")),
    ("unknot0", include_str!("../../../fixtures/unknot0.pd")),
    ("unknot1k", include_str!("../../../fixtures/unknot1k.pd")),
    ("unlink2", include_str!("../../../fixtures/unlink2.pd")),
    ("granny", include_str!("../../../fixtures/granny.pd")),
    ("6_1", include_str!("../../../fixtures/6_1.pd")),
    ("L2a1", include_str!("../../../fixtures/L2a1.pd")),
    ("L4a1", include_str!("../../../fixtures/L4a1.pd")),
    ("L5a1", include_str!("../../../fixtures/L5a1.pd")),
    ("L6a1", include_str!("../../../fixtures/L6a1.pd")),
    ("L6a2", include_str!("../../../fixtures/L6a2.pd")),
    ("L6a3", include_str!("../../../fixtures/L6a3.pd")),
    ("L6a4", include_str!("../../../fixtures/L6a4.pd")),
    ("L6a5", include_str!("../../../fixtures/L6a5.pd")),
    ("L6n1", include_str!("../../../fixtures/L6n1.pd")),
    ("L7a1", include_str!("../../../fixtures/L7a1.pd")),
    ("L7a2", include_str!("../../../fixtures/L7a2.pd")),
    ("L7a3", include_str!("../../../fixtures/L7a3.pd")),
    ("L7a4", include_str!("../../../fixtures/L7a4.pd")),
    ("L7a5", include_str!("../../../fixtures/L7a5.pd")),
    ("L7a6", include_str!("../../../fixtures/L7a6.pd")),
    ("L7a7", include_str!("../../../fixtures/L7a7.pd")),
    ("L7n1", include_str!("../../../fixtures/L7n1.pd")),
    ("L7n2", include_str!("../../../fixtures/L7n2.pd")),
];

pub fn builtin_tensor(name: &str) -> Option<&'static str> {
    TENSORS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn builtin_diagram(name: &str) -> Option<&'static str> {
    DIAGRAMS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Expected writhes per diagram fixture. Braid-closure fixtures carry the
/// algebraic sum of their braid word as an arithmetic oracle; the rest were
/// recorded from an independent implementation of the sign rule.
pub const WRITHES: &[(&str, i64)] = &[
    ("hopf", 2),
    ("hopf_kink", 3),
    ("trefoil", -3),
    ("unknot0", 0),
    ("unknot1k", 1),
    ("unlink2", 0),
    ("granny", 6),
    ("6_1", 2),
    ("L2a1", 2),
    ("L4a1", 4),
    ("L5a1", -1),
    ("L6a1", -6),
    ("L6a2", 6),
    ("L6a3", 6),
    ("L6a4", 0),
    ("L6a5", 2),
    ("L6n1", 6),
    ("L7a1", 1),
    ("L7a2", 1),
    ("L7a3", -3),
    ("L7a4", 3),
    ("L7a5", 1),
    ("L7a6", -1),
    ("L7a7", -1),
    ("L7n1", -1),
    ("L7n2", 3),
];

/// Coloring counts over the `example6` tensor.
pub const EXAMPLE6_COUNTS: &[(&str, u64)] = &[
    ("hopf", 9),
    ("unlink2", 27),
];

/// Enhancement over the mod-8 Alexander tribracket with t=3, s=5: every key
/// is `c*uvwx^8y^2z^4` and the four multiplicities here correspond to
/// coefficients 1, 2, 4, 8 in that order.
pub const Z8_ENHANCEMENTS: &[(&str, [u64; 4])] = &[
    ("L2a1", [8, 24, 32, 64]),
    ("L4a1", [8, 24, 96, 128]),
    ("L5a1", [8, 24, 96, 384]),
    ("L6a1", [8, 24, 96, 128]),
    ("L6a2", [8, 24, 32, 64]),
    ("L6a3", [8, 24, 32, 64]),
    ("L6a4", [8, 56, 448, 512]),
    ("L6a5", [8, 56, 64, 128]),
    ("L6n1", [8, 56, 64, 128]),
    ("L7a1", [8, 24, 96, 384]),
    ("L7a2", [8, 24, 96, 128]),
    ("L7a3", [8, 24, 96, 384]),
    ("L7a4", [8, 24, 96, 384]),
    ("L7a5", [8, 24, 32, 64]),
    ("L7a6", [8, 24, 32, 64]),
    ("L7a7", [8, 56, 64, 128]),
    ("L7n1", [8, 24, 96, 128]),
    ("L7n2", [8, 24, 96, 384]),
];

/// Enhancements over the `order4` tensor (64 colorings each).
pub const ORDER4_ENHANCEMENTS: &[(&str, &[(&str, u64)])] = &[
    ("L7a3", &[("uvwx^2y^2z^4", 4), ("2uvwx^2y^2z^4", 12), ("4uvwx^2y^2z^4", 48)]),
    ("L7a7", &[("uvwx^2y^2z^4", 4), ("2uvwx^2y^2z^4", 28), ("4uvwx^2y^2z^4", 32)]),
];

/// Enhancements over the mod-18 Alexander tribracket with t=5, s=13
/// (2916 colorings each).
pub const Z18_ENHANCEMENTS: &[(&str, &[(&str, u64)])] = &[
    (
        "granny",
        &[
            ("uvwx^18y^2z^6", 6),
            ("2uvwx^18y^2z^6", 6),
            ("3uvwx^18y^2z^6", 156),
            ("6uvwx^18y^2z^6", 156),
            ("3uvwx^18y^2z^6 + 6uvwy^2z^6", 972),
            ("6uvwx^18y^2z^6 + 12uvwy^2z^6", 972),
            ("3uvwy^2z^6", 324),
            ("6uvwy^2z^6", 324),
        ],
    ),
    (
        "6_1",
        &[
            ("uvwx^18y^2z^6", 6),
            ("2uvwx^18y^2z^6", 6),
            ("3uvwx^18y^2z^6", 48),
            ("6uvwx^18y^2z^6", 48),
            ("3uvwx^18y^2z^6 + 6uvwy^2z^6", 1296),
            ("6uvwx^18y^2z^6 + 12uvwy^2z^6", 1296),
            ("3uvwy^2z^6", 108),
            ("6uvwy^2z^6", 108),
        ],
    ),
];

/// Enhancements over the `order5` tensor.
pub const ORDER5_ENHANCEMENTS: &[(&str, &[(&str, u64)])] = &[
    ("L11n404", &[("uvw^5xyz", 1), ("uvw^5xyz + 4uvxyz", 624)]),
    ("L11n406", &[("uvw^5xyz", 1), ("uvw^5xyz + 4uvxyz", 124)]),
];

/// The two orientations of L10n9 over the `order5` tensor, as an unordered
/// pair: reversing one component swaps which multiset appears.
pub const ORDER5_L10N9_PAIR: [&[(&str, u64)]; 2] = [
    &[("uvw^5xyz", 1), ("uvw^5xyz + 4uvxyz", 124)],
    &[("uvw^5xyz", 1), ("uvw^5xyz + 4uvxyz", 24)],
];

/// Distinct-polynomial spectra of all tribracket structures per order.
pub const SPECTRA: &[(usize, &[&str])] = &[
    (1, &["uvwxyz"]),
    (2, &["2uvwx^2y^2z^2", "2uvw"]),
    (
        3,
        &[
            "3uvwxy^3z^3",
            "3uvwx^3yz^3",
            "3uvwx^3y^3z",
            "u^3v^3w^3xyz + 2xyz",
            "3uvwz",
            "3uvwy",
            "3uvwx",
        ],
    ),
    (
        4,
        &[
            "4uvw",
            "4uvwx^4y^4z^2",
            "4uvwx^2y^2z^2",
            "4uvwxy",
            "4uvwz^2",
            "4uvwx^2y^4z^4",
            "4uvwx^4y^2z^4",
            "4uvwxyz^4",
            "4uvwx^2y^4z^2",
            "4uvwx^4y^2z^2",
            "4uvwy^2z^2",
            "4uvwx^2z^2",
            "4uvwy^2",
            "4uvwx^2",
            "4uvwx^2y^2z^4",
            "4uvwx^2y^2",
            "4uvwx^4y^4z^4",
        ],
    ),
    (
        5,
        &[
            "5uvwx^5y^5z",
            "uvw^5xyz + 4uvxyz",
            "u^5v^5wxyz + 4wxyz",
            "5uvwz",
            "5uvwy",
            "5uvwxy",
            "5uvwxyz^5",
            "5uvwxyz",
            "5uvwx",
            "5uvwx^5yz^5",
            "5uvwxy^5z^5",
        ],
    ),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixtures_resolve() {
        assert!(builtin_tensor("example3").is_some());
        assert!(builtin_tensor("order5").is_some());
        assert!(builtin_tensor("nope").is_none());
        assert!(builtin_diagram("hopf").is_some());
        assert!(builtin_diagram("L7a7").is_some());
        assert!(builtin_diagram("nope").is_none());
    }

    #[test]
    fn all_embedded_tensors_validate() {
        for (name, text) in TENSORS {
            let t = crate::algebra::Tensor3::parse(text).unwrap();
            assert!(crate::algebra::validate(&t).ok(), "{name}");
        }
    }

    #[test]
    fn reference_tables_name_real_fixtures() {
        for (name, _) in WRITHES {
            assert!(builtin_diagram(name).is_some(), "{name}");
        }
        for (name, _) in Z8_ENHANCEMENTS {
            assert!(builtin_diagram(name).is_some(), "{name}");
        }
        for (name, _) in ORDER4_ENHANCEMENTS {
            assert!(builtin_diagram(name).is_some(), "{name}");
        }
        for (name, _) in Z18_ENHANCEMENTS {
            assert!(builtin_diagram(name).is_some(), "{name}");
        }
    }
}
