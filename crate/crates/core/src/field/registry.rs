//! The forty class-number-one imaginary quartic Galois fields with their
//! reference admissible prime pairs.

use std::sync::Arc;

use super::{build_biquadratic, build_cyclic_quartic, FieldKind, FieldSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct FieldRegistryEntry {
    pub label: String,
    pub spec: Arc<FieldSpec>,
    pub expected_g: u64,
    /// Reference `(p1, p2)` for the field.
    pub expected_p1_p2: (u64, u64),
}

/// `(m, n, p1, p2)` for the 33 biquadratic fields, in table order.
const BIQUADRATIC: [(i64, i64, u64, u64); 33] = [
    (-1, 13, 29, 17),
    (-1, 19, 5, 73),
    (-1, 37, 149, 53),
    (-1, 43, 13, 17),
    (-1, 67, 29, 37),
    (-1, 163, 53, 173),
    (2, -11, 23, 31),
    (-2, -11, 3, 59),
    (-2, -7, 11, 43),
    (-2, -19, 11, 17),
    (-2, 29, 59, 83),
    (-2, -43, 11, 17),
    (-2, -67, 19, 17),
    (-3, 41, 31, 73),
    (-3, -43, 31, 79),
    (-3, -67, 439, 19),
    (-3, 89, 607, 97),
    (-3, -163, 43, 61),
    (-7, -11, 23, 37),
    (-7, 13, 23, 29),
    (-7, -19, 11, 137),
    (-7, -43, 11, 53),
    (-7, 61, 107, 137),
    (-7, -163, 43, 179),
    (-11, 17, 47, 59),
    (-11, -19, 23, 5),
    (-11, -67, 47, 59),
    (-11, -163, 199, 53),
    (-19, -67, 23, 47),
    (-19, -163, 43, 47),
    (-43, -67, 23, 17),
    (-43, -163, 47, 53),
    (-67, -163, 47, 167),
];

/// `(conductor, p1, p2)` for the 7 cyclic quartic fields.
const CYCLIC: [(u64, u64, u64); 7] = [
    (5, 11, 31),
    (13, 79, 29),
    (16, 23, 17),
    (29, 7, 53),
    (37, 7, 53),
    (53, 107, 89),
    (61, 47, 73),
];

fn biquadratic_torsion(j: usize) -> u64 {
    match j {
        1..=6 => 4,
        14..=18 => 6,
        _ => 2,
    }
}

/// All 40 registry entries: `K_1` to `K_33`, then the conductors.
pub fn registry() -> Vec<FieldRegistryEntry> {
    let mut out: Vec<FieldRegistryEntry> = BIQUADRATIC
        .iter()
        .enumerate()
        .map(|(i, &(m, n, p1, p2))| FieldRegistryEntry {
            label: format!("K_{}", i + 1),
            spec: build_biquadratic(m, n).expect("registry field"),
            expected_g: biquadratic_torsion(i + 1),
            expected_p1_p2: (p1, p2),
        })
        .collect();
    out.extend(CYCLIC.iter().map(|&(f, p1, p2)| FieldRegistryEntry {
        label: f.to_string(),
        spec: build_cyclic_quartic(f).expect("registry field"),
        expected_g: if f == 5 { 10 } else { 2 },
        expected_p1_p2: (p1, p2),
    }));
    out
}

/// Labels in registry order, without building any field.
pub fn registry_labels() -> Vec<String> {
    (1..=BIQUADRATIC.len())
        .map(|j| format!("K_{j}"))
        .chain(CYCLIC.iter().map(|(f, _, _)| f.to_string()))
        .collect()
}

/// Build a single entry by label (`K_1` .. `K_33`, or a conductor such as `29`).
pub fn registry_entry(label: &str) -> Result<FieldRegistryEntry> {
    let unknown = || Error::UnknownLabel(label.to_string());
    if let Some(j) = label.strip_prefix("K_") {
        let j: usize = j.parse().map_err(|_| unknown())?;
        let &(m, n, p1, p2) = BIQUADRATIC.get(j.checked_sub(1).ok_or_else(unknown)?).ok_or_else(unknown)?;
        return Ok(FieldRegistryEntry {
            label: label.to_string(),
            spec: build_biquadratic(m, n)?,
            expected_g: biquadratic_torsion(j),
            expected_p1_p2: (p1, p2),
        });
    }
    let f: u64 = label.parse().map_err(|_| unknown())?;
    let &(_, p1, p2) = CYCLIC.iter().find(|(c, _, _)| *c == f).ok_or_else(unknown)?;
    Ok(FieldRegistryEntry {
        label: label.to_string(),
        spec: build_cyclic_quartic(f)?,
        expected_g: if f == 5 { 10 } else { 2 },
        expected_p1_p2: (p1, p2),
    })
}

/// Registry label of a field, if it is one of the forty.
pub fn label_of(kind: FieldKind) -> Option<String> {
    match kind {
        FieldKind::Biquadratic { m, n } => BIQUADRATIC
            .iter()
            .position(|&(a, b, _, _)| (a, b) == (m, n))
            .map(|i| format!("K_{}", i + 1)),
        FieldKind::CyclicQuartic { conductor } => CYCLIC
            .iter()
            .any(|&(f, _, _)| f == conductor)
            .then(|| conductor.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn registry_fields_build() {
        let all = registry();
        assert_eq!(all.len(), 40);
        assert_eq!(registry_labels(), all.iter().map(|e| e.label.clone()).collect::<Vec<_>>());
        for e in &all {
            assert!(e.spec.integral_basis_closure_check(), "{}", e.label);
            assert_eq!(label_of(e.spec.kind()).as_deref(), Some(e.label.as_str()));
        }
        let k = registry_entry("K_1").unwrap();
        assert_eq!(k.spec.kind(), FieldKind::Biquadratic { m: -1, n: 13 });
        assert_eq!(registry_entry("5").unwrap().spec.discriminant(), &BigInt::from(125));
        assert_eq!(registry_entry("13").unwrap().spec.discriminant(), &BigInt::from(2197));
        assert_eq!(registry_entry("16").unwrap().spec.discriminant(), &BigInt::from(2048));
        assert!(matches!(registry_entry("K_99"), Err(Error::UnknownLabel(_))));
        assert!(matches!(registry_entry("K_0"), Err(Error::UnknownLabel(_))));
        assert!(matches!(registry_entry("17"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn worked_example_field() {
        let k = build_biquadratic(-1, 11).unwrap();
        assert_eq!(k.theta_minpoly().to_string(), "x^4 - 20x^2 + 144");
        assert_eq!(k.discriminant(), &BigInt::from(1936));
        assert_eq!(k.index(), &BigInt::from(192));
    }
}
