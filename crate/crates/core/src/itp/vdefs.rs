use std::collections::BTreeMap;

use crate::measures::InfoExpression;

use super::{GroundSet, ItpError};

/// The eleven named auxiliary quantities v1..v11 used by the
/// rate-elimination pipeline, as information expressions over the
/// seven-variable ground set {U0, U1, U2, S1, S2, Y1, Y2}.
pub fn expand_v_definitions(
    ground: &GroundSet,
) -> Result<BTreeMap<String, InfoExpression>, ItpError> {
    for required in ["U0", "U1", "U2", "S1", "S2", "Y1", "Y2"] {
        if !ground.names().iter().any(|n| n == required) {
            return Err(ItpError::OutsideGround(required.to_string()));
        }
    }
    let i = InfoExpression::mutual;
    let v1 = || i(&["U0"], &["S1", "S2"], &[]);
    let mut map = BTreeMap::new();
    map.insert("v1".to_string(), v1());
    map.insert("v2".to_string(), i(&["U1"], &["S2"], &["S1"]));
    map.insert("v3".to_string(), i(&["U2"], &["S1"], &["S2"]));
    map.insert("v4".to_string(), v1() + i(&["U1"], &["U0", "S2"], &["S1"]));
    map.insert("v5".to_string(), v1() + i(&["U2"], &["U0", "S1"], &["S2"]));
    map.insert(
        "v6".to_string(),
        i(&["U1", "S1"], &["U2", "S2"], &[]) - i(&["S1"], &["S2"], &[]),
    );
    map.insert(
        "v7".to_string(),
        v1()
            + i(&["U1"], &["U2"], &["U0", "S1", "S2"])
            + i(&["U1"], &["U0", "S2"], &["S1"])
            + i(&["U2"], &["U0", "S1"], &["S2"]),
    );
    map.insert("v8".to_string(), i(&["U1", "S1"], &["U0", "Y1"], &[]));
    map.insert(
        "v9".to_string(),
        i(&["U0", "U1", "S1"], &["Y1"], &[]) + i(&["U0"], &["U1", "S1"], &[]),
    );
    map.insert("v10".to_string(), i(&["U2", "S2"], &["U0", "Y2"], &[]));
    map.insert(
        "v11".to_string(),
        i(&["U0", "U2", "S2"], &["Y2"], &[]) + i(&["U0"], &["U2", "S2"], &[]),
    );
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seven() -> GroundSet {
        GroundSet::new(&["U0", "U1", "U2", "S1", "S2", "Y1", "Y2"]).unwrap()
    }

    #[test]
    fn definitions_are_complete_and_canonical() {
        let defs = expand_v_definitions(&seven()).unwrap();
        assert_eq!(defs.len(), 11);
        for k in 1..=11 {
            assert!(defs.contains_key(&format!("v{k}")));
        }
        assert_eq!(
            defs["v1"],
            InfoExpression::mutual(&["U0"], &["S1", "S2"], &[])
        );
        assert_eq!(
            defs["v10"],
            InfoExpression::mutual(&["U2", "S2"], &["U0", "Y2"], &[])
        );
    }

    #[test]
    fn rejects_missing_ground_variables() {
        let small = GroundSet::new(&["U0", "U1", "S1", "S2"]).unwrap();
        assert!(expand_v_definitions(&small).is_err());
    }
}
