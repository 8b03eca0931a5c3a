//! JSON degree reports. Rationals are serialized as exact `"num/den"`
//! strings, never floats.

use serde::Serialize;

use wedgedeg_core::degrees::{
    commutativity_degree_n, exterior_degree_n, unidegree_flags, verify_bounds, BigRational,
    TheoremEntry, TheoremReport,
};
use wedgedeg_core::group::FiniteGroup;
use wedgedeg_core::wedge::{exterior_square, PairConfig, TensorStructure};

use crate::catalog::{Family, ParsedGroup};
use crate::CliError;

pub fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Serialize, Clone, Debug)]
pub struct FlagsJson {
    pub unicentral: bool,
    pub unidegree: bool,
    pub multiple_unidegree: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct DegreesJson {
    /// `d_n` for `n = 1..=max_n`.
    pub d: Vec<String>,
    /// Exterior degrees for `n = 1..=max_n`.
    #[serde(rename = "Dwedge")]
    pub dwedge: Vec<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct TheoremJson {
    pub id: String,
    pub n: usize,
    pub applicable: bool,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub equality: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality_condition_met: Option<bool>,
}

impl TheoremJson {
    fn from_entry(e: &TheoremEntry) -> Self {
        TheoremJson {
            id: e.id.to_string(),
            n: e.n,
            applicable: e.applicable,
            lhs: rational_str(&e.lhs),
            rhs: rational_str(&e.rhs),
            holds: e.holds,
            equality: e.equality,
            equality_condition_met: e.equality_condition_met,
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct GroupReport {
    pub group: String,
    pub order: usize,
    pub class_count: usize,
    pub center_order: usize,
    pub exterior_center_order: usize,
    pub derived_subgroup_order: usize,
    pub schur_multiplier_order: usize,
    pub schur_multiplier_invariants: Vec<u64>,
    pub exterior_square_order: usize,
    pub capable: bool,
    /// For `Q{4n}` specs, the family parameter `n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter_n: Option<u64>,
    pub flags: FlagsJson,
    pub degrees: DegreesJson,
    pub theorems: Vec<TheoremJson>,
}

/// Everything `report` and `verify` share: the group, its exterior
/// square, and the per-level bound reports.
pub struct Analysis {
    pub group: FiniteGroup,
    pub structure: TensorStructure,
    pub bounds: Vec<TheoremReport>,
    pub report: GroupReport,
}

pub fn analyze(
    parsed: &ParsedGroup,
    max_n: usize,
    config: &PairConfig,
) -> Result<Analysis, CliError> {
    let group = parsed.group.clone();
    let structure = exterior_square(&group, config)?;
    let schur = structure.schur_multiplier()?;
    let flags = unidegree_flags(&group, &structure, max_n.max(1))?;

    let mut d = Vec::new();
    let mut dwedge = Vec::new();
    for n in 1..=max_n {
        d.push(rational_str(&commutativity_degree_n(&group, n)));
        dwedge.push(rational_str(&exterior_degree_n(&group, &structure, n)?));
    }

    let mut bounds = Vec::new();
    let mut theorems = Vec::new();
    for n in 1..=max_n {
        let report = verify_bounds(&group, &structure, n)?;
        theorems.extend(report.entries.iter().map(TheoremJson::from_entry));
        bounds.push(report);
    }

    let label = group
        .label()
        .map(str::to_owned)
        .unwrap_or_else(|| format!("order {}", group.order()));
    let report = GroupReport {
        group: label,
        order: group.order(),
        class_count: group.conjugacy_classes().count(),
        center_order: group.center().order(),
        exterior_center_order: structure.exterior_center()?.order(),
        derived_subgroup_order: group.derived_subgroup().order(),
        schur_multiplier_order: schur.multiplier_order,
        schur_multiplier_invariants: schur.abelian_invariants.clone(),
        exterior_square_order: structure.pairing_subgroup().order(),
        capable: structure.is_capable()?,
        parameter_n: match parsed.family {
            Some(Family::Quaternion { n }) => Some(n),
            _ => None,
        },
        flags: FlagsJson {
            unicentral: flags.unicentral,
            unidegree: flags.unidegree,
            multiple_unidegree: flags.multiple_unidegree,
        },
        degrees: DegreesJson { d, dwedge },
        theorems,
    };
    Ok(Analysis {
        group,
        structure,
        bounds,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_group_spec;
    use wedgedeg_core::presentation::DEFAULT_COSET_LIMIT;

    fn analyze_spec(spec: &str, max_n: usize) -> Analysis {
        let parsed = parse_group_spec(spec, DEFAULT_COSET_LIMIT).unwrap();
        analyze(&parsed, max_n, &PairConfig::default()).unwrap()
    }

    #[test]
    fn dihedral8_report_fields() {
        let a = analyze_spec("D8", 3);
        let r = &a.report;
        assert_eq!(r.group, "D8");
        assert_eq!(r.order, 8);
        assert_eq!(r.class_count, 5);
        assert_eq!(r.center_order, 2);
        assert_eq!(r.exterior_center_order, 1);
        assert_eq!(r.derived_subgroup_order, 2);
        assert_eq!(r.schur_multiplier_order, 2);
        assert_eq!(r.schur_multiplier_invariants, vec![2]);
        assert_eq!(r.exterior_square_order, 4);
        assert!(r.capable);
        assert_eq!(r.parameter_n, None);
        assert_eq!(r.degrees.d, vec!["5/8", "11/32", "23/128"]);
        assert_eq!(r.degrees.dwedge, vec!["7/16", "23/128", "79/1024"]);
        assert!(!r.flags.unidegree);
    }

    #[test]
    fn quaternion8_report_is_multiple_unidegree() {
        let a = analyze_spec("Q8", 3);
        let r = &a.report;
        assert_eq!(r.parameter_n, Some(2));
        assert_eq!(r.schur_multiplier_order, 1);
        assert!(!r.capable);
        assert!(r.flags.unicentral && r.flags.unidegree && r.flags.multiple_unidegree);
        assert_eq!(r.degrees.d, r.degrees.dwedge);
    }

    #[test]
    fn report_serializes_with_pinned_fields() {
        let a = analyze_spec("Z2xZ2", 2);
        let json = serde_json::to_value(&a.report).unwrap();
        assert_eq!(json["group"], "Z2xZ2");
        assert_eq!(json["order"], 4);
        assert_eq!(json["degrees"]["d"][0], "1/1");
        assert_eq!(json["degrees"]["Dwedge"][0], "5/8");
        assert!(json["theorems"].as_array().unwrap().len() > 10);
        assert!(json.get("parameter_n").is_none());
        let first = &json["theorems"][0];
        for key in ["id", "n", "applicable", "lhs", "rhs", "holds", "equality"] {
            assert!(first.get(key).is_some(), "theorem entry missing {key}");
        }
    }
}
