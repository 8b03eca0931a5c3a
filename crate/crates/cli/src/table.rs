//! Closed-form tables: computed exterior degrees against the family
//! formulas for dihedral and quaternion groups, as CSV.

use wedgedeg_core::degrees::{
    dihedral_closed_form, exterior_degree_n, quaternion_closed_form, BigRational,
};
use wedgedeg_core::wedge::{exterior_square, PairConfig};

use crate::catalog;
use crate::report::rational_str;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Dihedral,
    Quaternion,
}

impl FamilyKind {
    pub fn parse(text: &str) -> Result<FamilyKind, CliError> {
        match text.to_ascii_lowercase().as_str() {
            "dihedral" => Ok(FamilyKind::Dihedral),
            "quaternion" => Ok(FamilyKind::Quaternion),
            other => Err(CliError::Input(format!(
                "unknown family {other:?}; expected dihedral or quaternion"
            ))),
        }
    }

    fn admits_order(self, order: usize) -> bool {
        match self {
            FamilyKind::Dihedral => order >= 4 && order % 2 == 0,
            FamilyKind::Quaternion => order >= 4 && order % 4 == 0,
        }
    }

    fn label(self) -> &'static str {
        match self {
            FamilyKind::Dihedral => "dihedral",
            FamilyKind::Quaternion => "quaternion",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub family: &'static str,
    /// Group order.
    pub param: usize,
    pub m: u32,
    pub computed: BigRational,
    pub closed_form: BigRational,
    pub matches: bool,
}

/// Computes `D^_m` through the full pipeline for every family member with
/// order in `lo..=hi` and compares with the closed form.
pub fn family_table(
    kind: FamilyKind,
    lo: usize,
    hi: usize,
    max_m: u32,
    config: &PairConfig,
) -> Result<Vec<TableRow>, CliError> {
    if lo > hi {
        return Err(CliError::Input(format!("empty order range {lo}..{hi}")));
    }
    if max_m == 0 {
        return Err(CliError::Input("--m must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for order in lo..=hi {
        if !kind.admits_order(order) {
            continue;
        }
        let group = match kind {
            FamilyKind::Dihedral => catalog::dihedral(order, config.coset_limit)?,
            FamilyKind::Quaternion => catalog::quaternion(order, config.coset_limit)?,
        };
        let structure = exterior_square(&group, config)?;
        for m in 1..=max_m {
            let computed = exterior_degree_n(&group, &structure, m as usize)?;
            let closed_form = match kind {
                FamilyKind::Dihedral => dihedral_closed_form(order as u64 / 2, m),
                FamilyKind::Quaternion => quaternion_closed_form(order as u64 / 4, m),
            };
            rows.push(TableRow {
                family: kind.label(),
                param: order,
                m,
                matches: computed == closed_form,
                computed,
                closed_form,
            });
        }
    }
    if rows.is_empty() {
        return Err(CliError::Input(format!(
            "no {} group has order in {lo}..={hi}",
            kind.label()
        )));
    }
    Ok(rows)
}

pub fn to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("family,param,m,computed,closed_form,match\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.family,
            row.param,
            row.m,
            rational_str(&row.computed),
            rational_str(&row.closed_form),
            row.matches
        ));
    }
    out
}
