//! The `verify` command: evaluates every applicable bound, the quotient
//! monotonicity law over all normal subgroups, coprime product
//! multiplicativity, and (optionally) the independent oracles —
//! brute-force degree enumeration, bar-complex homology for the Schur
//! multiplier, and the family closed forms.

use num_integer::gcd;

use wedgedeg_core::degrees::{
    brute_force_degree, commutativity_degree_n, dihedral_closed_form, exterior_degree_n,
    quaternion_closed_form, verify_quotient_monotonicity, BigRational, RelationKind,
    DEFAULT_BRUTE_FORCE_CAP,
};
use wedgedeg_core::group::FiniteGroup;
use wedgedeg_core::homology::{bar_h1, bar_h2, DEFAULT_BAR_CAP};
use wedgedeg_core::wedge::{exterior_square, PairConfig};
use wedgedeg_core::Error;

use crate::catalog::{Family, ParsedGroup};
use crate::report::{analyze, rational_str, Analysis};
use crate::CliError;

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            ok: true,
            detail: detail.into(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            ok: false,
            detail: detail.into(),
        }
    }

    fn from(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            CheckResult::pass(name, detail)
        } else {
            CheckResult::fail(name, detail)
        }
    }
}

pub struct VerifyOutcome {
    pub analysis: Analysis,
    pub checks: Vec<CheckResult>,
}

impl VerifyOutcome {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

pub fn run_verify(
    parsed: &ParsedGroup,
    max_n: usize,
    oracle: bool,
    config: &PairConfig,
) -> Result<VerifyOutcome, CliError> {
    let analysis = analyze(parsed, max_n, config)?;
    let checks = run_checks(parsed, &analysis, max_n, oracle, config)?;
    Ok(VerifyOutcome { analysis, checks })
}

/// The checks behind `verify`, against an already-built analysis.
pub fn run_checks(
    parsed: &ParsedGroup,
    analysis: &Analysis,
    max_n: usize,
    oracle: bool,
    config: &PairConfig,
) -> Result<Vec<CheckResult>, CliError> {
    let group = &analysis.group;
    let structure = &analysis.structure;
    let mut checks = Vec::new();

    for (i, report) in analysis.bounds.iter().enumerate() {
        let n = i + 1;
        let violations = report.violations();
        let detail = if violations.is_empty() {
            format!("{} bounds evaluated", report.entries.len())
        } else {
            violations
                .iter()
                .map(|e| {
                    format!(
                        "{} lhs {} rhs {} equality {} condition {:?}",
                        e.id,
                        rational_str(&e.lhs),
                        rational_str(&e.rhs),
                        e.equality,
                        e.equality_condition_met
                    )
                })
                .collect::<Vec<_>>()
                .join("; ")
        };
        checks.push(CheckResult::from(
            format!("bounds_n{n}"),
            violations.is_empty(),
            detail,
        ));
    }

    checks.push(quotient_monotonicity_check(group, max_n)?);

    checks.push(coprime_multiplicativity_check(parsed, analysis, max_n, config)?);

    checks.push(flag_implications_check(analysis));

    if oracle {
        checks.extend(brute_force_checks(group, structure, max_n)?);
        checks.push(homology_multiplier_check(group, analysis)?);
        checks.push(abelianization_check(group)?);
        checks.push(degenerate_values_check(group, analysis, max_n)?);
        if let Some(check) = closed_form_check(parsed, analysis, max_n) {
            checks.push(check);
        }
    }

    Ok(checks)
}

fn quotient_monotonicity_check(
    group: &FiniteGroup,
    max_n: usize,
) -> Result<CheckResult, CliError> {
    let normals = group.normal_subgroups();
    let mut failures = Vec::new();
    let mut compared = 0;
    for normal in &normals {
        let checks = verify_quotient_monotonicity(group, normal, max_n)?;
        for c in &checks {
            compared += 1;
            if !c.passes() {
                failures.push(format!(
                    "|N|={} n={} d_n(G)={} d_n(G/N)={} equality_expected={}",
                    normal.order(),
                    c.n,
                    rational_str(&c.group_value),
                    rational_str(&c.quotient_value),
                    c.equality_expected
                ));
            }
        }
    }
    Ok(CheckResult::from(
        "quotient_monotonicity",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} comparisons over {} normal subgroups", compared, normals.len())
        } else {
            failures.join("; ")
        },
    ))
}

fn coprime_multiplicativity_check(
    parsed: &ParsedGroup,
    analysis: &Analysis,
    max_n: usize,
    config: &PairConfig,
) -> Result<CheckResult, CliError> {
    let name = "coprime_multiplicativity";
    if parsed.factors.len() < 2 {
        return Ok(CheckResult::pass(name, "not a product spec; skipped"));
    }
    let head = parsed.factors[0].clone();
    let mut tail = parsed.factors[1].clone();
    for f in &parsed.factors[2..] {
        tail = tail.direct_product(f);
    }
    if gcd(head.order(), tail.order()) != 1 {
        return Ok(CheckResult::pass(
            name,
            format!(
                "factor orders {} and {} are not coprime; skipped",
                head.order(),
                tail.order()
            ),
        ));
    }
    let head_structure = exterior_square(&head, config)?;
    let tail_structure = exterior_square(&tail, config)?;
    let mut failures = Vec::new();
    for n in 1..=max_n {
        let product_value = exterior_degree_n(&analysis.group, &analysis.structure, n)?;
        let factor_value = exterior_degree_n(&head, &head_structure, n)?
            * exterior_degree_n(&tail, &tail_structure, n)?;
        if product_value != factor_value {
            failures.push(format!(
                "n={n}: product {} != factors {}",
                rational_str(&product_value),
                rational_str(&factor_value)
            ));
        }
    }
    Ok(CheckResult::from(
        name,
        failures.is_empty(),
        if failures.is_empty() {
            format!("checked n <= {max_n}")
        } else {
            failures.join("; ")
        },
    ))
}

/// Equal first degrees force equal centralizer pairs, so a unidegree
/// group is multiple unidegree. (Unicentral does not imply unidegree:
/// S4 has trivial center and exterior center but a multiplier that
/// separates commuting pairs.)
fn flag_implications_check(analysis: &Analysis) -> CheckResult {
    let f = &analysis.report.flags;
    let ok = !f.unidegree || f.multiple_unidegree;
    CheckResult::from(
        "flag_implications",
        ok,
        format!(
            "unicentral={} unidegree={} multiple_unidegree={}",
            f.unicentral, f.unidegree, f.multiple_unidegree
        ),
    )
}

fn brute_force_checks(
    group: &FiniteGroup,
    structure: &wedgedeg_core::wedge::TensorStructure,
    max_n: usize,
) -> Result<Vec<CheckResult>, CliError> {
    let mut checks = Vec::new();
    for (kind, label) in [
        (RelationKind::Commuting, "brute_force_commuting"),
        (RelationKind::WedgeTrivial, "brute_force_exterior"),
    ] {
        let mut failures = Vec::new();
        let mut ran = 0;
        for n in 1..=max_n {
            let s = match kind {
                RelationKind::Commuting => None,
                RelationKind::WedgeTrivial => Some(structure),
            };
            let slow = match brute_force_degree(group, n, kind, s, DEFAULT_BRUTE_FORCE_CAP) {
                Ok(v) => v,
                Err(Error::TooLarge { .. }) => continue,
                Err(e) => return Err(e.into()),
            };
            ran += 1;
            let fast = match kind {
                RelationKind::Commuting => commutativity_degree_n(group, n),
                RelationKind::WedgeTrivial => exterior_degree_n(group, structure, n)?,
            };
            if fast != slow {
                failures.push(format!(
                    "n={n}: recursion {} != enumeration {}",
                    rational_str(&fast),
                    rational_str(&slow)
                ));
            }
        }
        checks.push(CheckResult::from(
            label,
            failures.is_empty(),
            if failures.is_empty() {
                format!("{ran} levels enumerated")
            } else {
                failures.join("; ")
            },
        ));
    }
    Ok(checks)
}

fn homology_multiplier_check(
    group: &FiniteGroup,
    analysis: &Analysis,
) -> Result<CheckResult, CliError> {
    let name = "multiplier_vs_homology";
    if group.order() > DEFAULT_BAR_CAP {
        return Ok(CheckResult::pass(
            name,
            format!("order {} above bar-complex cap; skipped", group.order()),
        ));
    }
    let h2 = bar_h2(group)?;
    let report = &analysis.report;
    let invariants_match = h2 == report.schur_multiplier_invariants;
    let product: u64 = h2.iter().product::<u64>().max(1);
    let order_match = product == report.schur_multiplier_order as u64;
    let factorization = report.exterior_square_order
        == report.schur_multiplier_order * report.derived_subgroup_order;
    Ok(CheckResult::from(
        name,
        invariants_match && order_match && factorization,
        format!(
            "homology {:?} vs multiplier {:?}; |wedge square| {} = |M| {} * |G'| {}: {}",
            h2,
            report.schur_multiplier_invariants,
            report.exterior_square_order,
            report.schur_multiplier_order,
            report.derived_subgroup_order,
            factorization
        ),
    ))
}

fn abelianization_check(group: &FiniteGroup) -> Result<CheckResult, CliError> {
    let name = "homology_vs_abelianization";
    if group.order() > DEFAULT_BAR_CAP {
        return Ok(CheckResult::pass(name, "above bar-complex cap; skipped"));
    }
    let h1 = bar_h1(group)?;
    let quotient = group.quotient(&group.derived_subgroup())?;
    let expected: Vec<u64> = quotient
        .abelian_invariant_factors()?
        .into_iter()
        .filter(|&d| d > 1)
        .collect();
    Ok(CheckResult::from(
        name,
        h1 == expected,
        format!("homology {h1:?} vs abelianization {expected:?}"),
    ))
}

fn degenerate_values_check(
    group: &FiniteGroup,
    analysis: &Analysis,
    max_n: usize,
) -> Result<CheckResult, CliError> {
    let one = num_traits::One::one();
    let d: BigRational = commutativity_degree_n(group, max_n);
    let dw = exterior_degree_n(group, &analysis.structure, max_n)?;
    let ok = (group.is_abelian() == (d == one)) && (group.is_cyclic() == (dw == one));
    Ok(CheckResult::from(
        "degenerate_values",
        ok,
        format!(
            "abelian={} d_{max_n}={}; cyclic={} Dwedge_{max_n}={}",
            group.is_abelian(),
            rational_str(&d),
            group.is_cyclic(),
            rational_str(&dw)
        ),
    ))
}

fn closed_form_check(
    parsed: &ParsedGroup,
    analysis: &Analysis,
    max_n: usize,
) -> Option<CheckResult> {
    let family = parsed.family?;
    let mut failures = Vec::new();
    for m in 1..=max_n {
        let computed = exterior_degree_n(&analysis.group, &analysis.structure, m).ok()?;
        let expected = match family {
            Family::Dihedral { n } => dihedral_closed_form(n, m as u32),
            Family::Quaternion { n } => quaternion_closed_form(n, m as u32),
        };
        if computed != expected {
            failures.push(format!(
                "m={m}: computed {} != closed form {}",
                rational_str(&computed),
                rational_str(&expected)
            ));
        }
        if let Family::Quaternion { .. } = family {
            let d = commutativity_degree_n(&analysis.group, m);
            if d != computed {
                failures.push(format!(
                    "m={m}: d {} != exterior degree {}",
                    rational_str(&d),
                    rational_str(&computed)
                ));
            }
        }
    }
    Some(CheckResult::from(
        "family_closed_form",
        failures.is_empty(),
        if failures.is_empty() {
            format!("matched for m <= {max_n}")
        } else {
            failures.join("; ")
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_group_spec;
    use wedgedeg_core::presentation::DEFAULT_COSET_LIMIT;

    fn verify_spec(spec: &str, max_n: usize) -> VerifyOutcome {
        let parsed = parse_group_spec(spec, DEFAULT_COSET_LIMIT).unwrap();
        run_verify(&parsed, max_n, true, &PairConfig::default()).unwrap()
    }

    #[test]
    fn dihedral8_verifies_clean() {
        let outcome = verify_spec("D8", 3);
        assert!(outcome.all_ok(), "failed checks: {:?}",
            outcome.checks.iter().filter(|c| !c.ok).collect::<Vec<_>>());
        assert!(outcome
            .checks
            .iter()
            .any(|c| c.name == "family_closed_form"));
    }

    #[test]
    fn quaternion8_verifies_clean() {
        let outcome = verify_spec("Q8", 3);
        assert!(outcome.all_ok(), "failed checks: {:?}",
            outcome.checks.iter().filter(|c| !c.ok).collect::<Vec<_>>());
    }

    #[test]
    fn coprime_product_verifies() {
        let outcome = verify_spec("Z3xD8", 2);
        assert!(outcome.all_ok(), "failed checks: {:?}",
            outcome.checks.iter().filter(|c| !c.ok).collect::<Vec<_>>());
        let c = outcome
            .checks
            .iter()
            .find(|c| c.name == "coprime_multiplicativity")
            .unwrap();
        assert!(c.detail.contains("checked"));
    }

    #[test]
    fn non_coprime_product_is_skipped_not_failed() {
        let outcome = verify_spec("Z3xS3", 1);
        let c = outcome
            .checks
            .iter()
            .find(|c| c.name == "coprime_multiplicativity")
            .unwrap();
        assert!(c.ok && c.detail.contains("not coprime"));
    }
}
