//! Group specs: `Z6`, `D8`, `Q8`, `S4`, `A4`, products joined with `x`,
//! or `@file.json` for explicit tables, permutation generators, or
//! presentations.
//!
//! Dihedral and quaternion groups are named by their total order (`D8`
//! is the dihedral group of order 8, `Q8` the quaternion group of order
//! 8) and are realized by coset enumeration of their two-generator
//! presentations `<a, b | a^2, b^n, (ab)^2>` and `<a, b | a^n = b^2 =
//! (ab)^2>`.

use serde::Deserialize;

use wedgedeg_core::group::FiniteGroup;
use wedgedeg_core::presentation::{coset_action_to_group, todd_coxeter, Presentation, Word};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Dihedral of order `2n`; the stored parameter is `n`.
    Dihedral { n: u64 },
    /// Generalized quaternion of order `4n`; the stored parameter is `n`.
    Quaternion { n: u64 },
}

/// A parsed group spec: the group itself, the direct factors when the
/// spec was a product, and the parametric family when it was a single
/// dihedral or quaternion token.
pub struct ParsedGroup {
    pub group: FiniteGroup,
    pub factors: Vec<FiniteGroup>,
    pub family: Option<Family>,
}

pub fn cyclic(m: usize) -> Result<FiniteGroup, CliError> {
    if m == 0 {
        return Err(CliError::Input("cyclic group needs order >= 1".into()));
    }
    let rows: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
    Ok(FiniteGroup::from_cayley_table(&rows)?.with_label(format!("Z{m}")))
}

/// Dihedral group of order `2n` from `<a, b | a^2, b^n, (ab)^2>`.
pub fn dihedral(order: usize, coset_limit: usize) -> Result<FiniteGroup, CliError> {
    if order < 4 || order % 2 != 0 {
        return Err(CliError::Input(format!(
            "dihedral spec D{order} needs an even order >= 4"
        )));
    }
    let n = order / 2;
    let relators = vec![
        Word::new(vec![1, 1])?,
        Word::new(vec![2; n])?,
        Word::new(vec![1, 2, 1, 2])?,
    ];
    let p = Presentation::new(2, relators)?;
    let t = todd_coxeter(&p, &[], coset_limit)?;
    let (g, _) = coset_action_to_group(&t, &p)?;
    debug_assert_eq!(g.order(), order);
    Ok(g.with_label(format!("D{order}")))
}

/// Generalized quaternion group of order `4n` from
/// `<a, b | a^n = b^2 = (ab)^2>`.
pub fn quaternion(order: usize, coset_limit: usize) -> Result<FiniteGroup, CliError> {
    if order < 4 || order % 4 != 0 {
        return Err(CliError::Input(format!(
            "quaternion spec Q{order} needs an order divisible by 4"
        )));
    }
    let n = order / 4;
    let mut r1: Vec<i32> = vec![1; n];
    r1.extend([-2, -2]);
    let r2 = vec![2, 2, -2, -1, -2, -1];
    let p = Presentation::new(2, vec![Word::new(r1)?, Word::new(r2)?])?;
    let t = todd_coxeter(&p, &[], coset_limit)?;
    let (g, _) = coset_action_to_group(&t, &p)?;
    debug_assert_eq!(g.order(), order);
    Ok(g.with_label(format!("Q{order}")))
}

pub fn symmetric(degree: usize) -> Result<FiniteGroup, CliError> {
    if degree == 0 || degree > 6 {
        return Err(CliError::Input(format!(
            "symmetric group S{degree} is outside the supported range 1..=6"
        )));
    }
    let gens: Vec<Vec<usize>> = if degree == 1 {
        vec![]
    } else {
        let mut swap: Vec<usize> = (0..degree).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
        vec![swap, cycle]
    };
    Ok(FiniteGroup::from_permutation_generators(degree, &gens)?
        .with_label(format!("S{degree}")))
}

pub fn alternating(degree: usize) -> Result<FiniteGroup, CliError> {
    if degree < 3 || degree > 6 {
        return Err(CliError::Input(format!(
            "alternating group A{degree} is outside the supported range 3..=6"
        )));
    }
    let mut three_cycle: Vec<usize> = (0..degree).collect();
    three_cycle[0] = 1;
    three_cycle[1] = 2;
    three_cycle[2] = 0;
    let gens: Vec<Vec<usize>> = if degree == 3 {
        vec![three_cycle]
    } else {
        // (0 1 2) and the degree-cycle (even degree) or rotated cycle
        let second: Vec<usize> = if degree % 2 == 0 {
            // product of a 2-cycle pattern keeping parity even:
            // (0 1)(2 3 ... ) composed below as one even permutation
            let mut v: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
            v.swap(0, 1);
            v
        } else {
            (0..degree).map(|i| (i + 1) % degree).collect()
        };
        vec![three_cycle, second]
    };
    let g = FiniteGroup::from_permutation_generators(degree, &gens)?;
    let expected: usize = (1..=degree).product::<usize>() / 2;
    if g.order() != expected {
        return Err(CliError::Input(format!(
            "alternating generator set for degree {degree} generated order {}",
            g.order()
        )));
    }
    Ok(g.with_label(format!("A{degree}")))
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum GroupFile {
    Cayley {
        table: Vec<Vec<usize>>,
    },
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Presentation {
        generators: usize,
        relators: Vec<Vec<i32>>,
    },
}

fn from_file(path: &str, coset_limit: usize) -> Result<FiniteGroup, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
    let parsed: GroupFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("bad group file {path}: {e}")))?;
    let group = match parsed {
        GroupFile::Cayley { table } => FiniteGroup::from_cayley_table(&table)?,
        GroupFile::Perm { degree, generators } => {
            FiniteGroup::from_permutation_generators(degree, &generators)?
        }
        GroupFile::Presentation { generators, relators } => {
            let words = relators
                .into_iter()
                .map(Word::new)
                .collect::<Result<Vec<_>, _>>()?;
            let p = Presentation::new(generators, words)?;
            let t = todd_coxeter(&p, &[], coset_limit)?;
            coset_action_to_group(&t, &p)?.0
        }
    };
    let name = path.rsplit('/').next().unwrap_or(path);
    Ok(group.with_label(name))
}

fn parse_token(token: &str, coset_limit: usize) -> Result<FiniteGroup, CliError> {
    let bad = || CliError::Input(format!("unrecognized group token {token:?}"));
    let mut chars = token.chars();
    let head = chars.next().ok_or_else(bad)?;
    let digits: String = chars.collect();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let value: usize = digits.parse().map_err(|_| bad())?;
    match head.to_ascii_uppercase() {
        'Z' => cyclic(value),
        'D' => dihedral(value, coset_limit),
        'Q' => quaternion(value, coset_limit),
        'S' => symmetric(value),
        'A' => alternating(value),
        _ => Err(bad()),
    }
}

/// Parses a group spec. Element numbering is deterministic: catalog
/// groups fix it by construction, and direct products use
/// `index = i * |H| + j` left to right.
pub fn parse_group_spec(spec: &str, coset_limit: usize) -> Result<ParsedGroup, CliError> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(CliError::Input("empty group spec".into()));
    }
    if let Some(path) = spec.strip_prefix('@') {
        let group = from_file(path, coset_limit)?;
        return Ok(ParsedGroup {
            group,
            factors: Vec::new(),
            family: None,
        });
    }
    let tokens: Vec<&str> = spec.split(['x', 'X']).collect();
    let factors = tokens
        .iter()
        .map(|t| parse_token(t, coset_limit))
        .collect::<Result<Vec<_>, _>>()?;
    if factors.len() == 1 {
        let group = factors.into_iter().next().expect("one factor");
        let family = match group.label() {
            Some(l) if l.starts_with('D') => Some(Family::Dihedral {
                n: group.order() as u64 / 2,
            }),
            Some(l) if l.starts_with('Q') => Some(Family::Quaternion {
                n: group.order() as u64 / 4,
            }),
            _ => None,
        };
        return Ok(ParsedGroup {
            group,
            factors: Vec::new(),
            family,
        });
    }
    let mut product = factors[0].clone();
    for f in &factors[1..] {
        product = product.direct_product(f);
    }
    Ok(ParsedGroup {
        group: product,
        factors,
        family: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use wedgedeg_core::presentation::DEFAULT_COSET_LIMIT;

    fn parse(spec: &str) -> ParsedGroup {
        parse_group_spec(spec, DEFAULT_COSET_LIMIT).unwrap()
    }

    #[test]
    fn cyclic_and_product_specs() {
        assert_eq!(parse("Z6").group.order(), 6);
        let p = parse("Z2xZ2");
        assert_eq!(p.group.order(), 4);
        assert_eq!(p.factors.len(), 2);
        assert_eq!(p.group.label(), Some("Z2xZ2"));
        assert_eq!(parse("Z3xD8").group.order(), 24);
    }

    #[test]
    fn dihedral_spec() {
        let p = parse("D8");
        assert_eq!(p.group.order(), 8);
        assert_eq!(p.group.conjugacy_classes().count(), 5);
        assert_eq!(p.family, Some(Family::Dihedral { n: 4 }));
    }

    #[test]
    fn quaternion_spec() {
        let p = parse("Q8");
        assert_eq!(p.group.order(), 8);
        assert!(!p.group.is_abelian());
        let involutions = (0..8).filter(|&x| p.group.element_order(x) == 2).count();
        assert_eq!(involutions, 1, "Q8 has a unique element of order 2");
        assert_eq!(p.family, Some(Family::Quaternion { n: 2 }));
    }

    #[test]
    fn symmetric_and_alternating_specs() {
        assert_eq!(parse("S3").group.order(), 6);
        assert_eq!(parse("S4").group.order(), 24);
        let a4 = parse("A4");
        assert_eq!(a4.group.order(), 12);
        assert!(!a4.group.is_abelian());
    }

    #[test]
    fn rejected_specs() {
        for bad in ["", "D7", "D2", "Q6", "Q2", "Z0", "S9", "A2", "W5", "Zx", "Z-3"] {
            assert!(
                parse_group_spec(bad, DEFAULT_COSET_LIMIT).is_err(),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn file_specs() {
        let dir = tempfile::tempdir().unwrap();
        let cayley = dir.path().join("z3.json");
        std::fs::write(&cayley, r#"{"type":"cayley","table":[[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap();
        let g = parse_group_spec(&format!("@{}", cayley.display()), DEFAULT_COSET_LIMIT).unwrap();
        assert_eq!(g.group.order(), 3);

        let perm = dir.path().join("s3.json");
        std::fs::write(
            &perm,
            r#"{"type":"perm","degree":3,"generators":[[1,0,2],[1,2,0]]}"#,
        )
        .unwrap();
        let g = parse_group_spec(&format!("@{}", perm.display()), DEFAULT_COSET_LIMIT).unwrap();
        assert_eq!(g.group.order(), 6);

        let pres = dir.path().join("d8.json");
        std::fs::write(
            &pres,
            r#"{"type":"presentation","generators":2,"relators":[[1,1,1,1],[2,2],[1,2,1,2]]}"#,
        )
        .unwrap();
        let g = parse_group_spec(&format!("@{}", pres.display()), DEFAULT_COSET_LIMIT).unwrap();
        assert_eq!(g.group.order(), 8);

        assert!(parse_group_spec("@/no/such/file.json", DEFAULT_COSET_LIMIT).is_err());
    }

    #[test]
    fn quaternion_of_parameter_one_is_cyclic() {
        let q4 = parse("Q4");
        assert_eq!(q4.group.order(), 4);
        assert!(q4.group.is_cyclic());
    }
}
