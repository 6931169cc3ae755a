//! Parsers for the command-line input forms.

use schubert_core::hasse::Chss;
use schubert_core::{CoreError, LieType};

/// The space `G/P_node` from a type name such as `E6` and a node.
pub fn space(lie_type: &str, node: usize) -> Result<Chss, CoreError> {
    Chss::new(lie_type.parse::<LieType>()?, node)
}

/// A reduced word: digits (`76542`) or separated numbers (`7,6,5,4,2`).
pub fn word(text: &str) -> Result<Vec<usize>, CoreError> {
    let t = text.trim();
    let bad = || CoreError::Parse(format!("cannot parse word {text:?}"));
    if t.contains([',', ' ']) {
        t.split([',', ' ']).filter(|s| !s.is_empty()).map(|s| s.parse().map_err(|_| bad())).collect()
    } else {
        t.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect()
    }
}

/// `(a, J)` from `"1;{1,3,7,10}"`; braces and spaces are optional.
pub fn a_j(text: &str) -> Result<(i64, Vec<usize>), CoreError> {
    let bad = || CoreError::Parse(format!("expected \"a;{{j1,j2,...}}\", got {text:?}"));
    let (a, j) = text.split_once(';').ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let inner = j.trim().trim_start_matches('{').trim_end_matches('}');
    let mut j: Vec<usize> = inner
        .split([',', ' '])
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    j.sort_unstable();
    j.dedup();
    Ok((a, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn input_forms() {
        assert_eq!(word("76542").unwrap(), vec![7, 6, 5, 4, 2]);
        assert_eq!(word("10, 9 8").unwrap(), vec![10, 9, 8]);
        assert!(word("7x").is_err());
        assert_eq!(a_j("1;{1,3,7,10}").unwrap(), (1, vec![1, 3, 7, 10]));
        assert_eq!(a_j(" 0 ; {} ").unwrap(), (0, vec![]));
        assert_eq!(a_j("2;5 3").unwrap(), (2, vec![3, 5]));
        assert!(a_j("2").is_err());
        assert!(space("E6", 6).is_ok());
        assert!(space("E6", 2).is_err());
        assert!(space("Q3", 1).is_err());
    }
}
