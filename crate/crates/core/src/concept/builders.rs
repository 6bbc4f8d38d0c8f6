use super::{Concept, ConceptClass};
use crate::error::{Error, Result};

/// Largest input length accepted for classical truth tables.
pub const MAX_CLASSICAL_N: usize = 16;
/// Largest input length for classes that feed the state-vector simulator.
pub const MAX_QUANTUM_N: usize = 8;

// Per-builder limits keep |C| * 2^n within a few tens of megabits.
const MAX_PARITY_N: usize = 12;
const MAX_POINTS_N: usize = 12;
const MAX_CONJUNCTION_N: usize = 8;
const MAX_ALL_FUNCTIONS_N: usize = 4;

fn check_n(n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    if n > limit {
        return Err(Error::CapExceeded {
            what: "n",
            limit,
            got: n,
        });
    }
    Ok(())
}

/// All `2^n` parities, ordered by their index `a`.
pub(super) fn parity_class(n: usize) -> Result<ConceptClass> {
    check_n(n, MAX_PARITY_N)?;
    ConceptClass::new(
        (0..1usize << n)
            .map(|a| Concept::parity(n, a))
            .collect::<Result<_>>()?,
    )
}

/// The all-zero concept followed by the point functions `e_x` in index order.
pub(super) fn points_plus_zero(n: usize) -> Result<ConceptClass> {
    check_n(n, MAX_POINTS_N)?;
    let mut concepts = vec![Concept::zero(n)?];
    for x in 0..1usize << n {
        concepts.push(Concept::point(n, x)?);
    }
    ConceptClass::new(concepts)
}

/// Every Boolean function on `n` bits; concept `k` has table entry `i` equal to bit `i` of `k`.
pub(super) fn all_functions(n: usize) -> Result<ConceptClass> {
    check_n(n, MAX_ALL_FUNCTIONS_N)?;
    let big_n = 1usize << n;
    ConceptClass::new(
        (0..1u64 << big_n)
            .map(|mask| Concept::from_fn(n, |i| (mask >> i) & 1 == 1))
            .collect::<Result<_>>()?,
    )
}

/// Conjunctions of literals with each variable absent, positive or negated
/// (`3^n` concepts, the empty conjunction being the constant 1).
///
/// Variable `k` is bit `k` of the big-endian string, i.e. `(x >> (n-1-k)) & 1`.
pub(super) fn conjunctions(n: usize) -> Result<ConceptClass> {
    check_n(n, MAX_CONJUNCTION_N)?;
    let count = 3usize.pow(n as u32);
    let mut concepts = Vec::with_capacity(count);
    for code in 0..count {
        let mut pos = 0usize;
        let mut neg = 0usize;
        let mut rest = code;
        for k in 0..n {
            let bit = 1 << (n - 1 - k);
            match rest % 3 {
                1 => pos |= bit,
                2 => neg |= bit,
                _ => {}
            }
            rest /= 3;
        }
        concepts.push(Concept::from_fn(n, |x| x & pos == pos && x & neg == 0)?);
    }
    ConceptClass::new(concepts)
}

/// The fixed set of small classes every suite and report iterates over.
/// All have `|C| <= 20`, so `γ̂` is computed exactly.
pub fn builtin_classes() -> Vec<(String, ConceptClass)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("parity n={n}"), parity_class(n).unwrap()));
    }
    for n in 1..=4 {
        out.push((format!("points_plus_zero n={n}"), points_plus_zero(n).unwrap()));
    }
    for n in 1..=2 {
        out.push((format!("all n={n}"), all_functions(n).unwrap()));
    }
    for n in 1..=2 {
        out.push((format!("conjunctions n={n}"), conjunctions(n).unwrap()));
    }
    let pair = ConceptClass::new(vec![
        Concept::parity(2, 0b01).unwrap(),
        Concept::parity(2, 0b10).unwrap(),
    ])
    .unwrap();
    out.push(("pair n=2".to_string(), pair));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tables(class: &ConceptClass) -> Vec<String> {
        class.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn parity_two_tables() {
        let class = parity_class(2).unwrap();
        assert_eq!(tables(&class), ["0000", "0101", "0011", "0110"]);
    }

    #[test]
    fn sizes() {
        assert_eq!(all_functions(1).unwrap().len(), 4);
        assert_eq!(all_functions(2).unwrap().len(), 16);
        assert_eq!(points_plus_zero(2).unwrap().len(), 5);
        assert_eq!(conjunctions(2).unwrap().len(), 9);
        assert_eq!(parity_class(4).unwrap().len(), 16);
    }

    #[test]
    fn conjunctions_one_variable() {
        let class = conjunctions(1).unwrap();
        assert_eq!(tables(&class), ["11", "01", "10"]);
    }

    #[test]
    fn out_of_range() {
        assert!(parity_class(0).is_err());
        assert!(matches!(
            all_functions(5),
            Err(Error::CapExceeded { .. })
        ));
        assert!(parity_class(13).unwrap_err().is_cap());
    }

    #[test]
    fn builtins_fit_gamma_cap() {
        for (name, class) in builtin_classes() {
            assert!(class.len() <= super::super::GAMMA_HAT_CAP, "{name}");
            assert!(class.len() >= 2, "{name}");
        }
    }
}
