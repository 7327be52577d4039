//! Symbolic sets of non-negative integers used for the gap, difference and
//! value components of a pattern.
//!
//! A set is a finite union of atoms. Every atom has decidable membership, so
//! `contains` terminates for any input.

use std::fmt;

/// One building block of an [`IntSet`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// The positive integers `{1, 2, 3, ...}`.
    AllPositive,
    /// The even numbers including zero `{0, 2, 4, ...}`.
    Evens,
    /// The odd numbers `{1, 3, 5, ...}`.
    Odds,
    /// Positive multiples of `k`, with `k >= 2`.
    Multiples(u32),
    /// An explicit sorted, duplicate-free list.
    Finite(Vec<u32>),
}

impl Atom {
    pub fn contains(&self, x: u32) -> bool {
        match self {
            Atom::AllPositive => x >= 1,
            Atom::Evens => x.is_multiple_of(2),
            Atom::Odds => x % 2 == 1,
            Atom::Multiples(k) => x >= 1 && x.is_multiple_of(*k),
            Atom::Finite(xs) => xs.binary_search(&x).is_ok(),
        }
    }
}

/// A finite union of [`Atom`]s.
///
/// Construction normalises the representation: all finite atoms are merged
/// into a single sorted list placed last, `Multiples(1)` becomes
/// `AllPositive`, and repeated atoms are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntSet {
    atoms: Vec<Atom>,
}

impl IntSet {
    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let mut infinite: Vec<Atom> = Vec::new();
        let mut finite: Vec<u32> = Vec::new();
        for atom in atoms {
            let atom = match atom {
                Atom::Multiples(0) | Atom::Multiples(1) => Atom::AllPositive,
                other => other,
            };
            match atom {
                Atom::Finite(xs) => finite.extend(xs),
                other => {
                    if !infinite.contains(&other) {
                        infinite.push(other);
                    }
                }
            }
        }
        finite.sort_unstable();
        finite.dedup();
        if !finite.is_empty() {
            infinite.push(Atom::Finite(finite));
        }
        IntSet { atoms: infinite }
    }

    pub fn positive() -> Self {
        Self::from_atoms([Atom::AllPositive])
    }

    pub fn evens() -> Self {
        Self::from_atoms([Atom::Evens])
    }

    pub fn odds() -> Self {
        Self::from_atoms([Atom::Odds])
    }

    /// Positive multiples of `k`. `k <= 1` gives the positive integers.
    pub fn multiples(k: u32) -> Self {
        Self::from_atoms([Atom::Multiples(k)])
    }

    pub fn finite(values: impl IntoIterator<Item = u32>) -> Self {
        Self::from_atoms([Atom::Finite(values.into_iter().collect())])
    }

    pub fn singleton(x: u32) -> Self {
        Self::finite([x])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.atoms.iter().any(|a| a.contains(x))
    }

    pub fn union(&self, other: &IntSet) -> IntSet {
        IntSet::from_atoms(self.atoms.iter().chain(other.atoms.iter()).cloned())
    }

    /// True when the set contains every positive integer.
    ///
    /// Recognises `P` itself and `O` combined with `E` or `2P`.
    pub fn covers_all_positive(&self) -> bool {
        let has = |a: &Atom| self.atoms.contains(a);
        has(&Atom::AllPositive) || (has(&Atom::Odds) && (has(&Atom::Evens) || has(&Atom::Multiples(2))))
    }

    /// The elements of the set when every atom is finite, otherwise `None`.
    pub fn as_finite(&self) -> Option<&[u32]> {
        match self.atoms.as_slice() {
            [] => Some(&[]),
            [Atom::Finite(xs)] => Some(xs),
            _ => None,
        }
    }

    /// Largest element of a finite set.
    pub fn finite_max(&self) -> Option<u32> {
        self.as_finite().and_then(|xs| xs.last().copied())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::AllPositive => f.write_str("P"),
            Atom::Evens => f.write_str("E"),
            Atom::Odds => f.write_str("O"),
            Atom::Multiples(k) => write!(f, "{k}P"),
            Atom::Finite(xs) => {
                f.write_str("{")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// Renders in the pattern notation, atoms joined by `+`.
impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn evens_include_zero() {
        assert!(IntSet::evens().contains(0));
        assert!(!IntSet::positive().contains(0));
        assert!(!IntSet::odds().contains(0));
        assert!(!IntSet::multiples(4).contains(0));
    }

    #[test]
    fn multiples_membership() {
        let s = IntSet::multiples(4);
        assert!(!s.contains(6));
        assert!(s.contains(8));
        assert_eq!(IntSet::multiples(1), IntSet::positive());
    }

    #[test]
    fn union_examples() {
        let eo = IntSet::evens().union(&IntSet::odds());
        assert!((0..200).all(|x| eo.contains(x)));

        let s = IntSet::finite([1, 3]).union(&IntSet::finite([3, 4]));
        let members: Vec<u32> = (0..20).filter(|&x| s.contains(x)).collect();
        assert_eq!(members, vec![1, 3, 4]);
        assert_eq!(s.as_finite(), Some(&[1, 3, 4][..]));

        let p5 = IntSet::positive().union(&IntSet::singleton(5));
        assert!((1..200).all(|x| p5.contains(x) == IntSet::positive().contains(x)));
    }

    #[test]
    fn covers_all_positive() {
        assert!(IntSet::positive().covers_all_positive());
        assert!(IntSet::odds().union(&IntSet::evens()).covers_all_positive());
        assert!(IntSet::odds().union(&IntSet::multiples(2)).covers_all_positive());
        assert!(!IntSet::odds().covers_all_positive());
        assert!(!IntSet::finite([1, 2]).covers_all_positive());
    }

    #[test]
    fn display() {
        let s = IntSet::from_atoms([Atom::Finite(vec![4, 1]), Atom::Evens, Atom::Multiples(3)]);
        assert_eq!(s.to_string(), "E+3P+{1,4}");
    }

    fn atom_strategy() -> impl Strategy<Value = Atom> {
        prop_oneof![
            Just(Atom::AllPositive),
            Just(Atom::Evens),
            Just(Atom::Odds),
            (2u32..9).prop_map(Atom::Multiples),
            proptest::collection::btree_set(0u32..40, 1..5)
                .prop_map(|s| Atom::Finite(s.into_iter().collect())),
        ]
    }

    // plain arithmetic, independent of the implementation
    #[allow(clippy::manual_is_multiple_of, clippy::manual_contains)]
    fn direct(atom: &Atom, x: u32) -> bool {
        match atom {
            Atom::AllPositive => x > 0,
            Atom::Evens => x % 2 == 0,
            Atom::Odds => x % 2 != 0,
            Atom::Multiples(k) => x != 0 && x % k == 0,
            Atom::Finite(xs) => xs.iter().any(|&y| y == x),
        }
    }

    proptest! {
        #[test]
        fn atoms_match_arithmetic(atom in atom_strategy()) {
            let set = IntSet::from_atoms([atom.clone()]);
            for x in 0..=1000 {
                prop_assert_eq!(set.contains(x), direct(&atom, x));
            }
        }

        #[test]
        fn union_commutative_idempotent(
            a in proptest::collection::vec(atom_strategy(), 1..4),
            b in proptest::collection::vec(atom_strategy(), 1..4),
        ) {
            let a = IntSet::from_atoms(a);
            let b = IntSet::from_atoms(b);
            let ab = a.union(&b);
            let ba = b.union(&a);
            let aa = a.union(&a);
            for x in 0..=300 {
                prop_assert_eq!(ab.contains(x), a.contains(x) || b.contains(x));
                prop_assert_eq!(ab.contains(x), ba.contains(x));
                prop_assert_eq!(aa.contains(x), a.contains(x));
            }
        }
    }
}
