//! Finite groups as validated Cayley tables, plus closure utilities.

mod set;
mod spec;

pub use set::ElementSet;
pub use spec::{build_group, GroupSpec};

use thiserror::Error;

/// Largest group order accepted by validation and the builders.
///
/// Table validation is a full O(n³) associativity sweep; the cap keeps that
/// (and the element-indexed tables downstream) comfortably in budget.
pub const MAX_ORDER: usize = 1024;

/// Everything that can go wrong building or validating a group.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("operation is not associative: ({i} {j}) {k} != {i} ({j} {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("{} {index} is not a permutation of 0..n", if *row { "row" } else { "column" })]
    NotLatinSquare { index: usize, row: bool },
    #[error("element {element} has no two-sided inverse")]
    MissingInverse { element: usize },
    #[error("group order {order} exceeds the cap of {MAX_ORDER}")]
    OrderCapExceeded { order: usize },
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("{root} is not a primitive root modulo {modulus}")]
    NotPrimitiveRoot { root: usize, modulus: usize },
    #[error("invalid semidirect action: {0}")]
    BadAction(String),
    #[error("malformed multiplication table: {0}")]
    BadTable(String),
    #[error("bad construction parameter: {0}")]
    BadParameter(String),
}

/// A finite group, stored as a row-major Cayley table over indices `0..order`.
///
/// The identity element is always index 0 (validation renumbers if needed).
/// Elements carry display labels for reports and interactive play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    labels: Vec<String>,
    name: String,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    /// The product `a · b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    /// Index of the identity element; always 0.
    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// Display label of element `a`.
    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// Human-readable construction name, e.g. `Z6`, `D4`, `F13`, `Z2xZ4`.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// FNV-1a digest of the order and multiplication table. Two groups with
    /// equal fingerprints are byte-identical presentations; used by caches to
    /// notice when they are handed a different group.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |v: u64| {
            for byte in v.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x1000_0000_01b3);
            }
        };
        eat(self.order as u64);
        for &v in &self.table {
            eat(v as u64);
        }
        h
    }

    /// Resolves an element by display label, or by decimal index as fallback.
    pub fn element_by_label(&self, text: &str) -> Option<usize> {
        if let Some(i) = self.labels.iter().position(|l| l == text) {
            return Some(i);
        }
        text.parse::<usize>().ok().filter(|&i| i < self.order)
    }
}

/// Validates a raw multiplication table and wraps it up as a [`FiniteGroup`].
///
/// `entries` is row-major with `n*n` values in `0..n`. Checks, in order:
/// order cap, Latin-square rows and columns, the two-sided identity
/// (verified if `claimed_identity` is given, discovered otherwise), two-sided
/// inverses, and full associativity. If the identity is not element 0,
/// elements are renumbered by swapping it with 0 (labels follow their
/// elements).
pub fn validate_group(
    n: usize,
    entries: &[usize],
    claimed_identity: Option<usize>,
    labels: Option<Vec<String>>,
    name: String,
) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::BadTable("order must be at least 1".into()));
    }
    if n > MAX_ORDER {
        return Err(GroupError::OrderCapExceeded { order: n });
    }
    if entries.len() != n * n {
        return Err(GroupError::BadTable(format!(
            "expected {} entries for order {n}, got {}",
            n * n,
            entries.len()
        )));
    }

    // Latin square: every row and every column is a permutation of 0..n.
    let mut seen = vec![false; n];
    for r in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for c in 0..n {
            let v = entries[r * n + c];
            if v >= n || seen[v] {
                return Err(GroupError::NotLatinSquare {
                    index: r,
                    row: true,
                });
            }
            seen[v] = true;
        }
    }
    for c in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for r in 0..n {
            let v = entries[r * n + c];
            if seen[v] {
                return Err(GroupError::NotLatinSquare {
                    index: c,
                    row: false,
                });
            }
            seen[v] = true;
        }
    }

    let is_identity =
        |e: usize| (0..n).all(|x| entries[e * n + x] == x && entries[x * n + e] == x);
    let identity = match claimed_identity {
        Some(e) => {
            if e >= n || !is_identity(e) {
                return Err(GroupError::NoIdentity);
            }
            e
        }
        None => (0..n).find(|&e| is_identity(e)).ok_or(GroupError::NoIdentity)?,
    };

    // Renumber so the identity is element 0 (swap is an involution).
    let perm: Vec<usize> = (0..n)
        .map(|x| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        })
        .collect();
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            table[perm[a] * n + perm[b]] = perm[entries[a * n + b]] as u16;
        }
    }

    let mut inverse = vec![u16::MAX; n];
    for a in 0..n {
        let b = (0..n)
            .find(|&b| table[a * n + b] == 0 && table[b * n + a] == 0)
            .ok_or(GroupError::MissingInverse {
                // Report in the caller's numbering.
                element: perm[a],
            })?;
        inverse[a] = b as u16;
    }

    for i in 0..n {
        for j in 0..n {
            let ij = table[i * n + j] as usize;
            for k in 0..n {
                let jk = table[j * n + k] as usize;
                if table[ij * n + k] != table[i * n + jk] {
                    return Err(GroupError::NotAssociative {
                        i: perm[i],
                        j: perm[j],
                        k: perm[k],
                    });
                }
            }
        }
    }

    let labels = match labels {
        Some(given) => {
            if given.len() != n {
                return Err(GroupError::BadTable(format!(
                    "expected {n} labels, got {}",
                    given.len()
                )));
            }
            let mut relabeled = vec![String::new(); n];
            for (x, l) in given.into_iter().enumerate() {
                relabeled[perm[x]] = l;
            }
            relabeled
        }
        None => (0..n).map(|x| perm.iter().position(|&p| p == x).unwrap().to_string()).collect(),
    };

    Ok(FiniteGroup {
        order: n,
        table,
        inverse,
        labels,
        name,
    })
}

/// The subgroup generated by `seed`: the closure of `seed ∪ {identity}` under
/// products and inverses.
pub fn subgroup_generated(g: &FiniteGroup, seed: &ElementSet) -> ElementSet {
    assert_eq!(seed.universe(), g.order(), "seed set from a different group");
    let n = g.order();
    let mut members = ElementSet::empty(n);
    let mut list: Vec<usize> = Vec::with_capacity(n);
    members.insert(g.identity());
    list.push(g.identity());
    for x in seed.iter() {
        if members.insert(x) {
            list.push(x);
        }
    }
    // Worklist closure: when `a` is processed it multiplies against every
    // element already listed; pairs involving later arrivals are covered when
    // those arrivals are processed themselves.
    let mut i = 0;
    while i < list.len() {
        let a = list[i];
        if members.insert(g.inverse(a)) {
            list.push(g.inverse(a));
        }
        let upto = list.len();
        for j in 0..upto {
            let b = list[j];
            for p in [g.mul(a, b), g.mul(b, a)] {
                if members.insert(p) {
                    list.push(p);
                }
            }
        }
        i += 1;
    }
    members
}

/// Does `seed` generate the whole group?
pub fn is_generating(g: &FiniteGroup, seed: &ElementSet) -> bool {
    subgroup_generated(g, seed).len() == g.order()
}

/// Multiplicative order of element `a`.
pub fn element_order(g: &FiniteGroup, a: usize) -> usize {
    let mut x = a;
    let mut k = 1;
    while x != g.identity() {
        x = g.mul(x, a);
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        build_group(&GroupSpec::Cyclic(n)).unwrap()
    }

    #[test]
    fn validate_accepts_legit_table_and_normalizes_identity() {
        // Z3 written with identity at index 2 (elements 0,1,2 are "1+?"): use
        // the table of addition mod 3 relabeled by the permutation (0 1 2).
        // x ⊕ y = σ(σ⁻¹(x) + σ⁻¹(y)) with σ = (0→1, 1→2, 2→0); identity is σ(0)=1.
        let sigma = [1usize, 2, 0];
        let inv_sigma = [2usize, 0, 1];
        let mut entries = vec![0usize; 9];
        for x in 0..3 {
            for y in 0..3 {
                entries[x * 3 + y] = sigma[(inv_sigma[x] + inv_sigma[y]) % 3];
            }
        }
        let g = validate_group(3, &entries, None, None, "relabeled-Z3".into()).unwrap();
        assert_eq!(g.identity(), 0);
        assert_eq!(g.order(), 3);
        // Still Z3: some element has order 3.
        assert!((0..3).any(|a| element_order(&g, a) == 3));
        // Labels track the original numbering: the original identity was 1.
        assert_eq!(g.label(0), "1");
    }

    #[test]
    fn claimed_identity_is_verified() {
        let entries = vec![0, 1, 1, 0];
        assert!(validate_group(2, &entries, Some(0), None, "z2".into()).is_ok());
        assert_eq!(
            validate_group(2, &entries, Some(1), None, "z2".into()),
            Err(GroupError::NoIdentity)
        );
        assert_eq!(
            validate_group(2, &entries, Some(9), None, "z2".into()),
            Err(GroupError::NoIdentity)
        );
    }

    #[test]
    fn validate_rejects_non_latin_rows() {
        let entries = vec![0, 0, 1, 1];
        assert!(matches!(
            validate_group(2, &entries, None, None, "bad".into()),
            Err(GroupError::NotLatinSquare { row: true, .. })
        ));
    }

    #[test]
    fn validate_rejects_latin_square_without_identity() {
        // Rows and columns are permutations but no two-sided identity exists.
        let entries = vec![
            1, 0, 2, //
            0, 2, 1, //
            2, 1, 0,
        ];
        assert_eq!(
            validate_group(3, &entries, None, None, "bad".into()),
            Err(GroupError::NoIdentity)
        );
    }

    #[test]
    fn validate_rejects_non_associative_table() {
        // Latin square with identity 0 that is not associative (order 5 loop).
        let entries = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(matches!(
            validate_group(5, &entries, None, None, "loop".into()),
            Err(GroupError::NotAssociative { .. })
        ));
    }

    #[test]
    fn validate_rejects_oversized_orders() {
        let n = MAX_ORDER + 1;
        assert_eq!(
            validate_group(n, &[], None, None, "big".into()),
            Err(GroupError::OrderCapExceeded { order: n })
        );
    }

    #[test]
    fn closure_of_generator_is_whole_cyclic_group() {
        let g = z(12);
        let s = ElementSet::from_indices(12, &[1]);
        assert_eq!(subgroup_generated(&g, &s).len(), 12);
        assert!(is_generating(&g, &s));
        let s2 = ElementSet::from_indices(12, &[2]);
        assert_eq!(subgroup_generated(&g, &s2).indices(), vec![0, 2, 4, 6, 8, 10]);
        assert!(!is_generating(&g, &s2));
    }

    #[test]
    fn closure_of_empty_set_is_trivial_subgroup() {
        let g = z(6);
        let s = ElementSet::empty(6);
        assert_eq!(subgroup_generated(&g, &s).indices(), vec![0]);
    }

    #[test]
    fn element_orders_in_z12() {
        let g = z(12);
        let expected = [1, 12, 6, 4, 3, 12, 2, 12, 3, 4, 6, 12];
        for (a, &want) in expected.iter().enumerate() {
            assert_eq!(element_order(&g, a), want, "order of {a} in Z12");
        }
    }

    #[test]
    fn element_lookup_by_label_and_index() {
        let g = z(5);
        assert_eq!(g.element_by_label("3"), Some(3));
        assert_eq!(g.element_by_label("7"), None);
        assert_eq!(g.element_by_label("x"), None);
    }
}
