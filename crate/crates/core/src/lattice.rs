//! Subgroup lattices: full enumeration, maximal subgroups, the Frattini
//! subgroup, and the family of intersections of maximal subgroups that
//! indexes the structure digraph.

use crate::group::{subgroup_generated, ElementSet, FiniteGroup};
use std::collections::BTreeSet;
use thiserror::Error;

/// Ceiling on how many subgroups enumeration will materialize before giving
/// up. Elementary-abelian 2-groups near the order cap have millions of
/// subgroups; this keeps the lattice pass bounded.
pub const SUBGROUP_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// The trivial group has no maximal subgroups, so the lattice-indexed
    /// machinery is undefined for it; callers special-case order 1.
    #[error("the trivial group has no maximal subgroups")]
    TrivialGroup,
    #[error("subgroup enumeration exceeded the cap of {cap} subgroups")]
    SubgroupBlowup { cap: usize },
}

/// A list of subgroups of one parent group, in canonical order
/// (by size, then by bit pattern).
#[derive(Clone, Debug)]
pub struct SubgroupFamily {
    parent_order: usize,
    members: Vec<ElementSet>,
}

impl SubgroupFamily {
    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, id: usize) -> &ElementSet {
        &self.members[id]
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }
}

/// The intersections of nonempty sets of maximal subgroups of one group, in
/// canonical order. The whole group is *not* a member; the Frattini subgroup
/// (intersection of all maximals) is the unique minimum member.
#[derive(Clone, Debug)]
pub struct IntersectionFamily {
    parent_order: usize,
    members: Vec<ElementSet>,
    maximal_ids: Vec<usize>,
    frattini_id: usize,
    /// Row-major inclusion matrix: entry `i * len + j` says members[j] ⊆ members[i].
    contains: Vec<bool>,
}

impl IntersectionFamily {
    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn member(&self, id: usize) -> &ElementSet {
        &self.members[id]
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    /// Ids of the members that are themselves maximal subgroups.
    pub fn maximal_ids(&self) -> &[usize] {
        &self.maximal_ids
    }

    /// Id of the Frattini subgroup, the minimum member.
    pub fn frattini_id(&self) -> usize {
        self.frattini_id
    }

    /// Does member `outer` contain member `inner`?
    pub fn contains(&self, outer: usize, inner: usize) -> bool {
        self.contains[outer * self.members.len() + inner]
    }

    /// Id of the member equal to `set`, if any.
    pub fn find(&self, set: &ElementSet) -> Option<usize> {
        self.members.binary_search(set).ok()
    }
}

/// Enumerates every subgroup of `g`: the cyclic subgroups are closed under
/// pairwise join (⟨A ∪ B⟩). Every subgroup is a fold of joins of cyclic
/// subgroups, so the closure is the full lattice.
pub fn all_subgroups(g: &FiniteGroup) -> Result<SubgroupFamily, LatticeError> {
    let n = g.order();
    let mut seen: BTreeSet<ElementSet> = BTreeSet::new();
    let mut queue: Vec<ElementSet> = Vec::new();
    for x in 0..n {
        let c = subgroup_generated(g, &ElementSet::from_indices(n, &[x]));
        if seen.insert(c.clone()) {
            queue.push(c);
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i].clone();
        let upto = queue.len();
        for j in 0..upto {
            if seen.len() > SUBGROUP_CAP {
                return Err(LatticeError::SubgroupBlowup { cap: SUBGROUP_CAP });
            }
            let b = &queue[j];
            if a.is_subset(b) || b.is_subset(&a) {
                continue; // join is just the larger one, already present
            }
            let join = subgroup_generated(g, &a.union(b));
            if seen.insert(join.clone()) {
                queue.push(join);
            }
        }
        i += 1;
    }
    let mut members: Vec<ElementSet> = seen.into_iter().collect();
    members.sort();
    Ok(SubgroupFamily {
        parent_order: n,
        members,
    })
}

/// The maximal subgroups of `g`: proper subgroups contained in no other
/// proper subgroup. Errors with [`LatticeError::TrivialGroup`] when `|g| = 1`.
pub fn maximal_subgroups(g: &FiniteGroup) -> Result<SubgroupFamily, LatticeError> {
    if g.order() == 1 {
        return Err(LatticeError::TrivialGroup);
    }
    let all = all_subgroups(g)?;
    let proper: Vec<&ElementSet> = all
        .members()
        .iter()
        .filter(|s| s.len() < g.order())
        .collect();
    let members: Vec<ElementSet> = proper
        .iter()
        .filter(|s| {
            !proper
                .iter()
                .any(|t| s.len() < t.len() && s.is_subset(t))
        })
        .map(|s| (*s).clone())
        .collect();
    Ok(SubgroupFamily {
        parent_order: g.order(),
        members,
    })
}

/// The Frattini subgroup: the intersection of all maximal subgroups, or the
/// whole group when `|g| = 1` (there are no maximals to intersect).
pub fn frattini(g: &FiniteGroup) -> Result<ElementSet, LatticeError> {
    if g.order() == 1 {
        return Ok(ElementSet::full(1));
    }
    let maxs = maximal_subgroups(g)?;
    let mut acc = ElementSet::full(g.order());
    for m in maxs.members() {
        acc = acc.intersection(m);
    }
    Ok(acc)
}

/// Builds the family of all intersections of nonempty sets of maximal
/// subgroups, closed under pairwise intersection. The members are exactly the
/// candidate position classes of the structure digraph.
pub fn intersection_family(g: &FiniteGroup) -> Result<IntersectionFamily, LatticeError> {
    let maxs = maximal_subgroups(g)?;
    let mut seen: BTreeSet<ElementSet> = maxs.members().iter().cloned().collect();
    let mut queue: Vec<ElementSet> = seen.iter().cloned().collect();
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i].clone();
        let upto = queue.len();
        for j in 0..upto {
            let meet = a.intersection(&queue[j]);
            if seen.insert(meet.clone()) {
                queue.push(meet);
            }
        }
        i += 1;
    }
    let mut members: Vec<ElementSet> = seen.into_iter().collect();
    members.sort();
    let len = members.len();

    let maximal_ids: Vec<usize> = maxs
        .members()
        .iter()
        .map(|m| members.binary_search(m).expect("maximal is a member"))
        .collect();

    let mut phi = ElementSet::full(g.order());
    for m in maxs.members() {
        phi = phi.intersection(m);
    }
    let frattini_id = members
        .binary_search(&phi)
        .expect("Frattini subgroup is a member");

    let mut contains = vec![false; len * len];
    for (outer, big) in members.iter().enumerate() {
        for (inner, small) in members.iter().enumerate() {
            contains[outer * len + inner] = small.is_subset(big);
        }
    }

    Ok(IntersectionFamily {
        parent_order: g.order(),
        members,
        maximal_ids,
        frattini_id,
        contains,
    })
}

/// Where a position's closure lives in the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Envelope {
    /// Id of the smallest family member containing the generated subgroup.
    Member(usize),
    /// The set generates the whole group; no maximal subgroup contains it.
    WholeGroup,
}

/// The minimal envelope of `seed`: the intersection of every maximal subgroup
/// containing ⟨seed⟩, which is the smallest family member containing ⟨seed⟩ —
/// or [`Envelope::WholeGroup`] if no maximal subgroup contains it.
pub fn minimal_envelope(
    g: &FiniteGroup,
    fam: &IntersectionFamily,
    seed: &ElementSet,
) -> Envelope {
    let span = subgroup_generated(g, seed);
    envelope_of_subgroup(g, fam, &span)
}

/// Same as [`minimal_envelope`] for a set already closed into a subgroup.
pub fn envelope_of_subgroup(
    g: &FiniteGroup,
    fam: &IntersectionFamily,
    span: &ElementSet,
) -> Envelope {
    let mut acc: Option<ElementSet> = None;
    for &mid in fam.maximal_ids() {
        let m = fam.member(mid);
        if span.is_subset(m) {
            acc = Some(match acc {
                None => m.clone(),
                Some(prev) => prev.intersection(m),
            });
        }
    }
    match acc {
        None => {
            debug_assert_eq!(span.len(), g.order());
            Envelope::WholeGroup
        }
        Some(e) => Envelope::Member(fam.find(&e).expect("envelope is a member")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn group(spec: GroupSpec) -> crate::group::FiniteGroup {
        build_group(&spec).unwrap()
    }

    fn divisor_count(n: usize) -> usize {
        (1..=n).filter(|d| n % d == 0).count()
    }

    #[test]
    fn cyclic_subgroup_count_is_divisor_count() {
        for n in 1..=24 {
            let g = group(GroupSpec::Cyclic(n));
            let subs = all_subgroups(&g).unwrap();
            assert_eq!(subs.len(), divisor_count(n), "Z{n} subgroup count");
        }
    }

    #[test]
    fn quaternion_lattice() {
        let g = group(GroupSpec::Quaternion8);
        let subs = all_subgroups(&g).unwrap();
        assert_eq!(subs.len(), 6); // 1, Z2, three Z4, Q8
        let maxs = maximal_subgroups(&g).unwrap();
        assert_eq!(maxs.len(), 3);
        assert!(maxs.members().iter().all(|m| m.len() == 4));
        // Frattini = the unique Z2 = {±1}.
        let phi = frattini(&g).unwrap();
        assert_eq!(phi.len(), 2);
    }

    #[test]
    fn maximal_counts_for_small_groups() {
        let cases = [
            (GroupSpec::Cyclic(6), vec![2, 3]),
            (GroupSpec::Cyclic(4), vec![2]),
            (GroupSpec::Cyclic(12), vec![4, 6]),
            (GroupSpec::Dihedral(4), vec![4, 4, 4]),
            (GroupSpec::Quaternion8, vec![4, 4, 4]),
        ];
        for (spec, mut expected_orders) in cases {
            let g = group(spec);
            let maxs = maximal_subgroups(&g).unwrap();
            let mut orders: Vec<usize> = maxs.members().iter().map(|m| m.len()).collect();
            orders.sort_unstable();
            expected_orders.sort_unstable();
            assert_eq!(orders, expected_orders, "maximals of {}", g.name());
        }
    }

    #[test]
    fn heisenberg3_has_four_maximals_of_order_nine() {
        let g = group(GroupSpec::Heisenberg(3));
        let maxs = maximal_subgroups(&g).unwrap();
        assert_eq!(maxs.len(), 4);
        assert!(maxs.members().iter().all(|m| m.len() == 9));
        // Frattini = center = derived subgroup, order 3.
        assert_eq!(frattini(&g).unwrap().len(), 3);
    }

    #[test]
    fn trivial_group_lattice() {
        let g = group(GroupSpec::Cyclic(1));
        assert_eq!(
            maximal_subgroups(&g).unwrap_err(),
            LatticeError::TrivialGroup
        );
        assert_eq!(
            intersection_family(&g).unwrap_err(),
            LatticeError::TrivialGroup
        );
        // Frattini of the trivial group is the whole (trivial) group.
        assert_eq!(frattini(&g).unwrap().len(), 1);
    }

    #[test]
    fn frobenius_frattini_is_trivial() {
        for p in [5usize, 7, 13] {
            let g = group(GroupSpec::Frobenius { p, r: None });
            assert_eq!(frattini(&g).unwrap().len(), 1, "Frattini of F{p}");
        }
    }

    #[test]
    fn frobenius_maximal_census() {
        // F_p has exactly p cyclic maximals of order p-1 (the point
        // stabilizers) plus one maximal Z_p ⋊ Z_{(p-1)/q} of order p(p-1)/q
        // for each prime q dividing p-1.
        for (p, prime_divisors) in [(5usize, vec![2]), (7, vec![2, 3]), (13, vec![2, 3])] {
            let g = group(GroupSpec::Frobenius { p, r: None });
            let maxs = maximal_subgroups(&g).unwrap();
            let stabilizers = maxs
                .members()
                .iter()
                .filter(|m| m.len() == p - 1)
                .count();
            assert_eq!(stabilizers, p, "F{p} point stabilizers");
            let mut big: Vec<usize> = maxs
                .members()
                .iter()
                .map(|m| m.len())
                .filter(|&o| o != p - 1)
                .collect();
            big.sort_unstable();
            let mut expected: Vec<usize> = prime_divisors
                .iter()
                .map(|q| p * (p - 1) / q)
                .collect();
            expected.sort_unstable();
            assert_eq!(big, expected, "F{p} non-stabilizer maximals");
            assert_eq!(maxs.len(), p + prime_divisors.len());
        }
    }

    #[test]
    fn intersection_family_census_f5() {
        let g = group(GroupSpec::Frobenius { p: 5, r: None });
        let fam = intersection_family(&g).unwrap();
        let mut orders: Vec<usize> = fam.members().iter().map(|m| m.len()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 2, 2, 4, 4, 4, 4, 4, 10]);
        assert_eq!(fam.len(), 12);
        assert_eq!(fam.member(fam.frattini_id()).len(), 1);
        assert_eq!(fam.maximal_ids().len(), 6);
        // The whole group is not a member.
        assert!(fam.members().iter().all(|m| m.len() < 20));
    }

    #[test]
    fn intersection_family_sizes_for_frobenius() {
        for (p, expected) in [(5usize, 12usize), (7, 25), (11, 37), (13, 56)] {
            let g = group(GroupSpec::Frobenius { p, r: None });
            let fam = intersection_family(&g).unwrap();
            assert_eq!(fam.len(), expected, "|family| for F{p}");
        }
    }

    #[test]
    fn contains_matrix_is_the_inclusion_order() {
        let g = group(GroupSpec::Cyclic(12));
        let fam = intersection_family(&g).unwrap();
        for i in 0..fam.len() {
            assert!(fam.contains(i, i), "reflexive");
            assert!(fam.contains(i, fam.frattini_id()), "Frattini below all");
            for j in 0..fam.len() {
                assert_eq!(
                    fam.contains(i, j),
                    fam.member(j).is_subset(fam.member(i))
                );
                if i != j && fam.contains(i, j) && fam.contains(j, i) {
                    panic!("antisymmetry violated");
                }
            }
        }
    }

    #[test]
    fn envelope_basics() {
        let g = group(GroupSpec::Cyclic(6));
        let fam = intersection_family(&g).unwrap();
        // ∅ generates the trivial subgroup; its envelope is the Frattini
        // member (trivial for Z6 since gcd of the maximal orders is 1).
        let e = minimal_envelope(&g, &fam, &ElementSet::empty(6));
        assert_eq!(e, Envelope::Member(fam.frattini_id()));
        // A generator escapes every maximal.
        let e = minimal_envelope(&g, &fam, &ElementSet::from_indices(6, &[1]));
        assert_eq!(e, Envelope::WholeGroup);
        // {2} spans {0,2,4}, contained only in the order-3 maximal.
        let e = minimal_envelope(&g, &fam, &ElementSet::from_indices(6, &[2]));
        match e {
            Envelope::Member(id) => assert_eq!(fam.member(id).indices(), vec![0, 2, 4]),
            Envelope::WholeGroup => panic!("{{2}} does not generate Z6"),
        }
    }

    #[test]
    fn envelope_is_idempotent_and_monotone() {
        let g = group(GroupSpec::Dihedral(6));
        let fam = intersection_family(&g).unwrap();
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                let s = ElementSet::from_indices(n, &[a, b]);
                match minimal_envelope(&g, &fam, &s) {
                    Envelope::WholeGroup => {}
                    Envelope::Member(id) => {
                        // Contains the span…
                        let span = subgroup_generated(&g, &s);
                        assert!(span.is_subset(fam.member(id)));
                        // …and is a fixed point.
                        assert_eq!(
                            envelope_of_subgroup(&g, &fam, fam.member(id)),
                            Envelope::Member(id)
                        );
                    }
                }
            }
        }
    }
}
