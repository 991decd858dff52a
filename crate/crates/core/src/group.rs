//! Finite groups given by explicit multiplication tables.
//!
//! Tables index elements by `0..order`; `mul[a][b]` is the product `a·b`.
//! Validation finds the identity and inverses and checks associativity
//! exhaustively, reporting a witnessing triple on failure.

use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupTableError {
    #[error("empty multiplication table")]
    Empty,
    #[error("row {row} has length {len}, expected {order}")]
    RaggedRow { row: usize, len: usize, order: usize },
    #[error("entry {row}*{col} = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("associativity fails on ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Validates a raw table and derives identity and inverses.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, GroupTableError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupTableError::Empty);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupTableError::RaggedRow {
                    row: r,
                    len: row.len(),
                    order,
                });
            }
            for (c, &value) in row.iter().enumerate() {
                if value >= order {
                    return Err(GroupTableError::OutOfRange {
                        row: r,
                        col: c,
                        value,
                    });
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| rows[e][a] == a && rows[a][e] == a))
            .ok_or(GroupTableError::NoIdentity)?;
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| rows[a][b] == identity && rows[b][a] == identity)
                .ok_or(GroupTableError::NoInverse { element: a })?;
            inverse[a] = inv;
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                        return Err(GroupTableError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(Self {
            order,
            mul: rows.iter().flatten().copied().collect(),
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut power = a;
        let mut n = 1;
        while power != self.identity {
            power = self.mul(power, a);
            n += 1;
        }
        n
    }

    /// Trivial one-element group.
    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_rows(&rows).expect("cyclic table is a group")
    }

    /// Dihedral group of order `2n` (symmetries of the regular n-gon).
    /// Elements `0..n` are rotations, `n..2n` are reflections.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let order = 2 * n;
        let mut rows = vec![vec![0; order]; order];
        for a in 0..order {
            for b in 0..order {
                let (ra, fa) = (a % n, a >= n);
                let (rb, fb) = (b % n, b >= n);
                // r^a f^e · r^b f^d with f r = r^{-1} f
                let rot = if fa { (ra + n - rb) % n } else { (ra + rb) % n };
                let flip = fa ^ fb;
                rows[a][b] = rot + if flip { n } else { 0 };
            }
        }
        Self::from_rows(&rows).expect("dihedral table is a group")
    }

    /// Symmetric group on 3 letters, as permutation composition.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
        let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let rows: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq = compose(p, q);
                        perms.iter().position(|r| *r == pq).unwrap()
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(&rows).expect("S3 table is a group")
    }

    /// Quaternion group of order 8: 1, -1, i, -i, j, -j, k, -k.
    pub fn quaternion() -> Self {
        // Encode q = (sign, axis) with axis in {1, i, j, k}.
        let idx = |sign: usize, axis: usize| axis * 2 + sign;
        let mut rows = vec![vec![0; 8]; 8];
        // axis multiplication table with result sign: (axis, axis) -> (sign, axis)
        let axis_mul = |a: usize, b: usize| -> (usize, usize) {
            match (a, b) {
                (0, x) => (0, x),
                (x, 0) => (0, x),
                (1, 1) | (2, 2) | (3, 3) => (1, 0),
                (1, 2) => (0, 3),
                (2, 1) => (1, 3),
                (2, 3) => (0, 1),
                (3, 2) => (1, 1),
                (3, 1) => (0, 2),
                (1, 3) => (1, 2),
                _ => unreachable!(),
            }
        };
        for sa in 0..2 {
            for aa in 0..4 {
                for sb in 0..2 {
                    for ab in 0..4 {
                        let (sc, ac) = axis_mul(aa, ab);
                        rows[idx(sa, aa)][idx(sb, ab)] = idx((sa + sb + sc) % 2, ac);
                    }
                }
            }
        }
        Self::from_rows(&rows).expect("Q8 table is a group")
    }

    /// Direct product, elements enumerated as `a * other.order + b`.
    pub fn product(&self, other: &GroupTable) -> Self {
        let order = self.order * other.order;
        let mut rows = vec![vec![0; order]; order];
        for a1 in 0..self.order {
            for a2 in 0..other.order {
                for b1 in 0..self.order {
                    for b2 in 0..other.order {
                        rows[a1 * other.order + a2][b1 * other.order + b2] =
                            self.mul(a1, b1) * other.order + other.mul(a2, b2);
                    }
                }
            }
        }
        Self::from_rows(&rows).expect("product table is a group")
    }

    /// Checks the subgroup axioms for a set of element indices.
    /// Returns a witness on failure: the violated closure product, or the
    /// missing identity/inverse element.
    pub fn verify_subgroup(&self, elements: &BTreeSet<usize>) -> Result<(), SubgroupViolation> {
        if let Some(&e) = elements.iter().find(|&&e| e >= self.order) {
            return Err(SubgroupViolation::OutOfRange(e));
        }
        if !elements.contains(&self.identity) {
            return Err(SubgroupViolation::MissingIdentity);
        }
        for &a in elements {
            for &b in elements {
                if !elements.contains(&self.mul(a, b)) {
                    return Err(SubgroupViolation::NotClosed(a, b));
                }
            }
        }
        for &a in elements {
            if !elements.contains(&self.inverse(a)) {
                return Err(SubgroupViolation::MissingInverse(a));
            }
        }
        Ok(())
    }

    /// Closure of a subset under multiplication and inverses.
    pub fn generated_subgroup(&self, generators: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = generators.iter().copied().collect();
        set.insert(self.identity);
        loop {
            let mut grew = false;
            let snapshot: Vec<usize> = set.iter().copied().collect();
            for &a in &snapshot {
                if set.insert(self.inverse(a)) {
                    grew = true;
                }
                for &b in &snapshot {
                    if set.insert(self.mul(a, b)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }

    /// All subgroups, ascending by size then lexicographically.
    pub fn subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        found.insert(self.generated_subgroup(&[]));
        loop {
            let snapshot: Vec<BTreeSet<usize>> = found.iter().cloned().collect();
            let mut grew = false;
            for sub in &snapshot {
                for extra in 0..self.order {
                    if sub.contains(&extra) {
                        continue;
                    }
                    let mut gens: Vec<usize> = sub.iter().copied().collect();
                    gens.push(extra);
                    if found.insert(self.generated_subgroup(&gens)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut subs: Vec<BTreeSet<usize>> = found.into_iter().collect();
        subs.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
        subs
    }

    /// Human-readable isomorphism label; exact for order <= 8.
    pub fn isomorphism_label(&self) -> String {
        let n = self.order;
        match n {
            1 => "1".into(),
            2 => "Z2".into(),
            3 => "Z3".into(),
            5 => "Z5".into(),
            7 => "Z7".into(),
            4 => {
                if (0..n).any(|a| self.element_order(a) == 4) {
                    "Z4".into()
                } else {
                    "Z2xZ2".into()
                }
            }
            6 => {
                if self.is_abelian() {
                    "Z6".into()
                } else {
                    "S3".into()
                }
            }
            8 => {
                if self.is_abelian() {
                    let max_order = (0..n).map(|a| self.element_order(a)).max().unwrap();
                    match max_order {
                        8 => "Z8".into(),
                        4 => "Z4xZ2".into(),
                        _ => "Z2xZ2xZ2".into(),
                    }
                } else {
                    let involutions = (0..n).filter(|&a| self.element_order(a) == 2).count();
                    if involutions == 1 {
                        "Q8".into()
                    } else {
                        "D4".into()
                    }
                }
            }
            _ => {
                if self.is_abelian() {
                    format!("abelian({n})")
                } else {
                    format!("nonabelian({n})")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubgroupViolation {
    #[error("element {0} is out of range")]
    OutOfRange(usize),
    #[error("identity element missing")]
    MissingIdentity,
    #[error("inverse of {0} missing")]
    MissingInverse(usize),
    #[error("product {0}*{1} leaves the set")]
    NotClosed(usize, usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_groups() {
        // 2x2 table without identity
        let err = GroupTable::from_rows(&[vec![1, 0], vec![0, 0]]).unwrap_err();
        assert!(matches!(
            err,
            GroupTableError::NoIdentity | GroupTableError::NoInverse { .. }
        ));
        // identity exists but associativity fails
        let rows = vec![
            vec![0, 1, 2],
            vec![1, 0, 0],
            vec![2, 0, 1],
        ];
        let err = GroupTable::from_rows(&rows).unwrap_err();
        assert!(matches!(
            err,
            GroupTableError::NotAssociative { .. } | GroupTableError::NoInverse { .. }
        ));
    }

    #[test]
    fn named_groups_have_expected_structure() {
        assert_eq!(GroupTable::cyclic(6).isomorphism_label(), "Z6");
        assert_eq!(GroupTable::symmetric3().isomorphism_label(), "S3");
        assert_eq!(GroupTable::dihedral(4).isomorphism_label(), "D4");
        assert_eq!(GroupTable::quaternion().isomorphism_label(), "Q8");
        assert_eq!(
            GroupTable::cyclic(2).product(&GroupTable::cyclic(2)).isomorphism_label(),
            "Z2xZ2"
        );
        assert_eq!(
            GroupTable::cyclic(4).product(&GroupTable::cyclic(2)).isomorphism_label(),
            "Z4xZ2"
        );
        assert_eq!(
            GroupTable::cyclic(2).product(&GroupTable::cyclic(3)).isomorphism_label(),
            "Z6"
        );
    }

    #[test]
    fn quaternion_has_single_involution() {
        let q8 = GroupTable::quaternion();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        let involutions: Vec<usize> = (0..8).filter(|&a| q8.element_order(a) == 2).collect();
        assert_eq!(involutions.len(), 1);
    }

    #[test]
    fn subgroup_enumeration_matches_known_counts() {
        // S3: trivial, three Z2, one Z3, S3 itself = 6 subgroups.
        assert_eq!(GroupTable::symmetric3().subgroups().len(), 6);
        // Z4: 3 subgroups. Z2xZ2: 5 subgroups. Q8: 6 subgroups. D4: 10.
        assert_eq!(GroupTable::cyclic(4).subgroups().len(), 3);
        assert_eq!(
            GroupTable::cyclic(2).product(&GroupTable::cyclic(2)).subgroups().len(),
            5
        );
        assert_eq!(GroupTable::quaternion().subgroups().len(), 6);
        assert_eq!(GroupTable::dihedral(4).subgroups().len(), 10);
    }

    #[test]
    fn subgroup_violation_witnesses() {
        let z4 = GroupTable::cyclic(4);
        let set: BTreeSet<usize> = [0, 1].into_iter().collect();
        assert_eq!(z4.verify_subgroup(&set), Err(SubgroupViolation::NotClosed(1, 1)));
        let set: BTreeSet<usize> = [1, 3].into_iter().collect();
        assert_eq!(z4.verify_subgroup(&set), Err(SubgroupViolation::MissingIdentity));
        let set: BTreeSet<usize> = [0, 2].into_iter().collect();
        assert_eq!(z4.verify_subgroup(&set), Ok(()));
    }
}
