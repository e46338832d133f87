//! Bipartite cuts of a labeled n-qubit register.
//!
//! Qubit labels are 1-based and label 1 is the most significant bit of a
//! computational-basis index. A [`Bipartition`] stores the row-side subset S
//! of a cut S | S-complement; the rank of a coefficient matrix depends only
//! on this set, so cuts are enumerated as the 2^(n-1) - 1 canonical subsets
//! containing qubit 1 instead of all n! permutations.

use crate::error::{Error, Result};

/// A nonempty proper subset S of the qubit labels {1..n}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    n: usize,
    members: Vec<usize>,
}

impl Bipartition {
    /// Build a cut from qubit labels; labels may arrive in any order.
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if members.is_empty() {
            return Err(Error::BadPartition("subset must be nonempty".into()));
        }
        if members.len() >= n {
            return Err(Error::BadPartition(format!(
                "subset of size {} is not a proper subset of {{1..{n}}}",
                members.len()
            )));
        }
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::BadPartition(format!("duplicate label {}", pair[0])));
            }
        }
        if members[0] < 1 || *members.last().unwrap() > n {
            return Err(Error::BadPartition(format!(
                "labels must lie in 1..={n}, got {members:?}"
            )));
        }
        Ok(Self { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of qubits on the row side.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Sorted qubit labels of the row side.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, label: usize) -> bool {
        self.members.binary_search(&label).is_ok()
    }

    /// The complementary subset S-bar.
    pub fn complement(&self) -> Self {
        let members = (1..=self.n).filter(|q| !self.contains(*q)).collect();
        Self { n: self.n, members }
    }

    /// Split a full 2^n basis index into (row index, column index) where the
    /// row index is spelled by the member qubits in increasing label order
    /// (first member most significant) and the column index by the rest.
    pub fn index_split(&self, index: usize) -> (usize, usize) {
        let mut row = 0usize;
        let mut col = 0usize;
        let mut next = 0; // position in self.members
        for q in 1..=self.n {
            let bit = (index >> (self.n - q)) & 1;
            if next < self.members.len() && self.members[next] == q {
                row = (row << 1) | bit;
                next += 1;
            } else {
                col = (col << 1) | bit;
            }
        }
        (row, col)
    }

    /// Inverse of [`Self::index_split`].
    pub fn index_join(&self, row: usize, col: usize) -> usize {
        let k = self.members.len();
        let m = self.n - k;
        let mut index = 0usize;
        let mut taken_row = 0;
        let mut taken_col = 0;
        for q in 1..=self.n {
            let bit = if taken_row < k && self.members[taken_row] == q {
                taken_row += 1;
                (row >> (k - taken_row)) & 1
            } else {
                taken_col += 1;
                (col >> (m - taken_col)) & 1
            };
            index = (index << 1) | bit;
        }
        index
    }

    /// All canonical cuts of an n-qubit register: the subsets containing
    /// qubit 1, ordered by increasing size then lexicographically.
    pub fn canonical_cuts(n: usize) -> Vec<Self> {
        let mut cuts = Vec::new();
        if n < 2 {
            return cuts;
        }
        let rest: Vec<usize> = (2..=n).collect();
        for size in 1..=n - 1 {
            for tail in combinations(&rest, size - 1) {
                let mut members = Vec::with_capacity(size);
                members.push(1);
                members.extend(tail);
                cuts.push(Self { n, members });
            }
        }
        cuts
    }

    /// All size-k subsets of {1..n} in lexicographic order.
    pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
        let pool: Vec<usize> = (1..=n).collect();
        combinations(&pool, k)
    }
}

impl std::fmt::Display for Bipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, q) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "}}")
    }
}

/// Size-k combinations of `pool` preserving pool order (lexicographic).
pub(crate) fn combinations(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > pool.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| pool[i]).collect());
        // advance the rightmost index that still has room
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if idx[pos] != pos + pool.len() - k {
                idx[pos] += 1;
                for later in pos + 1..k {
                    idx[later] = idx[later - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_full_and_out_of_range() {
        assert!(Bipartition::new(3, []).is_err());
        assert!(Bipartition::new(3, [1, 2, 3]).is_err());
        assert!(Bipartition::new(3, [0]).is_err());
        assert!(Bipartition::new(3, [4]).is_err());
        assert!(Bipartition::new(3, [2, 2]).is_err());
    }

    #[test]
    fn sorts_members() {
        let s = Bipartition::new(4, [3, 1]).unwrap();
        assert_eq!(s.members(), &[1, 3]);
        assert_eq!(s.complement().members(), &[2, 4]);
    }

    #[test]
    fn split_join_roundtrip() {
        let s = Bipartition::new(4, [1, 3]).unwrap();
        for v in 0..16 {
            let (r, c) = s.index_split(v);
            assert_eq!(s.index_join(r, c), v);
        }
        // |0110>: qubit bits are q1=0,q2=1,q3=1,q4=0 -> row (q1,q3)=01, col (q2,q4)=10
        let (r, c) = s.index_split(0b0110);
        assert_eq!((r, c), (0b01, 0b10));
    }

    #[test]
    fn canonical_cuts_order_and_count() {
        let cuts = Bipartition::canonical_cuts(4);
        assert_eq!(cuts.len(), 7);
        let listed: Vec<Vec<usize>> = cuts.iter().map(|s| s.members().to_vec()).collect();
        assert_eq!(
            listed,
            vec![
                vec![1],
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![1, 2, 3],
                vec![1, 2, 4],
                vec![1, 3, 4],
            ]
        );
        assert!(Bipartition::canonical_cuts(1).is_empty());
    }

    #[test]
    fn combinations_lexicographic() {
        assert_eq!(
            combinations(&[1, 2, 3, 4], 2),
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        assert_eq!(combinations(&[1, 2], 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(&[1], 2), Vec::<Vec<usize>>::new());
    }
}
