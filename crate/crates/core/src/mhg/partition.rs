use serde::{Deserialize, Serialize};

/// An integer partition with parts in non-increasing order and no zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Trailing zeros are dropped; other input must be non-increasing.
    pub fn new(mut parts: Vec<usize>) -> Option<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        parts.windows(2).all(|w| w[0] >= w[1]).then_some(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((0..first).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = String;

    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(v).ok_or_else(|| "partition parts must be non-increasing".to_string())
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

fn push_partitions(
    remaining: usize,
    max_part: usize,
    max_parts: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition(prefix.clone()));
        return;
    }
    if prefix.len() == max_parts {
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        prefix.push(part);
        push_partitions(remaining - part, part, max_parts, prefix, out);
        prefix.pop();
    }
}

/// All partitions of weight `0..=max_weight` with at most `max_parts` parts,
/// by increasing weight and in reverse lexicographic order within a weight.
pub fn enumerate_partitions(max_weight: usize, max_parts: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    for w in 0..=max_weight {
        push_partitions(w, w, max_parts, &mut prefix, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let all = enumerate_partitions(6, 6);
        assert_eq!(all.iter().filter(|p| p.weight() == 6).count(), 11);
        let four: Vec<Vec<usize>> = all.iter().filter(|p| p.weight() == 4).map(|p| p.parts().to_vec()).collect();
        assert_eq!(four, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(all[0], Partition::empty());
        assert!(all.windows(2).all(|w| w[0].weight() <= w[1].weight()));
        let capped = enumerate_partitions(6, 2);
        assert_eq!(capped.iter().filter(|p| p.weight() == 6).count(), 4);
    }

    #[test]
    fn conjugate_and_validation() {
        let p = Partition::new(vec![4, 2, 1, 0]).unwrap();
        assert_eq!(p.parts(), &[4, 2, 1]);
        assert_eq!(p.conjugate().parts(), &[3, 2, 1, 1]);
        assert_eq!(p.conjugate().conjugate(), p);
        assert!(Partition::new(vec![1, 2]).is_none());
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
        assert_eq!(serde_json::from_str::<Partition>("[3,1]").unwrap().weight(), 4);
    }
}
