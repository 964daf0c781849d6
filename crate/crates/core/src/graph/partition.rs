use super::Graph;
use crate::error::{Error, Result};

/// A partition of `{0..n}` into nonempty, pairwise disjoint blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    /// Validates and normalizes (each block sorted; block order kept).
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::MalformedPartition("empty block".into()));
            }
            block.sort_unstable();
            for &v in block.iter() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::MalformedPartition(format!(
                        "vertex {v} occurs in two blocks"
                    )));
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::MalformedPartition(format!("vertex {v} is uncovered")));
        }
        Ok(VertexPartition { n, blocks })
    }

    /// All singletons.
    pub fn discrete(n: usize) -> Self {
        VertexPartition {
            n,
            blocks: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// Builds a partition from a restricted growth string `rgs[v] = block of v`.
    fn from_rgs(rgs: &[usize]) -> Self {
        let count = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (v, &b) in rgs.iter().enumerate() {
            blocks[b].push(v);
        }
        VertexPartition {
            n: rgs.len(),
            blocks,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `index[v]` is the block containing `v`.
    pub fn block_index(&self) -> Vec<usize> {
        let mut index = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                index[v] = b;
            }
        }
        index
    }
}

/// Partitions of `V(F)` whose blocks all induce connected subgraphs, in
/// restricted-growth-string order.
pub fn connected_partitions(f: &Graph) -> ConnectedPartitions<'_> {
    ConnectedPartitions {
        graph: f,
        rgs: vec![0; f.n()],
        maxes: vec![0; f.n()],
        started: false,
        done: false,
    }
}

/// Iterator returned by [`connected_partitions`]. Walks all restricted growth
/// strings and keeps the partitions passing the connectivity filter.
pub struct ConnectedPartitions<'a> {
    graph: &'a Graph,
    rgs: Vec<usize>,
    // maxes[i] = max(rgs[0..i]), with maxes[0] = 0
    maxes: Vec<usize>,
    started: bool,
    done: bool,
}

impl ConnectedPartitions<'_> {
    fn advance(&mut self) -> bool {
        let n = self.rgs.len();
        if !self.started {
            self.started = true;
            return true;
        }
        // rgs[0] is always 0
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.rgs[i] <= self.maxes[i] {
                self.rgs[i] += 1;
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[j - 1].max(self.rgs[j - 1]);
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for ConnectedPartitions<'_> {
    type Item = VertexPartition;

    fn next(&mut self) -> Option<VertexPartition> {
        while !self.done {
            if !self.advance() {
                self.done = true;
                break;
            }
            let p = VertexPartition::from_rgs(&self.rgs);
            if p.blocks.iter().all(|b| self.graph.induces_connected(b)) {
                return Some(p);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell(n: usize) -> usize {
        // Bell triangle
        let mut row = vec![1usize];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                let last = *next.last().unwrap();
                next.push(last + x);
            }
            row = next;
        }
        row[0]
    }

    #[test]
    fn validates_blocks() {
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(VertexPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::new(2, vec![vec![0, 1], vec![]]).is_err());
        assert!(VertexPartition::new(2, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn small_examples() {
        let parts: Vec<_> = connected_partitions(&Graph::empty(2)).collect();
        assert_eq!(parts, vec![VertexPartition::discrete(2)]);
        assert_eq!(connected_partitions(&Graph::complete(2)).count(), 2);
        assert_eq!(connected_partitions(&Graph::complete(3)).count(), 5);
        // the empty graph has exactly the empty partition
        assert_eq!(connected_partitions(&Graph::empty(0)).count(), 1);
    }

    #[test]
    fn complete_graphs_give_bell_numbers() {
        for n in 0..=7 {
            assert_eq!(connected_partitions(&Graph::complete(n)).count(), bell(n));
        }
    }

    #[test]
    fn paths_give_compositions() {
        // connected blocks of a path are intervals: 2^(n-1) partitions
        for n in 1..=8 {
            assert_eq!(connected_partitions(&Graph::path(n)).count(), 1 << (n - 1));
        }
    }

    #[test]
    fn no_duplicates() {
        let parts: Vec<_> = connected_partitions(&Graph::cycle(5)).collect();
        let mut sorted: Vec<_> = parts.iter().map(|p| p.block_index()).collect();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), parts.len());
    }
}
