//! Seeded synthetic topics for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{PaperNode, TopicSnapshot};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticTopic {
    pub papers: usize,
    pub start_year: i32,
    /// Years after the pioneer over which the other papers are spread.
    pub span: i32,
    /// Upper bound on extra references per paper, besides the pioneer.
    pub max_references: usize,
    /// Chance that a paper also gets cited back by a same-year paper it cites.
    pub mutual_rate: f64,
    pub seed: u64,
}

impl Default for SyntheticTopic {
    fn default() -> Self {
        SyntheticTopic {
            papers: 200,
            start_year: 2000,
            span: 10,
            max_references: 3,
            mutual_rate: 0.02,
            seed: 1,
        }
    }
}

impl SyntheticTopic {
    /// Every paper cites the pioneer and up to `max_references` earlier
    /// papers, chosen with preferential attachment on citation counts.
    pub fn generate(&self) -> TopicSnapshot {
        let n = self.papers.max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let id = |i: usize| format!("p{i:06}");
        let mut nodes = vec![PaperNode::pioneer(id(0), self.start_year)];
        let mut years = vec![self.start_year];
        for i in 1..n {
            let offset = 1 + ((i - 1) as i64 * i64::from(self.span.max(1)) / (n.max(2) - 1) as i64) as i32;
            let y = self.start_year + offset.min(self.span.max(1));
            nodes.push(PaperNode::new(id(i), y));
            years.push(y);
        }
        let mut cited = vec![1usize; n];
        let mut pairs: Vec<(String, String)> = Vec::new();
        for i in 1..n {
            pairs.push((id(i), id(0)));
            cited[0] += 1;
            let older = (1..i).filter(|&j| years[j] <= years[i]).count();
            if older == 0 {
                continue;
            }
            let k = rng.random_range(0..=self.max_references.min(older));
            let total: usize = cited[1..=older].iter().sum();
            let mut chosen = Vec::with_capacity(k);
            while chosen.len() < k {
                let mut pick = rng.random_range(0..total);
                let mut j = 1;
                while pick >= cited[j] {
                    pick -= cited[j];
                    j += 1;
                }
                if !chosen.contains(&j) {
                    chosen.push(j);
                }
            }
            for j in chosen {
                pairs.push((id(i), id(j)));
                cited[j] += 1;
                if years[j] == years[i] && rng.random_bool(self.mutual_rate) {
                    pairs.push((id(j), id(i)));
                }
            }
        }
        TopicSnapshot::new(nodes, pairs, None).expect("generated topic is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        let cfg = SyntheticTopic { papers: 120, ..Default::default() };
        let a = cfg.generate();
        let b = cfg.generate();
        assert_eq!(a.len(), 120);
        assert_eq!(a.citation_pairs(), b.citation_pairs());
        let p = a.pioneer();
        assert_eq!(a.out_degree_at(p), 119);
        assert!(a.years().len() > 5);
    }

    #[test]
    fn seeds_differ() {
        let a = SyntheticTopic { seed: 1, ..Default::default() }.generate();
        let b = SyntheticTopic { seed: 2, ..Default::default() }.generate();
        assert_ne!(a.citation_pairs(), b.citation_pairs());
    }
}
