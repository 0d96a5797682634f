//! Brute-force weighted popularity over every total injective matching.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Category, FullInstance};
use crate::wellformed::Matching;

pub const DEFAULT_CAP: u128 = 10_000_000;

/// Weighted vote difference between two matchings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Margin {
    pub value: i64,
}

/// Number of injective maps from `n` applicants to `m` items, saturating.
pub fn count_matchings(n: usize, m: usize) -> u128 {
    if n > m {
        return 0;
    }
    ((m - n + 1)..=m).fold(1u128, |acc, k| acc.saturating_mul(k as u128))
}

/// Lexicographic odometer over injective maps `0..n -> 0..m`.
#[derive(Debug, Clone)]
pub struct Matchings {
    current: Vec<usize>,
    used: Vec<bool>,
    m: usize,
    started: bool,
    done: bool,
}

impl Matchings {
    fn new(n: usize, m: usize) -> Self {
        let mut used = vec![false; m];
        used.iter_mut().take(n).for_each(|u| *u = true);
        Matchings {
            current: (0..n).collect(),
            used,
            m,
            started: false,
            done: n > m,
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.current.len();
        for pos in (0..n).rev() {
            self.used[self.current[pos]] = false;
            let next = (self.current[pos] + 1..self.m).find(|&p| !self.used[p]);
            if let Some(p) = next {
                self.current[pos] = p;
                self.used[p] = true;
                // Refill the tail with the smallest free items.
                let mut free = (0..self.m).filter(|&q| !self.used[q]);
                for slot in pos + 1..n {
                    let q = free.next().expect("n <= m leaves enough free items");
                    self.current[slot] = q;
                }
                for slot in pos + 1..n {
                    self.used[self.current[slot]] = true;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Matchings {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.current.clone())
    }
}

/// All `m!/(m-n)!` injective maps in lexicographic order, or `CapExceeded`.
pub fn enumerate_matchings(n: usize, m: usize, cap: u128) -> Result<Matchings> {
    if n > m {
        return Err(Error::InvalidParameters(format!("{n} applicants exceed {m} items")));
    }
    let count = count_matchings(n, m);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    Ok(Matchings::new(n, m))
}

// rank[a][p] = position of item p in applicant a's list, A1 then A2.
fn rank_tables(full: &FullInstance) -> Vec<Vec<usize>> {
    full.prefs_a1()
        .iter()
        .chain(full.prefs_a2())
        .map(|list| {
            let mut rank = vec![0; list.len()];
            for (pos, &p) in list.iter().enumerate() {
                rank[p] = pos;
            }
            rank
        })
        .collect()
}

fn weight_row(full: &FullInstance) -> Vec<i64> {
    let w = full.weights();
    std::iter::repeat_n(w.weight(Category::A1) as i64, full.n1())
        .chain(std::iter::repeat_n(w.weight(Category::A2) as i64, full.n2()))
        .collect()
}

/// Precomputed rank and weight tables for repeated margin evaluation.
#[derive(Debug, Clone)]
pub struct Judge {
    rank: Vec<Vec<usize>>,
    weight: Vec<i64>,
    m: usize,
}

impl Judge {
    pub fn new(full: &FullInstance) -> Self {
        Judge {
            rank: rank_tables(full),
            weight: weight_row(full),
            m: full.m(),
        }
    }

    /// Flat assignments (A1 then A2) must be total and injective.
    pub fn check(&self, flat: &[usize]) -> Result<()> {
        if flat.len() != self.weight.len() {
            return Err(Error::InvalidParameters(format!(
                "matching assigns {} applicants, instance has {}",
                flat.len(),
                self.weight.len()
            )));
        }
        let mut seen = vec![false; self.m];
        for &p in flat {
            if p >= self.m || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameters(format!(
                    "item {p} is out of range or assigned twice"
                )));
            }
        }
        Ok(())
    }

    /// Margin of `a` over `b` without input checks.
    pub fn margin_unchecked(&self, a: &[usize], b: &[usize]) -> i64 {
        let mut total = 0;
        for (i, (&pa, &pb)) in a.iter().zip(b).enumerate() {
            let (ra, rb) = (self.rank[i][pa], self.rank[i][pb]);
            if ra < rb {
                total += self.weight[i];
            } else if rb < ra {
                total -= self.weight[i];
            }
        }
        total
    }
}

/// Total weight preferring `a` minus total weight preferring `b`.
pub fn margin(a: &Matching, b: &Matching, full: &FullInstance) -> Result<Margin> {
    let judge = Judge::new(full);
    let (fa, fb) = (a.flat(), b.flat());
    judge.check(&fa)?;
    judge.check(&fb)?;
    Ok(Margin {
        value: judge.margin_unchecked(&fa, &fb),
    })
}

/// True iff no matching is more popular than `candidate`.
pub fn is_popular(candidate: &Matching, full: &FullInstance, cap: u128) -> Result<bool> {
    let judge = Judge::new(full);
    let flat = candidate.flat();
    judge.check(&flat)?;
    let mut all = enumerate_matchings(flat.len(), full.m(), cap)?;
    Ok(all.all(|other| judge.margin_unchecked(&other, &flat) <= 0))
}

/// Outcome of an exhaustive popularity search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub popular_exists: bool,
    /// First popular matching in enumeration order, A1 items then A2 items.
    pub matching: Option<Vec<usize>>,
    pub popular_count: u64,
    pub matchings_enumerated: u64,
}

impl OracleReport {
    pub fn first(&self, full: &FullInstance) -> Option<Matching> {
        self.matching.as_ref().map(|flat| Matching {
            a1: flat[..full.n1()].to_vec(),
            a2: flat[full.n1()..].to_vec(),
        })
    }
}

/// Every popular matching, in enumeration order.
pub fn all_popular(full: &FullInstance, cap: u128) -> Result<Vec<Matching>> {
    let n = full.n1() + full.n2();
    let candidates: Vec<Vec<usize>> = enumerate_matchings(n, full.m(), cap)?.collect();
    let judge = Judge::new(full);
    Ok(candidates
        .iter()
        .filter(|m| candidates.iter().all(|o| judge.margin_unchecked(o, m) <= 0))
        .map(|flat| Matching {
            a1: flat[..full.n1()].to_vec(),
            a2: flat[full.n1()..].to_vec(),
        })
        .collect())
}

/// Exhaustive search: the first popular matching and how many there are.
pub fn find_popular(full: &FullInstance, cap: u128) -> Result<OracleReport> {
    let n = full.n1() + full.n2();
    let candidates: Vec<Vec<usize>> = enumerate_matchings(n, full.m(), cap)?.collect();
    let judge = Judge::new(full);
    let mut first = None;
    let mut count = 0u64;
    for m in &candidates {
        if candidates.iter().all(|o| judge.margin_unchecked(o, m) <= 0) {
            count += 1;
            first.get_or_insert_with(|| m.clone());
        }
    }
    Ok(OracleReport {
        popular_exists: count > 0,
        matching: first,
        popular_count: count,
        matchings_enumerated: candidates.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{gen_full, WeightConfig};

    fn small() -> FullInstance {
        FullInstance::new(3, vec![vec![0, 1, 2]], vec![vec![1, 0, 2]], WeightConfig::default())
            .unwrap()
    }

    fn m(a1: &[usize], a2: &[usize]) -> Matching {
        Matching {
            a1: a1.to_vec(),
            a2: a2.to_vec(),
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_matchings(2, 3, DEFAULT_CAP).unwrap().count(), 6);
        assert_eq!(enumerate_matchings(4, 5, DEFAULT_CAP).unwrap().count(), 120);
        assert_eq!(enumerate_matchings(1, 1, DEFAULT_CAP).unwrap().count(), 1);
        let all: Vec<_> = enumerate_matchings(2, 3, DEFAULT_CAP).unwrap().collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 2], vec![2, 0], vec![2, 1]]
        );
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_matchings(4, 5, 119),
            Err(Error::CapExceeded { count: 120, cap: 119 })
        ));
        assert_eq!(count_matchings(20, 40), (21..=40u128).product());
    }

    #[test]
    fn margin_examples() {
        let full = small();
        let a = m(&[0], &[1]);
        let b = m(&[1], &[2]);
        assert_eq!(margin(&a, &b, &full).unwrap().value, 3);
        assert_eq!(margin(&b, &a, &full).unwrap().value, -3);
        assert_eq!(margin(&a, &a, &full).unwrap().value, 0);
        assert!(margin(&m(&[0], &[0]), &a, &full).is_err());
    }

    #[test]
    fn popularity_examples() {
        let full = small();
        assert!(is_popular(&m(&[0], &[1]), &full, DEFAULT_CAP).unwrap());
        assert!(!is_popular(&m(&[1], &[0]), &full, DEFAULT_CAP).unwrap());
        let report = find_popular(&full, DEFAULT_CAP).unwrap();
        assert!(report.popular_exists);
        assert_eq!(report.matching, Some(vec![0, 1]));
        assert_eq!(report.matchings_enumerated, 6);
    }

    #[test]
    fn g1_prime_full_instance_has_no_popular_matching() {
        // Reduces to f1 = [0,0], s1 = [1,2], f2 = [1,2], s2 = [3,4].
        let full = FullInstance::new(
            5,
            vec![vec![0, 1, 3, 4, 2], vec![0, 2, 3, 4, 1]],
            vec![vec![1, 0, 3, 2, 4], vec![2, 0, 4, 1, 3]],
            WeightConfig::default(),
        )
        .unwrap();
        let report = find_popular(&full, DEFAULT_CAP).unwrap();
        assert_eq!(report.matchings_enumerated, 120);
        assert_eq!(report.popular_count, 0);
        assert!(report.matching.is_none());
    }

    #[test]
    fn search_agrees_with_is_popular() {
        for seed in 0..50 {
            let full = gen_full(2, 1, 4, seed).unwrap();
            let report = find_popular(&full, DEFAULT_CAP).unwrap();
            let all = all_popular(&full, DEFAULT_CAP).unwrap();
            assert_eq!(report.popular_count as usize, all.len());
            for p in &all {
                assert!(is_popular(p, &full, DEFAULT_CAP).unwrap());
            }
            assert_eq!(report.first(&full), all.first().cloned());
        }
    }
}
