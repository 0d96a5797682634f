//! Problem instances: complete strict preference lists over `m` items for two
//! weighted categories of applicants, and their reduction to first/second
//! items.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{below, permutation, rng_from_seed};

/// Applicant category. `A1` carries the larger weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    A1,
    A2,
}

/// An applicant, identified by category and index within the category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Applicant {
    pub category: Category,
    pub index: usize,
}

impl fmt::Display for Applicant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.category {
            Category::A1 => write!(f, "x{}", self.index),
            Category::A2 => write!(f, "y{}", self.index),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightConfig {
    w1: u64,
    w2: u64,
}

impl WeightConfig {
    pub fn new(w1: u64, w2: u64) -> Result<Self> {
        if !(w1 > w2 && w2 > 0) {
            return Err(Error::InvalidParameters(format!(
                "weights must satisfy w1 > w2 > 0, got ({w1}, {w2})"
            )));
        }
        Ok(WeightConfig { w1, w2 })
    }

    pub fn w1(&self) -> u64 {
        self.w1
    }

    pub fn w2(&self) -> u64 {
        self.w2
    }

    pub fn weight(&self, category: Category) -> u64 {
        match category {
            Category::A1 => self.w1,
            Category::A2 => self.w2,
        }
    }

    /// `w1 >= 2 * w2`: the regime in which well-formed and popular matchings
    /// coincide.
    pub fn dominant(&self) -> bool {
        self.w1 >= 2 * self.w2
    }
}

impl Default for WeightConfig {
    fn default() -> Self {
        WeightConfig { w1: 2, w2: 1 }
    }
}

/// Checks `n1 >= 1`, `n2 >= 1` and `m >= n1 + n2 + 1`.
pub fn check_sizes(n1: usize, n2: usize, m: usize) -> Result<()> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidParameters(format!(
            "both categories must be nonempty, got n1 = {n1}, n2 = {n2}"
        )));
    }
    if m < n1 + n2 + 1 {
        return Err(Error::InvalidParameters(format!(
            "need m >= n1 + n2 + 1 = {}, got m = {m}",
            n1 + n2 + 1
        )));
    }
    Ok(())
}

/// Complete strict instance: every preference list is a permutation of
/// `0..m`, most preferred first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullInstance {
    m: usize,
    prefs_a1: Vec<Vec<usize>>,
    prefs_a2: Vec<Vec<usize>>,
    weights: WeightConfig,
}

impl FullInstance {
    pub fn new(
        m: usize,
        prefs_a1: Vec<Vec<usize>>,
        prefs_a2: Vec<Vec<usize>>,
        weights: WeightConfig,
    ) -> Result<Self> {
        check_sizes(prefs_a1.len(), prefs_a2.len(), m)?;
        for (name, lists) in [("prefs_a1", &prefs_a1), ("prefs_a2", &prefs_a2)] {
            for (i, list) in lists.iter().enumerate() {
                if !is_permutation(list, m) {
                    return Err(Error::InvalidParameters(format!(
                        "{name}[{i}] is not a permutation of 0..{m}"
                    )));
                }
            }
        }
        Ok(FullInstance {
            m,
            prefs_a1,
            prefs_a2,
            weights,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n1(&self) -> usize {
        self.prefs_a1.len()
    }

    pub fn n2(&self) -> usize {
        self.prefs_a2.len()
    }

    pub fn prefs_a1(&self) -> &[Vec<usize>] {
        &self.prefs_a1
    }

    pub fn prefs_a2(&self) -> &[Vec<usize>] {
        &self.prefs_a2
    }

    pub fn weights(&self) -> WeightConfig {
        self.weights
    }

    pub fn with_weights(mut self, weights: WeightConfig) -> Self {
        self.weights = weights;
        self
    }

    pub fn prefs(&self, applicant: Applicant) -> &[usize] {
        match applicant.category {
            Category::A1 => &self.prefs_a1[applicant.index],
            Category::A2 => &self.prefs_a2[applicant.index],
        }
    }
}

fn is_permutation(list: &[usize], m: usize) -> bool {
    if list.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    for &p in list {
        if p >= m || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// Membership of one item in the four derived item sets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    pub in_f1: bool,
    pub in_s1: bool,
    pub in_f2: bool,
    pub in_s2: bool,
}

impl Roles {
    pub fn any(&self) -> bool {
        self.in_f1 || self.in_s1 || self.in_f2 || self.in_s2
    }

    /// Item must receive exactly one applicant that names it first.
    pub fn is_f(&self) -> bool {
        self.in_f1 || self.in_f2
    }
}

impl fmt::Display for Roles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.in_f1 {
            parts.push("F1");
        }
        if self.in_s1 {
            parts.push("S1");
        }
        if self.in_f2 {
            parts.push("F2");
        }
        if self.in_s2 {
            parts.push("S2");
        }
        write!(f, "{}", parts.join(","))
    }
}

/// First and second items of every applicant.
///
/// Construction only checks lengths and item ranges; the set-disjointness
/// rules are reported by [`validate`] so that hand-written files can be
/// diagnosed rather than rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance {
    m: usize,
    weights: WeightConfig,
    f1: Vec<usize>,
    s1: Vec<usize>,
    f2: Vec<usize>,
    s2: Vec<usize>,
}

impl ReducedInstance {
    pub fn new(
        m: usize,
        weights: WeightConfig,
        f1: Vec<usize>,
        s1: Vec<usize>,
        f2: Vec<usize>,
        s2: Vec<usize>,
    ) -> Result<Self> {
        if f1.len() != s1.len() {
            return Err(Error::InvalidParameters(format!(
                "f1 and s1 lengths differ ({} vs {})",
                f1.len(),
                s1.len()
            )));
        }
        if f2.len() != s2.len() {
            return Err(Error::InvalidParameters(format!(
                "f2 and s2 lengths differ ({} vs {})",
                f2.len(),
                s2.len()
            )));
        }
        for (name, list) in [("f1", &f1), ("s1", &s1), ("f2", &f2), ("s2", &s2)] {
            if let Some(i) = list.iter().position(|&p| p >= m) {
                return Err(Error::InvalidParameters(format!(
                    "{name}[{i}] = {} is outside 0..{m}",
                    list[i]
                )));
            }
        }
        Ok(ReducedInstance {
            m,
            weights,
            f1,
            s1,
            f2,
            s2,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n1(&self) -> usize {
        self.f1.len()
    }

    pub fn n2(&self) -> usize {
        self.f2.len()
    }

    pub fn n(&self) -> usize {
        self.n1() + self.n2()
    }

    pub fn weights(&self) -> WeightConfig {
        self.weights
    }

    pub fn with_weights(mut self, weights: WeightConfig) -> Self {
        self.weights = weights;
        self
    }

    pub fn f1(&self) -> &[usize] {
        &self.f1
    }

    pub fn s1(&self) -> &[usize] {
        &self.s1
    }

    pub fn f2(&self) -> &[usize] {
        &self.f2
    }

    pub fn s2(&self) -> &[usize] {
        &self.s2
    }

    /// `(f-item, s-item)` of an applicant.
    pub fn items_of(&self, applicant: Applicant) -> (usize, usize) {
        match applicant.category {
            Category::A1 => (self.f1[applicant.index], self.s1[applicant.index]),
            Category::A2 => (self.f2[applicant.index], self.s2[applicant.index]),
        }
    }

    /// Role flags indexed by item id.
    pub fn roles(&self) -> Vec<Roles> {
        let mut roles = vec![Roles::default(); self.m];
        for &p in &self.f1 {
            roles[p].in_f1 = true;
        }
        for &p in &self.s1 {
            roles[p].in_s1 = true;
        }
        for &p in &self.f2 {
            roles[p].in_f2 = true;
        }
        for &p in &self.s2 {
            roles[p].in_s2 = true;
        }
        roles
    }

    /// Sorted, deduplicated item set.
    pub fn set_f1(&self) -> Vec<usize> {
        sorted_set(&self.f1)
    }

    pub fn set_s1(&self) -> Vec<usize> {
        sorted_set(&self.s1)
    }

    pub fn set_f2(&self) -> Vec<usize> {
        sorted_set(&self.f2)
    }

    pub fn set_s2(&self) -> Vec<usize> {
        sorted_set(&self.s2)
    }

    /// `|I - F1|`.
    pub fn pool_r1(&self) -> usize {
        self.m - self.set_f1().len()
    }

    /// `|I - (F1 ∪ F2)|`.
    pub fn pool_r2(&self) -> usize {
        let mut f = self.f1.clone();
        f.extend_from_slice(&self.f2);
        self.m - sorted_set(&f).len()
    }
}

fn sorted_set(items: &[usize]) -> Vec<usize> {
    let mut v = items.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// A violated [`ReducedInstance`] invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Violation {
    EmptyCategory { category: Category },
    TooFewItems { m: usize, n: usize },
    S1InF1 { index: usize, item: usize },
    F2InF1 { index: usize, item: usize },
    S2InF1 { index: usize, item: usize },
    S2InF2 { index: usize, item: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::EmptyCategory { category } => write!(f, "category {category:?} is empty"),
            Violation::TooFewItems { m, n } => write!(f, "m = {m} < n + 1 = {}", n + 1),
            Violation::S1InF1 { index, item } => {
                write!(f, "s1[{index}] = {item} ∈ F1 (F1∩S1 ≠ ∅)")
            }
            Violation::F2InF1 { index, item } => {
                write!(f, "f2[{index}] = {item} ∈ F1 (F1∩F2 ≠ ∅)")
            }
            Violation::S2InF1 { index, item } => {
                write!(f, "s2[{index}] = {item} ∈ F1 (F1∩S2 ≠ ∅)")
            }
            Violation::S2InF2 { index, item } => {
                write!(f, "s2[{index}] = {item} ∈ F2 (F2∩S2 ≠ ∅)")
            }
        }
    }
}

/// Every violated invariant of `reduced`; empty means valid.
pub fn validate(reduced: &ReducedInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    if reduced.n1() == 0 {
        out.push(Violation::EmptyCategory {
            category: Category::A1,
        });
    }
    if reduced.n2() == 0 {
        out.push(Violation::EmptyCategory {
            category: Category::A2,
        });
    }
    if reduced.m < reduced.n() + 1 {
        out.push(Violation::TooFewItems {
            m: reduced.m,
            n: reduced.n(),
        });
    }
    let roles = reduced.roles();
    for (index, &item) in reduced.s1.iter().enumerate() {
        if roles[item].in_f1 {
            out.push(Violation::S1InF1 { index, item });
        }
    }
    for (index, &item) in reduced.f2.iter().enumerate() {
        if roles[item].in_f1 {
            out.push(Violation::F2InF1 { index, item });
        }
    }
    for (index, &item) in reduced.s2.iter().enumerate() {
        if roles[item].in_f1 {
            out.push(Violation::S2InF1 { index, item });
        }
        if roles[item].in_f2 {
            out.push(Violation::S2InF2 { index, item });
        }
    }
    out
}

/// Independent uniform permutations for every applicant.
pub fn gen_full(n1: usize, n2: usize, m: usize, seed: u64) -> Result<FullInstance> {
    check_sizes(n1, n2, m)?;
    let mut rng = rng_from_seed(seed);
    let prefs_a1 = (0..n1).map(|_| permutation(&mut rng, m)).collect();
    let prefs_a2 = (0..n2).map(|_| permutation(&mut rng, m)).collect();
    Ok(FullInstance {
        m,
        prefs_a1,
        prefs_a2,
        weights: WeightConfig::default(),
    })
}

/// Draws first and second items directly:
/// f1 uniform on `I` (with replacement), s1 uniform on `I - F1`, f2 uniform
/// on `I - F1`, s2 uniform on `I - (F1 ∪ F2)`, each phase after the previous
/// set is fixed.
pub fn gen_reduced(n1: usize, n2: usize, m: usize, seed: u64) -> Result<ReducedInstance> {
    check_sizes(n1, n2, m)?;
    let mut rng = rng_from_seed(seed);
    let mut blocked = vec![false; m];

    let f1: Vec<usize> = (0..n1).map(|_| below(&mut rng, m)).collect();
    for &p in &f1 {
        blocked[p] = true;
    }
    let s1: Vec<usize> = (0..n1).map(|_| draw_outside(&mut rng, &blocked)).collect();
    let f2: Vec<usize> = (0..n2).map(|_| draw_outside(&mut rng, &blocked)).collect();
    for &p in &f2 {
        blocked[p] = true;
    }
    let s2: Vec<usize> = (0..n2).map(|_| draw_outside(&mut rng, &blocked)).collect();

    Ok(ReducedInstance {
        m,
        weights: WeightConfig::default(),
        f1,
        s1,
        f2,
        s2,
    })
}

// Rejection sampling: uniform on the unblocked items.
fn draw_outside<R: rand::Rng>(rng: &mut R, blocked: &[bool]) -> usize {
    loop {
        let p = below(rng, blocked.len());
        if !blocked[p] {
            return p;
        }
    }
}

/// First and second items of a full instance.
pub fn reduce(full: &FullInstance) -> ReducedInstance {
    let m = full.m;
    let mut in_f1 = vec![false; m];
    let f1: Vec<usize> = full.prefs_a1.iter().map(|l| l[0]).collect();
    for &p in &f1 {
        in_f1[p] = true;
    }
    let first_outside = |list: &[usize], blocked: &[bool]| {
        *list
            .iter()
            .find(|&&p| !blocked[p])
            .expect("pool nonempty since m > n")
    };
    let s1 = full
        .prefs_a1
        .iter()
        .map(|l| first_outside(l, &in_f1))
        .collect();
    let f2: Vec<usize> = full
        .prefs_a2
        .iter()
        .map(|l| first_outside(l, &in_f1))
        .collect();
    let mut in_f12 = in_f1;
    for &p in &f2 {
        in_f12[p] = true;
    }
    let s2 = full
        .prefs_a2
        .iter()
        .map(|l| first_outside(l, &in_f12))
        .collect();
    ReducedInstance {
        m,
        weights: full.weights,
        f1,
        s1,
        f2,
        s2,
    }
}

/// Either kind of instance, as stored in an instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Full(FullInstance),
    Reduced(ReducedInstance),
}

impl Instance {
    pub fn to_reduced(&self) -> ReducedInstance {
        match self {
            Instance::Full(f) => reduce(f),
            Instance::Reduced(r) => r.clone(),
        }
    }

    pub fn weights(&self) -> WeightConfig {
        match self {
            Instance::Full(f) => f.weights,
            Instance::Reduced(r) => r.weights,
        }
    }

    pub fn to_json(&self) -> String {
        let file = match self {
            Instance::Full(f) => InstanceFile {
                version: 1,
                kind: "full".into(),
                m: f.m,
                w1: f.weights.w1,
                w2: f.weights.w2,
                prefs_a1: Some(f.prefs_a1.clone()),
                prefs_a2: Some(f.prefs_a2.clone()),
                ..Default::default()
            },
            Instance::Reduced(r) => InstanceFile {
                version: 1,
                kind: "reduced".into(),
                m: r.m,
                w1: r.weights.w1,
                w2: r.weights.w2,
                f1: Some(r.f1.clone()),
                s1: Some(r.s1.clone()),
                f2: Some(r.f2.clone()),
                s2: Some(r.s2.clone()),
                ..Default::default()
            },
        };
        let mut s = serde_json::to_string(&file).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        file.into_instance()
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    version: u32,
    kind: String,
    m: usize,
    w1: u64,
    w2: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prefs_a1: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prefs_a2: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f1: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s1: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f2: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s2: Option<Vec<usize>>,
}

impl InstanceFile {
    fn into_instance(self) -> Result<Instance> {
        if self.version != 1 {
            return Err(Error::Format(format!("unsupported version {}", self.version)));
        }
        let weights = WeightConfig::new(self.w1, self.w2)?;
        let has_full = self.prefs_a1.is_some() || self.prefs_a2.is_some();
        let has_reduced =
            self.f1.is_some() || self.s1.is_some() || self.f2.is_some() || self.s2.is_some();
        match self.kind.as_str() {
            "full" => {
                if has_reduced {
                    return Err(Error::Format("full instance carries f/s fields".into()));
                }
                let (Some(a1), Some(a2)) = (self.prefs_a1, self.prefs_a2) else {
                    return Err(Error::Format("full instance needs prefs_a1 and prefs_a2".into()));
                };
                Ok(Instance::Full(FullInstance::new(self.m, a1, a2, weights)?))
            }
            "reduced" => {
                if has_full {
                    return Err(Error::Format("reduced instance carries prefs fields".into()));
                }
                let (Some(f1), Some(s1), Some(f2), Some(s2)) = (self.f1, self.s1, self.f2, self.s2)
                else {
                    return Err(Error::Format("reduced instance needs f1, s1, f2 and s2".into()));
                };
                Ok(Instance::Reduced(ReducedInstance::new(
                    self.m, weights, f1, s1, f2, s2,
                )?))
            }
            other => Err(Error::Format(format!("unknown kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w21() -> WeightConfig {
        WeightConfig::new(2, 1).unwrap()
    }

    /// Direct re-reading of the first/second item rules with explicit sets,
    /// kept separate from `reduce`.
    fn scan_reduce(m: usize, a1: &[Vec<usize>], a2: &[Vec<usize>]) -> [Vec<usize>; 4] {
        use std::collections::BTreeSet;
        let f1: Vec<usize> = a1.iter().map(|l| l[0]).collect();
        let set_f1: BTreeSet<usize> = f1.iter().copied().collect();
        let s1 = a1
            .iter()
            .map(|l| l.iter().copied().find(|p| !set_f1.contains(p)).unwrap())
            .collect();
        let f2: Vec<usize> = a2
            .iter()
            .map(|l| l.iter().copied().find(|p| !set_f1.contains(p)).unwrap())
            .collect();
        let union: BTreeSet<usize> = set_f1.iter().chain(f2.iter()).copied().collect();
        let s2 = a2
            .iter()
            .map(|l| l.iter().copied().find(|p| !union.contains(p)).unwrap())
            .collect();
        assert!(m > 0);
        [f1, s1, f2, s2]
    }

    #[test]
    fn weights_reject_non_decreasing() {
        assert!(WeightConfig::new(1, 1).is_err());
        assert!(WeightConfig::new(1, 2).is_err());
        assert!(WeightConfig::new(3, 0).is_err());
        assert!(WeightConfig::new(2, 1).unwrap().dominant());
        assert!(!WeightConfig::new(3, 2).unwrap().dominant());
    }

    #[test]
    fn gen_full_is_deterministic() {
        let a = gen_full(2, 2, 8, 42).unwrap();
        let b = gen_full(2, 2, 8, 42).unwrap();
        assert_eq!(Instance::Full(a.clone()).to_json(), Instance::Full(b).to_json());
        let mut p = a.prefs_a1()[0].clone();
        p.sort_unstable();
        assert_eq!(p, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn gen_rejects_small_m() {
        assert!(matches!(gen_full(1, 1, 2, 0), Err(Error::InvalidParameters(_))));
        assert!(matches!(gen_reduced(1, 1, 2, 0), Err(Error::InvalidParameters(_))));
        assert!(matches!(gen_full(0, 1, 5, 0), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn gen_reduced_satisfies_invariants() {
        let r = gen_reduced(2, 2, 8, 7).unwrap();
        assert!(validate(&r).is_empty());
    }

    #[test]
    fn gen_reduced_forced_s2_at_minimum_size() {
        for seed in 0..200 {
            let r = gen_reduced(1, 1, 3, seed).unwrap();
            let used = [r.f1()[0], r.f2()[0]];
            let rest: Vec<usize> = (0..3).filter(|p| !used.contains(p)).collect();
            assert_eq!(rest, vec![r.s2()[0]]);
        }
    }

    #[test]
    fn reduce_worked_example() {
        let full = FullInstance::new(
            5,
            vec![vec![0, 1, 2, 3, 4], vec![0, 2, 1, 3, 4]],
            vec![vec![0, 1, 3, 2, 4], vec![0, 2, 4, 1, 3]],
            w21(),
        )
        .unwrap();
        let r = reduce(&full);
        assert_eq!(r.f1(), &[0, 0]);
        assert_eq!(r.s1(), &[1, 2]);
        assert_eq!(r.f2(), &[1, 2]);
        assert_eq!(r.s2(), &[3, 4]);
        assert_eq!(r.set_f1(), vec![0]);
        assert_eq!(r.set_f2(), vec![1, 2]);
        let [f1, s1, f2, s2] = scan_reduce(5, full.prefs_a1(), full.prefs_a2());
        assert_eq!((f1, s1, f2, s2), (r.f1.clone(), r.s1.clone(), r.f2.clone(), r.s2.clone()));
    }

    #[test]
    fn reduce_path_example() {
        let full = FullInstance::new(3, vec![vec![0, 1, 2]], vec![vec![1, 0, 2]], w21()).unwrap();
        let r = reduce(&full);
        assert_eq!((r.f1(), r.s1(), r.f2(), r.s2()), (&[0][..], &[1][..], &[1][..], &[2][..]));
    }

    #[test]
    fn reduce_single_a1_takes_second_entry() {
        for seed in 0..50 {
            let full = gen_full(1, 3, 9, seed).unwrap();
            let r = reduce(&full);
            assert_eq!(r.f1()[0], full.prefs_a1()[0][0]);
            assert_eq!(r.s1()[0], full.prefs_a1()[0][1]);
        }
    }

    #[test]
    fn reduce_matches_scan_on_random_instances() {
        for seed in 0..300 {
            let full = gen_full(3, 4, 10, seed).unwrap();
            let r = reduce(&full);
            let [f1, s1, f2, s2] = scan_reduce(10, full.prefs_a1(), full.prefs_a2());
            assert_eq!(r.f1(), &f1[..]);
            assert_eq!(r.s1(), &s1[..]);
            assert_eq!(r.f2(), &f2[..]);
            assert_eq!(r.s2(), &s2[..]);
            assert!(validate(&r).is_empty());
        }
    }

    #[test]
    fn validate_reports_rule_violations() {
        let r = ReducedInstance::new(5, w21(), vec![0], vec![0], vec![1], vec![2]).unwrap();
        let v = validate(&r);
        assert_eq!(v, vec![Violation::S1InF1 { index: 0, item: 0 }]);
        assert!(v[0].to_string().contains("s1[0]"));

        let r = ReducedInstance::new(5, w21(), vec![0], vec![1], vec![2], vec![2]).unwrap();
        let v = validate(&r);
        assert_eq!(v, vec![Violation::S2InF2 { index: 0, item: 2 }]);
        assert!(v[0].to_string().contains("F2∩S2 ≠ ∅"));

        let r = ReducedInstance::new(2, w21(), vec![0], vec![1], vec![0], vec![0]).unwrap();
        let v = validate(&r);
        assert!(v.contains(&Violation::TooFewItems { m: 2, n: 2 }));
        assert!(v.contains(&Violation::F2InF1 { index: 0, item: 0 }));
        assert!(v.contains(&Violation::S2InF1 { index: 0, item: 0 }));
    }

    #[test]
    fn pool_sizes_within_bounds() {
        for seed in 0..100 {
            let r = gen_reduced(4, 5, 12, seed).unwrap();
            let (m, n1, n) = (12, 4, 9);
            assert!(m - n1 <= r.pool_r1() && r.pool_r1() <= m);
            assert!(m - n <= r.pool_r2() && r.pool_r2() <= m);
        }
    }

    #[test]
    fn instance_file_round_trip_and_rejections() {
        let full = Instance::Full(gen_full(2, 3, 7, 5).unwrap());
        assert_eq!(Instance::from_json(&full.to_json()).unwrap(), full);
        let red = Instance::Reduced(gen_reduced(2, 3, 7, 5).unwrap());
        assert_eq!(Instance::from_json(&red.to_json()).unwrap(), red);

        let unknown = r#"{"version":1,"kind":"reduced","m":5,"w1":2,"w2":1,
            "f1":[0],"s1":[1],"f2":[1],"s2":[2],"extra":3}"#;
        assert!(Instance::from_json(unknown).is_err());
        let out_of_range = r#"{"version":1,"kind":"reduced","m":3,"w1":2,"w2":1,
            "f1":[0],"s1":[1],"f2":[1],"s2":[3]}"#;
        assert!(Instance::from_json(out_of_range).is_err());
        let bad_perm = r#"{"version":1,"kind":"full","m":3,"w1":2,"w2":1,
            "prefs_a1":[[0,0,1]],"prefs_a2":[[0,1,2]]}"#;
        assert!(Instance::from_json(bad_perm).is_err());
        let mixed = r#"{"version":1,"kind":"full","m":3,"w1":2,"w2":1,
            "prefs_a1":[[0,1,2]],"prefs_a2":[[0,1,2]],"f1":[0]}"#;
        assert!(Instance::from_json(mixed).is_err());
        let version = r#"{"version":2,"kind":"reduced","m":5,"w1":2,"w2":1,
            "f1":[0],"s1":[1],"f2":[1],"s2":[2]}"#;
        assert!(Instance::from_json(version).is_err());
    }
}
