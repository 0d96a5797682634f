//! Pattern counts on concrete instances and the finite-n bound formulas.
//!
//! All bounds are exact rationals; `f64` appears only when presenting them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fsgraph::{cycle_census, ComponentClass, FsGraph};
use crate::instance::{check_sizes, ReducedInstance};
use crate::wellformed::{find_witness, WitnessKind};

/// `C(n1, 2) · n2 · (n2 − 1)`: unordered A1 pairs times ordered A2 pairs.
pub fn count_t(n1: u64, n2: u64) -> u128 {
    let (n1, n2) = (n1 as u128, n2 as u128);
    if n1 < 2 || n2 < 2 {
        return 0;
    }
    n1 * (n1 - 1) / 2 * n2 * (n2 - 1)
}

/// Number of `(x1 < x2, y1 ≠ y2)` tuples forming a simple five-vertex path
/// `s2(y1) – s1(x1) – f1 – s1(x2) – s2(y2)` with `f2(yi) = s1(xi)`.
pub fn count_g1prime(reduced: &ReducedInstance) -> u64 {
    // s2 multiset of the A2 applicants naming each item first.
    let mut by_f2: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for (&f, &s) in reduced.f2().iter().zip(reduced.s2()) {
        *by_f2.entry(f).or_default().entry(s).or_default() += 1;
    }
    let mut by_f1: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &f) in reduced.f1().iter().enumerate() {
        by_f1.entry(f).or_default().push(x);
    }
    let empty = BTreeMap::new();
    let mut z = 0;
    for group in by_f1.values() {
        for (i, &x1) in group.iter().enumerate() {
            for &x2 in &group[i + 1..] {
                let (q, r) = (reduced.s1()[x1], reduced.s1()[x2]);
                if q == r {
                    continue;
                }
                let ya = by_f2.get(&q).unwrap_or(&empty);
                let yb = by_f2.get(&r).unwrap_or(&empty);
                let na: u64 = ya.values().sum();
                let nb: u64 = yb.values().sum();
                let same: u64 = ya
                    .iter()
                    .map(|(s, &ca)| ca * yb.get(s).copied().unwrap_or(0))
                    .sum();
                z += na * nb - same;
            }
        }
    }
    z
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ComponentCounts {
    pub tree: usize,
    pub unicyclic: usize,
    pub multicyclic: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessTag {
    None,
    G1,
    G2,
    G3,
}

impl From<Option<WitnessKind>> for WitnessTag {
    fn from(kind: Option<WitnessKind>) -> Self {
        match kind {
            None => WitnessTag::None,
            Some(WitnessKind::G1) => WitnessTag::G1,
            Some(WitnessKind::G2) => WitnessTag::G2,
            Some(WitnessKind::G3) => WitnessTag::G3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub z_g1prime: u64,
    pub component_counts: ComponentCounts,
    /// Lengths of the cycles of unicyclic components, in component order.
    pub cycle_lengths: Vec<usize>,
    pub has_cycle: bool,
    pub witness_kind: WitnessTag,
}

pub fn census(reduced: &ReducedInstance, graph: &FsGraph) -> CensusReport {
    let mut counts = ComponentCounts::default();
    for comp in graph.components() {
        match comp.class {
            ComponentClass::Tree => counts.tree += 1,
            ComponentClass::Unicyclic => counts.unicyclic += 1,
            ComponentClass::Multicyclic => counts.multicyclic += 1,
        }
    }
    let cycle_lengths = cycle_census(graph).iter().filter_map(|r| r.length).collect();
    CensusReport {
        z_g1prime: count_g1prime(reduced),
        component_counts: counts,
        cycle_lengths,
        has_cycle: counts.unicyclic + counts.multicyclic > 0,
        witness_kind: find_witness(graph).map(|w| w.kind).into(),
    }
}

/// How the constant `c` of the standing assumption `m − n ≥ m/c` is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CPolicy {
    /// The smallest admissible value `m/(m − n)`.
    Auto,
    Explicit(BigRational),
}

impl CPolicy {
    pub fn resolve(&self, n: u64, m: u64) -> Result<BigRational> {
        match self {
            CPolicy::Auto if m > n => Ok(ratio(m, m - n)),
            CPolicy::Auto => Err(Error::InvalidParameters(format!("m = {m} must exceed n = {n}"))),
            CPolicy::Explicit(c) => Ok(c.clone()),
        }
    }
}

impl FromStr for CPolicy {
    type Err = Error;

    /// Accepts `auto`, integers, `a/b` fractions and plain decimals.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("auto") {
            return Ok(CPolicy::Auto);
        }
        let bad = || Error::InvalidParameters(format!("cannot parse c = {s:?}"));
        let value = if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
            BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32))
        } else {
            s.parse::<BigRational>().map_err(|_| bad())?
        };
        if value <= BigRational::zero() {
            return Err(bad());
        }
        Ok(CPolicy::Explicit(value))
    }
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn int(a: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(a))
}

/// Exact rational that serializes as `{"exact": "p/q", "approx": f64}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exact(pub BigRational);

impl Exact {
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Exact", 2)?;
        st.serialize_field("exact", &self.0.to_string())?;
        st.serialize_field("approx", &self.to_f64())?;
        st.end()
    }
}

// m − n ≥ m/c, i.e. c(m − n) ≥ m.
fn check_c(n: u64, m: u64, c: &BigRational) -> Result<()> {
    if m < n || c * int((m - n) as u128) < int(m as u128) {
        return Err(Error::CTooSmall { c: c.to_string() });
    }
    Ok(())
}

/// `(|T|/m³, c²|T|/m³)`.
pub fn ez_bounds(n1: u64, n2: u64, m: u64, c: &BigRational) -> Result<(BigRational, BigRational)> {
    check_c(n1 + n2, m, c)?;
    let low = int(count_t(n1, n2)) / int((m as u128).pow(3));
    let high = c * c * &low;
    Ok((low, high))
}

/// `(c²|T|/m³) · B` with the unrelaxed variance bracket `B`.
pub fn var_upper(n1: u64, n2: u64, m: u64, c: &BigRational) -> Result<BigRational> {
    let (_, high) = ez_bounds(n1, n2, m, c)?;
    Ok(high * variance_bracket(n1, n2, m, c))
}

/// The bracket `B ≥ 1` multiplying `c²|T|/m³` in [`var_upper`].
pub fn variance_bracket(n1: u64, n2: u64, m: u64, c: &BigRational) -> BigRational {
    let n = int((n1 + n2) as u128);
    let m = int(m as u128);
    let d = int(n1 as u128) / &n;
    let e = BigRational::one() - &d;
    let c2 = c * c;
    let (n2_, n3) = (&n * &n, &n * &n * &n);
    let (m2, m3) = (&m * &m, &m * &m * &m);
    let two = int(2);
    let four = int(4);
    BigRational::one()
        + &c2 * &e * &e * &n2_ / &m2
        + &two * c * &e * &n / &m
        + &four * &c2 * &d * &e * &e * &n3 / &m3
        + &four * c * &d * &e * &n2_ / &m2
        + &four * c * &d * &n / &m2
        + &two * &c2 * &d * &d * &e * &n3 / &m3
        + &c2 * &d * &d * &n2_ / &m3
}

/// `min(1, var_upper / ez_low²)`, an upper bound on `Pr[Z = 0]`.
pub fn cheby_pr_z0(n1: u64, n2: u64, m: u64, c: &BigRational) -> Result<BigRational> {
    let (low, _) = ez_bounds(n1, n2, m, c)?;
    if low.is_zero() {
        return Err(Error::TEmpty);
    }
    let v = var_upper(n1, n2, m, c)? / (&low * &low);
    Ok(v.min(BigRational::one()))
}

fn geometric_ratio(n: u64, m: u64, c: &BigRational) -> Result<BigRational> {
    check_c(n, m, c)?;
    let x = c * c * ratio(n, m);
    if x >= BigRational::one() {
        return Err(Error::Divergent {
            ratio: format!("{:.6}", x.to_f64().unwrap_or(f64::INFINITY)),
        });
    }
    Ok(x)
}

/// `x²/(1 − x)` with `x = c²n/m`: bound on the probability of any cycle.
pub fn cycle_pr(n: u64, m: u64, c: &BigRational) -> Result<BigRational> {
    let x = geometric_ratio(n, m, c)?;
    Ok(&x * &x / (BigRational::one() - &x))
}

/// `(c⁸n⁴/m³)/(1 − x)`: bound on the probability of a G1 path.
pub fn path_pr(n: u64, m: u64, c: &BigRational) -> Result<BigRational> {
    let x = geometric_ratio(n, m, c)?;
    let x4 = &x * &x * &x * &x;
    Ok(x4 * int(m as u128) / (BigRational::one() - &x))
}

/// Every bound at one parameter point; undefined entries are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalyticBounds {
    pub n1: u64,
    pub n2: u64,
    pub m: u64,
    pub c: Exact,
    pub delta: Exact,
    pub t_size: u128,
    pub ez_low: Exact,
    pub ez_high: Exact,
    pub var_high: Exact,
    pub cheby_pr_z0: Option<Exact>,
    pub cycle_pr: Option<Exact>,
    pub path_pr: Option<Exact>,
}

pub fn bounds(n1: u64, n2: u64, m: u64, policy: &CPolicy) -> Result<AnalyticBounds> {
    check_sizes(n1 as usize, n2 as usize, m as usize)?;
    let n = n1 + n2;
    let c = policy.resolve(n, m)?;
    let (low, high) = ez_bounds(n1, n2, m, &c)?;
    let var = var_upper(n1, n2, m, &c)?;
    let optional = |r: Result<BigRational>| match r {
        Ok(v) => Ok(Some(Exact(v))),
        Err(Error::TEmpty | Error::Divergent { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    Ok(AnalyticBounds {
        n1,
        n2,
        m,
        delta: Exact(ratio(n1, n)),
        t_size: count_t(n1, n2),
        ez_low: Exact(low),
        ez_high: Exact(high),
        var_high: Exact(var),
        cheby_pr_z0: optional(cheby_pr_z0(n1, n2, m, &c))?,
        cycle_pr: optional(cycle_pr(n, m, &c))?,
        path_pr: optional(path_pr(n, m, &c))?,
        c: Exact(c),
    })
}
