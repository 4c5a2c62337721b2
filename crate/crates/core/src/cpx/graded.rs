use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repcat::{Category, DimVec, IsoClassId};

/// Period of the complexes: `0` for bounded complexes, otherwise an odd positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct PeriodSpec {
    t: u32,
}

impl TryFrom<i64> for PeriodSpec {
    type Error = Error;
    fn try_from(t: i64) -> Result<Self> {
        PeriodSpec::new(t)
    }
}

impl From<PeriodSpec> for i64 {
    fn from(p: PeriodSpec) -> i64 {
        p.t as i64
    }
}

impl PeriodSpec {
    pub fn new(t: i64) -> Result<Self> {
        if t < 0 || (t > 0 && t % 2 == 0) || t > u32::MAX as i64 {
            return Err(Error::UnsupportedPeriod(t));
        }
        Ok(PeriodSpec { t: t as u32 })
    }

    pub fn bounded() -> Self {
        PeriodSpec { t: 0 }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn is_bounded(&self) -> bool {
        self.t == 0
    }

    /// Representative of a degree: itself for `t = 0`, its residue in `[0, t)` otherwise.
    pub fn degree(&self, i: i64) -> i64 {
        if self.t == 0 {
            i
        } else {
            i.rem_euclid(self.t as i64)
        }
    }
}

/// A complex with zero differentials, recorded by the class of each nonzero component.
/// Components are kept sorted by degree and zero components are never stored, so structural
/// equality is isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedObject {
    period: PeriodSpec,
    comps: Vec<(i64, IsoClassId)>,
}

impl GradedObject {
    pub fn zero(period: PeriodSpec) -> Self {
        GradedObject {
            period,
            comps: Vec::new(),
        }
    }

    /// Builds a graded object; degrees are reduced mod `t` and must then be distinct.
    pub fn new(period: PeriodSpec, comps: impl IntoIterator<Item = (i64, IsoClassId)>) -> Result<Self> {
        let mut v: Vec<(i64, IsoClassId)> = comps
            .into_iter()
            .map(|(i, x)| (period.degree(i), x))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        v.sort();
        if v.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::IncompatibleObjects("two components in the same degree".into()));
        }
        Ok(GradedObject { period, comps: v })
    }

    pub fn stalk(period: PeriodSpec, x: IsoClassId, degree: i64) -> Self {
        GradedObject::new(period, [(degree, x)]).expect("single component")
    }

    pub fn period(&self) -> PeriodSpec {
        self.period
    }

    pub fn components(&self) -> &[(i64, IsoClassId)] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn get(&self, i: i64) -> Option<IsoClassId> {
        let i = self.period.degree(i);
        self.comps.iter().find(|(d, _)| *d == i).map(|(_, x)| *x)
    }

    /// Component at degree `i`, the zero class when absent.
    pub fn at(&self, cat: &Category, i: i64) -> IsoClassId {
        self.get(i).unwrap_or_else(|| cat.zero())
    }

    pub fn dims_at(&self, cat: &Category, i: i64) -> DimVec {
        self.get(i).map_or_else(|| cat.zero_dims(), |x| x.dims())
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.comps.first().map(|c| c.0)
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.comps.last().map(|c| c.0)
    }

    /// Number of degrees from the lowest to the highest nonzero component, inclusive.
    pub fn width(&self) -> usize {
        match (self.min_degree(), self.max_degree()) {
            (Some(a), Some(b)) => (b - a + 1) as usize,
            _ => 0,
        }
    }

    /// `self[s]`, with `(self[s])^j = self^{j+s}`: the component in degree `i` moves to `i - s`.
    pub fn shift(&self, s: i64) -> GradedObject {
        GradedObject::new(self.period, self.comps.iter().map(|&(i, x)| (i - s, x)))
            .expect("shift keeps degrees distinct")
    }

    pub fn total_dim(&self) -> usize {
        self.comps.iter().map(|(_, x)| x.dims().total()).sum()
    }

    /// Degrees to iterate over for degree-wise formulas: `0..t` for periodic objects, the
    /// given bounded range otherwise.
    pub fn degrees(period: PeriodSpec, lo: i64, hi: i64) -> Vec<i64> {
        if period.is_bounded() {
            (lo..=hi).collect()
        } else {
            (0..period.t() as i64).collect()
        }
    }

    pub fn parse(cat: &Category, period: PeriodSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("graded object {s:?} must be enclosed in brackets")))?;
        let mut comps = Vec::new();
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (label, deg) = part
                .split_once('@')
                .ok_or_else(|| Error::Parse(format!("component {part:?} needs the form class@degree")))?;
            let deg: i64 = deg
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad degree in {part:?}")))?;
            comps.push((deg, cat.parse_label(label)?));
        }
        GradedObject::new(period, comps)
    }
}

impl fmt::Display for GradedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (n, (i, x)) in self.comps.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}@{i}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for GradedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Every graded object whose components lie in the given degrees, with each component's
/// total dimension at most `per_degree` and the overall total at most `max_total`.
pub fn enumerate_graded(
    cat: &Category,
    period: PeriodSpec,
    degrees: &[i64],
    per_degree: usize,
    max_total: usize,
) -> Result<Vec<GradedObject>> {
    let pool = cat.classes_up_to(per_degree.min(max_total))?;
    let mut out = Vec::new();
    let mut cur: Vec<(i64, IsoClassId)> = Vec::new();
    fn rec(
        period: PeriodSpec,
        degrees: &[i64],
        pool: &[IsoClassId],
        left: usize,
        cur: &mut Vec<(i64, IsoClassId)>,
        out: &mut Vec<GradedObject>,
    ) -> Result<()> {
        let Some((&d, rest)) = degrees.split_first() else {
            out.push(GradedObject::new(period, cur.iter().copied())?);
            return Ok(());
        };
        for x in pool {
            let n = x.dims().total();
            if n > left {
                continue;
            }
            cur.push((d, *x));
            rec(period, rest, pool, left - n, cur, out)?;
            cur.pop();
        }
        Ok(())
    }
    rec(period, degrees, &pool, max_total, &mut cur, &mut out)?;
    out.sort();
    out.dedup();
    Ok(out)
}
