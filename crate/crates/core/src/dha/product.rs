//! Structure constants of the algebras on graded objects.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{q_exponent, QSqrt};
use super::vector::HallVector;
use crate::cpx::{hom_dt_count, ComplexRegistry, GradedObject, PeriodSpec};
use crate::error::{Error, Result};
use crate::hall::{aut, euler_q, ext1_count, extensions, hall_table, rat, rat_u64};
use crate::repcat::{Category, IsoClassId};

/// `c * v^e` with `c` rational, kept apart until the very end so that square roots never mix
/// into sums prematurely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: BigRational,
    pub v_exp: i64,
}

impl Monomial {
    pub fn to_scalar(&self, q: u32) -> QSqrt {
        QSqrt::monomial(self.coeff.clone(), self.v_exp, q)
    }
}

/// Shared state for products over one category and one period.
pub struct DhaContext<'c> {
    cat: &'c Category,
    period: PeriodSpec,
    complexes: ComplexRegistry<'c>,
    products: RwLock<HashMap<(GradedObject, GradedObject), Arc<HallVector>>>,
    a_primes: RwLock<HashMap<GradedObject, Monomial>>,
}

impl<'c> DhaContext<'c> {
    pub fn new(cat: &'c Category, period: PeriodSpec) -> Self {
        DhaContext {
            cat,
            period,
            complexes: ComplexRegistry::new(cat, period),
            products: RwLock::new(HashMap::new()),
            a_primes: RwLock::new(HashMap::new()),
        }
    }

    pub fn category(&self) -> &'c Category {
        self.cat
    }

    pub fn period(&self) -> PeriodSpec {
        self.period
    }

    pub fn q(&self) -> u32 {
        self.cat.q()
    }

    /// Classification of genuine complexes of the same period, used by the counting oracles.
    pub fn complexes(&self) -> &ComplexRegistry<'c> {
        &self.complexes
    }

    pub fn zero_object(&self) -> GradedObject {
        GradedObject::zero(self.period)
    }

    pub fn unit(&self) -> HallVector {
        HallVector::basis(self.zero_object(), self.q())
    }

    pub fn stalk(&self, x: IsoClassId, degree: i64) -> GradedObject {
        GradedObject::stalk(self.period, x, degree)
    }

    fn check(&self, g: &GradedObject) -> Result<()> {
        if g.period() != self.period {
            return Err(Error::IncompatibleObjects(format!(
                "{g} has period {}, context has {}",
                g.period().t(),
                self.period.t()
            )));
        }
        Ok(())
    }

    /// Product of two basis elements, memoized.
    pub fn mul(&self, a: &GradedObject, b: &GradedObject) -> Result<Arc<HallVector>> {
        self.check(a)?;
        self.check(b)?;
        let key = (a.clone(), b.clone());
        if let Some(v) = self.products.read().expect("product cache").get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(if self.period.is_bounded() {
            lt_mul_t0(self, a, b)?
        } else {
            lt_mul_odd(self, a, b)?
        });
        self.products.write().expect("product cache").insert(key, v.clone());
        Ok(v)
    }

    pub fn mul_vectors(&self, x: &HallVector, y: &HallVector) -> Result<HallVector> {
        let mut out = HallVector::zero(self.q());
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                out.add_scaled(&*self.mul(a, b)?, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Product of a list of basis elements, left to right.
    pub fn mul_all(&self, factors: &[GradedObject]) -> Result<HallVector> {
        let mut acc = self.unit();
        for f in factors {
            acc = self.mul_vectors(&acc, &HallVector::basis(f.clone(), self.q()))?;
        }
        Ok(acc)
    }

    /// `a'_Y = a_Y {Y, Y}^{1/2}` as a rational times a power of `v`.
    pub fn a_prime_monomial(&self, y: &GradedObject) -> Result<Monomial> {
        self.check(y)?;
        if let Some(m) = self.a_primes.read().expect("a' cache").get(y) {
            return Ok(m.clone());
        }
        let m = a_prime_uncached(self.cat, y)?;
        self.a_primes.write().expect("a' cache").insert(y.clone(), m.clone());
        Ok(m)
    }

    pub fn cached_products(&self) -> usize {
        self.products.read().expect("product cache").len()
    }
}

/// `a_Y = prod_i a_{Y^i} prod_i |Ext^1(Y^i, Y^{i-1})|`, the invertible endomorphisms of `Y` in
/// the periodic derived category.
pub fn aut_dt(cat: &Category, y: &GradedObject) -> Result<BigUint> {
    let t = y.period().t() as i64;
    let mut out = BigUint::one();
    for i in 0..t {
        let yi = y.at(cat, i);
        out *= cat.aut(&yi)?;
        out *= ext1_count(cat, &yi, &y.at(cat, i - 1))?;
    }
    Ok(out)
}

/// `{X, Y} = prod_{i=1}^{t} |Hom(X[i], Y)|^{(-1)^i}`.
pub fn bracket(cat: &Category, x: &GradedObject, y: &GradedObject) -> Result<BigRational> {
    let t = x.period().t() as i64;
    let mut out = BigRational::one();
    for i in 1..=t {
        let h = rat(&hom_dt_count(cat, x, y, i)?);
        out *= if i % 2 == 0 { h } else { h.recip() };
    }
    Ok(out)
}

fn a_prime_uncached(cat: &Category, y: &GradedObject) -> Result<Monomial> {
    if y.period().is_bounded() {
        return Err(Error::UnsupportedPeriod(0));
    }
    let e = q_exponent(&bracket(cat, y, y)?, cat.q())?;
    Ok(Monomial {
        coeff: rat(&aut_dt(cat, y)?),
        v_exp: e,
    })
}

/// `a'_Y` as a scalar.
pub fn a_prime(ctx: &DhaContext<'_>, y: &GradedObject) -> Result<QSqrt> {
    Ok(ctx.a_prime_monomial(y)?.to_scalar(ctx.q()))
}

/// Distinct quotient classes in a Hall table.
fn quotients(table: &crate::repcat::HallTable) -> Vec<IsoClassId> {
    let mut v: Vec<IsoClassId> = table.keys().map(|k| k.0).collect();
    v.dedup();
    v
}

fn subs(table: &crate::repcat::HallTable) -> Vec<IsoClassId> {
    let mut v: Vec<IsoClassId> = table.keys().map(|k| k.1).collect();
    v.sort();
    v.dedup();
    v
}

/// Expands a product over degrees of per-degree class distributions into graded objects.
fn expand(
    period: PeriodSpec,
    degrees: &[i64],
    per_degree: &[BTreeMap<IsoClassId, BigRational>],
    scale: &BigRational,
    out: &mut BTreeMap<GradedObject, BigRational>,
) -> Result<()> {
    fn rec(
        period: PeriodSpec,
        degrees: &[i64],
        per_degree: &[BTreeMap<IsoClassId, BigRational>],
        k: usize,
        cur: &mut Vec<(i64, IsoClassId)>,
        c: BigRational,
        out: &mut BTreeMap<GradedObject, BigRational>,
    ) -> Result<()> {
        if k == degrees.len() {
            let g = GradedObject::new(period, cur.iter().copied())?;
            *out.entry(g).or_insert_with(BigRational::zero) += c;
            return Ok(());
        }
        for (x, w) in &per_degree[k] {
            cur.push((degrees[k], *x));
            rec(period, degrees, per_degree, k + 1, cur, &c * w, out)?;
            cur.pop();
        }
        Ok(())
    }
    rec(period, degrees, per_degree, 0, &mut Vec::new(), scale.clone(), out)
}

/// Cartesian product of per-degree choices.
fn for_each_choice(options: &[Vec<IsoClassId>], mut f: impl FnMut(&[IsoClassId]) -> Result<()>) -> Result<()> {
    fn rec(
        options: &[Vec<IsoClassId>],
        cur: &mut Vec<IsoClassId>,
        f: &mut dyn FnMut(&[IsoClassId]) -> Result<()>,
    ) -> Result<()> {
        if cur.len() == options.len() {
            return f(cur);
        }
        for x in &options[cur.len()] {
            cur.push(*x);
            rec(options, cur, f)?;
            cur.pop();
        }
        Ok(())
    }
    rec(options, &mut Vec::new(), &mut f)
}

fn fits_in(x: &IsoClassId, y: &IsoClassId) -> bool {
    y.dims().checked_sub(&x.dims()).is_some()
}

/// Product of bounded graded objects.
pub fn lt_mul_t0(ctx: &DhaContext<'_>, a1: &GradedObject, a2: &GradedObject) -> Result<HallVector> {
    let cat = ctx.category();
    let q = ctx.q();
    let period = ctx.period();
    if !period.is_bounded() {
        return Err(Error::UnsupportedPeriod(period.t() as i64));
    }
    if a1.is_zero() {
        return Ok(HallVector::basis(a2.clone(), q));
    }
    if a2.is_zero() {
        return Ok(HallVector::basis(a1.clone(), q));
    }
    let mut degrees: Vec<i64> = a1.components().iter().chain(a2.components()).map(|c| c.0).collect();
    degrees.sort();
    degrees.dedup();

    // prod_i prod_{k>=2} <A2^{i+k}, A1^i>^{(-1)^k}, independent of the summation variables
    let mut prefactor = BigRational::one();
    for &(i, x1) in a1.components() {
        for &(j, x2) in a2.components() {
            let k = j - i;
            if k >= 2 {
                let e = euler_q(cat, &x2.dims(), &x1.dims());
                prefactor *= if k % 2 == 0 { e } else { e.recip() };
            }
        }
    }

    // I^i is a quotient of A1^i and a subobject of A2^{i+1}
    let mut i_options = Vec::with_capacity(degrees.len());
    for &i in &degrees {
        let x1 = a1.at(cat, i);
        let x2 = a2.at(cat, i + 1);
        if x1.is_zero() || x2.is_zero() {
            i_options.push(vec![cat.zero()]);
            continue;
        }
        let subs2 = subs(&*hall_table(cat, &x2)?);
        let opts: Vec<IsoClassId> = quotients(&*hall_table(cat, &x1)?)
            .into_iter()
            .filter(|c| fits_in(c, &x2) && subs2.contains(c))
            .collect();
        i_options.push(opts);
    }

    let mut acc: BTreeMap<GradedObject, BigRational> = BTreeMap::new();
    for_each_choice(&i_options, |ichoice| {
        let ii = |k: usize| ichoice[k];
        let mut factor = prefactor.clone();
        let mut per_degree = Vec::with_capacity(degrees.len());
        for (k, &i) in degrees.iter().enumerate() {
            let x1 = a1.at(cat, i);
            let x2 = a2.at(cat, i);
            let i_here = ii(k);
            let i_prev = if k > 0 && degrees[k - 1] == i - 1 {
                ii(k - 1)
            } else {
                cat.zero()
            };
            // <N^{i+1}, M^i> with dims fixed by I^i
            let m_dims = x1.dims().checked_sub(&i_here.dims()).expect("I fits A1");
            let n_next = a2.dims_at(cat, i + 1).checked_sub(&i_here.dims()).expect("I fits A2");
            factor /= euler_q(cat, &n_next, &m_dims);

            let t1 = hall_table(cat, &x1)?;
            let t2 = hall_table(cat, &x2)?;
            let norm = aut(cat, &i_here)? / (aut(cat, &x1)? * aut(cat, &x2)?);
            let mut dist: BTreeMap<IsoClassId, BigRational> = BTreeMap::new();
            for (&(iq, m), &g1) in t1.range((i_here, cat.zero())..) {
                if iq != i_here {
                    break;
                }
                for (&(n, isub), &g3) in t2.iter() {
                    if isub != i_prev {
                        continue;
                    }
                    let w = rat_u64(g1 * g3) * aut(cat, &m)? * aut(cat, &n)? * &norm;
                    for &(x, g2) in extensions(cat, &m, &n)?.iter() {
                        *dist.entry(x).or_insert_with(BigRational::zero) += &w * rat_u64(g2);
                    }
                }
            }
            if dist.is_empty() {
                return Ok(());
            }
            per_degree.push(dist);
        }
        expand(period, &degrees, &per_degree, &factor, &mut acc)
    })?;
    let mut out = HallVector::zero(q);
    for (g, c) in acc {
        out.add_term(g, QSqrt::rational(c, q));
    }
    Ok(out)
}

/// Product of `t`-periodic graded objects, `t` odd.
pub fn lt_mul_odd(ctx: &DhaContext<'_>, a1: &GradedObject, a2: &GradedObject) -> Result<HallVector> {
    let cat = ctx.category();
    let q = ctx.q();
    let period = ctx.period();
    if period.is_bounded() {
        return Err(Error::UnsupportedPeriod(0));
    }
    let t = period.t() as i64;
    let degrees: Vec<i64> = (0..t).collect();

    // sqrt( prod_i <A1^i, A2^i> prod_{k=1}^{t-1} <A1^{i+k}, A2^i>^{(-1)^{k+1}} )
    let mut under_root = BigRational::one();
    for i in 0..t {
        let d2 = a2.dims_at(cat, i);
        under_root *= euler_q(cat, &a1.dims_at(cat, i), &d2);
        for k in 1..t {
            let e = euler_q(cat, &a1.dims_at(cat, i + k), &d2);
            under_root *= if k % 2 == 1 { e } else { e.recip() };
        }
    }
    let root_exp = q_exponent(&under_root, q)?;

    // S^i is a subobject of A2^i and a quotient of A1^{i-1}
    let mut s_options = Vec::with_capacity(degrees.len());
    for &i in &degrees {
        let x2 = a2.at(cat, i);
        let x1 = a1.at(cat, i - 1);
        if x1.is_zero() || x2.is_zero() {
            s_options.push(vec![cat.zero()]);
            continue;
        }
        let quots1 = quotients(&*hall_table(cat, &x1)?);
        let opts: Vec<IsoClassId> = subs(&*hall_table(cat, &x2)?)
            .into_iter()
            .filter(|c| fits_in(c, &x1) && quots1.contains(c))
            .collect();
        s_options.push(opts);
    }

    let mut h: BTreeMap<GradedObject, BigRational> = BTreeMap::new();
    for_each_choice(&s_options, |s| {
        let s_at = |i: i64| s[i.rem_euclid(t) as usize];
        let mut factor = BigRational::one();
        let mut per_degree = Vec::with_capacity(degrees.len());
        for &i in &degrees {
            let x1 = a1.at(cat, i);
            let x2 = a2.at(cat, i);
            let (s_here, s_next) = (s_at(i), s_at(i + 1));
            let n_dims = x2.dims().checked_sub(&s_here.dims()).expect("S fits A2");
            factor /= euler_q(cat, &x1.dims(), &s_here.dims()) * euler_q(cat, &s_next.dims(), &n_dims);

            let t1 = hall_table(cat, &x1)?;
            let t2 = hall_table(cat, &x2)?;
            let a_s = aut(cat, &s_here)?;
            let mut dist: BTreeMap<IsoClassId, BigRational> = BTreeMap::new();
            for (&(n, sub), &g1) in t2.iter() {
                if sub != s_here {
                    continue;
                }
                for (&(sq, m), &g3) in t1.range((s_next, cat.zero())..) {
                    if sq != s_next {
                        break;
                    }
                    let w = rat_u64(g1 * g3) * aut(cat, &m)? * aut(cat, &n)? * &a_s;
                    for &(x, g2) in extensions(cat, &m, &n)?.iter() {
                        *dist.entry(x).or_insert_with(BigRational::zero) += &w * rat_u64(g2) / aut(cat, &x)?;
                    }
                }
            }
            if dist.is_empty() {
                return Ok(());
            }
            per_degree.push(dist);
        }
        expand(period, &degrees, &per_degree, &factor, &mut h)
    })?;

    let pa = ctx.a_prime_monomial(a1)?;
    let pb = ctx.a_prime_monomial(a2)?;
    let mut out = HallVector::zero(q);
    for (x, hx) in h {
        let px = ctx.a_prime_monomial(&x)?;
        let coeff = hx * &px.coeff / (&pa.coeff * &pb.coeff);
        let e = root_exp + px.v_exp - pa.v_exp - pb.v_exp;
        out.add_term(x, QSqrt::monomial(coeff, e, q));
    }
    Ok(out)
}
