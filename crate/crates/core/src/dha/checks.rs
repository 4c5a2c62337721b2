//! Checkers comparing the products against independent routes: counting oracles, the
//! associativity law and the generator presentations.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::product::{a_prime, aut_dt, bracket, DhaContext};
use super::rewrite::gamma_terms;
use super::scalar::{sqrt_qpower, QSqrt};
use super::vector::HallVector;
use crate::cpx::{dt_hom_with_cone_count, hom_dt_count, GradedObject};
use crate::error::{Error, Result};
use crate::hall::{euler_q, ext1_dim, extensions, rat};
use crate::repcat::IsoClassId;

/// A failed comparison: where, and both values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub instance: String,
    pub basis: String,
    pub lhs: String,
    pub rhs: String,
}

impl Mismatch {
    fn from_vectors(instance: String, lhs: &HallVector, rhs: &HallVector) -> Option<Mismatch> {
        let (g, x, y) = lhs.first_difference(rhs)?;
        Some(Mismatch {
            instance,
            basis: g.to_string(),
            lhs: x.to_string(),
            rhs: y.to_string(),
        })
    }
}

/// Outcome of a batch of comparisons.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: u64,
    pub mismatches: Vec<Mismatch>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn record(&mut self, m: Option<Mismatch>) {
        self.checked += 1;
        self.mismatches.extend(m);
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.mismatches.extend(other.mismatches);
        self.notes.extend(other.notes);
    }
}

fn sqrt_of(r: &BigRational, q: u32) -> Result<QSqrt> {
    sqrt_qpower(r, q)
}

fn require_t1(ctx: &DhaContext<'_>) -> Result<()> {
    match ctx.period().t() {
        1 => Ok(()),
        t => Err(Error::UnsupportedPeriod(t as i64)),
    }
}

/// `F^L_{AB}` at period 1 from cone counts and Hom brackets:
/// `|Hom(A, B[1])_{L[1]}| {A, B[1]}^{1/2} a'_L / (a'_A a'_B)`.
pub fn dht_constant_oracle_t1(
    ctx: &DhaContext<'_>,
    a: &GradedObject,
    b: &GradedObject,
    l: &GradedObject,
) -> Result<QSqrt> {
    require_t1(ctx)?;
    let cat = ctx.category();
    let q = ctx.q();
    let cone = dt_hom_with_cone_count(ctx.complexes(), a, b, l)?;
    if cone.is_zero() {
        return Ok(QSqrt::zero(q));
    }
    let t = ctx.period().t() as i64;
    let mut br = BigRational::one();
    for i in 1..=t {
        let h = rat(&hom_dt_count(cat, a, b, i - 1)?);
        br *= if i % 2 == 0 { h } else { h.recip() };
    }
    let num = &(&sqrt_of(&br, q)? * &a_prime(ctx, l)?) * &(&a_prime(ctx, a)? * &a_prime(ctx, b)?).inv()?;
    Ok(num.scale(&cone))
}

/// The same constant through morphisms `B -> L` with cone `A`:
/// `|Hom(B, L)_A| / a_B ({B, L} / {B, B})^{1/2}`.
pub fn toen_form_t1(ctx: &DhaContext<'_>, a: &GradedObject, b: &GradedObject, l: &GradedObject) -> Result<QSqrt> {
    require_t1(ctx)?;
    let cat = ctx.category();
    let q = ctx.q();
    let count = dt_hom_with_cone_count(ctx.complexes(), b, l, a)?;
    if count.is_zero() {
        return Ok(QSqrt::zero(q));
    }
    let ratio = bracket(cat, b, l)? / bracket(cat, b, b)?;
    Ok(sqrt_of(&ratio, q)?.scale(&(count / rat(&aut_dt(cat, b)?))))
}

/// Compares `(A B) C` with `A (B C)`.
pub fn assoc_check(
    ctx: &DhaContext<'_>,
    a: &GradedObject,
    b: &GradedObject,
    c: &GradedObject,
) -> Result<Option<Mismatch>> {
    let ab = ctx.mul(a, b)?;
    let left = ctx.mul_vectors(&ab, &HallVector::basis(c.clone(), ctx.q()))?;
    let bc = ctx.mul(b, c)?;
    let right = ctx.mul_vectors(&HallVector::basis(a.clone(), ctx.q()), &bc)?;
    Ok(Mismatch::from_vectors(format!("({a} {b}) {c}"), &left, &right))
}

/// Compares the unit laws `[0] X = X [0] = X`.
pub fn unit_check(ctx: &DhaContext<'_>, x: &GradedObject) -> Result<Option<Mismatch>> {
    let z = ctx.zero_object();
    let want = HallVector::basis(x.clone(), ctx.q());
    let left = ctx.mul(&z, x)?;
    if let Some(m) = Mismatch::from_vectors(format!("[] {x}"), &left, &want) {
        return Ok(Some(m));
    }
    Ok(Mismatch::from_vectors(format!("{x} []"), &*ctx.mul(x, &z)?, &want))
}

/// The relation families of the generator presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum RelationFamily {
    /// Same-degree merge, bounded.
    Dh0_43,
    /// Adjacent-degree straightening, bounded.
    Dh0_44,
    /// Far commutation, bounded.
    Dh0_45,
    /// The single relation at period 1.
    Dh1Re1,
    /// Same-degree merge, odd period at least 3.
    Dh3R1,
    /// Adjacent-degree straightening, odd period at least 3.
    Dh3R2,
    /// Far commutation, odd period at least 5.
    DhtR3,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 7] = [
        RelationFamily::Dh0_43,
        RelationFamily::Dh0_44,
        RelationFamily::Dh0_45,
        RelationFamily::Dh1Re1,
        RelationFamily::Dh3R1,
        RelationFamily::Dh3R2,
        RelationFamily::DhtR3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationFamily::Dh0_43 => "dh0_43",
            RelationFamily::Dh0_44 => "dh0_44",
            RelationFamily::Dh0_45 => "dh0_45",
            RelationFamily::Dh1Re1 => "dh1_re1",
            RelationFamily::Dh3R1 => "dh3_r1",
            RelationFamily::Dh3R2 => "dh3_r2",
            RelationFamily::DhtR3 => "dht_r3",
        }
    }

    /// The period the family is usually checked at.
    pub fn default_period(self) -> i64 {
        match self {
            RelationFamily::Dh0_43 | RelationFamily::Dh0_44 | RelationFamily::Dh0_45 => 0,
            RelationFamily::Dh1Re1 => 1,
            RelationFamily::Dh3R1 | RelationFamily::Dh3R2 => 3,
            RelationFamily::DhtR3 => 5,
        }
    }

    pub fn supports_period(self, t: u32) -> bool {
        match self {
            RelationFamily::Dh0_43 | RelationFamily::Dh0_44 | RelationFamily::Dh0_45 => t == 0,
            RelationFamily::Dh1Re1 => t == 1,
            RelationFamily::Dh3R1 | RelationFamily::Dh3R2 => t >= 3,
            RelationFamily::DhtR3 => t >= 5,
        }
    }
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown relation family {s:?}")))
    }
}

/// One instantiation of a relation: generators `A`, `B` and the degrees involved. `i` is the
/// degree of the first generator on the left-hand side where the family has one free degree;
/// `j` is the second degree for the commutation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationInstance {
    pub a: IsoClassId,
    pub b: IsoClassId,
    pub i: i64,
    pub j: i64,
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A={} B={} i={} j={}", self.a, self.b, self.i, self.j)
    }
}

/// Both sides of a relation, each evaluated through the products.
pub fn relation_sides(
    ctx: &DhaContext<'_>,
    family: RelationFamily,
    inst: &RelationInstance,
) -> Result<(HallVector, HallVector)> {
    let t = ctx.period().t();
    if !family.supports_period(t) {
        return Err(Error::UnsupportedPeriod(t as i64));
    }
    let cat = ctx.category();
    let q = ctx.q();
    let RelationInstance { a, b, i, j } = *inst;
    let z = |x: IsoClassId, d: i64| ctx.stalk(x, d);
    let e = |x: &IsoClassId, y: &IsoClassId| euler_q(cat, &x.dims(), &y.dims());
    let mut rhs = HallVector::zero(q);
    let lhs = match family {
        RelationFamily::Dh0_43 | RelationFamily::Dh3R1 => {
            // Z_A^{[i]} Z_B^{[i]}
            let scale = if family == RelationFamily::Dh0_43 {
                QSqrt::one(q)
            } else {
                sqrt_of(&e(&b, &a), q)?.inv()?
            };
            for &(c, g) in extensions(cat, &a, &b)?.iter() {
                rhs.add_term(z(c, i), scale.scale(&BigRational::from_integer(g.into())));
            }
            (*ctx.mul(&z(a, i), &z(b, i))?).clone()
        }
        RelationFamily::Dh0_44 | RelationFamily::Dh3R2 => {
            // Z_B^{[i]} Z_A^{[i+1]}
            for (m, n, g) in gamma_terms(cat, &a, &b)? {
                let c = if family == RelationFamily::Dh0_44 {
                    QSqrt::rational(g / e(&n, &m), q)
                } else {
                    let r = e(&a, &a) * e(&b, &b) / (e(&m, &m) * e(&n, &n) * e(&b, &a) * e(&n, &m));
                    sqrt_of(&r, q)?.scale(&g)
                };
                rhs.add_scaled(&*ctx.mul(&z(n, i + 1), &z(m, i))?, &c);
            }
            (*ctx.mul(&z(b, i), &z(a, i + 1))?).clone()
        }
        RelationFamily::Dh0_45 => {
            // Z_B^{[i]} Z_A^{[j]}, j > i + 1
            let ab = e(&a, &b);
            let c = if (j - i) % 2 == 0 { ab } else { ab.recip() };
            rhs.add_scaled(&*ctx.mul(&z(a, j), &z(b, i))?, &QSqrt::rational(c, q));
            (*ctx.mul(&z(b, i), &z(a, j))?).clone()
        }
        RelationFamily::DhtR3 => {
            // Z_A^{[i]} Z_B^{[j]}, exponent taken from the gap j - i in 0..t
            let sym = e(&a, &b) * e(&b, &a);
            let c = if (j - i).rem_euclid(t as i64) % 2 == 0 {
                sym
            } else {
                sym.recip()
            };
            rhs.add_scaled(&*ctx.mul(&z(b, j), &z(a, i))?, &sqrt_of(&c, q)?);
            (*ctx.mul(&z(a, i), &z(b, j))?).clone()
        }
        RelationFamily::Dh1Re1 => {
            rhs = re1_rhs(ctx, &a, &b, A1Convention::Automorphisms)?;
            (*ctx.mul(&z(a, 0), &z(b, 0))?).clone()
        }
    };
    Ok((lhs, rhs))
}

/// Which normalization `a'_X` to use on the right-hand side of the period-1 relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum A1Convention {
    /// `a_X {X, X}^{1/2}` with `a_X` the automorphism count in the derived category.
    Automorphisms,
    /// `(|Hom(X, X)| |Ext^1(X, X)|)^{1/2}`.
    HomExt,
}

fn hom_ext_sqrt(ctx: &DhaContext<'_>, x: &IsoClassId, y: &IsoClassId) -> Result<QSqrt> {
    let cat = ctx.category();
    let e = cat.hom_dim(x, y)? + ext1_dim(cat, x, y)?;
    Ok(QSqrt::monomial(BigRational::one(), e as i64, ctx.q()))
}

/// `sum_C |Hom(Z_A, Z_B)_{Z_C}| / (|Hom(A,B)| |Ext^1(A,B)|)^{1/2} a'_C / (a'_A a'_B) Z_C`.
pub fn re1_rhs(ctx: &DhaContext<'_>, a: &IsoClassId, b: &IsoClassId, conv: A1Convention) -> Result<HallVector> {
    require_t1(ctx)?;
    let cat = ctx.category();
    let q = ctx.q();
    let ap = |x: &IsoClassId| -> Result<QSqrt> {
        match conv {
            A1Convention::Automorphisms => a_prime(ctx, &ctx.stalk(*x, 0)),
            A1Convention::HomExt => hom_ext_sqrt(ctx, x, x),
        }
    };
    let (za, zb) = (ctx.stalk(*a, 0), ctx.stalk(*b, 0));
    let norm = (&hom_ext_sqrt(ctx, a, b)? * &(&ap(a)? * &ap(b)?)).inv()?;
    let mut out = HallVector::zero(q);
    for d in a.dims().add(&b.dims()).sub_vectors() {
        for c in cat.classes(&d)? {
            let zc = ctx.stalk(c, 0);
            let cone = dt_hom_with_cone_count(ctx.complexes(), &za, &zb, &zc)?;
            if cone.is_zero() {
                continue;
            }
            out.add_term(zc, (&ap(&c)? * &norm).scale(&cone));
        }
    }
    Ok(out)
}

/// Compares both sides of one relation instance.
pub fn relation_check(
    ctx: &DhaContext<'_>,
    family: RelationFamily,
    inst: &RelationInstance,
) -> Result<Option<Mismatch>> {
    let (lhs, rhs) = relation_sides(ctx, family, inst)?;
    Ok(Mismatch::from_vectors(format!("{family} {inst}"), &lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpx::PeriodSpec;
    use crate::repcat::{Category, Quiver};
    use crate::Limits;

    fn a1() -> Category {
        Category::new(Quiver::a_n(1), 2, Limits::default()).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn oracle_examples() {
        let cat = a1();
        let ctx = DhaContext::new(&cat, PeriodSpec::new(1).unwrap());
        let k = ctx.stalk(cat.parse_label("k1").unwrap(), 0);
        let k2 = ctx.stalk(cat.parse_label("k2").unwrap(), 0);
        let z = ctx.zero_object();
        let three_halves_v = QSqrt::new(r(0, 1), r(3, 2), 2);
        assert_eq!(dht_constant_oracle_t1(&ctx, &k, &k, &k2).unwrap(), three_halves_v);
        assert_eq!(toen_form_t1(&ctx, &k, &k, &k2).unwrap(), three_halves_v);
        assert_eq!(dht_constant_oracle_t1(&ctx, &k, &k, &z).unwrap(), QSqrt::v(2));
        assert_eq!(dht_constant_oracle_t1(&ctx, &k2, &z, &k2).unwrap(), QSqrt::one(2));
        assert_eq!(dht_constant_oracle_t1(&ctx, &k, &z, &k2).unwrap(), QSqrt::zero(2));
    }

    #[test]
    fn assoc_examples() {
        let cat = a1();
        let ctx = DhaContext::new(&cat, PeriodSpec::new(1).unwrap());
        let k = ctx.stalk(cat.parse_label("k1").unwrap(), 0);
        assert_eq!(assoc_check(&ctx, &k, &k, &k).unwrap(), None);
        assert_eq!(assoc_check(&ctx, &k, &ctx.zero_object(), &k).unwrap(), None);
        assert_eq!(unit_check(&ctx, &k).unwrap(), None);

        let a2 = Category::new(Quiver::a_n(2), 2, Limits::default()).unwrap();
        let ctx = DhaContext::new(&a2, PeriodSpec::bounded());
        let s1 = ctx.stalk(a2.parse_label("k1.0").unwrap(), 1);
        let s2 = ctx.stalk(a2.parse_label("k0.1").unwrap(), 0);
        let p1 = ctx.stalk(a2.parse_label("k1.1_0").unwrap(), 0);
        assert_eq!(assoc_check(&ctx, &s1, &s2, &p1).unwrap(), None);
    }

    #[test]
    fn relation_examples() {
        let cat = a1();
        let k = cat.parse_label("k1").unwrap();
        let inst = RelationInstance { a: k, b: k, i: 0, j: 0 };
        let ctx0 = DhaContext::new(&cat, PeriodSpec::bounded());
        let (lhs, rhs) = relation_sides(&ctx0, RelationFamily::Dh0_43, &inst).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.len(), 1);

        let ctx3 = DhaContext::new(&cat, PeriodSpec::new(3).unwrap());
        let (lhs, rhs) = relation_sides(&ctx3, RelationFamily::Dh3R1, &inst).unwrap();
        assert_eq!(lhs, rhs);
        let k2 = ctx3.stalk(cat.parse_label("k2").unwrap(), 0);
        assert_eq!(rhs.coeff(&k2), QSqrt::new(r(0, 1), r(3, 2), 2));

        let ctx1 = DhaContext::new(&cat, PeriodSpec::new(1).unwrap());
        assert_eq!(relation_check(&ctx1, RelationFamily::Dh1Re1, &inst).unwrap(), None);
        let literal = re1_rhs(&ctx1, &k, &k, A1Convention::HomExt).unwrap();
        assert_ne!(literal, *ctx1.mul(&ctx1.stalk(k, 0), &ctx1.stalk(k, 0)).unwrap());

        let a2 = Category::new(Quiver::a_n(2), 2, Limits::default()).unwrap();
        let ctx = DhaContext::new(&a2, PeriodSpec::bounded());
        let s1 = a2.parse_label("k1.0").unwrap();
        let s2 = a2.parse_label("k0.1").unwrap();
        let inst = RelationInstance {
            a: s1,
            b: s2,
            i: 0,
            j: 2,
        };
        let (lhs, rhs) = relation_sides(&ctx, RelationFamily::Dh0_45, &inst).unwrap();
        assert_eq!(lhs, rhs);
        let g = GradedObject::new(PeriodSpec::bounded(), [(0, s2), (2, s1)]).unwrap();
        assert_eq!(lhs.coeff(&g), QSqrt::rational(r(1, 2), 2));
    }

    #[test]
    fn family_names_roundtrip() {
        for f in RelationFamily::ALL {
            assert_eq!(f.name().parse::<RelationFamily>().unwrap(), f);
        }
        assert!("dh9".parse::<RelationFamily>().is_err());
        let cat = a1();
        let ctx = DhaContext::new(&cat, PeriodSpec::new(3).unwrap());
        let k = cat.parse_label("k1").unwrap();
        let inst = RelationInstance { a: k, b: k, i: 0, j: 2 };
        assert_eq!(
            relation_check(&ctx, RelationFamily::DhtR3, &inst),
            Err(Error::UnsupportedPeriod(3))
        );
    }
}
