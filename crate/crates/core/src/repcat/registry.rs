use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::diagram::{classify_orbits, Diagram, OrbitTable, INVALID};
use super::quiver::{DimVec, Quiver};
use super::rep::Rep;
use crate::error::{Error, Result};
use crate::falg::FieldSpec;
use crate::Limits;

/// Canonical name of an isomorphism class: its dimension vector and its position among the
/// classes of that dimension vector (ordered by smallest matrix-tuple encoding).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsoClassId {
    dims: DimVec,
    idx: u16,
    /// Number of classes sharing `dims`; only used for labels.
    of: u16,
}

impl IsoClassId {
    pub fn dims(&self) -> DimVec {
        self.dims
    }

    pub fn index(&self) -> usize {
        self.idx as usize
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    /// `k` + dimensions joined by `.`, with `_i` appended when the dimension vector carries
    /// more than one class.
    pub fn label(&self) -> String {
        let dims: Vec<String> = self.dims.iter().map(|x| x.to_string()).collect();
        if self.of > 1 {
            format!("k{}_{}", dims.join("."), self.idx)
        } else {
            format!("k{}", dims.join("."))
        }
    }
}

impl fmt::Debug for IsoClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Display for IsoClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone)]
pub struct ClassInfo {
    pub id: IsoClassId,
    pub rep: Rep,
    pub rep_index: u64,
    pub orbit_size: u64,
    pub aut: BigUint,
}

/// All classes of one dimension vector plus the encoding lookup table.
#[derive(Debug)]
pub struct Slice {
    pub dims: DimVec,
    pub classes: Vec<ClassInfo>,
    lookup: Vec<u32>,
}

/// Middle terms of extensions with their Hall numbers.
pub type ExtensionList = Vec<(IsoClassId, u64)>;

/// `(quotient, sub, count)` rows of one Hall table, in serialized form.
pub type HallEntries = Vec<(IsoClassId, IsoClassId, u64)>;

/// `(quotient class, sub class) -> number of subobjects`.
pub type HallTable = BTreeMap<(IsoClassId, IsoClassId), u64>;

/// The category of finite-dimensional representations of a quiver over `F_p`, together with
/// the class registry and the memo tables shared by every computation over it.
pub struct Category {
    quiver: Arc<Quiver>,
    field: FieldSpec,
    limits: Limits,
    slices: RwLock<HashMap<DimVec, Arc<Slice>>>,
    pub(crate) hall_tables: RwLock<HashMap<IsoClassId, Arc<HallTable>>>,
    pub(crate) hom_dims: RwLock<HashMap<(IsoClassId, IsoClassId), usize>>,
    pub(crate) ext_lists: RwLock<HashMap<(IsoClassId, IsoClassId), Arc<ExtensionList>>>,
}

impl fmt::Debug for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Category")
            .field("quiver", &self.quiver)
            .field("q", &self.field.p())
            .finish()
    }
}

impl Category {
    pub fn new(quiver: Quiver, q: u32, limits: Limits) -> Result<Self> {
        let field = FieldSpec::new(q)?;
        if q > limits.max_prime {
            return Err(crate::error::too_large("prime q", q as u64, limits.max_prime as u64));
        }
        Ok(Category {
            quiver: Arc::new(quiver),
            field,
            limits,
            slices: RwLock::new(HashMap::new()),
            hall_tables: RwLock::new(HashMap::new()),
            hom_dims: RwLock::new(HashMap::new()),
            ext_lists: RwLock::new(HashMap::new()),
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.p()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn zero_dims(&self) -> DimVec {
        DimVec::zero(self.vertex_count())
    }

    pub fn zero(&self) -> IsoClassId {
        IsoClassId {
            dims: self.zero_dims(),
            idx: 0,
            of: 1,
        }
    }

    fn check_dims(&self, d: &DimVec) -> Result<()> {
        if d.len() != self.vertex_count() {
            return Err(Error::IncompatibleObjects(format!(
                "dimension vector {d} does not fit a quiver with {} vertices",
                self.vertex_count()
            )));
        }
        Ok(())
    }

    /// The complete class list of one dimension vector, computed on first use.
    pub fn slice(&self, d: &DimVec) -> Result<Arc<Slice>> {
        self.check_dims(d)?;
        if let Some(s) = self.slices.read().expect("registry lock").get(d) {
            return Ok(s.clone());
        }
        let slice = Arc::new(self.build_slice(d)?);
        let mut w = self.slices.write().expect("registry lock");
        Ok(w.entry(*d).or_insert(slice).clone())
    }

    fn build_slice(&self, d: &DimVec) -> Result<Slice> {
        let dims = d.to_vec();
        let edges = self.quiver.arrow_ends();
        let table: OrbitTable = classify_orbits(self.field, &dims, edges, &self.limits, |_| true)?;
        self.slice_from_table(d, table)
    }

    fn slice_from_table(&self, d: &DimVec, table: OrbitTable) -> Result<Slice> {
        let dims = d.to_vec();
        let edges = self.quiver.arrow_ends();
        let of = u16::try_from(table.classes.len()).map_err(|_| {
            crate::error::too_large(
                "classes per dimension vector",
                table.classes.len() as u64,
                u16::MAX as u64,
            )
        })?;
        let classes = table
            .classes
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let diagram = Diagram::decode(self.field, &dims, edges, c.rep_index);
                Ok(ClassInfo {
                    id: IsoClassId {
                        dims: *d,
                        idx: i as u16,
                        of,
                    },
                    rep: Rep::from_diagram(self.quiver.clone(), diagram)?,
                    rep_index: c.rep_index,
                    orbit_size: c.orbit_size,
                    aut: c.aut,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Slice {
            dims: *d,
            classes,
            lookup: table.lookup,
        })
    }

    pub fn classes(&self, d: &DimVec) -> Result<Vec<IsoClassId>> {
        Ok(self.slice(d)?.classes.iter().map(|c| c.id).collect())
    }

    /// Every class whose total dimension is at most `max_total`.
    pub fn classes_up_to(&self, max_total: usize) -> Result<Vec<IsoClassId>> {
        let mut out = Vec::new();
        for d in DimVec::all_up_to(self.vertex_count(), max_total) {
            out.extend(self.classes(&d)?);
        }
        Ok(out)
    }

    fn info<T>(&self, id: &IsoClassId, f: impl FnOnce(&ClassInfo) -> T) -> Result<T> {
        let s = self.slice(&id.dims)?;
        let c = s
            .classes
            .get(id.idx as usize)
            .filter(|c| c.id == *id)
            .ok_or_else(|| Error::IncompatibleObjects(format!("unknown class {id}")))?;
        Ok(f(c))
    }

    pub fn rep(&self, id: &IsoClassId) -> Result<Rep> {
        self.info(id, |c| c.rep.clone())
    }

    pub fn aut(&self, id: &IsoClassId) -> Result<BigUint> {
        self.info(id, |c| c.aut.clone())
    }

    pub fn orbit_size(&self, id: &IsoClassId) -> Result<u64> {
        self.info(id, |c| c.orbit_size)
    }

    pub fn identify(&self, rep: &Rep) -> Result<IsoClassId> {
        if rep.quiver() != &self.quiver || rep.field() != self.field {
            return Err(Error::IncompatibleObjects(
                "representation over a different quiver or field".into(),
            ));
        }
        let s = self.slice(&rep.dims())?;
        let idx = rep.diagram().encode() as usize;
        match s.lookup.get(idx) {
            Some(&c) if c != INVALID => Ok(s.classes[c as usize].id),
            _ => Err(Error::InternalInconsistency(format!(
                "encoding {idx} missing from the class table"
            ))),
        }
    }

    pub fn hom_dim(&self, a: &IsoClassId, b: &IsoClassId) -> Result<usize> {
        if a.is_zero() || b.is_zero() {
            return Ok(0);
        }
        if let Some(&d) = self.hom_dims.read().expect("cache lock").get(&(*a, *b)) {
            return Ok(d);
        }
        let d = self.rep(a)?.diagram().hom_dim(&self.rep(b)?.diagram())?;
        self.hom_dims.write().expect("cache lock").insert((*a, *b), d);
        Ok(d)
    }

    pub fn direct_sum(&self, a: &IsoClassId, b: &IsoClassId) -> Result<IsoClassId> {
        let r = super::rep::direct_sum(&self.rep(a)?, &self.rep(b)?)?;
        self.identify(&r)
    }

    pub fn parse_label(&self, s: &str) -> Result<IsoClassId> {
        let s = s.trim();
        if s == "0" {
            return Ok(self.zero());
        }
        let body = s
            .strip_prefix('k')
            .ok_or_else(|| Error::Parse(format!("class label {s:?} must start with 'k'")))?;
        let (dims_part, idx) = match body.split_once('_') {
            Some((d, i)) => (
                d,
                Some(
                    i.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad class index in {s:?}")))?,
                ),
            ),
            None => (body, None),
        };
        let dims: Vec<usize> = dims_part
            .split('.')
            .map(|x| {
                x.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad dimension in {s:?}")))
            })
            .collect::<Result<_>>()?;
        let d = DimVec::new(&dims)?;
        if d.len() != self.vertex_count() {
            return Err(Error::Parse(format!(
                "label {s:?} has {} dimensions, quiver has {} vertices",
                d.len(),
                self.vertex_count()
            )));
        }
        let classes = self.classes(&d)?;
        match idx {
            None if classes.len() == 1 => Ok(classes[0]),
            None => Err(Error::Parse(format!(
                "label {s:?} is ambiguous: {} classes share these dimensions",
                classes.len()
            ))),
            Some(i) => classes
                .get(i)
                .copied()
                .ok_or_else(|| Error::Parse(format!("no class {i} for dimensions {d}"))),
        }
    }

    pub fn snapshot(&self) -> CategorySnapshot {
        let slices = self.slices.read().expect("registry lock");
        let mut out: Vec<SliceSnapshot> = slices
            .values()
            .map(|s| SliceSnapshot {
                dims: s.dims,
                classes: s
                    .classes
                    .iter()
                    .map(|c| (c.rep_index, c.orbit_size, c.aut.to_string()))
                    .collect(),
                lookup: s.lookup.clone(),
            })
            .collect();
        out.sort_by_key(|s| s.dims);
        let hall = self.hall_tables.read().expect("cache lock");
        let mut tables: Vec<(IsoClassId, HallEntries)> = hall
            .iter()
            .map(|(c, t)| (*c, t.iter().map(|(&(a, b), &n)| (a, b, n)).collect()))
            .collect();
        tables.sort_by_key(|t| t.0);
        CategorySnapshot {
            quiver: self.quiver.to_canonical_json(),
            q: self.field.p(),
            slices: out,
            hall_tables: tables,
        }
    }

    /// Loads a snapshot taken from a category with the same quiver and field. Every entry is
    /// checked for internal consistency before anything is inserted.
    pub fn restore(&self, snap: &CategorySnapshot) -> Result<()> {
        if snap.quiver != self.quiver.to_canonical_json() || snap.q != self.field.p() {
            return Err(Error::IncompatibleObjects(
                "snapshot belongs to a different quiver or field".into(),
            ));
        }
        let edges = self.quiver.arrow_ends();
        let mut built = Vec::new();
        for s in &snap.slices {
            self.check_dims(&s.dims)?;
            let dims = s.dims.to_vec();
            let size = (self.field.p() as u64)
                .checked_pow(Diagram::entry_count(&dims, edges) as u32)
                .unwrap_or(u64::MAX);
            if s.lookup.len() as u64 != size {
                return Err(Error::Parse(format!("class table for {} has the wrong size", s.dims)));
            }
            let mut classes = Vec::new();
            for (i, (rep_index, orbit_size, aut)) in s.classes.iter().enumerate() {
                let aut: BigUint = aut.parse().map_err(|_| Error::Parse("bad automorphism count".into()))?;
                if *rep_index >= size || s.lookup[*rep_index as usize] != i as u32 {
                    return Err(Error::Parse(format!("class table for {} is inconsistent", s.dims)));
                }
                classes.push(super::diagram::OrbitClass {
                    rep_index: *rep_index,
                    orbit_size: *orbit_size,
                    aut,
                });
            }
            if s.lookup.iter().any(|&c| c as usize >= classes.len()) {
                return Err(Error::Parse(format!("class table for {} is inconsistent", s.dims)));
            }
            built.push(self.slice_from_table(
                &s.dims,
                OrbitTable {
                    classes,
                    lookup: s.lookup.clone(),
                },
            )?);
        }
        {
            let mut w = self.slices.write().expect("registry lock");
            for s in built {
                w.entry(s.dims).or_insert_with(|| Arc::new(s));
            }
        }
        let mut w = self.hall_tables.write().expect("cache lock");
        for (c, entries) in &snap.hall_tables {
            let table: HallTable = entries.iter().map(|&(a, b, n)| ((a, b), n)).collect();
            w.entry(*c).or_insert_with(|| Arc::new(table));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceSnapshot {
    pub dims: DimVec,
    /// `(representative encoding, orbit size, automorphism count)` per class.
    pub classes: Vec<(u64, u64, String)>,
    pub lookup: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySnapshot {
    pub quiver: String,
    pub q: u32,
    pub slices: Vec<SliceSnapshot>,
    pub hall_tables: Vec<(IsoClassId, HallEntries)>,
}

/// Lists the classes of a dimension vector, computing and memoizing them on first use.
pub fn enumerate_iso_classes(cat: &Category, d: &DimVec) -> Result<Vec<IsoClassId>> {
    cat.classes(d)
}
