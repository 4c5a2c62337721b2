//! Linear diagrams: finitely many vector spaces joined by linear maps along fixed edges.
//!
//! Quiver representations and complexes of representations are both diagrams. This module
//! holds the shape-agnostic machinery: intertwiner spaces, isomorphism and automorphism
//! counting by enumeration, closed subspace tuples, and orbit classification of all diagrams
//! with fixed node dimensions.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{too_large, Error, Result};
use crate::falg::{advance_digits, enumerate_subspaces, gl_order, FieldMatrix, FieldSpec, Subspace};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    /// `maps[e]` has shape `dims[target] x dims[source]`.
    pub maps: Vec<FieldMatrix>,
}

/// A basis of the intertwiners between two diagrams of the same shape, each basis element
/// stored as one matrix per node (`target dim x source dim`).
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub field: FieldSpec,
    pub src_dims: Vec<usize>,
    pub dst_dims: Vec<usize>,
    pub basis: Vec<Vec<FieldMatrix>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combination(&self, coeffs: &[u32]) -> Vec<FieldMatrix> {
        let mut out: Vec<FieldMatrix> = self
            .src_dims
            .iter()
            .zip(&self.dst_dims)
            .map(|(&s, &t)| FieldMatrix::zeros(self.field, t, s))
            .collect();
        for (b, &c) in self.basis.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (o, m) in out.iter_mut().zip(b) {
                *o = o.add(&m.scale(c));
            }
        }
        out
    }

    /// Calls `f` on every element until it returns `false`. Refuses spaces above the bounds.
    pub fn for_each_element(&self, limits: &Limits, mut f: impl FnMut(&[FieldMatrix]) -> bool) -> Result<()> {
        let p = self.field.p();
        if self.dim() > limits.max_hom_dim {
            return Err(too_large(
                "Hom space dimension",
                self.dim() as u64,
                limits.max_hom_dim as u64,
            ));
        }
        let size = (p as u64).checked_pow(self.dim() as u32).unwrap_or(u64::MAX);
        if size > limits.max_tuples {
            return Err(too_large("Hom space size", size, limits.max_tuples));
        }
        let mut coeffs = vec![0u32; self.dim()];
        loop {
            if !f(&self.combination(&coeffs)) {
                return Ok(());
            }
            if !advance_digits(&mut coeffs, p) {
                return Ok(());
            }
        }
    }
}

fn all_invertible(maps: &[FieldMatrix]) -> bool {
    maps.iter().all(|m| m.rows() == 0 || m.is_invertible())
}

impl Diagram {
    pub fn check(&self) -> Result<()> {
        if self.edges.len() != self.maps.len() {
            return Err(Error::IncompatibleObjects(format!(
                "{} edges but {} maps",
                self.edges.len(),
                self.maps.len()
            )));
        }
        for (e, (&(s, t), m)) in self.edges.iter().zip(&self.maps).enumerate() {
            if s >= self.dims.len() || t >= self.dims.len() {
                return Err(Error::IncompatibleObjects(format!("edge {e} leaves the node set")));
            }
            if m.rows() != self.dims[t] || m.cols() != self.dims[s] || m.field() != self.field {
                return Err(Error::IncompatibleObjects(format!(
                    "map {e} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    self.dims[t],
                    self.dims[s]
                )));
            }
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &Diagram) -> Result<()> {
        if self.field != other.field || self.edges != other.edges || self.dims.len() != other.dims.len() {
            return Err(Error::IncompatibleObjects(
                "diagrams of different shape or field".into(),
            ));
        }
        Ok(())
    }

    pub fn zero_like(&self) -> Diagram {
        Diagram {
            field: self.field,
            dims: vec![0; self.dims.len()],
            edges: self.edges.clone(),
            maps: self
                .edges
                .iter()
                .map(|_| FieldMatrix::zeros(self.field, 0, 0))
                .collect(),
        }
    }

    /// Solves `f_t M_e = N_e f_s` for every edge `e: s -> t`.
    pub fn hom_space(&self, other: &Diagram) -> Result<HomSpace> {
        self.check_same_shape(other)?;
        let k = self.field;
        let n = self.dims.len();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for v in 0..n {
            offsets.push(acc);
            acc += other.dims[v] * self.dims[v];
        }
        offsets.push(acc);
        let nvars = acc;
        // variable for f_v[i][j] sits at offsets[v] + i * src_dim + j
        let var = |v: usize, i: usize, j: usize| offsets[v] + i * self.dims[v] + j;
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (e, &(s, t)) in self.edges.iter().enumerate() {
            let m = &self.maps[e];
            let nm = &other.maps[e];
            for i in 0..other.dims[t] {
                for j in 0..self.dims[s] {
                    let mut row = vec![0u32; nvars];
                    for kk in 0..self.dims[t] {
                        let c = m.get(kk, j);
                        if c != 0 {
                            let x = var(t, i, kk);
                            row[x] = k.add(row[x], c);
                        }
                    }
                    for kk in 0..other.dims[s] {
                        let c = nm.get(i, kk);
                        if c != 0 {
                            let x = var(s, kk, j);
                            row[x] = k.sub(row[x], c);
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let kernel = if rows.is_empty() {
            Subspace::full(k, nvars)
        } else {
            FieldMatrix::from_rows(k, &rows).kernel_basis()
        };
        let basis = (0..kernel.dim())
            .map(|b| {
                let vec = kernel.basis_vector(b);
                (0..n)
                    .map(|v| {
                        FieldMatrix::from_vec(k, other.dims[v], self.dims[v], vec[offsets[v]..offsets[v + 1]].to_vec())
                    })
                    .collect()
            })
            .collect();
        Ok(HomSpace {
            field: k,
            src_dims: self.dims.clone(),
            dst_dims: other.dims.clone(),
            basis,
        })
    }

    pub fn hom_dim(&self, other: &Diagram) -> Result<usize> {
        Ok(self.hom_space(other)?.dim())
    }

    /// Isomorphism test by exhaustive search over `Hom(self, other)` after cheap invariant
    /// filters.
    pub fn is_isomorphic(&self, other: &Diagram, limits: &Limits) -> Result<bool> {
        self.check_same_shape(other)?;
        if self.dims != other.dims {
            return Ok(false);
        }
        if self == other {
            return Ok(true);
        }
        let ranks = |d: &Diagram| d.maps.iter().map(|m| m.rank()).collect::<Vec<_>>();
        if ranks(self) != ranks(other) {
            return Ok(false);
        }
        let hom = self.hom_space(other)?;
        let end_self = self.hom_dim(self)?;
        if end_self != other.hom_dim(other)? || hom.dim() != end_self || other.hom_dim(self)? != end_self {
            return Ok(false);
        }
        let mut found = false;
        hom.for_each_element(limits, |f| {
            found = all_invertible(f);
            !found
        })?;
        Ok(found)
    }

    /// Number of automorphisms, by enumerating the endomorphism space.
    pub fn aut_count(&self, limits: &Limits) -> Result<BigUint> {
        let end = self.hom_space(self)?;
        let mut count: u64 = 0;
        end.for_each_element(limits, |f| {
            if all_invertible(f) {
                count += 1;
            }
            true
        })?;
        Ok(BigUint::from(count))
    }

    pub fn direct_sum(&self, other: &Diagram) -> Result<Diagram> {
        self.check_same_shape(other)?;
        Ok(Diagram {
            field: self.field,
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            edges: self.edges.clone(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
        })
    }

    pub fn is_closed(&self, u: &[Subspace]) -> bool {
        self.edges
            .iter()
            .zip(&self.maps)
            .all(|(&(s, t), m)| u[s].image_under(m).is_subspace_of(&u[t]))
    }

    /// Restriction to a closed subspace tuple and the induced quotient diagram.
    pub fn sub_and_quotient(&self, u: &[Subspace]) -> Result<(Diagram, Diagram)> {
        if u.len() != self.dims.len() || u.iter().zip(&self.dims).any(|(s, &d)| s.ambient_dim() != d) {
            return Err(Error::IncompatibleObjects(
                "subspace tuple does not match the diagram".into(),
            ));
        }
        if !self.is_closed(u) {
            return Err(Error::NotASubobject);
        }
        let k = self.field;
        let comps: Vec<Vec<usize>> = u.iter().map(|s| s.complement_columns()).collect();
        let mut sub_maps = Vec::with_capacity(self.maps.len());
        let mut quot_maps = Vec::with_capacity(self.maps.len());
        for (&(s, t), m) in self.edges.iter().zip(&self.maps) {
            let mut sm = FieldMatrix::zeros(k, u[t].dim(), u[s].dim());
            for j in 0..u[s].dim() {
                let img = m.mul_vec(u[s].basis_vector(j));
                let coords = u[t].coords(&img).expect("closed tuple");
                for (i, c) in coords.into_iter().enumerate() {
                    sm.set(i, j, c);
                }
            }
            sub_maps.push(sm);
            let mut qm = FieldMatrix::zeros(k, comps[t].len(), comps[s].len());
            for (j, &cj) in comps[s].iter().enumerate() {
                let img = u[t].reduce(&m.column(cj));
                for (i, &ci) in comps[t].iter().enumerate() {
                    qm.set(i, j, img[ci]);
                }
            }
            quot_maps.push(qm);
        }
        let sub = Diagram {
            field: k,
            dims: u.iter().map(|s| s.dim()).collect(),
            edges: self.edges.clone(),
            maps: sub_maps,
        };
        let quot = Diagram {
            field: k,
            dims: comps.iter().map(|c| c.len()).collect(),
            edges: self.edges.clone(),
            maps: quot_maps,
        };
        Ok((sub, quot))
    }

    /// Visits every subspace tuple closed under all maps, optionally only those with given
    /// node dimensions.
    pub fn for_each_closed_tuple(
        &self,
        sub_dims: Option<&[usize]>,
        limits: &Limits,
        mut f: impl FnMut(&[Subspace]) -> Result<()>,
    ) -> Result<()> {
        let n = self.dims.len();
        let mut choices: Vec<Vec<Subspace>> = Vec::with_capacity(n);
        let mut total: u64 = 1;
        for v in 0..n {
            let list = enumerate_subspaces(self.field, self.dims[v], sub_dims.map(|d| d[v]), limits.max_ambient_dim)?;
            total = total.saturating_mul(list.len() as u64);
            choices.push(list);
        }
        if total > limits.max_tuples {
            return Err(too_large("subspace tuples", total, limits.max_tuples));
        }
        // edges checked as soon as both endpoints are chosen
        let mut ready: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, &(s, t)) in self.edges.iter().enumerate() {
            ready[s.max(t)].push(e);
        }
        let mut cur: Vec<Subspace> = Vec::with_capacity(n);
        fn rec(
            d: &Diagram,
            choices: &[Vec<Subspace>],
            ready: &[Vec<usize>],
            cur: &mut Vec<Subspace>,
            f: &mut dyn FnMut(&[Subspace]) -> Result<()>,
        ) -> Result<()> {
            let v = cur.len();
            if v == choices.len() {
                return f(cur);
            }
            for s in &choices[v] {
                cur.push(s.clone());
                let ok = ready[v].iter().all(|&e| {
                    let (src, dst) = d.edges[e];
                    cur[src].image_under(&d.maps[e]).is_subspace_of(&cur[dst])
                });
                if ok {
                    rec(d, choices, ready, cur, f)?;
                }
                cur.pop();
            }
            Ok(())
        }
        rec(self, &choices, &ready, &mut cur, &mut f)
    }

    /// Total number of matrix entries, i.e. the number of base-`p` digits of the encoding.
    pub fn entry_count(dims: &[usize], edges: &[(usize, usize)]) -> usize {
        edges.iter().map(|&(s, t)| dims[s] * dims[t]).sum()
    }

    /// Position of this diagram in the enumeration of all diagrams with its node dimensions:
    /// entries read edge by edge, row-major, first entry most significant.
    pub fn encode(&self) -> u64 {
        let p = self.field.p() as u64;
        let mut idx = 0u64;
        for m in &self.maps {
            for &x in m.data() {
                idx = idx * p + x as u64;
            }
        }
        idx
    }

    pub fn decode(field: FieldSpec, dims: &[usize], edges: &[(usize, usize)], mut index: u64) -> Diagram {
        let p = field.p() as u64;
        let total = Self::entry_count(dims, edges);
        let mut digits = vec![0u32; total];
        for d in digits.iter_mut().rev() {
            *d = (index % p) as u32;
            index /= p;
        }
        let mut pos = 0;
        let maps = edges
            .iter()
            .map(|&(s, t)| {
                let len = dims[s] * dims[t];
                let m = FieldMatrix::from_vec(field, dims[t], dims[s], digits[pos..pos + len].to_vec());
                pos += len;
                m
            })
            .collect();
        Diagram {
            field,
            dims: dims.to_vec(),
            edges: edges.to_vec(),
            maps,
        }
    }

    /// `g . M` with `M_e -> g_t M_e g_s^{-1}`, where only node `v` carries a nontrivial
    /// group element.
    fn act_at(&self, v: usize, g: &FieldMatrix, g_inv: &FieldMatrix) -> Diagram {
        let maps = self
            .edges
            .iter()
            .zip(&self.maps)
            .map(|(&(s, t), m)| {
                let mut m = m.clone();
                if t == v {
                    m = g.mul(&m);
                }
                if s == v {
                    m = m.mul(g_inv);
                }
                m
            })
            .collect();
        Diagram {
            field: self.field,
            dims: self.dims.clone(),
            edges: self.edges.clone(),
            maps,
        }
    }
}

/// Generators of `GL_n(F_p)`: elementary transvections and one diagonal primitive-root matrix.
pub fn gl_generators(field: FieldSpec, n: usize) -> Vec<FieldMatrix> {
    let mut gens = Vec::new();
    if n == 0 {
        return gens;
    }
    if field.p() > 2 {
        let mut d = FieldMatrix::identity(field, n);
        d.set(0, 0, field.primitive_root());
        gens.push(d);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut t = FieldMatrix::identity(field, n);
                t.set(i, j, 1);
                gens.push(t);
            }
        }
    }
    gens
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClass {
    /// Smallest encoding in the orbit; its diagram is the canonical representative.
    pub rep_index: u64,
    pub orbit_size: u64,
    pub aut: BigUint,
}

/// Partition of all valid diagrams with fixed node dimensions into isomorphism classes.
#[derive(Debug, Clone)]
pub struct OrbitTable {
    pub classes: Vec<OrbitClass>,
    /// Class position for every encoding, `u32::MAX` for encodings rejected by the filter.
    pub lookup: Vec<u32>,
}

pub const INVALID: u32 = u32::MAX;

/// Classifies all diagrams of the given shape that pass `valid` (a property that must be
/// invariant under isomorphism). Classes come out ordered by their smallest encoding.
pub fn classify_orbits(
    field: FieldSpec,
    dims: &[usize],
    edges: &[(usize, usize)],
    limits: &Limits,
    valid: impl Fn(&Diagram) -> bool,
) -> Result<OrbitTable> {
    let entries = Diagram::entry_count(dims, edges);
    let size = (field.p() as u64).checked_pow(entries as u32).unwrap_or(u64::MAX);
    if size > limits.max_tuples {
        return Err(too_large("matrix tuples", size, limits.max_tuples));
    }
    let group_order: BigUint = dims.iter().map(|&d| gl_order(d as u32, field.p())).product();
    let gens: Vec<(usize, FieldMatrix, FieldMatrix)> = dims
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| {
            gl_generators(field, d).into_iter().map(move |g| {
                let inv = g.inverse().expect("generator is invertible");
                (v, g, inv)
            })
        })
        .collect();
    let mut lookup = vec![INVALID; size as usize];
    let mut checked = vec![false; size as usize];
    let mut classes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..size {
        if checked[start as usize] {
            continue;
        }
        let d0 = Diagram::decode(field, dims, edges, start);
        checked[start as usize] = true;
        if !valid(&d0) {
            continue;
        }
        let class = classes.len() as u32;
        lookup[start as usize] = class;
        let mut orbit = 1u64;
        queue.push_back(d0);
        while let Some(d) = queue.pop_front() {
            for (v, g, inv) in &gens {
                let next = d.act_at(*v, g, inv);
                let idx = next.encode() as usize;
                if !checked[idx] {
                    checked[idx] = true;
                    lookup[idx] = class;
                    orbit += 1;
                    queue.push_back(next);
                }
            }
        }
        let (aut, rem) = num_integer::Integer::div_rem(&group_order, &BigUint::from(orbit));
        if rem != BigUint::from(0u32) {
            return Err(Error::InternalInconsistency(format!(
                "orbit size {orbit} does not divide the group order {group_order}"
            )));
        }
        classes.push(OrbitClass {
            rep_index: start,
            orbit_size: orbit,
            aut,
        });
    }
    Ok(OrbitTable { classes, lookup })
}

/// `|GL|` of the node dimensions.
pub fn group_order(field: FieldSpec, dims: &[usize]) -> BigUint {
    dims.iter()
        .fold(BigUint::one(), |acc, &d| acc * gl_order(d as u32, field.p()))
}
