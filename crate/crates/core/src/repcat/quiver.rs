use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{too_large, Error, Result};

/// Largest number of vertices a quiver may have.
pub const MAX_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub src: String,
    pub dst: String,
    #[serde(default)]
    pub label: String,
}

#[derive(Serialize, Deserialize)]
struct QuiverSpec {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<Arrow>,
}

/// A finite acyclic quiver. Construction validates acyclicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    ends: Vec<(usize, usize)>,
    topo: Vec<usize>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        if vertices.len() > MAX_VERTICES {
            return Err(too_large(
                "quiver vertex count",
                vertices.len() as u64,
                MAX_VERTICES as u64,
            ));
        }
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::Parse(format!("duplicate vertex {v:?}")));
            }
        }
        let lookup = |v: &str| {
            index
                .get(v)
                .copied()
                .ok_or_else(|| Error::Parse(format!("arrow refers to unknown vertex {v:?}")))
        };
        let ends = arrows
            .iter()
            .map(|a| Ok((lookup(&a.src)?, lookup(&a.dst)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut q = Quiver {
            vertices,
            arrows,
            ends,
            topo: Vec::new(),
        };
        q.topo = q.topological_order()?;
        Ok(q)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: QuiverSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Quiver::new(spec.vertices, spec.arrows)
    }

    /// Canonical JSON form, used for content hashing.
    pub fn to_canonical_json(&self) -> String {
        let spec = QuiverSpec {
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
        };
        serde_json::to_string(&spec).expect("quiver serializes")
    }

    /// Linearly oriented `A_n`: `1 -> 2 -> ... -> n`.
    pub fn a_n(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n)
            .map(|i| Arrow {
                src: i.to_string(),
                dst: (i + 1).to_string(),
                label: format!("a{i}"),
            })
            .collect();
        Quiver::new(vertices, arrows).expect("A_n is acyclic")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// `(source, target)` vertex indices of every arrow.
    pub fn arrow_ends(&self) -> &[(usize, usize)] {
        &self.ends
    }

    pub fn topological_order(&self) -> Result<Vec<usize>> {
        // colors: 0 unvisited, 1 on stack, 2 done
        let n = self.vertices.len();
        let mut color = vec![0u8; n];
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = Vec::new();
        fn visit(q: &Quiver, v: usize, color: &mut [u8], stack: &mut Vec<usize>, order: &mut Vec<usize>) -> Result<()> {
            color[v] = 1;
            stack.push(v);
            for &(s, t) in &q.ends {
                if s != v {
                    continue;
                }
                match color[t] {
                    0 => visit(q, t, color, stack, order)?,
                    1 => {
                        let start = stack.iter().position(|&x| x == t).expect("on stack");
                        let mut cycle: Vec<String> = stack[start..].iter().map(|&i| q.vertices[i].clone()).collect();
                        cycle.push(q.vertices[t].clone());
                        return Err(Error::NotHereditarySetup { cycle });
                    }
                    _ => {}
                }
            }
            stack.pop();
            color[v] = 2;
            order.push(v);
            Ok(())
        }
        for v in 0..n {
            if color[v] == 0 {
                visit(self, v, &mut color, &mut stack, &mut order)?;
            }
        }
        order.reverse();
        Ok(order)
    }

    pub fn topo_order(&self) -> &[usize] {
        &self.topo
    }
}

/// Returns the quiver unchanged if it has no oriented cycle.
pub fn validate_quiver(q: Quiver) -> Result<Quiver> {
    q.topological_order()?;
    Ok(q)
}

/// Dimension vector, one entry per vertex. Also serves as the class in the Grothendieck group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DimVec {
    len: u8,
    d: [u8; MAX_VERTICES],
}

impl TryFrom<Vec<usize>> for DimVec {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        DimVec::new(&v)
    }
}

impl From<DimVec> for Vec<usize> {
    fn from(d: DimVec) -> Vec<usize> {
        d.to_vec()
    }
}

impl DimVec {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.len() > MAX_VERTICES {
            return Err(too_large(
                "dimension vector length",
                dims.len() as u64,
                MAX_VERTICES as u64,
            ));
        }
        let mut d = [0u8; MAX_VERTICES];
        for (slot, &x) in d.iter_mut().zip(dims) {
            *slot = u8::try_from(x).map_err(|_| too_large("dimension", x as u64, u8::MAX as u64))?;
        }
        Ok(DimVec {
            len: dims.len() as u8,
            d,
        })
    }

    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        DimVec {
            len: n as u8,
            d: [0; MAX_VERTICES],
        }
    }

    pub fn unit(n: usize, v: usize) -> Self {
        let mut d = Self::zero(n);
        d.d[v] = 1;
        d
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, v: usize) -> usize {
        assert!(v < self.len());
        self.d[v] as usize
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.d[..self.len()].iter().map(|&x| x as usize)
    }

    pub fn total(&self) -> usize {
        self.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.iter().all(|x| x == 0)
    }

    pub fn add(&self, other: &DimVec) -> DimVec {
        assert_eq!(self.len, other.len, "dimension vectors of different length");
        let mut out = *self;
        for v in 0..self.len() {
            out.d[v] = self.d[v].checked_add(other.d[v]).expect("dimension overflow");
        }
        out
    }

    /// Componentwise difference, `None` if some component would be negative.
    pub fn checked_sub(&self, other: &DimVec) -> Option<DimVec> {
        assert_eq!(self.len, other.len, "dimension vectors of different length");
        let mut out = *self;
        for v in 0..self.len() {
            out.d[v] = self.d[v].checked_sub(other.d[v])?;
        }
        Some(out)
    }

    /// All dimension vectors `e` with `e <= self` componentwise, in lexicographic order.
    pub fn sub_vectors(&self) -> Vec<DimVec> {
        let mut out = vec![DimVec::zero(self.len())];
        for v in 0..self.len() {
            let mut next = Vec::new();
            for base in &out {
                for x in 0..=self.d[v] {
                    let mut e = *base;
                    e.d[v] = x;
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }

    /// All dimension vectors of length `n` with total dimension at most `max_total`.
    pub fn all_up_to(n: usize, max_total: usize) -> Vec<DimVec> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; n];
        fn rec(v: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<DimVec>) {
            if v == cur.len() {
                out.push(DimVec::new(cur).expect("small"));
                return;
            }
            for x in 0..=left {
                cur[v] = x;
                rec(v + 1, left - x, cur, out);
            }
            cur[v] = 0;
        }
        rec(0, max_total, &mut cur, &mut out);
        out.sort_by_key(|d| (d.total(), *d));
        out
    }
}

impl fmt::Debug for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
