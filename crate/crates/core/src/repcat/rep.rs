use std::sync::Arc;

use num_bigint::BigUint;

use super::diagram::{Diagram, HomSpace};
use super::quiver::{DimVec, Quiver};
use crate::error::{Error, Result};
use crate::falg::{FieldMatrix, FieldSpec, Subspace};
use crate::Limits;

/// A finite-dimensional representation of a quiver over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rep {
    quiver: Arc<Quiver>,
    field: FieldSpec,
    dims: DimVec,
    maps: Vec<FieldMatrix>,
}

impl Rep {
    pub fn new(quiver: Arc<Quiver>, field: FieldSpec, dims: DimVec, maps: Vec<FieldMatrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::IncompatibleObjects(format!(
                "dimension vector {dims} has the wrong length for a quiver with {} vertices",
                quiver.vertex_count()
            )));
        }
        let rep = Rep {
            quiver,
            field,
            dims,
            maps,
        };
        rep.diagram().check()?;
        Ok(rep)
    }

    pub fn zero(quiver: Arc<Quiver>, field: FieldSpec) -> Self {
        let dims = DimVec::zero(quiver.vertex_count());
        Self::with_zero_maps(quiver, field, dims)
    }

    /// The representation with the given dimensions and every arrow acting by zero.
    pub fn with_zero_maps(quiver: Arc<Quiver>, field: FieldSpec, dims: DimVec) -> Self {
        let maps = quiver
            .arrow_ends()
            .iter()
            .map(|&(s, t)| FieldMatrix::zeros(field, dims.get(t), dims.get(s)))
            .collect();
        Rep {
            quiver,
            field,
            dims,
            maps,
        }
    }

    pub fn simple(quiver: Arc<Quiver>, field: FieldSpec, v: usize) -> Self {
        let dims = DimVec::unit(quiver.vertex_count(), v);
        Self::with_zero_maps(quiver, field, dims)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> DimVec {
        self.dims
    }

    pub fn maps(&self) -> &[FieldMatrix] {
        &self.maps
    }

    pub fn diagram(&self) -> Diagram {
        Diagram {
            field: self.field,
            dims: self.dims.to_vec(),
            edges: self.quiver.arrow_ends().to_vec(),
            maps: self.maps.clone(),
        }
    }

    pub(crate) fn from_diagram(quiver: Arc<Quiver>, d: Diagram) -> Result<Self> {
        let dims = DimVec::new(&d.dims)?;
        Ok(Rep {
            quiver,
            field: d.field,
            dims,
            maps: d.maps,
        })
    }

    fn check_compatible(&self, other: &Rep) -> Result<()> {
        if self.quiver != other.quiver || self.field != other.field {
            return Err(Error::IncompatibleObjects(
                "representations over different quivers or fields".into(),
            ));
        }
        Ok(())
    }
}

/// Basis of the intertwiners `M -> N`; `|Hom(M, N)| = p^dim`.
#[derive(Debug, Clone)]
pub struct HomBasis {
    pub dim: usize,
    /// One matrix per vertex for each basis element.
    pub basis: Vec<Vec<FieldMatrix>>,
}

pub fn hom_basis(m: &Rep, n: &Rep) -> Result<HomBasis> {
    m.check_compatible(n)?;
    let space: HomSpace = m.diagram().hom_space(&n.diagram())?;
    Ok(HomBasis {
        dim: space.dim(),
        basis: space.basis,
    })
}

pub fn is_isomorphic(m: &Rep, n: &Rep, limits: &Limits) -> Result<bool> {
    m.check_compatible(n)?;
    m.diagram().is_isomorphic(&n.diagram(), limits)
}

pub fn aut_count(m: &Rep, limits: &Limits) -> Result<BigUint> {
    m.diagram().aut_count(limits)
}

pub fn direct_sum(m: &Rep, n: &Rep) -> Result<Rep> {
    m.check_compatible(n)?;
    let d = m.diagram().direct_sum(&n.diagram())?;
    Rep::from_diagram(m.quiver.clone(), d)
}

/// Splits `C` along a closed subspace tuple into `(sub, quotient)`.
pub fn quotient_by_subrep(c: &Rep, u: &[Subspace]) -> Result<(Rep, Rep)> {
    let (s, q) = c.diagram().sub_and_quotient(u)?;
    Ok((
        Rep::from_diagram(c.quiver.clone(), s)?,
        Rep::from_diagram(c.quiver.clone(), q)?,
    ))
}
