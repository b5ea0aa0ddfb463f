use crate::error::{param, Result};
use crate::partition::Partition;
use crate::tensor::SparseTensor;

use super::SubgroupDescriptor;

/// An ordered spanning family for a fixed-point space, with one label per
/// member. Members built as plain full-range diagram tensors also remember
/// their partition so Gram entries can be read off the join lattice.
#[derive(Clone, Debug)]
pub struct GeneratorFamily {
    name: String,
    descriptor: Option<SubgroupDescriptor>,
    dim: usize,
    legs: usize,
    members: Vec<SparseTensor>,
    labels: Vec<String>,
    diagrams: Vec<Option<Partition>>,
}

impl GeneratorFamily {
    pub fn empty(name: impl Into<String>, dim: usize, legs: usize) -> Self {
        GeneratorFamily {
            name: name.into(),
            descriptor: None,
            dim,
            legs,
            members: vec![],
            labels: vec![],
            diagrams: vec![],
        }
    }

    /// A family of arbitrary vectors, labelled by position.
    pub fn from_members(name: impl Into<String>, members: Vec<SparseTensor>) -> Result<Self> {
        let Some(first) = members.first() else {
            return param("a custom family needs at least one member");
        };
        let mut fam = Self::empty(name, first.dim(), first.legs());
        for (i, m) in members.into_iter().enumerate() {
            fam.push(format!("v{}", i + 1), m, None)?;
        }
        Ok(fam)
    }

    pub(crate) fn with_descriptor(mut self, d: SubgroupDescriptor) -> Self {
        self.descriptor = Some(d);
        self
    }

    pub fn push(&mut self, label: String, member: SparseTensor, diagram: Option<Partition>) -> Result<()> {
        if member.dim() != self.dim || member.legs() != self.legs {
            return param(format!(
                "member {label} has shape {}^{}, family expects {}^{}",
                member.dim(),
                member.legs(),
                self.dim,
                self.legs
            ));
        }
        self.members.push(member);
        self.labels.push(label);
        self.diagrams.push(diagram);
        Ok(())
    }

    /// `self` followed by the members of `other`.
    pub fn union(&self, other: &GeneratorFamily) -> Result<GeneratorFamily> {
        if self.dim != other.dim || self.legs != other.legs {
            return param(format!(
                "families live in different spaces: {}^{} vs {}^{}",
                self.dim, self.legs, other.dim, other.legs
            ));
        }
        let mut out = self.clone();
        out.name = format!("{} ∪ {}", self.name, other.name);
        out.descriptor = None;
        out.members.extend(other.members.iter().cloned());
        out.labels.extend(other.labels.iter().cloned());
        out.diagrams.extend(other.diagrams.iter().cloned());
        Ok(out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn descriptor(&self) -> Option<&SubgroupDescriptor> {
        self.descriptor.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SparseTensor] {
        &self.members
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn diagrams(&self) -> &[Option<Partition>] {
        &self.diagrams
    }
}
