use rayon::prelude::*;

use super::{GeneratorFamily, SubgroupDescriptor, SubgroupKind};
use crate::error::Result;
use crate::partition::{colorings, enumerate, FamilyKind, Partition};
use crate::tensor::{diagram_tensor, tensor_of_partition, RangeSpec, SparseTensor};

type Member = (String, SparseTensor, Option<Partition>);

fn collect(name: String, d: &SubgroupDescriptor, k: usize, members: Vec<Member>) -> Result<GeneratorFamily> {
    let mut fam = GeneratorFamily::empty(name, d.n(), k).with_descriptor(d.clone());
    for (label, v, p) in members {
        fam.push(label, v, p)?;
    }
    Ok(fam)
}

fn plain_diagrams(parts: Vec<Partition>, n: usize) -> Result<Vec<Member>> {
    parts
        .into_par_iter()
        .map(|p| Ok((p.encoding(), diagram_tensor(&p, n)?, Some(p))))
        .collect()
}

fn colored_diagrams(parts: Vec<Partition>, n: usize, a: usize, b: usize) -> Result<Vec<Member>> {
    let range = RangeSpec::block_split(a, b);
    let colored: Vec<Partition> =
        parts.iter().map(|p| colorings(p, 2)).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    colored
        .into_par_iter()
        .map(|p| Ok((p.encoding(), tensor_of_partition(&p, n, &[], &range)?, None)))
        .collect()
}

/// Every tuple in `values^len`, first position most significant.
fn fillings(values: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|f| values.iter().map(move |&v| [f.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Tensors `T_p(e_{f_1} ⊗ ... ⊗ e_{f_s})` with strings over `range`, one per
/// partition of NC₂,₁(k) and filling `f` of its singletons from `fill_from`.
pub(crate) fn filled_members(n: usize, k: usize, range: &RangeSpec, fill_from: &[usize]) -> Result<Vec<Member>> {
    let mut jobs = Vec::new();
    for p in enumerate(FamilyKind::NC21, k)? {
        for f in fillings(fill_from, p.singleton_count()) {
            jobs.push((p.clone(), f));
        }
    }
    jobs.into_par_iter()
        .map(|(p, f)| {
            let args: Vec<SparseTensor> = f.iter().map(|&i| SparseTensor::basis(n, i)).collect::<Result<_>>()?;
            let label = if f.is_empty() {
                p.encoding()
            } else {
                let names: Vec<String> = f.iter().map(|i| format!("e{i}")).collect();
                format!("{}[{}]", p.encoding(), names.join(","))
            };
            Ok((label, tensor_of_partition(&p, n, &args, range)?, None))
        })
        .collect()
}

/// A spanning family of the degree-`k` fixed-point space of `d`.
///
/// For the unitary descriptors the `k` legs alternate between the fundamental
/// representation and its conjugate; odd `k` gives the empty family.
pub fn generator_family(d: &SubgroupDescriptor, k: usize) -> Result<GeneratorFamily> {
    let n = d.n();
    let name = format!("{d} k={k}");
    let members = match d.kind() {
        SubgroupKind::FreeOrth => plain_diagrams(enumerate(FamilyKind::NC2, k)?, n)?,
        SubgroupKind::ClassOrth => plain_diagrams(enumerate(FamilyKind::P2, k)?, n)?,
        SubgroupKind::UnitaryClass => plain_diagrams(enumerate(FamilyKind::EvenOddAll, k)?, n)?,
        SubgroupKind::SymGroup => {
            // partitions with more than N blocks add nothing to the span
            let parts = enumerate(FamilyKind::SetPartitions, k)?.into_iter().filter(|p| p.num_blocks() <= n).collect();
            plain_diagrams(parts, n)?
        }
        SubgroupKind::StabXi(xi) => {
            let xi = SparseTensor::vector(xi);
            let full = RangeSpec::full(n);
            enumerate(FamilyKind::NC21, k)?
                .into_par_iter()
                .map(|p| {
                    let args = vec![xi.clone(); p.singleton_count()];
                    Ok((p.encoding(), tensor_of_partition(&p, n, &args, &full)?, None))
                })
                .collect::<Result<Vec<_>>>()?
        }
        SubgroupKind::CoordStab(block) => {
            let complement: Vec<usize> = (1..=n).filter(|i| !block.contains(i)).collect();
            filled_members(n, k, &RangeSpec::new(block.clone()), &complement)?
        }
        SubgroupKind::FreeProdBlocks { a, b } => colored_diagrams(enumerate(FamilyKind::NC2, k)?, n, *a, *b)?,
        SubgroupKind::UnitaryFreeProd { a, b } => colored_diagrams(enumerate(FamilyKind::EvenOddNC, k)?, n, *a, *b)?,
    };
    collect(name, d, k, members)
}

/// The family spanning `Fix_k` of the whole group for `d`'s picture: the
/// non-crossing pairings for orthogonal descriptors, the even-odd
/// non-crossing pairings for unitary ones.
pub fn target_family(d: &SubgroupDescriptor, k: usize) -> Result<GeneratorFamily> {
    let n = d.n();
    let kind = if d.is_unitary() { FamilyKind::EvenOddNC } else { FamilyKind::NC2 };
    let name = format!("{} k={k}", if d.is_unitary() { format!("un+:N={n}") } else { format!("on+:N={n}") });
    let mut fam = GeneratorFamily::empty(name, n, k);
    for (label, v, p) in plain_diagrams(enumerate(kind, k)?, n)? {
        fam.push(label, v, p)?;
    }
    Ok(fam)
}
