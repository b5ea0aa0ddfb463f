//! Builds a few diagram tensors and shows their entries and inner products.

use num_rational::BigRational;
use qgverify::partition::Partition;
use qgverify::tensor::{
    diagram_tensor, inner_product, lie_derivation, rotation_generator, sym_tensor, tensor_of_partition, RangeSpec,
};
use qgverify::SparseTensor;

fn show(name: &str, t: &SparseTensor) {
    let entries: Vec<String> = t
        .iter()
        .map(|(idx, c)| format!("{c}·e{}", idx.iter().map(|i| i.to_string()).collect::<String>()))
        .collect();
    println!("{name} = {}", entries.join(" + "));
}

fn main() -> qgverify::Result<()> {
    let p: Partition = "14|23".parse()?;
    let t = diagram_tensor(&p, 2)?;
    show("T_{14|23} (N=2)", &t);
    println!("<T, T> = {}", inner_product(&t, &t)?);

    // singletons take a vector, blocks can be restricted to a coordinate range
    let e1 = SparseTensor::basis(3, 1)?;
    let filled = tensor_of_partition(&"1|23".parse()?, 3, &[e1.clone()], &RangeSpec::starting_at(2, 3))?;
    show("T_{1|23}(e1), pairs over {2,3}", &filled);

    let e2 = SparseTensor::basis(3, 2)?;
    show("S(e1, e1, e2)", &sym_tensor(&[e1.clone(), e1, e2])?);

    // rotations of the plane kill the pairing tensor but not a basis vector
    let x = rotation_generator(2, 1, 2);
    println!("X · T_12 is zero: {}", lie_derivation(&x, &diagram_tensor(&"12".parse()?, 2)?)?.is_zero());
    show("X · e1", &lie_derivation(&x, &SparseTensor::basis(2, 1)?)?);

    let half = BigRational::new(1.into(), 2.into());
    show("e1/2 ⊗ e2", &SparseTensor::basis(2, 1)?.scale(&half).tensor(&SparseTensor::basis(2, 2)?)?);
    Ok(())
}
