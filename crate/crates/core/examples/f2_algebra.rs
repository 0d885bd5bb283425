use invdiam::f2::{gram, ortho_basis_of_complement, rank, solve_affine};
use invdiam::F2Vector;

fn main() -> invdiam::Result<()> {
    let v = |s: &str| F2Vector::from_bit_str(s).unwrap();
    let vs = [v("1100"), v("0110"), v("1010"), v("0001")];
    println!("rank {}", rank(&vs));

    let g = gram(&vs)?;
    println!("gram rank {}", g.rank());
    for i in 0..g.nrows() {
        println!("  {}", g.row(i).to_bit_string());
    }

    // <x, r_i> = b_i
    let space = solve_affine(&[v("1100"), v("0011")], &[true, false], 4)?;
    println!("solutions: {}", space.len());
    for x in space.iter() {
        println!("  {}", x.to_bit_string());
    }

    let u = v("1011");
    let basis = ortho_basis_of_complement(&u)?;
    println!("u-perp basis {:?}", basis.iter().map(F2Vector::to_bit_string).collect::<Vec<_>>());
    assert!(basis.iter().all(|b| !b.dot(&u)));
    Ok(())
}
