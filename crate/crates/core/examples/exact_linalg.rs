//! Exact rationals, matrices and signatures.

use foursym::linalg::{q, symmetric_signature, GramForm, Rational, RationalMatrix};

fn main() -> foursym::Result<()> {
    let big = Rational::new(i64::MAX, 3);
    println!("({big}) * 3 / i64::MAX = {}", &(&big * &Rational::from_int(3)) / &Rational::from_int(i64::MAX));
    println!("1/2 + 1/3 = {}", &q(1, 2) + &q(1, 3));

    let a = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]);
    let inv = a.inverse().expect("invertible");
    println!("inverse first row: {} {}", inv[(0, 0)], inv[(0, 1)]);
    println!("a * inv is identity: {}", a.checked_mul(&inv)? == RationalMatrix::identity(2));

    let h = RationalMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -2]]);
    let s = symmetric_signature(&h)?;
    println!("signature of h: (+{}, -{}, 0x{})", s.pos, s.neg, s.zero);

    let w = GramForm::antisymmetric(RationalMatrix::from_i64(&[&[0, 1], &[-1, 0]]))?;
    println!("w(e1, e2) = {}, nondegenerate: {}", w.eval(&[q(1, 1), q(0, 1)], &[q(0, 1), q(1, 1)]), w.is_nondegenerate());
    Ok(())
}
