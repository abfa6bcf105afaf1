use concordia_core::exact::interval::*;
use concordia_core::exact::qpoly::QPoly;
use concordia_core::exact::rat::rat;
fn main() {
    let pi = pi_enclosure(64);
    println!("pi.lo = {:.30}", rat_f(&pi.lo));
    println!("pi.hi = {:.30}", rat_f(&pi.hi));
    println!("width = {:e}", rat_f(&pi.width()));
    let c = cos_enclosure_rational(&rat(1,1), 50);
    println!("cos1.lo = {:.30}", rat_f(&c.lo));
    println!("cos1.hi = {:.30}", rat_f(&c.hi));
    let p = QPoly::from_int_coeffs(&[0, -1, 0, 1]);
    println!("count(-2,2) = {}", p.count_roots_open(&rat(-2,1), &rat(2,1)));
    println!("count(1/2,2) = {}", p.count_roots_open(&rat(1,2), &rat(2,1)));
}
fn rat_f(r: &num::rational::BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
