use gzlab::asym::epsilon_leading;
use gzlab::diffpoly::c_coefficient;

fn main() {
    println!(" n   c_n   K_n");
    for n in 1..=12 {
        let c = c_coefficient(n).expect("below the cap");
        println!("{n:>2} {c:>5} {:>5}", epsilon_leading(n));
    }
}
