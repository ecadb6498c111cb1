use gzlab::diffpoly::gamma_log_ratio;

fn main() {
    for n in 0..=6 {
        let r = gamma_log_ratio(n).expect("below the cap");
        println!("Γ^({n})/Γ = {r}");
        println!("    {} terms, coefficient sum {}", r.len(), r.coefficient_sum());
    }
}
