use gzlab::decomp::{det_b, gradings, lambda_from_pqj, LambdaTriple, VarSpec};

fn main() {
    let spec = VarSpec::new(0, 2, 5).unwrap();
    println!("n = 2, l = 5, det B = {}", det_b(&spec));
    for lam in [LambdaTriple::new(1, 0, 0), LambdaTriple::new(0, 1, 1), LambdaTriple::new(3, 2, 4)] {
        let (p, q, j) = gradings(&lam, &spec);
        let back = lambda_from_pqj(p as i64, q as i64, j as i64, &spec).unwrap();
        println!("{lam:?} -> (p, q, j) = ({p}, {q}, {j}) -> {back:?}");
    }
    // q - n j must be a nonnegative multiple of l - n
    for (p, q, j) in [(2, 4, 1), (2, 5, 1), (3, 9, 2)] {
        match lambda_from_pqj(p, q, j, &spec) {
            Ok(l) => println!("({p}, {q}, {j}) -> {l:?}"),
            Err(e) => println!("({p}, {q}, {j}): {e}"),
        }
    }
}
