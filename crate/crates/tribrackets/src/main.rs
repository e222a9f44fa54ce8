fn main() {
    // temporary probe: time the order-5 spectrum and print it
    let t0 = std::time::Instant::now();
    let s = tribrackets::polynomial_spectrum(5).unwrap();
    println!("elapsed: {:?}", t0.elapsed());
    println!("structures: {}", s.total_structures());
    println!("distinct values: {}", s.polynomials.len());
    for p in &s.polynomials {
        println!("  {}  x{}", p, s.counts[p]);
    }
}
