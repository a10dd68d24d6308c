use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use koszul_quiver::koszul_complex::KoszulComplex;
use koszul_quiver::random::{algebra_pair, random_basis_change, random_bimodule, random_presentation, RandomSpec};

// δ² lands two degrees above its input, so bimodules reaching degree two see every
// term of the identity; these run at the full random shape.
#[test]
fn delta_squares_to_zero_at_degree_two() {
    let spec = RandomSpec { bound: 2, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let p = random_presentation(&mut rng, &spec).unwrap();
        let (c, d) = algebra_pair(&p).unwrap();
        let v = random_bimodule(&mut rng, &c, 2).unwrap();
        let w = random_bimodule(&mut rng, &d, 2).unwrap();
        let k = KoszulComplex::new(v, w).unwrap();
        assert!(k.squares_to_zero(), "instance {i}");
        assert!(k.bigraded_bimodule_check(), "instance {i}");
        if i < 20 {
            let g = random_basis_change(&mut rng, &c);
            assert_eq!(k.differential_in_basis(&g).unwrap(), k.differential(), "instance {i}");
        }
    }
}

#[test]
fn delta_squares_to_zero_through_degree_three() {
    let spec = RandomSpec { bound: 3, max_arrows: 4, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..40 {
        let p = random_presentation(&mut rng, &spec).unwrap();
        let (c, d) = algebra_pair(&p).unwrap();
        let v = random_bimodule(&mut rng, &c, 3).unwrap();
        let w = random_bimodule(&mut rng, &d, 3).unwrap();
        let k = KoszulComplex::new(v, w).unwrap();
        assert!(k.squares_to_zero(), "instance {i}");
    }
}
