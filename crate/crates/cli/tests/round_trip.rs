use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qext_cli::random::random_expr;
use qext_core::text::{expr_from_json, expr_to_json, format_with, parse_expr, Style};

#[test]
fn thousand_random_expressions_reparse() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let e = random_expr(&mut rng);
        for unicode in [false, true] {
            let s = format_with(&e, Style { unicode });
            assert_eq!(parse_expr(&s).unwrap(), e, "{s}");
        }
        assert_eq!(expr_from_json(&expr_to_json(&e)).unwrap(), e);
    }
}
