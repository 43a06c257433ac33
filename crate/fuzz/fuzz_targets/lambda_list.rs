#![no_main]

use c4line::cli::{parse_lambda_list, MAX_LAMBDAS};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(list) = parse_lambda_list(text) {
            assert!(!list.is_empty() && list.len() <= MAX_LAMBDAS);
            assert!(list.windows(2).all(|w| w[0] < w[1]));
            assert!(list[0] >= 1);
        }
    }
});
