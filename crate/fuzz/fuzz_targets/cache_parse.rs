#![no_main]

use c4line::blocks::BlockCache;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok((entries, stats)) = BlockCache::parse(text) {
            assert_eq!(entries.len(), stats.loaded);
        }
    }
});
