#![no_main]

use c4line::cli::DecompositionDocument;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = DecompositionDocument::parse(text) else {
        return;
    };
    // keep rebuilt graphs small
    if doc.params.m * doc.params.n <= 256 && doc.params.lambda <= 64 {
        let _ = doc.verify();
    }
    let again = DecompositionDocument::parse(&doc.to_json()).expect("serialized document parses");
    assert_eq!(again, doc);
});
