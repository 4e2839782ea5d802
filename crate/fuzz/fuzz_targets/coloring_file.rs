#![no_main]

use libfuzzer_sys::fuzz_target;
use parcolor::coloring::parse_coloring;

fuzz_target!(|data: &[u8]| {
    let _ = parse_coloring(data);
});
