#![no_main]

use libfuzzer_sys::fuzz_target;
use parcolor::bench::{emit_results, parse_results_json, OutputFormat};

fuzz_target!(|data: &[u8]| {
    let Ok(results) = parse_results_json(data) else {
        return;
    };
    if let Ok(json) = emit_results(&results, OutputFormat::Json) {
        let _ = parse_results_json(&json).expect("emitted json must parse");
    }
    let _ = emit_results(&results, OutputFormat::Csv);
});
