#![no_main]

use libfuzzer_sys::fuzz_target;
use parcolor::bench::OutputFormat;
use parcolor::{SyntheticKind, SyntheticSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let _ = s.parse::<OutputFormat>();
    let Ok(spec) = s.parse::<SyntheticSpec>() else {
        return;
    };
    let shown = spec.to_string();
    let again: SyntheticSpec = shown.parse().expect("display output must parse");
    assert_eq!(again.to_string(), shown);

    // only build small graphs
    let small = match spec.kind {
        SyntheticKind::Path { n } | SyntheticKind::Cycle { n } | SyntheticKind::Gnp { n, .. } => {
            n <= 512
        }
        SyntheticKind::Complete { n } => n <= 64,
        SyntheticKind::Bipartite { left, right } => left.saturating_mul(right) <= 4096,
    };
    if small {
        let _ = spec.generate();
    }
});
