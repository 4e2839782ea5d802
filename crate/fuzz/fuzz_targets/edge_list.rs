#![no_main]

use libfuzzer_sys::fuzz_target;
use parcolor::graph::write_edge_list;
use parcolor::parse_edge_list;

fuzz_target!(|data: &[u8]| {
    let Ok(g) = parse_edge_list(data) else {
        return;
    };
    let mut degree_sum = 0;
    for v in 0..g.vertex_count() {
        let nbrs = g.neighbors(v);
        degree_sum += nbrs.len();
        assert!(nbrs.windows(2).all(|w| w[0] < w[1]));
        assert!(!nbrs.contains(&(v as u32)));
    }
    assert_eq!(degree_sum, 2 * g.edge_count());

    // writing and re-reading keeps the edge set (isolated ids cannot appear)
    let mut buf = Vec::new();
    write_edge_list(&g, &mut buf).unwrap();
    let h = parse_edge_list(buf.as_slice()).unwrap();
    assert_eq!(h.edge_count(), g.edge_count());
});
