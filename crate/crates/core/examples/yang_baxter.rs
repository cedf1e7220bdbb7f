//! Run every symbolic relation check and summarize per relation.

use std::collections::BTreeMap;

use ffice::relations::run_all;

fn main() {
    let reports = run_all();
    let mut tally: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for r in &reports {
        let e = tally.entry(format!("{} {}", r.relation, r.combo)).or_default();
        e.0 += r.pass as usize;
        e.1 += 1;
    }
    for (name, (ok, total)) in &tally {
        println!("{name:<24} {ok:>3}/{total}");
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    for r in &failed {
        println!("FAIL {} {} {:?}: {} != {}", r.relation, r.combo, r.boundary, r.lhs, r.rhs);
    }
    println!("{} cells, {} failing", reports.len(), failed.len());
}
