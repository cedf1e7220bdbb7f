//! Print every Boltzmann weight table and its free-fermion defect.

use ffice::weights::{free_fermion_check, free_fermion_defect, render_table, Table};

fn main() {
    for t in Table::ALL {
        println!("{}", render_table(t));
        if Table::SIX_VERTEX.contains(&t) {
            println!("a1 a2 + b1 b2 - c1 c2 = {}  (free fermion: {})\n", free_fermion_defect(t), free_fermion_check(t));
        }
    }
}
