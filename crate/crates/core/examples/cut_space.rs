//! The five-machine graph: basis cuts, decimal cut indices, unions and
//! decoding back to cells.

use cellcut::cut::{build_basis, cut_from_index, decode_partition, enumerate_all_cuts, union_cuts};
use cellcut::demo;
use cellcut::ga::{decode_chromosome, sort_chromosome, Chromosome};

fn main() {
    let g = demo::five_machine_graph();
    print!("flow graph:\n{}", g.dump());

    let basis = build_basis(&g).unwrap();
    println!("\nbasis cuts:");
    for (cut, v) in basis.cuts().iter().zip(basis.basis_vertices()) {
        println!("  w({{M{}}}) = {} index {}", v + 1, cut.mask, cut.index);
    }

    println!("\nall {} cuts:", basis.max_index());
    for cut in enumerate_all_cuts(&basis).unwrap() {
        println!("  {:>2} {}", cut.index, cut.mask);
    }

    let w1 = cut_from_index(&basis, 5).unwrap();
    let w2 = cut_from_index(&basis, 7).unwrap();
    let union = union_cuts(g.edge_count(), [&w1, &w2]);
    println!("\nw1 = {}  w2 = {}", w1.mask, w2.mask);
    println!("w1 OR w2 = {union} -> {}", decode_partition(&g, &union));

    let ch = Chromosome(vec![5, 7, 0]);
    let sorted = sort_chromosome(&ch);
    println!(
        "\nchromosome {ch} sorts to {sorted}; both decode to {}",
        decode_chromosome(&sorted, &basis, &g)
    );
}
