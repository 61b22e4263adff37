//! Lists the bad triangles of a small signed graph and checks two covers.

use btt::graph::{is_feasible_cover, EdgeCover, Sign, SignedGraph};
use btt::io::parse_edge_list;

fn main() -> btt::Result<()> {
    // A 4-cycle of positive edges with one negative chord, stored sparsely.
    let g: SignedGraph = parse_edge_list("n 4\n0 1 +1\n1 2 +1\n2 3 +1\n0 3 +1\n0 2 -1\n")?;
    for t in g.bad_triangles() {
        let (u, v) = g.endpoints(t.negative);
        println!("bad triangle {:?}, negative edge {u}-{v}", t.nodes);
    }
    let chord = EdgeCover::new(&g, g.negative_edges())?;
    println!("negative chord covers everything: {}", is_feasible_cover(&g, &chord)?);
    let one_positive = EdgeCover::new(&g, g.edge_ids().filter(|&e| g.sign(e) == Sign::Positive).take(1))?;
    println!("a single positive edge covers everything: {}", is_feasible_cover(&g, &one_positive)?);
    Ok(())
}
