//! Signs drawn from a small-bias sample space give lifts whose adjacency
//! can be answered without building the graph.

use twolift::graph::make_complete;
use twolift::signing::{LiftChain, SampleSpace};

fn main() -> twolift::Result<()> {
    let space = SampleSpace::new(10, 6)?;
    println!("space over {} positions: {} seeds, bias bound {:.4}", space.m(), space.size(), space.bias_bound());
    println!("bias of positions {{0, 3, 7}}: {:.4}", space.bias(&[0, 3, 7])?);

    let mut chain = LiftChain::new(make_complete(4)?);
    for (x, y) in [(3, 9), (17, 40), (101, 5), (250, 77)] {
        chain.push_sample_space(12, x, y)?;
    }
    let depth = chain.depth();
    let n = chain.order(depth);
    println!("chain of depth {depth} over K4 describes a graph on {n} vertices");
    let neighbours: Vec<usize> = (0..n).filter(|&j| chain.oracle_adjacent(depth, 0, j).unwrap()).collect();
    println!("neighbours of vertex 0 by oracle: {neighbours:?}");
    let g = chain.materialize(depth)?;
    println!("neighbours of vertex 0 in the built graph: {:?}", g.neighbors(0).collect::<Vec<_>>());
    Ok(())
}
