// SPDX-License-Identifier: Apache-2.0

//! Reads an edge list with comments and duplicate edges, then writes tip
//! numbers keyed by the original vertex ids.

use std::io::stdout;

use tipdecomp::io::{parse_edge_list_str, write_tips};
use tipdecomp::{build_graph, tip_decompose_bup, Side};

const INPUT: &str = "\
% bip unweighted
% 7 4 4
10 100
10 200
10 200
20 100
20 200
30 200
30 300
";

fn main() -> tipdecomp::Result<()> {
    let doc = parse_edge_list_str(INPUT)?;
    println!(
        "{} edge lines, {} comments",
        doc.edges.len(),
        doc.comment_lines
    );
    let g = build_graph(&doc.edges)?;
    println!("{} distinct edges", g.edge_count());
    let (tips, _) = tip_decompose_bup(&g, Side::U)?;
    write_tips(&tips, g.ids(Side::U), stdout())?;
    Ok(())
}
