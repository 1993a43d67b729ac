// SPDX-License-Identifier: Apache-2.0

//! Writes generated graphs as edge lists the CLI can read.
//!
//! `cargo run --example generate_corpus -- OUT_DIR` writes the whole corpus;
//! without an argument it only prints a summary.

use std::fs::{create_dir_all, File};
use std::io::BufWriter;
use std::path::PathBuf;

use tipdecomp::genbench::{corpus, generate_edges};
use tipdecomp::io::write_edge_list;

fn main() -> tipdecomp::Result<()> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from);
    if let Some(dir) = &out_dir {
        create_dir_all(dir)?;
    }
    let specs = corpus();
    let mut total = 0;
    for (i, spec) in specs.iter().enumerate() {
        let edges = generate_edges(spec)?;
        total += edges.len();
        if let Some(dir) = &out_dir {
            write_edge_list(
                &edges,
                BufWriter::new(File::create(dir.join(format!("g{i:03}.txt")))?),
            )?;
        }
    }
    println!("{} graphs, {total} edges", specs.len());
    Ok(())
}
