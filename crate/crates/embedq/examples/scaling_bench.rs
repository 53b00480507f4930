//! Wall-time and peak-memory growth of the score pair versus
//! trustworthiness. Past the rank-metric cap the baseline cells read
//! "capped" while the score pair keeps running.
//!
//! For honest peak-memory numbers this example installs the counting
//! allocator, exactly like the `embedq bench` subcommand.
//!
//! ```bash
//! cargo run --release --example scaling_bench
//! ```

use embedq::cli::{cmd_bench, BenchOptions};
use embedq::memtrack::TrackingAllocator;

#[global_allocator]
static ALLOC: TrackingAllocator = TrackingAllocator;

fn main() -> embedq::Result<()> {
    embedq::init_thread_pool_from_env();
    let table = cmd_bench(&BenchOptions {
        n_list: vec![1000, 2000, 4000, 8000, 16000],
        p: 50,
        seed: 42,
    })?;
    print!("{table}");
    println!("\nrank metrics hold an n x n matrix, so memory grows ~n^2 until the");
    println!("cap refuses; the score pair stays O(n p) and keeps going.");
    Ok(())
}
