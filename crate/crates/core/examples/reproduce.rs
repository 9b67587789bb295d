//! Runs the full certificate chain for the row (1+x, 12, x^2+16) and prints
//! the summary table, as the `reproduce-paper` subcommand does.
//!
//!     cargo run --example reproduce

use stablerank::cli::dispatch;

fn main() {
    let r = dispatch(["stablerank", "reproduce-paper", "--pretty"]);
    println!("{}", r.render(true));
    std::process::exit(r.exit_code);
}
