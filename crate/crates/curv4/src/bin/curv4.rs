use clap::Parser;

fn main() {
    // CURV4_THREADS caps the worker count; 0 or unset picks the default
    if let Ok(v) = std::env::var("CURV4_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
    let cli = curv4::cli::Cli::parse();
    std::process::exit(curv4::cli::run(cli));
}
