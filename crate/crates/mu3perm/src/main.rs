//! Binary entry point; all logic lives in the library.

fn main() {
    std::process::exit(mu3perm::cli::run());
}
