fn main() {
    std::process::exit(tilesynth::cli::run(std::env::args_os()));
}
