fn main() {
    std::process::exit(opreduce::run_cli(std::env::args_os()));
}
