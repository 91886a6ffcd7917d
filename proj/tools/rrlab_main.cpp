#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rrlab/session.hpp"

namespace {

// exit 0: all commands ok; 1: session parse error; 2: some command failed
int run_session(const std::string& src, rrlab::SessionOptions opts) {
  rrlab::Session s;
  try {
    s = rrlab::parse_session(src, opts);
  } catch (const rrlab::Failure& f) {
    std::cerr << "rrlab: [" << f.code() << "] " << f.what() << "\n";
    return 1;
  }
  bool all_ok = true;
  for (auto& rep : rrlab::execute(s)) {
    std::cout << rrlab::emit(rep, opts.format);
    all_ok = all_ok && rep.ok;
  }
  return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computational probes for Ratliff-Rush closures, reductions and "
               "Hilbert data of ideals local at the origin"};
  app.require_subcommand(1);

  rrlab::SessionOptions opts;
  if (const char* env = std::getenv("RRLAB_SEED")) opts.seed = std::atoll(env);

  long long char_override = -1;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--format", opts.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    c->add_option("--seed", opts.seed, "seed for randomized searches");
    c->add_option("--char", char_override,
                  "override the coefficient characteristic everywhere");
    c->add_option("--window", opts.window, "stabilization window for colon chains");
    c->add_option("--cap", opts.cap, "truncation cap for local length certificates");
    c->add_option("--trials", opts.trials, "trial count for invariance experiments");
  };

  std::string file;
  auto* run = app.add_subcommand("run", "execute a session file");
  run->add_option("file", file, "session file, or - for stdin")->required();
  add_common(run);

  std::string preset;
  auto* repro = app.add_subcommand("repro", "run a named built-in scenario");
  repro->add_option("preset", preset, "ex2_15 or ex3_4")
      ->required()
      ->check(CLI::IsMember({"ex2_15", "ex3_4"}));
  add_common(repro);

  CLI11_PARSE(app, argc, argv);
  if (char_override >= 0) {
    opts.characteristic = char_override;
    opts.characteristic_forced = true;
  }

  if (repro->parsed()) return run_session("repro " + preset + "\n", opts);

  std::ostringstream src;
  if (file == "-") {
    src << std::cin.rdbuf();
  } else {
    std::ifstream in(file);
    if (!in) {
      std::cerr << "rrlab: cannot open " << file << "\n";
      return 1;
    }
    src << in.rdbuf();
  }
  return run_session(src.str(), opts);
}
