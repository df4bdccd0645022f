#include "shiftlab/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"shiftlab: natural measures, entropy and censuses of symbolic systems"};
  app.require_subcommand(1);
  shiftlab::CommandOptions opt;
  std::string source;

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("system", source, "SystemFile path or builtin:<name>")->required();
    return sub;
  };
  CLI::App* perron = add("perron", "Perron value, eigenvectors, period and cyclic classes");
  perron->add_option("--tol", opt.tol, "tolerance for countable truncations");
  perron->add_option("--max-size", opt.max_size, "largest countable truncation");
  CLI::App* measure = add("measure", "natural measure of a cylinder");
  measure->add_option("--word", opt.word, "comma-separated display tokens")->required();
  measure->add_option("--method", opt.method, "closed, limit, periodic, shift (sft) or edge (sofic)");
  measure->add_option("--tol", opt.tol, "limit tolerance");
  measure->add_option("--max-window", opt.max_window, "largest window for limits");
  measure->add_option("--terms", opt.terms, "series terms for countable recurrence");
  measure->add_option("--max-size", opt.max_size, "largest countable truncation");
  CLI::App* census = add("census", "|B_n| and |P_n| for n = 1..N");
  census->add_option("--n", opt.n, "largest word length");
  CLI::App* verify = add("verify", "cross-check fast formulas against the enumeration oracle");
  verify->add_option("--n-max", opt.n_max, "largest census length");
  verify->add_option("--window-max", opt.window_max, "largest cylinder window");
  verify->add_option("--max-size", opt.max_size, "largest countable truncation");
  CLI::App* classify = add("classify", "recurrence class of the transition matrix");
  classify->add_option("--terms", opt.terms, "series terms");
  classify->add_option("--max-size", opt.max_size, "largest countable truncation");
  CLI::App* entropy = add("entropy", "topological entropy and measure-entropy partial sums");
  entropy->add_option("--tol", opt.tol, "tolerance for countable truncations");
  entropy->add_option("--max-size", opt.max_size, "largest countable truncation");
  CLI::App* sample = add("sample", "orbit sample and empirical cylinder frequency");
  sample->add_option("--length", opt.length, "orbit length");
  sample->add_option("--seed", opt.seed, "random seed");
  sample->add_option("--word", opt.word, "cylinder word (default: first symbol)");

  std::string builtin;
  CLI::App* exp = app.add_subcommand("export", "print a builtin as a SystemFile document");
  exp->add_option("name", builtin, "builtin name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (exp->parsed()) {
      std::cout << shiftlab::dump_system(shiftlab::export_builtin(builtin));
      return 0;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    const shiftlab::CommandOutcome out = shiftlab::run_command(command, source, opt);
    std::cout << shiftlab::render(out.document);
    return out.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return shiftlab::exit_code_for(e);
  }
}
