#include "daxkit/daxkit.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Dax and Freedman-Quinn invariants and isotopy verdicts for 2-disks in 4-manifolds"};
  app.usage("daxkit FILE COMMAND [ARGS...]\n\ncommands: " + [] {
    std::string s;
    for (const auto& c : daxkit::command_names()) s += (s.empty() ? "" : ", ") + c;
    return s;
  }());
  std::string file;
  app.add_option("file", file, "input document, or - for stdin")->required();
  app.prefix_command();
  CLI11_PARSE(app, argc, argv);

  std::vector<std::string> args = app.remaining();
  if (args.empty()) {
    std::cerr << "error: no command given\n" << app.help();
    return daxkit::exit_validation_error;
  }

  std::string text;
  if (file == "-") {
    text = read_all(std::cin);
  } else {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read '" << file << "'\n";
      return daxkit::exit_parse_error;
    }
    text = read_all(in);
  }

  daxkit::CommandResult r = daxkit::run_text(text, args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
