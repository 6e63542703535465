#include <unistd.h>

#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include <CLI11.hpp>

#include <tropex/cli/commands.hpp>

namespace {

bool reads_stdin(const std::string& command, bool hasExpression) {
  if (command == "balance") return !hasExpression;
  return command == "explode-ncd" || command == "explode-toric" || command == "refine" || command == "fiber-product";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tropical and exploded geometry toolkit"};
  std::string command;
  std::vector<std::string> positional;
  std::string svgFile;
  tropex::cli::Args args;
  std::map<std::string, std::string> values;

  std::string commands;
  for (const auto& c : tropex::cli::command_names()) commands += (commands.empty() ? "" : ", ") + c;
  app.add_option("command", command, "One of: " + commands)->required();
  app.add_option("expression", positional, "Polynomial expression");
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"polytope", "Polytope JSON {\"dim\", \"constraints\"}"},
           {"at", "Point, e.g. z1=-1t^0,z2=5t^1"},
           {"lift", "JSON array of integer lift values, one per term as written"},
           {"w", "Fiber parameter of a degeneration (default 1)"},
           {"op", "strata-op operation: e, delta, w or bound"},
           {"strata", "JSON array of strata given by tight constraint indices"},
           {"k", "Seminorm order (default 0)"},
           {"delta", "Seminorm exponent in (0,1) (default 1/2)"},
           {"radii", "JSON array of region radii, one per basis monomial (default 1)"},
           {"grid", "Grid resolution (default TROPEX_GRID or 4)"}})
    app.add_option("--" + name, values[name], help);
  app.add_option("--svg", svgFile, "Write an SVG drawing of the result to FILE");
  app.add_flag("--float", args.floats, "Add decimal approximations next to exact values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : static_cast<int>(tropex::ErrorCode::Usage);
  }

  args.positional = positional;
  for (const auto& [name, value] : values)
    if (app.count("--" + name)) args.options[name] = value;
  args.wantSvg = !svgFile.empty();

  std::string input;
  if (reads_stdin(command, !positional.empty()) && !isatty(STDIN_FILENO))
    input.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());

  tropex::cli::CommandResult result = tropex::cli::run(command, args, input);
  std::cout << result.payload.dump(2) << "\n";
  if (result.status == 0 && result.svg) {
    std::ofstream out(svgFile);
    out << *result.svg;
    if (!out) {
      std::cerr << "cannot write " << svgFile << "\n";
      return static_cast<int>(tropex::ErrorCode::InvalidArgument);
    }
  }
  return result.status;
}
