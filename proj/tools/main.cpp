#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "seqlearn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const bool asked_for_help =
      std::find(args.begin(), args.end(), "--help") != args.end() ||
      std::find(args.begin(), args.end(), "-h") != args.end();

  seqlearn::RunConfig config;
  std::string err;
  if (seqlearn::parse_command_line(args, config, err) != 0) {
    if (asked_for_help) {
      std::fputs(err.c_str(), stdout);
      return 0;
    }
    std::fprintf(stderr, "seqlearn: %s\n", err.c_str());
    std::fprintf(stderr, "run 'seqlearn --help' for usage\n");
    return 1;
  }
  return seqlearn::run(config);
}
