#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "wtt/config.hpp"
#include "wtt/signature.hpp"
#include "wtt/term.hpp"

namespace wtt::cli {

enum Exit : int {
  kOk = 0,
  kFailure = 1,
  kUnknown = 2,
  kUsage = 64,
  kIo = 66,
};

// args[0] is the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// The judgements of a strictify term file, as `wtt strictify` reads them.
struct StrictifyInput {
  Signature sig;
  std::set<std::string> marks;  // empty: every mark; {""}: none
  struct Entry {
    int line = 0;
    Context ctx;
    Term term;
    Term type;  // null for infer lines
  };
  std::vector<Entry> entries;
};

// Throws std::runtime_error on unreadable or malformed input.
StrictifyInput load_strictify_input(const std::string& sig_path, const std::string& term_path, bool jbeta,
                                    const Config& cfg = {});

}  // namespace wtt::cli
