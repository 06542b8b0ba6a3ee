#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mplf/cyclotomic.hpp"
#include "mplf/padic.hpp"
#include "mplf/rational.hpp"

namespace mplf::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kUnknownCharacter = 3,
  kInvalidPrime = 4,
  kUnsupportedCharacter = 5,
  kDomain = 6,
  kInternal = 7,
};

/// Runs the command line; records go to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Expands "3", "1..4" and comma lists such as "0,2..5".
std::vector<long> parse_int_list(std::string_view text);

nlohmann::ordered_json to_json(const Rational& x);
nlohmann::ordered_json to_json(const CycloNumber& x);
nlohmann::ordered_json to_json(const PAdic& x);

Rational rational_from_json(const nlohmann::ordered_json& j);
CycloNumber cyclo_from_json(const nlohmann::ordered_json& j);
PAdic padic_from_json(const nlohmann::ordered_json& j, long p);

}  // namespace mplf::cli
