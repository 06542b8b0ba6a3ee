#include "mplf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <thread>

#include "mplf/bernoulli.hpp"
#include "mplf/characters.hpp"
#include "mplf/classical.hpp"
#include "mplf/errors.hpp"
#include "mplf/number_theory.hpp"
#include "mplf/padic_l.hpp"

namespace mplf::cli {

using Json = nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::string format = "json";
  std::string cache_dir;
  unsigned jobs = 0;

  std::string n = "";
  std::string r = "";
  std::string chi = "";
  std::string x;
  std::string s;
  std::string p = "";
  std::string F;
  std::string f = "1,3,4,5,7,8";
  long prec = 12;
  double tol = 1e-6;
  double real_s = 2.0;
  std::string suite;
};

using Task = std::function<Json()>;

// Evaluates tasks on a small thread pool; results keep the task order.
std::vector<Json> run_tasks(const std::vector<Task>& tasks, unsigned jobs) {
  std::vector<Json> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::string csv_cell(const Json& v) {
  std::string text = v.is_string() ? v.get<std::string>() : v.dump();
  if (text.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : text) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return text;
}

void emit(const std::vector<Json>& records, const std::string& format, std::ostream& out) {
  if (format == "json") {
    for (const auto& rec : records) out << rec.dump() << '\n';
    return;
  }
  if (format == "csv") {
    if (records.empty()) return;
    std::vector<std::string> columns;
    for (const auto& rec : records) {
      for (const auto& item : rec.items()) {
        if (std::find(columns.begin(), columns.end(), item.key()) == columns.end()) {
          columns.push_back(item.key());
        }
      }
    }
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& rec : records) {
      for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "");
        if (rec.contains(columns[i])) out << csv_cell(rec[columns[i]]);
      }
      out << '\n';
    }
    return;
  }
  for (const auto& rec : records) {
    bool first = true;
    for (const auto& item : rec.items()) {
      out << (first ? "" : " ") << item.key() << '='
          << (item.value().is_string() ? item.value().get<std::string>() : item.value().dump());
      first = false;
    }
    out << '\n';
  }
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    if (end > start) parts.push_back(text.substr(start, end - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return parts;
}

std::vector<int> int_list(const std::string& text, const std::string& fallback) {
  std::vector<int> out;
  for (long v : parse_int_list(text.empty() ? fallback : text)) out.push_back(static_cast<int>(v));
  return out;
}

long parse_prime(const std::string& text) {
  long p = 0;
  try {
    p = std::stol(text);
  } catch (const std::exception&) {
    throw InvalidPrimeError("'" + text + "' is not a prime");
  }
  if (!is_prime(p)) throw InvalidPrimeError(std::to_string(p) + " is not prime");
  return p;
}

std::vector<long> prime_list(const std::string& text, const std::string& fallback) {
  std::vector<long> out;
  for (const auto& item : split(text.empty() ? fallback : text)) {
    if (item.find("..") != std::string::npos) {
      for (long v : parse_int_list(item)) out.push_back(parse_prime(std::to_string(v)));
    } else {
      out.push_back(parse_prime(item));
    }
  }
  return out;
}

DirichletCharacter quadratic_character(long p) {
  for (const auto& chi : char_enumerate(teichmuller_modulus(p))) {
    if (chi.order() == 2) return chi;
  }
  throw DomainError("no quadratic character modulo " + std::to_string(p));
}

// Characters named by --chi; "all" expands to every character modulo f.
std::vector<DirichletCharacter> characters_for(const std::string& spec, long f) {
  std::vector<DirichletCharacter> out;
  for (const auto& label : split(spec)) {
    if (label == "all") {
      const auto all = char_enumerate(f);
      out.insert(out.end(), all.begin(), all.end());
    } else {
      out.push_back(parse_character_label(label));
    }
  }
  return out;
}

std::vector<DirichletCharacter> padic_characters(const std::string& spec, long p) {
  if (spec.empty() || spec == "default") return {trivial_character(), quadratic_character(p)};
  return characters_for(spec, teichmuller_modulus(p));
}

Json report_json(const std::string& suite, const PadicCheckReport& rep) {
  Json j;
  j["suite"] = suite;
  j["p"] = rep.p;
  j["N"] = rep.N;
  j["r"] = rep.r;
  j["n"] = rep.n;
  j["chi"] = rep.chi;
  j["F"] = rep.F;
  j["lhs"] = to_json(rep.lhs);
  j["rhs"] = to_json(rep.rhs);
  j["diff_valuation"] = rep.diff_valuation >= PAdic::kInfinite ? Json(nullptr) : Json(rep.diff_valuation);
  j["guaranteed_precision"] = rep.guaranteed_precision >= PAdic::kInfinite ? Json(nullptr)
                                                                           : Json(rep.guaranteed_precision);
  j["pass"] = rep.pass;
  return j;
}

std::vector<long> modulus_choices(const RunConfig& cfg, long base) {
  if (!cfg.F.empty()) return parse_int_list(cfg.F);
  return {base, 2 * base};
}

std::vector<Task> verify_tasks(const RunConfig& cfg) {
  std::vector<Task> tasks;
  const std::string chi_spec = cfg.chi.empty() ? "all" : cfg.chi;
  if (cfg.suite == "eq5-eq6" || cfg.suite == "theorem2") {
    const bool eq = cfg.suite == "eq5-eq6";
    std::vector<DirichletCharacter> chars;
    if (chi_spec == "all") {
      for (long f : parse_int_list(cfg.f)) {
        const auto more = char_enumerate(f);
        chars.insert(chars.end(), more.begin(), more.end());
      }
    } else {
      chars = characters_for(chi_spec, 1);
    }
    for (const auto& chi : chars) {
      for (int r : int_list(cfg.r, "1..3")) {
        for (int n : int_list(cfg.n, eq ? "0..8" : "1..4")) {
          if (eq) {
            tasks.push_back([chi, r, n] {
              const CycloNumber closed = gen_multi_bernoulli(n, r, chi).simplified();
              const CycloNumber oracle = gen_multi_bernoulli_oracle(n, r, chi).simplified();
              Json j;
              j["suite"] = "eq5-eq6";
              j["chi"] = character_label(chi);
              j["r"] = r;
              j["n"] = n;
              j["closed_form"] = to_json(closed);
              j["generating_function"] = to_json(oracle);
              j["pass"] = closed == oracle;
              return j;
            });
            continue;
          }
          for (long F : modulus_choices(cfg, chi.modulus())) {
            tasks.push_back([chi, r, n, F] {
              Json j;
              j["suite"] = "theorem2";
              j["chi"] = character_label(chi);
              j["r"] = r;
              j["n"] = n;
              j["F"] = F;
              try {
                j["value"] = to_json(l_special(n, r, chi, F));
                j["pass"] = true;
              } catch (const InvariantViolation& e) {
                j["error"] = e.what();
                j["pass"] = false;
              }
              return j;
            });
          }
        }
      }
    }
    return tasks;
  }
  if (cfg.suite == "lemma3") {
    for (long p : prime_list(cfg.p, "5,7")) {
      for (const auto& chi : characters_for(chi_spec, teichmuller_modulus(p))) {
        for (int n : int_list(cfg.n, "1..6")) {
          const std::optional<long> F = cfg.F.empty() ? std::nullopt : std::optional<long>(std::stol(cfg.F));
          const long N = cfg.prec;
          tasks.push_back([chi, p, n, F, N] { return report_json("lemma3", verify_lemma3(n, chi, p, N, F)); });
        }
      }
    }
    return tasks;
  }
  if (cfg.suite == "theorem4" || cfg.suite == "f-stability") {
    const bool stability = cfg.suite == "f-stability";
    for (long p : prime_list(cfg.p, "5,7")) {
      for (const auto& chi : padic_characters(cfg.chi, p)) {
        for (int r : int_list(cfg.r, stability ? "1..3" : "2,3")) {
          for (int n : int_list(cfg.n, "1..4")) {
            const long N = cfg.prec;
            const long base = default_modulus(chi, p);
            if (stability) {
              const long F = cfg.F.empty() ? base : std::stol(cfg.F);
              tasks.push_back([chi, p, r, n, N, F] {
                const PAdic s = PAdic::exact(p, Rational(-n));
                const PAdic a = multivariate_lp(s, chi, r, p, N, F);
                const PAdic b = multivariate_lp(s, chi, r, p, N, 2 * F);
                const PAdic diff = a - b;
                const long guaranteed = std::min(a.precision(), b.precision());
                PadicCheckReport rep{p, N, r, n, character_label(chi), F, a, b,
                                     std::min(diff.valuation(), PAdic::kInfinite), guaranteed,
                                     diff.valuation() >= guaranteed};
                Json j = report_json("f-stability", rep);
                j["F2"] = 2 * F;
                return j;
              });
              continue;
            }
            for (long F : modulus_choices(cfg, base)) {
              tasks.push_back([chi, p, r, n, N, F] {
                return report_json("theorem4", verify_theorem4(n, r, chi, p, N, F));
              });
            }
          }
        }
      }
    }
    return tasks;
  }
  throw CLI::ValidationError("--suite", "unknown suite '" + cfg.suite + "'");
}

std::filesystem::path cache_file(const RunConfig& cfg) {
  std::string dir = cfg.cache_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("MPLF_CACHE_DIR")) dir = env;
  }
  if (dir.empty()) return {};
  return std::filesystem::path(dir) / "bernoulli.cache";
}

}  // namespace

std::vector<long> parse_int_list(std::string_view text) {
  std::vector<long> out;
  const std::string s(text);
  for (const auto& item : split(s)) {
    const auto dots = item.find("..");
    try {
      std::size_t used = 0;
      if (dots == std::string::npos) {
        out.push_back(std::stol(item, &used));
        if (used != item.size()) throw ParseError("");
        continue;
      }
      const std::string lo_text = item.substr(0, dots);
      const std::string hi_text = item.substr(dots + 2);
      const long lo = std::stol(lo_text, &used);
      if (used != lo_text.size()) throw ParseError("");
      const long hi = std::stol(hi_text, &used);
      if (used != hi_text.size()) throw ParseError("");
      if (hi < lo) throw ParseError("");
      for (long v = lo; v <= hi; ++v) out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("bad integer list item '" + item + "'");
    }
  }
  if (out.empty()) throw ParseError("empty integer list '" + s + "'");
  return out;
}

Json to_json(const Rational& x) { return x.to_string(); }

Json to_json(const CycloNumber& x) {
  const CycloNumber y = x.simplified();
  Json coeffs = Json::array();
  for (const auto& c : y.coeffs()) coeffs.push_back(c.to_string());
  Json j;
  j["order"] = y.order();
  j["coeffs"] = coeffs;
  return j;
}

Json to_json(const PAdic& x) {
  Json j;
  const long v = x.valuation();
  j["valuation"] = v >= PAdic::kInfinite ? Json(nullptr) : Json(v);
  if (x.is_exact()) {
    j["exact"] = x.exact_value().to_string();
    j["precision"] = nullptr;
  } else {
    j["unit"] = x.unit().get_str();
    j["precision"] = x.precision();
  }
  return j;
}

Rational rational_from_json(const Json& j) { return Rational::parse(j.get<std::string>()); }

CycloNumber cyclo_from_json(const Json& j) {
  std::vector<Rational> poly;
  for (const auto& c : j.at("coeffs")) poly.push_back(rational_from_json(c));
  return CycloNumber::from_polynomial(j.at("order").get<unsigned>(), std::move(poly));
}

PAdic padic_from_json(const Json& j, long p) {
  if (j.contains("exact")) return PAdic::exact(p, rational_from_json(j.at("exact")));
  const long prec = j.at("precision").get<long>();
  const Integer unit(j.at("unit").get<std::string>(), 10);
  if (unit == 0) return PAdic::inexact_zero(p, prec);
  const long v = j.at("valuation").get<long>();
  return PAdic::from_parts(p, v, unit, prec - v);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Multiple Bernoulli numbers, multivariate L-values and their p-adic interpolation", "mplf"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--cache-dir", cfg.cache_dir, "Bernoulli cache directory (or MPLF_CACHE_DIR)");
  app.add_option("--jobs", cfg.jobs, "Worker threads (default: available processors)");

  auto* bern = app.add_subcommand("bernoulli", "Classical Bernoulli numbers B_n")->fallthrough();
  bern->add_option("--n", cfg.n, "Index or range, e.g. 1..4")->required();

  auto* multi = app.add_subcommand("multi-bernoulli", "Order-r Bernoulli numbers and polynomials")->fallthrough();
  multi->add_option("--n", cfg.n, "Index or range")->required();
  multi->add_option("--r", cfg.r, "Order or range")->required();
  multi->add_option("--x", cfg.x, "Evaluate the polynomial at this rational");

  auto* gen = app.add_subcommand("gen-bernoulli", "Character-twisted multiple Bernoulli numbers")->fallthrough();
  gen->add_option("--n", cfg.n, "Index or range")->required();
  gen->add_option("--r", cfg.r, "Order or range")->required();
  gen->add_option("--chi", cfg.chi, "Character label(s): triv, f.k or all")->required();
  gen->add_option("--f", cfg.f, "Moduli used with --chi all");

  auto* lspecial = app.add_subcommand("l-special", "Special values L_r(-n, chi)")->fallthrough();
  lspecial->add_option("--n", cfg.n, "Index or range")->required();
  lspecial->add_option("--r", cfg.r, "Order or range")->required();
  lspecial->add_option("--chi", cfg.chi, "Character label(s)")->required();
  lspecial->add_option("--F", cfg.F, "Summation modulus (default: modulus of chi)");

  auto* lnum = app.add_subcommand("l-numeric", "Direct summation of L_r(s, chi) for real s > r")->fallthrough();
  lnum->add_option("--s", cfg.real_s, "Real evaluation point")->required();
  lnum->add_option("--r", cfg.r, "Order")->required();
  lnum->add_option("--chi", cfg.chi, "Character label")->required();
  lnum->add_option("--tol", cfg.tol, "Tail tolerance");

  auto* padic = app.add_subcommand("padic-l", "p-adic L-function L_{p,r}(s, chi)")->fallthrough();
  padic->add_option("--s", cfg.s, "Rational evaluation point with |s|_p <= 1")->required();
  padic->add_option("--r", cfg.r, "Order");
  padic->add_option("--chi", cfg.chi, "Character label");
  padic->add_option("--p", cfg.p, "Prime")->required();
  padic->add_option("--prec", cfg.prec, "Absolute precision N");
  padic->add_option("--F", cfg.F, "Summation modulus (default: lcm(q, f))");

  auto* verify = app.add_subcommand("verify", "Run a verification suite over a parameter grid")->fallthrough();
  verify->add_option("--suite", cfg.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"eq5-eq6", "theorem2", "lemma3", "theorem4", "f-stability"}));
  verify->add_option("--p", cfg.p, "Prime(s)");
  verify->add_option("--prec", cfg.prec, "Absolute precision N");
  verify->add_option("--r", cfg.r, "Order(s)");
  verify->add_option("--n", cfg.n, "Index range");
  verify->add_option("--chi", cfg.chi, "Character label(s), all, or default");
  verify->add_option("--F", cfg.F, "Summation modulus list");
  verify->add_option("--f", cfg.f, "Moduli used with --chi all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (cfg.jobs == 0) cfg.jobs = std::max(1U, std::thread::hardware_concurrency());
  const std::filesystem::path cache = cache_file(cfg);

  try {
    if (!cache.empty()) BernoulliCache::global().load(cache);
    std::vector<Task> tasks;
    bool is_check = false;

    if (bern->parsed()) {
      for (long n : parse_int_list(cfg.n)) {
        tasks.push_back([n] {
          Json j;
          j["n"] = n;
          j["value"] = to_json(bernoulli(static_cast<int>(n)));
          return j;
        });
      }
    } else if (multi->parsed()) {
      std::optional<Rational> x;
      if (!cfg.x.empty()) x = Rational::parse(cfg.x);
      for (int r : int_list(cfg.r, "")) {
        for (int n : int_list(cfg.n, "")) {
          tasks.push_back([n, r, x] {
            Json j;
            j["n"] = n;
            j["r"] = r;
            if (x) {
              j["x"] = to_json(*x);
              j["value"] = to_json(multi_bernoulli_poly(n, r, *x));
            } else {
              j["value"] = to_json(multi_bernoulli(n, r));
            }
            return j;
          });
        }
      }
    } else if (gen->parsed()) {
      is_check = true;
      std::vector<DirichletCharacter> chars;
      if (cfg.chi == "all") {
        for (long f : parse_int_list(cfg.f)) {
          const auto more = char_enumerate(f);
          chars.insert(chars.end(), more.begin(), more.end());
        }
      } else {
        chars = characters_for(cfg.chi, 1);
      }
      for (const auto& chi : chars) {
        for (int r : int_list(cfg.r, "")) {
          for (int n : int_list(cfg.n, "")) {
            tasks.push_back([chi, n, r] {
              const CycloNumber closed = gen_multi_bernoulli(n, r, chi).simplified();
              const CycloNumber oracle = gen_multi_bernoulli_oracle(n, r, chi).simplified();
              Json j;
              j["n"] = n;
              j["r"] = r;
              j["chi"] = character_label(chi);
              j["value"] = to_json(closed);
              j["generating_function"] = to_json(oracle);
              j["pass"] = closed == oracle;
              return j;
            });
          }
        }
      }
    } else if (lspecial->parsed()) {
      is_check = true;
      for (const auto& chi : characters_for(cfg.chi, 1)) {
        const long F = cfg.F.empty() ? chi.modulus() : std::stol(cfg.F);
        for (int r : int_list(cfg.r, "")) {
          for (int n : int_list(cfg.n, "")) {
            tasks.push_back([chi, n, r, F] {
              Json j;
              j["n"] = n;
              j["r"] = r;
              j["chi"] = character_label(chi);
              j["F"] = F;
              j["route"] = "closed-form+direct-summation";
              try {
                j["value"] = to_json(l_special(n, r, chi, F));
                j["pass"] = true;
              } catch (const InvariantViolation& e) {
                j["error"] = e.what();
                j["pass"] = false;
              }
              return j;
            });
          }
        }
      }
    } else if (lnum->parsed()) {
      const DirichletCharacter chi = parse_character_label(cfg.chi);
      const int r = static_cast<int>(std::stol(cfg.r));
      const double s = cfg.real_s;
      const double tol = cfg.tol;
      tasks.push_back([chi, r, s, tol] {
        const NumericSum sum = l_numeric(s, r, chi, tol);
        Json j;
        j["s"] = s;
        j["r"] = r;
        j["chi"] = character_label(chi);
        j["tol"] = tol;
        j["re"] = sum.value.real();
        j["im"] = sum.value.imag();
        j["tail_bound"] = sum.tail_bound;
        j["terms"] = sum.terms;
        return j;
      });
    } else if (padic->parsed()) {
      const long p = parse_prime(cfg.p);
      const DirichletCharacter chi = parse_character_label(cfg.chi.empty() ? "triv" : cfg.chi);
      const int r = cfg.r.empty() ? 1 : static_cast<int>(std::stol(cfg.r));
      const Rational s = Rational::parse(cfg.s);
      const long N = cfg.prec;
      const long F = cfg.F.empty() ? default_modulus(chi, p) : std::stol(cfg.F);
      tasks.push_back([chi, p, r, s, N, F] {
        const PAdic point = PAdic::exact(p, s);
        const PAdic value = r == 1 ? washington_lp(point, chi, p, N, F) : multivariate_lp(point, chi, r, p, N, F);
        Json j;
        j["p"] = p;
        j["N"] = N;
        j["r"] = r;
        j["s"] = to_json(s);
        j["chi"] = character_label(chi);
        j["F"] = F;
        j["value"] = to_json(value);
        return j;
      });
    } else if (verify->parsed()) {
      is_check = true;
      tasks = verify_tasks(cfg);
    }

    const std::vector<Json> records = run_tasks(tasks, cfg.jobs);
    emit(records, cfg.format, out);
    if (!cache.empty()) {
      std::filesystem::create_directories(cache.parent_path());
      BernoulliCache::global().save(cache);
    }
    if (is_check) {
      const bool all_pass = std::all_of(records.begin(), records.end(),
                                        [](const Json& j) { return j.value("pass", false); });
      return all_pass ? kOk : kCheckFailed;
    }
    return kOk;
  } catch (const UnknownCharacterError& e) {
    err << "error: unknown character: " << e.what() << '\n';
    return kUnknownCharacter;
  } catch (const InvalidPrimeError& e) {
    err << "error: invalid prime: " << e.what() << '\n';
    return kInvalidPrime;
  } catch (const UnsupportedCharacterError& e) {
    err << "error: unsupported character: " << e.what() << '\n';
    return kUnsupportedCharacter;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: malformed number: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace mplf::cli
