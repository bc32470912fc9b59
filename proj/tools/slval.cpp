// slval: evaluate, fit and verify SL(n)-invariant valuations on polytopes.
//
// Exit codes: 0 pass, 1 check failure, 2 usage or parse error, 3 oracle failure.

#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracle_process.hpp"
#include "slval/slval.hpp"

namespace {

using slval::io::json;

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kOracleFailed = 3;

struct Options {
  std::size_t n = 2;
  long field_d = 0;
  std::uint64_t seed = 0;
  std::size_t cases = 20;
  std::size_t validation = 100;
  std::string in;
  std::string valuation;
  std::string oracle_cmd;
  std::string format;
  std::string c0p = "1";
  std::string d0 = "0";
  std::size_t steps = 6;
};

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(path);
    if (!f) throw slval::ParseError("cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw slval::ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void check_field(long d) {
  if (d != 0 && !slval::detail::is_square_free(d)) throw slval::ParseError("--field-d must be 0 or square-free >= 2");
}

slval::ClassifiedValuation load_valuation(const std::string& path, long field_d) {
  return slval::io::valuation_from_json(read_json(path), field_d);
}

int cmd_valuate(const Options& o) {
  if (o.in.empty()) throw slval::ParseError("valuate needs --in");
  long d = 0;
  const slval::Polytope p = slval::io::polytope_from_json(read_json(o.in), &d);
  if (d == 0) d = o.field_d;
  const bool text = o.format != "json";
  if (o.valuation.empty()) {
    const auto values = slval::basis_values(p);
    json j;
    for (std::size_t i = 0; i < values.size(); ++i) j[std::string(slval::basis_name(slval::kBasis[i]))] = values[i].str();
    if (text) {
      for (const auto& [k, v] : j.items()) std::cout << k << " " << v.get<std::string>() << "\n";
    } else {
      std::cout << j.dump() << "\n";
    }
    return kPass;
  }
  const auto val = load_valuation(o.valuation, d);
  const slval::Scalar value = slval::evaluate(val, p);
  if (text) {
    std::cout << value.str() << "\n";
  } else {
    std::cout << json{{"value", value.str()}}.dump() << "\n";
  }
  return kPass;
}

int cmd_fit(const Options& o) {
  if (o.valuation.empty() == o.oracle_cmd.empty()) {
    throw slval::ParseError("fit needs exactly one of --valuation and --oracle-cmd");
  }
  check_field(o.field_d);
  std::unique_ptr<slval::tools::OracleProcess> oracle;
  slval::ValuationFn blackbox;
  if (!o.oracle_cmd.empty()) {
    oracle = std::make_unique<slval::tools::OracleProcess>(o.oracle_cmd, o.field_d);
    blackbox = [&oracle](const slval::Polytope& p) { return oracle->query(p); };
  } else {
    blackbox = slval::as_fn(load_valuation(o.valuation, o.field_d));
  }
  const auto report = slval::fit_classification(blackbox, o.n, o.seed, o.validation, o.field_d);
  if (o.format == "text") {
    static constexpr const char* kNames[5] = {"c0", "c0p", "cn", "d0", "dn"};
    for (std::size_t i = 0; i < 5; ++i) std::cout << kNames[i] << " " << report.coefficients[i].str() << "\n";
    std::cout << "residual_max " << report.residual_max.str() << " over " << report.validation_count
              << " validation polytopes\n";
  } else {
    std::cout << slval::io::to_json(report).dump() << "\n";
  }
  return report.exact() ? kPass : kCheckFailed;
}

int cmd_verify(const Options& o) {
  if (o.cases == 0) throw slval::ParseError("--cases must be >= 1");
  check_field(o.field_d);
  slval::VerifyConfig cfg;
  cfg.n = o.n;
  cfg.field_d = o.field_d;
  cfg.seed = o.seed;
  cfg.cases = o.cases;
  cfg.validation = o.validation;
  if (!o.valuation.empty()) cfg.plugins.push_back({"plugin", slval::as_fn(load_valuation(o.valuation, o.field_d))});
  std::unique_ptr<slval::tools::OracleProcess> oracle;
  if (!o.oracle_cmd.empty()) {
    oracle = std::make_unique<slval::tools::OracleProcess>(o.oracle_cmd, o.field_d);
    cfg.plugins.push_back({"oracle", [&oracle](const slval::Polytope& p) { return oracle->query(p); }});
  }
  const bool text = o.format == "text";
  std::size_t total = 0;
  std::size_t failed = 0;
  const bool ok = slval::run_verify(cfg, [&](const json& j) {
    ++total;
    const bool pass = j["pass"].get<bool>();
    if (!pass) ++failed;
    if (!text) {
      std::cout << j.dump() << "\n";
      return;
    }
    std::cout << (pass ? "PASS " : "FAIL ") << j["check"].get<std::string>() << " seed=" << j["seed"].get<std::uint64_t>();
    if (j.contains("valuation")) std::cout << " valuation=" << j["valuation"].get<std::string>();
    if (j.contains("case")) std::cout << " case=" << j["case"].get<std::string>();
    if (j.contains("witness")) std::cout << " witness=" << j["witness"].dump();
    std::cout << "\n";
  });
  if (text) std::cout << total << " checks, " << failed << " failed\n";
  return ok ? kPass : kCheckFailed;
}

int cmd_demo_usc(const Options& o) {
  const slval::Scalar c0p = slval::io::parse_scalar(o.c0p, o.field_d);
  const slval::Scalar d0 = slval::io::parse_scalar(o.d0, o.field_d);
  if (o.steps == 0) throw slval::ParseError("--steps must be >= 1");
  std::vector<slval::Scalar> s_values;
  slval::Scalar s(1);
  for (std::size_t i = 0; i < o.steps; ++i, s /= slval::Scalar(2)) s_values.push_back(s);
  const auto rep = slval::usc_sequences(c0p, d0, s_values, o.n);
  const char* verdict = c0p.is_zero() && d0.is_zero() ? "trivially consistent"
                        : rep.violated()              ? "not upper semicontinuous"
                                                      : "upper semicontinuous along tested sequences";
  if (o.format == "json") {
    json j = slval::io::to_json(rep);
    j["verdict"] = verdict;
    std::cout << j.dump() << "\n";
    return kPass;
  }
  std::cout << "Phi(P) = c0' (-1)^dim(P) 1_relint(P)(0) + d0 1_P(0),  c0' = " << c0p.str() << ", d0 = " << d0.str()
            << "\n";
  for (const slval::UscSequence* seq : {&rep.first, &rep.second}) {
    std::cout << "\nsequence " << seq->name << " -> " << seq->limit_name << "\n";
    std::cout << "  s        Phi\n";
    for (std::size_t i = 0; i < s_values.size(); ++i) {
      std::string label = s_values[i].str();
      label.resize(std::max<std::size_t>(label.size(), 8), ' ');
      std::cout << "  " << label << " " << seq->values[i].str() << "\n";
    }
    std::cout << "  limit " << seq->limit_name << ": " << seq->limit_value.str() << "\n";
    if (seq->violation) {
      std::cout << "  sequence value " << seq->values.back().str() << " > limit value " << seq->limit_value.str()
                << ": violation (u.s.c. forces " << seq->constraint << ")\n";
    } else {
      std::cout << "  consistent\n";
    }
  }
  std::cout << "\nverdict: " << verdict << "\n";
  return kPass;
}

int cmd_triangulate(const Options& o) {
  if (o.in.empty()) throw slval::ParseError("triangulate needs --in");
  long d = 0;
  const slval::Polytope p = slval::io::polytope_from_json(read_json(o.in), &d);
  const auto t = slval::triangulate(p);
  json j;
  j["polytope"] = slval::io::to_json(p, d);
  j["simplices"] = slval::io::to_json(t, p);
  j["volume"] = slval::volume(p).str();
  j["complex"] = !slval::verify_complex(t).has_value();
  std::cout << j.dump() << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact SL(n)-invariant valuations on convex polytopes"};
  app.require_subcommand(1);
  Options o;

  const auto add_n = [&](CLI::App* c) { c->add_option("--n", o.n, "Ambient dimension")->check(CLI::Range(2, 4)); };
  const auto add_field = [&](CLI::App* c) {
    c->add_option("--field-d", o.field_d, "Square-free d for Q(sqrt(d)); 0 for Q")->check(CLI::NonNegativeNumber);
  };
  const auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* valuate = app.add_subcommand("valuate", "Evaluate a classified valuation (or all basis valuations) on a polytope");
  valuate->add_option("--in", o.in, "Polytope JSON file ('-' for stdin)")->required();
  valuate->add_option("--valuation", o.valuation, "Valuation JSON file");
  add_field(valuate);
  add_format(valuate);

  auto* fit = app.add_subcommand("fit", "Recover the five classification coefficients of a valuation");
  fit->add_option("--valuation", o.valuation, "Valuation JSON file (self-test)");
  fit->add_option("--oracle-cmd", o.oracle_cmd, "Shell command answering one polytope JSON line per query");
  fit->add_option("--seed", o.seed, "Validation seed");
  fit->add_option("--cases", o.validation, "Number of validation polytopes")->check(CLI::PositiveNumber);
  add_n(fit);
  add_field(fit);
  add_format(fit);

  auto* verify = app.add_subcommand("verify", "Run the seeded verification suite (JSON lines)");
  verify->add_option("--seed", o.seed, "First seed");
  verify->add_option("--cases", o.cases, "Number of seeded cases");
  verify->add_option("--validation", o.validation, "Validation polytopes per classification fit")
      ->check(CLI::PositiveNumber);
  verify->add_option("--valuation", o.valuation, "Extra classified valuation to check");
  verify->add_option("--oracle-cmd", o.oracle_cmd, "External valuation to check");
  add_n(verify);
  add_field(verify);
  add_format(verify);

  auto* usc = app.add_subcommand("demo-usc", "Upper semicontinuity along the two explicit sequences");
  usc->add_option("--c0p", o.c0p, "Coefficient c0'");
  usc->add_option("--d0", o.d0, "Coefficient d0");
  usc->add_option("--steps", o.steps, "Number of s values 1, 1/2, 1/4, ...");
  add_n(usc);
  add_field(usc);
  add_format(usc);

  auto* tri = app.add_subcommand("triangulate", "Print a pulling triangulation of a polytope");
  tri->add_option("--in", o.in, "Polytope JSON file ('-' for stdin)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*valuate) return cmd_valuate(o);
    if (*fit) return cmd_fit(o);
    if (*verify) return cmd_verify(o);
    if (*usc) return cmd_demo_usc(o);
    if (*tri) return cmd_triangulate(o);
  } catch (const slval::OracleError& e) {
    std::cerr << "slval: " << e.what() << "\n";
    return kOracleFailed;
  } catch (const slval::Error& e) {
    std::cerr << "slval: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
