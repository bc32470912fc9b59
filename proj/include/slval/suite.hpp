#pragma once

// The seeded verification suite behind `slval verify`: one JSON object per
// check, emitted in seed order.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "slval/harness.hpp"
#include "slval/io.hpp"
#include "slval/valuation.hpp"

namespace slval {

struct NamedValuation {
  std::string name;
  ValuationFn fn;
};

struct VerifyConfig {
  std::size_t n = 2;
  long field_d = 0;
  std::uint64_t seed = 0;
  std::size_t cases = 20;
  std::size_t validation = 100;
  std::vector<NamedValuation> plugins;  // valuations under test, beyond the built-in ones
};

using Emit = std::function<void(const io::json&)>;

namespace detail {

inline io::json report_line(std::string_view check, std::uint64_t seed, bool pass) {
  io::json j;
  j["check"] = check;
  j["seed"] = seed;
  j["pass"] = pass;
  return j;
}

inline io::json scalars(std::span<const Scalar> xs) {
  io::json a = io::json::array();
  for (const auto& x : xs) a.push_back(x.str());
  return a;
}

}  // namespace detail

/// Valuations checked for identity and invariance on every case: the five
/// basis valuations, a fixed measurable combination, the rational-part
/// volume when the field is quadratic, then the plugins.
inline std::vector<NamedValuation> suite_valuations(const VerifyConfig& cfg) {
  std::vector<NamedValuation> out;
  for (auto b : kBasis) out.push_back({std::string(basis_name(b)), basis_fn(b)});
  out.push_back({"classified(1,2,3,4,5)", as_fn(ClassifiedValuation::measurable(1, 2, 3, 4, 5))});
  if (cfg.field_d != 0) {
    ClassifiedValuation rp;
    rp.psi = CauchySolution::rational_part();
    out.push_back({"rational_part_volume", as_fn(rp)});
  }
  for (const auto& p : cfg.plugins) out.push_back(p);
  return out;
}

/// Runs every check for seeds cfg.seed .. cfg.seed + cases - 1, then the
/// seed-independent ones. Returns true iff every line passed.
inline bool run_verify(const VerifyConfig& cfg, const Emit& emit) {
  if (cfg.cases == 0) throw DomainError("verify: cases must be >= 1");
  if (cfg.n < 2 || cfg.n > kMaxDimension) throw DomainError("verify: n must lie in [2, 4]");
  const std::size_t n = cfg.n;
  const auto vals = suite_valuations(cfg);
  bool all = true;
  auto put = [&](io::json j) {
    all = all && j["pass"].get<bool>();
    emit(j);
  };

  for (std::uint64_t k = cfg.seed; k < cfg.seed + cfg.cases; ++k) {
    const SplitCase split = gen_split_case(k, n, cfg.field_d);
    const auto label = origin_case_name(classify_origin_case(split));
    for (const auto& v : vals) {
      const auto o = check_valuation_identity(v.fn, split);
      auto j = detail::report_line("valuation_identity", k, o.pass);
      j["valuation"] = v.name;
      j["case"] = label;
      j["split"] = split_kind_name(split.kind);
      if (!o.pass) {
        j["witness"] = {{"left", o.left.str()},   {"right", o.right.str()},
                        {"whole", o.whole.str()}, {"meet", o.meet.str()},
                        {"P", io::to_json(split.left, cfg.field_d)}, {"Q", io::to_json(split.right, cfg.field_d)}};
      }
      put(std::move(j));
    }

    const Polytope p = gen_invariance_case(k, n, cfg.field_d);
    const Matrix a = gen_sl_matrix(k, n);
    for (const auto& v : vals) {
      const auto o = check_sl_invariance(v.fn, p, a);
      auto j = detail::report_line("sl_invariance", k, o.pass);
      j["valuation"] = v.name;
      if (!o.pass) {
        j["witness"] = {{"before", o.before.str()}, {"after", o.after.str()},
                        {"P", io::to_json(p, cfg.field_d)}, {"A", io::to_json(a)}};
      }
      put(std::move(j));
    }

    const auto coef = gen_coefficients(k);
    const auto fit = fit_classification(as_fn(ClassifiedValuation::measurable(coef[0], coef[1], coef[2], coef[3], coef[4])),
                                        n, k, cfg.validation, cfg.field_d);
    {
      const bool ok = fit.exact() && fit.coefficients == coef;
      auto j = detail::report_line("classification_fit", k, ok);
      if (!ok) j["witness"] = {{"expected", detail::scalars(coef)}, {"report", io::to_json(fit)}};
      put(std::move(j));
    }

    {
      const Polytope q = gen_cone_case(k, n);
      const auto o = check_cone_decomposition(q);
      auto j = detail::report_line("cone_decomposition", k, o.pass);
      j["visible_facets"] = o.visible_count;
      if (!o.pass) {
        j["witness"] = {{"cone_volume", o.cone_volume.str()}, {"decomposed", o.decomposed.str()},
                        {"triangulated", o.triangulated.str()}, {"P", io::to_json(q, 0)}};
      }
      put(std::move(j));
    }

    {
      const auto [q, tt] = gen_additivity_case(k, n);
      const auto o = check_finite_additivity(q, tt.first, tt.second);
      auto j = detail::report_line("finite_additivity", k, o.pass);
      j["cells"] = {tt.first.size(), tt.second.size()};
      if (!o.pass) {
        io::json w;
        w["P"] = io::to_json(q, 0);
        w["whole"] = detail::scalars(o.whole);
        w["union_first"] = detail::scalars(o.union_first);
        w["union_second"] = detail::scalars(o.union_second);
        if (o.bad_pair) w["non_face_to_face"] = {o.bad_pair->first, o.bad_pair->second};
        j["witness"] = std::move(w);
      }
      put(std::move(j));
    }

    {
      const Simplex t = gen_origin_simplex(k, n);
      const auto o = check_simplex_normalization(t);
      auto j = detail::report_line("simplex_normalization", k, o.pass);
      if (!o.pass) {
        j["witness"] = {{"volume", o.volume.str()}, {"normal_volume", o.normal_volume.str()},
                        {"map", io::to_json(o.map)}, {"map_ok", o.map_ok}};
      }
      put(std::move(j));
    }
  }

  {
    const Scalar d = det(probe_matrix(n));
    auto j = detail::report_line("probe_matrix", cfg.seed, !d.is_zero());
    j["det"] = d.str();
    put(std::move(j));
  }

  const std::vector<Scalar> s_values{Scalar(1), Scalar::fraction(1, 2), Scalar::fraction(1, 4), Scalar::fraction(1, 8)};
  for (const auto& [c0p, d0] : std::vector<std::pair<Scalar, Scalar>>{{1, 0}, {-1, 0}, {0, 1}, {0, 0}, {2, 3}}) {
    const auto rep = usc_sequences(c0p, d0, s_values, n);
    // A violation must be reported exactly when c0' != 0.
    auto j = detail::report_line("usc_sequences", cfg.seed, rep.violated() == !c0p.is_zero());
    j["c0p"] = c0p.str();
    j["d0"] = d0.str();
    j["violation"] = rep.violated();
    put(std::move(j));
  }
  return all;
}

}  // namespace slval
